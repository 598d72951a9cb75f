//! Comparing reliability polynomials near 0, near 1 and on all of (0, 1).
//!
//! The first differing N-coefficient decides which polynomial is larger for
//! `p` close to 0, and the first differing F-coefficient decides it close to
//! 1. Global dominance is settled by the exact sign profile of the difference.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::poly::ReliabilityPolynomial;
use crate::reliability::exact_scnr;
use crate::sign::{sign_profile, RootInterval, SignProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Favoured {
    #[serde(rename = "G")]
    First,
    #[serde(rename = "H")]
    Second,
    #[serde(rename = "tie")]
    Tie,
}

impl Favoured {
    fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Greater => Favoured::First,
            Ordering::Less => Favoured::Second,
            Ordering::Equal => Favoured::Tie,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    /// Larger for `p` close to 0.
    pub near_zero: Favoured,
    /// Larger for `p` close to 1.
    pub near_one: Favoured,
    /// First index where the N-vectors differ.
    pub near_zero_index: Option<usize>,
    /// First index where the F-vectors differ.
    pub near_one_index: Option<usize>,
    /// Sign of `Rel(G) - Rel(H)` on (0, 1).
    pub dominance: SignProfile,
}

impl ComparisonVerdict {
    pub fn crossings(&self) -> Vec<RootInterval> {
        self.dominance.crossings().cloned().collect()
    }
}

/// First index where `a` and `b` differ, and which is larger there.
fn lexicographic(a: &[BigUint], b: &[BigUint]) -> (Favoured, Option<usize>) {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(i) => (Favoured::from_ordering(a[i].cmp(&b[i])), Some(i)),
        None => (Favoured::Tie, None),
    }
}

pub fn compare_polynomials(
    g: &ReliabilityPolynomial,
    h: &ReliabilityPolynomial,
) -> Result<ComparisonVerdict> {
    if g.order() != h.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: h.order(),
        });
    }
    let (near_zero, near_zero_index) = lexicographic(&g.n_form(), &h.n_form());
    let (near_one, near_one_index) = lexicographic(g.f(), h.f());
    let dominance = sign_profile(&g.to_power_basis().sub(&h.to_power_basis()));
    Ok(ComparisonVerdict {
        near_zero,
        near_one,
        near_zero_index,
        near_one_index,
        dominance,
    })
}

pub fn compare(g: &Digraph, h: &Digraph) -> Result<ComparisonVerdict> {
    if g.order() != h.order() {
        return Err(Error::OrderMismatch {
            left: g.order(),
            right: h.order(),
        });
    }
    compare_polynomials(&exact_scnr(g)?, &exact_scnr(h)?)
}

/// Sign-changing roots of `Rel(G) - Rel(H)` in (0, 1).
pub fn find_crossings(g: &Digraph, h: &Digraph) -> Result<Vec<RootInterval>> {
    Ok(compare(g, h)?.crossings())
}

#[derive(Debug, Clone)]
pub struct Member {
    pub label: String,
    pub graph: Digraph,
}

impl Member {
    pub fn new(label: impl Into<String>, graph: Digraph) -> Self {
        Member {
            label: label.into(),
            graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberEntry {
    pub label: String,
    #[serde(rename = "F")]
    pub f: Vec<String>,
}

/// A pair whose reliability curves cross, with one isolated crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub first: String,
    pub second: String,
    pub crossing: RootInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub family: String,
    pub n: usize,
    pub members: Vec<MemberEntry>,
    /// Labels, best first, for `p` close to 0.
    pub near_zero_ranking: Vec<String>,
    /// Labels, best first, for `p` close to 1.
    pub near_one_ranking: Vec<String>,
    /// Members whose reliability is at least every other member's on all of
    /// [0, 1]; empty when none exists.
    pub winners: Vec<String>,
    pub witness: Option<Witness>,
}

impl SearchReport {
    pub fn has_winner(&self) -> bool {
        !self.winners.is_empty()
    }
}

pub fn tournament(family: &str, members: &[Member]) -> Result<SearchReport> {
    let polys = members
        .par_iter()
        .map(|m| exact_scnr(&m.graph))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<String> = members.iter().map(|m| m.label.clone()).collect();
    tournament_polynomials(family, &labels, &polys)
}

/// Tournament over precomputed polynomials.
///
/// The near-0 leader is the only possible global winner, so it is checked by
/// exact sign analysis against every other member.
pub fn tournament_polynomials(
    family: &str,
    labels: &[String],
    polys: &[ReliabilityPolynomial],
) -> Result<SearchReport> {
    if polys.is_empty() {
        return Err(Error::InvalidParameter("tournament needs at least one member".into()));
    }
    assert_eq!(labels.len(), polys.len());
    let n = polys[0].order();
    if let Some(p) = polys.iter().find(|p| p.order() != n) {
        return Err(Error::OrderMismatch {
            left: n,
            right: p.order(),
        });
    }

    let n_forms: Vec<Vec<BigUint>> = polys.iter().map(|p| p.n_form()).collect();
    let mut near_zero: Vec<usize> = (0..polys.len()).collect();
    near_zero.sort_by(|&i, &j| {
        n_forms[j]
            .cmp(&n_forms[i])
            .then_with(|| polys[j].f().cmp(polys[i].f()))
            .then(i.cmp(&j))
    });
    let mut near_one: Vec<usize> = (0..polys.len()).collect();
    near_one.sort_by(|&i, &j| polys[j].f().cmp(polys[i].f()).then(i.cmp(&j)));

    let leader = near_zero[0];
    let leader_power = polys[leader].to_power_basis();
    let profiles: Vec<Option<SignProfile>> = (0..polys.len())
        .into_par_iter()
        .map(|j| {
            (polys[j] != polys[leader])
                .then(|| sign_profile(&leader_power.sub(&polys[j].to_power_basis())))
        })
        .collect();

    let dominates = profiles
        .iter()
        .all(|p| p.as_ref().is_none_or(SignProfile::is_non_negative));
    let (winners, witness) = if dominates {
        let winners = (0..polys.len())
            .filter(|&j| polys[j] == polys[leader])
            .map(|j| labels[j].clone())
            .collect();
        (winners, None)
    } else {
        // Prefer the near-1 leader as the opponent, then the near-1 order.
        let witness = near_one.iter().find_map(|&j| {
            let profile = profiles[j].as_ref()?;
            let crossing = profile.crossings().next()?.clone();
            Some(Witness {
                first: labels[leader].clone(),
                second: labels[j].clone(),
                crossing,
            })
        });
        (Vec::new(), witness)
    };

    Ok(SearchReport {
        family: family.to_string(),
        n,
        members: labels
            .iter()
            .zip(polys)
            .map(|(label, p)| MemberEntry {
                label: label.clone(),
                f: p.f().iter().map(|c| c.to_string()).collect(),
            })
            .collect(),
        near_zero_ranking: near_zero.iter().map(|&i| labels[i].clone()).collect(),
        near_one_ranking: near_one.iter().map(|&i| labels[i].clone()).collect(),
        winners,
        witness,
    })
}
