//! Finite-range checks of closed-form coefficient formulas, optimality
//! results and non-existence results.
//!
//! Every check is run per instance (usually per order `n`) and produces a
//! [`ClaimResult`]; failures are data, not errors. Instances that need a
//! complete polynomial above the configured order limit are reported as
//! skipped.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::circulant::{enumerate_circulants, near_one_optimal_spec, near_zero_optimal_spec};
use crate::digraph::{Digraph, VertexSet, MAX_VERTICES};
use crate::error::Result;
use crate::families::{bundled_star, directed_cycle, g_family, h_family, star_plus_arc};
use crate::optimality::{compare_polynomials, tournament_polynomials, Favoured};
use crate::poly::{binomial, PowerPoly, ReliabilityPolynomial};
use crate::reliability::{exact_scnr_with_limit, leading_coefficients, MAX_EXACT_N};
use crate::sign::sign_profile;
use crate::subsets::k_subsets;

pub mod claims {
    pub const DIRECTED_CYCLE: &str = "directed-cycle-formula";
    pub const BUNDLE_COEFFICIENT: &str = "bundle-coefficient";
    pub const STAR_RECURSION: &str = "star-recursion";
    pub const STAR_DOMINANCE: &str = "star-dominance";
    pub const STAR_PLUS_ARC: &str = "star-plus-arc-redundancy";
    pub const SPARSE_NONEXISTENCE: &str = "sparse-nonexistence";
    pub const EVEN_F1: &str = "even-circulant-f1";
    pub const EVEN_F2: &str = "even-circulant-f2";
    pub const EVEN_F2_STRICT: &str = "even-circulant-f2-strict-max";
    pub const ODD_F2: &str = "odd-circulant-f2";
    pub const ODD_F3: &str = "odd-circulant-f3";
    pub const ODD_F4_MAX: &str = "odd-circulant-f4-max";
    pub const ODD_F5_STRICT: &str = "odd-circulant-f5-strict-max";
    pub const DIV3_MAX: &str = "div3-circulant-f1-f4-max";
    pub const DIV3_F5_STRICT: &str = "div3-circulant-f5-strict-max";
    pub const TRIVIAL_EVEN: &str = "trivial-failure-even";
    pub const TRIVIAL_ODD: &str = "trivial-failure-odd";
    pub const TRIVIAL_DIV3: &str = "trivial-failure-div3";
    pub const NO_OPTIMAL_CIRCULANT: &str = "no-optimal-circulant";

    pub const ALL: [&str; 19] = [
        DIRECTED_CYCLE,
        BUNDLE_COEFFICIENT,
        STAR_RECURSION,
        STAR_DOMINANCE,
        STAR_PLUS_ARC,
        SPARSE_NONEXISTENCE,
        EVEN_F1,
        EVEN_F2,
        EVEN_F2_STRICT,
        ODD_F2,
        ODD_F3,
        ODD_F4_MAX,
        ODD_F5_STRICT,
        DIV3_MAX,
        DIV3_F5_STRICT,
        TRIVIAL_EVEN,
        TRIVIAL_ODD,
        TRIVIAL_DIV3,
        NO_OPTIMAL_CIRCULANT,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub cycle: RangeInclusive<usize>,
    pub bundle_samples: usize,
    pub bundle_max_n: usize,
    pub seed: u64,
    pub star: RangeInclusive<usize>,
    pub star_exhaustive: RangeInclusive<usize>,
    pub sparse: RangeInclusive<usize>,
    /// Orders checked for the even-order results (odd values are ignored).
    pub even: RangeInclusive<usize>,
    /// Orders checked for odd orders prime to 3.
    pub odd: RangeInclusive<usize>,
    /// Orders checked for odd multiples of 3.
    pub div3: RangeInclusive<usize>,
    pub witness: RangeInclusive<usize>,
    /// Checks that need a complete polynomial are skipped above this order.
    pub full_limit: usize,
    /// Claim whose computed coefficients are perturbed, to exercise the failure path.
    pub fault: Option<String>,
}

/// Largest order for the exhaustive arc-set enumeration.
pub const MAX_EXHAUSTIVE_N: usize = 6;

/// Default order limit for checks that enumerate every vertex subset.
pub const DEFAULT_FULL_LIMIT: usize = 20;

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cycle: 2..=12,
            bundle_samples: 200,
            bundle_max_n: 12,
            seed: 0x5c4e,
            star: 3..=12,
            star_exhaustive: 4..=5,
            sparse: 5..=9,
            even: 6..=14,
            odd: 5..=15,
            div3: 9..=21,
            witness: 5..=14,
            full_limit: DEFAULT_FULL_LIMIT,
            fault: None,
        }
    }
}

impl VerifyConfig {
    fn even_orders(&self) -> Vec<usize> {
        self.even.clone().filter(|n| n % 2 == 0 && *n >= 4).collect()
    }

    fn odd_orders(&self) -> Vec<usize> {
        self.odd.clone().filter(|n| n % 2 == 1 && n % 3 != 0 && *n >= 5).collect()
    }

    fn div3_orders(&self) -> Vec<usize> {
        self.div3.clone().filter(|n| n % 2 == 1 && n % 3 == 0).collect()
    }

    fn full_limit(&self) -> usize {
        self.full_limit.min(MAX_EXACT_N)
    }

    fn faulty(&self, claim: &str) -> bool {
        self.fault.as_deref() == Some(claim)
    }

    /// Flips `f[i]` between zero and nonzero when `claim` is the injected fault.
    fn inject(&self, claim: &str, f: &mut [BigUint], i: usize) {
        if self.faulty(claim) && i < f.len() {
            f[i] = if f[i].is_zero() { BigUint::one() } else { BigUint::zero() };
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub instance: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl ClaimResult {
    fn new(claim: &'static str, instance: impl Into<String>, ok: bool, detail: String) -> Self {
        ClaimResult {
            claim,
            instance: instance.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
            counterexample: None,
        }
    }

    fn skipped(claim: &'static str, instance: impl Into<String>, detail: String) -> Self {
        ClaimResult {
            claim,
            instance: instance.into(),
            status: Status::Skipped,
            detail,
            counterexample: None,
        }
    }

    fn with_counterexample(mut self, value: Value) -> Self {
        if self.status == Status::Fail {
            self.counterexample = Some(value);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub results: Vec<ClaimResult>,
}

impl VerifyReport {
    pub fn from_results(results: Vec<ClaimResult>) -> Self {
        let count = |s| results.iter().filter(|r| r.status == s).count();
        let (pass, fail, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        VerifyReport {
            passed: fail == 0,
            pass,
            fail,
            skipped,
            results,
        }
    }

    pub fn claim(&self, claim: &str) -> impl Iterator<Item = &ClaimResult> {
        let claim = claim.to_string();
        self.results.iter().filter(move |r| r.claim == claim)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,instance,status,detail\n");
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(out, "{},{},{},{}", r.claim, csv_field(&r.instance), status, csv_field(&r.detail));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{tag}  {:<30} {:<12} {}", r.claim, r.instance, r.detail);
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.pass, self.fail, self.skipped
        );
        out
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn show(f: &[BigUint]) -> String {
    let parts: Vec<String> = f.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn exact_f(g: &Digraph, limit: usize) -> Result<Vec<BigUint>> {
    Ok(exact_scnr_with_limit(g, limit)?.f().to_vec())
}

fn full_skip(claim: &'static str, instance: String, n: usize, limit: usize) -> ClaimResult {
    ClaimResult::skipped(
        claim,
        instance,
        format!("order {n} exceeds the full-enumeration limit {limit}"),
    )
}

/// Runs every claim over the ranges in `config`.
pub fn verify_paper_suite(config: &VerifyConfig) -> VerifyReport {
    let mut results = Vec::new();
    results.extend(check_directed_cycles(config));
    results.extend(check_bundle_coefficient(config));
    results.extend(check_star_recursion(config));
    results.extend(check_star_dominance(config));
    results.extend(check_star_plus_arc(config));
    results.extend(check_sparse_nonexistence(config));
    results.extend(check_even_circulants(config));
    results.extend(check_odd_circulants(config));
    results.extend(check_div3_circulants(config));
    results.extend(check_trivial_failures(config));
    results.extend(check_no_optimal_circulant(config));
    VerifyReport::from_results(results)
}

/// `F_0 = 1`, `F_(n-1) = n`, every other coefficient 0, and the power form
/// equals `n p (1-p)^(n-1) + p^n`.
pub fn check_directed_cycles(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::DIRECTED_CYCLE;
    let limit = config.full_limit();
    config
        .cycle
        .clone()
        .filter(|&n| n >= 2)
        .map(|n| {
            let instance = format!("n={n}");
            if n > limit {
                return full_skip(claim, instance, n, limit);
            }
            let g = directed_cycle(n).expect("n >= 2");
            let mut f = exact_f(&g, limit).expect("within limit");
            config.inject(claim, &mut f, n - 1);
            let expected: Vec<BigUint> = (0..=n)
                .map(|i| match i {
                    0 => BigUint::one(),
                    i if i == n - 1 => big(n),
                    _ => BigUint::zero(),
                })
                .collect();
            let one_minus_p = PowerPoly::from_i64(&[1, -1]);
            let mut formula = PowerPoly::from_i64(&[0, n as i64]);
            for _ in 0..n - 1 {
                formula = formula.mul(&one_minus_p);
            }
            let mut p_n = vec![0i64; n + 1];
            p_n[n] = 1;
            formula = formula.sub(&PowerPoly::from_i64(&p_n).neg());
            let power_ok = ReliabilityPolynomial::new(f.clone())
                .map(|rp| rp.to_power_basis() == formula)
                .unwrap_or(false);
            let ok = f == expected && power_ok;
            ClaimResult::new(claim, instance, ok, format!("F = {}", show(&f)))
                .with_counterexample(json!({ "expected": show(&expected), "found": show(&f) }))
        })
        .collect()
}

fn random_strongly_connected(rng: &mut ChaCha8Rng, max_n: usize) -> Digraph {
    loop {
        let n = rng.random_range(2..=max_n);
        let density = rng.random_range(0.2..0.7);
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v)
            .filter(|_| rng.random_bool(density))
            .collect();
        let g = Digraph::new(n, arcs).expect("valid arcs");
        if g.is_strongly_connected() {
            return g;
        }
    }
}

/// `N_2` equals the number of bundles on seeded random strongly connected digraphs.
pub fn check_bundle_coefficient(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::BUNDLE_COEFFICIENT;
    let limit = config.full_limit();
    let max_n = config.bundle_max_n.clamp(2, MAX_VERTICES);
    let instance = format!("{} digraphs, n<={max_n}", config.bundle_samples);
    if max_n > limit {
        return vec![full_skip(claim, instance, max_n, limit)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let graphs: Vec<Digraph> = (0..config.bundle_samples)
        .map(|_| random_strongly_connected(&mut rng, max_n))
        .collect();
    let mismatch = graphs.iter().find_map(|g| {
        let mut f = exact_f(g, limit).expect("within limit");
        config.inject(claim, &mut f, g.order().saturating_sub(2));
        let n = g.order();
        let n2 = if n >= 2 { f[n - 2].clone() } else { BigUint::zero() };
        (n2 != big(g.count_bundles())).then(|| (g.clone(), n2))
    });
    let ok = mismatch.is_none();
    let detail = match &mismatch {
        None => format!("N_2 = bundles on all {} samples", graphs.len()),
        Some((g, n2)) => format!("N_2 = {n2} but {} bundles", g.count_bundles()),
    };
    let result = ClaimResult::new(claim, instance, ok, detail);
    vec![match mismatch {
        Some((g, _)) => result.with_counterexample(serde_json::from_str(&g.to_json()).expect("json")),
        None => result,
    }]
}

/// `Rel(S_n) = (1-p) Rel(S_(n-1)) + p ((1-p)^(n-1) + p)` as polynomials.
pub fn check_star_recursion(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::STAR_RECURSION;
    let limit = config.full_limit();
    config
        .star
        .clone()
        .filter(|&n| n >= 3)
        .map(|n| {
            let instance = format!("n={n}");
            if n > limit {
                return full_skip(claim, instance, n, limit);
            }
            let mut f = exact_f(&bundled_star(n).expect("n >= 3"), limit).expect("within limit");
            config.inject(claim, &mut f, 1);
            let prev = exact_f(&bundled_star(n - 1).expect("n >= 2"), limit).expect("within limit");
            let lhs = ReliabilityPolynomial::new(f.clone()).map(|rp| rp.to_power_basis());
            let prev = ReliabilityPolynomial::new(prev).expect("valid").to_power_basis();
            let one_minus_p = PowerPoly::from_i64(&[1, -1]);
            let p = PowerPoly::from_i64(&[0, 1]);
            let mut tail = PowerPoly::from_i64(&[1]);
            for _ in 0..n - 1 {
                tail = tail.mul(&one_minus_p);
            }
            let rhs = one_minus_p.mul(&prev).sub(&p.mul(&tail.sub(&p.neg())).neg());
            let ok = lhs.as_ref().is_ok_and(|l| *l == rhs);
            ClaimResult::new(claim, instance, ok, format!("Rel(S_{n}) = {rhs}"))
                .with_counterexample(json!({ "F": show(&f), "recursion": rhs.to_string() }))
        })
        .collect()
}

/// All strongly connected digraphs of order `n` with exactly `m` arcs.
pub fn strongly_connected_with_arcs(n: usize, m: usize) -> Vec<Digraph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    assert!(slots.len() <= MAX_VERTICES, "too many arc slots for n = {n}");
    k_subsets(slots.len(), m)
        .par_bridge()
        .filter_map(|s| {
            let g = Digraph::new(n, s.iter().map(|i| slots[i])).expect("valid arcs");
            g.is_strongly_connected().then_some(g)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

impl PartialOrd for Digraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Digraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.arcs()).cmp(&(other.order(), other.arcs()))
    }
}

/// Distinct F-vectors of strongly connected digraphs with `n` vertices and `m` arcs.
pub fn distinct_polynomials_with_arcs(n: usize, m: usize) -> Vec<ReliabilityPolynomial> {
    let polys: BTreeSet<Vec<BigUint>> = strongly_connected_with_arcs(n, m)
        .par_iter()
        .map(|g| exact_f(g, MAX_EXACT_N).expect("small order"))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    polys
        .into_iter()
        .map(|f| ReliabilityPolynomial::new(f).expect("valid"))
        .collect()
}

/// `Rel(S_n) - Rel(G) >= 0` on (0, 1) for every strongly connected `G` with
/// `2n - 2` arcs, by exhaustive enumeration.
pub fn check_star_dominance(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::STAR_DOMINANCE;
    config
        .star_exhaustive
        .clone()
        .filter(|&n| n >= 3)
        .map(|n| {
            let instance = format!("n={n}");
            if n > MAX_EXHAUSTIVE_N || n > config.full_limit() {
                return ClaimResult::skipped(
                    claim,
                    instance,
                    format!("exhaustive arc-set enumeration is limited to n <= {MAX_EXHAUSTIVE_N}"),
                );
            }
            let mut star = exact_f(&bundled_star(n).expect("n >= 3"), MAX_EXACT_N).expect("small");
            config.inject(claim, &mut star, 1);
            let star_power = match ReliabilityPolynomial::new(star.clone()) {
                Ok(rp) => rp.to_power_basis(),
                Err(e) => {
                    return ClaimResult::new(claim, instance, false, format!("invalid F-vector: {e}"))
                }
            };
            let others = distinct_polynomials_with_arcs(n, 2 * n - 2);
            let bad = others.par_iter().find_first(|h| {
                !sign_profile(&star_power.sub(&h.to_power_basis())).is_non_negative()
            });
            let detail = format!(
                "S_{n} dominates {} distinct polynomials on {} arcs",
                others.len(),
                2 * n - 2
            );
            ClaimResult::new(claim, instance, bad.is_none(), detail)
                .with_counterexample(json!({ "F": bad.map(|h| show(h.f())) }))
        })
        .collect()
}

/// `Rel(D_n) = Rel(S_n)`.
pub fn check_star_plus_arc(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::STAR_PLUS_ARC;
    let limit = config.full_limit();
    config
        .star
        .clone()
        .filter(|&n| n >= 3)
        .map(|n| {
            let instance = format!("n={n}");
            if n > limit {
                return full_skip(claim, instance, n, limit);
            }
            let mut d = exact_f(&star_plus_arc(n).expect("n >= 3"), limit).expect("within limit");
            config.inject(claim, &mut d, 1);
            let s = exact_f(&bundled_star(n).expect("n >= 3"), limit).expect("within limit");
            ClaimResult::new(claim, instance, d == s, format!("F(D_{n}) = {}", show(&d)))
                .with_counterexample(json!({ "D": show(&d), "S": show(&s) }))
        })
        .collect()
}

/// `F_1(H_k) = n-k+1 > F_1(G_k) = n-k`, `G_k` wins near 0, `H_k` wins near 1,
/// and the curves cross inside (0, 1).
pub fn check_sparse_nonexistence(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::SPARSE_NONEXISTENCE;
    let limit = config.full_limit();
    let orders: Vec<usize> = config.sparse.clone().filter(|&n| n >= 5).collect();
    let pairs: Vec<(usize, usize)> = orders
        .iter()
        .filter(|&&n| n <= limit)
        .flat_map(|&n| (3..n).map(move |k| (n, k)))
        .collect();
    let skipped = orders
        .iter()
        .filter(|&&n| n > limit)
        .map(|&n| full_skip(claim, format!("n={n}"), n, limit));
    let checked: Vec<ClaimResult> = pairs
        .into_par_iter()
        .map(|(n, k)| {
            let instance = format!("n={n},k={k}");
            let mut gf = exact_f(&g_family(n, k).expect("valid k"), limit).expect("within limit");
            config.inject(claim, &mut gf, 1);
            let hf = exact_f(&h_family(n, k).expect("valid k"), limit).expect("within limit");
            let (Ok(g), Ok(h)) = (ReliabilityPolynomial::new(gf.clone()), ReliabilityPolynomial::new(hf.clone())) else {
                return ClaimResult::new(claim, instance, false, "invalid F-vector".into());
            };
            let v = compare_polynomials(&g, &h).expect("same order");
            let crossings = v.dominance.crossing_count();
            let ok = hf[1] == big(n - k + 1)
                && gf[1] == big(n - k)
                && v.near_zero == Favoured::First
                && matches!(v.near_zero_index, Some(2) | Some(3))
                && v.near_one == Favoured::Second
                && crossings >= 1;
            let detail = format!(
                "F_1(G)={} F_1(H)={} near0={:?}@N_{} near1={:?}@F_{} crossings={crossings}",
                gf[1],
                hf[1],
                v.near_zero,
                v.near_zero_index.map_or("-".into(), |i| i.to_string()),
                v.near_one,
                v.near_one_index.map_or("-".into(), |i| i.to_string()),
            );
            ClaimResult::new(claim, instance, ok, detail)
                .with_counterexample(json!({ "G": show(&gf), "H": show(&hf) }))
        })
        .collect();
    checked.into_iter().chain(skipped).collect()
}

/// Leading coefficients `F_0..=F_max` of the near-one spec and of every
/// connected class, with the near-one spec's class label.
#[derive(Clone)]
struct ClassTable {
    labels: Vec<String>,
    coeffs: Vec<Vec<BigUint>>,
    subject: usize,
    subject_spec: String,
}

fn class_table(n: usize, max: usize) -> ClassTable {
    let classes = enumerate_circulants(n as u64).expect("n >= 3");
    let subject_spec = near_one_optimal_spec(n as u64).expect("n >= 4");
    let subject = classes
        .iter()
        .position(|c| c.members.contains(&subject_spec))
        .expect("the near-one spec is connected");
    let coeffs = classes
        .par_iter()
        .map(|c| {
            let g = c.canonical.to_digraph().expect("valid spec");
            leading_coefficients(&g, max).expect("direct path")
        })
        .collect();
    ClassTable {
        labels: classes.iter().map(|c| c.canonical.to_string()).collect(),
        coeffs,
        subject,
        subject_spec: subject_spec.to_string(),
    }
}

impl ClassTable {
    fn subject_label(&self) -> &str {
        &self.subject_spec
    }

    /// Classes other than the subject whose `F_i` is at least the subject's
    /// (`strict`) or exceeds it.
    fn rivals(&self, i: usize, strict: bool) -> Vec<String> {
        let own = &self.coeffs[self.subject][i];
        (0..self.labels.len())
            .filter(|&j| j != self.subject)
            .filter(|&j| if strict { self.coeffs[j][i] >= *own } else { self.coeffs[j][i] > *own })
            .map(|j| format!("{} (F_{i}={})", self.labels[j], self.coeffs[j][i]))
            .collect()
    }

    /// The table as seen by `claim`, with any injected fault applied to `F_i`.
    fn for_claim(&self, config: &VerifyConfig, claim: &str, i: usize) -> ClassTable {
        let mut table = self.clone();
        config.inject(claim, &mut table.coeffs[self.subject], i);
        table
    }

    fn subject_coefficient(&self, config: &VerifyConfig, claim: &str, i: usize) -> BigUint {
        self.for_claim(config, claim, i).coeffs[self.subject][i].clone()
    }
}

fn maximality_result(
    claim: &'static str,
    n: usize,
    table: &ClassTable,
    indices: RangeInclusive<usize>,
    strict: bool,
) -> ClaimResult {
    let rivals: Vec<String> = indices.clone().flat_map(|i| table.rivals(i, strict)).collect();
    let values: Vec<String> = indices
        .map(|i| format!("F_{i}={}", table.coeffs[table.subject][i]))
        .collect();
    let kind = if strict { "strictly maximal" } else { "maximal" };
    let detail = if rivals.is_empty() {
        format!("{} {} {kind}", table.subject_label(), values.join(" "))
    } else {
        format!("{} {} not {kind}: {}", table.subject_label(), values.join(" "), rivals.join("; "))
    };
    ClaimResult::new(claim, format!("n={n}"), rivals.is_empty(), detail)
        .with_counterexample(json!({ "rivals": rivals }))
}

/// For `n = 2k`: `F_1 = n`, `F_2 = k(2k-2)`, and `F_2` beats every other class.
pub fn check_even_circulants(config: &VerifyConfig) -> Vec<ClaimResult> {
    config
        .even_orders()
        .into_par_iter()
        .flat_map_iter(|n| {
            if n > MAX_VERTICES {
                return vec![ClaimResult::skipped(claims::EVEN_F1, format!("n={n}"), "order exceeds 64".into())];
            }
            let table = class_table(n, 2);
            let k = n / 2;
            let f1 = table.subject_coefficient(config, claims::EVEN_F1, 1);
            let f2 = table.subject_coefficient(config, claims::EVEN_F2, 2);
            let label = table.subject_label();
            vec![
                ClaimResult::new(claims::EVEN_F1, format!("n={n}"), f1 == big(n), format!("{label} F_1={f1} expected {n}")),
                ClaimResult::new(
                    claims::EVEN_F2,
                    format!("n={n}"),
                    f2 == big(k * (2 * k - 2)),
                    format!("{label} F_2={f2} expected {}", k * (2 * k - 2)),
                ),
                maximality_result(
                    claims::EVEN_F2_STRICT,
                    n,
                    &table.for_claim(config, claims::EVEN_F2_STRICT, 2),
                    2..=2,
                    true,
                ),
            ]
        })
        .collect()
}

/// For odd `n` prime to 3: `F_2 = n(n-3)/2`, `F_3 = C(n,3) - n(n-4)`, maximal
/// `F_4` and strictly maximal `F_5` for `{1, 2·3⁻¹}`.
pub fn check_odd_circulants(config: &VerifyConfig) -> Vec<ClaimResult> {
    config
        .odd_orders()
        .into_par_iter()
        .flat_map_iter(|n| {
            if n > MAX_VERTICES {
                return vec![ClaimResult::skipped(claims::ODD_F2, format!("n={n}"), "order exceeds 64".into())];
            }
            let table = class_table(n, 5);
            let label = table.subject_label();
            let f2 = table.subject_coefficient(config, claims::ODD_F2, 2);
            let f3 = table.subject_coefficient(config, claims::ODD_F3, 3);
            let want2 = n * (n - 3) / 2;
            let want3 = binomial(n, 3) - big(n * (n - 4));
            vec![
                ClaimResult::new(claims::ODD_F2, format!("n={n}"), f2 == big(want2), format!("{label} F_2={f2} expected {want2}")),
                ClaimResult::new(
                    claims::ODD_F3,
                    format!("n={n}"),
                    f3 == want3,
                    format!("{label} F_3={f3} expected C(n,3)-n(n-4)={want3}"),
                )
                .with_counterexample(json!({ "found": f3.to_string(), "expected": want3.to_string() })),
                maximality_result(claims::ODD_F4_MAX, n, &table.for_claim(config, claims::ODD_F4_MAX, 4), 4..=4, false),
                maximality_result(claims::ODD_F5_STRICT, n, &table.for_claim(config, claims::ODD_F5_STRICT, 5), 5..=5, true),
            ]
        })
        .collect()
}

/// For odd multiples of 3: `{1, 3·2⁻¹}` has maximal `F_1..F_4` and strictly
/// maximal `F_5`.
pub fn check_div3_circulants(config: &VerifyConfig) -> Vec<ClaimResult> {
    config
        .div3_orders()
        .into_par_iter()
        .flat_map_iter(|n| {
            if n > MAX_VERTICES {
                return vec![ClaimResult::skipped(claims::DIV3_MAX, format!("n={n}"), "order exceeds 64".into())];
            }
            let table = class_table(n, 5);
            vec![
                maximality_result(claims::DIV3_MAX, n, &table.for_claim(config, claims::DIV3_MAX, 4), 1..=4, false),
                maximality_result(claims::DIV3_F5_STRICT, n, &table.for_claim(config, claims::DIV3_F5_STRICT, 5), 5..=5, true),
            ]
        })
        .collect()
}

/// First failure set of size at most `max_failures` that breaks strong
/// connectivity without a trivial witness.
pub fn nontrivial_disconnection(g: &Digraph, max_failures: usize) -> Option<VertexSet> {
    let n = g.order();
    let all = g.vertices();
    (0..=max_failures.min(n.saturating_sub(1))).find_map(|size| {
        k_subsets(n, size).par_bridge().find_map_first(|failed| {
            let operational = VertexSet::from_bits(all.bits() & !failed.bits());
            (!g.is_strongly_connected_on(operational) && !g.has_trivial_failure(failed))
                .then_some(failed)
        })
    })
}

fn trivial_failure_result(claim: &'static str, n: usize, max_failures: usize, config: &VerifyConfig) -> ClaimResult {
    let instance = format!("n={n}");
    if n > MAX_VERTICES {
        return ClaimResult::skipped(claim, instance, "order exceeds 64".into());
    }
    let spec = near_one_optimal_spec(n as u64).expect("n >= 4");
    let g = spec.to_digraph().expect("valid spec");
    let mut found = nontrivial_disconnection(&g, max_failures);
    if config.faulty(claim) && found.is_none() {
        found = Some(VertexSet::EMPTY);
    }
    let detail = match found {
        None => format!("{spec}: every disconnecting failure set of size <= {max_failures} is trivial"),
        Some(s) => format!("{spec}: failure set {s:?} disconnects without a trivial witness"),
    };
    ClaimResult::new(claim, instance, found.is_none(), detail)
        .with_counterexample(json!({ "failed": found.map(|s| s.iter().collect::<Vec<_>>()) }))
}

/// Disconnecting failure sets of size <= 2 (even) or <= 5 (odd) on the
/// near-one spec always leave a vertex without operational in- or out-neighbours.
pub fn check_trivial_failures(config: &VerifyConfig) -> Vec<ClaimResult> {
    let mut jobs: Vec<(&'static str, usize, usize)> = Vec::new();
    jobs.extend(config.even_orders().into_iter().map(|n| (claims::TRIVIAL_EVEN, n, 2)));
    jobs.extend(config.odd_orders().into_iter().map(|n| (claims::TRIVIAL_ODD, n, 5)));
    jobs.extend(config.div3_orders().into_iter().map(|n| (claims::TRIVIAL_DIV3, n, 5)));
    jobs.into_par_iter()
        .map(|(claim, n, max)| trivial_failure_result(claim, n, max, config))
        .collect()
}

/// Over all connected classes of order `n`: no global winner, the bundled
/// cycle leads near 0, the near-one spec leads near 1, and those two cross.
pub fn check_no_optimal_circulant(config: &VerifyConfig) -> Vec<ClaimResult> {
    let claim = claims::NO_OPTIMAL_CIRCULANT;
    let limit = config.full_limit();
    config
        .witness
        .clone()
        .filter(|&n| n >= 4)
        .map(|n| {
            let instance = format!("n={n}");
            if n > limit {
                return full_skip(claim, instance, n, limit);
            }
            let classes = enumerate_circulants(n as u64).expect("n >= 3");
            let labels: Vec<String> = classes.iter().map(|c| c.canonical.to_string()).collect();
            let mut fs: Vec<Vec<BigUint>> = classes
                .par_iter()
                .map(|c| exact_f(&c.canonical.to_digraph().expect("valid"), limit).expect("within limit"))
                .collect();
            let zero_spec = near_zero_optimal_spec(n as u64).expect("n >= 3");
            let one_spec = near_one_optimal_spec(n as u64).expect("n >= 4");
            let zero_idx = classes.iter().position(|c| c.members.contains(&zero_spec)).expect("connected");
            let one_idx = classes.iter().position(|c| c.members.contains(&one_spec)).expect("connected");
            config.inject(claim, &mut fs[one_idx], 1);
            let polys: Vec<ReliabilityPolynomial> = match fs.iter().cloned().map(ReliabilityPolynomial::new).collect() {
                Ok(p) => p,
                Err(e) => return ClaimResult::new(claim, instance, false, format!("invalid F-vector: {e}")),
            };
            let report = tournament_polynomials("circulant", &labels, &polys).expect("nonempty");
            let zero_leads = report.near_zero_ranking[0] == labels[zero_idx];
            let one_leads = polys.iter().all(|p| polys[one_idx].f() >= p.f());
            let crossings = if zero_idx == one_idx {
                0
            } else {
                compare_polynomials(&polys[zero_idx], &polys[one_idx])
                    .expect("same order")
                    .dominance
                    .crossing_count()
            };
            let ok = !report.has_winner() && zero_leads && one_leads && crossings >= 1;
            let detail = format!(
                "winner={} near0={} near1={} {} vs {} crossings={crossings}",
                if report.has_winner() { report.winners.join("|") } else { "none".into() },
                report.near_zero_ranking[0],
                report.near_one_ranking[0],
                labels[zero_idx],
                labels[one_idx],
            );
            ClaimResult::new(claim, instance, ok, detail).with_counterexample(
                serde_json::to_value(&report).expect("report serialises"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            cycle: 2..=6,
            bundle_samples: 20,
            bundle_max_n: 6,
            star: 3..=6,
            star_exhaustive: 4..=4,
            sparse: 5..=6,
            even: 6..=8,
            odd: 11..=11,
            div3: 15..=15,
            witness: 6..=8,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_suite_passes_on_known_good_instances() {
        let report = verify_paper_suite(&small());
        let failures: Vec<_> = report
            .failures()
            .filter(|r| r.claim != claims::ODD_F3 && r.claim != claims::TRIVIAL_DIV3)
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
        // both are genuine counterexamples at these orders
        assert!(report.claim(claims::ODD_F3).all(|r| r.status == Status::Fail));
        assert!(report.claim(claims::TRIVIAL_DIV3).all(|r| r.status == Status::Fail));
    }

    #[test]
    fn injected_fault_is_reported_under_its_claim() {
        for claim in claims::ALL {
            if matches!(claim, claims::ODD_F3 | claims::TRIVIAL_DIV3) {
                continue;
            }
            let config = VerifyConfig {
                fault: Some(claim.to_string()),
                ..small()
            };
            let report = verify_paper_suite(&config);
            let failed: BTreeSet<&str> = report
                .failures()
                .map(|r| r.claim)
                .filter(|c| !matches!(*c, claims::ODD_F3 | claims::TRIVIAL_DIV3))
                .collect();
            assert_eq!(failed, BTreeSet::from([claim]));
        }
    }

    #[test]
    fn large_orders_are_skipped() {
        let config = VerifyConfig {
            cycle: 30..=30,
            witness: 30..=30,
            ..small()
        };
        let report = verify_paper_suite(&config);
        assert!(report.claim(claims::DIRECTED_CYCLE).all(|r| r.status == Status::Skipped));
        assert!(report.claim(claims::NO_OPTIMAL_CIRCULANT).all(|r| r.status == Status::Skipped));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    }
}
