//! Exact sign analysis of integer polynomials on the open interval (0, 1).
//!
//! Roots at the endpoints are divided out first, then a Sturm sequence counts
//! the distinct interior roots and bisection isolates each one. Every
//! evaluation is done in integers on homogenised coefficients.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::poly::{format_rational, sign_at, trim, PowerPoly};

/// Isolating intervals are refined until their width is at most this.
pub fn isolation_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignStatus {
    IdenticallyZero,
    #[serde(rename = "positive-on-(0,1)")]
    Positive,
    #[serde(rename = "negative-on-(0,1)")]
    Negative,
    Mixed,
}

/// An open interval `(lo, hi)` inside (0, 1) containing exactly one distinct root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// The polynomial changes sign across the root (odd multiplicity).
    pub sign_change: bool,
}

impl Serialize for RootInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RootInterval", 3)?;
        s.serialize_field("lo", &format_rational(&self.lo))?;
        s.serialize_field("hi", &format_rational(&self.hi))?;
        s.serialize_field("sign_change", &self.sign_change)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignProfile {
    pub status: SignStatus,
    pub roots: Vec<RootInterval>,
}

impl SignProfile {
    /// Identically zero or positive on (0, 1), tangencies allowed.
    pub fn is_non_negative(&self) -> bool {
        matches!(self.status, SignStatus::IdenticallyZero | SignStatus::Positive)
    }

    pub fn is_non_positive(&self) -> bool {
        matches!(self.status, SignStatus::IdenticallyZero | SignStatus::Negative)
    }

    pub fn crossings(&self) -> impl Iterator<Item = &RootInterval> {
        self.roots.iter().filter(|r| r.sign_change)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }
}

pub fn sign_profile(d: &PowerPoly) -> SignProfile {
    if d.is_zero() {
        return SignProfile {
            status: SignStatus::IdenticallyZero,
            roots: Vec::new(),
        };
    }
    let core = primitive(strip_endpoint_roots(d.coeffs().to_vec()));
    let roots = if core.len() <= 1 {
        Vec::new()
    } else {
        let seq = sturm_sequence(&core);
        let zero = BigRational::zero();
        let one = BigRational::one();
        let v0 = variations(&seq, &zero);
        let v1 = variations(&seq, &one);
        let mut out = Vec::new();
        isolate(&core, &seq, zero, one, v0, v1, &mut out);
        out
    };
    let status = if roots.iter().any(|r| r.sign_change) {
        SignStatus::Mixed
    } else {
        match interior_sign(&core) {
            Sign::Plus => SignStatus::Positive,
            Sign::Minus => SignStatus::Negative,
            Sign::NoSign => unreachable!("nonzero polynomial vanishing at every probe"),
        }
    };
    SignProfile { status, roots }
}

/// Number of sign changes seen when evaluating `d` at `k/segments`,
/// `k = 0..=segments`, skipping exact zeros.
pub fn sampled_sign_changes(d: &PowerPoly, segments: u32) -> usize {
    let den = BigInt::from(segments);
    let mut last = Sign::NoSign;
    let mut changes = 0;
    for k in 0..=segments {
        let s = d.sign_at(&BigInt::from(k), &den);
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct roots in (0, 1); `None` for the zero polynomial.
pub fn distinct_roots_in_open_unit(d: &PowerPoly) -> Option<usize> {
    if d.is_zero() {
        return None;
    }
    let core = primitive(strip_endpoint_roots(d.coeffs().to_vec()));
    if core.len() <= 1 {
        return Some(0);
    }
    let seq = sturm_sequence(&core);
    Some(variations(&seq, &BigRational::zero()) - variations(&seq, &BigRational::one()))
}

/// Divides out factors `p` and `(1 - p)`; both are positive on (0, 1) so the
/// sign there is unchanged.
fn strip_endpoint_roots(mut c: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut c);
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
    }
    while c.len() > 1 && c.iter().sum::<BigInt>().is_zero() {
        // c = (p - 1) q  =>  q_(j-1) = c_j + q_j ; dividing by (1 - p) negates q.
        let d = c.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        q[d - 1] = c[d].clone();
        for j in (1..d).rev() {
            q[j - 1] = &c[j] + &q[j];
        }
        c = q.into_iter().map(|x| -x).collect();
    }
    c
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut c);
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in c.iter_mut() {
            *x /= &g;
        }
    }
    c
}

fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(j, x)| x * BigInt::from(j))
        .collect()
}

/// Pseudo-remainder of `a` by `b`, rescaled so that it is a positive multiple
/// of the true remainder.
fn signed_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut steps = 0u32;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + dr - db] -= &c * bj;
        }
        trim(&mut r);
        steps += 1;
    }
    if lc.is_negative() && steps % 2 == 1 {
        for x in r.iter_mut() {
            *x = -&*x;
        }
    }
    r
}

fn sturm_sequence(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut seq = vec![p.to_vec(), primitive(derivative(p))];
    loop {
        let n = seq.len();
        let r = signed_prem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(primitive(r.into_iter().map(|x| -x).collect()));
    }
    seq
}

fn variations(seq: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for poly in seq {
        let s = sign_at(poly, x.numer(), x.denom());
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn value_sign(c: &[BigInt], x: &BigRational) -> Sign {
    sign_at(c, x.numer(), x.denom())
}

/// A point strictly inside `(lo, hi)` where `c` does not vanish, as close to
/// the midpoint as dyadic subdivision allows.
fn split_point(c: &[BigInt], lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for level in 1u32..64 {
        let den = 1u64 << level;
        let half = den / 2;
        // odd numerators, nearest the midpoint first
        let nums: Box<dyn Iterator<Item = u64>> = if level == 1 {
            Box::new(std::iter::once(1))
        } else {
            Box::new((1..half).step_by(2).flat_map(move |d| [half - d, half + d]))
        };
        for num in nums {
            let t = lo + &width * BigRational::new(num.into(), den.into());
            if value_sign(c, &t) != Sign::NoSign {
                return t;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

fn isolate(
    core: &[BigInt],
    seq: &[Vec<BigInt>],
    lo: BigRational,
    hi: BigRational,
    v_lo: usize,
    v_hi: usize,
    out: &mut Vec<RootInterval>,
) {
    let count = v_lo - v_hi;
    if count == 0 {
        return;
    }
    if count == 1 && &hi - &lo <= isolation_width() {
        let sign_change = value_sign(core, &lo) != value_sign(core, &hi);
        out.push(RootInterval { lo, hi, sign_change });
        return;
    }
    let t = split_point(core, &lo, &hi);
    let v_t = variations(seq, &t);
    isolate(core, seq, lo, t.clone(), v_lo, v_t, out);
    isolate(core, seq, t, hi, v_t, v_hi, out);
}

fn interior_sign(core: &[BigInt]) -> Sign {
    let t = split_point(core, &BigRational::zero(), &BigRational::one());
    value_sign(core, &t)
}
