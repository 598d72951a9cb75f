//! Two-generator circulant digraphs `Γ(Z_n, {a, b})`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families;

/// Order `n` and connection set `{a, b}` with `1 <= a < b <= n-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    n: u64,
    a: u64,
    b: u64,
}

impl CirculantSpec {
    /// Accepts the pair in either order.
    pub fn new(n: u64, a: u64, b: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a two-element connection set needs n >= 3, got {n}"
            )));
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if a == 0 || b >= n {
            return Err(Error::InvalidParameter(format!(
                "connection set {{{a},{b}}} must lie in 1..{n}"
            )));
        }
        if a == b {
            return Err(Error::InvalidParameter(format!(
                "connection set {{{a},{b}}} repeats an element"
            )));
        }
        Ok(CirculantSpec { n, a, b })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn pair(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn to_digraph(&self) -> Result<Digraph> {
        families::circulant(self.n as usize, &[self.a as usize, self.b as usize])
    }

    /// Image under multiplication by `u`, or `None` if an element maps to 0
    /// or both elements collide.
    fn scaled(&self, u: u64) -> Option<CirculantSpec> {
        let (a, b) = (self.a * u % self.n, self.b * u % self.n);
        CirculantSpec::new(self.n, a, b).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CirculantJson::from(*self)).expect("spec serialises")
    }

    /// Parses `{"n": <int>, "S": [a, b]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: CirculantJson = serde_json::from_str(text)?;
        CirculantSpec::new(raw.n, raw.s[0], raw.s[1])
    }
}

impl fmt::Debug for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ(Z_{},{{{},{}}})", self.n, self.a, self.b)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}{{{},{}}}", self.n, self.a, self.b)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CirculantJson {
    pub n: u64,
    #[serde(rename = "S")]
    pub s: [u64; 2],
}

impl From<CirculantSpec> for CirculantJson {
    fn from(spec: CirculantSpec) -> Self {
        CirculantJson {
            n: spec.n,
            s: [spec.a, spec.b],
        }
    }
}

/// Orbit of a spec under multiplication by the units of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantClass {
    /// Lexicographically least member.
    pub canonical: CirculantSpec,
    /// All members, sorted.
    pub members: Vec<CirculantSpec>,
}

/// `y` in `1..n` with `x y ≡ 1 (mod n)`.
pub fn mod_inverse(x: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::NotInvertible { x, n });
    }
    let (mut r0, mut r1) = (n as i128, (x % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { x, n });
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|u| u.gcd(&n) == 1).collect()
}

/// `gcd(n, a, b) = 1`.
pub fn is_connected_circulant(spec: &CirculantSpec) -> bool {
    spec.n.gcd(&spec.a).gcd(&spec.b) == 1
}

/// The least unit `u` with `u·{a1,b1} = {a2,b2}`, if any.
pub fn adam_multiplier(s1: &CirculantSpec, s2: &CirculantSpec) -> Result<Option<u64>> {
    if s1.n != s2.n {
        return Err(Error::OrderMismatch {
            left: s1.n as usize,
            right: s2.n as usize,
        });
    }
    Ok(units(s1.n)
        .into_iter()
        .find(|&u| s1.scaled(u).as_ref() == Some(s2)))
}

pub fn adam_equivalent(s1: &CirculantSpec, s2: &CirculantSpec) -> Result<bool> {
    Ok(adam_multiplier(s1, s2)?.is_some())
}

pub fn canonical_class(spec: &CirculantSpec) -> CirculantClass {
    let members: BTreeSet<CirculantSpec> = units(spec.n)
        .into_iter()
        .filter_map(|u| spec.scaled(u))
        .collect();
    let members: Vec<_> = members.into_iter().collect();
    CirculantClass {
        canonical: members[0],
        members,
    }
}

/// One class per Ádám orbit of connected two-element specs, ordered by
/// canonical representative.
pub fn enumerate_circulants(n: u64) -> Result<Vec<CirculantClass>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "circulant enumeration needs n >= 3, got {n}"
        )));
    }
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for a in 1..n {
        for b in a + 1..n {
            let spec = CirculantSpec::new(n, a, b)?;
            if !is_connected_circulant(&spec) || seen.contains(&spec) {
                continue;
            }
            let class = canonical_class(&spec);
            seen.extend(class.members.iter().copied());
            classes.push(class);
        }
    }
    classes.sort_by_key(|c| c.canonical);
    Ok(classes)
}

/// The generator pair that maximises reliability near `p = 1`:
/// `{1, n/2+1}` for even `n`, `{1, 2·3⁻¹}` for odd `n` prime to 3, and
/// `{1, 3·2⁻¹}` for odd multiples of 3.
pub fn near_one_optimal_spec(n: u64) -> Result<CirculantSpec> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "near-one optimal circulant needs n >= 4, got {n}"
        )));
    }
    let b = if n.is_multiple_of(2) {
        n / 2 + 1
    } else if !n.is_multiple_of(3) {
        2 * mod_inverse(3, n)? % n
    } else {
        3 * mod_inverse(2, n)? % n
    };
    CirculantSpec::new(n, 1, b)
}

/// The bundled cycle `{1, n-1}`.
pub fn near_zero_optimal_spec(n: u64) -> Result<CirculantSpec> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "bundled cycle needs n >= 3, got {n}"
        )));
    }
    CirculantSpec::new(n, 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, a: u64, b: u64) -> CirculantSpec {
        CirculantSpec::new(n, a, b).unwrap()
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 11).unwrap(), 4);
        assert_eq!(mod_inverse(2, 21).unwrap(), 11);
        for n in 2..40 {
            assert_eq!(mod_inverse(1, n).unwrap(), 1);
        }
        assert_eq!(mod_inverse(3, 9), Err(Error::NotInvertible { x: 3, n: 9 }));
        assert_eq!(mod_inverse(14, 11).unwrap(), 4);
    }

    #[test]
    fn connectivity() {
        assert!(!is_connected_circulant(&spec(9, 3, 6)));
        assert!(is_connected_circulant(&spec(9, 1, 3)));
        assert!(!is_connected_circulant(&spec(8, 2, 6)));
        assert!(!spec(8, 2, 6).to_digraph().unwrap().is_strongly_connected());
    }

    #[test]
    fn adam_equivalence() {
        assert_eq!(adam_multiplier(&spec(9, 1, 3), &spec(9, 2, 6)).unwrap(), Some(2));
        assert_eq!(adam_multiplier(&spec(8, 1, 5), &spec(8, 3, 7)).unwrap(), Some(3));
        assert!(adam_equivalent(&spec(7, 1, 3), &spec(7, 1, 3)).unwrap());
        assert!(!adam_equivalent(&spec(8, 1, 5), &spec(8, 1, 7)).unwrap());
        assert!(adam_equivalent(&spec(8, 1, 5), &spec(9, 1, 5)).is_err());
    }

    #[test]
    fn multiplier_is_a_digraph_isomorphism() {
        let g = spec(9, 1, 3).to_digraph().unwrap();
        let h = spec(9, 2, 6).to_digraph().unwrap();
        let mapped = Digraph::new(9, g.arcs().iter().map(|&(u, v)| (2 * u % 9, 2 * v % 9))).unwrap();
        assert_eq!(mapped, h);
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(canonical_class(&spec(9, 2, 6)).canonical, spec(9, 1, 3));
        assert_eq!(canonical_class(&spec(8, 1, 7)).canonical, spec(8, 1, 7));
        assert_eq!(
            canonical_class(&spec(8, 1, 5)).members,
            vec![spec(8, 1, 5), spec(8, 3, 7)]
        );
    }

    #[test]
    fn enumeration() {
        let five = enumerate_circulants(5).unwrap();
        let covered: usize = five.iter().map(|c| c.members.len()).sum();
        assert_eq!(covered, 6);
        let six = enumerate_circulants(6).unwrap();
        assert!(six.iter().flat_map(|c| &c.members).all(is_connected_circulant));
        assert!(!six.iter().any(|c| c.members.contains(&spec(6, 2, 4))));
        assert!(six.iter().any(|c| c.canonical == spec(6, 1, 5)));
        let four = enumerate_circulants(4).unwrap();
        assert!(four.iter().any(|c| c.canonical == spec(4, 1, 3)));
        assert!(enumerate_circulants(2).is_err());
    }

    #[test]
    fn optimal_specs() {
        assert_eq!(near_one_optimal_spec(8).unwrap(), spec(8, 1, 5));
        assert_eq!(near_one_optimal_spec(11).unwrap(), spec(11, 1, 8));
        assert_eq!(near_one_optimal_spec(21).unwrap(), spec(21, 1, 12));
        assert_eq!(near_one_optimal_spec(9).unwrap(), spec(9, 1, 6));
        assert!(near_one_optimal_spec(3).is_err());
        assert_eq!(near_zero_optimal_spec(8).unwrap(), spec(8, 1, 7));
        assert_eq!(near_zero_optimal_spec(9).unwrap(), spec(9, 1, 8));
        assert_eq!(near_zero_optimal_spec(5).unwrap(), spec(5, 1, 4));
    }

    #[test]
    fn json() {
        let s = spec(9, 3, 1);
        assert_eq!(s.to_json(), r#"{"n":9,"S":[1,3]}"#);
        assert_eq!(CirculantSpec::from_json_str(r#"{"n":9,"S":[3,1]}"#).unwrap(), s);
        assert!(CirculantSpec::from_json_str(r#"{"n":9,"S":[0,1]}"#).is_err());
        assert!(CirculantSpec::from_json_str(r#"{"n":9,"S":[1,1]}"#).is_err());
        assert!(CirculantSpec::from_json_str(r#"{"n":9,"S":[1]}"#).is_err());
    }
}
