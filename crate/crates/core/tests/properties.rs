use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use scnr_core::circulant::{
    adam_equivalent, canonical_class, is_connected_circulant, units, CirculantSpec,
};
use scnr_core::optimality::{compare_polynomials, Favoured};
use scnr_core::poly::{binomial, format_rational, parse_rational};
use scnr_core::reliability::{count_surviving_failures, exact_scnr};
use scnr_core::sign::{sampled_sign_changes, sign_profile, SignStatus};
use scnr_core::subsets::k_subsets;
use scnr_core::{Digraph, PowerPoly, ReliabilityPolynomial, VertexSet};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1);
        (Just(n), proptest::collection::vec(any::<bool>(), slots))
    })
    .prop_map(|(n, bits)| {
        let arcs = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .zip(bits)
            .filter_map(|(arc, keep)| keep.then_some(arc));
        Digraph::new(n, arcs).unwrap()
    })
}

fn strongly_connected(max_n: usize) -> impl Strategy<Value = Digraph> {
    digraph(max_n).prop_filter("strongly connected", |g| g.is_strongly_connected())
}

/// Reachability by repeated squaring of the adjacency relation.
fn naive_strongly_connected(g: &Digraph, s: &[usize]) -> bool {
    if s.is_empty() {
        return false;
    }
    let k = s.len();
    let mut reach = vec![vec![false; k]; k];
    for (i, &u) in s.iter().enumerate() {
        reach[i][i] = true;
        for (j, &v) in s.iter().enumerate() {
            if g.has_arc(u, v) {
                reach[i][j] = true;
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if reach[i][m] && reach[m][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}

fn naive_f(g: &Digraph) -> Vec<BigUint> {
    let n = g.order();
    let mut f = vec![0u64; n + 1];
    for mask in 0u64..1 << n {
        let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if naive_strongly_connected(g, &s) {
            f[n - s.len()] += 1;
        }
    }
    f.into_iter().map(BigUint::from).collect()
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn spec_strategy(max_n: u64) -> impl Strategy<Value = CirculantSpec> {
    (5..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n, 1..n))
        .prop_filter_map("distinct pair", |(n, a, b)| CirculantSpec::new(n, a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trivial_failure_implies_disconnected(g in digraph(12), bits in any::<u64>()) {
        let failed = VertexSet::from_bits(bits & g.vertices().bits());
        let operational = failed.complement(g.order());
        prop_assume!(!operational.is_empty());
        if g.has_trivial_failure(failed) {
            prop_assert!(!g.is_strongly_connected_on(operational));
        }
    }

    #[test]
    fn exact_engine_matches_naive_oracle(g in digraph(7)) {
        let expected = naive_f(&g);
        let rp = exact_scnr(&g).unwrap();
        prop_assert_eq!(rp.f(), &expected[..]);
    }

    #[test]
    fn direct_path_matches_full_enumeration(g in digraph(10)) {
        let full = exact_scnr(&g).unwrap();
        for i in 0..=g.order().min(6) {
            prop_assert_eq!(&count_surviving_failures(&g, i).unwrap(), full.f_coefficient(i));
        }
    }

    #[test]
    fn structural_coefficients(g in digraph(11)) {
        let n = g.order();
        let rp = exact_scnr(&g).unwrap();
        prop_assert!(rp.f_coefficient(n).is_zero());
        let single_vertices = BigUint::from(n);
        prop_assert_eq!(rp.f_coefficient(n - 1), &single_vertices);
        prop_assert_eq!(rp.f_coefficient(0).is_one(), g.is_strongly_connected());
        for i in 0..=n {
            prop_assert!(*rp.f_coefficient(i) <= binomial(n, i));
        }
    }

    #[test]
    fn n2_counts_bundles(g in strongly_connected(10)) {
        let rp = exact_scnr(&g).unwrap();
        prop_assume!(g.order() >= 2);
        let bundles = BigUint::from(g.count_bundles());
        prop_assert_eq!(&rp.n_form()[2], &bundles);
    }

    #[test]
    fn n_form_round_trip(g in digraph(9)) {
        let rp = exact_scnr(&g).unwrap();
        let back = ReliabilityPolynomial::from_n_form(rp.n_form()).unwrap();
        prop_assert_eq!(back, rp);
    }

    #[test]
    fn evaluation_agrees_with_power_basis(g in digraph(9)) {
        let rp = exact_scnr(&g).unwrap();
        let power = rp.to_power_basis();
        for p in [rat(1, 3), rat(1, 2), rat(2, 3)] {
            prop_assert_eq!(rp.evaluate(&p).unwrap(), power.eval(&p));
        }
        prop_assert_eq!(rp.evaluate(&BigRational::zero()).unwrap(), BigRational::zero());
    }

    #[test]
    fn json_round_trips(g in digraph(9)) {
        prop_assert_eq!(Digraph::from_json_str(&g.to_json()).unwrap(), g.clone());
        let rp = exact_scnr(&g).unwrap();
        prop_assert_eq!(ReliabilityPolynomial::from_json_str(&rp.to_json()).unwrap(), rp);
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = rat(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn k_subsets_are_exhaustive(n in 0usize..=12, k in 0usize..=12) {
        let sets: Vec<VertexSet> = k_subsets(n, k).collect();
        prop_assert_eq!(BigUint::from(sets.len()), binomial(n, k));
        prop_assert!(sets.iter().all(|s| s.len() == k && s.bits() >> n == 0));
        prop_assert!(sets.windows(2).all(|w| w[0].bits() < w[1].bits()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn adam_equivalent_specs_have_equal_polynomials(spec in spec_strategy(14), pick in any::<usize>()) {
        let n = spec.order();
        let us = units(n);
        let u = us[pick % us.len()];
        let (a, b) = spec.pair();
        let image = CirculantSpec::new(n, a * u % n, b * u % n).unwrap();
        prop_assert!(adam_equivalent(&spec, &image).unwrap());
        prop_assert_eq!(canonical_class(&spec).canonical, canonical_class(&image).canonical);
        let p = exact_scnr(&spec.to_digraph().unwrap()).unwrap();
        let q = exact_scnr(&image.to_digraph().unwrap()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn gcd_test_matches_strong_connectivity(spec in spec_strategy(20)) {
        prop_assert_eq!(
            is_connected_circulant(&spec),
            spec.to_digraph().unwrap().is_strongly_connected()
        );
    }

    #[test]
    fn circulant_neighbourhoods(spec in spec_strategy(20)) {
        let g = spec.to_digraph().unwrap();
        let n = spec.order() as usize;
        let (a, b) = spec.pair();
        let (a, b) = (a as usize, b as usize);
        for i in 0..n {
            let out: VertexSet = [(i + a) % n, (i + b) % n].into_iter().collect();
            prop_assert_eq!(g.out_neighbours(i), out);
            prop_assert_eq!(g.in_neighbours((i + a + b) % n), out);
        }
        let rotated = Digraph::new(n, g.arcs().iter().map(|&(u, v)| ((u + 1) % n, (v + 1) % n))).unwrap();
        prop_assert_eq!(rotated, g);
    }

    #[test]
    fn comparison_is_antisymmetric_and_consistent(
        pair in (2usize..=7).prop_flat_map(|n| (strongly_connected(n).prop_filter("order", move |g| g.order() == n), digraph(n)))
    ) {
        let (g, h) = pair;
        prop_assume!(g.order() == h.order());
        let (gp, hp) = (exact_scnr(&g).unwrap(), exact_scnr(&h).unwrap());
        let ab = compare_polynomials(&gp, &hp).unwrap();
        let ba = compare_polynomials(&hp, &gp).unwrap();
        let flip = |f: Favoured| match f {
            Favoured::First => Favoured::Second,
            Favoured::Second => Favoured::First,
            Favoured::Tie => Favoured::Tie,
        };
        prop_assert_eq!(ab.near_zero, flip(ba.near_zero));
        prop_assert_eq!(ab.near_one, flip(ba.near_one));
        prop_assert_eq!(ab.near_zero_index, ba.near_zero_index);

        let d = gp.to_power_basis().sub(&hp.to_power_basis());
        let eps = rat(1, 1_000_000);
        let sign = |f: Favoured| match f {
            Favoured::First => 1,
            Favoured::Second => -1,
            Favoured::Tie => 0,
        };
        let near0 = d.eval(&eps);
        let near1 = d.eval(&(BigRational::one() - &eps));
        prop_assert_eq!(signum(&near0), sign(ab.near_zero));
        prop_assert_eq!(signum(&near1), sign(ab.near_one));
        if ab.near_zero == Favoured::Tie && ab.near_one == Favoured::Tie {
            prop_assert_eq!(ab.dominance.status, SignStatus::IdenticallyZero);
        }
        let n_dominates = gp.n_form().iter().zip(hp.n_form()).all(|(x, y)| *x >= y);
        if n_dominates {
            prop_assert!(ab.dominance.is_non_negative());
        }
    }

    #[test]
    fn sturm_agrees_with_sampling_on_separated_roots(
        mult in proptest::collection::vec(0u32..=3, 6),
        lead in prop_oneof![Just(1i64), Just(-1i64), Just(3i64)],
    ) {
        // roots k/7, k = 1..=6, with the given multiplicities
        let mut d = PowerPoly::from_i64(&[lead]);
        for (k, &m) in mult.iter().enumerate() {
            for _ in 0..m {
                d = d.mul(&PowerPoly::from_i64(&[-(k as i64 + 1), 7]));
            }
        }
        let profile = sign_profile(&d);
        let distinct = mult.iter().filter(|&&m| m > 0).count();
        let odd = mult.iter().filter(|&&m| m % 2 == 1).count();
        prop_assert_eq!(profile.roots.len(), distinct);
        prop_assert_eq!(profile.crossing_count(), odd);
        prop_assert_eq!(sampled_sign_changes(&d, 10_000), odd);
        for (r, k) in profile.roots.iter().zip(mult.iter().enumerate().filter(|(_, &m)| m > 0).map(|(k, _)| k + 1)) {
            let root = rat(k as i64, 7);
            prop_assert!(r.lo < root && root < r.hi);
            prop_assert!(&r.hi - &r.lo <= rat(1, 1_000_000_000));
        }
    }
}

fn signum(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[test]
fn adam_classes_partition_connected_specs() {
    for n in 5..=16u64 {
        let classes = scnr_core::circulant::enumerate_circulants(n).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for c in &classes {
            for m in &c.members {
                assert!(seen.insert(*m), "{m:?} in two classes");
                assert!(is_connected_circulant(m));
            }
        }
        let connected = (1..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| is_connected_circulant(&CirculantSpec::new(n, a, b).unwrap()))
            .count();
        assert_eq!(seen.len(), connected, "n = {n}");
    }
}

#[test]
fn directed_triangle_power_basis() {
    // 3p(1-p)^2 + p^3
    let rp = ReliabilityPolynomial::from_counts(&[1, 0, 3, 0]).unwrap();
    let expected: Vec<BigInt> = [0, 3, -6, 4].iter().map(|&c| BigInt::from(c)).collect();
    assert_eq!(rp.to_power_basis().coeffs(), &expected[..]);
}
