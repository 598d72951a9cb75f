//! Exact and sampled strongly connected node reliability.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::poly::ReliabilityPolynomial;
use crate::subsets::k_subsets;

/// Hard cap on the order accepted by full subset enumeration.
pub const MAX_EXACT_N: usize = 30;

/// Failure sets up to this size can be enumerated directly for any order up to 64.
pub const MAX_DIRECT_FAILURES: usize = 6;

/// Environment variable that may lower [`MAX_EXACT_N`].
pub const MAX_N_ENV: &str = "SCNR_MAX_N";

/// The exact-engine cap after applying `SCNR_MAX_N`, which can only lower it.
pub fn configured_exact_limit() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(MAX_EXACT_N, |v| v.min(MAX_EXACT_N))
}

const CHUNK_BITS: usize = 12;

pub fn exact_scnr(g: &Digraph) -> Result<ReliabilityPolynomial> {
    exact_scnr_with_limit(g, MAX_EXACT_N)
}

/// F-vector by enumerating every nonempty operational set.
///
/// The mask range is split into fixed chunks on the high bits; per-size
/// counters are summed, so the result does not depend on the thread pool.
pub fn exact_scnr_with_limit(g: &Digraph, limit: usize) -> Result<ReliabilityPolynomial> {
    let n = g.order();
    let limit = limit.min(MAX_EXACT_N);
    if n > limit {
        return Err(Error::Capacity {
            what: "exact enumeration order",
            limit,
            requested: n,
        });
    }
    let low_bits = n.saturating_sub(CHUNK_BITS);
    let chunks = 1u64 << (n - low_bits);
    let chunk_len = 1u64 << low_bits;
    let counts = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local = vec![0u64; n + 1];
            let start = chunk * chunk_len;
            for mask in start.max(1)..start + chunk_len {
                if g.is_strongly_connected_on(VertexSet::from_bits(mask)) {
                    local[n - mask.count_ones() as usize] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    ReliabilityPolynomial::from_counts(&counts)
}

/// Number of `i`-subsets whose failure leaves a strongly connected subdigraph,
/// counted over failure sets directly.
pub fn count_surviving_failures(g: &Digraph, i: usize) -> Result<BigUint> {
    let n = g.order();
    if i > n {
        return Err(Error::InvalidParameter(format!(
            "coefficient index {i} exceeds order {n}"
        )));
    }
    let all = g.vertices();
    let count: u64 = (0..n.max(1))
        .into_par_iter()
        .map(|first| {
            if i == 0 {
                return u64::from(first == 0 && g.is_strongly_connected());
            }
            // failure sets whose smallest member is `first`
            let rest = n - first - 1;
            k_subsets(rest, i - 1)
                .filter(|s| {
                    let failed = s.bits().checked_shl(first as u32 + 1).unwrap_or(0) | (1u64 << first);
                    g.is_strongly_connected_on(VertexSet::from_bits(all.bits() & !failed))
                })
                .count() as u64
        })
        .sum();
    Ok(BigUint::from(count))
}

/// `F_i`, via direct failure-set enumeration when `i <= 6`, otherwise via
/// the full polynomial (order at most `limit`).
pub fn scnr_coefficient(g: &Digraph, i: usize, limit: usize) -> Result<BigUint> {
    let n = g.order();
    if i > n {
        return Err(Error::InvalidParameter(format!(
            "coefficient index {i} exceeds order {n}"
        )));
    }
    if i <= MAX_DIRECT_FAILURES {
        return count_surviving_failures(g, i);
    }
    let limit = limit.min(MAX_EXACT_N);
    if n > limit {
        return Err(Error::Capacity {
            what: "coefficient index above 6 needs full enumeration of order",
            limit,
            requested: n,
        });
    }
    Ok(exact_scnr_with_limit(g, limit)?.f_coefficient(i).clone())
}

/// `F_0..=F_max` by direct enumeration; `max` must be at most 6.
pub fn leading_coefficients(g: &Digraph, max: usize) -> Result<Vec<BigUint>> {
    if max > MAX_DIRECT_FAILURES {
        return Err(Error::Capacity {
            what: "direct enumeration failure-set size",
            limit: MAX_DIRECT_FAILURES,
            requested: max,
        });
    }
    (0..=max.min(g.order()))
        .map(|i| count_surviving_failures(g, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub p: f64,
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
}

const MC_BATCH: u64 = 1 << 14;

/// Monte Carlo estimate of `Rel(g, p)`.
///
/// Batch `b` draws from ChaCha stream `b` of `seed`, so the estimate is fixed
/// by `(g, p, samples, seed)` alone.
pub fn mc_scnr(g: &Digraph, p: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p.to_string()));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let n = g.order();
    let batches = samples.div_ceil(MC_BATCH);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = MC_BATCH.min(samples - b * MC_BATCH);
            let mut hits = 0u64;
            for _ in 0..len {
                let mut mask = 0u64;
                for v in 0..n {
                    if rng.random::<f64>() < p {
                        mask |= 1 << v;
                    }
                }
                if g.is_strongly_connected_on(VertexSet::from_bits(mask)) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = hits as f64 / samples as f64;
    Ok(McEstimate {
        p,
        samples,
        hits,
        estimate,
        std_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
        seed,
    })
}
