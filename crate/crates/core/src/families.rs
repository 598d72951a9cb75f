//! Constructors for the named digraph families.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `C_n`: arcs `i -> i+1 (mod n)`.
pub fn directed_cycle(n: usize) -> Result<Digraph> {
    require(n >= 2, || format!("directed cycle needs n >= 2, got {n}"))?;
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `S_n`: centre 0 joined to every other vertex by a bundle.
pub fn bundled_star(n: usize) -> Result<Digraph> {
    require(n >= 2, || format!("bundled star needs n >= 2, got {n}"))?;
    Digraph::new(n, (1..n).flat_map(|i| [(0, i), (i, 0)]))
}

/// `D_n`: the bundled star plus the arc `1 -> 2` between two leaves.
pub fn star_plus_arc(n: usize) -> Result<Digraph> {
    require(n >= 3, || format!("star plus arc needs n >= 3, got {n}"))?;
    Digraph::new(n, (1..n).flat_map(|i| [(0, i), (i, 0)]).chain([(1, 2)]))
}

fn check_k(n: usize, k: usize) -> Result<()> {
    require(k >= 3 && k < n, || {
        format!("family parameter k must satisfy 3 <= k <= n-1, got n = {n}, k = {k}")
    })
}

/// `G_k`: a directed `k`-cycle on `0..k` with each of `k..n` attached to
/// vertex 0 by a bundle.
pub fn g_family(n: usize, k: usize) -> Result<Digraph> {
    check_k(n, k)?;
    let cycle = (0..k).map(|i| (i, (i + 1) % k));
    let pendants = (k..n).flat_map(|v| [(0, v), (v, 0)]);
    Digraph::new(n, cycle.chain(pendants))
}

/// `H_k`: the theta digraph.
///
/// Labelling: `x = 0`, `y = 1`, the `n-k+1` middle vertices of the two-arc
/// paths `x -> m -> y` are `2..=n-k+2`, and the remaining `k-3` vertices
/// `n-k+3..n` form the path from `y` back to `x` in that order. For `k = 3`
/// the return path is the single arc `y -> x`.
pub fn h_family(n: usize, k: usize) -> Result<Digraph> {
    check_k(n, k)?;
    let (x, y) = (0, 1);
    let middles = (2..=n - k + 2).flat_map(|m| [(x, m), (m, y)]);
    let path: Vec<usize> = std::iter::once(y)
        .chain(n - k + 3..n)
        .chain(std::iter::once(x))
        .collect();
    let back = path.windows(2).map(|w| (w[0], w[1]));
    Digraph::new(n, middles.chain(back))
}

/// `Γ(Z_n, S)`: arcs `j -> j+s (mod n)` for every `s` in `S`.
pub fn circulant(n: usize, connection_set: &[usize]) -> Result<Digraph> {
    require(n >= 2, || format!("circulant needs n >= 2, got {n}"))?;
    require(!connection_set.is_empty(), || "empty connection set".into())?;
    let mut set = connection_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&s| s == 0 || s >= n) {
        return Err(Error::InvalidParameter(format!(
            "connection element {bad} is not in 1..{n}"
        )));
    }
    Digraph::new(n, (0..n).flat_map(|j| set.iter().map(move |&s| (j, (j + s) % n))))
}
