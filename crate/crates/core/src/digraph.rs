//! Simple digraphs on at most 64 vertices.
//!
//! Arcs are kept sorted, and every vertex carries 64-bit in/out neighbour
//! masks so that connectivity of an induced subdigraph can be decided on a
//! vertex mask without materialising the subdigraph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count a [`VertexSet`] can address.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask; bit `v` set means vertex `v` is in the set.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex set over {n} vertices");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn try_from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet(bits))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !(1 << v);
        }
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::try_from_vertices(iter).expect("vertex index below 64")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Vertices {}

/// A digraph without self-loops or repeated arcs. Antiparallel pairs are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_mask: Vec<u64>,
    in_mask: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, duplicate arcs and out-of-range endpoints.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyDigraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n });
        }
        let mut out_mask = vec![0u64; n];
        let mut in_mask = vec![0u64; n];
        let mut list = Vec::new();
        for (index, (u, v)) in arcs.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::ArcOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { index, u });
            }
            if out_mask[u] >> v & 1 == 1 {
                return Err(Error::DuplicateArc { index, u, v });
            }
            out_mask[u] |= 1 << v;
            in_mask[v] |= 1 << u;
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(Digraph {
            n,
            arcs: list,
            out_mask,
            in_mask,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out_mask[u] >> v & 1 == 1
    }

    pub fn out_neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.out_mask[v])
    }

    pub fn in_neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.in_mask[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_mask[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_mask[v].count_ones() as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        let stray = s.0 & !self.vertices().0;
        if stray != 0 {
            return Err(Error::VertexOutOfRange {
                vertex: stray.trailing_zeros() as usize,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.is_strongly_connected_on(self.vertices())
    }

    /// Strong connectivity of the subdigraph induced by `s`.
    ///
    /// The empty set is not strongly connected; a single vertex is. Vertices
    /// outside `0..n` are ignored.
    pub fn is_strongly_connected_on(&self, s: VertexSet) -> bool {
        let mask = s.0 & self.vertices().0;
        if mask == 0 {
            return false;
        }
        let start = mask & mask.wrapping_neg();
        if mask == start {
            return true;
        }
        closure(start, mask, &self.out_mask) == mask && closure(start, mask, &self.in_mask) == mask
    }

    /// Subdigraph induced by `s`, relabelled `0..|s|` in increasing original order.
    pub fn induced_subdigraph(&self, s: VertexSet) -> Result<Digraph> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::EmptyDigraph);
        }
        let mut relabel = [usize::MAX; MAX_VERTICES];
        for (new, old) in s.iter().enumerate() {
            relabel[old] = new;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (relabel[u], relabel[v]));
        Digraph::new(s.len(), arcs)
    }

    /// Number of unordered pairs joined by arcs in both directions.
    pub fn count_bundles(&self) -> usize {
        self.arcs
            .iter()
            .filter(|&&(u, v)| u < v && self.has_arc(v, u))
            .count()
    }

    /// True when at least two vertices are operational and one of them has
    /// every out-neighbour failed or every in-neighbour failed.
    ///
    /// A lone operational vertex is strongly connected, so it is never a
    /// witness; a vertex with no neighbours at all otherwise is.
    pub fn has_trivial_failure(&self, failed: VertexSet) -> bool {
        let operational = self.vertices().0 & !failed.0;
        if operational.count_ones() < 2 {
            return false;
        }
        VertexSet(operational).iter().any(|v| {
            self.out_mask[v] & operational == 0 || self.in_mask[v] & operational == 0
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DigraphJson::from(self)).expect("digraph serialises")
    }

    /// Parses `{"n": <int>, "arcs": [[u,v], ...]}`.
    pub fn from_json_str(text: &str) -> Result<Digraph> {
        let raw: DigraphJson = serde_json::from_str(text)?;
        Digraph::try_from(raw)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs)
            .finish()
    }
}

fn closure(start: u64, mask: u64, adj: &[u64]) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Wire form of a digraph.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl From<&Digraph> for DigraphJson {
    fn from(g: &Digraph) -> Self {
        DigraphJson {
            n: g.n,
            arcs: g.arcs.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = Error;

    fn try_from(raw: DigraphJson) -> Result<Digraph> {
        Digraph::new(raw.n, raw.arcs.into_iter().map(|[u, v]| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(n: usize) -> Digraph {
        Digraph::new(n, (1..n).flat_map(|i| [(0, i), (i, 0)])).unwrap()
    }

    fn reachability_oracle(g: &Digraph) -> bool {
        let n = g.order();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(u, v) in g.arcs() {
            reach[u][v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        reach.iter().all(|row| row.iter().all(|&r| r))
    }

    #[test]
    fn strong_connectivity_examples() {
        assert!(cycle(3).is_strongly_connected());
        assert!(!Digraph::new(2, [(0, 1)]).unwrap().is_strongly_connected());
        let c93 = Digraph::new(9, (0..9).flat_map(|j| [(j, (j + 3) % 9), (j, (j + 6) % 9)])).unwrap();
        assert!(!c93.is_strongly_connected());
        assert!(Digraph::new(1, []).unwrap().is_strongly_connected());
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(
            Digraph::new(3, [(0, 1), (1, 1)]).unwrap_err(),
            Error::SelfLoop { index: 1, u: 1 }
        );
        assert_eq!(
            Digraph::new(3, [(0, 1), (1, 2), (0, 1)]).unwrap_err(),
            Error::DuplicateArc { index: 2, u: 0, v: 1 }
        );
        assert!(matches!(
            Digraph::new(3, [(0, 3)]).unwrap_err(),
            Error::ArcOutOfRange { index: 0, .. }
        ));
        assert_eq!(Digraph::new(0, []).unwrap_err(), Error::EmptyDigraph);
        assert_eq!(Digraph::new(65, []).unwrap_err(), Error::TooManyVertices { n: 65 });
    }

    #[test]
    fn induced_subdigraph_examples() {
        let path = cycle(4).induced_subdigraph([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(path.arcs(), &[(0, 1), (1, 2)]);

        let g = star(5);
        assert_eq!(g.induced_subdigraph(g.vertices()).unwrap(), g);

        let leaves = star(3).induced_subdigraph([1, 2].into_iter().collect()).unwrap();
        assert_eq!(leaves.order(), 2);
        assert_eq!(leaves.arc_count(), 0);

        assert!(matches!(
            star(3).induced_subdigraph([0, 3].into_iter().collect()),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn bundle_counts() {
        assert_eq!(star(5).count_bundles(), 4);
        assert_eq!(cycle(5).count_bundles(), 0);
        let bundled = Digraph::new(8, (0..8).flat_map(|j| [(j, (j + 1) % 8), (j, (j + 7) % 8)])).unwrap();
        assert_eq!(bundled.count_bundles(), 8);
    }

    #[test]
    fn trivial_failure_examples() {
        let g = Digraph::new(8, (0..8).flat_map(|j| [(j, (j + 1) % 8), (j, (j + 5) % 8)])).unwrap();
        assert!(g.has_trivial_failure([1, 5].into_iter().collect()));
        assert!(!g.has_trivial_failure(VertexSet::EMPTY));
        assert!(!g.has_trivial_failure([2, 3].into_iter().collect()));
        let all_but_one: VertexSet = (1..8).collect();
        assert!(!g.has_trivial_failure(all_but_one));
        assert!(g.is_strongly_connected_on(VertexSet::from_bits(0b1111_0011)));
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let g = Digraph::new(3, [(2, 0), (0, 1), (1, 2)]).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"n":3,"arcs":[[0,1],[1,2],[2,0]]}"#);
        assert_eq!(Digraph::from_json_str(&text).unwrap(), g);

        let err = Digraph::from_json_str(r#"{"n":3,"arcs":[[0,1],[2,2]]}"#).unwrap_err();
        assert!(err.to_string().contains("arc #1 (2,2)"), "{err}");
        let err = Digraph::from_json_str("{\"n\":3,\n\"arcs\":[[0,1]],}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn agrees_with_reachability_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.random_range(1..=6);
            let arcs: Vec<_> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .filter(|_| rng.random_bool(0.35))
                .collect();
            let g = Digraph::new(n, arcs).unwrap();
            assert_eq!(g.is_strongly_connected(), reachability_oracle(&g), "{g:?}");
            let full = g.induced_subdigraph(g.vertices()).unwrap();
            assert_eq!(full.is_strongly_connected(), g.is_strongly_connected());
            assert!(g.count_bundles() <= g.arc_count() / 2);
        }
    }
}
