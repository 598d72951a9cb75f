//! Strongly connected node reliability (SCNR) of digraphs.
//!
//! Every vertex operates independently with probability `p`; the SCNR of a
//! digraph is the probability that the operational vertices induce a
//! strongly connected subdigraph. This crate computes that polynomial
//! exactly, builds the standard extremal families, and compares
//! polynomials near 0, near 1 and over the whole unit interval.

pub mod circulant;
pub mod digraph;
pub mod error;
pub mod families;
pub mod optimality;
pub mod poly;
pub mod reliability;
pub mod sign;
pub mod subsets;
pub mod verify;

pub use circulant::{CirculantClass, CirculantSpec};
pub use digraph::{Digraph, VertexSet};
pub use error::{Error, Result};
pub use optimality::{ComparisonVerdict, Favoured, SearchReport};
pub use poly::{PowerPoly, ReliabilityPolynomial};
pub use reliability::{exact_scnr, mc_scnr, McEstimate};
pub use sign::{sign_profile, SignProfile, SignStatus};

/// Runs `f` on a dedicated rayon pool with `workers` threads.
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
