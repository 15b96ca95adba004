//! Strict integral rectangle transformation toolkit.
//!
//! Given integer sides `p` and `q`, the problem is to partition the
//! rectangles `p x q` and `q x p` into two sets of axis-aligned rectangular
//! modules that are identical piece by piece without rotation, using as few
//! modules as possible. This crate provides:
//!
//! * [`solver`] — the hybrid Euclid / square-transfer construction, the pure
//!   Euclidean baselines, the trivial lower bound and the stretch reductions
//!   from general rational inputs;
//! * [`analysis`] — exact tiling and isomorphism checkers, grid-pattern
//!   extraction, the pattern ratio check and slat refinement;
//! * [`oracle`] — an exhaustive integer-grid search for true minima on small
//!   instances;
//! * [`bench`] — a deterministic experiment harness with CSV output;
//! * [`doc`] and [`svg`] — JSON persistence and SVG rendering of solutions.

pub mod analysis;
pub mod bench;
pub mod doc;
pub mod geom;
pub mod oracle;
pub mod solver;
pub mod svg;

pub use geom::{
    area, isqrt, Branch, Dims, IrtpInstance, PairingMode, Partition, PartitionPair, PlacedRect,
    SirtpInstance, SolveTrace, TraceRound,
};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
