//! Combinatorics and exact linear algebra around unicuspidal rational plane
//! curves: the pencil and net attached to such a curve, weighted-graph
//! blow-up calculus, multiplicity-sequence arithmetic, and dicritical
//! reports for the resolved pencil.

#![forbid(unsafe_code)]

pub mod catalog;
pub mod cli;
pub mod cusp;
pub mod graph;
pub mod jsonio;
pub mod linsys;
pub mod pair;
pub mod pencil;
pub mod verify;

pub use cusp::{euclid_sequence, CuspError, CuspProfile, MultiplicitySequence};
pub use graph::{equiv_empty, EmptyEquivalenceOutcome, GraphError, WeightedGraph};
pub use linsys::{LinsysError, LocalCurve};
pub use pair::{erasability, ErasabilityOutcome, PairError, SearchConfig, WeightedPair};
pub use pencil::{dicriticals, dual_graph, plan, PencilError, ResolutionPlan};
