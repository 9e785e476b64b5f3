//! Linear solutions of generalized combination networks and bounds on their
//! parameters.
//!
//! The crate is organised bottom up: [`gf`] supplies finite-field linear
//! algebra, [`qcombinatorics`] exact counting, [`network`] the network model
//! and its verifier, [`constructor`] code and solution builders, and
//! [`bounds`] every numerical bound on `r_max` and on the alphabet gap.

pub mod bounds;
pub mod constructor;
pub mod gf;
pub mod network;
pub mod qcombinatorics;

pub use bounds::{BoundKind, BoundReport, BoundSource, DerivedConstants, GapReport};
pub use constructor::{CoveringCode, CoveringCodeParams};
pub use gf::{FieldElement, FieldSpec, GfError, MatrixGF, Subspace};
pub use network::{NetworkParams, NetworkSolution, SolvabilityClass};
