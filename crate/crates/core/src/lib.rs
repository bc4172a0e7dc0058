//! Exact computation of the colored Jones weight system W_J on chord
//! diagrams.
//!
//! Three independent evaluations are provided and cross-checked:
//!
//! - [`permanent`]: the permanent of the blown-up intersection matrix `IM_J`,
//! - [`statesum`]: a signed sum over acceptable objects of the labeled
//!   intersection digraph,
//! - [`recursion`]: the sum over chord colorings with segment labels.
//!
//! All arithmetic is exact, over polynomials in λ with arbitrary-precision
//! integer coefficients ([`poly::IntPoly`]).

#![allow(clippy::needless_range_loop)]

pub mod chord;
pub mod permanent;
pub mod poly;
pub mod recursion;
pub mod statesum;
pub mod verify;

pub use chord::{ChordDiagram, ChordError};
pub use permanent::{build_imj, wj_via_permanent, wjj_via_permanent, PolyMatrix};
pub use poly::{IntPoly, Variable};
pub use recursion::wj_via_recursion;
pub use statesum::{build_lid, wj_via_statesum, wjj_n_coefficient};
pub use verify::{verify_diagram, HarnessConfig, Method, VerificationReport};
