//! SU(2)_q recoupling data, Turaev–Viro state sums on triangulated
//! 3-manifolds, and the Levin–Wen string-net model on trivalent surface
//! lattices, together with a numerical check that the string-net
//! ground-state projector coincides with the Turaev–Viro amplitude of the
//! cylinder over the dual triangulation.
//!
//! Module map:
//!
//! * [`qalgebra`]: quantum integers and dimensions, admissibility, 6j and
//!   F-symbols, identity residuals.
//! * [`complex3`]: triangulations (3D and surface), Pachner moves, census,
//!   prism complexes over surfaces, admissible colouring enumeration.
//! * [`tv`]: closed invariants and cylinder amplitudes.
//! * [`stringnet`]: lattices, vertex and plaquette operators, Hamiltonian,
//!   ground-state projector, exact diagonalization.
//! * [`equivalence`]: projector versus cylinder amplitude comparison.

pub mod complex3;
pub mod equivalence;
mod error;
pub mod matrix;
pub mod qalgebra;
pub mod stringnet;
pub mod tv;

pub use error::{Error, Result};
pub use matrix::OperatorMatrix;
pub use qalgebra::{LabelTriple, QContext, Spin, WeightConvention};
