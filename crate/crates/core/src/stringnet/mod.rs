//! The Levin–Wen string-net model on a trivalent lattice embedded in a
//! closed oriented surface.
//!
//! Basis states label every edge; the Hilbert space is indexed by
//! [`Basis`]. Vertex projectors enforce admissibility, plaquette operators
//! insert a weighted superposition of loops and fuse them into the
//! boundary with F-moves. Plaquettes that run along the same edge twice are
//! supported; a plaquette with three corners at one vertex is not.

mod basis;
mod lattice;
mod operators;

pub use crate::matrix::OperatorMatrix;
pub use basis::{Basis, MAX_BASIS_DIM};
pub use lattice::{Dart, HalfEdge, TrivalentLattice};
pub use operators::{
    b_plaquette, b_plaquette_s, ground_projector, hamiltonian, q_vertex, spectrum, vertex_projector, Spectrum,
    DEGENERACY_TOL,
};
