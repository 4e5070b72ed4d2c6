//! Triangulated 3-manifolds and surfaces.
//!
//! [`Triangulation3`] is a generalized triangulation: tetrahedra with face
//! gluings, where several corners of one tetrahedron may be identified.
//! Edge and vertex classes are derived from the gluings. Surfaces are
//! [`Triangulation2`]; over a branched surface [`prism_complex`] builds the
//! cylinder Σ × [0,1] whose Turaev–Viro amplitude is compared against the
//! string-net projector.

mod census;
mod coloring;
mod dual;
mod format;
mod pachner;
mod perm;
mod prism;
mod signature;
mod tri2;
mod tri3;

pub use census::{census, s2_x_s1, s3_5tet, t3, CENSUS_NAMES};
pub use coloring::{enumerate_colorings, enumerate_colorings_shard, Colorable, Colorings, SearchPlan};
pub use dual::dual_triangulation;
pub use format::{parse_triangulation, write_triangulation};
pub use pachner::{apply_move, PachnerMove};
pub use perm::{face_index_of_perm, face_vertices, perm_from_face_index, Perm4};
pub use prism::{mapping_torus, prism_complex, Cylinder};
pub use signature::isomorphism_signature;
pub use tri2::{sphere_two_triangles, torus_one_vertex, Branching, Side, Triangulation2};
pub use tri3::{tet_edge_index, Gluing, Triangulation3, TET_EDGES};
