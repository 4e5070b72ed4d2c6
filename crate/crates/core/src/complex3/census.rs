//! Small closed 3-manifolds with known invariants.

use crate::error::{Error, Result};

use super::prism::mapping_torus;
use super::tri2::{sphere_two_triangles, torus_one_vertex, Branching};
use super::tri3::Triangulation3;

/// Names accepted by [`census`].
pub const CENSUS_NAMES: [&str; 3] = ["S3_5tet", "S2xS1", "T3"];

/// The boundary of the 4-simplex.
pub fn s3_5tet() -> Triangulation3 {
    let tets: Vec<[u32; 4]> = (0..5u32)
        .map(|skip| {
            let v: Vec<u32> = (0..5).filter(|&x| x != skip).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    Triangulation3::from_labelled_tets(&tets).expect("valid simplicial complex")
}

pub fn s2_x_s1() -> Triangulation3 {
    let x = sphere_two_triangles();
    let b = Branching::from_vertex_order(&x).expect("sphere branching");
    mapping_torus(&x, &b).expect("mapping torus")
}

pub fn t3() -> Triangulation3 {
    let x = torus_one_vertex();
    let b = Branching::from_vertex_order(&x).expect("torus branching");
    mapping_torus(&x, &b).expect("mapping torus")
}

pub fn census(name: &str) -> Result<Triangulation3> {
    match name {
        "S3_5tet" | "S3" => Ok(s3_5tet()),
        "S2xS1" => Ok(s2_x_s1()),
        "T3" => Ok(t3()),
        other => Err(Error::Precondition(format!(
            "unknown census manifold `{other}` (known: {})",
            CENSUS_NAMES.join(", ")
        ))),
    }
}
