use crate::error::{Error, Result};
use crate::stringnet::{Dart, TrivalentLattice};

use super::tri2::{Side, Triangulation2};

/// The triangulation dual to a trivalent lattice: triangle `w` for lattice
/// vertex `w`, edge `e` crossing lattice edge `e`, one vertex per plaquette.
///
/// Dual edge `e` runs from the plaquette of the forward dart of `e` to the
/// plaquette of the backward dart. Slot `i` of triangle `w` is the corner
/// between the `i`-th and `(i+1)`-th half-edges of the rotation at `w`.
pub fn dual_triangulation(l: &TrivalentLattice) -> Result<Triangulation2> {
    let sides: Vec<[Side; 3]> = (0..l.vertex_count())
        .map(|w| {
            let rot = l.rotation(w);
            std::array::from_fn(|i| {
                let h = rot[(i + 2) % 3];
                Side {
                    edge: h.edge,
                    forward: h.end == 0,
                }
            })
        })
        .collect();
    let x = Triangulation2::new(l.edge_count(), sides.clone())?;
    // the lattice orientation must carry over unchanged
    if (0..x.triangle_count()).any(|t| x.sides(t) != sides[t]) {
        return Err(Error::Structure("dual orientation disagrees with the lattice".into()));
    }
    if x.vertex_count() != l.plaquette_count() {
        return Err(Error::Structure(format!(
            "dual has {} vertices but the lattice has {} plaquettes",
            x.vertex_count(),
            l.plaquette_count()
        )));
    }
    // each dual edge joins the two plaquettes on either side of its lattice edge
    let mut face_to_vertex = vec![usize::MAX; l.plaquette_count()];
    for e in 0..l.edge_count() {
        let (tail, head) = x.endpoints(e);
        let f_plus = l.face_of(Dart { edge: e, forward: true });
        let f_minus = l.face_of(Dart {
            edge: e,
            forward: false,
        });
        for (f, v) in [(f_plus, tail), (f_minus, head)] {
            if face_to_vertex[f] == usize::MAX {
                face_to_vertex[f] = v;
            } else if face_to_vertex[f] != v {
                return Err(Error::Structure(format!(
                    "dual edge {e} does not match its lattice edge"
                )));
            }
        }
    }
    Ok(x)
}
