//! Triangulated cylinders Σ × [0,1] over a branched surface.
//!
//! Each triangle of Σ becomes a prism cut into three tetrahedra by lifting
//! its slots to the top level one at a time, sink first. Over every edge of
//! Σ the square side of the prism is split by the diagonal from the lower
//! endpoint at the bottom to the higher endpoint at the top, so adjacent
//! prisms agree.

use crate::error::{Error, Result};

use super::perm::{face_vertices, Perm4};
use super::tri2::{Branching, Triangulation2};
use super::tri3::{Gluing, Triangulation3};

/// Triangulated Σ × [0,1] with its two boundary copies of Σ marked.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: Triangulation3,
    pub surface: Triangulation2,
    /// Edge class of the bottom copy of each surface edge.
    pub bottom_edges: Vec<usize>,
    pub top_edges: Vec<usize>,
    /// Vertex class of the bottom copy of each surface vertex.
    pub bottom_vertices: Vec<usize>,
    pub top_vertices: Vec<usize>,
}

impl Cylinder {
    /// Assembles a cylinder from a complex and markings, checking that the
    /// marked edges are exactly the boundary edges, that each boundary face
    /// is a marked triangle, and that the two copies are disjoint.
    pub fn new(
        complex: Triangulation3,
        surface: Triangulation2,
        bottom_edges: Vec<usize>,
        top_edges: Vec<usize>,
        bottom_vertices: Vec<usize>,
        top_vertices: Vec<usize>,
    ) -> Result<Self> {
        let c = Cylinder {
            complex,
            surface,
            bottom_edges,
            top_edges,
            bottom_vertices,
            top_vertices,
        };
        c.check_markings()?;
        Ok(c)
    }

    pub fn check_markings(&self) -> Result<()> {
        let x = &self.surface;
        let k = &self.complex;
        let bad = |m: &str| Err(Error::Structure(format!("cylinder boundary markings: {m}")));
        if self.bottom_edges.len() != x.edge_count() || self.top_edges.len() != x.edge_count() {
            return bad("one marked edge per surface edge is required on each side");
        }
        if self.bottom_vertices.len() != x.vertex_count() || self.top_vertices.len() != x.vertex_count() {
            return bad("one marked vertex per surface vertex is required on each side");
        }
        let mut role = vec![0u8; k.edge_count()];
        for (&e, tag) in self
            .bottom_edges
            .iter()
            .map(|e| (e, 1))
            .chain(self.top_edges.iter().map(|e| (e, 2)))
        {
            if e >= k.edge_count() || role[e] != 0 {
                return bad("marked edges must be distinct edge classes");
            }
            role[e] = tag;
        }
        for (e, &r) in role.iter().enumerate() {
            if k.is_boundary_edge(e) != (r != 0) {
                return bad("marked edges must be exactly the boundary edges");
            }
        }
        let faces = k.boundary_faces();
        if faces.len() != 2 * x.triangle_count() {
            return bad("the boundary must consist of two copies of the surface");
        }
        let mut want: Vec<(u8, [usize; 3])> = Vec::new();
        for t in 0..x.triangle_count() {
            for (tag, marks) in [(1u8, &self.bottom_edges), (2, &self.top_edges)] {
                let mut tri = x.sides(t).map(|s| marks[s.edge]);
                tri.sort_unstable();
                want.push((tag, tri));
            }
        }
        let mut have: Vec<(u8, [usize; 3])> = faces
            .iter()
            .map(|&(t, f)| {
                let mut tri = k.face_edges(t, f);
                tri.sort_unstable();
                (role[tri[0]], tri)
            })
            .collect();
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return bad("boundary faces do not match the marked surface triangles");
        }
        Ok(())
    }

    /// Interior vertex classes.
    pub fn interior_vertex_count(&self) -> usize {
        (0..self.complex.vertex_count())
            .filter(|&v| !self.complex.is_boundary_vertex(v))
            .count()
    }
}

fn key(slot: u8, top: bool) -> u8 {
    2 * slot + top as u8
}

/// Vertex keys of the three tetrahedra of a prism.
fn prism_keys(order: [u8; 3]) -> [[u8; 4]; 3] {
    let [lo, mid, hi] = order;
    [
        [key(hi, false), key(hi, true), key(mid, false), key(lo, false)],
        [key(mid, false), key(mid, true), key(hi, true), key(lo, false)],
        [key(lo, false), key(lo, true), key(hi, true), key(mid, true)],
    ]
}

fn face_key_set(keys: &[u8; 4], f: u8) -> [u8; 3] {
    let mut k = face_vertices(f).map(|p| keys[p as usize]);
    k.sort_unstable();
    k
}

struct PrismLayout {
    keys: Vec<[u8; 4]>,
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl PrismLayout {
    fn find_face(&self, prism: usize, set: [u8; 3]) -> Option<(usize, u8)> {
        (3 * prism..3 * prism + 3).find_map(|x| {
            (0..4u8)
                .find(|&f| face_key_set(&self.keys[x], f) == set)
                .map(|f| (x, f))
        })
    }

    /// Glues face `f` of `x` to the face of `y` with keys `map(keys)`.
    fn glue(&mut self, x: usize, f: u8, y: usize, map: impl Fn(u8) -> u8) {
        let (kx, ky) = (self.keys[x], self.keys[y]);
        let target: [u8; 3] = {
            let mut s = face_vertices(f).map(|p| map(kx[p as usize]));
            s.sort_unstable();
            s
        };
        let g = (0..4u8)
            .find(|&h| face_key_set(&ky, h) == target)
            .expect("matching face");
        let perm = Perm4::new(std::array::from_fn(|p| {
            if p as u8 == f {
                g
            } else {
                ky.iter().position(|&k| k == map(kx[p])).unwrap() as u8
            }
        }));
        self.gluings[x][f as usize] = Some(Gluing { tet: y, face: g, perm });
        self.gluings[y][g as usize] = Some(Gluing {
            tet: x,
            face: f,
            perm: perm.inverse(),
        });
    }
}

fn layout(x: &Triangulation2, b: &Branching) -> Result<PrismLayout> {
    let n = x.triangle_count();
    let keys: Vec<[u8; 4]> = (0..n).flat_map(|t| prism_keys(b.slot_order(x, t))).collect();
    let mut lay = PrismLayout {
        gluings: vec![[None; 4]; keys.len()],
        keys,
    };
    for t in 0..n {
        let sides = x.sides(t);
        for xt in 3 * t..3 * t + 3 {
            for f in 0..4u8 {
                if lay.gluings[xt][f as usize].is_some() {
                    continue;
                }
                let set = face_key_set(&lay.keys[xt], f);
                let slots: Vec<u8> = {
                    let mut s: Vec<u8> = set.iter().map(|k| k / 2).collect();
                    s.dedup();
                    s
                };
                let levels: Vec<u8> = set.iter().map(|k| k % 2).collect();
                if slots.len() == 3 {
                    if levels.iter().all(|&l| l == levels[0]) {
                        continue; // bottom or top
                    }
                    let (y, _) = (3 * t..3 * t + 3)
                        .filter(|&y| y != xt)
                        .find_map(|y| (0..4u8).find(|&g| face_key_set(&lay.keys[y], g) == set).map(|g| (y, g)))
                        .ok_or_else(|| Error::Structure("prism interior faces do not match".into()))?;
                    lay.glue(xt, f, y, |k| k);
                    continue;
                }
                // square side opposite the missing slot
                let c = (0..3u8).find(|s| !slots.contains(s)).unwrap();
                let side = sides[c as usize];
                let [(t1, c1), (t2, c2)] = x.incidence(side.edge);
                let (tp, cp) = if (t1, c1) == (t, c) { (t2, c2) } else { (t1, c1) };
                let ends = |tri: usize, c: u8| {
                    let s = x.sides(tri)[c as usize];
                    let (from, to) = ((c + 1) % 3, (c + 2) % 3);
                    if s.forward {
                        (from, to)
                    } else {
                        (to, from)
                    }
                };
                let (tail, head) = ends(t, c);
                let (tail_p, head_p) = ends(tp, cp);
                let map = move |k: u8| {
                    let s = k / 2;
                    let s2 = if s == tail {
                        tail_p
                    } else if s == head {
                        head_p
                    } else {
                        unreachable!()
                    };
                    2 * s2 + k % 2
                };
                let target = {
                    let mut s = set.map(map);
                    s.sort_unstable();
                    s
                };
                let (y, _) = lay
                    .find_face(tp, target)
                    .ok_or_else(|| Error::Structure("adjacent prisms are split inconsistently".into()))?;
                lay.glue(xt, f, y, map);
            }
        }
    }
    Ok(lay)
}

// tet 0 of a prism holds the whole bottom triangle opposite its lifted
// vertex; tet 2 holds the whole top triangle opposite its bottom vertex
fn bottom_face(t: usize) -> (usize, u8) {
    (3 * t, 1)
}

fn top_face(t: usize) -> (usize, u8) {
    (3 * t + 2, 0)
}

/// The triangulated cylinder Σ × [0,1].
pub fn prism_complex(x: &Triangulation2, b: &Branching) -> Result<Cylinder> {
    let lay = layout(x, b)?;
    let complex = Triangulation3::from_gluings(lay.gluings.clone())?;
    let pos = |tet: usize, k: u8| lay.keys[tet].iter().position(|&q| q == k).unwrap() as u8;
    let mut bottom_edges = vec![0; x.edge_count()];
    let mut top_edges = vec![0; x.edge_count()];
    for (e, (be, te)) in bottom_edges.iter_mut().zip(top_edges.iter_mut()).enumerate() {
        let (t, c) = x.incidence(e)[0];
        let (a, bb) = ((c + 1) % 3, (c + 2) % 3);
        let (xb, _) = bottom_face(t);
        let (xt, _) = top_face(t);
        *be = complex.edge_between(xb, pos(xb, key(a, false)), pos(xb, key(bb, false)));
        *te = complex.edge_between(xt, pos(xt, key(a, true)), pos(xt, key(bb, true)));
    }
    let mut bottom_vertices = vec![usize::MAX; x.vertex_count()];
    let mut top_vertices = vec![usize::MAX; x.vertex_count()];
    for t in 0..x.triangle_count() {
        for (s, &v) in x.slot_vertices(t).iter().enumerate() {
            let s = s as u8;
            bottom_vertices[v] = complex.tet_vertices(3 * t)[pos(3 * t, key(s, false)) as usize];
            top_vertices[v] = complex.tet_vertices(3 * t + 2)[pos(3 * t + 2, key(s, true)) as usize];
        }
    }
    Cylinder::new(
        complex,
        x.clone(),
        bottom_edges,
        top_edges,
        bottom_vertices,
        top_vertices,
    )
}

/// Σ × S¹: the cylinder with its top glued to its bottom by the identity.
pub fn mapping_torus(x: &Triangulation2, b: &Branching) -> Result<Triangulation3> {
    let mut lay = layout(x, b)?;
    for t in 0..x.triangle_count() {
        let (xt, ft) = top_face(t);
        let (xb, _) = bottom_face(t);
        lay.glue(xt, ft, xb, |k| k & !1);
    }
    Triangulation3::from_gluings(lay.gluings)
}
