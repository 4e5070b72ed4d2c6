use crate::error::{Error, Result};

use super::tri3::ParityUnionFind;

/// One side of a triangle: the edge it lies on, and whether walking the
/// side from slot `i+1` to slot `i+2` follows the edge's stored direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

/// A closed oriented triangulated surface.
///
/// Side `i` of a triangle is opposite slot `i` and runs from slot `i+1`
/// to slot `i+2` (indices mod 3). Orientations are made coherent on
/// construction, so each edge is walked forward by exactly one side.
#[derive(Clone, Debug)]
pub struct Triangulation2 {
    sides: Vec<[Side; 3]>,
    n_edges: usize,
    /// Triangle slot -> vertex class.
    slot_vertex: Vec<[usize; 3]>,
    n_vertices: usize,
    /// For each edge its (tail, head) vertex classes.
    endpoints: Vec<(usize, usize)>,
    /// Per edge: (triangle, side) that walks it forward, then backward.
    incidence: Vec<[(usize, u8); 2]>,
}

impl Triangulation2 {
    /// Builds a surface from triangles given as sides. Triangles are
    /// reflected where needed to make the orientation coherent; a surface
    /// that cannot be oriented, or an edge not used by exactly two sides,
    /// is an error.
    pub fn new(n_edges: usize, mut sides: Vec<[Side; 3]>) -> Result<Self> {
        let n_tri = sides.len();
        let mut uses: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n_edges];
        for (t, tri) in sides.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                if s.edge >= n_edges {
                    return Err(Error::Precondition(format!(
                        "triangle {t} uses edge {} of {n_edges}",
                        s.edge
                    )));
                }
                uses[s.edge].push((t, i as u8));
            }
        }
        for (e, u) in uses.iter().enumerate() {
            if u.len() != 2 {
                return Err(Error::Precondition(format!(
                    "edge {e} is used by {} triangle sides; the surface must be closed",
                    u.len()
                )));
            }
        }
        // flip[t] such that the two sides of each edge have opposite directions
        let mut uf = ParityUnionFind::new(n_tri);
        for u in &uses {
            let [(t1, i1), (t2, i2)] = [u[0], u[1]];
            let same = sides[t1][i1 as usize].forward == sides[t2][i2 as usize].forward;
            if !uf.union(t1, t2, same) {
                return Err(Error::Precondition("the surface is not orientable".into()));
            }
        }
        for (t, tri) in sides.iter_mut().enumerate() {
            if uf.find(t).1 {
                // swap slots 1 and 2: sides 1 and 2 swap and every side reverses
                *tri = [tri[0], tri[2], tri[1]].map(|s| Side {
                    edge: s.edge,
                    forward: !s.forward,
                });
            }
        }

        // vertex classes: slots joined with edge endpoints
        let mut vuf = ParityUnionFind::new(3 * n_tri + 2 * n_edges);
        for (t, tri) in sides.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                let from = 3 * t + (i + 1) % 3;
                let to = 3 * t + (i + 2) % 3;
                let (tail, head) = if s.forward { (from, to) } else { (to, from) };
                vuf.union(tail, 3 * n_tri + 2 * s.edge, false);
                vuf.union(head, 3 * n_tri + 2 * s.edge + 1, false);
            }
        }
        let (ids, _) = vuf.classes();
        // renumber so that vertex classes are dense over slots
        let mut dense = vec![usize::MAX; ids.len()];
        let mut n_vertices = 0;
        for &c in ids.iter().take(3 * n_tri) {
            if dense[c] == usize::MAX {
                dense[c] = n_vertices;
                n_vertices += 1;
            }
        }
        let slot_vertex = (0..n_tri)
            .map(|t| std::array::from_fn(|i| dense[ids[3 * t + i]]))
            .collect();
        let endpoints = (0..n_edges)
            .map(|e| (dense[ids[3 * n_tri + 2 * e]], dense[ids[3 * n_tri + 2 * e + 1]]))
            .collect();
        let mut incidence = vec![[(usize::MAX, 0u8); 2]; n_edges];
        for (t, tri) in sides.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                let slot = if s.forward { 0 } else { 1 };
                incidence[s.edge][slot] = (t, i as u8);
            }
        }
        Ok(Triangulation2 {
            sides,
            n_edges,
            slot_vertex,
            n_vertices,
            endpoints,
            incidence,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.sides.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.sides.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn sides(&self, t: usize) -> [Side; 3] {
        self.sides[t]
    }

    pub fn slot_vertices(&self, t: usize) -> [usize; 3] {
        self.slot_vertex[t]
    }

    /// (tail, head) vertex classes of an edge.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    /// The (triangle, side) walking edge `e` forward and the one walking it backward.
    pub fn incidence(&self, e: usize) -> [(usize, u8); 2] {
        self.incidence[e]
    }

    /// Edge triples of the triangles, for admissibility.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.sides.iter().map(|t| t.map(|s| s.edge)).collect()
    }
}

/// A branching: an orientation of every edge such that no triangle is a
/// directed cycle. Each triangle then has a source, middle and sink slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    /// `along[e]` is true when the branching follows the stored direction.
    along: Vec<bool>,
}

impl Branching {
    /// Orients edges between distinct vertices from the lower to the higher
    /// vertex class, and chooses orientations of loop edges by
    /// backtracking so that every triangle is acyclic.
    pub fn from_vertex_order(x: &Triangulation2) -> Result<Self> {
        let n = x.edge_count();
        let mut along: Vec<Option<bool>> = (0..n)
            .map(|e| {
                let (a, b) = x.endpoints(e);
                (a != b).then_some(a < b)
            })
            .collect();
        let loops: Vec<usize> = (0..n).filter(|&e| along[e].is_none()).collect();
        if !assign_loops(x, &loops, 0, &mut along) {
            return Err(Error::Structure("the surface admits no branching".into()));
        }
        let b = Branching {
            along: along.into_iter().map(Option::unwrap).collect(),
        };
        debug_assert!(b.check(x).is_ok());
        Ok(b)
    }

    pub fn from_orientations(x: &Triangulation2, along: Vec<bool>) -> Result<Self> {
        if along.len() != x.edge_count() {
            return Err(Error::Precondition("one orientation per edge is required".into()));
        }
        let b = Branching { along };
        b.check(x)?;
        Ok(b)
    }

    pub fn along(&self, e: usize) -> bool {
        self.along[e]
    }

    /// Slots of triangle `t` ordered source, middle, sink.
    pub fn slot_order(&self, x: &Triangulation2, t: usize) -> [u8; 3] {
        let out = out_degrees(x, t, |e| Some(self.along[e]));
        let mut slots = [0u8, 1, 2];
        slots.sort_by_key(|&s| std::cmp::Reverse(out[s as usize]));
        slots
    }

    fn check(&self, x: &Triangulation2) -> Result<()> {
        for t in 0..x.triangle_count() {
            let out = out_degrees(x, t, |e| Some(self.along[e]));
            let mut sorted = out;
            sorted.sort_unstable();
            if sorted != [0, 1, 2] {
                return Err(Error::Structure(format!("triangle {t} is a directed cycle")));
            }
        }
        Ok(())
    }
}

/// Out-degree of each slot within a triangle under the given orientation;
/// undecided edges contribute nothing.
fn out_degrees(x: &Triangulation2, t: usize, along: impl Fn(usize) -> Option<bool>) -> [u8; 3] {
    let mut out = [0u8; 3];
    for (i, s) in x.sides(t).iter().enumerate() {
        if let Some(a) = along(s.edge) {
            let from = if a == s.forward { (i + 1) % 3 } else { (i + 2) % 3 };
            out[from] += 1;
        }
    }
    out
}

fn assign_loops(x: &Triangulation2, loops: &[usize], k: usize, along: &mut [Option<bool>]) -> bool {
    let cyclic = |along: &[Option<bool>]| {
        (0..x.triangle_count()).any(|t| {
            let sides = x.sides(t);
            if sides.iter().any(|s| along[s.edge].is_none()) {
                return false;
            }
            out_degrees(x, t, |e| along[e]) == [1, 1, 1]
        })
    };
    if k == loops.len() {
        return !cyclic(along);
    }
    for choice in [true, false] {
        along[loops[k]] = Some(choice);
        if !cyclic(along) && assign_loops(x, loops, k + 1, along) {
            return true;
        }
    }
    along[loops[k]] = None;
    false
}

/// The sphere as two triangles glued along their boundary.
pub fn sphere_two_triangles() -> Triangulation2 {
    let f = |edge| Side { edge, forward: true };
    let b = |edge| Side { edge, forward: false };
    // edges 0 = xy, 1 = yz, 2 = zx
    Triangulation2::new(3, vec![[f(1), f(2), f(0)], [b(1), b(0), b(2)]]).unwrap()
}

/// The one-vertex torus: a square with opposite sides identified, cut
/// along a diagonal.
pub fn torus_one_vertex() -> Triangulation2 {
    let f = |edge| Side { edge, forward: true };
    let b = |edge| Side { edge, forward: false };
    // edges 0 = a (horizontal), 1 = b (vertical), 2 = c (diagonal)
    Triangulation2::new(3, vec![[f(1), b(2), f(0)], [b(0), b(1), f(2)]]).unwrap()
}
