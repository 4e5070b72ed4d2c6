use crate::error::{Error, Result};

use super::perm::{face_vertices, Perm4};

/// Tetrahedron edges as vertex-position pairs. Edge `k` of every tet is
/// `TET_EDGES[k]`.
pub const TET_EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn tet_edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    TET_EDGES.iter().position(|&e| e == (a, b)).expect("distinct positions")
}

/// Where a face of a tetrahedron is glued: `perm` maps the vertex
/// positions of the source tet onto those of `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

/// A (generalized) triangulated 3-manifold, possibly with boundary.
///
/// Derived classes are computed once on construction: edge classes and
/// vertex classes come from union-find over tetrahedron edges/vertices
/// under the face gluings.
#[derive(Clone, Debug)]
pub struct Triangulation3 {
    gluings: Vec<[Option<Gluing>; 4]>,
    edge_class: Vec<[usize; 6]>,
    vertex_class: Vec<[usize; 4]>,
    n_edges: usize,
    n_vertices: usize,
    boundary_edge: Vec<bool>,
    boundary_vertex: Vec<bool>,
    edge_degree: Vec<usize>,
}

impl Triangulation3 {
    /// Builds a complex from `n_tets` tetrahedra and a list of face
    /// pairings `(tet_a, face_a, tet_b, face_b, perm)`; each pairing may be
    /// listed in one direction or both.
    pub fn new(n_tets: usize, pairs: &[(usize, u8, usize, u8, Perm4)]) -> Result<Self> {
        let mut gluings = vec![[None; 4]; n_tets];
        for &(ta, fa, tb, fb, perm) in pairs {
            if ta >= n_tets || tb >= n_tets {
                return Err(Error::Precondition(format!(
                    "gluing references tetrahedron {} but there are {n_tets}",
                    ta.max(tb)
                )));
            }
            if fa > 3 || fb > 3 {
                return Err(Error::Precondition(format!(
                    "face index out of range in gluing {ta}:{fa} -> {tb}:{fb}"
                )));
            }
            if perm.apply(fa) != fb {
                return Err(Error::Precondition(format!(
                    "gluing {ta}:{fa} -> {tb}:{fb} has a permutation that does not send face {fa} to {fb}"
                )));
            }
            if ta == tb && fa == fb {
                return Err(Error::Precondition(format!(
                    "face {fa} of tetrahedron {ta} is glued to itself"
                )));
            }
            let fwd = Gluing {
                tet: tb,
                face: fb,
                perm,
            };
            let back = Gluing {
                tet: ta,
                face: fa,
                perm: perm.inverse(),
            };
            for (t, f, g) in [(ta, fa, fwd), (tb, fb, back)] {
                match gluings[t][f as usize] {
                    None => gluings[t][f as usize] = Some(g),
                    Some(old) if old == g => {}
                    Some(_) => {
                        return Err(Error::Precondition(format!(
                            "face {f} of tetrahedron {t} is glued twice (gluing is not an involution)"
                        )))
                    }
                }
            }
        }
        Self::from_gluings(gluings)
    }

    /// Builds a simplicial complex from vertex-labelled tetrahedra, gluing
    /// faces that carry the same three labels. Each label triple may occur
    /// in at most two tetrahedra.
    pub fn from_labelled_tets(tets: &[[u32; 4]]) -> Result<Self> {
        use std::collections::HashMap;
        let mut faces: HashMap<[u32; 3], Vec<(usize, u8)>> = HashMap::new();
        for (t, verts) in tets.iter().enumerate() {
            for f in 0..4u8 {
                let mut key = face_vertices(f).map(|p| verts[p as usize]);
                key.sort_unstable();
                faces.entry(key).or_default().push((t, f));
            }
        }
        let mut keys: Vec<_> = faces.keys().copied().collect();
        keys.sort_unstable();
        let mut pairs = Vec::new();
        for key in keys {
            match faces[&key].as_slice() {
                [_] => {}
                [(ta, fa), (tb, fb)] => {
                    let (va, vb) = (tets[*ta], tets[*tb]);
                    let mut img = [0u8; 4];
                    img[*fa as usize] = *fb;
                    for p in face_vertices(*fa) {
                        let label = va[p as usize];
                        img[p as usize] = vb.iter().position(|&x| x == label).unwrap() as u8;
                    }
                    pairs.push((*ta, *fa, *tb, *fb, Perm4::new(img)));
                }
                more => {
                    return Err(Error::Precondition(format!(
                        "face {key:?} occurs in {} tetrahedra",
                        more.len()
                    )))
                }
            }
        }
        Self::new(tets.len(), &pairs)
    }

    pub(crate) fn from_gluings(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        let n = gluings.len();
        // edges: union-find with orientation parity
        let mut uf = ParityUnionFind::new(6 * n);
        let mut vuf = ParityUnionFind::new(4 * n);
        for (ta, faces) in gluings.iter().enumerate() {
            for (fa, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let fa = fa as u8;
                for (k, &(a, b)) in TET_EDGES.iter().enumerate() {
                    if a == fa || b == fa {
                        continue;
                    }
                    let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                    let kb = tet_edge_index(ia, ib);
                    let flipped = ia > ib;
                    if !uf.union(6 * ta + k, 6 * g.tet + kb, flipped) {
                        return Err(Error::Precondition(format!(
                            "edge {k} of tetrahedron {ta} is identified with itself in reverse"
                        )));
                    }
                }
                for v in 0..4u8 {
                    if v != fa {
                        vuf.union(4 * ta + v as usize, 4 * g.tet + g.perm.apply(v) as usize, false);
                    }
                }
            }
        }
        let (edge_ids, n_edges) = uf.classes();
        let (vert_ids, n_vertices) = vuf.classes();
        let edge_class: Vec<[usize; 6]> = (0..n).map(|t| std::array::from_fn(|k| edge_ids[6 * t + k])).collect();
        let vertex_class: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|v| vert_ids[4 * t + v])).collect();

        let mut boundary_edge = vec![false; n_edges];
        let mut boundary_vertex = vec![false; n_vertices];
        let mut edge_degree = vec![0; n_edges];
        for t in 0..n {
            for k in 0..6 {
                edge_degree[edge_class[t][k]] += 1;
            }
            for f in 0..4u8 {
                if gluings[t][f as usize].is_none() {
                    for (k, &(a, b)) in TET_EDGES.iter().enumerate() {
                        if a != f && b != f {
                            boundary_edge[edge_class[t][k]] = true;
                        }
                    }
                    for v in face_vertices(f) {
                        boundary_vertex[vertex_class[t][v as usize]] = true;
                    }
                }
            }
        }
        Ok(Triangulation3 {
            gluings,
            edge_class,
            vertex_class,
            n_edges,
            n_vertices,
            boundary_edge,
            boundary_vertex,
            edge_degree,
        })
    }

    /// N_3.
    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    /// N_1, the number of edge classes.
    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    /// N_0, the number of vertex classes.
    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.gluings[tet][face as usize]
    }

    /// Edge classes of the six edges of `tet`, in [`TET_EDGES`] order.
    pub fn tet_edges(&self, tet: usize) -> [usize; 6] {
        self.edge_class[tet]
    }

    pub fn tet_vertices(&self, tet: usize) -> [usize; 4] {
        self.vertex_class[tet]
    }

    /// Edge class between two vertex positions of a tetrahedron.
    pub fn edge_between(&self, tet: usize, a: u8, b: u8) -> usize {
        self.edge_class[tet][tet_edge_index(a, b)]
    }

    /// The three edge classes of a face.
    pub fn face_edges(&self, tet: usize, face: u8) -> [usize; 3] {
        let [a, b, c] = face_vertices(face);
        [
            self.edge_between(tet, a, b),
            self.edge_between(tet, b, c),
            self.edge_between(tet, a, c),
        ]
    }

    /// Six edge classes laid out for the symmetric 6j symbol
    /// `{e01 e12 e02; e23 e03 e13}`, whose four triads are the four faces.
    pub fn sixj_layout(&self, tet: usize) -> [usize; 6] {
        let e = |a, b| self.edge_between(tet, a, b);
        [e(0, 1), e(1, 2), e(0, 2), e(2, 3), e(0, 3), e(1, 3)]
    }

    /// Unglued faces `(tet, face)`.
    pub fn boundary_faces(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.is_none() {
                    out.push((t, f as u8));
                }
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|f| f.iter().all(Option::is_some))
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge[e]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    /// Number of tetrahedron edges in each edge class.
    pub fn edge_degree(&self, e: usize) -> usize {
        self.edge_degree[e]
    }

    /// Every face once: unglued faces, and glued faces from the lower side.
    pub fn distinct_faces(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                match g {
                    None => out.push((t, f as u8)),
                    Some(g) if (t, f as u8) < (g.tet, g.face) => out.push((t, f as u8)),
                    Some(_) => {}
                }
            }
        }
        out
    }

    /// Edge-class triples of every distinct face.
    pub fn face_triples(&self) -> Vec<[usize; 3]> {
        self.distinct_faces()
            .into_iter()
            .map(|(t, f)| self.face_edges(t, f))
            .collect()
    }

    /// Euler characteristic of the link of every vertex class.
    pub fn vertex_link_euler(&self) -> Vec<i64> {
        let n = self.tet_count();
        // link vertices: (tet, v, w) tet-edge ends at v, glued across faces
        let mut uf = ParityUnionFind::new(16 * n);
        let key = |t: usize, v: u8, w: u8| 16 * t + 4 * v as usize + w as usize;
        let mut tri = vec![0i64; self.n_vertices];
        let mut link_edges = vec![0i64; self.n_vertices];
        for t in 0..n {
            for v in 0..4u8 {
                let cls = self.vertex_class[t][v as usize];
                tri[cls] += 1;
                for f in 0..4u8 {
                    if f == v {
                        continue;
                    }
                    match self.gluings[t][f as usize] {
                        None => link_edges[cls] += 2,
                        Some(g) => {
                            link_edges[cls] += 1;
                            for w in 0..4u8 {
                                if w != v && w != f {
                                    uf.union(key(t, v, w), key(g.tet, g.perm.apply(v), g.perm.apply(w)), false);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut link_verts = vec![std::collections::BTreeSet::new(); self.n_vertices];
        for t in 0..n {
            for v in 0..4u8 {
                for w in 0..4u8 {
                    if w != v {
                        link_verts[self.vertex_class[t][v as usize]].insert(uf.find(key(t, v, w)).0);
                    }
                }
            }
        }
        (0..self.n_vertices)
            .map(|c| link_verts[c].len() as i64 - link_edges[c] / 2 + tri[c])
            .collect()
    }

    /// Checks that every interior vertex link is a sphere and every
    /// boundary vertex link is a disc.
    pub fn validate_manifold(&self) -> Result<()> {
        for (c, chi) in self.vertex_link_euler().into_iter().enumerate() {
            let want = if self.boundary_vertex[c] { 1 } else { 2 };
            if chi != want {
                return Err(Error::Precondition(format!(
                    "vertex class {c} has a link with Euler characteristic {chi}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    /// The same complex with tetrahedra reordered: old tet `t` becomes
    /// `order[t]`.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        let n = self.tet_count();
        let mut seen = vec![false; n];
        if order.len() != n || !order.iter().all(|&t| t < n && !std::mem::replace(&mut seen[t], true)) {
            return Err(Error::Precondition(
                "relabelling is not a permutation of the tetrahedra".into(),
            ));
        }
        let mut gluings = vec![[None; 4]; n];
        for (t, own) in self.gluings.iter().enumerate() {
            gluings[order[t]] = own.map(|g| g.map(|g| Gluing { tet: order[g.tet], ..g }));
        }
        Self::from_gluings(gluings)
    }
}

/// Union-find tracking a parity bit along each element's path to its root.
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Joins `a` and `b` with relative parity `rel`; returns false on a
    /// parity conflict.
    pub(crate) fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ rel;
        true
    }

    /// Dense class ids in order of first appearance.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x).0;
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        (out, next)
    }
}
