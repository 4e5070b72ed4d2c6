use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// An edge traversed in a direction; `forward` means from `v1` to `v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// An edge end: `end == 0` sits at `v1`, `end == 1` at `v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    /// The half-edge through which the dart leaves its tail.
    pub fn leaving(self) -> HalfEdge {
        HalfEdge {
            edge: self.edge,
            end: if self.forward { 0 } else { 1 },
        }
    }

    /// The half-edge through which the dart arrives at its head.
    pub fn arriving(self) -> HalfEdge {
        HalfEdge {
            edge: self.edge,
            end: if self.forward { 1 } else { 0 },
        }
    }
}

/// A trivalent graph embedded in a closed oriented surface, given by its
/// plaquettes as cyclic lists of darts.
#[derive(Clone, Debug)]
pub struct TrivalentLattice {
    n_vertices: usize,
    edges: Vec<[usize; 2]>,
    plaquettes: Vec<Vec<Dart>>,
    /// Half-edges at each vertex in cyclic order around it.
    rotation: Vec<[HalfEdge; 3]>,
    /// `face_of[e][0]` is the plaquette of the forward dart of `e`.
    face_of: Vec<[usize; 2]>,
}

impl TrivalentLattice {
    /// Validates and builds a lattice. Every dart must occur in exactly one
    /// plaquette, consecutive darts must meet head to tail, each vertex must
    /// have degree 3, and the corners at each vertex must close up into a
    /// single cycle.
    pub fn new(n_vertices: usize, edges: Vec<[usize; 2]>, plaquettes: Vec<Vec<Dart>>) -> Result<Self> {
        let bad = |m: String| Err(Error::Precondition(m));
        if n_vertices == 0 {
            return bad("the lattice has no vertices".into());
        }
        let mut degree = vec![0; n_vertices];
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a >= n_vertices || b >= n_vertices {
                return bad(format!("edge {e} references a vertex outside 0..{n_vertices}"));
            }
            if a == b {
                return bad(format!("edge {e} is a self-loop, which is not supported"));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 3) {
            return bad(format!(
                "vertex {v} has degree {}, the lattice must be trivalent",
                degree[v]
            ));
        }
        let tail = |d: Dart| edges[d.edge][if d.forward { 0 } else { 1 }];
        let head = |d: Dart| edges[d.edge][if d.forward { 1 } else { 0 }];

        let mut face_of = vec![[usize::MAX; 2]; edges.len()];
        // next[half_in] = half_out, per vertex
        let mut succ: std::collections::HashMap<HalfEdge, HalfEdge> = std::collections::HashMap::new();
        for (p, darts) in plaquettes.iter().enumerate() {
            if darts.is_empty() {
                return bad(format!("plaquette {p} is empty"));
            }
            for (k, &d) in darts.iter().enumerate() {
                if d.edge >= edges.len() {
                    return bad(format!("plaquette {p} references edge {} of {}", d.edge, edges.len()));
                }
                let slot = &mut face_of[d.edge][if d.forward { 0 } else { 1 }];
                if *slot != usize::MAX {
                    return bad(format!("dart {}{} occurs in two plaquettes", sign(d), d.edge));
                }
                *slot = p;
                let next = darts[(k + 1) % darts.len()];
                if head(d) != tail(next) {
                    return bad(format!("plaquette {p} is not a closed walk at position {k}"));
                }
                if d.arriving() == next.leaving() {
                    return bad(format!("plaquette {p} backtracks along edge {}", d.edge));
                }
                succ.insert(d.arriving(), next.leaving());
            }
        }
        for (e, f) in face_of.iter().enumerate() {
            if f.contains(&usize::MAX) {
                return bad(format!("edge {e} is not bounded by plaquettes on both sides"));
            }
        }
        let mut halves: Vec<Vec<HalfEdge>> = vec![Vec::new(); n_vertices];
        for (e, &[a, b]) in edges.iter().enumerate() {
            halves[a].push(HalfEdge { edge: e, end: 0 });
            halves[b].push(HalfEdge { edge: e, end: 1 });
        }
        let mut rotation = Vec::with_capacity(n_vertices);
        for (v, hs) in halves.iter().enumerate() {
            let h0 = hs[0];
            let h1 = succ[&h0];
            let h2 = succ[&h1];
            if succ[&h2] != h0 || h1 == h0 || h2 == h0 {
                return bad(format!("the plaquettes do not close up into a disc around vertex {v}"));
            }
            rotation.push([h0, h1, h2]);
        }
        let l = TrivalentLattice {
            n_vertices,
            edges,
            plaquettes,
            rotation,
            face_of,
        };
        if !l.is_connected() {
            return bad("the lattice is not connected".into());
        }
        Ok(l)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in self.rotation[v] {
                let w = self.edges[h.edge][1 - h.end as usize];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Honeycomb lattice on a torus with `rows × cols` hexagonal cells.
    pub fn honeycomb_torus(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Precondition(
                "honeycomb torus needs at least one row and column".into(),
            ));
        }
        let cell = |x: usize, y: usize| (y % rows) * cols + (x % cols);
        let a = |x: usize, y: usize| 2 * cell(x, y);
        let b = |x: usize, y: usize| 2 * cell(x, y) + 1;
        let n_cells = rows * cols;
        // per cell: t0 = A(x,y)-B(x,y), t1 = A(x,y)-B(x-1,y), t2 = A(x,y)-B(x,y-1)
        let mut edges = Vec::with_capacity(3 * n_cells);
        for y in 0..rows {
            for x in 0..cols {
                edges.push([a(x, y), b(x, y)]);
                edges.push([a(x, y), b(x + cols - 1, y)]);
                edges.push([a(x, y), b(x, y + rows - 1)]);
            }
        }
        let t = |x: usize, y: usize, k: usize| 3 * cell(x, y) + k;
        let mut rotation = vec![[HalfEdge { edge: 0, end: 0 }; 3]; 2 * n_cells];
        for y in 0..rows {
            for x in 0..cols {
                let h = |edge, end| HalfEdge { edge, end };
                rotation[a(x, y)] = [h(t(x, y, 2), 0), h(t(x, y, 0), 0), h(t(x, y, 1), 0)];
                rotation[b(x, y)] = [h(t(x + 1, y, 1), 1), h(t(x, y + 1, 2), 1), h(t(x, y, 0), 1)];
            }
        }
        let plaquettes = trace_faces(&edges, &rotation);
        Self::new(2 * n_cells, edges, plaquettes)
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn plaquette_count(&self) -> usize {
        self.plaquettes.len()
    }

    pub fn endpoints(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn plaquette(&self, p: usize) -> &[Dart] {
        &self.plaquettes[p]
    }

    /// Half-edges at `v` in cyclic order.
    pub fn rotation(&self, v: usize) -> [HalfEdge; 3] {
        self.rotation[v]
    }

    /// The three edges meeting at `v`.
    pub fn vertex_edges(&self, v: usize) -> [usize; 3] {
        self.rotation[v].map(|h| h.edge)
    }

    /// Plaquette containing the dart.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.edge][if d.forward { 0 } else { 1 }]
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.edges[h.edge][h.end as usize]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.edges.len() as i64 + self.plaquettes.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut header = |name: &str| -> Result<usize> {
            let (line, l) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing `{name}` header")))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 2 || f[0] != name {
                return Err(Error::parse(line, format!("expected `{name} N`")));
            }
            int(f[1], line)
        };
        let n_vertices = header("vertices")?;
        let n_edges = header("edges")?;
        let mut edges = vec![None; n_edges];
        for _ in 0..n_edges {
            let (line, l) = lines.next().ok_or_else(|| Error::parse(0, "too few edge lines"))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 4 || f[0] != "e" {
                return Err(Error::parse(line, "expected `e idx v1 v2`"));
            }
            let idx = int(f[1], line)?;
            if idx >= n_edges || edges[idx].is_some() {
                return Err(Error::parse(
                    line,
                    format!("edge index {idx} is out of range or repeated"),
                ));
            }
            edges[idx] = Some([int(f[2], line)?, int(f[3], line)?]);
        }
        let edges: Vec<[usize; 2]> = edges.into_iter().map(Option::unwrap).collect();
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `plaquettes` header"))?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 2 || f[0] != "plaquettes" {
            return Err(Error::parse(line, "expected `plaquettes K`"));
        }
        let n_plaq = int(f[1], line)?;
        let mut plaquettes = Vec::with_capacity(n_plaq);
        for _ in 0..n_plaq {
            let (line, l) = lines.next().ok_or_else(|| Error::parse(0, "too few plaquette lines"))?;
            let mut f = l.split_whitespace();
            if f.next() != Some("p") {
                return Err(Error::parse(line, "expected `p ±e ±e ...`"));
            }
            let darts = f
                .map(|tok| {
                    let (forward, rest) = match tok.as_bytes().first() {
                        Some(b'+') => (true, &tok[1..]),
                        Some(b'-') => (false, &tok[1..]),
                        _ => {
                            return Err(Error::parse(
                                line,
                                format!("dart `{tok}` needs an explicit + or - sign"),
                            ))
                        }
                    };
                    Ok(Dart {
                        edge: int(rest, line)?,
                        forward,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            plaquettes.push(darts);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::parse(line, "unexpected trailing content"));
        }
        Self::new(n_vertices, edges, plaquettes)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", self.n_vertices).unwrap();
        writeln!(out, "edges {}", self.edges.len()).unwrap();
        for (e, [a, b]) in self.edges.iter().enumerate() {
            writeln!(out, "e {e} {a} {b}").unwrap();
        }
        writeln!(out, "plaquettes {}", self.plaquettes.len()).unwrap();
        for p in &self.plaquettes {
            let darts: Vec<String> = p.iter().map(|d| format!("{}{}", sign(*d), d.edge)).collect();
            writeln!(out, "p {}", darts.join(" ")).unwrap();
        }
        out
    }

    /// Resolves a lattice argument: `honeycomb-torus:N` (one row of `N`
    /// cells), `honeycomb-torus:RxC`, or a path to a lattice file.
    pub fn from_spec(spec: &str) -> Result<Self> {
        if let Some(rest) = spec.strip_prefix("honeycomb-torus:") {
            let dims: Vec<&str> = rest.split('x').collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("bad honeycomb size `{rest}`")))
            };
            return match dims.as_slice() {
                [n] => Self::honeycomb_torus(1, num(n)?),
                [r, c] => Self::honeycomb_torus(num(r)?, num(c)?),
                _ => Err(Error::Precondition(format!("bad honeycomb size `{rest}`"))),
            };
        }
        let text = std::fs::read_to_string(Path::new(spec))?;
        Self::parse(&text)
    }
}

fn sign(d: Dart) -> char {
    if d.forward {
        '+'
    } else {
        '-'
    }
}

fn int(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{s}`")))
}

/// Traces faces of a rotation system. Arriving at `w` through `h`, the walk
/// continues along the half-edge preceding `h` in the rotation at `w`.
fn trace_faces(edges: &[[usize; 2]], rotation: &[[HalfEdge; 3]]) -> Vec<Vec<Dart>> {
    let mut used = vec![[false; 2]; edges.len()];
    let mut faces = Vec::new();
    for e in 0..edges.len() {
        for forward in [true, false] {
            if used[e][!forward as usize] {
                continue;
            }
            let start = Dart { edge: e, forward };
            let mut face = Vec::new();
            let mut d = start;
            loop {
                used[d.edge][!d.forward as usize] = true;
                face.push(d);
                let h = d.arriving();
                let w = edges[h.edge][h.end as usize];
                let i = rotation[w].iter().position(|&x| x == h).unwrap();
                let out = rotation[w][(i + 2) % 3];
                d = Dart {
                    edge: out.edge,
                    forward: out.end == 0,
                };
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}
