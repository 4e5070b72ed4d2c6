use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qalgebra::QContext;

use super::basis::Basis;
use super::lattice::TrivalentLattice;

/// A label appearing in a plaquette amplitude: an input label of the
/// state, or one of the summed/output unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ref {
    Old(usize),
    Var(usize),
}

#[derive(Clone, Debug)]
struct Corner {
    leg: Ref,
    /// (before, after) of the side entering the corner, then of the side leaving it
    prev: (Ref, Ref),
    next: (Ref, Ref),
}

/// Precomputed combinatorics of one plaquette operator.
#[derive(Clone, Debug)]
struct PlaquetteGeometry {
    /// Distinct edges of the plaquette and the variable holding each new label.
    outputs: Vec<(usize, usize)>,
    n_vars: usize,
    /// Corners grouped by the depth at which their last variable is set.
    corners_at: Vec<Vec<Corner>>,
}

impl PlaquetteGeometry {
    fn new(l: &TrivalentLattice, p: usize) -> Result<Self> {
        let darts = l.plaquette(p);
        let mut count = vec![0u8; l.edge_count()];
        for d in darts {
            count[d.edge] += 1;
        }
        // variables in order of first appearance around the boundary
        let mut new_var = vec![usize::MAX; l.edge_count()];
        let mut mid_var = vec![usize::MAX; l.edge_count()];
        let mut n_vars = 0;
        let mut outputs = Vec::new();
        let mut fresh = |slot: &mut usize| {
            if *slot == usize::MAX {
                *slot = n_vars;
                n_vars += 1;
            }
            *slot
        };
        let mut sides = Vec::with_capacity(darts.len());
        for d in darts {
            let e = d.edge;
            let side = if count[e] == 1 {
                (Ref::Old(e), Ref::Var(fresh(&mut new_var[e])))
            } else if d.forward {
                (Ref::Old(e), Ref::Var(fresh(&mut mid_var[e])))
            } else {
                let m = fresh(&mut mid_var[e]);
                (Ref::Var(m), Ref::Var(fresh(&mut new_var[e])))
            };
            sides.push(side);
        }
        let mut seen = vec![false; l.edge_count()];
        for d in darts {
            if !seen[d.edge] {
                seen[d.edge] = true;
                outputs.push((d.edge, new_var[d.edge]));
            }
        }

        let k = darts.len();
        let mut corner_vertices = vec![0u8; l.vertex_count()];
        let mut corners_at: Vec<Vec<Corner>> = vec![Vec::new(); n_vars];
        for i in 0..k {
            let (din, dout) = (darts[i], darts[(i + 1) % k]);
            let (h_in, h_out) = (din.arriving(), dout.leaving());
            let w = l.vertex_of(h_in);
            corner_vertices[w] += 1;
            if corner_vertices[w] == 3 {
                return Err(Error::Precondition(format!(
                    "plaquette {p} has three corners at vertex {w}, which is not supported"
                )));
            }
            let leg_half = l
                .rotation(w)
                .into_iter()
                .find(|&h| h != h_in && h != h_out)
                .expect("trivalent vertex");
            let x = leg_half.edge;
            let leg = if count[x] == 0 {
                Ref::Old(x)
            } else {
                let doubled = if count[din.edge] == 2 {
                    din
                } else if count[dout.edge] == 2 {
                    dout
                } else {
                    return Err(Error::Structure(format!(
                        "plaquette {p} revisits vertex {w} without a doubled edge"
                    )));
                };
                if doubled.forward {
                    Ref::Old(x)
                } else {
                    Ref::Var(new_var[x])
                }
            };
            let corner = Corner {
                leg,
                prev: sides[i],
                next: sides[(i + 1) % k],
            };
            let depth = [corner.leg, corner.prev.0, corner.prev.1, corner.next.0, corner.next.1]
                .iter()
                .filter_map(|r| match r {
                    Ref::Var(v) => Some(*v),
                    Ref::Old(_) => None,
                })
                .max()
                .expect("each side carries a variable");
            corners_at[depth].push(corner);
        }
        Ok(PlaquetteGeometry {
            outputs,
            n_vars,
            corners_at,
        })
    }

    /// Adds `coeff · B_p^s |old⟩` into `out`, keyed by output index.
    #[allow(clippy::too_many_arguments)]
    fn apply(
        &self,
        ctx: &QContext,
        basis: &Basis,
        old: &[usize],
        old_index: usize,
        s: usize,
        coeff: f64,
        out: &mut BTreeMap<usize, f64>,
    ) {
        let mut base = old_index;
        for &(e, _) in &self.outputs {
            base -= old[e] * basis.stride(e);
        }
        let mut vars = vec![0usize; self.n_vars];
        self.dfs(ctx, basis, old, s, 0, coeff, base, &mut vars, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        ctx: &QContext,
        basis: &Basis,
        old: &[usize],
        s: usize,
        depth: usize,
        amp: f64,
        base: usize,
        vars: &mut Vec<usize>,
        out: &mut BTreeMap<usize, f64>,
    ) {
        if depth == self.n_vars {
            let idx = self
                .outputs
                .iter()
                .fold(base, |acc, &(e, v)| acc + vars[v] * basis.stride(e));
            *out.entry(idx).or_insert(0.0) += amp;
            return;
        }
        let get = |r: Ref, vars: &[usize]| match r {
            Ref::Old(e) => old[e],
            Ref::Var(v) => vars[v],
        };
        for x in 0..ctx.label_count() {
            vars[depth] = x;
            let mut a = amp;
            for c in &self.corners_at[depth] {
                let (b1, a1) = (get(c.prev.0, vars), get(c.prev.1, vars));
                let (b2, a2) = (get(c.next.0, vars), get(c.next.1, vars));
                a *= ctx.f_idx([get(c.leg, vars), b1, b2, s, a2, a1]);
                if a == 0.0 {
                    break;
                }
            }
            if a != 0.0 {
                self.dfs(ctx, basis, old, s, depth + 1, a, base, vars, out);
            }
        }
    }
}

fn check_basis(l: &TrivalentLattice, ctx: &QContext) -> Result<Basis> {
    Basis::new(ctx.label_count(), l.edge_count())
}

/// Projector onto admissible labellings at vertex `v`.
pub fn q_vertex(l: &TrivalentLattice, ctx: &QContext, v: usize) -> Result<OperatorMatrix> {
    if v >= l.vertex_count() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    let basis = check_basis(l, ctx)?;
    let [a, b, c] = l.vertex_edges(v);
    let diag: Vec<f64> = (0..basis.dim())
        .map(|i| {
            let ok = ctx.admissible_idx(basis.digit(i, a), basis.digit(i, b), basis.digit(i, c));
            if ok {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Ok(OperatorMatrix::diagonal(&diag))
}

/// Product of all vertex projectors.
pub fn vertex_projector(l: &TrivalentLattice, ctx: &QContext) -> Result<OperatorMatrix> {
    let basis = check_basis(l, ctx)?;
    let diag: Vec<f64> = (0..basis.dim())
        .map(|i| {
            let ok = (0..l.vertex_count()).all(|v| {
                let [a, b, c] = l.vertex_edges(v);
                ctx.admissible_idx(basis.digit(i, a), basis.digit(i, b), basis.digit(i, c))
            });
            if ok {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Ok(OperatorMatrix::diagonal(&diag))
}

fn plaquette_matrix(
    l: &TrivalentLattice,
    ctx: &QContext,
    p: usize,
    weights: &[(usize, f64)],
) -> Result<OperatorMatrix> {
    if p >= l.plaquette_count() {
        return Err(Error::Precondition(format!("no plaquette {p}")));
    }
    let basis = check_basis(l, ctx)?;
    let geo = PlaquetteGeometry::new(l, p)?;
    let columns: Vec<Vec<(usize, f64)>> = (0..basis.dim())
        .into_par_iter()
        .map(|col| {
            let old = basis.decode(col);
            let mut out = BTreeMap::new();
            for &(s, w) in weights {
                geo.apply(ctx, &basis, &old, col, s, w, &mut out);
            }
            out.into_iter().collect()
        })
        .collect();
    Ok(OperatorMatrix::from_columns(basis.dim(), columns))
}

/// The operator inserting a loop of label `s` into plaquette `p`.
pub fn b_plaquette_s(l: &TrivalentLattice, ctx: &QContext, p: usize, s: usize) -> Result<OperatorMatrix> {
    if s >= ctx.label_count() {
        return Err(Error::Domain(format!("loop label index {s} is out of range")));
    }
    plaquette_matrix(l, ctx, p, &[(s, 1.0)])
}

/// The plaquette projector `Σ_s (d_s / D²) B_p^s`.
pub fn b_plaquette(l: &TrivalentLattice, ctx: &QContext, p: usize) -> Result<OperatorMatrix> {
    let weights: Vec<(usize, f64)> = (0..ctx.label_count())
        .map(|s| (s, ctx.plaquette_coefficient(s)))
        .collect();
    plaquette_matrix(l, ctx, p, &weights)
}

/// `H = -Σ_I Q_I - Σ_p B_p`.
pub fn hamiltonian(l: &TrivalentLattice, ctx: &QContext) -> Result<OperatorMatrix> {
    let basis = check_basis(l, ctx)?;
    let mut diag = vec![0.0; basis.dim()];
    for (i, d) in diag.iter_mut().enumerate() {
        for v in 0..l.vertex_count() {
            let [a, b, c] = l.vertex_edges(v);
            if ctx.admissible_idx(basis.digit(i, a), basis.digit(i, b), basis.digit(i, c)) {
                *d -= 1.0;
            }
        }
    }
    let mut h = OperatorMatrix::diagonal(&diag);
    for p in 0..l.plaquette_count() {
        h = h.sub(&b_plaquette(l, ctx, p)?);
    }
    Ok(h)
}

/// `P = Π_I Q_I Π_p B_p`.
pub fn ground_projector(l: &TrivalentLattice, ctx: &QContext) -> Result<OperatorMatrix> {
    let mut p = vertex_projector(l, ctx)?;
    for k in 0..l.plaquette_count() {
        p = p.mul(&b_plaquette(l, ctx, k)?);
    }
    Ok(p)
}

/// Low-lying spectrum summary of a Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub ground_energy: f64,
    pub degeneracy: usize,
    /// `None` when the whole spectrum is degenerate.
    pub gap: Option<f64>,
    pub eigenvalues: Vec<f64>,
}

/// Eigenvalues within this distance of the minimum count as ground states.
pub const DEGENERACY_TOL: f64 = 1e-8;

pub fn spectrum(h: &OperatorMatrix) -> Result<Spectrum> {
    let eigenvalues = h.symmetric_eigenvalues()?;
    let ground_energy = *eigenvalues
        .first()
        .ok_or_else(|| Error::Precondition("empty operator".into()))?;
    let degeneracy = eigenvalues
        .iter()
        .take_while(|&&e| e - ground_energy < DEGENERACY_TOL)
        .count();
    let gap = eigenvalues.get(degeneracy).map(|e| e - ground_energy);
    Ok(Spectrum {
        ground_energy,
        degeneracy,
        gap,
        eigenvalues,
    })
}
