//! Comparison of the string-net ground-state projector with the
//! Turaev–Viro amplitude of the cylinder over the dual triangulation.

use crate::complex3::{dual_triangulation, prism_complex, Branching};
use crate::error::{Error, Result};
use crate::matrix::{OperatorMatrix, DENSE_LIMIT};
use crate::qalgebra::QContext;
use crate::stringnet::{ground_projector, Basis, TrivalentLattice};
use crate::tv::{tv_matrix, TvOptions};

/// Default tolerance on the largest entrywise difference.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub r: u32,
    pub dim: usize,
    pub max_abs_diff: f64,
    pub tolerance: f64,
    pub trace_projector: f64,
    pub trace_tv: f64,
    /// Ranks from the spectrum, when the dimension allows a dense solve.
    pub rank_projector: Option<usize>,
    pub rank_tv: Option<usize>,
    /// Least-squares scalar `c` minimising `|P - c M|`.
    pub fitted_scalar: f64,
    pub passed: bool,
}

/// Builds both operators on the lattice basis and compares them.
pub fn verify_projector_equals_tv(
    l: &TrivalentLattice,
    ctx: &QContext,
    opts: &TvOptions,
    tolerance: f64,
) -> Result<EquivalenceReport> {
    let p = ground_projector(l, ctx)?;
    let m = tv_operator_on_lattice(l, ctx, opts)?;
    Ok(compare(ctx.r(), &p, &m, tolerance))
}

/// The cylinder amplitude over the dual of `l`, indexed by lattice
/// labellings.
pub fn tv_operator_on_lattice(l: &TrivalentLattice, ctx: &QContext, opts: &TvOptions) -> Result<OperatorMatrix> {
    let x = dual_triangulation(l)?;
    let b = Branching::from_vertex_order(&x)?;
    let cyl = prism_complex(&x, &b)?;
    let m = tv_matrix(&cyl, ctx, opts)?;
    // dual edge k crosses lattice edge k, so both bases share digit order;
    // check that explicitly rather than assume it
    let basis = Basis::new(ctx.label_count(), l.edge_count())?;
    if cyl.surface.edge_count() != l.edge_count() || m.dim() != basis.dim() {
        return Err(Error::Structure(
            "the dual edge bijection does not cover the lattice".into(),
        ));
    }
    Ok(m)
}

pub fn compare(r: u32, p: &OperatorMatrix, m: &OperatorMatrix, tolerance: f64) -> EquivalenceReport {
    let max_abs_diff = p.max_abs_diff(m);
    let dot = |a: &OperatorMatrix, b: &OperatorMatrix| a.entries().map(|(i, j, v)| v * b.get(i, j)).sum::<f64>();
    let mm = dot(m, m);
    let fitted_scalar = if mm > 0.0 { dot(p, m) / mm } else { 0.0 };
    let rank = |a: &OperatorMatrix| (a.dim() <= DENSE_LIMIT).then(|| a.projector_rank().ok()).flatten();
    EquivalenceReport {
        r,
        dim: p.dim(),
        max_abs_diff,
        tolerance,
        trace_projector: p.trace(),
        trace_tv: m.trace(),
        rank_projector: rank(p),
        rank_tv: rank(m),
        fitted_scalar,
        passed: max_abs_diff <= tolerance,
    }
}
