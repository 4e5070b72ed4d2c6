//! Turaev–Viro state sums.
//!
//! A colouring assigns a label to every edge class. Its weight is the
//! product of edge weights, vertex weights and one symmetric 6j symbol per
//! tetrahedron; colourings with an inadmissible face contribute nothing.
//!
//! On a closed manifold every edge carries `d_j` and every vertex `D^{-2}`.
//! On a cylinder the boundary vertices carry `D^{-1}`, and the boundary
//! edge weights are split between the two ends according to
//! [`BoundaryWeights`].

mod engine;

use std::collections::BTreeMap;

use crate::complex3::{Cylinder, Triangulation3};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::qalgebra::{QContext, Spin};
use crate::stringnet::Basis;

use engine::{Acc, EdgeWeight, StateSum};

/// How the weight of a boundary edge is shared between the two copies of Σ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryWeights {
    /// `sqrt(d_j)` on both the bottom and the top copy.
    #[default]
    Symmetric,
    /// `d_j` on the bottom copy and nothing on the top copy. The resulting
    /// matrix differs from the symmetric one by a diagonal similarity.
    BlackWhite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TvOptions {
    pub boundary: BoundaryWeights,
    /// Compensated summation of colouring weights.
    pub kahan: bool,
}

/// The Turaev–Viro invariant of a closed triangulated 3-manifold.
pub fn tv_closed(t: &Triangulation3, ctx: &QContext, opts: &TvOptions) -> Result<f64> {
    if !t.is_closed() {
        return Err(Error::Precondition(format!(
            "the triangulation has {} boundary faces; use a cylinder amplitude instead",
            t.boundary_faces().len()
        )));
    }
    let weights = vec![EdgeWeight::Full; t.edge_count()];
    let sum = StateSum::new(ctx, t, weights, &vec![None; t.edge_count()], &[]);
    let shards = sum.run_sharded(|| Acc::new(opts.kahan), |acc, _, w| acc.add(w));
    let mut total = Acc::new(opts.kahan);
    for s in shards {
        total.add(s.value());
    }
    Ok(total.value() * ctx.total_dim_sq().powi(-(t.vertex_count() as i32)))
}

fn cylinder_weights(cyl: &Cylinder, opts: &TvOptions) -> Vec<EdgeWeight> {
    let mut w = vec![EdgeWeight::Full; cyl.complex.edge_count()];
    let (bottom, top) = match opts.boundary {
        BoundaryWeights::Symmetric => (EdgeWeight::Half, EdgeWeight::Half),
        BoundaryWeights::BlackWhite => (EdgeWeight::Full, EdgeWeight::One),
    };
    for &e in &cyl.bottom_edges {
        w[e] = bottom;
    }
    for &e in &cyl.top_edges {
        w[e] = top;
    }
    w
}

fn vertex_factor(cyl: &Cylinder, ctx: &QContext) -> f64 {
    let interior = cyl.interior_vertex_count() as i32;
    let boundary = (cyl.complex.vertex_count() - cyl.interior_vertex_count()) as i32;
    let d = ctx.total_dim_sq().sqrt();
    d.powi(-boundary - 2 * interior)
}

/// The amplitude between a bottom and a top labelling of the surface edges.
pub fn tv_cylinder(cyl: &Cylinder, ctx: &QContext, bottom: &[Spin], top: &[Spin], opts: &TvOptions) -> Result<f64> {
    let n = cyl.surface.edge_count();
    if bottom.len() != n || top.len() != n {
        return Err(Error::Precondition(format!("boundary labellings need {n} labels each")));
    }
    let mut fixed = vec![None; cyl.complex.edge_count()];
    for (marks, labels) in [(&cyl.bottom_edges, bottom), (&cyl.top_edges, top)] {
        for (&e, &s) in marks.iter().zip(labels) {
            if !ctx.contains(s) {
                return Err(Error::Domain(format!(
                    "label {s} is outside the range for r = {}",
                    ctx.r()
                )));
            }
            fixed[e] = Some(s.index());
        }
    }
    let sum = StateSum::new(ctx, &cyl.complex, cylinder_weights(cyl, opts), &fixed, &[]);
    let shards = sum.run_sharded(|| Acc::new(opts.kahan), |acc, _, w| acc.add(w));
    let mut total = Acc::new(opts.kahan);
    for s in shards {
        total.add(s.value());
    }
    Ok(total.value() * vertex_factor(cyl, ctx))
}

/// The full cylinder amplitude as a matrix `M[top][bottom]`, with both
/// boundary labellings indexed by [`Basis`] over the surface edges.
pub fn tv_matrix(cyl: &Cylinder, ctx: &QContext, opts: &TvOptions) -> Result<OperatorMatrix> {
    let n_surface = cyl.surface.edge_count();
    let basis = Basis::new(ctx.label_count(), n_surface)?;
    let prefix: Vec<usize> = cyl.bottom_edges.iter().chain(&cyl.top_edges).copied().collect();
    let sum = StateSum::new(
        ctx,
        &cyl.complex,
        cylinder_weights(cyl, opts),
        &vec![None; cyl.complex.edge_count()],
        &prefix,
    );
    let index = |marks: &[usize], labels: &[usize]| {
        marks
            .iter()
            .enumerate()
            .map(|(k, &e)| labels[e] * basis.stride(k))
            .sum::<usize>()
    };
    let shards = sum.run_sharded(BTreeMap::<(usize, usize), Acc>::new, |map, labels, w| {
        let key = (index(&cyl.top_edges, labels), index(&cyl.bottom_edges, labels));
        map.entry(key).or_insert_with(|| Acc::new(opts.kahan)).add(w);
    });
    let mut merged: BTreeMap<(usize, usize), Acc> = BTreeMap::new();
    for shard in shards {
        for (k, v) in shard {
            merged.entry(k).or_insert_with(|| Acc::new(opts.kahan)).add(v.value());
        }
    }
    let scale = vertex_factor(cyl, ctx);
    Ok(OperatorMatrix::from_triplets(
        basis.dim(),
        merged.into_iter().map(|((r, c), v)| (r, c, v.value() * scale)),
    ))
}
