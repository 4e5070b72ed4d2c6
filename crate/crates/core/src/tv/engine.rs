//! Depth-first state sum over admissible colourings with incremental
//! tetrahedron products.

use rayon::prelude::*;

use crate::complex3::{SearchPlan, Triangulation3};
use crate::qalgebra::QContext;

/// How an edge contributes to the weight of a colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EdgeWeight {
    /// `d_j`
    Full,
    /// `sqrt(d_j)`
    Half,
    /// no factor
    One,
}

/// Number of shard prefixes to aim for. Fixed, so that the summation order
/// and hence the rounding do not depend on the thread count.
const TARGET_SHARDS: usize = 256;

pub(crate) struct StateSum<'a> {
    ctx: &'a QContext,
    order: Vec<usize>,
    checks: Vec<Vec<[usize; 3]>>,
    tets_at: Vec<Vec<[usize; 6]>>,
    weights: Vec<EdgeWeight>,
    /// Product over everything that depends only on fixed edges.
    fixed_factor: f64,
    initial: Vec<usize>,
}

/// A compensated or plain running sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Acc {
    sum: f64,
    comp: f64,
    kahan: bool,
}

impl Acc {
    pub(crate) fn new(kahan: bool) -> Self {
        Acc {
            sum: 0.0,
            comp: 0.0,
            kahan,
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        if self.kahan {
            let y = x - self.comp;
            let t = self.sum + y;
            self.comp = (t - self.sum) - y;
            self.sum = t;
        } else {
            self.sum += x;
        }
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

impl<'a> StateSum<'a> {
    /// `fixed[e]` pins an edge class to a label index; `prefix` edges are
    /// enumerated first, in order.
    pub(crate) fn new(
        ctx: &'a QContext,
        t: &Triangulation3,
        weights: Vec<EdgeWeight>,
        fixed: &[Option<usize>],
        prefix: &[usize],
    ) -> Self {
        let n = t.edge_count();
        let is_fixed: Vec<bool> = fixed.iter().map(Option::is_some).collect();
        let triples = t.face_triples();
        let plan = SearchPlan::new(n, &triples, &is_fixed, prefix);
        let mut depth_of = vec![None; n];
        for (d, &e) in plan.order.iter().enumerate() {
            depth_of[e] = Some(d);
        }
        let initial: Vec<usize> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
        let mut fixed_factor = 1.0;
        for tr in &plan.fixed_checks {
            if !ctx.admissible_idx(initial[tr[0]], initial[tr[1]], initial[tr[2]]) {
                fixed_factor = 0.0;
            }
        }
        for e in 0..n {
            if is_fixed[e] {
                fixed_factor *= weight(ctx, weights[e], initial[e]);
            }
        }
        let mut tets_at = vec![Vec::new(); plan.order.len()];
        for x in 0..t.tet_count() {
            let layout = t.sixj_layout(x);
            match layout.iter().filter_map(|&e| depth_of[e]).max() {
                Some(d) => tets_at[d].push(layout),
                None => fixed_factor *= ctx.sixj_idx(layout.map(|e| initial[e])),
            }
        }
        StateSum {
            ctx,
            order: plan.order,
            checks: plan.checks,
            tets_at,
            weights,
            fixed_factor,
            initial,
        }
    }

    /// Enumerates every admissible colouring with a non-zero weight and
    /// calls `leaf(labels, weight)`. Shards run in parallel; the shard
    /// results are returned in a fixed order.
    pub(crate) fn run_sharded<T, F, M>(&self, make: M, leaf: F) -> Vec<T>
    where
        T: Send,
        M: Fn() -> T + Sync,
        F: Fn(&mut T, &[usize], f64) + Sync,
    {
        if self.fixed_factor == 0.0 {
            return Vec::new();
        }
        let (depth, prefixes) = self.prefixes();
        prefixes
            .into_par_iter()
            .map(|(labels, w)| {
                let mut state = make();
                let mut labels = labels;
                self.dfs(depth, w, &mut labels, &mut |l: &[usize], w: f64| leaf(&mut state, l, w));
                state
            })
            .collect()
    }

    fn prefixes(&self) -> (usize, Vec<(Vec<usize>, f64)>) {
        let mut level = vec![(self.initial.clone(), self.fixed_factor)];
        let mut depth = 0;
        while depth < self.order.len() && level.len() < TARGET_SHARDS {
            let mut next = Vec::new();
            for (labels, w) in &level {
                for x in 0..self.ctx.label_count() {
                    let mut l = labels.clone();
                    if let Some(w2) = self.assign(depth, x, *w, &mut l) {
                        next.push((l, w2));
                    }
                }
            }
            level = next;
            depth += 1;
        }
        (depth, level)
    }

    /// Sets `order[depth]` to `x` and returns the updated weight, or `None`
    /// when the partial colouring dies.
    #[inline]
    fn assign(&self, depth: usize, x: usize, w: f64, labels: &mut [usize]) -> Option<f64> {
        let e = self.order[depth];
        labels[e] = x;
        for t in &self.checks[depth] {
            if !self.ctx.admissible_idx(labels[t[0]], labels[t[1]], labels[t[2]]) {
                return None;
            }
        }
        let mut w = w * weight(self.ctx, self.weights[e], x);
        for tet in &self.tets_at[depth] {
            w *= self.ctx.sixj_idx(tet.map(|e| labels[e]));
        }
        (w != 0.0).then_some(w)
    }

    fn dfs(&self, depth: usize, w: f64, labels: &mut Vec<usize>, leaf: &mut dyn FnMut(&[usize], f64)) {
        if depth == self.order.len() {
            leaf(labels, w);
            return;
        }
        for x in 0..self.ctx.label_count() {
            if let Some(w2) = self.assign(depth, x, w, labels) {
                self.dfs(depth + 1, w2, labels, leaf);
            }
        }
    }
}

#[inline]
pub(crate) fn weight(ctx: &QContext, kind: EdgeWeight, x: usize) -> f64 {
    match kind {
        EdgeWeight::Full => ctx.edge_weight(x),
        EdgeWeight::Half => ctx.half_edge_weight(x),
        EdgeWeight::One => 1.0,
    }
}
