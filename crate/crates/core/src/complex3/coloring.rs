//! Enumeration of admissible edge colourings.
//!
//! Free edges are assigned in a greedy order that closes admissibility
//! triples as early as possible, so inadmissible partial colourings are cut
//! off near the root of the search.

use crate::error::{Error, Result};
use crate::qalgebra::{QContext, Spin};

use super::tri2::Triangulation2;
use super::tri3::Triangulation3;

/// Anything whose edges can be coloured subject to triangle admissibility.
pub trait Colorable {
    fn edge_count(&self) -> usize;
    /// Edge triples that must be admissible.
    fn triples(&self) -> Vec<[usize; 3]>;
}

impl Colorable for Triangulation3 {
    fn edge_count(&self) -> usize {
        Triangulation3::edge_count(self)
    }

    fn triples(&self) -> Vec<[usize; 3]> {
        self.face_triples()
    }
}

impl Colorable for Triangulation2 {
    fn edge_count(&self) -> usize {
        Triangulation2::edge_count(self)
    }

    fn triples(&self) -> Vec<[usize; 3]> {
        Triangulation2::triples(self)
    }
}

/// Admissible colourings of `t` extending `fixed` (one entry per edge).
pub fn enumerate_colorings<'a>(t: &impl Colorable, ctx: &'a QContext, fixed: &[Option<Spin>]) -> Result<Colorings<'a>> {
    Colorings::new(ctx, t.edge_count(), &t.triples(), fixed)
}

/// Admissible colourings of `t` whose first free edges (in `prefix_edges`
/// order) take the labels in `prefix`. Shards for different prefixes are
/// disjoint and together cover [`enumerate_colorings`].
pub fn enumerate_colorings_shard<'a>(
    t: &impl Colorable,
    ctx: &'a QContext,
    fixed: &[Option<Spin>],
    prefix_edges: &[usize],
    prefix: &[Spin],
) -> Result<Colorings<'a>> {
    if prefix_edges.len() != prefix.len() {
        return Err(Error::Precondition("prefix edges and labels differ in length".into()));
    }
    let mut fixed = fixed.to_vec();
    for (&e, &s) in prefix_edges.iter().zip(prefix) {
        if e >= fixed.len() || fixed[e].is_some() {
            return Err(Error::Precondition(format!(
                "prefix edge {e} is out of range or already fixed"
            )));
        }
        fixed[e] = Some(s);
    }
    Colorings::new(ctx, t.edge_count(), &t.triples(), &fixed)
}

/// A search order over the free edges and the triples that become fully
/// assigned at each depth.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    /// Free edges in assignment order.
    pub order: Vec<usize>,
    /// `checks[d]`: triples completed when `order[d]` is assigned.
    pub checks: Vec<Vec<[usize; 3]>>,
    /// Triples made only of fixed edges.
    pub fixed_checks: Vec<[usize; 3]>,
}

impl SearchPlan {
    /// `prefix` edges are placed first, in the given order; the remaining
    /// free edges follow greedily.
    pub fn new(n_edges: usize, triples: &[[usize; 3]], fixed: &[bool], prefix: &[usize]) -> Self {
        let mut assigned = fixed.to_vec();
        let mut order = Vec::new();
        for &e in prefix {
            if !assigned[e] {
                assigned[e] = true;
                order.push(e);
            }
        }
        let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n_edges];
        for (k, tr) in triples.iter().enumerate() {
            for &e in tr {
                if !touching[e].contains(&k) {
                    touching[e].push(k);
                }
            }
        }
        loop {
            // prefer the edge that completes the most triples, then the one
            // appearing in the most partially assigned triples
            let best = (0..n_edges).filter(|&e| !assigned[e]).max_by_key(|&e| {
                let mut completes = 0;
                let mut partial = 0;
                for &k in &touching[e] {
                    let open = triples[k].iter().filter(|&&x| !assigned[x] && x != e).count();
                    if open == 0 {
                        completes += 1;
                    } else if triples[k].iter().any(|&x| assigned[x]) {
                        partial += 1;
                    }
                }
                (completes, partial, std::cmp::Reverse(e))
            });
            match best {
                Some(e) => {
                    assigned[e] = true;
                    order.push(e);
                }
                None => break,
            }
        }
        let mut depth_of = vec![None; n_edges];
        for (d, &e) in order.iter().enumerate() {
            depth_of[e] = Some(d);
        }
        let mut checks = vec![Vec::new(); order.len()];
        let mut fixed_checks = Vec::new();
        for tr in triples {
            match tr.iter().filter_map(|&e| depth_of[e]).max() {
                Some(d) => checks[d].push(*tr),
                None => fixed_checks.push(*tr),
            }
        }
        SearchPlan {
            order,
            checks,
            fixed_checks,
        }
    }
}

/// Lazily enumerates admissible colourings, given as label indices per
/// edge.
pub struct Colorings<'a> {
    ctx: &'a QContext,
    plan: SearchPlan,
    labels: Vec<usize>,
    /// next label to try at each depth
    next: Vec<usize>,
    depth: usize,
    done: bool,
}

impl<'a> Colorings<'a> {
    pub fn new(ctx: &'a QContext, n_edges: usize, triples: &[[usize; 3]], fixed: &[Option<Spin>]) -> Result<Self> {
        Self::with_prefix(ctx, n_edges, triples, fixed, &[])
    }

    pub fn with_prefix(
        ctx: &'a QContext,
        n_edges: usize,
        triples: &[[usize; 3]],
        fixed: &[Option<Spin>],
        prefix: &[usize],
    ) -> Result<Self> {
        if fixed.len() != n_edges {
            return Err(Error::Precondition("one entry per edge is required".into()));
        }
        let mut labels = vec![0; n_edges];
        for (e, s) in fixed.iter().enumerate() {
            if let Some(s) = s {
                if !ctx.contains(*s) {
                    return Err(Error::Domain(format!(
                        "label {s} is outside the range for r = {}",
                        ctx.r()
                    )));
                }
                labels[e] = s.index();
            }
        }
        let is_fixed: Vec<bool> = fixed.iter().map(Option::is_some).collect();
        let plan = SearchPlan::new(n_edges, triples, &is_fixed, prefix);
        let done = !plan
            .fixed_checks
            .iter()
            .all(|t| ctx.admissible_idx(labels[t[0]], labels[t[1]], labels[t[2]]));
        let depth_count = plan.order.len();
        Ok(Colorings {
            ctx,
            plan,
            labels,
            next: vec![0; depth_count + 1],
            depth: 0,
            done,
        })
    }

    pub fn plan(&self) -> &SearchPlan {
        &self.plan
    }
}

impl Iterator for Colorings<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let n = self.ctx.label_count();
        let depth_count = self.plan.order.len();
        if self.done {
            return None;
        }
        if depth_count == 0 {
            self.done = true;
            return Some(self.labels.clone());
        }
        loop {
            if self.next[self.depth] >= n {
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            let x = self.next[self.depth];
            self.next[self.depth] += 1;
            let e = self.plan.order[self.depth];
            self.labels[e] = x;
            let ok = self.plan.checks[self.depth].iter().all(|t| {
                self.ctx
                    .admissible_idx(self.labels[t[0]], self.labels[t[1]], self.labels[t[2]])
            });
            if !ok {
                continue;
            }
            if self.depth + 1 == depth_count {
                return Some(self.labels.clone());
            }
            self.depth += 1;
            self.next[self.depth] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex3::tri2::{sphere_two_triangles, torus_one_vertex};

    fn brute(ctx: &QContext, n_edges: usize, triples: &[[usize; 3]]) -> Vec<Vec<usize>> {
        let n = ctx.label_count();
        let mut out = Vec::new();
        for mut idx in 0..n.pow(n_edges as u32) {
            let mut l = vec![0; n_edges];
            for x in l.iter_mut() {
                *x = idx % n;
                idx /= n;
            }
            if triples.iter().all(|t| ctx.admissible_idx(l[t[0]], l[t[1]], l[t[2]])) {
                out.push(l);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_on_surfaces() {
        for r in [3, 4, 5] {
            let ctx = QContext::new(r).unwrap();
            for x in [sphere_two_triangles(), torus_one_vertex()] {
                let tr = x.triples();
                let mut got: Vec<_> = Colorings::new(&ctx, x.edge_count(), &tr, &vec![None; x.edge_count()])
                    .unwrap()
                    .collect();
                got.sort();
                assert_eq!(got, brute(&ctx, x.edge_count(), &tr));
            }
        }
    }

    #[test]
    fn single_tetrahedron_and_shards() {
        let ctx = QContext::new(3).unwrap();
        let t = Triangulation3::new(1, &[]).unwrap();
        let all: Vec<_> = enumerate_colorings(&t, &ctx, &[None; 6]).unwrap().collect();
        assert_eq!(all.len(), brute(&ctx, 6, &t.face_triples()).len());
        let mut sharded = 0;
        for a in ctx.labels() {
            for b in ctx.labels() {
                sharded += enumerate_colorings_shard(&t, &ctx, &[None; 6], &[0, 5], &[*a, *b])
                    .unwrap()
                    .count();
            }
        }
        assert_eq!(sharded, all.len());
        let zero = enumerate_colorings(&t, &ctx, &[Some(Spin::ZERO); 6]).unwrap().count();
        assert_eq!(zero, 1);
    }

    #[test]
    fn fixed_labels_restrict() {
        let ctx = QContext::new(4).unwrap();
        let x = torus_one_vertex();
        let tr = x.triples();
        let fixed = vec![Some(Spin::HALF), None, None];
        let got: Vec<_> = Colorings::new(&ctx, 3, &tr, &fixed).unwrap().collect();
        assert!(!got.is_empty());
        assert!(got.iter().all(|c| c[0] == 1));
        let all = brute(&ctx, 3, &tr);
        assert_eq!(got.len(), all.iter().filter(|c| c[0] == 1).count());
        // an inadmissible fixed triple yields nothing
        let none = Colorings::new(&ctx, 3, &tr, &[Some(Spin::HALF); 3]).unwrap().count();
        assert_eq!(none, 0);
        assert!(Colorings::new(&ctx, 3, &tr, &[Some(Spin::from_twice(9)), None, None]).is_err());
    }
}
