//! Residuals of the F-symbol consistency conditions.
//!
//! With all labels self-dual these are
//!
//! ```text
//! F^{ijk}_{ji0} = v_k / (v_i v_j) δ_ijk
//! F^{ijm}_{kln} = F^{lkm}_{jin} = F^{jim}_{lkn} = F^{imj}_{knl} v_m v_n / (v_j v_l)
//! Σ_n F^{mlq}_{kpn} F^{jip}_{mns} F^{jsn}_{lkr} = F^{jip}_{qkr} F^{riq}_{mls}
//! ```

use super::QContext;

/// Maximum absolute residual of each identity at a fixed `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub r: u32,
    pub first_line: f64,
    pub symmetry: f64,
    pub pentagon: f64,
    pub orthogonality: f64,
    /// Number of admissible pentagon tuples that were evaluated.
    pub pentagon_tuples: usize,
}

impl IdentityReport {
    pub fn compute(ctx: &QContext) -> Self {
        let (pentagon, pentagon_tuples) = pentagon_residual(ctx);
        IdentityReport {
            r: ctx.r(),
            first_line: first_line_residual(ctx),
            symmetry: symmetry_residual(ctx),
            pentagon,
            orthogonality: orthogonality_residual(ctx),
            pentagon_tuples,
        }
    }
}

pub fn first_line_residual(ctx: &QContext) -> f64 {
    let n = ctx.label_count();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let want = if ctx.admissible_idx(i, j, k) {
                    ctx.sqrt_dim(k) / (ctx.sqrt_dim(i) * ctx.sqrt_dim(j))
                } else {
                    0.0
                };
                worst = worst.max((ctx.f_idx([i, j, k, j, i, 0]) - want).abs());
            }
        }
    }
    worst
}

pub fn symmetry_residual(ctx: &QContext) -> f64 {
    let n = ctx.label_count();
    let v = |x: usize| ctx.sqrt_dim(x);
    let mut worst: f64 = 0.0;
    for_each_tuple(n, |[i, j, m, k, l, nn]| {
        let f = ctx.f_idx([i, j, m, k, l, nn]);
        let a = ctx.f_idx([l, k, m, j, i, nn]);
        let b = ctx.f_idx([j, i, m, l, k, nn]);
        let c = ctx.f_idx([i, m, j, k, nn, l]) * v(m) * v(nn) / (v(j) * v(l));
        worst = worst.max((f - a).abs()).max((f - b).abs()).max((f - c).abs());
    });
    worst
}

/// Unitarity of F as a matrix in its (m, n) channel labels.
pub fn orthogonality_residual(ctx: &QContext) -> f64 {
    let n = ctx.label_count();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let ms: Vec<usize> = (0..n)
                        .filter(|&m| ctx.admissible_idx(i, j, m) && ctx.admissible_idx(k, l, m))
                        .collect();
                    for &m1 in &ms {
                        for &m2 in &ms {
                            let s: f64 = (0..n)
                                .map(|x| ctx.f_idx([i, j, m1, k, l, x]) * ctx.f_idx([i, j, m2, k, l, x]))
                                .sum();
                            let want = if m1 == m2 { 1.0 } else { 0.0 };
                            worst = worst.max((s - want).abs());
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Largest pentagon residual over every tuple where either side can be
/// non-zero, and the number of such tuples.
pub fn pentagon_residual(ctx: &QContext) -> (f64, usize) {
    let n = ctx.label_count();
    // partners[a*n+b] = all c with (a,b,c) admissible
    let partners: Vec<Vec<usize>> = (0..n * n)
        .map(|ab| (0..n).filter(|&c| ctx.admissible_idx(ab / n, ab % n, c)).collect())
        .collect();
    let with = |a: usize, b: usize| &partners[a * n + b];
    let f = |e: [usize; 6]| ctx.f_idx(e);

    let mut worst: f64 = 0.0;
    let mut count = 0;
    for j in 0..n {
        for i in 0..n {
            for &p in with(j, i) {
                for m in 0..n {
                    for l in 0..n {
                        for &q in with(m, l) {
                            for &k in with(p, q) {
                                for &r in with(j, k) {
                                    for &s in with(i, m) {
                                        let lhs: f64 = (0..n)
                                            .map(|x| {
                                                f([m, l, q, k, p, x]) * f([j, i, p, m, x, s]) * f([j, s, x, l, k, r])
                                            })
                                            .sum();
                                        let rhs = f([j, i, p, q, k, r]) * f([r, i, q, m, l, s]);
                                        worst = worst.max((lhs - rhs).abs());
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (worst, count)
}

fn for_each_tuple(n: usize, mut f: impl FnMut([usize; 6])) {
    let total = n.pow(6);
    for mut idx in 0..total {
        let mut t = [0; 6];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        f(t);
    }
}
