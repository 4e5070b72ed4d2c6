//! Racah-type single sums for the SU(2)_q recoupling symbols.
//!
//! Everything here works in "colour" units (twice the spin). Quantum
//! integers use the Kauffman–Lins sign convention `[n]_A = (-1)^(n-1) [n]_q`
//! so that loop values `Δ_n = (-1)^n [n+1]_A = [n+1]_q` are positive and
//! every self-dual label has Frobenius–Schur indicator +1.

use std::f64::consts::PI;

/// Signed quantum factorials `[0]_A! ..= [max]_A!` at a fixed `r`.
#[derive(Debug, Clone)]
pub(crate) struct Factorials {
    table: Vec<f64>,
}

impl Factorials {
    pub(crate) fn new(r: u32, max: usize) -> Self {
        let s1 = (PI / r as f64).sin();
        let mut table = Vec::with_capacity(max + 1);
        table.push(1.0);
        let mut acc = 1.0;
        for n in 1..=max {
            let q = (n as f64 * PI / r as f64).sin() / s1;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            acc *= sign * q;
            table.push(acc);
        }
        Factorials { table }
    }

    #[inline]
    fn get(&self, n: i64) -> f64 {
        debug_assert!(n >= 0);
        self.table[n as usize]
    }
}

/// The theta net evaluation for an admissible triple of colours.
pub(crate) fn theta(f: &Factorials, a: u32, b: u32, c: u32) -> f64 {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let m = (a + b - c) / 2;
    let n = (b + c - a) / 2;
    let p = (a + c - b) / 2;
    let sign = if (m + n + p) % 2 == 0 { 1.0 } else { -1.0 };
    sign * f.get(m + n + p + 1) * f.get(m) * f.get(n) * f.get(p) / (f.get(m + n) * f.get(n + p) * f.get(m + p))
}

/// Tetrahedral net evaluation. Colours are given in the `{i j m; k l n}`
/// layout: faces (i,j,m), (k,l,m), (i,l,n), (k,j,n); opposite edge pairs
/// (i,k), (j,l), (m,n). The caller guarantees admissibility of all faces.
pub(crate) fn tet(f: &Factorials, e: [u32; 6]) -> f64 {
    let [i, j, m, k, l, n] = e.map(i64::from);
    let a = [(i + j + m) / 2, (k + l + m) / 2, (i + l + n) / 2, (k + j + n) / 2];
    let b = [(i + k + j + l) / 2, (i + k + m + n) / 2, (j + l + m + n) / 2];

    let mut pref = 1.0;
    for bj in b {
        for ai in a {
            pref *= f.get(bj - ai);
        }
    }
    for x in [i, j, m, k, l, n] {
        pref /= f.get(x);
    }

    let lo = *a.iter().max().unwrap();
    let hi = *b.iter().min().unwrap();
    let mut sum = 0.0;
    for s in lo..=hi {
        let mut den = 1.0;
        for ai in a {
            den *= f.get(s - ai);
        }
        for bj in b {
            den *= f.get(bj - s);
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * f.get(s + 1) / den;
    }
    pref * sum
}

/// Tetrahedrally symmetric 6j symbol: `Tet / sqrt(θ θ θ θ)`.
pub(crate) fn symmetric_6j(f: &Factorials, e: [u32; 6]) -> f64 {
    let [i, j, m, k, l, n] = e;
    let t = tet(f, e);
    let th = theta(f, i, j, m) * theta(f, k, l, m) * theta(f, i, l, n) * theta(f, k, j, n);
    debug_assert!(th > 0.0, "theta product must be positive, got {th}");
    t / th.sqrt()
}
