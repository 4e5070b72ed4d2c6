//! SU(2)_q data at `q = exp(iπ/r)`: quantum integers and dimensions,
//! admissibility, the symmetric 6j symbol and the unitary F-symbols.

mod identities;
mod racah;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use identities::{
    first_line_residual, orthogonality_residual, pentagon_residual, symmetry_residual, IdentityReport,
};

/// Largest supported `r`. The 6j table is dense with `(r-1)^6` entries.
pub const MAX_R: u32 = 16;

/// The standard quantum integer `[n]_q = sin(nπ/r) / sin(π/r)`.
pub fn qint(n: i64, r: u32) -> Result<f64> {
    if r < 3 {
        return Err(Error::Domain(format!("r must be at least 3, got {r}")));
    }
    if n < 0 || n > r as i64 {
        return Err(Error::Domain(format!("qint needs 0 <= n <= r, got n={n}, r={r}")));
    }
    Ok(qint_unchecked(n, r))
}

#[inline]
fn qint_unchecked(n: i64, r: u32) -> f64 {
    (n as f64 * PI / r as f64).sin() / (PI / r as f64).sin()
}

/// An SU(2) spin label, stored as twice its value so `1/2` is `Spin(1)`.
///
/// All labels are self-dual, so orientation reversal never changes a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Spin(u8);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);

    pub const fn from_twice(twice: u8) -> Self {
        Spin(twice)
    }

    /// Twice the spin; doubles as the label's index in a [`QContext`].
    pub const fn twice(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// The dual label. Every SU(2) label is self-dual.
    pub const fn dual(self) -> Self {
        self
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `3/2`, `1.5` and `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(format!("not a spin label: {s:?}"));
        let twice = if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num * 2,
                "2" => num,
                _ => return Err(bad()),
            }
        } else if let Ok(n) = s.parse::<u32>() {
            n * 2
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let t = (2.0 * x).round();
            if x < 0.0 || (2.0 * x - t).abs() > 1e-9 {
                return Err(bad());
            }
            t as u32
        };
        u8::try_from(twice).map(Spin).map_err(|_| bad())
    }
}

/// A triple of labels meeting at a vertex or bounding a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LabelTriple(pub Spin, pub Spin, pub Spin);

/// Sign convention for edge weights in state sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WeightConvention {
    /// `d_j = [2j+1]_q`, positive for every label.
    #[default]
    Unsigned,
    /// `(-1)^{2j} [2j+1]_q`.
    Signed,
}

/// Immutable SU(2)_q context for a fixed root-of-unity order `r`.
#[derive(Clone)]
pub struct QContext {
    r: u32,
    labels: Vec<Spin>,
    dims: Vec<f64>,
    sqrt_dims: Vec<f64>,
    total_dim_sq: f64,
    convention: WeightConvention,
    /// Symmetric 6j symbols, indexed in base `n` over the six label indices.
    sixj: Vec<f64>,
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext")
            .field("r", &self.r)
            .field("labels", &self.labels.len())
            .field("total_dim_sq", &self.total_dim_sq)
            .field("convention", &self.convention)
            .finish()
    }
}

impl QContext {
    pub fn new(r: u32) -> Result<Self> {
        Self::with_convention(r, WeightConvention::Unsigned)
    }

    pub fn with_convention(r: u32, convention: WeightConvention) -> Result<Self> {
        if r < 3 {
            return Err(Error::Domain(format!("r must be at least 3, got {r}")));
        }
        if r > MAX_R {
            return Err(Error::Domain(format!("r must be at most {MAX_R}, got {r}")));
        }
        let n = (r - 1) as usize;
        let labels: Vec<Spin> = (0..n as u8).map(Spin).collect();
        let dims: Vec<f64> = (0..n).map(|t| qint_unchecked(t as i64 + 1, r)).collect();
        let sqrt_dims = dims.iter().map(|d| d.sqrt()).collect();
        let total_dim_sq = dims.iter().map(|d| d * d).sum();

        let fact = racah::Factorials::new(r, 4 * n + 2);
        let mut sixj = vec![0.0; n.pow(6)];
        let adm = |a: usize, b: usize, c: usize| admissible_twice(r, a as u32, b as u32, c as u32);
        for (idx, slot) in sixj.iter_mut().enumerate() {
            let e = unflatten(idx, n);
            let [i, j, m, k, l, nn] = e;
            if adm(i, j, m) && adm(k, l, m) && adm(i, l, nn) && adm(k, j, nn) {
                *slot = racah::symmetric_6j(&fact, e.map(|x| x as u32));
            }
        }

        Ok(QContext {
            r,
            labels,
            dims,
            sqrt_dims,
            total_dim_sq,
            convention,
            sixj,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn labels(&self) -> &[Spin] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn convention(&self) -> WeightConvention {
        self.convention
    }

    pub fn contains(&self, j: Spin) -> bool {
        j.index() < self.labels.len()
    }

    fn check(&self, j: Spin) -> Result<()> {
        if self.contains(j) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "label {j} is outside the label set at r={}",
                self.r
            )))
        }
    }

    /// `d_j = [2j+1]_q`.
    pub fn quantum_dimension(&self, j: Spin) -> Result<f64> {
        self.check(j)?;
        Ok(self.dims[j.index()])
    }

    /// Quantum dimension by label index, without range checks.
    #[inline]
    pub fn dim(&self, idx: usize) -> f64 {
        self.dims[idx]
    }

    /// `v_j = sqrt(d_j)` by label index.
    #[inline]
    pub fn sqrt_dim(&self, idx: usize) -> f64 {
        self.sqrt_dims[idx]
    }

    /// Edge weight under the context's sign convention.
    #[inline]
    pub fn edge_weight(&self, idx: usize) -> f64 {
        match self.convention {
            WeightConvention::Unsigned => self.dims[idx],
            WeightConvention::Signed if idx % 2 == 1 => -self.dims[idx],
            WeightConvention::Signed => self.dims[idx],
        }
    }

    /// Square root of the edge weight magnitude, carrying its sign.
    #[inline]
    pub fn half_edge_weight(&self, idx: usize) -> f64 {
        match self.convention {
            WeightConvention::Signed if idx % 2 == 1 => -self.sqrt_dims[idx],
            _ => self.sqrt_dims[idx],
        }
    }

    /// `D² = Σ_j d_j²`.
    pub fn total_dim_sq(&self) -> f64 {
        self.total_dim_sq
    }

    /// Plaquette coefficient `a_s = d_s / D²`.
    pub fn plaquette_coefficient(&self, s: usize) -> f64 {
        self.dims[s] / self.total_dim_sq
    }

    pub fn admissible(&self, t: LabelTriple) -> Result<bool> {
        self.check(t.0)?;
        self.check(t.1)?;
        self.check(t.2)?;
        Ok(self.admissible_idx(t.0.index(), t.1.index(), t.2.index()))
    }

    /// Branching rule on label indices (twice-spins).
    #[inline]
    pub fn admissible_idx(&self, a: usize, b: usize, c: usize) -> bool {
        admissible_twice(self.r, a as u32, b as u32, c as u32)
    }

    /// Tetrahedrally symmetric q-6j symbol `{i j m; k l n}`.
    ///
    /// Faces of the tetrahedron are (i,j,m), (k,l,m), (i,l,n), (k,j,n). The
    /// value is exactly zero unless all four are admissible.
    pub fn q6j(&self, i: Spin, j: Spin, m: Spin, k: Spin, l: Spin, n: Spin) -> Result<f64> {
        for x in [i, j, m, k, l, n] {
            self.check(x)?;
        }
        Ok(self.sixj_idx([i, j, m, k, l, n].map(Spin::index)))
    }

    #[inline]
    pub fn sixj_idx(&self, e: [usize; 6]) -> f64 {
        let n = self.labels.len();
        let mut idx = 0;
        for x in e {
            idx = idx * n + x;
        }
        self.sixj[idx]
    }

    /// Unitary F-symbol `F^{ijm}_{kln} = v_m v_n {i j m; k l n}`.
    pub fn f_symbol(&self, i: Spin, j: Spin, m: Spin, k: Spin, l: Spin, n: Spin) -> Result<f64> {
        for x in [i, j, m, k, l, n] {
            self.check(x)?;
        }
        Ok(self.f_idx([i, j, m, k, l, n].map(Spin::index)))
    }

    #[inline]
    pub fn f_idx(&self, e: [usize; 6]) -> f64 {
        self.sqrt_dims[e[2]] * self.sqrt_dims[e[5]] * self.sixj_idx(e)
    }

    /// The `d_n {i j m; k l n}` normalization. It is a non-unitary gauge of
    /// [`QContext::f_symbol`] and does not satisfy the first-line identity.
    pub fn f_symbol_dn_gauge(&self, e: [usize; 6]) -> f64 {
        self.dims[e[5]] * self.sixj_idx(e)
    }
}

fn admissible_twice(r: u32, a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && c <= a + b && a <= b + c && b <= a + c && a + b + c <= 2 * (r - 2)
}

fn unflatten(mut idx: usize, n: usize) -> [usize; 6] {
    let mut out = [0; 6];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}
