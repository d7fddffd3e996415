//! Reproducing kernels `k_w(z) = Σ conj(w)^k z^k / ω_k` and Gram matrices
//! over finite point sets.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;
use crate::scalar::{cr, Real};
use crate::series::{Tail, TaylorSeries};
use crate::weights::{WeightFamily, WeightSequence};

/// Points closer than this are treated as coincident.
pub const MIN_SEPARATION: f64 = 1e-9;
/// Target tail bound for automatically chosen truncations.
pub const DEFAULT_TAIL_TARGET: f64 = 1e-12;
pub const MAX_TRUNCATION: usize = 100_000;

/// Distinct points of the open unit disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointsJson<T>", into = "PointsJson<T>")]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct PointSet<T> {
    points: Vec<Complex<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
struct PointsJson<T> {
    points: Vec<[T; 2]>,
}

impl<T: Real> TryFrom<PointsJson<T>> for PointSet<T> {
    type Error = Error;

    fn try_from(raw: PointsJson<T>) -> Result<Self> {
        Self::new(raw.points.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}

impl<T: Real> From<PointSet<T>> for PointsJson<T> {
    fn from(p: PointSet<T>) -> Self {
        Self { points: p.points.iter().map(|z| [z.re, z.im]).collect() }
    }
}

pub(crate) fn check_in_disk<T: Real>(z: Complex<T>) -> Result<()> {
    let r = z.norm();
    if r < T::one() {
        Ok(())
    } else {
        Err(Error::Domain { point: format!("{z}"), modulus: r.to_f64().unwrap_or(f64::NAN) })
    }
}

impl<T: Real> PointSet<T> {
    pub fn new(points: Vec<Complex<T>>) -> Result<Self> {
        for &z in &points {
            check_in_disk(z)?;
        }
        let sep = T::lit(MIN_SEPARATION);
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if (a - b).norm() < sep {
                    return Err(Error::InvalidInput(format!("points {a} and {b} coincide")));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_modulus(&self) -> T {
        self.points.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Error unless every point is nonzero.
    pub fn require_nonzero(&self) -> Result<()> {
        match self.points.iter().position(|z| z.norm() == T::zero()) {
            Some(i) => Err(Error::InvalidInput(format!("point {i} is the origin"))),
            None => Ok(()),
        }
    }
}

/// Kernels with an elementary closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormKernel {
    /// Szegő kernel `1/(1 − conj(w) z)`.
    Hardy,
    /// `1/(1 − conj(w) z)²`.
    Bergman,
}

impl ClosedFormKernel {
    pub fn for_weights<T: Real>(w: &WeightSequence<T>) -> Option<Self> {
        match w.family() {
            WeightFamily::Hardy => Some(Self::Hardy),
            WeightFamily::Bergman => Some(Self::Bergman),
            _ => None,
        }
    }
}

/// Smallest `N` whose bound on `Σ_{k>N} r^k/ω_k` is below `target`, capped
/// at [`MAX_TRUNCATION`] (and at the horizon of custom weights).
pub fn truncation_for<T: Real>(r: T, w: &WeightSequence<T>, target: T) -> usize {
    if let Some(h) = w.horizon() {
        return (h - 1).min(MAX_TRUNCATION);
    }
    let ok = |n: usize| w.tail_sum_bound(r, n).is_some_and(|b| b < target);
    if ok(0) {
        return 0;
    }
    // bracket, then bisect; the bound decreases once the ratio test applies
    let mut hi = 1;
    while hi < MAX_TRUNCATION && !ok(hi) {
        hi *= 2;
    }
    if hi >= MAX_TRUNCATION {
        return MAX_TRUNCATION;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn gram_tail_target<T: Real>() -> T {
    T::epsilon() / T::lit(16.0)
}

/// Default series truncation for a kernel expansion at points of modulus
/// at most `max_modulus`.
pub fn default_truncation<T: Real>(max_modulus: T, w: &WeightSequence<T>) -> usize {
    truncation_for(max_modulus, w, T::lit(DEFAULT_TAIL_TARGET))
}

/// `k_{z0}` truncated at degree `n`, with the tail bound attached.
pub fn kernel_series<T: Real>(z0: Complex<T>, w: &WeightSequence<T>, n: usize) -> Result<TaylorSeries<T>> {
    check_in_disk(z0)?;
    let ws = w.weights_through(n)?;
    let zc = z0.conj();
    let mut p = cr(T::one());
    let mut coeffs = Vec::with_capacity(n + 1);
    for wk in ws {
        coeffs.push(p / wk);
        p = p * zc;
    }
    let tail = match w.tail_sum_bound(z0.norm(), n) {
        Some(b) if b == T::zero() => Tail::Exact,
        Some(b) => Tail::Bound(b),
        None => Tail::Unbounded,
    };
    Ok(TaylorSeries::new(coeffs, tail))
}

pub fn kernel_closed_form<T: Real>(z0: Complex<T>, family: ClosedFormKernel, z: Complex<T>) -> Result<Complex<T>> {
    check_in_disk(z0)?;
    check_in_disk(z)?;
    let szego = cr(T::one()) / (cr(T::one()) - z0.conj() * z);
    Ok(match family {
        ClosedFormKernel::Hardy => szego,
        ClosedFormKernel::Bergman => szego * szego,
    })
}

/// How the Gram entries are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GramSource {
    /// Closed form for Hardy and Bergman, otherwise series summed until the
    /// tail is below a sixteenth of machine epsilon.
    #[default]
    Auto,
    /// Series summation at the given degree.
    Series(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GramTruncation<T> {
    ClosedForm,
    /// Entry-wise tail bound; `None` when unavailable.
    Series { degree: usize, tail_bound: Option<T> },
}

/// `K_{i,j} = ⟨k_{z_j}, k_{z_i}⟩ = k_{z_j}(z_i)`.
#[derive(Debug, Clone)]
pub struct GramMatrix<T> {
    matrix: HermitianMatrix<T>,
    truncation: GramTruncation<T>,
    family: String,
}

impl<T: Real> GramMatrix<T> {
    pub fn matrix(&self) -> &HermitianMatrix<T> {
        &self.matrix
    }

    pub fn truncation(&self) -> GramTruncation<T> {
        self.truncation
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.matrix.matrix()[(i, j)]
    }

    /// Table with columns `i,j,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,re,im\n");
        for (i, row) in self.matrix.matrix().rows().enumerate() {
            for (j, a) in row.iter().enumerate() {
                out.push_str(&format!("{i},{j},{:.16e},{:.16e}\n", a.re, a.im));
            }
        }
        out
    }
}

pub fn gram_matrix<T: Real>(z: &PointSet<T>, w: &WeightSequence<T>, source: GramSource) -> Result<GramMatrix<T>> {
    let pts = z.points();
    let n = pts.len();
    let closed = match source {
        GramSource::Auto => ClosedFormKernel::for_weights(w),
        GramSource::Series(_) => None,
    };
    let (matrix, truncation) = if let Some(kind) = closed {
        let mut entries = Vec::with_capacity(n * n);
        for &zi in pts {
            for &zj in pts {
                entries.push(kernel_closed_form(zj, kind, zi)?);
            }
        }
        let m = HermitianMatrix::from_fn(n, |i, j| entries[i * n + j]);
        (m, GramTruncation::ClosedForm)
    } else {
        let r = z.max_modulus();
        let degree = match source {
            GramSource::Series(d) => d,
            GramSource::Auto => truncation_for(r * r, w, gram_tail_target()),
        };
        let ws = w.weights_through(degree)?;
        let m = HermitianMatrix::from_fn(n, |i, j| {
            let q = pts[j].conj() * pts[i];
            let mut p = cr(T::one());
            let mut s = cr(T::zero());
            for &wk in &ws {
                s = s + p / wk;
                p = p * q;
            }
            s
        });
        let tail_bound = w.tail_sum_bound(r * r, degree);
        (m, GramTruncation::Series { degree, tail_bound })
    };
    Ok(GramMatrix { matrix, truncation, family: w.label() })
}

/// `|⟨g, k_{z0}⟩ − g(z0)|`, the kernel truncated at the degree of `g`.
pub fn reproducing_check<T: Real>(g: &TaylorSeries<T>, z0: Complex<T>, w: &WeightSequence<T>) -> Result<T> {
    let k = kernel_series(z0, w, g.degree())?;
    Ok((g.inner_product(&k, w)? - g.evaluate(z0)?).norm())
}
