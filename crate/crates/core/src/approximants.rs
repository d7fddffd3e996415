//! Optimal polynomial approximants `p_n*` to `1/f`: the degree-`n`
//! polynomial minimizing `‖p f − 1‖_ω`. Also inner-ness checks, residual
//! sequences and the weak-factorization probe.
//!
//! The coefficients `c` solve the normal equations `A c = b` with
//! `A_{j,k} = ⟨z^k f, z^j f⟩` and `b_j = δ_{j0} conj(f(0))`. A truncated
//! input `f` is treated as the polynomial formed by its stored
//! coefficients: products `z^k f` are never re-truncated, so the system is
//! the exact normal-equation system of that polynomial.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{conditioning_warning, lu_solve, HermitianMatrix};
use crate::scalar::{cr, Real};
use crate::series::{Polynomial, Tail, TaylorSeries};
use crate::weights::WeightSequence;

pub const DEFAULT_INNER_TOL: f64 = 1e-8;
pub const DEFAULT_JMAX: usize = 20;
/// Input tails larger than this produce a warning.
pub const TAIL_WARNING: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    #[default]
    Cholesky,
    /// Column-pivoted LU on the same system, for experiments near degeneracy.
    Lu,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ApproximantOptions {
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct ApproximantResult<T> {
    /// Requested degree `n`.
    pub degree: usize,
    /// `c_0..c_n`, always `n + 1` entries.
    #[serde(serialize_with = "ser_complex_vec")]
    pub coeffs: Vec<Complex<T>>,
    /// `‖p f − 1‖_ω`, computed directly from the product.
    #[serde(rename = "residual")]
    pub residual_norm: T,
    #[serde(rename = "condition")]
    pub gram_condition: T,
    /// Truncation degree of the input series.
    pub truncation: usize,
    /// `f(0) = 0`, so the right-hand side vanishes and `p_n* = 0`.
    pub zero_rhs: bool,
    pub warnings: Vec<String>,
}

impl<T: Real> ApproximantResult<T> {
    pub fn polynomial(&self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.clone())
    }
}

pub(crate) fn ser_complex_vec<T: Real, S: serde::Serializer>(v: &[Complex<T>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

fn check_nonzero<T: Real>(f: &TaylorSeries<T>) -> Result<()> {
    if f.is_zero() {
        Err(Error::InvalidInput("f is identically zero".into()))
    } else {
        Ok(())
    }
}

/// `A_{j,k} = ⟨z^k f, z^j f⟩` for `0 ≤ j,k ≤ n`; `ws` must hold `ω_0..ω_{N+n}`.
fn normal_matrix<T: Real>(a: &[Complex<T>], n: usize, ws: &[T]) -> HermitianMatrix<T> {
    let top = a.len() - 1;
    let mut upper = vec![cr(T::zero()); (n + 1) * (n + 1)];
    for j in 0..=n {
        for k in j..=n {
            let d = k - j;
            let mut s = cr(T::zero());
            if d <= top {
                for i in 0..=top - d {
                    s = s + a[i] * a[i + d].conj() * ws[i + k];
                }
            }
            upper[j * (n + 1) + k] = s;
        }
    }
    HermitianMatrix::from_fn(n + 1, |j, k| if j <= k { upper[j * (n + 1) + k] } else { upper[k * (n + 1) + j].conj() })
}

fn input_warnings<T: Real>(f: &TaylorSeries<T>, w: &WeightSequence<T>) -> Vec<String> {
    let mut warnings = Vec::new();
    match f.tail() {
        Tail::Unbounded => warnings.push(format!(
            "input tail unknown past degree {}: result is exact for the truncated input only",
            f.degree()
        )),
        Tail::Bound(t) if t > T::lit(TAIL_WARNING) => {
            warnings.push(format!("input tail bound {t:e} exceeds {TAIL_WARNING:e}"))
        }
        _ => {}
    }
    warnings.extend(w.warning().map(str::to_owned));
    warnings
}

/// `‖p f − 1‖_ω` with `p f` formed without truncation.
fn residual_norm<T: Real>(coeffs: &[Complex<T>], f: &TaylorSeries<T>, ws: &[T]) -> T {
    let prod = Polynomial::new(coeffs.to_vec()).times_series(f);
    prod.coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| if m == 0 { c - cr(T::one()) } else { *c })
        .zip(ws)
        .fold(T::zero(), |acc, (c, &wk)| acc + c.norm_sqr() * wk)
        .sqrt()
}

pub fn optimal_approximant<T: Real>(f: &TaylorSeries<T>, n: usize, w: &WeightSequence<T>) -> Result<ApproximantResult<T>> {
    optimal_approximant_with(f, n, w, ApproximantOptions::default())
}

pub fn optimal_approximant_with<T: Real>(
    f: &TaylorSeries<T>,
    n: usize,
    w: &WeightSequence<T>,
    opts: ApproximantOptions,
) -> Result<ApproximantResult<T>> {
    check_nonzero(f)?;
    let ws = w.weights_through(f.degree() + n)?;
    let a = normal_matrix(f.coeffs(), n, &ws);
    let mut warnings = input_warnings(f, w);
    let f0 = f.coeff(0);
    let zero_rhs = f0.norm() == T::zero();

    let cond = match a.condition_estimate() {
        Ok(c) => c,
        Err(e) if opts.solver == SolverKind::Lu || zero_rhs => {
            warnings.push(format!("cholesky failed: {e}"));
            T::infinity()
        }
        Err(e) => return Err(e),
    };
    warnings.extend(conditioning_warning(cond));

    let coeffs = if zero_rhs {
        vec![cr(T::zero()); n + 1]
    } else {
        let mut b = vec![cr(T::zero()); n + 1];
        b[0] = f0.conj() * ws[0];
        match opts.solver {
            SolverKind::Cholesky => a.cholesky_solve(&b)?,
            SolverKind::Lu => lu_solve(a.matrix(), &b)?,
        }
    };
    let residual_norm = residual_norm(&coeffs, f, &ws);
    Ok(ApproximantResult { degree: n, coeffs, residual_norm, gram_condition: cond, truncation: f.degree(), zero_rhs, warnings })
}

/// `⟨p f − 1, z^j f⟩_ω` for `j = 0..=deg p`, all products untruncated. The
/// normal equations make these vanish at the optimum.
pub fn residual_orthogonality<T: Real>(
    f: &TaylorSeries<T>,
    coeffs: &[Complex<T>],
    w: &WeightSequence<T>,
) -> Result<Vec<Complex<T>>> {
    let n = coeffs.len().saturating_sub(1);
    let ws = w.weights_through(f.degree() + n)?;
    let mut r = Polynomial::new(coeffs.to_vec()).times_series(f).truncate(f.degree() + n).into_coeffs();
    r[0] = r[0] - cr(T::one());
    let a = f.coeffs();
    Ok((0..=n)
        .map(|j| {
            a.iter()
                .enumerate()
                .fold(cr(T::zero()), |acc, (i, ai)| acc + r[i + j] * ai.conj() * ws[i + j])
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct InnerCheck<T> {
    pub verdict: bool,
    pub max_defect: T,
    /// `|‖f‖ − 1|`.
    pub norm_defect: T,
    /// `|⟨z^j f, f⟩|` for `j = 1..=jmax`.
    pub orthogonality_defects: Vec<T>,
}

/// Checks `‖f‖ = 1` and `⟨z^j f, f⟩ = 0` for `1 ≤ j ≤ jmax`.
pub fn is_inner<T: Real>(f: &TaylorSeries<T>, w: &WeightSequence<T>, jmax: usize, tol: T) -> Result<InnerCheck<T>> {
    if jmax == 0 {
        return Err(Error::InvalidInput("jmax must be at least 1".into()));
    }
    let top = f.degree();
    let ws = w.weights_through(top)?;
    let a = f.coeffs();
    let norm_defect = (f.norm_sq(w)?.sqrt() - T::one()).abs();
    let orthogonality_defects: Vec<T> = (1..=jmax)
        .map(|j| {
            (j..=top)
                .fold(cr(T::zero()), |acc, m| acc + a[m - j] * a[m].conj() * ws[m])
                .norm()
        })
        .collect();
    let max_defect = orthogonality_defects.iter().fold(norm_defect, |m, &d| m.max(d));
    Ok(InnerCheck { verdict: max_defect <= tol, max_defect, norm_defect, orthogonality_defects })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionStep<T> {
    pub degree: usize,
    pub coeffs: Vec<Complex<T>>,
    pub residual_norm: T,
    /// `p_n* f`, untruncated.
    pub product: TaylorSeries<T>,
}

/// `p_n*` and residuals for `n = 0..=n_max`, sharing one factorization.
pub fn projection_sequence<T: Real>(f: &TaylorSeries<T>, w: &WeightSequence<T>, n_max: usize) -> Result<Vec<ProjectionStep<T>>> {
    check_nonzero(f)?;
    let ws = w.weights_through(f.degree() + n_max)?;
    let a = normal_matrix(f.coeffs(), n_max, &ws);
    let f0 = f.coeff(0);
    let factor = if f0.norm() == T::zero() { None } else { Some(a.cholesky()?) };
    (0..=n_max)
        .map(|n| {
            let coeffs = match factor {
                None => vec![cr(T::zero()); n + 1],
                Some(l) => {
                    let mut b = vec![cr(T::zero()); n + 1];
                    b[0] = f0.conj() * ws[0];
                    l.solve_leading(n + 1, &b)?
                }
            };
            let residual_norm = residual_norm(&coeffs, f, &ws);
            let product = Polynomial::new(coeffs.clone()).times_series(f);
            Ok(ProjectionStep { degree: n, coeffs, residual_norm, product })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct FactorizationProbe<T> {
    /// `max |conj(f(0))/p_n*(z) − f(z)/G(z)|` over the retained grid points.
    pub sup_discrepancy: T,
    pub evaluated: usize,
    /// Grid points dropped because `p_n*` or `G` (numerically) vanishes there.
    #[serde(serialize_with = "ser_complex_vec")]
    pub excluded: Vec<Complex<T>>,
}

/// Compares `F_n = conj(f(0))/p_n*` with `f/G` on `grid`.
pub fn factorization_probe<T: Real>(
    f: &TaylorSeries<T>,
    g: &TaylorSeries<T>,
    w: &WeightSequence<T>,
    n: usize,
    grid: &[Complex<T>],
) -> Result<FactorizationProbe<T>> {
    let f0 = f.coeff(0);
    if f0.norm() == T::zero() {
        return Err(Error::InvalidInput("factorization probe needs f(0) != 0".into()));
    }
    let p = optimal_approximant(f, n, w)?.polynomial();
    let tiny = T::lit(1e-10);
    let mut sup = T::zero();
    let mut evaluated = 0;
    let mut excluded = Vec::new();
    for &z in grid {
        let (pz, gz, fz) = (p.evaluate(z), g.evaluate(z)?, f.evaluate(z)?);
        if pz.norm() < tiny || gz.norm() < tiny {
            excluded.push(z);
            continue;
        }
        sup = sup.max((f0.conj() / pz - fz / gz).norm());
        evaluated += 1;
    }
    Ok(FactorizationProbe { sup_discrepancy: sup, evaluated, excluded })
}

/// Origin plus `rings` circles of `per_ring` points, radii `radius·i/rings`,
/// angles offset by half a step.
pub fn polar_grid<T: Real>(radius: T, rings: usize, per_ring: usize) -> Vec<Complex<T>> {
    let mut grid = vec![cr(T::zero())];
    for i in 1..=rings {
        let r = radius * T::from_usize_lossy(i) / T::from_usize_lossy(rings);
        for k in 0..per_ring {
            let theta = T::TAU() * (T::from_usize_lossy(k) + T::lit(0.5)) / T::from_usize_lossy(per_ring);
            grid.push(Complex::from_polar(r, theta));
        }
    }
    grid
}
