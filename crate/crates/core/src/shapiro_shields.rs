//! Shapiro–Shields inner functions on finite zero sets.
//!
//! For distinct nonzero points `Z = {z_1..z_n}` the function
//!
//! ```text
//! f_Z = |K| · 1 − Σ_t |B_t| · k_{z_t}
//! ```
//!
//! is the expansion of the `(n+1)×(n+1)` determinant whose first row is all
//! ones, whose first column below it holds the kernels `k_{z_i}(z)` and whose
//! lower-right block is the Gram matrix arranged so that substituting
//! `z = z_m` duplicates a column. With `K_{i,j} = k_{z_j}(z_i)` that block is
//! `Kᵀ`, so `B_t` is `K` with column `t` replaced by ones. The normalized
//! `g_Z = f_Z / sqrt(conj|K| f_Z(0))` vanishes on `Z` and is inner in `H²_ω`.
//!
//! The cofactors are taken from Cramer's rule, `|B_t| = |K| (K⁻¹v)_t` with
//! `v = (1, …, 1)`, using a refined solve: when `dist(1, [g_Z])` is close to
//! `1` the sum `f_Z(0)` cancels almost completely and separately computed
//! determinants lose too many digits.

use num_complex::Complex;
use serde::Serialize;

use crate::approximants::optimal_approximant;
use crate::error::{Error, Result};
use crate::kernels::{default_truncation, gram_matrix, kernel_series, GramMatrix, GramSource, PointSet};
use crate::linalg::{compensated_sum, conditioning_warning, determinant};
use crate::scalar::{cr, Real};
use crate::series::TaylorSeries;
use crate::weights::WeightSequence;

const REFINEMENT_STEPS: usize = 2;

#[derive(Debug, Clone)]
pub struct ShapiroShieldsResult<T> {
    pub points: PointSet<T>,
    /// Unnormalized determinant function.
    pub f_z: TaylorSeries<T>,
    /// Normalized inner function.
    pub g_z: TaylorSeries<T>,
    /// Expansion coefficients: `[|K|, −|B_1|, …, −|B_n|]`, multiplying
    /// `1, k_{z_1}, …, k_{z_n}`.
    pub cofactors: Vec<Complex<T>>,
    pub gram: GramMatrix<T>,
    pub gram_determinant: Complex<T>,
    pub gram_condition: T,
    /// `‖f_Z‖²` summed from the series.
    pub norm_sq_fz: T,
    /// `f_Z(0)`: the cofactor sum, since every kernel is `1` at the origin.
    pub fz_at_zero: Complex<T>,
    pub value_at_zero: Complex<T>,
    /// `|‖f_Z‖² − conj|K| f_Z(0)| / ‖f_Z‖²`.
    pub norm_identity_defect: T,
    /// `max_i |g_Z(z_i)|`.
    pub vanishing_defect: T,
    pub truncation: usize,
    pub warnings: Vec<String>,
}

fn validate<T: Real>(z: &PointSet<T>) -> Result<()> {
    if z.is_empty() {
        return Err(Error::InvalidInput("empty zero set".into()));
    }
    z.require_nonzero()
}

/// Builds `f_Z`, `g_Z` and diagnostics at series truncation `truncation`
/// (default: kernel tails below 1e-12 at the largest modulus in `Z`).
pub fn shapiro_shields<T: Real>(
    z: &PointSet<T>,
    w: &WeightSequence<T>,
    truncation: Option<usize>,
) -> Result<ShapiroShieldsResult<T>> {
    validate(z)?;
    let n_trunc = truncation.unwrap_or_else(|| default_truncation(z.max_modulus(), w));
    let gram = gram_matrix(z, w, GramSource::Auto)?;
    let k = gram.matrix().matrix();
    let mut warnings: Vec<String> = w.warning().map(str::to_owned).into_iter().collect();
    let gram_condition = match gram.matrix().condition_estimate() {
        Ok(c) => c,
        Err(e) => return Err(Error::Degenerate(format!("Gram matrix: {e}"))),
    };
    warnings.extend(conditioning_warning(gram_condition));

    let det = determinant(k);
    if !(det.re > T::zero()) || !det.re.is_finite() {
        return Err(Error::Degenerate(format!("Gram determinant {det} is not positive")));
    }
    // Cramer: |B_t| = |K| (K⁻¹v)_t
    let ones = vec![cr(T::one()); z.len()];
    let x = gram.matrix().refined_solve(&ones, REFINEMENT_STEPS)?;
    let mut cofactors = Vec::with_capacity(z.len() + 1);
    cofactors.push(det);
    cofactors.extend(x.iter().map(|&xt| -det * xt));

    let mut f_z = TaylorSeries::constant(det, n_trunc);
    for (&zt, &ct) in z.points().iter().zip(&cofactors[1..]) {
        f_z = f_z.add(&kernel_series(zt, w, n_trunc)?.scale(ct));
    }
    let fz_at_zero = det * compensated_sum(std::iter::once(cr(T::one())).chain(x.iter().map(|&xt| -xt)));
    let mut coeffs = f_z.coeffs().to_vec();
    coeffs[0] = fz_at_zero;
    let f_z = TaylorSeries::from_coeffs(coeffs).with_tail(f_z.tail());
    let norm_sq_fz = f_z.norm_sq(w)?;
    let identity_rhs = det.conj() * fz_at_zero;
    if !(identity_rhs.re > T::zero()) {
        return Err(Error::Degenerate(format!("conj|K| f_Z(0) = {identity_rhs} is not positive")));
    }
    let norm_identity_defect = (norm_sq_fz - identity_rhs.re).abs() / norm_sq_fz;
    let g_z = f_z.scale(cr(identity_rhs.re.sqrt().recip()));
    let value_at_zero = g_z.coeff(0);
    let vanishing_defect = z
        .points()
        .iter()
        .map(|&p| g_z.evaluate(p).map(|v| v.norm()))
        .try_fold(T::zero(), |m, v| v.map(|v| m.max(v)))?;

    Ok(ShapiroShieldsResult {
        points: z.clone(),
        f_z,
        g_z,
        cofactors,
        gram,
        gram_determinant: det,
        gram_condition,
        norm_sq_fz,
        fz_at_zero,
        value_at_zero,
        norm_identity_defect,
        vanishing_defect,
        truncation: n_trunc,
        warnings,
    })
}

/// `dist²(1, [g_Z]) = v K⁻¹ v*` with `v = (1, …, 1)`, by one Cholesky solve.
pub fn distance_via_gram<T: Real>(z: &PointSet<T>, w: &WeightSequence<T>) -> Result<T> {
    validate(z)?;
    distance_from_gram(&gram_matrix(z, w, GramSource::Auto)?)
}

pub fn distance_from_gram<T: Real>(gram: &GramMatrix<T>) -> Result<T> {
    let ones = vec![cr(T::one()); gram.order()];
    let x = gram.matrix().cholesky_solve(&ones)?;
    Ok(x.iter().fold(T::zero(), |acc, xi| acc + xi.re))
}

/// `1 − |g_Z(0)|²`.
pub fn distance_via_value<T: Real>(res: &ShapiroShieldsResult<T>) -> T {
    T::one() - res.value_at_zero.norm_sqr()
}

/// `‖p_n* g_Z − 1‖²`; independent of `n` because `g_Z` is inner. With
/// custom weights `g_Z` is cut back so that `z^n g_Z` stays within the
/// weight horizon.
pub fn distance_via_approximant<T: Real>(res: &ShapiroShieldsResult<T>, w: &WeightSequence<T>, n: usize) -> Result<T> {
    let g = match w.horizon() {
        Some(h) if res.g_z.degree() + n >= h => {
            let room = h.checked_sub(n + 1).ok_or(Error::OutOfRange { index: n, len: h })?;
            res.g_z.truncate(room)
        }
        _ => res.g_z.clone(),
    };
    let r = optimal_approximant(&g, n, w)?;
    Ok(r.residual_norm * r.residual_norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct DistanceReport<T> {
    pub gram: T,
    pub value: T,
    pub approximant: T,
    pub approximant_degree: usize,
    pub max_discrepancy: T,
}

/// All three routes for `dist²(1, [g_Z])`.
pub fn three_way_distance<T: Real>(res: &ShapiroShieldsResult<T>, w: &WeightSequence<T>, n: usize) -> Result<DistanceReport<T>> {
    let gram = distance_from_gram(&res.gram)?;
    let value = distance_via_value(res);
    let approximant = distance_via_approximant(res, w, n)?;
    let max_discrepancy = (gram - value).abs().max((gram - approximant).abs()).max((value - approximant).abs());
    Ok(DistanceReport { gram, value, approximant, approximant_degree: n, max_discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximants::is_inner;
    use crate::kernels::kernel_closed_form;
    use crate::kernels::ClosedFormKernel;
    use crate::linalg::ComplexMatrix;
    use crate::scalar::c;
    use crate::series::max_distance_mod_unimodular;

    fn pts(z: &[Complex<f64>]) -> PointSet<f64> {
        PointSet::new(z.to_vec()).unwrap()
    }

    /// `Π_i (conj(a_i)/|a_i|)(a_i − z)/(1 − conj(a_i) z)` by direct expansion.
    fn blaschke_product(zs: &[Complex<f64>], n: usize) -> TaylorSeries<f64> {
        zs.iter().fold(TaylorSeries::one(n), |acc, &a| {
            let lin = TaylorSeries::polynomial(vec![a, cr(-1.0)]).truncate(n);
            let factor = lin.multiply(&TaylorSeries::geometric(a.conj(), n)).scale(a.conj() / a.norm());
            acc.multiply(&factor)
        })
    }

    #[test]
    fn singleton_hardy_is_blaschke_factor() {
        let res = shapiro_shields(&pts(&[cr(0.5)]), &WeightSequence::hardy(), Some(60)).unwrap();
        let want = [0.5, -0.75, -0.375, -0.1875];
        for (g, w) in res.g_z.coeffs().iter().zip(want) {
            assert!((g - cr(w)).norm() < 1e-14, "{g} vs {w}");
        }
        assert!((distance_via_value(&res) - 0.75).abs() < 1e-14);
    }

    #[test]
    fn singleton_bergman_matches_extremal_function() {
        let res = shapiro_shields(&pts(&[cr(0.5)]), &WeightSequence::bergman(), Some(200)).unwrap();
        let g = |z: f64| (0.5 - z) / (1.0 - 0.5 * z) * (2.0 - 0.5 * z - 0.25) / (1.0 - 0.5 * z) / 1.75f64.sqrt();
        for x in [0.0, 0.3, -0.7] {
            assert!((res.g_z.evaluate(cr(x)).unwrap() - cr(g(x))).norm() < 1e-12);
        }
    }

    #[test]
    fn complex_pair_hardy_is_blaschke_product() {
        let zs = [c(0.3, 0.4), c(-0.5, 0.2)];
        let res = shapiro_shields(&pts(&zs), &WeightSequence::hardy(), Some(300)).unwrap();
        let b = blaschke_product(&zs, 300);
        assert!(max_distance_mod_unimodular(&res.g_z, &b) < 1e-12);
        assert!(res.vanishing_defect < 1e-12);
    }

    /// The expansion with cofactor signs `(−1)^t` and `K` (not `Kᵀ`) with row
    /// `t` replaced by ones only vanishes on `Z` for a single point.
    #[test]
    fn literal_row_expansion_fails_beyond_one_point() {
        fn literal(zs: &[Complex<f64>], x: Complex<f64>) -> Complex<f64> {
            let k = ComplexMatrix::from_fn(zs.len(), |i, j| {
                kernel_closed_form(zs[j], ClosedFormKernel::Hardy, zs[i]).unwrap()
            });
            (0..zs.len()).fold(determinant(&k), |acc, t| {
                let sign = if (t + 1) % 2 == 0 { 1.0 } else { -1.0 };
                let bt = determinant(&k.with_row(t, cr(1.0)));
                acc + bt * sign * kernel_closed_form(zs[t], ClosedFormKernel::Hardy, x).unwrap()
            })
        }
        let one = [cr(0.5)];
        assert!(literal(&one, one[0]).norm() < 1e-14);
        let two = [cr(0.5), cr(-0.5)];
        assert!(literal(&two, two[0]).norm() > 1e-2);
        let res = shapiro_shields(&pts(&two), &WeightSequence::hardy(), Some(100)).unwrap();
        assert!(res.vanishing_defect < 1e-14);
        let b = blaschke_product(&two, 100);
        assert!(max_distance_mod_unimodular(&res.g_z, &b) < 1e-14);
    }

    #[test]
    fn cofactors_match_column_replaced_determinants() {
        let zs = [c(0.3, 0.4), c(-0.5, 0.2), c(0.1, -0.6)];
        for w in [WeightSequence::hardy(), WeightSequence::dirichlet()] {
            let res = shapiro_shields(&pts(&zs), &w, None).unwrap();
            let k = res.gram.matrix().matrix();
            for t in 0..zs.len() {
                let bt = determinant(&k.with_column(t, cr(1.0)));
                assert!((res.cofactors[t + 1] + bt).norm() < 1e-12 * bt.norm(), "{t}");
            }
            let sum: Complex<f64> = res.cofactors.iter().sum();
            assert!((sum - res.fz_at_zero).norm() < 1e-12 * res.gram_determinant.norm());
        }
    }

    #[test]
    fn cofactor_values_two_point_hardy() {
        // K = [[4/3, 4/5], [4/5, 4/3]]: |K| = 256/225, |B_t| = 8/15
        let res = shapiro_shields(&pts(&[cr(0.5), cr(-0.5)]), &WeightSequence::hardy(), Some(20)).unwrap();
        assert!((res.cofactors[0] - cr(256.0 / 225.0)).norm() < 1e-14);
        assert!((res.cofactors[1] - cr(-8.0 / 15.0)).norm() < 1e-14);
        assert!((res.cofactors[2] - cr(-8.0 / 15.0)).norm() < 1e-14);
    }

    #[test]
    fn distance_examples() {
        let h = WeightSequence::hardy();
        let b = WeightSequence::bergman();
        assert!((distance_via_gram(&pts(&[cr(0.5)]), &h).unwrap() - 0.75).abs() < 1e-15);
        assert!((distance_via_gram(&pts(&[cr(0.5)]), &b).unwrap() - 0.5625).abs() < 1e-15);
        assert!((distance_via_gram(&pts(&[cr(0.5), cr(-0.5)]), &h).unwrap() - 0.9375).abs() < 1e-14);
        for r in [0.1, 0.45, 0.8] {
            let res = shapiro_shields(&pts(&[cr(r)]), &h, None).unwrap();
            assert!((distance_via_value(&res) - (1.0 - r * r)).abs() < 1e-12);
        }
    }

    #[test]
    fn approximant_route_is_flat_in_degree() {
        let h = WeightSequence::hardy();
        let res = shapiro_shields(&pts(&[cr(0.5)]), &h, None).unwrap();
        for n in [0, 7] {
            assert!((distance_via_approximant(&res, &h, n).unwrap() - 0.75).abs() < 1e-8);
        }
        let b = WeightSequence::bergman();
        let res = shapiro_shields(&pts(&[cr(0.5)]), &b, None).unwrap();
        assert!((distance_via_approximant(&res, &b, 5).unwrap() - 0.5625).abs() < 1e-8);
    }

    #[test]
    fn dirichlet_pair_cross_validation() {
        let d = WeightSequence::dirichlet();
        let z = pts(&[c(0.4, 0.3), c(-0.6, 0.1)]);
        let res = shapiro_shields(&z, &d, None).unwrap();
        let report = three_way_distance(&res, &d, 6).unwrap();
        assert!(report.max_discrepancy < 1e-6, "{report:?}");
        assert!(res.norm_identity_defect < 1e-9);
        assert!(is_inner(&res.g_z, &d, 20, 1e-7).unwrap().verdict);
    }

    #[test]
    fn invalid_point_sets() {
        let h = WeightSequence::<f64>::hardy();
        assert!(matches!(shapiro_shields(&pts(&[]), &h, None), Err(Error::InvalidInput(_))));
        assert!(matches!(shapiro_shields(&pts(&[cr(0.0)]), &h, None), Err(Error::InvalidInput(_))));
        assert!(distance_via_gram(&pts(&[]), &h).is_err());
    }

    #[test]
    fn single_precision_build() {
        let z = PointSet::new(vec![Complex::<f32>::new(0.5, 0.0)]).unwrap();
        let res = shapiro_shields(&z, &WeightSequence::<f32>::hardy(), None).unwrap();
        assert!((distance_via_value(&res) - 0.75).abs() < 1e-5);
    }
}
