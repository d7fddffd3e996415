//! Closed-form reference functions and distances for Hardy and Bergman
//! spaces. Nothing here depends on the Shapiro–Shields construction, so the
//! two can be checked against each other.

use num_complex::Complex;

use crate::error::Result;
use crate::kernels::check_in_disk;
use crate::scalar::{cr, Real};
use crate::series::TaylorSeries;

fn linear<T: Real>(a: Complex<T>, n: usize) -> TaylorSeries<T> {
    TaylorSeries::polynomial(vec![a, cr(-T::one())]).truncate(n)
}

/// `(conj(a)/|a|)(a − z)/(1 − conj(a) z)`; for `a = 0` the monomial `z`.
pub fn blaschke_factor<T: Real>(a: Complex<T>, n: usize) -> Result<TaylorSeries<T>> {
    check_in_disk(a)?;
    if a.norm() == T::zero() {
        return Ok(TaylorSeries::monomial(1, n));
    }
    Ok(linear(a, n).multiply(&TaylorSeries::geometric(a.conj(), n)).scale(a.conj() / a.norm()))
}

/// Finite Blaschke product, each factor normalized as in [`blaschke_factor`].
pub fn blaschke_product<T: Real>(zeros: &[Complex<T>], n: usize) -> Result<TaylorSeries<T>> {
    zeros
        .iter()
        .try_fold(TaylorSeries::one(n), |acc, &a| Ok(acc.multiply(&blaschke_factor(a, n)?)))
}

/// `(1 − z) Π (λ_k − z)/(1 − conj(λ_k) z)`, the un-normalized factors, so
/// that `f(0) = Π λ_k`.
pub fn product_function<T: Real>(lambdas: &[Complex<T>], n: usize) -> Result<TaylorSeries<T>> {
    lambdas.iter().try_fold(linear(cr(T::one()), n), |acc, &l| {
        check_in_disk(l)?;
        Ok(acc.multiply(&linear(l, n).multiply(&TaylorSeries::geometric(l.conj(), n))))
    })
}

/// Hardy-space optimal approximants of `(1 − z)(λ − z)/(1 − conj(λ) z)` for
/// `n ≤ 2`: `conj(λ)/2`, `(2/3)conj(λ)(1 + z/2)`, `(3/4)conj(λ)(1 + 2z/3 + z²/3)`.
pub fn product_approximant<T: Real>(lambda: Complex<T>, n: usize) -> Option<Vec<Complex<T>>> {
    let lc = lambda.conj();
    let f = |x: f64| lc * T::lit(x);
    match n {
        0 => Some(vec![f(0.5)]),
        1 => Some(vec![f(2.0 / 3.0), f(1.0 / 3.0)]),
        2 => Some(vec![f(0.75), f(0.5), f(0.25)]),
        _ => None,
    }
}

/// Single-zero Bergman extremal function
/// `(2 − |a|²)^{-1/2} b_a(z) (2 − conj(a) z − |a|²)/(1 − conj(a) z)`.
pub fn bergman_one_point<T: Real>(a: Complex<T>, n: usize) -> Result<TaylorSeries<T>> {
    check_in_disk(a)?;
    let two = T::lit(2.0);
    let m = a.norm_sqr();
    let tail = TaylorSeries::polynomial(vec![cr(two - m), -a.conj()])
        .truncate(n)
        .multiply(&TaylorSeries::geometric(a.conj(), n));
    Ok(blaschke_factor(a, n)?.multiply(&tail).scale(cr((two - m).sqrt().recip())))
}

/// Ratio `(|1 − z̄₁z₂|² − P)/(|1 − z̄₁z₂|² + P)` with `P = (1−|z₁|²)(1−|z₂|²)`.
fn two_point_ratio<T: Real>(z1: Complex<T>, z2: Complex<T>) -> (T, T) {
    let p = (T::one() - z1.norm_sqr()) * (T::one() - z2.norm_sqr());
    let d = (cr(T::one()) - z1.conj() * z2).norm_sqr();
    (p, (d - p) / (d + p))
}

/// Two-zero Bergman extremal function `C_Z B_Z (1 + u₁ + u₂ + u₁u₂ Q)` with
/// `u_i = (1 − |z_i|²)/(1 − z̄_i z)`.
pub fn bergman_two_point<T: Real>(z1: Complex<T>, z2: Complex<T>, n: usize) -> Result<TaylorSeries<T>> {
    let (p, q) = two_point_ratio(z1, z2);
    let cz = (T::lit(3.0) - z1.norm_sqr() - z2.norm_sqr() + p * q).sqrt().recip();
    let u = |z: Complex<T>| TaylorSeries::geometric(z.conj(), n).scale(cr(T::one() - z.norm_sqr()));
    let (u1, u2) = (u(z1), u(z2));
    let bracket = TaylorSeries::one(n).add(&u1).add(&u2).add(&u1.multiply(&u2).scale(cr(q)));
    Ok(blaschke_product(&[z1, z2], n)?.multiply(&bracket).scale(cr(cz)))
}

/// `dist²(1, [B]) = 1 − Π |z_i|²` in the Hardy space, `B` the Blaschke product
/// with zeros `z_i`. This is the squared distance, also for two or more zeros.
pub fn hardy_distance<T: Real>(zeros: &[Complex<T>]) -> T {
    T::one() - zeros.iter().fold(T::one(), |acc, z| acc * z.norm_sqr())
}

/// `(1 − |a|²)²`.
pub fn bergman_distance_1pt<T: Real>(a: Complex<T>) -> T {
    let s = T::one() - a.norm_sqr();
    s * s
}

/// `1 − |z₁z₂|² (3 − |z₁|² − |z₂|² + P Q)`.
pub fn bergman_distance_2pt<T: Real>(z1: Complex<T>, z2: Complex<T>) -> T {
    let (p, q) = two_point_ratio(z1, z2);
    T::one() - (z1 * z2).norm_sqr() * (T::lit(3.0) - z1.norm_sqr() - z2.norm_sqr() + p * q)
}

/// Taylor coefficients of `exp(−σ(1 + z)/(1 − z))` through degree `n`.
pub fn singular_inner_taylor<T: Real>(sigma: T, n: usize) -> TaylorSeries<T> {
    let mut h = vec![cr(-T::lit(2.0) * sigma); n + 1];
    h[0] = cr(-sigma);
    TaylorSeries::from_coeffs(h).exp()
}

/// `(1 + 2σ)^{-1/2} (1 + 2σ/(1 − z)) S_σ(z)`, the Bergman extremal function
/// of the subspace generated by `S_σ`.
pub fn bergman_singular_extremal<T: Real>(sigma: T, n: usize) -> TaylorSeries<T> {
    let two_sigma = T::lit(2.0) * sigma;
    let mut pre = vec![cr(two_sigma); n + 1];
    pre[0] = cr(T::one() + two_sigma);
    TaylorSeries::from_coeffs(pre)
        .multiply(&singular_inner_taylor(sigma, n))
        .scale(cr((T::one() + two_sigma).sqrt().recip()))
}

/// `1 − e^{−2σ}`.
pub fn hardy_singular_distance<T: Real>(sigma: T) -> T {
    T::one() - (-T::lit(2.0) * sigma).exp()
}

/// `1 − (1 + 2σ) e^{−2σ}`.
pub fn bergman_singular_distance<T: Real>(sigma: T) -> T {
    let two_sigma = T::lit(2.0) * sigma;
    T::one() - (T::one() + two_sigma) * (-two_sigma).exp()
}
