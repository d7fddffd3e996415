//! Truncated power series and polynomials over `Complex<T>`.
//!
//! A [`TaylorSeries`] stores `a_0..a_N` plus a [`Tail`]: an upper bound on
//! `Σ_k |a_k^true − a_k^stored|` (coefficients past `N` count as stored
//! zeros). Because the bound is in `ℓ¹`, it also bounds the evaluation error
//! anywhere in the closed disk.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{cr, Real};
use crate::weights::WeightSequence;

/// `ℓ¹` bound on the representation error of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail<T> {
    /// The stored coefficients are the whole function.
    Exact,
    Bound(T),
    /// No bound is known; the caller is responsible for the tail.
    Unbounded,
}

impl<T: Real> Tail<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            Tail::Exact => Some(T::zero()),
            Tail::Bound(b) => Some(b),
            Tail::Unbounded => None,
        }
    }

    fn from_value(v: Option<T>) -> Self {
        match v {
            Some(b) if b == T::zero() => Tail::Exact,
            Some(b) => Tail::Bound(b),
            None => Tail::Unbounded,
        }
    }

    fn plus(self, other: Self) -> Self {
        Self::from_value(self.value().zip(other.value()).map(|(a, b)| a + b))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    coeffs: Vec<Complex<T>>,
    tail: Tail<T>,
}

fn l1<T: Real>(cs: &[Complex<T>]) -> T {
    cs.iter().fold(T::zero(), |acc, a| acc + a.norm())
}

impl<T: Real> TaylorSeries<T> {
    /// Series with an explicit tail bound. Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Complex<T>>, tail: Tail<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a_0");
        Self { coeffs, tail }
    }

    /// Coefficients of an unknown function: tail flagged unbounded.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>) -> Self {
        Self::new(coeffs, Tail::Unbounded)
    }

    /// A polynomial, stored exactly.
    pub fn polynomial(coeffs: Vec<Complex<T>>) -> Self {
        Self::new(coeffs, Tail::Exact)
    }

    pub fn zero(degree: usize) -> Self {
        Self::polynomial(vec![Complex::new(T::zero(), T::zero()); degree + 1])
    }

    pub fn constant(c: Complex<T>, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(cr(T::one()), degree)
    }

    /// `z^j` at truncation `degree` (zero when `j > degree`, with the
    /// dropped unit recorded in the tail).
    pub fn monomial(j: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        match s.coeffs.get_mut(j) {
            Some(c) => *c = cr(T::one()),
            None => s.tail = Tail::Bound(T::one()),
        }
        s
    }

    /// `1/(1 − a z) = Σ a^k z^k`.
    pub fn geometric(a: Complex<T>, degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut p = cr(T::one());
        for _ in 0..=degree {
            coeffs.push(p);
            p = p * a;
        }
        let r = a.norm();
        let tail = if r < T::one() {
            Tail::from_value(Some(p.norm() / (T::one() - r)))
        } else {
            Tail::Unbounded
        };
        Self::new(coeffs, tail)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn tail(&self) -> Tail<T> {
        self.tail
    }

    pub fn with_tail(mut self, tail: Tail<T>) -> Self {
        self.tail = tail;
        self
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(|| cr(T::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.re == T::zero() && a.im == T::zero())
    }

    /// Re-truncate (or zero-pad) to `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let dropped = if degree < self.degree() { l1(&coeffs[degree + 1..]) } else { T::zero() };
        coeffs.resize(degree + 1, cr(T::zero()));
        Self { coeffs, tail: self.tail.plus(Tail::from_value(Some(dropped))) }
    }

    /// `⟨f, g⟩_ω = Σ a_k conj(b_k) ω_k` over the common degree; linear in
    /// `self`.
    pub fn inner_product(&self, other: &Self, w: &WeightSequence<T>) -> Result<Complex<T>> {
        let n = self.degree().min(other.degree());
        let ws = w.weights_through(n)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .zip(&ws)
            .fold(cr(T::zero()), |acc, ((a, b), &wk)| acc + a * b.conj() * wk))
    }

    pub fn norm_sq(&self, w: &WeightSequence<T>) -> Result<T> {
        let ws = w.weights_through(self.degree())?;
        Ok(self.coeffs.iter().zip(&ws).fold(T::zero(), |acc, (a, &wk)| acc + a.norm_sqr() * wk))
    }

    pub fn norm(&self, w: &WeightSequence<T>) -> Result<T> {
        self.norm_sq(w).map(T::sqrt)
    }

    /// Cauchy product truncated to the shorter operand.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        let (a, b) = (&self.coeffs[..=n], &other.coeffs[..=n]);
        let mut coeffs = vec![cr(T::zero()); n + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.re == T::zero() && ai.im == T::zero() {
                continue;
            }
            for (j, bj) in b[..=n - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + ai * bj;
            }
        }
        let tail = match (self.tail, other.tail) {
            (Tail::Unbounded, _) | (_, Tail::Unbounded) => Tail::Unbounded,
            (ta, tb) => {
                let (ta, tb) = (ta.value().unwrap(), tb.value().unwrap());
                // products a_i b_j with i + j > n that the truncation discards
                let mut suffix = vec![T::zero(); other.degree() + 2];
                for j in (0..=other.degree()).rev() {
                    suffix[j] = suffix[j + 1] + other.coeffs[j].norm();
                }
                let overflow = self.coeffs.iter().enumerate().fold(T::zero(), |acc, (i, ai)| {
                    let from = (n + 1).saturating_sub(i);
                    acc + ai.norm() * suffix[from.min(other.degree() + 1)]
                });
                let (fa, fb) = (l1(&self.coeffs), l1(&other.coeffs));
                Tail::from_value(Some(overflow + fa * tb + ta * fb + ta * tb))
            }
        };
        Self { coeffs, tail }
    }

    fn combine(&self, other: &Self, sign: T) -> Self {
        let n = self.degree().max(other.degree());
        let coeffs = (0..=n).map(|k| self.coeff(k) + other.coeff(k) * sign).collect();
        Self { coeffs, tail: self.tail.plus(other.tail) }
    }

    /// Sum, kept at the larger degree.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -T::one())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let tail = Tail::from_value(self.tail.value().map(|t| t * c.norm()));
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect(), tail }
    }

    /// `z^j f` at the same truncation degree: `j` leading zeros, top `j`
    /// coefficients dropped.
    pub fn shift_by_z_power(&self, j: usize) -> Self {
        let n = self.degree();
        let keep = (n + 1).saturating_sub(j);
        let mut coeffs = vec![cr(T::zero()); n + 1];
        coeffs[n + 1 - keep..].copy_from_slice(&self.coeffs[..keep]);
        let dropped = l1(&self.coeffs[keep..]);
        Self { coeffs, tail: self.tail.plus(Tail::from_value(Some(dropped))) }
    }

    /// `exp(h)` via `k g_k = Σ_{m=1}^{k} m h_m g_{k−m}`, `g_0 = exp(h_0)`.
    pub fn exp(&self) -> Self {
        let n = self.degree();
        let h = &self.coeffs;
        let mh: Vec<Complex<T>> = h.iter().enumerate().map(|(m, hm)| hm * T::from_usize_lossy(m)).collect();
        let mut g = Vec::with_capacity(n + 1);
        g.push(h[0].exp());
        for k in 1..=n {
            let s = (1..=k).fold(cr(T::zero()), |acc, m| acc + mh[m] * g[k - m]);
            g.push(s / T::from_usize_lossy(k));
        }
        let tail = if h[1..].iter().all(|c| c.re == T::zero() && c.im == T::zero()) && self.tail == Tail::Exact {
            Tail::Exact
        } else {
            Tail::Unbounded
        };
        Self { coeffs: g, tail }
    }

    /// Horner evaluation of the stored partial sum; `|z| < 1` required.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        if !(z.norm() < T::one()) {
            return Err(Error::Domain { point: format!("{z}"), modulus: z.norm().to_f64().unwrap_or(f64::NAN) });
        }
        Ok(horner(&self.coeffs, z))
    }

    /// Coefficient table with columns `k,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,re,im\n");
        for (k, a) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{k},{:.16e},{:.16e}\n", a.re, a.im));
        }
        out
    }
}

pub(crate) fn horner<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs.iter().rev().fold(cr(T::zero()), |acc, a| acc * z + a)
}

/// Unimodular `u` aligning `a` to `b` (`u·a ≈ b`): the phase of `b_k / a_k`
/// at the first `k` where `b` is nonvanishing. Returns `1` if there is none.
pub fn unimodular_fit<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    let tiny = T::epsilon().sqrt();
    a.iter()
        .zip(b)
        .find(|(x, y)| y.norm() > tiny && x.norm() > tiny)
        .map(|(x, y)| {
            let r = y / x;
            r / r.norm()
        })
        .unwrap_or_else(|| cr(T::one()))
}

/// `max_k |u a_k − b_k|` over the common degree, with `u` from [`unimodular_fit`].
pub fn max_distance_mod_unimodular<T: Real>(a: &TaylorSeries<T>, b: &TaylorSeries<T>) -> T {
    let u = unimodular_fit(a.coeffs(), b.coeffs());
    a.coeffs().iter().zip(b.coeffs()).fold(T::zero(), |m, (x, y)| m.max((x * u - y).norm()))
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
struct SeriesJson<T> {
    coeffs: Vec<[T; 2]>,
    degree: usize,
}

impl<T: Real> Serialize for TaylorSeries<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { coeffs: self.coeffs.iter().map(|a| [a.re, a.im]).collect(), degree: self.degree() }
            .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for TaylorSeries<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::<T>::deserialize(d)?;
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(serde::de::Error::custom(format!(
                "degree {} does not match {} coefficients",
                raw.degree,
                raw.coeffs.len()
            )));
        }
        Ok(Self::from_coeffs(raw.coeffs.into_iter().map(|[re, im]| Complex::new(re, im)).collect()))
    }
}

/// Polynomial `c_0 + … + c_n z^n`, canonicalized so the last coefficient is
/// nonzero (the zero polynomial keeps a single `0`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Self { coeffs };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        while self.coeffs.len() > 1 {
            match self.coeffs.last() {
                Some(c) if c.re == T::zero() && c.im == T::zero() => {
                    self.coeffs.pop();
                }
                _ => break,
            }
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(cr(T::zero()));
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs.get(k).copied().unwrap_or_else(|| cr(T::zero()))
    }

    /// Polynomials can be evaluated anywhere.
    pub fn evaluate(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coeffs, z)
    }

    /// `p · f` without truncation: degree `deg p + deg f`, same tail scaled
    /// by `‖p‖₁`.
    pub fn times_series(&self, f: &TaylorSeries<T>) -> TaylorSeries<T> {
        let n = self.degree() + f.degree();
        let mut coeffs = vec![cr(T::zero()); n + 1];
        for (i, pi) in self.coeffs.iter().enumerate() {
            for (j, fj) in f.coeffs().iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + pi * fj;
            }
        }
        let tail = Tail::from_value(f.tail().value().map(|t| t * l1(&self.coeffs)));
        TaylorSeries::new(coeffs, tail)
    }

    pub fn to_series(&self, degree: usize) -> TaylorSeries<T> {
        TaylorSeries::polynomial(self.coeffs.clone()).truncate(degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    type S = TaylorSeries<f64>;

    fn poly(cs: &[f64]) -> S {
        S::polynomial(cs.iter().map(|&x| cr(x)).collect())
    }

    fn blaschke_half(n: usize) -> S {
        // (0.5 − z)/(1 − 0.5 z)
        poly(&[0.5, -1.0]).truncate(n).multiply(&S::geometric(cr(0.5), n))
    }

    #[test]
    fn inner_product_examples() {
        let h = WeightSequence::hardy();
        let b = WeightSequence::bergman();
        let d = WeightSequence::dirichlet();
        assert_eq!(S::one(3).inner_product(&S::one(3), &b).unwrap(), cr(1.0));
        let z = S::monomial(1, 2);
        assert_eq!(z.inner_product(&z, &d).unwrap(), cr(2.0));
        let ip = poly(&[1.0, 1.0]).inner_product(&poly(&[1.0, -1.0]), &b).unwrap();
        assert!((ip - cr(0.5)).norm() < 1e-15);
        // linear in the first slot
        let i = c(0.0, 1.0);
        let ip = poly(&[1.0]).scale(i).inner_product(&poly(&[1.0]), &h).unwrap();
        assert_eq!(ip, i);
        let ip = poly(&[1.0]).inner_product(&poly(&[1.0]).scale(i), &h).unwrap();
        assert_eq!(ip, -i);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(S::one(0).norm(&WeightSequence::hardy()).unwrap(), 1.0);
        assert_eq!(S::monomial(3, 5).norm(&WeightSequence::bergman()).unwrap(), 0.5);
        let b = blaschke_half(200);
        assert!((b.norm(&WeightSequence::hardy()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn arithmetic_examples() {
        let s = poly(&[1.0, 1.0]).truncate(3).shift_by_z_power(1);
        assert_eq!(s.coeffs(), poly(&[0.0, 1.0, 1.0, 0.0]).coeffs());
        let t = poly(&[1.0, -1.0]).truncate(3).multiply(&poly(&[1.0, 1.0, 1.0, 1.0]));
        assert_eq!(t.coeffs(), poly(&[1.0, 0.0, 0.0, 0.0]).coeffs());
        let b = blaschke_half(5);
        assert_eq!(&b.coeffs()[..3], &[cr(0.5), cr(-0.75), cr(-0.375)]);
        let sum = poly(&[1.0]).add(&poly(&[0.0, 0.0, 2.0]));
        assert_eq!(sum.degree(), 2);
        assert_eq!(sum.sub(&poly(&[1.0])).coeffs(), poly(&[0.0, 0.0, 2.0]).coeffs());
    }

    #[test]
    fn shift_tracks_dropped_mass() {
        let s = poly(&[1.0, 2.0, 3.0]).shift_by_z_power(2);
        assert_eq!(s.coeffs(), poly(&[0.0, 0.0, 1.0]).coeffs());
        assert_eq!(s.tail(), Tail::Bound(5.0));
        assert_eq!(poly(&[1.0]).shift_by_z_power(4).coeffs(), &[cr(0.0)]);
    }

    #[test]
    fn exp_examples() {
        let e = S::zero(6).exp();
        assert_eq!(e.coeffs(), S::one(6).coeffs());
        let e = S::monomial(1, 4).exp();
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (a, w) in e.coeffs().iter().zip(want) {
            assert!((a - cr(w)).norm() < 1e-16);
        }
        // exp(h0) factors out
        let e = poly(&[0.3, 1.0]).truncate(3).exp();
        assert!((e.coeff(2) - cr(0.3f64.exp() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_inner_partial_norms_increase_toward_one() {
        let sigma = 0.5;
        let mut prev = 0.0;
        for n in [50, 200, 500] {
            let mut h = vec![cr(-2.0 * sigma); n + 1];
            h[0] = cr(-sigma);
            let s = S::from_coeffs(h).exp();
            let p = s.norm_sq(&WeightSequence::hardy()).unwrap();
            assert!(p <= 1.0 && p > prev);
            prev = p;
        }
        assert!(prev > 0.95);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(poly(&[1.0, 1.0]).evaluate(cr(0.5)).unwrap(), cr(1.5));
        let g = S::geometric(cr(1.0), 100);
        assert!((g.evaluate(cr(0.5)).unwrap() - cr(2.0)).norm() < 1e-15);
        assert!(blaschke_half(200).evaluate(cr(0.5)).unwrap().norm() < 1e-12);
        assert!(matches!(poly(&[1.0]).evaluate(cr(1.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn tails_bound_the_evaluation_error() {
        let n = 30;
        let b = blaschke_half(n);
        let Tail::Bound(t) = b.tail() else { panic!("expected a bound, got {:?}", b.tail()) };
        assert!(t < 1e-8);
        for &x in &[0.3, -0.9, 0.99] {
            let z = cr(x);
            let exact = (cr(0.5) - z) / (cr(1.0) - z * 0.5);
            let err = (b.evaluate(z).unwrap() - exact).norm();
            assert!(err <= t, "x={x}: {err} > {t}");
        }
        assert_eq!(S::geometric(cr(1.0), 4).tail(), Tail::Unbounded);
        assert_eq!(poly(&[1.0, 2.0]).multiply(&poly(&[3.0, 0.0])).tail(), Tail::Exact);
        // truncating to the shorter operand drops 2z·3
        assert_eq!(poly(&[1.0, 2.0]).multiply(&poly(&[3.0])).tail(), Tail::Bound(6.0));
    }

    #[test]
    fn polynomial_canonicalizes() {
        let p = Polynomial::new(vec![cr(1.0), cr(0.0), cr(0.0)]);
        assert_eq!(p.degree(), 0);
        assert_eq!(Polynomial::<f64>::new(vec![]).coeffs(), &[cr(0.0)]);
        let q = Polynomial::new(vec![cr(1.0), cr(2.0)]);
        assert_eq!(q.evaluate(cr(2.0)), cr(5.0));
        let prod = q.times_series(&poly(&[1.0, 1.0]));
        assert_eq!(prod.coeffs(), &[cr(1.0), cr(3.0), cr(2.0)]);
    }

    #[test]
    fn json_shape() {
        let s = poly(&[1.0, -0.5]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"coeffs":[[1.0,0.0],[-0.5,0.0]],"degree":1}"#);
        let back: S = serde_json::from_str(&j).unwrap();
        assert_eq!(back.coeffs(), s.coeffs());
        assert!(serde_json::from_str::<S>(r#"{"coeffs":[[1.0,0.0]],"degree":3}"#).is_err());
    }
}
