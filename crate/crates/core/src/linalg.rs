//! Small dense complex linear algebra: Cholesky solves for Hermitian
//! positive-definite matrices, LU determinants and solves for general ones.

use std::ops::{Index, IndexMut};
use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cr, Real};

/// Condition estimates above this attach a warning to results.
pub const ILL_CONDITIONED: f64 = 1e12;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    order: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self { order, data: vec![cr(T::zero()); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = cr(T::one());
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let order = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::InvalidInput(format!("row of length {} in {order}x{order} matrix", r.len())));
        }
        Ok(Self { order, data: rows.concat() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<T>]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        Self::from_fn(self.order, |i, j| {
            (0..self.order).fold(cr(T::zero()), |acc, k| acc + self[(i, k)] * other[(k, j)])
        })
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        self.rows()
            .map(|row| row.iter().zip(x).fold(cr(T::zero()), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Copy with row `t` overwritten by `value` in every column.
    pub fn with_row(&self, t: usize, value: Complex<T>) -> Self {
        let mut m = self.clone();
        for j in 0..self.order {
            m[(t, j)] = value;
        }
        m
    }

    /// Copy with column `t` overwritten by `value` in every row.
    pub fn with_column(&self, t: usize, value: Complex<T>) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m[(i, t)] = value;
        }
        m
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.order + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.order + j]
    }
}

/// LU factorization with partial pivoting, `P A = L U` packed in one matrix.
struct Lu<T> {
    lu: ComplexMatrix<T>,
    perm: Vec<usize>,
    sign: T,
    singular_at: Option<usize>,
}

fn lu<T: Real>(a: &ComplexMatrix<T>) -> Lu<T> {
    let n = a.order();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = T::one();
    let mut singular_at = None;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| lu[(x, k)].norm().partial_cmp(&lu[(y, k)].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if !(lu[(p, k)].norm() > T::zero()) {
            singular_at.get_or_insert(k);
            continue;
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let v = lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - factor * v;
            }
        }
    }
    Lu { lu, perm, sign, singular_at }
}

/// Determinant; closed forms for orders 1 and 2, LU with partial pivoting
/// above. Singular matrices give zero.
pub fn determinant<T: Real>(a: &ComplexMatrix<T>) -> Complex<T> {
    match a.order() {
        0 => cr(T::one()),
        1 => a[(0, 0)],
        2 => a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)],
        n => {
            let f = lu(a);
            if f.singular_at.is_some() {
                return cr(T::zero());
            }
            (0..n).fold(cr(f.sign), |acc, i| acc * f.lu[(i, i)])
        }
    }
}

/// General solve by LU with partial pivoting.
pub fn lu_solve<T: Real>(a: &ComplexMatrix<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.order();
    if b.len() != n {
        return Err(Error::InvalidInput(format!("rhs of length {} for order {n}", b.len())));
    }
    let f = lu(a);
    if let Some(pivot) = f.singular_at {
        return Err(Error::Singular { pivot });
    }
    let mut y: Vec<Complex<T>> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        for k in 0..i {
            y[i] = y[i] - f.lu[(i, k)] * y[k];
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] = y[i] - f.lu[(i, k)] * y[k];
        }
        y[i] = y[i] / f.lu[(i, i)];
    }
    Ok(y)
}

/// Lower-triangular `L` with `A = L Lᴴ` and a real positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor<T> {
    l: ComplexMatrix<T>,
}

impl<T: Real> CholeskyFactor<T> {
    fn compute(a: &ComplexMatrix<T>) -> Result<Self> {
        let n = a.order();
        let mut l = ComplexMatrix::zeros(n);
        for j in 0..n {
            let d = (0..j).fold(a[(j, j)].re, |acc, k| acc - l[(j, k)].norm_sqr());
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite { pivot: j, value: d.to_f64().unwrap_or(f64::NAN) });
            }
            let ljj = d.sqrt();
            l[(j, j)] = cr(ljj);
            for i in j + 1..n {
                let s = (0..j).fold(a[(i, j)], |acc, k| acc - l[(i, k)] * l[(j, k)].conj());
                l[(i, j)] = s / ljj;
            }
        }
        Ok(Self { l })
    }

    pub fn lower(&self) -> &ComplexMatrix<T> {
        &self.l
    }

    pub fn diagonal(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.l.order()).map(|i| self.l[(i, i)].re)
    }

    /// Solve with the leading `m × m` block of `A`, whose factor is the
    /// leading block of `L`.
    pub fn solve_leading(&self, m: usize, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if m > self.l.order() || b.len() != m {
            return Err(Error::InvalidInput(format!(
                "leading solve of order {m} with rhs {} on factor of order {}",
                b.len(),
                self.l.order()
            )));
        }
        let l = &self.l;
        let mut y = b.to_vec();
        for i in 0..m {
            for k in 0..i {
                y[i] = y[i] - l[(i, k)] * y[k];
            }
            y[i] = y[i] / l[(i, i)];
        }
        for i in (0..m).rev() {
            for k in i + 1..m {
                y[i] = y[i] - l[(k, i)].conj() * y[k];
            }
            y[i] = y[i] / l[(i, i)];
        }
        Ok(y)
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.solve_leading(self.l.order(), b)
    }

    /// `(max L_ii / min L_ii)²`, a cheap lower bound on the 2-norm condition number.
    pub fn condition_estimate(&self) -> T {
        let (lo, hi) = self
            .diagonal()
            .fold((T::infinity(), T::zero()), |(lo, hi), d| (lo.min(d), hi.max(d)));
        if self.l.order() == 0 {
            return T::one();
        }
        let r = hi / lo;
        r * r
    }
}

/// Hermitian matrix stored in full; symmetrized on construction. The
/// Cholesky factorization is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct HermitianMatrix<T> {
    matrix: ComplexMatrix<T>,
    factor: OnceLock<Result<CholeskyFactor<T>>>,
}

impl<T: Real> PartialEq for HermitianMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<T: Real> HermitianMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Self {
        let half = T::lit(0.5);
        let sym = ComplexMatrix::from_fn(matrix.order(), |i, j| {
            if i == j {
                cr(matrix[(i, i)].re)
            } else {
                (matrix[(i, j)] + matrix[(j, i)].conj()) * half
            }
        });
        Self { matrix: sym, factor: OnceLock::new() }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self::new(ComplexMatrix::from_fn(order, f))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn cholesky(&self) -> Result<&CholeskyFactor<T>> {
        self.factor
            .get_or_init(|| CholeskyFactor::compute(&self.matrix))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn cholesky_solve(&self, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.cholesky()?.solve(b)
    }

    pub fn condition_estimate(&self) -> Result<T> {
        Ok(self.cholesky()?.condition_estimate())
    }

    pub fn determinant(&self) -> Complex<T> {
        determinant(&self.matrix)
    }

    /// Cholesky solve followed by `steps` rounds of iterative refinement,
    /// with residuals accumulated in compensated arithmetic.
    pub fn refined_solve(&self, b: &[Complex<T>], steps: usize) -> Result<Vec<Complex<T>>> {
        let factor = self.cholesky()?;
        let mut x = factor.solve(b)?;
        for _ in 0..steps {
            let r = compensated_residual(&self.matrix, &x, b);
            let dx = factor.solve(&r)?;
            for (xi, di) in x.iter_mut().zip(dx) {
                *xi = *xi + di;
            }
        }
        Ok(x)
    }
}

/// Running sum carrying its rounding error separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    err: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), err: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let s = self.sum + x;
        let bp = s - self.sum;
        self.err = self.err + ((self.sum - (s - bp)) + (x - bp));
        self.sum = s;
    }

    pub fn add_product(&mut self, a: T, b: T) {
        let p = a * b;
        self.add(p);
        self.err = self.err + a.mul_add(b, -p);
    }

    pub fn value(&self) -> T {
        self.sum + self.err
    }
}

/// `Σ x_i` in compensated arithmetic.
pub fn compensated_sum<T: Real>(xs: impl IntoIterator<Item = Complex<T>>) -> Complex<T> {
    let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
    for x in xs {
        re.add(x.re);
        im.add(x.im);
    }
    Complex::new(re.value(), im.value())
}

fn compensated_residual<T: Real>(a: &ComplexMatrix<T>, x: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.rows()
        .zip(b)
        .map(|(row, bi)| {
            let (mut re, mut im) = (CompensatedSum::new(), CompensatedSum::new());
            re.add(bi.re);
            im.add(bi.im);
            for (aij, xj) in row.iter().zip(x) {
                re.add_product(-aij.re, xj.re);
                re.add_product(aij.im, xj.im);
                im.add_product(-aij.re, xj.im);
                im.add_product(-aij.im, xj.re);
            }
            Complex::new(re.value(), im.value())
        })
        .collect()
}

/// Warning text for an ill-conditioned system, if `cond` crosses
/// [`ILL_CONDITIONED`].
pub fn conditioning_warning<T: Real>(cond: T) -> Option<String> {
    (cond > T::lit(ILL_CONDITIONED)).then(|| {
        format!(
            "condition estimate {:e}: roughly {:.1} digits lost",
            cond.to_f64().unwrap_or(f64::INFINITY),
            cond.log10().to_f64().unwrap_or(f64::INFINITY)
        )
    })
}
