//! Dense matrices, a cyclic Jacobi eigensolver for real symmetric and
//! complex Hermitian matrices, rank by pivoted elimination and modified
//! Gram–Schmidt.
//!
//! These are the brute-force oracles the closed forms are tested against;
//! dimensions stay in the low thousands.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Field operations shared by `f64` and `Complex64`.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn re(self) -> f64;
    fn conj(self) -> Self;
    fn abs(self) -> f64;
    fn scale(self, k: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn conj(self) -> Self {
        self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)];
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (&a, &x) in self.row(i).iter().zip(v) {
                    acc += a * x;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Largest `|a_ij - conj(a_ji)|`; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).abs());
            }
        }
        worst
    }
}

impl Matrix<f64> {
    pub fn to_complex(&self) -> Matrix<Complex64> {
        Matrix::from_fn(self.rows, self.cols, |i, j| Complex64::new(self[(i, j)], 0.0))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition `A = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen<T> {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<T>,
    pub sweeps: usize,
}

impl<T: Scalar> Eigen<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.values.len();
        let v = &self.vectors;
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = T::zero();
            for (k, &l) in self.values.iter().enumerate() {
                acc += (v[(i, k)] * v[(j, k)].conj()).scale(l);
            }
            acc
        })
    }

    /// `V f(Λ) V*`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> Matrix<T> {
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let n = mapped.len();
        let v = &self.vectors;
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = T::zero();
            for (k, &l) in mapped.iter().enumerate() {
                if l != 0.0 {
                    acc += (v[(i, k)] * v[(j, k)].conj()).scale(l);
                }
            }
            acc
        })
    }
}

pub const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary
/// and then applies an ordinary real Givens rotation, so the complex case
/// needs no real embedding.
pub fn hermitian_eig<T: Scalar>(a: &Matrix<T>) -> Result<Eigen<T>> {
    let defect = a.hermitian_defect();
    if !(defect <= HERMITIAN_TOLERANCE) {
        return domain(format!("matrix is not Hermitian (defect {defect:e})"));
    }
    if a.as_slice().iter().any(|x| !x.abs().is_finite()) {
        return domain("matrix has non-finite entries");
    }
    let n = a.rows();
    // symmetrize exactly so the rotations see a Hermitian matrix
    let mut m = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            T::from_real(a[(i, i)].re())
        } else {
            (a[(i, j)] + a[(j, i)].conj()).scale(0.5)
        }
    });
    let mut v = Matrix::<T>::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    loop {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].abs().powi(2);
            }
        }
        if off.sqrt() <= 1e-15 * scale || n < 2 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Accuracy {
                message: format!("Jacobi did not converge in {MAX_SWEEPS} sweeps"),
                estimate: off.sqrt(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q, sweeps, scale);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re()).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(Eigen { values, vectors, sweeps })
}

fn rotate<T: Scalar>(m: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, sweep: usize, scale: f64) {
    let n = m.rows();
    let apq = m[(p, q)];
    let g = apq.abs();
    if g == 0.0 {
        return;
    }
    let app = m[(p, p)].re();
    let aqq = m[(q, q)].re();
    // negligible against both diagonal entries, or below roundoff of the
    // whole matrix (needed when both diagonal entries are near zero, and
    // keeps 1/g finite below): drop
    let negligible = app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs();
    if (sweep > 4 && negligible) || g <= 1e-3 * f64::EPSILON * scale {
        m[(p, q)] = T::zero();
        m[(q, p)] = T::zero();
        return;
    }
    let ph = apq.scale(1.0 / g);
    let phc = ph.conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // columns: A <- A U, V <- V U
    for mat in [&mut *m, &mut *v] {
        for i in 0..n {
            let xp = mat[(i, p)];
            let xq = mat[(i, q)] * phc;
            mat[(i, p)] = xp.scale(c) - xq.scale(s);
            mat[(i, q)] = xp.scale(s) + xq.scale(c);
        }
    }
    // rows: A <- U* A
    for j in 0..n {
        let yp = m[(p, j)];
        let yq = m[(q, j)] * ph;
        m[(p, j)] = yp.scale(c) - yq.scale(s);
        m[(q, j)] = yp.scale(s) + yq.scale(c);
    }
    m[(p, q)] = T::zero();
    m[(q, p)] = T::zero();
    m[(p, p)] = T::from_real(app - t * g);
    m[(q, q)] = T::from_real(aqq + t * g);
}

/// Numerical rank by Gaussian elimination with full pivoting.
///
/// A pivot counts when it exceeds `tol` times the largest entry of the
/// input.
pub fn rank(a: &Matrix<f64>, tol: f64) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let threshold = tol * m.max_abs();
    let mut r = 0;
    while r < rows.min(cols) {
        let (mut pi, mut pj, mut best) = (r, r, 0.0);
        for i in r..rows {
            for j in r..cols {
                let x = m[(i, j)].abs();
                if x > best {
                    (pi, pj, best) = (i, j, x);
                }
            }
        }
        if best <= threshold {
            break;
        }
        for j in 0..cols {
            m.data.swap(r * cols + j, pi * cols + j);
        }
        for i in 0..rows {
            m.data.swap(i * cols + r, i * cols + pj);
        }
        let pivot = m[(r, r)];
        for i in r + 1..rows {
            let f = m[(i, r)] / pivot;
            if f != 0.0 {
                for j in r..cols {
                    let x = m[(r, j)];
                    m[(i, j)] -= f * x;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    acc
}

pub fn norm<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.abs().powi(2)).sum::<f64>().sqrt()
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
///
/// Vectors are processed in the given order. A vector whose residual norm
/// falls below `tol` times its original norm is linearly dependent on its
/// predecessors and is reported by index in the error.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        let original = norm(v);
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let residual = norm(&w);
        if !(residual > tol * original) {
            return Err(Error::Internal(format!(
                "vector {k} is linearly dependent on its predecessors (residual {residual:e})"
            )));
        }
        w.iter_mut().for_each(|x| *x /= residual);
        basis.push(w);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_hermitian(n: usize, seed: u64) -> Matrix<Complex64> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_and_identity() {
        let e = hermitian_eig(&Matrix::<f64>::identity(2).scaled(0.5)).unwrap();
        assert_eq!(e.values, vec![0.5, 0.5]);
        let e = hermitian_eig(&Matrix::diagonal(&[0.0, 1.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 0.0]);
        assert_eq!(e.vectors.column(0), vec![0.0, 1.0]);
    }

    #[test]
    fn complex_reconstruction_and_orthonormality() {
        for (n, seed) in [(2, 1), (5, 2), (17, 3), (40, 4)] {
            let a = random_hermitian(n, seed);
            let e = hermitian_eig(&a).unwrap();
            assert!(e.reconstruct().max_abs_diff(&a) < 1e-12, "n={n}");
            let vv = e.vectors.adjoint().matmul(&e.vectors);
            assert!(vv.max_abs_diff(&Matrix::identity(n)) < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn known_complex_spectrum() {
        // Pauli Y has eigenvalues ±1
        let y = Matrix::from_row_major(
            2,
            2,
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        );
        let e = hermitian_eig(&y).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15 && (e.values[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::from_row_major(2, 2, vec![1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(hermitian_eig(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn rank_detects_dependence() {
        let a = Matrix::from_row_major(3, 3, vec![1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0]);
        assert_eq!(rank(&a, 1e-12), 2);
        assert_eq!(rank(&Matrix::<f64>::identity(7), 1e-12), 7);
        assert_eq!(rank(&Matrix::<f64>::zeros(3, 4), 1e-12), 0);
    }

    #[test]
    fn gram_schmidt() {
        let vs = vec![vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]];
        let q = orthonormalize(&vs, 1e-10).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&q[i], &q[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let dep = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(orthonormalize(&dep, 1e-10), Err(Error::Internal(_))));
    }
}
