//! Qubit states, their tensor powers and the entropy functionals.
//!
//! The tensor power `⊗ⁿρ` is indexed by subset masks: row `I`, column `J`.
//! An element in `I` selects the first basis state of that factor, so the
//! entry only depends on the four overlap counts of `I` and `J`. Since mask
//! 0 comes first, `⊗¹ρ` in this order is `σx ρ σx`; the two orderings are
//! related by a fixed permutation and share every spectral quantity.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::linalg::{self, Eigen, Matrix, Scalar};
use crate::subset::{OverlapStats, Subset};

pub use crate::linalg::hermitian_eig;

/// Largest `n` accepted by [`tensor_power`].
pub const MAX_TENSOR_POWER: usize = 14;

/// Eigenvalues below this are zero for support tests.
pub const NULL_EIGENVALUE: f64 = 1e-14;

/// Weight a null direction of the second argument may carry before the
/// relative entropy is declared infinite.
pub const SUPPORT_TOLERANCE: f64 = 1e-12;

pub type HermitianEigen = Eigen<Complex64>;

/// A point of the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let b = Self { x, y, z };
        let r = b.r();
        if !(r <= 1.0 + 1e-12) {
            return domain(format!("Bloch vector ({x}, {y}, {z}) has length {r} > 1"));
        }
        Ok(b)
    }

    /// From spherical coordinates: polar angle `theta`, azimuth `phi`.
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-12).contains(&r) {
            return domain(format!("Bloch radius {r} outside [0, 1]"));
        }
        Self::new(r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos())
    }

    pub fn r(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn theta(&self) -> f64 {
        let r = self.r();
        if r == 0.0 {
            0.0
        } else {
            (self.z / r).clamp(-1.0, 1.0).acos()
        }
    }

    pub fn phi(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// A validated density matrix of dimension `2ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix<Complex64>,
}

impl DensityMatrix {
    /// Checks dimension, hermiticity and unit trace to `1e-12`, and
    /// positivity to `-1e-10`.
    pub fn new(matrix: Matrix<Complex64>) -> Result<Self> {
        let dim = matrix.rows();
        if !matrix.is_square() || !dim.is_power_of_two() {
            return domain(format!("density matrix must be square of power-of-two size, got {}x{}", dim, matrix.cols()));
        }
        if matrix.hermitian_defect() > 1e-12 {
            return domain("density matrix is not Hermitian");
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return domain(format!("density matrix trace is {tr}, not 1"));
        }
        let eig = hermitian_eig(&matrix)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -1e-10 {
            return domain(format!("density matrix has negative eigenvalue {min:e}"));
        }
        Ok(Self { matrix })
    }

    pub fn from_real(matrix: &Matrix<f64>) -> Result<Self> {
        Self::new(matrix.to_complex())
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(p: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(Matrix::diagonal(&v))
    }

    pub(crate) fn trusted(matrix: Matrix<Complex64>) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Complex64> {
        &self.matrix
    }

    pub fn eig(&self) -> Result<HermitianEigen> {
        hermitian_eig(&self.matrix)
    }
}

/// `ρ = ½[[1+z, x−iy], [x+iy, 1−z]]`.
pub fn density_from_bloch(b: BlochVector) -> Result<DensityMatrix> {
    let b = BlochVector::new(b.x, b.y, b.z)?;
    let c = |re: f64, im: f64| Complex64::new(re / 2.0, im / 2.0);
    Ok(DensityMatrix::trusted(Matrix::from_row_major(
        2,
        2,
        vec![c(1.0 + b.z, 0.0), c(b.x, -b.y), c(b.x, b.y), c(1.0 - b.z, 0.0)],
    )))
}

/// Entry `(I, J)` of `⊗ⁿρ`:
/// `2⁻ⁿ (1+z)^{n∈∈} (1−z)^{n∉∉} (x+iy)^{n∉∈} (x−iy)^{n∈∉}`.
pub fn tensor_power_entry(b: BlochVector, n: usize, i: Subset, j: Subset) -> Result<Complex64> {
    let st = OverlapStats::new(i, j, n)?;
    Ok(entry_from_stats(&b, &st))
}

fn entry_from_stats(b: &BlochVector, st: &OverlapStats) -> Complex64 {
    let plus = Complex64::new(b.x, b.y);
    (plus.powu(st.out_in as u32) * plus.conj().powu(st.in_out as u32))
        * ((1.0 + b.z).powi(st.in_in as i32) * (1.0 - b.z).powi(st.out_out as i32))
        * 0.5f64.powi(st.n as i32)
}

/// `⊗ⁿρ` as a `2ⁿ × 2ⁿ` matrix in mask order.
pub fn tensor_power(b: BlochVector, n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return domain("tensor power needs n >= 1");
    }
    if n > MAX_TENSOR_POWER {
        return Err(Error::Capacity(format!("tensor power limited to n <= {MAX_TENSOR_POWER}, got {n}")));
    }
    let b = BlochVector::new(b.x, b.y, b.z)?;
    let dim = 1usize << n;
    let rows: Vec<Vec<Complex64>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let st = OverlapStats::new(Subset(i as u64), Subset(j as u64), n).expect("masks below 2^n");
                    entry_from_stats(&b, &st)
                })
                .collect()
        })
        .collect();
    Ok(DensityMatrix::trusted(Matrix::from_row_major(dim, dim, rows.concat())))
}

/// `−x log x` with `0 log 0 = 0`.
fn neg_xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// Entropy of a qubit state with Bloch radius `r`.
pub fn von_neumann_entropy_bloch(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return domain(format!("Bloch radius {r} outside [0, 1]"));
    }
    Ok(neg_xlogx((1.0 - r) / 2.0) + neg_xlogx((1.0 + r) / 2.0))
}

/// `−Tr ρ log ρ` from the eigenvalues.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.eig()?.values))
}

pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values.iter().map(|&l| if l < NULL_EIGENVALUE { 0.0 } else { neg_xlogx(l) }).sum()
}

/// `⟨w_k|ρ|w_k⟩` for every eigenvector column `w_k`.
fn diagonal_weights<T: Scalar>(rho: &Matrix<T>, basis: &Matrix<T>) -> Vec<f64> {
    let n = rho.rows();
    (0..n)
        .map(|k| {
            let w = basis.column(k);
            linalg::dot(&w, &rho.mul_vec(&w)).re()
        })
        .collect()
}

/// `log ρ` restricted to the support of `ρ`, with null eigenvalues mapped to 0.
fn support_log<T: Scalar>(e: &Eigen<T>) -> Matrix<T> {
    e.apply(|l| if l < NULL_EIGENVALUE { 0.0 } else { l.ln() })
}

fn check_support<T: Scalar>(rho1: &Matrix<T>, e2: &Eigen<T>) -> Result<Vec<f64>> {
    let weights = diagonal_weights(rho1, &e2.vectors);
    for (&mu, &w) in e2.values.iter().zip(&weights) {
        if mu < NULL_EIGENVALUE && w > SUPPORT_TOLERANCE {
            return Err(Error::InfiniteDivergence);
        }
    }
    Ok(weights)
}

fn check_pair(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<()> {
    if rho1.dim() != rho2.dim() {
        return domain(format!("dimension mismatch: {} vs {}", rho1.dim(), rho2.dim()));
    }
    Ok(())
}

/// `Tr ρ₁(log ρ₁ − log ρ₂)`.
///
/// Returns [`Error::InfiniteDivergence`] when `ρ₁` has weight above
/// [`SUPPORT_TOLERANCE`] on the null space of `ρ₂`.
pub fn relative_entropy(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_pair(rho1, rho2)?;
    relative_entropy_dense(rho1.matrix(), rho2.matrix())
}

/// [`relative_entropy`] on unvalidated Hermitian matrices, real or complex.
pub fn relative_entropy_dense<T: Scalar>(rho1: &Matrix<T>, rho2: &Matrix<T>) -> Result<f64> {
    let e1 = hermitian_eig(rho1)?;
    let e2 = hermitian_eig(rho2)?;
    let weights = check_support(rho1, &e2)?;
    let cross: f64 = e2
        .values
        .iter()
        .zip(&weights)
        .filter(|(&mu, _)| mu >= NULL_EIGENVALUE)
        .map(|(&mu, &w)| w * mu.ln())
        .sum();
    Ok(-entropy_of_spectrum(&e1.values) - cross)
}

/// `Tr ρ₁(log ρ₁ − log ρ₂)²`, with the same support convention.
pub fn relative_entropy_square(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    check_pair(rho1, rho2)?;
    let e1 = rho1.eig()?;
    let e2 = rho2.eig()?;
    check_support(rho1.matrix(), &e2)?;
    let log2 = support_log(&e2);
    let mut total = 0.0;
    for (k, &p) in e1.values.iter().enumerate() {
        if p < NULL_EIGENVALUE {
            continue;
        }
        let v = e1.vectors.column(k);
        let lv = log2.mul_vec(&v);
        let lp = p.ln();
        // (log ρ₁ − log ρ₂) v = log p · v − (log ρ₂) v
        let diff: Vec<Complex64> = v.iter().zip(&lv).map(|(&a, &b)| a * lp - b).collect();
        total += p * linalg::norm(&diff).powi(2);
    }
    Ok(total)
}

/// Symmetric-logarithmic-derivative Fisher matrix at an interior point.
pub fn sld_fisher_matrix(b: BlochVector) -> Result<[[f64; 3]; 3]> {
    let r2 = b.x * b.x + b.y * b.y + b.z * b.z;
    if !(r2 < 1.0) {
        return domain(format!("Fisher matrix needs r < 1, got r = {}", r2.sqrt()));
    }
    let v = [b.x, b.y, b.z];
    let k = 1.0 / (1.0 - r2);
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 - r2 } else { 0.0 };
            m[i][j] = (delta + v[i] * v[j]) * k;
        }
    }
    Ok(m)
}
