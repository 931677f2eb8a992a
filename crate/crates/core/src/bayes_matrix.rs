//! The Bayesian density matrices `ζ_n(u)`: the average of `⊗ⁿρ` over
//! `q(u)`, and the symmetric generalization sharing their block structure.
//!
//! Entry `(I, J)` vanishes unless `|I| = |J|`; otherwise, with
//! `a = |I ∩ J|`, `b = n − |I ∪ J|` and `k = (n − a − b)/2`,
//!
//! ```text
//! Z_IJ = k! 2⁻ⁿ Γ(5/2−u) Γ(2+n/2+(a−b)/2−u) Γ(2+n/2−(a−b)/2−u)
//!        / [Γ(5/2+n/2−u) Γ(2+n/2−u) Γ(2+k−u)]
//! ```

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_u, Error, Result};
use crate::export::{Table, Value};
use crate::linalg::Matrix;
use crate::priors::q_density;
use crate::specfun::{gauss_legendre, integrate_radial, ln_gamma};
use crate::subset::{OverlapStats, Subset};

/// Largest `n` for a dense `ζ_n(u)`.
pub const MAX_MATRIX_N: usize = 12;
/// Largest `n` for the quadrature oracle.
pub const MAX_ORACLE_N: usize = 6;

const BINARY_MAGIC: &[u8; 4] = b"ZETA";

pub fn overlap_stats(i: Subset, j: Subset, n: usize) -> Result<OverlapStats> {
    OverlapStats::new(i, j, n)
}

/// `log Z_IJ` for a same-size pair, from `(n∈∈, n∉∉)` alone.
fn ln_z(n: usize, u: f64, in_in: usize, out_out: usize) -> f64 {
    let k = (n - in_in - out_out) / 2;
    let nf = n as f64;
    let half_diff = (in_in as f64 - out_out as f64) / 2.0;
    ln_gamma(k as f64 + 1.0) - nf * std::f64::consts::LN_2 + ln_gamma(2.5 - u)
        + ln_gamma(2.0 + nf / 2.0 + half_diff - u)
        + ln_gamma(2.0 + nf / 2.0 - half_diff - u)
        - ln_gamma(2.5 + nf / 2.0 - u)
        - ln_gamma(2.0 + nf / 2.0 - u)
        - ln_gamma(2.0 + k as f64 - u)
}

/// `Z_IJ` of `ζ_n(u)` from the overlap counts.
pub fn z_entry(n: usize, u: f64, stats: &OverlapStats) -> Result<f64> {
    check_u(u)?;
    if stats.n != n || stats.in_in + stats.out_out + stats.in_out + stats.out_in != n {
        return Err(Error::Contract(format!("overlap counts {stats:?} inconsistent with n = {n}")));
    }
    if stats.out_in != stats.in_out {
        return Ok(0.0);
    }
    Ok(ln_z(n, u, stats.in_in, stats.out_out).exp())
}

fn check_matrix_n(n: usize) -> Result<()> {
    if n == 0 {
        return crate::error::domain("n must be at least 1");
    }
    if n > MAX_MATRIX_N {
        return Err(Error::Capacity(format!("dense matrices limited to n <= {MAX_MATRIX_N}, got {n}")));
    }
    Ok(())
}

/// Fills a `2ⁿ × 2ⁿ` matrix from a table indexed by `(n∈∈, n∉∉)`, zero off
/// the `|I| = |J|` blocks.
fn assemble(n: usize, table: &[Vec<f64>]) -> Matrix<f64> {
    let dim = 1usize << n;
    let full = (dim - 1) as u64;
    let rows: Vec<Vec<f64>> = (0..dim as u64)
        .into_par_iter()
        .map(|i| {
            let size = i.count_ones();
            (0..dim as u64)
                .map(|j| {
                    if j.count_ones() != size {
                        0.0
                    } else {
                        let a = (i & j).count_ones() as usize;
                        let b = (!(i | j) & full).count_ones() as usize;
                        table[a][b]
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_row_major(dim, dim, rows.concat())
}

/// Dense `ζ_n(u)` in mask order.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaMatrix {
    pub n: usize,
    pub u: f64,
    pub matrix: Matrix<f64>,
}

pub fn zeta_matrix(n: usize, u: f64) -> Result<ZetaMatrix> {
    check_u(u)?;
    check_matrix_n(n)?;
    let mut table = vec![vec![0.0; n + 1]; n + 1];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, z) in row.iter_mut().enumerate().take(n + 1 - a) {
            if (n - a - b) % 2 == 0 {
                *z = ln_z(n, u, a, b).exp();
            }
        }
    }
    Ok(ZetaMatrix { n, u, matrix: assemble(n, &table) })
}

impl ZetaMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Rows `I,J,value` with masks as integers, row-major.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["I", "J", "value"]);
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                t.push(vec![Value::Int(i as i64), Value::Int(j as i64), Value::Real(self.matrix[(i, j)])]);
            }
        }
        t
    }

    /// 16-byte header (`ZETA`, `n` as u32, `u` as f64) followed by the
    /// entries in row-major order, all little-endian.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(BINARY_MAGIC)?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.u.to_le_bytes())?;
        for x in self.matrix.as_slice() {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header).map_err(|e| Error::Format(format!("truncated header: {e}")))?;
        if &header[..4] != BINARY_MAGIC {
            return Err(Error::Format("bad magic, expected ZETA".into()));
        }
        let n = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes")) as usize;
        let u = f64::from_le_bytes(header[8..16].try_into().expect("8 bytes"));
        if n == 0 || n > MAX_MATRIX_N {
            return Err(Error::Format(format!("header n = {n} outside 1..={MAX_MATRIX_N}")));
        }
        let dim = 1usize << n;
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() != dim * dim * 8 {
            return Err(Error::Format(format!("payload has {} bytes, expected {}", bytes.len(), dim * dim * 8)));
        }
        let data = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
        Ok(Self { n, u, matrix: Matrix::from_row_major(dim, dim, data) })
    }
}

/// `∫ R_IJ q(u) dV` by quadrature: tanh-sinh in `r` (carrying the
/// `(1−r²)^{−u}` factor) and Gauss–Legendre in `ϑ` and `φ`.
pub fn z_entry_oracle(n: usize, u: f64, i: Subset, j: Subset) -> Result<f64> {
    check_u(u)?;
    if n > MAX_ORACLE_N {
        return Err(Error::Capacity(format!("quadrature oracle limited to n <= {MAX_ORACLE_N}, got {n}")));
    }
    let st = OverlapStats::new(i, j, n)?;
    let nodes = 32;
    let (x, w) = gauss_legendre(nodes);
    let theta: Vec<(f64, f64)> = x.iter().zip(&w).map(|(&x, &w)| (PI / 2.0 * (x + 1.0), PI / 2.0 * w)).collect();
    let phi: Vec<(f64, f64)> = x.iter().zip(&w).map(|(&x, &w)| (PI * (x + 1.0), PI * w)).collect();
    // φ-integral of e^{i(c−d)φ}, done numerically to keep the oracle independent
    let phase: Complex64 = phi
        .iter()
        .map(|&(p, wp)| Complex64::from_polar(wp, p * (st.out_in as f64 - st.in_out as f64)))
        .sum();
    let mixed = (st.out_in + st.in_out) as i32;
    let norm = q_density(u, 0.0)?;
    let scale = 0.5f64.powi(n as i32);
    let mut im_worst = 0.0f64;
    let re = integrate_radial(
        |r| {
            let angular: f64 = theta
                .iter()
                .map(|&(t, wt)| {
                    let (s, c) = t.sin_cos();
                    wt * s
                        * (1.0 + r * c).powi(st.in_in as i32)
                        * (1.0 - r * c).powi(st.out_out as i32)
                        * (r * s).powi(mixed)
                })
                .sum();
            let v = phase * (angular * r * r * norm * scale);
            im_worst = im_worst.max(v.im.abs());
            v.re
        },
        u,
    )?;
    if im_worst > 1e-8 {
        return Err(Error::Accuracy { message: format!("imaginary part {im_worst:e} did not cancel"), estimate: re });
    }
    Ok(re)
}

/// Checks `f(x) = f(−x)` on the integers `|x| <= n`.
pub fn check_symmetric(n: usize, f: &impl Fn(i64) -> f64) -> Result<()> {
    for x in 1..=n as i64 {
        let (a, b) = (f(x), f(-x));
        if !((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)) {
            return Err(Error::Contract(format!("f({x}) = {a} differs from f({}) = {b}", -x)));
        }
    }
    Ok(())
}

/// Generalized matrix with entries `k!/Γ(2+k−u) · f(n∈∈ − n∉∉)` on the
/// `|I| = |J|` blocks.
pub fn tilde_zeta_matrix(n: usize, u: f64, f: impl Fn(i64) -> f64) -> Result<Matrix<f64>> {
    check_u(u)?;
    check_matrix_n(n)?;
    check_symmetric(n, &f)?;
    let mut table = vec![vec![0.0; n + 1]; n + 1];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, z) in row.iter_mut().enumerate().take(n + 1 - a) {
            if (n - a - b) % 2 == 0 {
                let k = ((n - a - b) / 2) as f64;
                *z = (ln_gamma(k + 1.0) - ln_gamma(2.0 + k - u)).exp() * f(a as i64 - b as i64);
            }
        }
    }
    Ok(assemble(n, &table))
}

/// The profile `f` for which the generalized matrix equals `ζ_n(u)`.
pub fn zeta_profile(n: usize, u: f64) -> impl Fn(i64) -> f64 {
    let nf = n as f64;
    let ln_c = -nf * std::f64::consts::LN_2 + ln_gamma(2.5 - u) - ln_gamma(2.5 + nf / 2.0 - u) - ln_gamma(2.0 + nf / 2.0 - u);
    move |x| {
        let h = x as f64 / 2.0;
        (ln_c + ln_gamma(2.0 + nf / 2.0 + h - u) + ln_gamma(2.0 + nf / 2.0 - h - u)).exp()
    }
}
