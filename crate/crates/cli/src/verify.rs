//! The `verify` umbrella: fast oracle and invariant checks with one
//! `PASS`/`FAIL` line each.

use std::f64::consts::LN_2;
use std::path::Path;

use qredux::bayes_matrix::{zeta_matrix, ZetaMatrix};
use qredux::export::Table;
use qredux::linalg::{hermitian_eig, rank, Matrix};
use qredux::optimize::{bayes_optimality_check, maximin_u, minimax_gap, minimax_u};
use qredux::priors::RadialPrior;
use qredux::qstate::{relative_entropy_dense, tensor_power, BlochVector, DensityMatrix};
use qredux::redundancy::{bayes_constant, identity_check, relative_entropy_exact, Identity, IdentityParams};
use qredux::specfun::catalan;
use qredux::spectrum::{eigenbasis, eigenvalue, radial_eigenvalue, spectrum};
use qredux::{compress, Result};

pub struct Check {
    pub name: &'static str,
    /// Worst observed deviation.
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self { name, value, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

pub fn to_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["check", "status", "value", "tolerance"]);
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        t.push(vec![c.name.into(), status.into(), c.value.into(), c.tolerance.into()]);
    }
    t
}

/// Sorted closed-form spectrum with multiplicities expanded.
fn closed_form_values(n: usize, u: f64) -> Result<Vec<f64>> {
    let mut v = Vec::with_capacity(1 << n);
    for level in spectrum(n, u)?.levels {
        let m = u64::try_from(&level.multiplicity).expect("n <= 12 keeps multiplicities small");
        v.extend(std::iter::repeat(level.lambda).take(m as usize));
    }
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

fn spectrum_gap(z: &ZetaMatrix) -> Result<f64> {
    let eig = hermitian_eig(&z.matrix)?;
    let closed = closed_form_values(z.n, z.u)?;
    Ok(eig.values.iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Trace, symmetry and spectrum of a matrix file written by `matrix --format bin`.
pub fn verify_file(path: &Path, tol: f64) -> Result<Vec<Check>> {
    let z = ZetaMatrix::read_binary(std::fs::File::open(path)?)?;
    let asym = z.matrix.max_abs_diff(&z.matrix.adjoint());
    Ok(vec![
        Check::new("file_trace", (z.trace() - 1.0).abs(), tol),
        Check::new("file_symmetry", asym, tol),
        Check::new("file_spectrum", spectrum_gap(&z)?, tol),
    ])
}

pub fn suite(tol: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for n in 1..=12 {
        let c = catalan(n as i64 + 1)?.to_string().parse::<f64>().expect("decimal digits");
        worst = worst.max((eigenvalue(n, 0.5, 0)? * 4f64.powi(n as i32) / c - 1.0).abs());
    }
    checks.push(Check::new("catalan_eigenvalue", worst, 1e-12));

    let mut worst = 0.0f64;
    for n in 1..=6 {
        for u in [-1.0, 0.0, 0.5, 0.9] {
            worst = worst.max(spectrum_gap(&zeta_matrix(n, u)?)?);
        }
    }
    checks.push(Check::new("spectrum_dense", worst, tol));

    let (mut worst, mut rank_deficit) = (0.0f64, 0usize);
    for n in 1..=6 {
        let z = zeta_matrix(n, 0.3)?.matrix;
        let basis = eigenbasis(n)?;
        let mut cols = Vec::with_capacity(basis.len());
        for v in &basis {
            let x = v.to_dense();
            let lam = eigenvalue(n, 0.3, v.d)?;
            let zx = z.mul_vec(&x);
            let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            worst = worst.max(zx.iter().zip(&x).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max) / norm);
            cols.extend(x);
        }
        let m = Matrix::from_row_major(basis.len(), 1 << n, cols);
        rank_deficit += (1 << n) - rank(&m, 1e-9);
    }
    checks.push(Check::new("eigenbasis_residual", worst, 1e-12));
    checks.push(Check::new("eigenbasis_rank_deficit", rank_deficit as f64, 0.0));

    let mut worst = 0.0f64;
    for n in [3, 8, 15, 20] {
        for (r, u) in [(0.1, -0.8), (0.45, 0.35), (0.9, 0.75)] {
            let p = IdentityParams { n, r, u, alpha: 0.6, d: n / 3, z: 0.4 * r };
            for id in Identity::EXACT {
                worst = worst.max(identity_check(id, &p)?);
            }
        }
    }
    checks.push(Check::new("identity_suite", worst, 1e-11));

    let mut worst = 0.0f64;
    for n in 1..=4 {
        for (u, r) in [(-0.5, 0.3), (0.5, 0.6), (0.8, 0.95)] {
            let rho = tensor_power(BlochVector::from_spherical(r, 1.1, 0.4)?, n)?;
            let zeta = zeta_matrix(n, u)?.matrix.to_complex();
            let dense = relative_entropy_dense(rho.matrix(), &zeta)?;
            worst = worst.max((relative_entropy_exact(n, u, r)? - dense).abs());
        }
    }
    checks.push(Check::new("relative_entropy_oracle", worst, 1e-8));

    let m = maximin_u()?;
    checks.push(Check::new("maximin_u_star", (m.u_star - 0.531267).abs(), 1e-5));
    checks.push(Check::new("maximin_constant", (m.constant + 1.77185).abs(), 1e-4));
    checks.push(Check::new("bayes_constant_half", (bayes_constant(0.5)? + 1.77421).abs(), 1e-5));

    let mm = minimax_u(8)?;
    checks.push(Check::new("minimax_crossing", minimax_gap(8, mm.u_n)?.abs(), 1e-10));

    let mut worst = 0.0f64;
    for u in [-1.0, 0.0, 0.5] {
        let w = RadialPrior::q(u)?;
        for n in 1..=6 {
            for d in 0..=n / 2 {
                let rel = radial_eigenvalue(n, d, &w)? / eigenvalue(n, u, d)? - 1.0;
                worst = worst.max(rel.abs());
            }
        }
    }
    checks.push(Check::new("radial_eigenvalue", worst, 1e-8));

    let p1 = DensityMatrix::diagonal(&[1.0, 0.0])?;
    let p2 = DensityMatrix::diagonal(&[0.0, 1.0])?;
    let q = DensityMatrix::diagonal(&[0.75, 0.25])?;
    let c = bayes_optimality_check(&[p1, p2], &[0.5, 0.5], &q)?;
    checks.push(Check::new("bayes_optimality", (c.gap - c.s_mq).abs(), 1e-9));
    let expected = -LN_2 - 0.5 * (0.75f64.ln() + 0.25f64.ln());
    checks.push(Check::new("bayes_optimality_value", (c.s_mq - expected).abs(), 1e-12));

    let plan = compress::plan(2, 0.5, 0.1)?;
    let miss = (plan.d_max as f64) + (u64::try_from(&plan.dim).unwrap_or(u64::MAX) as f64 - 3.0).abs();
    checks.push(Check::new("compression_plan", miss, 0.0));

    Ok(checks)
}
