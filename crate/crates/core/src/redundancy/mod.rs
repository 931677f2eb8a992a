//! Redundancy of coding `⊗ⁿρ` with `ζ_n(u)`: exact trace formulas, their
//! large-`n` forms, the entropy of `ζ_n(u)` and the Bayes redundancy.
//!
//! Only the Bloch radius `r` matters; `ζ_n(u)` is unitarily invariant. The
//! relative entropy is
//! `n[(1−r)/2 log((1−r)/2) + (1+r)/2 log((1+r)/2)] − Σ_d w_d(r) log λ_d`
//! with the level weights `w_d(r)` of [`level_weights`].

use std::f64::consts::{LN_2, PI};
use std::str::FromStr;

use crate::error::{check_u, domain, Result};
use crate::export::Table;
use crate::specfun::{ln_binomial_row, ln_gamma, psi, KahanSum};
use crate::spectrum::{ln_eigenvalue, ln_multiplicities};

mod identities;

pub use identities::{identity_check, Identity, IdentityParams};

/// Radii within this distance of 0 or 1 take the limit branches.
pub const ENDPOINT_CLAMP: f64 = 1e-14;

/// `0`, `1`, or the input, after snapping to the endpoints.
fn snap_radius(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return domain(format!("Bloch radius {r} outside [0, 1]"));
    }
    Ok(if r < ENDPOINT_CLAMP {
        0.0
    } else if 1.0 - r < ENDPOINT_CLAMP {
        1.0
    } else {
        r
    })
}

/// Trace weight of `⊗ⁿρ` on each eigenspace level of `ζ_n(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelWeights {
    pub n: usize,
    pub r: f64,
    /// `d = 0..=⌊n/2⌋`.
    pub weights: Vec<f64>,
}

/// `w_d(r) = (n−2d+1)/(n+1) C(n+1,d) [(1+r)^{n+1−d}(1−r)^d − (1+r)^d(1−r)^{n+1−d}] / (2^{n+1} r)`.
///
/// Evaluated as one positive product times `−expm1(…)`, so neither the
/// difference near `r = 0` nor the powers at large `n` lose precision.
pub fn level_weights(n: usize, r: f64) -> Result<LevelWeights> {
    let r = snap_radius(r)?;
    let levels = n / 2 + 1;
    let weights = if r == 0.0 {
        let lm = ln_multiplicities(n);
        lm.iter().map(|&l| (l - n as f64 * LN_2).exp()).collect()
    } else if r == 1.0 {
        let mut w = vec![0.0; levels];
        w[0] = 1.0;
        w
    } else {
        let lc = ln_binomial_row(n + 1, n / 2);
        let ln_plus = (0.5 * (1.0 + r)).ln();
        let ln_minus = (0.5 * (1.0 - r)).ln();
        let ln_ratio = -2.0 * r.atanh();
        (0..levels)
            .map(|d| {
                let k = (n + 1 - 2 * d) as f64;
                let ln_head = (k / (n + 1) as f64).ln() + lc[d]
                    + (n + 1 - d) as f64 * ln_plus
                    + d as f64 * ln_minus
                    - r.ln();
                ln_head.exp() * -(k * ln_ratio).exp_m1()
            })
            .collect()
    };
    Ok(LevelWeights { n, r, weights })
}

fn ln_eigenvalues(n: usize, u: f64) -> Result<Vec<f64>> {
    (0..=n / 2).map(|d| ln_eigenvalue(n, u, d)).collect()
}

/// `n (1−r)/2 log((1−r)/2) + n (1+r)/2 log((1+r)/2)`, i.e. `−n S(ρ)`.
fn neg_product_entropy(n: usize, r: f64) -> f64 {
    let half = |x: f64| if x == 0.0 { 0.0 } else { x / 2.0 * (x / 2.0).ln() };
    n as f64 * (half(1.0 - r) + half(1.0 + r))
}

/// `S(⊗ⁿρ, ζ_n(u))` for a state of Bloch radius `r`.
pub fn relative_entropy_exact(n: usize, u: f64, r: f64) -> Result<f64> {
    check_u(u)?;
    let r = snap_radius(r)?;
    if r == 1.0 {
        return Ok(-ln_eigenvalue(n, u, 0)?);
    }
    let lam = ln_eigenvalues(n, u)?;
    let w = level_weights(n, r)?;
    let mut acc = KahanSum::new();
    acc.add(neg_product_entropy(n, r));
    for (wd, ld) in w.weights.iter().zip(&lam) {
        acc.add(-wd * ld);
    }
    Ok(acc.total())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Fixed `0 < r < 1`.
    Interior,
    /// `r = 0`.
    Center,
    /// `r = 1`.
    Boundary,
}

impl Regime {
    pub fn for_radius(r: f64) -> Result<Self> {
        Ok(match snap_radius(r)? {
            x if x == 0.0 => Regime::Center,
            x if x == 1.0 => Regime::Boundary,
            _ => Regime::Interior,
        })
    }
}

impl FromStr for Regime {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interior" => Ok(Regime::Interior),
            "center" => Ok(Regime::Center),
            "boundary" => Ok(Regime::Boundary),
            other => domain(format!("unknown regime {other:?}; expected interior, center or boundary")),
        }
    }
}

/// `(1/2r) log((1−r)/(1+r))`; tends to `−1` as `r → 0`.
pub fn nonclassical_term(r: f64) -> Result<f64> {
    let r = snap_radius(r)?;
    if r == 0.0 {
        return Ok(-1.0);
    }
    if r == 1.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(-r.atanh() / r)
}

fn ln_gamma_gap(u: f64) -> f64 {
    ln_gamma(1.0 - u) - ln_gamma(2.5 - u)
}

/// Large-`n` relative entropy without its vanishing remainder.
///
/// Interior: `3/2 log n − 1/2 − 3/2 log 2 − (1−u) log(1−r²) + (1/2r) log((1−r)/(1+r)) + log Γ(1−u) − log Γ(5/2−u)`.
/// Center: `3/2 log n − 3/2 − 3/2 log 2 + log Γ(1−u) − log Γ(5/2−u)`.
/// Boundary: `(2−u) log n + (2u−3) log 2 + 1/2 log π − log Γ(5/2−u)`.
pub fn asymptotic_redundancy(n: usize, u: f64, r: f64, regime: Regime) -> Result<f64> {
    check_u(u)?;
    let snapped = snap_radius(r)?;
    let found = Regime::for_radius(snapped)?;
    if found != regime {
        return domain(format!("radius {r} does not belong to the {regime:?} regime"));
    }
    let ln_n = (n as f64).ln();
    Ok(match regime {
        Regime::Interior => {
            let one_minus_r2 = (1.0 - snapped) * (1.0 + snapped);
            1.5 * ln_n - 0.5 - 1.5 * LN_2 - (1.0 - u) * one_minus_r2.ln() + nonclassical_term(snapped)?
                + ln_gamma_gap(u)
        }
        Regime::Center => 1.5 * ln_n - 1.5 - 1.5 * LN_2 + ln_gamma_gap(u),
        Regime::Boundary => (2.0 - u) * ln_n + (2.0 * u - 3.0) * LN_2 + 0.5 * PI.ln() - ln_gamma(2.5 - u),
    })
}

/// The classical three-parameter benchmarks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalBaselines {
    /// `3/2 (log n − log 2 − 1) + 1/2 log π`.
    pub minimax3d: f64,
    /// `3/2 (log n − log 2 − 1) − (1−u) log(1−r²) + log Γ(1−u) − log Γ(5/2−u)`.
    pub redundancy3d: f64,
    /// Two-parameter boundary case: `log n + log 2 − 1`.
    pub boundary2d: f64,
}

pub fn classical_baselines(n: usize, u: f64, r: f64) -> Result<ClassicalBaselines> {
    check_u(u)?;
    if !(0.0..1.0).contains(&r) {
        return domain(format!("classical redundancy needs 0 <= r < 1, got {r}"));
    }
    let ln_n = (n as f64).ln();
    let head = 1.5 * (ln_n - LN_2 - 1.0);
    Ok(ClassicalBaselines {
        minimax3d: head + 0.5 * PI.ln(),
        redundancy3d: head - (1.0 - u) * ((1.0 - r) * (1.0 + r)).ln() + ln_gamma_gap(u),
        boundary2d: ln_n + LN_2 - 1.0,
    })
}

/// `−Σ_d multiplicity(n,d) λ_d log λ_d`.
pub fn zeta_entropy_exact(n: usize, u: f64) -> Result<f64> {
    check_u(u)?;
    let lm = ln_multiplicities(n);
    let mut acc = KahanSum::new();
    for (d, l) in lm.iter().enumerate() {
        let ll = ln_eigenvalue(n, u, d)?;
        acc.add(-(l + ll).exp() * ll);
    }
    Ok(acc.total())
}

/// `(−7+5u)/(2(2−u)(1−u)) + ψ(5−2u) − ψ(1−u)`: the growth rate of the
/// entropy of `ζ_n(u)`, equal to the prior mean of `S(ρ)`.
pub fn entropy_rate(u: f64) -> Result<f64> {
    check_u(u)?;
    Ok((-7.0 + 5.0 * u) / (2.0 * (2.0 - u) * (1.0 - u)) + psi(5.0 - 2.0 * u) - psi(1.0 - u))
}

/// Constant term of the asymptotic Bayes redundancy:
/// `(−7/2+2u) log 2 − (14−20u+7u²)/(2(2−u)(1−u)) + log Γ(1−u) − log Γ(5/2−u) + (2−2u)(ψ(5−2u) − ψ(1−u))`.
pub fn bayes_constant(u: f64) -> Result<f64> {
    check_u(u)?;
    Ok((-3.5 + 2.0 * u) * LN_2 - (14.0 - 20.0 * u + 7.0 * u * u) / (2.0 * (2.0 - u) * (1.0 - u))
        + ln_gamma_gap(u)
        + (2.0 - 2.0 * u) * (psi(5.0 - 2.0 * u) - psi(1.0 - u)))
}

/// `n L(u) + 3/2 log n + C(u)`, dropping the `O(n^{u−1})` remainder.
pub fn zeta_entropy_asym(n: usize, u: f64) -> Result<f64> {
    Ok(n as f64 * entropy_rate(u)? + 1.5 * (n as f64).ln() + bayes_constant(u)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Asymptotic,
}

/// Prior average of `S(⊗ⁿρ, ζ_n(u))` under `q(u)`.
///
/// Exact: `−n L(u) + S(ζ_n(u))`. Asymptotic: `3/2 log n + C(u)`.
pub fn bayes_redundancy(n: usize, u: f64, mode: Mode) -> Result<f64> {
    match mode {
        Mode::Exact => Ok(-(n as f64) * entropy_rate(u)? + zeta_entropy_exact(n, u)?),
        Mode::Asymptotic => Ok(1.5 * (n as f64).ln() + bayes_constant(u)?),
    }
}

/// Exact against asymptotic redundancy at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyReport {
    pub n: usize,
    pub u: f64,
    pub r: f64,
    pub regime: Regime,
    pub exact: f64,
    pub asymptotic: f64,
    /// `n |exact − asymptotic|`.
    pub scaled_error: f64,
}

pub fn redundancy_report(n: usize, u: f64, r: f64) -> Result<RedundancyReport> {
    let regime = Regime::for_radius(r)?;
    let exact = relative_entropy_exact(n, u, r)?;
    let asymptotic = asymptotic_redundancy(n, u, r, regime)?;
    Ok(RedundancyReport { n, u, r, regime, exact, asymptotic, scaled_error: n as f64 * (exact - asymptotic).abs() })
}

/// Columns `n,u,r,exact,asym,scaled_error` over the Cartesian product.
pub fn redundancy_table(ns: &[usize], us: &[f64], rs: &[f64]) -> Result<Table> {
    let mut t = Table::new(&["n", "u", "r", "exact", "asym", "scaled_error"]);
    for &n in ns {
        for &u in us {
            for &r in rs {
                let rep = redundancy_report(n, u, r)?;
                t.push(vec![n.into(), u.into(), r.into(), rep.exact.into(), rep.asymptotic.into(), rep.scaled_error.into()]);
            }
        }
    }
    Ok(t)
}

/// `(r, (1/2r) log((1−r)/(1+r)))` for `r = i/grid`, `i = 0..grid`; the
/// `r = 0` row holds the limit `−1`.
pub fn figure2_table(grid: usize) -> Result<Table> {
    if grid == 0 {
        return domain("grid must be positive");
    }
    let mut t = Table::new(&["r", "nonclassical"]);
    for i in 0..grid {
        let r = i as f64 / grid as f64;
        t.push(vec![r.into(), nonclassical_term(r)?.into()]);
    }
    Ok(t)
}

/// `(u, C(u))` on `grid + 1` points from `lo` to `hi`.
pub fn figure3_table(lo: f64, hi: f64, grid: usize) -> Result<Table> {
    if grid == 0 || !(lo < hi) {
        return domain(format!("need lo < hi and a positive grid, got [{lo}, {hi}] with {grid}"));
    }
    check_u(hi)?;
    let mut t = Table::new(&["u", "constant"]);
    for i in 0..=grid {
        let u = lo + (hi - lo) * i as f64 / grid as f64;
        t.push(vec![u.into(), bayes_constant(u)?.into()]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests;
