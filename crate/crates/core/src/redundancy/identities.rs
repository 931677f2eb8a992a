//! Closed-form summation identities behind the exact and asymptotic
//! redundancy formulas, checked as residuals `|LHS − RHS|`.
//!
//! The `a*` family and `e37` sum terms of size up to `2ⁿ/r` whose total is
//! `O(1)`, so they run in double-double arithmetic on both sides. The `B*`
//! family sums positive `λ_d` weights and binary64 with compensation is
//! enough. `a15` and `B8` are asymptotic and return the scaled gap.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_u, domain, Result};
use crate::specfun::{binomial_f64, ln_gamma, psi, DoubleDouble as Dd, KahanSum};

/// Largest `n` the exact identities accept.
pub const MAX_N: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
    A15,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    E37,
}

impl Identity {
    /// Identities with an exact right-hand side; residuals sit at roundoff.
    pub const EXACT: [Identity; 13] = [
        Identity::A8,
        Identity::A9,
        Identity::A10,
        Identity::A11,
        Identity::A12,
        Identity::A13,
        Identity::A14,
        Identity::B3,
        Identity::B4,
        Identity::B5,
        Identity::B6,
        Identity::B7,
        Identity::E37,
    ];

    /// Asymptotic expansions; the check returns a scaled gap that stays bounded in `n`.
    pub const ASYMPTOTIC: [Identity; 2] = [Identity::A15, Identity::B8];

    pub fn is_exact(self) -> bool {
        !matches!(self, Identity::A15 | Identity::B8)
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::A8 => "a8",
            Identity::A9 => "a9",
            Identity::A10 => "a10",
            Identity::A11 => "a11",
            Identity::A12 => "a12",
            Identity::A13 => "a13",
            Identity::A14 => "a14",
            Identity::A15 => "a15",
            Identity::B3 => "B3",
            Identity::B4 => "B4",
            Identity::B5 => "B5",
            Identity::B6 => "B6",
            Identity::B7 => "B7",
            Identity::B8 => "B8",
            Identity::E37 => "e37",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::EXACT
            .iter()
            .chain(&Identity::ASYMPTOTIC)
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .map_or_else(|| domain(format!("unknown identity {s:?}")), Ok)
    }
}

/// Inputs shared by all identities; each one reads the fields it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityParams {
    pub n: usize,
    pub r: f64,
    pub u: f64,
    /// Shift in `Γ(1+α+d−u)` for `B6`; needs `α > u − 1`.
    pub alpha: f64,
    /// Level for `e37`; needs `2d ≤ n`.
    pub d: usize,
    /// Free variable of `e37`.
    pub z: f64,
}

impl Default for IdentityParams {
    fn default() -> Self {
        Self { n: 10, r: 0.3, u: 0.2, alpha: 0.5, d: 1, z: 0.1 }
    }
}

/// `|LHS − RHS|` for exact identities, the scaled gap for `a15` and `B8`.
pub fn identity_check(id: Identity, p: &IdentityParams) -> Result<f64> {
    if p.n == 0 || p.n > MAX_N {
        return domain(format!("identity checks need 1 <= n <= {MAX_N}, got {}", p.n));
    }
    check_u(p.u)?;
    let needs_r = matches!(
        id,
        Identity::A8
            | Identity::A9
            | Identity::A10
            | Identity::A11
            | Identity::A12
            | Identity::A13
            | Identity::A14
            | Identity::A15
            | Identity::E37
    );
    if needs_r && !(p.r > 0.0 && p.r < 1.0) {
        return domain(format!("identity {id} needs 0 < r < 1, got {}", p.r));
    }
    let n = p.n;
    Ok(match id {
        Identity::A8 => (sum_w(n, p.r, |_| Dd::ONE) - Dd::ONE).abs().to_f64(),
        Identity::A9 => a9(n, p.r),
        Identity::A10 => a10(n, p.r),
        Identity::A11 => a_moment(n, p.r, p.u, 0, &A11, 2.0),
        Identity::A12 => a_moment(n, p.r, p.u, 1, &A12, 4.0),
        Identity::A13 => a_moment(n, p.r, p.u, 2, &A13, 8.0),
        Identity::A14 => a_moment(n, p.r, p.u, 3, &A14, 16.0),
        Identity::A15 => a15(n, p.r, p.u),
        Identity::B3 => b3(n, p.u),
        Identity::B4 => b4(n, p.u),
        Identity::B5 => {
            if p.u == 0.0 {
                return domain("B5 has a pole at u = 0");
            }
            b5(n, p.u)
        }
        Identity::B6 => {
            if !(p.alpha > p.u - 1.0) {
                return domain(format!("B6 needs alpha > u - 1, got alpha = {}", p.alpha));
            }
            b6(n, p.u, p.alpha)
        }
        Identity::B7 => b7(n, p.u),
        Identity::B8 => b8(n, p.u),
        Identity::E37 => {
            if 2 * p.d > n || !p.z.is_finite() {
                return domain(format!("e37 needs 2d <= n and finite z, got d = {}, z = {}", p.d, p.z));
            }
            e37(n, p.d, p.r, p.z)
        }
    })
}

/// `(coefficient, power of first, power of second, power of third variable)`.
type Term = (f64, u32, u32, u32);

fn poly_dd(terms: &[Term], x: Dd, y: Dd, z: Dd) -> Dd {
    terms
        .iter()
        .map(|&(c, i, j, k)| Dd::from(c) * x.powi(i) * y.powi(j) * z.powi(k))
        .sum()
}

fn poly(terms: &[Term], x: f64, y: f64, z: f64) -> f64 {
    terms
        .iter()
        .map(|&(c, i, j, k)| c * x.powi(i as i32) * y.powi(j as i32) * z.powi(k as i32))
        .collect::<KahanSum>()
        .total()
}

// Numerators in (n, r, u) of the moment identities.
const A11: [Term; 5] = [(-1.0, 0, 0, 0), (2.0, 0, 1, 0), (1.0, 1, 1, 0), (-1.0, 1, 2, 0), (-2.0, 0, 1, 1)];

const A12: [Term; 11] = [
    (-5.0, 0, 0, 0),
    (-1.0, 1, 0, 0),
    (7.0, 0, 1, 0),
    (5.0, 1, 1, 0),
    (-3.0, 1, 2, 0),
    (-1.0, 1, 3, 0),
    (4.0, 0, 0, 1),
    (-10.0, 0, 1, 1),
    (-2.0, 1, 1, 1),
    (2.0, 1, 2, 1),
    (4.0, 0, 1, 2),
];

const A13: [Term; 22] = [
    (-22.0, 0, 0, 0),
    (-9.0, 1, 0, 0),
    (26.0, 0, 1, 0),
    (24.0, 1, 1, 0),
    (1.0, 2, 1, 0),
    (-5.0, 1, 2, 0),
    (-1.0, 2, 2, 0),
    (-8.0, 1, 3, 0),
    (-1.0, 2, 3, 0),
    (-2.0, 1, 4, 0),
    (1.0, 2, 4, 0),
    (32.0, 0, 0, 1),
    (4.0, 1, 0, 1),
    (-48.0, 0, 1, 1),
    (-22.0, 1, 1, 1),
    (12.0, 1, 2, 1),
    (6.0, 1, 3, 1),
    (-12.0, 0, 0, 2),
    (32.0, 0, 1, 2),
    (4.0, 1, 1, 2),
    (-4.0, 1, 2, 2),
    (-8.0, 0, 1, 3),
];

const A14: [Term; 36] = [
    (-92.0, 0, 0, 0),
    (-61.0, 1, 0, 0),
    (-3.0, 2, 0, 0),
    (100.0, 0, 1, 0),
    (105.0, 1, 1, 0),
    (15.0, 2, 1, 0),
    (19.0, 1, 2, 0),
    (-4.0, 2, 2, 0),
    (-35.0, 1, 3, 0),
    (-20.0, 2, 3, 0),
    (-22.0, 1, 4, 0),
    (7.0, 2, 4, 0),
    (-6.0, 1, 5, 0),
    (5.0, 2, 5, 0),
    (188.0, 0, 0, 1),
    (60.0, 1, 0, 1),
    (-228.0, 0, 1, 1),
    (-162.0, 1, 1, 1),
    (-6.0, 2, 1, 1),
    (20.0, 1, 2, 1),
    (6.0, 2, 2, 1),
    (66.0, 1, 3, 1),
    (6.0, 2, 3, 1),
    (16.0, 1, 4, 1),
    (-6.0, 2, 4, 1),
    (-132.0, 0, 0, 2),
    (-12.0, 1, 0, 2),
    (204.0, 0, 1, 2),
    (72.0, 1, 1, 2),
    (-36.0, 1, 2, 2),
    (-24.0, 1, 3, 2),
    (32.0, 0, 0, 3),
    (-88.0, 0, 1, 3),
    (-8.0, 1, 1, 3),
    (8.0, 1, 2, 3),
    (16.0, 0, 1, 4),
];

// B6 numerator in (alpha, n, u).
const B6_POLY: [Term; 34] = [
    (48.0, 0, 0, 0),
    (64.0, 1, 0, 0),
    (25.0, 2, 0, 0),
    (3.0, 3, 0, 0),
    (40.0, 0, 1, 0),
    (66.0, 1, 1, 0),
    (37.0, 2, 1, 0),
    (5.0, 3, 1, 0),
    (8.0, 0, 2, 0),
    (14.0, 1, 2, 0),
    (8.0, 2, 2, 0),
    (2.0, 3, 2, 0),
    (-152.0, 0, 0, 1),
    (-138.0, 1, 0, 1),
    (-34.0, 2, 0, 1),
    (-2.0, 3, 0, 1),
    (-92.0, 0, 1, 1),
    (-92.0, 1, 1, 1),
    (-32.0, 2, 1, 1),
    (-2.0, 3, 1, 1),
    (-12.0, 0, 2, 1),
    (-10.0, 1, 2, 1),
    (-2.0, 2, 2, 1),
    (176.0, 0, 0, 2),
    (100.0, 1, 0, 2),
    (12.0, 2, 0, 2),
    (68.0, 0, 1, 2),
    (32.0, 1, 1, 2),
    (4.0, 2, 1, 2),
    (4.0, 0, 2, 2),
    (-88.0, 0, 0, 3),
    (-24.0, 1, 0, 3),
    (-16.0, 0, 1, 3),
    (16.0, 0, 0, 4),
];

/// `Σ_{d=0}^{n+1} W_d(r) g(d)` with
/// `W_d = (n−2d+1)/(n+1) C(n+1,d) (1+r)^{n+1−d}(1−r)^d / (2^{n+1} r)`.
fn sum_w(n: usize, r: f64, g: impl Fn(usize) -> Dd) -> Dd {
    let (plus, minus, rr) = (Dd::ONE + Dd::from(r), Dd::ONE - Dd::from(r), Dd::from(r));
    let scale = Dd::from((n + 1) as f64) * Dd::from(2f64.powi(n as i32 + 1)) * rr;
    let total: Dd = (0..=n + 1)
        .map(|d| {
            let c = (n as f64 + 1.0 - 2.0 * d as f64) * binomial_f64(n as i64 + 1, d as i64);
            Dd::from(c) * plus.powi((n + 1 - d) as u32) * minus.powi(d as u32) * g(d)
        })
        .sum();
    total / scale
}

fn a9(n: usize, r: f64) -> f64 {
    let lhs = sum_w(n, r, |d| Dd::from(d as f64));
    let rr = Dd::from(r);
    let rhs = (Dd::ONE - rr) * (Dd::from(n as f64) * rr - Dd::ONE) / (Dd::from(2.0) * rr);
    (lhs - rhs).abs().to_f64()
}

fn a10(n: usize, r: f64) -> f64 {
    let (plus, minus, rr) = (Dd::ONE + Dd::from(r), Dd::ONE - Dd::from(r), Dd::from(r));
    let nf = n as f64;
    let total: Dd = (-1..=n as i64 + 1)
        .map(|d| {
            let c = (nf + 1.0 - 2.0 * d as f64) * binomial_f64(n as i64 + 2, d + 1);
            // d = -1 carries (1+r)^{n+2}(1−r)^{-1}
            let pm = if d < 0 {
                plus.powi(n as u32 + 2) / minus
            } else {
                plus.powi((n as i64 + 1 - d) as u32) * minus.powi(d as u32)
            };
            Dd::from(c) * pm
        })
        .sum();
    let lhs = total / (Dd::from((nf + 1.0) * (nf + 2.0)) * Dd::from(2f64.powi(n as i32 + 1)) * rr);
    let rhs = Dd::from(2.0) * (Dd::ONE + Dd::from(2.0) * rr + Dd::from(nf) * rr)
        / (Dd::from((nf + 1.0) * (nf + 2.0)) * rr * minus);
    (lhs - rhs).abs().to_f64()
}

/// `Σ W_d (1/2−u+d)(1+d−u−n(1−r)/2)^power` against `numerator / (denominator r)`.
fn a_moment(n: usize, r: f64, u: f64, power: u32, numerator: &[Term], denominator: f64) -> f64 {
    let (rr, uu, nn) = (Dd::from(r), Dd::from(u), Dd::from(n as f64));
    let shift = nn * (Dd::ONE - rr) / Dd::from(2.0);
    let lhs = sum_w(n, r, |d| {
        let dd = Dd::from(d as f64);
        (Dd::from(0.5) - uu + dd) * (Dd::ONE + dd - uu - shift).powi(power)
    });
    let rhs = poly_dd(numerator, nn, rr, uu) / (Dd::from(denominator) * rr);
    (lhs - rhs).abs().to_f64()
}

/// `n |Σ W_d (1/2−u+d) log(1+d−u) − RHS|` with the printed leading terms.
fn a15(n: usize, r: f64, u: f64) -> f64 {
    let nf = n as f64;
    let lhs = sum_w(n, r, |d| {
        Dd::from(0.5 - u + d as f64) * Dd::from((1.0 + d as f64 - u).ln())
    })
    .to_f64();
    let rhs = (nf / 2.0 * (1.0 - r) + 1.0 - u - 0.5 / r) * (nf.ln() + (1.0 - r).ln() - std::f64::consts::LN_2)
        + 1.75
        - u
        + r / 4.0
        - 0.5 / r;
    nf * (lhs - rhs).abs()
}

/// `x (x+1) ⋯ (x+k−1)`.
fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).map(|i| x + i as f64).product()
}

/// `Γ(x+k)/Γ(x)` for an integer shift `k ≥ −1`.
fn gamma_shift(x: f64, k: i64) -> f64 {
    if k >= 0 {
        pochhammer(x, k as usize)
    } else {
        1.0 / (x - 1.0)
    }
}

/// `Γ(1+α−u)/Γ(1−u)`, the one factor of `λ_d^α` that is not a finite
/// product. It multiplies both sides of `B6`, so it is kept apart.
fn alpha_factor(u: f64, alpha: f64) -> f64 {
    (ln_gamma(1.0 + alpha - u) - ln_gamma(1.0 - u)).exp()
}

/// `λ_d^α / Γ(1+α−u) · Γ(1−u)` for `d = −1..=n+1`, where `λ_d^α` has
/// `Γ(1+α+d−u)` in place of `Γ(1+d−u)`.
///
/// Every remaining gamma ratio has an integer shift, so the values are
/// finite products: `λ_0 = 2^{−n} (2+⌈n/2⌉−u)_{⌊n/2⌋} / (5/2−u)_{⌊n/2⌋}`,
/// then `λ_{d+1}/λ_d = (1+α+d−u)/(1+n−d−u)`. Index `i` holds `d = i − 1`.
fn lambda_row(n: usize, u: f64, alpha: f64) -> Vec<f64> {
    let (m, h) = (n / 2, n - n / 2);
    let nf = n as f64;
    let l0 = pochhammer(2.0 + h as f64 - u, m) / pochhammer(2.5 - u, m) / 2f64.powi(n as i32);
    let mut row = Vec::with_capacity(n + 3);
    row.push(l0 * (2.0 + nf - u) / (alpha - u));
    row.push(l0);
    for d in 0..=n {
        let d = d as f64;
        let next = row[row.len() - 1] * (1.0 + alpha + d - u) / (1.0 + nf - d - u);
        row.push(next);
    }
    row
}

/// `(n−2d+1)² C(n+1,d)/(n+1)`.
fn level_mult(n: usize, d: usize) -> f64 {
    let k = n as f64 + 1.0 - 2.0 * d as f64;
    k * k * binomial_f64(n as i64 + 1, d as i64) / (n as f64 + 1.0)
}

/// `Σ_{d=0}^{n+1} m_d λ_d^α g(d)` without the factor [`alpha_factor`].
fn b_sum(n: usize, u: f64, alpha: f64, g: impl Fn(usize) -> f64) -> f64 {
    let lam = lambda_row(n, u, alpha);
    (0..=n + 1)
        .map(|d| level_mult(n, d) * lam[d + 1] * g(d))
        .collect::<KahanSum>()
        .total()
}

fn b3(n: usize, u: f64) -> f64 {
    (b_sum(n, u, 0.0, |_| 1.0) - 2.0).abs()
}

fn b4(n: usize, u: f64) -> f64 {
    let lam = lambda_row(n, u, 0.0);
    let lhs: KahanSum = (1..=n + 1)
        .map(|d| {
            let k = n as f64 + 1.0 - 2.0 * d as f64;
            k * k * binomial_f64(n as i64, d as i64 - 1) * lam[d + 1]
        })
        .collect();
    (lhs.total() - (n as f64 + 1.0)).abs()
}

fn b5(n: usize, u: f64) -> f64 {
    let nf = n as f64;
    let lam = lambda_row(n, u, 0.0);
    let lhs: KahanSum = (-1..=n as i64 + 1)
        .map(|d| {
            let k = nf + 1.0 - 2.0 * d as f64;
            k * k * binomial_f64(n as i64 + 2, d + 1) / ((nf + 1.0) * (nf + 2.0)) * lam[(d + 1) as usize]
        })
        .collect();
    let rhs = 2.0 * (nf + 3.0) * (2.0 * u - 3.0) / ((nf + 1.0) * (nf + 2.0) * u);
    (lhs.total() - rhs).abs()
}

/// `B6` residual; both sides share [`alpha_factor`], applied once.
fn b6(n: usize, u: f64, alpha: f64) -> f64 {
    let lhs = b_sum(n, u, alpha, |d| d as f64 - u + 0.5);
    alpha_factor(u, alpha) * (lhs - b6_rhs_reduced(n, u, alpha)).abs()
}

/// Closed form of `Σ m_d λ_d^α (d−u+1/2)`.
#[cfg(test)]
pub(super) fn b6_rhs(n: usize, u: f64, alpha: f64) -> f64 {
    alpha_factor(u, alpha) * b6_rhs_reduced(n, u, alpha)
}

/// `P Γ(5−2u)Γ(3+α+n−2u)Γ(1+α−u) / (4Γ(5+α−2u)Γ(4+n−2u)Γ(3−u))` over
/// `Γ(1+α−u)/Γ(1−u)`; the gamma ratios left have integer shifts.
fn b6_rhs_reduced(n: usize, u: f64, alpha: f64) -> f64 {
    let ratio = gamma_shift(5.0 + alpha - 2.0 * u, n as i64 - 2) / gamma_shift(5.0 - 2.0 * u, n as i64 - 1);
    poly(&B6_POLY, alpha, n as f64, u) * ratio / (4.0 * (1.0 - u) * (2.0 - u))
}

/// Closed form of `Σ m_d λ_d (d−u+1/2) ψ(1+d−u)`.
pub(super) fn b7_rhs(n: usize, u: f64) -> f64 {
    let nf = n as f64;
    let num = 32.0 + 33.0 * nf + 7.0 * nf * nf - 69.0 * u - 46.0 * nf * u - 5.0 * nf * nf * u + 50.0 * u * u
        + 16.0 * nf * u * u
        - 12.0 * u * u * u;
    num / (2.0 * (2.0 - u) * (1.0 - u) * (3.0 + nf - 2.0 * u))
        + (nf + 2.0 - 2.0 * u) * (psi(1.0 - u) + psi(nf + 3.0 - 2.0 * u) - psi(5.0 - 2.0 * u))
}

fn b7(n: usize, u: f64) -> f64 {
    let lhs = b_sum(n, u, 0.0, |d| (d as f64 - u + 0.5) * psi(1.0 + d as f64 - u));
    (lhs - b7_rhs(n, u)).abs()
}

/// `n^{1−u} |Σ m_d λ_d (d−u+1/2) log(1+d−u) − RHS|`.
fn b8(n: usize, u: f64) -> f64 {
    let nf = n as f64;
    let ln_n = nf.ln();
    let lhs = b_sum(n, u, 0.0, |d| (d as f64 - u + 0.5) * (1.0 + d as f64 - u).ln());
    let q = 2.0 * (2.0 - u) * (1.0 - u);
    let rhs = nf * (ln_n + (7.0 - 5.0 * u) / q - psi(5.0 - 2.0 * u) + psi(1.0 - u))
        + (2.0 - 2.0 * u) * ln_n
        + (26.0 - 46.0 * u + 25.0 * u * u - 4.0 * u * u * u) / q
        + (-2.0 + 2.0 * u) * psi(5.0 - 2.0 * u)
        + (2.0 - 2.0 * u) * psi(1.0 - u);
    nf.powf(1.0 - u) * (lhs - rhs).abs()
}

/// Triple sum over `(s, j, k)` whose value is independent of `z`.
fn e37(n: usize, d: usize, r: f64, z: f64) -> f64 {
    let (rr, zz) = (Dd::from(r), Dd::from(z));
    let (zp, zm, q) = (Dd::ONE + zz, Dd::ONE - zz, rr * rr - zz * zz);
    let pows = |b: Dd| {
        let mut v = vec![Dd::ONE; n + 1];
        for i in 1..=n {
            v[i] = v[i - 1] * b;
        }
        v
    };
    let (pp, pm, pq) = (pows(zp), pows(zm), pows(q));
    let mut lhs = Dd::ZERO;
    for s in d..=n - d {
        for j in 0..=d {
            for k in j..=s {
                let c = binomial_f64(d as i64, j as i64)
                    * binomial_f64((s - d) as i64, (k - j) as i64)
                    * binomial_f64((n - s - d) as i64, (k - j) as i64);
                if c == 0.0 || k > n - s {
                    continue;
                }
                let c = if j % 2 == 1 { -c } else { c };
                lhs = lhs + Dd::from(c) * pp[s - k] * pq[k] * pm[n - s - k];
            }
        }
    }
    let (plus, minus) = (Dd::ONE + rr, Dd::ONE - rr);
    let rhs = (plus.powi((n + 1 - d) as u32) * minus.powi(d as u32)
        - plus.powi(d as u32) * minus.powi((n + 1 - d) as u32))
        / (Dd::from(2.0) * rr);
    (lhs - rhs).abs().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(n: usize, r: f64, u: f64) -> IdentityParams {
        IdentityParams { n, r, u, ..IdentityParams::default() }
    }

    #[test]
    fn worked_examples() {
        assert!(identity_check(Identity::A8, &at(9, 0.37, 0.0)).unwrap() <= 1e-12);
        assert!(identity_check(Identity::B3, &at(12, 0.5, 0.3)).unwrap() <= 1e-12);
        let p = IdentityParams { n: 8, d: 2, r: 0.5, z: 0.2, ..IdentityParams::default() };
        assert!(identity_check(Identity::E37, &p).unwrap() <= 1e-11);
    }

    #[test]
    fn exact_family_at_roundoff() {
        for &(n, r, u) in &[(1, 0.5, 0.15), (9, 0.37, 0.3), (20, 0.05, -1.5), (20, 0.93, 0.9), (40, 0.01, 0.5)] {
            for id in Identity::EXACT {
                let p = IdentityParams { n, r, u, alpha: 0.7, d: n / 3, z: 0.3 * r };
                let res = identity_check(id, &p).unwrap();
                assert!(res <= 1e-11, "{id} at n={n} r={r} u={u}: {res:e}");
            }
        }
    }

    #[test]
    fn negative_level_term_of_b5() {
        // λ_{-1} carries Γ(−u), negative for 0 < u < 1
        assert!(lambda_row(5, 0.4, 0.0)[0] < 0.0);
        assert!(lambda_row(5, -0.4, 0.0)[0] > 0.0);
        assert!(identity_check(Identity::B5, &at(5, 0.5, 0.0)).is_err());
    }

    #[test]
    fn product_eigenvalues_match_gamma_form() {
        for &(n, u) in &[(1, 0.0), (6, 0.5), (13, -1.2), (40, 0.9)] {
            let row = lambda_row(n, u, 0.0);
            for d in 0..=n + 1 {
                let want = crate::spectrum::eigenvalue(n, u, d).unwrap();
                assert!((row[d + 1] / want - 1.0).abs() < 1e-12, "n={n} u={u} d={d}");
            }
        }
        // with α the row is λ_d^α divided by Γ(1+α−u)/Γ(1−u)
        let (n, u, alpha) = (9, 0.3, 1.7);
        let row = lambda_row(n, u, alpha);
        for d in 0..=n + 1 {
            let nf = n as f64;
            let ln = -nf * std::f64::consts::LN_2 + ln_gamma(2.5 - u) + ln_gamma(2.0 + nf - d as f64 - u)
                + ln_gamma(1.0 + alpha + d as f64 - u)
                - ln_gamma(2.5 + nf / 2.0 - u)
                - ln_gamma(2.0 + nf / 2.0 - u)
                - ln_gamma(1.0 - u);
            assert!((alpha_factor(u, alpha) * row[d + 1] / ln.exp() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn b6_reduces_to_first_moment() {
        // α = 0 makes λ^α the ordinary eigenvalue
        let n = 7;
        let u = 0.25;
        let direct = b_sum(n, u, 0.0, |d| d as f64 - u + 0.5);
        assert!((direct - b6_rhs(n, u, 0.0)).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_gaps_stay_bounded() {
        let mut prev = None;
        for n in [10, 20, 40] {
            let g = identity_check(Identity::A15, &at(n, 0.4, 0.2)).unwrap();
            let h = identity_check(Identity::B8, &at(n, 0.4, 0.2)).unwrap();
            assert!(g.is_finite() && g < 5.0 && h < 5.0, "n={n}: a15 {g}, B8 {h}");
            if let Some((g0, h0)) = prev {
                let (g0, h0): (f64, f64) = (g0, h0);
                assert!(g / g0 < 3.0 && g0 / g < 3.0);
                assert!(h / h0 < 3.0 && h0 / h < 3.0);
            }
            prev = Some((g, h));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(identity_check(Identity::A8, &at(0, 0.3, 0.0)).is_err());
        assert!(identity_check(Identity::A8, &at(41, 0.3, 0.0)).is_err());
        assert!(identity_check(Identity::A9, &at(5, 1.0, 0.0)).is_err());
        assert!(identity_check(Identity::B3, &at(5, 0.3, 1.0)).is_err());
        let p = IdentityParams { alpha: -0.9, u: 0.5, ..IdentityParams::default() };
        assert!(identity_check(Identity::B6, &p).is_err());
        assert!("b9".parse::<Identity>().is_err());
        assert_eq!("E37".parse::<Identity>().unwrap(), Identity::E37);
    }
}
