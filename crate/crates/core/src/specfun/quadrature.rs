//! Double-exponential (tanh-sinh) and Gauss–Legendre quadrature.
//!
//! The tanh-sinh rule hands the integrand the distances to both endpoints
//! alongside the abscissa. Near `r = 1` the complement `1 - r` underflows
//! gracefully instead of cancelling, so factors like `(1 - r²)^(-u)` with
//! `u` close to 1 are evaluated to full relative precision.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};

/// Refinement levels after the unit-step level; level `k` uses step `2^-k`.
pub const MAX_LEVEL: usize = 12;

/// Absolute target for [`integrate_radial`].
pub const RADIAL_TOLERANCE: f64 = 1e-13;

/// Largest `|π/2 · sinh t|` sampled. Keeps `cosh²` finite and the endpoint
/// complement `≈ 2e^{-2y}` above the normal range.
const Y_MAX: f64 = 350.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    /// Number of refinement levels actually used.
    pub levels: usize,
    pub evaluations: usize,
}

/// One abscissa of the tanh-sinh rule on `[a, b]`.
#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    from_a: f64,
    to_b: f64,
    weight: f64,
}

fn node(t: f64, a: f64, b: f64) -> Node {
    let half = 0.5 * (b - a);
    let y = FRAC_PI_2 * t.sinh();
    let ch = y.cosh();
    let weight = half * FRAC_PI_2 * t.cosh() / (ch * ch);
    // 1 ∓ tanh y = e^{∓y} / cosh y, exact in relative terms
    if t >= 0.0 {
        let to_b = half * (-y).exp() / ch;
        Node { x: b - to_b, from_a: (b - a) - to_b, to_b, weight }
    } else {
        let from_a = half * y.exp() / ch;
        Node { x: a + from_a, from_a, to_b: (b - a) - from_a, weight }
    }
}

fn t_max() -> f64 {
    (Y_MAX / FRAC_PI_2).asinh()
}

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// `f` receives `(x, x - a, b - x)`. The step is halved until the
/// Richardson-style error prediction `d₁²/d₂` (quadratic convergence of
/// successive differences) drops under `tol`, or the level cap is hit, in
/// which case an accuracy error carries the best estimate.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64, f64, f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return domain(format!("tanh_sinh needs a finite interval a < b, got [{a}, {b}]"));
    }
    let tmax = t_max();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut evaluations = 0;
    let mut add = |t: f64, sum: &mut f64, abs_sum: &mut f64| -> Result<()> {
        let nd = node(t, a, b);
        if nd.weight == 0.0 || nd.from_a <= 0.0 || nd.to_b <= 0.0 {
            return Ok(());
        }
        let term = nd.weight * f(nd.x, nd.from_a, nd.to_b);
        evaluations += 1;
        if !term.is_finite() {
            return Err(Error::Accuracy {
                message: format!("integrand not finite at x = {}", nd.x),
                estimate: f64::NAN,
            });
        }
        *sum += term;
        *abs_sum += term.abs();
        Ok(())
    };

    // level 0: integer abscissae
    add(0.0, &mut sum, &mut abs_sum)?;
    let mut k = 1.0;
    while k <= tmax {
        add(k, &mut sum, &mut abs_sum)?;
        add(-k, &mut sum, &mut abs_sum)?;
        k += 1.0;
    }
    let mut history = vec![sum];
    let mut h = 1.0;
    let mut error_estimate = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut j = 1.0;
        while j * h <= tmax {
            add(j * h, &mut sum, &mut abs_sum)?;
            add(-j * h, &mut sum, &mut abs_sum)?;
            j += 2.0;
        }
        let value = h * sum;
        history.push(value);
        let d1 = (value - history[level - 1]).abs();
        let roundoff = 16.0 * f64::EPSILON * h * abs_sum;
        error_estimate = if level >= 2 {
            let d2 = (history[level - 1] - history[level - 2]).abs();
            if d2 > 0.0 && d1 < d2 { d1 * d1 / d2 } else { d1 }
        } else {
            d1
        }
        .max(roundoff);
        if (level >= 3 && error_estimate <= tol) || (level >= 2 && d1 <= roundoff) {
            return Ok(Quadrature { value, error_estimate, levels: level, evaluations });
        }
    }
    Err(Error::Accuracy {
        message: format!(
            "tanh-sinh did not reach {tol:e} within {MAX_LEVEL} levels (error estimate {error_estimate:e})"
        ),
        estimate: *history.last().expect("non-empty"),
    })
}

/// `∫₀¹ f(r) dr` for an integrand without endpoint singularities worse than
/// what tanh-sinh absorbs.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> Result<f64> {
    tanh_sinh(|x, _, _| f(x), a, b, RADIAL_TOLERANCE).map(|q| q.value)
}

/// `∫₀¹ f(r) (1 - r²)^(-u) dr` for `u < 1`.
///
/// The weight is formed from the exact complement `1 - r`, so the
/// integrable endpoint singularity for `0 < u < 1` needs no special case.
pub fn integrate_radial<F: FnMut(f64) -> f64>(f: F, u: f64) -> Result<f64> {
    integrate_radial_detailed(f, u, RADIAL_TOLERANCE).map(|q| q.value)
}

pub fn integrate_radial_detailed<F: FnMut(f64) -> f64>(
    mut f: F,
    u: f64,
    tol: f64,
) -> Result<Quadrature> {
    radial_with_complement(|r, _| f(r), u, tol)
}

/// As [`integrate_radial`], but `f` also receives the exact `1 - r`, for
/// integrands with their own logarithmic or power behaviour at `r = 1`.
pub fn integrate_radial_complement<F: FnMut(f64, f64) -> f64>(f: F, u: f64) -> Result<f64> {
    radial_with_complement(f, u, RADIAL_TOLERANCE).map(|q| q.value)
}

fn radial_with_complement<F: FnMut(f64, f64) -> f64>(mut f: F, u: f64, tol: f64) -> Result<Quadrature> {
    if !(u < 1.0) {
        return domain(format!("integrate_radial requires u < 1, got {u}"));
    }
    tanh_sinh(
        |r, _, one_minus_r| {
            let w = if u == 0.0 { 1.0 } else { (one_minus_r * (1.0 + r)).powf(-u) };
            f(r, one_minus_r) * w
        },
        0.0,
        1.0,
        tol,
    )
}

/// A fixed radial rule: nodes on `(0, 1)` with weights that already include
/// `(1 - r²)^(-u)`. Used where many vector- or matrix-valued integrands share
/// one set of abscissae.
#[derive(Debug, Clone)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialRule {
    /// Tanh-sinh nodes at step `2^-level`.
    pub fn tanh_sinh(u: f64, level: u32) -> Result<Self> {
        if !(u < 1.0) {
            return domain(format!("radial rule requires u < 1, got {u}"));
        }
        let h = 0.5f64.powi(level as i32);
        let tmax = t_max();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut k = -(tmax / h).floor();
        while k * h <= tmax {
            let nd = node(k * h, 0.0, 1.0);
            k += 1.0;
            if nd.weight == 0.0 || nd.from_a <= 0.0 || nd.to_b <= 0.0 {
                continue;
            }
            let w = h * nd.weight * (nd.to_b * (1.0 + nd.x)).powf(-u);
            if w == 0.0 {
                continue;
            }
            nodes.push(nd.x);
            weights.push(w);
        }
        Ok(Self { nodes, weights })
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, exact for polynomials of
/// degree `< 2n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // three-term recurrence for P_n and P_n'
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::super::gamma::ln_gamma;
    use super::*;

    /// `∫₀¹ r^m (1-r²)^(-u) dr = Γ((m+1)/2) Γ(1-u) / (2 Γ((m+3)/2 - u))`
    fn beta_integral(m: u32, u: f64) -> f64 {
        let m = m as f64;
        (ln_gamma((m + 1.0) / 2.0) + ln_gamma(1.0 - u) - ln_gamma((m + 3.0) / 2.0 - u)).exp() / 2.0
    }

    #[test]
    fn constant_and_quarter_pi() {
        assert!((integrate_radial(|_| 1.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let v = integrate_radial(|r| r * r, 0.5).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-12, "{v}");
    }

    #[test]
    fn reproduces_beta_integral_grid() {
        for m in 0..=12 {
            for u in [-2.0, -0.5, 0.0, 0.5, 0.9] {
                let got = integrate_radial(|r| r.powi(m as i32), u).unwrap();
                let want = beta_integral(m, u);
                assert!((got - want).abs() <= 1e-10, "m={m} u={u}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn strong_singularity_still_accurate() {
        let got = integrate_radial(|r| r * r, 0.95).unwrap();
        assert!((got - beta_integral(2, 0.95)).abs() < 1e-10);
    }

    #[test]
    fn rejects_u_at_least_one() {
        assert!(matches!(integrate_radial(|_| 1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in 1..=20 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn fixed_radial_rule_matches_adaptive() {
        let rule = RadialRule::tanh_sinh(0.5, 6).unwrap();
        let got = rule.integrate(|r| r.powi(4));
        assert!((got - beta_integral(4, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn plain_interval() {
        let got = integrate(|x| x.exp(), 0.0, 2.0).unwrap();
        assert!((got - (2f64.exp() - 1.0)).abs() < 1e-12);
    }
}
