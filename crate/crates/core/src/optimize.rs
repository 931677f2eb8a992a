//! Choosing the prior parameter `u`: the minimax sequence `u_n`, the
//! maximin root of the Bayes constant, the scan over the Bloch radius for the
//! worst-case state, and the optimality of the Bayes mixture.

use rayon::prelude::*;

use crate::error::{check_u, domain, Error, Result};
use crate::export::Table;
use crate::linalg::Matrix;
use crate::qstate::{relative_entropy, DensityMatrix};
use crate::redundancy::{bayes_constant, relative_entropy_exact};
use crate::specfun::psi1;

/// Interval searched for `u_n`.
pub const MINIMAX_RANGE: (f64, f64) = (-8.0, 0.999);
/// Scan points used to bracket roots.
pub const SCAN_POINTS: usize = 512;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_WIDTH: f64 = 1e-12;

/// Every root of `g` on the scan grid, refined by bisection.
///
/// The grid is uniform in `log(1 − u)`, which packs points toward `u = 1`
/// where the redundancies change fastest.
fn scan_roots(g: &(impl Fn(f64) -> Result<f64> + Sync), lo: f64, hi: f64) -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    let (a, b) = ((1.0 - lo).ln(), (1.0 - hi).ln());
    let trace: Vec<(f64, f64)> = (0..SCAN_POINTS)
        .into_par_iter()
        .map(|i| {
            let t = a + (b - a) * i as f64 / (SCAN_POINTS - 1) as f64;
            let u = if i == SCAN_POINTS - 1 { hi } else { 1.0 - t.exp() };
            g(u).map(|v| (u, v))
        })
        .collect::<Result<_>>()?;
    let mut brackets = Vec::new();
    for w in trace.windows(2) {
        let ((u0, g0), (u1, g1)) = (w[0], w[1]);
        if g0 == 0.0 {
            brackets.push((u0, u0));
        } else if g0.signum() != g1.signum() && g1 != 0.0 {
            brackets.push(bisect(g, u0, u1, g0)?);
        }
    }
    if let Some(&(u, v)) = trace.last() {
        if v == 0.0 {
            brackets.push((u, u));
        }
    }
    Ok((brackets, trace))
}

fn bisect(g: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut g_lo: f64) -> Result<(f64, f64)> {
    while hi - lo > ROOT_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok((mid, mid));
        }
        if gm.signum() == g_lo.signum() {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    pub n: usize,
    pub u_n: f64,
    /// Common redundancy `S_{r=0} = S_{r=1}` at `u_n`.
    pub value: f64,
    pub bracket: (f64, f64),
    /// All crossings found by the scan, increasing; `u_n` is the first.
    pub roots: Vec<f64>,
}

/// `g(u) = S_{r=0}(n, u) − S_{r=1}(n, u)`.
pub fn minimax_gap(n: usize, u: f64) -> Result<f64> {
    Ok(relative_entropy_exact(n, u, 0.0)? - relative_entropy_exact(n, u, 1.0)?)
}

/// The `u` at which the center and pure-state redundancies coincide.
pub fn minimax_u(n: usize) -> Result<MinimaxResult> {
    if n == 0 {
        return domain("minimax_u needs n >= 1");
    }
    let g = |u| minimax_gap(n, u);
    let (brackets, trace) = scan_roots(&g, MINIMAX_RANGE.0, MINIMAX_RANGE.1)?;
    let Some(&bracket) = brackets.first() else {
        return Err(Error::Search { message: format!("g(u) keeps one sign on [-8, 0.999] for n = {n}"), trace });
    };
    let u_n = 0.5 * (bracket.0 + bracket.1);
    Ok(MinimaxResult {
        n,
        u_n,
        value: relative_entropy_exact(n, u_n, 0.0)?,
        bracket,
        roots: brackets.iter().map(|b| 0.5 * (b.0 + b.1)).collect(),
    })
}

/// Columns `n,u_n,value,roots`.
pub fn minimax_table(ns: &[usize]) -> Result<Table> {
    let mut t = Table::new(&["n", "u_n", "value", "roots"]);
    for &n in ns {
        let m = minimax_u(n)?;
        t.push(vec![n.into(), m.u_n.into(), m.value.into(), m.roots.len().into()]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximinResult {
    pub u_star: f64,
    /// `C(u_star)`.
    pub constant: f64,
    pub equation_residual: f64,
}

/// `2(1−u)³(ψ′(1−u) − ψ′(5/2−u)) − 1`; zero where `C′(u) = 0`.
pub fn maximin_equation(u: f64) -> Result<f64> {
    check_u(u)?;
    let v = 1.0 - u;
    Ok(2.0 * v * v * v * (psi1(v) - psi1(2.5 - u)) - 1.0)
}

/// The stationary point of the Bayes constant `C(u)` on `(0, 1)`.
pub fn maximin_u() -> Result<MaximinResult> {
    let (brackets, trace) = scan_roots(&maximin_equation, 0.0, 0.999)?;
    let Some(&(lo, hi)) = brackets.first() else {
        return Err(Error::Search { message: "maximin equation has no root in (0, 1)".into(), trace });
    };
    let u_star = 0.5 * (lo + hi);
    Ok(MaximinResult { u_star, constant: bayes_constant(u_star)?, equation_residual: maximin_equation(u_star)?.abs() })
}

/// Outcome of [`rmax_scan`]. `profile` holds `(r, S)` on the uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusScan {
    pub n: usize,
    pub u: f64,
    pub argmax_r: f64,
    pub max_value: f64,
    pub profile: Vec<(f64, f64)>,
}

impl RadiusScan {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["r", "relative_entropy"]);
        for &(r, s) in &self.profile {
            t.push(vec![r.into(), s.into()]);
        }
        t
    }
}

pub const MIN_SCAN_GRID: usize = 64;

/// Worst-case radius for `ζ_n(u)`: uniform grid, then golden section in the
/// cells adjacent to the best grid point.
pub fn rmax_scan(n: usize, u: f64, grid: usize) -> Result<RadiusScan> {
    check_u(u)?;
    if grid < MIN_SCAN_GRID {
        return domain(format!("rmax_scan needs grid >= {MIN_SCAN_GRID}, got {grid}"));
    }
    let s = |r: f64| relative_entropy_exact(n, u, r);
    let profile: Vec<(f64, f64)> = (0..=grid)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 / grid as f64;
            s(r).map(|v| (r, v))
        })
        .collect::<Result<_>>()?;
    let best = (0..=grid).max_by(|&a, &b| profile[a].1.total_cmp(&profile[b].1)).unwrap_or(0);
    let (mut argmax_r, mut max_value) = profile[best];
    let lo = profile[best.saturating_sub(1)].0;
    let hi = profile[(best + 1).min(grid)].0;
    let (r, v) = golden_max(&s, lo, hi)?;
    // flat maxima at the endpoints must not drift on roundoff
    if v > max_value + 1e-12 * max_value.abs().max(1.0) {
        argmax_r = r;
        max_value = v;
    }
    Ok(RadiusScan { n, u, argmax_r, max_value, profile })
}

fn golden_max(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-10 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let r = 0.5 * (a + b);
    Ok((r, f(r)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityCheck {
    /// `Σ wᵢ S(Pᵢ, Q) − Σ wᵢ S(Pᵢ, m)` with `m = Σ wᵢ Pᵢ`.
    pub gap: f64,
    /// `S(m, Q)`, which the gap must equal.
    pub s_mq: f64,
}

/// Compares the average redundancy of `Q` with that of the mixture itself.
pub fn bayes_optimality_check(states: &[DensityMatrix], weights: &[f64], q: &DensityMatrix) -> Result<OptimalityCheck> {
    if states.is_empty() || states.len() != weights.len() {
        return domain(format!("{} states with {} weights", states.len(), weights.len()));
    }
    if weights.iter().any(|&w| !(w >= 0.0)) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return domain("weights must be a probability vector");
    }
    let dim = q.dim();
    if states.iter().any(|p| p.dim() != dim) {
        return domain("states and Q must share one dimension");
    }
    let mixture = states
        .iter()
        .zip(weights)
        .fold(Matrix::zeros(dim, dim), |acc, (p, &w)| acc.add(&p.matrix().scaled(w)));
    let m = DensityMatrix::trusted(mixture);
    let mut gap = 0.0;
    for (p, &w) in states.iter().zip(weights) {
        if w > 0.0 {
            gap += w * (relative_entropy(p, q)? - relative_entropy(p, &m)?);
        }
    }
    Ok(OptimalityCheck { gap, s_mq: relative_entropy(&m, q)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{density_from_bloch, BlochVector};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    #[test]
    fn minimax_crossings() {
        let mut prev = f64::INFINITY;
        for n in [4, 8, 32, 128] {
            let m = minimax_u(n).unwrap();
            assert_eq!(m.roots.len(), 1, "n={n}: {:?}", m.roots);
            assert!(minimax_gap(n, m.u_n).unwrap().abs() <= 1e-10);
            let dist = (m.u_n - 0.5).abs();
            assert!(dist < prev, "n={n}: u_n = {}", m.u_n);
            prev = dist;
        }
        assert!((minimax_u(4).unwrap().u_n - 0.9124).abs() < 1e-3);
        assert!(minimax_u(0).is_err());
    }

    #[test]
    fn maximin_root() {
        let m = maximin_u().unwrap();
        assert!((m.u_star - 0.531267).abs() < 1e-5);
        assert!((m.constant + 1.77185).abs() < 1e-4);
        assert!(m.equation_residual <= 1e-10);
        let h = 1e-5;
        let slope = (bayes_constant(m.u_star + h).unwrap() - bayes_constant(m.u_star - h).unwrap()) / (2.0 * h);
        assert!(slope.abs() <= 1e-6);
        assert!(m.constant > bayes_constant(0.5).unwrap());
    }

    #[test]
    fn maximin_is_grid_argmax() {
        let step = 1e-4;
        let best = (0..9990)
            .map(|i| i as f64 * step)
            .max_by(|a, b| bayes_constant(*a).unwrap().total_cmp(&bayes_constant(*b).unwrap()))
            .unwrap();
        assert!((best - maximin_u().unwrap().u_star).abs() <= step);
    }

    #[test]
    fn worst_radius_sits_at_an_endpoint() {
        assert_eq!(rmax_scan(8, 0.4, 64).unwrap().argmax_r, 1.0);
        assert_eq!(rmax_scan(8, 0.9, 64).unwrap().argmax_r, 0.0);
        let s = rmax_scan(5, 0.0, 100).unwrap();
        assert_eq!(s.profile.len(), 101);
        assert_eq!(s.to_table().to_csv().lines().count(), 102);
        assert!(rmax_scan(5, 0.0, 10).is_err());
    }

    #[test]
    fn two_state_example() {
        let p1 = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let p2 = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        let q = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
        let c = bayes_optimality_check(&[p1.clone(), p2.clone()], &[0.5, 0.5], &q).unwrap();
        assert!((c.gap - 0.1438410).abs() < 1e-7);
        assert!((c.gap - c.s_mq).abs() < 1e-12);
        let m = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let c = bayes_optimality_check(&[p1, p2], &[0.5, 0.5], &m).unwrap();
        assert!(c.gap.abs() < 1e-12);
    }

    fn random_state(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
        let a = Matrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let p = a.matmul(&a.adjoint());
        let t = p.trace().re;
        DensityMatrix::new(p.scaled(1.0 / t)).unwrap()
    }

    #[test]
    fn random_mixtures() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let dim = [2, 4, 8][rng.gen_range(0..3)];
            let k = rng.gen_range(1..=4);
            let states: Vec<_> = (0..k).map(|_| random_state(&mut rng, dim)).collect();
            let mut w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= total);
            let q = random_state(&mut rng, dim);
            let c = bayes_optimality_check(&states, &w, &q).unwrap();
            assert!((c.gap - c.s_mq).abs() <= 1e-9 && c.gap >= -1e-10);
        }
        let p = density_from_bloch(BlochVector::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        let q = density_from_bloch(BlochVector::new(0.0, 0.0, -1.0).unwrap()).unwrap();
        assert!(matches!(bayes_optimality_check(&[p], &[1.0], &q), Err(Error::InfiniteDivergence)));
    }
}
