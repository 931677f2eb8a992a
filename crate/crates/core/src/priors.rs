//! Densities on the Bloch ball.
//!
//! Two volume conventions are in play and are never mixed implicitly:
//! [`q_density`] and [`RadialPrior::density`] are per Cartesian volume
//! `dx dy dz`; [`kubo_mori_density`] and [`monotone_volume`] are per
//! `dr dϑ dφ`. [`to_spherical`] and [`to_cartesian`] convert between them.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_u, domain, Error, Result};
use crate::specfun::{integrate_radial_complement, ln_gamma};

fn check_radius(r: f64, closed: bool) -> Result<()> {
    let ok = if closed { (0.0..=1.0).contains(&r) } else { (0.0..1.0).contains(&r) };
    if ok {
        Ok(())
    } else {
        domain(format!("radius {r} outside [0, 1{}", if closed { "]" } else { ")" }))
    }
}

/// `Γ(5/2−u) / (π^{3/2} Γ(1−u))`, the normalizer of `q(u)`.
fn q_normalizer(u: f64) -> f64 {
    (ln_gamma(2.5 - u) - ln_gamma(1.0 - u) - 1.5 * PI.ln()).exp()
}

/// `q(u)` at radius `r`, per Cartesian volume.
///
/// `r = 1` is accepted for `u <= 0`, where the density stays finite.
pub fn q_density(u: f64, r: f64) -> Result<f64> {
    check_u(u)?;
    check_radius(r, u <= 0.0)?;
    let one_minus_r2 = (1.0 - r) * (1.0 + r);
    Ok(q_normalizer(u) * one_minus_r2.powf(-u))
}

/// Normalized Kubo–Mori family, per `dr dϑ dφ`.
pub fn kubo_mori_density(u: f64, r: f64, theta: f64) -> Result<f64> {
    check_u(u)?;
    check_radius(r, false)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let log_ratio = 2.0 * r.atanh();
    let k = (1.0 - u) / (3.0 - 2.0 * u) * q_normalizer(u);
    Ok(k * r * log_ratio * theta.sin() * ((1.0 - r) * (1.0 + r)).powf(-u))
}

/// Per-Cartesian density to per-`(dr dϑ dφ)` density.
pub fn to_spherical(density: f64, r: f64, theta: f64) -> f64 {
    density * r * r * theta.sin()
}

/// Per-`(dr dϑ dφ)` density to per-Cartesian density; undefined at `r = 0`
/// and on the polar axis.
pub fn to_cartesian(density: f64, r: f64, theta: f64) -> f64 {
    density / (r * r * theta.sin())
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type RadialFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A function `f` on `(0, ∞)` with `f(1) = 1` and `f(t) = t f(1/t)`,
/// checked on a logarithmic grid.
#[derive(Clone)]
pub struct MonotoneFunction {
    name: String,
    f: RealFn,
}

impl fmt::Debug for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneFunction").field("name", &self.name).finish()
    }
}

const VALIDATION_TOLERANCE: f64 = 1e-10;

impl MonotoneFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let name = name.into();
        let at_one = f(1.0);
        if !((at_one - 1.0).abs() <= VALIDATION_TOLERANCE) {
            return Err(Error::Contract(format!("{name}: f(1) = {at_one}, expected 1")));
        }
        for k in -60..=60 {
            let t = 10f64.powf(k as f64 / 20.0);
            let (a, b) = (f(t), t * f(1.0 / t));
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::Contract(format!("{name}: f({t}) = {a} is not positive")));
            }
            if !((a - b).abs() <= VALIDATION_TOLERANCE * a.abs().max(1.0)) {
                return Err(Error::Contract(format!("{name}: f({t}) = {a} but t f(1/t) = {b}")));
            }
        }
        Ok(Self { name, f: Arc::new(f) })
    }

    /// `(1 + t) / 2`: symmetric logarithmic derivative.
    pub fn sld() -> Self {
        Self::new("sld", |t| (1.0 + t) / 2.0).expect("valid")
    }

    /// `(t − 1) / log t`: Kubo–Mori / Bogoliubov.
    pub fn kubo_mori() -> Self {
        Self::new("kubo-mori", |t: f64| {
            let x = t - 1.0;
            if x.abs() < 1e-5 {
                // series of x / log(1 + x)
                1.0 + x / 2.0 - x * x / 12.0 + x * x * x / 24.0
            } else {
                x / t.ln()
            }
        })
        .expect("valid")
    }

    /// `t^{t/(1+t)}`: the function whose volume element reproduces the
    /// interior asymptotic redundancy through the classical formula.
    pub fn asymptotic_match() -> Self {
        Self::new("asymptotic-match", |t: f64| if t == 0.0 { 1.0 } else { (t / (1.0 + t) * t.ln()).exp() })
            .expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

/// Unnormalized monotone-metric volume element, per `dr dϑ dφ`:
/// `r² sin ϑ / (f((1−r)/(1+r)) √(1−r²) (1+r))`.
pub fn monotone_volume(f: &MonotoneFunction, r: f64, theta: f64) -> Result<f64> {
    check_radius(r, false)?;
    Ok(r * r * theta.sin() * monotone_radial_factor(f, r))
}

fn monotone_radial_factor(f: &MonotoneFunction, r: f64) -> f64 {
    let t = (1.0 - r) / (1.0 + r);
    1.0 / (f.eval(t) * ((1.0 - r) * (1.0 + r)).sqrt() * (1.0 + r))
}

/// Family `q(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuPrior {
    u: f64,
}

impl QuPrior {
    pub fn new(u: f64) -> Result<Self> {
        check_u(u)?;
        Ok(Self { u })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn density(&self, r: f64) -> Result<f64> {
        q_density(self.u, r)
    }

    pub fn radial(&self) -> RadialPrior {
        RadialPrior::q(self.u).expect("u validated")
    }
}

/// A spherically symmetric density on the ball, per Cartesian volume:
/// `w(r) = c · g(r) · (1 − r²)^{−u}`.
///
/// The power singularity is kept apart from `g` so radial integrals go
/// through the endpoint-aware quadrature. `g` is called as `g(r, 1 − r)`
/// with an exact complement, so logarithmic factors at `r = 1` are safe.
#[derive(Clone)]
pub struct RadialPrior {
    name: String,
    smooth: RadialFn,
    exponent: f64,
    normalization: f64,
}

impl fmt::Debug for RadialPrior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialPrior")
            .field("name", &self.name)
            .field("exponent", &self.exponent)
            .field("normalization", &self.normalization)
            .finish()
    }
}

impl RadialPrior {
    /// Normalizes `g(r) (1 − r²)^{−exponent}` numerically.
    pub fn new(
        name: impl Into<String>,
        smooth: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        exponent: f64,
    ) -> Result<Self> {
        check_u(exponent)?;
        let mut prior = Self { name: name.into(), smooth: Arc::new(smooth), exponent, normalization: 1.0 };
        let mass = prior.mass()?;
        if !(mass > 0.0 && mass.is_finite()) {
            return domain(format!("{}: total mass {mass} cannot be normalized", prior.name));
        }
        prior.normalization = 1.0 / mass;
        Ok(prior)
    }

    pub fn q(u: f64) -> Result<Self> {
        check_u(u)?;
        Ok(Self { name: format!("q({u})"), smooth: Arc::new(|_, _| 1.0), exponent: u, normalization: q_normalizer(u) })
    }

    /// The Kubo–Mori family converted to a per-Cartesian radial density.
    pub fn kubo_mori(u: f64) -> Result<Self> {
        check_u(u)?;
        let c = (1.0 - u) / (3.0 - 2.0 * u) * q_normalizer(u);
        // log((1+r)/(1-r)) / r
        let smooth = |r: f64, c: f64| if r == 0.0 { 2.0 } else { (r.ln_1p() - c.ln()) / r };
        Ok(Self { name: format!("kubo-mori({u})"), smooth: Arc::new(smooth), exponent: u, normalization: c })
    }

    /// Normalized volume element of a monotone metric.
    pub fn monotone(f: &MonotoneFunction) -> Result<Self> {
        let f = f.clone();
        let name = format!("monotone({})", f.name());
        Self::new(name, move |r, c| 1.0 / (f.eval(c / (1.0 + r)) * (1.0 + r)), 0.5)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn density(&self, r: f64) -> f64 {
        self.normalization * (self.smooth)(r, 1.0 - r) * ((1.0 - r) * (1.0 + r)).powf(-self.exponent)
    }

    /// `∫₀¹ h(r) w(r) dr`.
    pub fn radial_integral(&self, mut h: impl FnMut(f64) -> f64) -> Result<f64> {
        let c = self.normalization;
        let g = &self.smooth;
        integrate_radial_complement(|r, one_minus_r| c * g(r, one_minus_r) * h(r), self.exponent)
    }

    /// `∫ w dV = 4π ∫₀¹ r² w(r) dr`; 1 for a normalized prior.
    pub fn mass(&self) -> Result<f64> {
        Ok(4.0 * PI * self.radial_integral(|r| r * r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gauss_legendre, integrate_radial};

    /// `∫∫∫ density dr dϑ dφ` by radial tanh-sinh times Gauss–Legendre in ϑ.
    fn spherical_mass(u: f64, density: impl Fn(f64, f64) -> f64) -> f64 {
        let (x, w) = gauss_legendre(24);
        let angular = |r: f64| -> f64 {
            x.iter().zip(&w).map(|(&xi, &wi)| {
                let theta = PI / 2.0 * (xi + 1.0);
                wi * PI / 2.0 * density(r, theta)
            }).sum()
        };
        // the quadrature supplies (1 - r²)^(-u) from the exact complement;
        // hand it the smooth remainder, clamping abscissae that round to 1
        2.0 * PI
            * integrate_radial(
                |r| {
                    let r = r.min(1.0 - f64::EPSILON / 2.0);
                    angular(r) * ((1.0 - r) * (1.0 + r)).powf(u)
                },
                u,
            )
            .unwrap()
    }

    #[test]
    fn q_density_values() {
        for r in [0.0, 0.3, 0.99] {
            assert!((q_density(0.0, r).unwrap() - 3.0 / (4.0 * PI)).abs() < 1e-14);
        }
        assert!((q_density(0.5, 0.0).unwrap() - 1.0 / (PI * PI)).abs() < 1e-15);
        assert!(q_density(1.0, 0.0).is_err());
        assert!(q_density(0.5, 1.0).is_err());
        assert!(q_density(-1.0, 1.0).unwrap() == 0.0);
    }

    #[test]
    fn q_prior_normalized() {
        for u in [-1.0, 0.0, 0.5, 0.9] {
            assert!((RadialPrior::q(u).unwrap().mass().unwrap() - 1.0).abs() < 1e-12, "u={u}");
            let m = spherical_mass(u, |r, th| to_spherical(q_density(u, r).unwrap(), r, th));
            assert!((m - 1.0).abs() < 1e-10, "u={u}: {m}");
        }
    }

    #[test]
    fn kubo_mori_normalized() {
        assert_eq!(kubo_mori_density(0.3, 0.0, 1.0).unwrap(), 0.0);
        for u in [0.0, 0.5] {
            let m = spherical_mass(u, |r, th| kubo_mori_density(u, r, th).unwrap());
            assert!((m - 1.0).abs() < 1e-8, "u={u}: {m}");
            assert!((RadialPrior::kubo_mori(u).unwrap().mass().unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn kubo_mori_proportional_to_its_monotone_volume() {
        let f = MonotoneFunction::kubo_mori();
        let mut ratios = Vec::new();
        for r in [0.05, 0.3, 0.7, 0.95] {
            for theta in [0.3, 1.2, 2.5] {
                ratios.push(kubo_mori_density(0.5, r, theta).unwrap() / monotone_volume(&f, r, theta).unwrap());
            }
        }
        assert!(ratios.iter().all(|q| (q / ratios[0] - 1.0).abs() < 1e-10));
    }

    #[test]
    fn monotone_volume_closed_forms() {
        let sld = MonotoneFunction::sld();
        let km = MonotoneFunction::kubo_mori();
        for r in [0.0, 0.2, 0.6, 0.9] {
            let th = 0.8;
            let v = monotone_volume(&sld, r, th).unwrap();
            assert!((v - r * r * th.sin() / (1.0 - r * r).sqrt()).abs() < 1e-14);
            // q(1/2) is the SLD volume element over π²
            let q = to_spherical(q_density(0.5, r).unwrap(), r, th);
            assert!((q - v / (PI * PI)).abs() < 1e-12);
            let v = monotone_volume(&km, r, th).unwrap();
            let want = r * (2.0 * r.atanh()) * th.sin() / (2.0 * (1.0 - r * r).sqrt());
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptotic_match_prior_is_proper() {
        let p = RadialPrior::monotone(&MonotoneFunction::asymptotic_match()).unwrap();
        assert!((p.mass().unwrap() - 1.0).abs() < 1e-10);
        for r in [0.0, 0.4, 0.999] {
            assert!(p.density(r) > 0.0);
        }
    }

    #[test]
    fn rejects_functions_violating_the_functional_equation() {
        assert!(matches!(MonotoneFunction::new("t", |t| t), Err(Error::Contract(_))));
        assert!(matches!(MonotoneFunction::new("2", |_| 2.0), Err(Error::Contract(_))));
        assert!(MonotoneFunction::new("sqrt", |t: f64| t.sqrt()).is_ok());
    }

    #[test]
    fn mass_concentrates_on_sphere_as_u_grows() {
        let p = RadialPrior::q(0.99).unwrap();
        let inner = 4.0 * PI * crate::specfun::integrate(|r| r * r * p.density(r), 0.0, 0.95).unwrap();
        assert!(1.0 - inner > 0.9);
    }
}
