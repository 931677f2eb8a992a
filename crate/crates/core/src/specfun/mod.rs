//! Special functions, exact combinatorics and quadrature.

mod combinatorics;
mod double_double;
mod gamma;
mod quadrature;

pub use combinatorics::{binomial, catalan, ln_big};
pub use gamma::{digamma, log_gamma, trigamma};
pub use quadrature::{
    gauss_legendre, integrate, integrate_radial, integrate_radial_complement,
    integrate_radial_detailed, tanh_sinh, Quadrature,
    RadialRule, MAX_LEVEL, RADIAL_TOLERANCE,
};

pub(crate) use double_double::DoubleDouble;
pub(crate) use combinatorics::{binomial_f64, ln_binomial_row};
pub(crate) use gamma::{ln_gamma, psi, psi1};

/// Compensated (Kahan–Babuška) summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
