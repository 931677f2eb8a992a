//! Universal compression by the dominant eigenspaces of `ζ_n(u)`.
//!
//! A plan keeps whole levels `d = 0, 1, …, D`. The eigenvalue `λ_d` drops
//! as `d` grows, so these are the largest eigenvalues. The plan's size is
//! the total multiplicity. How much of a given source `⊗ⁿρ` survives is
//! fixed by the level weights and depends on `ρ` only through its Bloch
//! radius.

use std::f64::consts::LN_2;

use num_bigint::BigUint;

use crate::error::{domain, Result};
use crate::export::Table;
use crate::redundancy::level_weights;
use crate::specfun::ln_big;
use crate::spectrum::spectrum;

/// Radii at which [`plan`] reports retained source weight.
pub const DEFAULT_RADII: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct CompressionPlan {
    pub n: usize,
    pub u: f64,
    pub epsilon: f64,
    /// Largest retained level.
    pub d_max: usize,
    pub dim: BigUint,
    /// `log₂ dim`.
    pub qubits: f64,
    /// `Tr ζ_n(u) Π`, at least `1 − ε`.
    pub prior_weight: f64,
    /// `(r, Tr ⊗ⁿρ Π)` at [`DEFAULT_RADII`].
    pub source_weights: Vec<(f64, f64)>,
}

/// Fewest levels whose `ζ_n(u)` weight reaches `1 − ε`.
pub fn plan(n: usize, u: f64, epsilon: f64) -> Result<CompressionPlan> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return domain(format!("epsilon must lie in (0, 1), got {epsilon}"));
    }
    let spec = spectrum(n, u)?;
    let cumulative = spec.cumulative_weights();
    // the last level always qualifies; its cumulative weight is 1 up to roundoff
    let d_max = cumulative.iter().position(|&c| c >= 1.0 - epsilon).unwrap_or(n / 2);
    let dim: BigUint = spec.levels[..=d_max].iter().map(|l| &l.multiplicity).sum();
    let source_weights = DEFAULT_RADII
        .iter()
        .map(|&r| source_weight(n, d_max, r).map(|w| (r, w)))
        .collect::<Result<_>>()?;
    Ok(CompressionPlan {
        n,
        u,
        epsilon,
        d_max,
        qubits: ln_big(&dim) / LN_2,
        dim,
        prior_weight: cumulative[d_max].min(1.0),
        source_weights,
    })
}

/// `Σ_{d ≤ D} w_d(r)`: the trace of `⊗ⁿρ` inside the retained levels.
pub fn source_weight(n: usize, d_max: usize, r: f64) -> Result<f64> {
    if 2 * d_max > n {
        return domain(format!("level D = {d_max} exceeds n/2 for n = {n}"));
    }
    let w = level_weights(n, r)?;
    if d_max == n / 2 {
        return Ok(1.0);
    }
    Ok(w.weights[..=d_max].iter().sum::<f64>().min(1.0))
}

/// `1 − 2(1 − weight)`, clamped to `[0, 1]`.
pub fn fidelity_bound(weight: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&weight) {
        return domain(format!("retained weight must lie in [0, 1], got {weight}"));
    }
    Ok((1.0 - 2.0 * (1.0 - weight)).clamp(0.0, 1.0))
}

/// Columns `n,u,epsilon,D,dim,qubits,prior_weight`.
pub fn plan_table(plans: &[CompressionPlan]) -> Table {
    let mut t = Table::new(&["n", "u", "epsilon", "D", "dim", "qubits", "prior_weight"]);
    for p in plans {
        t.push(vec![
            p.n.into(),
            p.u.into(),
            p.epsilon.into(),
            p.d_max.into(),
            p.dim.clone().into(),
            p.qubits.into(),
            p.prior_weight.into(),
        ]);
    }
    t
}

/// Columns `r,retained_weight,fidelity_bound` for `r = i/grid`, `i = 0..=grid`.
pub fn source_curve(n: usize, d_max: usize, grid: usize) -> Result<Table> {
    if grid == 0 {
        return domain("grid must be positive");
    }
    let mut t = Table::new(&["r", "retained_weight", "fidelity_bound"]);
    for i in 0..=grid {
        let r = i as f64 / grid as f64;
        let w = source_weight(n, d_max, r)?;
        t.push(vec![r.into(), w.into(), fidelity_bound(w)?.into()]);
    }
    Ok(t)
}
