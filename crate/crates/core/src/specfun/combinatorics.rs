//! Exact binomial coefficients and Catalan numbers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Exact `C(n, k)`. Returns 0 when `k` lies outside `[0, n]`, the usual
/// convention that lets shifted sums run over the full integer range.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: the running product is C(n, i + 1)
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The Catalan number `C(2m, m) / (m + 1)`.
pub fn catalan(m: i64) -> Result<BigUint> {
    if m < 0 {
        return domain(format!("catalan requires m >= 0, got {m}"));
    }
    Ok(binomial(2 * m, m) / BigUint::from(m as u64 + 1))
}

/// Natural logarithm of a big count. Works past the `f64` overflow point.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log C(m, k)` for `k = 0..=kmax`, built by the ratio recurrence so the
/// error stays at a few ulps of each term instead of the size of `log m!`.
pub(crate) fn ln_binomial_row(m: usize, kmax: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(kmax + 1);
    let mut acc = 0.0;
    for k in 0..=kmax {
        if k > m {
            row.push(f64::NEG_INFINITY);
            continue;
        }
        row.push(acc);
        acc += ((m - k) as f64 / (k + 1) as f64).ln();
    }
    row
}

/// `C(n, k)` as a float; exact for the sizes used in the identity sums.
pub(crate) fn binomial_f64(n: i64, k: i64) -> f64 {
    if n < 0 || k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}
