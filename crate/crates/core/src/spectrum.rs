//! Closed-form spectra of `ζ_n(u)` and its generalizations, with the
//! ballot-path eigenbasis.
//!
//! Level `d` (`0 ≤ d ≤ ⌊n/2⌋`) has eigenvalue
//! `λ_d = 2⁻ⁿ Γ(5/2−u) Γ(2+n−d−u) Γ(1+d−u) / [Γ(5/2+n/2−u) Γ(2+n/2−u) Γ(1−u)]`
//! and multiplicity `(n−2d+1)² C(n+1,d)/(n+1)`. Its eigenspace is spanned
//! by `v_{d,s}(P)` over ballot paths `P` with `d` down-steps and
//! `d ≤ s ≤ n−d`; the vector for `(d, s, P)` lives on subsets of size `s`.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bayes_matrix::check_symmetric;
use crate::error::{check_u, domain, Error, Result};
use crate::export::{Table, Value};
use crate::linalg::{orthonormalize, Matrix};
use crate::priors::RadialPrior;
use crate::specfun::{binomial, ln_big, ln_gamma};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Largest `n` for [`eigenbasis`].
pub const MAX_BASIS_N: usize = 12;
/// Largest `n` for [`eigenprojector`].
pub const MAX_PROJECTOR_N: usize = 10;
/// Relative residual below which Gram–Schmidt declares dependence.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

/// `log λ_d`. Accepts `d ≤ n + 1`, where `λ_{n+1−d} = λ_d`.
pub fn ln_eigenvalue(n: usize, u: f64, d: usize) -> Result<f64> {
    check_u(u)?;
    if d > n + 1 {
        return domain(format!("level d = {d} exceeds n + 1 = {}", n + 1));
    }
    let (nf, df) = (n as f64, d as f64);
    Ok(-nf * LN_2 + ln_gamma(2.5 - u) + ln_gamma(2.0 + nf - df - u) + ln_gamma(1.0 + df - u)
        - ln_gamma(2.5 + nf / 2.0 - u)
        - ln_gamma(2.0 + nf / 2.0 - u)
        - ln_gamma(1.0 - u))
}

pub fn eigenvalue(n: usize, u: f64, d: usize) -> Result<f64> {
    ln_eigenvalue(n, u, d).map(f64::exp)
}

/// `(n−2d+1)² C(n+1,d) / (n+1)`; zero outside `0 ≤ d ≤ ⌊n/2⌋`.
pub fn multiplicity(n: usize, d: usize) -> BigUint {
    if 2 * d > n {
        return BigUint::zero();
    }
    let k = BigUint::from(n - 2 * d + 1);
    &k * &k * binomial(n as i64 + 1, d as i64) / BigUint::from(n + 1)
}

/// Number of ballot paths with `n − d` up-steps and `d` down-steps:
/// `(n−2d+1) C(n+1,d) / (n+1)`.
pub fn ballot_count(n: usize, d: usize) -> BigUint {
    if 2 * d > n {
        return BigUint::zero();
    }
    BigUint::from(n - 2 * d + 1) * binomial(n as i64 + 1, d as i64) / BigUint::from(n + 1)
}

/// `log` of [`multiplicity`] for `d = 0..=⌊n/2⌋`, without big integers.
pub(crate) fn ln_multiplicities(n: usize) -> Vec<f64> {
    let row = crate::specfun::ln_binomial_row(n + 1, n / 2);
    row.iter()
        .enumerate()
        .map(|(d, &lc)| 2.0 * ((n - 2 * d + 1) as f64).ln() + lc - ((n + 1) as f64).ln())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumLevel {
    pub d: usize,
    pub lambda: f64,
    pub ln_lambda: f64,
    pub multiplicity: BigUint,
    /// `d..=n−d`.
    pub s_values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub n: usize,
    pub u: f64,
    pub levels: Vec<SpectrumLevel>,
}

pub fn spectrum(n: usize, u: f64) -> Result<Spectrum> {
    check_u(u)?;
    let levels = (0..=n / 2)
        .map(|d| {
            let ln_lambda = ln_eigenvalue(n, u, d)?;
            Ok(SpectrumLevel {
                d,
                lambda: ln_lambda.exp(),
                ln_lambda,
                multiplicity: multiplicity(n, d),
                s_values: (d..=n - d).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(Spectrum { n, u, levels })
}

impl Spectrum {
    /// `Σ_{d' ≤ d} multiplicity · λ`, one entry per level.
    pub fn cumulative_weights(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.levels
            .iter()
            .map(|l| {
                acc += (ln_big(&l.multiplicity) + l.ln_lambda).exp();
                acc
            })
            .collect()
    }

    pub fn total_dimension(&self) -> BigUint {
        self.levels.iter().map(|l| &l.multiplicity).sum()
    }

    /// Columns `d, lambda, multiplicity, cumulative_weight`.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["d", "lambda", "multiplicity", "cumulative_weight"]);
        for (l, c) in self.levels.iter().zip(self.cumulative_weights()) {
            t.push(vec![l.d.into(), l.lambda.into(), Value::Big(l.multiplicity.clone()), c.into()]);
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

/// Lattice path of up/down steps that never dips below the axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallotPath {
    pub steps: Vec<Step>,
    pub d: usize,
}

impl BallotPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == Step::Up { 1 } else { -1 };
            if height < 0 {
                return domain(format!("path goes below the axis at step {}", i + 1));
            }
        }
        let d = steps.iter().filter(|&&s| s == Step::Down).count();
        Ok(Self { steps, d })
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    fn labels(&self, step: Step) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().enumerate().filter(move |(_, &s)| s == step).map(|(i, _)| i + 1)
    }

    /// Labels of the first `d` up-steps.
    pub fn a_set(&self) -> Subset {
        Subset(self.labels(Step::Up).take(self.d).map(|e| 1u64 << (e - 1)).sum())
    }

    /// Labels of the down-steps.
    pub fn b_set(&self) -> Subset {
        Subset(self.labels(Step::Down).map(|e| 1u64 << (e - 1)).sum())
    }
}

/// All ballot paths of length `n` with `d` down-steps, in lexicographic
/// order with up before down.
pub fn ballot_paths(n: usize, d: usize) -> Vec<BallotPath> {
    fn walk(n: usize, d: usize, prefix: &mut Vec<Step>, ups: usize, downs: usize, out: &mut Vec<BallotPath>) {
        if prefix.len() == n {
            out.push(BallotPath { steps: prefix.clone(), d });
            return;
        }
        if ups < n - d {
            prefix.push(Step::Up);
            walk(n, d, prefix, ups + 1, downs, out);
            prefix.pop();
        }
        if downs < d && downs < ups {
            prefix.push(Step::Down);
            walk(n, d, prefix, ups, downs + 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if 2 * d <= n {
        walk(n, d, &mut Vec::with_capacity(n), 0, 0, &mut out);
    }
    out
}

/// `v_{d,s}(A, B)` as a sparse ±1 vector over subsets of size `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvectorSpec {
    pub n: usize,
    pub d: usize,
    pub s: usize,
    pub a: Subset,
    pub b: Subset,
    /// Sorted by mask.
    pub coefficients: Vec<(Subset, i8)>,
}

impl EigenvectorSpec {
    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; 1 << self.n];
        for &(s, c) in &self.coefficients {
            v[s.index()] = c as f64;
        }
        v
    }
}

/// `X'`: the elements of `B` except those at the ranks `X` occupies in `A`,
/// ranks taken in ascending order.
fn rank_complement(a: &[usize], b: &[usize], x: Subset) -> Subset {
    let mut keep = 0u64;
    for (&ea, &eb) in a.iter().zip(b) {
        if !x.contains(ea) {
            keep |= 1 << (eb - 1);
        }
    }
    Subset(keep)
}

/// `Σ_{X ⊆ A} Σ_{Y ⊆ [n]∖(A∪B), |Y| = s−d} (−1)^{|X|} e_{X ∪ X' ∪ Y}`.
pub fn eigenvector(n: usize, d: usize, s: usize, a: Subset, b: Subset) -> Result<EigenvectorSpec> {
    if n > MAX_ELEMENTS || !a.within(n) || !b.within(n) {
        return domain(format!("sets {a} and {b} are not contained in [{n}]"));
    }
    if !a.is_disjoint(b) {
        return domain(format!("A = {a} and B = {b} overlap"));
    }
    if a.len() != d || b.len() != d {
        return domain(format!("A and B must both have {d} elements"));
    }
    if !(d <= s && s + d <= n) {
        return domain(format!("need 0 <= d <= s <= n - d, got d = {d}, s = {s}, n = {n}"));
    }
    let (ae, be) = (a.elements(), b.elements());
    let rest = Subset::full(n).difference(a.union(b));
    let mut coefficients = Vec::new();
    for x in a.subsets() {
        let sign = if x.len() % 2 == 0 { 1 } else { -1 };
        let head = x.union(rank_complement(&ae, &be, x));
        for y in rest.subsets_of_size(s - d) {
            coefficients.push((head.union(y), sign));
        }
    }
    coefficients.sort();
    Ok(EigenvectorSpec { n, d, s, a, b, coefficients })
}

/// `v_{d,s}(P)` for every level `d`, ballot path `P` and `d ≤ s ≤ n−d`;
/// exactly `2ⁿ` vectors.
pub fn eigenbasis(n: usize) -> Result<Vec<EigenvectorSpec>> {
    if n > MAX_BASIS_N {
        return Err(Error::Capacity(format!("eigenbasis limited to n <= {MAX_BASIS_N}, got {n}")));
    }
    let mut out = Vec::with_capacity(1 << n);
    for d in 0..=n / 2 {
        out.extend(level_basis(n, d)?);
    }
    Ok(out)
}

fn level_basis(n: usize, d: usize) -> Result<Vec<EigenvectorSpec>> {
    let mut out = Vec::new();
    for p in ballot_paths(n, d) {
        for s in d..=n - d {
            out.push(eigenvector(n, d, s, p.a_set(), p.b_set())?);
        }
    }
    Ok(out)
}

fn check_level(n: usize, d: usize, s: usize) -> Result<()> {
    if d <= s && s + d <= n {
        Ok(())
    } else {
        domain(format!("need 0 <= d <= s <= n - d, got d = {d}, s = {s}, n = {n}"))
    }
}

/// Eigenvalue of the generalized matrix on `v_{d,s}(P)`:
/// `f(n−2s) Γ(2+n−d−u) Γ(1+d−u) / [Γ(2+n−s−u) Γ(2+s−u) Γ(1−u)]`.
pub fn generalized_eigenvalue(n: usize, u: f64, d: usize, s: usize, f: impl Fn(i64) -> f64) -> Result<f64> {
    check_u(u)?;
    check_level(n, d, s)?;
    check_symmetric(n, &f)?;
    let (nf, df, sf) = (n as f64, d as f64, s as f64);
    let ln_ratio = ln_gamma(2.0 + nf - df - u) + ln_gamma(1.0 + df - u)
        - ln_gamma(2.0 + nf - sf - u)
        - ln_gamma(2.0 + sf - u)
        - ln_gamma(1.0 - u);
    Ok(f(n as i64 - 2 * s as i64) * ln_ratio.exp())
}

/// Eigenvalue `d` of the average of `⊗ⁿρ` over a spherically symmetric
/// prior `w`:
/// `π / (2^{n−1}(n−2d+1)) ∫_{−1}^{1} r (1+r)^{n−d+1} (1−r)^d w(|r|) dr`.
pub fn radial_eigenvalue(n: usize, d: usize, w: &RadialPrior) -> Result<f64> {
    if 2 * d > n {
        return domain(format!("level d = {d} exceeds n/2 for n = {n}"));
    }
    let (hi, lo) = ((n - d + 1) as i32, d as i32);
    // fold r -> -r onto [0, 1]; the powers of 2 are absorbed into the halves
    let integral = w.radial_integral(|r| {
        let (p, m) = ((1.0 + r) / 2.0, (1.0 - r) / 2.0);
        r * (p.powi(hi) * m.powi(lo) - m.powi(hi) * p.powi(lo))
    })?;
    Ok(4.0 * PI / (n - 2 * d + 1) as f64 * integral)
}

/// Multiplicity attached to each `(d, s)` pair for a spherically symmetric
/// prior: the ballot count. Summed over the `n−2d+1` values of `s` it gives
/// [`multiplicity`].
pub fn radial_multiplicity(n: usize, d: usize) -> BigUint {
    ballot_count(n, d)
}

/// Orthogonal projector onto the `λ_d` eigenspace of `ζ_n(u)`.
pub fn eigenprojector(n: usize, u: f64, d: usize) -> Result<Matrix<f64>> {
    check_u(u)?;
    if n > MAX_PROJECTOR_N {
        return Err(Error::Capacity(format!("eigenprojector limited to n <= {MAX_PROJECTOR_N}, got {n}")));
    }
    if 2 * d > n {
        return domain(format!("level d = {d} exceeds n/2 for n = {n}"));
    }
    let vectors: Vec<Vec<f64>> = level_basis(n, d)?.iter().map(EigenvectorSpec::to_dense).collect();
    let q = orthonormalize(&vectors, PIVOT_TOLERANCE)?;
    let expected = multiplicity(n, d).to_usize().expect("small");
    if q.len() != expected {
        return Err(Error::Internal(format!("level {d} spans {} dimensions, expected {expected}", q.len())));
    }
    let dim = 1 << n;
    let mut p = Matrix::zeros(dim, dim);
    for v in &q {
        for i in 0..dim {
            if v[i] == 0.0 {
                continue;
            }
            for j in 0..dim {
                p[(i, j)] += v[i] * v[j];
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes_matrix::{tilde_zeta_matrix, zeta_matrix, zeta_profile};
    use crate::linalg::rank;
    use crate::specfun::catalan;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e).unwrap()
    }

    fn as_u64(b: &BigUint) -> u64 {
        b.to_u64().unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        for u in [-2.0, 0.0, 0.6] {
            assert!((eigenvalue(1, u, 0).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!((eigenvalue(2, 0.5, 0).unwrap() - 5.0 / 16.0).abs() < 1e-15);
        assert!((eigenvalue(2, 0.5, 1).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert!(eigenvalue(4, 1.0, 0).is_err());
        assert!(eigenvalue(4, 0.0, 6).is_err());
    }

    #[test]
    fn catalan_leading_eigenvalue() {
        for n in 1..=12usize {
            let want = catalan(n as i64 + 1).unwrap().to_f64().unwrap() / 4f64.powi(n as i32);
            let got = eigenvalue(n, 0.5, 0).unwrap();
            assert!((got / want - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn multiplicities() {
        let m: Vec<u64> = (0..=3).map(|d| as_u64(&multiplicity(7, d))).collect();
        assert_eq!(m, vec![8, 36, 56, 28]);
        assert_eq!(m.iter().sum::<u64>(), 128);
        assert_eq!((0..=1).map(|d| as_u64(&multiplicity(2, d))).collect::<Vec<_>>(), vec![3, 1]);
        for n in 0..=40usize {
            assert_eq!(as_u64(&multiplicity(n, 0)), n as u64 + 1);
            let total: BigUint = (0..=n / 2).map(|d| multiplicity(n, d)).sum();
            assert_eq!(total, BigUint::from(1u64) << n);
        }
    }

    #[test]
    fn log_multiplicities_match_exact() {
        for n in [1usize, 9, 64, 333] {
            for (d, l) in ln_multiplicities(n).into_iter().enumerate() {
                assert!((l - ln_big(&multiplicity(n, d))).abs() < 1e-11 * l.max(1.0));
            }
        }
    }

    #[test]
    fn unit_trace_and_monotone_levels() {
        for n in 1..=30 {
            for u in [-2.0, -0.5, 0.0, 0.5, 0.9] {
                let sp = spectrum(n, u).unwrap();
                let tot = *sp.cumulative_weights().last().unwrap();
                assert!((tot - 1.0).abs() < 1e-12, "n={n} u={u}: {tot}");
                assert!(sp.levels.windows(2).all(|w| w[0].lambda > w[1].lambda));
                assert_eq!(sp.total_dimension(), BigUint::from(1u64) << n);
            }
        }
    }

    #[test]
    fn extended_level_symmetry() {
        for n in 1..=20 {
            for d in 0..=n + 1 {
                let a = ln_eigenvalue(n, 0.3, d).unwrap();
                let b = ln_eigenvalue(n, 0.3, n + 1 - d).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ballot_paths_enumeration() {
        let paths = ballot_paths(7, 2);
        assert_eq!(paths.len(), 14);
        assert_eq!(as_u64(&ballot_count(7, 2)), 14);
        assert!(paths.windows(2).all(|w| w[0].steps < w[1].steps));
        assert_eq!(ballot_paths(5, 0).len(), 1);
        for n in 0..=14 {
            for d in 0..=n / 2 {
                assert_eq!(ballot_paths(n, d).len() as u64, as_u64(&ballot_count(n, d)));
            }
        }
        use Step::*;
        let p = BallotPath::new(vec![Up, Down, Up, Up, Down, Up, Up]).unwrap();
        assert_eq!((p.a_set(), p.b_set()), (s(&[1, 3]), s(&[2, 5])));
        assert!(BallotPath::new(vec![Down, Up]).is_err());
    }

    #[test]
    fn twelve_term_vector() {
        let v = eigenvector(7, 2, 3, s(&[1, 3]), s(&[2, 5])).unwrap();
        let mut want = vec![
            (s(&[2, 4, 5]), 1),
            (s(&[2, 5, 6]), 1),
            (s(&[2, 5, 7]), 1),
            (s(&[1, 4, 5]), -1),
            (s(&[1, 5, 6]), -1),
            (s(&[1, 5, 7]), -1),
            (s(&[2, 3, 4]), -1),
            (s(&[2, 3, 6]), -1),
            (s(&[2, 3, 7]), -1),
            (s(&[1, 3, 4]), 1),
            (s(&[1, 3, 6]), 1),
            (s(&[1, 3, 7]), 1),
        ];
        want.sort();
        assert_eq!(v.coefficients, want);
        assert!(eigenvector(7, 2, 3, s(&[1, 3]), s(&[3, 5])).is_err());
    }

    #[test]
    fn level_zero_vectors_are_symmetric_sums() {
        let v = eigenvector(5, 0, 2, Subset::EMPTY, Subset::EMPTY).unwrap();
        assert_eq!(v.coefficients.len(), 10);
        assert!(v.coefficients.iter().all(|&(x, c)| x.len() == 2 && c == 1));
    }

    #[test]
    fn basis_size_and_rank() {
        assert_eq!(eigenbasis(1).unwrap().len(), 2);
        assert_eq!(eigenbasis(7).unwrap().len(), 128);
        let b = eigenbasis(4).unwrap();
        let m = Matrix::from_fn(16, 16, |i, j| b[j].to_dense()[i]);
        assert_eq!(rank(&m, 1e-10), 16);
        for v in &b {
            assert_eq!(v.coefficients.len(), (1 << v.d) * as_u64(&crate::specfun::binomial((4 - 2 * v.d) as i64, (v.s - v.d) as i64)) as usize);
        }
    }

    #[test]
    fn basis_vectors_are_eigenvectors() {
        for n in 1..=6 {
            for u in [0.0, 0.5] {
                let z = zeta_matrix(n, u).unwrap().matrix;
                for v in eigenbasis(n).unwrap() {
                    let x = v.to_dense();
                    let lam = eigenvalue(n, u, v.d).unwrap();
                    let res = z.mul_vec(&x).iter().zip(&x).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max);
                    assert!(res <= 1e-12, "n={n} u={u} d={} s={}: {res}", v.d, v.s);
                }
            }
        }
    }

    #[test]
    fn generalized_spectrum() {
        let n = 5;
        let u = 0.25;
        let fs: [&dyn Fn(i64) -> f64; 2] = [&|x| 1.0 + 0.1 * (x * x) as f64, &|x| (-(x as f64).abs()).exp()];
        for f in fs {
            let m = tilde_zeta_matrix(n, u, f).unwrap();
            for v in eigenbasis(n).unwrap() {
                let x = v.to_dense();
                let lam = generalized_eigenvalue(n, u, v.d, v.s, f).unwrap();
                let res = m.mul_vec(&x).iter().zip(&x).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max);
                assert!(res <= 1e-10);
            }
        }
        // the ζ profile collapses the s-dependence back to λ_d
        for d in 0..=n / 2 {
            for s_ in d..=n - d {
                let g = generalized_eigenvalue(n, u, d, s_, zeta_profile(n, u)).unwrap();
                assert!((g / eigenvalue(n, u, d).unwrap() - 1.0).abs() < 1e-13);
            }
        }
        // constant profile at s = d = 0
        let g = generalized_eigenvalue(n, u, 0, 0, |_| 3.0).unwrap();
        assert!((g - 3.0 / ln_gamma(2.0 - u).exp()).abs() < 1e-14);
        assert!(generalized_eigenvalue(n, u, 2, 1, |_| 1.0).is_err());
    }

    #[test]
    fn radial_eigenvalues_reproduce_closed_form() {
        let w = RadialPrior::q(0.0).unwrap();
        assert!((radial_eigenvalue(1, 0, &w).unwrap() - 0.5).abs() < 1e-13);
        for u in [-1.0, 0.0, 0.5] {
            let w = RadialPrior::q(u).unwrap();
            for n in 1..=8 {
                for d in 0..=n / 2 {
                    let got = radial_eigenvalue(n, d, &w).unwrap();
                    assert!((got - eigenvalue(n, u, d).unwrap()).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn radial_trace_for_other_priors() {
        let w = RadialPrior::kubo_mori(0.5).unwrap();
        for n in [3usize, 6] {
            let tot: f64 = (0..=n / 2)
                .map(|d| radial_eigenvalue(n, d, &w).unwrap() * multiplicity(n, d).to_f64().unwrap())
                .sum();
            assert!((tot - 1.0).abs() < 1e-9);
            let dims: BigUint = (0..=n / 2).map(|d| radial_multiplicity(n, d) * BigUint::from(n - 2 * d + 1)).sum();
            assert_eq!(dims, BigUint::from(1u64) << n);
        }
    }

    #[test]
    fn projectors() {
        for n in 1..=5 {
            let u = 0.5;
            let z = zeta_matrix(n, u).unwrap().matrix;
            let dim = 1 << n;
            let mut sum = Matrix::zeros(dim, dim);
            for d in 0..=n / 2 {
                let p = eigenprojector(n, u, d).unwrap();
                assert!(p.matmul(&p).max_abs_diff(&p) < 1e-10);
                assert!(p.hermitian_defect() < 1e-12);
                assert!((p.trace() - multiplicity(n, d).to_f64().unwrap()).abs() < 1e-8);
                let lam = eigenvalue(n, u, d).unwrap();
                assert!(p.matmul(&z).max_abs_diff(&p.scaled(lam)) < 1e-10);
                sum = sum.add(&p);
            }
            assert!(sum.max_abs_diff(&Matrix::identity(dim)) < 1e-10);
            assert!((eigenprojector(n, u, 0).unwrap().trace() - (n + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn spectrum_table() {
        let csv = spectrum(7, 0.5).unwrap().to_table().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "d,lambda,multiplicity,cumulative_weight");
        assert_eq!(lines.len(), 5);
        let mults: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap()).collect();
        assert_eq!(mults, vec!["8", "36", "56", "28"]);
    }
}
