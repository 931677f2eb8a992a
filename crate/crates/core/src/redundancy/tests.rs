use std::f64::consts::{LN_2, PI};

use super::*;
use crate::bayes_matrix::zeta_matrix;
use crate::priors::RadialPrior;
use crate::qstate::{entropy_of_spectrum, relative_entropy_dense, tensor_power, BlochVector};
use crate::spectrum::eigenvalue;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn dense_relative_entropy(n: usize, u: f64, b: BlochVector) -> f64 {
    let rho = tensor_power(b, n).unwrap();
    let zeta = zeta_matrix(n, u).unwrap().matrix.to_complex();
    relative_entropy_dense(rho.matrix(), &zeta).unwrap()
}

#[test]
fn level_weight_examples() {
    let w = level_weights(2, 0.0).unwrap();
    assert!(close(w.weights[0], 0.75, 1e-15) && close(w.weights[1], 0.25, 1e-15));
    assert_eq!(level_weights(5, 1.0).unwrap().weights, vec![1.0, 0.0, 0.0]);
    for &(n, r) in &[(1, 0.3), (7, 1e-9), (30, 0.5), (200, 0.999), (513, 0.2)] {
        let w = level_weights(n, r).unwrap();
        assert_eq!(w.weights.len(), n / 2 + 1);
        assert!(w.weights.iter().all(|&x| x >= 0.0));
        let s: f64 = w.weights.iter().sum();
        assert!(close(s, 1.0, 1e-12), "n={n} r={r}: {s}");
    }
    assert!(level_weights(3, 1.5).is_err());
    assert!(level_weights(3, -0.1).is_err());
}

#[test]
fn weights_continuous_at_the_center() {
    let a = level_weights(9, 0.0).unwrap().weights;
    let b = level_weights(9, 1e-7).unwrap().weights;
    for (x, y) in a.iter().zip(&b) {
        assert!(close(*x, *y, 1e-6));
    }
}

#[test]
fn relative_entropy_examples() {
    for u in [-2.0, 0.0, 0.7] {
        assert!(close(relative_entropy_exact(1, u, 1.0).unwrap(), LN_2, 1e-14));
    }
    let n = 6;
    let u = 0.3;
    let center: f64 = -(n as f64) * LN_2
        - (0..=n / 2)
            .map(|d| {
                let k = (n - 2 * d + 1) as f64;
                let c = crate::specfun::binomial_f64(n as i64 + 1, d as i64);
                k * k * c / ((n + 1) as f64 * 64.0) * eigenvalue(n, u, d).unwrap().ln()
            })
            .sum::<f64>();
    assert!(close(relative_entropy_exact(n, u, 0.0).unwrap(), center, 1e-13));
    assert!(relative_entropy_exact(3, 1.0, 0.5).is_err());
}

#[test]
fn matches_dense_oracle() {
    let b = BlochVector::new(0.6, 0.0, 0.0).unwrap();
    let dense = dense_relative_entropy(3, 0.5, b);
    assert!(close(relative_entropy_exact(3, 0.5, 0.6).unwrap(), dense, 1e-8));
    for &(n, u, r) in &[(1, -1.0, 0.2), (2, 0.0, 0.9), (4, 0.8, 0.45), (5, -0.5, 0.05)] {
        let b = BlochVector::from_spherical(r, 0.7, 2.1).unwrap();
        let dense = dense_relative_entropy(n, u, b);
        let exact = relative_entropy_exact(n, u, r).unwrap();
        assert!(close(exact, dense, 1e-8), "n={n} u={u} r={r}: {exact} vs {dense}");
    }
}

#[test]
fn depends_only_on_radius() {
    let (n, u, r) = (4, 0.25, 0.7);
    let reference = relative_entropy_exact(n, u, r).unwrap();
    for &(theta, phi) in &[(0.0, 0.0), (1.2, 0.3), (2.9, 4.0), (PI / 2.0, PI)] {
        let b = BlochVector::from_spherical(r, theta, phi).unwrap();
        assert!(close(dense_relative_entropy(n, u, b), reference, 1e-8));
    }
}

#[test]
fn nonnegative_on_a_grid() {
    for n in [1, 2, 5, 16, 100] {
        for u in [-3.0, 0.0, 0.5, 0.95] {
            for i in 0..=20 {
                let s = relative_entropy_exact(n, u, i as f64 / 20.0).unwrap();
                assert!(s >= -1e-10, "n={n} u={u} i={i}: {s}");
            }
        }
    }
}

#[test]
fn asymptotic_examples() {
    let n = 100;
    let ln_n = (n as f64).ln();
    let center = asymptotic_redundancy(n, 0.5, 0.0, Regime::Center).unwrap();
    assert!(close(center - 1.5 * ln_n, -1.9673559, 1e-7));
    let boundary = asymptotic_redundancy(n, 0.5, 1.0, Regime::Boundary).unwrap();
    assert!(close(boundary - 1.5 * ln_n, -0.8139295, 1e-7));
    let near = asymptotic_redundancy(n, 0.5, 1e-8, Regime::Interior).unwrap();
    assert!(close(near, center, 1e-7));
    assert!(asymptotic_redundancy(n, 0.5, 0.3, Regime::Center).is_err());
    assert!(asymptotic_redundancy(n, 0.5, 1.0, Regime::Interior).is_err());
    assert_eq!("boundary".parse::<Regime>().unwrap(), Regime::Boundary);
}

#[test]
fn scaled_interior_error_is_bounded() {
    for r in [0.2, 0.5, 0.8] {
        let e: Vec<f64> = [64, 128, 256].iter().map(|&n| redundancy_report(n, 0.0, r).unwrap().scaled_error).collect();
        for w in e.windows(2) {
            let q = w[1] / w[0];
            assert!((1.0 / 3.0..=3.0).contains(&q), "r={r}: {e:?}");
        }
    }
}

#[test]
fn classical_baseline_examples() {
    let b = classical_baselines(50, 0.5, 0.0).unwrap();
    let ln_n = 50f64.ln();
    assert!(close(b.minimax3d - 1.5 * ln_n, -1.9673559, 1e-7));
    assert!(close(b.redundancy3d, b.minimax3d, 1e-13));
    assert!(close(b.boundary2d, ln_n + LN_2 - 1.0, 1e-15));
    assert!(classical_baselines(50, 0.5, 1.0).is_err());
    // the quantum interior form swaps the classical −1 for the nonclassical term
    let (n, u, r) = (50, 0.2, 0.4);
    let diff = asymptotic_redundancy(n, u, r, Regime::Interior).unwrap()
        - classical_baselines(n, u, r).unwrap().redundancy3d;
    assert!(close(diff, nonclassical_term(r).unwrap() + 1.0, 1e-13));
}

#[test]
fn zeta_entropy_examples() {
    assert!(close(zeta_entropy_exact(1, 0.3).unwrap(), LN_2, 1e-14));
    assert!(close(zeta_entropy_exact(2, 0.5).unwrap(), 1.2637407, 1e-7));
    for &(n, u) in &[(3, 0.0), (4, 0.5), (5, -1.0)] {
        let eig = crate::linalg::hermitian_eig(&zeta_matrix(n, u).unwrap().matrix.to_complex()).unwrap();
        let dense = entropy_of_spectrum(&eig.values);
        assert!(close(zeta_entropy_exact(n, u).unwrap(), dense, 1e-9));
    }
}

#[test]
fn constants_at_half() {
    assert!(close(entropy_rate(0.5).unwrap(), 0.2196277, 1e-7));
    let c = bayes_constant(0.5).unwrap();
    assert!(close(c, -1.7742087, 1e-7));
    assert!(close(c, -2.0 - 0.5 * LN_2 + 0.5 * PI.ln(), 1e-13));
}

#[test]
fn entropy_rate_is_mean_qubit_entropy() {
    for u in [-1.0, 0.0, 0.5] {
        let prior = RadialPrior::q(u).unwrap();
        let mean = 4.0 * PI
            * prior
                .radial_integral(|r| r * r * crate::qstate::von_neumann_entropy_bloch(r.min(1.0)).unwrap())
                .unwrap();
        assert!(close(mean, entropy_rate(u).unwrap(), 1e-9), "u={u}");
    }
}

#[test]
fn bayes_exact_is_prior_average() {
    for n in 1..=6 {
        for u in [-0.5, 0.0, 0.5] {
            let prior = RadialPrior::q(u).unwrap();
            let avg = 4.0 * PI
                * prior.radial_integral(|r| r * r * relative_entropy_exact(n, u, r.min(1.0)).unwrap()).unwrap();
            let exact = bayes_redundancy(n, u, Mode::Exact).unwrap();
            assert!(close(avg, exact, 1e-7), "n={n} u={u}: {avg} vs {exact}");
        }
    }
}

#[test]
fn bayes_gap_shrinks() {
    let gap = |n| bayes_redundancy(n, 0.0, Mode::Exact).unwrap() - bayes_redundancy(n, 0.0, Mode::Asymptotic).unwrap();
    assert!(gap(256).abs() < gap(16).abs());
    assert!(gap(256).abs() < 0.05);
}

#[test]
fn b6_derivative_gives_b7() {
    for &(n, u) in &[(5, 0.0), (12, 0.3), (20, -0.7)] {
        let h = 1e-5;
        let fd = (identities::b6_rhs(n, u, h) - identities::b6_rhs(n, u, -h)) / (2.0 * h);
        assert!(close(fd, identities::b7_rhs(n, u), 1e-6), "n={n} u={u}");
    }
}

#[test]
fn tables() {
    let t = figure2_table(4).unwrap();
    let csv = t.to_csv();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "r,nonclassical");
    assert_eq!(rows.len(), 5);
    assert!(rows[1].ends_with(&crate::export::format_real(-1.0)));
    let t = figure3_table(-0.2, 0.99, 10).unwrap();
    assert_eq!(t.to_csv().lines().count(), 12);
    assert!(figure3_table(0.0, 1.0, 4).is_err());
    let t = redundancy_table(&[4, 8], &[0.0], &[0.0, 0.5, 1.0]).unwrap();
    assert_eq!(t.to_csv().lines().next().unwrap(), "n,u,r,exact,asym,scaled_error");
    assert_eq!(t.to_csv().lines().count(), 7);
}
