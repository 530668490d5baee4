//! Hermite-recurrence Fock probabilities against an independent route: the
//! photon-number generating function ⟨Π z_k^{n_k}⟩ of a Gaussian state,
//! inverted by a discrete Cauchy integral.

use std::f64::consts::PI;

use gauss_entropy::boson::{two_mode_covariance, TwoModeSymmetry};
use gauss_entropy::fock::{fock_mutual_information, hermite_fock_probabilities};
use gauss_entropy::{CMat, RMat, C64};

/// `Π 2/(1+z_k) · det(1+2ΣT)^{−1/2} · exp(−x̄ᵀT(1+2ΣT)⁻¹x̄)`, `T = diag(t, t)`,
/// `t_k = (1−z_k)/(1+z_k)`.
fn generating_function(sigma: &RMat, xbar: &[f64], z: &[C64]) -> C64 {
    let n = z.len();
    let one = C64::new(1.0, 0.0);
    let t: Vec<C64> = z.iter().map(|&zk| (one - zk) / (one + zk)).collect();
    let tt = CMat::from_fn(2 * n, 2 * n, |i, j| if i == j { t[i % n] } else { C64::new(0.0, 0.0) });
    let sc = sigma.map(|x| C64::new(x, 0.0));
    let a = CMat::identity(2 * n, 2 * n) + sc * C64::new(2.0, 0.0) * &tt;
    // every eigenvalue of 1 + 2ΣT has positive real part for |z| < 1, so the
    // product of principal roots is the continuous branch
    let eig = a.clone().schur().eigenvalues().expect("complex Schur form");
    let root: C64 = eig.iter().map(|l| l.sqrt()).product();
    let xb = nalgebra::DVector::from_iterator(2 * n, xbar.iter().map(|&x| C64::new(x, 0.0)));
    let sol = a.lu().solve(&xb).unwrap();
    let expo = (xb.transpose() * &tt * sol)[(0, 0)];
    let pref: C64 = z.iter().map(|&zk| C64::new(2.0, 0.0) / (one + zk)).product();
    pref / root * (-expo).exp()
}

fn contour_probabilities(sigma: &RMat, xbar: &[f64], nmax: usize) -> Vec<Vec<f64>> {
    let m = 64;
    let r = 0.5;
    let mut vals = vec![vec![C64::new(0.0, 0.0); m]; m];
    for a in 0..m {
        for b in 0..m {
            let za = C64::from_polar(r, 2.0 * PI * a as f64 / m as f64);
            let zb = C64::from_polar(r, 2.0 * PI * b as f64 / m as f64);
            vals[a][b] = generating_function(sigma, xbar, &[za, zb]);
        }
    }
    let mut out = vec![vec![0.0; nmax + 1]; nmax + 1];
    for i in 0..=nmax {
        for j in 0..=nmax {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..m {
                for b in 0..m {
                    let ph = -2.0 * PI * ((i * a) as f64 + (j * b) as f64) / m as f64;
                    acc += vals[a][b] * C64::from_polar(1.0, ph);
                }
            }
            out[i][j] = acc.re / (m * m) as f64 / r.powi((i + j) as i32);
        }
    }
    out
}

fn general_state() -> (RMat, Vec<f64>) {
    // a correlated, squeezed, displaced two-mode state
    let s = RMat::from_row_slice(
        4,
        4,
        &[1.1, 0.25, 0.05, -0.1, 0.25, 0.9, 0.12, 0.0, 0.05, 0.12, 0.8, -0.2, -0.1, 0.0, -0.2, 1.3],
    );
    (s, vec![0.4, -0.3, 0.2, 0.6])
}

#[test]
fn hermite_matches_generating_function() {
    let (s, x) = general_state();
    let want = contour_probabilities(&s, &x, 6);
    let got = hermite_fock_probabilities(&s, &x, 6).unwrap();
    for i in 0..=6 {
        for j in 0..=6 {
            let g = got.get(&[i, j]);
            assert!((g - want[i][j]).abs() < 1e-11, "({i},{j}): {g} vs {}", want[i][j]);
        }
    }
}

#[test]
fn squeezed_thermal_symmetries_match_generating_function() {
    for sym in [TwoModeSymmetry::SqueezedThermal, TwoModeSymmetry::Equal, TwoModeSymmetry::PositionOnly] {
        let e = 0.8 * sym.eps_max(1.0, 1.0);
        let (q, p) = sym.covariances(e);
        let s = two_mode_covariance(1.0, 1.0, q, p);
        let want = contour_probabilities(&s, &[0.0; 4], 5);
        let got = hermite_fock_probabilities(&s, &[0.0; 4], 5).unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                assert!((got.get(&[i, j]) - want[i][j]).abs() < 1e-11, "{sym:?} ({i},{j})");
            }
        }
    }
}

#[test]
fn pure_two_mode_squeezed_state_is_diagonal() {
    let e = TwoModeSymmetry::SqueezedThermal.eps_max(3.0, 3.0);
    let d = hermite_fock_probabilities(&two_mode_covariance(3.0, 3.0, e, -e), &[0.0; 4], 30).unwrap();
    for i in 0..=30 {
        for j in 0..=30 {
            let p = d.get(&[i, j]);
            if i == j {
                let want = 0.25 * 0.75f64.powi(i as i32);
                assert!((p - want).abs() < 1e-12, "p({i},{i}) = {p}");
            } else {
                assert!(p.abs() < 1e-12, "p({i},{j}) = {p}");
            }
        }
    }
    assert!((d.leakage - 0.75f64.powi(31)).abs() < 1e-10);
}

#[test]
fn normalization_grows_with_cutoff() {
    let (s, x) = general_state();
    let e = 0.9 * TwoModeSymmetry::SqueezedThermal.eps_max(2.0, 1.0);
    let st = two_mode_covariance(2.0, 1.0, e, -e);
    for (sig, xb) in [(s, x), (st, vec![0.0; 4])] {
        let mut prev = 0.0;
        for c in [2, 4, 8, 16, 24] {
            let total: f64 = hermite_fock_probabilities(&sig, &xb, c).unwrap().probs.iter().sum();
            assert!(total > prev && total <= 1.0 + 1e-9);
            prev = total;
        }
        assert!(prev > 0.999);
    }
}

#[test]
fn exchanging_modes_transposes_distribution() {
    let e = 0.7 * TwoModeSymmetry::SqueezedThermal.eps_max(1.5, 0.5);
    let a = hermite_fock_probabilities(&two_mode_covariance(1.5, 0.5, e, -e), &[0.0; 4], 12).unwrap();
    let b = hermite_fock_probabilities(&two_mode_covariance(0.5, 1.5, e, -e), &[0.0; 4], 12).unwrap();
    for i in 0..=12 {
        for j in 0..=12 {
            assert!((a.get(&[i, j]) - b.get(&[j, i])).abs() < 1e-14);
        }
    }
}

#[test]
fn marginals_are_thermal() {
    let e = 0.6 * TwoModeSymmetry::Equal.eps_max(1.0, 0.5);
    let d = hermite_fock_probabilities(&two_mode_covariance(1.0, 0.5, e, e), &[0.0; 4], 40).unwrap();
    for (mode, n) in [(0usize, 1.0f64), (1, 0.5)] {
        let m = d.marginal(mode);
        for (k, &p) in m.iter().enumerate().take(20) {
            let want = n.powi(k as i32) / (1.0 + n).powi(k as i32 + 1);
            assert!((p - want).abs() < 1e-8);
        }
    }
    assert!(fock_mutual_information(&d).unwrap() > 0.0);
}
