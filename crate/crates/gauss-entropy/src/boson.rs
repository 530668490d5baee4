//! Bosonic Gaussian states in the covariance-matrix picture, Caldeira–Leggett
//! models with one or several discretized baths.
//!
//! Quadratures are ordered `(q_0 … q_{N−1}, p_0 … p_{N−1})`; mode 0 is the
//! system oscillator.

use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::DVector;

use crate::fermion::EntropyLedger;
use crate::fock::{fock_mutual_information_with, hermite_fock_probabilities};
use crate::linalg::{spd_logdet, submatrix, sym_eigen_sorted};
use crate::{Error, RMat, Result};

/// Symplectic spectra below ½ by more than this are rejected.
pub const UNCERTAINTY_TOL: f64 = 1e-6;

pub fn bose(w: f64, beta: f64) -> Result<f64> {
    if beta.is_infinite() {
        return Ok(0.0);
    }
    if !(w > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Bose occupation diverges at ω = {w} for finite β"
        )));
    }
    Ok(1.0 / (beta * w).exp_m1())
}

/// Entropy of a single mode with symplectic eigenvalue ν.
pub fn mode_entropy(nu: f64) -> f64 {
    let a = nu + 0.5;
    let b = nu - 0.5;
    let lower = if b > 0.0 { b * b.ln() } else { 0.0 };
    a * a.ln() - lower
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BosonGrid {
    /// `ω_j = j ω_c / K`, `Δω = ω_c / K`
    Ohmic { omega_c: f64 },
    /// `K` levels on `[center − W/2, center + W/2]`, `Δω = W/(K−1)`
    Band { center: f64, width: f64 },
}

/// Bath with Ohmic spectral density `J(ω) = γω`, couplings `√(2J(ω)Δω/π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonBathSpec {
    pub k: usize,
    pub gamma: f64,
    /// `f64::INFINITY` for a zero-temperature bath
    pub beta: f64,
    pub grid: BosonGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BosonBath {
    pub frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
    pub beta: f64,
    pub gamma: f64,
}

impl BosonBathSpec {
    pub fn build(&self) -> Result<BosonBath> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("K = {} < 2", self.k)));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidParameter(format!("γ = {} must be positive", self.gamma)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParameter("β must be positive".into()));
        }
        let k = self.k;
        let (frequencies, dw): (Vec<f64>, f64) = match self.grid {
            BosonGrid::Ohmic { omega_c } => {
                if !(omega_c > 0.0) {
                    return Err(Error::InvalidParameter("ω_c must be positive".into()));
                }
                let dw = omega_c / k as f64;
                ((1..=k).map(|j| j as f64 * dw).collect(), dw)
            }
            BosonGrid::Band { center, width } => {
                if !(width > 0.0) || center - 0.5 * width <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "band [{}, {}] must be positive and non-empty",
                        center - 0.5 * width,
                        center + 0.5 * width
                    )));
                }
                let dw = width / (k - 1) as f64;
                ((0..k).map(|j| center - 0.5 * width + j as f64 * dw).collect(), dw)
            }
        };
        let couplings = frequencies
            .iter()
            .map(|&w| (2.0 * self.gamma * w * dw / PI).sqrt())
            .collect();
        Ok(BosonBath { frequencies, couplings, beta: self.beta, gamma: self.gamma })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemState {
    Occupancy(f64),
    /// thermal at `k_B T` (0 is the vacuum)
    Temperature(f64),
    /// γ-weighted Bose average of the baths at ω₀
    Stationary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BosonModel {
    pub omega0: f64,
    pub baths: Vec<BosonBath>,
}

/// Covariance matrix together with the mean quadratures.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariance {
    pub sigma: RMat,
    pub xbar: DVector<f64>,
}

impl Covariance {
    pub fn modes(&self) -> usize {
        self.sigma.nrows() / 2
    }
}

impl BosonModel {
    pub fn new(omega0: f64, specs: &[BosonBathSpec]) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::InvalidParameter("ω₀ must be positive".into()));
        }
        let baths = specs.iter().map(|s| s.build()).collect::<Result<Vec<_>>>()?;
        Ok(BosonModel { omega0, baths })
    }

    pub fn dim(&self) -> usize {
        1 + self.baths.iter().map(|b| b.frequencies.len()).sum::<usize>()
    }

    pub fn bath_range(&self, b: usize) -> Range<usize> {
        let start = 1 + self.baths[..b].iter().map(|x| x.frequencies.len()).sum::<usize>();
        start..start + self.baths[b].frequencies.len()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        std::iter::once(self.omega0)
            .chain(self.baths.iter().flat_map(|b| b.frequencies.iter().copied()))
            .collect()
    }

    fn couplings(&self) -> Vec<f64> {
        self.baths.iter().flat_map(|b| b.couplings.iter().copied()).collect()
    }

    /// `ℋ` of `Ĥ = ½ d†ℋd` with `d = (a, a†)`: blocks `diag(ω) − 𝐊` and `−𝐊`,
    /// where `𝐊` carries `κ_i/2` between the system and mode i.
    pub fn hamiltonian(&self) -> RMat {
        let n = self.dim();
        let w = self.frequencies();
        let kap = self.couplings();
        let mut h = RMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            h[(i, i)] = w[i];
            h[(n + i, n + i)] = w[i];
        }
        for (i, &k) in kap.iter().enumerate() {
            let j = i + 1;
            for (r, c) in [(0, j), (j, 0)] {
                for (br, bc) in [(0, 0), (0, n), (n, 0), (n, n)] {
                    h[(br + r, bc + c)] -= 0.5 * k;
                }
            }
        }
        h
    }

    /// `M` of `Ĥ = ½ xᵀMx` written down directly from the model.
    pub fn quadrature_hamiltonian(&self) -> RMat {
        let n = self.dim();
        let w = self.frequencies();
        let mut m = RMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            m[(i, i)] = w[i];
            m[(n + i, n + i)] = w[i];
        }
        for (i, &k) in self.couplings().iter().enumerate() {
            m[(0, i + 1)] = -k;
            m[(i + 1, 0)] = -k;
        }
        m
    }

    pub fn stationary_occupancy(&self) -> Result<f64> {
        let mut num = 0.0;
        let mut den = 0.0;
        for b in &self.baths {
            num += b.gamma * bose(self.omega0, b.beta)?;
            den += b.gamma;
        }
        Ok(num / den)
    }

    /// `Σ(0) = diag(ς, ς) + ½` with the baths thermal, x̄ = 0.
    pub fn initial_covariance(&self, system: SystemState) -> Result<Covariance> {
        let n0 = match system {
            SystemState::Occupancy(n) => n,
            SystemState::Temperature(t) if t == 0.0 => 0.0,
            SystemState::Temperature(t) if t > 0.0 => bose(self.omega0, 1.0 / t)?,
            SystemState::Temperature(t) => {
                return Err(Error::InvalidParameter(format!("temperature {t} < 0")))
            }
            SystemState::Stationary => self.stationary_occupancy()?,
        };
        if !(n0 >= 0.0) {
            return Err(Error::InvalidParameter(format!("occupancy {n0} < 0")));
        }
        let mut occ = vec![n0];
        for b in &self.baths {
            for &w in &b.frequencies {
                occ.push(bose(w, b.beta)?);
            }
        }
        Ok(diagonal_covariance(&occ))
    }
}

pub fn diagonal_covariance(occ: &[f64]) -> Covariance {
    let n = occ.len();
    let mut sigma = RMat::zeros(2 * n, 2 * n);
    for (i, &x) in occ.iter().enumerate() {
        sigma[(i, i)] = x + 0.5;
        sigma[(n + i, n + i)] = x + 0.5;
    }
    Covariance { sigma, xbar: DVector::zeros(2 * n) }
}

/// `M = Re(𝒰†ℋ𝒰)`; the imaginary part only carries commutator constants.
pub fn quadrature_matrix(h: &RMat) -> Result<RMat> {
    let n2 = h.nrows();
    if n2 % 2 != 0 || h.ncols() != n2 {
        return Err(Error::DimensionMismatch { expected: n2 + n2 % 2, got: n2 });
    }
    // for real ℋ = [[A, B], [C, D]] the real part of 𝒰†ℋ𝒰 is
    // diag(A+B+C+D, A−B−C+D)/2
    let n = n2 / 2;
    let a = h.view((0, 0), (n, n));
    let b = h.view((0, n), (n, n));
    let c = h.view((n, 0), (n, n));
    let d = h.view((n, n), (n, n));
    let mut m = RMat::zeros(n2, n2);
    m.view_mut((0, 0), (n, n)).copy_from(&((a + b + c + d) * 0.5));
    m.view_mut((n, n), (n, n)).copy_from(&((a - b - c + d) * 0.5));
    Ok((&m + m.transpose()) * 0.5)
}

fn symplectic_form(n: usize) -> RMat {
    let mut om = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        om[(i, n + i)] = 1.0;
        om[(n + i, i)] = -1.0;
    }
    om
}

fn sym_sqrt(a: &RMat, inverse: bool) -> RMat {
    let n = a.nrows();
    let off_diagonal = (0..n).any(|c| (0..n).any(|r| r != c && a[(r, c)] != 0.0));
    if !off_diagonal {
        let d = a.diagonal().map(|x| if inverse { 1.0 / x.sqrt() } else { x.sqrt() });
        return RMat::from_diagonal(&d);
    }
    let (vals, v) = sym_eigen_sorted(a.clone());
    let d: Vec<f64> = vals.iter().map(|&x| if inverse { 1.0 / x.sqrt() } else { x.sqrt() }).collect();
    let vd = RMat::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * d[c]);
    vd * v.transpose()
}

enum Route {
    /// `q = P V ξ`, `p = P⁻¹ V Ω η`, each (ξ_k, η_k) rotating at frequency Ω_k.
    NormalModes { g: RMat, h: RMat, freqs: Vec<f64>, sig0: RMat, mean0: DVector<f64> },
    /// `S(t) = exp(ΩM t)`
    Exponential { a: RMat, cov0: Covariance },
}

/// Reusable propagator `Σ(t) = S(t) Σ(0) S(t)ᵀ` for a fixed Hamiltonian.
pub struct CovariancePropagator {
    n: usize,
    route: Route,
}

pub const SYMPLECTIC_DRIFT_TOL: f64 = 1e-7;

impl CovariancePropagator {
    /// `h` is `ℋ` in the ladder ordering.
    pub fn new(h: &RMat, cov0: &Covariance) -> Result<Self> {
        let m = quadrature_matrix(h)?;
        Self::from_quadrature(&m, cov0)
    }

    pub fn from_quadrature(m: &RMat, cov0: &Covariance) -> Result<Self> {
        let n = m.nrows() / 2;
        if cov0.sigma.nrows() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, got: cov0.sigma.nrows() });
        }
        let mq = m.view((0, 0), (n, n)).into_owned();
        let mp = m.view((n, n), (n, n)).into_owned();
        let cross = m.view((0, n), (n, n)).amax();
        let mp_vals = sym_eigen_sorted(mp.clone()).0;
        if cross == 0.0 && mp_vals.first().is_some_and(|&x| x > 0.0) {
            let p = sym_sqrt(&mp, false);
            let pinv = sym_sqrt(&mp, true);
            let (w2, v) = sym_eigen_sorted(&p * &mq * &p);
            if w2.first().is_some_and(|&x| x > 0.0) {
                let defect = (v.transpose() * &v - RMat::identity(n, n)).amax();
                if defect > SYMPLECTIC_DRIFT_TOL {
                    return Err(Error::Numerical(format!("normal-mode basis drift {defect:e}")));
                }
                let freqs: Vec<f64> = w2.iter().map(|x| x.sqrt()).collect();
                let g = &p * &v;
                let h = &pinv * &v * RMat::from_diagonal(&DVector::from_vec(freqs.clone()));
                // forward map x → (ξ, η)
                let fq = v.transpose() * &pinv;
                let inv_f = RMat::from_diagonal(&DVector::from_iterator(n, freqs.iter().map(|x| 1.0 / x)));
                let fp = inv_f * v.transpose() * &p;
                let s0 = &cov0.sigma;
                let mut sig0 = RMat::zeros(2 * n, 2 * n);
                let qq = &fq * s0.view((0, 0), (n, n)) * fq.transpose();
                let pp = &fp * s0.view((n, n), (n, n)) * fp.transpose();
                sig0.view_mut((0, 0), (n, n)).copy_from(&qq);
                sig0.view_mut((n, n), (n, n)).copy_from(&pp);
                if s0.view((0, n), (n, n)).amax() != 0.0 {
                    let qp = &fq * s0.view((0, n), (n, n)) * fp.transpose();
                    sig0.view_mut((0, n), (n, n)).copy_from(&qp);
                    sig0.view_mut((n, 0), (n, n)).copy_from(&qp.transpose());
                }
                let mut mean0 = DVector::zeros(2 * n);
                mean0.rows_mut(0, n).copy_from(&(&fq * cov0.xbar.rows(0, n)));
                mean0.rows_mut(n, n).copy_from(&(&fp * cov0.xbar.rows(n, n)));
                return Ok(CovariancePropagator {
                    n,
                    route: Route::NormalModes { g, h, freqs, sig0, mean0 },
                });
            }
        }
        let a = symplectic_form(n) * m;
        Ok(CovariancePropagator { n, route: Route::Exponential { a, cov0: cov0.clone() } })
    }

    pub fn uses_normal_modes(&self) -> bool {
        matches!(self.route, Route::NormalModes { .. })
    }

    pub fn at(&self, t: f64) -> Result<Covariance> {
        let n = self.n;
        match &self.route {
            Route::NormalModes { g, h, freqs, sig0, mean0 } => {
                let c: Vec<f64> = freqs.iter().map(|w| (w * t).cos()).collect();
                let s: Vec<f64> = freqs.iter().map(|w| (w * t).sin()).collect();
                let x = sig0.view((0, 0), (n, n));
                let y = sig0.view((0, n), (n, n));
                let z = sig0.view((n, n), (n, n));
                let mut xn = RMat::zeros(n, n);
                let mut yn = RMat::zeros(n, n);
                let mut zn = RMat::zeros(n, n);
                for l in 0..n {
                    for k in 0..n {
                        let (ck, sk, cl, sl) = (c[k], s[k], c[l], s[l]);
                        let (xv, ykl, ylk, zv) = (x[(k, l)], y[(k, l)], y[(l, k)], z[(k, l)]);
                        xn[(k, l)] = ck * cl * xv + ck * sl * ykl + sk * cl * ylk + sk * sl * zv;
                        yn[(k, l)] = -ck * sl * xv + ck * cl * ykl - sk * sl * ylk + sk * cl * zv;
                        zn[(k, l)] = sk * sl * xv - sk * cl * ykl - ck * sl * ylk + ck * cl * zv;
                    }
                }
                let qq = g * xn * g.transpose();
                let qp = g * yn * h.transpose();
                let pp = h * zn * h.transpose();
                let mut sigma = RMat::zeros(2 * n, 2 * n);
                sigma.view_mut((0, 0), (n, n)).copy_from(&qq);
                sigma.view_mut((0, n), (n, n)).copy_from(&qp);
                sigma.view_mut((n, 0), (n, n)).copy_from(&qp.transpose());
                sigma.view_mut((n, n), (n, n)).copy_from(&pp);
                let sigma = (&sigma + sigma.transpose()) * 0.5;
                let xi: DVector<f64> =
                    DVector::from_fn(n, |k, _| c[k] * mean0[k] + s[k] * mean0[n + k]);
                let eta: DVector<f64> =
                    DVector::from_fn(n, |k, _| -s[k] * mean0[k] + c[k] * mean0[n + k]);
                let mut xbar = DVector::zeros(2 * n);
                xbar.rows_mut(0, n).copy_from(&(g * xi));
                xbar.rows_mut(n, n).copy_from(&(h * eta));
                Ok(Covariance { sigma, xbar })
            }
            Route::Exponential { a, cov0 } => {
                let s = (a * t).exp();
                let om = symplectic_form(n);
                let drift = (&s * &om * s.transpose() - &om).amax();
                if drift > SYMPLECTIC_DRIFT_TOL {
                    return Err(Error::Numerical(format!(
                        "propagator is not symplectic (drift {drift:e}); ℋ is ill-conditioned"
                    )));
                }
                let sigma = &s * &cov0.sigma * s.transpose();
                let sigma = (&sigma + sigma.transpose()) * 0.5;
                Ok(Covariance { sigma, xbar: &s * &cov0.xbar })
            }
        }
    }
}

pub fn evolve_covariance(cov0: &Covariance, h: &RMat, t: f64) -> Result<Covariance> {
    CovariancePropagator::new(h, cov0)?.at(t)
}

/// Exact propagator `exp(ΩMt)` for a quadrature Hamiltonian matrix.
pub fn symplectic_propagator(m: &RMat, t: f64) -> RMat {
    (symplectic_form(m.nrows() / 2) * m * t).exp()
}

/// Positive eigenvalues of `iΩΣ`, descending.
///
/// With `Σ = LLᵀ` they are the singular values of the antisymmetric `LᵀΩL`,
/// which come in equal pairs.
pub fn symplectic_eigenvalues(sigma: &RMat) -> Result<Vec<f64>> {
    let n2 = sigma.nrows();
    if n2 % 2 != 0 || sigma.ncols() != n2 {
        return Err(Error::DimensionMismatch { expected: n2 + n2 % 2, got: n2 });
    }
    if n2 == 2 {
        let d = sigma[(0, 0)] * sigma[(1, 1)] - sigma[(0, 1)] * sigma[(1, 0)];
        return check_uncertainty(vec![d.max(0.0).sqrt()]);
    }
    let l = sigma
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Unphysical("covariance matrix is not positive definite".into()))?
        .unpack();
    let a = l.transpose() * symplectic_form(n2 / 2) * &l;
    let (vals, _) = sym_eigen_sorted(a.transpose() * &a);
    let mut nu: Vec<f64> = vals
        .chunks(2)
        .map(|p| (0.5 * (p[0] + p[1])).max(0.0).sqrt())
        .collect();
    nu.reverse();
    check_uncertainty(nu)
}

fn check_uncertainty(nu: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(&bad) = nu.iter().find(|&&x| x < 0.5 - UNCERTAINTY_TOL) {
        return Err(Error::Unphysical(format!(
            "symplectic eigenvalue {bad} < 1/2 violates the uncertainty relation"
        )));
    }
    Ok(nu)
}

pub fn vn_entropy_bose(sigma: &RMat) -> Result<f64> {
    Ok(symplectic_eigenvalues(sigma)?.into_iter().map(mode_entropy).sum())
}

/// Rows/columns `{i, N+i}` of every listed mode.
pub fn mode_subset(sigma: &RMat, modes: &[usize]) -> RMat {
    let n = sigma.nrows() / 2;
    let idx: Vec<usize> = modes.iter().copied().chain(modes.iter().map(|&i| n + i)).collect();
    submatrix(sigma, &idx)
}

fn mode_block(sigma: &RMat, i: usize) -> [f64; 3] {
    let n = sigma.nrows() / 2;
    [sigma[(i, i)], sigma[(i, n + i)], sigma[(n + i, n + i)]]
}

fn block_nu([qq, qp, pp]: [f64; 3]) -> f64 {
    (qq * pp - qp * qp).max(0.0).sqrt()
}

fn block_wehrl([qq, qp, pp]: [f64; 3]) -> f64 {
    0.5 * ((qq + 0.5) * (pp + 0.5) - qp * qp).ln() + 1.0
}

/// `S^W = ½ ln det(Σ + 𝟙/2) + N`.
pub fn wehrl_entropy(sigma: &RMat) -> Result<f64> {
    let n2 = sigma.nrows();
    let shifted = sigma + RMat::identity(n2, n2) * 0.5;
    Ok(0.5 * spd_logdet(shifted)? + (n2 / 2) as f64)
}

/// `Σ_parts S^W(part) − S^W(all)`; `partition` lists mode groups covering
/// the state.
pub fn wehrl_mutual_information(sigma: &RMat, partition: &[Vec<usize>]) -> Result<f64> {
    let mut parts = 0.0;
    for group in partition {
        parts += wehrl_entropy(&mode_subset(sigma, group))?;
    }
    Ok(parts - wehrl_entropy(sigma)?)
}

pub fn per_mode_partition(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i]).collect()
}

#[derive(Debug, Clone, Default)]
pub struct BoseLedgerOptions {
    /// also compute I_SE / I_env (one eigensolve of the environment block)
    pub system_environment: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoseLedger {
    /// fields without a bosonic counterpart are NaN
    pub ledger: EntropyLedger,
    /// Wehrl mutual information over all modes
    pub j_w: f64,
    /// Wehrl mutual information between system and environment
    pub j_w_se: f64,
}

fn mode_energy(w: f64, sigma: &RMat, xbar: &DVector<f64>, i: usize) -> f64 {
    let n = sigma.nrows() / 2;
    0.5 * w * (sigma[(i, i)] + sigma[(n + i, n + i)] + xbar[i] * xbar[i] + xbar[n + i] * xbar[n + i])
}

pub fn bose_entropy_ledger(
    cov_t: &Covariance,
    cov_0: &Covariance,
    model: &BosonModel,
    t: f64,
    opts: &BoseLedgerOptions,
) -> Result<BoseLedger> {
    let n = model.dim();
    if cov_t.modes() != n || cov_0.modes() != n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: cov_t.sigma.nrows() });
    }
    if model.baths.iter().any(|b| b.beta.is_infinite()) {
        return Err(Error::InvalidParameter(
            "entropy ledger needs finite bath temperatures".into(),
        ));
    }
    let (st, s0) = (&cov_t.sigma, &cov_0.sigma);
    // the global entropy is conserved; take it from the initial state
    let s_se = vn_entropy_bose(s0)?;
    let blocks: Vec<[f64; 3]> = (0..n).map(|i| mode_block(st, i)).collect();
    let nus = check_uncertainty(blocks.iter().map(|&b| block_nu(b)).collect())?;
    let s_modes: Vec<f64> = nus.iter().map(|&v| mode_entropy(v)).collect();
    let s_s = s_modes[0];
    let s_k: f64 = s_modes[1..].iter().sum();
    let i_m = s_s + s_k - s_se;
    let ds_system = s_s - mode_entropy(block_nu(mode_block(s0, 0)));

    let mut heat = Vec::with_capacity(model.baths.len());
    let mut beta_q = 0.0;
    let mut d_env = 0.0;
    for (b, bath) in model.baths.iter().enumerate() {
        let mut q = 0.0;
        for (i, idx) in model.bath_range(b).enumerate() {
            let w = bath.frequencies[i];
            let e_t = mode_energy(w, st, &cov_t.xbar, idx);
            q -= e_t - mode_energy(w, s0, &cov_0.xbar, idx);
            let neq = bose(w, bath.beta)?;
            let e_eq = w * (neq + 0.5);
            d_env += bath.beta * (e_t - e_eq) + mode_entropy(neq + 0.5) - s_modes[idx];
        }
        beta_q += bath.beta * q;
        heat.push(q);
    }
    let sigma = ds_system - beta_q;

    let env: Vec<usize> = (1..n).collect();
    let sw_all = wehrl_entropy(st)?;
    let sw_modes: f64 = blocks.iter().map(|&b| block_wehrl(b)).sum();
    let j_w = sw_modes - sw_all;
    let j_w_se = block_wehrl(blocks[0]) + wehrl_entropy(&mode_subset(st, &env))? - sw_all;

    let (i_se, i_env) = if opts.system_environment {
        let s_e = vn_entropy_bose(&mode_subset(st, &env))?;
        (s_s + s_e - s_se, s_k - s_e)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(BoseLedger {
        ledger: EntropyLedger {
            t,
            sigma,
            i_m,
            d_env,
            j_bound: None,
            i_se,
            i_env,
            j_se: f64::NAN,
            heat_total: heat.iter().sum(),
            heat,
            ds_system,
            hs_lower: f64::NAN,
            gh_lower: f64::NAN,
        },
        j_w,
        j_w_se,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeSymmetry {
    /// `ε_q = −ε_p = ε`
    SqueezedThermal,
    /// `ε_q = ε_p = ε`
    Equal,
    /// `ε_q = ε`, `ε_p = 0`
    PositionOnly,
}

impl TwoModeSymmetry {
    pub fn eps_max(self, ni: f64, nj: f64) -> f64 {
        match self {
            TwoModeSymmetry::SqueezedThermal => ((ni.max(nj) + 1.0) * ni.min(nj)).sqrt(),
            TwoModeSymmetry::Equal => (ni * nj).sqrt(),
            TwoModeSymmetry::PositionOnly => {
                2.0 * (ni * (1.0 + ni) * nj * (1.0 + nj) / ((1.0 + 2.0 * ni) * (1.0 + 2.0 * nj))).sqrt()
            }
        }
    }

    /// `(ε_q, ε_p)` for correlation strength ε.
    pub fn covariances(self, eps: f64) -> (f64, f64) {
        match self {
            TwoModeSymmetry::SqueezedThermal => (eps, -eps),
            TwoModeSymmetry::Equal => (eps, eps),
            TwoModeSymmetry::PositionOnly => (eps, 0.0),
        }
    }

    fn detect(eps_q: f64, eps_p: f64) -> Option<Self> {
        if eps_p == 0.0 {
            Some(TwoModeSymmetry::PositionOnly)
        } else if eps_q == -eps_p {
            Some(TwoModeSymmetry::SqueezedThermal)
        } else if eps_q == eps_p {
            Some(TwoModeSymmetry::Equal)
        } else {
            None
        }
    }
}

/// Two-mode standard form with position covariance ε_q and momentum
/// covariance ε_p.
pub fn two_mode_covariance(ni: f64, nj: f64, eps_q: f64, eps_p: f64) -> RMat {
    RMat::from_row_slice(
        4,
        4,
        &[
            ni + 0.5, eps_q, 0.0, 0.0, //
            eps_q, nj + 0.5, 0.0, 0.0, //
            0.0, 0.0, ni + 0.5, eps_p, //
            0.0, 0.0, eps_p, nj + 0.5,
        ],
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeBose {
    pub i_ij: f64,
    pub j_w: f64,
    pub j_f: f64,
    /// probability outside the Fock cutoff used for J^F
    pub leakage: f64,
}

/// Total, Wehrl and Fock-basis mutual information of a two-mode standard-form
/// state. J^F is evaluated at `cutoff` whatever the leakage; check `leakage`.
pub fn two_mode_bose(ni: f64, nj: f64, eps_q: f64, eps_p: f64, cutoff: usize) -> Result<TwoModeBose> {
    if !(ni >= 0.0 && nj >= 0.0) {
        return Err(Error::InvalidParameter("occupancies must be non-negative".into()));
    }
    let sigma = two_mode_covariance(ni, nj, eps_q, eps_p);
    let nu = symplectic_eigenvalues(&sigma).map_err(|e| match TwoModeSymmetry::detect(eps_q, eps_p) {
        Some(sym) => Error::Unphysical(format!(
            "ε = {} exceeds ε_max = {} for {sym:?} at ({ni}, {nj})",
            eps_q.abs().max(eps_p.abs()),
            sym.eps_max(ni, nj)
        )),
        None => e,
    })?;
    let s_ij: f64 = nu.iter().map(|&v| mode_entropy(v)).sum();
    let i_ij = mode_entropy(ni + 0.5) + mode_entropy(nj + 0.5) - s_ij;
    let parts = per_mode_partition(2);
    let j_w = wehrl_mutual_information(&sigma, &parts)?;
    let dist = hermite_fock_probabilities(&sigma, &[0.0; 4], cutoff)?;
    let j_f = fock_mutual_information_with(&dist, f64::INFINITY)?;
    Ok(TwoModeBose { i_ij: i_ij.max(0.0), j_w: j_w.max(0.0), j_f, leakage: dist.leakage })
}
