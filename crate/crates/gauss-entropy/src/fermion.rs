//! Number-conserving fermionic Gaussian states, `C_ij = ⟨c_i† c_j⟩`.
//!
//! Mode 0 is the system level; bath modes follow bath by bath.

use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::DVector;

use crate::chain::{self, ChainOrdering};
use crate::linalg::{
    binary_entropy, from_parts, hermitian_defect, hermitian_eigenvalues, imag_part,
    occupation_entropy, real_part, sym_eigen_sorted, OCCUPATION_TOL,
};
use crate::{CMat, Error, RMat, Result, C64};

pub fn fermi(e: f64, beta: f64, mu: f64) -> f64 {
    let x = beta * (e - mu);
    if x > 0.0 {
        let ex = (-x).exp();
        ex / (1.0 + ex)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// Discretized band: `k` levels spanning `[center − W/2, center + W/2]`
/// (edges included) with flat couplings `√(ΓW/(2π(K−1)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionBathSpec {
    pub k: usize,
    pub bandwidth: f64,
    pub gamma: f64,
    pub center: f64,
    pub beta: f64,
    pub mu: f64,
}

/// A bath as explicit level energies and tunnel couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionBath {
    pub energies: Vec<f64>,
    pub couplings: Vec<f64>,
    pub beta: f64,
    pub mu: f64,
    /// total level width, kept for stationary-occupancy weights
    pub gamma: f64,
}

impl FermionBathSpec {
    pub fn build(&self) -> Result<FermionBath> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("K = {} < 2", self.k)));
        }
        if !(self.gamma > 0.0) || !(self.bandwidth > 0.0) {
            return Err(Error::InvalidParameter("Γ and W must be positive".into()));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParameter("β must be positive".into()));
        }
        let km1 = (self.k - 1) as f64;
        let energies = (0..self.k)
            .map(|i| self.center - 0.5 * self.bandwidth + self.bandwidth * i as f64 / km1)
            .collect();
        let t = (self.gamma * self.bandwidth / (2.0 * PI * km1)).sqrt();
        Ok(FermionBath {
            energies,
            couplings: vec![t; self.k],
            beta: self.beta,
            mu: self.mu,
            gamma: self.gamma,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionModel {
    pub eps0: f64,
    pub baths: Vec<FermionBath>,
}

impl FermionModel {
    pub fn new(eps0: f64, specs: &[FermionBathSpec]) -> Result<Self> {
        let baths = specs.iter().map(|s| s.build()).collect::<Result<Vec<_>>>()?;
        Ok(FermionModel { eps0, baths })
    }

    pub fn dim(&self) -> usize {
        1 + self.baths.iter().map(|b| b.energies.len()).sum::<usize>()
    }

    pub fn bath_range(&self, b: usize) -> Range<usize> {
        let start = 1 + self.baths[..b].iter().map(|x| x.energies.len()).sum::<usize>();
        start..start + self.baths[b].energies.len()
    }

    /// (energy, β, μ) of every bath mode in matrix order.
    pub fn bath_modes(&self) -> Vec<(f64, f64, f64)> {
        self.baths
            .iter()
            .flat_map(|b| b.energies.iter().map(move |&e| (e, b.beta, b.mu)))
            .collect()
    }

    pub fn mode_energies(&self) -> Vec<f64> {
        std::iter::once(self.eps0)
            .chain(self.baths.iter().flat_map(|b| b.energies.iter().copied()))
            .collect()
    }

    /// Single-particle Hamiltonian: level energies on the diagonal, system row
    /// coupled to every bath level.
    pub fn hamiltonian(&self) -> RMat {
        let n = self.dim();
        let mut h = RMat::zeros(n, n);
        h[(0, 0)] = self.eps0;
        for (b, bath) in self.baths.iter().enumerate() {
            for (i, idx) in self.bath_range(b).enumerate() {
                h[(idx, idx)] = bath.energies[i];
                h[(0, idx)] = bath.couplings[i];
                h[(idx, 0)] = bath.couplings[i];
            }
        }
        h
    }

    /// Occupancy the level relaxes to under weak coupling:
    /// Γ-weighted average of the bath Fermi functions at ε₀.
    pub fn stationary_occupancy(&self) -> f64 {
        let wsum: f64 = self.baths.iter().map(|b| b.gamma).sum();
        self.baths
            .iter()
            .map(|b| b.gamma * fermi(self.eps0, b.beta, b.mu))
            .sum::<f64>()
            / wsum
    }

    /// Product initial state: system occupancy `n0`, baths grand-canonical.
    pub fn initial_correlation(&self, n0: f64) -> Result<CMat> {
        if !(0.0..=1.0).contains(&n0) {
            return Err(Error::InvalidParameter(format!(
                "system occupancy {n0} outside [0,1]"
            )));
        }
        let mut diag = vec![n0];
        for (e, beta, mu) in self.bath_modes() {
            diag.push(fermi(e, beta, mu));
        }
        Ok(CMat::from_diagonal(&DVector::from_vec(
            diag.into_iter().map(|x| C64::new(x, 0.0)).collect(),
        )))
    }

    /// Bath modes ordered for the chain bound: system first, then bath levels
    /// by ascending energy (ties keep matrix order).
    pub fn chain_order(&self) -> Vec<usize> {
        let e = self.mode_energies();
        let mut rest: Vec<usize> = (1..e.len()).collect();
        rest.sort_by(|&a, &b| e[a].total_cmp(&e[b]));
        std::iter::once(0).chain(rest).collect()
    }
}

pub fn validate_correlation(c: &CMat) -> Result<()> {
    if c.nrows() != c.ncols() {
        return Err(Error::DimensionMismatch { expected: c.nrows(), got: c.ncols() });
    }
    let h = hermitian_defect(c);
    if h > 1e-12 {
        return Err(Error::Unphysical(format!("correlation matrix not Hermitian ({h:e})")));
    }
    for i in 0..c.nrows() {
        let d = c[(i, i)].re;
        if !(-OCCUPATION_TOL..=1.0 + OCCUPATION_TOL).contains(&d) {
            return Err(Error::Unphysical(format!("occupation C[{i}][{i}] = {d}")));
        }
    }
    Ok(())
}

/// Closed-form propagation `C(t) = e^{iℋt} C₀ e^{−iℋt}` for real symmetric ℋ.
///
/// With ℋ = V Λ Vᵀ the matrix `G = Vᵀ C₀ V` is fixed and
/// `C(t) = V [G ∘ e^{i(λ_a−λ_b)t}] Vᵀ`.
pub struct Evolver {
    lambda: Vec<f64>,
    v: RMat,
    g_re: RMat,
    g_im: RMat,
}

impl Evolver {
    pub fn new(h: &RMat, c0: &CMat) -> Result<Self> {
        if h.nrows() != c0.nrows() || h.ncols() != c0.ncols() || !h.is_square() {
            return Err(Error::DimensionMismatch { expected: h.nrows(), got: c0.nrows() });
        }
        let (lambda, v) = sym_eigen_sorted(h.clone());
        let vt = v.transpose();
        let g_re = &vt * real_part(c0) * &v;
        let g_im = &vt * imag_part(c0) * &v;
        Ok(Evolver { lambda, v, g_re, g_im })
    }

    pub fn at(&self, t: f64) -> CMat {
        let n = self.lambda.len();
        let phase: Vec<(f64, f64)> = self.lambda.iter().map(|l| (l * t).sin_cos()).collect();
        let mut m_re = RMat::zeros(n, n);
        let mut m_im = RMat::zeros(n, n);
        for b in 0..n {
            let (sb, cb) = phase[b];
            for a in 0..n {
                let (sa, ca) = phase[a];
                // e^{i(λa−λb)t}
                let (c, s) = (ca * cb + sa * sb, sa * cb - ca * sb);
                let (gr, gi) = (self.g_re[(a, b)], self.g_im[(a, b)]);
                m_re[(a, b)] = gr * c - gi * s;
                m_im[(a, b)] = gr * s + gi * c;
            }
        }
        let vt = self.v.transpose();
        let re = &self.v * m_re * &vt;
        let im = &self.v * m_im * &vt;
        let mut out = from_parts(&re, &im);
        // restore exact Hermiticity lost to roundoff
        for i in 0..n {
            out[(i, i)].im = 0.0;
            for j in 0..i {
                let avg = 0.5 * (out[(i, j)] + out[(j, i)].conj());
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        out
    }
}

pub fn evolve_correlation(c0: &CMat, h: &RMat, t: f64) -> Result<CMat> {
    if t == 0.0 {
        if h.nrows() != c0.nrows() {
            return Err(Error::DimensionMismatch { expected: h.nrows(), got: c0.nrows() });
        }
        return Ok(c0.clone());
    }
    Ok(Evolver::new(h, c0)?.at(t))
}

pub fn vn_entropy(c: &CMat) -> Result<f64> {
    occupation_entropy(&hermitian_eigenvalues(c))
}

fn diag_re(c: &CMat) -> Vec<f64> {
    (0..c.nrows()).map(|i| c[(i, i)].re).collect()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntropyLedger {
    pub t: f64,
    pub sigma: f64,
    pub i_m: f64,
    pub d_env: f64,
    /// Holevo chain bound on J_M, when requested
    pub j_bound: Option<f64>,
    pub i_se: f64,
    pub i_env: f64,
    pub j_se: f64,
    /// heat extracted from each bath
    pub heat: Vec<f64>,
    pub heat_total: f64,
    pub ds_system: f64,
    pub hs_lower: f64,
    pub gh_lower: f64,
}

#[derive(Debug, Clone, Default)]
pub struct LedgerOptions {
    pub chain: Option<ChainOrdering>,
}

/// Per-mode relative entropy to the grand-canonical state, Gaussian closed form.
pub fn mode_relative_entropy(n: f64, e: f64, beta: f64, mu: f64) -> f64 {
    let neq = fermi(e, beta, mu);
    beta * (e - mu) * (n - neq) + binary_entropy(neq) - binary_entropy(n)
}

pub fn entropy_ledger(
    c_t: &CMat,
    c_0: &CMat,
    model: &FermionModel,
    t: f64,
    opts: &LedgerOptions,
) -> Result<EntropyLedger> {
    let n = model.dim();
    if c_t.nrows() != n || c_0.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: c_t.nrows() });
    }
    let d_t = diag_re(c_t);
    let d_0 = diag_re(c_0);
    let s_se = vn_entropy(c_0)?;
    let s_s = binary_entropy(d_t[0]);
    let env = c_t.view((1, 1), (n - 1, n - 1)).into_owned();
    let s_e = vn_entropy(&env)?;
    let s_k: f64 = d_t[1..].iter().map(|&x| binary_entropy(x)).sum();

    let i_m = s_s + s_k - s_se;
    let i_se = s_s + s_e - s_se;
    let i_env = s_k - s_e;
    let ds_system = s_s - binary_entropy(d_0[0]);

    let mut heat = Vec::with_capacity(model.baths.len());
    let mut beta_q = 0.0;
    let mut d_env = 0.0;
    for (b, bath) in model.baths.iter().enumerate() {
        let mut q = 0.0;
        for (i, idx) in model.bath_range(b).enumerate() {
            let e = bath.energies[i];
            let dn = d_t[idx] - d_0[idx];
            q += -e * dn + bath.mu * dn;
            d_env += mode_relative_entropy(d_t[idx], e, bath.beta, bath.mu);
        }
        beta_q += bath.beta * q;
        heat.push(q);
    }
    let sigma = ds_system - beta_q;
    let hs = hs_lower_bound(c_t);
    let (a, b, e) = localized_pair(c_t);
    let j_se = two_mode_fermi_unchecked(a, b, e).j_f;
    let j_bound = match &opts.chain {
        Some(ord) => Some(chain::holevo_chain_bound(c_t, &ord.resolve(model))?.total),
        None => None,
    };
    Ok(EntropyLedger {
        t,
        sigma,
        i_m,
        d_env,
        j_bound,
        i_se,
        i_env,
        j_se,
        heat_total: heat.iter().sum(),
        heat,
        ds_system,
        hs_lower: hs.bernigau,
        gh_lower: hs.gullans_huse,
    })
}

// |C_ij| below 1e-12 is round-off from the propagator, not a physical coherence
const NEGLIGIBLE_COHERENCE2: f64 = 1e-24;

/// Total correlation from the small-off-diagonal expansion.
pub fn perturbative_total_correlation(c: &CMat) -> Result<f64> {
    let n = c.nrows();
    let d = diag_re(c);
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let e2 = c[(i, j)].norm_sqr();
            if e2 < NEGLIGIBLE_COHERENCE2 {
                continue;
            }
            let (a, b) = (d[i], d[j]);
            if a <= 0.0 || a >= 1.0 || b <= 0.0 || b >= 1.0 {
                return Err(Error::Unphysical(format!(
                    "pure occupation with nonzero coherence at ({i},{j})"
                )));
            }
            total += if (a - b).abs() < 1e-9 {
                0.5 * e2 / (a * (1.0 - a))
            } else {
                0.5 * e2 / (a - b) * ((a * (1.0 - b)) / (b * (1.0 - a))).ln()
            };
        }
    }
    Ok(total)
}

/// Fock-basis classical correlation to fourth order in the coherences:
/// `Σ_{i<j} |C_ij|⁴ / (2 n_i(1−n_i) n_j(1−n_j))`.
pub fn perturbative_fock_correlation(c: &CMat) -> Result<f64> {
    let n = c.nrows();
    let d = diag_re(c);
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let e2 = c[(i, j)].norm_sqr();
            if e2 < NEGLIGIBLE_COHERENCE2 {
                continue;
            }
            let den = d[i] * (1.0 - d[i]) * d[j] * (1.0 - d[j]);
            if !(den > 0.0) {
                return Err(Error::Unphysical(format!(
                    "pure occupation with nonzero coherence at ({i},{j})"
                )));
            }
            total += 0.5 * e2 * e2 / den;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsBounds {
    pub bernigau: f64,
    pub gullans_huse: f64,
}

pub fn hs_lower_bound(c: &CMat) -> HsBounds {
    let n = c.nrows();
    let mut off = 0.0;
    let mut total_n = 0.0;
    for i in 0..n {
        total_n += c[(i, i)].re;
        for j in 0..n {
            if i != j {
                off += c[(i, j)].norm_sqr();
            }
        }
    }
    let denom = total_n * (n as f64 - total_n);
    let gh = if off == 0.0 || denom <= 0.0 {
        0.0
    } else {
        n as f64 * off * off / denom
    };
    HsBounds { bernigau: 2.0 * off, gullans_huse: gh }
}

#[derive(Debug, Clone)]
pub struct Conditional {
    /// state after finding the mode empty, if that outcome is possible
    pub c0: Option<CMat>,
    /// state after finding the mode occupied
    pub c1: Option<CMat>,
    pub p_occupied: f64,
}

/// Gaussian states conditioned on a Fock measurement of mode `m`.
pub fn conditional_correlation_matrices(c: &CMat, m: usize) -> Result<Conditional> {
    let n = c.nrows();
    if m >= n {
        return Err(Error::InvalidParameter(format!("mode {m} out of range")));
    }
    let p = c[(m, m)].re.clamp(0.0, 1.0);
    let keep: Vec<usize> = (0..n).filter(|&i| i != m).collect();
    let k = keep.len();
    let base = CMat::from_fn(k, k, |a, b| c[(keep[a], keep[b])]);
    let outer = CMat::from_fn(k, k, |a, b| c[(keep[a], m)] * c[(m, keep[b])]);
    let c1 = (p > 0.0).then(|| &base - &outer / C64::new(p, 0.0));
    let c0 = (p < 1.0).then(|| &base + &outer / C64::new(1.0 - p, 0.0));
    Ok(Conditional { c0, c1, p_occupied: p })
}

#[derive(Debug, Clone)]
pub struct Localized {
    pub c_tilde: CMat,
    pub j_se: f64,
    pub i_se: f64,
    pub separable_witness: bool,
}

/// `(C̃₀₀, C̃₁₁, |C̃₀₁|)` of the localized frame without forming `C̃`: the
/// system only talks to the environment mode along `(C₀ⱼ)†`.
pub fn localized_pair(c: &CMat) -> (f64, f64, f64) {
    let n = c.nrows();
    let x: Vec<C64> = (1..n).map(|j| c[(0, j)].conj()).collect();
    let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if xnorm == 0.0 {
        return (c[(0, 0)].re, c[(1, 1)].re, 0.0);
    }
    // normalized coupling vector w; C̃₁₁ = w†C_env w up to a phase of w
    let w: Vec<C64> = x.iter().map(|z| z / xnorm).collect();
    let mut b = 0.0;
    for j in 0..n - 1 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n - 1 {
            acc += w[i].conj() * c[(i + 1, j + 1)];
        }
        b += (acc * w[j]).re;
    }
    (c[(0, 0)].re, b, xnorm)
}

/// Rotates the environment with a Householder reflection so the system
/// couples to environment mode 1 only.
pub fn householder_localize(c: &CMat) -> Result<Localized> {
    let n = c.nrows();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two modes".into()));
    }
    let m = n - 1;
    // x = (C_0j)† over the environment
    let x: Vec<C64> = (1..n).map(|j| c[(0, j)].conj()).collect();
    let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut p = CMat::identity(n, n);
    if xnorm > 0.0 && x[1..].iter().any(|z| z.norm() > 0.0) {
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let mut u = x.clone();
        u[0] += phase * xnorm;
        let unorm2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        for a in 0..m {
            for b in 0..m {
                p[(a + 1, b + 1)] -= u[a] * u[b].conj() * (2.0 / unorm2);
            }
        }
    }
    let mut ct = &p * c * p.adjoint();
    for i in 0..n {
        ct[(i, i)].im = 0.0;
    }
    let s_se = vn_entropy(c)?;
    let s_s = binary_entropy(ct[(0, 0)].re);
    let s_e = vn_entropy(&ct.view((1, 1), (m, m)).into_owned())?;
    let i_se = s_s + s_e - s_se;
    let pair = two_mode_fermi_unchecked(ct[(0, 0)].re, ct[(1, 1)].re, ct[(0, 1)].norm());
    Ok(Localized {
        c_tilde: ct,
        j_se: pair.j_f,
        i_se,
        separable_witness: i_se > std::f64::consts::LN_2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoMode {
    /// p(0,0), p(0,1), p(1,0), p(1,1)
    pub probabilities: [f64; 4],
    pub i_ij: f64,
    pub j_f: f64,
}

pub fn two_mode_eps_max(ni: f64, nj: f64) -> f64 {
    (ni * nj).sqrt().min(((1.0 - ni) * (1.0 - nj)).sqrt())
}

/// Two modes with occupations `ni`, `nj` and real coherence `eps`.
pub fn two_mode_fermi(ni: f64, nj: f64, eps: f64) -> Result<TwoMode> {
    if !(0.0..=1.0).contains(&ni) || !(0.0..=1.0).contains(&nj) {
        return Err(Error::InvalidParameter("occupations must lie in [0,1]".into()));
    }
    let emax = two_mode_eps_max(ni, nj);
    if eps < 0.0 || eps > emax * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} outside [0, eps_max = {emax}]"
        )));
    }
    Ok(two_mode_fermi_unchecked(ni, nj, eps))
}

fn two_mode_fermi_unchecked(ni: f64, nj: f64, eps: f64) -> TwoMode {
    let e2 = eps * eps;
    let p = [
        ((1.0 - ni) * (1.0 - nj) - e2).max(0.0),
        ((1.0 - ni) * nj + e2).max(0.0),
        (ni * (1.0 - nj) + e2).max(0.0),
        (ni * nj - e2).max(0.0),
    ];
    let pi = [
        (1.0 - ni) * (1.0 - nj),
        (1.0 - ni) * nj,
        ni * (1.0 - nj),
        ni * nj,
    ];
    let j_f = p
        .iter()
        .zip(pi.iter())
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| a * (a / b).ln())
        .sum::<f64>()
        .max(0.0);
    let mean = 0.5 * (ni + nj);
    let half = (0.25 * (ni - nj) * (ni - nj) + e2).sqrt();
    let i_ij = binary_entropy(ni) + binary_entropy(nj)
        - binary_entropy(mean + half)
        - binary_entropy(mean - half);
    TwoMode { probabilities: p, i_ij: i_ij.max(0.0), j_f }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(a: f64, b: f64, e: f64) -> CMat {
        CMat::from_row_slice(
            2,
            2,
            &[C64::new(a, 0.0), C64::new(e, 0.0), C64::new(e, 0.0), C64::new(b, 0.0)],
        )
    }

    #[test]
    fn perturbative_fock_matches_two_mode_series() {
        for eps in [1e-3, 1e-2] {
            let exact = two_mode_fermi(0.5, 0.4, eps).unwrap().j_f;
            let pert = perturbative_fock_correlation(&c2(0.5, 0.4, eps)).unwrap();
            assert!((pert / exact - 1.0).abs() < 10.0 * eps * eps + 1e-6);
        }
    }

    #[test]
    fn resonant_pair_oscillates() {
        // ⟨N₀⟩(t) = f sin²(gt) for a degenerate pair
        let g = 0.3;
        let f = 0.7;
        let model = FermionModel {
            eps0: 0.0,
            baths: vec![FermionBath {
                energies: vec![0.0],
                couplings: vec![g],
                beta: 1.0,
                mu: 0.0,
                gamma: 1.0,
            }],
        };
        let h = model.hamiltonian();
        assert_eq!(h, RMat::from_row_slice(2, 2, &[0.0, g, g, 0.0]));
        let c0 = c2(0.0, f, 0.0);
        for &t in &[0.0, 0.4, 1.7, 5.0] {
            let c = evolve_correlation(&c0, &h, t).unwrap();
            let want = f * (g * t).sin().powi(2);
            assert!((c[(0, 0)].re - want).abs() < 1e-13);
        }
    }

    #[test]
    fn spec_validation() {
        let s = FermionBathSpec { k: 1, bandwidth: 1.0, gamma: 0.1, center: 0.0, beta: 1.0, mu: 0.0 };
        assert!(s.build().is_err());
        let s = FermionBathSpec { k: 4, gamma: 0.0, ..s };
        assert!(s.build().is_err());
        let s = FermionBathSpec { gamma: 0.1, ..s };
        let b = s.build().unwrap();
        assert_eq!(b.energies, vec![-0.5, -0.5 + 1.0 / 3.0, -0.5 + 2.0 / 3.0, 0.5]);
    }

    #[test]
    fn init_rejects_bad_occupancy_and_sets_half_at_mu() {
        let s = FermionBathSpec { k: 3, bandwidth: 2.0, gamma: 0.1, center: 0.0, beta: 2.0, mu: 0.0 };
        let m = FermionModel::new(0.0, &[s]).unwrap();
        assert!(m.initial_correlation(1.2).is_err());
        let c = m.initial_correlation(0.0).unwrap();
        assert_eq!(c[(2, 2)].re, 0.5);
    }

    #[test]
    fn vn_entropy_examples() {
        let ln2 = std::f64::consts::LN_2;
        let one = CMat::from_element(1, 1, C64::new(0.5, 0.0));
        assert!((vn_entropy(&one).unwrap() - ln2).abs() < 1e-15);
        assert_eq!(vn_entropy(&CMat::zeros(1, 1)).unwrap(), 0.0);
        // oracle: eigenvalues (0.9 ± √0.05)/2 by hand
        let g1 = (0.9 + 0.05f64.sqrt()) / 2.0;
        let g2 = (0.9 - 0.05f64.sqrt()) / 2.0;
        let want = binary_entropy(g1) + binary_entropy(g2);
        let got = vn_entropy(&c2(0.5, 0.4, 0.1)).unwrap();
        assert!((got - want).abs() < 1e-13);
        // independent eigensolver value (numpy): 1.3253203284521469
        assert!((got - 1.325_320_328_452_147).abs() < 1e-12);
    }

    #[test]
    fn perturbative_two_mode() {
        let c = c2(0.5, 0.4, 0.05);
        let want = 0.0025 / 0.1 * (0.5f64 * 0.6 / (0.4 * 0.5)).ln();
        let got = perturbative_total_correlation(&c).unwrap();
        assert!((got - want).abs() < 1e-15);
        assert!((got - 0.0101366).abs() < 1e-7);
        let exact = two_mode_fermi(0.5, 0.4, 0.05).unwrap().i_ij;
        assert!((got - exact).abs() / exact < 0.01);
        assert_eq!(perturbative_total_correlation(&c2(0.3, 0.6, 0.0)).unwrap(), 0.0);
        // degenerate diagonal uses the analytic limit
        let d = perturbative_total_correlation(&c2(0.5, 0.5, 0.01)).unwrap();
        assert!((d - 1e-4 / 0.25).abs() < 1e-15);
        assert!(perturbative_total_correlation(&c2(1.0, 0.5, 0.01)).is_err());
    }

    #[test]
    fn hs_bound_infinite_temperature() {
        let c = c2(0.5, 0.5, 0.1);
        let b = hs_lower_bound(&c);
        assert!((b.bernigau - 0.04).abs() < 1e-15);
        let exact = 2.0 * std::f64::consts::LN_2 - 2.0 * binary_entropy(0.6);
        assert!((exact - 0.0402).abs() < 1e-4);
        assert!(b.bernigau <= exact && b.gullans_huse <= exact);
        let z = hs_lower_bound(&c2(0.2, 0.7, 0.0));
        assert_eq!((z.bernigau, z.gullans_huse), (0.0, 0.0));
    }

    #[test]
    fn conditional_matches_bayes() {
        let (ni, nj, e) = (0.5, 0.4, 0.1);
        let c = c2(ni, nj, e);
        let cond = conditional_correlation_matrices(&c, 1).unwrap();
        let c1 = cond.c1.unwrap()[(0, 0)].re;
        let c0 = cond.c0.unwrap()[(0, 0)].re;
        assert!((c1 - 0.475).abs() < 1e-15);
        // Bayes on the probability table
        let p = two_mode_fermi(ni, nj, e).unwrap().probabilities;
        assert!((c1 - p[3] / (p[1] + p[3])).abs() < 1e-14);
        assert!((c0 - p[2] / (p[0] + p[2])).abs() < 1e-14);
        assert!((cond.p_occupied * c1 + (1.0 - cond.p_occupied) * c0 - ni).abs() < 1e-15);
    }

    #[test]
    fn conditional_pure_outcome() {
        let c = c2(0.3, 0.0, 0.0);
        let cond = conditional_correlation_matrices(&c, 1).unwrap();
        assert!(cond.c1.is_none());
        assert_eq!(cond.c0.unwrap()[(0, 0)].re, 0.3);
    }

    #[test]
    fn two_mode_table() {
        let r = two_mode_fermi(0.5, 0.4, 0.1).unwrap();
        let want = [0.29, 0.21, 0.31, 0.19];
        for i in 0..4 {
            assert!((r.probabilities[i] - want[i]).abs() < 1e-15);
        }
        assert!((two_mode_eps_max(0.5, 0.4) - 0.2f64.sqrt()).abs() < 1e-15);
        assert!(two_mode_fermi(0.5, 0.4, 0.45).is_err());
        let z = two_mode_fermi(0.5, 0.4, 0.0).unwrap();
        assert!(z.i_ij.abs() < 1e-15 && z.j_f == 0.0);
    }

    #[test]
    fn householder_already_local() {
        let mut c = CMat::from_diagonal(&DVector::from_vec(vec![
            C64::new(0.3, 0.0),
            C64::new(0.6, 0.0),
            C64::new(0.2, 0.0),
        ]));
        c[(0, 1)] = C64::new(0.1, 0.05);
        c[(1, 0)] = c[(0, 1)].conj();
        let l = householder_localize(&c).unwrap();
        assert!((&l.c_tilde - &c).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn localized_pair_matches_explicit_reflection() {
        let s = FermionBathSpec { k: 6, bandwidth: 3.0, gamma: 1.0, center: 0.2, beta: 1.0, mu: 0.1 };
        let m = FermionModel::new(-0.3, &[s]).unwrap();
        let c = evolve_correlation(&m.initial_correlation(0.9).unwrap(), &m.hamiltonian(), 1.7).unwrap();
        let l = householder_localize(&c).unwrap();
        let (a, b, e) = localized_pair(&c);
        assert!((a - l.c_tilde[(0, 0)].re).abs() < 1e-14);
        assert!((b - l.c_tilde[(1, 1)].re).abs() < 1e-14);
        assert!((e - l.c_tilde[(0, 1)].norm()).abs() < 1e-14);
    }
}
