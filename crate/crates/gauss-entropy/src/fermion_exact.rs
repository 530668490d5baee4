//! Brute-force many-body oracle for small fermionic baths.
//!
//! Fock states are bit strings with mode 0 as the most significant bit, so
//! basis order is lexicographic in (n_0, …, n_K). The Hamiltonian conserves
//! particle number and the density matrix is stored as one block per
//! total-N sector. Jordan–Wigner signs: `c_k |n⟩ = (−1)^{Σ_{l<k} n_l} |n − e_k⟩`.

use crate::fermion::{fermi, EntropyLedger, FermionModel};
use crate::linalg::{binary_entropy, hermitian_eigenvalues, sym_eigen_sorted};
use crate::{CMat, Error, RMat, Result, C64};

pub const MAX_BATH_MODES: usize = 12;

#[derive(Debug, Clone)]
pub struct FockBasis {
    pub modes: usize,
    /// basis states of each particle-number sector, ascending
    pub sectors: Vec<Vec<u32>>,
    /// global index → position inside its sector
    pub pos: Vec<u32>,
}

impl FockBasis {
    pub fn new(modes: usize) -> Self {
        let mut sectors = vec![Vec::new(); modes + 1];
        let mut pos = vec![0u32; 1 << modes];
        for s in 0u32..(1u32 << modes) {
            let n = s.count_ones() as usize;
            pos[s as usize] = sectors[n].len() as u32;
            sectors[n].push(s);
        }
        FockBasis { modes, sectors, pos }
    }

    pub fn dim(&self) -> usize {
        1 << self.modes
    }

    pub fn bit(&self, k: usize) -> u32 {
        1 << (self.modes - 1 - k)
    }

    pub fn occupation(&self, s: u32, k: usize) -> bool {
        s & self.bit(k) != 0
    }

    /// number of occupied modes before k (the Jordan–Wigner string)
    fn string_parity(&self, s: u32, k: usize) -> u32 {
        let higher = !((self.bit(k) << 1).wrapping_sub(1));
        (s & higher).count_ones() & 1
    }

    /// Applies `c_k` (dagger = false) or `c_k†` to |s⟩.
    pub fn apply(&self, s: u32, k: usize, dagger: bool) -> Option<(u32, f64)> {
        let occ = self.occupation(s, k);
        if occ == dagger {
            return None;
        }
        let sign = if self.string_parity(s, k) == 1 { -1.0 } else { 1.0 };
        Some((s ^ self.bit(k), sign))
    }

    /// Applies an operator product, rightmost factor first.
    pub fn apply_string(&self, s: u32, ops: &[(usize, bool)]) -> Option<(u32, f64)> {
        let mut state = s;
        let mut sign = 1.0;
        for &(k, dag) in ops.iter().rev() {
            let (ns, sg) = self.apply(state, k, dag)?;
            state = ns;
            sign *= sg;
        }
        Some((state, sign))
    }
}

/// Number-conserving Hamiltonian restricted to each sector (real symmetric).
#[derive(Debug, Clone)]
pub struct ManyBodyHamiltonian {
    pub basis: FockBasis,
    pub blocks: Vec<RMat>,
}

#[derive(Debug, Clone)]
pub struct ManyBodyState {
    pub basis: FockBasis,
    pub blocks: Vec<CMat>,
}

impl ManyBodyState {
    pub fn element(&self, a: u32, b: u32) -> C64 {
        let (na, nb) = (a.count_ones() as usize, b.count_ones() as usize);
        if na != nb {
            return C64::new(0.0, 0.0);
        }
        self.blocks[na][(self.basis.pos[a as usize] as usize, self.basis.pos[b as usize] as usize)]
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace().re).sum()
    }

    /// Fock-basis probabilities p(n), indexed by basis state.
    pub fn diagonal(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.basis.dim()];
        for (n, sec) in self.basis.sectors.iter().enumerate() {
            for (i, &s) in sec.iter().enumerate() {
                p[s as usize] = self.blocks[n][(i, i)].re;
            }
        }
        p
    }

    /// ⟨ops⟩ = Tr(ρ · ops) for a product of creation/annihilation operators.
    pub fn expectation(&self, ops: &[(usize, bool)]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for sec in &self.basis.sectors {
            for &s in sec {
                if let Some((m, sign)) = self.basis.apply_string(s, ops) {
                    acc += self.element(s, m) * sign;
                }
            }
        }
        acc
    }

    pub fn correlation_matrix(&self) -> CMat {
        let m = self.basis.modes;
        CMat::from_fn(m, m, |i, j| self.expectation(&[(i, true), (j, false)]))
    }

    pub fn occupations(&self) -> Vec<f64> {
        let p = self.diagonal();
        (0..self.basis.modes)
            .map(|k| {
                p.iter()
                    .enumerate()
                    .filter(|(s, _)| self.basis.occupation(*s as u32, k))
                    .map(|(_, x)| x)
                    .sum()
            })
            .collect()
    }

    /// Reduced state of modes 1…K (system traced out), block-diagonal in
    /// the environment particle number. Returns the eigenvalues of all blocks.
    pub fn environment_spectrum(&self) -> Vec<f64> {
        let m = self.basis.modes;
        let env = FockBasis::new(m - 1);
        let mut out = Vec::new();
        for esec in env.sectors.iter() {
            let d = esec.len();
            let mut block = CMat::zeros(d, d);
            for n0 in 0..2u32 {
                let top = n0 << (m - 1);
                for (a, &ea) in esec.iter().enumerate() {
                    for (b, &eb) in esec.iter().enumerate() {
                        block[(a, b)] += self.element(top | ea, top | eb);
                    }
                }
            }
            out.extend(hermitian_eigenvalues(&block));
        }
        out
    }
}

pub fn build_many_body(model: &FermionModel, n0: f64) -> Result<(ManyBodyHamiltonian, ManyBodyState)> {
    let k = model.dim() - 1;
    if k > MAX_BATH_MODES {
        let bytes = (1u64 << (2 * (k + 1))) as f64 * 16.0 / 3.0;
        return Err(Error::TooLarge(format!(
            "K = {k} bath modes exceeds the oracle limit {MAX_BATH_MODES} (≈{:.1} GB of blocks)",
            bytes / 1e9
        )));
    }
    if !(0.0..=1.0).contains(&n0) {
        return Err(Error::InvalidParameter(format!("system occupancy {n0} outside [0,1]")));
    }
    let m = k + 1;
    let basis = FockBasis::new(m);
    let h1 = model.hamiltonian();
    let mut occ = vec![n0];
    for (e, beta, mu) in model.bath_modes() {
        occ.push(fermi(e, beta, mu));
    }

    let mut hblocks = Vec::with_capacity(m + 1);
    let mut rblocks = Vec::with_capacity(m + 1);
    for sec in &basis.sectors {
        let d = sec.len();
        let mut h = RMat::zeros(d, d);
        let mut rho = CMat::zeros(d, d);
        for (a, &s) in sec.iter().enumerate() {
            let mut p = 1.0;
            for i in 0..m {
                if basis.occupation(s, i) {
                    h[(a, a)] += h1[(i, i)];
                    p *= occ[i];
                } else {
                    p *= 1.0 - occ[i];
                }
            }
            rho[(a, a)] = C64::new(p, 0.0);
            for i in 0..m {
                for j in 0..m {
                    if i == j || h1[(i, j)] == 0.0 {
                        continue;
                    }
                    // h_ij c_i† c_j
                    if let Some((t, sign)) = basis.apply_string(s, &[(i, true), (j, false)]) {
                        let b = basis.pos[t as usize] as usize;
                        h[(b, a)] += h1[(i, j)] * sign;
                    }
                }
            }
        }
        hblocks.push(h);
        rblocks.push(rho);
    }
    Ok((
        ManyBodyHamiltonian { basis: basis.clone(), blocks: hblocks },
        ManyBodyState { basis, blocks: rblocks },
    ))
}

/// Sector-wise `ρ(t) = e^{−iHt} ρ₀ e^{iHt}` with the eigenbasis cached.
pub struct ManyBodyEvolver {
    basis: FockBasis,
    sectors: Vec<(Vec<f64>, RMat, RMat, RMat)>,
}

impl ManyBodyEvolver {
    pub fn new(h: &ManyBodyHamiltonian, rho0: &ManyBodyState) -> Result<Self> {
        if h.basis.modes != rho0.basis.modes {
            return Err(Error::DimensionMismatch { expected: h.basis.dim(), got: rho0.basis.dim() });
        }
        let sectors = h
            .blocks
            .iter()
            .zip(rho0.blocks.iter())
            .map(|(hb, rb)| {
                let (lam, v) = sym_eigen_sorted(hb.clone());
                let vt = v.transpose();
                let g_re = &vt * rb.map(|z| z.re) * &v;
                let g_im = &vt * rb.map(|z| z.im) * &v;
                (lam, v, g_re, g_im)
            })
            .collect();
        Ok(ManyBodyEvolver { basis: h.basis.clone(), sectors })
    }

    pub fn at(&self, t: f64) -> ManyBodyState {
        let blocks = self
            .sectors
            .iter()
            .map(|(lam, v, g_re, g_im)| {
                let d = lam.len();
                let mut m_re = RMat::zeros(d, d);
                let mut m_im = RMat::zeros(d, d);
                for b in 0..d {
                    for a in 0..d {
                        // e^{−i(λa−λb)t}
                        let (s, c) = (-(lam[a] - lam[b]) * t).sin_cos();
                        m_re[(a, b)] = g_re[(a, b)] * c - g_im[(a, b)] * s;
                        m_im[(a, b)] = g_re[(a, b)] * s + g_im[(a, b)] * c;
                    }
                }
                let vt = v.transpose();
                let re = v * m_re * &vt;
                let im = v * m_im * &vt;
                re.zip_map(&im, C64::new)
            })
            .collect();
        ManyBodyState { basis: self.basis.clone(), blocks }
    }
}

pub fn evolve_density(rho0: &ManyBodyState, h: &ManyBodyHamiltonian, t: f64) -> Result<ManyBodyState> {
    Ok(ManyBodyEvolver::new(h, rho0)?.at(t))
}

/// Fock-basis mutual information Σ p ln(p/π) with π the product of the
/// single-mode marginals.
pub fn exact_fock_mutual_information(rho: &ManyBodyState) -> f64 {
    let p = rho.diagonal();
    let occ = rho.occupations();
    let mut j = 0.0;
    for (s, &ps) in p.iter().enumerate() {
        if ps <= 0.0 {
            continue;
        }
        let mut pi = 1.0;
        for (k, &n) in occ.iter().enumerate() {
            pi *= if rho.basis.occupation(s as u32, k) { n } else { 1.0 - n };
        }
        j += ps * (ps / pi).ln();
    }
    j.max(0.0)
}

#[derive(Debug, Clone)]
pub struct ExactLedger {
    pub ledger: EntropyLedger,
    pub j_m: f64,
}

fn relative_entropy_2(n: f64, f: f64) -> f64 {
    let mut d = 0.0;
    if n > 0.0 {
        d += n * (n / f).ln();
    }
    if n < 1.0 {
        d += (1.0 - n) * ((1.0 - n) / (1.0 - f)).ln();
    }
    d
}

pub fn exact_ledger(
    rho_t: &ManyBodyState,
    rho_0: &ManyBodyState,
    model: &FermionModel,
    t: f64,
) -> Result<ExactLedger> {
    if rho_t.basis.modes != model.dim() || rho_0.basis.modes != model.dim() {
        return Err(Error::DimensionMismatch { expected: model.dim(), got: rho_t.basis.modes });
    }
    let occ_t = rho_t.occupations();
    let occ_0 = rho_0.occupations();
    let s_se: f64 = rho_0
        .blocks
        .iter()
        .flat_map(|b| hermitian_eigenvalues(b))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum();
    let s_s = binary_entropy(occ_t[0]);
    let s_k: f64 = occ_t[1..].iter().map(|&x| binary_entropy(x)).sum();
    let s_e: f64 = rho_t
        .environment_spectrum()
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum();
    let mut heat = Vec::new();
    let mut beta_q = 0.0;
    let mut d_env = 0.0;
    for (b, bath) in model.baths.iter().enumerate() {
        let mut q = 0.0;
        for (i, idx) in model.bath_range(b).enumerate() {
            let e = bath.energies[i];
            let dn = occ_t[idx] - occ_0[idx];
            q += (bath.mu - e) * dn;
            d_env += relative_entropy_2(occ_t[idx], fermi(e, bath.beta, bath.mu));
        }
        beta_q += bath.beta * q;
        heat.push(q);
    }
    let ds_system = s_s - binary_entropy(occ_0[0]);
    let ledger = EntropyLedger {
        t,
        sigma: ds_system - beta_q,
        i_m: s_s + s_k - s_se,
        d_env,
        j_bound: None,
        i_se: s_s + s_e - s_se,
        i_env: s_k - s_e,
        j_se: f64::NAN,
        heat_total: heat.iter().sum(),
        heat,
        ds_system,
        hs_lower: f64::NAN,
        gh_lower: f64::NAN,
    };
    Ok(ExactLedger { ledger, j_m: exact_fock_mutual_information(rho_t) })
}
