//! Joint occupation-number distributions of Gaussian states and their
//! classical mutual information.

use crate::dd::Cdd;
use crate::linalg::complex_det;
use crate::{CMat, Error, RMat, Result, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct FockDistribution {
    pub modes: usize,
    /// largest occupation kept per mode (1 for fermions)
    pub cutoff: usize,
    /// lexicographic in (n_1, …, n_N), first mode most significant
    pub probs: Vec<f64>,
    /// probability mass outside the cutoff box
    pub leakage: f64,
}

impl FockDistribution {
    pub fn index(&self, n: &[usize]) -> usize {
        n.iter().fold(0, |acc, &x| acc * (self.cutoff + 1) + x)
    }

    pub fn get(&self, n: &[usize]) -> f64 {
        self.probs[self.index(n)]
    }

    pub fn marginal(&self, mode: usize) -> Vec<f64> {
        let base = self.cutoff + 1;
        let stride = base.pow((self.modes - 1 - mode) as u32);
        let mut m = vec![0.0; base];
        for (i, &p) in self.probs.iter().enumerate() {
            m[(i / stride) % base] += p;
        }
        m
    }
}

pub const MAX_WICK_MODES: usize = 12;

/// `p(n) = det[(1−D) + (2D−1)C]`, `D = diag(n)` — Wick's theorem resummed
/// into a single determinant per outcome.
pub fn wick_fermi_distribution(c: &CMat) -> Result<FockDistribution> {
    let m = c.nrows();
    if m > MAX_WICK_MODES {
        return Err(Error::TooLarge(format!(
            "{m} modes exceeds the {MAX_WICK_MODES}-mode limit ({} outcomes)",
            1u64 << m
        )));
    }
    let mut probs = Vec::with_capacity(1 << m);
    for s in 0usize..(1 << m) {
        let occ: Vec<bool> = (0..m).map(|k| s >> (m - 1 - k) & 1 == 1).collect();
        let a = CMat::from_fn(m, m, |i, j| {
            let sgn = if occ[i] { 1.0 } else { -1.0 };
            let id = if i == j && !occ[i] { 1.0 } else { 0.0 };
            C64::new(id, 0.0) + c[(i, j)] * sgn
        });
        let p = complex_det(&a).re;
        if p < -1e-10 {
            return Err(Error::Unphysical(format!("negative probability {p} at outcome {s:b}")));
        }
        probs.push(p.max(0.0));
    }
    let total: f64 = probs.iter().sum();
    Ok(FockDistribution { modes: m, cutoff: 1, probs, leakage: 1.0 - total })
}

/// Largest Hermite grid the recurrence is allowed to allocate.
pub const MAX_HERMITE_GRID: usize = 20_000_000;

/// Vacuum probability and the recurrence matrices in the ladder basis.
pub struct HermiteWorkspace {
    pub r: CMat,
    /// the linear coefficient `R y` of the generating function
    pub ry: Vec<C64>,
    pub p0: f64,
}

/// `𝒰 = (1/√2)[[1, i],[1, −i]]` mapping (q, p) to (a, a†).
pub fn ladder_rotation(n: usize) -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = CMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        u[(i, i)] = C64::new(s, 0.0);
        u[(i, n + i)] = C64::new(0.0, s);
        u[(n + i, i)] = C64::new(s, 0.0);
        u[(n + i, n + i)] = C64::new(0.0, -s);
    }
    u
}

pub fn hermite_workspace(sigma: &RMat, xbar: &[f64]) -> Result<HermiteWorkspace> {
    let n2 = sigma.nrows();
    if n2 % 2 != 0 || sigma.ncols() != n2 || xbar.len() != n2 {
        return Err(Error::DimensionMismatch { expected: n2, got: xbar.len() });
    }
    let n = n2 / 2;
    let id = RMat::identity(n2, n2);
    let plus = &id + sigma * 2.0;
    let plus_inv = plus
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Unphysical("1 + 2Σ is singular".into()))?;
    let u = ladder_rotation(n);
    let inner = ((&id - sigma * 2.0) * &plus_inv).map(|x| C64::new(x, 0.0));
    let r = u.map(|z| z.conj()) * inner * u.adjoint();
    let xv = nalgebra::DVector::from_column_slice(xbar);
    let w = &plus_inv * &xv * 2.0;
    let ry: Vec<C64> = (u.map(|z| z.conj()) * w.map(|x| C64::new(x, 0.0))).iter().copied().collect();
    let half = sigma + &id * 0.5;
    let det = half.clone().determinant();
    if !(det > 0.0) {
        return Err(Error::Unphysical("Σ + 1/2 is not positive definite".into()));
    }
    let quad = xv.dot(&(&plus_inv * &xv));
    Ok(HermiteWorkspace { r, ry, p0: det.powf(-0.5) * (-quad).exp() })
}

/// Fock probabilities of an N-mode Gaussian state up to `cutoff` quanta per
/// mode, from the multivariate Hermite recurrence
/// `G_{ν+e_k} = [(Ry)_k G_ν − Σ_l R_kl √ν_l G_{ν−e_l}] / √(ν_k+1)`,
/// `G_ν = H_ν/√ν!`, evaluated in double-double complex arithmetic.
pub fn hermite_fock_probabilities(sigma: &RMat, xbar: &[f64], cutoff: usize) -> Result<FockDistribution> {
    let ws = hermite_workspace(sigma, xbar)?;
    let n = sigma.nrows() / 2;
    let d = 2 * n;
    let base = cutoff + 1;
    let grid = base
        .checked_pow(d as u32)
        .filter(|&g| g <= MAX_HERMITE_GRID)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "Hermite grid ({base})^{d} too large; lower the cutoff or the mode count"
            ))
        })?;
    let strides: Vec<usize> = (0..d).map(|k| base.pow((d - 1 - k) as u32)).collect();
    let sqrt: Vec<f64> = (0..=base).map(|x| (x as f64).sqrt()).collect();
    let inv_sqrt: Vec<f64> = (0..=base).map(|x| 1.0 / (x.max(1) as f64).sqrt()).collect();
    let r: Vec<Vec<Cdd>> = (0..d)
        .map(|k| (0..d).map(|l| Cdd::from_c64(ws.r[(k, l)])).collect())
        .collect();
    let ry: Vec<Cdd> = ws.ry.iter().map(|&z| Cdd::from_c64(z)).collect();

    let mut g = vec![Cdd::ZERO; grid];
    g[0] = Cdd::from_c64(C64::new(1.0, 0.0));
    let mut nu = vec![0usize; d];
    for idx in 1..grid {
        // increment the multi-index
        let mut k = d - 1;
        loop {
            nu[k] += 1;
            if nu[k] < base {
                break;
            }
            nu[k] = 0;
            k -= 1;
        }
        // step along the last nonzero direction
        let k = (0..d).rev().find(|&k| nu[k] > 0).unwrap();
        let prev = idx - strides[k];
        let mut acc = ry[k] * g[prev];
        let nk = nu[k] - 1;
        for l in 0..d {
            let nl = if l == k { nk } else { nu[l] };
            if nl == 0 {
                continue;
            }
            acc = acc - (r[k][l] * g[prev - strides[l]]).scale(sqrt[nl]);
        }
        g[idx] = acc.scale(inv_sqrt[nk + 1]);
    }

    let out_grid = base.pow(n as u32);
    let mut probs = Vec::with_capacity(out_grid);
    let mut worst = 0.0f64;
    for o in 0..out_grid {
        // (n, n) in the doubled index space
        let mut rem = o;
        let mut occ = vec![0usize; n];
        for i in (0..n).rev() {
            occ[i] = rem % base;
            rem /= base;
        }
        let mut idx = 0;
        for &x in occ.iter().chain(occ.iter()) {
            idx = idx * base + x;
        }
        let p = ws.p0 * g[idx].re.to_f64();
        worst = worst.min(p);
        probs.push(p);
    }
    if worst < -1e-12 {
        return Err(Error::Numerical(format!(
            "negative Fock probability {worst:e}; lower the cutoff or raise the precision"
        )));
    }
    for p in probs.iter_mut() {
        *p = p.max(0.0);
    }
    let total: f64 = probs.iter().sum();
    Ok(FockDistribution { modes: n, cutoff, probs, leakage: (1.0 - total).max(0.0) })
}

/// Largest leakage accepted by [`fock_mutual_information`].
pub const DEFAULT_MAX_LEAKAGE: f64 = 1e-6;

/// `Σ p(n) ln[p(n)/π(n)]` with π the product of the marginals of `dist`.
pub fn fock_mutual_information(dist: &FockDistribution) -> Result<f64> {
    fock_mutual_information_with(dist, DEFAULT_MAX_LEAKAGE)
}

pub fn fock_mutual_information_with(dist: &FockDistribution, max_leakage: f64) -> Result<f64> {
    if dist.leakage > max_leakage {
        return Err(Error::Numerical(format!(
            "cutoff {} leaks {:.3e} probability (limit {max_leakage:e})",
            dist.cutoff, dist.leakage
        )));
    }
    // evaluated on the distribution conditioned on the cutoff box, so that
    // truncated product states still give exactly zero
    let total: f64 = dist.probs.iter().sum();
    let marg: Vec<Vec<f64>> = (0..dist.modes)
        .map(|k| dist.marginal(k).into_iter().map(|x| x / total).collect())
        .collect();
    let base = dist.cutoff + 1;
    let mut j = 0.0;
    for (i, &p) in dist.probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        let p = p / total;
        let mut pi = 1.0;
        let mut rem = i;
        for k in (0..dist.modes).rev() {
            pi *= marg[k][rem % base];
            rem /= base;
        }
        j += p * (p / pi).ln();
    }
    Ok(j.max(0.0))
}
