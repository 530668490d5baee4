//! Counting statistics of heat transfer between a hot and a cold bath
//! through a single level (Levitov–Lesovik), its Maxwell–Boltzmann
//! (ballistic) limit, and weak-coupling master-equation references.
//!
//! The counting field λ weighs hot→cold transfers of energy ω with `e^{λω}`,
//! so that `χ(λ) = χ(β_H − β_C − λ)`.

use std::f64::consts::PI;

use crate::fermion::fermi;
use crate::quad::{integrate, QuadOptions};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Fermi,
    Bose,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transmission {
    /// single fermionic level at ε₀ with widths Γ_H, Γ_C
    Lorentzian { eps0: f64, gamma_h: f64, gamma_c: f64 },
    /// single oscillator at ω₀ with Ohmic couplings `J_α = γ_α ω`
    Ohmic { omega0: f64, gamma_h: f64, gamma_c: f64 },
    Flat(f64),
}

impl Transmission {
    pub fn eval(&self, w: f64) -> f64 {
        match *self {
            Transmission::Lorentzian { eps0, gamma_h, gamma_c } => {
                let g = gamma_h + gamma_c;
                gamma_h * gamma_c / ((w - eps0).powi(2) + 0.25 * g * g)
            }
            Transmission::Ohmic { omega0, gamma_h, gamma_c } => {
                let (jh, jc) = (gamma_h * w, gamma_c * w);
                let num = 4.0 * w * w * jh * jc;
                if num == 0.0 {
                    return 0.0;
                }
                num / ((w * w - omega0 * omega0).powi(2) + w * w * (jh + jc).powi(2))
            }
            Transmission::Flat(t) => t,
        }
    }
}

pub fn transmission_fermi(eps0: f64, gamma_h: f64, gamma_c: f64) -> Result<Transmission> {
    if !(gamma_h > 0.0 && gamma_c > 0.0) {
        return Err(Error::InvalidParameter("level widths must be positive".into()));
    }
    Ok(Transmission::Lorentzian { eps0, gamma_h, gamma_c })
}

pub fn transmission_bose(omega0: f64, gamma_h: f64, gamma_c: f64) -> Result<Transmission> {
    if !(gamma_h > 0.0 && gamma_c > 0.0) || !(omega0 > 0.0) {
        return Err(Error::InvalidParameter("ω₀ and γ must be positive".into()));
    }
    Ok(Transmission::Ohmic { omega0, gamma_h, gamma_c })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportChannel {
    pub statistics: Statistics,
    pub transmission: Transmission,
    pub window: (f64, f64),
    pub beta_h: f64,
    pub beta_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingStatistics {
    pub j_q: f64,
    pub var_jq: f64,
}

impl TransportChannel {
    pub fn new(
        statistics: Statistics,
        transmission: Transmission,
        window: (f64, f64),
        beta_h: f64,
        beta_c: f64,
    ) -> Result<Self> {
        if !(window.0 < window.1) {
            return Err(Error::InvalidParameter(format!("empty window {window:?}")));
        }
        if statistics == Statistics::Bose && window.0 < 0.0 {
            return Err(Error::InvalidParameter("bosonic window must start at ω ≥ 0".into()));
        }
        if !(beta_h > 0.0 && beta_c > 0.0) {
            return Err(Error::InvalidParameter("inverse temperatures must be positive".into()));
        }
        if let Transmission::Flat(t) = transmission {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidParameter(format!("transmission {t} outside [0, 1]")));
            }
        }
        Ok(TransportChannel { statistics, transmission, window, beta_h, beta_c })
    }

    /// `(g_H h_C, g_C h_H)`: rates of hot→cold and cold→hot transfers per
    /// unit transmission.
    fn rates(&self, w: f64) -> (f64, f64) {
        match self.statistics {
            Statistics::Fermi => {
                let (fh, fc) = (fermi(w, self.beta_h, 0.0), fermi(w, self.beta_c, 0.0));
                (fh * (1.0 - fc), fc * (1.0 - fh))
            }
            Statistics::Bose => {
                let nh = 1.0 / (self.beta_h * w).exp_m1();
                let nc = 1.0 / (self.beta_c * w).exp_m1();
                (nh * (1.0 + nc), nc * (1.0 + nh))
            }
        }
    }

    fn sign(&self) -> f64 {
        match self.statistics {
            Statistics::Fermi => 1.0,
            Statistics::Bose => -1.0,
        }
    }
}

fn quad<F: FnMut(f64) -> Result<f64>>(f: F, window: (f64, f64)) -> Result<f64> {
    Ok(integrate(f, window.0, window.1, QuadOptions::default())?.value / (2.0 * PI))
}

/// `χ(λ) = ±∫dω/2π ln{1 ± 𝒯[(e^{λω}−1) g_H h_C + (e^{−λω}−1) g_C h_H]}`.
pub fn scgf(ch: &TransportChannel, lambda: f64) -> Result<f64> {
    let s = ch.sign();
    quad(
        |w| {
            let t = ch.transmission.eval(w);
            if t == 0.0 {
                return Ok(0.0);
            }
            let (a, b) = ch.rates(w);
            let x = s * t * ((lambda * w).exp_m1() * a + (-lambda * w).exp_m1() * b);
            if !(x > -1.0) {
                return Err(Error::Numerical(format!(
                    "counting-statistics integrand is singular at ω = {w} (log argument {})",
                    1.0 + x
                )));
            }
            Ok(s * x.ln_1p())
        },
        ch.window,
    )
}

/// Maxwell–Boltzmann limit `∫dω/2π 𝒯 [e^{−(β_H−λ)ω} + e^{−(β_C+λ)ω}] + C`
/// with C chosen so that χ(0) = 0.
pub fn scgf_ballistic(ch: &TransportChannel, lambda: f64) -> Result<f64> {
    quad(
        |w| {
            let t = ch.transmission.eval(w);
            Ok(t * ((-ch.beta_h * w).exp() * (lambda * w).exp_m1()
                + (-ch.beta_c * w).exp() * (-lambda * w).exp_m1()))
        },
        ch.window,
    )
}

/// First and second λ-derivatives of χ at λ = 0, differentiated under the
/// integral: `J = ∫𝒯ω(a−b)/2π`, `Var = ∫[𝒯ω²(a+b) ∓ 𝒯²ω²(a−b)²]/2π`.
pub fn current_and_variance(ch: &TransportChannel) -> Result<CountingStatistics> {
    let s = ch.sign();
    let j_q = quad(
        |w| {
            let (a, b) = ch.rates(w);
            Ok(ch.transmission.eval(w) * w * (a - b))
        },
        ch.window,
    )?;
    let var_jq = quad(
        |w| {
            let t = ch.transmission.eval(w);
            let (a, b) = ch.rates(w);
            Ok(t * w * w * (a + b) - s * t * t * w * w * (a - b).powi(2))
        },
        ch.window,
    )?;
    Ok(CountingStatistics { j_q, var_jq })
}

pub fn ballistic_current_and_variance(ch: &TransportChannel) -> Result<CountingStatistics> {
    let boltz = |w: f64| ((-ch.beta_h * w).exp(), (-ch.beta_c * w).exp());
    let j_q = quad(
        |w| {
            let (h, c) = boltz(w);
            Ok(ch.transmission.eval(w) * w * (h - c))
        },
        ch.window,
    )?;
    let var_jq = quad(
        |w| {
            let (h, c) = boltz(w);
            Ok(ch.transmission.eval(w) * w * w * (h + c))
        },
        ch.window,
    )?;
    Ok(CountingStatistics { j_q, var_jq })
}

/// Threshold on Γ/k_BT above which the master-equation references are flagged.
pub const WEAK_COUPLING_LIMIT: f64 = 0.2;

/// Weak-coupling relaxation of a level coupled to one fermionic bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovRelaxation {
    pub eps0: f64,
    pub gamma: f64,
    pub beta: f64,
    pub mu: f64,
    pub n0_initial: f64,
}

impl MarkovRelaxation {
    pub fn n0(&self, t: f64) -> f64 {
        let f = fermi(self.eps0, self.beta, self.mu);
        f + (self.n0_initial - f) * (-self.gamma * t).exp()
    }

    /// Heat extracted from the bath: `ΔN₀ (ε₀ − μ)`.
    pub fn heat(&self, t: f64) -> f64 {
        (self.n0(t) - self.n0_initial) * (self.eps0 - self.mu)
    }

    pub fn weak_coupling(&self) -> bool {
        self.gamma * self.beta <= WEAK_COUPLING_LIMIT
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovTransport {
    pub j_q: f64,
    /// dσ/dt = (β_C − β_H) J_Q
    pub sigma_rate: f64,
    pub weak_coupling: bool,
}

fn markov_transport(energy: f64, g_eff: f64, occ_h: f64, occ_c: f64, gamma_max: f64, beta_h: f64, beta_c: f64) -> MarkovTransport {
    let j_q = energy * g_eff * (occ_h - occ_c);
    MarkovTransport {
        j_q,
        sigma_rate: (beta_c - beta_h) * j_q,
        weak_coupling: gamma_max * beta_h.max(beta_c) <= WEAK_COUPLING_LIMIT,
    }
}

/// `J_Q = ε₀ Γ_HΓ_C/(Γ_H+Γ_C) [f_H(ε₀) − f_C(ε₀)]`.
pub fn markov_transport_fermi(eps0: f64, gamma_h: f64, gamma_c: f64, beta_h: f64, beta_c: f64) -> MarkovTransport {
    markov_transport(
        eps0,
        gamma_h * gamma_c / (gamma_h + gamma_c),
        fermi(eps0, beta_h, 0.0),
        fermi(eps0, beta_c, 0.0),
        gamma_h.max(gamma_c),
        beta_h,
        beta_c,
    )
}

/// `J_Q = ω₀² γ_Hγ_C/(γ_H+γ_C) [n_H(ω₀) − n_C(ω₀)]`.
pub fn markov_transport_bose(omega0: f64, gamma_h: f64, gamma_c: f64, beta_h: f64, beta_c: f64) -> MarkovTransport {
    markov_transport(
        omega0,
        omega0 * gamma_h * gamma_c / (gamma_h + gamma_c),
        1.0 / (beta_h * omega0).exp_m1(),
        1.0 / (beta_c * omega0).exp_m1(),
        omega0 * gamma_h.max(gamma_c),
        beta_h,
        beta_c,
    )
}
