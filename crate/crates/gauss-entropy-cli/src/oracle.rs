//! Side-by-side comparison of the correlation-matrix ledger with the
//! brute-force Fock-space evolution.

use serde::Serialize;

use gauss_entropy::chain::ChainOrdering;
use gauss_entropy::fermion::{entropy_ledger, Evolver, FermionModel, LedgerOptions};
use gauss_entropy::fermion_exact::{build_many_body, exact_ledger, ManyBodyEvolver};

use crate::CliError;

pub const ORACLE_TOL: f64 = 1e-8;
pub const ORACLE_MAX_MODES: usize = 9;

#[derive(Debug, Clone, Serialize)]
pub struct QuantityDeviation {
    pub quantity: String,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub tolerance: f64,
    pub deviations: Vec<QuantityDeviation>,
    /// largest `J_M − bound`; must be ≤ 0
    pub chain_bound_excess: f64,
    pub pass: bool,
}

impl OracleReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .deviations
            .iter()
            .filter(|d| !d.pass)
            .map(|d| format!("{} deviates by {:e}", d.quantity, d.max_abs_deviation))
            .collect();
        if self.chain_bound_excess > ORACLE_TOL {
            out.push(format!("J_M exceeds the chain bound by {:e}", self.chain_bound_excess));
        }
        out
    }
}

/// Evolve `gauss` with the correlation-matrix method and `exact` in Fock
/// space from system occupancy `n0`; both models should describe the same
/// physics, but are passed separately so either side can be perturbed.
pub fn compare_models(
    gauss: &FermionModel,
    exact: &FermionModel,
    n0: f64,
    times: &[f64],
) -> Result<OracleReport, CliError> {
    if exact.dim() > ORACLE_MAX_MODES {
        return Err(CliError::Config(format!(
            "oracle check needs K ≤ {}, got K = {}",
            ORACLE_MAX_MODES - 1,
            exact.dim() - 1
        )));
    }
    if gauss.dim() != exact.dim() {
        return Err(CliError::Config("oracle models differ in size".into()));
    }
    let c0 = gauss.initial_correlation(n0)?;
    let ev = Evolver::new(&gauss.hamiltonian(), &c0)?;
    let (h, rho0) = build_many_body(exact, n0)?;
    let mb = ManyBodyEvolver::new(&h, &rho0)?;
    let opts = LedgerOptions { chain: Some(ChainOrdering::AscendingEnergy) };

    let names = ["sigma", "I_M", "D_env", "I_SE", "I_env", "Q", "N0"];
    let mut dev = [0.0f64; 7];
    let mut excess = f64::NEG_INFINITY;
    for &t in times {
        let ct = ev.at(t);
        let g = entropy_ledger(&ct, &c0, gauss, t, &opts)?;
        let rho = mb.at(t);
        let x = exact_ledger(&rho, &rho0, exact, t)?;
        let n0_exact = rho.occupations()[0];
        let pairs = [
            (g.sigma, x.ledger.sigma),
            (g.i_m, x.ledger.i_m),
            (g.d_env, x.ledger.d_env),
            (g.i_se, x.ledger.i_se),
            (g.i_env, x.ledger.i_env),
            (g.heat_total, x.ledger.heat_total),
            (ct[(0, 0)].re, n0_exact),
        ];
        for (d, (a, b)) in dev.iter_mut().zip(pairs) {
            let e = (a - b).abs();
            *d = d.max(if e.is_nan() { f64::INFINITY } else { e });
        }
        excess = excess.max(x.j_m - g.j_bound.unwrap_or(f64::INFINITY));
    }
    let deviations: Vec<QuantityDeviation> = names
        .iter()
        .zip(dev)
        .map(|(n, d)| QuantityDeviation { quantity: n.to_string(), max_abs_deviation: d, pass: d < ORACLE_TOL })
        .collect();
    let pass = deviations.iter().all(|d| d.pass) && excess <= ORACLE_TOL;
    Ok(OracleReport { tolerance: ORACLE_TOL, deviations, chain_bound_excess: excess, pass })
}

pub fn oracle_check(model: &FermionModel, n0: f64, times: &[f64]) -> Result<OracleReport, CliError> {
    compare_models(model, model, n0, times)
}
