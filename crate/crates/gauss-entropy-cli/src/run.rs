use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use gauss_entropy::boson::{
    bose_entropy_ledger, mode_entropy, two_mode_bose, BoseLedgerOptions, BosonBathSpec, BosonGrid,
    BosonModel, Covariance, CovariancePropagator, SystemState, TwoModeSymmetry,
};
use gauss_entropy::chain::ChainOrdering;
use gauss_entropy::fermion::{
    entropy_ledger, perturbative_fock_correlation, perturbative_total_correlation, two_mode_fermi, Evolver,
    FermionBathSpec, FermionModel, LedgerOptions,
};
use gauss_entropy::fermion_exact::{build_many_body, exact_ledger, ManyBodyEvolver};
use gauss_entropy::linalg::binary_entropy;
use gauss_entropy::transport::{
    ballistic_current_and_variance, current_and_variance, markov_transport_bose, markov_transport_fermi,
    transmission_bose, transmission_fermi, MarkovRelaxation, Statistics, TransportChannel,
};

use crate::oracle::{compare_models, OracleReport};
use crate::scenario::{
    BoseRelax, BoseTransport, FcsSweep, FermRelax, FermTransport, Scenario, Spec, Symmetry, TwoModeBose, TwoModeFerm,
};
use crate::CliError;

/// One CSV file. An empty `suffix` means the scenario produced a single panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub suffix: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(suffix: impl Into<String>, columns: &[&str]) -> Self {
        Table { suffix: suffix.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: vec![] }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Runtime {
    pub panel: String,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub scenario: Scenario,
    pub tables: Vec<Table>,
    pub runtimes: Vec<Runtime>,
    pub oracle: Option<OracleReport>,
}

pub fn run(scenario: &Scenario) -> Result<RunOutput, CliError> {
    let start = Instant::now();
    let tables = match &scenario.spec {
        Spec::FermRelax(p) => ferm_relax(p, false)?,
        Spec::FermExact(p) => ferm_relax(p, true)?,
        Spec::FermTransport(p) => vec![ferm_transport(p)?],
        Spec::BoseRelax(p) => bose_relax(p)?,
        Spec::BoseTransport(p) => vec![bose_transport(p)?],
        Spec::TwoModeFerm(p) => vec![two_mode_ferm_table(p)?],
        Spec::TwoModeBose(p) => two_mode_bose_tables(p)?,
        Spec::FcsSweep(p) => vec![fcs_sweep(p)?],
    };
    let mut runtimes = vec![Runtime { panel: "total".into(), seconds: start.elapsed().as_secs_f64() }];
    let oracle = if scenario.oracle_check {
        let t0 = Instant::now();
        let r = run_oracle(&scenario.spec)?;
        runtimes.push(Runtime { panel: "oracle".into(), seconds: t0.elapsed().as_secs_f64() });
        Some(r)
    } else {
        None
    };
    Ok(RunOutput { scenario: scenario.clone(), tables, runtimes, oracle })
}

fn run_oracle(spec: &Spec) -> Result<OracleReport, CliError> {
    let mut worst: Option<OracleReport> = None;
    let mut merge = |r: OracleReport| {
        worst = Some(match worst.take() {
            None => r,
            Some(mut w) => {
                for (a, b) in w.deviations.iter_mut().zip(r.deviations) {
                    a.max_abs_deviation = a.max_abs_deviation.max(b.max_abs_deviation);
                    a.pass &= b.pass;
                }
                w.chain_bound_excess = w.chain_bound_excess.max(r.chain_bound_excess);
                w.pass &= r.pass;
                w
            }
        })
    };
    match spec {
        Spec::FermRelax(p) | Spec::FermExact(p) => {
            for &k in &p.k {
                let m = relax_model(p, k)?;
                let times: Vec<f64> = p.gamma_t.points().iter().map(|g| g / p.gamma).collect();
                merge(compare_models(&m, &m, p.n0, &times)?);
            }
        }
        Spec::FermTransport(p) => {
            let m = transport_model(p)?;
            let times: Vec<f64> = p.gamma_t.points().iter().map(|g| g / p.gamma).collect();
            merge(compare_models(&m, &m, m.stationary_occupancy(), &times)?);
        }
        other => {
            return Err(CliError::Config(format!("oracle check is only defined for fermionic kinds, not {}", other.kind())))
        }
    }
    worst.ok_or_else(|| CliError::Config("oracle check needs at least one K".into()))
}

fn par_rows<T: Sync, F>(xs: &[T], f: F) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(&T) -> Result<Vec<f64>, CliError> + Sync + Send,
{
    xs.par_iter().map(f).collect()
}

fn relax_model(p: &FermRelax, k: usize) -> Result<FermionModel, CliError> {
    Ok(FermionModel::new(
        p.eps0,
        &[FermionBathSpec { k, bandwidth: p.bandwidth, gamma: p.gamma, center: p.center, beta: p.beta, mu: p.mu }],
    )?)
}

fn ferm_relax(p: &FermRelax, exact: bool) -> Result<Vec<Table>, CliError> {
    if p.k.is_empty() {
        return Err(CliError::Config("k: empty list".into()));
    }
    let sweep_k = p.k.len() > 1;
    let gts = p.gamma_t.points();
    // validate every model before spending time on any of them
    let models = p.k.iter().map(|&k| relax_model(p, k)).collect::<Result<Vec<_>, _>>()?;
    let opts = LedgerOptions { chain: p.chain_bound.then_some(ChainOrdering::AscendingEnergy) };
    let markov = MarkovRelaxation { eps0: p.eps0, gamma: p.gamma, beta: p.beta, mu: p.mu, n0_initial: p.n0 };

    let mut cols: Vec<&str> = vec![];
    if sweep_k {
        cols.push("K");
    }
    cols.extend(["t", "gamma_t", "N0", "S_S", "minus_beta_Q", "sigma", "I_M"]);
    if exact {
        cols.push("J_M");
    }
    cols.extend([
        "D_env", "I_SE", "J_SE", "D_SE", "I_env", "hs_lower", "gh_lower", "J_bound", "I_M_pert", "J_F_pert",
        "N0_markov", "S_S_markov", "minus_beta_Q_markov", "sigma_markov",
    ]);
    let mut table = Table::new("", &cols);

    for (model, &k) in models.iter().zip(&p.k) {
        let c0 = model.initial_correlation(p.n0)?;
        let ev = Evolver::new(&model.hamiltonian(), &c0)?;
        let mb = if exact {
            let (h, rho0) = build_many_body(model, p.n0)?;
            Some((ManyBodyEvolver::new(&h, &rho0)?, rho0))
        } else {
            None
        };
        let s0 = binary_entropy(p.n0);
        let rows = par_rows(&gts, |&gt| {
            let t = gt / p.gamma;
            let ct = ev.at(t);
            let g = entropy_ledger(&ct, &c0, model, t, &opts)?;
            let mut led = g.clone();
            let mut j_m = f64::NAN;
            if let Some((mbe, rho0)) = &mb {
                let x = exact_ledger(&mbe.at(t), rho0, model, t)?;
                led = x.ledger;
                j_m = x.j_m;
            }
            let n0 = ct[(0, 0)].re;
            let nm = markov.n0(t);
            let s_m = binary_entropy(nm);
            let bq_m = -p.beta * markov.heat(t);
            let mut row = vec![];
            if sweep_k {
                row.push(k as f64);
            }
            row.extend([t, gt, n0, binary_entropy(n0), -p.beta * led.heat_total, led.sigma, led.i_m]);
            if exact {
                row.push(j_m);
            }
            row.extend([
                led.d_env,
                led.i_se,
                g.j_se,
                led.i_se - g.j_se,
                led.i_env,
                g.hs_lower,
                g.gh_lower,
                g.j_bound.unwrap_or(f64::NAN),
                perturbative_total_correlation(&ct)?,
                perturbative_fock_correlation(&ct)?,
                nm,
                s_m,
                bq_m,
                s_m - s0 + bq_m,
            ]);
            Ok(row)
        })?;
        table.rows.extend(rows);
    }
    Ok(vec![table])
}

fn transport_model(p: &FermTransport) -> Result<FermionModel, CliError> {
    if !(p.t_hot > 0.0 && p.t_cold > 0.0) {
        return Err(CliError::Config("temperatures must be positive".into()));
    }
    let bath = |t: f64| FermionBathSpec {
        k: p.k,
        bandwidth: p.bandwidth,
        gamma: p.gamma,
        center: p.eps0,
        beta: 1.0 / t,
        mu: 0.0,
    };
    Ok(FermionModel::new(p.eps0, &[bath(p.t_hot), bath(p.t_cold)])?)
}

fn ferm_transport(p: &FermTransport) -> Result<Table, CliError> {
    let model = transport_model(p)?;
    let (bh, bc) = (1.0 / p.t_hot, 1.0 / p.t_cold);
    let markov = markov_transport_fermi(p.eps0, p.gamma, p.gamma, bh, bc);
    let ch = TransportChannel::new(
        Statistics::Fermi,
        transmission_fermi(p.eps0, p.gamma, p.gamma)?,
        (p.eps0 - 0.5 * p.bandwidth, p.eps0 + 0.5 * p.bandwidth),
        bh,
        bc,
    )?;
    let bal = ballistic_current_and_variance(&ch)?;
    let bal_rate = (bc - bh) * bal.j_q;

    let c0 = model.initial_correlation(model.stationary_occupancy())?;
    let ev = Evolver::new(&model.hamiltonian(), &c0)?;
    let opts = LedgerOptions { chain: p.chain_bound.then_some(ChainOrdering::AscendingEnergy) };
    let mut table = Table::new(
        "",
        &[
            "t", "gamma_t", "sigma", "I_M", "D_env", "J_bound", "I_SE", "J_SE", "Q_hot", "Q_cold", "sigma_markov",
            "sigma_ballistic",
        ],
    );
    table.rows = par_rows(&p.gamma_t.points(), |&gt| {
        let t = gt / p.gamma;
        let l = entropy_ledger(&ev.at(t), &c0, &model, t, &opts)?;
        Ok(vec![
            t,
            gt,
            l.sigma,
            l.i_m,
            l.d_env,
            l.j_bound.unwrap_or(f64::NAN),
            l.i_se,
            l.j_se,
            l.heat[0],
            l.heat[1],
            markov.sigma_rate * t,
            bal_rate * t,
        ])
    })?;
    Ok(table)
}

fn occupancy(cov: &Covariance, i: usize) -> f64 {
    let n = cov.modes();
    0.5 * (cov.sigma[(i, i)] + cov.sigma[(n + i, n + i)] + cov.xbar[i].powi(2) + cov.xbar[n + i].powi(2)) - 0.5
}

fn start_label(f: f64) -> String {
    if f == 0.0 {
        "vacuum".into()
    } else {
        format!("thermal{f}T")
    }
}

fn bose_relax(p: &BoseRelax) -> Result<Vec<Table>, CliError> {
    let times = p.t.points();
    let mut setups = vec![];
    for &temp in &p.temperatures {
        if !(temp > 0.0) {
            return Err(CliError::Config(format!("temperature {temp} must be positive")));
        }
        let model = BosonModel::new(
            p.omega0,
            &[BosonBathSpec { k: p.k, gamma: p.gamma, beta: 1.0 / temp, grid: BosonGrid::Ohmic { omega_c: p.omega_c } }],
        )?;
        for &f in &p.start_factors {
            if !(f >= 0.0) {
                return Err(CliError::Config(format!("start factor {f} must be ≥ 0")));
            }
            let cov0 = model.initial_covariance(SystemState::Temperature(f * temp))?;
            setups.push((format!("T{temp}_{}", start_label(f)), model.clone(), cov0));
        }
    }
    let opts = BoseLedgerOptions { system_environment: p.system_environment };
    let mut tables = vec![];
    for (suffix, model, cov0) in setups {
        let prop = CovariancePropagator::new(&model.hamiltonian(), &cov0)?;
        let s0 = mode_entropy(occupancy(&cov0, 0) + 0.5);
        let mut table = Table::new(
            suffix,
            &[
                "t", "N0", "S_S", "minus_beta_Q", "sigma", "I_M", "J_W", "J_W_SE", "D_env", "I_SE", "I_env",
                "J_W_over_I_M",
            ],
        );
        let beta = model.baths[0].beta;
        table.rows = par_rows(&times, |&t| {
            let cov = prop.at(t)?;
            let l = bose_entropy_ledger(&cov, &cov0, &model, t, &opts)?;
            let e = &l.ledger;
            Ok(vec![
                t,
                occupancy(&cov, 0),
                s0 + e.ds_system,
                -beta * e.heat_total,
                e.sigma,
                e.i_m,
                l.j_w,
                l.j_w_se,
                e.d_env,
                e.i_se,
                e.i_env,
                if e.i_m > 0.0 { l.j_w / e.i_m } else { f64::NAN },
            ])
        })?;
        tables.push(table);
    }
    Ok(tables)
}

fn bose_transport(p: &BoseTransport) -> Result<Table, CliError> {
    if !(p.t_hot > 0.0 && p.t_cold > 0.0) {
        return Err(CliError::Config("temperatures must be positive".into()));
    }
    let (bh, bc) = (1.0 / p.t_hot, 1.0 / p.t_cold);
    let bath = |beta: f64| BosonBathSpec {
        k: p.k,
        gamma: p.gamma,
        beta,
        grid: BosonGrid::Band { center: p.omega0, width: p.bandwidth },
    };
    let model = BosonModel::new(p.omega0, &[bath(bh), bath(bc)])?;
    let markov = markov_transport_bose(p.omega0, p.gamma, p.gamma, bh, bc);
    let ch = TransportChannel::new(
        Statistics::Bose,
        transmission_bose(p.omega0, p.gamma, p.gamma)?,
        ((p.omega0 - 0.5 * p.bandwidth).max(0.0), p.omega0 + 0.5 * p.bandwidth),
        bh,
        bc,
    )?;
    let bal_rate = (bc - bh) * ballistic_current_and_variance(&ch)?.j_q;
    let t0 = 1.0 / (p.omega0 * p.gamma);

    let cov0 = model.initial_covariance(SystemState::Stationary)?;
    let prop = CovariancePropagator::new(&model.hamiltonian(), &cov0)?;
    let opts = BoseLedgerOptions::default();
    let sigma_t0 = bose_entropy_ledger(&prop.at(t0)?, &cov0, &model, t0, &opts)?.ledger.sigma;
    let mut table = Table::new(
        "",
        &[
            "t_over_t0", "t", "sigma", "sigma_minus_sigma_t0", "markov_minus_t0", "ballistic_minus_t0", "I_M", "J_W",
            "D_env", "Q_hot", "Q_cold",
        ],
    );
    table.rows = par_rows(&p.t_over_t0.points(), |&x| {
        let t = x * t0;
        let l = bose_entropy_ledger(&prop.at(t)?, &cov0, &model, t, &opts)?;
        let e = &l.ledger;
        Ok(vec![
            x,
            t,
            e.sigma,
            e.sigma - sigma_t0,
            markov.sigma_rate * (t - t0),
            bal_rate * (t - t0),
            e.i_m,
            l.j_w,
            e.d_env,
            e.heat[0],
            e.heat[1],
        ])
    })?;
    Ok(table)
}

fn two_mode_ferm_table(p: &TwoModeFerm) -> Result<Table, CliError> {
    let mut table = Table::new("", &["eps2", "I_ij", "J_F", "J_F_over_I_ij"]);
    for e2 in p.eps2.points() {
        if e2 < 0.0 {
            return Err(CliError::Config(format!("eps2 = {e2} < 0")));
        }
        let r = two_mode_fermi(p.ni, p.nj, e2.sqrt())?;
        let ratio = if r.i_ij > 0.0 { r.j_f / r.i_ij } else { f64::NAN };
        table.rows.push(vec![e2, r.i_ij, r.j_f, ratio]);
    }
    Ok(table)
}

fn symmetry(s: Symmetry) -> TwoModeSymmetry {
    match s {
        Symmetry::SqueezedThermal => TwoModeSymmetry::SqueezedThermal,
        Symmetry::Equal => TwoModeSymmetry::Equal,
        Symmetry::PositionOnly => TwoModeSymmetry::PositionOnly,
    }
}

fn symmetry_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::SqueezedThermal => "squeezed_thermal",
        Symmetry::Equal => "equal",
        Symmetry::PositionOnly => "position_only",
    }
}

fn two_mode_bose_tables(p: &TwoModeBose) -> Result<Vec<Table>, CliError> {
    let fr = p.eps2_fraction.points();
    if let Some(f) = fr.iter().find(|&&f| !(0.0..=1.0).contains(&f)) {
        return Err(CliError::Config(format!("eps2_fraction = {f} outside [0, 1]")));
    }
    for &[ni, nj] in &p.occupations {
        if !(ni >= 0.0 && nj >= 0.0) {
            return Err(CliError::Config(format!("occupations ({ni}, {nj}) must be ≥ 0")));
        }
    }
    let mut tables = vec![];
    for &[ni, nj] in &p.occupations {
        for &s in &p.symmetries {
            let sym = symmetry(s);
            let emax = sym.eps_max(ni, nj);
            let mut table = Table::new(
                format!("n{ni}_{nj}_{}", symmetry_name(s)),
                &["eps2", "eps2_over_max", "I_ij", "J_W", "J_F", "leakage"],
            );
            table.rows = par_rows(&fr, |&f| {
                let e = f.sqrt() * emax;
                let (q, pp) = sym.covariances(e);
                let r = two_mode_bose(ni, nj, q, pp, p.cutoff)?;
                Ok(vec![e * e, f, r.i_ij, r.j_w, r.j_f, r.leakage])
            })?;
            tables.push(table);
        }
    }
    Ok(tables)
}

fn fcs_sweep(p: &FcsSweep) -> Result<Table, CliError> {
    if !(p.t_hot > 0.0 && p.t_cold > 0.0) {
        return Err(CliError::Config("temperatures must be positive".into()));
    }
    let (bh, bc) = (1.0 / p.t_hot, 1.0 / p.t_cold);
    let eps = p.eps0.points();
    if let Some(e) = eps.iter().find(|&&e| !(e > 0.0)) {
        return Err(CliError::Config(format!("eps0 = {e} must be positive")));
    }
    let mut table = Table::new(
        "",
        &["eps0", "JQ_F", "Var_F", "JQ_F_bal", "Var_F_bal", "JQ_B", "Var_B", "JQ_B_bal", "Var_B_bal"],
    );
    table.rows = par_rows(&eps, |&e0| {
        let f = TransportChannel::new(
            Statistics::Fermi,
            transmission_fermi(e0, p.gamma, p.gamma)?,
            (e0 - 0.5 * p.bandwidth, e0 + 0.5 * p.bandwidth),
            bh,
            bc,
        )?;
        let b = TransportChannel::new(
            Statistics::Bose,
            transmission_bose(e0, p.gamma / e0, p.gamma / e0)?,
            (0.0, p.omega_c_factor * e0),
            bh,
            bc,
        )?;
        let (fq, fb) = (current_and_variance(&f)?, ballistic_current_and_variance(&f)?);
        let (bq, bb) = (current_and_variance(&b)?, ballistic_current_and_variance(&b)?);
        Ok(vec![e0, fq.j_q, fq.var_jq, fb.j_q, fb.var_jq, bq.j_q, bq.var_jq, bb.j_q, bb.var_jq])
    })?;
    Ok(table)
}
