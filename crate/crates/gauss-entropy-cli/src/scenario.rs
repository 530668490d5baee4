//! Scenario schema. Configs are JSON; every struct rejects unknown fields so
//! a typo surfaces as a config error instead of a silently ignored default.

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// free-form description of where the parameters come from; copied
    /// verbatim into the sidecar
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub oracle_check: bool,
    pub spec: Spec,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spec {
    FermRelax(FermRelax),
    FermExact(FermRelax),
    FermTransport(FermTransport),
    BoseRelax(BoseRelax),
    BoseTransport(BoseTransport),
    TwoModeFerm(TwoModeFerm),
    TwoModeBose(TwoModeBose),
    FcsSweep(FcsSweep),
}

impl Spec {
    pub fn kind(&self) -> &'static str {
        match self {
            Spec::FermRelax(_) => "ferm_relax",
            Spec::FermExact(_) => "ferm_exact",
            Spec::FermTransport(_) => "ferm_transport",
            Spec::BoseRelax(_) => "bose_relax",
            Spec::BoseTransport(_) => "bose_transport",
            Spec::TwoModeFerm(_) => "two_mode_ferm",
            Spec::TwoModeBose(_) => "two_mode_bose",
            Spec::FcsSweep(_) => "fcs_sweep",
        }
    }
}

/// A list of sample points, either explicit or evenly spaced (endpoints included).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Linspace { start: f64, stop: f64, num: usize },
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::List(ref v) => v.clone(),
            Grid::Linspace { start, stop, num } => match num {
                0 => vec![],
                1 => vec![start],
                _ => (0..num).map(|i| start + (stop - start) * i as f64 / (num - 1) as f64).collect(),
            },
        }
    }
}

fn default_true() -> bool {
    true
}

/// Single level relaxing into one fermionic bath. Energies in units of k_BT.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FermRelax {
    pub eps0: f64,
    pub gamma: f64,
    pub bandwidth: f64,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "one")]
    pub beta: f64,
    #[serde(default)]
    pub mu: f64,
    /// initial system occupation
    #[serde(default)]
    pub n0: f64,
    pub k: Vec<usize>,
    /// times in units of 1/Γ
    pub gamma_t: Grid,
    #[serde(default)]
    pub chain_bound: bool,
}

fn one() -> f64 {
    1.0
}

/// Level between a hot and a cold fermionic bath, started from the product of
/// its stationary occupation and the two thermal baths.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FermTransport {
    pub eps0: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    /// width contributed by each bath
    pub gamma: f64,
    pub bandwidth: f64,
    /// levels per bath
    pub k: usize,
    pub gamma_t: Grid,
    #[serde(default = "default_true")]
    pub chain_bound: bool,
}

/// Caldeira–Leggett oscillator in one Ohmic bath. Frequencies in units of ω₀.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoseRelax {
    pub omega0: f64,
    pub gamma: f64,
    pub omega_c: f64,
    pub k: usize,
    pub temperatures: Vec<f64>,
    /// initial system temperature as a multiple of the bath temperature;
    /// 0 is the vacuum
    pub start_factors: Vec<f64>,
    pub t: Grid,
    #[serde(default)]
    pub system_environment: bool,
}

/// Oscillator between two band-limited bosonic baths.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoseTransport {
    pub omega0: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    /// dimensionless, per bath
    pub gamma: f64,
    pub bandwidth: f64,
    pub k: usize,
    /// times in units of t₀ = 1/(ω₀γ)
    pub t_over_t0: Grid,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TwoModeFerm {
    pub ni: f64,
    pub nj: f64,
    /// ε² values; must stay below ε_max²
    pub eps2: Grid,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    SqueezedThermal,
    Equal,
    PositionOnly,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TwoModeBose {
    /// (n_i, n_j) pairs, one table each per symmetry
    pub occupations: Vec<[f64; 2]>,
    pub symmetries: Vec<Symmetry>,
    /// ε²/ε_max² values in [0, 1]
    pub eps2_fraction: Grid,
    pub cutoff: usize,
}

/// Stationary heat-current statistics against the level energy. Energies in
/// units of k_BT_H.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FcsSweep {
    pub eps0: Grid,
    pub t_hot: f64,
    pub t_cold: f64,
    pub gamma: f64,
    pub bandwidth: f64,
    /// bosonic window is [0, omega_c_factor·ω₀]
    pub omega_c_factor: f64,
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))
}

/// Apply a `key=a..b[:step]` or `key=v1,v2,...` override. The key is looked
/// up in the kind-specific parameters (then at top level); grid-valued fields
/// receive the whole range, scalar fields one run per value.
pub fn apply_sweep(base: &Scenario, sweep: &str) -> Result<Vec<Scenario>, CliError> {
    let (key, range) = sweep
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("sweep `{sweep}`: expected key=range")))?;
    let values = parse_range(range).map_err(|m| CliError::Config(format!("sweep `{sweep}`: {m}")))?;
    let mut root = serde_json::to_value(base).expect("scenario serializes");
    let spec = root["spec"].as_object_mut().expect("spec is an object");
    let current = spec
        .get(key)
        .ok_or_else(|| CliError::Config(format!("sweep key `{key}` is not a field of {}", base.spec.kind())))?
        .clone();
    let reparse = |v: serde_json::Value| -> Result<Scenario, CliError> {
        serde_json::from_value(v).map_err(|e| CliError::Config(format!("sweep `{sweep}`: {e}")))
    };
    if current.is_array() || current.is_object() {
        let mut v = root.clone();
        let arr = if key == "k" || current.as_array().is_some_and(|a| a.iter().all(|x| x.is_u64())) {
            serde_json::Value::from(values.iter().map(|&x| as_count(x)).collect::<Result<Vec<_>, _>>()?)
        } else {
            serde_json::Value::from(values.clone())
        };
        v["spec"][key] = arr;
        return Ok(vec![reparse(v)?]);
    }
    values
        .iter()
        .map(|&x| {
            let mut v = root.clone();
            v["spec"][key] = if current.is_u64() { serde_json::Value::from(as_count(x)?) } else { serde_json::Value::from(x) };
            v["name"] = serde_json::Value::from(format!("{}_{key}{}", base.name, fmt_short(x)));
            reparse(v)
        })
        .collect()
}

fn as_count(x: f64) -> Result<u64, CliError> {
    if x >= 0.0 && x.fract() == 0.0 {
        Ok(x as u64)
    } else {
        Err(CliError::Config(format!("{x} is not a non-negative integer")))
    }
}

fn fmt_short(x: f64) -> String {
    format!("{x}")
}

fn num(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}

/// `a..b` (unit step), `a..b:step`, or a comma list.
pub fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    if let Some((a, rest)) = s.split_once("..") {
        let (b, step) = match rest.split_once(':') {
            Some((b, st)) => (num(b)?, num(st)?),
            None => (num(rest)?, 1.0),
        };
        let a = num(a)?;
        if !(step > 0.0) || !(b >= a) {
            return Err("range needs a ≤ b and a positive step".into());
        }
        let n = ((b - a) / step + 1e-9).floor() as usize;
        if n > 100_000 {
            return Err("range has too many points".into());
        }
        return Ok((0..=n).map(|i| a + step * i as f64).collect());
    }
    let v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty value list".into());
    }
    Ok(v)
}
