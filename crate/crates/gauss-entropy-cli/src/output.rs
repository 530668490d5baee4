use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::json;

use crate::oracle::ORACLE_TOL;
use crate::run::{RunOutput, Table};
use crate::CliError;

/// Integral values print as integers, everything else with 17 significant
/// digits. Rust float formatting is locale-independent.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.16e}")
    }
}

pub fn to_csv(table: &Table) -> String {
    let mut s = table.columns.join(",");
    s.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

pub fn csv_name(name: &str, table: &Table) -> String {
    if table.suffix.is_empty() {
        format!("{name}.csv")
    } else {
        format!("{name}_{}.csv", table.suffix)
    }
}

fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .unwrap_or_else(|| "unknown".into())
}

/// Write all CSVs and the sidecar. Everything is rendered in memory first so
/// a formatting problem cannot leave a half-written run behind.
pub fn write_output(out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let name = &out.scenario.name;
    let files: Vec<(String, String)> = out.tables.iter().map(|t| (csv_name(name, t), to_csv(t))).collect();
    let sidecar = json!({
        "name": name,
        "kind": out.scenario.spec.kind(),
        "provenance": out.scenario.provenance,
        "config": out.scenario,
        "git_describe": git_describe(),
        "version": env!("CARGO_PKG_VERSION"),
        "tolerances": {
            "oracle_abs": ORACLE_TOL,
            "quadrature_rel": gauss_entropy::quad::QuadOptions::default().rel_tol,
            "fock_max_leakage": gauss_entropy::fock::DEFAULT_MAX_LEAKAGE,
            "symplectic_drift": gauss_entropy::boson::SYMPLECTIC_DRIFT_TOL,
        },
        "tables": files.iter().map(|(f, _)| f.clone()).collect::<Vec<_>>(),
        "runtimes_s": out.runtimes,
        "oracle": out.oracle,
    });
    let sidecar = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");

    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut written = vec![];
    for (f, body) in files.iter().chain(std::iter::once(&(format!("{name}.json"), sidecar))) {
        let p = dir.join(f);
        fs::write(&p, body).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        written.push(p);
    }
    Ok(written)
}
