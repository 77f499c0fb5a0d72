use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::Failure;

/// Module tolerances embedded in every report.
pub fn tolerances() -> BTreeMap<&'static str, f64> {
    let solve = lichnerowicz::solver::SolveOptions::default();
    BTreeMap::from([
        ("barrier_residual", lichnerowicz::nonlinearity::BARRIER_TOL),
        ("blowup_core_change", lichnerowicz::solver::BLOWUP_TOL),
        ("bound_relative", lichnerowicz::bounds::BOUND_TOL),
        ("finite_index_residual", lichnerowicz::asymptotic::BARRIER_RESIDUAL_TOL),
        ("monotone_slack", solve.slack),
        ("positivity_floor", lichnerowicz::solver::POSITIVITY_FLOOR),
        ("solve_residual", solve.residual_tol),
        ("solve_step", solve.step_tol),
    ])
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    config_hash: &'a str,
    tolerances: BTreeMap<&'static str, f64>,
    report: &'a T,
}

pub struct Output {
    pub dir: PathBuf,
    pub command: String,
    pub hash: String,
    pub quiet: bool,
}

impl Output {
    pub fn new(dir: PathBuf, command: &str, hash: String, quiet: bool) -> Result<Self, Failure> {
        fs::create_dir_all(&dir).map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Output { dir, command: command.into(), hash, quiet })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn written(&self, p: &Path) {
        if !self.quiet {
            println!("wrote {}", p.display());
        }
    }

    pub fn json<T: Serialize>(&self, name: &str, report: &T) -> Result<(), Failure> {
        let env = Envelope { command: &self.command, config_hash: &self.hash, tolerances: tolerances(), report };
        let mut text = serde_json::to_string_pretty(&env).map_err(|e| Failure::Numerical(e.to_string()))?;
        text.push('\n');
        let p = self.path(name);
        fs::write(&p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
        self.written(&p);
        Ok(())
    }

    pub fn csv(&self, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<(), Failure> {
        let p = self.path(name);
        let io = |e: csv::Error| Failure::Config(format!("{}: {e}", p.display()));
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&p).map_err(io)?;
        w.write_record(header).map_err(io)?;
        for row in rows {
            w.write_record(row.iter().map(|&x| number(x))).map_err(io)?;
        }
        w.flush().map_err(|e| Failure::Config(e.to_string()))?;
        self.written(&p);
        Ok(())
    }
}

/// Shortest round-trip text; exponent form outside [1e−4, 1e15).
pub fn number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
