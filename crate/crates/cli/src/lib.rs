//! Scenario-driven commands for the `tetrad-em` binary.
//!
//! Every command returns its full output as a string together with a pass
//! flag, so the binary only prints and picks the exit code: 0 when everything
//! passed, 1 for a failed check, 2 for bad input.

pub mod check;
pub mod report;
pub mod scenario;
pub mod verify;

use serde::Serialize;
use tetrad_em::quadrature::{self, Options};

pub use scenario::{Compiled, Scenario};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] tetrad_em::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use tetrad_em::Error as E;
        match self {
            CliError::Core(E::NonConvergence { .. } | E::InsufficientJetOrder { .. }) => 1,
            _ => 2,
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

/// Shortest decimal that parses back to the same `f64`, with `-0` printed as
/// `0` and an exponent only for very large or small magnitudes.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Serialize)]
struct IntegralJson {
    energy: f64,
    momentum: [f64; 3],
    panels: usize,
}

/// Energy and momentum over the scenario's integration region as JSON.
pub fn integrate(scenario: &Compiled) -> Result<Outcome, CliError> {
    let (region, tolerance) = scenario
        .integration
        .ok_or_else(|| CliError::Input("integration: block required for this command".into()))?;
    let opts = Options { tolerance, ..Options::default() };
    let i = quadrature::integrate(&scenario.model.tetrad, &scenario.model.params, region, &opts)?;
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let json = IntegralJson {
        energy: clean(i.energy),
        momentum: i.momentum.map(clean),
        panels: i.panels,
    };
    let mut output = serde_json::to_string_pretty(&json).expect("plain numbers serialize");
    output.push('\n');
    Ok(Outcome { output, passed: true })
}
