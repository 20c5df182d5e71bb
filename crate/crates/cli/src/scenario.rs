//! Scenario files: a chart, parameter values, a tetrad, optional matter
//! fields, a grid of evaluation points and optional integration settings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tetrad_em::calculus::SpinorField;
use tetrad_em::energymomentum::{MatterFields, Model, Potential};
use tetrad_em::expr::parse;
use tetrad_em::quadrature::Region;
use tetrad_em::{Symbols, Tetrad};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub chart: [String; 4],
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    /// `tetrad[a][mu]` is hᵃ_μ.
    pub tetrad: [[String; 4]; 4],
    /// Coordinate components A_μ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maxwell_potential: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinor: Option<SpinorSpec>,
    /// One axis per chart coordinate, keyed by name.
    pub grid: BTreeMap<String, Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integration: Option<Integration>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinorSpec {
    /// Over `[1, 𝔤⁰𝔤¹, 𝔤⁰𝔤², 𝔤⁰𝔤³, 𝔤¹𝔤², 𝔤¹𝔤³, 𝔤²𝔤³, τ]`.
    pub components: [String; 8],
    pub mass: f64,
    pub charge: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Integration {
    pub r_coordinate: String,
    pub r_min: Value,
    pub tolerance: f64,
}

/// A number, or an expression over the parameters such as `"pi/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Number(f64),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    /// `count` evenly spaced values from `min` to `max` inclusive.
    Range { min: Value, max: Value, count: usize },
    Values(Vec<Value>),
    Single(Value),
}

/// A validated scenario ready for evaluation.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub chart: [String; 4],
    pub model: Model,
    /// Grid points in chart order, last coordinate varying fastest.
    pub points: Vec<[f64; 4]>,
    pub integration: Option<(Region, f64)>,
}

fn input(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    fn value(&self, v: &Value, params: &Symbols, values: &[f64], path: &str) -> Result<f64, CliError> {
        let x = match v {
            Value::Number(x) => *x,
            Value::Expr(text) => parse(text, params)
                .and_then(|e| e.eval(&[0.0; 4], values))
                .map_err(|e| input(path, e))?,
        };
        if !x.is_finite() {
            return Err(input(path, "not a finite number"));
        }
        Ok(x)
    }

    fn axis(&self, name: &str, params: &Symbols, values: &[f64]) -> Result<Vec<f64>, CliError> {
        let path = format!("grid.{name}");
        let axis = self
            .grid
            .get(name)
            .ok_or_else(|| input(&path, "missing axis for chart coordinate"))?;
        match axis {
            Axis::Single(v) => Ok(vec![self.value(v, params, values, &path)?]),
            Axis::Values(vs) => {
                if vs.is_empty() {
                    return Err(input(&path, "empty list of values"));
                }
                vs.iter()
                    .enumerate()
                    .map(|(i, v)| self.value(v, params, values, &format!("{path}[{i}]")))
                    .collect()
            }
            Axis::Range { min, max, count } => {
                if *count == 0 {
                    return Err(input(&format!("{path}.count"), "must be at least 1"));
                }
                let lo = self.value(min, params, values, &format!("{path}.min"))?;
                let hi = self.value(max, params, values, &format!("{path}.max"))?;
                if *count == 1 {
                    return Ok(vec![lo]);
                }
                let n = (*count - 1) as f64;
                Ok((0..*count).map(|i| lo + (hi - lo) * (i as f64 / n)).collect())
            }
        }
    }

    pub fn compile(&self) -> Result<Compiled, CliError> {
        for (i, c) in self.chart.iter().enumerate() {
            if c.is_empty() || !c.chars().all(|ch| ch.is_alphanumeric() || ch == '_') || c == "pi" {
                return Err(input(&format!("chart[{i}]"), format!("invalid coordinate name {c:?}")));
            }
            if self.chart[..i].contains(c) {
                return Err(input(&format!("chart[{i}]"), format!("duplicate coordinate {c:?}")));
            }
        }
        for (name, v) in &self.parameters {
            let path = format!("parameters.{name}");
            if self.chart.contains(name) {
                return Err(input(&path, "name clashes with a chart coordinate"));
            }
            if !v.is_finite() {
                return Err(input(&path, "not a finite number"));
            }
        }
        let names: Vec<&str> = self.parameters.keys().map(String::as_str).collect();
        let values: Vec<f64> = self.parameters.values().copied().collect();
        let chart: Vec<&str> = self.chart.iter().map(String::as_str).collect();
        let symbols = Symbols::new(&chart, &names);
        let param_symbols = Symbols::new(&[], &names);

        let tetrad = Tetrad::parse(symbols.clone(), &self.tetrad)?;
        let mut matter = MatterFields::default();
        if let Some(a) = &self.maxwell_potential {
            matter.potential = Some(Potential::parse(&symbols, a)?);
        }
        if let Some(s) = &self.spinor {
            matter.spinor = Some(SpinorField::parse(&symbols, &s.components)?);
            for (field, v) in [("mass", s.mass), ("charge", s.charge)] {
                if !v.is_finite() {
                    return Err(input(&format!("spinor.{field}"), "not a finite number"));
                }
            }
            matter.mass = s.mass;
            matter.charge = s.charge;
        }

        if let Some(extra) = self.grid.keys().find(|k| !self.chart.contains(k)) {
            return Err(input(&format!("grid.{extra}"), "not a chart coordinate"));
        }
        let axes = self
            .chart
            .iter()
            .map(|c| self.axis(c, &param_symbols, &values))
            .collect::<Result<Vec<_>, _>>()?;
        let mut points = Vec::new();
        for &x0 in &axes[0] {
            for &x1 in &axes[1] {
                for &x2 in &axes[2] {
                    for &x3 in &axes[3] {
                        points.push([x0, x1, x2, x3]);
                    }
                }
            }
        }

        let integration = match &self.integration {
            None => None,
            Some(i) => {
                if i.r_coordinate != self.chart[1] {
                    return Err(input(
                        "integration.r_coordinate",
                        format!("must name the second chart coordinate {:?}", self.chart[1]),
                    ));
                }
                if !(i.tolerance > 0.0 && i.tolerance.is_finite()) {
                    return Err(input("integration.tolerance", "must be positive"));
                }
                let r_min = self.value(&i.r_min, &param_symbols, &values, "integration.r_min")?;
                Some((Region::new(r_min), i.tolerance))
            }
        };

        Ok(Compiled {
            chart: self.chart.clone(),
            model: Model {
                tetrad,
                matter,
                params: values,
            },
            points,
            integration,
        })
    }
}
