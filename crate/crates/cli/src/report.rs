//! `report`: one CSV row per grid point with the requested component groups.
//!
//! Columns are the chart coordinates followed by the groups in this fixed
//! order, whatever order they were requested in:
//!
//! | group        | columns                                                  |
//! |--------------|----------------------------------------------------------|
//! | grav         | `t00`..`t33`, 𝐭^{da} = 𝔤^d·𝐭^a                          |
//! | maxwell      | `TM00`..`TM33`, Maxwell T_ab                             |
//! | dirac        | `TD00`..`TD33`, symmetrized Dirac T_mk                   |
//! | interaction  | `TI00`..`TI33`, interaction T_ab                         |
//! | residuals    | the named residuals of the point evaluation              |
//! | lagrangians  | `L_gravity`, then `L_maxwell`, `L_dirac`, `L_interaction` for the fields present |

use clap::ValueEnum;
use rayon::prelude::*;
use tetrad_em::energymomentum::Mat;

use crate::{fmt_real, CliError, Compiled, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Which {
    Grav,
    Maxwell,
    Dirac,
    Interaction,
    Residuals,
    Lagrangians,
}

fn matrix(prefix: &str, header: &mut Vec<String>) {
    for a in 0..4 {
        for b in 0..4 {
            header.push(format!("{prefix}{a}{b}"));
        }
    }
}

fn push_matrix(m: &Mat, row: &mut Vec<f64>) {
    row.extend(m.iter().flatten());
}

/// Header and numeric rows, before formatting.
pub fn table(scenario: &Compiled, which: &[Which]) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let mut which = which.to_vec();
    which.sort();
    which.dedup();
    let matter = &scenario.model.matter;
    let (has_a, has_psi) = (matter.potential.is_some(), matter.spinor.is_some());
    for w in &which {
        let missing = match w {
            Which::Maxwell if !has_a => Some("maxwell_potential"),
            Which::Dirac if !has_psi => Some("spinor"),
            Which::Interaction if !(has_a && has_psi) => Some("maxwell_potential and spinor"),
            _ => None,
        };
        if let Some(field) = missing {
            return Err(CliError::Input(format!(
                "--which {}: scenario has no {field}",
                w.to_possible_value().expect("not skipped").get_name()
            )));
        }
    }

    let model = &scenario.model;
    let rows: Vec<(Vec<String>, Vec<f64>)> = scenario
        .points
        .par_iter()
        .map(|p| -> Result<_, CliError> {
            let mut names: Vec<String> = Vec::new();
            let mut row: Vec<f64> = p.to_vec();
            let report = model.report(p)?;
            for w in &which {
                match w {
                    Which::Grav => push_matrix(&report.t_components, &mut row),
                    Which::Maxwell => push_matrix(&report.maxwell.as_ref().expect("checked").components, &mut row),
                    Which::Dirac => push_matrix(&report.dirac.as_ref().expect("checked").components, &mut row),
                    Which::Interaction => {
                        push_matrix(&report.interaction.as_ref().expect("checked").components, &mut row)
                    }
                    Which::Residuals => {
                        for (n, v) in &report.residuals {
                            names.push(n.to_string());
                            row.push(*v);
                        }
                    }
                    Which::Lagrangians => {
                        let l = model.lagrangian_densities(p)?;
                        row.push(l.gravity);
                        row.extend(l.maxwell);
                        row.extend(l.dirac);
                        row.extend(l.interaction);
                    }
                }
            }
            Ok((names, row))
        })
        .collect::<Result<_, _>>()?;

    let mut header: Vec<String> = scenario.chart.to_vec();
    for w in &which {
        match w {
            Which::Grav => matrix("t", &mut header),
            Which::Maxwell => matrix("TM", &mut header),
            Which::Dirac => matrix("TD", &mut header),
            Which::Interaction => matrix("TI", &mut header),
            Which::Residuals => header.extend(rows[0].0.iter().cloned()),
            Which::Lagrangians => {
                header.push("L_gravity".into());
                if has_a {
                    header.push("L_maxwell".into());
                }
                if has_psi {
                    header.push("L_dirac".into());
                }
                if has_a && has_psi {
                    header.push("L_interaction".into());
                }
            }
        }
    }
    let values: Vec<Vec<f64>> = rows.into_iter().map(|(_, r)| r).collect();
    debug_assert!(values.iter().all(|r| r.len() == header.len()));
    Ok((header, values))
}

pub fn report(scenario: &Compiled, which: &[Which]) -> Result<Outcome, CliError> {
    let (header, rows) = table(scenario, which)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("writing to memory");
    for r in rows {
        w.write_record(r.iter().map(|x| fmt_real(*x))).expect("writing to memory");
    }
    let bytes = w.into_inner().expect("writing to memory");
    Ok(Outcome {
        output: String::from_utf8(bytes).expect("fields are UTF-8"),
        passed: true,
    })
}
