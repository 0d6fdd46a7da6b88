//! Sweep execution: one row per `(t, u)` grid point.
//!
//! Rows are computed in parallel and emitted sorted by `(u, t)`, so two runs
//! of the same spec produce identical tables.

use bqt_core::bqt::{self, Backend, Direction};
use bqt_core::metrics::{self, DerivativeMethod};
use rayon::prelude::*;

use crate::config::{OutputColumn, SweepSpec};
use crate::{Error, Result};

/// Default polar/azimuthal node count of the fidelity quadrature.
pub const DEFAULT_NODES: usize = 64;

/// Column-labelled numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Runs a sweep, producing `t`, `u`, the rescaled time `t_star = t / pi`
/// and one column per requested output.
pub fn run_sweep(spec: &SweepSpec, nodes: usize) -> Result<ResultTable> {
    let mut memories = spec.u_values.clone();
    memories.sort_by(|a, b| a.partial_cmp(b).expect("finite memory values"));
    let times = spec.t_grid.values();

    let points: Vec<(f64, f64)> = memories
        .iter()
        .flat_map(|&u| times.iter().map(move |&t| (u, t)))
        .collect();

    let rows: Result<Vec<Vec<f64>>> = points
        .par_iter()
        .map(|&(u, t)| {
            compute_row(spec, nodes, u, t).map_err(|source| Error::Row { t, u, source })
        })
        .collect();

    let mut columns = vec!["t".to_string(), "u".to_string(), "t_star".to_string()];
    columns.extend(spec.outputs.iter().map(|c| c.name().to_string()));
    Ok(ResultTable {
        columns,
        rows: rows?,
    })
}

fn compute_row(spec: &SweepSpec, nodes: usize, u: f64, t: f64) -> bqt_core::Result<Vec<f64>> {
    let p = spec.time_model.p_of_t(t)?;
    let mut row = vec![t, u, t / std::f64::consts::PI];
    for column in &spec.outputs {
        let value = match column {
            OutputColumn::Negativity => match spec.backend {
                Backend::ClosedForm => metrics::negativity_closed(spec.channel, p, u)?,
                Backend::Oracle => {
                    metrics::negativity(&bqt::resource_state(spec.channel, p, u)?)?
                }
            },
            OutputColumn::FidelityAvgA2B => metrics::average_fidelity(
                spec.backend,
                spec.channel,
                &spec.settings,
                Direction::AliceToBob,
                p,
                u,
                nodes,
            )?,
            OutputColumn::FidelityAvgB2A => metrics::average_fidelity(
                spec.backend,
                spec.channel,
                &spec.settings,
                Direction::BobToAlice,
                p,
                u,
                nodes,
            )?,
            OutputColumn::QfiThetaA => {
                metrics::qfi_theta(
                    spec.backend,
                    spec.channel,
                    &spec.settings,
                    Direction::AliceToBob,
                    p,
                    u,
                    DerivativeMethod::Analytic,
                )?
                .value
            }
            OutputColumn::QfiThetaB => {
                metrics::qfi_theta(
                    spec.backend,
                    spec.channel,
                    &spec.settings,
                    Direction::BobToAlice,
                    p,
                    u,
                    DerivativeMethod::Analytic,
                )?
                .value
            }
            OutputColumn::POfT => p,
        };
        if !value.is_finite() {
            return Err(bqt_core::Error::RangeError {
                what: "column value",
                value,
                range: "finite",
            });
        }
        row.push(value);
    }
    Ok(row)
}
