//! Figure presets: pinned sweep parameters for the standard plots.
//!
//! Line presets (fig3, fig5, fig7, fig9) sweep time for four memory values
//! at a fixed time model. Surface presets (fig2, fig4, fig6, fig8)
//! additionally sweep the model parameter across its regime and add it as a
//! table column; the exact grids are not pinned anywhere, so they default to
//! 50 x 50 over the regime's interval.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use bqt_core::bqt::Backend;
use bqt_core::noise::{AdTimeModel, DephasingTimeModel, TimeModel};

use crate::config::{default_settings, OutputColumn, SweepSpec, TimeGrid};
use crate::emit::{emit_csv, emit_svg, emit_svg_grouped};
use crate::sweep::{run_sweep, ResultTable};
use crate::{Error, Result};

/// The eight reproducible figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl PresetId {
    pub const ALL: [PresetId; 8] = [
        PresetId::Fig2,
        PresetId::Fig3,
        PresetId::Fig4,
        PresetId::Fig5,
        PresetId::Fig6,
        PresetId::Fig7,
        PresetId::Fig8,
        PresetId::Fig9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PresetId::Fig2 => "fig2",
            PresetId::Fig3 => "fig3",
            PresetId::Fig4 => "fig4",
            PresetId::Fig5 => "fig5",
            PresetId::Fig6 => "fig6",
            PresetId::Fig7 => "fig7",
            PresetId::Fig8 => "fig8",
            PresetId::Fig9 => "fig9",
        }
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Validation {
                field: "preset".to_string(),
                message: format!("`{s}` is not one of fig2..fig9"),
            })
    }
}

/// Second sweep axis of a surface preset.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceAxis {
    /// Memory time of the dephasing model; column `tau`.
    DephasingTau { values: Vec<f64> },
    /// Spectral width over coupling, with the coupling as the time unit;
    /// column `gamma_ratio`.
    DampingRatio { values: Vec<f64> },
}

impl SurfaceAxis {
    pub fn column(&self) -> &'static str {
        match self {
            SurfaceAxis::DephasingTau { .. } => "tau",
            SurfaceAxis::DampingRatio { .. } => "gamma_ratio",
        }
    }

    fn values(&self) -> &[f64] {
        match self {
            SurfaceAxis::DephasingTau { values } => values,
            SurfaceAxis::DampingRatio { values } => values,
        }
    }

    fn time_model(&self, value: f64) -> TimeModel {
        match self {
            SurfaceAxis::DephasingTau { .. } => {
                TimeModel::Dephasing(DephasingTimeModel::new(value).expect("grid inside regime"))
            }
            SurfaceAxis::DampingRatio { .. } => TimeModel::AmplitudeDamping(
                AdTimeModel::new(1.0, value).expect("grid inside regime"),
            ),
        }
    }
}

/// One figure preset: a base sweep plus an optional surface axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: PresetId,
    pub spec: SweepSpec,
    pub surface: Option<SurfaceAxis>,
}

fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
        .collect()
}

fn line_spec(time_model: TimeModel, t_max: f64, steps: usize) -> SweepSpec {
    SweepSpec {
        channel: time_model.kind(),
        time_model,
        u_values: vec![0.0, 0.3, 0.6, 0.9],
        t_grid: TimeGrid {
            min: 0.0,
            max: t_max,
            steps,
        },
        settings: default_settings(),
        backend: Backend::ClosedForm,
        outputs: OutputColumn::ALL.to_vec(),
    }
}

fn surface_spec(time_model: TimeModel, t_max: f64, steps: usize) -> SweepSpec {
    SweepSpec {
        channel: time_model.kind(),
        time_model,
        u_values: vec![0.0, 0.5],
        t_grid: TimeGrid {
            min: 0.0,
            max: t_max,
            steps,
        },
        settings: default_settings(),
        backend: Backend::ClosedForm,
        outputs: vec![OutputColumn::Negativity],
    }
}

/// The pinned parameters of one figure.
pub fn preset(id: PresetId) -> FigurePreset {
    let dephasing = |tau: f64| TimeModel::Dephasing(DephasingTimeModel::new(tau).unwrap());
    let damping = |width: f64| TimeModel::AmplitudeDamping(AdTimeModel::new(1.0, width).unwrap());
    match id {
        // Markovian dephasing entanglement surface, tau < 1/4.
        PresetId::Fig2 => FigurePreset {
            id,
            spec: surface_spec(dephasing(0.1), 10.0, 50),
            surface: Some(SurfaceAxis::DephasingTau {
                values: linspace(0.005, 0.245, 50),
            }),
        },
        // Markovian dephasing curves at tau = 0.1.
        PresetId::Fig3 => FigurePreset {
            id,
            spec: line_spec(dephasing(0.1), 50.0, 500),
            surface: None,
        },
        // Non-Markovian dephasing entanglement surface, tau > 1/4.
        PresetId::Fig4 => FigurePreset {
            id,
            spec: surface_spec(dephasing(1.0), 20.0, 50),
            surface: Some(SurfaceAxis::DephasingTau {
                values: linspace(0.26, 5.0, 50),
            }),
        },
        // Non-Markovian dephasing curves at tau = 7.
        PresetId::Fig5 => FigurePreset {
            id,
            spec: line_spec(dephasing(7.0), 50.0, 600),
            surface: None,
        },
        // Markovian damping entanglement surface, Gamma/gamma > 1/2.
        PresetId::Fig6 => FigurePreset {
            id,
            spec: surface_spec(damping(5.0), 10.0, 50),
            surface: Some(SurfaceAxis::DampingRatio {
                values: linspace(0.51, 5.0, 50),
            }),
        },
        // Markovian damping curves at Gamma = 5 gamma.
        PresetId::Fig7 => FigurePreset {
            id,
            spec: line_spec(damping(5.0), 10.0, 500),
            surface: None,
        },
        // Non-Markovian damping entanglement surface, Gamma/gamma < 1/2.
        PresetId::Fig8 => FigurePreset {
            id,
            spec: surface_spec(damping(0.1), 50.0, 50),
            surface: Some(SurfaceAxis::DampingRatio {
                values: linspace(0.01, 0.49, 50),
            }),
        },
        // Non-Markovian damping curves at Gamma = 0.1 gamma.
        PresetId::Fig9 => FigurePreset {
            id,
            spec: line_spec(damping(0.1), 50.0, 800),
            surface: None,
        },
    }
}

/// Runs a preset and writes `<id>.csv` plus one SVG per output column
/// (per memory value for surface presets). Returns the files written.
pub fn run_preset(
    id: PresetId,
    out_dir: &Path,
    backend: Option<Backend>,
    nodes: usize,
) -> Result<Vec<PathBuf>> {
    let mut figure = preset(id);
    if let Some(backend) = backend {
        figure.spec.backend = backend;
    }
    let mut written = Vec::new();
    let csv_path = out_dir.join(format!("{}.csv", id.name()));

    match &figure.surface {
        None => {
            let table = run_sweep(&figure.spec, nodes)?;
            emit_csv(&table, &csv_path)?;
            written.push(csv_path);
            for column in &figure.spec.outputs {
                let path = out_dir.join(format!("{}_{}.svg", id.name(), column.name()));
                emit_svg(&table, column.name(), &path)?;
                written.push(path);
            }
        }
        Some(axis) => {
            let table = run_surface(&figure.spec, axis, nodes)?;
            emit_csv(&table, &csv_path)?;
            written.push(csv_path);
            for column in &figure.spec.outputs {
                for &u in &figure.spec.u_values {
                    let path =
                        out_dir.join(format!("{}_{}_u{}.svg", id.name(), column.name(), u));
                    emit_svg_grouped(&table, column.name(), axis.column(), Some(("u", u)), &path)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}

fn run_surface(base: &SweepSpec, axis: &SurfaceAxis, nodes: usize) -> Result<ResultTable> {
    let mut columns: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &value in axis.values() {
        let mut spec = base.clone();
        spec.time_model = axis.time_model(value);
        let table = run_sweep(&spec, nodes)?;
        if columns.is_none() {
            let mut names = table.columns.clone();
            names.insert(3, axis.column().to_string());
            columns = Some(names);
        }
        for row in table.rows {
            let mut extended = row;
            extended.insert(3, value);
            rows.push(extended);
        }
    }
    // Keep the (u, axis, t) ordering deterministic after merging.
    rows.sort_by(|a, b| {
        (a[1], a[3], a[0])
            .partial_cmp(&(b[1], b[3], b[0]))
            .expect("finite keys")
    });
    Ok(ResultTable {
        columns: columns.expect("at least one axis value"),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, to_config_text};

    #[test]
    fn preset_names_round_trip() {
        for id in PresetId::ALL {
            assert_eq!(id.name().parse::<PresetId>().unwrap(), id);
        }
        assert!("fig1".parse::<PresetId>().is_err());
    }

    #[test]
    fn line_preset_specs_round_trip_through_config_text() {
        for id in [PresetId::Fig3, PresetId::Fig5, PresetId::Fig7, PresetId::Fig9] {
            let spec = preset(id).spec;
            let round = parse_config(&to_config_text(&spec)).unwrap();
            assert_eq!(spec, round, "{}", id.name());
        }
    }

    #[test]
    fn preset_parameters_match_their_captions() {
        match preset(PresetId::Fig3).spec.time_model {
            TimeModel::Dephasing(m) => assert_eq!(m.tau(), 0.1),
            _ => panic!("fig3 is dephasing"),
        }
        match preset(PresetId::Fig5).spec.time_model {
            TimeModel::Dephasing(m) => assert_eq!(m.tau(), 7.0),
            _ => panic!("fig5 is dephasing"),
        }
        match preset(PresetId::Fig7).spec.time_model {
            TimeModel::AmplitudeDamping(m) => {
                assert_eq!(m.spectral_width(), 5.0);
                assert_eq!(m.gamma(), 1.0);
                assert!(m.is_markovian());
            }
            _ => panic!("fig7 is amplitude damping"),
        }
        match preset(PresetId::Fig9).spec.time_model {
            TimeModel::AmplitudeDamping(m) => {
                assert_eq!(m.spectral_width(), 0.1);
                assert!(!m.is_markovian());
            }
            _ => panic!("fig9 is amplitude damping"),
        }
        assert_eq!(
            preset(PresetId::Fig3).spec.u_values,
            vec![0.0, 0.3, 0.6, 0.9]
        );
    }

    #[test]
    fn surface_presets_span_their_regimes() {
        for (id, markovian) in [(PresetId::Fig2, true), (PresetId::Fig4, false)] {
            let figure = preset(id);
            let SurfaceAxis::DephasingTau { values } = figure.surface.unwrap() else {
                panic!("dephasing surface");
            };
            assert_eq!(values.len(), 50);
            for tau in values {
                assert_eq!(tau < 0.25, markovian, "{}", id.name());
            }
        }
        // The damping surfaces split at the ratio 1/2 named by the plots.
        for (id, above_half) in [(PresetId::Fig6, true), (PresetId::Fig8, false)] {
            let figure = preset(id);
            let SurfaceAxis::DampingRatio { values } = figure.surface.unwrap() else {
                panic!("damping surface");
            };
            for ratio in values {
                assert_eq!(ratio > 0.5, above_half, "{}", id.name());
                if !above_half {
                    assert!(!AdTimeModel::new(1.0, ratio).unwrap().is_markovian());
                }
            }
        }
    }

    #[test]
    fn fig3_starts_with_perfect_entanglement_and_information() {
        // Same parameters as fig3 on a two-point grid: the t = 0 rows carry
        // N = 1 and J = 1 for the sharp direction.
        let figure = preset(PresetId::Fig3);
        let spec = SweepSpec {
            t_grid: TimeGrid {
                min: 0.0,
                max: 50.0,
                steps: 2,
            },
            ..figure.spec
        };
        let table = run_sweep(&spec, 16).unwrap();
        let n = table.column_index("negativity").unwrap();
        let j = table.column_index("qfi_theta_a").unwrap();
        for row in table.rows.iter().filter(|r| r[0] == 0.0) {
            assert_eq!(row[n], 1.0);
            assert_eq!(row[j], 1.0);
        }
    }

    #[test]
    fn surface_table_carries_the_axis_column() {
        let figure = preset(PresetId::Fig2);
        let spec = SweepSpec {
            t_grid: TimeGrid {
                min: 0.0,
                max: 2.0,
                steps: 3,
            },
            ..figure.spec
        };
        let axis = SurfaceAxis::DephasingTau {
            values: vec![0.05, 0.2],
        };
        let table = run_surface(&spec, &axis, 16).unwrap();
        assert_eq!(table.columns[3], "tau");
        assert_eq!(table.rows.len(), 2 * 2 * 3);
        // Sorted by (u, tau, t).
        let keys: Vec<(f64, f64, f64)> =
            table.rows.iter().map(|r| (r[1], r[3], r[0])).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
    }
}
