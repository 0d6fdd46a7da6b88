//! Sweep configuration: plain `key = value` text with `#` comments.
//!
//! Keys mirror the sweep fields in lower snake case. `channel`, `u_values`
//! and `t` are required; the time-model key depends on the channel (`tau`
//! for dephasing, `gamma` plus `spectral_width` for amplitude damping).
//! Protocol angles default to payloads at the pole with Alice's trigger
//! aligned and Bob's inverted.

use std::collections::HashMap;
use std::f64::consts::PI;

use bqt_core::bqt::{Backend, ProtocolSettings, PureQubit, TriggerSetting};
use bqt_core::noise::{AdTimeModel, ChannelKind, DephasingTimeModel, TimeModel};

use crate::{Error, Result};

/// Output quantities a sweep can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputColumn {
    Negativity,
    FidelityAvgA2B,
    FidelityAvgB2A,
    QfiThetaA,
    QfiThetaB,
    POfT,
}

impl OutputColumn {
    pub const ALL: [OutputColumn; 6] = [
        OutputColumn::Negativity,
        OutputColumn::FidelityAvgA2B,
        OutputColumn::FidelityAvgB2A,
        OutputColumn::QfiThetaA,
        OutputColumn::QfiThetaB,
        OutputColumn::POfT,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OutputColumn::Negativity => "negativity",
            OutputColumn::FidelityAvgA2B => "fidelity_avg_a2b",
            OutputColumn::FidelityAvgB2A => "fidelity_avg_b2a",
            OutputColumn::QfiThetaA => "qfi_theta_a",
            OutputColumn::QfiThetaB => "qfi_theta_b",
            OutputColumn::POfT => "p_of_t",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Inclusive time grid with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        (0..self.steps)
            .map(|i| self.min + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Fully validated description of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub channel: ChannelKind,
    pub time_model: TimeModel,
    pub u_values: Vec<f64>,
    pub t_grid: TimeGrid,
    pub settings: ProtocolSettings,
    pub backend: Backend,
    pub outputs: Vec<OutputColumn>,
}

/// Default protocol settings: payloads at the pole, Alice's trigger aligned
/// with it, Bob's trigger inverted.
pub fn default_settings() -> ProtocolSettings {
    ProtocolSettings::new(
        PureQubit::new(0.0, 0.0).expect("valid angle"),
        PureQubit::new(0.0, 0.0).expect("valid angle"),
        TriggerSetting::new(0.0).expect("valid angle"),
        TriggerSetting::new(PI).expect("valid angle"),
    )
}

const KNOWN_KEYS: [&str; 14] = [
    "channel",
    "tau",
    "gamma",
    "spectral_width",
    "u_values",
    "t",
    "backend",
    "outputs",
    "theta_a",
    "phi_a",
    "theta_tilde_a",
    "theta_b",
    "phi_b",
    "theta_tilde_b",
];

fn validation(field: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}

fn parse_float(field: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| validation(field, format!("`{value}` is not a number")))
}

/// Parses and validates a config document into a sweep description.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut fields: HashMap<&str, String> = HashMap::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let number = index + 1;
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                line: number,
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let Some(&canonical) = KNOWN_KEYS.iter().find(|&&k| k == key) else {
            return Err(Error::Parse {
                line: number,
                message: format!("unknown key `{key}`"),
            });
        };
        if fields.insert(canonical, value.to_string()).is_some() {
            return Err(Error::Parse {
                line: number,
                message: format!("duplicate key `{key}`"),
            });
        }
    }
    build_spec(&fields)
}

fn build_spec(fields: &HashMap<&str, String>) -> Result<SweepSpec> {
    let channel = match fields.get("channel").map(String::as_str) {
        Some("dephasing") => ChannelKind::Dephasing,
        Some("amplitude_damping") => ChannelKind::AmplitudeDamping,
        Some(other) => {
            return Err(validation(
                "channel",
                format!("`{other}` is neither `dephasing` nor `amplitude_damping`"),
            ))
        }
        None => return Err(validation("channel", "missing")),
    };

    let time_model = match channel {
        ChannelKind::Dephasing => {
            for key in ["gamma", "spectral_width"] {
                if fields.contains_key(key) {
                    return Err(validation(key, "not used by the dephasing channel"));
                }
            }
            let tau = parse_float(
                "tau",
                fields
                    .get("tau")
                    .ok_or_else(|| validation("tau", "missing"))?,
            )?;
            TimeModel::Dephasing(
                DephasingTimeModel::new(tau)
                    .map_err(|e| validation("tau", e.to_string()))?,
            )
        }
        ChannelKind::AmplitudeDamping => {
            if fields.contains_key("tau") {
                return Err(validation("tau", "not used by the amplitude damping channel"));
            }
            let gamma = parse_float(
                "gamma",
                fields
                    .get("gamma")
                    .ok_or_else(|| validation("gamma", "missing"))?,
            )?;
            let width = parse_float(
                "spectral_width",
                fields
                    .get("spectral_width")
                    .ok_or_else(|| validation("spectral_width", "missing"))?,
            )?;
            TimeModel::AmplitudeDamping(
                AdTimeModel::new(gamma, width)
                    .map_err(|e| validation("gamma, spectral_width", e.to_string()))?,
            )
        }
    };

    let u_values: Vec<f64> = fields
        .get("u_values")
        .ok_or_else(|| validation("u_values", "missing"))?
        .split(',')
        .map(|item| parse_float("u_values", item.trim()))
        .collect::<Result<_>>()?;
    if u_values.is_empty() {
        return Err(validation("u_values", "needs at least one value"));
    }
    for &u in &u_values {
        if !(0.0..=1.0).contains(&u) {
            return Err(validation("u_values", format!("{u} outside [0, 1]")));
        }
    }

    let t_raw = fields.get("t").ok_or_else(|| validation("t", "missing"))?;
    let parts: Vec<&str> = t_raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(validation("t", "expected `min,max,steps`"));
    }
    let min = parse_float("t", parts[0])?;
    let max = parse_float("t", parts[1])?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| validation("t", format!("`{}` is not a step count", parts[2])))?;
    if min < 0.0 || min.is_nan() {
        return Err(validation("t", "t_min must be nonnegative"));
    }
    if max <= min || max.is_nan() {
        return Err(validation("t", "t_max must exceed t_min"));
    }
    if steps < 2 {
        return Err(validation("t", "steps must be at least 2"));
    }
    let t_grid = TimeGrid { min, max, steps };

    let backend = match fields.get("backend").map(String::as_str) {
        None => Backend::ClosedForm,
        Some("closed-form") => Backend::ClosedForm,
        Some("oracle") => Backend::Oracle,
        Some(other) => {
            return Err(validation(
                "backend",
                format!("`{other}` is neither `closed-form` nor `oracle`"),
            ))
        }
    };

    let outputs = match fields.get("outputs") {
        None => OutputColumn::ALL.to_vec(),
        Some(raw) => {
            let mut out = Vec::new();
            for item in raw.split(',').map(str::trim) {
                let column = OutputColumn::from_name(item)
                    .ok_or_else(|| validation("outputs", format!("unknown column `{item}`")))?;
                if out.contains(&column) {
                    return Err(validation("outputs", format!("duplicate column `{item}`")));
                }
                out.push(column);
            }
            if out.is_empty() {
                return Err(validation("outputs", "needs at least one column"));
            }
            out
        }
    };

    let angle = |key: &str, default: f64| -> Result<f64> {
        match fields.get(key) {
            None => Ok(default),
            Some(raw) => parse_float(key, raw),
        }
    };
    let defaults = default_settings();
    let alice_state = PureQubit::new(angle("theta_a", 0.0)?, angle("phi_a", 0.0)?)
        .map_err(|e| validation("theta_a, phi_a", e.to_string()))?;
    let bob_state = PureQubit::new(angle("theta_b", 0.0)?, angle("phi_b", 0.0)?)
        .map_err(|e| validation("theta_b, phi_b", e.to_string()))?;
    let alice_trigger = TriggerSetting::new(angle(
        "theta_tilde_a",
        defaults.alice_trigger.theta_tilde(),
    )?)
    .map_err(|e| validation("theta_tilde_a", e.to_string()))?;
    let bob_trigger = TriggerSetting::new(angle(
        "theta_tilde_b",
        defaults.bob_trigger.theta_tilde(),
    )?)
    .map_err(|e| validation("theta_tilde_b", e.to_string()))?;

    Ok(SweepSpec {
        channel,
        time_model,
        u_values,
        t_grid,
        settings: ProtocolSettings::new(alice_state, bob_state, alice_trigger, bob_trigger),
        backend,
        outputs,
    })
}

/// Serialises a spec back into config text; `parse_config` round-trips it.
pub fn to_config_text(spec: &SweepSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("channel = {}\n", spec.channel.name()));
    match spec.time_model {
        TimeModel::Dephasing(m) => out.push_str(&format!("tau = {}\n", m.tau())),
        TimeModel::AmplitudeDamping(m) => {
            out.push_str(&format!("gamma = {}\n", m.gamma()));
            out.push_str(&format!("spectral_width = {}\n", m.spectral_width()));
        }
    }
    let u_list: Vec<String> = spec.u_values.iter().map(f64::to_string).collect();
    out.push_str(&format!("u_values = {}\n", u_list.join(",")));
    out.push_str(&format!(
        "t = {},{},{}\n",
        spec.t_grid.min, spec.t_grid.max, spec.t_grid.steps
    ));
    out.push_str(&format!("backend = {}\n", spec.backend.name()));
    let columns: Vec<&str> = spec.outputs.iter().map(OutputColumn::name).collect();
    out.push_str(&format!("outputs = {}\n", columns.join(",")));
    out.push_str(&format!("theta_a = {}\n", spec.settings.alice_state.theta()));
    out.push_str(&format!("phi_a = {}\n", spec.settings.alice_state.phi()));
    out.push_str(&format!(
        "theta_tilde_a = {}\n",
        spec.settings.alice_trigger.theta_tilde()
    ));
    out.push_str(&format!("theta_b = {}\n", spec.settings.bob_state.theta()));
    out.push_str(&format!("phi_b = {}\n", spec.settings.bob_state.phi()));
    out.push_str(&format!(
        "theta_tilde_b = {}\n",
        spec.settings.bob_trigger.theta_tilde()
    ));
    out
}
