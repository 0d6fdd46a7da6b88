//! Partially correlated two-use noise channels and their time dependence.
//!
//! A channel acting twice in a row either applies two independent draws of
//! its single-use Kraus family or, with probability `u`, repeats the same
//! draw on both uses. `u = 0` is the memoryless channel, `u = 1` the fully
//! correlated one, and the output interpolates linearly in between.
//!
//! Two physical models translate an evolution time into the decoherence
//! probability `p(t)`: random-telegraph (colored) dephasing controlled by a
//! memory time `tau`, and spontaneous emission into a lossy cavity mode
//! controlled by the coupling `gamma` and the reservoir spectral width
//! `Gamma`. Both models have a Markovian and an oscillatory non-Markovian
//! regime.

use crate::qmath::{self, ComplexMatrix, DensityMatrix};
use crate::tol;
use crate::{Error, Result};

/// The two decoherence channels the simulator understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Dephasing,
    AmplitudeDamping,
}

impl ChannelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::AmplitudeDamping => "amplitude_damping",
        }
    }
}

/// Two-use channel holding an uncorrelated and a fully correlated Kraus
/// family, mixed by the memory strength `u`.
#[derive(Debug, Clone)]
pub struct CorrelatedChannel {
    kind: ChannelKind,
    p: f64,
    memory_u: f64,
    uncorrelated: Vec<(f64, ComplexMatrix)>,
    correlated: Vec<(f64, ComplexMatrix)>,
}

impl CorrelatedChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// Decoherence factor the channel was built with.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Memory strength `u` of the channel.
    pub fn memory_u(&self) -> f64 {
        self.memory_u
    }

    /// Weighted Kraus family for two independent channel uses.
    pub fn uncorrelated(&self) -> &[(f64, ComplexMatrix)] {
        &self.uncorrelated
    }

    /// Weighted Kraus family for two perfectly correlated uses.
    pub fn correlated(&self) -> &[(f64, ComplexMatrix)] {
        &self.correlated
    }

    /// Worst completeness deviation over both families.
    pub fn completeness_deviation(&self) -> f64 {
        let check = |family: &[(f64, ComplexMatrix)]| {
            let mut sum = ComplexMatrix::zeros(4);
            for (w, k) in family {
                sum = sum.add(&k.adjoint().mul(k).scaled(*w));
            }
            sum.max_abs_diff(&ComplexMatrix::identity(4))
        };
        check(&self.uncorrelated).max(check(&self.correlated))
    }

    fn validated(self) -> Result<Self> {
        let deviation = self.completeness_deviation();
        if deviation > tol::KRAUS_COMPLETENESS || deviation.is_nan() {
            return Err(Error::CompletenessViolation { deviation });
        }
        Ok(self)
    }
}

fn check_unit_interval(what: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(Error::RangeError {
            what,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Two-use phase-flip channel with decoherence factor `p` and memory `u`.
pub fn dephasing_channel(p: f64, u: f64) -> Result<CorrelatedChannel> {
    check_unit_interval("p", p)?;
    check_unit_interval("u", u)?;
    let i2 = ComplexMatrix::identity(2);
    let z = qmath::pauli_z();
    let uncorrelated = vec![
        ((1.0 - p) * (1.0 - p), qmath::tensor(&i2, &i2)),
        ((1.0 - p) * p, qmath::tensor(&i2, &z)),
        (p * (1.0 - p), qmath::tensor(&z, &i2)),
        (p * p, qmath::tensor(&z, &z)),
    ];
    let correlated = vec![
        (1.0 - p, qmath::tensor(&i2, &i2)),
        (p, qmath::tensor(&z, &z)),
    ];
    CorrelatedChannel {
        kind: ChannelKind::Dephasing,
        p,
        memory_u: u,
        uncorrelated,
        correlated,
    }
    .validated()
}

/// Two-use amplitude damping channel with damping probability `p` and
/// memory `u`. The correlated family loses both excitations or neither.
pub fn amplitude_damping_channel(p: f64, u: f64) -> Result<CorrelatedChannel> {
    check_unit_interval("p", p)?;
    check_unit_interval("u", u)?;
    let k0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, (1.0 - p).sqrt()]).unwrap();
    let k1 = ComplexMatrix::from_real(2, &[0.0, p.sqrt(), 0.0, 0.0]).unwrap();
    let uncorrelated = vec![
        (1.0, qmath::tensor(&k0, &k0)),
        (1.0, qmath::tensor(&k0, &k1)),
        (1.0, qmath::tensor(&k1, &k0)),
        (1.0, qmath::tensor(&k1, &k1)),
    ];
    let mut keep = ComplexMatrix::identity(4);
    keep[(3, 3)] = ((1.0 - p).sqrt()).into();
    let mut drop_both = ComplexMatrix::zeros(4);
    drop_both[(0, 3)] = (p.sqrt()).into();
    let correlated = vec![(1.0, keep), (1.0, drop_both)];
    CorrelatedChannel {
        kind: ChannelKind::AmplitudeDamping,
        p,
        memory_u: u,
        uncorrelated,
        correlated,
    }
    .validated()
}

/// Builds the channel of the given kind.
pub fn channel(kind: ChannelKind, p: f64, u: f64) -> Result<CorrelatedChannel> {
    match kind {
        ChannelKind::Dephasing => dephasing_channel(p, u),
        ChannelKind::AmplitudeDamping => amplitude_damping_channel(p, u),
    }
}

/// Sends a two-qubit state through the channel:
/// `(1 - u) sum_i w_i K_i rho K_i^dag + u sum_k w_k K_k^c rho K_k^c dag`.
pub fn apply_correlated(ch: &CorrelatedChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let apply_family = |family: &[(f64, ComplexMatrix)]| -> Result<DensityMatrix> {
        let ops: Vec<ComplexMatrix> = family.iter().map(|(_, k)| k.clone()).collect();
        let weights: Vec<f64> = family.iter().map(|(w, _)| *w).collect();
        qmath::apply_kraus(rho, &ops, &weights)
    };
    let independent = apply_family(&ch.uncorrelated)?;
    let repeated = apply_family(&ch.correlated)?;
    let u = ch.memory_u;
    let mixed = independent
        .matrix()
        .scaled(1.0 - u)
        .add(&repeated.matrix().scaled(u));
    DensityMatrix::new(mixed)
}

/// Random-telegraph dephasing with dimensionless memory time `tau`.
///
/// `tau < 1/4` is the Markovian regime with monotone decoherence; above it
/// the decoherence factor oscillates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingTimeModel {
    tau: f64,
}

impl DephasingTimeModel {
    pub fn new(tau: f64) -> Result<Self> {
        if tau <= 0.0 || !tau.is_finite() {
            return Err(Error::RangeError {
                what: "tau",
                value: tau,
                range: "(0, inf)",
            });
        }
        Ok(Self { tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn is_markovian(&self) -> bool {
        self.tau < 0.25
    }
}

/// Qubit coupled to a lossy cavity mode: coupling strength `gamma` (inverse
/// qubit relaxation time) and reservoir spectral width `Gamma` (inverse
/// reservoir correlation time).
///
/// `gamma < Gamma / 2` is the weak-coupling Markovian regime; strong
/// coupling produces damped revivals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdTimeModel {
    gamma: f64,
    spectral_width: f64,
}

impl AdTimeModel {
    pub fn new(gamma: f64, spectral_width: f64) -> Result<Self> {
        if gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::RangeError {
                what: "gamma",
                value: gamma,
                range: "(0, inf)",
            });
        }
        if spectral_width <= 0.0 || !spectral_width.is_finite() {
            return Err(Error::RangeError {
                what: "spectral_width",
                value: spectral_width,
                range: "(0, inf)",
            });
        }
        Ok(Self {
            gamma,
            spectral_width,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn spectral_width(&self) -> f64 {
        self.spectral_width
    }

    pub fn is_markovian(&self) -> bool {
        self.gamma < self.spectral_width / 2.0
    }

    /// Angular frequency of the strong-coupling revivals,
    /// `sqrt(2 gamma Gamma - Gamma^2)`; zero in the weak regime.
    pub fn revival_frequency(&self) -> f64 {
        let d2 = 2.0 * self.gamma * self.spectral_width - self.spectral_width.powi(2);
        if d2 > 0.0 {
            d2.sqrt()
        } else {
            0.0
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::RangeError {
            what: "t",
            value: t,
            range: "[0, inf)",
        });
    }
    Ok(())
}

fn clamp_probability(p: f64, what: &'static str) -> Result<f64> {
    let window = -tol::PROBABILITY_CLAMP..=1.0 + tol::PROBABILITY_CLAMP;
    if !window.contains(&p) || !p.is_finite() {
        return Err(Error::RangeError {
            what,
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Decoherence factor of the colored dephasing model,
/// `gamma(t) = e^-nu (cosh(U nu) + sinh(U nu) / U)` with `nu = t / (2 tau)`
/// and `U = sqrt(1 - 16 tau^2)`, continued with trigonometric functions when
/// `U` turns imaginary.
fn telegraph_decoherence(tau: f64, t: f64) -> f64 {
    let nu = t / (2.0 * tau);
    let u2 = 1.0 - 16.0 * tau * tau;
    if u2 > 0.0 {
        // Expanded form e^-nu cosh(u nu) etc.; both exponents are
        // nonpositive, so nothing overflows at large times.
        let u = u2.sqrt();
        let decay = ((u - 1.0) * nu).exp();
        let tail = (-(u + 1.0) * nu).exp();
        (decay + tail) / 2.0 + (decay - tail) / (2.0 * u)
    } else if u2 < 0.0 {
        let u = (-u2).sqrt();
        (-nu).exp() * ((u * nu).cos() + (u * nu).sin() / u)
    } else {
        (-nu).exp() * (1.0 + nu)
    }
}

/// Dephasing probability at time `t`, `p = (1 - gamma(t)) / 2`.
pub fn dephasing_p_of_t(model: &DephasingTimeModel, t: f64) -> Result<f64> {
    check_time(t)?;
    clamp_probability((1.0 - telegraph_decoherence(model.tau, t)) / 2.0, "p")
}

/// Excited-state survival probability `G(t)^2` of the damped-cavity model.
///
/// `G(t) = e^{-Gamma t / 2} (cosh(d t / 2) + (Gamma / d) sinh(d t / 2))`
/// with `d = sqrt(Gamma^2 - 2 gamma Gamma)` in the weak regime and the
/// trigonometric continuation in the strong one.
pub fn ad_survival_probability(model: &AdTimeModel, t: f64) -> Result<f64> {
    check_time(t)?;
    let g = model.spectral_width;
    let d2 = g * g - 2.0 * model.gamma * g;
    let amplitude = if d2 > 0.0 {
        // d < Gamma here, so both exponents stay nonpositive.
        let d = d2.sqrt();
        let decay = ((d - g) * t / 2.0).exp();
        let tail = (-(d + g) * t / 2.0).exp();
        (decay + tail) / 2.0 + (g / d) * (decay - tail) / 2.0
    } else if d2 < 0.0 {
        let d = (-d2).sqrt();
        (-g * t / 2.0).exp() * ((d * t / 2.0).cos() + (g / d) * (d * t / 2.0).sin())
    } else {
        (-g * t / 2.0).exp() * (1.0 + g * t / 2.0)
    };
    clamp_probability(amplitude * amplitude, "survival")
}

/// Damping probability at time `t`, `p = 1 - G(t)^2`.
///
/// The survival amplitude and the damping probability are both exposed so
/// the two conventions can be compared directly against each other.
pub fn ad_p_of_t(model: &AdTimeModel, t: f64) -> Result<f64> {
    Ok(1.0 - ad_survival_probability(model, t)?)
}

/// Time-to-probability model for either channel kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeModel {
    Dephasing(DephasingTimeModel),
    AmplitudeDamping(AdTimeModel),
}

impl TimeModel {
    pub fn kind(&self) -> ChannelKind {
        match self {
            TimeModel::Dephasing(_) => ChannelKind::Dephasing,
            TimeModel::AmplitudeDamping(_) => ChannelKind::AmplitudeDamping,
        }
    }

    pub fn p_of_t(&self, t: f64) -> Result<f64> {
        match self {
            TimeModel::Dephasing(m) => dephasing_p_of_t(m, t),
            TimeModel::AmplitudeDamping(m) => ad_p_of_t(m, t),
        }
    }
}
