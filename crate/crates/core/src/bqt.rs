//! Bidirectional teleportation of single-qubit states over one shared Bell
//! pair.
//!
//! Each party holds a payload qubit and a trigger qubit. The overlap between
//! payload and trigger sets the probability `M` that the party measures
//! sharply; the state actually delivered to the partner is the convex
//! combination
//!
//! ```text
//! rho_out = w * rho_transported + (1 - w) * rho_0,    w = M_send (1 - M_recv)
//! ```
//!
//! where `rho_transported` is the sender's state after passing through the
//! noisy resource and `rho_0` is the residual state delivered on failure.
//!
//! Two interchangeable backends produce `rho_transported`: the closed-form
//! output map of the noisy protocol, and a brute-force oracle that projects
//! onto the four Bell states and applies the matching Pauli corrections.
//! The two disagree on the transverse scaling of the dephasing channel
//! (square root of the channel coherence versus the coherence itself); both
//! are kept so the discrepancy stays visible.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::noise::{self, ChannelKind};
use crate::qmath::{
    self, bloch_from_density, tensor, BlochVector, ComplexMatrix, DensityMatrix,
};
use crate::tol;
use crate::{Error, Result};

/// Which backend computes the transported state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Closed-form output map of the protocol.
    ClosedForm,
    /// Brute-force Bell-projection circuit.
    Oracle,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::ClosedForm => "closed-form",
            Backend::Oracle => "oracle",
        }
    }
}

/// Direction of one of the two simultaneous transfers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AliceToBob,
    BobToAlice,
}

impl Direction {
    pub fn reversed(&self) -> Self {
        match self {
            Direction::AliceToBob => Direction::BobToAlice,
            Direction::BobToAlice => Direction::AliceToBob,
        }
    }
}

/// Pure qubit `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    theta: f64,
    phi: f64,
}

impl PureQubit {
    /// `theta` must lie in `[0, pi]`; `phi` is wrapped into `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::RangeError {
                what: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !phi.is_finite() {
            return Err(Error::RangeError {
                what: "phi",
                value: phi,
                range: "[0, 2pi)",
            });
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn bloch(&self) -> BlochVector {
        BlochVector::new(
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        )
    }

    pub fn density(&self) -> DensityMatrix {
        qmath::density_from_bloch(self.bloch()).expect("pure state lies on the sphere")
    }
}

/// Trigger qubit `cos(t/2)|0> + sin(t/2)|1>`; real by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerSetting {
    theta_tilde: f64,
}

impl TriggerSetting {
    pub fn new(theta_tilde: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta_tilde) || !theta_tilde.is_finite() {
            return Err(Error::RangeError {
                what: "theta_tilde",
                value: theta_tilde,
                range: "[0, pi]",
            });
        }
        Ok(Self { theta_tilde })
    }

    pub fn theta_tilde(&self) -> f64 {
        self.theta_tilde
    }
}

/// Full parameterisation of one protocol run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolSettings {
    pub alice_state: PureQubit,
    pub bob_state: PureQubit,
    pub alice_trigger: TriggerSetting,
    pub bob_trigger: TriggerSetting,
}

impl ProtocolSettings {
    pub fn new(
        alice_state: PureQubit,
        bob_state: PureQubit,
        alice_trigger: TriggerSetting,
        bob_trigger: TriggerSetting,
    ) -> Self {
        Self {
            alice_state,
            bob_state,
            alice_trigger,
            bob_trigger,
        }
    }

    pub fn sender_state(&self, direction: Direction) -> PureQubit {
        match direction {
            Direction::AliceToBob => self.alice_state,
            Direction::BobToAlice => self.bob_state,
        }
    }

    pub fn sender_trigger(&self, direction: Direction) -> TriggerSetting {
        match direction {
            Direction::AliceToBob => self.alice_trigger,
            Direction::BobToAlice => self.bob_trigger,
        }
    }

    pub fn receiver_state(&self, direction: Direction) -> PureQubit {
        self.sender_state(direction.reversed())
    }

    pub fn receiver_trigger(&self, direction: Direction) -> TriggerSetting {
        self.sender_trigger(direction.reversed())
    }

    /// Same settings with the sending party's state replaced.
    pub fn with_sender_state(&self, direction: Direction, state: PureQubit) -> Self {
        let mut out = *self;
        match direction {
            Direction::AliceToBob => out.alice_state = state,
            Direction::BobToAlice => out.bob_state = state,
        }
        out
    }

    /// Settings with the two parties exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alice_state: self.bob_state,
            bob_state: self.alice_state,
            alice_trigger: self.bob_trigger,
            bob_trigger: self.alice_trigger,
        }
    }
}

/// State delivered to the receiving party of one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportedState {
    pub direction: Direction,
    pub bloch: BlochVector,
    pub residual: BlochVector,
    /// Success weight `M_send (1 - M_recv)` of the convex output law.
    pub weight: f64,
}

/// Probability that a party's measurement fires,
/// `M = |<T|S>|^2 = tr(rho_T rho_S)`.
pub fn measurement_probability(state: &PureQubit, trigger: &TriggerSetting) -> f64 {
    let (ct, st) = ((state.theta / 2.0).cos(), (state.theta / 2.0).sin());
    let (cg, sg) = (
        (trigger.theta_tilde / 2.0).cos(),
        (trigger.theta_tilde / 2.0).sin(),
    );
    let overlap = Complex64::new(ct * cg, 0.0)
        + Complex64::new(0.0, state.phi).exp() * Complex64::new(st * sg, 0.0);
    overlap.norm_sqr()
}

/// The shared resource before any noise, `|00> + |11>` normalised.
pub fn bell_state() -> DensityMatrix {
    DensityMatrix::new(
        ComplexMatrix::from_real(
            4,
            &[
                0.5, 0.0, 0.0, 0.5, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.5, 0.0, 0.0, 0.5,
            ],
        )
        .unwrap(),
    )
    .unwrap()
}

/// Bell resource after two correlated channel uses.
pub fn resource_state(kind: ChannelKind, p: f64, u: f64) -> Result<DensityMatrix> {
    let ch = noise::channel(kind, p, u)?;
    noise::apply_correlated(&ch, &bell_state())
}

/// Single-qubit state delivered when teleportation fails: the channel's
/// action on a maximally mixed qubit. Dephasing leaves it mixed; amplitude
/// damping pushes it toward the ground state.
pub fn residual_state(kind: ChannelKind, p: f64, _u: f64) -> BlochVector {
    match kind {
        ChannelKind::Dephasing => BlochVector::zero(),
        ChannelKind::AmplitudeDamping => BlochVector::new(0.0, 0.0, p),
    }
}

/// Affine map a backend applies to the sender's Bloch vector:
/// `b = scale .* n + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochMap {
    pub scale: [f64; 3],
    pub shift_z: f64,
}

impl BlochMap {
    pub fn apply(&self, n: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.scale[0] * n.x,
            self.scale[1] * n.y,
            self.scale[2] * n.z + self.shift_z,
        )
    }
}

/// Transverse transmission of the damped resource,
/// `(1 - u)(1 - p) + u sqrt(1 - p)`.
pub(crate) fn ad_transverse(p: f64, u: f64) -> f64 {
    (1.0 - u) * (1.0 - p) + u * (1.0 - p).sqrt()
}

/// Longitudinal transmission of the damped resource,
/// `(1 - u)(1 - 2p + 2p^2) + u`.
pub(crate) fn ad_longitudinal(p: f64, u: f64) -> f64 {
    (1.0 - u) * (1.0 - 2.0 * p + 2.0 * p * p) + u
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

/// Bloch map of a sharp (weight-one) transfer for the chosen backend.
pub fn bloch_map(backend: Backend, kind: ChannelKind, p: f64, u: f64) -> Result<BlochMap> {
    check_unit_interval("p", p)?;
    check_unit_interval("u", u)?;
    match backend {
        Backend::ClosedForm => Ok(match kind {
            ChannelKind::Dephasing => {
                let n = 1.0 - 4.0 * (1.0 - u) * (p - p * p);
                let root = n.max(0.0).sqrt();
                BlochMap {
                    scale: [root, root, 1.0],
                    shift_z: 0.0,
                }
            }
            ChannelKind::AmplitudeDamping => BlochMap {
                scale: [ad_transverse(p, u), ad_transverse(p, u), ad_longitudinal(p, u)],
                shift_z: -p,
            },
        }),
        Backend::Oracle => {
            let resource = resource_state(kind, p, u)?;
            let x = oracle_teleport(&resource, &PureQubit::new(std::f64::consts::FRAC_PI_2, 0.0)?)?;
            let y = oracle_teleport(
                &resource,
                &PureQubit::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)?,
            )?;
            let z = oracle_teleport(&resource, &PureQubit::new(0.0, 0.0)?)?;
            Ok(BlochMap {
                scale: [x.x, y.y, z.z],
                shift_z: 0.0,
            })
        }
    }
}

/// Convex output law of the protocol:
/// `bloch = w * transported + (1 - w) * residual`, `w = M_send (1 - M_recv)`.
pub fn teleport_output(
    direction: Direction,
    m_send: f64,
    m_recv: f64,
    transported: BlochVector,
    residual: BlochVector,
) -> TeleportedState {
    debug_assert!((0.0..=1.0).contains(&m_send) && (0.0..=1.0).contains(&m_recv));
    let weight = m_send * (1.0 - m_recv);
    TeleportedState {
        direction,
        bloch: transported
            .scaled(weight)
            .add(&residual.scaled(1.0 - weight)),
        residual,
        weight,
    }
}

fn finish_teleported(
    direction: Direction,
    settings: &ProtocolSettings,
    map: BlochMap,
    residual: BlochVector,
) -> Result<TeleportedState> {
    let m_send = measurement_probability(
        &settings.sender_state(direction),
        &settings.sender_trigger(direction),
    );
    let m_recv = measurement_probability(
        &settings.receiver_state(direction),
        &settings.receiver_trigger(direction),
    );
    let transported = map.apply(&settings.sender_state(direction).bloch());
    let out = teleport_output(direction, m_send, m_recv, transported, residual);
    let norm = out.bloch.norm();
    if norm > 1.0 + tol::BLOCH_BALL || norm.is_nan() {
        return Err(Error::BlochOutOfBall { norm });
    }
    Ok(out)
}

/// Closed-form output through the dephased resource with coherence `n`.
pub fn teleported_bloch_dephasing(
    settings: &ProtocolSettings,
    direction: Direction,
    n: f64,
) -> Result<TeleportedState> {
    check_unit_interval("n", n)?;
    let root = n.sqrt();
    let map = BlochMap {
        scale: [root, root, 1.0],
        shift_z: 0.0,
    };
    finish_teleported(direction, settings, map, BlochVector::zero())
}

/// Closed-form output through the damped resource.
pub fn teleported_bloch_ad(
    settings: &ProtocolSettings,
    direction: Direction,
    p: f64,
    u: f64,
) -> Result<TeleportedState> {
    let map = bloch_map(Backend::ClosedForm, ChannelKind::AmplitudeDamping, p, u)?;
    finish_teleported(
        direction,
        settings,
        map,
        residual_state(ChannelKind::AmplitudeDamping, p, u),
    )
}

/// Output of one direction for an arbitrary backend and channel.
pub fn teleported_state(
    backend: Backend,
    kind: ChannelKind,
    settings: &ProtocolSettings,
    direction: Direction,
    p: f64,
    u: f64,
) -> Result<TeleportedState> {
    let map = bloch_map(backend, kind, p, u)?;
    finish_teleported(direction, settings, map, residual_state(kind, p, u))
}

/// Brute-force teleportation through an arbitrary two-qubit resource.
///
/// Builds the three-qubit joint state, projects the input-plus-sender pair
/// onto each Bell state, applies the matching Pauli correction to the
/// remaining qubit and sums the four unnormalised outcomes. For the ideal
/// Bell resource this returns the input Bloch vector exactly.
pub fn oracle_teleport(resource: &DensityMatrix, input: &PureQubit) -> Result<BlochVector> {
    if resource.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: resource.dim(),
        });
    }
    let joint = tensor(input.density().matrix(), resource.matrix());
    let identity2 = ComplexMatrix::identity(2);
    let mut collected = ComplexMatrix::zeros(2);
    for (projector, correction) in bell_projectors_and_corrections() {
        let p8 = tensor(&projector, &identity2);
        let projected = p8.mul(&joint).mul(&p8);
        let receiver = trace_out_pair(&projected);
        collected = collected.add(&correction.mul(&receiver).mul(&correction.adjoint()));
    }
    bloch_from_density(&DensityMatrix::new(collected)?)
}

/// The four Bell projectors with the Pauli correction each outcome triggers.
fn bell_projectors_and_corrections() -> Vec<(ComplexMatrix, ComplexMatrix)> {
    let s = 0.5f64.sqrt();
    let kets: [[f64; 4]; 4] = [
        [s, 0.0, 0.0, s],   // |00> + |11>
        [0.0, s, s, 0.0],   // |01> + |10>
        [s, 0.0, 0.0, -s],  // |00> - |11>
        [0.0, s, -s, 0.0],  // |01> - |10>
    ];
    let corrections = [
        ComplexMatrix::identity(2),
        qmath::pauli_x(),
        qmath::pauli_z(),
        qmath::pauli_x().mul(&qmath::pauli_z()),
    ];
    kets.iter()
        .zip(corrections)
        .map(|(ket, correction)| {
            let mut proj = ComplexMatrix::zeros(4);
            for (r, &a) in ket.iter().enumerate() {
                for (c, &b) in ket.iter().enumerate() {
                    proj[(r, c)] = Complex64::new(a * b, 0.0);
                }
            }
            (proj, correction)
        })
        .collect()
}

/// Reduces an 8-dimensional operator on (pair, qubit) to the trailing qubit.
fn trace_out_pair(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2);
    for b in 0..2 {
        for b2 in 0..2 {
            let mut sum = Complex64::new(0.0, 0.0);
            for a in 0..4 {
                sum += m[(a * 2 + b, a * 2 + b2)];
            }
            out[(b, b2)] = sum;
        }
    }
    out
}
