//! The Kirkwood-Rihaczek distribution.
//!
//! For a hydrogen state `|nlm⟩`,
//!
//! ```text
//! K(x, p) = c · ψ(x) · exp(-i r p cos Θ) · conj(ψ̃(p))
//! ```
//!
//! where `Θ` is the angle between the position and momentum vectors. With
//! `c = (2π)^{-3/2}` ([`NormalizationConvention::MarginalExact`]) integrating
//! over all momenta returns `|ψ(x)|²` and integrating over all positions
//! returns `|ψ̃(p)|²`. [`NormalizationConvention::PaperFigure`] multiplies by
//! a further `(2π)^{-3/2}`, which reproduces the published 1s prefactor
//! `(2π³)^{-3/2}` and figure scales.
//!
//! [`tabulated`] holds the 1-D K-R and Wigner evaluators for sampled states.

pub mod tabulated;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{radial_momentum, radial_position, BoundState, NuclearCharge, QuantumNumbers, SphericalCoord};
use crate::special::spherical_harmonic;
use crate::ComplexValue;

pub use tabulated::{kr_1d, wigner_1d, TabulatedWavefunction1D};

/// `(2π)^{-3/2}`
pub const INV_TWO_PI_3_2: f64 = 0.063_493_635_934_240_97;

/// Overall constant in front of the K-R function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationConvention {
    /// `(2π)^{-3/2}`: both marginal identities hold exactly.
    #[default]
    MarginalExact,
    /// `(2π)^{-3}`: the constant of the published closed forms and figures.
    PaperFigure,
}

impl NormalizationConvention {
    pub fn prefactor(&self) -> f64 {
        match self {
            NormalizationConvention::MarginalExact => INV_TWO_PI_3_2,
            NormalizationConvention::PaperFigure => INV_TWO_PI_3_2 * INV_TWO_PI_3_2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalizationConvention::MarginalExact => "marginal_exact",
            NormalizationConvention::PaperFigure => "paper_figure",
        }
    }
}

impl std::str::FromStr for NormalizationConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "marginal_exact" | "marginal-exact" => Ok(Self::MarginalExact),
            "paper_figure" | "paper-figure" => Ok(Self::PaperFigure),
            other => Err(Error::invalid(format!("unknown convention '{other}'"))),
        }
    }
}

/// A point `(r, θ, φ, p, θ', φ')` of the six-dimensional phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub position: SphericalCoord,
    pub momentum: SphericalCoord,
}

impl PhasePoint {
    pub fn new(r: f64, theta: f64, phi: f64, p: f64, theta_p: f64, phi_p: f64) -> Result<Self> {
        Ok(Self {
            position: SphericalCoord::new(r, theta, phi)?,
            momentum: SphericalCoord::new(p, theta_p, phi_p)?,
        })
    }

    pub fn from_coords(position: SphericalCoord, momentum: SphericalCoord) -> Self {
        Self { position, momentum }
    }

    pub fn r(&self) -> f64 {
        self.position.radius()
    }

    pub fn p(&self) -> f64 {
        self.momentum.radius()
    }

    pub fn cos_angle(&self) -> f64 {
        cos_capital_theta(
            self.position.polar(),
            self.position.azimuth(),
            self.momentum.polar(),
            self.momentum.azimuth(),
        )
    }
}

/// Cosine of the angle between the position and momentum directions.
pub fn cos_capital_theta(theta: f64, phi: f64, theta_p: f64, phi_p: f64) -> f64 {
    let c = (theta - theta_p).cos() + ((phi - phi_p).cos() - 1.0) * theta.sin() * theta_p.sin();
    c.clamp(-1.0, 1.0)
}

/// `exp(-i r p cos Θ)`
fn plane_wave(point: &PhasePoint) -> ComplexValue {
    ComplexValue::from_polar(1.0, -point.r() * point.p() * point.cos_angle())
}

/// K-R distribution of one hydrogen state, prepared for repeated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrEvaluator {
    state: BoundState,
    prefactor: f64,
}

impl KrEvaluator {
    pub fn new(qn: QuantumNumbers, z: NuclearCharge, convention: NormalizationConvention) -> Self {
        Self {
            state: BoundState::new(qn, z),
            prefactor: convention.prefactor(),
        }
    }

    pub fn state(&self) -> &BoundState {
        &self.state
    }

    pub fn eval(&self, point: &PhasePoint) -> ComplexValue {
        let psi = self.state.psi_position(&point.position);
        let psi_t = self.state.psi_momentum(&point.momentum);
        psi * plane_wave(point) * psi_t.conj() * self.prefactor
    }
}

/// K-R distribution of the hydrogen state `qn` at `point`.
pub fn kr_hydrogen(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    point: &PhasePoint,
    convention: NormalizationConvention,
) -> ComplexValue {
    KrEvaluator::new(*qn, z, convention).eval(point)
}

/// `|K|²` assembled from the position and momentum densities, without going
/// through the complex product.
pub fn kr_abs_squared(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    point: &PhasePoint,
    convention: NormalizationConvention,
) -> f64 {
    let (l, m) = (qn.l(), qn.m());
    let y = spherical_harmonic(l, m, point.position.direction())
        .expect("validated quantum numbers")
        .norm_sqr();
    let yp = spherical_harmonic(l, m, point.momentum.direction())
        .expect("validated quantum numbers")
        .norm_sqr();
    let rr = radial_position(qn, z, point.r());
    let ff = radial_momentum(qn, z, point.p());
    let c = convention.prefactor();
    c * c * rr * rr * y * ff * ff * yp
}

/// States with published closed-form K-R expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormState {
    #[serde(rename = "1s")]
    OneS,
    #[serde(rename = "2s")]
    TwoS,
    #[serde(rename = "2p")]
    TwoP,
}

impl ClosedFormState {
    pub const ALL: [ClosedFormState; 3] = [Self::OneS, Self::TwoS, Self::TwoP];

    pub fn from_quantum_numbers(qn: &QuantumNumbers) -> Result<Self> {
        match (qn.n(), qn.l(), qn.m()) {
            (1, 0, 0) => Ok(Self::OneS),
            (2, 0, 0) => Ok(Self::TwoS),
            (2, 1, 0) => Ok(Self::TwoP),
            _ => Err(Error::Unsupported(format!(
                "no closed form for {qn}; only 1s, 2s and 2p (m=0)"
            ))),
        }
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        let (n, l) = match self {
            Self::OneS => (1, 0),
            Self::TwoS => (2, 0),
            Self::TwoP => (2, 1),
        };
        QuantumNumbers::new(n, l, 0).expect("valid")
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::OneS => "1s",
            Self::TwoS => "2s",
            Self::TwoP => "2p",
        }
    }
}

/// The published closed forms for 1s, 2s and 2p, transcribed as printed
/// (prefactors and the squared `(1 + 4p²)` denominators included).
///
/// Only the 1s form is proportional to [`kr_hydrogen`]; the 2s/2p forms differ
/// from it by a factor `(1 + 4p²)` besides their constant.
pub fn kr_closed_form(state: ClosedFormState, point: &PhasePoint) -> ComplexValue {
    let r = point.r();
    let p = point.p();
    let phase = plane_wave(point);
    let amplitude = match state {
        ClosedFormState::OneS => (2.0 * PI.powi(3)).powf(-1.5) * (-r).exp() / (1.0 + p * p).powi(2),
        ClosedFormState::TwoS => {
            (32.0 * PI.powi(9)).sqrt() * (2.0 - r) * (-0.5 * r).exp() * (4.0 * p * p - 1.0)
                / (1.0 + 4.0 * p * p).powi(2)
        }
        ClosedFormState::TwoP => {
            (2.0 * PI.powi(9)).sqrt() / 3.0 * r * (-0.5 * r).exp() * p / (1.0 + 4.0 * p * p).powi(2)
                * point.position.polar().cos()
                * point.momentum.polar().cos()
        }
    };
    phase * amplitude
}
