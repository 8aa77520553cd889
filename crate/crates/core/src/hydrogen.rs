//! Normalized hydrogen bound states in position and momentum space.
//!
//! Position radial functions use modern-convention Laguerre polynomials,
//!
//! ```text
//! R_nl(r) = sqrt((2Z/n)³ (n-l-1)! / (2n (n+l)!)) e^{-ρ/2} ρ^l L_{n-l-1}^{2l+1}(ρ),  ρ = 2Zr/n
//! ```
//!
//! with `R_nl(0⁺) > 0`. Momentum radial functions are Fock's Gegenbauer form,
//!
//! ```text
//! F_nl(p) = sqrt(2/π (n-l-1)!/(n+l)!) n² 2^{2l+2} l! (np)^l / (n²p²+1)^{l+2} C_{n-l-1}^{l+1}(x),
//! x = (n²p² - 1)/(n²p² + 1)
//! ```
//!
//! for `Z = 1`, and `F^Z(p) = Z^{-3/2} F(p/Z)` otherwise. Both are unit
//! normalized against `r² dr` and `p² dp`.
//!
//! The full momentum wavefunction carries the `(-i)^l` factor produced by the
//! Fourier transform of `R_nl Y_lm`, so that [`psi_momentum`] is exactly the
//! unitary transform of [`psi_position`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gegenbauer, laguerre, log_factorial, spherical_harmonic, AngularPoint};
use crate::ComplexValue;

/// Validated `(n, l, m)` with `1 <= n`, `0 <= l < n`, `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuantumNumbers", into = "RawQuantumNumbers")]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
    m: i32,
}

#[derive(Serialize, Deserialize)]
struct RawQuantumNumbers {
    n: i64,
    l: i64,
    m: i64,
}

impl TryFrom<RawQuantumNumbers> for QuantumNumbers {
    type Error = Error;
    fn try_from(raw: RawQuantumNumbers) -> Result<Self> {
        QuantumNumbers::new(raw.n, raw.l, raw.m)
    }
}

impl From<QuantumNumbers> for RawQuantumNumbers {
    fn from(q: QuantumNumbers) -> Self {
        RawQuantumNumbers {
            n: q.n.into(),
            l: q.l.into(),
            m: q.m.into(),
        }
    }
}

impl QuantumNumbers {
    pub fn new(n: i64, l: i64, m: i64) -> Result<Self> {
        if n < 1 || l < 0 || l >= n || m.abs() > l || n > i64::from(u16::MAX) {
            return Err(Error::InvalidQuantumNumbers { n, l, m });
        }
        Ok(Self {
            n: n as u32,
            l: l as u32,
            m: m as i32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Spectroscopic label, e.g. `2p(m=0)`.
    pub fn label(&self) -> String {
        const LETTERS: &[u8] = b"spdfghiklmnoqrtuv";
        let letter = LETTERS
            .get(self.l as usize)
            .map(|&c| (c as char).to_string())
            .unwrap_or_else(|| format!("[l={}]", self.l));
        format!("{}{}(m={})", self.n, letter, self.m)
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={},l={},m={}", self.n, self.l, self.m)
    }
}

/// Nuclear charge `Z > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct NuclearCharge(f64);

impl NuclearCharge {
    pub const HYDROGEN: NuclearCharge = NuclearCharge(1.0);

    pub fn new(z: f64) -> Result<Self> {
        if z.is_finite() && z > 0.0 {
            Ok(Self(z))
        } else {
            Err(Error::invalid(format!("nuclear charge must be positive, got {z}")))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Default for NuclearCharge {
    fn default() -> Self {
        Self::HYDROGEN
    }
}

impl TryFrom<f64> for NuclearCharge {
    type Error = Error;
    fn try_from(z: f64) -> Result<Self> {
        NuclearCharge::new(z)
    }
}

impl From<NuclearCharge> for f64 {
    fn from(z: NuclearCharge) -> f64 {
        z.0
    }
}

/// Point in spherical coordinates: radius (length or momentum) plus direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalCoord {
    radius: f64,
    direction: AngularPoint,
}

impl SphericalCoord {
    pub fn new(radius: f64, polar: f64, azimuth: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::OutOfDomain {
                what: "radius",
                value: radius,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        Ok(Self {
            radius,
            direction: AngularPoint::new(polar, azimuth)?,
        })
    }

    pub fn from_parts(radius: f64, direction: AngularPoint) -> Result<Self> {
        Self::new(radius, direction.polar(), direction.azimuth())
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn direction(&self) -> &AngularPoint {
        &self.direction
    }

    pub fn polar(&self) -> f64 {
        self.direction.polar()
    }

    pub fn azimuth(&self) -> f64 {
        self.direction.azimuth()
    }
}

/// Which representation a radial function or density belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Position,
    Momentum,
}

fn ln_position_norm(n: u32, l: u32, z: f64) -> f64 {
    let nf = f64::from(n);
    0.5 * (3.0 * (2.0 * z / nf).ln() + log_factorial(n - l - 1)
        - (2.0 * nf).ln()
        - log_factorial(n + l))
}

fn ln_momentum_norm(n: u32, l: u32) -> f64 {
    let nf = f64::from(n);
    0.5 * ((2.0 / PI).ln() + log_factorial(n - l - 1) - log_factorial(n + l))
        + 2.0 * nf.ln()
        + f64::from(2 * l + 2) * 2f64.ln()
        + log_factorial(l)
}

/// A bound state with its normalization constants computed once, for
/// evaluating the same wavefunction at many points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    qn: QuantumNumbers,
    z: NuclearCharge,
    ln_position_norm: f64,
    ln_momentum_norm: f64,
}

impl BoundState {
    pub fn new(qn: QuantumNumbers, z: NuclearCharge) -> Self {
        Self {
            qn,
            z,
            ln_position_norm: ln_position_norm(qn.n, qn.l, z.0),
            ln_momentum_norm: ln_momentum_norm(qn.n, qn.l) - 1.5 * z.0.ln(),
        }
    }

    pub fn quantum_numbers(&self) -> &QuantumNumbers {
        &self.qn
    }

    pub fn charge(&self) -> NuclearCharge {
        self.z
    }

    /// `R_nl(r)`
    pub fn radial_position(&self, r: f64) -> f64 {
        let (n, l) = (self.qn.n, self.qn.l);
        let rho = 2.0 * self.z.0 * r / f64::from(n);
        let poly = laguerre(n - l - 1, f64::from(2 * l + 1), rho);
        if rho > 0.0 {
            (self.ln_position_norm - 0.5 * rho + f64::from(l) * rho.ln()).exp() * poly
        } else if l == 0 {
            self.ln_position_norm.exp() * poly
        } else {
            0.0
        }
    }

    /// `F_nl(p)`, including the `Z^{-3/2}` charge scaling.
    pub fn radial_momentum(&self, p: f64) -> f64 {
        let (n, l) = (self.qn.n, self.qn.l);
        let y = f64::from(n) * p / self.z.0;
        let y2 = y * y;
        let arg = (y2 - 1.0) / (y2 + 1.0);
        let poly = gegenbauer(n - l - 1, f64::from(l + 1), arg);
        let ln_den = f64::from(l + 2) * y2.ln_1p();
        if y > 0.0 {
            (self.ln_momentum_norm + f64::from(l) * y.ln() - ln_den).exp() * poly
        } else if l == 0 {
            self.ln_momentum_norm.exp() * poly
        } else {
            0.0
        }
    }

    pub fn psi_position(&self, x: &SphericalCoord) -> ComplexValue {
        let y = spherical_harmonic(self.qn.l, self.qn.m, &x.direction).expect("validated quantum numbers");
        y * self.radial_position(x.radius)
    }

    pub fn psi_momentum(&self, p: &SphericalCoord) -> ComplexValue {
        let y = spherical_harmonic(self.qn.l, self.qn.m, &p.direction).expect("validated quantum numbers");
        momentum_phase(self.qn.l) * y * self.radial_momentum(p.radius)
    }
}

/// Position radial function `R_nl(r)`; `r` in Bohr radii.
pub fn radial_position(qn: &QuantumNumbers, z: NuclearCharge, r: f64) -> f64 {
    BoundState::new(*qn, z).radial_position(r)
}

/// Momentum radial function `F_nl(p)`; `p` in atomic momentum units.
pub fn radial_momentum(qn: &QuantumNumbers, z: NuclearCharge, p: f64) -> f64 {
    BoundState::new(*qn, z).radial_momentum(p)
}

/// Radial function of the requested representation.
pub fn radial(qn: &QuantumNumbers, z: NuclearCharge, which: Representation, x: f64) -> f64 {
    match which {
        Representation::Position => radial_position(qn, z, x),
        Representation::Momentum => radial_momentum(qn, z, x),
    }
}

/// `(-i)^l`
pub fn momentum_phase(l: u32) -> ComplexValue {
    match l % 4 {
        0 => ComplexValue::new(1.0, 0.0),
        1 => ComplexValue::new(0.0, -1.0),
        2 => ComplexValue::new(-1.0, 0.0),
        _ => ComplexValue::new(0.0, 1.0),
    }
}

/// `ψ_nlm(x) = R_nl(r) Y_lm(θ, φ)`.
pub fn psi_position(qn: &QuantumNumbers, z: NuclearCharge, x: &SphericalCoord) -> ComplexValue {
    BoundState::new(*qn, z).psi_position(x)
}

/// `ψ̃_nlm(p) = (-i)^l F_nl(p) Y_lm(θ', φ')`, the unitary Fourier transform of
/// [`psi_position`].
pub fn psi_momentum(qn: &QuantumNumbers, z: NuclearCharge, p: &SphericalCoord) -> ComplexValue {
    BoundState::new(*qn, z).psi_momentum(p)
}

/// The 2s and 2p momentum radial functions as they appear in the printed
/// 2s/2p K-R formulas, with a squared rather than cubed denominator.
///
/// Kept for comparison only: they are not normalized and are not the Fourier
/// transforms of `R_20`, `R_21`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedMomentumForm {
    F20,
    F21,
}

impl PrintedMomentumForm {
    pub fn quantum_numbers(&self) -> QuantumNumbers {
        match self {
            PrintedMomentumForm::F20 => QuantumNumbers { n: 2, l: 0, m: 0 },
            PrintedMomentumForm::F21 => QuantumNumbers { n: 2, l: 1, m: 0 },
        }
    }

    pub fn eval(&self, p: f64) -> f64 {
        let den = (1.0 + 4.0 * p * p).powi(2);
        match self {
            PrintedMomentumForm::F20 => 32.0 / PI.sqrt() * (4.0 * p * p - 1.0) / den,
            PrintedMomentumForm::F21 => 128.0 / (3.0 * PI).sqrt() * p / den,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PrintedMomentumForm::F20 => "F20_printed",
            PrintedMomentumForm::F21 => "F21_printed",
        }
    }
}
