//! Two-dimensional `(r, p)` cross-sections of the K-R function at fixed
//! position and momentum angles.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{NuclearCharge, QuantumNumbers, SphericalCoord};
use crate::kr::{KrEvaluator, NormalizationConvention, PhasePoint};
use crate::special::{spherical_harmonic, AngularPoint};
use crate::ComplexValue;

/// `(2π)³`, the optional display multiplier of the published figures.
pub const PAPER_DISPLAY_SCALE: f64 = 248.050_213_442_398_6;

/// Below this `|Y_lm|` a slice is identically zero and a warning is raised.
pub const ZERO_HARMONIC_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Re,
    Im,
    Abs,
    Abs2,
    /// Real and imaginary parts together.
    Complex,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Re => "re",
            Quantity::Im => "im",
            Quantity::Abs => "abs",
            Quantity::Abs2 => "abs2",
            Quantity::Complex => "complex",
        }
    }

    fn extract(&self, k: ComplexValue) -> f64 {
        match self {
            Quantity::Re => k.re,
            Quantity::Im => k.im,
            Quantity::Abs => k.norm(),
            Quantity::Abs2 => k.norm_sqr(),
            Quantity::Complex => unreachable!("complex slices keep both parts"),
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "re" => Ok(Quantity::Re),
            "im" => Ok(Quantity::Im),
            "abs" => Ok(Quantity::Abs),
            "abs2" => Ok(Quantity::Abs2),
            "complex" => Ok(Quantity::Complex),
            other => Err(Error::invalid(format!("unknown quantity '{other}'"))),
        }
    }
}

/// Fixed angles `(θ, φ, θ', φ')` of a slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceAngles {
    pub theta: f64,
    pub phi: f64,
    pub theta_p: f64,
    pub phi_p: f64,
}

impl SliceAngles {
    pub const EQUATOR: SliceAngles = SliceAngles {
        theta: PI / 2.0,
        phi: 0.0,
        theta_p: PI / 2.0,
        phi_p: 0.0,
    };

    pub const POLE: SliceAngles = SliceAngles {
        theta: 0.0,
        phi: 0.0,
        theta_p: 0.0,
        phi_p: 0.0,
    };

    /// Same direction for position and momentum.
    pub fn aligned(theta: f64, phi: f64) -> Self {
        Self {
            theta,
            phi,
            theta_p: theta,
            phi_p: phi,
        }
    }

    pub fn position(&self) -> Result<AngularPoint> {
        AngularPoint::new(self.theta, self.phi)
    }

    pub fn momentum(&self) -> Result<AngularPoint> {
        AngularPoint::new(self.theta_p, self.phi_p)
    }
}

impl Default for SliceAngles {
    fn default() -> Self {
        Self::EQUATOR
    }
}

/// Everything needed to reproduce a slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub qn: QuantumNumbers,
    pub z: NuclearCharge,
    pub angles: SliceAngles,
    pub r_range: (f64, f64),
    pub p_range: (f64, f64),
    /// `(n_r, n_p)`
    pub resolution: (usize, usize),
    pub quantity: Quantity,
    pub convention: NormalizationConvention,
    /// Multiply by `(2π)³` as in the published figures.
    pub paper_scale: bool,
}

pub const DEFAULT_RESOLUTION: usize = 256;

impl SliceSpec {
    /// Defaults: equatorial angles, `r ∈ [0, 5n²/Z]`, `p ∈ [0, 4Z/n]`,
    /// 256 × 256, `|K|`, marginal-exact convention.
    pub fn for_state(qn: QuantumNumbers, z: NuclearCharge) -> Self {
        let n = f64::from(qn.n());
        Self {
            qn,
            z,
            angles: SliceAngles::EQUATOR,
            r_range: (0.0, 5.0 * n * n / z.value()),
            p_range: (0.0, 4.0 * z.value() / n),
            resolution: (DEFAULT_RESOLUTION, DEFAULT_RESOLUTION),
            quantity: Quantity::Abs,
            convention: NormalizationConvention::MarginalExact,
            paper_scale: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (r0, r1) = self.r_range;
        let (p0, p1) = self.p_range;
        let (nr, np) = self.resolution;
        if !(r0.is_finite() && r1.is_finite() && r0 >= 0.0 && r1 > r0) {
            return Err(Error::invalid(format!("r range [{r0}, {r1}] must satisfy 0 <= r_min < r_max")));
        }
        if !(p0.is_finite() && p1.is_finite() && p0 >= 0.0 && p1 > p0) {
            return Err(Error::invalid(format!("p range [{p0}, {p1}] must satisfy 0 <= p_min < p_max")));
        }
        if nr < 2 || np < 2 {
            return Err(Error::invalid(format!("resolution {nr}x{np}: need at least 2 points per axis")));
        }
        self.angles.position()?;
        self.angles.momentum()?;
        Ok(())
    }

    pub fn r_axis(&self) -> Vec<f64> {
        linspace(self.r_range, self.resolution.0)
    }

    pub fn p_axis(&self) -> Vec<f64> {
        linspace(self.p_range, self.resolution.1)
    }

    pub fn display_scale(&self) -> f64 {
        if self.paper_scale {
            PAPER_DISPLAY_SCALE
        } else {
            1.0
        }
    }

    /// `|Y_lm|` at the position and momentum angles.
    pub fn harmonic_moduli(&self) -> Result<(f64, f64)> {
        let (l, m) = (self.qn.l(), self.qn.m());
        Ok((
            spherical_harmonic(l, m, &self.angles.position()?)?.norm(),
            spherical_harmonic(l, m, &self.angles.momentum()?)?.norm(),
        ))
    }

    /// K at one `(r, p)` of the slice, display scale included.
    pub fn evaluate(&self, r: f64, p: f64) -> Result<ComplexValue> {
        self.evaluate_with(&self.evaluator(), r, p)
    }

    pub fn evaluator(&self) -> KrEvaluator {
        KrEvaluator::new(self.qn, self.z, self.convention)
    }

    fn evaluate_with(&self, kr: &KrEvaluator, r: f64, p: f64) -> Result<ComplexValue> {
        let a = &self.angles;
        let point = PhasePoint::from_coords(
            SphericalCoord::new(r, a.theta, a.phi)?,
            SphericalCoord::new(p, a.theta_p, a.phi_p)?,
        );
        Ok(kr.eval(&point) * self.display_scale())
    }
}

fn linspace((a, b): (f64, f64), n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { b } else { a + step * k as f64 })
        .collect()
}

/// Grid values, row-major with `r` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub enum SliceValues {
    Real(Vec<f64>),
    Complex(Vec<ComplexValue>),
}

#[derive(Debug, Clone)]
pub struct SliceResult {
    pub spec: SliceSpec,
    pub r_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub values: SliceValues,
    pub warnings: Vec<String>,
}

impl SliceResult {
    pub fn n_r(&self) -> usize {
        self.r_axis.len()
    }

    pub fn n_p(&self) -> usize {
        self.p_axis.len()
    }

    /// Real value at `(i_r, i_p)`; `None` for complex slices.
    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        match &self.values {
            SliceValues::Real(v) => v.get(i * self.n_p() + j).copied(),
            SliceValues::Complex(_) => None,
        }
    }

    pub fn real_values(&self) -> Option<&[f64]> {
        match &self.values {
            SliceValues::Real(v) => Some(v),
            SliceValues::Complex(_) => None,
        }
    }

    /// State label plus the spec in `key=value` form.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let s = &self.spec;
        let a = &s.angles;
        vec![
            ("tool".into(), format!("hydrogen-kr {}", crate::VERSION)),
            ("state".into(), s.qn.label()),
            ("n".into(), s.qn.n().to_string()),
            ("l".into(), s.qn.l().to_string()),
            ("m".into(), s.qn.m().to_string()),
            ("z".into(), fmt_f64(s.z.value())),
            ("theta".into(), fmt_f64(a.theta)),
            ("phi".into(), fmt_f64(a.phi)),
            ("theta_p".into(), fmt_f64(a.theta_p)),
            ("phi_p".into(), fmt_f64(a.phi_p)),
            ("r_range".into(), format!("{}:{}", fmt_f64(s.r_range.0), fmt_f64(s.r_range.1))),
            ("p_range".into(), format!("{}:{}", fmt_f64(s.p_range.0), fmt_f64(s.p_range.1))),
            ("resolution".into(), format!("{}x{}", s.resolution.0, s.resolution.1)),
            ("quantity".into(), s.quantity.name().into()),
            ("convention".into(), s.convention.name().into()),
            ("scale".into(), fmt_f64(s.display_scale())),
        ]
    }
}

/// Shortest representation that parses back to the same `f64`.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Evaluates the slice described by `spec`.
///
/// Angle choices where `Y_lm` vanishes produce an all-zero grid and a
/// warning, not an error.
pub fn sample_slice(spec: &SliceSpec) -> Result<SliceResult> {
    spec.validate()?;
    let mut warnings = Vec::new();
    let (yx, yp) = spec.harmonic_moduli()?;
    if yx < ZERO_HARMONIC_THRESHOLD || yp < ZERO_HARMONIC_THRESHOLD {
        warnings.push(format!(
            "Y_{}{} vanishes at the chosen angles (|Y(θ,φ)| = {yx:.3e}, |Y(θ',φ')| = {yp:.3e}); the slice is identically zero",
            spec.qn.l(),
            spec.qn.m()
        ));
    }
    let r_axis = spec.r_axis();
    let p_axis = spec.p_axis();
    let kr = spec.evaluator();
    let rows: Vec<Vec<ComplexValue>> = r_axis
        .par_iter()
        .map(|&r| p_axis.iter().map(|&p| spec.evaluate_with(&kr, r, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let flat = rows.into_iter().flatten();
    let values = match spec.quantity {
        Quantity::Complex => SliceValues::Complex(flat.collect()),
        q => SliceValues::Real(flat.map(|k| q.extract(k)).collect()),
    };
    Ok(SliceResult {
        spec: spec.clone(),
        r_axis,
        p_axis,
        values,
        warnings,
    })
}

/// First of the equator, the pole and `π/4` (aligned position and momentum
/// angles) where `|Y_lm|` is comfortably nonzero.
pub fn suggest_angles(qn: &QuantumNumbers) -> SliceAngles {
    for theta in [PI / 2.0, 0.0, PI / 4.0] {
        let pt = AngularPoint::new(theta, 0.0).expect("valid");
        let y = spherical_harmonic(qn.l(), qn.m(), &pt).expect("validated").norm();
        if y > 1e-3 {
            return SliceAngles::aligned(theta, 0.0);
        }
    }
    SliceAngles::aligned(1.0, 0.0)
}
