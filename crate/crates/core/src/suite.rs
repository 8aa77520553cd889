//! The full verification run behind `hydrogen-kr verify`.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extrema::{count_extrema_law, slice_maxima};
use crate::hydrogen::{NuclearCharge, PrintedMomentumForm, QuantumNumbers, Representation, SphericalCoord};
use crate::kr::{ClosedFormState, PhasePoint};
use crate::slice::{SliceAngles, SliceSpec, DEFAULT_RESOLUTION};
use crate::verify::{
    check_closed_form_ratio, check_fourier_consistency, check_marginal_momentum, check_marginal_position,
    check_normalization, check_printed_fourier, check_printed_normalization, CheckResult, MarginalOrders,
    NormalizationOrders, VerificationReport, MARGINAL_IMAG_TOLERANCE,
};

pub const MAX_SUITE_N: u32 = 10;

/// States whose extrema counts the suite checks, besides all `n ≤ n_max`
/// states with `m = l`.
pub const EXTREMA_LAW_STATES: [(u32, u32); 8] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (10, 8), (10, 9)];

/// Replacement tolerances by check family, parsed from
/// `normalization=1e-9,marginal=1e-5,fourier=1e-7,closed_form=1e-11`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ToleranceOverrides {
    pub normalization: Option<f64>,
    pub marginal: Option<f64>,
    pub fourier: Option<f64>,
    pub closed_form: Option<f64>,
}

impl FromStr for ToleranceOverrides {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("tolerance override '{item}' is not key=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("tolerance '{value}' is not a number")))?;
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(format!("tolerance for '{key}' must be positive")));
            }
            let slot = match key.trim() {
                "normalization" => &mut out.normalization,
                "marginal" => &mut out.marginal,
                "fourier" => &mut out.fourier,
                "closed_form" => &mut out.closed_form,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown check family '{other}' (normalization, marginal, fourier, closed_form)"
                    )))
                }
            };
            *slot = Some(value);
        }
        Ok(out)
    }
}

impl ToleranceOverrides {
    fn for_check(&self, name: &str) -> Option<f64> {
        if name.starts_with("normalization") {
            self.normalization
        } else if name.starts_with("marginal") {
            self.marginal
        } else if name.starts_with("fourier") {
            self.fourier
        } else if name.starts_with("closed_form") {
            self.closed_form
        } else {
            None
        }
    }

    /// Re-judges agreement checks against any overridden tolerance. Checks
    /// documenting a known divergence keep their threshold.
    pub fn apply(&self, report: &mut VerificationReport) {
        for c in &mut report.checks {
            if c.expectation != crate::verify::Expectation::Agreement {
                continue;
            }
            if let Some(tol) = self.for_check(&c.name) {
                c.tolerance = tol;
                c.passed = c.abs_error <= tol && c.imag_residue.map_or(true, |r| r.abs() <= MARGINAL_IMAG_TOLERANCE);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub z: NuclearCharge,
    pub normalization: NormalizationOrders,
    pub marginal: MarginalOrders,
    /// Largest `n` covered by the marginal checks (they dominate the runtime).
    pub marginal_n_max: u32,
    pub fourier_order: usize,
    pub fourier_samples: usize,
    pub extrema_resolution: usize,
    pub overrides: ToleranceOverrides,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            z: NuclearCharge::HYDROGEN,
            normalization: NormalizationOrders::default(),
            marginal: MarginalOrders::default(),
            marginal_n_max: 3,
            fourier_order: 24,
            fourier_samples: 5,
            extrema_resolution: DEFAULT_RESOLUTION,
            overrides: ToleranceOverrides::default(),
        }
    }
}

/// Every `(n, l, m)` with `n ≤ n_max`.
pub fn states_up_to(n_max: u32) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for l in 0..n {
            for m in -(l as i64)..=l as i64 {
                out.push(QuantumNumbers::new(n.into(), l.into(), m).expect("valid by construction"));
            }
        }
    }
    out
}

/// Three position points per state for the momentum marginal, spread over
/// the radial structure and away from symmetry planes.
pub fn marginal_position_points(qn: &QuantumNumbers, z: NuclearCharge) -> Vec<SphericalCoord> {
    let s = f64::from(qn.n()) / z.value();
    [(0.4, 0.7, 0.3), (1.1, 1.9, 2.4), (2.3, 2.6, 4.9)]
        .iter()
        .map(|&(r, t, f)| SphericalCoord::new(r * s, t, f).expect("valid point"))
        .collect()
}

/// Three momentum points per state for the position marginal.
pub fn marginal_momentum_points(qn: &QuantumNumbers, z: NuclearCharge) -> Vec<SphericalCoord> {
    let s = z.value() / f64::from(qn.n());
    [(0.3, 0.5, 1.1), (0.8, 1.4, 3.7), (1.6, 2.9, 5.6)]
        .iter()
        .map(|&(p, t, f)| SphericalCoord::new(p * s, t, f).expect("valid point"))
        .collect()
}

/// `count` log-spaced momenta in `[0.05, 3]·Z/n`.
pub fn fourier_samples(qn: &QuantumNumbers, z: NuclearCharge, count: usize) -> Vec<f64> {
    let s = z.value() / f64::from(qn.n());
    let (a, b) = (0.05f64.ln(), 3.0f64.ln());
    (0..count)
        .map(|k| {
            let t = if count > 1 { k as f64 / (count - 1) as f64 } else { 0.0 };
            s * (a + t * (b - a)).exp()
        })
        .collect()
}

/// Deterministic phase-space points for the closed-form ratio checks.
pub fn closed_form_points() -> Vec<PhasePoint> {
    (0..24)
        .map(|k| {
            let t = k as f64;
            PhasePoint::new(
                0.15 + 0.37 * t,
                0.1 + (0.13 * t) % 2.9,
                (0.71 * t) % (2.0 * PI),
                0.05 + 0.09 * t,
                0.2 + (0.29 * t) % 2.7,
                (1.3 * t) % (2.0 * PI),
            )
            .expect("valid point")
        })
        .collect()
}

/// Location of the 2p maximum, compared with `(2, √5/10)` and, as a flagged
/// divergence, with the published `(2, √3/6)`.
pub fn two_p_maximum_checks() -> Result<VerificationReport> {
    let mut spec = SliceSpec::for_state(QuantumNumbers::new(2, 1, 0)?, NuclearCharge::HYDROGEN);
    spec.angles = SliceAngles::POLE;
    let maxima = slice_maxima(&spec, true)?;
    let mut report = VerificationReport::default();
    report.push(CheckResult::new("extrema[2p] maximum count", 1.0, maxima.len() as f64, 0.0));
    if let Some(top) = maxima.first() {
        report.push(CheckResult::new("extrema[2p] maximum r", 2.0, top.r, 1e-3));
        report.push(CheckResult::new("extrema[2p] maximum p", 5f64.sqrt() / 10.0, top.p, 1e-3));
        report.push(
            CheckResult::new("extrema[2p] maximum p vs published sqrt(3)/6", 3f64.sqrt() / 6.0, top.p, 1e-3)
                .expect_divergence()
                .with_note("published location follows the squared-denominator momentum form"),
        );
    }
    Ok(report)
}

/// 2s slice: four maxima at the corners of the `(0|4) × (0|1/√2)` lattice,
/// the global one at the origin.
pub fn two_s_structure_checks() -> Result<VerificationReport> {
    let spec = SliceSpec::for_state(QuantumNumbers::new(2, 0, 0)?, NuclearCharge::HYDROGEN);
    let maxima = slice_maxima(&spec, true)?;
    let mut report = VerificationReport::default();
    report.push(CheckResult::new("extrema[2s] maximum count", 4.0, maxima.len() as f64, 0.0));
    let h = 0.5f64.sqrt();
    for (r, p) in [(0.0, 0.0), (0.0, h), (4.0, 0.0), (4.0, h)] {
        let dist = maxima
            .iter()
            .map(|e| (e.r - r).abs().max((e.p - p).abs()))
            .fold(f64::INFINITY, f64::min);
        report.push(CheckResult::new(format!("extrema[2s] nearest maximum to ({r}, {h:.6})"), 0.0, dist, 1e-3));
    }
    let global = maxima.first().map_or(f64::INFINITY, |e| e.r.abs().max(e.p.abs()));
    report.push(CheckResult::new("extrema[2s] global maximum at origin", 0.0, global, 1e-12));
    Ok(report)
}

/// Extrema-law checks for `states`, each a count comparison.
pub fn extrema_law_checks(states: &[QuantumNumbers], z: NuclearCharge, resolution: usize) -> Result<VerificationReport> {
    let entries = count_extrema_law(states, z, resolution)?;
    let mut report = VerificationReport::default();
    for e in entries {
        report.push(
            CheckResult::new(
                format!("extrema_law n={} l={} m={}", e.n, e.l, e.m),
                e.expected as f64,
                e.count as f64,
                0.0,
            )
            .with_note("(n-l)^2 maxima of |K|"),
        );
    }
    Ok(report)
}

/// Runs every check family for states up to `n_max` and merges the results
/// in a fixed order.
pub fn run_verify(n_max: u32, options: &SuiteOptions) -> Result<VerificationReport> {
    if n_max == 0 || n_max > MAX_SUITE_N {
        return Err(Error::OutOfDomain {
            what: "n_max",
            value: f64::from(n_max),
            min: 1.0,
            max: f64::from(MAX_SUITE_N),
        });
    }
    let z = options.z;
    let mut report = VerificationReport::default();

    // normalization: every (n, l), both representations
    for n in 1..=n_max {
        for l in 0..n {
            let qn = QuantumNumbers::new(n.into(), l.into(), 0)?;
            report.extend(check_normalization(&qn, z, Representation::Position, options.normalization.position));
            report.extend(check_normalization(&qn, z, Representation::Momentum, options.normalization.momentum));
        }
    }
    report.extend(check_printed_normalization(PrintedMomentumForm::F20, options.normalization.momentum));
    report.extend(check_printed_normalization(PrintedMomentumForm::F21, options.normalization.momentum));

    // marginals: the expensive part, run in parallel and merged in order
    let marginal_states = states_up_to(n_max.min(options.marginal_n_max));
    let marginal: Vec<VerificationReport> = marginal_states
        .par_iter()
        .map(|qn| {
            let mut r = VerificationReport::default();
            for x in marginal_position_points(qn, z) {
                r.extend(check_marginal_momentum(qn, z, &x, &options.marginal));
            }
            for p in marginal_momentum_points(qn, z) {
                r.extend(check_marginal_position(qn, z, &p, &options.marginal));
            }
            r
        })
        .collect();
    marginal.into_iter().for_each(|r| report.extend(r));

    // Fourier consistency, l ≤ 3
    for n in 1..=n_max.min(MAX_SUITE_N) {
        for l in 0..n.min(4) {
            let qn = QuantumNumbers::new(n.into(), l.into(), 0)?;
            let samples = fourier_samples(&qn, z, options.fourier_samples);
            report.extend(check_fourier_consistency(&qn, z, &samples, options.fourier_order)?);
        }
    }
    let printed_samples = fourier_samples(&QuantumNumbers::new(2, 0, 0)?, NuclearCharge::HYDROGEN, 5);
    report.extend(check_printed_fourier(PrintedMomentumForm::F20, &printed_samples, options.fourier_order)?);
    report.extend(check_printed_fourier(PrintedMomentumForm::F21, &printed_samples, options.fourier_order)?);

    // closed forms
    let points = closed_form_points();
    for state in ClosedFormState::ALL {
        report.extend(check_closed_form_ratio(state, &points));
    }

    // extrema
    let mut law_states: Vec<QuantumNumbers> = EXTREMA_LAW_STATES
        .iter()
        .filter(|(n, _)| *n <= n_max)
        .map(|&(n, l)| QuantumNumbers::new(n.into(), l.into(), l.into()))
        .collect::<Result<_>>()?;
    if n_max < 10 {
        // keep the published n = 10 examples in every run
        law_states.push(QuantumNumbers::new(10, 9, 9)?);
        law_states.push(QuantumNumbers::new(10, 8, 8)?);
    }
    report.extend(extrema_law_checks(&law_states, z, options.extrema_resolution)?);
    if n_max >= 2 {
        report.extend(two_p_maximum_checks()?);
        report.extend(two_s_structure_checks()?);
    }

    options.overrides.apply(&mut report);
    Ok(report)
}
