//! Numerical oracles for the analytic machinery.
//!
//! Every check integrates point values produced elsewhere in the crate and
//! compares against an independently known target. Checks never fail with an
//! error; they return a [`VerificationReport`] so that expected divergences
//! (the printed 2s/2p momentum forms) stay visible without aborting a run.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{
    momentum_phase, radial, radial_momentum, radial_position, BoundState, NuclearCharge, PrintedMomentumForm,
    QuantumNumbers, Representation, SphericalCoord,
};
use crate::kr::{kr_closed_form, kr_hydrogen, ClosedFormState, NormalizationConvention, PhasePoint};
use crate::quadrature::{GaussLegendre, QuadratureRule};
use crate::special::{spherical_bessel, spherical_harmonic, AngularPoint};
use crate::ComplexValue;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;
pub const MARGINAL_TOLERANCE: f64 = 1e-6;
pub const MARGINAL_IMAG_TOLERANCE: f64 = 1e-8;
pub const FOURIER_TOLERANCE: f64 = 1e-6;
/// Minimum deviation that counts as a detected divergence of a printed form.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-2;
pub const CLOSED_FORM_RATIO_TOLERANCE: f64 = 1e-12;

/// Whether a check is supposed to agree with its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Agreement,
    /// The check documents a known discrepancy; disagreement is the expected
    /// outcome and never fails a run.
    Divergence,
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub target: f64,
    pub computed: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub expectation: Expectation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imag_residue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, target: f64, computed: f64, tolerance: f64) -> Self {
        let abs_error = (computed - target).abs();
        Self {
            name: name.into(),
            target,
            computed,
            abs_error,
            tolerance,
            passed: abs_error <= tolerance,
            expectation: Expectation::Agreement,
            imag_residue: None,
            note: None,
        }
    }

    /// Adds an imaginary residue that must itself stay below `tolerance`.
    pub fn with_imag_residue(mut self, residue: f64, tolerance: f64) -> Self {
        self.imag_residue = Some(residue);
        self.passed &= residue.abs() <= tolerance;
        self
    }

    pub fn expect_divergence(mut self) -> Self {
        self.expectation = Expectation::Divergence;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// True when the outcome matches the expectation.
    pub fn as_expected(&self) -> bool {
        match self.expectation {
            Expectation::Agreement => self.passed,
            Expectation::Divergence => !self.passed,
        }
    }

    /// True when this check should fail a verification run.
    pub fn is_unexpected_failure(&self) -> bool {
        self.expectation == Expectation::Agreement && !self.passed
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn single(check: CheckResult) -> Self {
        Self { checks: vec![check] }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// All agreement checks passed.
    pub fn all_passed(&self) -> bool {
        !self.checks.iter().any(CheckResult::is_unexpected_failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.is_unexpected_failure())
    }
}

/// Quadrature settings for the radial normalization integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationOrders {
    pub position: usize,
    pub momentum: usize,
}

impl Default for NormalizationOrders {
    fn default() -> Self {
        Self {
            position: 96,
            momentum: 200,
        }
    }
}

/// Semi-infinite rule scaled to the state: `n²/Z` in position, `Z/n` in momentum.
pub fn radial_rule(qn: &QuantumNumbers, z: NuclearCharge, which: Representation, order: usize) -> QuadratureRule {
    let n = f64::from(qn.n());
    let scale = match which {
        Representation::Position => n * n / z.value(),
        Representation::Momentum => z.value() / n,
    };
    QuadratureRule::semi_infinite(order, scale)
}

/// `∫ R² r² dr` or `∫ F² p² dp`, target 1.
pub fn check_normalization(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    which: Representation,
    order: usize,
) -> VerificationReport {
    let rule = radial_rule(qn, z, which, order);
    let v = rule.integrate(|x| (radial(qn, z, which, x) * x).powi(2));
    let name = format!(
        "normalization[{}] n={} l={} z={}",
        rep_name(which),
        qn.n(),
        qn.l(),
        z.value()
    );
    VerificationReport::single(CheckResult::new(name, 1.0, v, NORMALIZATION_TOLERANCE))
}

/// Normalization integral of a printed 2s/2p momentum form; a divergence
/// from 1 is the expected outcome.
pub fn check_printed_normalization(form: PrintedMomentumForm, order: usize) -> VerificationReport {
    let rule = QuadratureRule::semi_infinite(order, 0.5);
    let v = rule.integrate(|p| (form.eval(p) * p).powi(2));
    VerificationReport::single(
        CheckResult::new(format!("normalization[{}]", form.name()), 1.0, v, NORMALIZATION_TOLERANCE)
            .expect_divergence()
            .with_note("printed form with squared denominator"),
    )
}

fn rep_name(which: Representation) -> &'static str {
    match which {
        Representation::Position => "position",
        Representation::Momentum => "momentum",
    }
}

/// Grid settings for the 3-D marginal integrals.
///
/// The integration variable runs over `[0, cutoff]` in panels carrying
/// `radial_order` Gauss-Legendre points each. Panels are at most `max_panel`
/// wide and no wider than half an oscillation of the plane wave; the angular
/// order grows with the local phase `r p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalOrders {
    pub radial_order: usize,
    /// Momentum cutoff in units of `Z` (momentum marginal).
    pub momentum_cutoff: f64,
    /// Position cutoff in units of `n / Z` (position marginal).
    pub position_cutoff: f64,
    pub angular_min: usize,
    pub max_panel: f64,
}

impl Default for MarginalOrders {
    fn default() -> Self {
        Self {
            radial_order: 12,
            momentum_cutoff: 200.0,
            position_cutoff: 45.0,
            angular_min: 24,
            max_panel: 4.0,
        }
    }
}

impl MarginalOrders {
    /// Every setting doubled in resolution; used by convergence checks.
    pub fn refined(&self) -> Self {
        Self {
            radial_order: self.radial_order * 2,
            momentum_cutoff: self.momentum_cutoff * 1.5,
            position_cutoff: self.position_cutoff * 1.2,
            angular_min: self.angular_min * 2,
            max_panel: self.max_panel / 2.0,
        }
    }
}

/// Panel edges on `[0, cutoff]`: width `0.25·x` clamped to
/// `[min_width, max_width]`.
fn panel_edges(cutoff: f64, min_width: f64, max_width: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut x = 0.0;
    while x < cutoff {
        let w = (0.25 * x).clamp(min_width, max_width.max(min_width));
        x = (x + w).min(cutoff);
        edges.push(x);
    }
    edges
}

/// Orthonormal frame whose third axis is `axis` (or ẑ for the zero vector).
fn frame_around(axis: &AngularPoint) -> [[f64; 3]; 3] {
    let e3 = axis.unit_vector();
    let helper = if e3[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let mut e1 = [
        helper[1] * e3[2] - helper[2] * e3[1],
        helper[2] * e3[0] - helper[0] * e3[2],
        helper[0] * e3[1] - helper[1] * e3[0],
    ];
    let norm = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1.iter_mut().for_each(|c| *c /= norm);
    let e2 = [
        e3[1] * e1[2] - e3[2] * e1[1],
        e3[2] * e1[0] - e3[0] * e1[2],
        e3[0] * e1[1] - e3[1] * e1[0],
    ];
    [e1, e2, e3]
}

/// Product rule on the unit sphere in a frame whose polar axis is `axis`:
/// Gauss-Legendre in `u = cos γ` times a uniform azimuth rule.
///
/// Integrands of the form `exp(-i k u) · Y_lm(direction)` are summed with
/// the azimuthal ring sums of `Y_lm` cached per Gauss-Legendre order. This is
/// the same discrete sum as visiting every node, reorganized so that each
/// radial shell costs one complex exponential per `u` node.
struct SphereRule {
    rings: HashMap<usize, Vec<(f64, ComplexValue)>>,
    frame: [[f64; 3]; 3],
    azimuth_count: usize,
    angular_min: usize,
    l: u32,
    m: i32,
}

impl SphereRule {
    fn new(axis: &AngularPoint, l: u32, m: i32, angular_min: usize) -> Self {
        Self {
            rings: HashMap::new(),
            frame: frame_around(axis),
            // Y_lm is a trig polynomial of degree l in the azimuth about `axis`
            azimuth_count: (2 * l as usize + 2).max(4),
            angular_min,
            l,
            m,
        }
    }

    fn order_for(&self, k: f64) -> usize {
        let order = (0.6 * k.abs()).ceil() as usize + self.angular_min;
        order.div_ceil(8) * 8
    }

    /// Sphere nodes for `order`, grouped by ring: `(u, w_u, [directions])`.
    fn nodes(&self, order: usize) -> Vec<(f64, f64, Vec<AngularPoint>)> {
        let gl = GaussLegendre::new(order);
        let [e1, e2, e3] = self.frame;
        let m = self.azimuth_count;
        let dphi = 2.0 * PI / m as f64;
        gl.nodes()
            .iter()
            .zip(gl.weights())
            .map(|(&u, &w)| {
                let s = (1.0 - u * u).max(0.0).sqrt();
                let dirs = (0..m)
                    .map(|j| {
                        let (sa, ca) = (dphi * j as f64).sin_cos();
                        let v: [f64; 3] = std::array::from_fn(|c| u * e3[c] + s * (ca * e1[c] + sa * e2[c]));
                        AngularPoint::from_cartesian(v[0], v[1], v[2])
                    })
                    .collect();
                (u, w * dphi, dirs)
            })
            .collect()
    }

    /// `∮ exp(-i k cos γ) Y_lm(direction) dΩ`
    fn harmonic_integral(&mut self, k: f64) -> ComplexValue {
        let order = self.order_for(k);
        if !self.rings.contains_key(&order) {
            let rings = self
                .nodes(order)
                .into_iter()
                .map(|(u, w, dirs)| {
                    let ring: ComplexValue = dirs
                        .iter()
                        .map(|d| spherical_harmonic(self.l, self.m, d).expect("validated quantum numbers"))
                        .sum();
                    (u, ring * w)
                })
                .collect();
            self.rings.insert(order, rings);
        }
        self.rings[&order]
            .iter()
            .map(|&(u, ring)| ComplexValue::from_polar(1.0, -k * u) * ring)
            .sum()
    }
}

/// `∭ K(x, p) d³p` in the marginal-exact convention; target `|ψ(x)|²`.
///
/// Momentum directions are measured from `x̂`, where the plane wave depends
/// on the polar angle only. On a shell of radius `p`,
/// `K = c ψ(x) conj((-i)^l F(p)) · exp(-i r p cos γ) conj(Y_lm(p̂))`, so the
/// shell integral is the conjugate of a cached harmonic sum. The algebraic
/// tail beyond the cutoff oscillates and contributes `O((r² P³)^{-1})`; at
/// `r = 0` there is no oscillation and a mapped semi-infinite rule is used
/// instead.
pub fn check_marginal_momentum(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    x_point: &SphericalCoord,
    orders: &MarginalOrders,
) -> VerificationReport {
    let r = x_point.radius();
    let n = f64::from(qn.n());
    let zv = z.value();
    let state = BoundState::new(*qn, z);
    let mut sphere = SphereRule::new(x_point.direction(), qn.l(), qn.m(), orders.angular_min);
    let rule = if r == 0.0 {
        QuadratureRule::semi_infinite(400, zv / n)
    } else {
        let max_w = (2.0 * PI / r).min(orders.max_panel * zv);
        let edges = panel_edges(orders.momentum_cutoff * zv, 0.25 * zv / n, max_w);
        composite_on_edges(orders.radial_order, &edges)
    };
    let psi_x = state.psi_position(x_point);
    let phase = momentum_phase(qn.l()).conj();
    let mut total = ComplexValue::new(0.0, 0.0);
    for (&p, &w) in rule.nodes().iter().zip(rule.weights()) {
        // conj(∮ e^{+i r p u} Y) = ∮ e^{-i r p u} conj(Y)
        let shell = sphere.harmonic_integral(-r * p).conj();
        total += shell * phase * (w * p * p * state.radial_momentum(p));
    }
    total *= psi_x * NormalizationConvention::MarginalExact.prefactor();
    let target = psi_x.norm_sqr();
    let name = format!(
        "marginal[momentum] {} at r={:.4} theta={:.4} phi={:.4}",
        qn,
        r,
        x_point.polar(),
        x_point.azimuth()
    );
    VerificationReport::single(
        CheckResult::new(name, target, total.re, MARGINAL_TOLERANCE)
            .with_imag_residue(total.im, MARGINAL_IMAG_TOLERANCE),
    )
}

/// `∭ K(x, p) d³x` in the marginal-exact convention; target `|ψ̃(p)|²`.
///
/// Position directions are measured from `p̂`; on a shell of radius `r`,
/// `K = c R(r) Y_lm(x̂) exp(-i r p cos γ) · conj(ψ̃(p))`.
pub fn check_marginal_position(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    p_point: &SphericalCoord,
    orders: &MarginalOrders,
) -> VerificationReport {
    let p = p_point.radius();
    let n = f64::from(qn.n());
    let zv = z.value();
    let state = BoundState::new(*qn, z);
    let mut sphere = SphereRule::new(p_point.direction(), qn.l(), qn.m(), orders.angular_min);
    let max_w = if p > 0.0 { (2.0 * PI / p).min(orders.max_panel / zv) } else { orders.max_panel / zv };
    let edges = panel_edges(orders.position_cutoff * n / zv, 0.25 / zv, max_w);
    let rule = composite_on_edges(orders.radial_order, &edges);
    let psi_p = state.psi_momentum(p_point);
    let mut total = ComplexValue::new(0.0, 0.0);
    for (&r, &w) in rule.nodes().iter().zip(rule.weights()) {
        total += sphere.harmonic_integral(r * p) * (w * r * r * state.radial_position(r));
    }
    total *= psi_p.conj() * NormalizationConvention::MarginalExact.prefactor();
    let target = psi_p.norm_sqr();
    let name = format!(
        "marginal[position] {} at p={:.4} theta'={:.4} phi'={:.4}",
        qn,
        p,
        p_point.polar(),
        p_point.azimuth()
    );
    VerificationReport::single(
        CheckResult::new(name, target, total.re, MARGINAL_TOLERANCE)
            .with_imag_residue(total.im, MARGINAL_IMAG_TOLERANCE),
    )
}

fn composite_on_edges(order: usize, edges: &[f64]) -> QuadratureRule {
    QuadratureRule::on_panels(&GaussLegendre::new(order), edges)
}

/// `√(2/π) ∫ R_nl(r) j_l(p r) r² dr` by panelled Gauss-Legendre.
pub fn hankel_transform(qn: &QuantumNumbers, z: NuclearCharge, p: f64, order: usize) -> Result<f64> {
    if qn.l() > 3 {
        return Err(Error::Unsupported(format!(
            "Fourier consistency limited to l <= 3, got l = {}",
            qn.l()
        )));
    }
    let n = f64::from(qn.n());
    let zv = z.value();
    let max_w = if p > 0.0 { (PI / p).min(4.0 / zv) } else { 4.0 / zv };
    let edges = panel_edges(60.0 * n / zv, 0.25 / zv, max_w);
    let rule = composite_on_edges(order, &edges);
    let mut acc = 0.0;
    for (&r, &w) in rule.nodes().iter().zip(rule.weights()) {
        acc += w * radial_position(qn, z, r) * spherical_bessel(qn.l(), p * r)? * r * r;
    }
    Ok((2.0 / PI).sqrt() * acc)
}

/// Compares `|√(2/π) ∫ R_nl j_l(pr) r² dr|` with `|F_nl(p)|` at each sample.
pub fn check_fourier_consistency(
    qn: &QuantumNumbers,
    z: NuclearCharge,
    p_samples: &[f64],
    order: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for &p in p_samples {
        let g = hankel_transform(qn, z, p, order)?;
        let f = radial_momentum(qn, z, p);
        report.push(CheckResult::new(
            format!("fourier {} l={} at p={p:.6}", qn.n(), qn.l()),
            f.abs(),
            g.abs(),
            FOURIER_TOLERANCE,
        ));
    }
    Ok(report)
}

/// Largest `| |G(p)| - |F_printed(p)| |` over the samples; divergence expected.
pub fn check_printed_fourier(form: PrintedMomentumForm, p_samples: &[f64], order: usize) -> Result<VerificationReport> {
    let qn = form.quantum_numbers();
    let mut worst = 0.0f64;
    for &p in p_samples {
        let g = hankel_transform(&qn, NuclearCharge::HYDROGEN, p, order)?;
        worst = worst.max((g.abs() - form.eval(p).abs()).abs());
    }
    Ok(VerificationReport::single(
        CheckResult::new(format!("fourier[{}] max deviation", form.name()), 0.0, worst, DIVERGENCE_THRESHOLD)
            .expect_divergence()
            .with_note("printed form is not the transform of R_2l"),
    ))
}

/// Ratio `kr_hydrogen / kr_closed_form` over `points`.
///
/// For 1s the ratio must equal `(2π)^{3/2}` everywhere. For 2s and 2p the bare
/// ratio varies (flagged as an expected divergence: the printed forms carry a
/// squared denominator) while `ratio · (1 + 4p²)` must be constant.
pub fn check_closed_form_ratio(state: ClosedFormState, points: &[PhasePoint]) -> VerificationReport {
    let qn = state.quantum_numbers();
    let h = NuclearCharge::HYDROGEN;
    let mut ratios = Vec::new();
    let mut corrected = Vec::new();
    for pt in points {
        let a = kr_hydrogen(&qn, h, pt, NormalizationConvention::MarginalExact);
        let b = kr_closed_form(state, pt);
        if b.norm() < 1e-14 || a.norm() < 1e-16 {
            continue;
        }
        let ratio = a / b;
        ratios.push(ratio);
        corrected.push(ratio * (1.0 + 4.0 * pt.p() * pt.p()));
    }
    let spread = |v: &[ComplexValue]| -> (ComplexValue, f64) {
        let first = v.first().copied().unwrap_or_default();
        let worst = v.iter().map(|x| (x - first).norm()).fold(0.0, f64::max);
        (first, worst / first.norm().max(f64::MIN_POSITIVE))
    };
    let mut report = VerificationReport::default();
    let (reference, rel_spread) = spread(&ratios);
    let label = state.label();
    match state {
        ClosedFormState::OneS => {
            let want = (2.0 * PI).powf(1.5);
            let worst = ratios
                .iter()
                .map(|r| (r - want).norm() / want)
                .fold(0.0, f64::max);
            report.push(
                CheckResult::new(format!("closed_form[{label}] ratio / (2pi)^(3/2) - 1"), 0.0, worst, CLOSED_FORM_RATIO_TOLERANCE)
                    .with_note(format!("ratio = {:.12}", reference.re)),
            );
        }
        ClosedFormState::TwoS | ClosedFormState::TwoP => {
            report.push(
                CheckResult::new(format!("closed_form[{label}] ratio spread (as printed)"), 0.0, rel_spread, CLOSED_FORM_RATIO_TOLERANCE)
                    .expect_divergence()
                    .with_note("printed p-shape has (1+4p^2)^2 in the denominator"),
            );
            let (c, corrected_spread) = spread(&corrected);
            report.push(
                CheckResult::new(format!("closed_form[{label}] ratio*(1+4p^2) spread"), 0.0, corrected_spread, 1e-10)
                    .with_note(format!("constant = {:.6e}{:+.6e}i", c.re, c.im)),
            );
        }
    }
    report
}
