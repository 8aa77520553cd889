//! Local maxima of `|K|` on a slice.
//!
//! A grid node is a maximum when it exceeds every existing neighbor in its
//! 8-neighborhood. Nodes on the `r = r_min` and `p = p_min` edges compete only
//! with the neighbors that exist, so boundary peaks (the `r = 0` peak of an s
//! state, the `p = 0` peak of its momentum function) count. The far edges are
//! truncation artifacts and are skipped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slice::{sample_slice, Quantity, SliceResult, SliceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremumRecord {
    pub r: f64,
    pub p: f64,
    pub value: f64,
    pub kind: ExtremumKind,
    /// Lies on the `r_min` or `p_min` edge.
    pub boundary: bool,
    /// Grid node the record was found at.
    pub grid: (usize, usize),
}

/// Local maxima of an `abs` (or `abs2`) slice, largest first, each refined by
/// one parabolic fit per axis.
pub fn find_extrema(slice: &SliceResult) -> Result<Vec<ExtremumRecord>> {
    let values = match (slice.spec.quantity, slice.real_values()) {
        (Quantity::Abs | Quantity::Abs2, Some(v)) => v,
        (q, _) => {
            return Err(Error::invalid(format!(
                "extrema need an 'abs' slice, got '{}'",
                q.name()
            )))
        }
    };
    let (nr, np) = (slice.n_r(), slice.n_p());
    let at = |i: usize, j: usize| values[i * np + j];
    let mut found = Vec::new();
    for i in 0..nr.saturating_sub(1) {
        for j in 0..np.saturating_sub(1) {
            let v = at(i, j);
            if !(v > 0.0) {
                continue;
            }
            let mut is_max = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii < 0 || jj < 0 || ii >= nr as i64 || jj >= np as i64 {
                        continue;
                    }
                    if at(ii as usize, jj as usize) >= v {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if !is_max {
                continue;
            }
            let dr = if i > 0 { vertex_offset(at(i - 1, j), v, at(i + 1, j)) } else { 0.0 };
            let dp = if j > 0 { vertex_offset(at(i, j - 1), v, at(i, j + 1)) } else { 0.0 };
            let r_step = slice.r_axis[1] - slice.r_axis[0];
            let p_step = slice.p_axis[1] - slice.p_axis[0];
            found.push(ExtremumRecord {
                r: slice.r_axis[i] + dr * r_step,
                p: slice.p_axis[j] + dp * p_step,
                value: v,
                kind: ExtremumKind::Maximum,
                boundary: i == 0 || j == 0,
                grid: (i, j),
            });
        }
    }
    found.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(found)
}

/// Offset of the vertex of the parabola through `(-1, a), (0, b), (1, c)`,
/// clamped to half a cell.
fn vertex_offset(a: f64, b: f64, c: f64) -> f64 {
    let curvature = a - 2.0 * b + c;
    if curvature.abs() <= f64::EPSILON * b.abs() {
        return 0.0;
    }
    (0.5 * (a - c) / curvature).clamp(-0.5, 0.5)
}

/// Polishes a grid maximum against the analytic `|K|` by repeated parabolic
/// fits on a shrinking stencil (half a cell to start, halved each pass).
/// Coordinates on the `r_min` or `p_min` boundary stay put.
pub fn refine_extremum(spec: &SliceSpec, record: &ExtremumRecord, passes: usize) -> Result<ExtremumRecord> {
    let f = |r: f64, p: f64| -> Result<f64> { Ok(spec.evaluate(r, p)?.norm()) };
    let (r0, r1) = spec.r_range;
    let (p0, p1) = spec.p_range;
    let mut hr = 0.5 * (r1 - r0) / (spec.resolution.0 - 1) as f64;
    let mut hp = 0.5 * (p1 - p0) / (spec.resolution.1 - 1) as f64;
    let (mut r, mut p) = (record.r, record.p);
    let fix_r = record.grid.0 == 0;
    let fix_p = record.grid.1 == 0;
    for _ in 0..passes {
        if !fix_r && r - hr >= r0 {
            let (a, b, c) = (f(r - hr, p)?, f(r, p)?, f(r + hr, p)?);
            r += hr * vertex_offset(a, b, c) * 2.0_f64.min(1.0);
        }
        if !fix_p && p - hp >= p0 {
            let (a, b, c) = (f(r, p - hp)?, f(r, p)?, f(r, p + hp)?);
            p += hp * vertex_offset(a, b, c);
        }
        hr *= 0.5;
        hp *= 0.5;
    }
    let value = f(r, p)?;
    let value = if spec.quantity == Quantity::Abs2 { value * value } else { value };
    Ok(ExtremumRecord { r, p, value, ..*record })
}

/// Samples `spec` (forced to `abs`) and returns its maxima, optionally refined.
pub fn slice_maxima(spec: &SliceSpec, refine: bool) -> Result<Vec<ExtremumRecord>> {
    let mut spec = spec.clone();
    spec.quantity = Quantity::Abs;
    let slice = sample_slice(&spec)?;
    let found = find_extrema(&slice)?;
    if refine {
        found.iter().map(|rec| refine_extremum(&spec, rec, 40)).collect()
    } else {
        Ok(found)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremaLawEntry {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub count: usize,
    pub expected: usize,
    pub passed: bool,
    pub maxima: Vec<ExtremumRecord>,
}

/// Counts `|K|` maxima for each state on its default slice (angles picked by
/// [`crate::slice::suggest_angles`]) and compares with `(n - l)²`.
pub fn count_extrema_law(
    states: &[crate::hydrogen::QuantumNumbers],
    z: crate::hydrogen::NuclearCharge,
    resolution: usize,
) -> Result<Vec<ExtremaLawEntry>> {
    states
        .iter()
        .map(|qn| {
            let mut spec = SliceSpec::for_state(*qn, z);
            spec.angles = crate::slice::suggest_angles(qn);
            spec.resolution = (resolution, resolution);
            let maxima = slice_maxima(&spec, false)?;
            let expected = ((qn.n() - qn.l()) * (qn.n() - qn.l())) as usize;
            Ok(ExtremaLawEntry {
                n: qn.n(),
                l: qn.l(),
                m: qn.m(),
                count: maxima.len(),
                expected,
                passed: maxima.len() == expected,
                maxima,
            })
        })
        .collect()
}
