//! K-R and Wigner functions of a 1-D state sampled on a uniform grid.
//!
//! The momentum amplitude uses the non-unitary transform
//! `Ψ̃(p) = Σ_j Ψ(q_j) e^{-i p q_j} Δq`, so that
//! `∫K dp = |Ψ(q)|²` and `∫K dq = |Ψ̃(p)|² / 2π` (ħ = 1).

use std::f64::consts::PI;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Complex amplitudes on uniformly spaced abscissas.
#[derive(Debug, Clone)]
pub struct TabulatedWavefunction1D {
    q0: f64,
    dq: f64,
    amplitudes: Vec<ComplexValue>,
}

impl TabulatedWavefunction1D {
    /// Builds from ascending, uniformly spaced abscissas (1e-12 relative).
    pub fn new(abscissas: &[f64], amplitudes: Vec<ComplexValue>) -> Result<Self> {
        if abscissas.len() != amplitudes.len() {
            return Err(Error::Tabulation(format!(
                "{} abscissas but {} amplitudes",
                abscissas.len(),
                amplitudes.len()
            )));
        }
        if abscissas.len() < 2 {
            return Err(Error::Tabulation("need at least two samples".into()));
        }
        let n = abscissas.len();
        let q0 = abscissas[0];
        let dq = (abscissas[n - 1] - q0) / (n - 1) as f64;
        if !(dq.is_finite() && dq > 0.0) {
            return Err(Error::Tabulation("abscissas must be finite and ascending".into()));
        }
        let magnitude = q0.abs().max(abscissas[n - 1].abs()).max(dq);
        for (j, &q) in abscissas.iter().enumerate() {
            let expected = q0 + dq * j as f64;
            if (q - expected).abs() > 1e-12 * magnitude {
                return Err(Error::Tabulation(format!(
                    "non-uniform spacing at sample {j}: {q} vs {expected}"
                )));
            }
        }
        if amplitudes.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Tabulation("amplitudes must be finite".into()));
        }
        Ok(Self {
            q0,
            dq,
            amplitudes,
        })
    }

    /// Samples `f` at `count` points spanning `[q_min, q_max]`.
    pub fn from_fn(q_min: f64, q_max: f64, count: usize, f: impl Fn(f64) -> ComplexValue) -> Result<Self> {
        if count < 2 || !(q_max > q_min) {
            return Err(Error::Tabulation("need count >= 2 and q_max > q_min".into()));
        }
        let dq = (q_max - q_min) / (count - 1) as f64;
        let amplitudes = (0..count).map(|j| f(q_min + dq * j as f64)).collect();
        Ok(Self {
            q0: q_min,
            dq,
            amplitudes,
        })
    }

    /// Reads the `q,re,im` text format: comma separated, `#` lines ignored.
    pub fn from_csv_reader(reader: impl BufRead, origin: &Path) -> Result<Self> {
        let mut qs = Vec::new();
        let mut amps = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            let parse = |s: &str| s.parse::<f64>().ok();
            match fields.as_slice() {
                [q, re, im] => match (parse(q), parse(re), parse(im)) {
                    (Some(q), Some(re), Some(im)) => {
                        qs.push(q);
                        amps.push(ComplexValue::new(re, im));
                    }
                    // a header row such as "q,re,im" is tolerated before any data
                    _ if qs.is_empty() && parse(q).is_none() => continue,
                    _ => {
                        return Err(Error::Parse {
                            path: origin.to_path_buf(),
                            message: format!("line {}: expected three numbers", lineno + 1),
                        })
                    }
                },
                _ => {
                    return Err(Error::Parse {
                        path: origin.to_path_buf(),
                        message: format!("line {}: expected 'q,re,im'", lineno + 1),
                    })
                }
            }
        }
        Self::new(&qs, amps).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(std::io::BufReader::new(file), path)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.dq
    }

    pub fn q_min(&self) -> f64 {
        self.q0
    }

    pub fn q_max(&self) -> f64 {
        self.q0 + self.dq * (self.amplitudes.len() - 1) as f64
    }

    pub fn abscissa(&self, j: usize) -> f64 {
        self.q0 + self.dq * j as f64
    }

    pub fn amplitudes(&self) -> &[ComplexValue] {
        &self.amplitudes
    }

    /// `Σ |Ψ_j|² Δq`
    pub fn discrete_norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.dq
    }

    fn check_domain(&self, q: f64) -> Result<()> {
        let (lo, hi) = (self.q_min(), self.q_max());
        let slack = 1e-12 * self.dq;
        if q < lo - slack || q > hi + slack || q.is_nan() {
            return Err(Error::OutOfDomain {
                what: "q",
                value: q,
                min: lo,
                max: hi,
            });
        }
        Ok(())
    }

    /// Linear interpolation of `Ψ(q)`.
    pub fn amplitude_at(&self, q: f64) -> Result<ComplexValue> {
        self.check_domain(q)?;
        Ok(self.interpolate(q))
    }

    fn interpolate(&self, q: f64) -> ComplexValue {
        let last = self.amplitudes.len() - 1;
        let t = ((q - self.q0) / self.dq).clamp(0.0, last as f64);
        let j = (t.floor() as usize).min(last);
        let frac = t - j as f64;
        if j == last || frac == 0.0 {
            return self.amplitudes[j];
        }
        self.amplitudes[j] * (1.0 - frac) + self.amplitudes[j + 1] * frac
    }

    /// Non-unitary transform `Ψ̃(p) = Σ_j Ψ(q_j) e^{-i p q_j} Δq`.
    pub fn momentum_amplitude(&self, p: f64) -> ComplexValue {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(j, a)| a * ComplexValue::from_polar(1.0, -p * self.abscissa(j)))
            .sum::<ComplexValue>()
            * self.dq
    }
}

/// 1-D K-R function `(2π)^{-1} Ψ(q) e^{-ipq} conj(Ψ̃(p))`.
pub fn kr_1d(psi: &TabulatedWavefunction1D, q: f64, p: f64) -> Result<ComplexValue> {
    let amp = psi.amplitude_at(q)?;
    let phase = ComplexValue::from_polar(1.0, -p * q);
    Ok(amp * phase * psi.momentum_amplitude(p).conj() / (2.0 * PI))
}

/// Same as [`kr_1d`] with a precomputed `Ψ̃(p)`, for sweeps over `q`.
pub fn kr_1d_with_transform(
    psi: &TabulatedWavefunction1D,
    q: f64,
    p: f64,
    transform_at_p: ComplexValue,
) -> Result<ComplexValue> {
    let amp = psi.amplitude_at(q)?;
    Ok(amp * ComplexValue::from_polar(1.0, -p * q) * transform_at_p.conj() / (2.0 * PI))
}

/// Largest tolerated imaginary residue of the Wigner sum, relative to the
/// state's peak density.
pub const WIGNER_IMAG_TOLERANCE: f64 = 1e-10;

/// Wigner function `(2π)^{-1} Σ_ξ Ψ*(q + ξ/2) e^{ipξ} Ψ(q - ξ/2) Δξ`.
///
/// `ξ` steps by `2Δq` over every shift keeping both arguments inside the
/// tabulation, so grid-aligned `q` never interpolates.
pub fn wigner_1d(psi: &TabulatedWavefunction1D, q: f64, p: f64) -> Result<f64> {
    let w = wigner_1d_complex(psi, q, p)?;
    let scale = psi.amplitudes.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
    if w.im.abs() > WIGNER_IMAG_TOLERANCE * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Tabulation(format!(
            "Wigner sum has imaginary residue {:e} at q={q}, p={p}",
            w.im
        )));
    }
    Ok(w.re)
}

/// The Wigner sum before discarding its (round-off) imaginary part.
pub fn wigner_1d_complex(psi: &TabulatedWavefunction1D, q: f64, p: f64) -> Result<ComplexValue> {
    psi.check_domain(q)?;
    let dq = psi.dq;
    let room = ((q - psi.q_min()).min(psi.q_max() - q) / dq + 1e-9).floor().max(0.0) as i64;
    let mut sum = ComplexValue::new(0.0, 0.0);
    for k in -room..=room {
        let shift = k as f64 * dq;
        let a = psi.interpolate(q + shift).conj();
        let b = psi.interpolate(q - shift);
        sum += a * b * ComplexValue::from_polar(1.0, 2.0 * p * shift);
    }
    Ok(sum * (2.0 * dq) / (2.0 * PI))
}
