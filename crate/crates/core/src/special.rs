//! Orthogonal polynomials and angular kernels.
//!
//! Everything here is evaluated by forward three-term recurrences, which are
//! stable for the small degrees hydrogen needs (degree <= n - 1 <= ~50).
//! Laguerre polynomials use the modern convention,
//! `L_k^α(0) = binomial(k + α, k)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ComplexValue;

/// Direction on the unit sphere.
///
/// The polar angle is kept in `[0, π]`; the azimuth is reduced modulo `2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularPoint {
    polar: f64,
    azimuth: f64,
}

impl AngularPoint {
    pub fn new(polar: f64, azimuth: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&polar) {
            return Err(Error::OutOfDomain {
                what: "polar angle",
                value: polar,
                min: 0.0,
                max: PI,
            });
        }
        if !azimuth.is_finite() {
            return Err(Error::invalid(format!("azimuth must be finite, got {azimuth}")));
        }
        Ok(Self {
            polar,
            azimuth: azimuth.rem_euclid(2.0 * PI),
        })
    }

    /// Direction of a Cartesian vector. The zero vector maps to the north pole.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        let rho = x.hypot(y);
        let polar = rho.atan2(z);
        let azimuth = if rho == 0.0 { 0.0 } else { y.atan2(x).rem_euclid(2.0 * PI) };
        Self { polar, azimuth }
    }

    pub fn polar(&self) -> f64 {
        self.polar
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.polar.sin_cos();
        let (sp, cp) = self.azimuth.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// `ln(k!)`.
///
/// Exact products are used up to 170! (the largest finite factorial in f64);
/// beyond that the Stirling series takes over.
pub fn log_factorial(k: u32) -> f64 {
    if k < 2 {
        return 0.0;
    }
    if k <= 170 {
        let mut prod = 1.0f64;
        for i in 2..=k {
            prod *= f64::from(i);
        }
        return prod.ln();
    }
    let x = f64::from(k) + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// Associated Laguerre polynomial `L_k^α(x)`.
pub fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let j = f64::from(j);
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer (ultraspherical) polynomial `C_k^α(x)`.
pub fn gegenbauer(k: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * alpha * x;
    for j in 2..=k {
        let j = f64::from(j);
        let next = (2.0 * (j + alpha - 1.0) * x * cur - (j + 2.0 * alpha - 2.0) * prev) / j;
        prev = cur;
        cur = next;
    }
    cur
}

/// Orthonormalized associated Legendre function
/// `sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P_l^m(x)` with the Condon-Shortley phase,
/// for `0 <= m <= l`.
///
/// Seeded at `P_m^m` and carried upward in `l`.
pub fn legendre_normalized(l: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= l);
    let one_minus_x2 = ((1.0 - x) * (1.0 + x)).max(0.0);
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= one_minus_x2 * fact / (fact + 1.0);
        fact += 2.0;
    }
    pmm = ((2.0 * f64::from(m) + 1.0) * pmm / (4.0 * PI)).sqrt();
    if m % 2 == 1 {
        pmm = -pmm;
    }
    if l == m {
        return pmm;
    }
    let mut old_fact = (2.0 * f64::from(m) + 3.0).sqrt();
    let mut pmmp1 = x * old_fact * pmm;
    let m2 = f64::from(m) * f64::from(m);
    for ll in (m + 2)..=l {
        let ll = f64::from(ll);
        let fact = ((4.0 * ll * ll - 1.0) / (ll * ll - m2)).sqrt();
        let pll = (x * pmmp1 - pmm / old_fact) * fact;
        old_fact = fact;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pmmp1
}

/// Spherical harmonic `Y_lm(θ, φ)`, Condon-Shortley phase.
///
/// Negative orders use `Y_{l,-m} = (-1)^m conj(Y_lm)`.
pub fn spherical_harmonic(l: u32, m: i32, point: &AngularPoint) -> Result<ComplexValue> {
    if m.unsigned_abs() > l {
        return Err(Error::invalid(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    let ma = m.unsigned_abs();
    let plm = legendre_normalized(l, ma, point.polar.cos());
    let y = ComplexValue::from_polar(plm, f64::from(ma) * point.azimuth);
    if m >= 0 {
        Ok(y)
    } else if ma % 2 == 0 {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}

/// Spherical Bessel function `j_l(x)` for `l <= 3`.
///
/// Closed forms for `x >= 1`; the power series below that, where the closed
/// forms lose digits to cancellation.
pub fn spherical_bessel(l: u32, x: f64) -> Result<f64> {
    if l > 3 {
        return Err(Error::Unsupported(format!(
            "spherical Bessel j_l implemented for l <= 3, got l = {l}"
        )));
    }
    if x < 0.0 {
        return Err(Error::OutOfDomain {
            what: "spherical Bessel argument",
            value: x,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    if x < 1.0 {
        return Ok(bessel_series(l, x));
    }
    let (s, c) = x.sin_cos();
    let v = match l {
        0 => s / x,
        1 => s / (x * x) - c / x,
        2 => (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 * c / (x * x),
        _ => {
            let x2 = x * x;
            (15.0 / (x2 * x2) - 6.0 / x2) * s - (15.0 / (x2 * x) - 1.0 / x) * c
        }
    };
    Ok(v)
}

fn bessel_series(l: u32, x: f64) -> f64 {
    // x^l / (2l+1)!! * Σ_k (-x²/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    let mut lead = 1.0;
    for j in 0..l {
        lead *= x / f64::from(2 * j + 3);
    }
    let half_x2 = 0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40u32 {
        term *= -half_x2 / (f64::from(k) * f64::from(2 * l + 2 * k + 1));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{GaussLegendre, Mapping, QuadratureRule};
    use rand::{Rng, SeedableRng};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn log_factorial_small_values() {
        assert_eq!(log_factorial(0), 0.0);
        assert_eq!(log_factorial(1), 0.0);
        let mut exact: u128 = 1;
        for k in 1..=34u32 {
            exact *= u128::from(k);
            assert!(rel(log_factorial(k), (exact as f64).ln()) < 1e-14, "k={k}");
        }
        assert!((log_factorial(19) - 39.339_884_187_199_49).abs() < 1e-12);
    }

    #[test]
    fn log_factorial_stirling_matches_product_branch() {
        // the sum of logs is a second route for both branches
        let mut acc = 0.0;
        for k in 1..=200u32 {
            acc += f64::from(k).ln();
            assert!(rel(log_factorial(k), acc) < 1e-13, "k={k}");
        }
    }

    #[test]
    fn laguerre_low_degrees() {
        for &x in &[0.0, 0.3, 1.0, 7.5] {
            for &a in &[0.0, 1.0, 3.0, 2.5] {
                assert_eq!(laguerre(0, a, x), 1.0);
            }
            assert!((laguerre(1, 1.0, x) - (2.0 - x)).abs() < 1e-15);
            assert!((laguerre(2, 1.0, x) - (x * x - 6.0 * x + 6.0) / 2.0).abs() < 1e-13);
        }
        assert!((laguerre(2, 1.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn laguerre_orthogonality() {
        let rule = QuadratureRule::new(GaussLegendre::new(160), Mapping::Rational { scale: 4.0 });
        let gamma = |k: u32, a: f64| (log_factorial(k + a as u32) - log_factorial(k)).exp();
        for &alpha in &[1.0, 3.0] {
            for j in 0..=5u32 {
                for k in 0..=5u32 {
                    let v = rule.integrate(|x| {
                        x.powf(alpha) * (-x).exp() * laguerre(j, alpha, x) * laguerre(k, alpha, x)
                    });
                    let target = if j == k { gamma(k, alpha) } else { 0.0 };
                    assert!((v - target).abs() < 1e-8, "alpha={alpha} j={j} k={k} v={v}");
                }
            }
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn gegenbauer_low_degrees_and_endpoint() {
        assert_eq!(gegenbauer(0, 1.5, 0.2), 1.0);
        assert_eq!(gegenbauer(1, 1.0, 0.5), 1.0);
        assert_eq!(gegenbauer(2, 1.0, 1.0), 3.0);
        for alpha in 1..=10u64 {
            for k in 0..=9u64 {
                let exact = binomial(k + 2 * alpha - 1, k) as f64;
                let v = gegenbauer(k as u32, alpha as f64, 1.0);
                assert!(rel(v, exact) < 1e-13, "k={k} alpha={alpha}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn harmonic_reference_values() {
        let any = AngularPoint::new(0.7, 2.1).unwrap();
        let y00 = spherical_harmonic(0, 0, &any).unwrap();
        assert!((y00.re - 0.282_094_791_773_878_14).abs() < 1e-15 && y00.im == 0.0);
        let pole = AngularPoint::new(0.0, 0.0).unwrap();
        let y10 = spherical_harmonic(1, 0, &pole).unwrap();
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        // Y_11 = -sqrt(3/8π) sin θ e^{iφ}
        let p = AngularPoint::new(1.1, 0.4).unwrap();
        let y11 = spherical_harmonic(1, 1, &p).unwrap();
        let want = ComplexValue::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 1.1f64.sin(), 0.4);
        assert!((y11 - want).norm() < 1e-15);
        // Y_99 ∝ sin^9 θ
        let eq = AngularPoint::new(PI / 2.0, 0.0).unwrap();
        let y99 = spherical_harmonic(9, 9, &eq).unwrap();
        let lf = log_factorial(18);
        let c = (19.0 / (4.0 * PI) * (lf).exp()).sqrt() / (2f64.powi(9) * log_factorial(9).exp());
        assert!(rel(y99.re, -c) < 1e-13);
        assert!(spherical_harmonic(2, 3, &eq).is_err());
    }

    #[test]
    fn harmonic_normalization() {
        let gl = GaussLegendre::new(24);
        let n_phi = 24;
        for l in 0..=10u32 {
            for m in -(l as i32)..=(l as i32) {
                let mut sum = 0.0;
                for (x, w) in gl.nodes().iter().zip(gl.weights()) {
                    for k in 0..n_phi {
                        let phi = 2.0 * PI * f64::from(k) / f64::from(n_phi);
                        let pt = AngularPoint::new(x.acos(), phi).unwrap();
                        sum += w * (2.0 * PI / f64::from(n_phi))
                            * spherical_harmonic(l, m, &pt).unwrap().norm_sqr();
                    }
                }
                assert!((sum - 1.0).abs() < 1e-10, "l={l} m={m}: {sum}");
            }
        }
    }

    #[test]
    fn harmonic_conjugation_symmetry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let pt = AngularPoint::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
            let l = rng.gen_range(0..=10u32);
            let m = rng.gen_range(0..=l as i32);
            let pos = spherical_harmonic(l, m, &pt).unwrap();
            let neg = spherical_harmonic(l, -m, &pt).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((neg - pos.conj() * sign).norm() <= 1e-15 * (1.0 + pos.norm()));
        }
    }

    #[test]
    fn bessel_values() {
        assert_eq!(spherical_bessel(0, 0.0).unwrap(), 1.0);
        assert!(spherical_bessel(0, PI).unwrap().abs() < 1e-15);
        let j1 = spherical_bessel(1, 1.0).unwrap();
        assert!((j1 - (1f64.sin() - 1f64.cos())).abs() < 1e-15);
        assert!((j1 - 0.301_168_678_939_756_8).abs() < 1e-15);
        assert!(spherical_bessel(4, 1.0).is_err());
        assert!(spherical_bessel(1, -0.5).is_err());
    }

    #[test]
    fn bessel_series_meets_closed_form() {
        // both branches must agree where they hand over
        for l in 0..=3 {
            for &x in &[0.7f64, 0.95, 0.999_999] {
                let closed = match l {
                    0 => x.sin() / x,
                    1 => x.sin() / (x * x) - x.cos() / x,
                    2 => (3.0 / x.powi(3) - 1.0 / x) * x.sin() - 3.0 * x.cos() / (x * x),
                    _ => (15.0 / x.powi(4) - 6.0 / (x * x)) * x.sin() - (15.0 / x.powi(3) - 1.0 / x) * x.cos(),
                };
                assert!(rel(bessel_series(l, x), closed) < 1e-11, "l={l} x={x}");
            }
        }
    }

    #[test]
    fn angular_point_domain() {
        assert!(AngularPoint::new(-0.1, 0.0).is_err());
        assert!(AngularPoint::new(3.2, 0.0).is_err());
        let p = AngularPoint::new(1.0, -PI / 2.0).unwrap();
        assert!((p.azimuth() - 1.5 * PI).abs() < 1e-15);
        let v = p.unit_vector();
        let back = AngularPoint::from_cartesian(v[0], v[1], v[2]);
        assert!((back.polar() - 1.0).abs() < 1e-14 && (back.azimuth() - 1.5 * PI).abs() < 1e-14);
    }
}
