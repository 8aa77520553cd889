//! Reference values and independent numerical oracles for the public API.

use std::f64::consts::PI;

use hydrogen_kr::hydrogen::{
    psi_momentum, psi_position, radial_momentum, radial_position, PrintedMomentumForm, Representation,
};
use hydrogen_kr::kr::{
    cos_capital_theta, kr_1d, kr_abs_squared, kr_closed_form, kr_hydrogen, wigner_1d, ClosedFormState,
    TabulatedWavefunction1D,
};
use hydrogen_kr::quadrature::QuadratureRule;
use hydrogen_kr::special::{gegenbauer, laguerre, log_factorial, spherical_bessel, spherical_harmonic};
use hydrogen_kr::verify::{
    check_fourier_consistency, check_marginal_momentum, check_marginal_position, check_normalization,
    check_printed_normalization, hankel_transform, MarginalOrders,
};
use hydrogen_kr::{AngularPoint, ComplexValue, NormalizationConvention, NuclearCharge, PhasePoint, QuantumNumbers, SphericalCoord};

const H: NuclearCharge = NuclearCharge::HYDROGEN;

fn qn(n: i64, l: i64, m: i64) -> QuantumNumbers {
    QuantumNumbers::new(n, l, m).unwrap()
}

fn coord(r: f64, theta: f64, phi: f64) -> SphericalCoord {
    SphericalCoord::new(r, theta, phi).unwrap()
}

#[test]
fn special_function_values() {
    assert_eq!(log_factorial(0), 0.0);
    assert_eq!(log_factorial(1), 0.0);
    assert!((log_factorial(19) - (121_645_100_408_832_000f64).ln()).abs() < 1e-12);
    assert_eq!(laguerre(0, 2.5, 3.0), 1.0);
    assert!((laguerre(1, 1.0, 0.4) - 1.6).abs() < 1e-15);
    assert!((laguerre(2, 1.0, 1.0) - 0.5).abs() < 1e-15);
    assert_eq!(gegenbauer(0, 1.5, 0.3), 1.0);
    assert!((gegenbauer(1, 1.0, 0.5) - 1.0).abs() < 1e-15);
    assert!((gegenbauer(2, 1.0, 1.0) - 3.0).abs() < 1e-15);
    let any = AngularPoint::new(1.2, 4.0).unwrap();
    assert!((spherical_harmonic(0, 0, &any).unwrap().re - 0.5 / PI.sqrt()).abs() < 1e-15);
    let pole = AngularPoint::new(0.0, 0.0).unwrap();
    assert!((spherical_harmonic(1, 0, &pole).unwrap().re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
    assert!((spherical_bessel(0, 0.0).unwrap() - 1.0).abs() < 1e-15);
    assert!(spherical_bessel(0, PI).unwrap().abs() < 1e-15);
    assert!((spherical_bessel(1, 1.0).unwrap() - (1f64.sin() - 1f64.cos())).abs() < 1e-15);
    assert!(spherical_bessel(4, 1.0).is_err());
}

#[test]
fn circular_harmonic_normalized_on_the_sphere() {
    let rule = QuadratureRule::finite(40, -1.0, 1.0);
    let m = 24;
    let mut total = 0.0;
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        for j in 0..m {
            let phi = 2.0 * PI * j as f64 / m as f64;
            let y = spherical_harmonic(9, 9, &AngularPoint::new(u.acos(), phi).unwrap()).unwrap();
            total += w * (2.0 * PI / m as f64) * y.norm_sqr();
        }
    }
    assert!((total - 1.0).abs() < 1e-13, "{total}");
}

#[test]
fn laguerre_orthogonality() {
    let rule = QuadratureRule::semi_infinite(160, 4.0);
    for alpha in [1.0f64, 3.0] {
        for j in 0..=5u32 {
            for k in 0..=5u32 {
                let v = rule.integrate(|x| {
                    x.powf(alpha) * (-x).exp() * laguerre(j, alpha, x) * laguerre(k, alpha, x)
                });
                let want = if j == k {
                    // Γ(k + α + 1) / k!, α integral here
                    (log_factorial(k + alpha as u32) - log_factorial(k)).exp()
                } else {
                    0.0
                };
                assert!((v - want).abs() < 1e-8 * want.max(1.0), "α={alpha} j={j} k={k}: {v}");
            }
        }
    }
}

#[test]
fn wavefunction_values() {
    assert!((radial_position(&qn(1, 0, 0), H, 0.0) - 2.0).abs() < 1e-15);
    assert!(radial_position(&qn(2, 0, 0), H, 2.0).abs() < 1e-16);
    let r21 = radial_position(&qn(2, 1, 0), H, 2.0);
    assert!((r21 - 2.0 * (-1f64).exp() / (2.0 * 6f64.sqrt())).abs() < 1e-15);

    assert!((radial_momentum(&qn(1, 0, 0), H, 0.0) - 4.0 * (2.0 / PI).sqrt()).abs() < 1e-14);
    assert!(radial_momentum(&qn(2, 0, 0), H, 0.5).abs() < 1e-15);
    for p in [0.1f64, 0.2236, 1.0, 2.5] {
        let want = 128.0 / (3.0 * PI).sqrt() * p / (1.0 + 4.0 * p * p).powi(3);
        assert!((radial_momentum(&qn(2, 1, 0), H, p) - want).abs() < 1e-13 * want.abs().max(1.0));
    }

    let psi0 = psi_position(&qn(1, 0, 0), H, &coord(0.0, 0.0, 0.0));
    assert!((psi0.re - 1.0 / PI.sqrt()).abs() < 1e-15 && psi0.im == 0.0);
    assert!(psi_position(&qn(2, 1, 0), H, &coord(1.3, PI / 2.0, 0.7)).norm() < 1e-16);
    let phi0 = psi_momentum(&qn(1, 0, 0), H, &coord(0.0, 0.0, 0.0));
    assert!((phi0.re - 0.900_316_3).abs() < 1e-7);
    assert!(psi_momentum(&qn(2, 1, 0), H, &coord(0.4, PI / 2.0, 0.1)).norm() < 1e-15);
}

#[test]
fn circular_state_peaks() {
    // R_{10,9}² peaks at r = n(n-1) = 90, the radial density r²R² at r = n² = 100
    let s = qn(10, 9, 9);
    let grid: Vec<f64> = (1..=2500).map(|k| 0.1 * k as f64).collect();
    let argmax = |f: &dyn Fn(f64) -> f64| {
        grid.iter()
            .copied()
            .max_by(|a, b| f(*a).total_cmp(&f(*b)))
            .unwrap()
    };
    let r_psi = argmax(&|r| psi_position(&s, H, &coord(r, PI / 2.0, 0.0)).norm_sqr());
    assert!((r_psi - 90.0).abs() < 0.1 + 1e-9, "{r_psi}");
    let r_rad = argmax(&|r| (r * radial_position(&s, H, r)).powi(2));
    assert!((r_rad - 100.0).abs() < 0.1 + 1e-9, "{r_rad}");

    // momentum density of the circular state peaks near p ~ 1/n
    let pgrid: Vec<f64> = (1..=1000).map(|k| 0.001 * k as f64).collect();
    let p_peak = pgrid
        .iter()
        .copied()
        .max_by(|a, b| {
            let f = |p: f64| psi_momentum(&s, H, &coord(p, PI / 2.0, 0.0)).norm_sqr();
            f(*a).total_cmp(&f(*b))
        })
        .unwrap();
    assert!(p_peak > 0.05 && p_peak < 0.15, "{p_peak}");
    // F_nl(p)·(n/…) analytic peak: d/dp [y^l/(1+y²)^{l+2}] = 0 ⇒ y² = l/(l+4)
    let y = (9.0f64 / 13.0).sqrt();
    assert!((p_peak - y / 10.0).abs() < 1e-3, "{p_peak}");
}

#[test]
fn normalization_for_all_states_and_two_charges() {
    for z in [1.0, 2.0] {
        let z = NuclearCharge::new(z).unwrap();
        for n in 1..=10 {
            for l in 0..n {
                let s = qn(n, l, 0);
                for (which, order) in [(Representation::Position, 96), (Representation::Momentum, 200)] {
                    let r = check_normalization(&s, z, which, order);
                    assert!(r.all_passed(), "{r:?}");
                }
            }
        }
    }
    let r = check_printed_normalization(PrintedMomentumForm::F21, 200);
    assert!((r.checks[0].computed - 16.0 / 3.0).abs() < 1e-10);
    assert!(r.all_passed() && !r.checks[0].passed);
}

#[test]
fn marginal_examples() {
    let o = MarginalOrders::default();
    let r = check_marginal_momentum(&qn(1, 0, 0), H, &coord(1.0, 0.3, 0.2), &o);
    assert!((r.checks[0].target - (-2f64).exp() / PI).abs() < 1e-15);
    assert!(r.all_passed(), "{r:?}");
    let r = check_marginal_momentum(&qn(2, 1, 0), H, &coord(1.5, PI / 2.0, 0.0), &o);
    assert!(r.checks[0].target < 1e-30 && r.all_passed(), "{r:?}");
    let r = check_marginal_momentum(&qn(2, 0, 0), H, &coord(2.0, 1.0, 1.0), &o);
    assert!(r.checks[0].target < 1e-30 && r.all_passed(), "{r:?}");
    let r = check_marginal_momentum(&qn(1, 0, 0), H, &coord(0.0, 0.0, 0.0), &o);
    assert!((r.checks[0].target - 1.0 / PI).abs() < 1e-15 && r.all_passed(), "{r:?}");

    let r = check_marginal_position(&qn(1, 0, 0), H, &coord(0.0, 0.0, 0.0), &o);
    assert!((r.checks[0].target - 0.810_569_5).abs() < 1e-7);
    assert!(r.all_passed(), "{r:?}");
    let r = check_marginal_position(&qn(2, 0, 0), H, &coord(0.5, 0.4, 2.0), &o);
    assert!(r.checks[0].target < 1e-30 && r.all_passed(), "{r:?}");
    let p_peak = 5f64.sqrt() / 10.0;
    let r = check_marginal_position(&qn(2, 1, 0), H, &coord(p_peak, 0.0, 0.0), &o);
    let peak = psi_momentum(&qn(2, 1, 0), H, &coord(p_peak, 0.0, 0.0)).norm_sqr();
    assert!((r.checks[0].target - peak).abs() < 1e-15 && r.all_passed(), "{r:?}");
}

#[test]
fn marginals_with_higher_charge() {
    let o = MarginalOrders::default();
    let z = NuclearCharge::new(2.0).unwrap();
    for s in [qn(1, 0, 0), qn(2, 1, -1), qn(3, 2, 2)] {
        let r = check_marginal_momentum(&s, z, &coord(0.7, 1.1, 0.5), &o);
        assert!(r.all_passed(), "{r:?}");
        let r = check_marginal_position(&s, z, &coord(0.9, 2.0, 4.0), &o);
        assert!(r.all_passed(), "{r:?}");
    }
}

#[test]
fn refining_orders_stays_within_tolerance() {
    let base = MarginalOrders::default();
    let fine = base.refined();
    for s in [qn(2, 0, 0), qn(3, 1, 1), qn(3, 2, -2)] {
        let x = coord(2.5, 0.9, 1.7);
        let a = check_marginal_momentum(&s, H, &x, &base).checks[0].clone();
        let b = check_marginal_momentum(&s, H, &x, &fine).checks[0].clone();
        assert!(a.passed && b.passed);
        assert!((a.computed - b.computed).abs() <= a.tolerance, "{a:?} vs {b:?}");
        let p = coord(0.6, 2.2, 0.3);
        let a = check_marginal_position(&s, H, &p, &base).checks[0].clone();
        let b = check_marginal_position(&s, H, &p, &fine).checks[0].clone();
        assert!((a.computed - b.computed).abs() <= a.tolerance, "{a:?} vs {b:?}");
    }
}

#[test]
fn fourier_examples() {
    let g = hankel_transform(&qn(1, 0, 0), H, 0.0, 24).unwrap();
    assert!((g - 4.0 * (2.0 / PI).sqrt()).abs() < 1e-10);
    // the cubed-denominator 2p function is the transform; the printed one is not
    let g = hankel_transform(&qn(2, 1, 0), H, 0.25, 24).unwrap();
    assert!((g.abs() - radial_momentum(&qn(2, 1, 0), H, 0.25)).abs() < 1e-6);
    assert!((g.abs() - PrintedMomentumForm::F21.eval(0.25).abs()).abs() > 1e-2);
    let samples: Vec<f64> = (0..5).map(|k| 0.02 * 10f64.powf(k as f64 / 2.0)).collect();
    let r = check_fourier_consistency(&qn(3, 2, 0), H, &samples, 24).unwrap();
    assert!(r.all_passed(), "{r:?}");
    assert!(check_fourier_consistency(&qn(5, 4, 0), H, &samples, 24).is_err());
}

#[test]
fn kr_reference_values() {
    assert!((cos_capital_theta(0.7, 1.1, 0.7, 1.1) - 1.0).abs() < 1e-15);
    assert!((cos_capital_theta(PI / 2.0, 0.0, PI / 2.0, PI) + 1.0).abs() < 1e-15);
    assert!(cos_capital_theta(0.0, 0.0, PI / 2.0, 0.3).abs() < 1e-15);

    let o = PhasePoint::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
    let paper = kr_hydrogen(&qn(1, 0, 0), H, &o, NormalizationConvention::PaperFigure);
    assert!((paper.re - (2.0 * PI.powi(3)).powf(-1.5)).abs() < 1e-17);
    let exact = kr_hydrogen(&qn(1, 0, 0), H, &o, NormalizationConvention::MarginalExact);
    assert!((exact.re - PI.powi(-3)).abs() < 1e-16);
    let sq = kr_abs_squared(&qn(1, 0, 0), H, &o, NormalizationConvention::PaperFigure);
    assert!((sq - (2.0 * PI.powi(3)).powf(-3.0)).abs() < 1e-19);

    for (r, p) in [(0.5, 0.1), (3.0, 2.0)] {
        let pt = PhasePoint::new(r, PI / 2.0, 0.3, p, PI / 2.0, 2.0).unwrap();
        assert!(kr_hydrogen(&qn(2, 1, 0), H, &pt, NormalizationConvention::PaperFigure).norm() < 1e-17);
    }
}

#[test]
fn closed_form_shapes() {
    for k in 0..20 {
        let t = k as f64;
        let pt = PhasePoint::new(0.1 + 0.4 * t, 0.2 + 0.13 * t, 0.3 * t, 0.05 + 0.2 * t, 2.9 - 0.12 * t, 0.7 * t).unwrap();
        let ratio = kr_hydrogen(&qn(1, 0, 0), H, &pt, NormalizationConvention::MarginalExact)
            / kr_closed_form(ClosedFormState::OneS, &pt);
        assert!((ratio - (2.0 * PI).powf(1.5)).norm() < 1e-12 * 15.75, "{ratio}");
    }
    let on_node = PhasePoint::new(2.0, 0.3, 0.0, 0.9, 1.0, 0.0).unwrap();
    assert!(kr_closed_form(ClosedFormState::TwoS, &on_node).norm() < 1e-18);
    let on_node = PhasePoint::new(1.0, 0.3, 0.0, 0.5, 1.0, 0.0).unwrap();
    assert!(kr_closed_form(ClosedFormState::TwoS, &on_node).norm() < 1e-18);
    let above = PhasePoint::new(1.0, PI / 2.0 - 0.3, 0.0, 0.3, 0.2, 0.0).unwrap();
    let below = PhasePoint::new(1.0, PI / 2.0 + 0.3, 0.0, 0.3, 0.2, 0.0).unwrap();
    let a = kr_closed_form(ClosedFormState::TwoP, &above);
    let b = kr_closed_form(ClosedFormState::TwoP, &below);
    assert!(a.re * b.re < 0.0);
}

#[test]
fn plane_wave_phase_on_aligned_slice() {
    let s = qn(1, 0, 0);
    for (r, p) in [(0.3, 0.2), (1.0, 1.7), (4.0, 2.5), (7.5, 0.9)] {
        let pt = PhasePoint::new(r, 1.0, 2.0, p, 1.0, 2.0).unwrap();
        let k = kr_hydrogen(&s, H, &pt, NormalizationConvention::PaperFigure);
        let env = kr_abs_squared(&s, H, &pt, NormalizationConvention::PaperFigure).sqrt();
        assert!((k.re / env - (r * p).cos()).abs() < 1e-10);
        assert!((k.im / env + (r * p).sin()).abs() < 1e-10);
    }
}

#[test]
fn standard_ordering_is_the_conjugate() {
    let s = qn(3, 2, 1);
    let x = coord(2.2, 0.8, 1.4);
    let p = coord(0.6, 2.1, 5.0);
    let k = kr_hydrogen(&s, H, &PhasePoint::from_coords(x, p), NormalizationConvention::MarginalExact);
    let x_dot_p = {
        let (a, b) = (x.direction().unit_vector(), p.direction().unit_vector());
        x.radius() * p.radius() * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
    };
    let standard = (2.0 * PI).powf(-1.5)
        * psi_position(&s, H, &x).conj()
        * ComplexValue::from_polar(1.0, x_dot_p)
        * psi_momentum(&s, H, &p);
    assert!((k.conj() - standard).norm() < 1e-15);
}

fn gaussian_table() -> TabulatedWavefunction1D {
    TabulatedWavefunction1D::from_fn(-12.0, 12.0, 961, |q| {
        ComplexValue::new(PI.powf(-0.25) * (-0.5 * q * q).exp(), 0.0)
    })
    .unwrap()
}

#[test]
fn one_dimensional_gaussian() {
    let psi = gaussian_table();
    assert!((kr_1d(&psi, 0.0, 0.0).unwrap().re - 1.0 / (PI * 2f64.sqrt())).abs() < 1e-6);
    assert!((wigner_1d(&psi, 0.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-6);
    for (q, p) in [(0.5, 1.0), (-1.2, 0.3)] {
        let w = wigner_1d(&psi, q, p).unwrap();
        assert!((w - (-q * q - p * p).exp() / PI).abs() < 1e-6);
        let a = kr_1d(&psi, q, p).unwrap();
        let b = kr_1d(&psi, q, -p).unwrap();
        assert!((a.re - b.re).abs() < 1e-12);
    }
    // ∬ W dq dp over grid nodes in q and Gauss-Legendre in p
    let rule = QuadratureRule::composite(16, -9.0, 9.0, 18);
    let dq = psi.spacing();
    let total: f64 = (0..psi.len())
        .step_by(4)
        .map(|j| rule.integrate(|p| wigner_1d(&psi, psi.abscissa(j), p).unwrap()) * 4.0 * dq)
        .sum();
    assert!((total - 1.0).abs() < 1e-6, "{total}");
}

#[test]
fn one_dimensional_hydrogen_slice() {
    // radial slice u(r) = r R_20(r) on [0, 60] treated as a 1-D state
    let s = qn(2, 0, 0);
    let psi = TabulatedWavefunction1D::from_fn(0.0, 60.0, 2401, |r| {
        ComplexValue::new(r * radial_position(&s, H, r), 0.0)
    })
    .unwrap();
    // the kink of u at r = 0 gives a 1/p² momentum tail, so the cut-off p range
    // leaves an O(1/P) remainder
    let rule = QuadratureRule::composite(16, -25.0, 25.0, 100);
    for &q in &[0.5, 2.0, 3.7, 8.0] {
        let k = rule.integrate(|p| kr_1d(&psi, q, p).unwrap().re);
        let density = (q * radial_position(&s, H, q)).powi(2);
        assert!((k - density).abs() < 1e-4, "q={q}: {k} vs {density}");
    }
}
