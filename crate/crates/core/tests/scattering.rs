mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;

use common::P_WAVE_POLE;
use num_complex::Complex64;
use tridiag_spectra::basis::PotentialParams;
use tridiag_spectra::resonances::{complex_spectrum, RotationConfig};
use tridiag_spectra::scattering::{
    locate_resonance, phase_shift, phase_shift_curve, phase_shift_with, radial_solution, regular_series,
    riccati_bessel, well, PhaseShiftConfig, PhaseShiftCurve,
};
use tridiag_spectra::Error;

fn p_wave() -> PotentialParams {
    PotentialParams::reduced(70.0, 0.4).unwrap()
}

fn p_wave_curve() -> &'static PhaseShiftCurve {
    static CURVE: OnceLock<PhaseShiftCurve> = OnceLock::new();
    CURVE.get_or_init(|| phase_shift_curve(&p_wave(), 1, (0.1, 8.0), 200).unwrap())
}

/// Phase at step `h` exactly, no halving loop.
fn delta_at_step(params: &PotentialParams, l: u32, eps: f64, h: f64) -> f64 {
    let config = PhaseShiftConfig {
        step: 2.0 * h,
        tolerance: f64::INFINITY,
        max_halvings: 0,
        ..Default::default()
    };
    phase_shift_with(params, l, eps, &config).unwrap().delta
}

/// First-order Born phase `(1/k) ∫ ĵ_ℓ(kρ)² W(ρ) dρ` by composite Simpson.
fn born_phase(params: &PotentialParams, l: u32, eps: f64) -> f64 {
    let k = eps.sqrt();
    let (reach, n) = (45.0, 400_000);
    let h = reach / n as f64;
    let g = |rho: f64| {
        if rho == 0.0 {
            return 0.0;
        }
        let j = riccati_bessel(l, k * rho).0;
        j * j * well(params, rho)
    };
    let mut s = g(0.0) + g(reach);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
    }
    s * h / 3.0 / k
}

#[test]
fn free_particle_has_no_phase() {
    let free = PotentialParams::reduced(0.0, 0.4).unwrap();
    for l in 0..4 {
        for eps in [0.3, 2.0, 17.0] {
            let d = phase_shift(&free, l, eps).unwrap();
            assert!(d.delta.abs() < 1e-10, "l={l} ε={eps}: {}", d.delta);
            assert_eq!(d.branch, 0);
        }
    }
}

#[test]
fn free_solution_is_the_riccati_bessel_function() {
    let free = PotentialParams::reduced(0.0, 0.4).unwrap();
    for l in 0..3 {
        let eps: f64 = 2.5;
        let k = eps.sqrt();
        let sol = radial_solution(&free, l, eps, 30.0, 1e-3).unwrap();
        let ratios: Vec<f64> = sol
            .points()
            .filter_map(|(rho, u)| {
                let j = riccati_bessel(l, k * rho).0;
                (j.abs() > 0.1).then_some(u / j)
            })
            .collect();
        let first = ratios[0];
        let spread = ratios.iter().map(|r| (r / first - 1.0).abs()).fold(0.0, f64::max);
        assert!(spread < 1e-8, "l={l}: {spread:e}");
    }
}

#[test]
fn regular_start() {
    for l in 0..4 {
        let (a, _) = regular_series(&p_wave(), l, 3.0, 1e-6).unwrap();
        let (b, _) = regular_series(&p_wave(), l, 3.0, 2e-6).unwrap();
        let expected = 2.0_f64.powi(l as i32 + 1);
        assert!((b / a / expected - 1.0).abs() < 1e-3, "l={l}");
        let sol = radial_solution(&p_wave(), l, 3.0, 40.0, 1e-3).unwrap();
        assert!((sol.u[0] / sol.rho(0).powi(l as i32 + 1) - 1.0).abs() < 1e-2);
    }
}

#[test]
fn step_halving_is_self_consistent() {
    let d = phase_shift(&p_wave(), 1, 3.0).unwrap();
    assert!(d.step_error < 1e-8);
    let fine = phase_shift_with(
        &p_wave(),
        1,
        3.0,
        &PhaseShiftConfig {
            step: d.step / 2.0,
            ..Default::default()
        },
    )
    .unwrap();
    assert!((fine.delta - d.delta).abs() < 1e-8, "{} vs {}", fine.delta, d.delta);
}

#[test]
fn numerov_is_fourth_order() {
    let reference = delta_at_step(&p_wave(), 1, 3.0, 1.25e-4);
    let errors: Vec<f64> = [0.004, 0.002, 0.001]
        .iter()
        .map(|&h| (delta_at_step(&p_wave(), 1, 3.0, h) - reference).abs())
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((12.0..20.0).contains(&ratio), "{errors:?} ratio {ratio}");
    }
}

#[test]
fn matching_radius_does_not_matter() {
    for l in [0, 1, 2] {
        for eps in [0.5, 2.0, 6.0] {
            let at = |rho: f64| {
                let config = PhaseShiftConfig {
                    rho_max: Some(rho),
                    ..Default::default()
                };
                phase_shift_with(&p_wave(), l, eps, &config).unwrap()
            };
            let (near, far) = (at(30.0), at(45.0));
            assert!((near.total - far.total).abs() < 1e-7, "l={l} ε={eps}");
        }
    }
}

#[test]
fn phase_does_not_depend_on_lambda() {
    let scaled = PotentialParams::new(3.0, 70.0, 0.4).unwrap();
    for eps in [0.7, 4.0] {
        let a = phase_shift(&p_wave(), 1, eps).unwrap();
        let b = phase_shift(&scaled, 1, eps).unwrap();
        assert!((a.total - b.total).abs() < 1e-12);
    }
}

#[test]
fn threshold_phase_counts_bound_states() {
    for l in [0, 1] {
        let params = p_wave();
        let bound = complex_spectrum(&params, &RotationConfig::for_potential(&params, l))
            .unwrap()
            .bound()
            .len();
        let d = phase_shift(&params, l, 0.01).unwrap();
        assert_eq!((d.total / PI).round() as usize, bound, "l={l}: {}", d.total);
    }
}

#[test]
fn phase_jumps_through_the_resonance() {
    let below = phase_shift(&p_wave(), 1, 3.98).unwrap().total;
    let above = phase_shift(&p_wave(), 1, 4.09).unwrap().total;
    assert!(above - below > 0.75 * PI, "{below} -> {above}");
}

#[test]
fn weak_coupling_matches_born() {
    let mut previous = f64::INFINITY;
    for c in [0.2, 0.1, 0.05] {
        let params = PotentialParams::reduced(c, 0.4).unwrap();
        let exact = phase_shift(&params, 1, 2.0).unwrap().total;
        let born = born_phase(&params, 1, 2.0);
        let rel = (exact - born).abs() / born.abs();
        assert!(rel < c, "C={c}: {exact} vs {born}");
        // second-order corrections shrink with the coupling
        assert!(rel < 0.6 * previous, "C={c}: {rel} after {previous}");
        previous = rel;
    }
}

#[test]
fn high_energy_tail_approaches_born() {
    let gaps: Vec<f64> = [50.0, 200.0, 800.0]
        .iter()
        .map(|&eps| {
            let exact = phase_shift(&p_wave(), 1, eps).unwrap().total;
            let born = born_phase(&p_wave(), 1, eps);
            (exact - born).abs() / born.abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn curve_is_continuous() {
    let curve = p_wave_curve();
    assert!(curve.len() >= 200);
    assert!(curve.max_jump() < PI / 2.0, "{}", curve.max_jump());
    assert!(curve.samples().windows(2).all(|w| w[1].energy > w[0].energy));
}

#[test]
fn resonance_fit_matches_the_pole() {
    let fit = locate_resonance(p_wave_curve()).unwrap();
    assert!((fit.energy - 4.03).abs() < 0.02, "{}", fit.energy);
    assert!((fit.width - 0.029).abs() < 0.01, "{}", fit.width);
    let (re, im) = P_WAVE_POLE;
    assert!((fit.energy - re).abs() < 1e-2);
    assert!((fit.width - 2.0 * im.abs()).abs() < 0.3 * 2.0 * im.abs());

    // rise of about π over ±5Γ once the background is removed
    let (lo, hi) = (fit.energy - 5.0 * fit.width, fit.energy + 5.0 * fit.width);
    let rise = fit.resonant_phase(hi) - fit.resonant_phase(lo);
    assert!((rise - PI).abs() < 0.25, "{rise}");

    let params = p_wave();
    let pole = complex_spectrum(&params, &RotationConfig::for_potential(&params, 1))
        .unwrap()
        .nearest(Complex64::new(re, im))
        .unwrap()
        .energy;
    assert!((pole.re - fit.energy).abs() < 0.02, "{pole}");
    assert!((-2.0 * pole.im - fit.width).abs() < 0.01, "{pole}");
}

#[test]
fn flat_curve_has_no_resonance() {
    let free = PotentialParams::reduced(0.0, 0.4).unwrap();
    let curve = phase_shift_curve(&free, 1, (0.5, 8.0), 40).unwrap();
    assert!(matches!(locate_resonance(&curve), Err(Error::NoResonance(_))));
}

#[test]
fn invalid_requests() {
    assert!(matches!(phase_shift(&p_wave(), 1, 0.0), Err(Error::EnergyDomain { .. })));
    let short = PhaseShiftConfig {
        rho_max: Some(8.0),
        ..Default::default()
    };
    assert!(matches!(
        phase_shift_with(&p_wave(), 1, 3.0, &short),
        Err(Error::MatchingRange { .. })
    ));
    assert!(matches!(
        radial_solution(&p_wave(), 1, 200.0, 30.0, 0.5),
        Err(Error::Accuracy { .. })
    ));
}
