use std::f64::consts::{FRAC_PI_4, PI};

use catfpi::contour::Contour;
use catfpi::fpi::{
    fock_oracle_amplitude, free_gaussian_evolved, gaussian_wavefunction, multi_slice_amplitude, p_contour, p_gaussian_integral,
    propagate_step, round_trip, saddle_point_p, saddle_point_q, xi_filter_profile, xi_line, PotentialSpec,
    TheorySpec, WaveFunction,
};
use catfpi::xi::XiBasisSpec;
use catfpi::{Complex64 as C, Error};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn fresnel_integral_has_minus_quarter_pi_phase() {
    // (1/2 pi) int exp(i dt (p qdot - p^2/2)) dp with dt = 0.1, qdot = 0.5
    // equals sqrt(20 pi) e^{-i pi/4} e^{0.0125 i} / (2 pi).
    let ts = TheorySpec::new(1.0, c(1.0, 0.0), 0.1, PotentialSpec::free()).unwrap();
    let qdot = c(0.5, 0.0);
    let expected = C::from_polar((20.0 * PI).sqrt() / (2.0 * PI), -FRAC_PI_4 + 0.0125);
    let r = p_gaussian_integral(&ts, qdot, c(0.0, 0.0), &p_contour(&ts, qdot, 400).unwrap()).unwrap();
    assert!((r.numeric - expected).norm() < 1e-12 * expected.norm(), "{} vs {expected}", r.numeric);
    assert!((r.closed_form - expected).norm() < 1e-14);
}

#[test]
fn momentum_saddle_sits_at_m_qdot() {
    let ts = TheorySpec::new(1.0, c(0.8, 1.3), 0.05, PotentialSpec::quadratic(c(0.3, 0.1))).unwrap();
    let s = saddle_point_p(&ts, c(-0.4, 0.9)).unwrap();
    assert_eq!(s.p, c(0.8, 1.3) * c(-0.4, 0.9));
    assert!((s.newton - s.p).norm() < 1e-12);
    assert!(s.gradient_residual < 1e-12);
}

#[test]
fn free_position_saddle_matches_closed_form() {
    // q = q_next - p dt / m.
    let (m, p, q_next, dt) = (c(1.0, 0.4), c(0.3, 0.0), c(1.0, 0.0), 0.01);
    let ts = TheorySpec::new(1.0, m, dt, PotentialSpec::free()).unwrap();
    let s = saddle_point_q(&ts, p, p, q_next).unwrap();
    let expected = q_next - p * dt / m;
    assert!((s.q_formula - expected).norm() < 1e-15);
    assert!((s.q_numeric - expected).norm() < 1e-12);
}

#[test]
fn numeric_position_saddle_misses_momentum_by_dt_times_force() {
    let b2 = 0.05;
    for dt in [0.02, 0.01, 0.005] {
        let ts = TheorySpec::new(1.0, c(1.0, 0.0), dt, PotentialSpec::quadratic(c(b2, 0.0))).unwrap();
        let s = saddle_point_q(&ts, c(0.3, 0.0), c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        let force = dt * 2.0 * b2 * s.q_numeric.norm();
        assert!((s.momentum_residual_numeric - force).abs() < 1e-6 * force, "dt = {dt}");
        assert!(s.momentum_residual_formula < 1e-12);
    }
}

#[test]
fn round_trip_recovers_quartic_coefficients() {
    let pot = PotentialSpec::new(&[(2, c(0.5, 0.0)), (4, c(0.1, 0.02))]).unwrap();
    let ts = TheorySpec::new(1.0, c(1.0, 0.2), 0.1, pot).unwrap();
    let samples: Vec<(C, C)> = (0..15)
        .map(|k| (c(0.15 * (k % 5) as f64 - 0.3, 0.03), c(0.4 - 0.3 * (k / 5) as f64, -0.05)))
        .collect();
    let rt = round_trip(&ts, &samples).unwrap();
    assert!((rt.kinetic - c(0.5, 0.1)).norm() < 1e-9);
    assert_eq!(rt.potential.len(), 3);
    assert!((rt.potential[2].1 - c(0.1, 0.02)).norm() < 1e-8);
    assert!(rt.max_coefficient_error < 1e-8);
}

#[test]
fn round_trip_rejects_degenerate_samples() {
    let ts = TheorySpec::new(1.0, c(1.0, 0.0), 0.1, PotentialSpec::quadratic(c(0.5, 0.0))).unwrap();
    let line: Vec<(C, C)> = (0..8).map(|k| (c(0.1 * k as f64, 0.0), c(0.2 * k as f64, 0.0))).collect();
    assert!(matches!(round_trip(&ts, &line), Err(Error::Construction(_))));
    assert!(round_trip(&ts, &line[..3]).is_err());
}

#[test]
fn free_filter_profile_matches_closed_form() {
    // I(xi) = C_A sqrt(pi/eta) exp[(C1^2/eta - C1) (xi - q_t)^2] for real q_t.
    let eta = 0.1;
    for m in [c(1.0, 0.0), c(1.0, 0.5), c(0.0, 1.0)] {
        let ts = TheorySpec::new(1.0, m, 0.01, PotentialSpec::free()).unwrap();
        let basis = XiBasisSpec::new(m, 0.01, 1.0).unwrap();
        let (c1, q_t) = (basis.c1(), c(0.3, 0.0));
        let grid = xi_line(&ts, q_t, 0.02, 41);
        let prof = xi_filter_profile(&ts, &grid, q_t, eta).unwrap();
        let peak = basis.c_a().norm() * (PI / eta).sqrt();
        for (xi, v) in grid.iter().zip(&prof.values) {
            let s = xi - q_t;
            let want = basis.c_a() * (PI / eta).sqrt() * ((c1 * c1 / eta - c1) * s * s).exp();
            assert!((v - want).norm() < 1e-9 * peak, "m = {m}, xi = {xi}: {v} vs {want}");
        }
    }
}

#[test]
fn free_filter_half_width_at_real_mass() {
    // |I| falls as exp(-s^2 / (4 eta hbar^2 dt^2)), so the half-maximum sits at
    // s = 2 hbar dt sqrt(eta ln 2).
    let ts = TheorySpec::new(1.0, c(1.0, 0.0), 0.01, PotentialSpec::free()).unwrap();
    let grid = xi_line(&ts, c(0.3, 0.0), 0.01, 2001);
    let prof = xi_filter_profile(&ts, &grid, c(0.3, 0.0), 0.1).unwrap();
    let expected = 2.0 * 0.01 * (0.1 * 2f64.ln()).sqrt();
    assert!((prof.half_width - expected).abs() <= prof.grid_step());
    assert!((prof.peak_xi() - c(0.3, 0.0)).norm() < 1e-12);
}

#[test]
fn euclidean_step_is_heat_kernel_convolution() {
    let (q0, sigma, m) = (c(0.2, 0.0), 0.5, c(0.0, 1.0));
    let ts = TheorySpec::new(1.0, m, 0.01, PotentialSpec::free()).unwrap();
    let line = Contour::real_line(8.0, 1601).unwrap();
    let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(q0, sigma, m, 1.0, 0.0)).unwrap();
    let out = propagate_step(&ts, &psi).unwrap();
    // At m = i the evolved width is sigma^2 + hbar dt, with the amplitude
    // shrinking by sigma / sqrt(sigma^2 + hbar dt).
    let s2 = sigma * sigma + 0.01;
    for (&q, v) in out.contour().nodes().iter().zip(out.values()).step_by(40) {
        let exact = (sigma * sigma / s2).sqrt() * (-(q - q0) * (q - q0) / (2.0 * s2)).exp();
        assert!((v - exact).norm() < 1e-10, "q = {q}");
    }
}

#[test]
fn real_time_step_on_tilted_contour() {
    let (q0, sigma, m) = (c(0.2, 0.0), 0.5, c(1.0, 0.0));
    let ts = TheorySpec::new(1.0, m, 0.01, PotentialSpec::free()).unwrap();
    let line = Contour::line(20f64.to_radians(), c(0.0, 0.0), 8.0, 1601).unwrap();
    let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(q0, sigma, m, 1.0, 0.0)).unwrap();
    let out = propagate_step(&ts, &psi).unwrap();
    let exact = free_gaussian_evolved(q0, sigma, m, 1.0, 0.01);
    let worst = out
        .contour()
        .nodes()
        .iter()
        .zip(out.values())
        .map(|(&q, v)| (v - exact(q)).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-10, "{worst}");
}

#[test]
fn free_amplitude_is_independent_of_slicing() {
    // Free Gaussian kernels compose exactly, so the slice count only moves
    // rounding; the truncated-Fock exponential agrees to the same level.
    let (li, lf) = (c(0.5, 0.2), c(0.45, 0.25));
    let line = Contour::line(20f64.to_radians(), c(0.0, 0.0), 8.0, 801).unwrap();
    let psi_i = WaveFunction::from_analytic(line.clone(), gaussian_wavefunction(1.0, li)).unwrap();
    let psi_f = WaveFunction::from_analytic(line, gaussian_wavefunction(1.0, lf)).unwrap();
    let ts = |slices| TheorySpec::over_interval(1.0, c(1.0, 0.0), 0.0, 0.05, slices, PotentialSpec::free()).unwrap();
    let (a2, a5) = (
        multi_slice_amplitude(&ts(2), &psi_i, &psi_f).unwrap(),
        multi_slice_amplitude(&ts(5), &psi_i, &psi_f).unwrap(),
    );
    assert!((a2 - a5).norm() < 1e-10);
    let oracle = fock_oracle_amplitude(&ts(5), li, lf, 256).unwrap();
    assert!((a5 - oracle.amplitude).norm() < 1e-10 * oracle.amplitude.norm());
    assert!(oracle.tail_weight < 1e-12);
}
