use std::f64::consts::PI;

use catfpi::contour::QuadratureRule;
use catfpi::fock::{new_operators, overlap_qp, overlap_qp_closed_form, overlap_qp_target, FockConstruction};
use catfpi::xi::{
    annihilator_residual, pair_integral, pair_integral_closed_form, regulated_line, AnnihilatorFlavor, XiBasisSpec,
};
use catfpi::Complex64 as C;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn truncated_commutator_is_i_hbar_except_last_entry() {
    for (n, hbar) in [(8, 1.0), (16, 0.5), (40, 2.0)] {
        let fc = FockConstruction::new(n, hbar, 100.0, 0.01).unwrap();
        let (q, p) = new_operators(&fc).unwrap();
        let k = q.commutator(&p).entries;
        for i in 0..n {
            for j in 0..n {
                let want = match (i == j, i == n - 1) {
                    (true, false) => c(0.0, hbar),
                    (true, true) => c(0.0, hbar * (1.0 - n as f64)),
                    _ => c(0.0, 0.0),
                };
                assert!((k[(i, j)] - want).norm() < 1e-10 * n as f64, "N = {n} ({i}, {j})");
            }
        }
    }
}

#[test]
fn truncated_overlap_converges_to_gaussian_closed_form() {
    let fc = FockConstruction::default();
    for (q, p) in [(0.0, 0.0), (0.5, -0.3), (-0.25, 0.5)] {
        let (q, p) = (c(q, 0.0), c(p, 0.0));
        let closed = overlap_qp_closed_form(&fc, q, p);
        let o = overlap_qp(&fc, q, p).unwrap();
        assert!((o - closed).norm() < 1e-10 * closed.norm(), "({q}, {p}): {o} vs {closed}");
    }
}

#[test]
fn overlap_approaches_plane_wave_as_m_omega_grows() {
    let (q, p) = (c(0.5, 0.0), c(0.3, 0.0));
    let dev2 = |mw: f64, mpwp: f64| {
        let fc = FockConstruction { m_omega: mw, mp_omegap: mpwp, ..FockConstruction::default() };
        let t = overlap_qp_target(&fc, q, p);
        (overlap_qp_closed_form(&fc, q, p) - t).norm() / t.norm()
    };
    let d: Vec<f64> = [25.0, 100.0, 400.0, 1600.0].map(|mw| dev2(mw, 0.01)).to_vec();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    // What remains at large m omega is set by m' omega'.
    let floor: Vec<f64> = [0.01, 0.0025, 0.000625].map(|x| dev2(1600.0, x)).to_vec();
    assert!(floor.windows(2).all(|w| w[1] < w[0]), "{floor:?}");
}

#[test]
fn xi_normalisation_product() {
    for m in [c(1.0, 0.0), c(1.0, 0.5), c(0.3, 2.0)] {
        let spec = XiBasisSpec::new(m, 0.02, 0.7).unwrap();
        let want = m / (2.0 * PI * 0.7 * 0.02);
        assert!((spec.c_b().conj() * spec.c_a() - want).norm() < 1e-13 * want.norm());
        assert_eq!(spec.c1(), C::i() * m / (2.0 * 0.7 * 0.02));
    }
}

#[test]
fn literal_hamiltonian_annihilator_misses_by_hbar_over_two_dt() {
    let grid: Vec<C> = (0..=8).map(|k| c(-0.4 + 0.1 * k as f64, 0.0)).collect();
    for dt in [0.01, 0.02] {
        let spec = XiBasisSpec::new(c(1.0, 0.0), dt, 1.0).unwrap();
        let s = spec.state(c(0.1, 0.0));
        let literal = annihilator_residual(&s, AnnihilatorFlavor::Hamiltonian, &grid, 1e-4).unwrap();
        assert!((literal - 1.0 / (2.0 * dt)).abs() < 1e-6 / dt, "dt = {dt}: {literal}");
        let ordered = annihilator_residual(&s, AnnihilatorFlavor::Ordered, &grid, 1e-4).unwrap();
        assert!(ordered < 1e-5);
    }
}

#[test]
fn complex_mass_pair_integral_matches_closed_form() {
    let spec = XiBasisSpec::new(c(1.0, 0.5), 0.01, 1.0).unwrap();
    let eta = 1e-2;
    for (xi, xp) in [(c(0.0, 0.0), c(0.0, 0.0)), (c(0.1, 0.0), c(0.102, 0.0)), (c(0.0, 0.0), c(0.003, 0.001))] {
        let k = spec.m * (xp - xi) / (spec.hbar * spec.dt);
        let line = regulated_line(eta, k.im, (k.norm() / PI).max(1.0) * 2.0).unwrap();
        let num = pair_integral(&spec, xi, xp, eta, &line, &QuadratureRule::gauss(8)).unwrap();
        let closed = pair_integral_closed_form(&spec, xi, xp, eta);
        let scale = pair_integral_closed_form(&spec, xi, xi, eta).norm();
        assert!((num - closed).norm() < 1e-9 * scale, "{xi} -> {xp}: {num} vs {closed}");
    }
}
