use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Profile, Report, Verdict};
use super::ExperimentConfig;
use crate::conjugation::{mod_conjugate, parse, sandwich_identity_check, ComponentVector};
use crate::contour::{make_tilted_line, validate, Contour, QuadratureRule};
use crate::delta::{delta_eps, in_domain, sift, sift_certificate, sift_derivative, EPSILON_SWEEP};
use crate::error::Result;
use crate::fock::{
    completeness_residual, derivative_relation_residual, hermitian_split, new_operators, orthogonality_check,
    overlap_qp, overlap_qp_target, position_eigen_residual, unit_oscillator_state, FockConstruction,
    OperatorMatrix,
};
use crate::fpi::{
    delta_expansion, effective_hamiltonian_check, fock_oracle_amplitude, free_gaussian_evolved,
    gaussian_moment_exact, gaussian_moment_numeric, gaussian_wavefunction, multi_slice_amplitude, p_contour,
    p_gaussian_integral, propagate_step, round_trip, saddle_point_p, saddle_point_q, xi_filter_profile, xi_line,
    PotentialSpec, TheorySpec, WaveFunction,
};
use crate::xi::{
    annihilator_residual, biorthogonality_check, degeneration_check, eigenvalue_identity_residual, sift_test,
    AnnihilatorFlavor, XiBasisSpec,
};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn max(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a: f64, b| if b.is_nan() { b } else { a.max(b) })
}

fn min(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::INFINITY, |a: f64, b| if b.is_nan() { b } else { a.min(b) })
}

/// Wall-clock laps, recorded only when timings are enabled.
struct Laps {
    enabled: bool,
    last: Instant,
    laps: Vec<(String, f64)>,
}

impl Laps {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            last: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.laps.push((name.to_string(), (now - self.last).as_secs_f64()));
        self.last = now;
    }

    fn finish(self, r: &mut Report) {
        if self.enabled {
            r.runtimes = Some(self.laps);
        }
    }
}

fn theory(cfg: &ExperimentConfig, m: C, dt: f64, potential: PotentialSpec) -> Result<TheorySpec> {
    let hbar = cfg.params.f64_or("theory", "hbar", 1.0)?;
    TheorySpec::new(hbar, m, dt, potential)
}

pub(super) fn delta(cfg: &ExperimentConfig) -> Result<Report> {
    let p = &cfg.params;
    let tol = &cfg.tolerances;
    let mut r = Report::new("delta");
    let mut laps = Laps::new(cfg.timings);
    let eps = p.f64_or("delta", "epsilon", 1e-5)?;
    let points = p.complex_list_or("delta", "points", &[c(0.0, 0.0), c(2.0, 0.0), c(0.3, 0.1)])?;
    let tilt = p.f64_or("delta", "tilt_deg", 15.0)?.to_radians();

    type Case = (&'static str, fn(C) -> C, fn(C) -> C);
    let cases: [Case; 5] = [
        ("1", |_| c(1.0, 0.0), |_| c(0.0, 0.0)),
        ("q", |q| q, |_| c(0.0, 0.0)),
        ("q^2", |q| q * q, |_| c(2.0, 0.0)),
        ("q^3+q", |q| q * q * q + q, |q| q * 6.0),
        ("exp(q)", |q| q.exp(), |q| q.exp()),
    ];
    let mut worst_err: f64 = 0.0;
    let mut ratios = Vec::new();
    let mut rows = Vec::new();
    for &a in &points {
        let angle = if a.im == 0.0 { 0.0 } else { tilt };
        let line = make_tilted_line(angle, a, 10.0, 201)?;
        for (name, f, _) in &cases {
            let v = sift(f, a, &line, eps)?;
            let err = (v - f(a)).norm();
            worst_err = worst_err.max(err);
            r.result(format!("sift_error[{name}@{a}]"), err);
            let cert = sift_certificate(f, a, &line, f(a), &EPSILON_SWEEP)?;
            for (e, ratio) in cert.epsilons.iter().zip(&cert.halving_ratios) {
                if let Some(x) = ratio {
                    ratios.push(*x);
                    rows.push(vec![a.re, a.im, *e, *x]);
                }
            }
        }
    }
    r.profiles.push(Profile {
        name: "halving_ratios".into(),
        columns: vec!["a_re".into(), "a_im".into(), "epsilon".into(), "ratio".into()],
        rows,
    });
    r.verdict(Verdict::at_most("sift_accuracy", worst_err, tol.get("delta.sift_abs")));
    r.verdict(Verdict::within(
        "linear_convergence_min_ratio",
        min(ratios.iter().copied()),
        tol.get("delta.ratio_min"),
        tol.get("delta.ratio_max"),
    ));
    r.verdict(Verdict::within(
        "linear_convergence_max_ratio",
        max(ratios.iter().copied()),
        tol.get("delta.ratio_min"),
        tol.get("delta.ratio_max"),
    ));
    laps.lap("sifting");

    let even = [c(0.3, 0.1), c(1.0, 0.5), c(-2.0, 0.7), c(0.0, 0.0)]
        .iter()
        .all(|&q| delta_eps(q, 0.01).map(|d| d.value).ok() == delta_eps(-q, 0.01).map(|d| d.value).ok());
    r.verdict(Verdict::holds("evenness", even));

    let a = c(0.3, 0.1);
    let flat = make_tilted_line(0.0, a, 10.0, 201)?;
    let tilted = make_tilted_line(tilt, a, 10.0, 201)?;
    let (s1, s2) = (sift(|q| q.exp(), a, &flat, 1e-3)?, sift(|q| q.exp(), a, &tilted, 1e-3)?);
    r.verdict(Verdict::at_most(
        "contour_independence",
        (s1 - s2).norm() / (1.0 + s1.norm()),
        tol.get("delta.contour_agreement"),
    ));

    // f = q^6 + q^3: (-1)^n f^(n)(a) for n = 1..4.
    let f = |q: C| q.powu(6) + q.powu(3);
    let derivs = [
        |q: C| q.powu(5) * 6.0 + q * q * 3.0,
        |q: C| q.powu(4) * 30.0 + q * 6.0,
        |q: C| q.powu(3) * 120.0 + 6.0,
        |q: C| q * q * 360.0,
    ];
    let deriv_eps = p.f64_or("delta", "derivative_epsilon", 1e-6)?;
    let mut worst_deriv: f64 = 0.0;
    let mut deriv_ratios = Vec::new();
    for (k, d) in derivs.iter().enumerate() {
        let n = k + 1;
        let want = d(a) * if n % 2 == 0 { 1.0 } else { -1.0 };
        let rel = |eps: f64| sift_derivative(f, a, &tilted, eps, n).map(|v| (v - want).norm() / want.norm());
        let err = rel(deriv_eps)?;
        r.result(format!("derivative_sift_rel[n={n}]"), err);
        worst_deriv = worst_deriv.max(err);
        deriv_ratios.push(rel(1e-4)? / rel(5e-5)?);
    }
    r.verdict(Verdict::at_most("derivative_sifting", worst_deriv, tol.get("delta.derivative_rel")));
    r.verdict(Verdict::within(
        "derivative_convergence",
        min(deriv_ratios.iter().copied()),
        tol.get("delta.ratio_min"),
        tol.get("delta.ratio_max"),
    ));
    laps.lap("properties");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn delta_domain(cfg: &ExperimentConfig) -> Result<Report> {
    let extent = cfg.params.f64_or("domain", "extent", 1.0)?;
    let n = cfg.params.usize_or("domain", "n", 200)?;
    let mut r = Report::new("delta-domain");
    let mut laps = Laps::new(cfg.timings);
    let h = 2.0 * extent / n as f64;
    let mut inside = 0usize;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let q = c(-extent + (i as f64 + 0.5) * h, -extent + (j as f64 + 0.5) * h);
            let ok = in_domain(q);
            inside += ok as usize;
            if i % 10 == 0 && j % 10 == 0 {
                rows.push(vec![q.re, q.im, ok as u8 as f64]);
            }
        }
    }
    let fraction = inside as f64 / (n * n) as f64;
    r.result("grid_points", n * n);
    r.result("in_domain_fraction", fraction);
    r.result("analytic_fraction", 0.5);
    r.profiles.push(Profile {
        name: "domain_mask".into(),
        columns: vec!["re".into(), "im".into(), "in_domain".into()],
        rows,
    });
    r.verdict(Verdict::at_most(
        "wedge_area",
        (fraction - 0.5).abs(),
        cfg.tolerances.get("delta.domain_fraction"),
    ));
    laps.lap("grid");
    laps.finish(&mut r);
    Ok(r)
}

fn random_expression(rng: &mut ChaCha8Rng) -> String {
    let mut terms = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let mut factors = vec![format!(
            "(c {} {})",
            rng.random_range(-3..=3),
            rng.random_range(-3..=3)
        )];
        for name in ["q", "p", "a"] {
            let k = rng.random_range(0..=2);
            if k > 0 {
                factors.push(format!("(^ {name} {k})"));
            }
        }
        if rng.random_bool(0.3) {
            factors.push("(conj p)".into());
        }
        if rng.random_bool(0.4) {
            factors.push(format!(
                "(exp (* (c {} {}) (^ q 2)))",
                rng.random_range(-2..=2),
                rng.random_range(-2..=2)
            ));
        }
        terms.push(format!("(* {})", factors.join(" ")));
    }
    format!("(+ {})", terms.join(" "))
}

fn gaussian_ket(name: &str, coef: &str) -> Result<ComponentVector> {
    let g = format!("(exp (* (c -0.5 0) (^ {name} 2)))");
    Ok(ComponentVector::new(vec![
        parse(&g, &[name])?,
        parse(&format!("(* {coef} {name} {g})"), &[name])?,
        parse(&format!("(* (/ (^ {name} 2) (sqrt 2)) {g})"), &[name])?,
    ]))
}

pub(super) fn conjugate(cfg: &ExperimentConfig) -> Result<Report> {
    let count = cfg.params.usize_or("conjugate", "expressions", 100)?;
    let n_samples = cfg.params.usize_or("conjugate", "samples", 10)?;
    let tol = cfg.tolerances.get("conjugate.sample");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut r = Report::new("conjugate");
    let mut laps = Laps::new(cfg.timings);

    let f = parse("(+ (* a (^ q 2)) (* b (^ p 2)))", &["q", "p"])?;
    let expected: [(&[&str], &str); 4] = [
        (&[], "(+ (* (conj a) (^ (conj q) 2)) (* (conj b) (^ (conj p) 2)))"),
        (&["q"], "(+ (* (conj a) (^ q 2)) (* (conj b) (^ (conj p) 2)))"),
        (&["p"], "(+ (* (conj a) (^ (conj q) 2)) (* (conj b) (^ p 2)))"),
        (&["q", "p"], "(+ (* (conj a) (^ q 2)) (* (conj b) (^ p 2)))"),
    ];
    let mut examples_ok = true;
    for (a, want) in expected {
        let got = mod_conjugate(&f, a)?;
        r.result(format!("example[{}]", a.join(",")), got.to_string());
        examples_ok &= got == parse(want, &["q", "p"])?;
    }
    r.verdict(Verdict::holds("reference_examples", examples_ok));

    let subsets: [&[&str]; 4] = [&[], &["q"], &["p"], &["q", "p"]];
    let (mut involution, mut product, mut sum, mut reduction) = (0, 0, 0, 0);
    for _ in 0..count {
        let fs = random_expression(&mut rng);
        let gs = random_expression(&mut rng);
        let (f, g) = (parse(&fs, &["q", "p"])?, parse(&gs, &["q", "p"])?);
        let a = subsets[rng.random_range(0..4)];
        let fa = mod_conjugate(&f, a)?;
        involution += (mod_conjugate(&fa, a)? == f) as usize;
        let ga = mod_conjugate(&g, a)?;
        product += (mod_conjugate(&(&f * &g), a)? == &fa * &ga) as usize;
        sum += (mod_conjugate(&(&f + &g), a)? == &fa + &ga) as usize;
        let vals = [
            ("q", c(rng.random_range(-1.0..1.0), 0.0)),
            ("p", c(rng.random_range(-1.0..1.0), 0.0)),
            ("a", c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
        ];
        let (lhs, rhs) = (fa.eval(&vals)?, f.eval(&vals)?.conj());
        reduction += ((lhs - rhs).norm() <= tol * (1.0 + rhs.norm())) as usize;
    }
    r.result("random_expressions", count);
    r.verdict(Verdict::holds("involution", involution == count));
    r.verdict(Verdict::holds("homomorphism", product == count && sum == count));
    r.verdict(Verdict::holds("real_reduction", reduction == count));
    laps.lap("algebra");

    let u = gaussian_ket("u", "(c 1 1)")?;
    let v = gaussian_ket("v", "(c 0.5 -2)")?;
    let m = DMatrix::from_fn(3, 3, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let samples: Vec<Vec<(&str, C)>> = (0..n_samples)
        .map(|_| {
            vec![
                ("u", c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
                ("v", c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
            ]
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (label, a) in [("none", &[][..]), ("u", &["u"][..]), ("v", &["v"][..]), ("uv", &["u", "v"][..])] {
        let rep = sandwich_identity_check(&u, &v, &m, a, &samples)?;
        r.result(format!("sandwich_discrepancy[{label}]"), rep.max_discrepancy);
        r.result(format!("sandwich_symbolic_residual[{label}]"), rep.max_symbolic_residual);
        worst = worst.max(rep.max_discrepancy);
    }
    r.verdict(Verdict::at_most("sandwich_identities", worst, tol));
    laps.lap("sandwich");
    laps.finish(&mut r);
    Ok(r)
}

fn fock_construction(cfg: &ExperimentConfig, default_n: usize) -> Result<FockConstruction> {
    let p = &cfg.params;
    FockConstruction::new(
        p.usize_or("fock", "n", default_n)?,
        p.f64_or("fock", "hbar", 1.0)?,
        p.f64_or("fock", "m_omega", 100.0)?,
        p.f64_or("fock", "mp_omegap", 0.01)?,
    )
}

pub(super) fn commutator(cfg: &ExperimentConfig) -> Result<Report> {
    let fc = fock_construction(cfg, 64)?;
    let mut r = Report::new("commutator");
    let mut laps = Laps::new(cfg.timings);
    let (qn, pn) = new_operators(&fc)?;
    let comm = qn.commutator(&pn).entries;
    let n = fc.n;
    let ih = c(0.0, fc.hbar);
    let mut interior: f64 = 0.0;
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let want = if i == j { ih } else { c(0.0, 0.0) };
            interior = interior.max((comm[(i, j)] - want).norm());
        }
    }
    let last_want = ih * (1.0 - n as f64);
    let last = (comm[(n - 1, n - 1)] - last_want).norm();
    r.result("n", n);
    r.result("last_diagonal", comm[(n - 1, n - 1)]);
    r.verdict(Verdict::at_most("interior_block", interior, cfg.tolerances.get("fock.commutator_interior")));
    r.verdict(Verdict::at_most("last_diagonal", last, cfg.tolerances.get("fock.commutator_last")));
    let anti = (&qn.entries - &qn.entries.adjoint()).norm();
    r.result("q_new_antihermitian_norm", anti);
    r.verdict(Verdict::holds("q_new_non_hermitian", anti > 0.0));
    laps.lap("commutator");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn fock(cfg: &ExperimentConfig) -> Result<Report> {
    let fc = fock_construction(cfg, 512)?;
    let tol = &cfg.tolerances;
    let mut r = Report::new("fock");
    let mut laps = Laps::new(cfg.timings);

    let qs = [c(0.0, 0.0), c(0.5, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.3, 0.4), c(-0.6, -0.5)];
    let eig = max(qs.iter().map(|&q| position_eigen_residual(&fc, q)).collect::<Result<Vec<_>>>()?);
    r.verdict(Verdict::at_most("eigen_residual", eig, tol.get("fock.eigen_residual")));
    let (plain, corrected) = derivative_relation_residual(&fc, c(0.5, 0.0), 1e-4)?;
    r.result("derivative_relation_plain", plain);
    r.verdict(Verdict::at_most(
        "derivative_relation",
        corrected,
        tol.get("fock.derivative_relation"),
    ));
    laps.lap("eigenstates");

    let grid = [-0.5, -0.25, 0.0, 0.25, 0.5];
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for &q in &grid {
        for &p in &grid {
            let (q, p) = (c(q, 0.0), c(p, 0.0));
            let o = overlap_qp(&fc, q, p)?;
            let t = overlap_qp_target(&fc, q, p);
            let rel = (o - t).norm() / t.norm();
            rows.push(vec![q.re, p.re, o.re, o.im, rel]);
            worst = worst.max(rel);
        }
    }
    r.profiles.push(Profile {
        name: "overlap".into(),
        columns: ["q", "p", "re", "im", "rel_dev"].map(String::from).to_vec(),
        rows,
    });
    r.verdict(Verdict::at_most("fourier_overlap", worst, tol.get("fock.overlap_rel")));
    let devs: Vec<f64> = [25.0, 100.0, 400.0]
        .iter()
        .map(|&mw| {
            let f = FockConstruction { m_omega: mw, ..fc };
            let (q, p) = (c(0.5, 0.0), c(0.3, 0.0));
            let t = overlap_qp_target(&f, q, p);
            overlap_qp(&f, q, p).map(|o| (o - t).norm() / t.norm())
        })
        .collect::<Result<_>>()?;
    for (mw, d) in [25, 100, 400].iter().zip(&devs) {
        r.result(format!("overlap_deviation[m_omega={mw}]"), *d);
    }
    r.verdict(Verdict::holds("overlap_monotone", devs[0] > devs[1] && devs[1] > devs[2]));
    laps.lap("overlap");

    let q = c(0.5, 0.0);
    let peak = orthogonality_check(&fc, q, q)?;
    let real = orthogonality_check(&fc, q, q + 0.5)?;
    let tilted = orthogonality_check(&fc, q, q + c(0.3, 0.15))?;
    r.verdict(Verdict::at_most("orthogonality_peak", peak.rel_error, tol.get("fock.orthogonality_peak")));
    r.verdict(Verdict::at_most("orthogonality_real", real.rel_error, tol.get("fock.orthogonality_real")));
    r.verdict(Verdict::at_most(
        "orthogonality_tilted",
        tilted.rel_error,
        tol.get("fock.orthogonality_tilted"),
    ));
    laps.lap("orthogonality");

    let n_big = cfg.params.usize_or("fock", "completeness_n", 2048)?;
    let big = fc.with_n(n_big);
    let kets = [unit_oscillator_state(&big, c(0.0, 0.0)), unit_oscillator_state(&big, c(1.0, 0.0))];
    let rule = QuadratureRule::gauss(8);
    let line = Contour::real_line(8.0, 801)?;
    let bump = Contour::bump(8.0, 801, 0.229, 1.0)?;
    let on_line = completeness_residual(&big, &line, &rule, &kets)?;
    let on_bump = completeness_residual(&big, &bump, &rule, &kets)?;
    r.result("completeness_real_line", on_line);
    r.result("completeness_bump", on_bump);
    r.result("bump_worst_tilt", validate(&bump, 0.0).worst_tilt);
    r.verdict(Verdict::at_most("completeness_deformation", on_bump / on_line, 2.0));
    let by_mw: Vec<f64> = [25.0, 100.0, 400.0]
        .iter()
        .map(|&mw| {
            let f = FockConstruction { m_omega: mw, ..big };
            completeness_residual(&f, &line, &rule, &[unit_oscillator_state(&f, c(0.0, 0.0))])
        })
        .collect::<Result<_>>()?;
    for (mw, d) in [25, 100, 400].iter().zip(&by_mw) {
        r.result(format!("completeness[m_omega={mw}]"), *d);
    }
    r.verdict(Verdict::holds("completeness_monotone", by_mw[0] > by_mw[1] && by_mw[1] > by_mw[2]));
    laps.lap("completeness");

    let mass = cfg.params.complex_or("fock", "mass", c(1.0, 0.5))?;
    let (_, pn) = new_operators(&fc.with_n(64))?;
    let h = OperatorMatrix::new("H", &pn.entries * &pn.entries / (mass * 2.0));
    let (hh, ha) = hermitian_split(&h)?;
    let scale = h.norm();
    let recompose = (&hh.entries + &ha.entries - &h.entries).norm() / scale;
    let herm = (&hh.entries - hh.entries.adjoint()).norm() / scale;
    r.verdict(Verdict::at_most(
        "hermitian_split",
        recompose.max(herm),
        tol.get("fock.hermitian_split"),
    ));
    laps.lap("split");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn xi(cfg: &ExperimentConfig) -> Result<Report> {
    let p = &cfg.params;
    let tol = &cfg.tolerances;
    let hbar = p.f64_or("theory", "hbar", 1.0)?;
    let dt = p.f64_or("theory", "dt", 0.01)?;
    let masses = p.complex_list_or("xi", "masses", &[c(1.0, 0.0), c(1.0, 0.5)])?;
    let mut r = Report::new("xi");
    let mut laps = Laps::new(cfg.timings);
    let grid: Vec<C> = (0..=20).map(|k| c(-1.0 + 0.1 * k as f64, 0.0)).collect();
    let (mut ident, mut mom, mut norm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for &m in &masses {
        let spec = XiBasisSpec::new(m, dt, hbar)?;
        let s = spec.state(c(0.2, 0.0));
        ident = ident.max(eigenvalue_identity_residual(&s, &grid));
        mom = mom.max(annihilator_residual(&s, AnnihilatorFlavor::Momentum, &grid, 1e-4)?);
        let want = m / (2.0 * PI * hbar * dt);
        norm = norm.max((spec.c_b().conj() * spec.c_a() - want).norm() / want.norm());
    }
    r.verdict(Verdict::at_most("eigenvalue_identity", ident, tol.get("xi.eigenvalue_identity")));
    r.verdict(Verdict::at_most("annihilator_momentum", mom, tol.get("xi.annihilator")));
    r.verdict(Verdict::at_most("product_normalisation", norm, tol.get("xi.normalisation")));

    let real = XiBasisSpec::new(c(1.0, 0.0), dt, hbar)?;
    let s = real.state(c(0.2, 0.0));
    let literal = annihilator_residual(&s, AnnihilatorFlavor::Hamiltonian, &grid, 1e-4)?;
    let ordered = annihilator_residual(&s, AnnihilatorFlavor::Ordered, &grid, 1e-4)?;
    r.result("annihilator_hamiltonian_literal", literal);
    r.verdict(Verdict::at_most(
        "annihilator_hamiltonian",
        ordered,
        tol.get("xi.annihilator_hamiltonian"),
    ));
    let deg = degeneration_check(&real)?;
    r.verdict(Verdict::holds("real_mass_degeneration", deg.ket_equal && deg.bra_equal));
    laps.lap("eigenproblem");

    let etas = [1e-2, 1e-3];
    let same = biorthogonality_check(&real, c(0.0, 0.0), c(0.0, 0.0), &etas)?;
    let apart = biorthogonality_check(&real, c(0.0, 0.0), c(0.4, 0.0), &etas)?;
    r.result("pair_peak", same.rows[0].peak);
    r.verdict(Verdict::at_most(
        "pair_closed_form",
        same.max_rel_deviation().max(apart.max_rel_deviation()),
        tol.get("xi.pair_closed_form"),
    ));
    r.verdict(Verdict::at_most(
        "biorthogonality",
        apart.max_ratio_to_peak(),
        tol.get("xi.biorthogonality"),
    ));
    let st = sift_test(&real, c(0.1, 0.0), c(0.0, 0.0), 0.5, 1e-2)?;
    r.result("sift_value", st.sifted);
    r.verdict(Verdict::at_most("test_function_sifting", st.rel_error, tol.get("xi.sift_rel")));
    laps.lap("biorthogonality");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn xi_filter(cfg: &ExperimentConfig) -> Result<Report> {
    let p = &cfg.params;
    let tol = &cfg.tolerances;
    let dt = p.f64_or("theory", "dt", 0.01)?;
    let masses = p.complex_list_or("filter", "masses", &[c(1.0, 0.0), c(1.0, 0.5), c(0.0, 1.0)])?;
    let b2 = p.complex_or("filter", "b2", c(1.0, 0.0))?;
    let q_target = p.complex_or("filter", "q_target", c(0.3, 0.0))?;
    let half_range = p.f64_or("filter", "half_range", 0.05)?;
    let points = p.usize_or("filter", "points", 101)?;
    let eta = p.f64_or("filter", "eta", crate::fpi::DEFAULT_FILTER_ETA)?;
    let mut r = Report::new("xi-filter");
    let mut laps = Laps::new(cfg.timings);
    let (mut peak_ok, mut width_ok) = (true, true);
    for &m in &masses {
        for (label, pot) in [("free", PotentialSpec::free()), ("quadratic", PotentialSpec::quadratic(b2))] {
            let ts = theory(cfg, m, dt, pot)?;
            let w = (ts.hbar * dt / m.norm()).sqrt();
            // Off-centre grid: the target is not itself a grid point.
            let step = 2.0 * half_range / (points - 1) as f64;
            let centre = q_target + crate::fpi::xi_direction(m) * (0.37 * step);
            let grid = xi_line(&ts, centre, half_range, points);
            let prof = xi_filter_profile(&ts, &grid, q_target, eta)?;
            let dist = (prof.peak_xi() - q_target).norm();
            let key = format!("m={m},V={label}");
            r.result(format!("peak_distance[{key}]"), dist);
            r.result(format!("half_width[{key}]"), prof.half_width);
            peak_ok &= dist <= prof.grid_step();
            width_ok &= prof.half_width <= tol.get("filter.half_width_factor") * w;
            r.profiles.push(Profile {
                name: format!("profile[{key}]"),
                columns: ["xi_re", "xi_im", "abs"].map(String::from).to_vec(),
                rows: prof
                    .xi
                    .iter()
                    .zip(&prof.magnitude)
                    .map(|(x, a)| vec![x.re, x.im, *a])
                    .collect(),
            });
        }
    }
    r.verdict(Verdict::holds("peak_at_target", peak_ok));
    r.verdict(Verdict::holds("half_width_bound", width_ok));
    laps.lap("profiles");

    // Relative change of the profile caused by V, at dt and dt / 2 on grids
    // scaled with dt.
    let change = |dt: f64| -> Result<f64> {
        let m = c(1.0, 0.0);
        let free = theory(cfg, m, dt, PotentialSpec::free())?;
        let pot = theory(cfg, m, dt, PotentialSpec::quadratic(b2))?;
        let grid = xi_line(&free, q_target, half_range * dt / 0.01, points);
        let a = xi_filter_profile(&free, &grid, q_target, eta)?;
        let b = xi_filter_profile(&pot, &grid, q_target, eta)?;
        let num: f64 = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = a.values.iter().map(|x| x.norm_sqr()).sum();
        Ok((num / den).sqrt())
    };
    let (c1, c2) = (change(dt)?, change(dt / 2.0)?);
    r.result("potential_change[dt]", c1);
    r.result("potential_change[dt/2]", c2);
    r.verdict(Verdict::within(
        "potential_correction_order",
        c1 / c2,
        tol.get("filter.correction_ratio_min"),
        tol.get("filter.correction_ratio_max"),
    ));
    laps.lap("potential");
    laps.finish(&mut r);
    Ok(r)
}

fn sup_error(out: &WaveFunction, exact: impl Fn(C) -> C) -> f64 {
    max(out
        .contour()
        .nodes()
        .iter()
        .zip(out.values())
        .map(|(&q, v)| (v - exact(q)).norm()))
}

pub(super) fn propagate(cfg: &ExperimentConfig) -> Result<Report> {
    let p = &cfg.params;
    let tol = &cfg.tolerances;
    let dt = p.f64_or("theory", "dt", 0.01)?;
    let sigma = p.f64_or("propagate", "sigma", 0.5)?;
    let q0 = c(p.f64_or("propagate", "q0", 0.2)?, 0.0);
    let tilt = p.f64_or("propagate", "tilt_deg", 20.0)?.to_radians();
    let mut r = Report::new("propagate");
    let mut laps = Laps::new(cfg.timings);

    let step_error = |m: C, angle: f64| -> Result<f64> {
        let ts = theory(cfg, m, dt, PotentialSpec::free())?;
        let line = Contour::line(angle, c(0.0, 0.0), 8.0, 1601)?;
        let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(q0, sigma, m, ts.hbar, 0.0))?;
        let out = propagate_step(&ts, &psi)?;
        Ok(sup_error(&out, free_gaussian_evolved(q0, sigma, m, ts.hbar, dt)))
    };
    let euclid = step_error(c(0.0, 1.0), 0.0)?;
    let tilted = step_error(c(1.0, 0.0), tilt)?;
    r.verdict(Verdict::at_most("euclidean_step", euclid, tol.get("propagate.euclidean")));
    r.verdict(Verdict::at_most("tilted_step", tilted, tol.get("propagate.tilted")));

    let ident = |dt: f64| -> Result<f64> {
        let ts = theory(cfg, c(0.0, 1.0), dt, PotentialSpec::free())?;
        let line = Contour::real_line(8.0, 1601)?;
        let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(q0, sigma, ts.m, ts.hbar, 0.0))?;
        let out = propagate_step(&ts, &psi)?;
        Ok(max(out.values().iter().zip(psi.values()).map(|(a, b)| (a - b).norm())))
    };
    let ratio = ident(dt)? / ident(dt / 2.0)?;
    r.verdict(Verdict::within(
        "identity_limit",
        ratio,
        tol.get("propagate.identity_ratio_min"),
        tol.get("propagate.identity_ratio_max"),
    ));
    laps.lap("single_step");

    let dts = [0.04, 0.02, 0.01, 0.005];
    let cases = [
        ("free", c(1.0, 0.0), PotentialSpec::free()),
        ("harmonic", c(1.0, 0.0), PotentialSpec::quadratic(c(0.5, 0.0))),
        (
            "complex_quartic",
            c(1.0, 0.1),
            PotentialSpec::new(&[(2, c(1.0, 0.2)), (4, c(0.1, 0.05))])?,
        ),
    ];
    let mut worst_order = f64::INFINITY;
    let mut rows = Vec::new();
    for (k, (label, m, pot)) in cases.into_iter().enumerate() {
        let ts = theory(cfg, m, dts[0], pot)?;
        let angle = if m.im == 0.0 { tilt } else { 0.0 };
        let line = Contour::line(angle, c(0.0, 0.0), 6.0, 2401)?;
        let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(q0, 0.7, m, ts.hbar, 0.0))?;
        let chk = effective_hamiltonian_check(&ts, &psi, &dts)?;
        for (d, e) in chk.dts.iter().zip(&chk.discrepancies) {
            rows.push(vec![k as f64, *d, *e]);
        }
        r.result(format!("hamiltonian_order[{label}]"), chk.min_order());
        worst_order = worst_order.min(chk.min_order());
    }
    r.profiles.push(Profile {
        name: "hamiltonian_discrepancy".into(),
        columns: ["case", "dt", "discrepancy"].map(String::from).to_vec(),
        rows,
    });
    r.verdict(Verdict::at_least("hamiltonian_order", worst_order, tol.get("propagate.order_min")));
    laps.lap("hamiltonian");

    let t_final = p.f64_or("propagate", "t_final", 0.05)?;
    let slices = p.usize_or("propagate", "slices", 5)?;
    let (li, lf) = (
        p.complex_or("propagate", "lambda_i", c(0.5, 0.2))?,
        p.complex_or("propagate", "lambda_f", c(0.45, 0.25))?,
    );
    for (label, pot, key) in [
        ("free", PotentialSpec::free(), "propagate.multi_slice_free"),
        ("harmonic", PotentialSpec::quadratic(c(0.5, 0.0)), "propagate.multi_slice_harmonic"),
    ] {
        let hbar = p.f64_or("theory", "hbar", 1.0)?;
        let ts = TheorySpec::over_interval(hbar, c(1.0, 0.0), 0.0, t_final, slices, pot)?;
        let line = Contour::line(tilt, c(0.0, 0.0), 8.0, 801)?;
        let psi_i = WaveFunction::from_analytic(line.clone(), gaussian_wavefunction(hbar, li))?;
        let psi_f = WaveFunction::from_analytic(line, gaussian_wavefunction(hbar, lf))?;
        let a = multi_slice_amplitude(&ts, &psi_i, &psi_f)?;
        let o = fock_oracle_amplitude(&ts, li, lf, 256)?;
        r.result(format!("amplitude[{label}]"), a);
        r.result(format!("oracle[{label}]"), o.amplitude);
        r.verdict(Verdict::at_most(
            format!("multi_slice_{label}"),
            (a - o.amplitude).norm() / o.amplitude.norm(),
            tol.get(key),
        ));
    }
    laps.lap("multi_slice");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn p_integral(cfg: &ExperimentConfig) -> Result<Report> {
    let tol = &cfg.tolerances;
    let dt = cfg.params.f64_or("theory", "dt", 0.1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut r = Report::new("p-integral");
    let mut laps = Laps::new(cfg.timings);

    let cases = [
        ("trivial", c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), PotentialSpec::free(), "pint.trivial"),
        ("complex_mass", c(1.0, 0.3), c(0.7, 0.0), c(0.0, 0.0), PotentialSpec::free(), "pint.complex_mass"),
        (
            "fresnel",
            c(1.0, 0.0),
            c(0.5, 0.0),
            c(0.2, 0.0),
            PotentialSpec::quadratic(c(1.0, 0.0)),
            "pint.fresnel",
        ),
    ];
    for (label, m, qdot, q, pot, key) in cases {
        let ts = theory(cfg, m, dt, pot)?;
        let pc = p_contour(&ts, qdot, 400)?;
        let res = p_gaussian_integral(&ts, qdot, q, &pc)?;
        r.result(format!("p_integral[{label}]"), res.numeric);
        r.result(format!("closed_form[{label}]"), res.closed_form);
        r.verdict(Verdict::at_most(format!("p_integral_{label}"), res.rel_error, tol.get(key)));
    }
    laps.lap("p_integral");

    let (mut grad, mut newton): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let m = c(rng.random_range(0.2..3.0), rng.random_range(0.0..2.0));
        let qdot = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let ts = theory(cfg, m, dt, PotentialSpec::free())?;
        let s = saddle_point_p(&ts, qdot)?;
        grad = grad.max(s.gradient_residual);
        newton = newton.max((s.newton - s.p).norm());
    }
    r.verdict(Verdict::at_most("saddle_gradient", grad, tol.get("pint.saddle_gradient")));
    r.verdict(Verdict::at_most("saddle_newton", newton, tol.get("pint.newton")));

    let ts = theory(
        cfg,
        c(1.0, 0.2),
        dt,
        PotentialSpec::new(&[(2, c(0.5, 0.0)), (4, c(0.1, 0.02))])?,
    )?;
    let samples: Vec<(C, C)> = (0..16)
        .map(|_| {
            (
                c(rng.random_range(-0.8..0.8), rng.random_range(-0.1..0.1)),
                c(rng.random_range(-0.5..0.5), rng.random_range(-0.1..0.1)),
            )
        })
        .collect();
    let rt = round_trip(&ts, &samples)?;
    r.result("round_trip_kinetic", rt.kinetic);
    r.result("round_trip_max_abs_error", rt.max_abs_error);
    r.verdict(Verdict::at_most("round_trip", rt.max_coefficient_error, tol.get("pint.round_trip")));
    laps.lap("saddle_and_round_trip");

    let qc = c(0.5, 0.2);
    let mut ratios = Vec::new();
    for n in 2..=4 {
        let a = c(50.0, 10.0);
        let e1 = (gaussian_moment_numeric(n, a, qc)? - qc.powu(n)).norm();
        let e2 = (gaussian_moment_numeric(n, a * 2.0, qc)? - qc.powu(n)).norm();
        let exact = (gaussian_moment_numeric(n, a, qc)? - gaussian_moment_exact(n, a, qc)?).norm();
        r.result(format!("moment_quadrature_error[n={n}]"), exact);
        ratios.push(e1 / e2);
    }
    r.verdict(Verdict::within(
        "gaussian_moment_order",
        min(ratios.iter().copied()),
        tol.get("pint.moment_ratio_min"),
        tol.get("pint.moment_ratio_max"),
    ));
    r.verdict(Verdict::within(
        "gaussian_moment_order_max",
        max(ratios.iter().copied()),
        tol.get("pint.moment_ratio_min"),
        tol.get("pint.moment_ratio_max"),
    ));

    let beta = c(0.3, 0.1);
    let f = |x: C| (x * 0.5).exp();
    let f2 = |x: C| (x * 0.5).exp() * 0.25;
    let alphas = [50.0, 100.0, 200.0, 400.0];
    let resid: Vec<f64> = alphas
        .iter()
        .map(|&a| delta_expansion(f, f2, beta, c(a, 0.0)).map(|e| (e.sifted - e.corrected).norm()))
        .collect::<Result<_>>()?;
    // Least-squares slope of log residual against log alpha.
    let xs: Vec<f64> = alphas.iter().map(|a| a.ln()).collect();
    let ys: Vec<f64> = resid.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    r.result("delta_expansion_slope", slope);
    r.verdict(Verdict::within(
        "delta_expansion_order",
        -slope,
        tol.get("pint.expansion_order_min"),
        tol.get("pint.expansion_order_max"),
    ));
    laps.lap("identities");
    laps.finish(&mut r);
    Ok(r)
}

pub(super) fn saddle_q(cfg: &ExperimentConfig) -> Result<Report> {
    let p = &cfg.params;
    let tol = &cfg.tolerances;
    let mom = p.complex_or("saddle", "p", c(0.3, 0.0))?;
    let q_next = p.complex_or("saddle", "q_next", c(1.0, 0.0))?;
    let dt = p.f64_or("theory", "dt", 0.01)?;
    let b2 = p.complex_or("saddle", "b2", c(0.05, 0.0))?;
    let mut r = Report::new("saddle-q");
    let mut laps = Laps::new(cfg.timings);

    let free = theory(cfg, p.complex_or("saddle", "m", c(1.0, 0.4))?, dt, PotentialSpec::free())?;
    let s = saddle_point_q(&free, mom, mom, q_next)?;
    r.result("free_q_formula", s.q_formula);
    r.result("free_q_numeric", s.q_numeric);
    r.verdict(Verdict::at_most("free_formula_vs_numeric", s.separation, tol.get("saddle.separation")));
    r.verdict(Verdict::at_most(
        "free_momentum",
        s.momentum_residual_numeric,
        tol.get("saddle.momentum"),
    ));

    let pot = |dt: f64| theory(cfg, c(1.0, 0.0), dt, PotentialSpec::quadratic(b2));
    let s1 = saddle_point_q(&pot(dt)?, mom, mom, q_next)?;
    let s2 = saddle_point_q(&pot(dt / 2.0)?, mom, mom, q_next)?;
    r.result("potential_q_formula", s1.q_formula);
    r.result("potential_q_numeric", s1.q_numeric);
    r.result("potential_momentum_numeric", s1.momentum_residual_numeric);
    r.verdict(Verdict::at_most(
        "potential_momentum",
        s1.momentum_residual_formula,
        tol.get("saddle.momentum"),
    ));
    r.verdict(Verdict::within(
        "potential_numeric_order",
        s1.momentum_residual_numeric / s2.momentum_residual_numeric,
        tol.get("saddle.order_min"),
        tol.get("saddle.order_max"),
    ));
    laps.lap("saddle");
    laps.finish(&mut r);
    Ok(r)
}
