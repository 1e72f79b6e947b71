//! One line per acceptance criterion. Thresholds are pinned here and passed
//! to the harness as overrides, then every observed value is judged again
//! against the same constants.
//!
//! The process fails when a criterion outside `KNOWN_UNATTAINABLE` fails,
//! or when one inside it starts passing (the list is then stale).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use catfpi::harness::{run, ExperimentConfig, KeyValueConfig, Report};

/// Criterion 1 asks for |sift - f(a)| <= 1e-5 at eps = 1e-5. The sifting
/// error of the Gaussian regulator is eps f''(a) + O(eps^2), so q^3 + q at
/// a = 2 (f'' = 12) misses by 1.2e-4 however accurate the quadrature is.
const KNOWN_UNATTAINABLE: &[usize] = &[1];

const PINNED: &str = "
[theory]
hbar = 1
[delta]
epsilon = 1e-5
[fock]
hbar = 1
m_omega = 100
mp_omegap = 0.01
[saddle]
b2_re = 0.05
[propagate]
t_final = 0.05
slices = 5
[tolerances]
delta.sift_abs = 1e-5
delta.ratio_min = 1.7
delta.ratio_max = 2.3
conjugate.sample = 1e-12
fock.commutator_interior = 1e-12
fock.commutator_last = 1e-10
fock.eigen_residual = 1e-8
fock.derivative_relation = 1e-6
fock.overlap_rel = 2e-2
filter.half_width_factor = 3
pint.complex_mass = 1e-8
pint.fresnel = 1e-6
pint.saddle_gradient = 1e-12
saddle.separation = 1e-10
saddle.momentum = 1e-6
propagate.order_min = 1.8
propagate.multi_slice_free = 1e-3
propagate.multi_slice_harmonic = 5e-3
";

struct Run {
    report: Report,
    elapsed: Duration,
}

fn execute(name: &str, extra: &str) -> Run {
    let params = KeyValueConfig::parse(&format!("{PINNED}\n{extra}")).expect("pinned config parses");
    let cfg = ExperimentConfig::from_params(name, params).expect("pinned config is valid");
    let start = Instant::now();
    let report = run(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
    Run {
        report,
        elapsed: start.elapsed(),
    }
}

/// Collects the checks of one criterion.
struct Criterion {
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn observed(run: &Run, verdict: &str) -> (Option<f64>, bool) {
        let v = run
            .report
            .verdicts
            .iter()
            .find(|v| v.name == verdict)
            .unwrap_or_else(|| panic!("{} has no verdict {verdict}", run.report.experiment));
        (v.observed, v.passed)
    }

    fn at_most(&mut self, run: &Run, verdict: &str, bound: f64) -> &mut Self {
        let (obs, _) = Self::observed(run, verdict);
        let x = obs.expect("numeric verdict");
        self.checks.push((format!("{verdict} {x:.2e} <= {bound:.0e}"), x <= bound));
        self
    }

    fn at_least(&mut self, run: &Run, verdict: &str, bound: f64) -> &mut Self {
        let x = Self::observed(run, verdict).0.expect("numeric verdict");
        self.checks.push((format!("{verdict} {x:.3} >= {bound}"), x >= bound));
        self
    }

    fn within(&mut self, run: &Run, verdict: &str, lo: f64, hi: f64) -> &mut Self {
        let x = Self::observed(run, verdict).0.expect("numeric verdict");
        self.checks.push((format!("{verdict} {x:.3} in [{lo}, {hi}]"), (lo..=hi).contains(&x)));
        self
    }

    fn holds(&mut self, run: &Run, verdict: &str) -> &mut Self {
        let ok = Self::observed(run, verdict).1;
        self.checks.push((format!("{verdict} {}", if ok { "holds" } else { "broken" }), ok));
        self
    }

    fn faster_than(&mut self, label: &str, elapsed: Duration, limit_s: f64) -> &mut Self {
        let t = elapsed.as_secs_f64();
        self.checks.push((format!("{label} {t:.2}s < {limit_s}s"), t < limit_s));
        self
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn main() -> ExitCode {
    let total = Instant::now();
    let delta = execute("delta", "");
    let conjugate = execute("conjugate", "");
    let commutator = execute("commutator", "[fock]\nn = 64\n");
    let fock = execute("fock", "[fock]\nn = 512\n");
    let filter = execute("xi-filter", "[filter]\nmasses = 1, 1+0.5i, i\nb2_re = 1\n");
    let pint = execute("p-integral", "");
    let saddle = execute("saddle-q", "[saddle]\nm_re = 1\nm_im = 0.4\np_re = 0.3\nq_next_re = 1\n");
    let propagate = execute("propagate", "");
    let total = total.elapsed();

    let mut rows: Vec<(usize, &str, Criterion)> = Vec::new();
    let mut c = Criterion::new();
    c.at_most(&delta, "sift_accuracy", 1e-5)
        .within(&delta, "linear_convergence_min_ratio", 1.7, 2.3)
        .within(&delta, "linear_convergence_max_ratio", 1.7, 2.3)
        .faster_than("runtime", delta.elapsed, 5.0);
    rows.push((1, "delta sifting", c));

    let mut c = Criterion::new();
    c.holds(&conjugate, "reference_examples")
        .holds(&conjugate, "involution")
        .holds(&conjugate, "homomorphism")
        .at_most(&conjugate, "sandwich_identities", 1e-12)
        .faster_than("runtime", conjugate.elapsed, 5.0);
    rows.push((2, "conjugation algebra", c));

    let mut c = Criterion::new();
    c.at_most(&commutator, "interior_block", 1e-12)
        .at_most(&commutator, "last_diagonal", 1e-10);
    rows.push((3, "truncated commutator", c));

    let mut c = Criterion::new();
    c.at_most(&fock, "eigen_residual", 1e-8)
        .at_most(&fock, "derivative_relation", 1e-6);
    rows.push((4, "eigenstate relations", c));

    let mut c = Criterion::new();
    c.at_most(&fock, "fourier_overlap", 2e-2).holds(&fock, "overlap_monotone");
    rows.push((5, "fourier overlap", c));

    let mut c = Criterion::new();
    c.holds(&filter, "peak_at_target")
        .holds(&filter, "half_width_bound")
        .faster_than("runtime", filter.elapsed, 30.0);
    rows.push((6, "xi filtering", c));

    let mut c = Criterion::new();
    c.at_most(&pint, "p_integral_complex_mass", 1e-8)
        .at_most(&pint, "p_integral_fresnel", 1e-6)
        .at_most(&pint, "saddle_gradient", 1e-12);
    rows.push((7, "p gaussian", c));

    let mut c = Criterion::new();
    c.at_most(&saddle, "free_formula_vs_numeric", 1e-10)
        .at_most(&saddle, "potential_momentum", 1e-6);
    rows.push((8, "q saddle", c));

    let mut c = Criterion::new();
    c.at_least(&propagate, "hamiltonian_order", 1.8);
    rows.push((9, "hamiltonian emergence", c));

    let mut c = Criterion::new();
    c.at_most(&propagate, "multi_slice_free", 1e-3)
        .at_most(&propagate, "multi_slice_harmonic", 5e-3)
        .faster_than("suite", total, 180.0);
    rows.push((10, "round trip", c));

    let mut ok = true;
    for (id, name, crit) in &rows {
        let pass = crit.passed();
        let expected_fail = KNOWN_UNATTAINABLE.contains(id);
        let detail: Vec<&str> = crit.checks.iter().map(|(s, _)| s.as_str()).collect();
        let note = match (pass, expected_fail) {
            (false, true) => " [known unattainable]",
            (true, true) => " [listed as unattainable but passed]",
            _ => "",
        };
        println!(
            "criterion {id:>2} {name:<22} {}{note}  ({})",
            if pass { "PASS" } else { "FAIL" },
            detail.join("; ")
        );
        ok &= pass != expected_fail;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
