//! Momentum-eigenfunction basis `psi_xi(q) = C_A exp(-C1 (q - xi)^2)` and
//! its anti-xi dual for complex mass.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conjugation::{mod_conjugate, AnalyticFunction};
use crate::contour::{quad, Contour, QuadratureRule};
use crate::delta::TamedDelta;
use crate::error::{Error, Result};

type C = Complex64;

/// Regulators used for the oscillatory pair integrals.
pub const ETA_SWEEP: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiBasisSpec {
    pub m: C,
    pub dt: f64,
    pub hbar: f64,
}

impl XiBasisSpec {
    pub fn new(m: C, dt: f64, hbar: f64) -> Result<Self> {
        if m.im < 0.0 {
            return Err(Error::Construction(format!("Im m = {} must be >= 0", m.im)));
        }
        if m.norm() == 0.0 {
            return Err(Error::Construction("mass must be nonzero".into()));
        }
        if !(dt > 0.0 && hbar > 0.0) {
            return Err(Error::Construction("dt and hbar must be positive".into()));
        }
        Ok(Self { m, dt, hbar })
    }

    /// `C1 = i m / (2 hbar dt)`.
    pub fn c1(&self) -> C {
        C::i() * self.m / (2.0 * self.hbar * self.dt)
    }

    /// `C_A = sqrt(m / (2 pi hbar dt))`, principal branch.
    pub fn c_a(&self) -> C {
        (self.m / (2.0 * PI * self.hbar * self.dt)).sqrt()
    }

    /// `C_B = sqrt(m* / (2 pi hbar dt))`. For `Im m >= 0` this is the
    /// conjugate of `C_A`, so `C_B* C_A = m / (2 pi hbar dt)` exactly.
    pub fn c_b(&self) -> C {
        (self.m.conj() / (2.0 * PI * self.hbar * self.dt)).sqrt()
    }

    pub fn state(&self, xi: C) -> XiState {
        XiState { xi, spec: *self }
    }

    /// The product of `psi_xi` with a Gaussian `exp(-q^2 / (2 w^2))`
    /// decays along the real axis iff `Im m / (hbar dt) < 1 / w^2`.
    pub fn product_integrable(&self, width: f64) -> bool {
        self.m.im / (self.hbar * self.dt) < 1.0 / (width * width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiState {
    pub xi: C,
    pub spec: XiBasisSpec,
}

/// `_m<new q|xi> = C_A exp(-C1 (q - xi)^2)`.
pub fn xi_wavefunction(s: &XiState, q: C) -> C {
    let d = q - s.xi;
    s.spec.c_a() * (-s.spec.c1() * d * d).exp()
}

/// `_m<new q|anti xi> = C_B exp(C1* (q - xi)^2)`.
pub fn anti_xi_wavefunction(s: &XiState, q: C) -> C {
    let d = q - s.xi;
    s.spec.c_b() * (s.spec.c1().conj() * d * d).exp()
}

/// `_m<anti xi|q>_new = C_B* exp(C1 (q - xi)^2)`, the `*_{q,xi}` conjugate
/// of [`anti_xi_wavefunction`].
pub fn anti_xi_bra(s: &XiState, q: C) -> C {
    let d = q - s.xi;
    s.spec.c_b().conj() * (s.spec.c1() * d * d).exp()
}

/// Classical momentum `m (xi - q) / dt` carried by `psi_xi` at `q`.
pub fn xi_momentum(s: &XiState, q: C) -> C {
    s.spec.m * (s.xi - q) / s.spec.dt
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnihilatorFlavor {
    /// `(hbar/i) d/dq - m (xi - q) / dt`.
    Momentum,
    /// `-(hbar^2 / 2m) d^2/dq^2 - (m (xi - q) / dt)^2 / 2m`, taken literally.
    Hamiltonian,
    /// The hamiltonian flavour with its ordering term `-i hbar / (2 dt)`
    /// included, which annihilates `psi_xi` exactly.
    Ordered,
}

impl AnnihilatorFlavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "momentum" => Ok(Self::Momentum),
            "hamiltonian" => Ok(Self::Hamiltonian),
            "ordered" => Ok(Self::Ordered),
            other => Err(Error::Config(format!("unknown annihilator flavour `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Momentum => "momentum",
            Self::Hamiltonian => "hamiltonian",
            Self::Ordered => "ordered",
        }
    }
}

/// `max |A psi_xi| / |psi_xi|` over the grid, with derivatives by
/// five-point central differences of step `h`.
pub fn annihilator_residual(s: &XiState, flavor: AnnihilatorFlavor, grid: &[C], h: f64) -> Result<f64> {
    let c1 = s.spec.c1();
    let reach = grid
        .iter()
        .map(|q| (c1 * (q - s.xi) * 2.0).norm())
        .fold(c1.norm().sqrt(), f64::max);
    if !(h > 0.0) || h * reach > 0.05 {
        return Err(Error::GridTooCoarse(format!(
            "step {h:e} against local frequency {reach:e}; need step * frequency <= 0.05"
        )));
    }
    let f = |q: C| xi_wavefunction(s, q);
    let (hbar, m) = (s.spec.hbar, s.spec.m);
    let mut worst: f64 = 0.0;
    for &q in grid {
        let (fm2, fm1, f0, fp1, fp2) = (f(q - 2.0 * h), f(q - h), f(q), f(q + h), f(q + 2.0 * h));
        let p = xi_momentum(s, q);
        let a_psi = match flavor {
            AnnihilatorFlavor::Momentum => {
                let d1 = (fm2 - fp2 + (fp1 - fm1) * 8.0) / (12.0 * h);
                d1 * C::new(0.0, -hbar) - p * f0
            }
            AnnihilatorFlavor::Hamiltonian | AnnihilatorFlavor::Ordered => {
                let d2 = ((fp1 + fm1) * 16.0 - (fp2 + fm2) - f0 * 30.0) / (12.0 * h * h);
                let mut v = -d2 * (hbar * hbar) / (m * 2.0) - p * p / (m * 2.0) * f0;
                if flavor == AnnihilatorFlavor::Ordered {
                    v -= f0 * C::new(0.0, hbar / (2.0 * s.spec.dt));
                }
                v
            }
        };
        worst = worst.max(a_psi.norm() / f0.norm());
    }
    Ok(worst)
}

/// Analytic check of `(hbar/i) psi' = m (xi - q)/dt psi`; returns the
/// largest relative mismatch over the grid.
pub fn eigenvalue_identity_residual(s: &XiState, grid: &[C]) -> f64 {
    let c1 = s.spec.c1();
    grid.iter()
        .map(|&q| {
            let psi = xi_wavefunction(s, q);
            let dpsi = -c1 * (q - s.xi) * 2.0 * psi;
            let lhs = dpsi * C::new(0.0, -s.spec.hbar);
            let rhs = xi_momentum(s, q) * psi;
            (lhs - rhs).norm() / rhs.norm().max(psi.norm())
        })
        .fold(0.0, f64::max)
}

/// `int_C psi_{xi'}(q) _m<anti xi|q> exp(-eta q^2) dq` by quadrature.
pub fn pair_integral(
    spec: &XiBasisSpec,
    xi: C,
    xi_prime: C,
    eta: f64,
    c: &Contour,
    rule: &QuadratureRule,
) -> Result<C> {
    let c1 = spec.c1();
    let pref = spec.c_a() * spec.c_b().conj();
    quad(
        |q| {
            // Exponents are combined before exponentiating; each factor
            // alone can overflow for complex mass.
            let (a, b) = (q - xi_prime, q - xi);
            pref * (-c1 * a * a + c1 * b * b - q * q * eta).exp()
        },
        c,
        rule,
    )
}

/// Closed form of [`pair_integral`]:
/// `delta^{eps}(xi' - xi) exp(C1 (xi^2 - xi'^2))` with
/// `eps = eta (hbar dt / m)^2`, continued to complex `m`.
pub fn pair_integral_closed_form(spec: &XiBasisSpec, xi: C, xi_prime: C, eta: f64) -> C {
    let k = spec.m * (xi_prime - xi) / (spec.hbar * spec.dt);
    let pref = spec.c_a() * spec.c_b().conj() * (PI / eta).sqrt();
    pref * (-k * k / (4.0 * eta) + spec.c1() * (xi * xi - xi_prime * xi_prime)).exp()
}

/// Effective delta width produced by the regulator at real mass.
pub fn effective_epsilon(spec: &XiBasisSpec, eta: f64) -> f64 {
    eta * (spec.hbar * spec.dt / spec.m.norm()).powi(2)
}

/// Real-line contour long enough for `exp(-eta q^2 + growth |q|)` to reach
/// `1e-16` at both ends.
pub fn regulated_line(eta: f64, growth: f64, segments_per_unit: f64) -> Result<Contour> {
    let g = growth.abs();
    let u = (g + (g * g + 4.0 * 37.0 * eta).sqrt()) / (2.0 * eta);
    let n = ((2.0 * u * segments_per_unit).ceil() as usize).max(16) + 1;
    Contour::real_line(u, n)
}

/// Regulated delta `(4 pi eps)^{-1/2} exp(-s^2 / 4 eps)` with the complex
/// width `eps = eta (hbar dt / m)^2`; reduces to the tamed delta at real
/// mass.
pub fn regulated_delta(spec: &XiBasisSpec, eta: f64, s: C) -> C {
    let k = spec.m * s / (spec.hbar * spec.dt);
    spec.m / (2.0 * spec.hbar * spec.dt * (PI * eta).sqrt()) * (-k * k / (4.0 * eta)).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiorthogonalityRow {
    pub eta: f64,
    pub epsilon_eff: f64,
    pub numeric: C,
    pub closed_form: C,
    /// `delta^{eps}(xi' - xi)` times the phase `exp(C1 (xi^2 - xi'^2))`;
    /// `eps` is complex for complex mass.
    pub delta: C,
    pub peak: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiorthogonalityReport {
    pub xi: C,
    pub xi_prime: C,
    pub rows: Vec<BiorthogonalityRow>,
}

impl BiorthogonalityReport {
    /// Largest `|numeric - delta| / peak` over the sweep.
    pub fn max_rel_deviation(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.numeric - r.delta).norm() / r.peak)
            .fold(0.0, f64::max)
    }

    /// Largest `|numeric| / peak`, the off-diagonal suppression.
    pub fn max_ratio_to_peak(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.numeric.norm() / r.peak)
            .fold(0.0, f64::max)
    }
}

/// Regulated pair integrals over the sweep, compared with the tamed delta
/// of the effective width. The q contour is built per regulator.
pub fn biorthogonality_check(
    spec: &XiBasisSpec,
    xi: C,
    xi_prime: C,
    etas: &[f64],
) -> Result<BiorthogonalityReport> {
    let k = (spec.m * (xi_prime - xi) / (spec.hbar * spec.dt)).norm();
    let mut rows = Vec::new();
    for &eta in etas {
        // Resolve the oscillation `exp(i k q)` with several segments per
        // period on top of the Gaussian scale.
        let per_unit = (k / PI).max(eta.sqrt()).max(1.0) * 2.0;
        let growth = (spec.m * (xi_prime - xi) / (spec.hbar * spec.dt)).im;
        let c = regulated_line(eta, growth, per_unit)?;
        let numeric = pair_integral(spec, xi, xi_prime, eta, &c, &QuadratureRule::gauss(8))?;
        let closed_form = pair_integral_closed_form(spec, xi, xi_prime, eta);
        let eps = effective_epsilon(spec, eta);
        let phase = (spec.c1() * (xi * xi - xi_prime * xi_prime)).exp();
        let delta = if spec.m.im == 0.0 && spec.m.re > 0.0 {
            TamedDelta::new(eps)?.value(xi_prime - xi)
        } else {
            regulated_delta(spec, eta, xi_prime - xi)
        } * phase;
        let peak = regulated_delta(spec, eta, C::new(0.0, 0.0)).norm();
        rows.push(BiorthogonalityRow {
            eta,
            epsilon_eff: eps,
            numeric,
            closed_form,
            delta,
            peak,
        });
    }
    Ok(BiorthogonalityReport { xi, xi_prime, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SiftTest {
    pub sifted: C,
    pub target: C,
    pub rel_error: f64,
}

/// `int dxi B(xi, xi') g(xi)` with `g(xi) = exp(-(xi - center)^2 / (2 w^2))`
/// and `B` the regulated pair integral evaluated by quadrature in `q`;
/// should reproduce `g(xi')`.
pub fn sift_test(spec: &XiBasisSpec, xi_prime: C, center: C, width: f64, eta: f64) -> Result<SiftTest> {
    let g = |xi: C| (-(xi - center) * (xi - center) / (2.0 * width * width)).exp();
    let eps = effective_epsilon(spec, eta);
    let reach = 12.0 * eps.sqrt();
    // The pair integral is negligible beyond `reach`; a short xi line
    // through xi' carries the whole delta.
    let xi_line = Contour::line(0.0, xi_prime, reach, 61)?;
    let kmax = spec.m.norm() * reach / (spec.hbar * spec.dt);
    let q_line = regulated_line(eta, kmax, (kmax / PI).max(1.0) * 2.0)?;
    let rule = QuadratureRule::gauss(8);
    let mut total = C::new(0.0, 0.0);
    for (xi, w) in crate::contour::quad_points(&xi_line, &rule) {
        total += pair_integral(spec, xi, xi_prime, eta, &q_line, &rule)? * g(xi) * w;
    }
    let target = g(xi_prime);
    Ok(SiftTest {
        sifted: total,
        target,
        rel_error: (total - target).norm() / target.norm(),
    })
}

/// `psi_xi` as a symbolic function of the parameters `q` and `xi`.
pub fn xi_symbolic(spec: &XiBasisSpec) -> Result<AnalyticFunction> {
    gaussian_symbolic(spec.c_a(), -spec.c1())
}

/// The anti-xi ket component `C_B exp(C1* (q - xi)^2)` in symbolic form.
pub fn anti_xi_symbolic(spec: &XiBasisSpec) -> Result<AnalyticFunction> {
    gaussian_symbolic(spec.c_b(), spec.c1().conj())
}

fn gaussian_symbolic(pref: C, rate: C) -> Result<AnalyticFunction> {
    let d = &AnalyticFunction::param("q") - &AnalyticFunction::param("xi");
    Ok((&d * &d).scale(rate).exp()?.scale(pref))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegenerationReport {
    /// Anti-xi ket component equals `psi_xi` (canonical form).
    pub ket_equal: bool,
    /// `_m<anti xi|q>` equals `(psi_xi)^{*_{q,xi}}` (canonical form).
    pub bra_equal: bool,
}

/// At real mass the anti-xi pair collapses onto the xi basis and its
/// modified bra.
pub fn degeneration_check(spec: &XiBasisSpec) -> Result<DegenerationReport> {
    let psi = xi_symbolic(spec)?;
    let anti = anti_xi_symbolic(spec)?;
    let keep = ["q", "xi"];
    Ok(DegenerationReport {
        ket_equal: psi == anti,
        bra_equal: mod_conjugate(&anti, &keep)? == mod_conjugate(&psi, &keep)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: f64, b: f64) -> C {
        C::new(a, b)
    }

    fn spec(m: C, dt: f64) -> XiBasisSpec {
        XiBasisSpec::new(m, dt, 1.0).unwrap()
    }

    #[test]
    fn value_at_centre_is_c_a() {
        let s = spec(c(1.0, 0.3), 0.01).state(c(0.2, 0.1));
        assert_eq!(xi_wavefunction(&s, c(0.2, 0.1)), s.spec.c_a());
        assert_eq!(anti_xi_wavefunction(&s, c(0.2, 0.1)), s.spec.c_b());
    }

    #[test]
    fn direct_substitution_real_mass() {
        let s = spec(c(1.0, 0.0), 0.01).state(c(0.0, 0.0));
        let want = c((1.0 / (0.02 * PI)).sqrt(), 0.0) * c(0.0, -0.5).exp();
        assert!((xi_wavefunction(&s, c(0.1, 0.0)) - want).norm() < 1e-14);
    }

    #[test]
    fn complex_mass_grows_and_anti_decays() {
        let s = spec(c(1.0, 1.0), 0.01).state(c(0.0, 0.0));
        let (a, b) = (xi_wavefunction(&s, c(0.1, 0.0)), xi_wavefunction(&s, c(0.2, 0.0)));
        assert!(b.norm() > a.norm() && a.norm() > s.spec.c_a().norm());
        let anti = anti_xi_wavefunction(&s, c(0.2, 0.0));
        assert!(anti.norm() < s.spec.c_b().norm());
    }

    #[test]
    fn imaginary_mass_decay_rate() {
        let s = spec(c(0.0, 1.0), 0.1).state(c(0.0, 0.0));
        assert!((s.spec.c1().conj() - c(-5.0, 0.0)).norm() < 1e-14);
        let v = anti_xi_wavefunction(&s, c(1.0, 0.0)) / s.spec.c_b();
        assert!((v - c((-5.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn normalisation_product() {
        for m in [c(1.0, 0.0), c(1.0, 0.5), c(0.0, 2.0), c(-0.5, 0.1)] {
            let s = spec(m, 0.05);
            let want = m / (2.0 * PI * 0.05);
            assert!((s.c_b().conj() * s.c_a() - want).norm() < 1e-14 * want.norm());
        }
    }

    #[test]
    fn negative_imaginary_mass_rejected() {
        assert!(XiBasisSpec::new(c(1.0, -0.1), 0.1, 1.0).is_err());
        assert!(XiBasisSpec::new(c(1.0, 0.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn coarse_grid_rejected() {
        let s = spec(c(1.0, 0.0), 0.01).state(c(0.0, 0.0));
        assert!(matches!(
            annihilator_residual(&s, AnnihilatorFlavor::Momentum, &[c(0.5, 0.0)], 0.01),
            Err(Error::GridTooCoarse(_))
        ));
    }

    #[test]
    fn closed_form_pair_integral_matches_quadrature() {
        let s = spec(c(1.0, 0.2), 0.1);
        let eta = 0.05;
        let line = regulated_line(eta, 0.0, 8.0).unwrap();
        let (xi, xp) = (c(0.1, 0.0), c(0.13, 0.0));
        let num = pair_integral(&s, xi, xp, eta, &line, &QuadratureRule::gauss(8)).unwrap();
        let cf = pair_integral_closed_form(&s, xi, xp, eta);
        assert!((num - cf).norm() < 1e-10 * cf.norm(), "{num} vs {cf}");
    }

    #[test]
    fn symbolic_forms_match_numeric() {
        let s = spec(c(0.8, 0.4), 0.2);
        let st = s.state(c(0.3, -0.1));
        let q = c(0.45, 0.05);
        let vals = [("q", q), ("xi", st.xi)];
        let psi = xi_symbolic(&s).unwrap().eval(&vals).unwrap();
        assert!((psi - xi_wavefunction(&st, q)).norm() < 1e-13);
        let anti = anti_xi_symbolic(&s).unwrap();
        assert!((anti.eval(&vals).unwrap() - anti_xi_wavefunction(&st, q)).norm() < 1e-13);
        let bra = mod_conjugate(&anti, &["q", "xi"]).unwrap().eval(&vals).unwrap();
        assert!((bra - anti_xi_bra(&st, q)).norm() < 1e-13);
    }
}
