//! Gaussian-regularised delta function for complex arguments.
//!
//! `delta_eps(q) = (4 pi eps)^{-1/2} exp(-q^2 / (4 eps))` converges as a
//! distribution only inside the wedge `(Re q)^2 > (Im q)^2`; contours used
//! for sifting must keep `q - a` in that wedge.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contour::{quad, Contour, QuadratureRule};
use crate::error::{Error, Result};

/// Regulator sequence used for convergence certificates.
pub const EPSILON_SWEEP: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TamedDelta {
    epsilon: f64,
}

/// Pointwise value of the regularised delta. Outside the wedge the value is
/// still computed (it may overflow) and flagged as divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaValue {
    pub value: Complex64,
    pub in_domain: bool,
}

impl DeltaValue {
    pub fn divergent(&self) -> bool {
        !self.in_domain
    }
}

impl TamedDelta {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::NonPositiveEpsilon(epsilon));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn value(&self, q: Complex64) -> Complex64 {
        (q * q / (-4.0 * self.epsilon)).exp() / (4.0 * PI * self.epsilon).sqrt()
    }

    pub fn eval(&self, q: Complex64) -> DeltaValue {
        DeltaValue {
            value: self.value(q),
            in_domain: in_domain(q),
        }
    }

    /// `n`-th derivative in `q`, via physicists' Hermite polynomials:
    /// `d^n/dq^n delta = (-1)^n (2 sqrt(eps))^{-n} H_n(q / 2 sqrt(eps)) delta`.
    pub fn derivative(&self, q: Complex64, n: usize) -> Complex64 {
        let s = 2.0 * self.epsilon.sqrt();
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.value(q) * hermite(n, q / s) * (sign / s.powi(n as i32))
    }
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: usize, x: Complex64) -> Complex64 {
    let mut h0 = Complex64::new(1.0, 0.0);
    if n == 0 {
        return h0;
    }
    let mut h1 = x * 2.0;
    for k in 1..n {
        let h2 = x * h1 * 2.0 - h0 * (2.0 * k as f64);
        h0 = h1;
        h1 = h2;
    }
    h1
}

pub fn delta_eps(q: Complex64, epsilon: f64) -> Result<DeltaValue> {
    Ok(TamedDelta::new(epsilon)?.eval(q))
}

/// Strict wedge condition `(Re q)^2 > (Im q)^2`; the boundary is outside.
pub fn in_domain(q: Complex64) -> bool {
    q.re * q.re > q.im * q.im
}

/// Checks that `q - a` stays inside the wedge for every contour node.
pub fn check_wedge(c: &Contour, a: Complex64) -> Result<()> {
    let scale = c.max_spacing() * 1e-9;
    for &q in c.nodes() {
        let d = q - a;
        if d.norm() > scale && !in_domain(d) {
            return Err(Error::WedgeViolation { point: d });
        }
    }
    Ok(())
}

fn sift_contour(c: &Contour, a: Complex64, epsilon: f64) -> Contour {
    let w = epsilon.sqrt();
    c.refine_near(a, 60.0 * w, 0.5 * w)
}

/// `∫_C f(q) delta_eps(q - a) dq`, which tends to `f(a)` as `eps -> 0`.
pub fn sift<F>(f: F, a: Complex64, c: &Contour, epsilon: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    sift_with(f, a, c, epsilon, &QuadratureRule::default())
}

pub fn sift_with<F>(
    f: F,
    a: Complex64,
    c: &Contour,
    epsilon: f64,
    rule: &QuadratureRule,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let d = TamedDelta::new(epsilon)?;
    check_wedge(c, a)?;
    let fine = sift_contour(c, a, epsilon);
    quad(|q| f(q) * d.value(q - a), &fine, rule)
}

/// `∫_C f(xi) d^n/dxi^n delta_eps(xi - a) dxi`, tending to `(-1)^n f^(n)(a)`.
pub fn sift_derivative<F>(f: F, a: Complex64, c: &Contour, epsilon: f64, n: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let d = TamedDelta::new(epsilon)?;
    check_wedge(c, a)?;
    let fine = sift_contour(c, a, epsilon);
    quad(
        |q| f(q) * d.derivative(q - a, n),
        &fine,
        &QuadratureRule::default(),
    )
}

/// Sifted values and errors over a regulator sweep, plus the error ratio
/// obtained by halving each regulator.
#[derive(Debug, Clone, PartialEq)]
pub struct SiftCertificate {
    pub epsilons: Vec<f64>,
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
    /// `|err(eps)| / |err(eps / 2)|` for each regulator; `None` when the
    /// error is already at rounding level.
    pub halving_ratios: Vec<Option<f64>>,
}

pub fn sift_certificate<F>(
    f: F,
    a: Complex64,
    c: &Contour,
    exact: Complex64,
    epsilons: &[f64],
) -> Result<SiftCertificate>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut cert = SiftCertificate {
        epsilons: epsilons.to_vec(),
        values: Vec::new(),
        errors: Vec::new(),
        halving_ratios: Vec::new(),
    };
    for &eps in epsilons {
        let v = sift(&f, a, c, eps)?;
        let half = sift(&f, a, c, eps / 2.0)?;
        let (e1, e2) = ((v - exact).norm(), (half - exact).norm());
        let floor = 1e-12 * (1.0 + exact.norm());
        cert.values.push(v);
        cert.errors.push(e1);
        cert.halving_ratios
            .push((e1 > floor && e2 > floor).then(|| e1 / e2));
    }
    Ok(cert)
}
