use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{lagrangian, lagrangian_taylor, TheorySpec};
use crate::contour::{quad, Contour, QuadratureRule};
use crate::error::{Error, Result};

type C = Complex64;

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 100;

/// `H(p, q) = p^2 / 2m + V(q)`, the Legendre transform of `L` at
/// `p = dL/dqdot = m qdot`.
pub fn hamiltonian(ts: &TheorySpec, p: C, q: C) -> C {
    p * p / (ts.m * 2.0) + ts.potential.value(q)
}

/// Steepest-descent line for the kinetic `p` Gaussian through the saddle
/// `m qdot`: angle `arg(m)/2 - pi/4`, i.e. `-pi/4` at real mass.
pub fn p_contour(ts: &TheorySpec, qdot: C, n: usize) -> Result<Contour> {
    let angle = ts.m.arg() / 2.0 - FRAC_PI_4;
    let a = ts.dt / (2.0 * ts.m.norm() * ts.hbar);
    let u = (40.0 / a).sqrt();
    Contour::line(angle, ts.m * qdot, u, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PIntegral {
    pub numeric: C,
    pub closed_form: C,
    pub rel_error: f64,
}

fn p_integral_with(ts: &TheorySpec, qdot: C, c: &Contour, h: impl Fn(C) -> C) -> Result<C> {
    let k = C::new(0.0, ts.dt / ts.hbar);
    let v = quad(|p| (k * (p * qdot - h(p))).exp(), c, &QuadratureRule::gauss(8))?;
    Ok(v / (2.0 * PI * ts.hbar))
}

/// `int dp/(2 pi hbar) exp[(i/hbar) dt (p qdot - p^2/2m - V(q))]` along the
/// given contour, and its closed form `sqrt(m / 2 pi i hbar dt)
/// exp[(i/hbar) dt L(q, qdot)]`.
pub fn p_gaussian_integral(ts: &TheorySpec, qdot: C, q: C, c: &Contour) -> Result<PIntegral> {
    let numeric = p_integral_with(ts, qdot, c, |p| hamiltonian(ts, p, q))?;
    let closed_form = ts.measure() * (C::new(0.0, ts.dt / ts.hbar) * lagrangian(ts, q, qdot)).exp();
    Ok(PIntegral {
        numeric,
        closed_form,
        rel_error: (numeric - closed_form).norm() / closed_form.norm(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleP {
    /// `m qdot`.
    pub p: C,
    /// Newton iterate started from `p = 0`.
    pub newton: C,
    pub newton_iterations: usize,
    /// `|d/dp exponent|` at `m qdot`.
    pub gradient_residual: f64,
}

/// Saddle of the `p` exponent `(i/hbar) dt (p qdot - p^2/2m - V)`.
pub fn saddle_point_p(ts: &TheorySpec, qdot: C) -> Result<SaddleP> {
    let k = C::new(0.0, ts.dt / ts.hbar);
    let grad = |p: C| k * (qdot - p / ts.m);
    let hess = -k / ts.m;
    let mut p = C::new(0.0, 0.0);
    let mut iterations = 0;
    loop {
        let step = grad(p) / hess;
        p -= step;
        iterations += 1;
        if step.norm() <= NEWTON_TOL * p.norm().max(1.0) {
            break;
        }
        if iterations >= NEWTON_MAX_ITER {
            return Err(Error::NoConvergence {
                iterations,
                last_step: step.norm(),
            });
        }
    }
    let saddle = ts.m * qdot;
    Ok(SaddleP {
        p: saddle,
        newton: p,
        newton_iterations: iterations,
        gradient_residual: grad(saddle).norm(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleQ {
    /// `q_next + (dt / L2)(L1 - p)` from the Taylor data of `L`.
    pub q_formula: C,
    /// Stationary point of the exponent found by Newton.
    pub q_numeric: C,
    pub separation: f64,
    /// `|p - m qdot|` at the formula saddle.
    pub momentum_residual_formula: f64,
    /// `|p - m qdot|` at the numeric saddle; equals `dt |V'(q)|` there.
    pub momentum_residual_numeric: f64,
    /// `|d/dq exponent|` at the numeric saddle.
    pub stationarity_residual: f64,
    pub iterations: usize,
}

/// Stationary point in `q_t` of `-(i/hbar)(p' q_next - p q_t - L dt)` with
/// `qdot = (q_next - q_t) / dt` and `L` evaluated at `q_t`.
pub fn saddle_point_q(ts: &TheorySpec, p: C, p_prime: C, q_next: C) -> Result<SaddleQ> {
    let taylor = lagrangian_taylor(ts, q_next);
    if taylor.d2l_dqdot2.norm() == 0.0 {
        return Err(Error::Config("d2L/dqdot2 vanishes".into()));
    }
    let dt = ts.dt;
    let q_formula = q_next + (taylor.dl_dqdot - p) * dt / taylor.d2l_dqdot2;
    let _ = p_prime;
    // The exponent derivative is (i/hbar) g(q).
    let g = |q: C| p - ts.m * (q_next - q) / dt - ts.potential.derivative(q) * dt;
    let dg = |q: C| ts.m / dt - ts.potential.second_derivative(q) * dt;
    let mut q = q_formula;
    let mut iterations = 0;
    loop {
        let mut step = g(q) / dg(q);
        let before = g(q).norm();
        let mut trial = q - step;
        // Damped fallback: halve the step until the residual stops growing.
        let mut halvings = 0;
        while g(trial).norm() > before && halvings < 30 {
            step *= 0.5;
            trial = q - step;
            halvings += 1;
        }
        q = trial;
        iterations += 1;
        if step.norm() <= NEWTON_TOL * q.norm().max(1.0) || g(q).norm() == 0.0 {
            break;
        }
        if iterations >= NEWTON_MAX_ITER {
            return Err(Error::NoConvergence {
                iterations,
                last_step: step.norm(),
            });
        }
    }
    let momentum = |qs: C| (p - ts.m * (q_next - qs) / dt).norm();
    Ok(SaddleQ {
        q_formula,
        q_numeric: q,
        separation: (q - q_formula).norm(),
        momentum_residual_formula: momentum(q_formula),
        momentum_residual_numeric: momentum(q),
        stationarity_residual: (g(q) / ts.hbar).norm(),
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub samples: usize,
    /// Largest `|L_recovered - L|` over the samples.
    pub max_abs_error: f64,
    /// Fitted coefficient of `qdot^2` (expected `m/2`).
    pub kinetic: C,
    /// Fitted `b_n` for `n = 2..=n_max`.
    pub potential: Vec<(usize, C)>,
    /// Largest deviation of any fitted coefficient from its expected value,
    /// including the spurious `qdot`, constant and linear-`q` terms.
    pub max_coefficient_error: f64,
}

/// `L -> H -> L`: Legendre-transform to `H`, integrate `exp[(i/hbar) dt
/// (p qdot - H)]` over `p`, take the logarithm and fit the result on the
/// polynomial basis `qdot^2, qdot, 1, q, q^2, ..., q^n_max`.
pub fn round_trip(ts: &TheorySpec, samples: &[(C, C)]) -> Result<RoundTripReport> {
    let n_max = ts.potential.n_max().unwrap_or(2);
    let basis_len = 3 + n_max;
    if samples.len() < basis_len {
        return Err(Error::Config(format!(
            "round trip needs at least {basis_len} samples, got {}",
            samples.len()
        )));
    }
    let mut a = DMatrix::<C>::zeros(samples.len(), basis_len);
    let mut b = DVector::<C>::zeros(samples.len());
    let mut max_abs_error: f64 = 0.0;
    for (row, &(q, qdot)) in samples.iter().enumerate() {
        let c = p_contour(ts, qdot, 400)?;
        let v = p_integral_with(ts, qdot, &c, |p| hamiltonian(ts, p, q))?;
        let recovered = (v / ts.measure()).ln() * C::new(0.0, -ts.hbar / ts.dt);
        max_abs_error = max_abs_error.max((recovered - lagrangian(ts, q, qdot)).norm());
        a[(row, 0)] = qdot * qdot;
        a[(row, 1)] = qdot;
        for k in 0..=n_max {
            a[(row, 2 + k)] = q.powu(k as u32);
        }
        b[row] = recovered;
    }
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-10 * smax).count();
    if rank < basis_len {
        return Err(Error::Construction(format!(
            "samples determine only {rank} of {basis_len} Lagrangian coefficients"
        )));
    }
    let fit = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Construction(format!("least squares failed: {e}")))?;
    let kinetic = fit[0];
    let mut expected = vec![ts.m * 0.5, C::new(0.0, 0.0)];
    for k in 0..=n_max {
        expected.push(-ts.potential.coefficient(k));
    }
    let max_coefficient_error = fit
        .iter()
        .zip(&expected)
        .map(|(f, e)| (f - e).norm())
        .fold(0.0, f64::max);
    let potential = (2..=n_max).map(|n| (n, -fit[2 + n])).collect();
    Ok(RoundTripReport {
        samples: samples.len(),
        max_abs_error,
        kinetic,
        potential,
        max_coefficient_error,
    })
}
