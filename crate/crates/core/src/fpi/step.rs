use num_complex::Complex64;
use serde::Serialize;

use super::{trapezoid_weights, TheorySpec, WaveFunction};
use crate::contour::Contour;
use crate::error::{Error, Result};

type C = Complex64;

/// Kinetic factor magnitude allowed at the contour ends.
const KINETIC_END_TOL: f64 = 1e-8;

/// One time slice onto the input grid.
pub fn propagate_step(ts: &TheorySpec, psi: &WaveFunction) -> Result<WaveFunction> {
    propagate_step_to(ts, psi, psi.contour())
}

/// `psi'(q') = sqrt(m / 2 pi i hbar dt) int_C exp[i m (q' - q)^2 / (2 hbar dt)
/// - i dt V(q) / hbar] psi(q) dq`, sampled at the nodes of `out`.
pub fn propagate_step_to(ts: &TheorySpec, psi: &WaveFunction, out: &Contour) -> Result<WaveFunction> {
    let a = C::i() * ts.m / (2.0 * ts.hbar * ts.dt);
    let nodes = psi.contour().nodes();
    let mid = out.nodes()[out.len() / 2];
    for end in [psi.contour().first(), psi.contour().last()] {
        let d = mid - end;
        let mag = (a * d * d).re.exp();
        if mag > KINETIC_END_TOL {
            return Err(Error::NonDecay {
                endpoint: mag,
                peak: 1.0,
            });
        }
    }
    let phase = C::new(0.0, -ts.dt / ts.hbar);
    let source: Vec<C> = trapezoid_weights(psi.contour())
        .iter()
        .zip(nodes)
        .zip(psi.values())
        .map(|((w, &q), v)| w * v * (phase * ts.potential.value(q)).exp())
        .collect();
    let measure = ts.measure();
    let values = out
        .nodes()
        .iter()
        .map(|&qp| {
            let mut sum = C::new(0.0, 0.0);
            for (&q, s) in nodes.iter().zip(&source) {
                let d = qp - q;
                let e = a * d * d;
                // Below this the term is under the double-precision floor.
                if e.re > -700.0 {
                    sum += e.exp() * s;
                }
            }
            sum * measure
        })
        .collect();
    WaveFunction::new(out.clone(), values)
}

/// Exact free evolution of `exp(-(q - q0)^2 / (2 sigma^2))` for time `t`:
/// the width `sigma^2` becomes `sigma^2 + i hbar t / m`.
pub fn free_gaussian_evolved(q0: C, sigma: f64, m: C, hbar: f64, t: f64) -> impl Fn(C) -> C {
    let s2 = C::new(sigma * sigma, 0.0) + C::i() * hbar * t / m;
    let amp = (s2 / (sigma * sigma)).sqrt().inv();
    move |q: C| amp * (-(q - q0) * (q - q0) / (s2 * 2.0)).exp()
}

/// `psi - (i dt / hbar) [-(hbar^2 / 2m) psi'' + V psi]` with `psi''` by
/// three-point differences along the (possibly non-uniform) node sequence.
/// The end nodes keep `psi`.
pub fn schrodinger_half_step(ts: &TheorySpec, psi: &WaveFunction) -> Result<WaveFunction> {
    let q = psi.contour().nodes();
    let v = psi.values();
    let mut out = v.to_vec();
    let k = C::new(0.0, -ts.dt / ts.hbar);
    for j in 1..q.len().saturating_sub(1) {
        let (hm, hp) = (q[j] - q[j - 1], q[j + 1] - q[j]);
        let d2 = ((v[j + 1] - v[j]) / hp - (v[j] - v[j - 1]) / hm) * 2.0 / (hp + hm);
        let h_psi = -d2 * (ts.hbar * ts.hbar) / (ts.m * 2.0) + ts.potential.value(q[j]) * v[j];
        out[j] = v[j] + k * h_psi;
    }
    WaveFunction::new(psi.contour().clone(), out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianCheck {
    pub dts: Vec<f64>,
    /// Sup-norm of `step(psi) - half_step(psi)` at each `dt`.
    pub discrepancies: Vec<f64>,
    /// Observed orders between consecutive `dt` values.
    pub orders: Vec<f64>,
}

impl HamiltonianCheck {
    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Compares one path-integral slice with the first-order Schrodinger
/// update for each `dt` and fits the order of the difference.
pub fn effective_hamiltonian_check(ts: &TheorySpec, psi: &WaveFunction, dts: &[f64]) -> Result<HamiltonianCheck> {
    let mut discrepancies = Vec::new();
    for &dt in dts {
        let t = ts.with_dt(dt);
        let width = (t.hbar * dt / t.m.norm()).sqrt();
        if psi.contour().max_spacing() > width / 4.0 {
            return Err(Error::GridTooCoarse(format!(
                "node spacing {:.3e} does not resolve the kernel width {width:.3e}",
                psi.contour().max_spacing()
            )));
        }
        let stepped = propagate_step(&t, psi)?;
        let half = schrodinger_half_step(&t, psi)?;
        let n = psi.values().len();
        let d = (1..n - 1)
            .map(|j| (stepped.values()[j] - half.values()[j]).norm())
            .fold(0.0, f64::max);
        discrepancies.push(d);
    }
    let orders = dts
        .windows(2)
        .zip(discrepancies.windows(2))
        .map(|(t, d)| (d[0] / d[1]).ln() / (t[0] / t[1]).ln())
        .collect();
    Ok(HamiltonianCheck {
        dts: dts.to_vec(),
        discrepancies,
        orders,
    })
}
