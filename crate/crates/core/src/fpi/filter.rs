use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::TheorySpec;
use crate::contour::{quad, QuadratureRule};
use crate::error::Result;
use crate::xi::{regulated_line, XiBasisSpec};

type C = Complex64;

pub const DEFAULT_FILTER_ETA: f64 = 0.1;

/// Unit direction `exp(-i arg m)`: along it `m (xi - q)` stays real, so the
/// filtered amplitude is a real Gaussian in the grid coordinate.
pub fn xi_direction(m: C) -> C {
    C::from_polar(1.0, -m.arg())
}

/// `n` points `q_target + s exp(-i arg m)` for `s` in `[-half_range, half_range]`.
pub fn xi_line(ts: &TheorySpec, q_target: C, half_range: f64, n: usize) -> Vec<C> {
    let dir = xi_direction(ts.m);
    (0..n)
        .map(|k| {
            let s = -half_range + 2.0 * half_range * k as f64 / (n - 1).max(1) as f64;
            q_target + dir * s
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterProfile {
    pub q_target: C,
    pub eta: f64,
    pub xi: Vec<C>,
    pub values: Vec<C>,
    pub magnitude: Vec<f64>,
    pub argmax: usize,
    /// Largest `|xi - xi_peak|` with magnitude at least half the peak.
    pub half_width: f64,
}

impl FilterProfile {
    pub fn peak_xi(&self) -> C {
        self.xi[self.argmax]
    }

    /// Spacing between neighbouring grid points around the peak.
    pub fn grid_step(&self) -> f64 {
        let k = self.argmax.min(self.xi.len() - 2);
        (self.xi[k + 1] - self.xi[k]).norm()
    }
}

/// `I(xi) = int exp[(i/hbar) dt L(q, (q_target - q)/dt)] psi_xi(q) dq` with
/// the regulator `exp(-eta (q - Re q_target)^2)`, for each grid point.
pub fn xi_filter_profile(ts: &TheorySpec, xi_grid: &[C], q_target: C, eta: f64) -> Result<FilterProfile> {
    let basis = XiBasisSpec::new(ts.m, ts.dt, ts.hbar)?;
    let c1 = basis.c1();
    // The kernel and basis Gaussians cancel, leaving exp(2 c1 (xi - q_target) q).
    let linear = xi_grid.iter().map(|xi| c1 * (xi - q_target) * 2.0);
    let growth = linear.clone().map(|k| k.re.abs()).fold(0.0, f64::max);
    let freq = linear.map(|k| k.norm()).fold(0.0, f64::max);
    let base = regulated_line(eta, growth, (freq / PI).max(1.0) * 4.0)?;
    let line = base.translated(C::new(q_target.re, 0.0));
    let rule = QuadratureRule::gauss(8);
    let kin = C::i() * ts.m / (2.0 * ts.hbar * ts.dt);
    let mut values = Vec::with_capacity(xi_grid.len());
    for &xi in xi_grid {
        let c_a = basis.c_a();
        let v = quad(
            |q| {
                let (a, b) = (q_target - q, q - xi);
                let r = q - q_target.re;
                let e = kin * a * a - C::new(0.0, ts.dt / ts.hbar) * ts.potential.value(q) - c1 * b * b - r * r * eta;
                c_a * e.exp()
            },
            &line,
            &rule,
        )?;
        values.push(v);
    }
    let magnitude: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let argmax = magnitude
        .iter()
        .enumerate()
        .fold(0, |best, (k, &m)| if m > magnitude[best] { k } else { best });
    let peak = xi_grid[argmax];
    let half_width = xi_grid
        .iter()
        .zip(&magnitude)
        .filter(|(_, &m)| m >= 0.5 * magnitude[argmax])
        .map(|(x, _)| (x - peak).norm())
        .fold(0.0, f64::max);
    Ok(FilterProfile {
        q_target,
        eta,
        xi: xi_grid.to_vec(),
        values,
        magnitude,
        argmax,
        half_width,
    })
}
