use num_complex::Complex64;
use serde::Serialize;

use crate::contour::{quad, Contour, QuadratureRule};
use crate::error::{Error, Result};

type C = Complex64;

/// Steepest-descent line through `center` for `exp(-a (q - center)^2)`,
/// reaching `exp(-40)` at the ends.
fn gaussian_line(a: C, center: C) -> Result<Contour> {
    if !(a.re > 0.0) {
        return Err(Error::Config(format!("need Re A > 0, got {a}")));
    }
    let u = (40.0 / a.norm()).sqrt() + 3.0 * center.norm().max(1.0) / a.norm().sqrt();
    Contour::line(-a.arg() / 2.0, center, u, 401)
}

/// `int q^n exp(-A (q - q_c)^2) dq / sqrt(pi / A)` by quadrature.
pub fn gaussian_moment_numeric(n: u32, a: C, qc: C) -> Result<C> {
    let c = gaussian_line(a, qc)?;
    let v = quad(
        |q| q.powu(n) * (-a * (q - qc) * (q - qc)).exp(),
        &c,
        &QuadratureRule::gauss(8),
    )?;
    Ok(v / (std::f64::consts::PI / a).sqrt())
}

/// Exact normalised moment for `n <= 4`.
pub fn gaussian_moment_exact(n: u32, a: C, qc: C) -> Result<C> {
    let s = (a * 2.0).inv();
    Ok(match n {
        0 => C::new(1.0, 0.0),
        1 => qc,
        2 => qc * qc + s,
        3 => qc.powu(3) + qc * s * 3.0,
        4 => qc.powu(4) + qc * qc * s * 6.0 + s * s * 3.0,
        _ => return Err(Error::Config(format!("moments implemented for n <= 4, got {n}"))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaExpansion {
    pub alpha: C,
    pub beta: C,
    /// `int f(x) sqrt(alpha/pi) exp(-alpha (x - beta)^2) dx`.
    pub sifted: C,
    pub leading: C,
    /// `f(beta) + f''(beta) / (4 alpha)`.
    pub corrected: C,
}

/// Sifts `f` against the normalised Gaussian of width `alpha^{-1/2}`
/// centred at `beta`; `f2` is the second derivative of `f`.
pub fn delta_expansion(f: impl Fn(C) -> C, f2: impl Fn(C) -> C, beta: C, alpha: C) -> Result<DeltaExpansion> {
    let c = gaussian_line(alpha, beta)?;
    let norm = (alpha / std::f64::consts::PI).sqrt();
    let sifted = quad(
        |x| f(x) * norm * (-alpha * (x - beta) * (x - beta)).exp(),
        &c,
        &QuadratureRule::gauss(8),
    )?;
    let leading = f(beta);
    Ok(DeltaExpansion {
        alpha,
        beta,
        sifted,
        leading,
        corrected: leading + f2(beta) / (alpha * 4.0),
    })
}
