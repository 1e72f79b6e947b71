//! Integrates a rotated Gaussian along a straight contour and a bump
//! contour, and checks the admissibility report of each.

use catfpi::contour::{quad, validate, Contour, QuadratureRule, DEFAULT_TILT_MARGIN};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let a = C::new(1.0, 0.5);
    let exact = (std::f64::consts::PI / a).sqrt();
    let rule = QuadratureRule::gauss(8);
    for (name, c) in [
        ("steepest line", Contour::line(-a.arg() / 2.0, C::new(0.0, 0.0), 8.0, 161)?),
        ("bump", Contour::bump(8.0, 321, 0.3, 1.0)?),
    ] {
        let v = quad(|q| (-a * q * q).exp(), &c, &rule)?;
        let report = validate(&c, DEFAULT_TILT_MARGIN);
        println!(
            "{name:>14}: {v:.12}  |err| = {:.2e}  worst tilt = {:.3} rad  valid = {}",
            (v - exact).norm(),
            report.worst_tilt,
            report.ok
        );
    }
    Ok(())
}
