//! Stationary point of the position integral between two momentum slices,
//! by formula and by Newton iteration.

use catfpi::fpi::{saddle_point_q, PotentialSpec, TheorySpec};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let (p, q_next) = (C::new(0.3, 0.0), C::new(1.0, 0.0));
    for (label, m, pot) in [
        ("free, m = 1+0.4i", C::new(1.0, 0.4), PotentialSpec::free()),
        ("b2 = 0.05, m = 1", C::new(1.0, 0.0), PotentialSpec::quadratic(C::new(0.05, 0.0))),
    ] {
        for dt in [0.02, 0.01] {
            let s = saddle_point_q(&TheorySpec::new(1.0, m, dt, pot.clone())?, p, p, q_next)?;
            println!(
                "{label}, dt = {dt}: formula {:.10} numeric {:.10}  |p - dL/dqdot| = {:.2e} / {:.2e}",
                s.q_formula, s.q_numeric, s.momentum_residual_formula, s.momentum_residual_numeric
            );
        }
    }
    Ok(())
}
