//! Prints the xi-space filter profile around a target point as CSV, ready
//! for plotting.

use catfpi::fpi::{xi_filter_profile, xi_line, PotentialSpec, TheorySpec, DEFAULT_FILTER_ETA};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let ts = TheorySpec::new(1.0, C::new(1.0, 0.5), 0.01, PotentialSpec::quadratic(C::new(1.0, 0.0)))?;
    let target = C::new(0.3, 0.0);
    let grid = xi_line(&ts, target, 0.03, 61);
    let prof = xi_filter_profile(&ts, &grid, target, DEFAULT_FILTER_ETA)?;
    println!("xi_re,xi_im,abs");
    for (x, a) in prof.xi.iter().zip(&prof.magnitude) {
        println!("{},{},{}", x.re, x.im, a);
    }
    eprintln!("peak at {:.5}, half-width {:.2e}", prof.peak_xi(), prof.half_width);
    Ok(())
}
