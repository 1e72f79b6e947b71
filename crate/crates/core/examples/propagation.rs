//! Time-slices a coherent-state amplitude through the harmonic oscillator
//! and compares it with a matrix exponential in a truncated Fock space.

use catfpi::contour::Contour;
use catfpi::fpi::{fock_oracle_amplitude, gaussian_wavefunction, multi_slice_amplitude, PotentialSpec, TheorySpec, WaveFunction};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let (li, lf) = (C::new(0.5, 0.2), C::new(0.45, 0.25));
    let line = Contour::line(20f64.to_radians(), C::new(0.0, 0.0), 8.0, 801)?;
    let psi_i = WaveFunction::from_analytic(line.clone(), gaussian_wavefunction(1.0, li))?;
    let psi_f = WaveFunction::from_analytic(line, gaussian_wavefunction(1.0, lf))?;
    for slices in [2, 5, 10] {
        let ts = TheorySpec::over_interval(1.0, C::new(1.0, 0.0), 0.0, 0.05, slices, PotentialSpec::quadratic(C::new(0.5, 0.0)))?;
        let a = multi_slice_amplitude(&ts, &psi_i, &psi_f)?;
        let o = fock_oracle_amplitude(&ts, li, lf, 256)?;
        println!("{slices} slices: {a:.8}  matrix exponential: {:.8}  rel = {:.2e}", o.amplitude, (a - o.amplitude).norm() / o.amplitude.norm());
    }
    Ok(())
}
