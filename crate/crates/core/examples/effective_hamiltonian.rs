//! One propagation step against the finite-difference Schrodinger update
//! for a complex quartic potential, with the empirical order in dt.

use catfpi::contour::Contour;
use catfpi::fpi::{effective_hamiltonian_check, free_gaussian_evolved, PotentialSpec, TheorySpec, WaveFunction};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let m = C::new(1.0, 0.1);
    let pot = PotentialSpec::new(&[(2, C::new(1.0, 0.2)), (4, C::new(0.1, 0.05))])?;
    let ts = TheorySpec::new(1.0, m, 0.04, pot)?;
    let line = Contour::line(0.0, C::new(0.0, 0.0), 6.0, 2401)?;
    let psi = WaveFunction::from_analytic(line, free_gaussian_evolved(C::new(0.2, 0.0), 0.7, m, 1.0, 0.0))?;
    let chk = effective_hamiltonian_check(&ts, &psi, &[0.04, 0.02, 0.01, 0.005])?;
    for (dt, d) in chk.dts.iter().zip(&chk.discrepancies) {
        println!("dt = {dt:<6} discrepancy = {d:.3e}");
    }
    println!("orders: {:?}", chk.orders);
    Ok(())
}
