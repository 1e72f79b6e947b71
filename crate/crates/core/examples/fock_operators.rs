//! Builds the truncated non-hermitian position and momentum operators and
//! inspects their commutator, eigenstates and Fourier overlap.

use catfpi::fock::{new_operators, orthogonality_check, overlap_qp, overlap_qp_target, position_eigen_residual, FockConstruction};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let fc = FockConstruction::new(64, 1.0, 100.0, 0.01)?;
    let (q, p) = new_operators(&fc)?;
    let comm = q.commutator(&p).entries;
    println!("[q, p] diagonal: {:.6} ... {:.6}", comm[(0, 0)], comm[(63, 63)]);

    let fc = fc.with_n(512);
    for x in [C::new(0.0, 0.0), C::new(0.7, 0.0), C::new(0.3, 0.4)] {
        println!("eigen-residual at q = {x}: {:.2e}", position_eigen_residual(&fc, x)?);
    }
    let (x, k) = (C::new(0.4, 0.0), C::new(-0.3, 0.0));
    let o = overlap_qp(&fc, x, k)?;
    println!("<q|p> = {o:.6}  plane wave = {:.6}", overlap_qp_target(&fc, x, k));
    let orth = orthogonality_check(&fc, x, x + C::new(0.3, 0.1))?;
    println!("<q'|q> = {:.6e} against the tamed delta {:.6e}", orth.inner, orth.delta);
    Ok(())
}
