//! The xi basis at a complex mass: annihilators, normalisation and the
//! pair integral with its anti-xi partner.

use catfpi::xi::{annihilator_residual, biorthogonality_check, AnnihilatorFlavor, XiBasisSpec};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let spec = XiBasisSpec::new(C::new(1.0, 0.5), 0.01, 1.0)?;
    println!("C1 = {:.4}  C_A = {:.4}  C_B = {:.4}", spec.c1(), spec.c_a(), spec.c_b());
    let s = spec.state(C::new(0.2, 0.0));
    let grid: Vec<C> = (0..=10).map(|k| C::new(-0.5 + 0.1 * k as f64, 0.0)).collect();
    for flavor in [AnnihilatorFlavor::Momentum, AnnihilatorFlavor::Hamiltonian, AnnihilatorFlavor::Ordered] {
        let r = annihilator_residual(&s, flavor, &grid, 1e-4)?;
        println!("{:>12} annihilator residual: {r:.3e}", flavor.as_str());
    }
    let real = XiBasisSpec::new(C::new(1.0, 0.0), 0.01, 1.0)?;
    for sep in [0.0, 0.001, 0.004] {
        let rep = biorthogonality_check(&real, C::new(0.0, 0.0), C::new(sep, 0.0), &[1e-2])?;
        let row = &rep.rows[0];
        println!("xi' - xi = {sep}: pair integral {:.6e}, tamed delta {:.6e}", row.numeric, row.delta);
    }
    Ok(())
}
