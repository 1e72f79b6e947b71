//! Sifts test functions with the Gaussian-regularised delta at complex
//! points and prints the regulator sweep.

use catfpi::contour::make_tilted_line;
use catfpi::delta::{in_domain, sift_certificate, sift_derivative, EPSILON_SWEEP};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let a = C::new(0.3, 0.1);
    let line = make_tilted_line(15f64.to_radians(), a, 10.0, 201)?;
    let cert = sift_certificate(|q| q.exp(), a, &line, a.exp(), &EPSILON_SWEEP)?;
    println!("e^q sifted at {a}");
    for ((eps, err), ratio) in cert.epsilons.iter().zip(&cert.errors).zip(&cert.halving_ratios) {
        println!("  eps = {eps:.0e}  |err| = {err:.3e}  halving ratio = {ratio:?}");
    }
    let d2 = sift_derivative(|q| q.powu(4), a, &line, 1e-6, 2)?;
    println!("second-derivative sift of q^4: {d2:.8}  exact {:.8}", a * a * 12.0);
    for q in [C::new(1.0, 0.5), C::new(0.5, 1.0), C::new(-2.0, 1.9)] {
        println!("{q} inside the wedge: {}", in_domain(q));
    }
    Ok(())
}
