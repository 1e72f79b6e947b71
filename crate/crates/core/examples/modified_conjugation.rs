//! Modified complex conjugation of a symbolic function for each choice of
//! unconjugated parameters, plus one sandwich identity.

use catfpi::conjugation::{mod_conjugate, parse, sandwich_identity_check, ComponentVector};
use catfpi::Complex64 as C;
use nalgebra::DMatrix;

fn main() -> catfpi::Result<()> {
    let f = parse("(+ (* a (^ q 2)) (* b (^ p 2)))", &["q", "p"])?;
    println!("f = {f}");
    for keep in [&[][..], &["q"], &["p"], &["q", "p"]] {
        println!("  A = {keep:?}: {}", mod_conjugate(&f, keep)?);
    }

    let gauss = |v: &str| parse(&format!("(exp (* (c -0.5 0) (^ {v} 2)))"), &[v]);
    let u = ComponentVector::new(vec![gauss("u")?, parse("(* (c 0 1) u)", &["u"])?]);
    let v = ComponentVector::new(vec![parse("(^ v 2)", &["v"])?, gauss("v")?]);
    let m = DMatrix::from_row_slice(2, 2, &[C::new(1.0, 0.0), C::new(0.0, 2.0), C::new(-1.0, 1.0), C::new(0.5, 0.0)]);
    let samples = vec![vec![("u", C::new(0.3, 0.2)), ("v", C::new(-0.4, 0.7))]];
    let rep = sandwich_identity_check(&u, &v, &m, &["u", "v"], &samples)?;
    println!("sandwich identity with A = {{u, v}}: max discrepancy {:.2e}", rep.max_discrepancy);
    Ok(())
}
