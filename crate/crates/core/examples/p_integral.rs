//! The momentum integral of one time slice along its steepest-descent
//! contour, its saddle and the recovered Lagrangian.

use catfpi::fpi::{lagrangian, p_contour, p_gaussian_integral, round_trip, saddle_point_p, PotentialSpec, TheorySpec};
use catfpi::Complex64 as C;

fn main() -> catfpi::Result<()> {
    let ts = TheorySpec::new(1.0, C::new(1.0, 0.3), 0.1, PotentialSpec::quadratic(C::new(0.5, 0.0)))?;
    let (qdot, q) = (C::new(0.7, 0.1), C::new(0.2, 0.0));
    let c = p_contour(&ts, qdot, 400)?;
    let r = p_gaussian_integral(&ts, qdot, q, &c)?;
    println!("numeric {:.12}\nclosed  {:.12}\nrel {:.1e}", r.numeric, r.closed_form, r.rel_error);
    let s = saddle_point_p(&ts, qdot)?;
    println!("saddle p = {:.6} (Newton {:.6}, {} iterations)", s.p, s.newton, s.newton_iterations);
    // q and qdot vary independently so that every basis term is resolved.
    let samples: Vec<(C, C)> = (0..9)
        .map(|k| (C::new(0.2 * (k % 3) as f64 - 0.2, 0.02), C::new(0.3 - 0.2 * (k / 3) as f64, 0.05)))
        .collect();
    let rt = round_trip(&ts, &samples)?;
    println!("recovered kinetic coefficient {:.6} (m/2 = {:.6}), max error {:.1e}", rt.kinetic, ts.m / 2.0, rt.max_abs_error);
    println!("L(q, qdot) = {:.6}", lagrangian(&ts, q, qdot));
    Ok(())
}
