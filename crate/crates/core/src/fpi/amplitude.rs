use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::step::propagate_step_to;
use super::{trapezoid_weights, TheorySpec, WaveFunction};
use crate::contour::Contour;
use crate::error::{Error, Result};

type C = Complex64;

/// Unit-stiffness coherent state `(pi hbar)^{-1/4} exp[-q^2/(2 hbar) +
/// sqrt(2/hbar) lambda q - lambda^2/2 - |lambda|^2/2]`, analytic in `q`.
///
/// With `hbar = 1` this is the `m omega = 1` oscillator state whose Fock
/// components are `exp(-|lambda|^2/2) lambda^n / sqrt(n!)`.
pub fn gaussian_wavefunction(hbar: f64, lambda: C) -> impl Fn(C) -> C + Clone {
    let norm = (PI * hbar).powf(-0.25);
    let shift = -lambda * lambda * 0.5 - lambda.norm_sqr() * 0.5;
    let lin = lambda * (2.0 / hbar).sqrt();
    move |q: C| norm * (-q * q / (2.0 * hbar) + lin * q + shift).exp()
}

/// `<f| exp(-i H T / hbar) |i>` by `slices - 1` path-integral steps on the
/// contour of `psi_i`, closed with the modified-conjugate pairing against
/// `psi_f` on the same contour.
pub fn multi_slice_amplitude(ts: &TheorySpec, psi_i: &WaveFunction, psi_f: &WaveFunction) -> Result<C> {
    let contours = vec![psi_i.contour().clone(); ts.slices];
    multi_slice_amplitude_with(ts, psi_i, psi_f, &contours)
}

/// As [`multi_slice_amplitude`] with one contour per time point.
/// `contours[0]` must carry `psi_i` and the last must carry `psi_f`.
pub fn multi_slice_amplitude_with(
    ts: &TheorySpec,
    psi_i: &WaveFunction,
    psi_f: &WaveFunction,
    contours: &[Contour],
) -> Result<C> {
    if contours.len() != ts.slices {
        return Err(Error::Dimension(format!(
            "{} contours for {} time points",
            contours.len(),
            ts.slices
        )));
    }
    if psi_i.contour().nodes() != contours[0].nodes() {
        return Err(Error::Dimension("initial state is not sampled on the first contour".into()));
    }
    let last = &contours[contours.len() - 1];
    if psi_f.contour().nodes() != last.nodes() {
        return Err(Error::Dimension("final state is not sampled on the last contour".into()));
    }
    let mut psi = psi_i.clone();
    for c in &contours[1..] {
        psi = propagate_step_to(ts, &psi, c)?;
    }
    let bra = psi_f.bra_values()?;
    Ok(trapezoid_weights(last)
        .iter()
        .zip(&bra)
        .zip(psi.values())
        .map(|((w, b), v)| w * b * v)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockOracle {
    pub n: usize,
    pub time: f64,
    pub amplitude: C,
    /// Weight of the evolved state in the top tenth of the basis.
    pub tail_weight: f64,
}

/// Unit-stiffness Fock basis: `q = sqrt(hbar/2)(a + a^dag)`,
/// `p = i sqrt(hbar/2)(a^dag - a)`.
fn unit_ladder(n: usize, hbar: f64) -> (DMatrix<C>, DMatrix<C>) {
    let mut a = DMatrix::<C>::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C::new((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let s = (hbar / 2.0).sqrt();
    let q = (&a + &ad) * C::new(s, 0.0);
    let p = (&ad - &a) * C::new(0.0, s);
    (q, p)
}

fn coherent_components(lambda: C, n: usize) -> DVector<C> {
    let mut v = DVector::<C>::zeros(n);
    let mut c = C::new((-lambda.norm_sqr() / 2.0).exp(), 0.0);
    for k in 0..n {
        v[k] = c;
        c *= lambda / ((k + 1) as f64).sqrt();
    }
    v
}

/// `<lambda_f| exp(-i H T / hbar) |lambda_i>` with `H = p^2/2m + V(q)`
/// built from truncated `n x n` matrices and exponentiated directly.
pub fn fock_oracle_amplitude(ts: &TheorySpec, lambda_i: C, lambda_f: C, n: usize) -> Result<FockOracle> {
    if n < 2 {
        return Err(Error::Config(format!("Fock oracle needs n >= 2, got {n}")));
    }
    let (q, p) = unit_ladder(n, ts.hbar);
    let mut h = &p * &p / (ts.m * 2.0);
    let mut q_pow = DMatrix::<C>::identity(n, n);
    let mut power = 0;
    for (k, b) in ts.potential.terms() {
        while power < k {
            q_pow = &q_pow * &q;
            power += 1;
        }
        h += &q_pow * b;
    }
    let time = ts.total_time();
    let u = (h * C::new(0.0, -time / ts.hbar)).exp();
    let evolved = u * coherent_components(lambda_i, n);
    let bra = coherent_components(lambda_f, n);
    let amplitude = bra.dotc(&evolved);
    let top = n - n / 10;
    let total: f64 = evolved.iter().map(|v| v.norm_sqr()).sum();
    let tail: f64 = evolved.iter().skip(top).map(|v| v.norm_sqr()).sum();
    Ok(FockOracle {
        n,
        time,
        amplitude,
        tail_weight: tail / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpi::PotentialSpec;

    #[test]
    fn coherent_state_is_normalised() {
        let f = gaussian_wavefunction(1.0, C::new(0.4, -0.3));
        let c = Contour::real_line(10.0, 2001).unwrap();
        let w = WaveFunction::from_analytic(c, f).unwrap();
        let ts = TheorySpec::new(1.0, C::new(1.0, 0.0), 0.1, PotentialSpec::free()).unwrap();
        let _ = ts;
        let bra = w.bra_values().unwrap();
        let n: C = trapezoid_weights(w.contour())
            .iter()
            .zip(&bra)
            .zip(w.values())
            .map(|((a, b), v)| a * b * v)
            .sum();
        assert!((n - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_time_oracle_is_overlap() {
        let ts = TheorySpec::over_interval(1.0, C::new(1.0, 0.0), 0.0, 0.0 + 1e-300, 2, PotentialSpec::free()).unwrap();
        let (li, lf) = (C::new(0.3, 0.1), C::new(0.2, -0.2));
        let o = fock_oracle_amplitude(&ts, li, lf, 64).unwrap();
        let want = (lf.conj() * li - li.norm_sqr() / 2.0 - lf.norm_sqr() / 2.0).exp();
        assert!((o.amplitude - want).norm() < 1e-12);
    }
}
