//! Discretised path integral with complex mass and polynomial potential.

mod amplitude;
mod filter;
mod identities;
mod saddle;
mod step;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::Contour;
use crate::error::{Error, Result};

pub use amplitude::{fock_oracle_amplitude, gaussian_wavefunction, multi_slice_amplitude, multi_slice_amplitude_with, FockOracle};
pub use filter::{xi_direction, xi_filter_profile, xi_line, FilterProfile, DEFAULT_FILTER_ETA};
pub use identities::{delta_expansion, gaussian_moment_exact, gaussian_moment_numeric, DeltaExpansion};
pub use saddle::{
    hamiltonian, p_contour, p_gaussian_integral, round_trip, saddle_point_p, saddle_point_q, PIntegral,
    RoundTripReport, SaddleP, SaddleQ,
};
pub use step::{
    effective_hamiltonian_check, free_gaussian_evolved, propagate_step, propagate_step_to, schrodinger_half_step,
    HamiltonianCheck,
};

type C = Complex64;

/// Highest supported power in the potential.
pub const MAX_POTENTIAL_DEGREE: usize = 6;

/// `V(q) = sum_{n=2}^{n_max} b_n q^n`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    /// `coeffs[k]` is `b_{k+2}`.
    coeffs: Vec<C>,
}

impl PotentialSpec {
    pub fn free() -> Self {
        Self::default()
    }

    /// From `(n, b_n)` pairs; unlisted powers are zero.
    pub fn new(terms: &[(usize, C)]) -> Result<Self> {
        let mut coeffs = Vec::new();
        for &(n, b) in terms {
            if !(2..=MAX_POTENTIAL_DEGREE).contains(&n) {
                return Err(Error::Config(format!(
                    "potential power {n} outside 2..={MAX_POTENTIAL_DEGREE}"
                )));
            }
            if coeffs.len() < n - 1 {
                coeffs.resize(n - 1, C::new(0.0, 0.0));
            }
            coeffs[n - 2] += b;
        }
        while coeffs.last().is_some_and(|b| b.norm() == 0.0) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    pub fn quadratic(b2: C) -> Self {
        Self::new(&[(2, b2)]).expect("power 2 is always valid")
    }

    pub fn is_free(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power present, or `None` for the free case.
    pub fn n_max(&self) -> Option<usize> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() + 1)
    }

    /// `(n, b_n)` for the nonzero terms.
    pub fn terms(&self) -> Vec<(usize, C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| b.norm() != 0.0)
            .map(|(k, &b)| (k + 2, b))
            .collect()
    }

    pub fn coefficient(&self, n: usize) -> C {
        n.checked_sub(2)
            .and_then(|k| self.coeffs.get(k))
            .copied()
            .unwrap_or(C::new(0.0, 0.0))
    }

    pub fn value(&self, q: C) -> C {
        self.terms().iter().map(|&(n, b)| b * q.powu(n as u32)).sum()
    }

    pub fn derivative(&self, q: C) -> C {
        self.terms()
            .iter()
            .map(|&(n, b)| b * (n as f64) * q.powu(n as u32 - 1))
            .sum()
    }

    pub fn second_derivative(&self, q: C) -> C {
        self.terms()
            .iter()
            .map(|&(n, b)| b * ((n * (n - 1)) as f64) * q.powu(n as u32 - 2))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheorySpec {
    pub hbar: f64,
    pub m: C,
    pub dt: f64,
    pub potential: PotentialSpec,
    /// Number of time slices; `dt = (t_f - t_i) / (slices - 1)`.
    pub slices: usize,
}

impl TheorySpec {
    pub fn new(hbar: f64, m: C, dt: f64, potential: PotentialSpec) -> Result<Self> {
        let ts = Self {
            hbar,
            m,
            dt,
            potential,
            slices: 2,
        };
        ts.validate()?;
        Ok(ts)
    }

    /// Slices spanning `[t_i, t_f]` with `slices` time points.
    pub fn over_interval(hbar: f64, m: C, t_i: f64, t_f: f64, slices: usize, potential: PotentialSpec) -> Result<Self> {
        if slices < 2 {
            return Err(Error::Config(format!("need at least 2 slices, got {slices}")));
        }
        let ts = Self {
            hbar,
            m,
            dt: (t_f - t_i) / (slices - 1) as f64,
            potential,
            slices,
        };
        ts.validate()?;
        Ok(ts)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) {
            return Err(Error::Config("hbar must be positive".into()));
        }
        if self.m.im < 0.0 {
            return Err(Error::Config(format!("Im m = {} must be >= 0", self.m.im)));
        }
        if self.m.norm() == 0.0 {
            return Err(Error::Config("mass must be nonzero".into()));
        }
        if !(self.dt > 0.0) {
            return Err(Error::Config("dt must be positive".into()));
        }
        if self.slices < 2 {
            return Err(Error::Config("need at least 2 slices".into()));
        }
        Ok(())
    }

    pub fn with_dt(&self, dt: f64) -> Self {
        Self { dt, ..self.clone() }
    }

    /// Per-step measure `sqrt(m / (2 pi i hbar dt))`, principal branch.
    pub fn measure(&self) -> C {
        (self.m / (C::i() * 2.0 * std::f64::consts::PI * self.hbar * self.dt)).sqrt()
    }

    pub fn total_time(&self) -> f64 {
        self.dt * (self.slices - 1) as f64
    }
}

/// `L = m qdot^2 / 2 - V(q)`.
pub fn lagrangian(ts: &TheorySpec, q: C, qdot: C) -> C {
    ts.m * qdot * qdot * 0.5 - ts.potential.value(q)
}

/// Taylor data of `L` in `qdot` around `qdot = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LagrangianTaylor {
    pub l0: C,
    pub dl_dqdot: C,
    pub d2l_dqdot2: C,
}

pub fn lagrangian_taylor(ts: &TheorySpec, q: C) -> LagrangianTaylor {
    LagrangianTaylor {
        l0: -ts.potential.value(q),
        dl_dqdot: C::new(0.0, 0.0),
        d2l_dqdot2: ts.m,
    }
}

/// Samples of `psi` at the nodes of a contour. `bra` optionally holds the
/// samples of the modified conjugate `psi^{*_q}` at the same nodes, which
/// is needed to pair against a wave function off the real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    contour: Contour,
    values: Vec<C>,
    bra: Option<Vec<C>>,
}

impl WaveFunction {
    pub fn new(contour: Contour, values: Vec<C>) -> Result<Self> {
        if values.len() != contour.len() {
            return Err(Error::Dimension(format!(
                "{} samples on a contour with {} nodes",
                values.len(),
                contour.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Construction("wave function samples must be finite".into()));
        }
        Ok(Self {
            contour,
            values,
            bra: None,
        })
    }

    /// Samples an analytic function given with real-structure so that its
    /// modified conjugate `conj(f(conj q))` is also available.
    pub fn from_analytic(contour: Contour, f: impl Fn(C) -> C) -> Result<Self> {
        let values = contour.nodes().iter().map(|&q| f(q)).collect();
        let bra = contour.nodes().iter().map(|&q| f(q.conj()).conj()).collect();
        let mut w = Self::new(contour, values)?;
        w.bra = Some(bra);
        Ok(w)
    }

    pub fn contour(&self) -> &Contour {
        &self.contour
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// Samples of `psi^{*_q}`. Without an analytic form this is only
    /// available on the real axis, where it is the plain conjugate.
    pub fn bra_values(&self) -> Result<Vec<C>> {
        if let Some(b) = &self.bra {
            return Ok(b.clone());
        }
        if self.contour.nodes().iter().all(|q| q.im == 0.0) {
            return Ok(self.values.iter().map(|v| v.conj()).collect());
        }
        Err(Error::Construction(
            "modified conjugate off the real axis needs an analytic wave function".into(),
        ))
    }

    /// Sup-norm over the nodes.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Trapezoid weights `dq` at the contour nodes.
pub(crate) fn trapezoid_weights(c: &Contour) -> Vec<C> {
    let n = c.nodes();
    let mut w = vec![C::new(0.0, 0.0); n.len()];
    for k in 0..n.len().saturating_sub(1) {
        let h = (n[k + 1] - n[k]) * 0.5;
        w[k] += h;
        w[k + 1] += h;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: f64, b: f64) -> C {
        C::new(a, b)
    }

    #[test]
    fn lagrangian_examples() {
        let free = TheorySpec::new(1.0, c(1.0, 0.0), 0.1, PotentialSpec::free()).unwrap();
        assert_eq!(lagrangian(&free, c(0.0, 0.0), c(2.0, 0.0)), c(2.0, 0.0));
        let harm = TheorySpec::new(1.0, c(1.0, 0.0), 0.1, PotentialSpec::quadratic(c(1.0, 0.0))).unwrap();
        assert_eq!(lagrangian(&harm, c(1.0, 0.0), c(0.0, 0.0)), c(-1.0, 0.0));
        let cm = TheorySpec::new(1.0, c(1.0, 1.0), 0.1, PotentialSpec::free()).unwrap();
        assert_eq!(lagrangian(&cm, c(0.3, 0.0), c(1.0, 0.0)), c(0.5, 0.5));
        let t = lagrangian_taylor(&harm, c(1.0, 0.0));
        assert_eq!((t.l0, t.dl_dqdot, t.d2l_dqdot2), (c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn potential_terms() {
        let v = PotentialSpec::new(&[(4, c(0.5, 0.0)), (2, c(1.0, 0.2))]).unwrap();
        assert_eq!(v.n_max(), Some(4));
        let q = c(0.7, -0.1);
        let want = c(1.0, 0.2) * q * q + q.powu(4) * 0.5;
        assert!((v.value(q) - want).norm() < 1e-15);
        let h = 1e-6;
        let fd = (v.value(q + h) - v.value(q - h)) / (2.0 * h);
        assert!((fd - v.derivative(q)).norm() < 1e-8);
        assert!(PotentialSpec::new(&[(7, c(1.0, 0.0))]).is_err());
        assert!(PotentialSpec::new(&[(1, c(1.0, 0.0))]).is_err());
        assert!(PotentialSpec::free().is_free());
    }

    #[test]
    fn theory_validation() {
        assert!(TheorySpec::new(1.0, c(1.0, -0.1), 0.1, PotentialSpec::free()).is_err());
        assert!(TheorySpec::new(1.0, c(1.0, 0.0), 0.0, PotentialSpec::free()).is_err());
        let ts = TheorySpec::over_interval(1.0, c(1.0, 0.0), 0.0, 0.05, 5, PotentialSpec::free()).unwrap();
        assert!((ts.dt - 0.0125).abs() < 1e-15);
        assert!(TheorySpec::over_interval(1.0, c(1.0, 0.0), 0.0, 1.0, 1, PotentialSpec::free()).is_err());
    }

    #[test]
    fn measure_branch_at_imaginary_mass() {
        let ts = TheorySpec::new(1.0, c(0.0, 1.0), 0.1, PotentialSpec::free()).unwrap();
        let want = (1.0 / (2.0 * std::f64::consts::PI * 0.1)).sqrt();
        assert!((ts.measure() - c(want, 0.0)).norm() < 1e-14);
    }
}
