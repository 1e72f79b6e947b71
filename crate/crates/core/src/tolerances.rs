//! Default pass/fail thresholds for every harness verdict.
//!
//! Reports print the full table (with any overrides applied) so that a
//! verdict can always be traced back to the number it was judged against.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub key: &'static str,
    pub value: f64,
    pub description: &'static str,
}

const fn tol(key: &'static str, value: f64, description: &'static str) -> Tolerance {
    Tolerance {
        key,
        value,
        description,
    }
}

pub const DEFAULTS: &[Tolerance] = &[
    tol("delta.sift_abs", 1e-5, "|sift - f(a)| at eps = 1e-5"),
    tol("delta.ratio_min", 1.7, "lower bound on the eps-halving error ratio"),
    tol("delta.ratio_max", 2.3, "upper bound on the eps-halving error ratio"),
    tol("delta.contour_agreement", 1e-8, "sift on two admissible contours"),
    tol("delta.derivative_rel", 1e-4, "derivative sifting against (-1)^n f^(n)(a) at eps = 1e-6"),
    tol("delta.domain_fraction", 2e-2, "grid wedge fraction against the analytic one half"),
    tol("conjugate.sample", 1e-12, "sandwich identity at sampled parameters"),
    tol("fock.commutator_interior", 1e-12, "interior block of [q_new, p_new] against i hbar"),
    tol("fock.commutator_last", 1e-10, "last diagonal entry against i hbar (1 - N)"),
    tol("fock.eigen_residual", 1e-8, "q_new^dagger eigen-residual"),
    tol("fock.derivative_relation", 1e-6, "p_new^dagger derivative relation with step 1e-4"),
    tol("fock.overlap_rel", 2e-2, "Fourier overlap against the plane wave"),
    tol("fock.orthogonality_peak", 1e-6, "coincident-point inner product against the delta peak"),
    tol("fock.orthogonality_real", 1e-2, "real separation, relative to the tamed delta"),
    tol("fock.orthogonality_tilted", 2e-2, "tilted separation, relative to the tamed delta"),
    tol("fock.hermitian_split", 1e-14, "recomposition and hermiticity of the split"),
    tol("xi.eigenvalue_identity", 1e-12, "analytic derivative against m (xi - q) / dt"),
    tol("xi.annihilator", 1e-6, "momentum-flavour annihilator residual"),
    tol("xi.annihilator_hamiltonian", 1e-5, "hamiltonian-flavour annihilator residual"),
    tol("xi.normalisation", 1e-14, "C_B^* C_A against m / (2 pi hbar dt)"),
    tol("xi.biorthogonality", 1e-3, "pair integral at separated xi relative to the peak"),
    tol("xi.pair_closed_form", 1e-8, "pair integral against its regulated closed form, relative to the peak"),
    tol("xi.sift_rel", 1e-2, "test-function sifting by the pair integral"),
    tol("filter.half_width_factor", 3.0, "half-width bound in units of sqrt(hbar dt / |m|)"),
    tol("filter.correction_ratio_min", 1.7, "potential-induced profile change, dt halving ratio, lower"),
    tol("filter.correction_ratio_max", 2.3, "potential-induced profile change, dt halving ratio, upper"),
    tol("propagate.euclidean", 1e-6, "one step at m = i against the Gaussian convolution"),
    tol("propagate.tilted", 1e-5, "one step at m = 1 on a tilted contour against the exact propagator"),
    tol("propagate.identity_ratio_min", 1.7, "||step(dt) psi - psi|| halving ratio, lower"),
    tol("propagate.identity_ratio_max", 2.3, "||step(dt) psi - psi|| halving ratio, upper"),
    tol("propagate.order_min", 1.8, "empirical order of step vs finite-difference Schrodinger update"),
    tol("propagate.multi_slice_free", 1e-3, "multi-slice amplitude against the Fock oracle, free"),
    tol("propagate.multi_slice_harmonic", 5e-3, "multi-slice amplitude against the Fock oracle, harmonic"),
    tol("pint.complex_mass", 1e-8, "p-integral at m = 1 + 0.3i, relative"),
    tol("pint.fresnel", 1e-6, "p-integral at m = 1 on the rotated contour, relative"),
    tol("pint.trivial", 1e-12, "p-integral at m = i, relative"),
    tol("pint.saddle_gradient", 1e-12, "exponent gradient at p = m qdot"),
    tol("pint.newton", 1e-10, "Newton from p = 0 against m qdot"),
    tol("pint.round_trip", 1e-8, "recovered Lagrangian coefficients"),
    tol("pint.moment_ratio_min", 1.7, "Gaussian-moment error ratio when doubling Re A, lower"),
    tol("pint.moment_ratio_max", 2.3, "Gaussian-moment error ratio when doubling Re A, upper"),
    tol("pint.expansion_order_min", 1.8, "decay order in alpha of the residual after the f''/(4 alpha) term, lower"),
    tol("pint.expansion_order_max", 2.2, "decay order in alpha of the residual after the f''/(4 alpha) term, upper"),
    tol("saddle.separation", 1e-10, "Newton stationary point against the formula"),
    tol("saddle.momentum", 1e-6, "|p - dL/dqdot| at the saddle"),
    tol("saddle.order_min", 1.7, "numeric-saddle momentum residual, dt halving ratio, lower"),
    tol("saddle.order_max", 2.3, "numeric-saddle momentum residual, dt halving ratio, upper"),
];

/// The default table with per-key overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    values: BTreeMap<&'static str, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            values: DEFAULTS.iter().map(|t| (t.key, t.value)).collect(),
        }
    }
}

impl Tolerances {
    pub fn get(&self, key: &str) -> f64 {
        *self
            .values
            .get(key)
            .unwrap_or_else(|| panic!("no tolerance registered under {key}"))
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::Config(format!("tolerance {key} = {value} must be positive")));
        }
        let k = DEFAULTS
            .iter()
            .find(|t| t.key == key)
            .ok_or_else(|| Error::Config(format!("unknown tolerance key {key}")))?
            .key;
        self.values.insert(k, value);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let t = Tolerances::default();
        assert_eq!(t.iter().count(), DEFAULTS.len());
    }

    #[test]
    fn overrides_are_checked() {
        let mut t = Tolerances::default();
        t.set("saddle.momentum", 1e-3).unwrap();
        assert_eq!(t.get("saddle.momentum"), 1e-3);
        assert!(t.set("saddle.momentum", 0.0).is_err());
        assert!(t.set("no.such.key", 1.0).is_err());
    }
}
