//! Truncated Fock-space construction of non-hermitian position and momentum
//! operators and their complex-eigenvalue states.
//!
//! All vectors and matrices live in the number basis of the oscillator with
//! stiffness `kappa = m omega / hbar`. The auxiliary oscillator
//! `kappa' = m' omega' / hbar` only enters through the momentum states,
//! whose components are obtained by re-expanding its coherent states in the
//! `kappa` basis.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{check_decay, quad_points, Contour, QuadratureRule};
use crate::delta::{in_domain, TamedDelta};
use crate::error::{Error, Result};

type C = Complex64;

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockConstruction {
    pub n: usize,
    pub hbar: f64,
    pub m_omega: f64,
    pub mp_omegap: f64,
}

impl Default for FockConstruction {
    fn default() -> Self {
        Self {
            n: 512,
            hbar: 1.0,
            m_omega: 100.0,
            mp_omegap: 0.01,
        }
    }
}

impl FockConstruction {
    pub fn new(n: usize, hbar: f64, m_omega: f64, mp_omegap: f64) -> Result<Self> {
        let fc = Self {
            n,
            hbar,
            m_omega,
            mp_omegap,
        };
        fc.validate()?;
        Ok(fc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Construction(format!("truncation N = {} < 2", self.n)));
        }
        if !(self.hbar > 0.0 && self.m_omega > 0.0 && self.mp_omegap > 0.0) {
            return Err(Error::Construction("hbar, m omega and m' omega' must be positive".into()));
        }
        if self.r() >= 1.0 {
            return Err(Error::Construction(format!(
                "r = m'omega'/(m omega) = {} must be below 1",
                self.r()
            )));
        }
        Ok(())
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    pub fn r(&self) -> f64 {
        self.mp_omegap / self.m_omega
    }

    pub fn kappa(&self) -> f64 {
        self.m_omega / self.hbar
    }

    pub fn kappa_prime(&self) -> f64 {
        self.mp_omegap / self.hbar
    }

    /// Width parameter of the position-state orthogonality delta.
    pub fn eps1(&self) -> f64 {
        self.hbar / (self.m_omega * (1.0 - self.r()))
    }

    /// Width parameter of the momentum-state orthogonality delta.
    pub fn eps1_prime(&self) -> f64 {
        self.hbar * self.mp_omegap / (1.0 - self.r())
    }

    /// `lambda = c q` for position states.
    pub fn c_position(&self) -> f64 {
        (self.kappa() * (1.0 - self.r()) / 2.0).sqrt()
    }

    /// `lambda' = i d p` for momentum states.
    pub fn d_momentum(&self) -> f64 {
        ((1.0 - self.r()) / (2.0 * self.hbar * self.mp_omegap)).sqrt()
    }

    /// Soft truncation rule `|lambda|^2 <= N / 4`.
    pub fn truncation_warning(&self, lambda: C) -> Option<String> {
        let l2 = lambda.norm_sqr();
        (l2 > self.n as f64 / 4.0).then(|| {
            format!(
                "|lambda|^2 = {l2:.3} exceeds N/4 = {:.1}; truncation may be visible",
                self.n as f64 / 4.0
            )
        })
    }
}

/// Dense `N x N` complex matrix with a human-readable label.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub label: String,
    pub entries: DMatrix<C>,
}

impl OperatorMatrix {
    pub fn new(label: impl Into<String>, entries: DMatrix<C>) -> Self {
        Self {
            label: label.into(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self::new(format!("{}^dagger", self.label), self.entries.adjoint())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self::new(
            format!("[{}, {}]", self.label, other.label),
            &self.entries * &other.entries - &other.entries * &self.entries,
        )
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let x = DVector::from_column_slice(v);
        (&self.entries * x).iter().copied().collect()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}x{})", self.label, self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.entries[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Annihilation and creation operators.
pub fn ladder_matrices(fc: &FockConstruction) -> (OperatorMatrix, OperatorMatrix) {
    let n = fc.n;
    let mut a = DMatrix::<C>::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = re((k as f64).sqrt());
    }
    let adag = a.transpose();
    (OperatorMatrix::new("a", a), OperatorMatrix::new("a^dagger", adag))
}

/// `q = sqrt(hbar / 2 m omega) (a + a^dagger)`.
pub fn position(fc: &FockConstruction) -> OperatorMatrix {
    let (a, ad) = ladder_matrices(fc);
    let s = (fc.hbar / (2.0 * fc.m_omega)).sqrt();
    OperatorMatrix::new("q", (a.entries + ad.entries) * re(s))
}

/// `p = i sqrt(hbar m omega / 2) (a^dagger - a)`.
pub fn momentum(fc: &FockConstruction) -> OperatorMatrix {
    let (a, ad) = ladder_matrices(fc);
    let s = (fc.hbar * fc.m_omega / 2.0).sqrt();
    OperatorMatrix::new("p", (ad.entries - a.entries) * C::new(0.0, s))
}

/// `q_new = (q - i p / m omega) / sqrt(1 - r)` and
/// `p_new = (p + i m' omega' q) / sqrt(1 - r)`.
pub fn new_operators(fc: &FockConstruction) -> Result<(OperatorMatrix, OperatorMatrix)> {
    fc.validate()?;
    let (q, p) = (position(fc), momentum(fc));
    let norm = re(1.0 / (1.0 - fc.r()).sqrt());
    let qnew = (&q.entries - &p.entries * C::new(0.0, 1.0 / fc.m_omega)) * norm;
    let pnew = (&p.entries + &q.entries * C::new(0.0, fc.mp_omegap)) * norm;
    Ok((
        OperatorMatrix::new("q_new", qnew),
        OperatorMatrix::new("p_new", pnew),
    ))
}

/// `(H_h, H_a)` with `H = H_h + H_a`, `H_h` hermitian, `H_a` anti-hermitian.
pub fn hermitian_split(h: &OperatorMatrix) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if h.entries.nrows() != h.entries.ncols() {
        return Err(Error::Dimension(format!(
            "hermitian split needs a square matrix, got {}x{}",
            h.entries.nrows(),
            h.entries.ncols()
        )));
    }
    let hd = h.entries.adjoint();
    let half = re(0.5);
    Ok((
        OperatorMatrix::new(format!("{}_h", h.label), (&h.entries + &hd) * half),
        OperatorMatrix::new(format!("{}_a", h.label), (&h.entries - &hd) * half),
    ))
}

/// Unnormalised coherent state `sum_n lambda^n / sqrt(n!) |n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub lambda: C,
    pub components: Vec<C>,
    pub warning: Option<String>,
}

fn coherent_components(lambda: C, n: usize, scale: C) -> Vec<C> {
    let mut out = Vec::with_capacity(n);
    let mut c = scale;
    for k in 0..n {
        out.push(c);
        c = c * lambda / ((k + 1) as f64).sqrt();
    }
    out
}

pub fn coherent_state(fc: &FockConstruction, lambda: C) -> CoherentState {
    CoherentState {
        lambda,
        components: coherent_components(lambda, fc.n, re(1.0)),
        warning: fc.truncation_warning(lambda),
    }
}

/// Components in the `kappa` number basis of the unnormalised coherent state
/// `exp(extra) |lambda>` of an oscillator with stiffness `kappa_state`.
///
/// Uses the generating function of the overlap between the two oscillators'
/// number states, which gives a three-term recurrence.
pub fn foreign_coherent(kappa: f64, kappa_state: f64, lambda: C, extra: C, n: usize) -> Vec<C> {
    let sum = kappa + kappa_state;
    let a = (kappa - kappa_state) / (2.0 * sum);
    let b = lambda * (2.0 * (kappa * kappa_state).sqrt() / sum);
    let c0 = lambda * lambda * ((kappa_state - kappa) / (2.0 * sum));
    let pref = (kappa * kappa_state).powf(0.25) * (2.0 / sum).sqrt();
    let mut out = Vec::with_capacity(n);
    out.push((c0 + extra).exp() * pref);
    if n > 1 {
        out.push(b * out[0]);
    }
    for k in 1..n.saturating_sub(1) {
        let next = (b * out[k] + out[k - 1] * (2.0 * a * (k as f64).sqrt())) / ((k + 1) as f64).sqrt();
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Position,
    Momentum,
}

/// `|q>_new` or `|p>_new` in the `kappa` number basis, with the explicit
/// normalisation prefactor and no re-normalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct NewEigenstate {
    pub kind: StateKind,
    pub eigenvalue: C,
    /// `lambda = c q` (position) or `lambda' = i d p` (momentum).
    pub lambda: C,
    pub components: Vec<C>,
    pub warning: Option<String>,
}

fn position_components(fc: &FockConstruction, q: C) -> Vec<C> {
    let c = fc.c_position();
    let lambda = q * c;
    let pref = (fc.kappa() * (1.0 - fc.r()) / (4.0 * PI)).powf(0.25);
    // Gaussian prefactor and coherent terms are combined in log form so that
    // large |q| does not overflow before the cancellation.
    let g = -lambda * lambda / 2.0;
    let mut out = Vec::with_capacity(fc.n);
    let (lnl, arg) = (lambda.norm().ln(), lambda.arg());
    let mut log_fact = 0.0;
    for k in 0..fc.n {
        if k > 0 {
            log_fact += (k as f64).ln();
        }
        let v = if lambda.norm() == 0.0 {
            if k == 0 { g.exp() } else { re(0.0) }
        } else {
            let kk = k as f64;
            C::new(g.re + kk * lnl - 0.5 * log_fact, g.im + kk * arg).exp()
        };
        out.push(v * pref);
    }
    out
}

pub fn new_state(fc: &FockConstruction, kind: StateKind, eigenvalue: C) -> Result<NewEigenstate> {
    fc.validate()?;
    Ok(match kind {
        StateKind::Position => {
            let lambda = eigenvalue * fc.c_position();
            NewEigenstate {
                kind,
                eigenvalue,
                lambda,
                components: position_components(fc, eigenvalue),
                warning: fc.truncation_warning(lambda),
            }
        }
        StateKind::Momentum => {
            let d = fc.d_momentum();
            let lambda = eigenvalue * C::new(0.0, d);
            let pref = ((1.0 - fc.r()) / (4.0 * PI * fc.hbar * fc.mp_omegap)).powf(0.25);
            let extra = -(eigenvalue * eigenvalue) * (d * d / 2.0);
            let comps = foreign_coherent(fc.kappa(), fc.kappa_prime(), lambda, extra, fc.n)
                .into_iter()
                .map(|z| z * pref)
                .collect();
            NewEigenstate {
                kind,
                eigenvalue,
                lambda,
                components: comps,
                warning: None,
            }
        }
    })
}

/// Row vector of the modified bra `_m<new q|`, i.e. the `*_{q}` conjugate of
/// the components: `conj(f_n(conj q))`.
pub fn position_mod_bra(fc: &FockConstruction, q: C) -> Vec<C> {
    position_components(fc, q.conj())
        .into_iter()
        .map(|z| z.conj())
        .collect()
}

/// Ordinary dagger bra `<new q|`.
pub fn position_dagger_bra(fc: &FockConstruction, q: C) -> Vec<C> {
    position_components(fc, q).into_iter().map(|z| z.conj()).collect()
}

fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||(q_new^dagger - q)|q>_new|| / |||q>_new||`.
pub fn position_eigen_residual(fc: &FockConstruction, q: C) -> Result<f64> {
    let (qnew, _) = new_operators(fc)?;
    let ket = position_components(fc, q);
    let applied = qnew.adjoint().apply(&ket);
    let diff: Vec<C> = applied.iter().zip(&ket).map(|(x, k)| x - k * q).collect();
    Ok(norm(&diff) / norm(&ket))
}

/// Residuals of `p_new^dagger |q> = i hbar d/dq |q>` with the derivative by
/// central differences. Returns `(plain, with_correction)` where the second
/// includes the exact finite-`m' omega'` term `-i m' omega' q |q>`.
pub fn derivative_relation_residual(fc: &FockConstruction, q: C, h: f64) -> Result<(f64, f64)> {
    let (_, pnew) = new_operators(fc)?;
    let ket = position_components(fc, q);
    let lhs = pnew.adjoint().apply(&ket);
    let (kp, km) = (position_components(fc, q + h), position_components(fc, q - h));
    let deriv: Vec<C> = kp
        .iter()
        .zip(&km)
        .map(|(a, b)| (a - b) * C::new(0.0, fc.hbar / (2.0 * h)))
        .collect();
    let scale = norm(&lhs);
    let plain: Vec<C> = lhs.iter().zip(&deriv).map(|(l, d)| l - d).collect();
    let corrected: Vec<C> = plain
        .iter()
        .zip(&ket)
        .map(|(x, k)| x + k * q * C::new(0.0, fc.mp_omegap))
        .collect();
    Ok((norm(&plain) / scale, norm(&corrected) / scale))
}

/// `_m<new q | p>_new` by summing components in the `kappa` basis.
pub fn overlap_qp(fc: &FockConstruction, q: C, p: C) -> Result<C> {
    let bra = position_mod_bra(fc, q);
    let ket = new_state(fc, StateKind::Momentum, p)?;
    Ok(dot(&bra, &ket.components))
}

/// Exact `N -> infinity` value of [`overlap_qp`] at finite `m omega` and
/// `m' omega'` (a Gaussian integral in the position representation).
pub fn overlap_qp_closed_form(fc: &FockConstruction, q: C, p: C) -> C {
    let (k, kp, s) = (fc.kappa(), fc.kappa_prime(), (1.0 - fc.r()).sqrt());
    let h = fc.hbar;
    let pref = (k * s / (2.0 * PI)).sqrt() * (s / (2.0 * PI * h)).sqrt() * (2.0 * PI / (k + kp)).sqrt();
    let lin = q * (k * s) + p * C::new(0.0, s / h);
    (lin * lin / (2.0 * (k + kp)) - q * q * (k * s * s / 2.0)).exp() * pref
}

/// Limit `(2 pi hbar)^{-1/2} exp(i p q / hbar)`.
pub fn overlap_qp_target(fc: &FockConstruction, q: C, p: C) -> C {
    (C::new(0.0, 1.0 / fc.hbar) * p * q).exp() / (2.0 * PI * fc.hbar).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityReport {
    pub inner: C,
    pub delta: C,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Compares `_m<new q'|q>_new` with the tamed delta of width `eps1`.
pub fn orthogonality_check(fc: &FockConstruction, q: C, q_prime: C) -> Result<OrthogonalityReport> {
    let sep = q_prime - q;
    if sep.norm() > 0.0 && !in_domain(sep) {
        return Err(Error::WedgeViolation { point: sep });
    }
    let inner = dot(&position_mod_bra(fc, q_prime), &position_components(fc, q));
    let delta = TamedDelta::new(fc.eps1())?.value(sep);
    let abs_error = (inner - delta).norm();
    Ok(OrthogonalityReport {
        inner,
        delta,
        abs_error,
        rel_error: abs_error / delta.norm(),
    })
}

/// Max relative deviation of `int_C dq |q>_new _m<new q| psi` from `psi`
/// over the test kets.
pub fn completeness_residual(
    fc: &FockConstruction,
    c: &Contour,
    rule: &QuadratureRule,
    kets: &[Vec<C>],
) -> Result<f64> {
    for k in kets {
        if k.len() != fc.n {
            return Err(Error::Dimension(format!("test ket has {} entries, N = {}", k.len(), fc.n)));
        }
    }
    let points = quad_points(c, rule);
    let columns: Vec<Vec<C>> = points.iter().map(|&(q, _)| position_components(fc, q)).collect();
    let mut worst: f64 = 0.0;
    for psi in kets {
        // The modified bra of a real-coefficient analytic ket is the plain
        // component row evaluated at the same q.
        let g: Vec<C> = columns.iter().map(|col| dot(col, psi)).collect();
        let peak = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let ends = dot(&position_components(fc, c.first()), psi)
            .norm()
            .max(dot(&position_components(fc, c.last()), psi).norm());
        check_decay(ends, peak, rule.decay_tol)?;
        let mut out = vec![re(0.0); fc.n];
        for ((col, gv), (_, w)) in columns.iter().zip(&g).zip(&points) {
            let s = gv * w;
            for (o, x) in out.iter_mut().zip(col) {
                *o += x * s;
            }
        }
        let diff: Vec<C> = out.iter().zip(psi).map(|(a, b)| a - b).collect();
        worst = worst.max(norm(&diff) / norm(psi));
    }
    Ok(worst)
}

/// Unit-stiffness oscillator states re-expanded in the `kappa` basis: the
/// vacuum and the normalised coherent state with parameter `lambda`.
pub fn unit_oscillator_state(fc: &FockConstruction, lambda: C) -> Vec<C> {
    let extra = -lambda.norm_sqr() / 2.0;
    foreign_coherent(fc.kappa(), 1.0, lambda, re(extra), fc.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: f64, b: f64) -> C {
        C::new(a, b)
    }

    fn small(n: usize) -> FockConstruction {
        FockConstruction::new(n, 1.0, 100.0, 0.01).unwrap()
    }

    #[test]
    fn two_level_ladder() {
        let (a, ad) = ladder_matrices(&small(2));
        assert_eq!(a.entries[(0, 1)], c(1.0, 0.0));
        assert_eq!(a.entries[(0, 0)], c(0.0, 0.0));
        assert_eq!(a.entries[(1, 0)], c(0.0, 0.0));
        assert_eq!(ad.entries, a.entries.transpose());
    }

    #[test]
    fn truncated_ladder_commutator() {
        let (a, ad) = ladder_matrices(&small(4));
        let comm = a.commutator(&ad).entries;
        let want = [1.0, 1.0, 1.0, -3.0];
        for i in 0..4 {
            for j in 0..4 {
                let w = if i == j { want[i] } else { 0.0 };
                assert!((comm[(i, j)] - c(w, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn position_matrix_entries() {
        let fc = FockConstruction::new(4, 1.0, 2.0, 0.5).unwrap();
        let q = position(&fc).entries;
        for n in 1..4 {
            let w = (fc.hbar * n as f64 / (2.0 * fc.m_omega)).sqrt();
            assert!((q[(n - 1, n)] - c(w, 0.0)).norm() < 1e-15);
            assert!((q[(n, n - 1)] - c(w, 0.0)).norm() < 1e-15);
        }
        assert_eq!(q[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn r_at_least_one_rejected() {
        assert!(FockConstruction::new(8, 1.0, 1.0, 1.0).is_err());
        assert!(FockConstruction::new(1, 1.0, 10.0, 1.0).is_err());
    }

    #[test]
    fn coherent_basics() {
        let fc = small(32);
        let v = coherent_state(&fc, c(0.0, 0.0));
        assert_eq!(v.components[0], c(1.0, 0.0));
        assert!(v.components[1..].iter().all(|z| z.norm() == 0.0));
        let one = coherent_state(&fc, c(1.0, 0.0));
        let n2: f64 = one.components.iter().map(|z| z.norm_sqr()).sum();
        assert!((n2 - std::f64::consts::E).abs() < 1e-12);
        assert!(coherent_state(&small(8), c(2.0, 0.0)).warning.is_some());
    }

    #[test]
    fn coherent_eigen_residual() {
        let fc = small(64);
        let (a, _) = ladder_matrices(&fc);
        let s = coherent_state(&fc, c(2.0, 0.0));
        let av = a.apply(&s.components);
        let diff: Vec<C> = av.iter().zip(&s.components).map(|(x, y)| x - y * 2.0).collect();
        assert!(norm(&diff) / norm(&s.components) <= 1e-10);
    }

    #[test]
    fn hermitian_split_parts() {
        let fc = small(6);
        let (qn, _) = new_operators(&fc).unwrap();
        let (h, a) = hermitian_split(&qn).unwrap();
        assert!((&h.entries - h.entries.adjoint()).norm() < 1e-14);
        assert!((&a.entries + a.entries.adjoint()).norm() < 1e-14);
        assert!((&h.entries + &a.entries - &qn.entries).norm() < 1e-14);
        let q = position(&fc);
        let (_, zero) = hermitian_split(&q).unwrap();
        assert!(zero.norm() < 1e-15);
    }

    #[test]
    fn foreign_coherent_same_oscillator_is_identity() {
        // Re-expanding in the same basis must give lambda^n / sqrt(n!).
        let lam = c(0.7, -0.3);
        let v = foreign_coherent(3.0, 3.0, lam, c(0.0, 0.0), 12);
        let w = coherent_components(lam, 12, c(1.0, 0.0));
        for (x, y) in v.iter().zip(&w) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn mod_bra_equals_dagger_at_real_q() {
        let fc = small(64);
        let (m, d) = (position_mod_bra(&fc, c(0.3, 0.0)), position_dagger_bra(&fc, c(0.3, 0.0)));
        for (x, y) in m.iter().zip(&d) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
