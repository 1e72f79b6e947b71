//! Modified complex conjugation `*_A` on a closed symbolic function family.
//!
//! Under `*_A` every coefficient is conjugated, parameters in `A` are kept
//! as they are and every other variable (including symbolic coefficients)
//! is replaced by its conjugate. With `A` empty this is ordinary complex
//! conjugation.

mod expr;
mod parse;

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use expr::{AnalyticFunction, Coef, Monomial, Poly, Var};
pub use parse::parse;

fn check_subset(params: &BTreeSet<String>, a: &[&str]) -> Result<()> {
    match a.iter().find(|n| !params.contains(**n)) {
        Some(n) => Err(Error::UnknownParameter(n.to_string())),
        None => Ok(()),
    }
}

/// `f^{*_A}`. Fails if `A` names something that is not a parameter of `f`.
pub fn mod_conjugate(f: &AnalyticFunction, a: &[&str]) -> Result<AnalyticFunction> {
    check_subset(f.parameters(), a)?;
    let keep: BTreeSet<&str> = a.iter().copied().collect();
    Ok(f.map_conj(&|v: &Var| {
        if keep.contains(v.name.as_str()) {
            v.clone()
        } else {
            v.conj()
        }
    }))
}

/// Components of a ket (or, after [`mod_bra`], of a bra) in a discrete basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentVector {
    entries: Vec<AnalyticFunction>,
}

impl ComponentVector {
    /// Every entry is declared over the union of all entry parameters.
    pub fn new(entries: Vec<AnalyticFunction>) -> Self {
        let all: BTreeSet<String> = entries
            .iter()
            .flat_map(|e| e.parameters().iter().cloned())
            .collect();
        let entries = entries
            .into_iter()
            .map(|e| e.with_parameters(all.iter().cloned()))
            .collect();
        Self { entries }
    }

    /// Numeric entries with no parameters.
    pub fn numeric(values: &[Complex64]) -> Self {
        Self::new(values.iter().map(|&z| AnalyticFunction::constant(z)).collect())
    }

    pub fn entries(&self) -> &[AnalyticFunction] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.entries
            .first()
            .map(|e| e.parameters().clone())
            .unwrap_or_default()
    }

    pub fn eval(&self, values: &[(&str, Complex64)]) -> Result<Vec<Complex64>> {
        self.entries.iter().map(|e| e.eval(values)).collect()
    }
}

/// Row vector of `(|ket>)^{dagger_A}`: entry-wise `*_A`.
pub fn mod_bra(ket: &ComponentVector, a: &[&str]) -> Result<ComponentVector> {
    check_subset(&ket.parameters(), a)?;
    let entries = ket
        .entries
        .iter()
        .map(|e| {
            let keep: Vec<&str> = a.to_vec();
            mod_conjugate(e, &keep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentVector { entries })
}

/// `sum_ij bra_i M_ij ket_j` as a symbolic function.
pub fn sandwich(
    bra: &ComponentVector,
    m: &DMatrix<Complex64>,
    ket: &ComponentVector,
) -> Result<AnalyticFunction> {
    if m.nrows() != bra.len() || m.ncols() != ket.len() {
        return Err(Error::Dimension(format!(
            "bra {} x matrix {}x{} x ket {}",
            bra.len(),
            m.nrows(),
            m.ncols(),
            ket.len()
        )));
    }
    let mut total = AnalyticFunction::zero();
    for i in 0..m.nrows() {
        let mut row = AnalyticFunction::zero();
        for j in 0..m.ncols() {
            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                row = &row + &ket.entries[j].scale(m[(i, j)]);
            }
        }
        total = &total + &(&bra.entries[i] * &row);
    }
    Ok(total.with_parameters(bra.parameters().into_iter().chain(ket.parameters())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    /// Largest `|lhs - rhs|` over the sampled parameter values.
    pub max_discrepancy: f64,
    /// Largest coefficient of the canonical form of `lhs - rhs`.
    pub max_symbolic_residual: f64,
    pub samples: usize,
}

/// Checks `(<u|_A M |v>)^{*_A} = <v|_A M^dagger |u>` where `<.|_A` is the
/// modified bra. `samples` supplies values for every parameter of `u`
/// and `v`.
pub fn sandwich_identity_check(
    u: &ComponentVector,
    v: &ComponentVector,
    m: &DMatrix<Complex64>,
    a: &[&str],
    samples: &[Vec<(&str, Complex64)>],
) -> Result<SandwichReport> {
    let all: BTreeSet<String> = u.parameters().union(&v.parameters()).cloned().collect();
    check_subset(&all, a)?;
    let a_u: Vec<&str> = a.iter().copied().filter(|n| u.parameters().contains(*n)).collect();
    let a_v: Vec<&str> = a.iter().copied().filter(|n| v.parameters().contains(*n)).collect();
    let bra_u = mod_bra(u, &a_u)?;
    let bra_v = mod_bra(v, &a_v)?;
    let lhs = mod_conjugate(&sandwich(&bra_u, m, v)?, a)?;
    let rhs = sandwich(&bra_v, &m.adjoint(), u)?;
    let diff = &lhs - &rhs;
    let max_symbolic_residual = diff
        .flat_terms()
        .iter()
        .map(|(c, _, _)| c.norm())
        .fold(0.0, f64::max);
    let mut max_discrepancy: f64 = 0.0;
    for s in samples {
        let (l, r) = (lhs.eval(s)?, rhs.eval(s)?);
        max_discrepancy = max_discrepancy.max((l - r).norm());
    }
    Ok(SandwichReport {
        max_discrepancy,
        max_symbolic_residual,
        samples: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f_ab() -> AnalyticFunction {
        parse("(+ (* a (^ q 2)) (* b (^ p 2)))", &["q", "p"]).unwrap()
    }

    #[test]
    fn keep_q_conjugates_p_and_coefficients() {
        let got = mod_conjugate(&f_ab(), &["q"]).unwrap();
        let want = parse(
            "(+ (* (conj a) (^ q 2)) (* (conj b) (^ (conj p) 2)))",
            &["q", "p"],
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn keep_both_conjugates_coefficients_only() {
        let got = mod_conjugate(&f_ab(), &["q", "p"]).unwrap();
        let want = parse("(+ (* (conj a) (^ q 2)) (* (conj b) (^ p 2)))", &["q", "p"]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn real_polynomial_is_fixed_when_all_parameters_kept() {
        let f = parse("(+ (* 3 (^ q 2) p) (- 2.5) (* q p))", &["q", "p"]).unwrap();
        assert_eq!(mod_conjugate(&f, &["q", "p"]).unwrap(), f);
    }

    #[test]
    fn empty_set_is_ordinary_conjugation() {
        let f = parse("(* (c 1 2) q (exp (* i (^ q 2))))", &["q"]).unwrap();
        let g = mod_conjugate(&f, &[]).unwrap();
        let q = c(0.4, -0.7);
        let fv = f.eval(&[("q", q)]).unwrap();
        let gv = g.eval(&[("q", q)]).unwrap();
        assert!((gv - fv.conj()).norm() < 1e-15);
    }

    #[test]
    fn unknown_parameter_rejected() {
        assert!(matches!(
            mod_conjugate(&f_ab(), &["x"]),
            Err(Error::UnknownParameter(n)) if n == "x"
        ));
        // Symbolic coefficients are not parameters.
        assert!(mod_conjugate(&f_ab(), &["a"]).is_err());
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "(+ (* a (^ q 2)) (* b (^ p 2)))",
            "(* (c 0.5 -1.25) (conj q) (exp (+ (* i (^ q 2)) (- q))))",
            "(+ 1 (exp (* (c 0 2) q)) (* q (exp (* (c 0 2) q))))",
            "0",
        ] {
            let f = parse(src, &["q", "p"]).unwrap();
            let printed = f.to_string();
            assert_eq!(parse(&printed, &["q", "p"]).unwrap(), f, "{src} -> {printed}");
        }
    }

    #[test]
    fn parse_errors() {
        for bad in ["(+ 1", ")", "(^ q -1)", "(^ q 1.5)", "(/ 1 q)", "(foo q)", "(exp)", "q q"] {
            assert!(matches!(parse(bad, &["q"]), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn differentiation_keeps_conjugate_fixed() {
        let f = parse("(* (conj q) (exp (* (c 0 1) (^ q 2))))", &["q"]).unwrap();
        let df = f.differentiate("q").unwrap();
        let want = parse("(* (c 0 2) q (conj q) (exp (* (c 0 1) (^ q 2))))", &["q"]).unwrap();
        assert_eq!(df, want);
    }

    fn coherent_ket(name: &str) -> ComponentVector {
        ComponentVector::new(vec![
            parse("1", &[name]).unwrap(),
            parse(name, &[name]).unwrap(),
            parse(&format!("(/ (^ {name} 2) (sqrt 2))"), &[name]).unwrap(),
        ])
    }

    #[test]
    fn bra_of_coherent_ket() {
        let ket = coherent_ket("lam");
        assert_eq!(mod_bra(&ket, &["lam"]).unwrap(), ket);
        let usual = mod_bra(&ket, &[]).unwrap();
        let want = ComponentVector::new(vec![
            parse("1", &["lam"]).unwrap(),
            parse("(conj lam)", &["lam"]).unwrap(),
            parse("(/ (^ (conj lam) 2) (sqrt 2))", &["lam"]).unwrap(),
        ]);
        assert_eq!(usual, want);
    }

    #[test]
    fn sandwich_dimension_mismatch() {
        let u = coherent_ket("u");
        let m = DMatrix::<Complex64>::identity(4, 4);
        assert!(matches!(
            sandwich_identity_check(&u, &u, &m, &[], &[]),
            Err(Error::Dimension(_))
        ));
    }
}
