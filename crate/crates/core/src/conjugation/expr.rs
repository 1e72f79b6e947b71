//! Closed family `sum_E P_E(x) exp(E(x))` with polynomial `P_E` and `E`.
//!
//! Variables carry a conjugation flag so that `x` and `x*` are independent
//! symbols; nothing is substituted until [`AnalyticFunction::eval`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex coefficient with a total order, so polynomials can key maps.
#[derive(Debug, Clone, Copy)]
pub struct Coef(pub Complex64);

impl Coef {
    fn key(&self) -> (u64, u64) {
        // -0.0 is folded into +0.0 before coefficients are stored.
        (self.0.re.to_bits(), self.0.im.to_bits())
    }
}

impl PartialEq for Coef {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Coef {}
impl PartialOrd for Coef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Coef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

fn clean(z: Complex64) -> Complex64 {
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub conjugated: bool,
}

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            conjugated: false,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            name: self.name.clone(),
            conjugated: !self.conjugated,
        }
    }
}

/// Product of variable powers; the empty monomial is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var, power: u32) -> Self {
        let mut m = BTreeMap::new();
        if power > 0 {
            m.insert(v, power);
        }
        Self(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, k) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += k;
        }
        Monomial(out)
    }

    fn map_vars(&self, f: &impl Fn(&Var) -> Var) -> Monomial {
        let mut out = BTreeMap::new();
        for (v, k) in &self.0 {
            *out.entry(f(v)).or_insert(0) += k;
        }
        Monomial(out)
    }
}

/// Polynomial with complex coefficients in canonical (sorted, merged,
/// zero-free) form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly(pub BTreeMap<Monomial, Coef>);

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v, 1), Complex64::new(1.0, 0.0));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Complex64> {
        match self.0.len() {
            0 => Some(Complex64::new(0.0, 0.0)),
            1 => self.0.get(&Monomial::one()).map(|c| c.0),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        let entry = self.0.entry(m.clone()).or_insert(Coef(Complex64::new(0.0, 0.0)));
        entry.0 = clean(entry.0 + c);
        if entry.0 == Complex64::new(0.0, 0.0) {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.0);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                out.add_term(m1.mul(m2), c1.0 * c2.0);
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            out.add_term(m.clone(), c.0 * s);
        }
        out
    }

    pub fn differentiate(&self, v: &Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if let Some(&k) = m.0.get(v) {
                let mut mm = m.0.clone();
                if k == 1 {
                    mm.remove(v);
                } else {
                    mm.insert(v.clone(), k - 1);
                }
                out.add_term(Monomial(mm), c.0 * k as f64);
            }
        }
        out
    }

    pub fn eval(&self, value: &impl Fn(&Var) -> Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.0 {
            let mut t = c.0;
            for (v, &k) in &m.0 {
                t *= value(v).powu(k);
            }
            sum += t;
        }
        sum
    }

    /// Conjugates every coefficient and remaps the variables.
    pub fn conj_with(&self, f: &impl Fn(&Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            out.add_term(m.map_vars(f), c.0.conj());
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.keys().flat_map(|m| m.0.keys().cloned()).collect()
    }
}

/// Element of the closed function family, with a declared set of analytic
/// parameters. Any other symbol is a symbolic coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyticFunction {
    parameters: BTreeSet<String>,
    /// exponent polynomial -> prefactor polynomial
    terms: BTreeMap<Poly, Poly>,
}

impl AnalyticFunction {
    pub fn zero() -> Self {
        Self {
            parameters: BTreeSet::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut f = Self::zero();
        f.insert(Poly::zero(), p);
        f
    }

    /// Parameter `name`, declared analytic.
    pub fn param(name: &str) -> Self {
        let mut f = Self::from_poly(Poly::var(Var::new(name)));
        f.parameters.insert(name.to_string());
        f
    }

    /// Symbolic coefficient `name` (not a parameter).
    pub fn symbol(name: &str) -> Self {
        Self::from_poly(Poly::var(Var::new(name)))
    }

    /// Symbolic coefficient or parameter with its conjugation flag set.
    pub fn conj_symbol(name: &str) -> Self {
        Self::from_poly(Poly::var(Var::new(name).conj()))
    }

    pub fn with_parameters<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.parameters.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn parameters(&self) -> &BTreeSet<String> {
        &self.parameters
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exponent: Poly, prefactor: Poly) {
        if prefactor.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent.clone()).or_default();
        *slot = slot.add(&prefactor);
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// `(exponent, prefactor)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.terms.iter()
    }

    /// Flattened `(coefficient, monomial, exponent)` triples.
    pub fn flat_terms(&self) -> Vec<(Complex64, &Monomial, &Poly)> {
        self.terms
            .iter()
            .flat_map(|(e, p)| p.0.iter().map(move |(m, c)| (c.0, m, e)))
            .collect()
    }

    /// `exp(self)` for a purely polynomial function.
    pub fn exp(&self) -> Result<Self> {
        let poly = self.as_poly().ok_or_else(|| {
            Error::Parse("exp() argument must be a polynomial".into())
        })?;
        let mut f = Self::zero();
        f.parameters = self.parameters.clone();
        f.insert(poly.clone(), Poly::constant(Complex64::new(1.0, 0.0)));
        Ok(f)
    }

    /// The polynomial if there is no exponential factor.
    pub fn as_poly(&self) -> Option<&Poly> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Poly::zero()),
            _ => None,
        }
        .or_else(|| {
            if self.terms.is_empty() {
                static ZERO: std::sync::OnceLock<Poly> = std::sync::OnceLock::new();
                Some(ZERO.get_or_init(Poly::zero))
            } else {
                None
            }
        })
    }

    pub fn as_constant(&self) -> Option<Complex64> {
        self.as_poly().and_then(Poly::as_constant)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero();
        out.parameters = self.parameters.clone();
        for (e, p) in &self.terms {
            out.insert(e.clone(), p.scale(s));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(Complex64::new(1.0, 0.0));
        out.parameters = self.parameters.clone();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Derivative in parameter `name` (its conjugate is held fixed).
    pub fn differentiate(&self, name: &str) -> Result<Self> {
        if !self.parameters.contains(name) {
            return Err(Error::UnknownParameter(name.to_string()));
        }
        let v = Var::new(name);
        let mut out = Self::zero();
        out.parameters = self.parameters.clone();
        for (e, p) in &self.terms {
            let dp = p.differentiate(&v).add(&p.mul(&e.differentiate(&v)));
            out.insert(e.clone(), dp);
        }
        Ok(out)
    }

    /// Evaluates with `value(name)` for every variable; conjugated variables
    /// receive the complex conjugate.
    pub fn eval_with(&self, value: impl Fn(&str) -> Complex64) -> Complex64 {
        let lookup = |v: &Var| {
            let z = value(&v.name);
            if v.conjugated {
                z.conj()
            } else {
                z
            }
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, p) in &self.terms {
            sum += p.eval(&lookup) * e.eval(&lookup).exp();
        }
        sum
    }

    /// Evaluates from a list of `(name, value)` pairs. Missing names fail.
    pub fn eval(&self, values: &[(&str, Complex64)]) -> Result<Complex64> {
        for v in self.variables() {
            if !values.iter().any(|(n, _)| *n == v) {
                return Err(Error::UnknownParameter(v));
            }
        }
        Ok(self.eval_with(|name| {
            values
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, z)| *z)
                .unwrap()
        }))
    }

    /// Names of all variables appearing in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .iter()
            .flat_map(|(e, p)| e.vars().into_iter().chain(p.vars()))
            .map(|v| v.name)
            .collect()
    }

    pub(crate) fn map_conj(&self, remap: &impl Fn(&Var) -> Var) -> Self {
        let mut out = Self::zero();
        out.parameters = self.parameters.clone();
        for (e, p) in &self.terms {
            out.insert(e.conj_with(remap), p.conj_with(remap));
        }
        out
    }
}

impl<'a> Add<&'a AnalyticFunction> for &'a AnalyticFunction {
    type Output = AnalyticFunction;
    fn add(self, rhs: &'a AnalyticFunction) -> AnalyticFunction {
        let mut out = self.clone();
        out.parameters.extend(rhs.parameters.iter().cloned());
        for (e, p) in &rhs.terms {
            out.insert(e.clone(), p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a AnalyticFunction> for &'a AnalyticFunction {
    type Output = AnalyticFunction;
    fn sub(self, rhs: &'a AnalyticFunction) -> AnalyticFunction {
        self + &(-rhs)
    }
}

impl Neg for &AnalyticFunction {
    type Output = AnalyticFunction;
    fn neg(self) -> AnalyticFunction {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl<'a> Mul<&'a AnalyticFunction> for &'a AnalyticFunction {
    type Output = AnalyticFunction;
    fn mul(self, rhs: &'a AnalyticFunction) -> AnalyticFunction {
        let mut out = AnalyticFunction::zero();
        out.parameters = self.parameters.union(&rhs.parameters).cloned().collect();
        for (e1, p1) in &self.terms {
            for (e2, p2) in &rhs.terms {
                out.insert(e1.add(e2), p1.mul(p2));
            }
        }
        out
    }
}

impl Add for AnalyticFunction {
    type Output = AnalyticFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Mul for AnalyticFunction {
    type Output = AnalyticFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

fn fmt_num(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    if z.im == 0.0 {
        write!(f, "{}", z.re)
    } else {
        write!(f, "(c {} {})", z.re, z.im)
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, v: &Var, k: u32) -> fmt::Result {
    let name = if v.conjugated {
        format!("(conj {})", v.name)
    } else {
        v.name.clone()
    };
    if k == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "(^ {name} {k})")
    }
}

struct PolyDisplay<'a>(&'a Poly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.0 .0.iter().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        if terms.len() > 1 {
            write!(f, "(+")?;
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if terms.len() > 1 || i > 0 {
                write!(f, " ")?;
            }
            fmt_monomial_term(f, c.0, m)?;
        }
        if terms.len() > 1 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn fmt_monomial_term(f: &mut fmt::Formatter<'_>, c: Complex64, m: &Monomial) -> fmt::Result {
    if m.0.is_empty() {
        return fmt_num(f, c);
    }
    let unit = c == Complex64::new(1.0, 0.0);
    let factors = m.0.len() + usize::from(!unit);
    if factors > 1 {
        write!(f, "(*")?;
    }
    let mut first = factors == 1;
    if !unit {
        write!(f, " ")?;
        fmt_num(f, c)?;
    }
    for (v, &k) in &m.0 {
        if !first {
            write!(f, " ")?;
        }
        first = false;
        fmt_var(f, v, k)?;
    }
    if factors > 1 {
        write!(f, ")")?;
    }
    Ok(())
}

/// Canonical prefix-syntax rendering; parses back to an equal function.
impl fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(&Poly, &Poly)> = self.terms.iter().collect();
        if parts.is_empty() {
            return write!(f, "0");
        }
        let render = |f: &mut fmt::Formatter<'_>, e: &Poly, p: &Poly| -> fmt::Result {
            if e.is_zero() {
                write!(f, "{}", PolyDisplay(p))
            } else {
                write!(f, "(* {} (exp {}))", PolyDisplay(p), PolyDisplay(e))
            }
        };
        if parts.len() == 1 {
            return render(f, parts[0].0, parts[0].1);
        }
        write!(f, "(+")?;
        for (e, p) in parts {
            write!(f, " ")?;
            render(f, e, p)?;
        }
        write!(f, ")")
    }
}
