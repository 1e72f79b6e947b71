use catfpi::conjugation::{mod_conjugate, parse, sandwich_identity_check, AnalyticFunction, ComponentVector};
use catfpi::Complex64 as C;
use nalgebra::DMatrix;
use proptest::prelude::*;

const PARAMS: [&str; 2] = ["q", "p"];

/// One term `(c re im) q^i p^j [conj p] [a]` with Gaussian-integer coefficient.
fn term() -> impl Strategy<Value = String> {
    (-4i32..=4, -4i32..=4, 0u32..=3, 0u32..=3, any::<bool>(), any::<bool>()).prop_map(|(re, im, i, j, cp, sym)| {
        let mut f = vec![format!("(c {re} {im})"), format!("(^ q {i})"), format!("(^ p {j})")];
        if cp {
            f.push("(conj p)".into());
        }
        if sym {
            f.push("a".into());
        }
        format!("(* {})", f.join(" "))
    })
}

fn expression() -> impl Strategy<Value = AnalyticFunction> {
    prop::collection::vec(term(), 1..5).prop_map(|t| parse(&format!("(+ {})", t.join(" ")), &PARAMS).unwrap())
}

fn subset() -> impl Strategy<Value = Vec<&'static str>> {
    prop::sample::subsequence(PARAMS.to_vec(), 0..=2)
}

proptest! {
    #[test]
    fn involution(f in expression(), a in subset()) {
        prop_assert_eq!(mod_conjugate(&mod_conjugate(&f, &a).unwrap(), &a).unwrap(), f);
    }

    #[test]
    fn homomorphism(f in expression(), g in expression(), a in subset()) {
        let (fa, ga) = (mod_conjugate(&f, &a).unwrap(), mod_conjugate(&g, &a).unwrap());
        prop_assert_eq!(mod_conjugate(&(&f + &g), &a).unwrap(), &fa + &ga);
        prop_assert_eq!(mod_conjugate(&(&f * &g), &a).unwrap(), &fa * &ga);
    }

    #[test]
    fn reduces_to_complex_conjugation_at_real_parameters(
        f in expression(),
        a in subset(),
        q in -2.0f64..2.0,
        p in -2.0f64..2.0,
        sym in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let vals = [("q", C::new(q, 0.0)), ("p", C::new(p, 0.0)), ("a", C::new(sym.0, sym.1))];
        let lhs = mod_conjugate(&f, &a).unwrap().eval(&vals).unwrap();
        let rhs = f.eval(&vals).unwrap().conj();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

fn ket(var: &str, coefs: [&str; 3]) -> ComponentVector {
    let g = format!("(exp (* (c -0.5 0.25) (^ {var} 2)))");
    ComponentVector::new(vec![
        parse(&format!("(* {} {g})", coefs[0]), &[var]).unwrap(),
        parse(&format!("(* {} {var} {g})", coefs[1]), &[var]).unwrap(),
        parse(&format!("(* {} (^ {var} 2) {g})", coefs[2]), &[var]).unwrap(),
    ])
}

#[test]
fn sandwich_identities_at_sampled_parameters() {
    let u = ket("u", ["(c 1 0)", "(c 1 1)", "(c 0 -0.5)"]);
    let v = ket("v", ["(c 0.5 2)", "(c -1 0)", "(c 0.25 0.25)"]);
    let m = DMatrix::from_fn(3, 3, |i, j| C::new((i + 2 * j) as f64 * 0.3 - 0.5, (i as f64 - j as f64) * 0.7));
    let samples: Vec<Vec<(&str, C)>> = (0..10)
        .map(|k| {
            let t = k as f64 * 0.6;
            vec![("u", C::new(t.cos(), 0.5 * t.sin())), ("v", C::new(0.3 - 0.1 * t, 0.2 * t.cos()))]
        })
        .collect();
    for a in [&[][..], &["u"], &["v"], &["u", "v"]] {
        let rep = sandwich_identity_check(&u, &v, &m, a, &samples).unwrap();
        assert_eq!(rep.samples, 10);
        assert!(rep.max_discrepancy <= 1e-12, "A = {a:?}: {}", rep.max_discrepancy);
        assert!(rep.max_symbolic_residual <= 1e-12, "A = {a:?}");
    }
}

#[test]
fn sandwich_with_wrong_bra_fails() {
    // Conjugating a parameter that should stay analytic breaks the identity,
    // so the check is not vacuous.
    let u = ket("u", ["(c 1 0)", "(c 1 1)", "(c 0 -0.5)"]);
    let v = ket("v", ["(c 0.5 2)", "(c -1 0)", "(c 0.25 0.25)"]);
    let m = DMatrix::from_fn(3, 3, |i, j| C::new(i as f64 - j as f64, 1.0));
    let samples = vec![vec![("u", C::new(0.4, 0.7)), ("v", C::new(-0.2, 0.5))]];
    let good = sandwich_identity_check(&u, &v, &m, &["u"], &samples).unwrap();
    assert!(good.max_discrepancy < 1e-12);
    let lhs = catfpi::conjugation::sandwich(
        &catfpi::conjugation::mod_bra(&u, &[]).unwrap(),
        &m,
        &v,
    )
    .unwrap();
    let lhs = mod_conjugate(&lhs, &["u"]).unwrap();
    let rhs = catfpi::conjugation::sandwich(&catfpi::conjugation::mod_bra(&v, &[]).unwrap(), &m.adjoint(), &u).unwrap();
    let s = &samples[0];
    assert!((lhs.eval(s).unwrap() - rhs.eval(s).unwrap()).norm() > 1e-3);
}
