use super::*;
use proptest::prelude::*;

fn xy() -> Arc<[String]> {
    universe(&["x", "y", "z"])
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn poly(text: &str) -> MultiPoly {
    MultiPoly::parse(xy(), text).unwrap()
}

#[test]
fn zero_is_additive_identity() {
    let p = poly("3*x*y - 2*z^2 + 1");
    assert_eq!(p.add(&MultiPoly::zero(xy())).unwrap(), p);
}

#[test]
fn square_of_sum() {
    let s = poly("x + y");
    assert_eq!(s.mul(&s).unwrap(), poly("x^2 + 2*x*y + y^2"));
    assert_eq!(s.pow(2), poly("x^2 + 2*x*y + y^2"));
}

#[test]
fn universe_mismatch() {
    let a = poly("x");
    let b = MultiPoly::var(universe(&["x"]), 0);
    assert_eq!(a.add(&b), Err(PolyError::VariableUniverseMismatch));
}

#[test]
fn sigma_times_sigma_bar_for_one() {
    let p = sigma(1, 1).unwrap().mul(&sigma_bar(1, 1).unwrap()).unwrap();
    let vars = p.variables().clone();
    assert_eq!(p, MultiPoly::parse(vars, "A1*A2 + A1*B2 + B1*A2 + B1*B2").unwrap());
}

#[test]
fn text_form() {
    let p = poly("-x^2 + 2*x*y");
    // y is larger than x, so x*y precedes x^2.
    assert_eq!(p.to_text(), "+2*x*y -1*x^2");
    assert_eq!(MultiPoly::parse(xy(), &p.to_text()).unwrap(), p);
    assert_eq!(MultiPoly::zero(xy()).to_text(), "0");
    assert!(matches!(MultiPoly::parse(xy(), "w + 1"), Err(PolyError::Parse(_))));
    assert!(matches!(MultiPoly::parse(xy(), "x +"), Err(PolyError::Parse(_))));
}

#[test]
fn json_form() {
    let p = poly("7*x*z^3 - 5");
    let j = p.to_json();
    assert_eq!(j.terms[0].coefficient, "7");
    let text = serde_json::to_string(&j).unwrap();
    let back: PolyJson = serde_json::from_str(&text).unwrap();
    assert_eq!(MultiPoly::from_json(&back).unwrap(), p);
}

#[test]
fn eval_basics() {
    let p = poly("x*y + 2*z");
    assert_eq!(p.eval(&[q(0, 1), q(0, 1), q(0, 1)]).unwrap(), q(0, 1));
    assert_eq!(p.eval(&[q(1, 2), q(2, 3), q(-1, 4)]).unwrap(), q(-1, 6));
    assert_eq!(p.eval(&[q(1, 2)]), Err(PolyError::MissingVariable("y".into())));
    let c = poly("x + 5");
    assert_eq!(c.eval(&[q(1, 3), q(0, 1), q(0, 1)]).unwrap(), q(16, 3));
}

#[test]
fn content_and_primitive_part() {
    let p = poly("2*x + 2*y");
    assert_eq!(p.content().unwrap(), BigInt::from(2));
    let pp = p.primitive_part().unwrap();
    assert_eq!(pp, poly("x + y"));
    assert_eq!(pp.primitive_part().unwrap(), pp);
    assert_eq!(poly("-4*z + 6*x").primitive_part().unwrap(), poly("2*z - 3*x"));
    assert_eq!(MultiPoly::zero(xy()).content(), Err(PolyError::ZeroPolynomial));
}

#[test]
fn exact_division() {
    let a = poly("x + 2*y - z");
    let b = poly("3*x*y - z^2 + 1");
    let prod = a.mul(&b).unwrap();
    assert_eq!(prod.div_exact(&a).unwrap(), b);
    assert_eq!(poly("x^2 + 1").div_exact(&poly("x + 1")), Err(PolyError::NotDivisible));
}

#[test]
fn sigma_boundaries() {
    for n in 0..4 {
        assert!(sigma(0, n).unwrap().is_zero());
        assert!(sigma_bar(n + 1, n).unwrap().is_zero());
        assert_eq!(sigma_bar(0, n).unwrap(), sigma(n + 1, n).unwrap());
        assert_eq!(l_form(0, n).unwrap(), sigma(n + 1, n).unwrap().neg());
    }
    assert!(matches!(sigma(5, 3), Err(PolyError::IndexOutOfRange { index: 5, max: 4 })));
    let vars = l_form(1, 1).unwrap().variables().clone();
    assert_eq!(l_form(1, 1).unwrap(), MultiPoly::parse(vars, "A1 + B1 - A2 - B2").unwrap());
}

#[test]
fn l_products() {
    assert_eq!(l_product(&[], 2).unwrap(), MultiPoly::constant(diagonal::diagonal_universe(2), 1));
    assert_eq!(l_product(&[1], 2).unwrap(), l_form(1, 2).unwrap());
    let p = l_product(&[1, 2], 2).unwrap();
    assert_eq!(p.total_degree(), 2);
    assert!(p.is_homogeneous());
}

#[test]
fn diagonal_one_is_alternating_sum() {
    let p = monsky_diagonal(1).unwrap();
    let vars = p.variables().clone();
    assert_eq!(p, MultiPoly::parse(vars.clone(), "A1 - B1 - A2 + B2").unwrap());
    assert_eq!(monsky_diagonal_raw(1).unwrap(), MultiPoly::parse(vars, "-A1 + B1 + A2 - B2").unwrap());
    assert!(matches!(monsky_diagonal(0), Err(PolyError::BadParameters(_))));
}

#[test]
fn diagonal_degrees() {
    for n in 1..=8 {
        let p = monsky_diagonal(n).unwrap();
        assert_eq!(p.total_degree(), n as u32);
        assert!(p.is_homogeneous());
    }
}

/// Both closed forms multiplied out term by term in the A/B variables.
fn direct_forms(n: usize) -> (MultiPoly, MultiPoly) {
    let vars = diagonal::diagonal_universe(n);
    let a = |i: usize| MultiPoly::var(vars.clone(), 2 * (i - 1));
    let skip = |top: usize, i: usize| -> Vec<usize> { (0..=top).filter(|&j| j + 1 != i && j != i).collect() };
    let two = BigInt::from(2);
    let mut sum = MultiPoly::zero(vars.clone());
    for i in 1..=n + 1 {
        sum = sum.add(&a(i).mul(&l_product(&skip(n + 1, i), n).unwrap()).unwrap()).unwrap();
    }
    let all: Vec<usize> = (0..=n).collect();
    let rel = l_product(&all, n).unwrap().neg().sub(&sum.scale(&two)).unwrap();
    let mut inner = MultiPoly::zero(vars.clone());
    for i in 1..=n {
        inner = inner.add(&a(i).mul(&l_product(&skip(n, i), n).unwrap()).unwrap()).unwrap();
    }
    let body: Vec<usize> = (1..n).collect();
    inner = inner.sub(&a(n + 1).mul(&l_product(&body, n).unwrap()).unwrap()).unwrap();
    let top: Vec<usize> = (1..=n).collect();
    let raw = l_product(&top, n).unwrap().sub(&inner.scale(&two)).unwrap();
    (rel, raw)
}

#[test]
fn closed_forms_match_direct_expansion() {
    for n in 1..=4 {
        let (rel, raw) = direct_forms(n);
        assert_eq!(unfactored_relation(n).unwrap(), rel, "n={n}");
        assert_eq!(monsky_diagonal_raw(n).unwrap(), raw, "n={n}");
    }
}

#[test]
fn factor_removed_from_degree_n_plus_one_relation() {
    for n in 1..=5 {
        let rel = unfactored_relation(n).unwrap();
        assert_eq!(rel.total_degree(), n as u32 + 1);
        let cofactor = rel.div_exact(&l_form(n + 1, n).unwrap()).unwrap();
        assert_eq!(cofactor, monsky_diagonal_raw(n).unwrap());
        assert_eq!(cofactor.primitive_part().unwrap(), monsky_diagonal(n).unwrap());
    }
}

#[test]
fn raw_closed_form_is_already_primitive() {
    // In L_{1..n} every L_k with k <= n contributes -B_{n+1}, and no other
    // term reaches B_{n+1}^n, so that coefficient is (-1)^n.
    for n in 1..=6 {
        let raw = monsky_diagonal_raw(n).unwrap();
        let mut m = vec![0u16; 2 * n + 2];
        m[2 * n + 1] = n as u16;
        let expected = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        assert_eq!(raw.coefficient(&m), expected);
        assert_eq!(raw.content().unwrap(), BigInt::from(1));
    }
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0u16..3, 3)), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(xy(), terms.into_iter().map(|(c, m)| (BigInt::from(c), m))))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn eval_is_a_ring_map(a in small_poly(), b in small_poly(), x in prop::collection::vec(small_rational(), 3)) {
        let sum = a.add(&b).unwrap().eval(&x).unwrap();
        prop_assert_eq!(sum, a.eval(&x).unwrap() + b.eval(&x).unwrap());
        let prod = a.mul(&b).unwrap().eval(&x).unwrap();
        prop_assert_eq!(prod, a.eval(&x).unwrap() * b.eval(&x).unwrap());
    }

    #[test]
    fn division_undoes_multiplication(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in small_poly()) {
        prop_assert_eq!(MultiPoly::parse(xy(), &a.to_text()).unwrap(), a);
    }

    #[test]
    fn diagonal_homogeneity(n in 1usize..=4, lambda in small_rational(), raw in prop::collection::vec(small_rational(), 10)) {
        let p = monsky_diagonal(n).unwrap();
        let point: Vec<Rational> = raw.into_iter().take(2 * n + 2).collect();
        let scaled: Vec<Rational> = point.iter().map(|v| v * &lambda).collect();
        let mut lambda_n = Rational::from_integer(1.into());
        for _ in 0..n {
            lambda_n *= &lambda;
        }
        prop_assert_eq!(p.eval(&scaled).unwrap(), lambda_n * p.eval(&point).unwrap());
    }
}
