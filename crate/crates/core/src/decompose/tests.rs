use proptest::prelude::*;

use super::*;
use crate::fp::Prime;
use crate::series::{solve_artin_schreier, wp, LaurentSeries};
use crate::witt::WittVector;

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn w(pr: u64, text: &str, prec: i64) -> WittVector {
    WittVector::parse(p(pr), text, prec).unwrap()
}

fn u(pr: u64, i: i64, len: usize, prec: i64) -> WittVector {
    WittVector::one_plus_v(1, &LaurentSeries::monomial(p(pr), 1, i, prec), len)
}

fn word(text: &str) -> GeneratorWord {
    GeneratorWord::from_json(text).unwrap()
}

#[test]
fn solve_examples() {
    let y = q_solve(&u(3, 1, 2, 40), 40).unwrap().unwrap();
    assert!(y.component(0).is_one());
    assert_eq!(wp(y.component(1)).truncate(40), LaurentSeries::monomial(p(3), 1, 1, 40));
    assert_eq!(q_solve(&u(3, 0, 2, 40), 40).unwrap(), None);
    assert_eq!(q_solve(&u(3, -1, 2, 40), 40).unwrap(), None);
    assert_eq!(q_solve(&w(3, "(0; 1)", 5), 5), Err(crate::Error::NotAUnit));
    // a_0 must be a (p-1)-th power
    assert_eq!(q_solve(&w(3, "(T; 0)", 20), 20).unwrap(), None);
    assert!(q_solve(&w(3, "(T^2; 0)", 20), 20).unwrap().is_some());
}

#[test]
fn solutions_satisfy_the_equation() {
    let a = w(5, "(T^4; T^15 - T^19)", 30);
    // T^-5 = wp(T^-1) + T^-1, so the level-1 obstruction cancels
    let b = w(3, "(1 + T; T^-1; T^-2 + T)", 60).q_map().unwrap();
    for a in [a, b] {
        let y = q_solve(&a, 200).unwrap().unwrap();
        let q = y.q_map().unwrap();
        for (x, z) in q.components().iter().zip(a.components()) {
            let n = x.precision().min(z.precision());
            assert!(n > 0);
            assert_eq!(x.truncate(n), z.truncate(n));
        }
    }
}

#[test]
fn exact_examples() {
    let f = decompose_exact(&w(3, "(T; 0)", 20), 20).unwrap();
    assert_eq!((f.c.residue(), f.d), (1, 1));
    assert!(f.teich1units.is_empty() && f.deep_units.is_empty());
    let f = decompose_exact(&w(3, "(1; T^-1 + T)", 20), 20).unwrap();
    assert_eq!(f.deep_units, vec![(-1, 2, 1), (1, 2, 1)]);
    // (2T, T): correction T / (2T)^3 = 2 T^-2
    let f = decompose_exact(&w(3, "(2T; T)", 20), 20).unwrap();
    assert_eq!((f.c.residue(), f.d), (2, 1));
    assert_eq!(f.deep_units, vec![(-2, 2, 2)]);
    let x = w(3, "(2T + T^2; T^-1 + 1; T^3 + 2T^-2)", 24);
    let f = decompose_exact(&x, 24).unwrap();
    assert_eq!(f.precisions, vec![24, 21, 13]);
    let q = x.div(&f.expand().unwrap()).unwrap();
    assert!(is_one_within_precision(&q));
    assert_eq!(q.precisions(), vec![23, 21, 13]);
}

fn is_one_within_precision(q: &WittVector) -> bool {
    let one = LaurentSeries::one(q.prime(), q.component(0).precision());
    q.component(0) == &one
        && q.components()[1..].iter().all(|c| c.is_zero())
        && q.precisions().iter().all(|&n| n > 0)
}

#[test]
fn reduce_examples() {
    assert_eq!(reduce_mod_q(&u(3, -3, 2, 40), 40).unwrap(), word(r#"{"p":3,"c":1,"u":{"-1":{"value":1,"mod_exp":1}}}"#));
    let t = w(3, "(2T^4; 0)", 40);
    assert_eq!(reduce_mod_q(&t, 40).unwrap(), word(r#"{"p":3,"c":2,"d":2}"#));
    assert!(reduce_mod_q(&u(3, 2, 2, 40), 40).unwrap().is_trivial());
    assert_eq!(reduce_mod_q(&w(3, "(T; 0)", 40), 40).unwrap().to_json(), r#"{"p":3,"c":1,"d":1,"u":{},"v":{}}"#);
    assert!(reduce_mod_q(&w(3, "(T^2; 0)", 40), 40).unwrap().is_trivial());
    assert_eq!(reduce_mod_q(&w(3, "(2T^2; 0)", 40), 40).unwrap().d, Some(2));
}

#[test]
fn reconstruct_examples() {
    let e = reconstruct(&GeneratorWord::trivial(p(3)), 3).unwrap();
    assert!(e.is_one());
    let x = reconstruct(&word(r#"{"p":3,"c":1,"u":{"-1":{"value":1,"mod_exp":1}}}"#), 2).unwrap();
    assert_eq!(x.to_string(), "(1; T^-1)");
    let x = reconstruct(&word(r#"{"p":3,"c":1,"u":{"-1":{"value":3,"mod_exp":2}}}"#), 3).unwrap();
    assert!(x.component(0).is_one() && x.component(1).is_zero());
    assert_eq!(x.component(2).valuation(), Some(-3));
}

#[test]
fn powers_of_u_sit_one_level_deeper() {
    for pr in [2u64, 3, 5] {
        for i in [-1i64, -2, 1] {
            let x = u(pr, i, 4, 200).pow(pr as i64).unwrap();
            assert!(x.component(1).is_zero(), "p={pr} i={i}");
            if pr != 2 {
                assert_eq!(x.component(2), &LaurentSeries::monomial(p(pr), 1, i * pr as i64, x.component(2).precision()));
            }
        }
    }
}

#[test]
fn p2_words_use_v_letters() {
    let x = w(2, "(1; T^-1; T^-1)", 40);
    let wd = reduce_mod_q(&x, 60).unwrap();
    assert_eq!(wd.u.keys().copied().collect::<Vec<_>>(), vec![-1]);
    assert!(!wd.v.is_empty());
    let back = reduce_mod_q(&reconstruct(&wd, 3).unwrap(), 40).unwrap();
    assert_eq!(back, wd);
}

#[test]
fn word_json_schema() {
    let wd = word(r#"{"p":3,"c":2,"d":1,"u":{"-1":{"value":4,"mod_exp":3}},"v":{}}"#);
    assert_eq!(wd.to_json(), r#"{"p":3,"c":2,"d":1,"u":{"-1":{"value":4,"mod_exp":3}},"v":{}}"#);
    assert_eq!(wd.natural_length(), 4);
    assert!(GeneratorWord::from_json(r#"{"p":3,"c":1,"x":1}"#).is_err());
    assert!(GeneratorWord::from_json(r#"{"p":3,"c":1,"u":{"-3":{"value":1,"mod_exp":1}}}"#).is_err());
    assert!(GeneratorWord::from_json(r#"{"p":3,"c":2}"#).is_err());
    assert!(GeneratorWord::from_json(r#"{"p":3,"c":1,"d":3}"#).is_err());
}

#[test]
fn class_order_examples() {
    assert_eq!(class_order(&w(3, "(T; 0; 0)", 10)).unwrap(), (0, true));
    assert_eq!(class_order(&w(3, "(1; T; 0)", 10)).unwrap(), (2, false));
    assert_eq!(class_order(&w(5, "(T^2; 0)", 10)).unwrap(), (0, false));
    assert_eq!(class_order(&w(5, "(2; 0)", 10)).unwrap(), (0, true));
}

#[test]
fn galois_examples() {
    assert!(galois_group_check(&w(3, "(T; T^-1; 0)", 10)).unwrap());
    assert!(!galois_group_check(&w(3, "(T; 0; T^-1)", 10)).unwrap());
    assert!(!galois_group_check(&w(3, "(T^2; T^-1)", 10)).unwrap());
    assert!(galois_group_check(&w(2, "(1; T)", 10)).is_err());
    let g2 = |a: &str, b: &str| galois_group_check_p2(&w(2, a, 10), &w(2, b, 10)).unwrap();
    assert!(g2("(1; T; T; 0)", "(1; 0; T; 0)"));
    assert!(g2("(1; 0; T; 0)", "(1; T; T; 0)"));
    assert!(!g2("(1; 0; T; 0)", "(1; 0; T^2; 0)"));
    assert!(!g2("(1; T; 0; 0)", "(1; 0; T; 0)"));
    assert!(galois_group_check_p2(&w(3, "(1; T; T)", 10), &w(3, "(1; 0; T)", 10)).is_err());
}

#[test]
fn level_one_matches_artin_schreier() {
    for pr in [3u64, 5] {
        for text in ["T^-1", "T^-3 - T^-1", "1", "T + T^2", "T^-2 + T^5", "T^-25 - T^-5"] {
            let f = LaurentSeries::parse(p(pr), text, 30).unwrap();
            let x = WittVector::one_plus_v(1, &f, 2);
            let lhs = q_solve(&x, 30).unwrap().is_some();
            let rhs = solve_artin_schreier(&f, 30).unwrap().is_some();
            assert_eq!(lhs, rhs, "p={pr} f={text}");
        }
    }
}

fn unit(pr: Prime, len: usize) -> impl Strategy<Value = WittVector> {
    prop::collection::vec((-3i64..3, prop::collection::vec(0i64..7, 1..6)), len).prop_map(move |parts| {
        let mut comps: Vec<LaurentSeries> = parts
            .into_iter()
            .map(|(lo, cs)| LaurentSeries::from_terms(pr, cs.into_iter().enumerate().map(|(k, c)| (lo + k as i64, c)), 60))
            .collect();
        // deep components lose p^n v(x_0) digits to normalization
        let lead = comps[0].valuation().map(|v| v.clamp(-1, 1)).unwrap_or(0);
        comps[0] = LaurentSeries::monomial(pr, 1, lead, 60).add(&comps[0].shift(lead + 1 - comps[0].valuation().unwrap_or(0)));
        WittVector::new(comps).unwrap()
    })
}

fn pr_len() -> impl Strategy<Value = (Prime, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..4).prop_map(|(a, l)| (p(a), l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_round_trip(x in pr_len().prop_flat_map(|(pr, l)| unit(pr, l))) {
        let wd = reduce_mod_q(&x, 60).unwrap();
        wd.validate().unwrap();
        let back = reconstruct(&wd, x.len()).unwrap();
        let quotient = x.div(&back).unwrap();
        prop_assert!(q_solve(&quotient, 60).unwrap().is_some());
        prop_assert_eq!(reduce_mod_q(&back, i64::MAX).unwrap(), wd.clone());
        let again = GeneratorWord::from_json(&wd.to_json()).unwrap();
        prop_assert_eq!(again, wd);
    }

    #[test]
    fn exact_factorization_expands_back(x in pr_len().prop_flat_map(|(pr, l)| unit(pr, l))) {
        let f = decompose_exact(&x, 60).unwrap();
        let q = x.div(&f.expand().unwrap()).unwrap();
        prop_assert!(is_one_within_precision(&q), "{:?}", q);
        prop_assert!(f.deep_units.iter().all(|&(_, m, k)| m >= 2 && k > 0 && (k as u64) < x.prime().as_u64()));
    }

    #[test]
    fn class_order_kills(x in pr_len().prop_flat_map(|(pr, l)| unit(pr, l))) {
        prop_assume!(x.prime().get() != 2);
        prop_assume!(x.components().iter().all(|c| c.valuation().unwrap_or(0) >= 0));
        let (s, max) = class_order(&x).unwrap();
        if max {
            let k = x.prime().pow(s as u32) as i64 * (x.prime().get() as i64 - 1);
            prop_assert!(q_solve(&x.pow(k).unwrap(), i64::MAX).unwrap().is_some());
        }
    }
}
