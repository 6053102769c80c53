use proptest::prelude::*;

use crate::fp::FpElement;

use super::*;

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn w(pr: u64, text: &str, prec: i64) -> WittVector {
    WittVector::parse(p(pr), text, prec).unwrap()
}

fn s(pr: u64, text: &str, prec: i64) -> LaurentSeries {
    LaurentSeries::parse(p(pr), text, prec).unwrap()
}

/// Componentwise equality on the common window of known coefficients.
fn agree(a: &WittVector, b: &WittVector) -> bool {
    a.len() == b.len()
        && a.components().iter().zip(b.components()).all(|(x, y)| {
            let n = x.precision().min(y.precision());
            x.truncate(n) == y.truncate(n)
        })
}

#[test]
fn addition_examples() {
    assert_eq!(w(3, "(1; 0)", 20).add(&w(3, "(1; 0)", 20)).unwrap(), w(3, "(2; 1)", 20));
    let z = w(3, "(T; 0)", 20).add(&w(3, "(-T; 0)", 20)).unwrap();
    assert!(z.components().iter().all(|c| c.is_zero()));
    assert_eq!(w(3, "(1; T)", 20).mul(&w(3, "(1; 0)", 20)).unwrap(), w(3, "(1; T)", 20));
    assert_eq!(
        w(3, "(1; 0)", 2).add(&w(3, "(1; 0; 0)", 2)),
        Err(Error::LengthMismatch(2, 3))
    );
}

#[test]
fn inverse_examples() {
    assert_eq!(w(3, "(1; T)", 20).inv().unwrap(), w(3, "(1; -T)", 20));
    let one = WittVector::one(p(3), 3, 10);
    assert!(one.inv().unwrap().is_one());
    let t = WittVector::teichmuller(&s(3, "T", 20), 2);
    let ti = t.inv().unwrap();
    assert_eq!(ti.component(0), &s(3, "T^-1", 18));
    assert!(ti.component(1).is_zero());
    assert_eq!(w(3, "(0; 1)", 5).inv(), Err(Error::NotAUnit));
    // non-Teichmuller zero tail goes through the general route
    let t2 = w(3, "(T; 0)", 20).inv().unwrap();
    assert_eq!(t2.component(0), &s(3, "T^-1", 18));
    assert!(t2.component(1).is_zero());
}

#[test]
fn teichmuller_is_multiplicative() {
    for pr in [2u64, 3, 5] {
        let f = s(pr, "1 + T + 2T^3", 12);
        let g = s(pr, "T^-1 + T^2", 12);
        let lhs = WittVector::new(vec![f.clone(), LaurentSeries::zero(p(pr), 40), LaurentSeries::zero(p(pr), 40)])
            .unwrap()
            .mul(&WittVector::new(vec![g.clone(), LaurentSeries::zero(p(pr), 40), LaurentSeries::zero(p(pr), 40)]).unwrap())
            .unwrap();
        let rhs = WittVector::teichmuller(&f.mul(&g), 3);
        assert!(agree(&lhs, &rhs), "{lhs:?} vs {rhs:?}");
    }
}

#[test]
fn powers_of_one_units() {
    let f = s(3, "T^-1 + 2T", 20);
    let x = WittVector::new(vec![LaurentSeries::one(p(3), 20), f.clone()]).unwrap();
    assert!(agree(&x.pow(3).unwrap(), &WittVector::one(p(3), 2, 20)));
    for k in 0..3 {
        let want = WittVector::new(vec![LaurentSeries::one(p(3), 20), f.scale(FpElement::new(p(3), k))]).unwrap();
        assert!(agree(&x.pow(k).unwrap(), &want));
    }
    assert_eq!(w(3, "(0; 1)", 5).pow(-1), Err(Error::NegativePowerOfNonUnit));
}

#[test]
fn q_map_examples() {
    for pr in [2u64, 3, 5, 7] {
        let t = WittVector::teichmuller(&s(pr, "T", 30), 3);
        let q = t.q_map().unwrap();
        let want = WittVector::teichmuller(&LaurentSeries::monomial(p(pr), 1, pr as i64 - 1, 30), 3);
        assert!(agree(&q, &want));
    }
    let f = s(3, "T^-2 + 1 + T", 20);
    let x = WittVector::new(vec![LaurentSeries::one(p(3), 60), f.clone()]).unwrap();
    let want = WittVector::new(vec![LaurentSeries::one(p(3), 60), f.frobenius().sub(&f)]).unwrap();
    assert!(agree(&x.q_map().unwrap(), &want));
    assert!(WittVector::one(p(5), 3, 10).q_map().unwrap().is_one());
}

#[test]
fn text_form() {
    let x = w(5, "(2*T^-1 + 1; 0; T^3)", 9);
    assert_eq!(x.to_string(), "(2*T^-1 + 1; 0; T^3)");
    assert_eq!(WittVector::parse(p(5), &format!("{x:#}"), 0).unwrap(), x);
    assert!(WittVector::parse(p(5), "1; 2", 9).is_err());
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn series(pr: Prime, lo: i64, cs: Vec<i64>, prec: i64) -> LaurentSeries {
    LaurentSeries::from_terms(pr, cs.into_iter().enumerate().map(|(k, c)| (lo + k as i64, c)), prec)
}

fn vector(pr: Prime, len: usize, unit: bool) -> impl Strategy<Value = WittVector> {
    prop::collection::vec((-2i64..3, prop::collection::vec(0i64..7, 0..5), 6i64..12), len).prop_map(
        move |parts| {
            let mut comps: Vec<LaurentSeries> =
                parts.into_iter().map(|(lo, cs, prec)| series(pr, lo, cs, prec)).collect();
            if unit && comps[0].is_zero() {
                comps[0] = LaurentSeries::one(pr, comps[0].precision());
            }
            WittVector::new(comps).unwrap()
        },
    )
}

fn triple(max_len: usize, unit: bool) -> impl Strategy<Value = (WittVector, WittVector, WittVector)> {
    (0usize..PRIMES.len(), 1..=max_len).prop_flat_map(move |(pi, len)| {
        let pr = p(PRIMES[pi]);
        (vector(pr, len, unit), vector(pr, len, unit), vector(pr, len, unit))
    })
}

fn times(x: &WittVector, k: u64) -> WittVector {
    let mut acc = WittVector::zero(x.prime(), x.len(), EXACT);
    for _ in 0..k {
        acc = acc.add(x).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple(4, false)) {
        prop_assert!(agree(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
        prop_assert!(agree(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
        prop_assert!(agree(&a.add(&b).unwrap().add(&c).unwrap(), &a.add(&b.add(&c).unwrap()).unwrap()));
        prop_assert!(agree(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap()));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
        let zero = a.add(&a.neg()).unwrap();
        prop_assert!(zero.components().iter().all(|z| z.is_zero()));
        prop_assert!(agree(&a.sub(&b).unwrap(), &a.add(&b.neg()).unwrap()));
    }

    #[test]
    fn inverse_round_trip((a, _, _) in triple(4, true)) {
        let prod = a.mul(&a.inv().unwrap()).unwrap();
        prop_assert!(agree(&prod, &WittVector::one(a.prime(), a.len(), EXACT)));
    }

    #[test]
    fn q_is_multiplicative((a, b, _) in triple(3, true)) {
        let lhs = a.mul(&b).unwrap().q_map().unwrap();
        let rhs = a.q_map().unwrap().mul(&b.q_map().unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn q_kills_constant_vectors(pi in 0usize..PRIMES.len(), cs in prop::collection::vec(0i64..97, 1..5)) {
        let pr = p(PRIMES[pi]);
        let mut comps: Vec<LaurentSeries> = cs.iter().map(|&c| LaurentSeries::monomial(pr, c, 0, 20)).collect();
        if comps[0].is_zero() {
            comps[0] = LaurentSeries::one(pr, 20);
        }
        let x = WittVector::new(comps).unwrap();
        prop_assert!(x.q_map().unwrap().is_one());
    }

    #[test]
    fn fv_vf_are_p((a, _, _) in triple(4, false)) {
        let pa = times(&a, a.prime().as_u64());
        prop_assert!(agree(&a.verschiebung().frobenius(), &pa));
        prop_assert!(agree(&a.frobenius().verschiebung(), &pa));
    }

    #[test]
    fn circuit_matches_explicit_polynomials((a, b, _) in triple(3, false)) {
        let u = gen_universal_polys(a.prime(), a.len()).unwrap();
        let sum = WittVector::new(u.eval(true, a.components(), b.components()).unwrap()).unwrap();
        let prod = WittVector::new(u.eval(false, a.components(), b.components()).unwrap()).unwrap();
        prop_assert!(agree(&sum, &a.add(&b).unwrap()));
        prop_assert!(agree(&prod, &a.mul(&b).unwrap()));
    }

    #[test]
    fn truncation_keeps_prefix((a, b, _) in triple(4, false), m in 1usize..5) {
        prop_assume!(m <= a.len());
        let lhs = a.mul(&b).unwrap().truncate(m).unwrap();
        let rhs = a.truncate(m).unwrap().mul(&b.truncate(m).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }
}
