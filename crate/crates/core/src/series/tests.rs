use proptest::prelude::*;

use super::*;

fn p(n: u64) -> Prime {
    Prime::new(n).unwrap()
}

fn s(pr: u64, text: &str, prec: i64) -> LaurentSeries {
    LaurentSeries::parse(p(pr), text, prec).unwrap()
}

#[test]
fn parse_and_display() {
    let f = s(5, "2*T^-1 + 1 + T^3", 10);
    assert_eq!(f.to_string(), "2*T^-1 + 1 + T^3");
    assert_eq!(format!("{f:#}"), "2*T^-1 + 1 + T^3 + O(T^10)");
    assert_eq!(s(5, "-T + 7T^2 + O(T^4)", 99).to_string(), "4*T + 2*T^2");
    assert_eq!(s(5, "-T + O(T^4)", 99).precision(), 4);
    assert!(LaurentSeries::parse(p(5), "T^", 4).is_err());
    assert!(LaurentSeries::parse(p(5), "1 +", 4).is_err());
    assert_eq!(s(3, "0", 5).to_string(), "0");
}

#[test]
fn frobenius_examples() {
    assert_eq!(s(3, "1 + T", 20).frobenius(), s(3, "1 + T^3", 60));
    assert_eq!(s(3, "T^-1 + 1", 20).frobenius(), s(3, "T^-3 + 1", 60));
    assert!(LaurentSeries::zero(p(3), 4).frobenius().is_zero());
    assert_eq!(s(5, "2T^2", 20).frobenius(), s(5, "2T^10", 100));
    // the p-th power agrees with repeated multiplication
    let f = s(3, "1 + T + 2T^2", 20);
    assert_eq!(f.mul(&f).mul(&f).truncate(20), f.frobenius().truncate(20));
}

#[test]
fn inverse_keeps_relative_precision() {
    let f = s(5, "T^-2 + 3 + T", 10);
    let g = f.inv().unwrap();
    assert_eq!(g.precision(), 14);
    assert_eq!(f.mul(&g), LaurentSeries::one(p(5), 12));
    assert_eq!(LaurentSeries::zero(p(5), 3).inv(), Err(Error::InversionOfZero));
}

#[test]
fn mixed_primes_are_rejected() {
    let a = s(3, "T", 5);
    let b = s(5, "T", 5);
    assert_eq!(a.try_add(&b), Err(Error::PrimeMismatch(3, 5)));
}

#[test]
fn reduce_examples() {
    let (r, w) = artin_schreier_reduce(&s(3, "T^-3", 10));
    assert_eq!((r, w), (s(3, "T^-1", 10), s(3, "T^-1", 10)));
    let (r, w) = artin_schreier_reduce(&s(3, "T^-1", 10));
    assert_eq!(r, s(3, "T^-1", 10));
    assert!(w.is_zero());
    let f = s(3, "T^-9 + T^-3", 10);
    let (r, w) = artin_schreier_reduce(&f);
    assert_eq!(r, s(3, "2T^-1", 10));
    assert_eq!(w, s(3, "T^-3 + 2T^-1", 10));
    assert_eq!(wp(&w).add(&r).truncate(10), f);
}

#[test]
fn solve_examples() {
    let y = solve_artin_schreier(&s(3, "T", 30), 30).unwrap().unwrap();
    assert_eq!(y, s(3, "-T - T^3 - T^9 - T^27", 30));
    assert_eq!(wp(&y).truncate(30), s(3, "T", 30));
    assert_eq!(solve_artin_schreier(&s(3, "1", 30), 30), Ok(None));
    assert_eq!(solve_artin_schreier(&s(3, "T^-1", 30), 30), Ok(None));
    assert!(matches!(
        solve_artin_schreier(&s(3, "T^-2", 0), 30),
        Err(Error::PrecisionExhausted(_))
    ));
    // T^-3 + T = wp(T^-1) + T^-1 + T is obstructed by T^-1
    assert_eq!(solve_artin_schreier(&s(3, "T^-3 + T", 30), 30), Ok(None));
    let y = solve_artin_schreier(&s(3, "T^-3 - T^-1 + T^2", 30), 30).unwrap().unwrap();
    assert_eq!(wp(&y).truncate(30), s(3, "T^-3 - T^-1 + T^2", 30));
}

#[test]
fn root_examples() {
    assert_eq!(nth_root(&s(5, "T^4", 20), 4).unwrap(), Some(s(5, "T", 17)));
    assert_eq!(nth_root(&s(5, "2T^2", 20), 2).unwrap(), None);
    assert_eq!(nth_root(&s(5, "T^3", 20), 2).unwrap(), None);
    let f = s(3, "1 + T", 20);
    let g = nth_root(&f, 2).unwrap().unwrap();
    assert_eq!(g.coeff(0).residue(), 1);
    assert_eq!(g.coeff(1).residue(), 2);
    assert_eq!(g.mul(&g), f);
    assert_eq!(nth_root(&f, 3), Err(Error::BadModulus(3)));
}

#[test]
fn unit_decompose_examples() {
    let t = unit_decompose(&s(3, "T", 10)).unwrap();
    assert_eq!((t.c.residue(), t.d, t.factors.len()), (1, 1, 0));
    let one = FpElement::one(p(3));
    let two = FpElement::new(p(3), 2);
    let f = s(3, "2T - 2T^4", 10);
    let u = unit_decompose(&f).unwrap();
    assert_eq!((u.c, u.d), (two, 1));
    assert_eq!(u.factors, vec![(1, 1, one)]);
    assert_eq!(u.expand(), f);
    let u = unit_decompose(&s(3, "1 + T", 10)).unwrap();
    assert_eq!((u.c, u.d, u.factors.clone()), (one, 0, vec![(1, 0, two)]));
    assert_eq!(unit_decompose(&LaurentSeries::zero(p(3), 5)), Err(Error::ZeroInput));
}

const PRIMES: [u64; 5] = [2, 3, 5, 7, 97];

fn arb_series() -> impl Strategy<Value = LaurentSeries> {
    (0usize..PRIMES.len(), -4i64..4, prop::collection::vec(0i64..97, 0..10), 4i64..16)
        .prop_map(|(pi, lo, cs, prec)| {
            let pr = p(PRIMES[pi]);
            LaurentSeries::from_terms(pr, cs.into_iter().enumerate().map(|(k, c)| (lo + k as i64, c)), prec)
        })
}

fn three_series() -> impl Strategy<Value = (LaurentSeries, LaurentSeries, LaurentSeries)> {
    (0usize..PRIMES.len()).prop_flat_map(|pi| {
        let one = move || {
            (-4i64..4, prop::collection::vec(0i64..97, 0..8), 4i64..16).prop_map(move |(lo, cs, prec)| {
                LaurentSeries::from_terms(
                    p(PRIMES[pi]),
                    cs.into_iter().enumerate().map(|(k, c)| (lo + k as i64, c)),
                    prec,
                )
            })
        };
        (one(), one(), one())
    })
}

/// Equality on the common window of known coefficients.
fn agree(a: &LaurentSeries, b: &LaurentSeries) -> bool {
    let n = a.precision().min(b.precision());
    a.truncate(n) == b.truncate(n)
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in three_series()) {
        prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(agree(&a.sub(&a), &LaurentSeries::zero(a.prime(), a.precision())));
    }

    #[test]
    fn inverse_round_trip(a in arb_series()) {
        prop_assume!(!a.is_zero());
        let prod = a.mul(&a.inv().unwrap());
        prop_assert!(agree(&prod, &LaurentSeries::one(a.prime(), i64::MAX)));
    }

    #[test]
    fn text_round_trip(a in arb_series()) {
        let back = LaurentSeries::parse(a.prime(), &format!("{a:#}"), 0).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reduce_round_trip(a in arb_series()) {
        let (r, w) = artin_schreier_reduce(&a);
        prop_assert!(agree(&wp(&w).add(&r), &a));
        let pi = a.prime().get() as i64;
        prop_assert!(r.terms().all(|(e, _)| e >= 0 || e % pi != 0));
    }

    #[test]
    fn solutions_solve(a in arb_series()) {
        prop_assume!(a.precision() > 0);
        if let Some(y) = solve_artin_schreier(&a, 64).unwrap() {
            prop_assert!(agree(&wp(&y), &a));
            prop_assert!(y.coeff(0).is_zero());
        }
    }

    #[test]
    fn positive_part_always_solvable(a in arb_series()) {
        prop_assume!(a.precision() > 1);
        let f = a.positive_part();
        prop_assert!(solve_artin_schreier(&f, 64).unwrap().is_some());
    }

    #[test]
    fn unit_decompose_round_trip(a in arb_series()) {
        prop_assume!(!a.is_zero());
        let u = unit_decompose(&a).unwrap();
        prop_assert!(agree(&u.expand(), &a));
        let pi = a.prime().get() as i64;
        prop_assert!(u.factors.iter().all(|f| f.0 > 0 && f.0 % pi != 0 && !f.2.is_zero()));
    }

    #[test]
    fn roots_are_roots(a in arb_series(), m in 1u64..7) {
        prop_assume!(!a.is_zero());
        match nth_root(&a, m) {
            Err(Error::BadModulus(_)) => prop_assert_eq!(m % a.prime().as_u64(), 0),
            Err(e) => prop_assert!(false, "{e}"),
            Ok(None) => {}
            Ok(Some(g)) => prop_assert!(agree(&g.pow(m as i64).unwrap(), &a)),
        }
        // m-th powers always have roots
        if m % a.prime().as_u64() != 0 {
            let am = a.pow(m as i64).unwrap();
            prop_assert!(nth_root(&am, m).unwrap().is_some());
        }
    }
}
