use lucat_core::oracles::{binomial, gaussian_binomial_at};
use lucat_core::{Lucanomials, Polynomial};
use num_bigint::BigInt;

fn at(p: &Polynomial, s: i64, t: i64) -> BigInt {
    p.eval(&BigInt::from(s), &BigInt::from(t))
}

#[test]
fn routes_agree_and_stay_positive() {
    let e = Lucanomials::default();
    for m in 0..=60usize {
        for k in 0..=m as i64 {
            let by_factorial = e
                .binom_factorial(m, k)
                .unwrap_or_else(|err| panic!("({m}, {k}): {err}"));
            assert_eq!(by_factorial, e.binom_recurrence(m, k), "({m}, {k})");
            assert!(by_factorial.is_positive(), "({m}, {k})");
        }
    }
}

#[test]
fn walk_matches_recurrence() {
    let e = Lucanomials::default();
    for m in 0..=60usize {
        for k in -1..=m as i64 + 1 {
            assert_eq!(
                *e.binom(m, k).unwrap(),
                e.binom_recurrence(m, k),
                "({m}, {k})"
            );
        }
    }
}

#[test]
fn binomials_at_two_minus_one() {
    let e = Lucanomials::default();
    for m in 0..=40u64 {
        for k in -1..=m as i64 + 1 {
            let p = e.binom_recurrence(m as usize, k);
            assert_eq!(at(&p, 2, -1), binomial(m, k), "({m}, {k})");
        }
    }
}

#[test]
fn gaussian_binomials() {
    let e = Lucanomials::default();
    for q in [2i64, 3] {
        for m in 0..=30u64 {
            for k in 0..=m as i64 {
                let p = e.binom_recurrence(m as usize, k);
                let expected = gaussian_binomial_at(m, k, &BigInt::from(q));
                assert_eq!(at(&p, q + 1, -q), expected, "q={q} ({m}, {k})");
            }
        }
    }
}

#[test]
fn symmetric_rows() {
    let e = Lucanomials::default();
    for m in 0..=40 {
        assert!(e.binom_symmetry_check(m).unwrap().holds(), "m={m}");
    }
}
