use lucat_core::oracles::{fibonacci, q_integer, strip_tiling_poly};
use lucat_core::{lemma21_check, product_identity_check, LucasCache, Polynomial};
use num_bigint::BigInt;

fn at(p: &Polynomial, s: i64, t: i64) -> BigInt {
    p.eval(&BigInt::from(s), &BigInt::from(t))
}

#[test]
fn tiling_enumeration_matches_recurrence() {
    let cache = LucasCache::new();
    for n in 1..=25 {
        assert_eq!(*cache.lucas(n), strip_tiling_poly(n - 1).unwrap(), "n={n}");
    }
}

#[test]
fn integers_at_two_minus_one() {
    let cache = LucasCache::new();
    for n in 0..=500 {
        assert_eq!(at(&cache.lucas(n), 2, -1), BigInt::from(n), "n={n}");
    }
}

#[test]
fn fibonacci_at_one_one() {
    let cache = LucasCache::new();
    for n in 0..=300 {
        assert_eq!(at(&cache.lucas(n), 1, 1), fibonacci(n as u64), "n={n}");
    }
}

#[test]
fn q_integers() {
    let cache = LucasCache::new();
    for q in [2i64, 3, 5] {
        for n in 0..=200 {
            assert_eq!(
                at(&cache.lucas(n), q + 1, -q),
                q_integer(n as u64, q),
                "q={q} n={n}"
            );
        }
    }
}

#[test]
fn addition_rule_on_a_grid() {
    let cache = LucasCache::new();
    for m in 1..=50 {
        for n in 1..=50 {
            assert!(lemma21_check(&cache, m, n).holds(), "m={m} n={n}");
        }
    }
}

#[test]
fn diagonal_is_the_product_form() {
    let cache = LucasCache::new();
    for n in 1..=200 {
        let product = product_identity_check(&cache, n);
        assert!(product.holds(), "n={n}");
        if n <= 50 {
            assert_eq!(lemma21_check(&cache, n, n), product, "n={n}");
        }
    }
}

#[test]
fn lucastorials_are_running_products() {
    let cache = LucasCache::new();
    let mut acc = Polynomial::one();
    for n in 1..=30 {
        acc = &acc * &*cache.lucas(n);
        assert_eq!(*cache.lucastorial(n), acc, "n={n}");
    }
}
