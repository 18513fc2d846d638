use num_bigint::BigInt;
use num_rational::BigRational;
use paraferm::w1inf::*;
use proptest::prelude::*;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn falling_factorial_examples() {
    assert_eq!(falling_factorial(4, 2), big(12));
    for n in -3..6 {
        assert_eq!(falling_factorial(n, 0), big(1));
    }
    assert_eq!(falling_factorial(2, 3), big(0));
}

#[test]
fn product_examples() {
    let p = symbol_product::<BigRational>(2, 1, 2).unwrap();
    assert_eq!(p.coeff(3), BigRational::from_integer(big(4)));
    for (m, n) in [(0, 0), (3, 5), (7, 1)] {
        assert!(symbol_product::<BigRational>(m, 0, n).unwrap().is_zero());
    }
    assert_eq!(symbol_product::<BigRational>(3, 2, 1).unwrap().coeff(2), BigRational::from_integer(big(-6)));
    assert_eq!(symbol_product::<BigRational>(1, 3, 1), Err(W1infError::BadMode { r: 3, sum: 2 }));
}

proptest! {
    #[test]
    fn skew_symmetry(m in 0u32..=12, n in 0u32..=12, r in 0u32..=12) {
        let sign = if r % 2 == 0 { big(1) } else { big(-1) };
        prop_assert_eq!(product_coefficient(m, r, n), -sign * product_coefficient(n, r, m));
    }

    #[test]
    fn first_products(m in 0u32..=30, n in 0u32..=30) {
        prop_assume!(m + n >= 1);
        prop_assert_eq!(product_coefficient(m, 1, n), big((m + n) as i64));
    }
}

#[test]
fn closures() {
    for bound in 2..=20 {
        let c = generation_closure(&[1, 2], bound);
        assert_eq!(c.reachable, (1..=bound).collect());
        assert_eq!(generation_closure(&[0, 1, 2], bound).reachable, (0..=bound).collect());
    }
    assert_eq!(generation_closure(&[0], 5).reachable, [0].into());
    // J^1_(1) J^1 = 2 J^1 and J^1_(2) J^1 = 0: J^1 alone is closed
    assert_eq!(generation_closure(&[1], 3).reachable, [1].into());
    assert!(!generation_closure(&[2, 3], 10).reachable.contains(&1));
}

#[test]
fn derivations_are_valid() {
    let c = generation_closure(&[1, 2], 20);
    for (m, w) in &c.witnesses {
        assert!(c.reachable.contains(&w.a) && c.reachable.contains(&w.b));
        assert_eq!(w.a + w.b - w.r, *m);
        assert_eq!(product_coefficient(w.a, w.r, w.b).to_string(), w.coefficient);
        assert_ne!(w.coefficient, "0");
    }
    assert_eq!(c.derivation(3).unwrap(), "(J^2)_(1) (J^2)");
}
