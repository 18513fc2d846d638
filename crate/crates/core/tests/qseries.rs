mod common;

use num_rational::Ratio;
use paraferm::qseries::*;
use paraferm::scalar::Exp;
use proptest::prelude::*;

type Q = Ratio<i64>;
type S = QSeries<Q>;

fn e(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

fn t(n: i64) -> Exp {
    Exp::from_integer(n)
}

fn coeff(s: &S, n: i64, d: i64) -> i64 {
    s.coeff(&e(n, d)).to_integer()
}

/// Series with exponents in `(1/6) Z` below 3.
fn series() -> impl Strategy<Value = S> {
    prop::collection::vec((0i64..18, -4i64..=4), 0..8)
        .prop_map(|terms| S::from_terms(terms.into_iter().map(|(n, c)| (e(n, 6), Q::from_integer(c))), t(3)))
}

fn unit() -> impl Strategy<Value = S> {
    (series(), prop_oneof![Just(1i64), Just(-2), Just(3)]).prop_map(|(s, c)| {
        let mut s = s.truncate(t(3));
        let c0 = s.coeff(&e(0, 1));
        s.add_term(e(0, 1), Q::from_integer(c) - c0);
        s
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&S::one(t(3))), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverse_of_units(a in unit()) {
        let inv = a.inv_unit().unwrap();
        prop_assert_eq!(a.mul(&inv), S::one(t(3)));
    }

    #[test]
    fn json_round_trip(a in series()) {
        prop_assert_eq!(S::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn theta_symmetry(k in 1i64..8, s in 0i64..16) {
        let s = s % (2 * k);
        let other = (2 * k - s) % (2 * k);
        prop_assert_eq!(
            lattice_coset_char::<Q>(k, s, t(6)).unwrap(),
            lattice_coset_char::<Q>(k, other, t(6)).unwrap()
        );
    }
}

#[test]
fn addition_examples() {
    let a = S::from_coeffs(&[1, 1], t(4));
    let b = S::from_coeffs(&[1, -1], t(4));
    assert_eq!(a.add(&b), S::from_coeffs(&[2], t(4)));
    assert_eq!(a.add(&S::zero(t(4))), a);
    let c = S::from_coeffs(&[1, 0, 1], t(4)).add(&S::from_coeffs(&[0, 0, 1], t(4)));
    assert_eq!(c, S::from_coeffs(&[1, 0, 2], t(4)));
}

#[test]
fn product_examples() {
    let a = S::from_coeffs(&[1, 1], t(4));
    let b = S::from_coeffs(&[1, -1], t(4));
    assert_eq!(a.mul(&b), S::from_coeffs(&[1, 0, -1], t(4)));
    let c = S::from_coeffs(&[1, 0, 0, 2], t(4)).mul(&S::from_coeffs(&[1, 1, 2, 3], t(4)));
    assert_eq!(c, S::from_coeffs(&[1, 1, 2, 5], t(4)));
}

#[test]
fn inverse_examples() {
    assert_eq!(S::from_coeffs(&[1, -1], t(4)).inv_unit().unwrap(), S::from_coeffs(&[1, 1, 1, 1], t(4)));
    assert_eq!(S::one(t(4)).inv_unit().unwrap(), S::one(t(4)));
    assert_eq!(
        S::from_coeffs(&[1, 0, -1, -1], t(5)).inv_unit().unwrap(),
        S::from_coeffs(&[1, 0, 1, 1, 1], t(5))
    );
    assert_eq!(S::from_coeffs(&[0, 1], t(4)).inv_unit(), Err(QSeriesError::ZeroConstantTerm));
}

#[test]
fn heisenberg_against_partition_counts() {
    let h1 = heisenberg_char::<Q>(1, t(5));
    assert_eq!(h1, S::from_coeffs(&[1, 1, 2, 3, 5], t(5)));
    assert_eq!(heisenberg_char::<Q>(0, t(5)), S::one(t(5)));
    let h2 = heisenberg_char::<Q>(2, t(9));
    for n in 0..9usize {
        let parts: Vec<usize> = (1..=n.max(1)).flat_map(|p| [p, p]).collect();
        assert_eq!(coeff(&h2, n as i64, 1) as u64, common::count_partitions(n, &parts));
    }
    assert_eq!(coeff(&h2, 2, 1), 5);
}

#[test]
fn theta_examples() {
    assert_eq!(coset_theta::<Q>(3, 0, t(4)).unwrap(), S::from_coeffs(&[1, 0, 0, 2], t(4)));
    assert_eq!(coset_theta::<Q>(3, 3, t(4)).unwrap().leading(), Some((e(3, 4), Q::from_integer(2))));
    assert_eq!(coset_theta::<Q>(3, 2, t(4)).unwrap().leading(), Some((e(1, 3), Q::from_integer(1))));
    assert_eq!(coset_theta::<Q>(3, 6, t(4)), Err(QSeriesError::BadResidue { k: 3, s: 6 }));
}

#[test]
fn lattice_coset_examples() {
    assert_eq!(lattice_coset_char::<Q>(3, 0, t(4)).unwrap(), S::from_coeffs(&[1, 1, 2, 5], t(4)));
    for k in 1..6 {
        assert_eq!(lattice_coset_char::<Q>(k, 0, t(3)).unwrap().coeff(&e(0, 1)), Q::from_integer(1));
    }
    let c = lattice_coset_char::<Q>(3, 2, t(4)).unwrap();
    assert_eq!(c.leading().map(|(x, _)| x), Some(e(1, 3)));
}

/// Colored partition oracle: a generator of weight `m` and its derivatives
/// contribute one part of each size `>= m`.
fn free_w_oracle(k: usize, n: usize) -> u64 {
    let parts: Vec<usize> = (2..=k).flat_map(|m| m..=n.max(m)).collect();
    common::count_partitions(n, &parts)
}

#[test]
fn free_generation_examples() {
    assert_eq!(free_w_char::<Q>(3, t(4)), S::from_coeffs(&[1, 0, 1, 2], t(4)));
    assert_eq!(free_w_char::<Q>(2, t(4)), S::from_coeffs(&[1, 0, 1, 1], t(4)));
    // weight 4 monomials: u2 u2, d^2 u2, d u3
    assert_eq!(coeff(&free_w_char::<Q>(3, t(6)), 4, 1), 3);
    for k in 2..=6 {
        let f = free_w_char::<Q>(k as i64, t(10));
        for n in 0..10 {
            assert_eq!(coeff(&f, n as i64, 1) as u64, free_w_oracle(k, n), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn free_generation_prefixes() {
    for k in 3..=9i64 {
        let a = free_w_char::<Q>(k, t(12));
        let b = free_w_char::<Q>(k - 1, t(12));
        assert_eq!(a.truncate(t(k)), b.truncate(t(k)));
        assert_ne!(a.coeff(&t(k)), b.coeff(&t(k)));
    }
}
