use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};
use paraferm::characters::affine_sl2_char;
use paraferm::fock::*;
use paraferm::linalg::{relations, SparseVec};
use paraferm::scalar::Exp;
use proptest::prelude::*;

type Q = Ratio<i128>;

fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

fn sl2(k: usize) -> &'static Sl2Lattice<Q> {
    static CELLS: [OnceLock<Sl2Lattice<Q>>; 6] = [const { OnceLock::new() }; 6];
    CELLS[k].get_or_init(|| Sl2Lattice::new(k, Exp::from_integer(8)))
}

/// States of `V_L` of weight `< 3` for `k = 3`.
fn states() -> &'static Vec<FockState> {
    static STATES: OnceLock<Vec<FockState>> = OnceLock::new();
    STATES.get_or_init(|| {
        let s = sl2(3);
        s.space()
            .enumerate_states(&LatticePoint::zero(3), Exp::from_integer(3))
            .into_values()
            .flatten()
            .collect()
    })
}

fn vector() -> impl Strategy<Value = StateVector<Q>> {
    prop::collection::vec((any::<prop::sample::Index>(), -3i64..=3), 1..5).prop_map(|picks| {
        let all = states();
        StateVector::from_terms(picks.into_iter().map(|(ix, c)| (ix.get(all).clone(), q(c))))
    })
}

fn heis(beta: &LatticeVector, n: i64, v: &StateVector<Q>) -> StateVector<Q> {
    sl2(3).apply(&ModeOp::Heisenberg { beta: beta.clone(), n }, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heisenberg_commutators(v in vector(), m in -3i64..=3, n in -3i64..=3, p in 0usize..3, r in 0usize..3) {
        let a = LatticeVector::unit(3, p);
        let b = LatticeVector::unit(3, r);
        let lhs = heis(&a, m, &heis(&b, n, &v)).sub(&heis(&b, n, &heis(&a, m, &v)));
        let c = if p == r && m + n == 0 { 2 * m } else { 0 };
        prop_assert_eq!(lhs, v.scale(&q(c)));
        let g = sl2(3).gamma().clone();
        let lhs = heis(&g, m, &heis(&g, n, &v)).sub(&heis(&g, n, &heis(&g, m, &v)));
        let c = if m + n == 0 { 6 * m } else { 0 };
        prop_assert_eq!(lhs, v.scale(&q(c)));
    }

    #[test]
    fn parafermion_modes_commute_with_gamma(v in vector(), n in -1i64..=2, m in -2i64..=2) {
        let s = sl2(3);
        let g = s.gamma().clone();
        let l = |x: &StateVector<Q>| s.virasoro(Named::OmegaPara, n, x).unwrap();
        let lhs = l(&heis(&g, m, &v)).sub(&heis(&g, m, &l(&v)));
        prop_assert!(lhs.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn virasoro_brackets(v in vector(), which in 0usize..3) {
        let s = sl2(3);
        let omega = [Named::OmegaAff, Named::OmegaH, Named::OmegaPara][which];
        let c = s.central_charge(omega);
        let l = |n: i64, x: &StateVector<Q>| s.virasoro(omega, n, x).unwrap();
        for (m, n) in [(1i64, -1i64), (2, -2)] {
            let lhs = l(m, &l(n, &v)).sub(&l(n, &l(m, &v)));
            let central = c * q(m * m * m - m) / q(12);
            let rhs = l(m + n, &v).scale(&q(m - n)).add(&v.scale(&central));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn generator_examples() {
    let s = sl2(3);
    let [h, e, f] = s.generators();
    assert_eq!(e.len(), 3);
    assert_eq!(f.len(), 3);
    let lat = s.space().lattice();
    assert_eq!(h.homogeneous_weight(lat), Some(Exp::one()));
    assert_eq!(e.homogeneous_weight(lat), Some(Exp::one()));
    assert_eq!(lat.pair(s.gamma(), s.gamma()), Exp::from_integer(6));
    for t in e.terms().map(|(t, _)| t) {
        assert!(t.modes.is_empty());
        assert_eq!(lat.norm_point(&t.point), Exp::from_integer(2));
    }
}

#[test]
fn heisenberg_examples() {
    let s = sl2(3);
    let g = s.gamma().clone();
    let vac = s.space().vacuum();
    assert!(heis(&g, 1, &vac).is_zero());
    assert_eq!(heis(&g, 1, &heis(&g, -1, &vac)), vac.scale(&q(6)));
    // e^{-gamma/k} in the rank one lattice Z gamma, coordinates in gamma/2k
    let space = FockSpace::<Q>::new(Lattice::rank_one(6, 6), Exp::from_integer(4));
    let v = StateVector::basis(FockState::exponential(LatticePoint(vec![-2])));
    let one = LatticeVector(vec![Exp::one()]);
    assert_eq!(space.heisenberg_apply(&one, 0, &v), v.scale(&q(-2)));
}

#[test]
fn root_vertex_operator() {
    let s = sl2(3);
    let a1 = LatticePoint(vec![2, 0, 0]);
    let m1 = StateVector::basis(FockState::exponential(LatticePoint(vec![-2, 0, 0])));
    let series = s.space().exp_apply(&a1, &m1, Exp::from_integer(1));
    assert_eq!(series[0].0, Exp::from_integer(-2));
    assert_eq!(series[0].1, s.space().vacuum());
}

#[test]
fn conformal_vector_relations() {
    for k in [3usize, 4] {
        let s = sl2(k);
        let cv = s.conformal_vectors();
        assert!(cv.aff.sub(&cv.h).sub(&cv.para).is_zero());
        let para = s.state(Named::OmegaPara);
        assert!(s.virasoro(Named::OmegaPara, 1, &para).unwrap().is_zero());
        assert_eq!(s.central_charge(Named::OmegaPara), Q::new(2 * (k as i128 - 1), k as i128 + 2));
    }
    assert_eq!(sl2(3).central_charge(Named::OmegaPara), Q::new(4, 5));
}

#[test]
fn vacuum_module_agrees_with_affine_character() {
    for k in [3usize, 4] {
        let s = sl2(k);
        let module = s.affine_module(0, 4).unwrap();
        let ch = affine_sl2_char::<Q>(k as i64, 0, Exp::from_integer(5)).unwrap();
        for d in 0..=4u32 {
            for z in ch.charges() {
                let want = ch.slice(z).coeff(&Exp::from_integer(d as i64));
                assert_eq!(q(module.dim_charge(d, z) as i64), want, "k = {k}, depth {d}, charge {z}");
            }
        }
    }
    assert_eq!(sl2(3).affine_module(0, 3).unwrap().dims(), vec![1, 3, 9, 22]);
}

#[test]
fn generated_subspace_without_symmetry() {
    let s = sl2(3);
    let basis = generated_by_currents(
        s.space(),
        &s.generators(),
        &[s.space().vacuum()],
        Exp::zero(),
        2,
        Descent::AllModes,
        |t| s.charge(t),
    )
    .unwrap();
    assert_eq!(basis.dims(), vec![1, 3, 9]);
    for d in 0..=2 {
        assert_eq!(basis.verify_dim(d), basis.dim(d));
    }
}

#[test]
fn commutant_dimensions() {
    let s = sl2(3);
    let module = s.affine_module(0, 3).unwrap();
    let k0 = s.kernel_of(&module, 0);
    assert_eq!(k0.dims(), vec![1, 0, 1, 2]);
    let k1 = s.kernel_of(&module, -2);
    let lowest = (0..=3).find(|&d| k1.dim(d) > 0).unwrap();
    assert_eq!(k1.top_weight() + Exp::from_integer(lowest as i64), Exp::new(2, 3));
    for k in [3usize, 4] {
        let m = sl2(k).affine_module(0, 0).unwrap();
        assert_eq!(sl2(k).kernel_of(&m, 0).dim(0), 1);
    }
}

#[test]
fn weight_three_singular_vectors() {
    for k in [3usize, 4, 5] {
        let s = sl2(k);
        let module = s.affine_module(0, 3).unwrap();
        let kernel = s.kernel_of(&module, 0);
        let basis = kernel.basis(3, 0);
        let images: Vec<SparseVec<(i64, FockState), Q>> = basis
            .iter()
            .map(|v| {
                let mut img = SparseVec::new();
                for n in [1, 2] {
                    let out = symmetry::apply(v, |u| s.virasoro(Named::OmegaPara, n, u)).unwrap();
                    img.extend(out.terms().map(|(t, c)| ((n, t.clone()), *c)));
                }
                img
            })
            .collect();
        assert_eq!(relations(images).len(), 1, "k = {k}");
        let w3 = symmetry::compress(&s.state(Named::W3));
        let mut with_w3 = basis.to_vec();
        with_w3.push(w3);
        assert_eq!(span_dim(&with_w3), basis.len(), "W3 lies in the commutant, k = {k}");
    }
}

#[test]
fn ek_power() {
    for k in [3usize, 4] {
        let s = sl2(k);
        let mut v = s.space().vacuum();
        for _ in 0..k {
            v = s.current(Named::E, -1, &v).unwrap();
        }
        assert!(!v.is_zero());
        assert_eq!(s.current(Named::H, 0, &v).unwrap(), v.scale(&q(2 * k as i64)));
        assert!(s.current(Named::E, -1, &v).unwrap().is_zero());
    }
}

#[test]
fn basis_dump_is_canonical() {
    let s = sl2(3);
    let [_, e, f] = s.generators();
    let a = e.add(&f);
    let b = StateVector::from_terms(f.terms().chain(e.terms()).map(|(t, c)| (t.clone(), *c)).collect::<Vec<_>>().into_iter().rev());
    assert_eq!(a.dump(s.space().lattice()), b.dump(s.space().lattice()));
    assert_eq!(a.dump(s.space().lattice()).lines().count(), 6);
}
