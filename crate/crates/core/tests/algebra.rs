use proptest::prelude::*;

use qlab_core::catalog::{self, NAMES};
use qlab_core::construct::semi_unitalization;
use qlab_core::homs::{find_involutions, is_isomorphic};
use qlab_core::search::{random_left_sided, small_lattices};
use qlab_core::tensor::{tensor_quantale, TensorLattice, DEFAULT_MAX_TENSOR};
use qlab_core::{FiniteLattice, Quantale};

fn catalog_all() -> Vec<Quantale> {
    NAMES.iter().map(|n| catalog::catalog(n).unwrap()).collect()
}

fn any_lattice() -> impl Strategy<Value = FiniteLattice> {
    let all = small_lattices();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

#[test]
fn opposite_swaps_sides() {
    for q in catalog_all() {
        let op = q.opposite();
        assert_eq!(q.is_left_sided(), op.is_right_sided(), "{}", q.name());
        assert_eq!(q.left_sided_elements(), op.right_sided_elements());
        assert!(is_isomorphic(&op.opposite(), &q, q.involution().is_some()), "{}", q.name());
    }
}

#[test]
fn semi_unitalization_and_spatiality() {
    for q in catalog_all().into_iter().filter(|q| q.len() <= 11) {
        let hat = semi_unitalization(&q);
        assert!(hat.is_semi_unital(), "{}", q.name());
        assert_eq!(q.is_strongly_spatial(), hat.is_spatial(), "{}", q.name());
        let mut expected = q.strong_spectrum();
        expected.push(q.top());
        expected.sort_unstable();
        assert_eq!(hat.spectrum(), expected, "{}", q.name());
    }
}

#[test]
fn q2_involutions() {
    let invs = find_involutions(&catalog::q2());
    assert_eq!(invs, [vec![0, 1, 3, 2, 4, 5]]);
}

#[test]
fn chain_tensor_sizes() {
    let c3 = FiniteLattice::chain(&["bot", "a", "top"]).unwrap();
    assert_eq!(TensorLattice::new(&c3, &c3, 100).unwrap().len(), 6);
    let two = FiniteLattice::chain(&["0", "1"]).unwrap();
    for l in small_lattices() {
        assert_eq!(TensorLattice::new(&l, &two, 100).unwrap().len(), l.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_laws(l in any_lattice(), a in 0usize..5, b in 0usize..5, c in 0usize..5) {
        let n = l.len();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
        prop_assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
    }

    #[test]
    fn tensor_generators_are_bimorphic(l in any_lattice(), m in any_lattice(), a1 in 0usize..5, a2 in 0usize..5, b in 0usize..5) {
        let t = TensorLattice::new(&l, &m, DEFAULT_MAX_TENSOR).unwrap();
        let (a1, a2, b) = (a1 % l.len(), a2 % l.len(), b % m.len());
        let tl = t.lattice();
        prop_assert_eq!(t.elem(l.join(a1, a2), b), tl.join(t.elem(a1, b), t.elem(a2, b)));
        prop_assert_eq!(t.elem(l.bottom(), b), tl.bottom());
        prop_assert_eq!(t.elem(a1, m.bottom()), tl.bottom());
        let mut every = tl.elements().map(|d| tl.join_all(t.generators(d).into_iter().map(|(x, y)| t.elem(x, y)).collect::<Vec<_>>()) == d);
        prop_assert!(every.all(|ok| ok));
    }

    #[test]
    fn random_tensor_products_are_quantales(seed in any::<u64>()) {
        let qs = random_left_sided(seed, 2, 4, 20_000);
        prop_assume!(qs.len() == 2);
        let t = tensor_quantale(&qs[0], &qs[1].opposite(), DEFAULT_MAX_TENSOR).unwrap();
        prop_assert!(t.quantale.is_semi_unital());
        let c = &t.carrier;
        for a in qs[0].elements() {
            for b in qs[1].elements() {
                let ab = c.elem(a, b);
                prop_assert_eq!(t.quantale.mul(ab, ab), c.elem(qs[0].mul(a, a), qs[1].mul(b, b)));
            }
        }
    }
}
