use proptest::prelude::*;

use qlab_core::catalog::{self, NAMES};
use qlab_core::homs::{h_p, hom_check, strong_homs_to_q2, HomKind};
use qlab_core::nucleus::{coequalizer, induce_involution, involution_criterion, least_coequalizing_nucleus, universal_property_check, Nucleus};
use qlab_core::search::random_left_sided;
use qlab_core::tensor::{tensor_primes, tensor_quantale, DEFAULT_MAX_TENSOR};
use qlab_core::topology::*;
use qlab_core::{Elem, Quantale};

fn small_catalog() -> Vec<Quantale> {
    NAMES.iter().map(|n| catalog::catalog(n).unwrap()).filter(|q| q.len() <= 11).collect()
}

fn any_catalog() -> impl Strategy<Value = Quantale> {
    let all = small_catalog();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Every nucleus, by testing every subset as a fixed-point set.
fn all_nuclei(q: &Quantale) -> Vec<Nucleus> {
    (0u32..(1 << q.len()))
        .filter_map(|mask| {
            let set: Vec<Elem> = q.elements().filter(|&a| mask & (1 << a) != 0).collect();
            Nucleus::from_fixed_points(q, &set).ok()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn least_nucleus_matches_brute_force(q in any_catalog(), raw in proptest::collection::vec((0usize..16, 0usize..16), 1..3)) {
        let n = q.len();
        let pairs: Vec<(Elem, Elem)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let c = least_coequalizing_nucleus(&q, &pairs).unwrap();
        c.check_laws(&q).unwrap();
        let coequalizing: Vec<Nucleus> = all_nuclei(&q).into_iter().filter(|k| pairs.iter().all(|&(u, v)| k.apply(u) == k.apply(v))).collect();
        prop_assert!(coequalizing.contains(&c));
        for k in &coequalizing {
            prop_assert!(q.elements().all(|a| q.leq(c.apply(a), k.apply(a))), "{} is not below another coequalizing nucleus", q.name());
        }
    }

    #[test]
    fn coequalizer_factors_maps_into_two(q in any_catalog(), a in 0usize..16, b in 0usize..16) {
        let pairs = [(a % q.len(), b % q.len())];
        let qq = coequalizer(&q, &pairs).unwrap();
        prop_assert!(hom_check(&q, &qq.quotient, qq.projection.table(), HomKind::Hom).unwrap());
        for cod in [catalog::two(), catalog::c3l()] {
            prop_assert!(universal_property_check(&qq, &pairs, &cod).holds());
        }
    }

    #[test]
    fn quotient_involution_exactly_when_nucleus_involutive(a in 0usize..6, b in 0usize..6) {
        let q = catalog::q2();
        let qq = coequalizer(&q, &[(a, b)]).unwrap();
        let crit = involution_criterion(&qq).unwrap();
        prop_assert!(crit.agree());
        prop_assert_eq!(induce_involution(&qq).is_ok(), crit.nucleus_involutive);
    }

    #[test]
    fn strong_primes_are_strong_homs(q in any_catalog()) {
        let r = strong_homs_to_q2(&q);
        prop_assert!(r.bijective);
        for p in q.strong_spectrum() {
            let h = h_p(&q, p).unwrap();
            prop_assert!(hom_check(&q, &catalog::q2(), h.table(), HomKind::StrongHom).unwrap());
        }
    }

    #[test]
    fn random_sided_tensors_factor_primes(seed in any::<u64>()) {
        let qs = random_left_sided(seed, 2, 5, 20_000);
        prop_assume!(qs.len() == 2);
        let t = tensor_quantale(&qs[0], &qs[1].opposite(), DEFAULT_MAX_TENSOR).unwrap();
        prop_assert!(tensor_primes(&t).unwrap().agree);
    }

    #[test]
    fn generated_topologies_are_closed(
        subbase in proptest::collection::vec(proptest::collection::vec(0usize..6, 2), 0..3),
        involutive in any::<bool>(),
    ) {
        let amb = default_ambient();
        let t = generate_topology(vec!["x".into(), "y".into()], &subbase, &amb, involutive, DEFAULT_MAX_OPENS).unwrap();
        t.verify_axioms().unwrap();
        for f in &subbase {
            prop_assert!(t.contains(f));
        }
        prop_assert_eq!(join_closure(&amb, 2, t.base()), t.opens().to_vec());
        let r = involution_by_interior(&t, 0, 0).unwrap();
        prop_assert!(r.agree() && !r.sampled);
        if involutive {
            prop_assert!(r.closed_under_involution);
        }
    }

    #[test]
    fn interior_laws(
        subbase in proptest::collection::vec(proptest::collection::vec(0usize..6, 2), 1..3),
        f in proptest::collection::vec(0usize..6, 2),
        g in proptest::collection::vec(0usize..6, 2),
    ) {
        let amb = default_ambient();
        let t = generate_topology(vec!["x".into(), "y".into()], &subbase, &amb, true, DEFAULT_MAX_OPENS).unwrap();
        let i = t.interior(&f);
        prop_assert!(t.contains(&i));
        prop_assert!(pointwise_leq(&amb, &i, &f));
        prop_assert_eq!(t.interior(&i), i.clone());
        prop_assert_eq!(t.contains(&f), t.interior(&f) == f);
        if pointwise_leq(&amb, &f, &g) {
            for x in 0..2 {
                prop_assert!(amb.leq(t.neighborhood(x, &f), t.neighborhood(x, &g)));
            }
        }
        prop_assert_eq!(t.neighborhood(0, &t.constant(amb.top())), amb.top());
    }

    #[test]
    fn subspaces_keep_the_axioms(
        subbase in proptest::collection::vec(proptest::collection::vec(0usize..6, 3), 1..3),
        drop in 0usize..3,
    ) {
        let amb = default_ambient();
        let t = generate_topology(vec!["x".into(), "y".into(), "z".into()], &subbase, &amb, true, DEFAULT_MAX_OPENS).unwrap();
        let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
        let s = t.subspace(&keep).unwrap();
        s.verify_axioms().unwrap();
        prop_assert!(s.opens().len() <= t.opens().len());
        let same = t.subspace(&[0, 1, 2]).unwrap();
        prop_assert_eq!(same.opens(), t.opens());
    }
}
