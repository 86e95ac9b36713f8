use proptest::prelude::*;
use std::collections::HashSet;

use frattini::autsearch::{
    elementary_abelian_subgroups_within, module_for_subgroup, type_homomorphism, AutGroup,
    ElementaryAbelianSubgroup, Guards,
};
use frattini::catalog::{sweep, two_group_catalog, Family, SweepBounds};
use frattini::{FinAbGroup, MetacyclicParams, PGroup};

fn metacyclic_params() -> impl Strategy<Value = MetacyclicParams> {
    (prop_oneof![Just(2u32), Just(3u32)], 1u32..=4, 1u32..=3, 0u32..=4, 0u64..81)
        .prop_map(|(p, alpha, beta, gamma, r)| MetacyclicParams {
            p,
            alpha,
            beta,
            gamma: gamma.min(alpha),
            r: r % p.pow(alpha) as u64,
        })
        .prop_filter("consistent parameters", |m| {
            m.validate().is_ok() && m.alpha + m.beta <= if m.p == 2 { 7 } else { 5 }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metacyclic_groups_are_groups(m in metacyclic_params(), seed in any::<u64>()) {
        let g = PGroup::metacyclic(m).unwrap();
        prop_assert_eq!(g.order() as u64, (m.p as u64).pow(m.alpha + m.beta));
        prop_assert_eq!(g.closure(g.generators().iter().copied()).len(), g.order());
        let n = g.order() as u64;
        let mut x = seed;
        let mut next = || { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((x >> 33) % n) as u32 };
        for _ in 0..64 {
            let (a, b, c) = (next(), next(), next());
            prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            prop_assert_eq!(g.mul(0, a), a);
            let order = g.element_order(a);
            prop_assert!(order.is_power_of_two() || m.p != 2);
            prop_assert_eq!(n % order, 0);
        }
    }

    #[test]
    fn frattini_quotient_is_elementary(m in metacyclic_params()) {
        let g = PGroup::metacyclic(m).unwrap();
        let phi = g.frattini_subgroup();
        let q = g.quotient(&phi).unwrap();
        let p = g.p() as u64;
        prop_assert!(q.group.elements().all(|x| q.group.pow(x, p) == 0));
        prop_assert!(q.group.is_abelian());
        prop_assert_eq!(q.group.log_order(), g.generator_rank());
        prop_assert_eq!(g.upper_central_series().length(), g.lower_central_series().length());
    }

    #[test]
    fn split_metacyclic_is_semidirect(m in metacyclic_params()) {
        let split = MetacyclicParams { gamma: m.alpha, ..m };
        let a = PGroup::metacyclic(split).unwrap();
        let pa = (m.p as u64).pow(m.alpha);
        let pb = (m.p as u64).pow(m.beta);
        let b = PGroup::semidirect_cyclic(pa, pb, m.r).unwrap();
        for x in a.elements().step_by(3) {
            for y in a.elements().step_by(5) {
                prop_assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }
}

#[test]
fn frattini_is_intersection_of_maximal_subgroups() {
    let mut checked = 0;
    for d in two_group_catalog(6) {
        let g = d.build().unwrap();
        let maximal = g.maximal_subgroups();
        let meet = maximal
            .iter()
            .skip(1)
            .fold(maximal[0].clone(), |acc, h| acc.intersection(&g, h));
        assert_eq!(meet, g.frattini_subgroup(), "{d}");
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn every_swept_descriptor_builds_with_declared_order() {
    for family in Family::ALL {
        for d in sweep(family, SweepBounds::new(2, 1, 7)) {
            let (p, n) = d.declared_order().unwrap();
            let g = d.build().unwrap();
            assert_eq!((g.p(), g.log_order()), (p, n), "{d}");
        }
    }
}

#[test]
fn automorphisms_form_a_group_of_matrices() {
    for exps in [vec![2, 1, 1], vec![3, 1], vec![2, 2]] {
        let m = FinAbGroup::new(2, exps).unwrap();
        let aut = AutGroup::enumerate(&m).unwrap();
        let all: Vec<usize> = (0..aut.len()).collect();
        assert!(aut.is_closed(&all));
        let id = frattini::autsearch::EndoMatrix::identity(&m);
        for a in 0..aut.len() {
            assert_eq!(aut.matrix(a).compose(&m, aut.matrix(aut.inverse(a))), id);
        }
    }
}

#[test]
fn type_is_multiplicative() {
    for k in 2..=6 {
        let m = FinAbGroup::new(2, vec![k, 1]).unwrap();
        let aut = AutGroup::enumerate(&m).unwrap();
        let t: Vec<(u8, u8)> = aut
            .matrices()
            .iter()
            .map(|a| type_homomorphism(&m, a).unwrap())
            .collect();
        for a in 0..aut.len() {
            for b in 0..aut.len() {
                let ab = t[aut.mul(a, b)];
                assert_eq!(ab, (t[a].0 ^ t[b].0, t[a].1 ^ t[b].1));
            }
        }
    }
}

/// `H^0` by explicit matrix arithmetic on coordinate vectors.
fn h0_by_matrices(aut: &AutGroup, e: &ElementaryAbelianSubgroup) -> u64 {
    let m = aut.module();
    let vectors: Vec<Vec<u32>> = (0..m.order()).map(|x| m.decode(x)).collect();
    let fixed = vectors
        .iter()
        .filter(|v| e.elements.iter().all(|&a| aut.matrix(a).apply(m, v) == **v))
        .count();
    let image: HashSet<usize> = vectors
        .iter()
        .map(|v| {
            e.elements
                .iter()
                .fold(0, |acc, &a| m.add(acc, m.encode(&aut.matrix(a).apply(m, v))))
        })
        .collect();
    (fixed / image.len()) as u64
}

#[test]
fn tiny_modules_agree_with_matrix_oracle() {
    let mut compared = 0;
    for exps in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
        let m = FinAbGroup::new(2, exps).unwrap();
        let aut = AutGroup::enumerate(&m).unwrap();
        for e in elementary_abelian_subgroups_within(&aut, None, 2, &Guards::default()).unwrap() {
            if e.rank() != 2 {
                continue;
            }
            let module = module_for_subgroup(&aut, &e).unwrap();
            assert_eq!(module.tate_h0().order, h0_by_matrices(&aut, &e));
            compared += 1;
        }
    }
    assert!(compared > 10, "{compared}");
}

#[test]
fn module_invariants_on_search_corpus() {
    for exps in [vec![2, 1, 1], vec![1, 1, 1, 1], vec![3, 1]] {
        let m = FinAbGroup::new(2, exps).unwrap();
        let aut = AutGroup::enumerate(&m).unwrap();
        let subs = elementary_abelian_subgroups_within(&aut, None, 2, &Guards::default()).unwrap();
        for e in subs.iter().step_by(7) {
            let module = module_for_subgroup(&aut, e).unwrap();
            let q = module.full_group();
            let fixed: HashSet<u32> = module.fixed_points(&q).into_iter().collect();
            let norm = module.norm_map(&q);
            assert!(norm.iter().all(|x| fixed.contains(x)));
            let augmentation = &module.commutator_submodule(1)[0];
            assert!(augmentation.iter().all(|&x| norm[x as usize] == 0));
            let ct = module.is_cohomologically_trivial();
            assert_eq!(module.tate_h0().is_zero(), ct);
            assert_eq!(module.order_formula_check().is_ok(), ct);
            if ct {
                assert!(module.order_formula_check().unwrap().holds());
            }
        }
    }
}

#[test]
fn verdicts_are_conjugation_invariant() {
    let m = FinAbGroup::new(2, vec![2, 1, 1]).unwrap();
    let aut = AutGroup::enumerate(&m).unwrap();
    let subs = elementary_abelian_subgroups_within(&aut, None, 2, &Guards::default()).unwrap();
    for e in subs.iter().step_by(5) {
        let base = module_for_subgroup(&aut, e).unwrap();
        for g in (0..aut.len()).step_by(37) {
            let gi = aut.inverse(g);
            let conj = |a: usize| aut.mul(aut.mul(g, a), gi);
            let mut elements: Vec<usize> = e.elements.iter().map(|&a| conj(a)).collect();
            elements.sort_unstable();
            let f = ElementaryAbelianSubgroup {
                basis: e.basis.iter().map(|&a| conj(a)).collect(),
                elements,
            };
            let other = module_for_subgroup(&aut, &f).unwrap();
            assert_eq!(other.tate_h0(), base.tate_h0());
            assert_eq!(other.is_cohomologically_trivial(), base.is_cohomologically_trivial());
        }
    }
}
