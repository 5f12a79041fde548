use schur_core::abelian::AbelianInvariants;
use schur_core::catalog::{build_main_theorem, corpus, cyclic, e1, e2, extraspecial, CorpusSpec, ExtraspecialType};
use schur_core::multiplier::{
    abelian_multiplier, extraspecial_multiplier_order, kunneth_product, multiplier, multiplier_kunneth,
    multiplier_oracle, multiplier_tails, t_invariant, ExtraspecialKind, Method, MultiplierOptions,
};
use schur_core::oracle::{boundary_matrix, MulTable};
use schur_core::pc::PcPresentation;

fn inv(v: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(v.iter().copied())
}

fn small_corpus() -> Vec<PcPresentation> {
    corpus(&CorpusSpec {
        primes: vec![(2, 5), (3, 3)],
    })
    .unwrap()
    .into_iter()
    .map(|e| e.pc)
    .collect()
}

#[test]
fn tails_oracle_and_kunneth_agree() {
    for g in small_corpus() {
        let tails = multiplier_tails(&g).unwrap();
        assert_eq!(tails.free_rank, Some(g.ngens()), "{}", g.name());
        let oracle = multiplier_oracle(&g, 32).unwrap();
        assert_eq!(tails.invariants, oracle.invariants, "{}", g.name());
        if g.direct_factors().is_some() {
            assert_eq!(
                multiplier_kunneth(&g).unwrap().invariants,
                tails.invariants,
                "{}",
                g.name()
            );
        }
    }
}

#[test]
fn chain_complex_on_every_table() {
    for g in small_corpus() {
        let t = MulTable::from_pc(&g, 32).unwrap();
        let d2 = boundary_matrix(&t, 2).unwrap();
        let d3 = boundary_matrix(&t, 3).unwrap();
        assert!(d2.mul(&d3).unwrap().is_zero(), "{}", g.name());
    }
}

#[test]
fn abelian_groups_up_to_32() {
    // all abelian 2-groups of order at most 32 and 3-groups up to 27
    let shapes: &[(u32, &[u32])] = &[
        (2, &[1]),
        (2, &[2]),
        (2, &[1, 1]),
        (2, &[3]),
        (2, &[2, 1]),
        (2, &[1, 1, 1]),
        (2, &[4]),
        (2, &[3, 1]),
        (2, &[2, 2]),
        (2, &[2, 1, 1]),
        (2, &[1, 1, 1, 1]),
        (2, &[5]),
        (2, &[4, 1]),
        (2, &[3, 2]),
        (2, &[3, 1, 1]),
        (2, &[2, 2, 1]),
        (2, &[2, 1, 1, 1]),
        (2, &[1, 1, 1, 1, 1]),
        (3, &[3]),
        (3, &[2, 1]),
        (3, &[1, 1, 1]),
    ];
    for &(p, es) in shapes {
        let mut g = cyclic(p, es[0]).unwrap();
        for &e in &es[1..] {
            g = PcPresentation::direct_product(&g, &cyclic(p, e).unwrap()).unwrap();
        }
        let rule = abelian_multiplier(&g.abelianization().unwrap());
        assert_eq!(multiplier_oracle(&g, 32).unwrap().invariants, rule, "{}", g.name());
        assert_eq!(multiplier_tails(&g).unwrap().invariants, rule, "{}", g.name());
    }
    assert_eq!(abelian_multiplier(&inv(&[2, 4, 4])), inv(&[2, 2, 4]));
}

#[test]
fn cyclic_groups_have_trivial_multiplier() {
    for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)] {
        let g = cyclic(p, e).unwrap();
        assert!(multiplier_oracle(&g, 32).unwrap().invariants.is_trivial());
    }
}

#[test]
fn extraspecial_values() {
    let d8 = schur_core::catalog::dihedral(8).unwrap();
    let q8 = schur_core::catalog::quaternion8().unwrap();
    assert_eq!(multiplier_tails(&d8).unwrap().invariants.order(), 2);
    assert_eq!(multiplier_tails(&q8).unwrap().invariants.order(), 1);
    for p in [3, 5] {
        let p2 = (p as u128) * (p as u128);
        assert_eq!(multiplier_tails(&e1(p).unwrap()).unwrap().invariants.order(), p2);
        assert_eq!(multiplier_tails(&e2(p).unwrap()).unwrap().invariants.order(), 1);
        for kind in [ExtraspecialType::Plus, ExtraspecialType::Minus] {
            let g = extraspecial(p, 2, kind).unwrap();
            let m = multiplier_tails(&g).unwrap();
            assert_eq!(
                m.invariants.order(),
                extraspecial_multiplier_order(p, 2, ExtraspecialKind::Generic).unwrap()
            );
            assert_eq!(m.t, 5);
        }
    }
    assert_eq!(
        multiplier_tails(&extraspecial(3, 3, ExtraspecialType::Plus).unwrap())
            .unwrap()
            .invariants
            .order(),
        3u128.pow(14)
    );
}

#[test]
fn kunneth_compositions() {
    let z3 = cyclic(3, 1).unwrap();
    let m = kunneth_product(&inv(&[]), &inv(&[]), &inv(&[3]), &inv(&[3]));
    assert_eq!(m, inv(&[3]));
    assert_eq!(
        multiplier_oracle(&PcPresentation::direct_product(&z3, &z3).unwrap(), 32)
            .unwrap()
            .invariants,
        m
    );
    // D8 x Z2^3 from its parts
    let z2_3 = inv(&[2, 2, 2]);
    let m = kunneth_product(&inv(&[2]), &abelian_multiplier(&z2_3), &inv(&[2, 2]), &z2_3);
    assert_eq!(m.order(), 1 << 10);
    let item1 = build_main_theorem(1, 2).unwrap().pc;
    assert_eq!(multiplier_tails(&item1).unwrap().invariants, m);
    let item13 = build_main_theorem(13, 2).unwrap().pc;
    let r = multiplier(&item13, &MultiplierOptions::default()).unwrap();
    assert_eq!(r.cross_checks, vec![Method::Kunneth]);
    assert_eq!(r.invariants.order(), 1 << 5);
}

#[test]
fn t_values() {
    assert_eq!(t_invariant(&build_main_theorem(11, 2).unwrap().pc).unwrap(), 5);
    assert_eq!(t_invariant(&PcPresentation::builder(3, 3).build().unwrap()).unwrap(), 0);
    let item10 = build_main_theorem(10, 3).unwrap().pc;
    let m = multiplier_tails(&item10).unwrap();
    assert_eq!((m.invariants.order(), m.t), (3, 5));
    assert!(multiplier_tails(&PcPresentation::trivial(2).unwrap())
        .unwrap()
        .invariants
        .is_trivial());
}
