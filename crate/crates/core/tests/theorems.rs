use std::sync::Arc;

use proptest::prelude::*;
use ringlab::analysis::{
    anti_n_hom_witness, check_lemma21, n_hom_witness, verify_theorem24, Budgets, CheckName, Mode, Outcome,
};
use ringlab::maps::count_additive_maps;
use ringlab::ring::factorial;
use ringlab::{
    enumerate_additive_maps, herstein_decompose, is_n_jordan, symmetrized_defect, verify_lemma22,
    verify_theorem23, AdditiveMap, Catalog, FiniteRing, MapFilter, MultiAdditiveMap,
};

fn ring_pairs(catalog: &Catalog, max_maps: u128) -> Vec<(Arc<FiniteRing>, Arc<FiniteRing>)> {
    catalog
        .all_pairs()
        .into_iter()
        .map(|(a, b)| (catalog.get(&a).unwrap().clone(), catalog.get(&b).unwrap().clone()))
        .filter(|(a, b)| count_additive_maps(a, b) <= max_maps)
        .collect()
}

fn n_jordan_maps(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, n: usize) -> Vec<AdditiveMap> {
    enumerate_additive_maps(a, b, MapFilter::NJordan(n), Budgets::default().enumeration).unwrap()
}

#[test]
fn implication_lattice_holds() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    for (a, b) in ring_pairs(&catalog, 2_000) {
        if a.size().pow(3) > 50_000 {
            continue;
        }
        let maps = enumerate_additive_maps(&a, &b, MapFilter::All, budgets.enumeration).unwrap();
        for h in &maps {
            let hom2 = n_hom_witness(h, 2, &budgets).unwrap().is_none();
            let anti2 = anti_n_hom_witness(h, 2, &budgets).unwrap().is_none();
            for n in 2..=3 {
                let jordan = is_n_jordan(h, n);
                let hom = n_hom_witness(h, n, &budgets).unwrap().is_none();
                let anti = anti_n_hom_witness(h, n, &budgets).unwrap().is_none();
                assert!(!hom || jordan, "n-hom without n-Jordan: {:?}", h.key());
                assert!(!anti || jordan, "anti-n-hom without n-Jordan: {:?}", h.key());
                assert!(!hom2 || hom, "hom that is not an n-hom: {:?}", h.key());
                assert!(!anti2 || anti, "anti-hom that is not an anti-n-hom: {:?}", h.key());
            }
        }
    }
}

#[test]
fn commutative_n_jordan_equals_n_hom() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    for (a, b) in ring_pairs(&catalog, 10_000) {
        for n in 2..=4 {
            let report = verify_theorem23(&a, &b, n, &budgets).unwrap();
            let hypotheses = a.is_commutative() && b.is_commutative() && b.char_exceeds(n);
            if hypotheses {
                assert_eq!(report.outcome, Outcome::Verified, "{report:?}");
            } else {
                assert_eq!(report.outcome, Outcome::PremiseFailed, "{report:?}");
            }
        }
    }
}

#[test]
fn symmetrized_defect_vanishes_exhaustively() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    for (a, b) in ring_pairs(&catalog, 2_000) {
        for n in 2..=3 {
            if (a.size() as u64).pow(n as u32) * factorial(n) > 200_000 {
                continue;
            }
            for h in n_jordan_maps(&a, &b, n) {
                let r = verify_lemma22(&h, n, Mode::Exhaustive, &budgets).unwrap();
                assert_eq!(r.outcome, Outcome::Verified, "{r:?}");
                let f = MultiAdditiveMap::Defect { h: h.clone(), n };
                assert_eq!(check_lemma21(&f, Mode::Exhaustive, &budgets).unwrap().outcome, Outcome::Verified);
            }
        }
    }
}

#[test]
fn unit_specialization_identity() {
    // tuple (x, e, ..., e): n! h(x) = (n-1)! sum_j c^(j-1) h(x) c^(n-j)
    let catalog = Catalog::standard();
    for (a, b) in ring_pairs(&catalog, 2_000) {
        let Some(e) = a.unit() else { continue };
        for n in 2..=5 {
            for h in n_jordan_maps(&a, &b, n) {
                let c = h.evaluate(e);
                for x in a.elements() {
                    let mut tuple = vec![e; n];
                    tuple[0] = x;
                    let lhs = b.scalar(factorial(n), h.evaluate(x));
                    let sum = (1..=n).fold(0, |acc, j| {
                        let term = b.right_pow_mul(b.left_pow_mul(c, j - 1, h.evaluate(x)), c, n - j);
                        b.add(acc, term)
                    });
                    let rhs = b.scalar(factorial(n - 1), sum);
                    assert_eq!(lhs, rhs, "({}, {}, {n}) x={x}", a.label(), b.label());
                    // the symmetrized defect is lhs - rhs
                    assert_eq!(symmetrized_defect(&h, &tuple), 0);
                }
            }
        }
    }
}

#[test]
fn decomposition_checks_pass_under_hypotheses() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    let mut decomposed = 0;
    for (a, b) in ring_pairs(&catalog, 10_000) {
        for n in 2..=4 {
            if a.unit().is_none() || !b.char_exceeds(n) {
                continue;
            }
            for h in n_jordan_maps(&a, &b, n) {
                let d = herstein_decompose(&h, n).unwrap();
                assert!(d.all_passed(), "({}, {}, {n}) {:?}: {:?}", a.label(), b.label(), h.gen_images(), d.first_failure());
                assert_eq!(d.c, h.evaluate(a.unit().unwrap()));
                decomposed += 1;
            }
            let r = verify_theorem24(&a, &b, n, &budgets).unwrap();
            assert_eq!(r.outcome, Outcome::Verified, "{r:?}");
        }
    }
    assert!(decomposed > 100);
}

#[test]
fn decomposition_of_negated_identity() {
    let catalog = Catalog::standard();
    let z7 = catalog.get("Z7").unwrap();
    let h = ringlab::map_from_generator_images(z7, z7, &[6]).unwrap();
    let d = herstein_decompose(&h, 3).unwrap();
    assert_eq!(d.c, 6);
    assert_eq!(d.tau.values(), &[0, 1, 2, 3, 4, 5, 6]);
    for name in CheckName::ALL {
        assert!(d.check(name).passed);
    }
}

#[test]
fn sampled_mode_is_seeded() {
    let catalog = Catalog::standard();
    let r = catalog.get("Z5xZ7").unwrap();
    let budgets = Budgets::default();
    let h = n_jordan_maps(r, r, 4).pop().unwrap();
    let run = |seed| verify_lemma22(&h, 4, Mode::Sampled { count: 500, seed }, &budgets).unwrap();
    assert_eq!(run(3), run(3));
    assert_eq!(run(3).tuples_checked, 500);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrized_defect_vanishes_on_random_tuples(
        pair in 0usize..196,
        n in 2usize..=5,
        pick in any::<prop::sample::Index>(),
        raw in prop::collection::vec(any::<prop::sample::Index>(), 5),
    ) {
        let catalog = Catalog::standard();
        let pairs = ring_pairs(&catalog, 2_000);
        let (a, b) = &pairs[pair % pairs.len()];
        let maps = n_jordan_maps(a, b, n);
        let h = &maps[pick.index(maps.len())];
        let tuple: Vec<usize> = raw[..n].iter().map(|i| i.index(a.size())).collect();
        prop_assert_eq!(symmetrized_defect(h, &tuple), 0);
    }
}
