use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use ringlab::ring::{factorial, zero_product_ring};
use ringlab::{cyclic_ring, direct_product, matrix_ring, Catalog, FiniteRing};

fn small_ring(kind: u8, m: usize) -> FiniteRing {
    match kind {
        0 => cyclic_ring(m).unwrap(),
        _ => zero_product_ring(m).unwrap(),
    }
}

#[test]
fn catalog_rings_revalidate() {
    for ring in Catalog::standard().rings() {
        ring.validate().unwrap_or_else(|e| panic!("{}: {e}", ring.label()));
    }
}

#[test]
fn basis_coordinates_are_a_bijection() {
    for ring in Catalog::standard().rings() {
        let basis = ring.basis();
        let product: usize = basis.orders().iter().product();
        assert_eq!(product, ring.size(), "{}", ring.label());
        let seen: BTreeSet<Vec<usize>> = ring.elements().map(|x| basis.coordinates(x).to_vec()).collect();
        assert_eq!(seen.len(), ring.size(), "{}", ring.label());
        // x is recovered from its coordinates
        for x in ring.elements() {
            let rebuilt = basis
                .coordinates(x)
                .iter()
                .zip(basis.generators())
                .fold(0, |acc, (&k, &g)| ring.add(acc, ring.scalar(k as u64, g)));
            assert_eq!(rebuilt, x);
        }
    }
}

#[test]
fn char_predicate_matches_gcd() {
    for ring in Catalog::standard().rings() {
        for n in 2..=7 {
            let expected = factorial(n).gcd(&(ring.size() as u64)) == 1;
            assert_eq!(ring.char_exceeds(n), expected, "{} n={n}", ring.label());
            assert_eq!(ring.char_witness(n).is_none(), expected);
        }
    }
}

#[test]
fn matrix_ring_is_noncommutative_and_unital() {
    let m = matrix_ring(2, 2).unwrap();
    assert_eq!(m.size(), 16);
    assert!(!m.is_commutative());
    assert!(m.unit().is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn direct_product_is_associative_up_to_reindexing(
        ka in 0u8..2, ma in 1usize..5,
        kb in 0u8..2, mb in 1usize..5,
        kc in 0u8..2, mc in 1usize..4,
    ) {
        let (a, b, c) = (small_ring(ka, ma), small_ring(kb, mb), small_ring(kc, mc));
        let left = direct_product(&direct_product(&a, &b).unwrap(), &c).unwrap();
        let right = direct_product(&a, &direct_product(&b, &c).unwrap()).unwrap();
        // both encodings flatten (i, j, k) to (i |B| + j) |C| + k
        prop_assert_eq!(left.add_table(), right.add_table());
        prop_assert_eq!(left.mul_table(), right.mul_table());
        prop_assert_eq!(left.unit(), right.unit());
    }

    #[test]
    fn cyclic_tables_match_residues(m in 1usize..40, x in 0usize..40, y in 0usize..40) {
        let r = cyclic_ring(m).unwrap();
        let (x, y) = (x % m, y % m);
        prop_assert_eq!(r.add(x, y), (x + y) % m);
        prop_assert_eq!(r.mul(x, y), x * y % m);
        prop_assert_eq!(r.pow(x, 3), x * x % m * x % m);
    }
}
