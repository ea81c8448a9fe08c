//! Jordan homomorphisms that are all homomorphisms force n-Jordan maps to be
//! n-homomorphisms. Also shows the transpose on M2(Z3), which is an
//! anti-homomorphism but not a homomorphism, and a premise failure.

use ringlab::analysis::{is_anti_n_hom, n_hom_witness, verify_corollary25, Branch, Budgets};
use ringlab::maps::map_from_values;
use ringlab::ring::matrix_index;
use ringlab::Catalog;

fn main() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();

    let z7 = catalog.get("Z7").unwrap();
    let r = verify_corollary25(z7, z7, 3, Branch::Hom, &budgets).unwrap();
    println!("Z7 n=3 hom branch: {:?}, {} maps checked", r.outcome, r.maps_checked);

    let m = catalog.get("M2Z3").unwrap();
    let values = m
        .elements()
        .map(|x| {
            let (p, q, r, s) = (x / 27 % 3, x / 9 % 3, x / 3 % 3, x % 3);
            matrix_index(3, &[p, r, q, s])
        })
        .collect();
    let t = map_from_values(m, m, values).unwrap();
    println!(
        "transpose on M2Z3: anti-2-hom {}, 2-hom witness {:?}",
        is_anti_n_hom(&t, 2, &budgets).unwrap(),
        n_hom_witness(&t, 2, &budgets).unwrap()
    );

    // char(M2Z2) = 2, so both branches stop at the premise
    let small = catalog.get("M2Z2").unwrap();
    for branch in [Branch::Hom, Branch::Anti] {
        let r = verify_corollary25(small, small, 2, branch, &budgets).unwrap();
        println!("M2Z2 n=2 {branch:?} branch: {:?} {}", r.outcome, r.detail.unwrap_or_default());
    }
}
