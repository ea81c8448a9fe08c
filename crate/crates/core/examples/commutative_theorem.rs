//! For commutative rings with char(B) > n, n-Jordan maps and n-homomorphisms
//! coincide. Prints both sets side by side.

use ringlab::analysis::Budgets;
use ringlab::{enumerate_additive_maps, is_n_hom, verify_theorem23, Catalog, MapFilter};

fn main() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    for (a, b, n) in [("Z7", "Z7", 3), ("Z11", "Z11", 4), ("Z5xZ7", "Z5xZ7", 3), ("Z9", "Z9", 3), ("M2Z3", "M2Z3", 2)] {
        let (ra, rb) = (catalog.get(a).unwrap(), catalog.get(b).unwrap());
        let report = verify_theorem23(ra, rb, n, &budgets).unwrap();
        print!("({a}, {b}, n={n}) {:?}", report.outcome);
        match report.detail {
            Some(detail) => println!(": {detail}"),
            None => {
                let jordan: Vec<_> = enumerate_additive_maps(ra, rb, MapFilter::NJordan(n), budgets.enumeration)
                    .unwrap()
                    .into_iter()
                    .map(|h| (h.gen_images().to_vec(), is_n_hom(&h, n, &budgets).unwrap()))
                    .collect();
                println!(": n-Jordan keys with n-hom flag {jordan:?}");
            }
        }
    }
}
