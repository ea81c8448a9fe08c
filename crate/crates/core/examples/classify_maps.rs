//! Classification table over a few pairs: how many additive maps are Jordan,
//! n-Jordan, n-homomorphisms and anti-n-homomorphisms.

use ringlab::analysis::Budgets;
use ringlab::search::{render, Format};
use ringlab::{run_classification, Catalog};

fn main() {
    let catalog = Catalog::standard();
    let pairs: Vec<(String, String)> = [("Z7", "Z7"), ("Z5xZ7", "Z5xZ7"), ("Z2xZ2", "Z2xZ2"), ("Z3", "M2Z3"), ("N2", "N2")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let table = run_classification(&catalog, &pairs, &[2, 3, 4], &Budgets::default(), 0).unwrap();
    print!("{}", render(&table, Format::Text));
}
