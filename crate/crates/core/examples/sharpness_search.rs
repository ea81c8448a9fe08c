//! Searches for maps that are n-Jordan but not n-homomorphisms once a
//! hypothesis is dropped.

use ringlab::analysis::Budgets;
use ringlab::search::{render, Format};
use ringlab::{find_counterexamples, Catalog, Profile};

fn main() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    let runs = [
        (Profile::CharViolated, vec![("Z2xZ2", "Z2xZ2")], vec![2]),
        (Profile::NoUnit, vec![("N2", "N2"), ("N2", "Z2")], vec![2, 3]),
        (Profile::Noncommutative, vec![("Z2", "M2Z2")], vec![2, 3]),
    ];
    for (profile, pairs, degrees) in runs {
        let pairs: Vec<_> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let report = find_counterexamples(&catalog, profile, &pairs, &degrees, 5, &budgets, 0).unwrap();
        println!("== profile {}", profile.id());
        print!("{}", render(&report, Format::Text));
    }
}
