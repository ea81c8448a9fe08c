//! Lists the standard catalog with additive bases and the characteristic
//! predicate for n = 2..=6, then builds a ring from raw tables.

use ringlab::{ring_from_tables, Catalog};

fn main() {
    let catalog = Catalog::standard();
    println!("catalog hash {}", catalog.hash());
    println!("{:<8} {:>4} {:>5} {:>6} {:<16} char > n for n = 2..6", "label", "|R|", "unit", "comm", "basis");
    for ring in catalog.rings() {
        let unit = ring.unit().map_or("-".to_string(), |e| e.to_string());
        let chars: String = (2..=6).map(|n| if ring.char_exceeds(n) { 'y' } else { '.' }).collect();
        println!(
            "{:<8} {:>4} {:>5} {:>6} {:<16} {chars}",
            ring.label(),
            ring.size(),
            unit,
            ring.is_commutative(),
            ring.basis().to_string()
        );
    }

    // F4 = Z2[t]/(t^2 + t + 1) with elements 0, 1, t, t + 1
    let add: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    let mul = vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]];
    let f4 = ring_from_tables(4, &add, &mul, None, "F4").expect("field tables");
    println!("\nF4: unit {:?}, basis {}, char > 2: {}", f4.unit(), f4.basis(), f4.char_exceeds(2));
}
