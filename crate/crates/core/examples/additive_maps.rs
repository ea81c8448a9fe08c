//! Enumerates additive maps between catalog rings and shows the
//! generator-image keys and value tables.

use ringlab::maps::count_additive_maps;
use ringlab::{enumerate_additive_maps, map_from_generator_images, Catalog, MapFilter};

fn main() {
    let catalog = Catalog::standard();
    for (a, b) in [("Z4", "Z6"), ("Z6", "Z4"), ("Z2xZ2", "Z2")] {
        let (ra, rb) = (catalog.get(a).unwrap(), catalog.get(b).unwrap());
        let maps = enumerate_additive_maps(ra, rb, MapFilter::All, 1_000_000).unwrap();
        println!("{a} -> {b}: {} additive maps", maps.len());
        for h in &maps {
            println!("  key {:?}  values {:?}", h.gen_images(), h.values());
        }
    }

    let m = catalog.get("M2Z3").unwrap();
    println!("M2Z3 -> M2Z3: {} additive maps (counted, not listed)", count_additive_maps(m, m));

    // Z2 has no element of order 3
    let err = map_from_generator_images(catalog.get("Z3").unwrap(), catalog.get("Z2").unwrap(), &[1]).unwrap_err();
    println!("Z3 -> Z2 with key [1]: {err}");
}
