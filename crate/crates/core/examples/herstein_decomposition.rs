//! Writes an n-Jordan map on a unital ring as h = c tau with c = h(e) and
//! tau = c^(n-2) h, and shows the seven checks.

use ringlab::analysis::CheckName;
use ringlab::{herstein_decompose, map_from_generator_images, Catalog};

fn main() {
    let catalog = Catalog::standard();
    let z7 = catalog.get("Z7").unwrap();
    for (key, n) in [(6, 3), (2, 4), (1, 2)] {
        let h = map_from_generator_images(z7, z7, &[key]).unwrap();
        let d = match herstein_decompose(&h, n) {
            Ok(d) => d,
            Err(e) => {
                println!("Z7 key [{key}] n={n}: {e}");
                continue;
            }
        };
        println!("Z7 key [{key}] n={n}: c = {}, tau = {:?}", d.c, d.tau.values());
        for name in CheckName::ALL {
            let check = d.check(name);
            println!("  {:<16} {}", name, if check.passed { "ok" } else { "FAILED" });
        }
    }
}
