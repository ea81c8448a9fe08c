//! The symmetrized Jordan defect of an n-Jordan map vanishes on every tuple,
//! while single defects need not.

use ringlab::analysis::{jordan_defect, Budgets, Mode};
use ringlab::{enumerate_additive_maps, verify_lemma22, Catalog, MapFilter};

fn main() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();

    let v = catalog.get("Z2xZ2").unwrap();
    for h in enumerate_additive_maps(v, v, MapFilter::NJordan(2), budgets.enumeration).unwrap() {
        let nonzero = v.elements().flat_map(|x| v.elements().map(move |y| [x, y])).filter(|t| jordan_defect(&h, t) != 0).count();
        let report = verify_lemma22(&h, 2, Mode::Exhaustive, &budgets).unwrap();
        println!(
            "Z2xZ2 key {:?}: {nonzero:>2} tuples with nonzero defect, symmetrized sum {:?} over {} tuples",
            h.gen_images(),
            report.outcome,
            report.tuples_checked
        );
    }

    let r = catalog.get("Z5xZ7").unwrap();
    let h = enumerate_additive_maps(r, r, MapFilter::NJordan(4), budgets.enumeration).unwrap().pop().unwrap();
    let sampled = verify_lemma22(&h, 4, Mode::Sampled { count: 20_000, seed: 1 }, &budgets).unwrap();
    println!("Z5xZ7 n=4 key {:?}: sampled {:?}", h.gen_images(), sampled.outcome);
}
