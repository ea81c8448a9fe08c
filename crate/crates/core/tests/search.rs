use ringlab::analysis::Budgets;
use ringlab::search::{render, run_task, Format, RowStatus, SearchTask};
use ringlab::{emit_report, find_counterexamples, run_classification, Catalog, FindingKind, Profile, Statement};

fn pair(a: &str, b: &str) -> (String, String) {
    (a.to_string(), b.to_string())
}

#[test]
fn classification_rows() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    let pairs = [pair("Z7", "Z7"), pair("Z2xZ2", "Z2xZ2"), pair("Z1", "Z1")];
    let table = run_classification(&catalog, &pairs, &[2, 3], &budgets, 0).unwrap();
    assert_eq!(table.rows.len(), 6);
    assert!(!table.run.partial);

    let z7 = table.row("Z7", "Z7", 3).unwrap();
    assert_eq!((z7.additive, z7.n_jordan, z7.n_hom), (7, 3, 3));
    assert_eq!(z7.status, RowStatus::Ok);

    let v = table.row("Z2xZ2", "Z2xZ2", 2).unwrap();
    assert_eq!((v.additive, v.jordan, v.n_jordan), (16, 16, 16));
    assert!(v.n_hom < 16);

    for n in [2, 3] {
        let z1 = table.row("Z1", "Z1", n).unwrap();
        assert_eq!((z1.additive, z1.jordan, z1.n_jordan, z1.n_hom, z1.anti_n_hom), (1, 1, 1, 1, 1));
    }
}

#[test]
fn char_violated_finds_the_fold_map() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    let report = find_counterexamples(
        &catalog,
        Profile::CharViolated,
        &[pair("Z2xZ2", "Z2xZ2")],
        &[2],
        usize::MAX,
        &budgets,
        0,
    )
    .unwrap();
    let keys: Vec<_> = report.counterexamples().map(|f| f.witness.clone().unwrap().gen_images).collect();
    assert!(keys.contains(&vec![2, 2]));
}

#[test]
fn char_violated_on_admissible_pair_is_a_mismatch() {
    let catalog = Catalog::standard();
    let report = find_counterexamples(
        &catalog,
        Profile::CharViolated,
        &[pair("Z7", "Z7")],
        &[3],
        usize::MAX,
        &Budgets::default(),
        0,
    )
    .unwrap();
    assert_eq!(report.findings.len(), 1);
    assert_eq!(report.findings[0].kind, FindingKind::ProfileMismatch);
    assert_eq!(report.counterexamples().count(), 0);
}

#[test]
fn no_unit_profile_on_zero_product_ring_finds_nothing() {
    let catalog = Catalog::standard();
    let report = find_counterexamples(
        &catalog,
        Profile::NoUnit,
        &[pair("N2", "Z2")],
        &[2, 3],
        usize::MAX,
        &Budgets::default(),
        0,
    )
    .unwrap();
    assert_eq!(report.counterexamples().count(), 0);
}

#[test]
fn replayed_counterexamples_have_no_false_positives() {
    let catalog = Catalog::standard();
    let budgets = Budgets::default();
    let small: Vec<_> = ["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "N2", "M2Z2"].map(String::from).to_vec();
    let pairs: Vec<_> = small.iter().flat_map(|a| small.iter().map(move |b| (a.clone(), b.clone()))).collect();
    for profile in [Profile::CharViolated, Profile::NoUnit, Profile::Noncommutative] {
        let report = find_counterexamples(&catalog, profile, &pairs, &[2, 3], usize::MAX, &budgets, 0).unwrap();
        for f in report.counterexamples() {
            let flags = f.replay(&catalog, &budgets).unwrap().expect("counterexample has a witness");
            assert_eq!(Some(flags), f.flags, "{f:?}");
            assert!(flags.n_jordan, "{f:?}");
            assert!(!flags.n_hom, "{f:?}");
            if f.statement == Statement::Thm23 || f.statement == Statement::Cor25 {
                assert!(!flags.anti_n_hom || f.statement == Statement::Thm23, "{f:?}");
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let catalog = Catalog::standard();
    let task = SearchTask {
        pairs: vec![pair("Z2xZ2", "Z2xZ2"), pair("Z4", "Z2"), pair("M2Z2", "M2Z2")],
        n_range: (2, 3),
        statements: vec![Statement::Thm23, Statement::Lemma22],
        profiles: vec![Profile::CharViolated, Profile::Noncommutative],
        ..SearchTask::default()
    };
    let first = run_task(&catalog, &task, 11).unwrap();
    let second = run_task(&catalog, &task, 11).unwrap();
    assert_eq!(first, second);
    assert_eq!(render(&first, Format::Json), render(&second, Format::Json));
    assert_eq!(render(&first, Format::Text), render(&second, Format::Text));

    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    emit_report(&first, Format::Json, &p1).unwrap();
    emit_report(&second, Format::Json, &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    let parsed: serde_json::Value = serde_json::from_slice(&std::fs::read(&p1).unwrap()).unwrap();
    assert_eq!(parsed["run"]["catalog_hash"], catalog.hash());
}
