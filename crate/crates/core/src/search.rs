//! Catalog sweeps: classification tables and counterexample hunts.
//!
//! A counterexample is an n-Jordan map that is neither an n-homomorphism nor
//! an anti-n-homomorphism, found on a ring pair that violates one of the
//! hypotheses (`char(B) > n`, a unit in `A`, commutativity). Maps failing only
//! one of the two properties are kept as near misses.

use std::fmt::Write as _;
use std::io;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    anti_n_hom_witness, classify, is_n_jordan, n_hom_witness, AnalysisError, Budgets, Statement,
};
use crate::catalog::{Catalog, CatalogError};
use crate::maps::{enumerate_additive_maps, MapFilter, MapKey, ResolveError};
use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Which hypothesis a counterexample search violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    CharViolated,
    NoUnit,
    Noncommutative,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::CharViolated, Profile::NoUnit, Profile::Noncommutative];

    /// `Some(reason)` when the pair violates this profile's hypothesis.
    pub fn violation(self, a: &FiniteRing, b: &FiniteRing, n: usize) -> Option<String> {
        match self {
            Profile::CharViolated => b
                .char_witness(n)
                .map(|x| format!("char({}) > {n} fails: {n}! * {x} = 0", b.label())),
            Profile::NoUnit => a.unit().is_none().then(|| format!("{} has no unit", a.label())),
            Profile::Noncommutative => match (a.is_commutative(), b.is_commutative()) {
                (false, _) => Some(format!("{} is non-commutative", a.label())),
                (_, false) => Some(format!("{} is non-commutative", b.label())),
                _ => None,
            },
        }
    }

    /// The statement whose hypothesis this profile removes.
    pub fn statement(self) -> Statement {
        match self {
            Profile::CharViolated => Statement::Cor25,
            Profile::NoUnit => Statement::Thm24,
            Profile::Noncommutative => Statement::Thm23,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Profile::CharViolated => "char_violated",
            Profile::NoUnit => "no_unit",
            Profile::Noncommutative => "noncommutative",
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Profile::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| format!("unknown profile `{s}`"))
    }
}

/// One sweep request: ring pairs, degrees, what to verify and what to hunt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTask {
    pub pairs: Vec<(String, String)>,
    pub n_range: (usize, usize),
    pub statements: Vec<Statement>,
    pub profiles: Vec<Profile>,
    pub budgets: Budgets,
    pub max_findings: usize,
}

impl SearchTask {
    pub fn degrees(&self) -> Vec<usize> {
        (self.n_range.0..=self.n_range.1).collect()
    }
}

impl Default for SearchTask {
    fn default() -> Self {
        SearchTask {
            pairs: Vec::new(),
            n_range: (2, 6),
            statements: Vec::new(),
            profiles: Vec::new(),
            budgets: Budgets::default(),
            max_findings: usize::MAX,
        }
    }
}

// ---------------------------------------------------------------------------
// classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub domain: String,
    pub codomain: String,
    pub n: usize,
    pub status: RowStatus,
    pub additive: u64,
    pub jordan: u64,
    pub n_jordan: u64,
    pub n_hom: u64,
    pub anti_n_hom: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub run: RunMeta,
    pub rows: Vec<ClassificationRow>,
}

impl ClassificationTable {
    pub fn row(&self, domain: &str, codomain: &str, n: usize) -> Option<&ClassificationRow> {
        self.rows
            .iter()
            .find(|r| r.domain == domain && r.codomain == codomain && r.n == n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMeta {
    pub catalog_hash: String,
    pub seed: u64,
    pub partial: bool,
}

fn classify_row(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, n: usize, budgets: &Budgets) -> ClassificationRow {
    let mut row = ClassificationRow {
        domain: a.label().to_string(),
        codomain: b.label().to_string(),
        n,
        status: RowStatus::Ok,
        additive: 0,
        jordan: 0,
        n_jordan: 0,
        n_hom: 0,
        anti_n_hom: 0,
        detail: None,
    };
    let result = enumerate_additive_maps(a, b, MapFilter::All, budgets.enumeration)
        .map_err(AnalysisError::from)
        .and_then(|maps| {
            maps.iter()
                .map(|h| classify(h, n, budgets))
                .collect::<Result<Vec<_>, _>>()
        });
    match result {
        Ok(records) => {
            let count = |f: fn(&crate::analysis::ClassificationRecord) -> bool| {
                records.iter().filter(|r| f(r)).count() as u64
            };
            row.additive = records.len() as u64;
            row.jordan = count(|r| r.is_jordan);
            row.n_jordan = count(|r| r.is_n_jordan);
            row.n_hom = count(|r| r.is_n_hom);
            row.anti_n_hom = count(|r| r.is_anti_n_hom);
        }
        Err(e) => {
            row.status = RowStatus::BudgetExceeded;
            row.detail = Some(e.to_string());
        }
    }
    row
}

/// Counts of additive, Jordan, n-Jordan, n-hom and anti-n-hom maps per
/// `(A, B, n)`, rows in `pairs` x `degrees` order. Budget overruns mark the row
/// and the table as partial.
pub fn run_classification(
    catalog: &Catalog,
    pairs: &[(String, String)],
    degrees: &[usize],
    budgets: &Budgets,
    seed: u64,
) -> Result<ClassificationTable, SearchError> {
    let jobs = resolve_pairs(catalog, pairs)?;
    let cells: Vec<_> = jobs
        .iter()
        .flat_map(|(a, b)| degrees.iter().map(move |&n| (a, b, n)))
        .collect();
    let rows: Vec<ClassificationRow> = cells
        .par_iter()
        .map(|(a, b, n)| classify_row(a, b, *n, budgets))
        .collect();
    let partial = rows.iter().any(|r| r.status != RowStatus::Ok);
    Ok(ClassificationTable {
        run: RunMeta {
            catalog_hash: catalog.hash(),
            seed,
            partial,
        },
        rows,
    })
}

fn resolve_pairs(catalog: &Catalog, pairs: &[(String, String)]) -> Result<Vec<(Arc<FiniteRing>, Arc<FiniteRing>)>, CatalogError> {
    pairs
        .iter()
        .map(|(a, b)| Ok((catalog.get(a)?.clone(), catalog.get(b)?.clone())))
        .collect()
}

// ---------------------------------------------------------------------------
// counterexamples

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    /// The pair violates the hypothesis, but no n-Jordan map fails both properties.
    Verification,
    Counterexample,
    /// Fails exactly one of n-hom / anti-n-hom.
    NearMiss,
    /// The pair satisfies the hypothesis the profile was meant to violate.
    ProfileMismatch,
    /// A statement's hypotheses do not hold on the pair.
    PremiseFailure,
    /// A theorem-guaranteed check failed.
    ImplementationBug,
    /// The row could not be searched within its budgets.
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub n_jordan: bool,
    pub n_hom: bool,
    pub anti_n_hom: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingWitness {
    pub gen_images: Vec<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub statement: Statement,
    pub rings: [String; 2],
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FindingWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Flags>,
    pub narrative: String,
}

impl Finding {
    fn note(kind: FindingKind, profile: Profile, a: &FiniteRing, b: &FiniteRing, n: usize, narrative: String) -> Self {
        Finding {
            kind,
            statement: profile.statement(),
            rings: [a.label().to_string(), b.label().to_string()],
            n,
            witness: None,
            flags: None,
            narrative,
        }
    }

    /// Rebuilds the witness map from `catalog` and recomputes its flags.
    pub fn replay(&self, catalog: &Catalog, budgets: &Budgets) -> Result<Option<Flags>, SearchError> {
        let Some(w) = &self.witness else {
            return Ok(None);
        };
        let key = MapKey {
            domain: self.rings[0].clone(),
            codomain: self.rings[1].clone(),
            gen_images: w.gen_images.clone(),
        };
        let h = key.resolve(catalog)?;
        Ok(Some(Flags {
            n_jordan: is_n_jordan(&h, self.n),
            n_hom: n_hom_witness(&h, self.n, budgets)?.is_none(),
            anti_n_hom: anti_n_hom_witness(&h, self.n, budgets)?.is_none(),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub run: RunMeta,
    pub findings: Vec<Finding>,
}

impl SearchReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.kind == FindingKind::Counterexample)
    }
}

fn search_row(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    n: usize,
    profile: Profile,
    budgets: &Budgets,
) -> Vec<Finding> {
    let Some(reason) = profile.violation(a, b, n) else {
        return vec![Finding::note(
            FindingKind::ProfileMismatch,
            profile,
            a,
            b,
            n,
            format!("profile {} does not apply: hypothesis holds", profile.id()),
        )];
    };
    let outcome = (|| -> Result<Vec<Finding>, AnalysisError> {
        let maps = enumerate_additive_maps(a, b, MapFilter::NJordan(n), budgets.enumeration)?;
        let mut found = Vec::new();
        for h in &maps {
            let hom = n_hom_witness(h, n, budgets)?;
            let anti = anti_n_hom_witness(h, n, budgets)?;
            let kind = match (&hom, &anti) {
                (Some(_), Some(_)) => FindingKind::Counterexample,
                (None, None) => continue,
                _ => FindingKind::NearMiss,
            };
            let narrative = match kind {
                FindingKind::Counterexample => format!(
                    "{n}-Jordan map fails both the {n}-homomorphism and anti-{n}-homomorphism identities ({reason})"
                ),
                _ => format!(
                    "{n}-Jordan map fails only the {} property ({reason})",
                    if hom.is_some() { "homomorphism" } else { "anti-homomorphism" }
                ),
            };
            let flags = Flags {
                n_jordan: true,
                n_hom: hom.is_none(),
                anti_n_hom: anti.is_none(),
            };
            found.push(Finding {
                kind,
                statement: profile.statement(),
                rings: [a.label().to_string(), b.label().to_string()],
                n,
                witness: Some(FindingWitness {
                    gen_images: h.gen_images().to_vec(),
                    tuple: hom.or(anti),
                }),
                flags: Some(flags),
                narrative,
            });
        }
        if found.is_empty() {
            found.push(Finding::note(
                FindingKind::Verification,
                profile,
                a,
                b,
                n,
                format!(
                    "no counterexample among {} {n}-Jordan maps ({reason})",
                    maps.len()
                ),
            ));
        }
        Ok(found)
    })();
    outcome.unwrap_or_else(|e| {
        vec![Finding::note(FindingKind::BudgetExceeded, profile, a, b, n, e.to_string())]
    })
}

/// Flattens per-row findings in order, keeping at most `max_findings` counterexamples.
fn merge_rows(rows: Vec<Vec<Finding>>, max_findings: usize) -> (Vec<Finding>, bool) {
    let mut partial = false;
    let mut kept = 0;
    let mut findings = Vec::new();
    for f in rows.into_iter().flatten() {
        match f.kind {
            FindingKind::Counterexample if kept == max_findings => {
                partial = true;
                continue;
            }
            FindingKind::Counterexample => kept += 1,
            FindingKind::BudgetExceeded => partial = true,
            _ => {}
        }
        findings.push(f);
    }
    (findings, partial)
}

/// Hunts counterexamples for `profile` over `pairs` x `degrees`.
///
/// Findings come back in `(pair, n, map key)` order. At most `max_findings`
/// counterexamples are kept; hitting that cap or any row budget marks the
/// report partial.
pub fn find_counterexamples(
    catalog: &Catalog,
    profile: Profile,
    pairs: &[(String, String)],
    degrees: &[usize],
    max_findings: usize,
    budgets: &Budgets,
    seed: u64,
) -> Result<SearchReport, SearchError> {
    let jobs = resolve_pairs(catalog, pairs)?;
    let cells: Vec<_> = jobs
        .iter()
        .flat_map(|(a, b)| degrees.iter().map(move |&n| (a, b, n)))
        .collect();
    let rows: Vec<Vec<Finding>> = cells
        .par_iter()
        .map(|(a, b, n)| search_row(a, b, *n, profile, budgets))
        .collect();

    let (findings, partial) = merge_rows(rows, max_findings);
    Ok(SearchReport {
        run: RunMeta {
            catalog_hash: catalog.hash(),
            seed,
            partial,
        },
        findings,
    })
}

fn verify_row(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    n: usize,
    statement: Statement,
    budgets: &Budgets,
) -> Finding {
    use crate::analysis::{
        verify_corollary25, verify_lemma22_all, verify_theorem23, verify_theorem24, Branch, Mode, Outcome,
    };
    let result = match statement {
        Statement::Lemma21 | Statement::Lemma22 => verify_lemma22_all(a, b, n, Mode::Exhaustive, budgets),
        Statement::Thm23 => verify_theorem23(a, b, n, budgets),
        Statement::Thm24 => verify_theorem24(a, b, n, budgets),
        Statement::Cor25 => verify_corollary25(a, b, n, Branch::Hom, budgets).and_then(|r| {
            // the corollary holds if either branch's premise is met
            if r.outcome == Outcome::PremiseFailed && r.witness.as_ref().is_some_and(|w| w.gen_images.is_some()) {
                verify_corollary25(a, b, n, Branch::Anti, budgets)
            } else {
                Ok(r)
            }
        }),
    };
    let rings = [a.label().to_string(), b.label().to_string()];
    let (kind, witness, narrative) = match result {
        Ok(r) => {
            let kind = match r.outcome {
                Outcome::Verified => FindingKind::Verification,
                Outcome::PremiseFailed => FindingKind::PremiseFailure,
                Outcome::Refuted => FindingKind::ImplementationBug,
                Outcome::BudgetExceeded => FindingKind::BudgetExceeded,
            };
            let witness = r.witness.as_ref().and_then(|w| {
                w.gen_images.clone().map(|gen_images| FindingWitness {
                    gen_images,
                    tuple: w.tuple.clone(),
                })
            });
            let narrative = match r.detail {
                Some(d) => d,
                None => format!("verified over {} maps, {} tuples", r.maps_checked, r.tuples_checked),
            };
            (kind, witness, narrative)
        }
        Err(e) => (FindingKind::BudgetExceeded, None, e.to_string()),
    };
    Finding {
        kind,
        statement,
        rings,
        n,
        witness,
        flags: None,
        narrative,
    }
}

/// Runs every statement and every counterexample profile of `task`.
///
/// Findings are ordered by pair, then degree, then statements before
/// profiles (each in task order), then map key.
pub fn run_task(catalog: &Catalog, task: &SearchTask, seed: u64) -> Result<SearchReport, SearchError> {
    let jobs = resolve_pairs(catalog, &task.pairs)?;
    let degrees = task.degrees();
    let cells: Vec<_> = jobs
        .iter()
        .flat_map(|(a, b)| degrees.iter().map(move |&n| (a, b, n)))
        .collect();
    let rows: Vec<Vec<Finding>> = cells
        .par_iter()
        .map(|(a, b, n)| {
            let mut out: Vec<Finding> = task
                .statements
                .iter()
                .map(|&s| verify_row(a, b, *n, s, &task.budgets))
                .collect();
            for &p in &task.profiles {
                out.extend(search_row(a, b, *n, p, &task.budgets));
            }
            out
        })
        .collect();
    let (findings, partial) = merge_rows(rows, task.max_findings);
    Ok(SearchReport {
        run: RunMeta {
            catalog_hash: catalog.hash(),
            seed,
            partial,
        },
        findings,
    })
}

// ---------------------------------------------------------------------------
// emission

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// Fixed-width plain-text rendering.
pub trait TextReport {
    fn to_text(&self) -> String;
}

fn key_text(k: &[Elem]) -> String {
    k.iter().map(Elem::to_string).collect::<Vec<_>>().join(",")
}

impl TextReport for SearchReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "catalog {}  seed {}  partial {}", self.run.catalog_hash, self.run.seed, self.run.partial).unwrap();
        writeln!(
            out,
            "{:<16} {:<8} {:<10} {:<10} {:>2}  {:<12} narrative",
            "kind", "stmt", "A", "B", "n", "map"
        )
        .unwrap();
        for f in &self.findings {
            let key = f.witness.as_ref().map_or("-".to_string(), |w| key_text(&w.gen_images));
            let kind = serde_json::to_value(f.kind).unwrap();
            writeln!(
                out,
                "{:<16} {:<8} {:<10} {:<10} {:>2}  {:<12} {}",
                kind.as_str().unwrap(),
                f.statement.id(),
                f.rings[0],
                f.rings[1],
                f.n,
                key,
                f.narrative
            )
            .unwrap();
        }
        out
    }
}

impl TextReport for ClassificationTable {
    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "catalog {}  seed {}  partial {}", self.run.catalog_hash, self.run.seed, self.run.partial).unwrap();
        writeln!(
            out,
            "{:<10} {:<10} {:>2} {:>9} {:>7} {:>9} {:>7} {:>7}  status",
            "A", "B", "n", "additive", "jordan", "n-jordan", "n-hom", "anti"
        )
        .unwrap();
        for r in &self.rows {
            let status = match r.status {
                RowStatus::Ok => "ok",
                RowStatus::BudgetExceeded => "budget",
            };
            writeln!(
                out,
                "{:<10} {:<10} {:>2} {:>9} {:>7} {:>9} {:>7} {:>7}  {}",
                r.domain, r.codomain, r.n, r.additive, r.jordan, r.n_jordan, r.n_hom, r.anti_n_hom, status
            )
            .unwrap();
        }
        out
    }
}

impl TextReport for crate::analysis::VerificationReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let outcome = serde_json::to_value(self.outcome).unwrap();
        let mode = match self.mode {
            crate::analysis::Mode::Exhaustive => "exhaustive".to_string(),
            crate::analysis::Mode::Sampled { count, seed } => format!("sampled({count}, seed {seed})"),
        };
        writeln!(out, "{:<16} {}", "statement", self.statement.id()).unwrap();
        writeln!(out, "{:<16} {} -> {}", "rings", self.rings[0], self.rings[1]).unwrap();
        writeln!(out, "{:<16} {}", "n", self.n).unwrap();
        writeln!(out, "{:<16} {}", "mode", mode).unwrap();
        writeln!(out, "{:<16} {}", "outcome", outcome.as_str().unwrap()).unwrap();
        if let Some(d) = &self.detail {
            writeln!(out, "{:<16} {}", "detail", d).unwrap();
        }
        if let Some(w) = &self.witness {
            writeln!(out, "{:<16} {}", "witness", serde_json::to_string(w).unwrap()).unwrap();
        }
        writeln!(out, "{:<16} {}", "maps_checked", self.maps_checked).unwrap();
        writeln!(out, "{:<16} {}", "tuples_checked", self.tuples_checked).unwrap();
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "{:<16} {}", "elapsed_ms", ms).unwrap();
        }
        out
    }
}

/// Renders `report` in `format`. JSON is pretty-printed with a trailing newline.
pub fn render<T: Serialize + TextReport>(report: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
    }
}

pub fn emit_report<T: Serialize + TextReport>(report: &T, format: Format, path: impl AsRef<Path>) -> io::Result<()> {
    std::fs::write(path, render(report, format))
}
