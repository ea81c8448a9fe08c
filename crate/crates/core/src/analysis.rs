//! Classification of additive maps and exhaustive checks of the n-Jordan results.
//!
//! For an additive `h: A -> B` and `n >= 2`:
//!
//! * `h` is *n-Jordan* if `h(x^n) = h(x)^n` for all `x`;
//! * an *n-homomorphism* if `h(x_1 ... x_n) = h(x_1) ... h(x_n)`;
//! * an *anti-n-homomorphism* if `h(x_1 ... x_n) = h(x_n) ... h(x_1)`.
//!
//! The *Jordan defect* `f(x_1, ..., x_n) = h(x_1 ... x_n) - h(x_1) ... h(x_n)` is
//! multi-additive and vanishes on the diagonal exactly when `h` is n-Jordan; its
//! sum over all argument permutations then vanishes everywhere. The verifiers
//! here check that consequence, the commutative transfer result, the
//! factorization `h = h(e) tau` through a Jordan map `tau`, and the transfer
//! from Jordan maps to n-Jordan maps, by exhausting small carriers.
//!
//! Every result these verifiers check is a theorem, so a `Refuted` outcome
//! always indicates a bug in this crate rather than a mathematical finding.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::maps::{enumerate_additive_maps, map_from_values, AdditiveMap, MapError, MapFilter};
use crate::ring::{factorial, Elem, FiniteRing};

/// Default cap on element operations for tuple sweeps.
pub const DEFAULT_TUPLE_BUDGET: u64 = 100_000_000;
/// Default number of tuples drawn in sampled mode.
pub const DEFAULT_SAMPLE_COUNT: u64 = 100_000;
/// Largest arity for which permutation sums are formed (`8! = 40320` terms).
pub const MAX_SYMMETRIZED_ARITY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Element operations allowed for one tuple sweep.
    pub tuple: u64,
    /// Raw generator assignments allowed for one enumeration.
    pub enumeration: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tuple: DEFAULT_TUPLE_BUDGET,
            enumeration: crate::maps::DEFAULT_ENUM_BUDGET,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("sweep needs {needed} operations, tuple budget is {budget}")]
    TupleBudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("diagonal hypothesis f(x, ..., x) = 0 fails at x = {x}")]
    HypothesisFailed { x: Elem },
    #[error("domain ring `{0}` has no unit")]
    NoUnit(String),
    #[error("codomain `{ring}` does not have characteristic > {n}: {n}! * {witness} = 0")]
    CharTooSmall { ring: String, n: usize, witness: Elem },
    #[error("map is not {n}-Jordan: h(x^{n}) != h(x)^{n} at x = {witness}")]
    NotNJordan { n: usize, witness: Elem },
    #[error("degree {0} outside the supported range")]
    Degree(usize),
}

impl AnalysisError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            AnalysisError::TupleBudgetExceeded { .. } | AnalysisError::Map(MapError::BudgetExceeded { .. })
        )
    }
}

fn check_degree(n: usize) -> Result<(), AnalysisError> {
    if (2..=crate::ring::MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(AnalysisError::Degree(n))
    }
}

// ---------------------------------------------------------------------------
// predicates

/// First `x` with `h(x^n) != h(x)^n`.
pub fn n_jordan_witness(h: &AdditiveMap, n: usize) -> Option<Elem> {
    let (a, b) = (h.domain(), h.codomain());
    a.elements()
        .find(|&x| h.evaluate(a.pow(x, n)) != b.pow(h.evaluate(x), n))
}

pub fn is_n_jordan(h: &AdditiveMap, n: usize) -> bool {
    n_jordan_witness(h, n).is_none()
}

fn tuple_space(size: usize, n: usize) -> u128 {
    (size as u128).saturating_pow(n as u32)
}

fn charge(needed: u128, budget: u64) -> Result<(), AnalysisError> {
    if needed > budget as u128 {
        Err(AnalysisError::TupleBudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Depth-first sweep over all n-tuples carrying prefix products in `A` and
/// the ordered (or reversed) product of images in `B`.
fn product_witness(h: &AdditiveMap, n: usize, reversed: bool) -> Option<Vec<Elem>> {
    struct Sweep<'a> {
        h: &'a AdditiveMap,
        a: &'a FiniteRing,
        b: &'a FiniteRing,
        n: usize,
        reversed: bool,
        tuple: Vec<Elem>,
    }
    impl Sweep<'_> {
        fn go(&mut self, prod_a: Option<Elem>, prod_b: Option<Elem>) -> bool {
            if self.tuple.len() == self.n {
                let (pa, pb) = (prod_a.unwrap(), prod_b.unwrap());
                return self.h.evaluate(pa) != pb;
            }
            for x in self.a.elements() {
                let hx = self.h.evaluate(x);
                let pa = prod_a.map_or(x, |p| self.a.mul(p, x));
                let pb = match (prod_b, self.reversed) {
                    (None, _) => hx,
                    (Some(p), false) => self.b.mul(p, hx),
                    (Some(p), true) => self.b.mul(hx, p),
                };
                self.tuple.push(x);
                if self.go(Some(pa), Some(pb)) {
                    return true;
                }
                self.tuple.pop();
            }
            false
        }
    }
    let mut sweep = Sweep {
        h,
        a: h.domain(),
        b: h.codomain(),
        n,
        reversed,
        tuple: Vec::with_capacity(n),
    };
    sweep.go(None, None).then_some(sweep.tuple)
}

/// A tuple with `h(x_1 ... x_n) != h(x_1) ... h(x_n)`, if any.
pub fn n_hom_witness(h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<Option<Vec<Elem>>, AnalysisError> {
    check_degree(n)?;
    charge(tuple_space(h.domain().size(), n), budgets.tuple)?;
    Ok(product_witness(h, n, false))
}

/// A tuple with `h(x_1 ... x_n) != h(x_n) ... h(x_1)`, if any.
pub fn anti_n_hom_witness(h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<Option<Vec<Elem>>, AnalysisError> {
    check_degree(n)?;
    charge(tuple_space(h.domain().size(), n), budgets.tuple)?;
    Ok(product_witness(h, n, true))
}

pub fn is_n_hom(h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<bool, AnalysisError> {
    Ok(n_hom_witness(h, n, budgets)?.is_none())
}

pub fn is_anti_n_hom(h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<bool, AnalysisError> {
    Ok(anti_n_hom_witness(h, n, budgets)?.is_none())
}

/// `h(x_1 ... x_n) - h(x_1) ... h(x_n)`.
pub fn jordan_defect(h: &AdditiveMap, tuple: &[Elem]) -> Elem {
    assert!(tuple.len() >= 2, "defect needs at least two arguments");
    let (a, b) = (h.domain(), h.codomain());
    let lhs = h.evaluate(a.product(tuple));
    let rhs = tuple
        .iter()
        .map(|&x| h.evaluate(x))
        .reduce(|acc, y| b.mul(acc, y))
        .unwrap();
    b.sub(lhs, rhs)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Sum of `jordan_defect` over every reordering of `tuple`.
pub fn symmetrized_defect(h: &AdditiveMap, tuple: &[Elem]) -> Elem {
    let n = tuple.len();
    assert!(
        (2..=MAX_SYMMETRIZED_ARITY).contains(&n),
        "symmetrization supports arity 2..={MAX_SYMMETRIZED_ARITY}"
    );
    let f = MultiAdditiveMap::Defect { h: h.clone(), n };
    f.symmetrized(&permutations(n), tuple)
}

/// A multi-additive map `A^n -> B` built from an additive map.
#[derive(Debug, Clone)]
pub enum MultiAdditiveMap {
    /// `h(x_1 ... x_n) - h(x_1) ... h(x_n)`
    Defect { h: AdditiveMap, n: usize },
    /// `g(x_1) ... g(x_n) - g(x_n) ... g(x_1)`
    ProductCommutator { g: AdditiveMap, n: usize },
}

impl MultiAdditiveMap {
    pub fn arity(&self) -> usize {
        match self {
            MultiAdditiveMap::Defect { n, .. } | MultiAdditiveMap::ProductCommutator { n, .. } => *n,
        }
    }

    fn base(&self) -> &AdditiveMap {
        match self {
            MultiAdditiveMap::Defect { h, .. } => h,
            MultiAdditiveMap::ProductCommutator { g, .. } => g,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        self.base().domain()
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        self.base().codomain()
    }

    pub fn eval(&self, tuple: &[Elem]) -> Elem {
        match self {
            MultiAdditiveMap::Defect { h, .. } => jordan_defect(h, tuple),
            MultiAdditiveMap::ProductCommutator { g, .. } => {
                let b = g.codomain();
                let images: Vec<Elem> = tuple.iter().map(|&x| g.evaluate(x)).collect();
                let forward = b.product(&images);
                let backward = images.iter().rev().copied().reduce(|acc, y| b.mul(acc, y)).unwrap();
                b.sub(forward, backward)
            }
        }
    }

    fn symmetrized(&self, perms: &[Vec<usize>], tuple: &[Elem]) -> Elem {
        let b = self.codomain();
        let mut permuted = vec![0; tuple.len()];
        perms.iter().fold(0, |acc, p| {
            for (slot, &i) in permuted.iter_mut().zip(p) {
                *slot = tuple[i];
            }
            b.add(acc, self.eval(&permuted))
        })
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statement {
    Lemma21,
    Lemma22,
    Thm23,
    Thm24,
    Cor25,
}

impl Statement {
    pub fn id(self) -> &'static str {
        match self {
            Statement::Lemma21 => "lemma21",
            Statement::Lemma22 => "lemma22",
            Statement::Thm23 => "thm23",
            Statement::Thm24 => "thm24",
            Statement::Cor25 => "cor25",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lemma21" => Ok(Statement::Lemma21),
            "lemma22" => Ok(Statement::Lemma22),
            "thm23" => Ok(Statement::Thm23),
            "thm24" => Ok(Statement::Thm24),
            "cor25" => Ok(Statement::Cor25),
            other => Err(format!("unknown statement `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    /// A theorem-guaranteed check failed: an implementation bug.
    Refuted,
    PremiseFailed,
    BudgetExceeded,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_images: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Elem>,
}

impl Witness {
    fn map(h: &AdditiveMap) -> Self {
        Witness {
            gen_images: Some(h.gen_images().to_vec()),
            ..Witness::default()
        }
    }

    fn element(x: Elem) -> Self {
        Witness {
            element: Some(x),
            ..Witness::default()
        }
    }

    fn with_tuple(mut self, tuple: Vec<Elem>) -> Self {
        self.tuple = Some(tuple);
        self
    }

    fn with_element(mut self, x: Elem) -> Self {
        self.element = Some(x);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub rings: [String; 2],
    pub n: usize,
    pub mode: Mode,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub maps_checked: u64,
    pub tuples_checked: u64,
    /// Wall time; left empty unless the caller asks for timing, so that reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn new(statement: Statement, a: &FiniteRing, b: &FiniteRing, n: usize, mode: Mode) -> Self {
        VerificationReport {
            statement,
            rings: [a.label().to_string(), b.label().to_string()],
            n,
            mode,
            outcome: Outcome::Verified,
            detail: None,
            witness: None,
            maps_checked: 0,
            tuples_checked: 0,
            elapsed_ms: None,
        }
    }

    fn premise_failed(mut self, detail: impl Into<String>, witness: Option<Witness>) -> Self {
        self.outcome = Outcome::PremiseFailed;
        self.detail = Some(detail.into());
        self.witness = witness;
        self
    }

    fn refuted(mut self, detail: impl Into<String>, witness: Witness) -> Self {
        self.outcome = Outcome::Refuted;
        self.detail = Some(format!("implementation bug: {}", detail.into()));
        self.witness = Some(witness);
        self
    }

    /// Report standing in for a sweep that hit a budget.
    pub fn budget_exceeded(statement: Statement, rings: [String; 2], n: usize, mode: Mode, err: &AnalysisError) -> Self {
        VerificationReport {
            statement,
            rings,
            n,
            mode,
            outcome: Outcome::BudgetExceeded,
            detail: Some(err.to_string()),
            witness: None,
            maps_checked: 0,
            tuples_checked: 0,
            elapsed_ms: None,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.outcome == Outcome::Verified
    }

    /// Folds a per-map report into a running aggregate over a map family.
    fn absorb(&mut self, other: VerificationReport) -> bool {
        self.maps_checked += other.maps_checked;
        self.tuples_checked += other.tuples_checked;
        if other.outcome != Outcome::Verified {
            self.outcome = other.outcome;
            self.detail = other.detail;
            self.witness = other.witness;
            return false;
        }
        true
    }
}

/// Tuples in lexicographic order, or `count` seeded uniform draws.
fn for_each_tuple(
    size: usize,
    n: usize,
    mode: Mode,
    mut visit: impl FnMut(&[Elem]) -> bool,
) -> u64 {
    let mut checked = 0;
    match mode {
        Mode::Exhaustive => {
            let mut tuple = vec![0; n];
            loop {
                checked += 1;
                if !visit(&tuple) {
                    return checked;
                }
                let mut i = n;
                loop {
                    if i == 0 {
                        return checked;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < size {
                        break;
                    }
                    tuple[i] = 0;
                }
            }
        }
        Mode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut tuple = vec![0; n];
            for _ in 0..count {
                for slot in tuple.iter_mut() {
                    *slot = rng.gen_range(0..size);
                }
                checked += 1;
                if !visit(&tuple) {
                    break;
                }
            }
            checked
        }
    }
}

fn sweep_cost(size: usize, n: usize, mode: Mode) -> u128 {
    let per_tuple = factorial(n) as u128;
    match mode {
        Mode::Exhaustive => tuple_space(size, n).saturating_mul(per_tuple),
        Mode::Sampled { count, .. } => (count as u128).saturating_mul(per_tuple),
    }
}

/// Checks that `f(x, ..., x) = 0` for all `x`, then that the permutation sum
/// of `f` vanishes on every checked tuple.
pub fn check_lemma21(f: &MultiAdditiveMap, mode: Mode, budgets: &Budgets) -> Result<VerificationReport, AnalysisError> {
    let n = f.arity();
    if !(2..=MAX_SYMMETRIZED_ARITY).contains(&n) {
        return Err(AnalysisError::Degree(n));
    }
    let (a, b) = (f.domain().clone(), f.codomain().clone());
    if let Some(x) = a.elements().find(|&x| f.eval(&vec![x; n]) != 0) {
        return Err(AnalysisError::HypothesisFailed { x });
    }
    charge(sweep_cost(a.size(), n, mode), budgets.tuple)?;
    let perms = permutations(n);
    let mut report = VerificationReport::new(Statement::Lemma21, &a, &b, n, mode);
    let mut bad = None;
    report.tuples_checked = for_each_tuple(a.size(), n, mode, |t| {
        if f.symmetrized(&perms, t) != 0 {
            bad = Some(t.to_vec());
            false
        } else {
            true
        }
    });
    if let Some(t) = bad {
        let witness = Witness::map(f.base()).with_tuple(t);
        return Ok(report.refuted("permutation sum is nonzero", witness));
    }
    report.maps_checked = 1;
    Ok(report)
}

/// Checks that the symmetrized Jordan defect of an n-Jordan `h` vanishes.
pub fn verify_lemma22(h: &AdditiveMap, n: usize, mode: Mode, budgets: &Budgets) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    if n > MAX_SYMMETRIZED_ARITY {
        return Err(AnalysisError::Degree(n));
    }
    let (a, b) = (h.domain(), h.codomain());
    let report = VerificationReport::new(Statement::Lemma22, a, b, n, mode);
    if let Some(x) = n_jordan_witness(h, n) {
        return Ok(report.premise_failed(
            format!("map is not {n}-Jordan"),
            Some(Witness::map(h).with_element(x)),
        ));
    }
    let f = MultiAdditiveMap::Defect { h: h.clone(), n };
    match check_lemma21(&f, mode, budgets) {
        Ok(mut r) => {
            r.statement = Statement::Lemma22;
            Ok(r)
        }
        Err(AnalysisError::HypothesisFailed { x }) => Ok(report.refuted(
            "n-Jordan map has a nonzero diagonal defect",
            Witness::map(h).with_element(x),
        )),
        Err(e) => Err(e),
    }
}

/// `verify_lemma22` over every n-Jordan map `a -> b`.
pub fn verify_lemma22_all(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    n: usize,
    mode: Mode,
    budgets: &Budgets,
) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    let mut report = VerificationReport::new(Statement::Lemma22, a, b, n, mode);
    for h in enumerate_additive_maps(a, b, MapFilter::NJordan(n), budgets.enumeration)? {
        if !report.absorb(verify_lemma22(&h, n, mode, budgets)?) {
            break;
        }
    }
    Ok(report)
}

fn char_premise(b: &FiniteRing, n: usize) -> Option<(String, Witness)> {
    b.char_witness(n).map(|x| {
        (
            format!("char(B) > {n} fails: {n}! * {x} = 0 in {}", b.label()),
            Witness::element(x),
        )
    })
}

/// Over commutative `a`, `b` with `char(b) > n`, every n-Jordan map is an n-homomorphism.
pub fn verify_theorem23(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, n: usize, budgets: &Budgets) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    let report = VerificationReport::new(Statement::Thm23, a, b, n, Mode::Exhaustive);
    if !a.is_commutative() {
        return Ok(report.premise_failed("A non-commutative", None));
    }
    if !b.is_commutative() {
        return Ok(report.premise_failed("B non-commutative", None));
    }
    if let Some((detail, w)) = char_premise(b, n) {
        return Ok(report.premise_failed(detail, Some(w)));
    }
    transfer_check(report, a, b, n, Branch::Hom, budgets)
}

/// Phase shared by the commutative theorem and the corollary: every n-Jordan
/// map must be an n-homomorphism (or anti-n-homomorphism).
fn transfer_check(
    mut report: VerificationReport,
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    n: usize,
    branch: Branch,
    budgets: &Budgets,
) -> Result<VerificationReport, AnalysisError> {
    let per_map = tuple_space(a.size(), n) as u64;
    for h in enumerate_additive_maps(a, b, MapFilter::NJordan(n), budgets.enumeration)? {
        let witness = branch.witness(&h, n, budgets)?;
        report.maps_checked += 1;
        report.tuples_checked += per_map;
        if let Some(t) = witness {
            return Ok(report.refuted(
                format!("{n}-Jordan map is not an {}", branch.target(n)),
                Witness::map(&h).with_tuple(t),
            ));
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// decomposition

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    /// `c = c^n`
    CPower,
    /// `n h(x) = sum_j c^(n-j) h(x) c^(j-1)`
    Eq1,
    /// `h(x) c = c h(x)`, plus `c` commuting with products `h(x) h(y)`
    Eq4Centrality,
    /// `h(x) = c^(n-1) h(x)`
    Eq5,
    /// `h(x^2) = c^(n-2) h(x)^2`
    Eq6,
    /// `tau` additive with `tau(x^2) = tau(x)^2`
    TauJordan,
    /// `h(x) = c tau(x)`
    Factorization,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::CPower,
        CheckName::Eq1,
        CheckName::Eq4Centrality,
        CheckName::Eq5,
        CheckName::Eq6,
        CheckName::TauJordan,
        CheckName::Factorization,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckName::CPower => "c_power",
            CheckName::Eq1 => "eq1",
            CheckName::Eq4Centrality => "eq4_centrality",
            CheckName::Eq5 => "eq5",
            CheckName::Eq6 => "eq6",
            CheckName::TauJordan => "tau_jordan",
            CheckName::Factorization => "factorization",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: CheckName,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Elem>,
}

/// `h = c * tau` with `c = h(e)` and `tau(x) = c^(n-2) h(x)`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub c: Elem,
    pub tau: AdditiveMap,
    pub checks: Vec<Check>,
}

impl Decomposition {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: CheckName) -> &Check {
        self.checks.iter().find(|c| c.name == name).expect("all checks are recorded")
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: CheckName, witness: Option<Elem>) -> Check {
    Check {
        name,
        passed: witness.is_none(),
        witness,
    }
}

/// Factors an n-Jordan map out of a unital ring as `h = h(e) tau`.
///
/// For `n = 2` the power `c^0` is taken as "no factor", so `tau = h` even when
/// the codomain has no unit.
pub fn herstein_decompose(h: &AdditiveMap, n: usize) -> Result<Decomposition, AnalysisError> {
    check_degree(n)?;
    let (a, b) = (h.domain(), h.codomain());
    let e = a.unit().ok_or_else(|| AnalysisError::NoUnit(a.label().to_string()))?;
    if let Some(witness) = b.char_witness(n) {
        return Err(AnalysisError::CharTooSmall {
            ring: b.label().to_string(),
            n,
            witness,
        });
    }
    if let Some(witness) = n_jordan_witness(h, n) {
        return Err(AnalysisError::NotNJordan { n, witness });
    }

    let c = h.evaluate(e);
    let hx = |x: Elem| h.evaluate(x);
    let find = |pred: &dyn Fn(Elem) -> bool| a.elements().find(|&x| !pred(x));

    let c_power = (b.pow(c, n) != c).then_some(e);
    let eq1 = find(&|x| {
        let lhs = b.scalar(n as u64, hx(x));
        let rhs = (1..=n).fold(0, |acc, j| {
            let term = b.right_pow_mul(b.left_pow_mul(c, n - j, hx(x)), c, j - 1);
            b.add(acc, term)
        });
        lhs == rhs
    });
    let eq4 = find(&|x| b.mul(hx(x), c) == b.mul(c, hx(x))).or_else(|| {
        // c commutes with the generated subring too; spot-check products
        a.elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .find(|&(x, y)| {
                let p = b.mul(hx(x), hx(y));
                b.mul(p, c) != b.mul(c, p)
            })
            .map(|(x, _)| x)
    });
    let eq5 = find(&|x| hx(x) == b.left_pow_mul(c, n - 1, hx(x)));
    let eq6 = find(&|x| hx(a.mul(x, x)) == b.left_pow_mul(c, n - 2, b.mul(hx(x), hx(x))));

    let tau_values: Vec<Elem> = a.elements().map(|x| b.left_pow_mul(c, n - 2, hx(x))).collect();
    let (tau, tau_additive) = match map_from_values(a, b, tau_values.clone()) {
        Ok(tau) => (tau, None),
        Err(MapError::NotAdditive { x, .. }) => {
            // h stands in for the non-additive tau; the failure is in the checks
            (h.clone(), Some(x))
        }
        Err(other) => return Err(other.into()),
    };
    let tau_at = |x: Elem| tau_values[x];
    let tau_jordan = tau_additive.or_else(|| find(&|x| tau_at(a.mul(x, x)) == b.mul(tau_at(x), tau_at(x))));
    let factorization = find(&|x| hx(x) == b.mul(c, tau_at(x)));

    Ok(Decomposition {
        c,
        tau,
        checks: vec![
            check(CheckName::CPower, c_power),
            check(CheckName::Eq1, eq1),
            check(CheckName::Eq4Centrality, eq4),
            check(CheckName::Eq5, eq5),
            check(CheckName::Eq6, eq6),
            check(CheckName::TauJordan, tau_jordan),
            check(CheckName::Factorization, factorization),
        ],
    })
}

fn decomposition_report(mut report: VerificationReport, h: &AdditiveMap, n: usize) -> Result<VerificationReport, AnalysisError> {
    let d = herstein_decompose(h, n)?;
    report.maps_checked += 1;
    report.tuples_checked += h.domain().size() as u64;
    Ok(match d.first_failure() {
        Some(failed) => {
            let name = serde_json::to_value(failed.name).expect("check names serialize");
            let mut w = Witness::map(h);
            w.element = failed.witness;
            report.refuted(format!("decomposition check {} failed", name.as_str().unwrap_or("?")), w)
        }
        None => report,
    })
}

fn unit_and_char_premises(report: VerificationReport, a: &FiniteRing, b: &FiniteRing, n: usize) -> Result<VerificationReport, VerificationReport> {
    if a.unit().is_none() {
        return Err(report.premise_failed("A has no unit", None));
    }
    if let Some((detail, w)) = char_premise(b, n) {
        return Err(report.premise_failed(detail, Some(w)));
    }
    Ok(report)
}

/// Decomposes one map and reports whether all seven checks pass.
pub fn verify_theorem24_map(h: &AdditiveMap, n: usize) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    let (a, b) = (h.domain(), h.codomain());
    let report = VerificationReport::new(Statement::Thm24, a, b, n, Mode::Exhaustive);
    let report = match unit_and_char_premises(report, a, b, n) {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    if let Some(x) = n_jordan_witness(h, n) {
        return Ok(report.premise_failed(format!("map is not {n}-Jordan"), Some(Witness::map(h).with_element(x))));
    }
    decomposition_report(report, h, n)
}

/// Decomposes every n-Jordan map `a -> b`.
pub fn verify_theorem24(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, n: usize, budgets: &Budgets) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    let report = VerificationReport::new(Statement::Thm24, a, b, n, Mode::Exhaustive);
    let mut report = match unit_and_char_premises(report, a, b, n) {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    for h in enumerate_additive_maps(a, b, MapFilter::NJordan(n), budgets.enumeration)? {
        report = decomposition_report(report, &h, n)?;
        if !report.is_verified() {
            break;
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// transfer from Jordan maps to n-Jordan maps

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Hom,
    Anti,
}

impl Branch {
    fn witness(self, h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<Option<Vec<Elem>>, AnalysisError> {
        match self {
            Branch::Hom => n_hom_witness(h, n, budgets),
            Branch::Anti => anti_n_hom_witness(h, n, budgets),
        }
    }

    fn target(self, n: usize) -> String {
        match self {
            Branch::Hom => format!("{n}-homomorphism"),
            Branch::Anti => format!("anti-{n}-homomorphism"),
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hom" => Ok(Branch::Hom),
            "anti" => Ok(Branch::Anti),
            other => Err(format!("unknown branch `{other}` (expected hom or anti)")),
        }
    }
}

/// If every Jordan map `a -> b` is a homomorphism (anti-homomorphism), checks
/// that every n-Jordan map is an n-homomorphism (anti-n-homomorphism).
///
/// Phase one establishes the premise over all Jordan maps; if it fails the
/// outcome is `PremiseFailed` with the offending map. Phase two sweeps the
/// n-Jordan maps. Counts in the report cover both phases.
pub fn verify_corollary25(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    n: usize,
    branch: Branch,
    budgets: &Budgets,
) -> Result<VerificationReport, AnalysisError> {
    check_degree(n)?;
    let report = VerificationReport::new(Statement::Cor25, a, b, n, Mode::Exhaustive);
    let mut report = match unit_and_char_premises(report, a, b, n) {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    let per_pair = tuple_space(a.size(), 2) as u64;
    for h in enumerate_additive_maps(a, b, MapFilter::NJordan(2), budgets.enumeration)? {
        let witness = branch.witness(&h, 2, budgets)?;
        report.maps_checked += 1;
        report.tuples_checked += per_pair;
        if let Some(t) = witness {
            return Ok(report.premise_failed(
                format!("Jordan map is not an {}", branch.target(2)),
                Some(Witness::map(&h).with_tuple(t)),
            ));
        }
    }
    transfer_check(report, a, b, n, branch, budgets)
}

// ---------------------------------------------------------------------------
// classification

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub map_key: Vec<Elem>,
    pub n: usize,
    pub is_jordan: bool,
    pub is_n_jordan: bool,
    pub is_n_hom: bool,
    pub is_anti_n_hom: bool,
}

pub fn classify(h: &AdditiveMap, n: usize, budgets: &Budgets) -> Result<ClassificationRecord, AnalysisError> {
    Ok(ClassificationRecord {
        map_key: h.gen_images().to_vec(),
        n,
        is_jordan: is_n_jordan(h, 2),
        is_n_jordan: is_n_jordan(h, n),
        is_n_hom: is_n_hom(h, n, budgets)?,
        is_anti_n_hom: is_anti_n_hom(h, n, budgets)?,
    })
}

/// Runs `f` and stores its wall time on the report.
pub fn timed(f: impl FnOnce() -> Result<VerificationReport, AnalysisError>) -> Result<VerificationReport, AnalysisError> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}
