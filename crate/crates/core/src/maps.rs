//! Additive maps between finite rings.
//!
//! A map is determined by the images of the domain's basis generators; those
//! images are its canonical key for equality, ordering and serialization.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::ring::{Elem, FiniteRing};

/// Default cap on raw generator assignments visited by an enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("expected {expected} generator images, got {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("element {value} is outside the codomain (size {size})")]
    ElementOutOfRange { value: Elem, size: usize },
    #[error("image {image} of generator {index} has order {image_order}, which does not divide {generator_order}")]
    OrderIncompatible {
        index: usize,
        image: Elem,
        image_order: usize,
        generator_order: usize,
    },
    #[error("value table is not additive at ({x}, {y})")]
    NotAdditive { x: Elem, y: Elem },
    #[error("value table has {found} entries, domain has {expected}")]
    ValueCount { expected: usize, found: usize },
    #[error("enumeration needs {estimated} assignments, budget is {budget}")]
    BudgetExceeded { estimated: u128, budget: u64 },
}

#[derive(Clone)]
pub struct AdditiveMap {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    gen_images: Vec<Elem>,
    values: Vec<Elem>,
}

impl AdditiveMap {
    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn gen_images(&self) -> &[Elem] {
        &self.gen_images
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn evaluate(&self, x: Elem) -> Elem {
        self.values[x]
    }

    pub fn key(&self) -> MapKey {
        MapKey {
            domain: self.domain.label().to_string(),
            codomain: self.codomain.label().to_string(),
            gen_images: self.gen_images.clone(),
        }
    }

    pub fn zero(domain: &Arc<FiniteRing>, codomain: &Arc<FiniteRing>) -> Self {
        AdditiveMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            gen_images: vec![0; domain.basis().len()],
            values: vec![0; domain.size()],
        }
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Self {
        AdditiveMap {
            domain: ring.clone(),
            codomain: ring.clone(),
            gen_images: ring.basis().generators().to_vec(),
            values: ring.elements().collect(),
        }
    }

    /// First pair `(x, y)` with `h(x + y) != h(x) + h(y)`.
    pub fn additivity_witness(&self) -> Option<(Elem, Elem)> {
        additivity_witness(&self.domain, &self.codomain, &self.values)
    }
}

impl fmt::Debug for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveMap")
            .field("domain", &self.domain.label())
            .field("codomain", &self.codomain.label())
            .field("gen_images", &self.gen_images)
            .finish()
    }
}

impl PartialEq for AdditiveMap {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AdditiveMap {}

impl PartialOrd for AdditiveMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdditiveMap {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.domain.label(), self.codomain.label(), &self.gen_images).cmp(&(
            other.domain.label(),
            other.codomain.label(),
            &other.gen_images,
        ))
    }
}

impl Hash for AdditiveMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.domain.label().hash(state);
        self.codomain.label().hash(state);
        self.gen_images.hash(state);
    }
}

/// Serialized identity of a map: `{"domain", "codomain", "gen_images"}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MapKey {
    pub domain: String,
    pub codomain: String,
    pub gen_images: Vec<Elem>,
}

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Map(#[from] MapError),
}

impl MapKey {
    pub fn resolve(&self, catalog: &Catalog) -> Result<AdditiveMap, ResolveError> {
        let a = catalog.get(&self.domain)?;
        let b = catalog.get(&self.codomain)?;
        Ok(map_from_generator_images(a, b, &self.gen_images)?)
    }
}

fn additivity_witness(a: &FiniteRing, b: &FiniteRing, values: &[Elem]) -> Option<(Elem, Elem)> {
    a.elements()
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .find(|&(x, y)| values[a.add(x, y)] != b.add(values[x], values[y]))
}

/// The additive map sending the `i`-th basis generator of `a` to `images[i]`.
pub fn map_from_generator_images(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    images: &[Elem],
) -> Result<AdditiveMap, MapError> {
    let basis = a.basis();
    if images.len() != basis.len() {
        return Err(MapError::GeneratorCount {
            expected: basis.len(),
            found: images.len(),
        });
    }
    for (index, (&image, &generator_order)) in images.iter().zip(basis.orders()).enumerate() {
        if image >= b.size() {
            return Err(MapError::ElementOutOfRange {
                value: image,
                size: b.size(),
            });
        }
        let image_order = b.additive_order(image);
        if generator_order % image_order != 0 {
            return Err(MapError::OrderIncompatible {
                index,
                image,
                image_order,
                generator_order,
            });
        }
    }
    let values: Vec<Elem> = a
        .elements()
        .map(|x| {
            basis
                .coordinates(x)
                .iter()
                .zip(images)
                .fold(0, |acc, (&c, &img)| b.add(acc, b.scalar(c as u64, img)))
        })
        .collect();
    if let Some((x, y)) = additivity_witness(a, b, &values) {
        return Err(MapError::NotAdditive { x, y });
    }
    Ok(AdditiveMap {
        domain: a.clone(),
        codomain: b.clone(),
        gen_images: images.to_vec(),
        values,
    })
}

/// Wraps a full value table, checking additivity.
pub fn map_from_values(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    values: Vec<Elem>,
) -> Result<AdditiveMap, MapError> {
    if values.len() != a.size() {
        return Err(MapError::ValueCount {
            expected: a.size(),
            found: values.len(),
        });
    }
    if let Some(&value) = values.iter().find(|&&v| v >= b.size()) {
        return Err(MapError::ElementOutOfRange {
            value,
            size: b.size(),
        });
    }
    if let Some((x, y)) = additivity_witness(a, b, &values) {
        return Err(MapError::NotAdditive { x, y });
    }
    let gen_images = a.basis().generators().iter().map(|&g| values[g]).collect();
    Ok(AdditiveMap {
        domain: a.clone(),
        codomain: b.clone(),
        gen_images,
        values,
    })
}

/// Which maps an enumeration yields.
#[derive(Clone, Copy)]
pub enum MapFilter<'a> {
    All,
    /// Only `n`-Jordan maps; partial assignments are pruned as soon as some
    /// `x` with `x` and `x^n` in the assigned span has `h(x^n) != h(x)^n`.
    NJordan(usize),
    Predicate(&'a (dyn Fn(&AdditiveMap) -> bool + Sync)),
}

impl fmt::Debug for MapFilter<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapFilter::All => f.write_str("All"),
            MapFilter::NJordan(n) => write!(f, "NJordan({n})"),
            MapFilter::Predicate(_) => f.write_str("Predicate(..)"),
        }
    }
}

/// Candidate images for each generator: elements of `b` whose order divides the generator's.
fn candidates(a: &FiniteRing, b: &FiniteRing) -> Vec<Vec<Elem>> {
    a.basis()
        .orders()
        .iter()
        .map(|&d| b.elements().filter(|&y| d % b.additive_order(y) == 0).collect())
        .collect()
}

/// Number of additive maps `a -> b` (the raw assignment count of an unfiltered enumeration).
pub fn count_additive_maps(a: &FiniteRing, b: &FiniteRing) -> u128 {
    candidates(a, b)
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
}

struct Level {
    candidates: Vec<Elem>,
    /// `(x, x - c*g, c)` for every `x` whose highest nonzero coordinate is this level.
    fill: Vec<(Elem, Elem, u64)>,
    /// `(x, x^n)` pairs first decidable at this level.
    checks: Vec<(Elem, Elem)>,
}

struct Plan<'a> {
    a: &'a Arc<FiniteRing>,
    b: &'a Arc<FiniteRing>,
    levels: Vec<Level>,
    degree: Option<usize>,
    predicate: Option<&'a (dyn Fn(&AdditiveMap) -> bool + Sync)>,
    budget: u64,
    visited: AtomicU64,
}

impl<'a> Plan<'a> {
    fn new(
        a: &'a Arc<FiniteRing>,
        b: &'a Arc<FiniteRing>,
        filter: MapFilter<'a>,
        budget: u64,
    ) -> Self {
        let basis = a.basis();
        let k = basis.len();
        let level_of = |x: Elem| {
            basis
                .coordinates(x)
                .iter()
                .rposition(|&c| c != 0)
                .map_or(0, |i| i + 1)
        };
        let (degree, predicate) = match filter {
            MapFilter::All => (None, None),
            MapFilter::NJordan(n) => (Some(n), None),
            MapFilter::Predicate(p) => (None, Some(p)),
        };
        let mut levels: Vec<Level> = candidates(a, b)
            .into_iter()
            .map(|candidates| Level {
                candidates,
                fill: Vec::new(),
                checks: Vec::new(),
            })
            .collect();
        for x in a.elements() {
            let l = level_of(x);
            if l > 0 {
                let i = l - 1;
                let c = basis.coordinates(x)[i];
                let pred = a.sub(x, a.scalar(c as u64, basis.generators()[i]));
                levels[i].fill.push((x, pred, c as u64));
            }
            if let Some(n) = degree {
                let xn = a.pow(x, n);
                let l = l.max(level_of(xn));
                // level 0 is x = x^n = 0, trivially fine
                if l > 0 {
                    levels[l - 1].checks.push((x, xn));
                }
            }
        }
        debug_assert_eq!(levels.len(), k);
        Plan {
            a,
            b,
            levels,
            degree,
            predicate,
            budget,
            visited: AtomicU64::new(0),
        }
    }

    fn search(&self, depth: usize, images: &mut Vec<Elem>, values: &mut [Elem], out: &mut Vec<AdditiveMap>) -> Result<(), MapError> {
        if depth == self.levels.len() {
            let map = AdditiveMap {
                domain: self.a.clone(),
                codomain: self.b.clone(),
                gen_images: images.clone(),
                values: values.to_vec(),
            };
            if self.predicate.is_none_or(|p| p(&map)) {
                out.push(map);
            }
            return Ok(());
        }
        let level = &self.levels[depth];
        for &img in &level.candidates {
            self.step(depth, img, images, values, out)?;
        }
        Ok(())
    }

    fn step(&self, depth: usize, img: Elem, images: &mut Vec<Elem>, values: &mut [Elem], out: &mut Vec<AdditiveMap>) -> Result<(), MapError> {
        let visited = self.visited.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if visited > self.budget {
            return Err(MapError::BudgetExceeded {
                estimated: count_additive_maps(self.a, self.b),
                budget: self.budget,
            });
        }
        let b = self.b;
        let level = &self.levels[depth];
        for &(x, pred, c) in &level.fill {
            values[x] = b.add(values[pred], b.scalar(c, img));
        }
        if let Some(n) = self.degree {
            if level.checks.iter().any(|&(x, xn)| values[xn] != b.pow(values[x], n)) {
                return Ok(());
            }
        }
        images.push(img);
        let result = self.search(depth + 1, images, values, out);
        images.pop();
        result
    }
}

/// Every additive map `a -> b` passing `filter`, ordered lexicographically by
/// generator images.
///
/// Without pruning (`All`, `Predicate`) the raw assignment count must fit in
/// `budget` up front. With `NJordan` the count of visited partial assignments
/// is charged against `budget` instead. The first generator's candidates are
/// searched in parallel; output order does not depend on the thread count.
pub fn enumerate_additive_maps(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    filter: MapFilter<'_>,
    budget: u64,
) -> Result<Vec<AdditiveMap>, MapError> {
    if !matches!(filter, MapFilter::NJordan(_)) {
        let estimated = count_additive_maps(a, b);
        if estimated > budget as u128 {
            return Err(MapError::BudgetExceeded { estimated, budget });
        }
    }
    let plan = Plan::new(a, b, filter, budget);
    let mut values = vec![0; a.size()];
    if plan.levels.is_empty() {
        let mut out = Vec::new();
        plan.search(0, &mut Vec::new(), &mut values, &mut out)?;
        return Ok(out);
    }
    let chunks: Vec<Vec<AdditiveMap>> = plan.levels[0]
        .candidates
        .par_iter()
        .map(|&img| {
            let mut values = vec![0; a.size()];
            let mut images = Vec::with_capacity(plan.levels.len());
            let mut out = Vec::new();
            plan.step(0, img, &mut images, &mut values, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_, MapError>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{cyclic_ring, direct_product};

    fn z(m: usize) -> Arc<FiniteRing> {
        Arc::new(cyclic_ring(m).unwrap())
    }

    #[test]
    fn scaling_map_on_z7() {
        let z7 = z(7);
        let h = map_from_generator_images(&z7, &z7, &[3]).unwrap();
        assert_eq!(h.evaluate(5), 1);
        assert_eq!(h.evaluate(0), 0);
        assert!(h.values().iter().enumerate().all(|(x, &v)| v == 3 * x % 7));
    }

    #[test]
    fn order_compatibility() {
        let (z4, z6) = (z(4), z(6));
        assert_eq!(
            map_from_generator_images(&z4, &z6, &[1]).unwrap_err(),
            MapError::OrderIncompatible {
                index: 0,
                image: 1,
                image_order: 6,
                generator_order: 4
            }
        );
        let h = map_from_generator_images(&z4, &z6, &[3]).unwrap();
        assert_eq!(h.values(), &[0, 3, 0, 3]);
        assert!(matches!(
            map_from_generator_images(&z4, &z6, &[3, 0]),
            Err(MapError::GeneratorCount { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let z7 = z(7);
        let maps = enumerate_additive_maps(&z7, &z7, MapFilter::All, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(maps.len(), 7);
        assert!(maps.windows(2).all(|w| w[0] < w[1]));
        let maps = enumerate_additive_maps(&z(4), &z(6), MapFilter::All, DEFAULT_ENUM_BUDGET).unwrap();
        let keys: Vec<_> = maps.iter().map(|h| h.gen_images().to_vec()).collect();
        assert_eq!(keys, vec![vec![0], vec![3]]);
        let z2 = cyclic_ring(2).unwrap();
        let v = Arc::new(direct_product(&z2, &z2).unwrap());
        assert_eq!(
            enumerate_additive_maps(&v, &v, MapFilter::All, DEFAULT_ENUM_BUDGET)
                .unwrap()
                .len(),
            16
        );
    }

    #[test]
    fn zero_ring_domain_has_one_map() {
        let z1 = z(1);
        let maps = enumerate_additive_maps(&z1, &z(5), MapFilter::All, 10).unwrap();
        assert_eq!(maps.len(), 1);
        assert!(maps[0].gen_images().is_empty());
    }

    #[test]
    fn budget_is_checked_before_enumerating() {
        let z7 = z(7);
        assert_eq!(
            enumerate_additive_maps(&z7, &z7, MapFilter::All, 6).unwrap_err(),
            MapError::BudgetExceeded {
                estimated: 7,
                budget: 6
            }
        );
    }

    #[test]
    fn jordan_filter_matches_post_filter() {
        let z7 = z(7);
        let maps = enumerate_additive_maps(&z7, &z7, MapFilter::NJordan(3), DEFAULT_ENUM_BUDGET).unwrap();
        let keys: Vec<_> = maps.iter().map(|h| h.gen_images()[0]).collect();
        assert_eq!(keys, vec![0, 1, 6]);
    }

    #[test]
    fn predicate_filter() {
        let z7 = z(7);
        let odd = |h: &AdditiveMap| h.evaluate(1) % 2 == 1;
        let maps = enumerate_additive_maps(&z7, &z7, MapFilter::Predicate(&odd), 100).unwrap();
        assert_eq!(maps.len(), 3);
    }

    #[test]
    fn from_values_checks_additivity() {
        let z4 = z(4);
        assert!(matches!(
            map_from_values(&z4, &z4, vec![0, 1, 1, 0]),
            Err(MapError::NotAdditive { .. })
        ));
        let h = map_from_values(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        assert_eq!(h.gen_images(), &[2]);
    }

    #[test]
    fn key_roundtrip_through_catalog() {
        let catalog = Catalog::standard();
        let v = catalog.get("Z2xZ2").unwrap();
        let h = map_from_generator_images(v, v, &[2, 2]).unwrap();
        let json = serde_json::to_string(&h.key()).unwrap();
        assert_eq!(json, r#"{"domain":"Z2xZ2","codomain":"Z2xZ2","gen_images":[2,2]}"#);
        let back: MapKey = serde_json::from_str(&json).unwrap();
        assert_eq!(back.resolve(&catalog).unwrap().values(), h.values());
    }
}
