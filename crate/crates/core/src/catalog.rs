//! Named ring catalogs loaded from JSON.
//!
//! ```json
//! {"A": {"kind": "cyclic", "modulus": 7},
//!  "B": {"kind": "product", "factors": ["A", "A"]},
//!  "M": {"kind": "matrix", "modulus": 3, "dim": 2},
//!  "T": {"kind": "tables", "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]]}}
//! ```
//!
//! Labels may refer to each other in any order; cycles are rejected.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ring::{self, Elem, FiniteRing, RingError, DEFAULT_CARRIER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    Cyclic {
        modulus: usize,
    },
    /// Left-folded direct product of two or more labelled rings.
    Product {
        factors: Vec<String>,
    },
    Matrix {
        modulus: usize,
        dim: usize,
    },
    Tables {
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Elem>,
    },
    /// `Z/mZ` as a group with all products zero.
    ZeroMul {
        modulus: usize,
    },
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown ring label `{0}`")]
    UnknownLabel(String),
    #[error("cyclic reference among ring labels: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("product `{0}` needs at least one factor")]
    EmptyProduct(String),
    #[error("ring `{label}`: {source}")]
    Ring {
        label: String,
        #[source]
        source: RingError,
    },
    #[error("malformed catalog: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("reading catalog: {0}")]
    Io(#[from] std::io::Error),
}

const STANDARD: &str = include_str!("../catalogs/standard.json");

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    descriptors: BTreeMap<String, RingDescriptor>,
    rings: BTreeMap<String, Arc<FiniteRing>>,
}

impl Catalog {
    /// The bundled catalog (`catalogs/standard.json`).
    pub fn standard() -> Self {
        Self::from_json_str(STANDARD, DEFAULT_CARRIER_CAP).expect("bundled catalog is valid")
    }

    pub fn from_path(path: impl AsRef<Path>, cap: usize) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text, cap)
    }

    pub fn from_json_str(text: &str, cap: usize) -> Result<Self, CatalogError> {
        let descriptors: BTreeMap<String, RingDescriptor> = serde_json::from_str(text)?;
        Self::from_descriptors(descriptors, cap)
    }

    pub fn from_descriptors(
        descriptors: BTreeMap<String, RingDescriptor>,
        cap: usize,
    ) -> Result<Self, CatalogError> {
        let mut rings = BTreeMap::new();
        for label in descriptors.keys() {
            let mut stack = Vec::new();
            resolve(label, &descriptors, &mut rings, &mut stack, cap)?;
        }
        Ok(Catalog { descriptors, rings })
    }

    pub fn get(&self, label: &str) -> Result<&Arc<FiniteRing>, CatalogError> {
        self.rings
            .get(label)
            .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.rings.keys().map(String::as_str)
    }

    pub fn rings(&self) -> impl Iterator<Item = &Arc<FiniteRing>> {
        self.rings.values()
    }

    pub fn len(&self) -> usize {
        self.rings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn descriptors(&self) -> &BTreeMap<String, RingDescriptor> {
        &self.descriptors
    }

    /// SHA-256 over the canonical JSON form of the descriptors, hex encoded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(&self.descriptors).expect("descriptors serialize");
        Sha256::digest(&canonical)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Every ordered pair of labels, in label order.
    pub fn all_pairs(&self) -> Vec<(String, String)> {
        let labels: Vec<&str> = self.labels().collect();
        labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| (a.to_string(), b.to_string())))
            .collect()
    }
}

fn resolve(
    label: &str,
    descriptors: &BTreeMap<String, RingDescriptor>,
    rings: &mut BTreeMap<String, Arc<FiniteRing>>,
    stack: &mut Vec<String>,
    cap: usize,
) -> Result<Arc<FiniteRing>, CatalogError> {
    if let Some(r) = rings.get(label) {
        return Ok(r.clone());
    }
    if let Some(pos) = stack.iter().position(|l| l == label) {
        let mut cycle = stack[pos..].to_vec();
        cycle.push(label.to_string());
        return Err(CatalogError::Cycle(cycle));
    }
    let descriptor = descriptors
        .get(label)
        .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))?;
    stack.push(label.to_string());
    let wrap = |source| CatalogError::Ring {
        label: label.to_string(),
        source,
    };
    let built = match descriptor {
        RingDescriptor::Cyclic { modulus } => ring::cyclic_ring(*modulus).map_err(wrap)?,
        RingDescriptor::ZeroMul { modulus } => ring::zero_product_ring(*modulus).map_err(wrap)?,
        RingDescriptor::Matrix { modulus, dim } => {
            ring::matrix_ring_with_cap(*modulus, *dim, cap).map_err(wrap)?
        }
        RingDescriptor::Tables { add, mul, unit } => {
            ring::ring_from_tables(add.len(), add, mul, *unit, label).map_err(wrap)?
        }
        RingDescriptor::Product { factors } => {
            let (first, rest) = factors
                .split_first()
                .ok_or_else(|| CatalogError::EmptyProduct(label.to_string()))?;
            let mut acc = (*resolve(first, descriptors, rings, stack, cap)?).clone();
            for f in rest {
                let factor = resolve(f, descriptors, rings, stack, cap)?;
                let size = acc.size() as u128 * factor.size() as u128;
                if size > cap as u128 {
                    return Err(wrap(RingError::CarrierTooLarge { size, cap }));
                }
                acc = ring::direct_product(&acc, &factor).map_err(wrap)?;
            }
            acc
        }
    };
    if built.size() > cap {
        return Err(wrap(RingError::CarrierTooLarge {
            size: built.size() as u128,
            cap,
        }));
    }
    stack.pop();
    let built = Arc::new(built.with_label(label));
    rings.insert(label.to_string(), built.clone());
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_references_resolve() {
        let cat = Catalog::from_json_str(
            r#"{"B": {"kind":"product","factors":["A","A"]},
                "A": {"kind":"cyclic","modulus":2},
                "M": {"kind":"matrix","modulus":3,"dim":2},
                "T": {"kind":"tables","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]}}"#,
            DEFAULT_CARRIER_CAP,
        )
        .unwrap();
        assert_eq!(cat.get("B").unwrap().size(), 4);
        assert_eq!(cat.get("B").unwrap().label(), "B");
        assert_eq!(cat.get("M").unwrap().size(), 81);
        assert_eq!(cat.get("T").unwrap().unit(), Some(1));
        assert_eq!(cat.labels().collect::<Vec<_>>(), ["A", "B", "M", "T"]);
    }

    #[test]
    fn cycles_are_errors() {
        let err = Catalog::from_json_str(
            r#"{"A": {"kind":"product","factors":["B"]},
                "B": {"kind":"product","factors":["A"]}}"#,
            DEFAULT_CARRIER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, CatalogError::Cycle(ref c) if c == &["A", "B", "A"]));
    }

    #[test]
    fn unknown_factor_and_cap() {
        let err = Catalog::from_json_str(
            r#"{"A": {"kind":"product","factors":["Q"]}}"#,
            DEFAULT_CARRIER_CAP,
        )
        .unwrap_err();
        assert!(matches!(err, CatalogError::UnknownLabel(ref l) if l == "Q"));
        let err = Catalog::from_json_str(r#"{"M": {"kind":"matrix","modulus":3,"dim":2}}"#, 64)
            .unwrap_err();
        assert!(matches!(
            err,
            CatalogError::Ring {
                source: RingError::CarrierTooLarge { size: 81, cap: 64 },
                ..
            }
        ));
    }

    #[test]
    fn hash_is_order_independent() {
        let a = Catalog::from_json_str(
            r#"{"A":{"kind":"cyclic","modulus":3},"B":{"kind":"cyclic","modulus":5}}"#,
            DEFAULT_CARRIER_CAP,
        )
        .unwrap();
        let b = Catalog::from_json_str(
            r#"{"B":{"modulus":5,"kind":"cyclic"},"A":{"kind":"cyclic","modulus":3}}"#,
            DEFAULT_CARRIER_CAP,
        )
        .unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn standard_catalog_loads() {
        let cat = Catalog::standard();
        for label in ["Z5", "Z7", "Z9", "Z11", "Z5xZ7", "Z2xZ2", "M2Z3"] {
            assert!(cat.get(label).is_ok(), "{label}");
        }
        assert!(Catalog::from_json_str("{}", 256).unwrap().is_empty());
    }
}
