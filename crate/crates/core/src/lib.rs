//! Exact finite-ring laboratory for n-Jordan homomorphisms.
//!
//! Small rings are stored as Cayley tables ([`ring`]), additive maps between
//! them are enumerated through an additive basis of the domain ([`maps`]), and
//! [`analysis`] classifies maps and checks the n-Jordan transfer results by
//! exhaustion. [`search`] sweeps whole catalogs and hunts counterexamples
//! outside the hypotheses; [`cli`] is the command-line front end.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod maps;
pub mod ring;
pub mod search;

pub use analysis::{
    check_lemma21, classify, herstein_decompose, is_anti_n_hom, is_n_hom, is_n_jordan, jordan_defect,
    symmetrized_defect, verify_corollary25, verify_lemma22, verify_theorem23, verify_theorem24,
    Branch, Budgets, ClassificationRecord, Decomposition, Mode, MultiAdditiveMap, Outcome, Statement,
    VerificationReport,
};
pub use catalog::{Catalog, RingDescriptor};
pub use maps::{enumerate_additive_maps, map_from_generator_images, AdditiveMap, MapFilter, MapKey};
pub use ring::{cyclic_ring, direct_product, matrix_ring, ring_from_tables, Elem, FiniteRing};
pub use search::{emit_report, find_counterexamples, run_classification, Finding, FindingKind, Profile};
