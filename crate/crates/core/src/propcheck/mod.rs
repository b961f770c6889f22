//! Exhaustive and sampled checking of the law registry over small universes.

mod engine;
mod enumerate;
mod law;

pub use engine::{
    check_law, find_counterexample, EnumerationBudget, LawReport, RelationMode, Verdict, Witness,
    DEFAULT_CASE_CAP, MAX_CODOMAIN, MAX_DOMAIN,
};
pub use enumerate::{
    canonical_codomain, canonical_domain, enumerate_mappings, enumerate_relations, mapping_count,
    mapping_from_index, mapping_index, relation_count, relations_on,
};
pub use law::{evaluate, Expectation, Instance, LawId, Outcome, Shape};
