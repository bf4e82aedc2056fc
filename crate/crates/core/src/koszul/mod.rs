//! Minimal models of quadratic algebras: the general `J_n` construction,
//! the polynomial-ring model, the cyclic McKay model, and vertex deletion.

mod jn;
mod mckay;
mod model;
pub mod subsets;

pub use jn::{compute_jn, compute_jn_by_endpoints};
pub use mckay::{HypothesisWarning, McKayData, HYPOTHESIS_TAG};
pub use model::{
    delete_vertex, generator_table, mckay_arrow_id, mckay_model, minimal_model_general, polynomial_model,
    MinimalModel, ModelFile, Provenance,
};
