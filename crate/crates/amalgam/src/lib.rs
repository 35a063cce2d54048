//! Certificates that subgroups `A₁, …, Aₙ` of a group acting on a hierarchical
//! space generate their amalgamated product over a common subgroup `C`.
//!
//! The hypotheses are measured on sampled factor elements
//! ([`check_hypotheses`]). A reduced word `g₁⋯g_k·c` yields a chain of cosets
//! `Cᵢ` and pairwise transverse domains `Wᵢ` ([`build_chain`]), and
//! [`verify_chain`] measures every inequality of the nontriviality argument
//! against its exact bound. [`verify_injectivity`] cross-checks the result
//! against normal forms in the abstract amalgam.

pub mod chain;
pub mod data;
pub mod error;
pub mod hypotheses;
pub mod normal;

pub use chain::{
    build_chain, verify_chain, verify_transverse_row, Chain, ChainCertificate, ChainStatus, Claim, Comparison,
    Measurement, RowOutcome,
};
pub use data::{AmalgamData, Factor, FactorSyllable, WindowFn, WitnessFn};
pub use error::{AmalgamError, Result};
pub use hypotheses::{check_hypotheses, measure_element, sample_factor, ElementMeasure, HypothesisReport, PairMeasure};
pub use normal::{
    abstract_normal_form, certify_nontrivial, verify_injectivity, InjectivityReport, InjectivityStatus, NormalForm,
    Nontriviality, WordFailure,
};
