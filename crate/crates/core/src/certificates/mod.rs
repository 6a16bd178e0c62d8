//! Certified lower bounds on exponential growth: free-semigroup witnesses,
//! the `H_{v,w}` stabilization check and the uniform rate bound for
//! nilpotent-by-abelian quotients.

mod bound;
mod crosscheck;
mod hvw;
mod witness;

pub use bound::{rate_bound, RateBound};
pub use crosscheck::{crosscheck_metabelian, CrosscheckReport, CrosscheckStatus};
pub use hvw::{
    hvw_stabilization, hvw_stabilization_with, lamp_span_contains, CheckMode, StabilizationReport,
    StabilizationStatus, DEFAULT_CLOSURE_BUDGET,
};
pub use witness::{
    reduced_words, t_alpha, verify_witness, verify_witness_with_budget, witness_search, WitnessCertificate,
    DEFAULT_WITNESS_BUDGET, OMEGA_LOWER_LABEL,
};
