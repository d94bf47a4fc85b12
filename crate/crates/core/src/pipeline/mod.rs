//! End-to-end identity checks and the report type shared with the CLI.

mod identities;
mod report;
mod suite;

pub use identities::{
    ag_alpha_check, ag_closed_alpha, ag_derived_lhs, ag_derived_pair, ag_multisum, ag_product, andrews_gordon,
    coset_identity, rogers_ramanujan, slater_identity, AgRoute,
};
pub use report::{leading_terms, run_identity, IdentityReport, SeriesMismatch, Sides, LEADING_TERMS};
pub use suite::{default_suite, run_suite, SuiteTask};
