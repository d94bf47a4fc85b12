//! Exact q-series engine: Bailey pairs and conjugate pairs, the Bailey chain
//! and lattice, configuration sums in bosonic and fermionic form, string
//! functions, and end-to-end verification of Rogers-Ramanujan type identities.

pub mod bailey;
pub mod catalog;
pub mod configsum;
pub mod error;
pub mod pipeline;
pub mod qcore;
pub mod stringfn;

pub use error::{QError, Result};
pub use qcore::{HalfExp, QPolynomial, QSeries, SignedPower};
