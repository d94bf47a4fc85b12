//! One-dimensional configuration sums `X^{(p,p')}_{r,s}(L,b)`: the bosonic
//! sum, the two fermionic forms, continued-fraction data, dualities and the
//! Bailey pairs they produce.

mod abf;
mod bosonic;
mod fermionic;
mod structure;

pub use abf::{abf_alpha, abf_bailey_pair};
pub use bosonic::{dual_query, dual_transform, x_bosonic, x_dual, x_dual_01, ConfigSumQuery};
pub use fermionic::{x_fermionic, x_fermionic_01};
pub use structure::{continued_fraction, evaluate_continued_fraction, FractionalStructure, PPPair};
