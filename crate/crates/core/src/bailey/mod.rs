//! Bailey pairs and conjugate pairs, their verification, the inverse
//! transform, the Bailey chain and the two lattice steps.

mod pair;
mod rho;
pub mod tail;
mod transform;
mod verify;

pub use pair::{BaileyPair, ConjugatePair, PolyFn, SeriesFn, TailPolicy, TermGen};
pub use rho::{ChainKernel, RhoSpec};
pub use transform::{
    chain_iterate, chain_step, conjugate_saalschutz, forward_transform, initial_alpha, initial_pair,
    inverse_transform, lattice_step_i, lattice_step_ii,
};
pub use verify::{
    bilinear_identity, conjugate_relation_sum, pair_relation_sum, verify_bailey_pair, verify_conjugate_pair,
    BilinearSides, Mismatch, Status, VerificationReport,
};
