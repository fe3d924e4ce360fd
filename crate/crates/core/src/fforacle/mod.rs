//! Brute-force verification layer: explicit finite fields, SL2 costandard
//! and induced modules as matrices, the spinning closure, and direct checks
//! of the finite identities the rest of the crate relies on.
//!
//! Nothing here consults the p-adic combinatorics of [`crate::sl2lab`]
//! beyond the chain certificate it is asked to confirm; agreement between
//! the two routes is the point of the module.

mod checks;
mod field;
mod linalg;
mod module;

pub use checks::{
    solve_sus, verify_chain, verify_exact_sequence, verify_extend, verify_power_sum,
    verify_power_sum_range, ChainWitness, ExactSequenceReport, PowerSumCheck, SusTriple,
};
pub use field::{AmbientField, El};
pub use linalg::{unit_vector, Matrix, SubspaceBasis};
pub use module::{
    brute_factors, make_h0, make_h0_with_caps, spin, spin_analysis, spin_analysis_at_degree,
    spin_under, verify_restriction_proxy, verify_coordinate_splitness, FqModule, SpinAnalysis,
};
