//! Exact combinatorics of parabolically induced modules for reductive groups
//! with Frobenius maps.
//!
//! The crate is split along the two halves of the problem:
//!
//! * Coxeter-side machinery ([`rootsys`], [`weyl`], [`klpoly`], [`charlat`],
//!   [`decomp`]): root data from Cartan matrices, Weyl group enumeration with
//!   Bruhat order, Kazhdan-Lusztig polynomials and canonical-basis
//!   expansions, rational characters, and the decomposition engine that
//!   enumerates composition-factor descriptors of the induced module.
//! * SL2-side machinery ([`sl2lab`], [`fforacle`]): p-adic reflection
//!   combinatorics for costandard modules of SL2 in characteristic p, and an
//!   independent brute-force oracle that redoes everything with explicit
//!   matrices over finite fields.
//!
//! Everything is exact integer or finite-field arithmetic; no floats.
//! The crate is `no_std` (requires `alloc`).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod charlat;
pub mod decomp;
pub mod error;
pub mod fforacle;
pub mod klpoly;
pub mod poly;
pub mod rootsys;
pub mod sl2lab;
pub mod subset;
pub mod weyl;

pub use error::Error;
pub use subset::Subset;

pub type Result<T> = core::result::Result<T, Error>;

/// Size limits for the exhaustive algorithms. Everything here is desk-scale
/// by design; raising the caps trades runtime for reach.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Maximum Cartan matrix rank.
    pub max_rank: usize,
    /// Maximum number of positive roots the closure may produce.
    pub max_positive_roots: usize,
    /// Maximum Weyl group order for enumeration.
    pub max_group_order: usize,
    /// Maximum highest weight m for the SL2 factor combinatorics.
    pub max_sl2_weight: u128,
    /// Maximum dimension of an explicit finite-field module.
    pub max_module_dim: usize,
    /// Maximum degree of the ambient finite field.
    pub max_field_degree: usize,
    /// Maximum finite group order for the induced-function model.
    pub max_function_model_group: u64,
    /// Maximum number of distinct submodules a lattice enumeration may emit.
    pub max_lattice_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_rank: 8,
            max_positive_roots: 240,
            max_group_order: 1152,
            max_sl2_weight: 64,
            max_module_dim: 96,
            max_field_degree: 16,
            max_function_model_group: 10_000,
            max_lattice_size: 100_000,
        }
    }
}
