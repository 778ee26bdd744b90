#![forbid(unsafe_code)]

//! A toolkit for finite p-groups at odd primes, built on fully enumerated
//! permutation representations.
//!
//! The crate computes the Thompson subgroup J(S) (generated by the
//! elementary abelian subgroups of maximal rank), the Oliver subgroup 𝔛(S)
//! together with an explicit chain certificate, and the intermediate
//! subgroup 𝔛₁(S) with 𝔛₁(S)/𝔛(S) = Z(S/𝔛(S)). A harness runs a battery of
//! structural checks — containments, biconditionals and index constraints
//! relating J, 𝔛 and 𝔛₁ — over a built-in corpus of odd p-groups, with
//! independent brute-force oracles guarding the fast algorithms.
//!
//! Start with [`corpus::default_corpus`] and [`charsub::oliver_x`]; the
//! `examples/` directory has one runnable program per capability.

pub mod charsub;
pub mod cli;
pub mod config;
pub mod corpus;
pub mod dsl;
pub mod elemset;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod harness;
pub mod oracle;
pub mod perm;
pub mod subgroup;

pub use charsub::{ChainCertificate, ElemAbelianFamily};
pub use config::Caps;
pub use error::{Error, Result};
pub use group::Group;
pub use perm::Perm;
pub use subgroup::Subgroup;
