//! Exact combinatorics of fully Hodge-Newton decomposable triples
//! `(W_a, mu, sigma)` for classical affine Weyl groups.

pub mod conditions;
pub mod error;
pub mod frobenius;
pub mod hn_decomp;
pub mod hn_theory;
pub mod polyhedron;
pub mod rational;
pub mod acceptance;
pub mod adlv_oracle;
pub mod admissible;
pub mod affine_weyl;
pub mod root_datum;
pub mod sigma_conj;

pub use error::{Error, Result};
pub use rational::{Q, QVec};
pub use root_datum::{CartanType, RootDatum};
