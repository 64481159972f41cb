//! Exact normal ordering in the boson Weyl algebra and the degenerate
//! (r-)Stirling numbers that appear as its coefficients.
//!
//! Everything here is exact: scalars are big rationals, the degeneracy
//! parameter `λ` stays symbolic, and every identity check is an equality of
//! canonical forms. The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bases;
pub mod identities;
pub mod poly;
pub mod realize;
pub mod stirling;
pub mod weyl;

pub use bases::Basis;
pub use identities::{IdentityId, Ranges, Tables, VerificationReport};

pub use poly::{Monomial, Poly, Rational, Var};
pub use realize::RealizedOperator;
pub use stirling::{Family, Kind, StirlingTable};
pub use weyl::{Letter, NormalForm, OperatorWord};
