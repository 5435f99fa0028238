//! Exact computation in the algebra `U_n` generated by `l_1..l_n`,
//! `r_1..r_n` subject to
//!
//! ```text
//! l_i l_j = l_j l_i,    r_i l_j = l_j r_i + r_i r_j.
//! ```
//!
//! Elements are kept in the normal form `Σ c · l^s · r_{j_1}…r_{j_k}` with
//! exact rational coefficients. On top of the arithmetic the crate offers
//! derivations and endomorphisms given on generators ([`maps`]) and exact
//! linear algebra on homogeneous slices ([`solver`]).

pub mod element;
pub mod error;
pub mod maps;
pub mod product;
pub mod rewrite;
pub mod scalar;
pub mod serial;
pub mod solver;
pub mod word;

pub use element::{Degree, Element, Membership, WeightVector};
pub use error::{Error, Result};
pub use maps::{DerivationData, EndomorphismData, NilpotencyProbe, PolyMap, PureFormalExpression};
pub use product::{commutator, product};
pub use scalar::Scalar;
pub use word::{BasisWord, GenKind, Generator, LMonomial, RWord};
