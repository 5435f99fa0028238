//! Derivations and endomorphisms of `U_n` given by their values on the
//! generators.
//!
//! Generator data only defines a map of `U_n` when it respects the defining
//! relations. Each map type therefore carries a `verified` flag that is set
//! by checking the relations and is required before the map can be applied.

mod derivation;
mod endomorphism;
mod polymap;

use std::fmt;

pub use derivation::{DerivationData, NilpotencyProbe, PureFormalExpression, RDerivation};
pub use endomorphism::{check_inverse_pair, u1_closed_form, EndomorphismData};
pub use polymap::PolyMap;

use crate::element::Element;

/// One instance of a defining relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `l_i l_j = l_j l_i` for `i < j`.
    Commute { i: usize, j: usize },
    /// `r_i l_j = l_j r_i + r_i r_j`.
    Mixed { i: usize, j: usize },
}

impl Relation {
    /// Every relation instance of `U_n`, commuting ones first.
    pub fn all(n: usize) -> Vec<Relation> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Relation::Commute { i, j });
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                out.push(Relation::Mixed { i, j });
            }
        }
        out
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relation::Commute { i, j } => write!(f, "l{i}*l{j} = l{j}*l{i}"),
            Relation::Mixed { i, j } => write!(f, "r{i}*l{j} = l{j}*r{i} + r{i}*r{j}"),
        }
    }
}

/// A relation whose image under a map does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub residual: Element,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: residual {}", self.relation, self.residual)
    }
}

pub(crate) fn describe(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
