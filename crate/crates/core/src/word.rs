//! Basis words `l_1^{s_1}…l_n^{s_n} · r_{j_1}…r_{j_s}` and their orders.
//!
//! Generator indices are 1-based everywhere in the public API, matching the
//! usual notation `l_1, …, l_n, r_1, …, r_n`. Exponent vectors are stored
//! positionally (slot 0 holds the exponent of `l_1`).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Which index dominates the lexicographic tie-break of [`pdeg_compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexConvention {
    /// `(2,0) > (1,1)`: the exponent of `l_1` is compared first.
    FirstIndexMostSignificant,
    /// `(0,2) > (1,1)`: the exponent of `l_n` is compared first.
    LastIndexMostSignificant,
}

#[cfg(not(feature = "lex-last-significant"))]
pub const LEX_CONVENTION: LexConvention = LexConvention::FirstIndexMostSignificant;
#[cfg(feature = "lex-last-significant")]
pub const LEX_CONVENTION: LexConvention = LexConvention::LastIndexMostSignificant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    L,
    R,
}

/// A single generator `l_i` or `r_i` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub fn l(index: usize) -> Self {
        Self {
            kind: GenKind::L,
            index,
        }
    }

    pub fn r(index: usize) -> Self {
        Self {
            kind: GenKind::R,
            index,
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.index == 0 || self.index > n {
            Err(Error::IndexOutOfRange {
                index: self.index,
                n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::L => write!(f, "l{}", self.index),
            GenKind::R => write!(f, "r{}", self.index),
        }
    }
}

/// A monomial `l_1^{s_1}…l_n^{s_n}` of the polynomial subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LMonomial(Vec<u32>);

impl LMonomial {
    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    /// `l_index` as a monomial.
    pub fn var(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index - 1] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index - 1]
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divides by `l_index` once, if possible.
    pub fn div_var(&self, index: usize) -> Option<Self> {
        let e = self.0[index - 1];
        (e > 0).then(|| {
            let mut v = self.0.clone();
            v[index - 1] = e - 1;
            Self(v)
        })
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Generators of the canonical factorization (indices nondecreasing).
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize))
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "l{}", i + 1)?;
            } else {
                write!(f, "l{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Total degree first, then lexicographic on the exponent vectors.
///
/// Panics if the lengths differ; use [`try_pdeg_compare`] on untrusted input.
pub fn pdeg_compare(u: &LMonomial, v: &LMonomial) -> Ordering {
    try_pdeg_compare(u, v).expect("monomials of different ambient dimension")
}

pub fn try_pdeg_compare(u: &LMonomial, v: &LMonomial) -> Result<Ordering> {
    if u.0.len() != v.0.len() {
        return Err(Error::LengthMismatch {
            expected: u.0.len(),
            got: v.0.len(),
        });
    }
    let by_degree = u.degree().cmp(&v.degree());
    Ok(by_degree.then_with(|| match LEX_CONVENTION {
        LexConvention::FirstIndexMostSignificant => u.0.cmp(&v.0),
        LexConvention::LastIndexMostSignificant => u.0.iter().rev().cmp(v.0.iter().rev()),
    }))
}

impl Ord for LMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        pdeg_compare(self, other)
    }
}

impl PartialOrd for LMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word `r_{j_1}…r_{j_s}` of the free subalgebra; letters are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RWord(Vec<u32>);

impl RWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Self(letters)
    }

    pub fn letter(j: usize) -> Self {
        Self(vec![j as u32])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.0.iter().map(|&j| w[j as usize - 1]).sum()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn push(&mut self, j: u32) {
        self.0.push(j);
    }
}

impl fmt::Display for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "r{j}")?;
        }
        Ok(())
    }
}

/// Deg-lex with `r_1 > r_2 > … > r_n`: shorter words are smaller; words of
/// equal length compare letterwise, where a smaller index is a larger letter.
pub fn rword_compare(v1: &RWord, v2: &RWord) -> Ordering {
    v1.0.len().cmp(&v2.0.len()).then_with(|| {
        v1.0.iter()
            .zip(&v2.0)
            .map(|(a, b)| b.cmp(a))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

impl Ord for RWord {
    fn cmp(&self, other: &Self) -> Ordering {
        rword_compare(self, other)
    }
}

impl PartialOrd for RWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A PBW basis element `u·v` with `u` an L-monomial and `v` an R-word.
///
/// Ordered by the L-part first (pdeg order), ties broken by the R-part
/// (deg-lex); canonical element order is the descending one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    pub lpart: LMonomial,
    pub rpart: RWord,
}

impl BasisWord {
    pub fn new(lpart: LMonomial, rpart: RWord) -> Self {
        Self { lpart, rpart }
    }

    pub fn one(n: usize) -> Self {
        Self::new(LMonomial::one(n), RWord::empty())
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        match g.kind {
            GenKind::L => Self::new(LMonomial::var(n, g.index), RWord::empty()),
            GenKind::R => Self::new(LMonomial::one(n), RWord::letter(g.index)),
        }
    }

    pub fn ambient(&self) -> usize {
        self.lpart.ambient()
    }

    pub fn degree(&self) -> u64 {
        self.lpart.degree() + self.rpart.len() as u64
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.lpart.weighted_degree(w) + self.rpart.weighted_degree(w)
    }

    pub fn is_one(&self) -> bool {
        self.lpart.is_one() && self.rpart.is_empty()
    }

    /// The canonical factorization into generators: l-letters in
    /// nondecreasing index order, then the r-letters.
    pub fn factors(&self) -> Vec<Generator> {
        self.lpart
            .letters()
            .map(Generator::l)
            .chain(self.rpart.letters().iter().map(|&j| Generator::r(j as usize)))
            .collect()
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        if self.lpart.ambient() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.lpart.ambient(),
            });
        }
        for &j in self.rpart.letters() {
            Generator::r(j as usize).check(n)?;
        }
        Ok(())
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lpart.is_one(), self.rpart.is_empty()) {
            (true, true) => f.write_str("1"),
            (false, true) => write!(f, "{}", self.lpart),
            (true, false) => write!(f, "{}", self.rpart),
            (false, false) => write!(f, "{}*{}", self.lpart, self.rpart),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> LMonomial {
        LMonomial::from_exponents(e.to_vec())
    }

    fn w(l: &[u32]) -> RWord {
        RWord::from_letters(l.to_vec())
    }

    #[test]
    #[cfg(not(feature = "lex-last-significant"))]
    fn pdeg_ties_on_first_index() {
        assert_eq!(pdeg_compare(&m(&[1, 1]), &m(&[2, 0])), Ordering::Less);
    }

    #[test]
    #[cfg(feature = "lex-last-significant")]
    fn pdeg_ties_on_last_index() {
        assert_eq!(pdeg_compare(&m(&[1, 1]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn pdeg_degree_first() {
        assert_eq!(pdeg_compare(&m(&[1, 0]), &m(&[0, 2])), Ordering::Less);
        assert_eq!(pdeg_compare(&m(&[1, 2]), &m(&[1, 2])), Ordering::Equal);
        assert!(try_pdeg_compare(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn rword_order() {
        assert_eq!(rword_compare(&w(&[1]), &w(&[2, 2])), Ordering::Less);
        assert_eq!(rword_compare(&w(&[2, 1]), &w(&[1, 2])), Ordering::Less);
        assert_eq!(rword_compare(&w(&[2, 1]), &w(&[2, 1])), Ordering::Equal);
        assert_eq!(rword_compare(&w(&[]), &w(&[3])), Ordering::Less);
    }

    #[test]
    fn factorization_is_sorted() {
        let b = BasisWord::new(m(&[2, 0, 1]), w(&[3, 1]));
        let f: Vec<String> = b.factors().iter().map(|g| g.to_string()).collect();
        assert_eq!(f, ["l1", "l1", "l3", "r3", "r1"]);
        assert_eq!(b.degree(), 5);
        assert_eq!(b.to_string(), "l1^2*l3*r3*r1");
    }
}
