//! Elements of `U_n` as canonical sparse linear combinations of basis words.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::word::{BasisWord, GenKind, Generator, LMonomial, RWord};

/// A finite linear combination of basis words with nonzero exact
/// coefficients. Two elements are equal iff their term maps are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    n: usize,
    // ascending under the basis-word order; canonical order is the reverse
    terms: BTreeMap<BasisWord, Scalar>,
}

/// Weights `w_1..w_n` giving `wdeg(l_i) = wdeg(r_i) = w_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        Self(weights)
    }

    pub fn standard(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, index: usize) -> i64 {
        self.0[index - 1]
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                got: self.0.len(),
            })
        }
    }
}

/// A weighted degree; the zero element has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_l: bool,
    pub in_r: bool,
    pub in_i: bool,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::term(n, BasisWord::one(n), c)
    }

    /// `l_index` or `r_index`, 1-based.
    pub fn generator(n: usize, kind: GenKind, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        let g = Generator { kind, index };
        g.check(n)?;
        Ok(Self::term(n, BasisWord::generator(n, g), scalar::one()))
    }

    pub fn l(n: usize, index: usize) -> Result<Self> {
        Self::generator(n, GenKind::L, index)
    }

    pub fn r(n: usize, index: usize) -> Result<Self> {
        Self::generator(n, GenKind::R, index)
    }

    pub fn of_generator(n: usize, g: Generator) -> Result<Self> {
        Self::generator(n, g.kind, g.index)
    }

    /// A single term `c·word`; zero if `c` is zero.
    pub fn term(n: usize, word: BasisWord, c: Scalar) -> Self {
        debug_assert_eq!(word.ambient(), n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        Self { n, terms }
    }

    pub fn basis(word: BasisWord) -> Self {
        let n = word.ambient();
        Self::term(n, word, scalar::one())
    }

    /// Builds an element from arbitrary terms, summing duplicates and
    /// dropping zeros. Every word must belong to `U_n`.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisWord, Scalar)>,
    {
        let mut acc = Accumulator::new(n);
        for (w, c) in terms {
            w.validate(n)?;
            acc.add(w, c);
        }
        Ok(acc.finish())
    }

    /// The polynomial `Σ c·u` with every R-part empty.
    pub fn from_l_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (LMonomial, Scalar)>,
    {
        let mut acc = Accumulator::new(n);
        for (u, c) in terms {
            acc.add(BasisWord::new(u, RWord::empty()), c);
        }
        acc.finish()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(w, c)| w.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisWord, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (BasisWord, Scalar)> {
        self.terms.into_iter().rev()
    }

    pub fn coefficient(&self, word: &BasisWord) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The greatest basis word in the canonical order.
    pub fn leading_word(&self) -> Option<&BasisWord> {
        self.terms.keys().next_back()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &scalar::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-scalar::one());
        Ok(out)
    }

    /// `self += c·other`, keeping the representation canonical.
    pub fn add_assign_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.n, other.n, "ambient mismatch");
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            add_term(&mut self.terms, w.clone(), a * c);
        }
    }

    pub(crate) fn add_term(&mut self, w: BasisWord, c: Scalar) {
        add_term(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&BasisWord) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every basis word (coefficients are carried along and
    /// merged); used for linear substitutions that act word by word.
    pub fn map_words(&self, mut f: impl FnMut(&BasisWord) -> BasisWord) -> Self {
        let mut acc = Accumulator::new(self.n);
        for (w, c) in &self.terms {
            acc.add(f(w), c.clone());
        }
        acc.finish()
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(BasisWord::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(BasisWord::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_w_homogeneous(&self, w: &WeightVector) -> bool {
        let mut degs = self.terms.keys().map(|b| b.weighted_degree(w.as_slice()));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn wdeg(&self, w: &WeightVector) -> Result<Degree> {
        w.check(self.n)?;
        Ok(self
            .terms
            .keys()
            .map(|b| b.weighted_degree(w.as_slice()))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite))
    }

    /// Splits into `w`-homogeneous parts keyed by degree.
    pub fn homogeneous_components(&self, w: &WeightVector) -> Result<BTreeMap<i64, Element>> {
        w.check(self.n)?;
        let mut parts: BTreeMap<i64, Element> = BTreeMap::new();
        for (b, c) in &self.terms {
            parts
                .entry(b.weighted_degree(w.as_slice()))
                .or_insert_with(|| Element::zero(self.n))
                .terms
                .insert(b.clone(), c.clone());
        }
        Ok(parts)
    }

    /// The component of maximal `w`-degree (zero for zero).
    pub fn highest_part(&self, w: &WeightVector) -> Result<Element> {
        Ok(self
            .homogeneous_components(w)?
            .pop_last()
            .map_or_else(|| Element::zero(self.n), |(_, e)| e))
    }

    pub fn membership(&self) -> Membership {
        Membership {
            in_l: self.terms.keys().all(|b| b.rpart.is_empty()),
            in_r: self.terms.keys().all(|b| b.lpart.is_one()),
            in_i: self.terms.keys().all(|b| !b.rpart.is_empty()),
        }
    }

    pub fn in_l(&self) -> bool {
        self.membership().in_l
    }

    pub fn in_r(&self) -> bool {
        self.membership().in_r
    }

    pub fn in_i(&self) -> bool {
        self.membership().in_i
    }

    /// The decomposition `g = g(l) + g_0` along `U_n = L_n ⊕ I_n`.
    pub fn project_to_l(&self) -> (Element, Element) {
        (
            self.filter_terms(|b| b.rpart.is_empty()),
            self.filter_terms(|b| !b.rpart.is_empty()),
        )
    }

    /// Groups the terms as `u_1·h_1 + … + u_s·h_s` with distinct L-monomials
    /// `u_1 > … > u_s` and `h_k ∈ R_n`.
    pub fn l_decomposition(&self) -> Vec<(LMonomial, Element)> {
        let mut groups: Vec<(LMonomial, Element)> = Vec::new();
        for (b, c) in self.terms() {
            let r = BasisWord::new(LMonomial::one(self.n), b.rpart.clone());
            match groups.last_mut() {
                Some((u, h)) if *u == b.lpart => {
                    h.terms.insert(r, c.clone());
                }
                _ => {
                    let mut h = Element::zero(self.n);
                    h.terms.insert(r, c.clone());
                    groups.push((b.lpart.clone(), h));
                }
            }
        }
        groups
    }

    /// Leading L-monomial and its `R_n` coefficient; `(None, 0)` for zero.
    pub fn lm_lc(&self) -> (Option<LMonomial>, Element) {
        match self.l_decomposition().into_iter().next() {
            Some((u, h)) => (Some(u), h),
            None => (None, Element::zero(self.n)),
        }
    }

    /// The `R_n` coefficient of a given L-monomial.
    pub fn l_coefficient(&self, u: &LMonomial) -> Element {
        let mut h = Element::zero(self.n);
        for (b, c) in &self.terms {
            if b.lpart == *u {
                h.terms.insert(
                    BasisWord::new(LMonomial::one(self.n), b.rpart.clone()),
                    c.clone(),
                );
            }
        }
        h
    }

    fn require_l(&self) -> Result<()> {
        if self.in_l() {
            Ok(())
        } else {
            Err(Error::NotInSubalgebra {
                subalgebra: "L_n",
                detail: format!("{} term(s) carry an r-letter", self.project_to_l().1.num_terms()),
            })
        }
    }

    /// Ordinary partial derivative `∂f/∂l_j` of a polynomial `f ∈ L_n`.
    pub fn pderiv_l(&self, j: usize) -> Result<Element> {
        Generator::l(j).check(self.n)?;
        self.require_l()?;
        Ok(self.pderiv_l_unchecked(j))
    }

    fn pderiv_l_unchecked(&self, j: usize) -> Element {
        let mut acc = Accumulator::new(self.n);
        for (b, c) in &self.terms {
            let e = b.lpart.exponent(j);
            if let Some(u) = b.lpart.div_var(j) {
                acc.add(
                    BasisWord::new(u, b.rpart.clone()),
                    c * Scalar::from_integer(e.into()),
                );
            }
        }
        acc.finish()
    }

    /// `f(l_1 - r_1, …, l_n - r_n) = f - Σ_j (∂f/∂l_j)·r_j` for `f ∈ L_n`.
    pub fn shift_lr(&self) -> Result<Element> {
        self.require_l()?;
        let mut out = self.clone();
        for j in 1..=self.n {
            let d = self.pderiv_l_unchecked(j);
            for (b, c) in d.terms {
                // d ∈ L_n, so d·r_j is just the word with r_j appended
                out.add_term(BasisWord::new(b.lpart, RWord::letter(j)), -c);
            }
        }
        Ok(out)
    }

    /// Errors with [`Error::TermLimit`] when the element is too large.
    pub fn check_terms(&self, limit: Option<usize>) -> Result<()> {
        match limit {
            Some(limit) if self.terms.len() > limit => Err(Error::TermLimit {
                terms: self.terms.len(),
                limit,
            }),
            _ => Ok(()),
        }
    }
}

fn add_term(terms: &mut BTreeMap<BasisWord, Scalar>, w: BasisWord, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Hash-based accumulator for bulk term production; converts to the
/// canonical sorted map once at the end.
pub(crate) struct Accumulator {
    n: usize,
    terms: std::collections::HashMap<BasisWord, Scalar>,
}

impl Accumulator {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            n,
            terms: Default::default(),
        }
    }

    pub(crate) fn add(&mut self, w: BasisWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(w).or_insert_with(Scalar::zero) += c;
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn finish(self) -> Element {
        Element {
            n: self.n,
            terms: self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for Element {
    /// Plain rendering such as `l1^2*r1 + 2*l1*r1*r1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if b.is_one() {
                f.write_str(&scalar::format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{}*{b}", scalar::format_scalar(&abs))?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("ambient mismatch")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("ambient mismatch")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-scalar::one())
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("ambient mismatch")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
