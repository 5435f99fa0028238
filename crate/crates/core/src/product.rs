//! Multiplication in the PBW basis.
//!
//! For basis words `(u_1 v_1)(u_2 v_2) = u_1 · (v_1 u_2) · v_2` the only
//! nontrivial step is moving an R-word past an L-monomial. A single letter
//! is moved with
//!
//! ```text
//! r_i · u = u · r_i + Σ_j (∂u/∂l_j)-coefficient · (r_i · u/l_j) · r_j
//! ```
//!
//! and the recursive call sees a monomial of strictly smaller degree.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use crate::element::{Accumulator, Element};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::word::{BasisWord, LMonomial, RWord};

type Terms = Rc<Vec<(BasisWord, Scalar)>>;

/// Memo tables for one product computation.
struct Mover {
    n: usize,
    letter: HashMap<(u32, LMonomial), Terms>,
    word: HashMap<(RWord, LMonomial), Terms>,
}

impl Mover {
    fn new(n: usize) -> Self {
        Self {
            n,
            letter: HashMap::new(),
            word: HashMap::new(),
        }
    }

    /// Normal form of `r_i · u`.
    fn letter_past(&mut self, i: u32, u: &LMonomial) -> Terms {
        if let Some(t) = self.letter.get(&(i, u.clone())) {
            return t.clone();
        }
        let mut acc: HashMap<BasisWord, Scalar> = HashMap::new();
        acc.insert(BasisWord::new(u.clone(), RWord::letter(i as usize)), scalar::one());
        for j in 1..=self.n {
            let e = u.exponent(j);
            let Some(lower) = u.div_var(j) else { continue };
            let e = Scalar::from_integer(e.into());
            for (w, c) in self.letter_past(i, &lower).iter() {
                let mut r = w.rpart.clone();
                r.push(j as u32);
                *acc
                    .entry(BasisWord::new(w.lpart.clone(), r))
                    .or_insert_with(Scalar::zero) += c * &e;
            }
        }
        let out: Terms = Rc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.letter.insert((i, u.clone()), out.clone());
        out
    }

    /// Normal form of `v · u` for an R-word `v`, processed right to left.
    fn word_past(&mut self, v: &RWord, u: &LMonomial) -> Terms {
        if v.is_empty() || u.is_one() {
            return Rc::new(vec![(BasisWord::new(u.clone(), v.clone()), scalar::one())]);
        }
        let key = (v.clone(), u.clone());
        if let Some(t) = self.word.get(&key) {
            return t.clone();
        }
        let mut current: Vec<(BasisWord, Scalar)> =
            vec![(BasisWord::new(u.clone(), RWord::empty()), scalar::one())];
        for &i in v.letters().iter().rev() {
            let mut acc: HashMap<BasisWord, Scalar> = HashMap::new();
            for (w, c) in &current {
                for (x, d) in self.letter_past(i, &w.lpart).iter() {
                    let word = BasisWord::new(x.lpart.clone(), x.rpart.concat(&w.rpart));
                    *acc.entry(word).or_insert_with(Scalar::zero) += c * d;
                }
            }
            current = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let out = Rc::new(current);
        self.word.insert(key, out.clone());
        out
    }
}

impl Element {
    /// The product in normal form; errors on ambient mismatch.
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.mul_limited(other, None)
    }

    /// Like [`Element::checked_mul`] but aborts with [`Error::TermLimit`]
    /// as soon as the running result holds more than `limit` terms.
    pub fn mul_limited(&self, other: &Element, limit: Option<usize>) -> Result<Element> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        let n = self.ambient();
        let mut mover = Mover::new(n);
        let mut acc = Accumulator::new(n);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                let c12 = c1 * c2;
                for (x, d) in mover.word_past(&w1.rpart, &w2.lpart).iter() {
                    acc.add(
                        BasisWord::new(w1.lpart.mul(&x.lpart), x.rpart.concat(&w2.rpart)),
                        &c12 * d,
                    );
                }
                if let Some(limit) = limit {
                    if acc.len() > limit {
                        return Err(Error::TermLimit {
                            terms: acc.len(),
                            limit,
                        });
                    }
                }
            }
        }
        let out = acc.finish();
        out.check_terms(limit)?;
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut out = Element::one(self.ambient());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &Element, b: &Element) -> Result<Element> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// Product of many factors, left to right; the unit for an empty list.
pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a Element>) -> Element {
    factors
        .into_iter()
        .fold(Element::one(n), |acc, f| &acc * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn l(n: usize, i: usize) -> Element {
        Element::l(n, i).unwrap()
    }
    fn r(n: usize, i: usize) -> Element {
        Element::r(n, i).unwrap()
    }

    #[test]
    fn relation_s2() {
        let p = &r(2, 1) * &l(2, 2);
        assert_eq!(p, &(&l(2, 2) * &r(2, 1)) + &(&r(2, 1) * &r(2, 2)));
        assert_eq!(p.to_string(), "l2*r1 + r1*r2");
    }

    #[test]
    fn relation_s1() {
        assert_eq!(&l(2, 2) * &l(2, 1), &l(2, 1) * &l(2, 2));
        assert_eq!((&l(2, 2) * &l(2, 1)).to_string(), "l1*l2");
    }

    #[test]
    fn r_past_square() {
        let p = &r(1, 1) * &l(1, 1).pow(2);
        assert_eq!(p.to_string(), "l1^2*r1 + 2*l1*r1*r1 + 2*r1*r1*r1");
    }

    #[test]
    fn commutators() {
        assert!(commutator(&l(2, 1), &l(2, 2)).unwrap().is_zero());
        assert_eq!(
            commutator(&l(2, 1), &r(2, 2)).unwrap(),
            -(&r(2, 2) * &r(2, 1))
        );
        let a = &l(2, 1) + &r(2, 2).scale(&int(3));
        assert!(commutator(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn unit_and_mismatch() {
        let a = &r(2, 1) * &l(2, 2);
        assert_eq!(&Element::one(2) * &a, a);
        assert_eq!(&a * &Element::one(2), a);
        assert!(Element::zero(2).checked_mul(&a).unwrap().is_zero());
        assert!(a.checked_mul(&Element::one(3)).is_err());
    }

    #[test]
    fn term_limit_trips() {
        let a = (&l(2, 1) + &r(2, 2)).pow(3);
        let err = a.mul_limited(&a, Some(5)).unwrap_err();
        assert!(matches!(err, Error::TermLimit { limit: 5, .. }));
        assert!(a.mul_limited(&a, Some(10_000)).is_ok());
    }
}
