use std::collections::BTreeMap;

use crate::element::{Element, WeightVector};
use crate::error::{Error, Result};
use crate::product::commutator;
use crate::word::{BasisWord, GenKind, Generator, LMonomial, RWord};

use super::{describe, Relation, Violation};

/// A linear map given by `D(l_i)` and `D(r_i)`, extended by the Leibniz law
/// once the defining relations have been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationData {
    n: usize,
    l_images: Vec<Element>,
    r_images: Vec<Element>,
    verified: bool,
}

/// Outcome of iterating a derivation on one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyProbe {
    /// `D^k(x) = 0` and `k` is minimal.
    ZeroAt(u32),
    /// `D^k(x) ≠ 0` for every `k ≤ bound`; `degrees[k-1]` is the total
    /// degree of `D^k(x)`. This is evidence, never a proof of anything.
    NonzeroThrough { bound: u32, degrees: Vec<u64> },
}

fn word_of(n: usize, gens: &[Generator]) -> BasisWord {
    let mut exps = vec![0u32; n];
    let mut r = Vec::new();
    for g in gens {
        match g.kind {
            GenKind::L => exps[g.index - 1] += 1,
            GenKind::R => r.push(g.index as u32),
        }
    }
    BasisWord::new(LMonomial::from_exponents(exps), RWord::from_letters(r))
}

fn check_images(n: usize, l: &[Element], r: &[Element]) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroAmbient);
    }
    for images in [l, r] {
        if images.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: images.len(),
            });
        }
        if let Some(e) = images.iter().find(|e| e.ambient() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: e.ambient(),
            });
        }
    }
    Ok(())
}

impl DerivationData {
    /// Unverified data; call [`DerivationData::check`] before applying it.
    pub fn new(n: usize, l_images: Vec<Element>, r_images: Vec<Element>) -> Result<Self> {
        check_images(n, &l_images, &r_images)?;
        Ok(Self {
            n,
            l_images,
            r_images,
            verified: false,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            l_images: vec![Element::zero(n); n],
            r_images: vec![Element::zero(n); n],
            verified: true,
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn l_images(&self) -> &[Element] {
        &self.l_images
    }

    pub fn r_images(&self) -> &[Element] {
        &self.r_images
    }

    pub fn l_image(&self, i: usize) -> &Element {
        &self.l_images[i - 1]
    }

    pub fn r_image(&self, i: usize) -> &Element {
        &self.r_images[i - 1]
    }

    pub fn image(&self, g: Generator) -> &Element {
        match g.kind {
            GenKind::L => self.l_image(g.index),
            GenKind::R => self.r_image(g.index),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l_images.iter().chain(&self.r_images).all(Element::is_zero)
    }

    /// The image of every relation instance under the generator data.
    /// The data is a derivation iff all of them vanish.
    pub fn residuals(&self) -> Vec<(Relation, Element)> {
        let n = self.n;
        let l = |i| Element::l(n, i).expect("index in range");
        let r = |i| Element::r(n, i).expect("index in range");
        Relation::all(n)
            .into_iter()
            .map(|rel| {
                let res = match rel {
                    Relation::Commute { i, j } => {
                        let a = commutator(self.l_image(i), &l(j)).expect("same ambient");
                        let b = commutator(&l(i), self.l_image(j)).expect("same ambient");
                        &a + &b
                    }
                    Relation::Mixed { i, j } => {
                        // D(r_i) l_j + r_i D(l_j) - D(l_j) r_i - l_j D(r_i)
                        //   - D(r_i) r_j - r_i D(r_j)
                        let (di, dlj, drj) = (self.r_image(i), self.l_image(j), self.r_image(j));
                        let (ri, lj, rj) = (r(i), l(j), r(j));
                        let mut acc = commutator(di, &lj).expect("same ambient");
                        acc = &acc + &commutator(&ri, dlj).expect("same ambient");
                        acc = &acc - &(di * &rj);
                        &acc - &(&ri * drj)
                    }
                };
                (rel, res)
            })
            .collect()
    }

    /// Checks the defining relations; the returned copy is verified iff no
    /// relation is violated.
    pub fn check(&self) -> (Self, Vec<Violation>) {
        let violations: Vec<Violation> = self
            .residuals()
            .into_iter()
            .filter(|(_, res)| !res.is_zero())
            .map(|(relation, residual)| Violation { relation, residual })
            .collect();
        let mut out = self.clone();
        out.verified = violations.is_empty();
        (out, violations)
    }

    /// Verified copy, or the list of violated relations as an error.
    pub fn verify(&self) -> Result<Self> {
        let (d, violations) = self.check();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::RelationsViolated(describe(&violations)))
        }
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    /// Extends linearly and by the Leibniz law along the canonical
    /// factorization of each basis word.
    pub fn apply(&self, g: &Element) -> Result<Element> {
        self.require_verified()?;
        if g.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: g.ambient(),
            });
        }
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &Element) -> Element {
        let n = self.n;
        let mut out = Element::zero(n);
        for (word, c) in g.terms() {
            let factors = word.factors();
            for (t, &f) in factors.iter().enumerate() {
                let img = self.image(f);
                if img.is_zero() {
                    continue;
                }
                // prefixes and suffixes of a canonical factorization are basis words
                let left = Element::basis(word_of(n, &factors[..t]));
                let right = Element::basis(word_of(n, &factors[t + 1..]));
                let term = &(&left * img) * &right;
                out.add_assign_scaled(&term, c);
            }
        }
        out
    }

    /// The inner derivation `x ↦ ax - xa`.
    pub fn ad(a: &Element) -> Self {
        let n = a.ambient();
        let img = |g: Result<Element>| commutator(a, &g.expect("index in range")).expect("same ambient");
        Self {
            n,
            l_images: (1..=n).map(|i| img(Element::l(n, i))).collect(),
            r_images: (1..=n).map(|i| img(Element::r(n, i))).collect(),
            verified: true,
        }
    }

    /// `[D, E] = D∘E - E∘D`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.require_verified()?;
        other.require_verified()?;
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let both = |x: &Element| {
            &self.apply_unchecked(&other.apply_unchecked(x)) - &other.apply_unchecked(&self.apply_unchecked(x))
        };
        Ok(Self {
            n: self.n,
            l_images: (1..=self.n)
                .map(|i| both(&Element::l(self.n, i).expect("index in range")))
                .collect(),
            r_images: (1..=self.n)
                .map(|i| both(&Element::r(self.n, i).expect("index in range")))
                .collect(),
            verified: true,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_sub(b))
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> Self {
        Self {
            n: self.n,
            l_images: self.l_images.iter().map(|e| e.scale(c)).collect(),
            r_images: self.r_images.iter().map(|e| e.scale(c)).collect(),
            verified: self.verified,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Element, &Element) -> Result<Element>) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            l_images: self.l_images.iter().zip(&other.l_images).map(|(a, b)| f(a, b)).collect::<Result<_>>()?,
            r_images: self.r_images.iter().zip(&other.r_images).map(|(a, b)| f(a, b)).collect::<Result<_>>()?,
            verified: self.verified && other.verified,
        })
    }

    fn slots(&self) -> impl Iterator<Item = (Generator, &Element)> + '_ {
        let ls = self.l_images.iter().enumerate().map(|(i, e)| (Generator::l(i + 1), e));
        let rs = self.r_images.iter().enumerate().map(|(i, e)| (Generator::r(i + 1), e));
        ls.chain(rs)
    }

    /// Leading L-monomial over all `2n` images together, and the `R_n`
    /// coefficients of that monomial in each image.
    pub fn lm_lc(&self) -> (Option<LMonomial>, PureFormalExpression) {
        let lead = self
            .slots()
            .filter_map(|(_, e)| e.lm_lc().0)
            .max();
        let Some(g) = lead else {
            return (None, PureFormalExpression::zero(self.n));
        };
        let expr = PureFormalExpression {
            n: self.n,
            l_images: self.l_images.iter().map(|e| e.l_coefficient(&g)).collect(),
            r_images: self.r_images.iter().map(|e| e.l_coefficient(&g)).collect(),
        };
        (Some(g), expr)
    }

    /// Splits a verified derivation into `w`-homogeneous derivations; the
    /// part of degree `m` sends `x_i` into degree `m + w_i`.
    pub fn graded_parts(&self, w: &WeightVector) -> Result<BTreeMap<i64, DerivationData>> {
        self.require_verified()?;
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: w.len(),
            });
        }
        let mut parts: BTreeMap<i64, DerivationData> = BTreeMap::new();
        for (g, img) in self.slots() {
            let shift = w.weight(g.index);
            for (deg, comp) in img.homogeneous_components(w)? {
                let part = parts.entry(deg - shift).or_insert_with(|| {
                    let mut z = DerivationData::zero(self.n);
                    z.verified = false;
                    z
                });
                match g.kind {
                    GenKind::L => part.l_images[g.index - 1] = comp,
                    GenKind::R => part.r_images[g.index - 1] = comp,
                }
            }
        }
        parts
            .into_iter()
            .map(|(m, d)| Ok((m, d.verify()?)))
            .collect()
    }

    /// The graded part of maximal degree (zero derivation for zero).
    pub fn highest_part(&self, w: &WeightVector) -> Result<DerivationData> {
        Ok(self
            .graded_parts(w)?
            .pop_last()
            .map_or_else(|| DerivationData::zero(self.n), |(_, d)| d))
    }

    /// Iterates `x, D(x), D²(x), …` for at most `bound` steps.
    pub fn probe_nilpotent(&self, x: &Element, bound: u32) -> Result<NilpotencyProbe> {
        self.require_verified()?;
        if bound == 0 {
            return Err(Error::InvalidArgument("bound must be at least 1".into()));
        }
        if x.is_zero() {
            return Ok(NilpotencyProbe::ZeroAt(0));
        }
        let mut cur = self.apply(x)?;
        let mut degrees = Vec::new();
        for k in 1..=bound {
            match cur.degree() {
                None => return Ok(NilpotencyProbe::ZeroAt(k)),
                Some(d) => degrees.push(d),
            }
            if k < bound {
                cur = self.apply_unchecked(&cur);
            }
        }
        Ok(NilpotencyProbe::NonzeroThrough { bound, degrees })
    }

    /// The extension `g(l_n) ∂/∂l_1 + g'(l_n) r_n ∂/∂r_1` of the triangular
    /// derivation `g(l_n) ∂/∂l_1` of `L_n`; requires `n ≥ 2`.
    pub fn extend_triangular(n: usize, g: &Element) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("extension needs n >= 2".into()));
        }
        if g.ambient() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: g.ambient(),
            });
        }
        let univariate = g.terms().all(|(b, _)| {
            b.rpart.is_empty() && b.lpart.exponents()[..n - 1].iter().all(|&e| e == 0)
        });
        if !univariate {
            return Err(Error::NotInSubalgebra {
                subalgebra: "K[l_n]",
                detail: format!("{g}"),
            });
        }
        let dg = g.pderiv_l(n)?;
        let mut d = DerivationData::zero(n);
        d.l_images[0] = g.clone();
        d.r_images[0] = &dg * &Element::r(n, n)?;
        d.verify()
    }
}

/// Generator data with every image in `R_n`; need not be a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureFormalExpression {
    n: usize,
    l_images: Vec<Element>,
    r_images: Vec<Element>,
}

impl PureFormalExpression {
    pub fn new(n: usize, l_images: Vec<Element>, r_images: Vec<Element>) -> Result<Self> {
        check_images(n, &l_images, &r_images)?;
        if let Some(e) = l_images.iter().chain(&r_images).find(|e| !e.in_r()) {
            return Err(Error::NotInSubalgebra {
                subalgebra: "R_n",
                detail: e.to_string(),
            });
        }
        Ok(Self {
            n,
            l_images,
            r_images,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            l_images: vec![Element::zero(n); n],
            r_images: vec![Element::zero(n); n],
        }
    }

    pub fn l_images(&self) -> &[Element] {
        &self.l_images
    }

    pub fn r_images(&self) -> &[Element] {
        &self.r_images
    }

    pub fn is_zero(&self) -> bool {
        self.l_images.iter().chain(&self.r_images).all(Element::is_zero)
    }

    /// Drops the l-slots, leaving a derivation of the free algebra `R_n`.
    pub fn restrict_r(&self) -> RDerivation {
        RDerivation {
            n: self.n,
            images: self.r_images.clone(),
        }
    }
}

/// A derivation of the free associative algebra `R_n`, which is determined
/// by arbitrary images of `r_1..r_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDerivation {
    n: usize,
    images: Vec<Element>,
}

impl RDerivation {
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, h: &Element) -> Result<Element> {
        if h.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: h.ambient(),
            });
        }
        if !h.in_r() {
            return Err(Error::NotInSubalgebra {
                subalgebra: "R_n",
                detail: h.to_string(),
            });
        }
        let n = self.n;
        let mut out = Element::zero(n);
        for (word, c) in h.terms() {
            let letters = word.rpart.letters();
            for (t, &j) in letters.iter().enumerate() {
                let img = &self.images[j as usize - 1];
                if img.is_zero() {
                    continue;
                }
                let prefix = Element::basis(BasisWord::new(
                    LMonomial::one(n),
                    RWord::from_letters(letters[..t].to_vec()),
                ));
                let suffix = Element::basis(BasisWord::new(
                    LMonomial::one(n),
                    RWord::from_letters(letters[t + 1..].to_vec()),
                ));
                out.add_assign_scaled(&(&(&prefix * img) * &suffix), c);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn l(i: usize) -> Element {
        Element::l(2, i).unwrap()
    }
    fn r(i: usize) -> Element {
        Element::r(2, i).unwrap()
    }

    fn example41() -> DerivationData {
        DerivationData::new(
            2,
            vec![&r(1) * &r(1), &r(1) * &r(2)],
            vec![Element::zero(2), &(&r(1) * &r(2)) - &(&r(2) * &r(1))],
        )
        .unwrap()
    }

    #[test]
    fn example41_is_a_derivation() {
        let (d, v) = example41().check();
        assert!(v.is_empty(), "{v:?}");
        assert!(d.is_verified());
        assert_eq!(d.residuals().len(), 5);
    }

    #[test]
    fn zero_derivation_checks() {
        assert!(DerivationData::zero(3).check().1.is_empty());
    }

    #[test]
    fn bad_data_is_rejected() {
        let d = DerivationData::new(
            2,
            vec![r(1), Element::zero(2)],
            vec![Element::zero(2), Element::zero(2)],
        )
        .unwrap();
        let (d, v) = d.check();
        assert!(!d.is_verified());
        assert!(v.iter().any(|x| x.relation == Relation::Mixed { i: 2, j: 1 }));
        assert!(matches!(d.apply(&l(1)), Err(Error::Unverified)));
        assert!(d.verify().is_err());
    }

    #[test]
    fn apply_examples() {
        let d = example41().verify().unwrap();
        let got = d.apply(&(&l(1) * &l(2))).unwrap();
        let expect = &(&(&r(1) * &r(1)) * &l(2)) + &(&l(1) * &(&r(1) * &r(2)));
        assert_eq!(got, expect);
        assert!(d.apply(&Element::one(2)).unwrap().is_zero());
        let a = DerivationData::ad(&l(1));
        assert_eq!(a.apply(&r(2)).unwrap(), -(&r(2) * &r(1)));
    }

    #[test]
    fn inner_derivations() {
        assert_eq!(DerivationData::ad(&l(1)).r_image(1), &-(&r(1) * &r(1)));
        assert!(DerivationData::ad(&Element::one(2)).is_zero());
        assert_eq!(
            DerivationData::ad(&r(1)).apply(&r(2)).unwrap(),
            &(&r(1) * &r(2)) - &(&r(2) * &r(1))
        );
        assert!(DerivationData::ad(&(&l(1) * &r(2))).check().1.is_empty());
    }

    #[test]
    fn brackets() {
        let d = example41().verify().unwrap();
        assert!(d.bracket(&d).unwrap().is_zero());
        let e = d.bracket(&DerivationData::ad(&r(1))).unwrap();
        assert!(e.check().1.is_empty());
        let (a, b) = (&l(1) + &r(2), &r(1) * &l(2));
        let lhs = DerivationData::ad(&a).bracket(&DerivationData::ad(&b)).unwrap();
        let rhs = DerivationData::ad(&commutator(&a, &b).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn leading_parts() {
        let mut d = DerivationData::zero(2);
        d.l_images[0] = &(&l(1) * &(&r(1) * &r(1))) + &r(1);
        let (m, c) = d.lm_lc();
        assert_eq!(m.unwrap().exponents(), &[1, 0]);
        assert_eq!(c.l_images()[0], &r(1) * &r(1));
        assert!(c.l_images()[1].is_zero());

        let (m, c) = DerivationData::zero(2).lm_lc();
        assert!(m.is_none() && c.is_zero());

        let e = example41();
        let (m, c) = e.lm_lc();
        assert!(m.unwrap().is_one());
        assert_eq!(c.l_images(), e.l_images());
        assert_eq!(c.r_images(), e.r_images());
    }

    #[test]
    fn restriction_acts_on_r() {
        let (_, lc) = example41().lm_lc();
        let rd = lc.restrict_r();
        assert_eq!(rd.apply(&r(2)).unwrap(), &(&r(1) * &r(2)) - &(&r(2) * &r(1)));
        assert!(PureFormalExpression::zero(2).restrict_r().apply(&r(1)).unwrap().is_zero());
        assert!(rd.apply(&l(1)).is_err());

        let s = &r(1) + &r(2);
        let p = PureFormalExpression::new(
            2,
            vec![Element::zero(2), Element::zero(2)],
            vec![&r(1) * &s, &r(2) * &s],
        )
        .unwrap();
        assert_eq!(
            p.restrict_r().apply(&r(1)).unwrap(),
            &(&r(1) * &r(1)) + &(&r(1) * &r(2))
        );
        assert!(PureFormalExpression::new(2, vec![l(1), r(1)], vec![r(1), r(1)]).is_err());
    }

    #[test]
    fn grading() {
        let w = WeightVector::standard(2);
        let parts = example41().verify().unwrap().graded_parts(&w).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), [1]);

        let mut c = DerivationData::zero(2);
        c.l_images[0] = Element::one(2);
        let parts = c.verify().unwrap().graded_parts(&w).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), [-1]);

        assert!(DerivationData::zero(2).graded_parts(&w).unwrap().is_empty());
    }

    #[test]
    fn probes() {
        let g = &l(2) * &l(2);
        let d = DerivationData::extend_triangular(2, &g).unwrap();
        assert_eq!(d.probe_nilpotent(&l(1), 5).unwrap(), NilpotencyProbe::ZeroAt(2));
        assert_eq!(d.probe_nilpotent(&r(1), 5).unwrap(), NilpotencyProbe::ZeroAt(2));
        assert_eq!(
            d.probe_nilpotent(&Element::one(2), 5).unwrap(),
            NilpotencyProbe::ZeroAt(1)
        );

        let e = example41().verify().unwrap();
        match e.probe_nilpotent(&r(2), 5).unwrap() {
            NilpotencyProbe::NonzeroThrough { bound, degrees } => {
                assert_eq!(bound, 5);
                assert_eq!(degrees, [2, 3, 4, 5, 6]);
            }
            other => panic!("{other:?}"),
        }
        let d2 = e.apply(&e.apply(&r(2)).unwrap()).unwrap();
        let expect = &(&(&(&r(1) * &r(1)) * &r(2)) - &(&(&r(1) * &r(2)) * &r(1)).scale(&int(2)))
            + &(&(&r(2) * &r(1)) * &r(1));
        assert_eq!(d2, expect);
    }

    #[test]
    fn triangular_extension() {
        let g = &l(2) * &l(2);
        let d = DerivationData::extend_triangular(2, &g).unwrap();
        assert_eq!(d.l_image(1), &g);
        assert_eq!(d.r_image(1), &(&l(2) * &r(2)).scale(&int(2)));
        assert!(d.l_image(2).is_zero() && d.r_image(2).is_zero());

        let d = DerivationData::extend_triangular(2, &Element::one(2)).unwrap();
        assert!(d.l_image(1).is_one() && d.r_image(1).is_zero());

        let cube = g.checked_mul(&l(2)).unwrap();
        let d = DerivationData::extend_triangular(2, &cube).unwrap();
        assert_eq!(d.r_image(1), &(&g * &r(2)).scale(&int(3)));

        assert!(DerivationData::extend_triangular(2, &l(1)).is_err());
        assert!(DerivationData::extend_triangular(1, &Element::one(1)).is_err());
    }
}
