use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::element::{Element, WeightVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{BasisWord, LMonomial, RWord};

use super::RationalMatrix;

/// All basis words of one weighted degree, in canonical (descending) order.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedSlice {
    weights: WeightVector,
    degree: i64,
    basis: Vec<BasisWord>,
    index: HashMap<BasisWord, usize>,
}

type SliceCache = Mutex<HashMap<(Vec<i64>, i64), Arc<GradedSlice>>>;

fn cache() -> &'static SliceCache {
    static CACHE: OnceLock<SliceCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The standard-degree slice `(U_n)_m`.
pub fn slice(n: usize, m: u32) -> Arc<GradedSlice> {
    weighted_slice(&WeightVector::standard(n), i64::from(m)).expect("standard weights are positive")
}

/// The slice of `w`-degree `m`; empty for negative `m`. Requires positive
/// weights so that the slice is finite.
pub fn weighted_slice(w: &WeightVector, m: i64) -> Result<Arc<GradedSlice>> {
    if w.is_empty() {
        return Err(Error::ZeroAmbient);
    }
    if !w.all_positive() {
        return Err(Error::InfiniteSlice(w.as_slice().to_vec()));
    }
    let key = (w.as_slice().to_vec(), m);
    if let Some(s) = cache().lock().expect("slice cache poisoned").get(&key) {
        return Ok(s.clone());
    }
    // built outside the lock; a racing duplicate is identical and harmless
    let built = Arc::new(GradedSlice::build(w, m));
    let mut guard = cache().lock().expect("slice cache poisoned");
    Ok(guard.entry(key).or_insert(built).clone())
}

/// `Σ_{a+b=m} C(a+n-1, n-1)·n^b`.
pub fn dim(n: usize, m: u32) -> u128 {
    let binom = |top: u128, k: u128| (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1));
    let n128 = n as u128;
    (0..=m)
        .map(|a| binom(u128::from(a) + n128 - 1, n128 - 1) * n128.pow(m - a))
        .sum()
}

fn l_monomials(w: &[i64], m: i64) -> Vec<LMonomial> {
    fn go(w: &[i64], k: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<LMonomial>) {
        if k == w.len() {
            if left == 0 {
                out.push(LMonomial::from_exponents(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * w[k] <= left {
            cur[k] = e as u32;
            go(w, k + 1, left - e * w[k], cur, out);
            e += 1;
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    go(w, 0, m, &mut vec![0; w.len()], &mut out);
    out
}

fn r_words(w: &[i64], m: i64) -> Vec<RWord> {
    fn go(w: &[i64], left: i64, cur: &mut Vec<u32>, out: &mut Vec<RWord>) {
        if left == 0 {
            out.push(RWord::from_letters(cur.clone()));
            return;
        }
        for (j, &wj) in w.iter().enumerate() {
            if wj <= left {
                cur.push(j as u32 + 1);
                go(w, left - wj, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(w, m, &mut Vec::new(), &mut out);
    out
}

impl GradedSlice {
    fn build(w: &WeightVector, m: i64) -> Self {
        let ws = w.as_slice();
        let mut basis = Vec::new();
        if m >= 0 {
            for a in 0..=m {
                let rs = r_words(ws, m - a);
                for u in l_monomials(ws, a) {
                    for v in &rs {
                        basis.push(BasisWord::new(u.clone(), v.clone()));
                    }
                }
            }
        }
        basis.sort_unstable_by(|a, b| b.cmp(a));
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Self {
            weights: w.clone(),
            degree: m,
            basis,
            index,
        }
    }

    pub fn ambient(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn basis(&self) -> &[BasisWord] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, word: &BasisWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Positions of the basis words lying in `I_n`.
    pub fn ideal_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.basis[i].rpart.is_empty()).collect()
    }

    pub fn coords(&self, g: &Element) -> Result<Vec<Scalar>> {
        if g.ambient() != self.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: g.ambient(),
            });
        }
        let mut v = vec![Scalar::zero(); self.len()];
        for (w, c) in g.terms() {
            let i = self
                .index_of(w)
                .ok_or(Error::NotHomogeneous { degree: self.degree })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn uncoords(&self, v: &[Scalar]) -> Result<Element> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        Element::from_terms(
            self.ambient(),
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Element with coordinates `v` on the basis positions `positions`.
    pub fn uncoords_on(&self, positions: &[usize], v: &[Scalar]) -> Result<Element> {
        if v.len() != positions.len() {
            return Err(Error::LengthMismatch {
                expected: positions.len(),
                got: v.len(),
            });
        }
        Element::from_terms(
            self.ambient(),
            positions.iter().map(|&p| self.basis[p].clone()).zip(v.iter().cloned()),
        )
    }
}

/// Column `k` is the coordinate vector of `t(from.basis[k])` in `to`.
pub fn operator_matrix(
    t: impl Fn(&Element) -> Result<Element>,
    from: &GradedSlice,
    to: &GradedSlice,
) -> Result<RationalMatrix> {
    operator_matrix_on(t, from, &(0..from.len()).collect::<Vec<_>>(), to)
}

/// Like [`operator_matrix`] restricted to some basis positions of `from`.
pub fn operator_matrix_on(
    t: impl Fn(&Element) -> Result<Element>,
    from: &GradedSlice,
    positions: &[usize],
    to: &GradedSlice,
) -> Result<RationalMatrix> {
    let columns = positions
        .iter()
        .map(|&p| {
            let img = t(&Element::basis(from.basis[p].clone()))?;
            to.coords(&img).map_err(|_| {
                Error::DimensionMismatch(format!(
                    "image of {} is not in the degree {} slice",
                    from.basis[p], to.degree
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(to.len(), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::DerivationData;
    use crate::scalar::int;

    #[test]
    fn dimensions() {
        assert_eq!(slice(2, 2).len(), 11);
        assert_eq!(dim(2, 2), 11);
        assert_eq!(slice(1, 0).len(), 1);
        assert_eq!(slice(1, 1).len(), 2);
        for n in 1..=3 {
            for m in 0..=4 {
                assert_eq!(slice(n, m).len() as u128, dim(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn canonical_order() {
        let s = slice(2, 2);
        let words: Vec<String> = s.basis().iter().map(ToString::to_string).collect();
        let first = if cfg!(feature = "lex-last-significant") { "l2^2" } else { "l1^2" };
        assert_eq!(words[0], first);
        assert_eq!(words.last().unwrap(), "r2*r2");
        let e = Element::from_terms(2, s.basis().iter().map(|b| (b.clone(), int(1)))).unwrap();
        let order: Vec<String> = e.terms().map(|(b, _)| b.to_string()).collect();
        assert_eq!(order, words);
    }

    #[test]
    fn weighted() {
        let w = WeightVector::new(vec![1, 2]);
        let s = weighted_slice(&w, 2).unwrap();
        // l1^2, l2, l1*r1, r1*r1, r2
        assert_eq!(s.len(), 5);
        assert!(weighted_slice(&WeightVector::new(vec![1, 0]), 1).is_err());
        assert!(weighted_slice(&w, -1).unwrap().is_empty());
    }

    #[test]
    fn coordinates() {
        let s = slice(1, 1);
        let g = &Element::l(1, 1).unwrap() + &Element::r(1, 1).unwrap();
        assert_eq!(s.coords(&g).unwrap(), vec![int(1), int(1)]);
        assert_eq!(s.uncoords(&s.coords(&g).unwrap()).unwrap(), g);
        assert_eq!(s.coords(&Element::zero(1)).unwrap(), vec![int(0), int(0)]);
        assert!(s.coords(&Element::one(1)).is_err());
    }

    #[test]
    fn operators() {
        let (s1, s2) = (slice(1, 1), slice(1, 2));
        let ad = DerivationData::ad(&Element::l(1, 1).unwrap());
        let m = operator_matrix(|g| ad.apply(g), &s1, &s2).unwrap();
        let r1r1 = s2.coords(&-(&Element::r(1, 1).unwrap() * &Element::r(1, 1).unwrap())).unwrap();
        let l_col: Vec<Scalar> = (0..s2.len()).map(|i| m.get(i, 0)).collect();
        let r_col: Vec<Scalar> = (0..s2.len()).map(|i| m.get(i, 1)).collect();
        assert!(l_col.iter().all(Zero::is_zero));
        assert_eq!(r_col, r1r1);

        let id = operator_matrix(|g| Ok(g.clone()), &s2, &s2).unwrap();
        assert_eq!(id, RationalMatrix::identity(s2.len()));

        let (a, b) = (slice(2, 1), slice(2, 2));
        let l1 = Element::l(2, 1).unwrap();
        let left = operator_matrix(|g| l1.checked_mul(g), &a, &b).unwrap();
        assert_eq!(left.rank(), a.len());
        assert!(operator_matrix(|g| Ok(g.clone()), &a, &b).is_err());
    }
}
