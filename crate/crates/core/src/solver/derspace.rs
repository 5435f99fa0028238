use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::element::{Element, WeightVector};
use crate::error::{Error, Result};
use crate::maps::DerivationData;
use crate::scalar::Scalar;
use crate::word::{BasisWord, GenKind, Generator};

use super::{weighted_slice, GradedSlice, RationalMatrix, Solution};

/// The homogeneous derivations of one `w`-degree, as an explicit basis.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    n: usize,
    degree: i64,
    weights: WeightVector,
    into_i: bool,
    /// One unknown per (generator slot, basis word of the slot's slice).
    columns: Vec<(Generator, BasisWord)>,
    basis: Vec<DerivationData>,
    /// Coordinates of each basis member over `columns`.
    coords: Vec<Vec<Scalar>>,
}

/// Solutions of a linear condition inside a [`DerivationSpace`].
#[derive(Clone, Debug)]
pub struct ConstrainedSolutions {
    pub particular: DerivationData,
    /// Members of the space on which the condition vanishes.
    pub kernel: Vec<DerivationData>,
}

fn slot_slice(w: &WeightVector, m: i64, g: Generator) -> Result<Arc<GradedSlice>> {
    weighted_slice(w, m + w.weight(g.index))
}

fn slots(n: usize) -> impl Iterator<Item = Generator> {
    (1..=n).map(Generator::l).chain((1..=n).map(Generator::r))
}

fn single(n: usize, g: Generator, img: Element) -> DerivationData {
    let mut l = vec![Element::zero(n); n];
    let mut r = vec![Element::zero(n); n];
    match g.kind {
        GenKind::L => l[g.index - 1] = img,
        GenKind::R => r[g.index - 1] = img,
    }
    DerivationData::new(n, l, r).expect("well-formed data")
}

/// Basis of the derivations `D` of `w`-degree `m`, meaning `D(x_s)` is
/// `w`-homogeneous of degree `m + w_s`, optionally with all images in `I_n`.
///
/// The constraints are the relation residuals of
/// [`DerivationData::residuals`] applied to one unknown at a time.
pub fn derivation_space(n: usize, m: i64, into_i: bool, w: &WeightVector) -> Result<DerivationSpace> {
    if n == 0 {
        return Err(Error::ZeroAmbient);
    }
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: w.len(),
        });
    }
    let mut columns = Vec::new();
    for g in slots(n) {
        let s = slot_slice(w, m, g)?;
        for word in s.basis() {
            if !into_i || !word.rpart.is_empty() {
                columns.push((g, word.clone()));
            }
        }
    }
    // residual rows are keyed by (relation position, word)
    let mut row_of: HashMap<(usize, BasisWord), usize> = HashMap::new();
    let mut entries: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(columns.len());
    for (g, word) in &columns {
        let d = single(n, *g, Element::basis(word.clone()));
        let mut col = Vec::new();
        for (k, (_, res)) in d.residuals().into_iter().enumerate() {
            for (b, c) in res.into_terms() {
                let next = row_of.len();
                let row = *row_of.entry((k, b)).or_insert(next);
                col.push((row, c));
            }
        }
        entries.push(col);
    }
    let mut a = RationalMatrix::zeros(row_of.len(), columns.len());
    for (j, col) in entries.into_iter().enumerate() {
        for (i, c) in col {
            let c = c + a.get(i, j);
            a.set(i, j, c);
        }
    }
    let coords = a.kernel();
    let basis = coords
        .iter()
        .map(|v| assemble(n, &columns, v).verify())
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivationSpace {
        n,
        degree: m,
        weights: w.clone(),
        into_i,
        columns,
        basis,
        coords,
    })
}

fn assemble(n: usize, columns: &[(Generator, BasisWord)], v: &[Scalar]) -> DerivationData {
    let mut l = vec![Element::zero(n); n];
    let mut r = vec![Element::zero(n); n];
    for ((g, word), c) in columns.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let img = match g.kind {
            GenKind::L => &mut l[g.index - 1],
            GenKind::R => &mut r[g.index - 1],
        };
        img.add_assign_scaled(&Element::basis(word.clone()), c);
    }
    DerivationData::new(n, l, r).expect("well-formed data")
}

impl DerivationSpace {
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn into_i(&self) -> bool {
        self.into_i
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DerivationData] {
        &self.basis
    }

    /// Number of unknowns the space was solved over.
    pub fn num_unknowns(&self) -> usize {
        self.columns.len()
    }

    fn coordinates(&self, d: &DerivationData) -> Option<Vec<Scalar>> {
        if d.ambient() != self.n {
            return None;
        }
        let index: HashMap<(Generator, &BasisWord), usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(k, (g, w))| ((*g, w), k))
            .collect();
        let mut v = vec![Scalar::zero(); self.columns.len()];
        for g in slots(self.n) {
            for (w, c) in d.image(g).terms() {
                v[*index.get(&(g, w))?] = c.clone();
            }
        }
        Some(v)
    }

    /// Whether `d` is a linear combination of the basis.
    pub fn contains(&self, d: &DerivationData) -> Result<bool> {
        let Some(v) = self.coordinates(d) else {
            return Ok(false);
        };
        let a = RationalMatrix::from_columns(self.columns.len(), &self.coords)?;
        Ok(matches!(a.solve(&v)?, Solution::Solved { .. }))
    }

    /// Members whose induced derivation of `L_n` is `l_k ↦ target[k]`, that
    /// is, whose l-images have the given `L_n` parts. `None` if there are none.
    pub fn with_l_projection(&self, target: &[Element]) -> Result<Option<ConstrainedSolutions>> {
        if target.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: target.len(),
            });
        }
        let mut slices = Vec::new();
        for k in 1..=self.n {
            slices.push(slot_slice(&self.weights, self.degree, Generator::l(k))?);
        }
        let project = |d: &DerivationData| -> Result<Vec<Scalar>> {
            let mut v = Vec::new();
            for (k, s) in slices.iter().enumerate() {
                v.extend(s.coords(&d.l_image(k + 1).project_to_l().0)?);
            }
            Ok(v)
        };
        let mut b = Vec::new();
        for (k, (s, t)) in slices.iter().zip(target).enumerate() {
            if !t.in_l() {
                return Err(Error::NotInSubalgebra {
                    subalgebra: "L_n",
                    detail: t.to_string(),
                });
            }
            let c = s.coords(t).map_err(|_| Error::NotHomogeneous {
                degree: self.degree + self.weights.weight(k + 1),
            })?;
            b.extend(c);
        }
        let columns = self.basis.iter().map(project).collect::<Result<Vec<_>>>()?;
        let a = RationalMatrix::from_columns(b.len(), &columns)?;
        let Solution::Solved { particular, kernel } = a.solve(&b)? else {
            return Ok(None);
        };
        let combine = |x: &[Scalar]| -> Result<DerivationData> {
            let mut d = DerivationData::zero(self.n);
            for (e, c) in self.basis.iter().zip(x) {
                if !c.is_zero() {
                    d = d.add(&e.scale(c))?;
                }
            }
            Ok(d)
        };
        Ok(Some(ConstrainedSolutions {
            particular: combine(&particular)?,
            kernel: kernel.iter().map(|x| combine(x)).collect::<Result<_>>()?,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(i: usize) -> Element {
        Element::r(2, i).unwrap()
    }

    #[test]
    fn contains_example41() {
        let w = WeightVector::standard(2);
        let space = derivation_space(2, 1, true, &w).unwrap();
        let d = DerivationData::new(
            2,
            vec![&r(1) * &r(1), &r(1) * &r(2)],
            vec![Element::zero(2), &(&r(1) * &r(2)) - &(&r(2) * &r(1))],
        )
        .unwrap();
        assert!(space.contains(&d).unwrap());
        for b in space.basis() {
            assert!(b.check().1.is_empty());
        }
        let l1 = Element::l(2, 1).unwrap();
        let mut not_in_i = DerivationData::zero(2);
        not_in_i = not_in_i.add(&DerivationData::ad(&(&l1 * &l1))).unwrap();
        assert!(!space.contains(&not_in_i).unwrap());
    }

    #[test]
    fn negative_degrees_are_empty() {
        let w = WeightVector::standard(2);
        assert_eq!(derivation_space(2, -2, false, &w).unwrap().dim(), 0);
        assert!(derivation_space(2, 0, false, &WeightVector::new(vec![1, 0])).is_err());
    }

    #[test]
    fn degree_zero_regression() {
        // observed values, kept to catch changes in the solver
        let dims: Vec<usize> = (1..=3)
            .map(|n| derivation_space(n, 0, false, &WeightVector::standard(n)).unwrap().dim())
            .collect();
        assert_eq!(dims, [2, 4, 9]);
        let w = WeightVector::standard(2);
        assert_eq!(derivation_space(2, 0, true, &w).unwrap().dim(), 0);
    }

    #[test]
    fn constant_derivations() {
        let w = WeightVector::standard(2);
        let space = derivation_space(2, -1, false, &w).unwrap();
        // d/dl1 and d/dl2 extend with zero r-images
        assert_eq!(space.dim(), 2);
    }

    #[test]
    fn triangular_extension_in_space() {
        let w = WeightVector::standard(2);
        let l2 = Element::l(2, 2).unwrap();
        let g = &l2 * &l2;
        let d = DerivationData::extend_triangular(2, &g).unwrap();
        let space = derivation_space(2, 1, false, &w).unwrap();
        assert!(space.contains(&d).unwrap());
        let sol = space
            .with_l_projection(&[g.clone(), Element::zero(2)])
            .unwrap()
            .unwrap();
        let diff = d.sub(&sol.particular).unwrap();
        let kernel_space: Vec<_> = sol.kernel.iter().map(|k| k.l_image(1).project_to_l().0).collect();
        assert!(kernel_space.iter().all(Element::is_zero));
        assert!(diff.l_image(1).project_to_l().0.is_zero());
    }
}
