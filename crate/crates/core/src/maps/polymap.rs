use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::solver::RationalMatrix;

/// A polynomial endomorphism `l_i ↦ f_i` of `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    n: usize,
    components: Vec<Element>,
}

impl PolyMap {
    pub fn new(n: usize, components: Vec<Element>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        if components.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: components.len(),
            });
        }
        for f in &components {
            if f.ambient() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: f.ambient(),
                });
            }
            if !f.in_l() {
                return Err(Error::NotInSubalgebra {
                    subalgebra: "L_n",
                    detail: f.to_string(),
                });
            }
        }
        Ok(Self { n, components })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            components: (1..=n).map(|i| Element::l(n, i).expect("index in range")).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Element] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Every component has total degree exactly 1.
    pub fn is_affine(&self) -> bool {
        self.components.iter().all(|f| f.degree() == Some(1))
    }

    /// `g(f_1, …, f_n)` for `g ∈ L_n`.
    pub fn substitute(&self, g: &Element) -> Result<Element> {
        if g.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: g.ambient(),
            });
        }
        if !g.in_l() {
            return Err(Error::NotInSubalgebra {
                subalgebra: "L_n",
                detail: g.to_string(),
            });
        }
        let mut out = Element::zero(self.n);
        for (w, c) in g.terms() {
            let mut img = Element::one(self.n);
            for (k, &e) in w.lpart.exponents().iter().enumerate() {
                if e > 0 {
                    img = &img * &self.components[k].pow(e);
                }
            }
            out.add_assign_scaled(&img, c);
        }
        Ok(out)
    }

    /// The algebra map `x ↦ self(other(x))`, so component `i` is
    /// `other_i(self_1, …, self_n)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            components: other
                .components
                .iter()
                .map(|g| self.substitute(g))
                .collect::<Result<_>>()?,
        })
    }

    /// `l_i ↦ l_i + p` with `p` free of `l_i`, and its inverse `l_i ↦ l_i - p`.
    pub fn elementary(n: usize, i: usize, p: &Element) -> Result<(Self, Self)> {
        crate::word::Generator::l(i).check(n)?;
        if p.ambient() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: p.ambient(),
            });
        }
        if !p.in_l() || p.terms().any(|(w, _)| w.lpart.exponent(i) > 0) {
            return Err(Error::InvalidArgument(format!(
                "elementary shift of l{i} must be a polynomial free of l{i}, got {p}"
            )));
        }
        let li = Element::l(n, i)?;
        let mut fwd = Self::identity(n);
        let mut inv = Self::identity(n);
        fwd.components[i - 1] = &li + p;
        inv.components[i - 1] = &li - p;
        Ok((fwd, inv))
    }

    /// `l ↦ A·l + b` for invertible `A`, and its inverse `l ↦ A⁻¹·(l - b)`.
    pub fn affine(a: &RationalMatrix, b: &[Scalar]) -> Result<(Self, Self)> {
        let n = a.rows();
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        if a.cols() != n || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "affine map needs a square matrix and a matching shift, got {}x{} and {}",
                a.rows(),
                a.cols(),
                b.len()
            )));
        }
        let a_inv = a
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("affine matrix is singular".into()))?;
        let linear = |m: &RationalMatrix, shift: &[Scalar]| -> Self {
            let components = (0..n)
                .map(|row| {
                    let mut f = Element::constant(n, shift[row].clone());
                    for col in 0..n {
                        let c = m.get(row, col);
                        if !c.is_zero() {
                            f.add_assign_scaled(&Element::l(n, col + 1).expect("index in range"), &c);
                        }
                    }
                    f
                })
                .collect();
            Self { n, components }
        };
        // A⁻¹(l - b) = A⁻¹l - A⁻¹b
        let shift: Vec<Scalar> = (0..n)
            .map(|row| {
                -(0..n)
                    .map(|col| a_inv.get(row, col) * &b[col])
                    .fold(scalar::zero(), |s, x| s + x)
            })
            .collect();
        Ok((linear(a, b), linear(&a_inv, &shift)))
    }

    /// `l_i ↦ a_i l_i + p_i(l_{i+1}, …, l_n)` with every `a_i ≠ 0`, and its
    /// inverse, solved from `l_n` upwards.
    pub fn triangular(n: usize, a: &[Scalar], p: &[Element]) -> Result<(Self, Self)> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        if a.len() != n || p.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: a.len().min(p.len()),
            });
        }
        for (i, (ai, pi)) in a.iter().zip(p).enumerate() {
            if ai.is_zero() {
                return Err(Error::InvalidArgument(format!("diagonal coefficient {} is zero", i + 1)));
            }
            if pi.ambient() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: pi.ambient(),
                });
            }
            let lower = pi.terms().any(|(w, _)| w.lpart.exponents()[..=i].iter().any(|&e| e > 0));
            if !pi.in_l() || lower {
                return Err(Error::InvalidArgument(format!(
                    "triangular part {} may only involve l{}..l{n}, got {pi}",
                    i + 1,
                    i + 2
                )));
            }
        }
        let fwd = Self {
            n,
            components: (0..n)
                .map(|i| &Element::l(n, i + 1).expect("index in range").scale(&a[i]) + &p[i])
                .collect(),
        };
        // g_i = (l_i - p_i(g_{i+1}, …, g_n)) / a_i; components below i+1 are
        // never read by p_i, so placeholders suffice there
        let mut inv = Self::identity(n);
        for i in (0..n).rev() {
            let li = Element::l(n, i + 1)?;
            let pi = inv.substitute(&p[i])?;
            inv.components[i] = (&li - &pi).scale(&(scalar::one() / &a[i]));
        }
        Ok((fwd, inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn l(i: usize) -> Element {
        Element::l(2, i).unwrap()
    }

    #[test]
    fn substitution_and_composition() {
        let f = PolyMap::new(2, vec![&l(1) + &(&l(2) * &l(2)), l(2)]).unwrap();
        let g = &l(1) * &l(2);
        assert_eq!(f.substitute(&g).unwrap(), &(&l(1) * &l(2)) + &l(2).pow(3));
        assert_eq!(f.compose(&PolyMap::identity(2)).unwrap(), f);
        let ff = f.compose(&f).unwrap();
        assert_eq!(ff.components()[0], &l(1) + &(&l(2) * &l(2)).scale(&int(2)));
        assert!(PolyMap::new(2, vec![Element::r(2, 1).unwrap(), l(2)]).is_err());
    }

    #[test]
    fn closed_form_inverses() {
        let p = &l(2) * &l(2);
        let (f, g) = PolyMap::elementary(2, 1, &p).unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(PolyMap::elementary(2, 1, &l(1)).is_err());

        let a = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        let (f, g) = PolyMap::affine(&a, &[int(1), ratio(-1, 2)]).unwrap();
        assert!(f.is_affine() && g.is_affine());
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
        let singular = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(PolyMap::affine(&singular, &[int(0), int(0)]).is_err());

        let (f, g) = PolyMap::triangular(
            2,
            &[int(2), int(-1)],
            &[l(2).pow(3), Element::constant(2, int(5))],
        )
        .unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
    }
}
