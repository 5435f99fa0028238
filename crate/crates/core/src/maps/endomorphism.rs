use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::product::commutator;
use crate::scalar::{self, Scalar};
use crate::word::{GenKind, Generator};

use super::{describe, PolyMap, Relation, Violation};

/// An algebra map `U_n → U_n` given by the images of the generators.
///
/// Composition follows substitution: `phi.compose(&psi)` is `x ↦ φ(ψ(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismData {
    n: usize,
    l_images: Vec<Element>,
    r_images: Vec<Element>,
    verified: bool,
}

impl EndomorphismData {
    /// Unverified data; call [`EndomorphismData::check`] before applying it.
    pub fn new(n: usize, l_images: Vec<Element>, r_images: Vec<Element>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroAmbient);
        }
        for images in [&l_images, &r_images] {
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
        Ok(Self {
            n,
            l_images,
            r_images,
            verified: false,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            l_images: (1..=n).map(|i| Element::l(n, i).expect("index in range")).collect(),
            r_images: (1..=n).map(|i| Element::r(n, i).expect("index in range")).collect(),
            verified: true,
        }
    }

    /// `Φ(f)`: `l_i ↦ f_i`, `r_i ↦ Σ_s ∂f_i/∂l_s · r_s`.
    pub fn lift(f: &PolyMap) -> Self {
        let n = f.ambient();
        let r_images = f
            .components()
            .iter()
            .map(|fi| {
                let mut img = Element::zero(n);
                for s in 1..=n {
                    let d = fi.pderiv_l(s).expect("polynomial component");
                    img = &img + &(&d * &Element::r(n, s).expect("index in range"));
                }
                img
            })
            .collect();
        Self {
            n,
            l_images: f.components().to_vec(),
            r_images,
            verified: false,
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

    pub fn image(&self, g: Generator) -> &Element {
        match g.kind {
            GenKind::L => &self.l_images[g.index - 1],
            GenKind::R => &self.r_images[g.index - 1],
        }
    }

    /// The image of `lhs - rhs` for every relation instance.
    pub fn residuals(&self) -> Vec<(Relation, Element)> {
        Relation::all(self.n)
            .into_iter()
            .map(|rel| {
                let res = match rel {
                    Relation::Commute { i, j } => {
                        commutator(&self.l_images[i - 1], &self.l_images[j - 1]).expect("same ambient")
                    }
                    Relation::Mixed { i, j } => {
                        let (ri, lj, rj) = (&self.r_images[i - 1], &self.l_images[j - 1], &self.r_images[j - 1]);
                        &commutator(ri, lj).expect("same ambient") - &(ri * rj)
                    }
                };
                (rel, res)
            })
            .collect()
    }

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

    pub fn verify(&self) -> Result<Self> {
        let (e, violations) = self.check();
        if violations.is_empty() {
            Ok(e)
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

    fn apply_unchecked(&self, g: &Element) -> Element {
        let mut out = Element::zero(self.n);
        for (word, c) in g.terms() {
            let mut img = Element::one(self.n);
            for f in word.factors() {
                img = &img * self.image(f);
                if img.is_zero() {
                    break;
                }
            }
            out.add_assign_scaled(&img, c);
        }
        out
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.require_verified()?;
        other.require_verified()?;
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            l_images: other.l_images.iter().map(|e| self.apply_unchecked(e)).collect(),
            r_images: other.r_images.iter().map(|e| self.apply_unchecked(e)).collect(),
            verified: true,
        })
    }

    pub fn is_identity(&self) -> bool {
        let id = Self::identity(self.n);
        self.l_images == id.l_images && self.r_images == id.r_images
    }

    /// Every image has total degree exactly 1.
    pub fn is_affine(&self) -> Result<bool> {
        self.require_verified()?;
        Ok(self
            .l_images
            .iter()
            .chain(&self.r_images)
            .all(|e| e.degree() == Some(1)))
    }
}

/// Both composites are the identity.
pub fn check_inverse_pair(phi: &EndomorphismData, psi: &EndomorphismData) -> Result<bool> {
    Ok(phi.compose(psi)?.is_identity() && psi.compose(phi)?.is_identity())
}

/// On `U_1`: `φ(l1) = α l1 + h(r1)`, `φ(r1) = α r1`, and its inverse
/// `ψ(l1) = α⁻¹ l1 - α⁻¹ h(α⁻¹ r1)`, `ψ(r1) = α⁻¹ r1`.
pub fn u1_closed_form(alpha: &Scalar, h: &Element) -> Result<(EndomorphismData, EndomorphismData)> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    if h.ambient() != 1 {
        return Err(Error::AmbientMismatch {
            left: 1,
            right: h.ambient(),
        });
    }
    if !h.in_r() {
        return Err(Error::NotInSubalgebra {
            subalgebra: "R_1",
            detail: h.to_string(),
        });
    }
    let inv = scalar::one() / alpha;
    let (l1, r1) = (Element::l(1, 1)?, Element::r(1, 1)?);
    // h(α⁻¹ r1): a word of length k picks up α^{-k}
    let mut h_scaled = Element::zero(1);
    for (w, c) in h.terms() {
        let k = i32::try_from(w.rpart.len()).map_err(|_| Error::InvalidArgument("degree too large".into()))?;
        h_scaled.add_assign_scaled(&Element::basis(w.clone()), &(c * inv.pow(k)));
    }
    let phi = EndomorphismData::new(1, vec![&l1.scale(alpha) + h], vec![r1.scale(alpha)])?.verify()?;
    let psi = EndomorphismData::new(
        1,
        vec![(&l1 - &h_scaled).scale(&inv)],
        vec![r1.scale(&inv)],
    )?
    .verify()?;
    Ok((phi, psi))
}
