use crate::element::Element;
use crate::error::{Error, Result};
use crate::maps::DerivationData;
use crate::scalar::{self, Scalar};

use super::{operator_matrix_on, slice, AnomalyReport, RationalMatrix, Solution};

/// A solution of `ad(l_i)(g) = u_i` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    /// Lies in `I_n`; free coordinates of the elimination are set to zero.
    pub g: Element,
    /// Dimension of the common kernel of all `ad(l_i)` on the slice of
    /// `I_n` searched, or `None` when every `u_i` was zero.
    pub kernel_dim: Option<usize>,
}

fn require_ambient(n: usize, items: &[Element]) -> Result<()> {
    match items.iter().find(|e| e.ambient() != n) {
        Some(e) => Err(Error::AmbientMismatch {
            left: n,
            right: e.ambient(),
        }),
        None => Ok(()),
    }
}

fn ad_l(n: usize, i: usize) -> DerivationData {
    DerivationData::ad(&Element::l(n, i).expect("index in range"))
}

/// Finds `g ∈ I_n` with `ad(l_i)(g) = u_i` for every `i`.
///
/// The `u_i` must lie in `I_n`, be homogeneous of one common degree, and
/// satisfy `ad(l_j)(u_i) = ad(l_i)(u_j)`. An inconsistent system is
/// reported as [`Error::Anomaly`] with the full linear system attached.
pub fn ad_preimage(u: &[Element]) -> Result<Preimage> {
    let n = u.len();
    if n < 2 {
        return Err(Error::InvalidArgument("ad_preimage needs n >= 2".into()));
    }
    require_ambient(n, u)?;
    if let Some(x) = u.iter().find(|x| !x.in_i()) {
        return Err(Error::NotInSubalgebra {
            subalgebra: "I_n",
            detail: x.to_string(),
        });
    }
    let mut degree = None;
    for x in u {
        if x.is_zero() {
            continue;
        }
        let d = match (x.is_homogeneous(), x.degree()) {
            (true, Some(d)) => d,
            _ => {
                return Err(Error::InvalidArgument(format!("{x} is not homogeneous")));
            }
        };
        if degree.is_some_and(|t| t != d) {
            return Err(Error::InvalidArgument("images have different degrees".into()));
        }
        degree = Some(d);
    }
    let ads: Vec<DerivationData> = (1..=n).map(|i| ad_l(n, i)).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = ads[j - 1].apply(&u[i - 1])?;
            let rhs = ads[i - 1].apply(&u[j - 1])?;
            if lhs != rhs {
                return Err(Error::Incompatible { i, j });
            }
        }
    }
    let Some(t) = degree else {
        return Ok(Preimage {
            g: Element::zero(n),
            kernel_dim: None,
        });
    };
    // ad(l_i) raises the degree of I_n elements by one
    if t < 2 {
        return Err(anomaly(
            format!("no element of I_n has degree {} below the images", t as i64 - 1),
            RationalMatrix::zeros(0, 0),
            Vec::new(),
            Vec::new(),
        ));
    }
    let from = slice(n, t as u32 - 1);
    let to = slice(n, t as u32);
    let positions = from.ideal_positions();
    let blocks = ads
        .iter()
        .map(|d| operator_matrix_on(|g| d.apply(g), &from, &positions, &to))
        .collect::<Result<Vec<_>>>()?;
    let a = RationalMatrix::vstack(&blocks)?;
    let mut b = Vec::with_capacity(a.rows());
    for x in u {
        b.extend(to.coords(x)?);
    }
    match a.solve(&b)? {
        Solution::Solved { particular, kernel } => {
            let g = from.uncoords_on(&positions, &particular)?;
            for (d, x) in ads.iter().zip(u) {
                if d.apply(&g)? != *x {
                    return Err(anomaly(
                        "solver returned a vector that fails ad(l_i)(g) = u_i".into(),
                        a,
                        b,
                        Vec::new(),
                    ));
                }
            }
            Ok(Preimage {
                g,
                kernel_dim: Some(kernel.len()),
            })
        }
        Solution::Inconsistent { certificate } => Err(anomaly(
            "compatible images admit no preimage in I_n".into(),
            a,
            b,
            certificate,
        )),
    }
}

fn anomaly(message: String, matrix: RationalMatrix, rhs: Vec<Scalar>, certificate: Vec<Scalar>) -> Error {
    Error::Anomaly(Box::new(AnomalyReport {
        message,
        matrix,
        rhs,
        certificate,
    }))
}

/// A basis of the homogeneous `g ∈ I_n` of degree `d` with
/// `-ad(l_i)(g) = r_i g + g r_i`. Each member is checked to have leading
/// coefficient in the span of `r_i r_1, …, r_i r_n`; a member that fails is
/// reported as an anomaly.
pub fn twisted_kernel(n: usize, i: usize, d: u32) -> Result<Vec<Element>> {
    crate::word::Generator::l(i).check(n)?;
    let from = slice(n, d);
    let to = slice(n, d + 1);
    let positions = from.ideal_positions();
    let ad = ad_l(n, i);
    let ri = Element::r(n, i)?;
    let op = |g: &Element| -> Result<Element> {
        let lhs = -ad.apply(g)?;
        Ok(&(&lhs - &(&ri * g)) - &(g * &ri))
    };
    let a = operator_matrix_on(op, &from, &positions, &to)?;
    let mut out = Vec::new();
    for v in a.kernel() {
        let g = from.uncoords_on(&positions, &v)?;
        if !op(&g)?.is_zero() {
            return Err(anomaly("kernel vector fails the condition".into(), a, Vec::new(), v));
        }
        let (_, lc) = g.lm_lc();
        let in_span = lc.terms().all(|(w, _)| {
            w.lpart.is_one() && w.rpart.len() == 2 && w.rpart.letters()[0] as usize == i
        });
        if !in_span {
            return Err(anomaly(
                format!("solution {g} has leading coefficient {lc} outside span{{r{i}*r_k}}"),
                a,
                Vec::new(),
                v,
            ));
        }
        out.push(g);
    }
    Ok(out)
}

/// `(u, v)` in `R_n` with `r_i^k r_j h = ad(l_i)(r_i u) + r_i r_j v`.
pub fn rfactor_decompose(k: u32, i: usize, j: usize, h: &Element) -> Result<(Element, Element)> {
    let n = h.ambient();
    crate::word::Generator::l(i).check(n)?;
    crate::word::Generator::l(j).check(n)?;
    if i == j {
        return Err(Error::InvalidArgument("rfactor_decompose needs i != j".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !h.in_r() {
        return Err(Error::NotInSubalgebra {
            subalgebra: "R_n",
            detail: h.to_string(),
        });
    }
    let ad = ad_l(n, i);
    let (ri, rj) = (Element::r(n, i)?, Element::r(n, j)?);
    let (u, v) = rfactor_rec(k, h, &ad, &ri, &rj)?;
    let lhs = &(&ri.pow(k) * &rj) * h;
    let rhs = &ad.apply(&(&ri * &u))? + &(&(&ri * &rj) * &v);
    if lhs != rhs {
        return Err(anomaly(
            format!("decomposition of r{i}^{k}*r{j}*({h}) does not reproduce it"),
            RationalMatrix::zeros(0, 0),
            Vec::new(),
            Vec::new(),
        ));
    }
    Ok((u, v))
}

// From ad(l_i)(r_i^{k-1} r_j h) = -(k-1) r_i^k r_j h + r_i^{k-1} r_j (ad(l_i)(h) - r_i h),
// recursing on h0 = ad(l_i)(h) - r_i h.
fn rfactor_rec(
    k: u32,
    h: &Element,
    ad: &DerivationData,
    ri: &Element,
    rj: &Element,
) -> Result<(Element, Element)> {
    let n = h.ambient();
    if k == 1 {
        return Ok((Element::zero(n), h.clone()));
    }
    let h0 = &ad.apply(h)? - &(ri * h);
    let (u1, v1) = rfactor_rec(k - 1, &h0, ad, ri, rj)?;
    let inv = scalar::one() / Scalar::from_integer((k - 1).into());
    let u = (&u1 - &(&(&ri.pow(k - 2) * rj) * h)).scale(&inv);
    Ok((u, v1.scale(&inv)))
}
