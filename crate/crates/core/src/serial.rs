//! JSON-friendly representations. Coefficients are strings `"p/q"` so that
//! no precision is lost.
//!
//! ```text
//! element: {"n": 2, "terms": [{"l": [1, 0], "r": [1, 2], "c": "-3/2"}]}
//! map:     {"n": 2, "kind": "derivation", "l_images": [...], "r_images": [...], "verified": true}
//! matrix:  {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1/2"]]}
//! ```
//!
//! A map that claims `verified: true` is checked again on the way in.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::Element;
use crate::error::Error;
use crate::maps::{DerivationData, EndomorphismData};
use crate::scalar::{format_scalar, parse_scalar, serde_str, Scalar};
use crate::solver::{AnomalyReport, RationalMatrix};
use crate::word::{BasisWord, LMonomial, RWord};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    l: Vec<u32>,
    r: Vec<u32>,
    #[serde(with = "serde_str")]
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.ambient(),
            terms: self
                .terms()
                .map(|(w, c)| TermRepr {
                    l: w.lpart.exponents().to_vec(),
                    r: w.rpart.letters().to_vec(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        if repr.n == 0 {
            return Err(D::Error::custom(Error::ZeroAmbient));
        }
        let terms = repr.terms.into_iter().map(|t| {
            (
                BasisWord::new(LMonomial::from_exponents(t.l), RWord::from_letters(t.r)),
                t.c,
            )
        });
        Element::from_terms(repr.n, terms).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Derivation,
    Endomorphism,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    n: usize,
    kind: MapKind,
    l_images: Vec<Element>,
    r_images: Vec<Element>,
    verified: bool,
}

/// Reads only the `kind` field so callers can dispatch on it.
pub fn map_kind(value: &serde_json::Value) -> Option<MapKind> {
    serde_json::from_value(value.get("kind")?.clone()).ok()
}

impl Serialize for DerivationData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapRepr {
            n: self.ambient(),
            kind: MapKind::Derivation,
            l_images: self.l_images().to_vec(),
            r_images: self.r_images().to_vec(),
            verified: self.is_verified(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DerivationData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MapRepr::deserialize(d)?;
        if repr.kind != MapKind::Derivation {
            return Err(D::Error::custom("expected kind \"derivation\""));
        }
        let data = DerivationData::new(repr.n, repr.l_images, repr.r_images).map_err(D::Error::custom)?;
        if repr.verified {
            data.verify().map_err(D::Error::custom)
        } else {
            Ok(data)
        }
    }
}

impl Serialize for EndomorphismData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapRepr {
            n: self.ambient(),
            kind: MapKind::Endomorphism,
            l_images: self.l_images().to_vec(),
            r_images: self.r_images().to_vec(),
            verified: self.is_verified(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EndomorphismData {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MapRepr::deserialize(d)?;
        if repr.kind != MapKind::Endomorphism {
            return Err(D::Error::custom("expected kind \"endomorphism\""));
        }
        let data = EndomorphismData::new(repr.n, repr.l_images, repr.r_images).map_err(D::Error::custom)?;
        if repr.verified {
            data.verify().map_err(D::Error::custom)
        } else {
            Ok(data)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self
                .to_rows()
                .iter()
                .map(|row| row.iter().map(format_scalar).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom("entries do not match rows x cols"));
        }
        let mut m = RationalMatrix::zeros(repr.rows, repr.cols);
        for (i, row) in repr.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, parse_scalar(v).map_err(D::Error::custom)?);
            }
        }
        Ok(m)
    }
}

/// Column of scalars as strings.
pub fn scalars_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

#[derive(Serialize)]
struct SystemRepr<'a> {
    matrix: &'a RationalMatrix,
    rhs: Vec<String>,
}

#[derive(Serialize)]
struct AnomalyRepr<'a> {
    anomaly: &'a str,
    system: SystemRepr<'a>,
    certificate: Vec<String>,
}

impl Serialize for AnomalyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AnomalyRepr {
            anomaly: &self.message,
            system: SystemRepr {
                matrix: &self.matrix,
                rhs: scalars_to_strings(&self.rhs),
            },
            certificate: scalars_to_strings(&self.certificate),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn element_round_trip() {
        let r1 = Element::r(2, 1).unwrap();
        let l2 = Element::l(2, 2).unwrap();
        let g = &(&r1 * &l2).scale(&ratio(-3, 2)) + &Element::one(2);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"{"n":2,"terms":[{"l":[0,1],"r":[1],"c":"-3/2"},{"l":[0,0],"r":[1,2],"c":"-3/2"},{"l":[0,0],"r":[],"c":"1"}]}"#
        );
        let back: Element = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Element>(r#"{"n":2,"terms":[{"l":[1],"r":[],"c":"1"}]}"#).is_err());
        assert!(serde_json::from_str::<Element>(r#"{"n":1,"terms":[{"l":[0],"r":[2],"c":"1"}]}"#).is_err());
        assert!(serde_json::from_str::<Element>(r#"{"n":1,"terms":[{"l":[0],"r":[],"c":"0.5"}]}"#).is_err());
    }

    #[test]
    fn map_round_trip_and_recheck() {
        let d = DerivationData::ad(&Element::l(2, 1).unwrap());
        let text = serde_json::to_string(&d).unwrap();
        let back: DerivationData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<EndomorphismData>(&text).is_err());

        let bad = DerivationData::new(
            2,
            vec![Element::r(2, 1).unwrap(), Element::zero(2)],
            vec![Element::zero(2), Element::zero(2)],
        )
        .unwrap();
        let mut v = serde_json::to_value(&bad).unwrap();
        assert_eq!(v["verified"], false);
        assert!(serde_json::from_value::<DerivationData>(v.clone()).is_ok());
        v["verified"] = true.into();
        assert!(serde_json::from_value::<DerivationData>(v).is_err());

        let e = EndomorphismData::identity(2);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(map_kind(&v), Some(MapKind::Endomorphism));
        assert_eq!(serde_json::from_value::<EndomorphismData>(v).unwrap(), e);
    }

    #[test]
    fn matrix_round_trip() {
        let m = RationalMatrix::from_rows(vec![vec![ratio(1, 2), ratio(0, 1)], vec![ratio(-3, 1), ratio(7, 9)]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":2,"cols":2,"entries":[["1/2","0"],["-3","7/9"]]}"#);
        assert_eq!(serde_json::from_str::<RationalMatrix>(&text).unwrap(), m);
    }
}
