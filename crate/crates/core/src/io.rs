//! JSON encodings for complexes and shelling certificates.

use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::complex::{Coloring, Complex, ComplexError};
use crate::vertex::{Face, ParseVertexError, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Vertex(#[from] ParseVertexError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("certificate has {order} facets but {restrictions} restriction faces")]
    LengthMismatch { order: usize, restrictions: usize },
}

struct ColoringOut<'a>(&'a Coloring);

impl Serialize for ColoringOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, c) in self.0.iter() {
            m.serialize_entry(&v.to_string(), &c)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct ComplexOut<'a> {
    facets: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<ColoringOut<'a>>,
}

#[derive(Deserialize)]
struct ComplexIn {
    facets: Vec<Vec<String>>,
    #[serde(default)]
    coloring: Option<BTreeMap<String, usize>>,
}

fn face_strings(f: &Face) -> Vec<String> {
    f.iter().map(Vertex::to_string).collect()
}

fn parse_face(raw: &[String]) -> Result<Face, ParseVertexError> {
    raw.iter().map(|s| s.parse()).collect()
}

/// Serialize a complex with an optional colouring; facets appear in canonical order.
pub fn complex_to_json(c: &Complex, kappa: Option<&Coloring>) -> String {
    let out = ComplexOut {
        facets: c.facets().iter().map(face_strings).collect(),
        coloring: kappa.map(ColoringOut),
    };
    serde_json::to_string(&out).expect("serializable")
}

pub fn complex_from_json(text: &str) -> Result<(Complex, Option<Coloring>), IoError> {
    let raw: ComplexIn = serde_json::from_str(text)?;
    let facets = raw
        .facets
        .iter()
        .map(|f| {
            let face = parse_face(f)?;
            if face.len() != f.len() {
                // Repeated vertex inside a facet.
                return Err(IoError::Complex(ComplexError::NotAntichain(face.clone(), face)));
            }
            Ok(face)
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let complex = Complex::from_facets(facets)?;
    let coloring = raw
        .coloring
        .map(|m| {
            m.into_iter()
                .map(|(k, c)| Ok((k.parse::<Vertex>()?, c)))
                .collect::<Result<Coloring, ParseVertexError>>()
        })
        .transpose()?;
    Ok((complex, coloring))
}

/// An ordered facet list with one restriction face per facet.
///
/// With `removal` set, `order` lists facets in the order they are taken away
/// from the ambient complex rather than the order they are added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingCertificate {
    pub order: Vec<Face>,
    pub restrictions: Vec<Face>,
    pub removal: bool,
}

#[derive(Serialize, Deserialize)]
struct CertificateRaw {
    order: Vec<Vec<String>>,
    #[serde(default)]
    restrictions: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    removal: bool,
}

impl ShellingCertificate {
    pub fn to_json(&self) -> String {
        let raw = CertificateRaw {
            order: self.order.iter().map(face_strings).collect(),
            restrictions: self.restrictions.iter().map(face_strings).collect(),
            removal: self.removal,
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let raw: CertificateRaw = serde_json::from_str(text)?;
        // an order may come without restriction faces
        if !raw.restrictions.is_empty() && raw.order.len() != raw.restrictions.len() {
            return Err(IoError::LengthMismatch {
                order: raw.order.len(),
                restrictions: raw.restrictions.len(),
            });
        }
        Ok(ShellingCertificate {
            order: raw.order.iter().map(|f| parse_face(f)).collect::<Result<_, _>>()?,
            restrictions: raw
                .restrictions
                .iter()
                .map(|f| parse_face(f))
                .collect::<Result<_, _>>()?,
            removal: raw.removal,
        })
    }

    /// Histogram of restriction sizes over `0..=len`.
    pub fn size_histogram(&self, len: usize) -> Vec<i64> {
        let mut h = vec![0i64; len];
        for r in &self.restrictions {
            if r.len() < len {
                h[r.len()] += 1;
            }
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Vertex::{Base, Sub};

    #[test]
    fn exact_layout() {
        let c = Complex::generated([Face::new([Base(0), Base(1), Sub(2)])]);
        let k: Coloring = [(Base(0), 0), (Base(1), 1), (Sub(2), 2)].into_iter().collect();
        assert_eq!(
            complex_to_json(&c, Some(&k)),
            r#"{"facets":[["0","1","v2"]],"coloring":{"0":0,"1":1,"v2":2}}"#
        );
        assert_eq!(complex_to_json(&c, None), r#"{"facets":[["0","1","v2"]]}"#);
    }

    #[test]
    fn round_trip() {
        let c = Complex::generated([
            Face::new([Base(0), Base(1)]),
            Face::new([Base(1), Sub(10)]),
        ]);
        let (back, k) = complex_from_json(&complex_to_json(&c, None)).unwrap();
        assert_eq!(back, c);
        assert!(k.is_none());
    }

    #[test]
    fn rejects_non_antichain() {
        let text = r#"{"facets":[["0","1"],["0"]]}"#;
        assert!(matches!(
            complex_from_json(text),
            Err(IoError::Complex(ComplexError::NotAntichain(_, _)))
        ));
        let dup = r#"{"facets":[["0","1"],["1","0"]]}"#;
        assert!(complex_from_json(dup).is_err());
        let inner = r#"{"facets":[["0","0"]]}"#;
        assert!(complex_from_json(inner).is_err());
    }

    #[test]
    fn void_and_empty_differ() {
        let (e, _) = complex_from_json(r#"{"facets":[]}"#).unwrap();
        let (v, _) = complex_from_json(r#"{"facets":[[]]}"#).unwrap();
        assert!(e.is_empty());
        assert_eq!(v, Complex::void());
        assert_ne!(e, v);
    }
}
