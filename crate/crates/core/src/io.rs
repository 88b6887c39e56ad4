//! JSON interchange for polynomials:
//! `{"K":3,"n":4,"d":3,"terms":[{"alpha":[2,1,0,0],"re":1.0,"im":-0.5}]}`.
//!
//! Terms are written in lexicographic order of `alpha`. Floats use the
//! shortest round-tripping representation, so `from_json(to_json(f)) == f`
//! bit for bit.

use std::collections::BTreeSet;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, Poly};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    #[serde(rename = "K")]
    pub modulus: u32,
    pub n: usize,
    pub d: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

impl From<&Poly> for PolyDoc {
    fn from(f: &Poly) -> Self {
        PolyDoc {
            modulus: f.modulus(),
            n: f.n(),
            d: f.degree(),
            terms: f.terms().map(|(a, c)| TermDoc { alpha: a.entries().to_vec(), re: c.re, im: c.im }).collect(),
        }
    }
}

impl TryFrom<PolyDoc> for Poly {
    type Error = Error;

    fn try_from(doc: PolyDoc) -> Result<Poly> {
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(doc.terms.len());
        for (i, t) in doc.terms.into_iter().enumerate() {
            if t.alpha.len() != doc.n {
                return Err(Error::Parse(format!("terms[{i}].alpha: {} entries, n = {}", t.alpha.len(), doc.n)));
            }
            if let Some(j) = t.alpha.iter().position(|&a| a >= doc.modulus) {
                return Err(Error::Parse(format!(
                    "terms[{i}].alpha[{j}] = {} is not below K = {}",
                    t.alpha[j], doc.modulus
                )));
            }
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(Error::Parse(format!("terms[{i}]: non-finite coefficient")));
            }
            let alpha = MultiIndex::new(t.alpha);
            if alpha.degree() as usize > doc.d {
                return Err(Error::Parse(format!("terms[{i}].alpha has degree {} > d = {}", alpha.degree(), doc.d)));
            }
            if !seen.insert(alpha.clone()) {
                return Err(Error::Parse(format!("terms[{i}].alpha = {alpha} repeats an earlier term")));
            }
            terms.push((alpha, Complex64::new(t.re, t.im)));
        }
        Poly::from_terms(doc.n, doc.modulus, terms).map_err(|e| Error::Parse(format!("K: {e}")))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PolyDoc::deserialize(d)?;
        Poly::try_from(doc).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(f: &Poly) -> Result<String> {
    if f.terms().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::Parse("cannot serialize a non-finite coefficient".into()));
    }
    serde_json::to_string(f).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a polynomial; errors name the line and column, or the offending term and field.
pub fn from_json(text: &str) -> Result<Poly> {
    let doc: PolyDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Poly::try_from(doc)
}

pub fn read_poly(path: &Path) -> Result<Poly> {
    let text = std::fs::read_to_string(path)?;
    from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_poly(path: &Path, f: &Poly) -> Result<()> {
    std::fs::write(path, to_json(f)?)?;
    Ok(())
}
