//! JSON form of presentations: rationals are `[num, den]` integer pairs and
//! omitted table entries are zero.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bialg::{CoTerm, Presentation, PresentationBuilder};
use crate::error::{Error, Result};
use crate::exactq::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub p: usize,
    pub q: usize,
    pub i: usize,
    pub j: usize,
    /// `[num, den, idx]`
    pub result: Vec<[i64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductEntry {
    pub n: usize,
    pub i: usize,
    /// `[num, den, p, left index, right index]`
    pub terms: Vec<[i64; 5]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub name: String,
    #[serde(rename = "N")]
    pub max_degree: usize,
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub product: Vec<ProductEntry>,
    #[serde(default)]
    pub coproduct: Vec<CoproductEntry>,
}

fn rational(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Format("zero denominator".into()));
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

fn index(x: i64, what: &str) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Format(format!("negative {what} {x}")))
}

fn pair(c: &Rational) -> Result<(i64, i64)> {
    match (c.numer().to_i64(), c.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Format(format!("coefficient {c} does not fit in 64 bits"))),
    }
}

impl PresentationFile {
    pub fn from_presentation(h: &Presentation) -> Result<Self> {
        let n_max = h.max_degree();
        let mut product = Vec::new();
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                for i in 0..h.dim(p) {
                    for j in 0..h.dim(q) {
                        let terms = h.product_terms(p, i, q, j);
                        if terms.is_empty() {
                            continue;
                        }
                        let result = terms
                            .iter()
                            .map(|(k, c)| pair(c).map(|(a, b)| [a, b, *k as i64]))
                            .collect::<Result<_>>()?;
                        product.push(ProductEntry { p, q, i, j, result });
                    }
                }
            }
        }
        let mut coproduct = Vec::new();
        for n in 0..=n_max {
            for i in 0..h.dim(n) {
                let terms = h.coproduct_terms(n, i);
                if terms.is_empty() {
                    continue;
                }
                let terms = terms
                    .iter()
                    .map(|t| {
                        pair(&t.coeff).map(|(a, b)| {
                            [a, b, t.left_degree as i64, t.left as i64, t.right as i64]
                        })
                    })
                    .collect::<Result<_>>()?;
                coproduct.push(CoproductEntry { n, i, terms });
            }
        }
        Ok(PresentationFile {
            name: h.name().to_string(),
            max_degree: n_max,
            basis: h.basis_labels().to_vec(),
            product,
            coproduct,
        })
    }

    /// Validates every index and builds the presentation.
    pub fn into_presentation(self) -> Result<Presentation> {
        if self.basis.len() != self.max_degree + 1 {
            return Err(Error::Format(format!(
                "basis lists {} degrees but N = {}",
                self.basis.len(),
                self.max_degree
            )));
        }
        if self.max_degree == 0 {
            return Err(Error::Format("N must be at least 1".into()));
        }
        let mut b = PresentationBuilder::new(self.name, self.basis)?;
        let mut seen = BTreeSet::new();
        for e in self.product {
            if !seen.insert((e.p, e.q, e.i, e.j)) {
                return Err(Error::Format(format!(
                    "duplicate product entry p={} q={} i={} j={}",
                    e.p, e.q, e.i, e.j
                )));
            }
            let terms = e
                .result
                .iter()
                .map(|[num, den, k]| Ok((index(*k, "result index")?, rational(*num, *den)?)))
                .collect::<Result<Vec<_>>>()?;
            b.set_product(e.p, e.i, e.q, e.j, terms)?;
        }
        let mut seen = BTreeSet::new();
        for e in self.coproduct {
            if !seen.insert((e.n, e.i)) {
                return Err(Error::Format(format!("duplicate coproduct entry n={} i={}", e.n, e.i)));
            }
            let terms = e
                .terms
                .iter()
                .map(|[num, den, p, l, r]| {
                    Ok(CoTerm::new(
                        index(*p, "left degree")?,
                        index(*l, "left index")?,
                        index(*r, "right index")?,
                        rational(*num, *den)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            b.set_coproduct(e.n, e.i, terms)?;
        }
        b.build()
    }
}

pub fn from_json(text: &str) -> Result<Presentation> {
    let file: PresentationFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_presentation()
}

/// Indented JSON for files meant to be read.
pub fn to_json(h: &Presentation) -> Result<String> {
    let file = PresentationFile::from_presentation(h)?;
    serde_json::to_string_pretty(&file).map_err(|e| Error::Format(e.to_string()))
}

/// Compact JSON of the normalized tables; equal presentations give equal bytes.
pub fn to_canonical_json(h: &Presentation) -> Result<String> {
    let file = PresentationFile::from_presentation(h)?;
    serde_json::to_string(&file).map_err(|e| Error::Format(e.to_string()))
}

/// Hex SHA-256 of [`to_canonical_json`].
pub fn content_hash(h: &Presentation) -> Result<String> {
    let bytes = to_canonical_json(h)?;
    Ok(hex::encode(Sha256::digest(bytes.as_bytes())))
}

/// `num/den` as written in JSON; used for subspace bases in caches.
pub fn rational_pair(c: &Rational) -> Result<(i64, i64)> {
    pair(c)
}

pub fn rational_from_pair(num: i64, den: i64) -> Result<Rational> {
    rational(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{fqsym_model, nsym_model, tensor_model};

    #[test]
    fn round_trip_models() {
        for h in [tensor_model(2, 3).unwrap(), nsym_model(4).unwrap(), fqsym_model(3).unwrap()] {
            let back = from_json(&to_json(&h).unwrap()).unwrap();
            assert_eq!(back, h);
            assert_eq!(content_hash(&back).unwrap(), content_hash(&h).unwrap());
        }
    }

    #[test]
    fn hash_ignores_layout_of_input() {
        let h = nsym_model(3).unwrap();
        let compact = to_canonical_json(&h).unwrap();
        let pretty = to_json(&h).unwrap();
        assert_ne!(compact, pretty);
        assert_eq!(
            content_hash(&from_json(&compact).unwrap()).unwrap(),
            content_hash(&from_json(&pretty).unwrap()).unwrap()
        );
        assert_ne!(content_hash(&h).unwrap(), content_hash(&nsym_model(4).unwrap()).unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(from_json("{"), Err(Error::Format(_))));
        let disconnected = r#"{"name":"x","N":1,"basis":[["1","u"],["a"]]}"#;
        assert!(matches!(from_json(disconnected), Err(Error::NotConnected(2))));
        let short = r#"{"name":"x","N":2,"basis":[["1"],["a"]]}"#;
        assert!(matches!(from_json(short), Err(Error::Format(_))));
        let zero_den = r#"{"name":"x","N":1,"basis":[["1"],["a"]],
            "product":[{"p":0,"q":0,"i":0,"j":0,"result":[[1,0,0]]}]}"#;
        assert!(matches!(from_json(zero_den), Err(Error::Format(_))));
        let bad_index = r#"{"name":"x","N":1,"basis":[["1"],["a"]],
            "product":[{"p":0,"q":1,"i":0,"j":0,"result":[[1,1,3]]}]}"#;
        assert!(from_json(bad_index).is_err());
        let dup = r#"{"name":"x","N":1,"basis":[["1"],["a"]],
            "product":[{"p":0,"q":0,"i":0,"j":0,"result":[[1,1,0]]},
                       {"p":0,"q":0,"i":0,"j":0,"result":[[1,1,0]]}]}"#;
        assert!(matches!(from_json(dup), Err(Error::Format(_))));
    }
}
