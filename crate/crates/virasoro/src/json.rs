//! JSON vector schemas.
//!
//! Every number is an exact rational literal (`p` or `p/q`, lowest terms,
//! positive denominator); no floats appear anywhere.
//!
//! * polynomials: `[{"degree": 2, "coefficient": "3/4"}, ...]`, ascending
//!   degree;
//! * PBW vectors: `[{"partition": [[-1, 2], [-3, 1]], "coeff": "1/2"}, ...]`
//!   with partition entries by descending generator index, optionally
//!   wrapped as `{"family": "...", "terms": [...]}`;
//! * tensor vectors:
//!   `[{"partial_degree": 1, "factor_key": [[-1, 1]], "coeff": "2"}, ...]`.

use crate::error::VirasoroError;
use crate::linalg::FreeVec;
use crate::omega::Poly;
use crate::pbw::{PbwMonomial, PbwVector};
use crate::scalar::Scalar;
use crate::tensor::TensorVector;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyTerm {
    pub degree: u32,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PbwTerm {
    pub partition: Vec<(i64, u32)>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorTerm {
    pub partial_degree: u32,
    pub factor_key: Vec<(i64, u32)>,
    pub coeff: String,
}

/// A PBW vector document: either a bare term list or a tagged wrapper whose
/// header (family label, optional family index `n`, optional parameter
/// tuple) is validated against the module it is used with.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PbwVectorDoc {
    Tagged {
        family: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<Vec<String>>,
        terms: Vec<PbwTerm>,
    },
    Bare(Vec<PbwTerm>),
}

impl PbwVectorDoc {
    pub fn family(&self) -> Option<&str> {
        match self {
            PbwVectorDoc::Tagged { family, .. } => Some(family),
            PbwVectorDoc::Bare(_) => None,
        }
    }

    pub fn declared_n(&self) -> Option<u32> {
        match self {
            PbwVectorDoc::Tagged { n, .. } => *n,
            PbwVectorDoc::Bare(_) => None,
        }
    }

    pub fn terms(&self) -> &[PbwTerm] {
        match self {
            PbwVectorDoc::Tagged { terms, .. } => terms,
            PbwVectorDoc::Bare(terms) => terms,
        }
    }

    /// Check the declared family tag (and index, when present) against the
    /// module in use.
    pub fn check_family(&self, expected: &str, expected_n: Option<u32>) -> Result<(), VirasoroError> {
        if let Some(found) = self.family() {
            if found != expected {
                return Err(VirasoroError::FamilyMismatch {
                    expected: expected.to_string(),
                    found: found.to_string(),
                });
            }
        }
        if let (Some(declared), Some(expected_n)) = (self.declared_n(), expected_n) {
            if declared != expected_n {
                return Err(VirasoroError::FamilyMismatch {
                    expected: format!("{expected} (n = {expected_n})"),
                    found: format!("{expected} (n = {declared})"),
                });
            }
        }
        Ok(())
    }
}

fn parse<S: Scalar>(lit: &str) -> Result<S, VirasoroError> {
    S::parse_str(lit).map_err(|e| VirasoroError::Parse(e.to_string()))
}

pub fn poly_to_terms<S: Scalar>(p: &Poly<S>) -> Vec<PolyTerm> {
    p.iter()
        .map(|(d, c)| PolyTerm {
            degree: *d,
            coefficient: c.to_string(),
        })
        .collect()
}

pub fn poly_from_terms<S: Scalar>(terms: &[PolyTerm]) -> Result<Poly<S>, VirasoroError> {
    let mut p = Poly::zero();
    for t in terms {
        p.add_term(t.degree, parse(&t.coefficient)?);
    }
    Ok(p)
}

fn monomial_to_pairs(m: &PbwMonomial) -> Vec<(i64, u32)> {
    m.iter_desc().collect()
}

pub fn pbw_to_terms<S: Scalar>(v: &PbwVector<S>) -> Vec<PbwTerm> {
    v.iter()
        .map(|(m, c)| PbwTerm {
            partition: monomial_to_pairs(m),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn pbw_from_terms<S: Scalar>(terms: &[PbwTerm]) -> Result<PbwVector<S>, VirasoroError> {
    let mut v = PbwVector::zero();
    for t in terms {
        v.add_term(
            PbwMonomial::from_exponents(t.partition.iter().copied()),
            parse(&t.coeff)?,
        );
    }
    Ok(v)
}

pub fn tensor_to_terms<S: Scalar>(v: &TensorVector<S>) -> Vec<TensorTerm> {
    v.iter()
        .map(|((i, f), c)| TensorTerm {
            partial_degree: *i,
            factor_key: monomial_to_pairs(f),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn tensor_from_terms<S: Scalar>(terms: &[TensorTerm]) -> Result<TensorVector<S>, VirasoroError> {
    let mut v: TensorVector<S> = FreeVec::zero();
    for t in terms {
        v.add_term(
            (
                t.partial_degree,
                PbwMonomial::from_exponents(t.factor_key.iter().copied()),
            ),
            parse(&t.coeff)?,
        );
    }
    Ok(v)
}
