//! JSON documents for polynomials and affine-form collections.
//!
//! ```json
//! {"field": "rational", "nvars": 2,
//!  "terms": [{"exps": [1, 0], "coeff": "-2"}, {"exps": [2, 0], "coeff": "3"}]}
//! ```
//!
//! Terms are written in ascending graded-lex order with normalized
//! coefficients (lowest terms, representatives in `[0, p)` for `gf:<p>`).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::monomial::ExponentVector;
use crate::poly::{AffineForm, SparsePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub field: FieldDescriptor,
    pub nvars: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormsFile {
    pub field: FieldDescriptor,
    pub nvars: usize,
    pub forms: Vec<Vec<TermRecord>>,
}

fn records<F: Field>(p: &SparsePolynomial<F>) -> Vec<TermRecord> {
    p.terms()
        .map(|(e, c)| TermRecord {
            exps: e.exps().to_vec(),
            coeff: p.field().format(c),
        })
        .collect()
}

fn check_field<F: Field>(declared: FieldDescriptor, field: &F) -> Result<()> {
    if declared != field.descriptor() {
        return Err(Error::FieldMismatch {
            left: declared,
            right: field.descriptor(),
        });
    }
    Ok(())
}

fn parse_terms<F: Field>(
    field: &F,
    nvars: usize,
    terms: &[TermRecord],
) -> Result<SparsePolynomial<F>> {
    if nvars == 0 {
        return Err(Error::Parse("nvars must be at least 1".into()));
    }
    let mut seen = BTreeSet::new();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != nvars {
            return Err(Error::Parse(format!(
                "term {:?} has {} exponents, expected {nvars}",
                t.exps,
                t.exps.len()
            )));
        }
        let e = ExponentVector::from(t.exps.clone());
        if !seen.insert(e.clone()) {
            return Err(Error::Parse(format!("duplicate term {:?}", t.exps)));
        }
        parsed.push((e, field.parse(&t.coeff)?));
    }
    SparsePolynomial::from_terms(field.clone(), nvars, parsed)
}

impl PolynomialFile {
    pub fn from_polynomial<F: Field>(p: &SparsePolynomial<F>) -> Self {
        PolynomialFile {
            field: p.field().descriptor(),
            nvars: p.nvars(),
            terms: records(p),
        }
    }

    /// Parse the terms over `field`, which must match the declared field.
    pub fn to_polynomial<F: Field>(&self, field: &F) -> Result<SparsePolynomial<F>> {
        check_field(self.field, field)?;
        parse_terms(field, self.nvars, &self.terms)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial file serializes")
    }
}

impl FormsFile {
    pub fn from_forms<F: Field>(field: &F, nvars: usize, forms: &[AffineForm<F>]) -> Self {
        FormsFile {
            field: field.descriptor(),
            nvars,
            forms: forms.iter().map(|f| records(&f.to_polynomial())).collect(),
        }
    }

    pub fn to_forms<F: Field>(&self, field: &F) -> Result<Vec<AffineForm<F>>> {
        check_field(self.field, field)?;
        self.forms
            .iter()
            .map(|terms| {
                let p = parse_terms(field, self.nvars, terms)?;
                if p.degree().unwrap_or(0) > 1 {
                    return Err(Error::Parse(format!("form `{p}` is not affine")));
                }
                let mut coefficients = vec![field.zero(); self.nvars];
                for (i, c) in coefficients.iter_mut().enumerate() {
                    *c = p.coeff(&ExponentVector::unit(self.nvars, i));
                }
                AffineForm::new(
                    field.clone(),
                    coefficients,
                    p.coeff(&ExponentVector::zero(self.nvars)),
                )
            })
            .collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("forms file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn writes_sorted_normalized_terms() {
        let q = Rationals;
        let p = SparsePolynomial::from_terms(
            q,
            2,
            vec![
                (ExponentVector::from(vec![2, 0]), q.parse("6/4").unwrap()),
                (ExponentVector::from(vec![0, 0]), q.parse("-1").unwrap()),
            ],
        )
        .unwrap();
        let file = PolynomialFile::from_polynomial(&p);
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(
            json,
            r#"{"field":"rational","nvars":2,"terms":[{"exps":[0,0],"coeff":"-1"},{"exps":[2,0],"coeff":"3/2"}]}"#
        );
    }

    #[test]
    fn rejects_malformed_documents() {
        let q = Rationals;
        let bad_len = r#"{"field":"rational","nvars":2,"terms":[{"exps":[1],"coeff":"1"}]}"#;
        assert!(PolynomialFile::from_json(bad_len).unwrap().to_polynomial(&q).is_err());
        let dup = r#"{"field":"rational","nvars":1,"terms":[{"exps":[1],"coeff":"1"},{"exps":[1],"coeff":"2"}]}"#;
        assert!(PolynomialFile::from_json(dup).unwrap().to_polynomial(&q).is_err());
        let bad_field = r#"{"field":"gf:6","nvars":1,"terms":[]}"#;
        assert!(PolynomialFile::from_json(bad_field).is_err());
        let extra = r#"{"field":"rational","nvars":1,"terms":[],"x":1}"#;
        assert!(PolynomialFile::from_json(extra).is_err());
        let wrong = r#"{"field":"gf:5","nvars":1,"terms":[]}"#;
        assert!(PolynomialFile::from_json(wrong).unwrap().to_polynomial(&q).is_err());
    }

    #[test]
    fn forms_must_be_affine() {
        let q = Rationals;
        let json = r#"{"field":"rational","nvars":2,"forms":[[{"exps":[1,1],"coeff":"1"}]]}"#;
        assert!(FormsFile::from_json(json).unwrap().to_forms(&q).is_err());
        let forms = vec![AffineForm::sum_minus_one(q, 2)];
        let back = FormsFile::from_forms(&q, 2, &forms).to_forms(&q).unwrap();
        assert_eq!(back, forms);
    }

    proptest! {
        #[test]
        fn gf_polynomials_survive_json(
            terms in proptest::collection::vec((proptest::collection::vec(0u32..5, 3), 0u64..7), 0..12)
        ) {
            let g = PrimeField::new(7).unwrap();
            let p = SparsePolynomial::from_terms(
                g, 3, terms.into_iter().map(|(e, c)| (ExponentVector::from(e), c))).unwrap();
            let text = PolynomialFile::from_polynomial(&p).to_json();
            let back = PolynomialFile::from_json(&text).unwrap().to_polynomial(&g).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
