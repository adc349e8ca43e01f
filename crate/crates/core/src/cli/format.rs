use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::hopf::Tensor2;
use crate::linear::{parse_rational, rational_to_string};
use crate::words::{Alphabet, Letter, Poly, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub coeff: String,
    pub word: Vec<String>,
}

/// `{"alphabet": "h", "terms": [{"coeff": "2/1", "word": ["x0", "x1"]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub alphabet: String,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub coeff: String,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// `{"terms": [{"coeff": "1/1", "left": ["p"], "right": ["p", "y"]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub terms: Vec<TensorTermJson>,
}

fn letters(w: &Word) -> Vec<String> {
    w.letters().iter().map(|l| l.name().to_string()).collect()
}

pub fn alphabet_from_flag(flag: &str) -> Result<Alphabet> {
    match flag {
        "h" => Ok(Alphabet::H2),
        "H" => Ok(Alphabet::PY),
        "pdy" => Ok(Alphabet::PDY),
        _ => Err(MzvError::Usage(format!(
            "unknown alphabet `{flag}` (expected h, H or pdy)"
        ))),
    }
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    PolyJson {
        alphabet: p.alphabet().flag().to_string(),
        terms: p
            .terms()
            .map(|(w, c)| PolyTermJson {
                coeff: rational_to_string(c),
                word: letters(w),
            })
            .collect(),
    }
}

pub fn poly_from_json(json: &PolyJson) -> Result<Poly> {
    let alphabet = alphabet_from_flag(&json.alphabet)?;
    let mut out = Poly::zero(alphabet);
    for t in &json.terms {
        let c = parse_rational(&t.coeff).ok_or_else(|| MzvError::Parse {
            pos: 0,
            expected: "rational num/den".into(),
            found: t.coeff.clone(),
        })?;
        let ls = t
            .word
            .iter()
            .map(|s| {
                Letter::from_name(s).ok_or_else(|| MzvError::InvalidLetter {
                    letter: s.clone(),
                    alphabet,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.add_term(Word::new(alphabet, ls)?, c);
    }
    Ok(out)
}

pub fn tensor_to_json(t: &Tensor2) -> TensorJson {
    TensorJson {
        terms: t
            .terms()
            .map(|(l, r, c)| TensorTermJson {
                coeff: rational_to_string(c),
                left: letters(l),
                right: letters(r),
            })
            .collect(),
    }
}
