use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::linear::{parse_rational, rational_to_string, Rational};

/// A power series in `q` known exactly through `q^order`.
#[derive(Debug, Clone, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

/// Wire format: `{"order": N, "coeffs": ["c0", ..., "cN"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolyJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl QPoly {
    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Result<QPoly> {
        if order < 1 {
            return Err(MzvError::Order(order));
        }
        let mut c: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, Rational::zero());
        Ok(QPoly { coeffs: c })
    }

    pub fn zero(order: usize) -> Result<QPoly> {
        QPoly::new(order, [])
    }

    pub fn one(order: usize) -> Result<QPoly> {
        QPoly::new(order, [Rational::one()])
    }

    pub fn from_integers(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Result<QPoly> {
        QPoly::new(order, coeffs.into_iter().map(Rational::from_integer))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncated(&self, order: usize) -> QPoly {
        QPoly {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scaled(&self, s: &Rational) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &QPoly, s: &Rational) {
        self.coeffs.truncate(other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
    }

    /// Value of the truncated polynomial at a real point.
    pub fn evaluate(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_json(&self) -> QPolyJson {
        QPolyJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
    }

    pub fn from_json(json: &QPolyJson) -> Result<QPoly> {
        let coeffs = json
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_rational(s).ok_or_else(|| MzvError::Parse {
                    pos: i,
                    expected: "rational num/den".into(),
                    found: s.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        QPoly::new(json.order, coeffs)
    }
}

/// Equality up to the smaller of the two orders.
impl PartialEq for QPoly {
    fn eq(&self, other: &QPoly) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly { coeffs }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;

    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let abs = c.abs();
            let scalar = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{} ", abs.numer(), abs.denom())
            };
            match i {
                0 => f.write_str(scalar.trim_end())?,
                _ => {
                    if !abs.is_one() {
                        f.write_str(&scalar)?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
