use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{MzvError, Result};
use crate::linear::{LinComb, Rational};
use crate::words::{z_decode, z_encode, Alphabet, Composition, Poly};

/// A word `z_{k1} ... z_{kn}` in letters indexed by all integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZWord(pub Vec<i64>);

impl Ord for ZWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ZWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for k in &self.0 {
            write!(f, "z{{{k}}}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPoly(pub LinComb<ZWord>);

impl ZPoly {
    pub fn word(parts: impl Into<Vec<i64>>) -> ZPoly {
        ZPoly(LinComb::monomial(ZWord(parts.into()), Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Reads a `{p,y}` polynomial blockwise.
    pub fn from_poly(poly: &Poly) -> Result<ZPoly> {
        let mut out = LinComb::new();
        for (w, c) in poly.terms() {
            out.add_term(ZWord(z_decode(w)?.0), c.clone());
        }
        Ok(ZPoly(out))
    }

    /// Encodes as `{p,y}` blocks; only nonnegative indices are representable.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut out = Poly::zero(Alphabet::PY);
        for (w, c) in &self.0 {
            out.add_term(
                z_encode(&Composition(w.0.clone()), Alphabet::PY)?,
                c.clone(),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if w.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs} {w}")?;
            }
        }
        Ok(())
    }
}

fn append(comb: &LinComb<ZWord>, tail: &[i64]) -> LinComb<ZWord> {
    comb.map_keys(|w| {
        let mut parts = w.0.clone();
        parts.extend_from_slice(tail);
        ZWord(parts)
    })
}

/// `∗_OOZ` through its right recursion on integer-indexed letters, with the
/// boundary corrections carried by the indicator of an empty remainder.
pub fn ooz_explicit_words(a: &[i64], b: &[i64]) -> LinComb<ZWord> {
    let (la, lb) = (a.len(), b.len());
    let cols = lb + 1;
    let mut g: Vec<LinComb<ZWord>> = vec![LinComb::new(); (la + 1) * cols];
    let one = Rational::one();
    for j in 0..=lb {
        g[j] = LinComb::monomial(ZWord(b[..j].to_vec()), one.clone());
    }
    for i in 1..=la {
        g[i * cols] = LinComb::monomial(ZWord(a[..i].to_vec()), one.clone());
    }
    let minus = -one.clone();
    for i in 1..=la {
        for j in 1..=lb {
            let (m, n) = (a[i - 1], b[j - 1]);
            let (u, v) = (&a[..i - 1], &b[..j - 1]);
            let (u_empty, v_empty) = (i == 1, j == 1);
            let mut cell = append(&g[(i - 1) * cols + j], &[m]);
            cell.add_assign(&append(&g[i * cols + j - 1], &[n]));
            cell.add_assign(&append(&g[(i - 1) * cols + j - 1], &[n + m]));
            let word = |head: &[i64], tail: &[i64]| {
                let mut parts = head.to_vec();
                parts.extend_from_slice(tail);
                ZWord(parts)
            };
            if v_empty {
                cell.add_term(word(u, &[m, n - 1]), minus.clone());
                cell.add_term(word(u, &[n + m - 1]), minus.clone());
            }
            if u_empty {
                cell.add_term(word(v, &[n, m - 1]), minus.clone());
                cell.add_term(word(v, &[n + m - 1]), minus.clone());
            }
            if u_empty && v_empty {
                cell.add_term(ZWord(vec![n + m - 1]), one.clone());
            }
            g[i * cols + j] = cell;
        }
    }
    g.pop().expect("table is nonempty")
}

pub fn ooz_explicit(u: &ZPoly, v: &ZPoly) -> ZPoly {
    let mut out = LinComb::new();
    for (x, cx) in &u.0 {
        for (y, cy) in &v.0 {
            out.add_scaled(&ooz_explicit_words(&x.0, &y.0), &(cx * cy));
        }
    }
    ZPoly(out)
}

pub(crate) fn require_nonnegative(poly: &ZPoly) -> Result<()> {
    match poly
        .0
        .keys()
        .flat_map(|w| w.0.iter().copied())
        .find(|&k| k < 0)
    {
        Some(k) => Err(MzvError::Encoding {
            part: k,
            alphabet: Alphabet::PY,
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;

    #[test]
    fn explicit_single_letters() {
        let out = ooz_explicit(&ZPoly::word([1]), &ZPoly::word([1]));
        assert_eq!(out.to_string(), "-z{1} + z{2} - 2 z{1}z{0} + 2 z{1}z{1}");
        let unit = ooz_explicit(&ZPoly::word([]), &ZPoly::word([3, -1]));
        assert_eq!(unit, ZPoly::word([3, -1]));
    }

    #[test]
    fn negative_indices_stay_in_the_letter_algebra() {
        let out = ooz_explicit(&ZPoly::word([-1]), &ZPoly::word([2]));
        assert!(require_nonnegative(&out).is_err());
        assert_eq!(out.0.coeff(&ZWord(vec![1])), rational(1));
    }
}
