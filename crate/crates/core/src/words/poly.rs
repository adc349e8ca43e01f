use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::{z_decode, Alphabet, Letter, Subspace, Word};
use crate::error::Result;
use crate::linear::{LinComb, Rational};

/// A finite rational linear combination of words over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    alphabet: Alphabet,
    comb: LinComb<Word>,
}

impl Poly {
    pub fn zero(alphabet: Alphabet) -> Poly {
        Poly {
            alphabet,
            comb: LinComb::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Poly {
        Poly::word(Word::unit(alphabet))
    }

    pub fn word(word: Word) -> Poly {
        Poly::monomial(word, Rational::one())
    }

    pub fn monomial(word: Word, coeff: Rational) -> Poly {
        Poly {
            alphabet: word.alphabet(),
            comb: LinComb::monomial(word, coeff),
        }
    }

    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Poly {
        let comb: LinComb<Word> = terms.into_iter().collect();
        debug_assert!(comb.keys().all(|w| w.alphabet() == alphabet));
        Poly { alphabet, comb }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn comb(&self) -> &LinComb<Word> {
        &self.comb
    }

    pub fn is_zero(&self) -> bool {
        self.comb.is_zero()
    }

    pub fn len(&self) -> usize {
        self.comb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comb.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.comb.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.comb.keys()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.comb.coeff(word)
    }

    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        debug_assert_eq!(word.alphabet(), self.alphabet);
        self.comb.add_term(word, coeff);
    }

    pub fn add_scaled(&mut self, other: &Poly, scale: &Rational) {
        self.adopt(other);
        self.comb.add_scaled(&other.comb, scale);
    }

    pub fn scaled(&self, scale: &Rational) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.scaled(scale),
        }
    }

    pub fn negated(&self) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.negated(),
        }
    }

    pub fn filter(&self, keep: impl FnMut(&Word) -> bool) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.filter(keep),
        }
    }

    /// Linear extension of a word-level map into `target`.
    pub fn linear(
        &self,
        target: Alphabet,
        mut f: impl FnMut(&Word) -> Result<Poly>,
    ) -> Result<Poly> {
        let mut out = Poly::zero(target);
        for (w, c) in self.terms() {
            let image = f(w)?;
            out.add_scaled(&image, c);
        }
        Ok(out)
    }

    /// Concatenation product.
    pub fn concat(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.alphabet);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    pub fn prefixed(&self, letter: Letter) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|w| w.prefixed(letter)),
        }
    }

    pub fn concat_word(&self, word: &Word) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|w| w.concat(word)),
        }
    }

    pub fn word_concat(&self, word: &Word) -> Poly {
        Poly {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|w| word.concat(w)),
        }
    }

    pub fn all_in(&self, space: Subspace) -> bool {
        space.alphabet() == self.alphabet && self.words().all(|w| w.in_space(space))
    }

    /// Largest weight occurring, if any.
    pub fn top_weight(&self) -> Option<i64> {
        self.words().map(Word::weight).max()
    }

    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut weights = self.words().map(Word::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Renders z-decodable words as `z{k}` products; other words fall back
    /// to letters.
    pub fn display_z(&self) -> String {
        self.render(|w| z_form(w).unwrap_or_else(|| w.to_string()))
    }

    fn render(&self, word: impl Fn(&Word) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = if w.is_empty() {
                scalar(&abs)
            } else if abs.is_one() {
                word(w)
            } else {
                format!("{} {}", scalar(&abs), word(w))
            };
            out.push_str(&body);
        }
        out
    }

    fn adopt(&mut self, other: &Poly) {
        if self.comb.is_zero() && self.alphabet != other.alphabet {
            self.alphabet = other.alphabet;
        }
        debug_assert!(
            other.is_zero() || self.alphabet == other.alphabet,
            "alphabet mismatch"
        );
    }
}

fn scalar(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `z{k1}z{k2}...` for z-decodable words, `1` for the unit.
pub(crate) fn z_form(word: &Word) -> Option<String> {
    if word.is_empty() {
        return Some("1".into());
    }
    let comp = z_decode(word).ok()?;
    Some(comp.parts().iter().map(|k| format!("z{{{k}}}")).collect())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|w| w.to_string()))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.adopt(rhs);
        out.comb.add_assign(&rhs.comb);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.adopt(rhs);
        out.comb.sub_assign(&rhs.comb);
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.negated()
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.negated()
    }
}

impl Mul<&Poly> for &Rational {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        rhs.scaled(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{ratio, rational};

    fn w(a: Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    #[test]
    fn display_orders_by_length_then_letters() {
        let p = Poly::from_terms(
            Alphabet::H2,
            [
                (w(Alphabet::H2, "x0x0x1x1"), rational(4)),
                (w(Alphabet::H2, "x0x1x0x1"), rational(2)),
                (w(Alphabet::H2, "x1"), rational(-1)),
                (Word::unit(Alphabet::H2), ratio(1, 2)),
            ],
        );
        assert_eq!(p.to_string(), "1/2 - x1 + 4 x0x0x1x1 + 2 x0x1x0x1");
    }

    #[test]
    fn z_display() {
        let p = Poly::word(w(Alphabet::PY, "ppypy")) - Poly::word(w(Alphabet::PY, "pyy"));
        assert_eq!(p.display_z(), "-z{1}z{0} + z{2}z{1}");
        assert_eq!(Poly::zero(Alphabet::PY).display_z(), "0");
    }

    #[test]
    fn concatenation_cancels_in_pdy() {
        let a = Poly::word(w(Alphabet::PDY, "yp"));
        let b = Poly::word(w(Alphabet::PDY, "dy"));
        assert_eq!(a.concat(&b), Poly::word(w(Alphabet::PDY, "yy")));
    }

    #[test]
    fn zero_adopts_alphabet() {
        let z = Poly::zero(Alphabet::H2);
        let p = Poly::word(w(Alphabet::PY, "py"));
        assert_eq!((&z + &p).alphabet(), Alphabet::PY);
    }
}
