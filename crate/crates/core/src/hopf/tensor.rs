use std::fmt;

use num_traits::{One, Signed};

use crate::error::Result;
use crate::linear::{LinComb, Rational};
use crate::words::{Alphabet, Poly, Word};

/// A finite rational combination of word pairs `left ⊗ right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor2 {
    alphabet: Alphabet,
    comb: LinComb<(Word, Word)>,
}

impl Tensor2 {
    pub fn zero(alphabet: Alphabet) -> Tensor2 {
        Tensor2 {
            alphabet,
            comb: LinComb::new(),
        }
    }

    pub fn pure(left: Word, right: Word) -> Tensor2 {
        Tensor2::monomial(left, right, Rational::one())
    }

    pub fn monomial(left: Word, right: Word, coeff: Rational) -> Tensor2 {
        Tensor2 {
            alphabet: left.alphabet(),
            comb: LinComb::monomial((left, right), coeff),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Rational)> {
        self.comb.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Rational {
        self.comb.coeff(&(left.clone(), right.clone()))
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: Rational) {
        self.comb.add_term((left, right), coeff);
    }

    pub fn add_scaled(&mut self, other: &Tensor2, scale: &Rational) {
        if self.comb.is_zero() {
            self.alphabet = other.alphabet;
        }
        self.comb.add_scaled(&other.comb, scale);
    }

    pub fn scaled(&self, scale: &Rational) -> Tensor2 {
        Tensor2 {
            alphabet: self.alphabet,
            comb: self.comb.scaled(scale),
        }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// `s(a ⊗ b) = b ⊗ a`.
    pub fn flipped(&self) -> Tensor2 {
        Tensor2 {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|(l, r)| (r.clone(), l.clone())),
        }
    }

    /// `(f ⊗ g)` applied factorwise.
    pub fn map_factors(
        &self,
        target: Alphabet,
        mut f: impl FnMut(&Word) -> Result<Poly>,
        mut g: impl FnMut(&Word) -> Result<Poly>,
    ) -> Result<Tensor2> {
        let mut out = Tensor2::zero(target);
        for (l, r, c) in self.terms() {
            let fl = f(l)?;
            let gr = g(r)?;
            out.add_scaled(&Tensor2::product_of(&fl, &gr, target), c);
        }
        Ok(out)
    }

    /// `a ⊗ b` for polynomials.
    pub fn product_of(a: &Poly, b: &Poly, alphabet: Alphabet) -> Tensor2 {
        let mut out = Tensor2::zero(alphabet);
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                out.add_term(x.clone(), y.clone(), cx * cy);
            }
        }
        out
    }

    /// `(u ⊗ 1) · self`, concatenating on the left factor.
    pub fn left_concat(&self, word: &Word) -> Tensor2 {
        Tensor2 {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|(l, r)| (word.concat(l), r.clone())),
        }
    }

    /// `self · (1 ⊗ v)`, concatenating on the right factor.
    pub fn right_concat(&self, word: &Word) -> Tensor2 {
        Tensor2 {
            alphabet: self.alphabet,
            comb: self.comb.map_keys(|(l, r)| (l.clone(), r.concat(word))),
        }
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = m(a, c) ⊗ m(b, d)`.
    pub fn multiply(
        &self,
        other: &Tensor2,
        mut m: impl FnMut(&Word, &Word) -> Result<Poly>,
    ) -> Result<Tensor2> {
        let mut out = Tensor2::zero(self.alphabet);
        for (a, b, c1) in self.terms() {
            for (c, d, c2) in other.terms() {
                let left = m(a, c)?;
                let right = m(b, d)?;
                out.add_scaled(
                    &Tensor2::product_of(&left, &right, self.alphabet),
                    &(c1 * c2),
                );
            }
        }
        Ok(out)
    }

    /// `m(a ⊗ b)` summed over the terms.
    pub fn contract(&self, mut m: impl FnMut(&Word, &Word) -> Result<Poly>) -> Result<Poly> {
        let mut out = Poly::zero(self.alphabet);
        for (l, r, c) in self.terms() {
            out.add_scaled(&m(l, r)?, c);
        }
        Ok(out)
    }

    /// Reinterprets both factors in another alphabet.
    pub fn relabel(&self, target: Alphabet, f: impl Fn(&Word) -> Result<Word>) -> Result<Tensor2> {
        let mut out = Tensor2::zero(target);
        for (l, r, c) in self.terms() {
            out.add_term(f(l)?, f(r)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, r, c)) in self.terms().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{l} ⊗ {r}")?;
        }
        Ok(())
    }
}

/// A finite rational combination of word triples, used for coassociativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    comb: LinComb<(Word, Word, Word)>,
}

impl Tensor3 {
    pub fn new() -> Tensor3 {
        Tensor3 {
            comb: LinComb::new(),
        }
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, coeff: Rational) {
        self.comb.add_term((a, b, c), coeff);
    }

    pub fn is_zero(&self) -> bool {
        self.comb.is_zero()
    }

    /// `(Δ ⊗ id)` applied to a two-tensor.
    pub fn split_left(
        t: &Tensor2,
        mut delta: impl FnMut(&Word) -> Result<Tensor2>,
    ) -> Result<Tensor3> {
        let mut out = Tensor3::new();
        for (l, r, c) in t.terms() {
            for (a, b, c2) in delta(l)?.terms() {
                out.add_term(a.clone(), b.clone(), r.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)` applied to a two-tensor.
    pub fn split_right(
        t: &Tensor2,
        mut delta: impl FnMut(&Word) -> Result<Tensor2>,
    ) -> Result<Tensor3> {
        let mut out = Tensor3::new();
        for (l, r, c) in t.terms() {
            for (b, d, c2) in delta(r)?.terms() {
                out.add_term(l.clone(), b.clone(), d.clone(), c * c2);
            }
        }
        Ok(out)
    }
}

impl Default for Tensor3 {
    fn default() -> Self {
        Tensor3::new()
    }
}
