//! Deconcatenation coalgebras, antipodes, transferred Hopf structures and the
//! infinitesimal coproduct on `{p,d,y}` words.

mod tensor;

use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::linear::{rational_to_string, Rational};
use crate::maps::{tau_tilde, Isomorphism};
use crate::products::{bilinear, stuffle, CompComb};
use crate::words::{
    normalize, z_decode, z_encode, Alphabet, Composition, Letter, Poly, Subspace, Word,
};

pub use tensor::{Tensor2, Tensor3};

fn z_space(alphabet: Alphabet) -> Result<Subspace> {
    match alphabet {
        Alphabet::H2 => Ok(Subspace::SmallH1),
        Alphabet::PY => Ok(Subspace::BigH1),
        Alphabet::PDY => Err(MzvError::AlphabetMismatch {
            expected: Alphabet::PY,
            found: Alphabet::PDY,
        }),
    }
}

/// Cuts a z-decodable word between its blocks: `Σ w[..i] ⊗ w[i..]`.
pub fn deconcat(word: &Word) -> Result<Tensor2> {
    word.require(z_space(word.alphabet())?)?;
    let end = match word.alphabet() {
        Alphabet::H2 => Letter::X1,
        _ => Letter::Y,
    };
    let letters = word.letters();
    let mut out = Tensor2::zero(word.alphabet());
    let mut cut = |i: usize| {
        out.add_term(
            Word::from_normalized(word.alphabet(), letters[..i].to_vec()),
            word.suffix(i),
            Rational::one(),
        )
    };
    cut(0);
    for (i, &l) in letters.iter().enumerate() {
        if l == end {
            cut(i + 1);
        }
    }
    Ok(out)
}

pub fn deconcat_poly(poly: &Poly) -> Result<Tensor2> {
    let mut out = Tensor2::zero(poly.alphabet());
    for (w, c) in poly.terms() {
        out.add_scaled(&deconcat(w)?, c);
    }
    Ok(out)
}

/// `ε(1) = 1`, `ε(w) = 0` otherwise.
pub fn counit(poly: &Poly) -> Rational {
    poly.coeff(&Word::unit(poly.alphabet()))
}

/// A Hopf algebra on word polynomials, given by its word-level structure maps.
pub trait HopfAlgebra: Send + Sync {
    fn name(&self) -> String;

    fn alphabet(&self) -> Alphabet;

    /// Words on which the structure is defined.
    fn contains(&self, word: &Word) -> bool;

    fn multiply_words(&self, u: &Word, v: &Word) -> Result<Poly>;

    fn coproduct_word(&self, word: &Word) -> Result<Tensor2>;

    fn counit_word(&self, word: &Word) -> Result<Rational>;

    fn antipode_word(&self, word: &Word) -> Result<Poly>;

    fn multiply(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        bilinear(u, v, self.alphabet(), |a, b| self.multiply_words(a, b))
    }

    fn coproduct(&self, poly: &Poly) -> Result<Tensor2> {
        let mut out = Tensor2::zero(self.alphabet());
        for (w, c) in poly.terms() {
            out.add_scaled(&self.coproduct_word(w)?, c);
        }
        Ok(out)
    }

    fn counit(&self, poly: &Poly) -> Result<Rational> {
        let mut out = Rational::zero();
        for (w, c) in poly.terms() {
            out += self.counit_word(w)? * c;
        }
        Ok(out)
    }

    fn antipode(&self, poly: &Poly) -> Result<Poly> {
        poly.linear(self.alphabet(), |w| self.antipode_word(w))
    }

    fn unit(&self) -> Poly {
        Poly::one(self.alphabet())
    }
}

/// `(h1 or H1, ∗_λ, Δ)` with deconcatenation coproduct.
#[derive(Debug, Clone)]
pub struct QuasiShuffleHopf {
    alphabet: Alphabet,
    lambda: Rational,
}

impl QuasiShuffleHopf {
    pub fn new(alphabet: Alphabet, lambda: Rational) -> Result<QuasiShuffleHopf> {
        z_space(alphabet)?;
        if lambda.is_zero() {
            return Err(MzvError::ZeroLambda);
        }
        Ok(QuasiShuffleHopf { alphabet, lambda })
    }

    fn parts(&self, word: &Word) -> Result<Vec<i64>> {
        word.require_alphabet(self.alphabet)?;
        word.require(z_space(self.alphabet)?)?;
        Ok(z_decode(word)?.0)
    }

    fn encode(&self, comb: &CompComb) -> Result<Poly> {
        let mut out = Poly::zero(self.alphabet);
        for (parts, c) in comb {
            out.add_term(
                z_encode(&Composition(parts.clone()), self.alphabet)?,
                c.clone(),
            );
        }
        Ok(out)
    }

    /// `S(1) = 1`, `S(w) = −Σ_{w = ab, b ≠ 1} S(a) ∗ b`, over the prefixes of `w`.
    fn antipode_parts(&self, parts: &[i64]) -> CompComb {
        let mut prefixes: Vec<CompComb> = vec![CompComb::monomial(Vec::new(), Rational::one())];
        for i in 1..=parts.len() {
            let mut acc = CompComb::new();
            for (j, s) in prefixes.iter().enumerate() {
                let tail = &parts[j..i];
                for (a, c) in s {
                    acc.add_scaled(&stuffle(a, tail, &self.lambda), c);
                }
            }
            prefixes.push(acc.negated());
        }
        prefixes.pop().expect("at least the empty prefix")
    }
}

impl HopfAlgebra for QuasiShuffleHopf {
    fn name(&self) -> String {
        format!(
            "quasi-shuffle[{}] on {}",
            rational_to_string(&self.lambda),
            self.alphabet
        )
    }

    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn contains(&self, word: &Word) -> bool {
        word.alphabet() == self.alphabet && z_space(self.alphabet).is_ok_and(|s| word.in_space(s))
    }

    fn multiply_words(&self, u: &Word, v: &Word) -> Result<Poly> {
        let (a, b) = (self.parts(u)?, self.parts(v)?);
        self.encode(&stuffle(&a, &b, &self.lambda))
    }

    fn coproduct_word(&self, word: &Word) -> Result<Tensor2> {
        word.require_alphabet(self.alphabet)?;
        deconcat(word)
    }

    fn counit_word(&self, word: &Word) -> Result<Rational> {
        Ok(if word.is_empty() {
            Rational::one()
        } else {
            Rational::zero()
        })
    }

    fn antipode_word(&self, word: &Word) -> Result<Poly> {
        let parts = self.parts(word)?;
        self.encode(&self.antipode_parts(&parts))
    }
}

/// The structure `m_□ = T⁻¹ m (T ⊗ T)`, `Δ_□ = (T⁻¹ ⊗ T⁻¹) Δ T`,
/// `S_□ = T⁻¹ S T`, `ε_□ = ε T` carried over from a base Hopf algebra.
pub struct Transferred {
    base: Box<dyn HopfAlgebra>,
    iso: Isomorphism,
}

impl Transferred {
    pub fn new(base: Box<dyn HopfAlgebra>, iso: Isomorphism) -> Result<Transferred> {
        if iso.forward.codomain() != base.alphabet() || iso.inverse.domain() != base.alphabet() {
            return Err(MzvError::AlphabetMismatch {
                expected: base.alphabet(),
                found: iso.forward.codomain(),
            });
        }
        Ok(Transferred { base, iso })
    }

    fn to_base(&self, word: &Word) -> Result<Poly> {
        self.iso.forward_checked(&Poly::word(word.clone()))
    }

    fn back_from_base(&self, poly: &Poly) -> Result<Poly> {
        self.iso.inverse.apply(poly)
    }
}

impl HopfAlgebra for Transferred {
    fn name(&self) -> String {
        format!(
            "{} transferred by {}",
            self.base.name(),
            self.iso.forward.name()
        )
    }

    fn alphabet(&self) -> Alphabet {
        self.iso.forward.domain()
    }

    fn contains(&self, word: &Word) -> bool {
        self.iso
            .forward
            .apply_word(word)
            .is_ok_and(|image| image.words().all(|w| self.base.contains(w)))
    }

    fn multiply_words(&self, u: &Word, v: &Word) -> Result<Poly> {
        let product = self.base.multiply(&self.to_base(u)?, &self.to_base(v)?)?;
        self.back_from_base(&product)
    }

    fn coproduct_word(&self, word: &Word) -> Result<Tensor2> {
        let delta = self.base.coproduct(&self.to_base(word)?)?;
        let back = |w: &Word| self.back_from_base(&Poly::word(w.clone()));
        delta.map_factors(self.alphabet(), back, back)
    }

    fn counit_word(&self, word: &Word) -> Result<Rational> {
        self.base.counit(&self.to_base(word)?)
    }

    fn antipode_word(&self, word: &Word) -> Result<Poly> {
        let s = self.base.antipode(&self.to_base(word)?)?;
        self.back_from_base(&s)
    }
}

/// One violated axiom on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub input: String,
}

fn record(failures: &mut Vec<AxiomFailure>, ok: bool, axiom: &'static str, input: &Word) {
    if !ok {
        failures.push(AxiomFailure {
            axiom,
            input: input.to_string(),
        });
    }
}

/// Unit, counit, coassociativity and antipode laws on each sample word.
pub fn check_axioms(h: &dyn HopfAlgebra, words: &[Word]) -> Result<Vec<AxiomFailure>> {
    let mut failures = Vec::new();
    let unit = h.unit();
    for w in words {
        let pw = Poly::word(w.clone());
        record(
            &mut failures,
            h.multiply(&unit, &pw)? == pw && h.multiply(&pw, &unit)? == pw,
            "unit",
            w,
        );
        let delta = h.coproduct_word(w)?;
        let left = delta.contract(|a, b| Ok(Poly::word(b.clone()).scaled(&h.counit_word(a)?)))?;
        let right = delta.contract(|a, b| Ok(Poly::word(a.clone()).scaled(&h.counit_word(b)?)))?;
        record(&mut failures, left == pw && right == pw, "counit", w);
        let lhs = Tensor3::split_left(&delta, |x| h.coproduct_word(x))?;
        let rhs = Tensor3::split_right(&delta, |x| h.coproduct_word(x))?;
        record(&mut failures, lhs == rhs, "coassociativity", w);
        let eta = unit.scaled(&h.counit_word(w)?);
        let s_left =
            delta.contract(|a, b| h.multiply(&h.antipode_word(a)?, &Poly::word(b.clone())))?;
        let s_right =
            delta.contract(|a, b| h.multiply(&Poly::word(a.clone()), &h.antipode_word(b)?))?;
        record(
            &mut failures,
            s_left == eta && s_right == eta,
            "antipode",
            w,
        );
    }
    Ok(failures)
}

/// `Δ(u v) = Δ(u) Δ(v)` with the componentwise product on tensors.
pub fn check_compatibility(h: &dyn HopfAlgebra, u: &Word, v: &Word) -> Result<bool> {
    let lhs = h.coproduct(&h.multiply_words(u, v)?)?;
    let rhs = h
        .coproduct_word(u)?
        .multiply(&h.coproduct_word(v)?, |a, b| h.multiply_words(a, b))?;
    Ok(lhs == rhs)
}

/// `Δ_{□,op} = s ∘ (τ̃ ⊗ τ̃) ∘ Δ ∘ τ̃` on `H0`.
pub fn coproduct_square_op(poly: &Poly) -> Result<Tensor2> {
    let mut out = Tensor2::zero(Alphabet::PY);
    for (w, c) in poly.terms() {
        w.require(Subspace::BigH0)?;
        let delta = deconcat(&tau_tilde(w)?)?;
        let swapped = delta.relabel(Alphabet::PY, tau_tilde)?.flipped();
        out.add_scaled(&swapped, c);
    }
    Ok(out)
}

/// `Δ̄` on a raw `{p,d,y}` letter sequence by repeated splitting at the first
/// letter: `Δ̄(pw) = (p⊗1)Δ̄(w) + 1⊗pw`, `Δ̄(yw) = (y⊗1)Δ̄(w)`,
/// `Δ̄(dw) = (d⊗1)Δ̄(w) − d⊗w`.
pub fn infinitesimal_letters(letters: &[Letter]) -> Result<Tensor2> {
    let alphabet = Alphabet::PDY;
    let mut suffix = normalize(&[], alphabet)?;
    let mut acc = Tensor2::pure(suffix.clone(), suffix.clone());
    for &l in letters.iter().rev() {
        let letter = normalize(&[l], alphabet)?;
        let previous = suffix.clone();
        suffix = suffix.prefixed(l);
        acc = acc.left_concat(&letter);
        match l {
            Letter::P => acc.add_term(Word::unit(alphabet), suffix.clone(), Rational::one()),
            Letter::D => acc.add_term(letter, previous, -Rational::one()),
            _ => {}
        }
    }
    Ok(acc)
}

pub fn infinitesimal_coproduct(word: &Word) -> Result<Tensor2> {
    word.require_alphabet(Alphabet::PDY)?;
    infinitesimal_letters(word.letters())
}

pub fn infinitesimal_coproduct_poly(poly: &Poly) -> Result<Tensor2> {
    let mut out = Tensor2::zero(Alphabet::PDY);
    for (w, c) in poly.terms() {
        out.add_scaled(&infinitesimal_coproduct(w)?, c);
    }
    Ok(out)
}

/// `Δ̄(w1 w2) = (w1 ⊗ 1)Δ̄(w2) + Δ̄(w1)(1 ⊗ w2) − w1 ⊗ w2` with `w1 = w[..at]`.
pub fn infinitesimal_split(word: &Word, at: usize) -> Result<Tensor2> {
    word.require_alphabet(Alphabet::PDY)?;
    let w1 = Word::from_normalized(Alphabet::PDY, word.letters()[..at].to_vec());
    let w2 = word.suffix(at);
    let mut out = infinitesimal_coproduct(&w2)?.left_concat(&w1);
    out.add_scaled(
        &infinitesimal_coproduct(&w1)?.right_concat(&w2),
        &Rational::one(),
    );
    out.add_term(w1, w2, -Rational::one());
    Ok(out)
}

/// Which tensor factor a coideal test inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Δ(J) ⊂ J ⊗ C`: every left factor lies in `J`.
    Left,
    /// `Δ(J) ⊂ C ⊗ J`: every right factor lies in `J`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoidealReport {
    pub holds: bool,
    /// The first offending `(sample, left, right)` term, if any.
    pub witness: Option<(Word, Word, Word)>,
}

pub fn coideal_check(
    predicate: impl Fn(&Word) -> bool,
    coproduct: impl Fn(&Word) -> Result<Tensor2>,
    side: Side,
    samples: &[Word],
) -> Result<CoidealReport> {
    for sample in samples {
        for (l, r, _) in coproduct(sample)?.terms() {
            let factor = match side {
                Side::Left => l,
                Side::Right => r,
            };
            if !predicate(factor) {
                return Ok(CoidealReport {
                    holds: false,
                    witness: Some((sample.clone(), l.clone(), r.clone())),
                });
            }
        }
    }
    Ok(CoidealReport {
        holds: true,
        witness: None,
    })
}

/// Reads a `{p,y}` tensor in the `{p,d,y}` alphabet.
pub fn to_pdy(t: &Tensor2) -> Result<Tensor2> {
    t.relabel(Alphabet::PDY, Word::to_pdy)
}
