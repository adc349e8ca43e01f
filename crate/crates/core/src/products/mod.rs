//! Shuffle, quasi-shuffle and related bilinear products on word polynomials.
//!
//! Each word-level product is a dynamic program over suffix (or, for the
//! right recursion of the explicit OOZ product, prefix) positions, so a call
//! never recomputes a sub-product. Polynomial inputs are handled by bilinear
//! extension.

mod shuffle;
mod stuffle;
mod transfer;
mod zword;

use std::fmt;

use num_traits::One;

use crate::error::{MzvError, Result};
use crate::linear::{rational_to_string, Rational};
use crate::maps::Isomorphism;
use crate::words::{Alphabet, Poly, Word};

pub use shuffle::{
    shuffle_lambda_letters, shuffle_star_alt_words, shuffle_star_words, shuffle_words,
};
pub use stuffle::{
    ihara_circ_words, ooz_quasi_shuffle_words, quasi_shuffle_lambda_words, quasi_shuffle_words,
    t_op_word,
};
pub use transfer::{ooz_square, ooz_square_recursive, square_one, transferred_product};
pub use zword::{ooz_explicit, ooz_explicit_words, ZPoly, ZWord};

pub(crate) use stuffle::{stuffle, CompComb};

/// Every product the crate knows how to evaluate.
#[derive(Clone, Debug)]
pub enum ProductKind {
    /// `⧢` on `{x0,x1}`.
    Shuffle,
    /// `∗` on `h1`.
    QuasiShuffle,
    /// `∗_λ` on `H1`.
    QuasiShuffleLambda(Rational),
    /// `⧢_λ` on `{p,y}`.
    ShuffleLambdaPy(Rational),
    /// `⧢_λ` on `{p,d,y}`.
    ShuffleLambdaPdy(Rational),
    /// `⧢⋆` on `{x0,x1}`.
    ShuffleStar,
    /// `⧢⋆` through ordinary shuffles.
    ShuffleStarAlt,
    /// `∗_OOZ` on `H0`.
    OozQuasiShuffle,
    /// `∗_OOZ` through the right recursion on integer-indexed letters.
    OozExplicit,
    /// `τ̃ ∘ ∗_OOZ ∘ (τ̃ ⊗ τ̃)` on `H0`.
    OozSquare,
    /// Ihara's circle product.
    IharaCirc,
    /// `T⁻¹ ∘ m ∘ (T ⊗ T)`.
    Transferred(Box<ProductKind>, Isomorphism),
}

impl ProductKind {
    pub fn multiply(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        match self {
            ProductKind::Shuffle => shuffle(u, v),
            ProductKind::QuasiShuffle => quasi_shuffle(u, v),
            ProductKind::QuasiShuffleLambda(l) => quasi_shuffle_lambda(u, v, l),
            ProductKind::ShuffleLambdaPy(l) => shuffle_lambda_py(u, v, l),
            ProductKind::ShuffleLambdaPdy(l) => shuffle_lambda_pdy(u, v, l),
            ProductKind::ShuffleStar => shuffle_star(u, v),
            ProductKind::ShuffleStarAlt => shuffle_star_alt(u, v),
            ProductKind::OozQuasiShuffle => ooz_quasi_shuffle(u, v),
            ProductKind::OozExplicit => ooz_explicit_poly(u, v),
            ProductKind::OozSquare => ooz_square(u, v),
            ProductKind::IharaCirc => ihara_circ(u, v),
            ProductKind::Transferred(base, iso) => transferred_product(base, iso, u, v),
        }
    }

    /// Alphabet of the product's arguments.
    pub fn alphabet(&self) -> Alphabet {
        match self {
            ProductKind::Shuffle
            | ProductKind::QuasiShuffle
            | ProductKind::ShuffleStar
            | ProductKind::ShuffleStarAlt => Alphabet::H2,
            ProductKind::ShuffleLambdaPdy(_) => Alphabet::PDY,
            ProductKind::Transferred(_, iso) => iso.forward.domain(),
            _ => Alphabet::PY,
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Shuffle => f.write_str("shuffle"),
            ProductKind::QuasiShuffle => f.write_str("quasi-shuffle"),
            ProductKind::QuasiShuffleLambda(l) => {
                write!(f, "quasi-shuffle[{}]", rational_to_string(l))
            }
            ProductKind::ShuffleLambdaPy(l) => write!(f, "shuffle-py[{}]", rational_to_string(l)),
            ProductKind::ShuffleLambdaPdy(l) => write!(f, "shuffle-pdy[{}]", rational_to_string(l)),
            ProductKind::ShuffleStar => f.write_str("star-shuffle"),
            ProductKind::ShuffleStarAlt => f.write_str("star-shuffle-alt"),
            ProductKind::OozQuasiShuffle => f.write_str("ooz-quasi-shuffle"),
            ProductKind::OozExplicit => f.write_str("ooz-explicit"),
            ProductKind::OozSquare => f.write_str("ooz-square"),
            ProductKind::IharaCirc => f.write_str("circle"),
            ProductKind::Transferred(base, iso) => {
                write!(f, "transferred[{base} by {}]", iso.forward.name())
            }
        }
    }
}

fn require(poly: &Poly, alphabet: Alphabet) -> Result<()> {
    if poly.alphabet() == alphabet || poly.is_zero() {
        Ok(())
    } else {
        Err(MzvError::AlphabetMismatch {
            expected: alphabet,
            found: poly.alphabet(),
        })
    }
}

/// Bilinear extension of a word-level product.
pub fn bilinear(
    u: &Poly,
    v: &Poly,
    alphabet: Alphabet,
    mut f: impl FnMut(&Word, &Word) -> Result<Poly>,
) -> Result<Poly> {
    require(u, alphabet)?;
    require(v, alphabet)?;
    let mut out = Poly::zero(alphabet);
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            out.add_scaled(&f(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

pub fn shuffle(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, Alphabet::H2, |a, b| Ok(shuffle_words(a, b)))
}

pub fn quasi_shuffle(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, Alphabet::H2, quasi_shuffle_words)
}

pub fn quasi_shuffle_lambda(u: &Poly, v: &Poly, lambda: &Rational) -> Result<Poly> {
    bilinear(u, v, Alphabet::PY, |a, b| {
        quasi_shuffle_lambda_words(a, b, lambda)
    })
}

pub fn shuffle_lambda_py(u: &Poly, v: &Poly, lambda: &Rational) -> Result<Poly> {
    bilinear(u, v, Alphabet::PY, |a, b| {
        shuffle_lambda_letters(a.letters(), b.letters(), lambda, Alphabet::PY)
    })
}

pub fn shuffle_lambda_pdy(u: &Poly, v: &Poly, lambda: &Rational) -> Result<Poly> {
    bilinear(u, v, Alphabet::PDY, |a, b| {
        shuffle_lambda_letters(a.letters(), b.letters(), lambda, Alphabet::PDY)
    })
}

pub fn shuffle_star(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, Alphabet::H2, |a, b| Ok(shuffle_star_words(a, b)))
}

pub fn shuffle_star_alt(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, Alphabet::H2, shuffle_star_alt_words)
}

pub fn t_op(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, t_op_word)
}

pub fn ooz_quasi_shuffle(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, Alphabet::PY, ooz_quasi_shuffle_words)
}

/// [`ooz_explicit`] on `{p,y}` polynomials; fails if a negative index
/// appears in the result.
pub fn ooz_explicit_poly(u: &Poly, v: &Poly) -> Result<Poly> {
    require(u, Alphabet::PY)?;
    require(v, Alphabet::PY)?;
    let out = ooz_explicit(&ZPoly::from_poly(u)?, &ZPoly::from_poly(v)?);
    zword::require_nonnegative(&out)?;
    out.to_poly()
}

pub fn ihara_circ(u: &Poly, v: &Poly) -> Result<Poly> {
    bilinear(u, v, u.alphabet(), ihara_circ_words)
}

/// `∗_λ` with `λ = 1`.
pub fn quasi_shuffle_one(u: &Poly, v: &Poly) -> Result<Poly> {
    quasi_shuffle_lambda(u, v, &Rational::one())
}
