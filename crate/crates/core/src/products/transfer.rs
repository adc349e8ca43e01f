use num_traits::One;

use super::{quasi_shuffle_lambda, ProductKind};
use crate::error::Result;
use crate::linear::Rational;
use crate::maps::{tau_tilde_poly, Isomorphism};
use crate::words::{Alphabet, Letter, Poly, Subspace, Word};

/// `T⁻¹ ∘ m ∘ (T ⊗ T)`. Both arguments are checked to round-trip through the
/// isomorphism before the product is formed.
pub fn transferred_product(
    base: &ProductKind,
    iso: &Isomorphism,
    u: &Poly,
    v: &Poly,
) -> Result<Poly> {
    let tu = iso.forward_checked(u)?;
    let tv = iso.forward_checked(v)?;
    let product = base.multiply(&tu, &tv)?;
    iso.inverse.apply(&product)
}

fn require_all(poly: &Poly, space: Subspace) -> Result<()> {
    for w in poly.words() {
        w.require(space)?;
    }
    Ok(())
}

/// `□_1 = τ̃ ∘ ∗_1 ∘ (τ̃ ⊗ τ̃)`, defined on words not beginning with `y`.
pub fn square_one(u: &Poly, v: &Poly) -> Result<Poly> {
    let tu = tau_tilde_poly(u)?;
    let tv = tau_tilde_poly(v)?;
    tau_tilde_poly(&quasi_shuffle_lambda(&tu, &tv, &Rational::one())?)
}

/// `□_OOZ = τ̃ ∘ ∗_OOZ ∘ (τ̃ ⊗ τ̃)` on `H0`.
pub fn ooz_square(u: &Poly, v: &Poly) -> Result<Poly> {
    require_all(u, Subspace::BigH0)?;
    require_all(v, Subspace::BigH0)?;
    transferred_product(
        &ProductKind::OozQuasiShuffle,
        &Isomorphism::tau_tilde(),
        u,
        v,
    )
}

/// Splits a nonempty `H0` word as `u p^a y^b` with `a, b ≥ 1`.
fn split_tail(w: &Word) -> (Word, usize, usize) {
    let letters = w.letters();
    let b = letters
        .iter()
        .rev()
        .take_while(|&&l| l == Letter::Y)
        .count();
    let a = letters[..letters.len() - b]
        .iter()
        .rev()
        .take_while(|&&l| l == Letter::P)
        .count();
    let head = Word::from_normalized(Alphabet::PY, letters[..letters.len() - a - b].to_vec());
    (head, a, b)
}

fn build(head: &Word, ps: usize, ys: usize) -> Word {
    let mut letters = head.letters().to_vec();
    letters.extend(std::iter::repeat_n(Letter::P, ps));
    letters.extend(std::iter::repeat_n(Letter::Y, ys));
    Word::from_normalized(Alphabet::PY, letters)
}

fn tail(ys: usize) -> Word {
    build(&Word::unit(Alphabet::PY), 1, ys)
}

/// `□_OOZ` on words through its expression by `□_1`:
/// `up^ay^b □ vp^cy^d = up^ay^b □_1 vp^cy^d − (up^{a−1} □_1 vp^cy^{d−1}) py^b
///  − (up^ay^{b−1} □_1 vp^{c−1}) py^d − (up^{a−1} □_1 vp^{c−1}) py^{b+d−1}`.
pub fn ooz_square_recursive_words(x: &Word, y: &Word) -> Result<Poly> {
    x.require(Subspace::BigH0)?;
    y.require(Subspace::BigH0)?;
    if x.is_empty() {
        return Ok(Poly::word(y.clone()));
    }
    if y.is_empty() {
        return Ok(Poly::word(x.clone()));
    }
    let (u, a, b) = split_tail(x);
    let (v, c, d) = split_tail(y);
    let sq = |l: Word, r: Word| square_one(&Poly::word(l), &Poly::word(r));
    let mut out = sq(x.clone(), y.clone())?;
    out = &out - &sq(build(&u, a - 1, 0), build(&v, c, d - 1))?.concat_word(&tail(b));
    out = &out - &sq(build(&u, a, b - 1), build(&v, c - 1, 0))?.concat_word(&tail(d));
    out = &out - &sq(build(&u, a - 1, 0), build(&v, c - 1, 0))?.concat_word(&tail(b + d - 1));
    Ok(out)
}

pub fn ooz_square_recursive(u: &Poly, v: &Poly) -> Result<Poly> {
    super::bilinear(u, v, Alphabet::PY, ooz_square_recursive_words)
}
