//! Duality involutions, derivations and the binomial transfer maps.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::linear::Rational;
use crate::products::CompComb;
use crate::words::{z_decode, z_encode, Alphabet, Composition, Letter, Poly, Subspace, Word};

type Action = Arc<dyn Fn(&Word) -> Result<Poly> + Send + Sync>;

/// A named linear map, given on words and extended linearly.
#[derive(Clone)]
pub struct LinearMap {
    name: String,
    domain: Alphabet,
    codomain: Alphabet,
    action: Action,
}

impl LinearMap {
    pub fn new(
        name: impl Into<String>,
        domain: Alphabet,
        codomain: Alphabet,
        action: impl Fn(&Word) -> Result<Poly> + Send + Sync + 'static,
    ) -> LinearMap {
        LinearMap {
            name: name.into(),
            domain,
            codomain,
            action: Arc::new(action),
        }
    }

    pub fn identity(alphabet: Alphabet) -> LinearMap {
        LinearMap::new("id", alphabet, alphabet, |w| Ok(Poly::word(w.clone())))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Alphabet {
        self.domain
    }

    pub fn codomain(&self) -> Alphabet {
        self.codomain
    }

    pub fn apply_word(&self, word: &Word) -> Result<Poly> {
        word.require_alphabet(self.domain)?;
        (self.action)(word)
    }

    pub fn apply(&self, poly: &Poly) -> Result<Poly> {
        poly.linear(self.codomain, |w| self.apply_word(w))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LinearMap) -> LinearMap {
        let (outer, inner) = (self.clone(), first.clone());
        LinearMap::new(
            format!("{}.{}", self.name, first.name),
            first.domain,
            self.codomain,
            move |w| outer.apply(&inner.apply_word(w)?),
        )
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearMap({}: {} -> {})",
            self.name, self.domain, self.codomain
        )
    }
}

/// A linear map together with its inverse.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub forward: LinearMap,
    pub inverse: LinearMap,
}

impl Isomorphism {
    pub fn new(forward: LinearMap, inverse: LinearMap) -> Isomorphism {
        Isomorphism { forward, inverse }
    }

    pub fn identity(alphabet: Alphabet) -> Isomorphism {
        Isomorphism::new(LinearMap::identity(alphabet), LinearMap::identity(alphabet))
    }

    pub fn tau() -> Isomorphism {
        let map = LinearMap::new("tau", Alphabet::H2, Alphabet::H2, |w| {
            Ok(Poly::word(tau(w)?))
        });
        Isomorphism::new(map.clone(), map)
    }

    pub fn tau_tilde() -> Isomorphism {
        let map = LinearMap::new("tautilde", Alphabet::PY, Alphabet::PY, |w| {
            Ok(Poly::word(tau_tilde(w)?))
        });
        Isomorphism::new(map.clone(), map)
    }

    pub fn ihara() -> Isomorphism {
        Isomorphism::new(
            LinearMap::new("S", Alphabet::PY, Alphabet::PY, ihara_s_word),
            LinearMap::new("Sinv", Alphabet::PY, Alphabet::PY, ihara_s_inv_word),
        )
    }

    pub fn inverted(&self) -> Isomorphism {
        Isomorphism::new(self.inverse.clone(), self.forward.clone())
    }

    /// Applies the forward map and checks that the inverse undoes it.
    pub fn forward_checked(&self, poly: &Poly) -> Result<Poly> {
        let image = self.forward.apply(poly)?;
        let back = self.inverse.apply(&image)?;
        if back != *poly && !(back.is_zero() && poly.is_zero()) {
            return Err(MzvError::InconsistentIso(self.forward.name().to_string()));
        }
        Ok(image)
    }
}

fn swap_tau(l: Letter) -> Letter {
    match l {
        Letter::X0 => Letter::X1,
        _ => Letter::X0,
    }
}

fn swap_tau_tilde(l: Letter) -> Letter {
    match l {
        Letter::P => Letter::Y,
        _ => Letter::P,
    }
}

fn reverse_swap(word: &Word, swap: fn(Letter) -> Letter) -> Word {
    let letters: Vec<Letter> = word.letters().iter().rev().map(|&l| swap(l)).collect();
    Word::from_normalized(word.alphabet(), letters)
}

/// Reverse the word and exchange `x0` and `x1`.
pub fn tau(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::H2)?;
    Ok(reverse_swap(word, swap_tau))
}

/// Reverse the word and exchange `p` and `y`.
pub fn tau_tilde(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::PY)?;
    Ok(reverse_swap(word, swap_tau_tilde))
}

pub fn tau_poly(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::H2, |w| Ok(Poly::word(tau(w)?)))
}

pub fn tau_tilde_poly(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, |w| Ok(Poly::word(tau_tilde(w)?)))
}

/// `∂_n(x0) = x0 (x0 + x1)^{n−1} x1`, `∂_n(x1) = −∂_n(x0)`, extended by the
/// Leibniz rule.
pub fn derivation(poly: &Poly, n: i64) -> Result<Poly> {
    if n < 1 {
        return Err(MzvError::DerivationOrder(n));
    }
    let letter = |l| Word::from_normalized(Alphabet::H2, vec![l]);
    let mut image = Poly::word(letter(Letter::X0));
    let middle = Poly::word(letter(Letter::X0)) + Poly::word(letter(Letter::X1));
    for _ in 1..n {
        image = image.concat(&middle);
    }
    let image = image.concat_word(&letter(Letter::X1));
    poly.linear(Alphabet::H2, |w| {
        w.require_alphabet(Alphabet::H2)?;
        let mut out = Poly::zero(Alphabet::H2);
        for (i, &l) in w.letters().iter().enumerate() {
            let head = Word::from_normalized(Alphabet::H2, w.letters()[..i].to_vec());
            let rest = w.suffix(i + 1);
            let sign = if l == Letter::X0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            out.add_scaled(&image.word_concat(&head).concat_word(&rest), &sign);
        }
        Ok(out)
    })
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Expands `Σ_r c(k, r) z_{r1}…z_{rn}` with `r1 ∈ [first_min, k1]`,
/// `rj ∈ [rest_min, kj]` and weights `C(k1 − s1, r1 − s1) Π C(kj − sj, rj − sj)`.
fn binomial_transform(parts: &[i64], shift_first: i64, shift_rest: i64, signed: bool) -> CompComb {
    let mut out = CompComb::monomial(Vec::new(), Rational::one());
    for (idx, &k) in parts.iter().enumerate() {
        let shift = if idx == 0 { shift_first } else { shift_rest };
        let mut next = CompComb::new();
        for (prefix, c) in &out {
            for r in shift..=k {
                let mut coeff = Rational::from_integer(binomial(k - shift, r - shift));
                if signed && (k - r) % 2 != 0 {
                    coeff = -coeff;
                }
                let mut grown = prefix.clone();
                grown.push(r);
                next.add_term(grown, c * coeff);
            }
        }
        out = next;
    }
    out
}

fn admissible(parts: &[i64], first_min: i64, rest_min: i64, model: &str) -> Result<()> {
    let ok = parts
        .iter()
        .enumerate()
        .all(|(i, &k)| k >= if i == 0 { first_min } else { rest_min });
    if ok {
        Ok(())
    } else {
        Err(MzvError::Inadmissible {
            comp: Composition(parts.to_vec()).to_string(),
            model: model.into(),
        })
    }
}

fn encode(comb: &CompComb, alphabet: Alphabet) -> Result<Poly> {
    let mut out = Poly::zero(alphabet);
    for (parts, c) in comb {
        out.add_term(z_encode(&Composition(parts.clone()), alphabet)?, c.clone());
    }
    Ok(out)
}

fn u_word(word: &Word, signed: bool) -> Result<Poly> {
    word.require_alphabet(Alphabet::H2)?;
    let parts = z_decode(word)?.0;
    admissible(&parts, 2, 1, "U")?;
    encode(&binomial_transform(&parts, 2, 1, signed), Alphabet::H2)
}

fn v_word(word: &Word, signed: bool) -> Result<Poly> {
    word.require_alphabet(Alphabet::PY)?;
    let parts = z_decode(word)?.0;
    admissible(&parts, 1, 0, "V")?;
    encode(&binomial_transform(&parts, 1, 0, signed), Alphabet::PY)
}

/// `U(z_{k1}…z_{kn}) = Σ C(k1−2, r1−2) Π_{j≥2} C(kj−1, rj−1) z_{r1}…z_{rn}` on `h0`.
pub fn map_u(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::H2, |w| u_word(w, false))
}

pub fn map_u_inv(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::H2, |w| u_word(w, true))
}

/// `V(z_{k1}…z_{kn}) = Σ C(k1−1, r1−1) Π_{j≥2} C(kj, rj) z_{r1}…z_{rn}` on `H0`.
pub fn map_v(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, |w| v_word(w, false))
}

pub fn map_v_inv(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, |w| v_word(w, true))
}

/// `S(z_k w) = z_k S(w) + z_k ∘ S(w)` (`sign = 1`) and its inverse (`sign = −1`),
/// evaluated from the last block outwards.
fn ihara_parts(parts: &[i64], sign: &Rational) -> CompComb {
    let mut acc = CompComb::monomial(Vec::new(), Rational::one());
    for &k in parts.iter().rev() {
        let mut next = CompComb::new();
        for (rest, c) in &acc {
            let mut prefixed = Vec::with_capacity(rest.len() + 1);
            prefixed.push(k);
            prefixed.extend_from_slice(rest);
            next.add_term(prefixed, c.clone());
            if let Some((&first, tail)) = rest.split_first() {
                let mut merged = Vec::with_capacity(rest.len());
                merged.push(k + first);
                merged.extend_from_slice(tail);
                next.add_term(merged, c * sign);
            }
        }
        acc = next;
    }
    acc
}

fn ihara_word(word: &Word, sign: &Rational) -> Result<Poly> {
    word.require_alphabet(Alphabet::PY)?;
    word.require(Subspace::BigH1)?;
    let parts = z_decode(word)?.0;
    encode(&ihara_parts(&parts, sign), Alphabet::PY)
}

fn ihara_s_word(word: &Word) -> Result<Poly> {
    ihara_word(word, &Rational::one())
}

fn ihara_s_inv_word(word: &Word) -> Result<Poly> {
    ihara_word(word, &-Rational::one())
}

pub fn ihara_s(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, ihara_s_word)
}

pub fn ihara_s_inv(poly: &Poly) -> Result<Poly> {
    poly.linear(Alphabet::PY, ihara_s_inv_word)
}

/// `V⁻¹ ∘ τ̃ ∘ V` on `H0`.
pub fn dual_family_1(poly: &Poly) -> Result<Poly> {
    map_v_inv(&tau_tilde_poly(&map_v(poly)?)?)
}

/// `U⁻¹ ∘ τ ∘ U` on `h0`.
pub fn dual_family_2(poly: &Poly) -> Result<Poly> {
    map_u_inv(&tau_poly(&map_u(poly)?)?)
}

/// The maps reachable by name from the command line: `tau`, `tautilde`,
/// `dn:<n>`, `U`, `Uinv`, `V`, `Vinv`, `S`, `Sinv`, `dual1`, `dual2`.
pub fn named(name: &str) -> Result<LinearMap> {
    let lift = |name: &str, alphabet: Alphabet, f: fn(&Poly) -> Result<Poly>| {
        LinearMap::new(name, alphabet, alphabet, move |w| f(&Poly::word(w.clone())))
    };
    Ok(match name {
        "tau" => Isomorphism::tau().forward,
        "tautilde" => Isomorphism::tau_tilde().forward,
        "U" => lift(name, Alphabet::H2, map_u),
        "Uinv" => lift(name, Alphabet::H2, map_u_inv),
        "V" => lift(name, Alphabet::PY, map_v),
        "Vinv" => lift(name, Alphabet::PY, map_v_inv),
        "S" => lift(name, Alphabet::PY, ihara_s),
        "Sinv" => lift(name, Alphabet::PY, ihara_s_inv),
        "dual1" => lift(name, Alphabet::PY, dual_family_1),
        "dual2" => lift(name, Alphabet::H2, dual_family_2),
        _ => {
            let order = name
                .strip_prefix("dn:")
                .and_then(|n| n.parse::<i64>().ok())
                .ok_or_else(|| MzvError::Usage(format!("unknown map `{name}`")))?;
            if order < 1 {
                return Err(MzvError::DerivationOrder(order));
            }
            LinearMap::new(name, Alphabet::H2, Alphabet::H2, move |w| {
                derivation(&Poly::word(w.clone()), order)
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;

    fn zh(parts: &[i64]) -> Poly {
        Poly::word(z_encode(&Composition::new(parts), Alphabet::H2).unwrap())
    }

    fn zp(parts: &[i64]) -> Poly {
        Poly::word(z_encode(&Composition::new(parts), Alphabet::PY).unwrap())
    }

    fn w(a: Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(
            tau(&w(Alphabet::H2, "x0x0x0x0x1x1")).unwrap(),
            w(Alphabet::H2, "x0x0x1x1x1x1")
        );
        assert_eq!(
            tau(&w(Alphabet::H2, "x0x1")).unwrap(),
            w(Alphabet::H2, "x0x1")
        );
        assert_eq!(
            tau(&w(Alphabet::H2, "x0x0x1")).unwrap(),
            w(Alphabet::H2, "x0x1x1")
        );
        assert_eq!(
            tau_tilde(&w(Alphabet::PY, "ppy")).unwrap(),
            w(Alphabet::PY, "pyy")
        );
        assert_eq!(
            tau_tilde(&w(Alphabet::PY, "py")).unwrap(),
            w(Alphabet::PY, "py")
        );
        assert_eq!(
            tau_tilde(&w(Alphabet::PY, "pppy")).unwrap(),
            w(Alphabet::PY, "pyyy")
        );
        assert!(tau(&w(Alphabet::PY, "py")).is_err());
    }

    #[test]
    fn derivation_examples() {
        let h = |s| Poly::word(w(Alphabet::H2, s));
        assert_eq!(
            derivation(&h("x0x1"), 2).unwrap(),
            &h("x0x1x1x1") - &h("x0x0x0x1")
        );
        assert_eq!(derivation(&h("x0"), 1).unwrap(), h("x0x1"));
        assert_eq!(
            derivation(&h("x0x1"), 1).unwrap(),
            &h("x0x1x1") - &h("x0x0x1")
        );
        assert!(matches!(
            derivation(&h("x0"), 0),
            Err(MzvError::DerivationOrder(0))
        ));
    }

    #[test]
    fn u_and_v_examples() {
        assert_eq!(map_u(&zh(&[3])).unwrap(), &zh(&[2]) + &zh(&[3]));
        assert_eq!(dual_family_2(&zh(&[3])).unwrap(), &zh(&[2, 1]) + &zh(&[2]));
        assert_eq!(
            map_u_inv(&map_u(&zh(&[2, 1])).unwrap()).unwrap(),
            zh(&[2, 1])
        );
        assert_eq!(
            map_v(&zp(&[3])).unwrap(),
            &(&zp(&[1]) + &zp(&[2]).scaled(&rational(2))) + &zp(&[3])
        );
        assert_eq!(
            dual_family_1(&zp(&[3])).unwrap(),
            &(&zp(&[1, 0, 0]) + &zp(&[1, 0]).scaled(&rational(2))) + &zp(&[1])
        );
        assert_eq!(
            map_v_inv(&map_v(&zp(&[1, 0])).unwrap()).unwrap(),
            zp(&[1, 0])
        );
        assert_eq!(dual_family_1(&zp(&[1])).unwrap(), zp(&[1]));
        assert_eq!(dual_family_1(&zp(&[2])).unwrap(), &zp(&[1, 0]) + &zp(&[1]));
        assert_eq!(dual_family_2(&zh(&[2])).unwrap(), zh(&[2]));
        assert!(matches!(
            map_u(&zh(&[1])),
            Err(MzvError::Inadmissible { .. })
        ));
        assert!(matches!(
            map_v(&zp(&[0, 1])),
            Err(MzvError::Inadmissible { .. })
        ));
    }

    #[test]
    fn ihara_examples() {
        assert_eq!(ihara_s(&zp(&[2, 1])).unwrap(), &zp(&[2, 1]) + &zp(&[3]));
        assert_eq!(ihara_s_inv(&zp(&[2, 1])).unwrap(), &zp(&[2, 1]) - &zp(&[3]));
        let s = ihara_s(&zp(&[1, 1, 1])).unwrap();
        assert_eq!(s.display_z(), "z{3} + z{2}z{1} + z{1}z{2} + z{1}z{1}z{1}");
        assert_eq!(ihara_s_inv(&s).unwrap(), zp(&[1, 1, 1]));
    }

    #[test]
    fn named_maps() {
        let tau = named("tau").unwrap();
        assert_eq!(tau.apply(&zh(&[5, 1])).unwrap(), zh(&[3, 1, 1, 1]));
        assert!(named("dn:0").is_err());
        assert!(named("bogus").is_err());
        assert_eq!(named("dn:2").unwrap().codomain(), Alphabet::H2);
    }

    #[test]
    fn checked_forward_detects_bad_inverse() {
        let bad = Isomorphism::new(
            Isomorphism::tau_tilde().forward,
            LinearMap::identity(Alphabet::PY),
        );
        assert!(matches!(
            bad.forward_checked(&zp(&[2])),
            Err(MzvError::InconsistentIso(_))
        ));
    }
}
