use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::linear::{LinComb, Rational};
use crate::words::{z_decode, z_encode, Alphabet, Composition, Poly, Subspace, Word};

pub(crate) type CompComb = LinComb<Vec<i64>>;

fn prefix_all(comb: &CompComb, k: i64) -> CompComb {
    comb.map_keys(|parts| {
        let mut out = Vec::with_capacity(parts.len() + 1);
        out.push(k);
        out.extend_from_slice(parts);
        out
    })
}

/// λ-weighted quasi-shuffle of two index sequences.
pub(crate) fn stuffle(a: &[i64], b: &[i64], lambda: &Rational) -> CompComb {
    let (la, lb) = (a.len(), b.len());
    let cols = lb + 1;
    let mut t: Vec<CompComb> = vec![CompComb::new(); (la + 1) * cols];
    for j in 0..=lb {
        t[la * cols + j] = CompComb::monomial(b[j..].to_vec(), Rational::one());
    }
    for i in 0..la {
        t[i * cols + lb] = CompComb::monomial(a[i..].to_vec(), Rational::one());
    }
    for i in (0..la).rev() {
        for j in (0..lb).rev() {
            let mut cell = prefix_all(&t[(i + 1) * cols + j], a[i]);
            cell.add_assign(&prefix_all(&t[i * cols + j + 1], b[j]));
            if !lambda.is_zero() {
                cell.add_scaled(&prefix_all(&t[(i + 1) * cols + j + 1], a[i] + b[j]), lambda);
            }
            t[i * cols + j] = cell;
        }
    }
    t.swap_remove(0)
}

pub(crate) fn encode_comb(comb: &CompComb, alphabet: Alphabet) -> Result<Poly> {
    let mut out = Poly::zero(alphabet);
    for (parts, c) in comb {
        out.add_term(z_encode(&Composition(parts.clone()), alphabet)?, c.clone());
    }
    Ok(out)
}

pub(crate) fn decode_in(word: &Word, space: Subspace) -> Result<Vec<i64>> {
    word.require(space)?;
    Ok(z_decode(word)?.0)
}

/// Classical quasi-shuffle of two `{x0,x1}` words in `h1`.
pub fn quasi_shuffle_words(u: &Word, v: &Word) -> Result<Poly> {
    let a = decode_in(u, Subspace::SmallH1)?;
    let b = decode_in(v, Subspace::SmallH1)?;
    encode_comb(&stuffle(&a, &b, &Rational::one()), Alphabet::H2)
}

/// `u ∗_λ v` for `{p,y}` words in `H1`.
pub fn quasi_shuffle_lambda_words(u: &Word, v: &Word, lambda: &Rational) -> Result<Poly> {
    if lambda.is_zero() {
        return Err(MzvError::ZeroLambda);
    }
    let a = decode_in(u, Subspace::BigH1)?;
    let b = decode_in(v, Subspace::BigH1)?;
    encode_comb(&stuffle(&a, &b, lambda), Alphabet::PY)
}

/// `T(z_m w) = z_m w − z_{m−1} w`, defined for leading part `m ≥ 1`.
pub(crate) fn t_parts(parts: &[i64]) -> Result<CompComb> {
    let Some(&m) = parts.first() else {
        return Err(MzvError::EmptyWord);
    };
    if m < 1 {
        return Err(MzvError::LeadingPart(m));
    }
    let mut lowered = parts.to_vec();
    lowered[0] = m - 1;
    let mut out = CompComb::monomial(parts.to_vec(), Rational::one());
    out.add_term(lowered, -Rational::one());
    Ok(out)
}

pub fn t_op_word(word: &Word) -> Result<Poly> {
    word.require_alphabet(Alphabet::PY)?;
    let parts = z_decode(word)?.0;
    encode_comb(&t_parts(&parts)?, Alphabet::PY)
}

fn stuffle_comb(a: &CompComb, b: &CompComb) -> CompComb {
    let one = Rational::one();
    let mut out = CompComb::new();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_scaled(&stuffle(x, y, &one), &(cx * cy));
        }
    }
    out
}

/// `z_m u ∗_OOZ z_n v = z_m(u ∗_1 T(z_n v)) + z_n(T(z_m u) ∗_1 v) + (z_{m+n} − z_{m+n−1})(u ∗_1 v)`.
pub(crate) fn ooz_parts(a: &[i64], b: &[i64]) -> Result<CompComb> {
    if a.is_empty() {
        return Ok(CompComb::monomial(b.to_vec(), Rational::one()));
    }
    if b.is_empty() {
        return Ok(CompComb::monomial(a.to_vec(), Rational::one()));
    }
    let (m, u) = (a[0], &a[1..]);
    let (n, v) = (b[0], &b[1..]);
    let u_comb = CompComb::monomial(u.to_vec(), Rational::one());
    let v_comb = CompComb::monomial(v.to_vec(), Rational::one());
    let mut out = prefix_all(&stuffle_comb(&u_comb, &t_parts(b)?), m);
    out.add_assign(&prefix_all(&stuffle_comb(&t_parts(a)?, &v_comb), n));
    let rest = stuffle(u, v, &Rational::one());
    out.add_assign(&prefix_all(&rest, m + n));
    out.sub_assign(&prefix_all(&rest, m + n - 1));
    Ok(out)
}

pub fn ooz_quasi_shuffle_words(u: &Word, v: &Word) -> Result<Poly> {
    let a = decode_in(u, Subspace::BigH0)?;
    let b = decode_in(v, Subspace::BigH0)?;
    encode_comb(&ooz_parts(&a, &b)?, Alphabet::PY)
}

/// Ihara's circle product on z-letters: `z_a ∘ 1 = 0`, `z_a ∘ z_b w = z_{a+b} w`.
/// The left factor must be a single z-letter.
pub fn ihara_circ_words(u: &Word, v: &Word) -> Result<Poly> {
    let alphabet = u.alphabet();
    v.require_alphabet(alphabet)?;
    let space = match alphabet {
        Alphabet::H2 => Subspace::SmallH1,
        _ => Subspace::BigH1,
    };
    let a = decode_in(u, space)?;
    let b = decode_in(v, space)?;
    if a.len() != 1 {
        return Err(MzvError::CircleLeft(u.to_string()));
    }
    if b.is_empty() {
        return Ok(Poly::zero(alphabet));
    }
    let mut parts = b;
    parts[0] += a[0];
    Ok(Poly::word(z_encode(&Composition(parts), alphabet)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;

    fn zp(parts: &[i64]) -> Word {
        z_encode(&Composition::new(parts), Alphabet::PY).unwrap()
    }

    fn zh(parts: &[i64]) -> Word {
        z_encode(&Composition::new(parts), Alphabet::H2).unwrap()
    }

    fn poly(words: &[(Word, i64)]) -> Poly {
        let a = words[0].0.alphabet();
        Poly::from_terms(a, words.iter().map(|(w, c)| (w.clone(), rational(*c))))
    }

    #[test]
    fn quasi_shuffle_examples() {
        assert_eq!(
            quasi_shuffle_words(&zh(&[2]), &zh(&[2])).unwrap(),
            poly(&[(zh(&[2, 2]), 2), (zh(&[4]), 1)])
        );
        assert_eq!(
            quasi_shuffle_words(&zh(&[1]), &zh(&[2])).unwrap(),
            poly(&[(zh(&[1, 2]), 1), (zh(&[2, 1]), 1), (zh(&[3]), 1)])
        );
        assert_eq!(
            quasi_shuffle_words(&zh(&[]), &zh(&[3, 1])).unwrap(),
            Poly::word(zh(&[3, 1]))
        );
        assert!(
            quasi_shuffle_words(&Word::parse(Alphabet::H2, "x1x0").unwrap(), &zh(&[1])).is_err()
        );
    }

    #[test]
    fn lambda_quasi_shuffle_examples() {
        let one = rational(1);
        let minus = rational(-1);
        assert_eq!(
            quasi_shuffle_lambda_words(&zp(&[1]), &zp(&[1]), &one).unwrap(),
            poly(&[(zp(&[1, 1]), 2), (zp(&[2]), 1)])
        );
        assert_eq!(
            quasi_shuffle_lambda_words(&zp(&[1]), &zp(&[1]), &minus).unwrap(),
            poly(&[(zp(&[1, 1]), 2), (zp(&[2]), -1)])
        );
        assert_eq!(
            quasi_shuffle_lambda_words(&zp(&[1]), &zp(&[0]), &one).unwrap(),
            poly(&[(zp(&[1, 0]), 1), (zp(&[0, 1]), 1), (zp(&[1]), 1)])
        );
    }

    #[test]
    fn t_op_examples() {
        assert_eq!(
            t_op_word(&zp(&[2, 1])).unwrap(),
            poly(&[(zp(&[2, 1]), 1), (zp(&[1, 1]), -1)])
        );
        assert_eq!(
            t_op_word(&zp(&[1])).unwrap(),
            poly(&[(zp(&[1]), 1), (zp(&[0]), -1)])
        );
        assert_eq!(
            t_op_word(&zp(&[3])).unwrap(),
            poly(&[(zp(&[3]), 1), (zp(&[2]), -1)])
        );
        assert!(matches!(
            t_op_word(&zp(&[0, 1])),
            Err(MzvError::LeadingPart(0))
        ));
        assert!(matches!(t_op_word(&zp(&[])), Err(MzvError::EmptyWord)));
    }

    #[test]
    fn ooz_examples() {
        assert_eq!(
            ooz_quasi_shuffle_words(&zp(&[1]), &zp(&[1])).unwrap(),
            poly(&[
                (zp(&[1, 1]), 2),
                (zp(&[1, 0]), -2),
                (zp(&[2]), 1),
                (zp(&[1]), -1)
            ])
        );
        assert_eq!(
            ooz_quasi_shuffle_words(&zp(&[]), &zp(&[2, 0])).unwrap(),
            Poly::word(zp(&[2, 0]))
        );
        assert!(ooz_quasi_shuffle_words(&zp(&[0]), &zp(&[1])).is_err());
    }

    #[test]
    fn circle_examples() {
        let w = zp(&[3, 1]);
        assert_eq!(
            ihara_circ_words(&zp(&[2]), &w).unwrap(),
            Poly::word(zp(&[5, 1]))
        );
        assert!(ihara_circ_words(&zp(&[2]), &zp(&[])).unwrap().is_zero());
        assert_eq!(
            ihara_circ_words(&zp(&[0]), &zp(&[1])).unwrap(),
            Poly::word(zp(&[1]))
        );
        assert!(matches!(
            ihara_circ_words(&zp(&[1, 1]), &zp(&[1])),
            Err(MzvError::CircleLeft(_))
        ));
    }
}
