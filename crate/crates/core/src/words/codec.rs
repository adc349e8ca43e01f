use std::fmt;

use super::{Alphabet, Letter, Poly, Subspace, Word};
use crate::error::{MzvError, Result};

/// An integer index sequence `(k1, ..., kn)`. Admissibility depends on the
/// consumer and is checked there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition(pub Vec<i64>);

impl Composition {
    pub fn new(parts: impl Into<Vec<i64>>) -> Self {
        Composition(parts.into())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for Composition {
    fn from(parts: Vec<i64>) -> Self {
        Composition(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

fn push_block(letters: &mut Vec<Letter>, k: i64, alphabet: Alphabet) -> Result<()> {
    match alphabet {
        Alphabet::H2 => {
            if k < 1 {
                return Err(MzvError::Encoding { part: k, alphabet });
            }
            letters.extend(std::iter::repeat_n(Letter::X0, (k - 1) as usize));
            letters.push(Letter::X1);
        }
        Alphabet::PY => {
            if k < 0 {
                return Err(MzvError::Encoding { part: k, alphabet });
            }
            letters.extend(std::iter::repeat_n(Letter::P, k as usize));
            letters.push(Letter::Y);
        }
        Alphabet::PDY => {
            let letter = if k >= 0 { Letter::P } else { Letter::D };
            letters.extend(std::iter::repeat_n(letter, k.unsigned_abs() as usize));
            letters.push(Letter::Y);
        }
    }
    Ok(())
}

/// Concatenates z-blocks: `x0^{k-1} x1` over `{x0,x1}`, `p^k y` over `{p,y}`
/// and, over `{p,d,y}`, `d^{|k|} y` for negative `k`.
pub fn z_encode(comp: &Composition, alphabet: Alphabet) -> Result<Word> {
    let mut letters = Vec::new();
    for &k in comp.parts() {
        push_block(&mut letters, k, alphabet)?;
    }
    Ok(Word::from_normalized(alphabet, letters))
}

/// Inverse of [`z_encode`] on words ending in the block terminator.
pub fn z_decode(word: &Word) -> Result<Composition> {
    let (up, down, end) = match word.alphabet() {
        Alphabet::H2 => (Letter::X0, None, Letter::X1),
        Alphabet::PY => (Letter::P, None, Letter::Y),
        Alphabet::PDY => (Letter::P, Some(Letter::D), Letter::Y),
    };
    if word.last().is_some_and(|l| l != end) {
        let space = match word.alphabet() {
            Alphabet::H2 => Subspace::SmallH1,
            _ => Subspace::BigH1,
        };
        return Err(MzvError::NotInSubspace {
            word: word.to_string(),
            space,
        });
    }
    let offset = i64::from(word.alphabet() == Alphabet::H2);
    let mut parts = Vec::new();
    let mut k = 0i64;
    for &l in word.letters() {
        if l == end {
            parts.push(k + offset);
            k = 0;
        } else if l == up {
            k += 1;
        } else if Some(l) == down {
            k -= 1;
        }
    }
    Ok(Composition(parts))
}

/// Sends `p^k y` to `x0^{k-1} x1`, blockwise. Weight is preserved.
pub fn block_map(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::PY)?;
    let comp = z_decode(word)?;
    if comp.parts().contains(&0) {
        return Err(MzvError::ZeroPart {
            word: word.to_string(),
        });
    }
    z_encode(&comp, Alphabet::H2)
}

/// Keeps the terms whose word has the given weight.
pub fn weight_projection(poly: &Poly, weight: i64) -> Poly {
    poly.filter(|w| w.weight() == weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;

    fn w(a: Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    #[test]
    fn encode_examples() {
        let enc = |parts: &[i64], a| z_encode(&Composition::new(parts), a).unwrap();
        assert_eq!(enc(&[2, 1], Alphabet::H2), w(Alphabet::H2, "x0x1x1"));
        assert_eq!(enc(&[1, 0], Alphabet::PY), w(Alphabet::PY, "pyy"));
        assert_eq!(enc(&[5, 1], Alphabet::H2), w(Alphabet::H2, "x0x0x0x0x1x1"));
        assert_eq!(enc(&[], Alphabet::PY), Word::unit(Alphabet::PY));
        assert_eq!(enc(&[-2, 1], Alphabet::PDY), w(Alphabet::PDY, "ddypy"));
        assert!(z_encode(&Composition::new([0]), Alphabet::H2).is_err());
        assert!(z_encode(&Composition::new([-1]), Alphabet::PY).is_err());
    }

    #[test]
    fn decode_examples() {
        let dec = |a, s| z_decode(&w(a, s)).unwrap().0;
        assert_eq!(dec(Alphabet::PY, "pyy"), vec![1, 0]);
        assert_eq!(dec(Alphabet::H2, "x0x0x1x1x1x1"), vec![3, 1, 1, 1]);
        assert_eq!(dec(Alphabet::PY, "1"), Vec::<i64>::new());
        assert_eq!(dec(Alphabet::PDY, "ddypy"), vec![-2, 1]);
        assert!(matches!(
            z_decode(&w(Alphabet::PY, "pyp")),
            Err(MzvError::NotInSubspace { .. })
        ));
    }

    #[test]
    fn block_map_examples() {
        let bm = |s| block_map(&w(Alphabet::PY, s)).unwrap();
        assert_eq!(bm("pypy"), w(Alphabet::H2, "x1x1"));
        assert_eq!(bm("ppy"), w(Alphabet::H2, "x0x1"));
        assert_eq!(bm("ppypy"), w(Alphabet::H2, "x0x1x1"));
        assert!(matches!(
            block_map(&w(Alphabet::PY, "pyy")),
            Err(MzvError::ZeroPart { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let poly = Poly::from_terms(
            Alphabet::PY,
            [
                (w(Alphabet::PY, "pypy"), rational(2)),
                (w(Alphabet::PY, "pyy"), rational(1)),
                (w(Alphabet::PY, "ppy"), rational(-2)),
                (w(Alphabet::PY, "py"), rational(-1)),
            ],
        );
        let expected = Poly::from_terms(
            Alphabet::PY,
            [
                (w(Alphabet::PY, "pypy"), rational(2)),
                (w(Alphabet::PY, "ppy"), rational(-2)),
            ],
        );
        assert_eq!(weight_projection(&poly, 2), expected);
        let h = Poly::word(w(Alphabet::H2, "x0x1")) + Poly::word(w(Alphabet::H2, "x1"));
        assert_eq!(
            weight_projection(&h, 2),
            Poly::word(w(Alphabet::H2, "x0x1"))
        );
        assert!(weight_projection(&Poly::zero(Alphabet::PY), 3).is_zero());
    }

    #[test]
    fn composition_display() {
        assert_eq!(Composition::new([3, 1]).to_string(), "(3,1)");
        assert_eq!(Composition::default().to_string(), "()");
    }
}
