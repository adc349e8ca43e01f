//! Alphabets, normalized words and the letter-level morphisms between the
//! three word algebras `Q<x0,x1>`, `Q<p,y>` and `Q<p,d,y>` (with `pd = dp = 1`).

mod codec;
pub mod enumerate;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{MzvError, Result};

pub use codec::{block_map, weight_projection, z_decode, z_encode, Composition};
pub use poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    /// Letters `x0, x1`: the classical algebra.
    H2,
    /// Letters `p, y`.
    PY,
    /// Letters `p, d, y`, subject to `pd = dp = 1`.
    PDY,
}

impl Alphabet {
    pub fn letters(self) -> &'static [Letter] {
        match self {
            Alphabet::H2 => &[Letter::X0, Letter::X1],
            Alphabet::PY => &[Letter::P, Letter::Y],
            Alphabet::PDY => &[Letter::P, Letter::Y, Letter::D],
        }
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.letters().contains(&letter)
    }

    /// Short name used on the command line.
    pub fn flag(self) -> &'static str {
        match self {
            Alphabet::H2 => "h",
            Alphabet::PY => "H",
            Alphabet::PDY => "pdy",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::H2 => "Q<x0,x1>",
            Alphabet::PY => "Q<p,y>",
            Alphabet::PDY => "Q<p,d,y>",
        })
    }
}

/// A letter of one of the three alphabets. The declaration order is the
/// canonical letter order used for sorting words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X0,
    X1,
    P,
    Y,
    D,
}

impl Letter {
    pub fn name(self) -> &'static str {
        match self {
            Letter::X0 => "x0",
            Letter::X1 => "x1",
            Letter::P => "p",
            Letter::Y => "y",
            Letter::D => "d",
        }
    }

    pub fn from_name(name: &str) -> Option<Letter> {
        Some(match name {
            "x0" => Letter::X0,
            "x1" => Letter::X1,
            "p" => Letter::P,
            "y" => Letter::Y,
            "d" => Letter::D,
            _ => return None,
        })
    }

    fn cancels(self, next: Letter) -> bool {
        matches!(
            (self, next),
            (Letter::P, Letter::D) | (Letter::D, Letter::P)
        )
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weight, depth and length of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Grading {
    pub weight: i64,
    pub depth: usize,
    pub length: usize,
}

impl std::ops::Add for Grading {
    type Output = Grading;

    fn add(self, rhs: Grading) -> Grading {
        Grading {
            weight: self.weight + rhs.weight,
            depth: self.depth + rhs.depth,
            length: self.length + rhs.length,
        }
    }
}

/// The boundary-letter subspaces of the classical and q-word algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subspace {
    /// Convergent classical words: empty, or `x0 ... x1`.
    SmallH0,
    /// Classical words not ending in `x0`.
    SmallH1,
    /// Classical words not beginning with `x1`.
    SmallHm1,
    /// Empty, or `p ... y`.
    BigH0,
    /// Words not ending in `p`.
    BigH1,
    /// Words not beginning with `y`.
    BigHm1,
}

impl Subspace {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Subspace::SmallH0 | Subspace::SmallH1 | Subspace::SmallHm1 => Alphabet::H2,
            _ => Alphabet::PY,
        }
    }

    pub fn from_name(name: &str) -> Option<Subspace> {
        Some(match name {
            "h0" => Subspace::SmallH0,
            "h1" => Subspace::SmallH1,
            "hm1" | "h-1" => Subspace::SmallHm1,
            "H0" => Subspace::BigH0,
            "H1" => Subspace::BigH1,
            "Hm1" | "H-1" => Subspace::BigHm1,
            _ => return None,
        })
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subspace::SmallH0 => "h0",
            Subspace::SmallH1 => "h1",
            Subspace::SmallHm1 => "h-1",
            Subspace::BigH0 => "H0",
            Subspace::BigH1 => "H1",
            Subspace::BigHm1 => "H-1",
        })
    }
}

/// A normalized word. Words over `{p,d,y}` never contain an adjacent `pd` or
/// `dp`; the empty word is the unit of every alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rewrites `pd -> 1` and `dp -> 1` until no pair is left. The stack pass
/// yields the unique normal form, so the result does not depend on the order
/// in which contractions are applied.
pub fn normalize(raw: &[Letter], alphabet: Alphabet) -> Result<Word> {
    let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
    for &letter in raw {
        if !alphabet.contains(letter) {
            return Err(MzvError::InvalidLetter {
                letter: letter.name().to_string(),
                alphabet,
            });
        }
        match letters.last() {
            Some(&last) if last.cancels(letter) => {
                letters.pop();
            }
            _ => letters.push(letter),
        }
    }
    Ok(Word { alphabet, letters })
}

impl Word {
    pub fn unit(alphabet: Alphabet) -> Word {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Word> {
        normalize(&letters, alphabet)
    }

    /// Reads juxtaposed letter names, e.g. `"ppy"`, `"x0x1x1"`, `"1"`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::unit(alphabet));
        }
        let bytes = text.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let (letter, width) = match bytes[i] {
                b'x' if i + 1 < bytes.len() && bytes[i + 1] == b'0' => (Letter::X0, 2),
                b'x' if i + 1 < bytes.len() && bytes[i + 1] == b'1' => (Letter::X1, 2),
                b'p' => (Letter::P, 1),
                b'y' => (Letter::Y, 1),
                b'd' => (Letter::D, 1),
                b' ' => {
                    i += 1;
                    continue;
                }
                _ => {
                    return Err(MzvError::InvalidLetter {
                        letter: text[i..].chars().next().unwrap_or('?').to_string(),
                        alphabet,
                    })
                }
            };
            letters.push(letter);
            i += width;
        }
        Word::new(alphabet, letters)
    }

    pub(crate) fn from_normalized(alphabet: Alphabet, letters: Vec<Letter>) -> Word {
        Word { alphabet, letters }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// `letter · self`, contracting at the seam when needed.
    pub fn prefixed(&self, letter: Letter) -> Word {
        debug_assert!(self.alphabet.contains(letter));
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        match self.letters.first() {
            Some(&first) if letter.cancels(first) => letters.extend_from_slice(&self.letters[1..]),
            _ => {
                letters.push(letter);
                letters.extend_from_slice(&self.letters);
            }
        }
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// Concatenation `self · other`, normalized.
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut keep = self.letters.len();
        let mut skip = 0;
        while keep > 0
            && skip < other.letters.len()
            && self.letters[keep - 1].cancels(other.letters[skip])
        {
            keep -= 1;
            skip += 1;
        }
        let mut letters = Vec::with_capacity(keep + other.letters.len() - skip);
        letters.extend_from_slice(&self.letters[..keep]);
        letters.extend_from_slice(&other.letters[skip..]);
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            letters: self.letters[from..].to_vec(),
        }
    }

    pub fn grading(&self) -> Grading {
        let length = self.letters.len();
        match self.alphabet {
            Alphabet::H2 => Grading {
                weight: length as i64,
                depth: self.count(Letter::X1),
                length,
            },
            Alphabet::PY | Alphabet::PDY => Grading {
                weight: self.count(Letter::P) as i64 - self.count(Letter::D) as i64,
                depth: self.count(Letter::Y),
                length,
            },
        }
    }

    pub fn weight(&self) -> i64 {
        self.grading().weight
    }

    pub fn depth(&self) -> usize {
        self.grading().depth
    }

    fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Boundary-letter test for the subalgebras `h0, h1, h-1, H0, H1, H-1`.
    pub fn is_in(&self, space: Subspace) -> Result<bool> {
        if space.alphabet() != self.alphabet {
            return Err(MzvError::AlphabetMismatch {
                expected: space.alphabet(),
                found: self.alphabet,
            });
        }
        Ok(self.in_space(space))
    }

    pub(crate) fn in_space(&self, space: Subspace) -> bool {
        if self.letters.is_empty() {
            return true;
        }
        let first = self.letters[0];
        let last = self.letters[self.letters.len() - 1];
        match space {
            Subspace::SmallH0 => first == Letter::X0 && last == Letter::X1,
            Subspace::SmallH1 => last == Letter::X1,
            Subspace::SmallHm1 => first == Letter::X0,
            Subspace::BigH0 => first == Letter::P && last == Letter::Y,
            Subspace::BigH1 => last == Letter::Y,
            Subspace::BigHm1 => first == Letter::P,
        }
    }

    pub(crate) fn require(&self, space: Subspace) -> Result<()> {
        if self.is_in(space)? {
            Ok(())
        } else {
            Err(MzvError::NotInSubspace {
                word: self.to_string(),
                space,
            })
        }
    }

    pub(crate) fn require_alphabet(&self, alphabet: Alphabet) -> Result<()> {
        if self.alphabet == alphabet {
            Ok(())
        } else {
            Err(MzvError::AlphabetMismatch {
                expected: alphabet,
                found: self.alphabet,
            })
        }
    }

    /// Letterwise substitution into another alphabet (no normalization is
    /// needed for the maps used in this crate).
    pub(crate) fn substitute(&self, alphabet: Alphabet, f: impl Fn(Letter) -> Letter) -> Word {
        Word {
            alphabet,
            letters: self.letters.iter().map(|&l| f(l)).collect(),
        }
    }

    /// Reads a `{p,y}` word as a `{p,d,y}` word.
    pub fn to_pdy(&self) -> Result<Word> {
        self.require_alphabet(Alphabet::PY)?;
        Ok(Word {
            alphabet: Alphabet::PDY,
            letters: self.letters.clone(),
        })
    }

    /// Reads a `{p,d,y}` word without `d` as a `{p,y}` word.
    pub fn to_py(&self) -> Result<Word> {
        self.require_alphabet(Alphabet::PDY)?;
        if let Some(pos) = self.letters.iter().position(|&l| l == Letter::D) {
            let _ = pos;
            return Err(MzvError::InvalidLetter {
                letter: "d".into(),
                alphabet: Alphabet::PY,
            });
        }
        Ok(Word {
            alphabet: Alphabet::PY,
            letters: self.letters.clone(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for letter in &self.letters {
            f.write_str(letter.name())?;
        }
        Ok(())
    }
}

/// `Phi: p -> x0, y -> x1`.
pub fn phi(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::PY)?;
    Ok(word.substitute(Alphabet::H2, |l| match l {
        Letter::P => Letter::X0,
        _ => Letter::X1,
    }))
}

/// Inverse of [`phi`].
pub fn phi_inv(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::H2)?;
    Ok(word.substitute(Alphabet::PY, |l| match l {
        Letter::X0 => Letter::P,
        _ => Letter::Y,
    }))
}

/// The injective morphism `J: x0 -> p, x1 -> py`, under which the classical
/// block `x0^{k-1} x1` becomes `p^k y`.
pub fn embed_j(word: &Word) -> Result<Word> {
    word.require_alphabet(Alphabet::H2)?;
    let mut letters = Vec::with_capacity(word.len() * 2);
    for &l in word.letters() {
        letters.push(Letter::P);
        if l == Letter::X1 {
            letters.push(Letter::Y);
        }
    }
    Ok(Word::from_normalized(Alphabet::PY, letters))
}
