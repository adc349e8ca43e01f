use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::linear::Rational;
use crate::words::{normalize, Alphabet, Letter, Poly, Word};

/// Suffix table `f(i, j)` for the product of `a[i..]` and `b[j..]`.
pub(crate) struct Table {
    cols: usize,
    cells: Vec<Poly>,
}

impl Table {
    pub(crate) fn new(rows: usize, cols: usize, alphabet: Alphabet) -> Table {
        Table {
            cols,
            cells: vec![Poly::zero(alphabet); rows * cols],
        }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> &Poly {
        &self.cells[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: Poly) {
        self.cells[i * self.cols + j] = value;
    }
}

fn raw_suffix(letters: &[Letter], alphabet: Alphabet) -> Poly {
    // inputs were validated by the caller, so normalization cannot fail
    Poly::word(normalize(letters, alphabet).expect("validated letters"))
}

fn fill_base(table: &mut Table, a: &[Letter], b: &[Letter], alphabet: Alphabet) {
    for j in 0..=b.len() {
        table.set(a.len(), j, raw_suffix(&b[j..], alphabet));
    }
    for i in 0..a.len() {
        table.set(i, b.len(), raw_suffix(&a[i..], alphabet));
    }
}

fn tau_letter(l: Letter) -> Letter {
    match l {
        Letter::X0 => Letter::X1,
        Letter::X1 => Letter::X0,
        other => other,
    }
}

/// Classical shuffle of two words over `{x0,x1}`.
pub fn shuffle_words(u: &Word, v: &Word) -> Poly {
    let (a, b) = (u.letters(), v.letters());
    let alphabet = u.alphabet();
    let mut t = Table::new(a.len() + 1, b.len() + 1, alphabet);
    fill_base(&mut t, a, b, alphabet);
    for i in (0..a.len()).rev() {
        for j in (0..b.len()).rev() {
            let mut cell = t.get(i + 1, j).prefixed(a[i]);
            cell.add_scaled(&t.get(i, j + 1).prefixed(b[j]), &Rational::one());
            t.set(i, j, cell);
        }
    }
    t.get(0, 0).clone()
}

/// `u ⧢_λ v` over `{p,y}` or `{p,d,y}`, on letter sequences that need not be
/// normalized. Every prefixing step normalizes at the head, so the result is
/// a normal-form polynomial.
pub fn shuffle_lambda_letters(
    a: &[Letter],
    b: &[Letter],
    lambda: &Rational,
    alphabet: Alphabet,
) -> Result<Poly> {
    if lambda.is_zero() {
        return Err(MzvError::ZeroLambda);
    }
    for &l in a.iter().chain(b) {
        if !alphabet.contains(l) || alphabet == Alphabet::H2 {
            return Err(MzvError::InvalidLetter {
                letter: l.name().into(),
                alphabet,
            });
        }
    }
    let one = Rational::one();
    let minus_one = -Rational::one();
    let inv_lambda = lambda.recip();
    let mut t = Table::new(a.len() + 1, b.len() + 1, alphabet);
    fill_base(&mut t, a, b, alphabet);
    for i in (0..a.len()).rev() {
        for j in (0..b.len()).rev() {
            let right = t.get(i + 1, j);
            let down = t.get(i, j + 1);
            let diag = t.get(i + 1, j + 1);
            let cell = match (a[i], b[j]) {
                (Letter::Y, _) => right.prefixed(Letter::Y),
                (_, Letter::Y) => down.prefixed(Letter::Y),
                (Letter::P, Letter::P) => {
                    let mut inner = down.clone();
                    inner.add_scaled(right, &one);
                    inner.add_scaled(diag, lambda);
                    inner.prefixed(Letter::P)
                }
                (Letter::D, Letter::D) => {
                    let mut inner = diag.prefixed(Letter::D);
                    inner.add_scaled(right, &minus_one);
                    inner.add_scaled(down, &minus_one);
                    inner.scaled(&inv_lambda)
                }
                (Letter::D, Letter::P) => {
                    let mut inner = right.prefixed(Letter::D);
                    inner.add_scaled(diag, &minus_one);
                    inner.add_scaled(down, &-lambda);
                    inner
                }
                (Letter::P, Letter::D) => {
                    let mut inner = down.prefixed(Letter::D);
                    inner.add_scaled(diag, &minus_one);
                    inner.add_scaled(right, &-lambda);
                    inner
                }
                _ => unreachable!("letters validated above"),
            };
            t.set(i, j, cell);
        }
    }
    Ok(t.get(0, 0).clone())
}

/// Muneta's star shuffle on `{x0,x1}` words.
pub fn shuffle_star_words(u: &Word, v: &Word) -> Poly {
    let (a, b) = (u.letters(), v.letters());
    let alphabet = u.alphabet();
    let (la, lb) = (a.len(), b.len());
    let mut t = Table::new(la + 1, lb + 1, alphabet);
    fill_base(&mut t, a, b, alphabet);
    let minus_one = -Rational::one();
    for i in (0..la).rev() {
        for j in (0..lb).rev() {
            let mut cell = t.get(i + 1, j).prefixed(a[i]);
            cell.add_scaled(&t.get(i, j + 1).prefixed(b[j]), &Rational::one());
            if i + 1 == la {
                let w = Word::from_normalized(alphabet, b[j..].to_vec()).prefixed(tau_letter(a[i]));
                cell.add_term(w, minus_one.clone());
            }
            if j + 1 == lb {
                let w = Word::from_normalized(alphabet, a[i..].to_vec()).prefixed(tau_letter(b[j]));
                cell.add_term(w, minus_one.clone());
            }
            t.set(i, j, cell);
        }
    }
    t.get(0, 0).clone()
}

/// `ua ⧢⋆ vb` through ordinary shuffles:
/// `ua ⧢ vb − (u ⧢ v τ(b)) a − (u τ(a) ⧢ v) b`.
pub fn shuffle_star_alt_words(ua: &Word, vb: &Word) -> Result<Poly> {
    let (Some(a), Some(b)) = (ua.last(), vb.last()) else {
        return Err(MzvError::EmptyWord);
    };
    let alphabet = ua.alphabet();
    let u = Word::from_normalized(alphabet, ua.letters()[..ua.len() - 1].to_vec());
    let v = Word::from_normalized(alphabet, vb.letters()[..vb.len() - 1].to_vec());
    let letter = |l| Word::from_normalized(alphabet, vec![l]);
    let mut out = shuffle_words(ua, vb);
    let first = shuffle_words(&u, &v.concat(&letter(tau_letter(b)))).concat_word(&letter(a));
    let second = shuffle_words(&u.concat(&letter(tau_letter(a))), &v).concat_word(&letter(b));
    out = &out - &first;
    out = &out - &second;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{ratio, rational};

    fn w(a: Alphabet, s: &str) -> Word {
        Word::parse(a, s).unwrap()
    }

    fn h(s: &str) -> Word {
        w(Alphabet::H2, s)
    }

    fn poly(a: Alphabet, terms: &[(&str, Rational)]) -> Poly {
        Poly::from_terms(a, terms.iter().map(|(s, c)| (w(a, s), c.clone())))
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(
            shuffle_words(&h("x0x1"), &h("x0x1")),
            poly(
                Alphabet::H2,
                &[("x0x1x0x1", rational(2)), ("x0x0x1x1", rational(4))]
            )
        );
        assert_eq!(shuffle_words(&h("1"), &h("x0x1")), Poly::word(h("x0x1")));
        assert_eq!(
            shuffle_words(&h("x1"), &h("x0")),
            poly(
                Alphabet::H2,
                &[("x1x0", rational(1)), ("x0x1", rational(1))]
            )
        );
    }

    #[test]
    fn lambda_shuffle_py() {
        let py = w(Alphabet::PY, "py");
        let out =
            shuffle_lambda_letters(py.letters(), py.letters(), &rational(1), Alphabet::PY).unwrap();
        assert_eq!(
            out,
            poly(Alphabet::PY, &[("pypy", rational(2)), ("pyy", rational(1))])
        );
        let y = w(Alphabet::PY, "y");
        let out =
            shuffle_lambda_letters(y.letters(), y.letters(), &ratio(3, 7), Alphabet::PY).unwrap();
        assert_eq!(out, Poly::word(w(Alphabet::PY, "yy")));
    }

    #[test]
    fn lambda_shuffle_pdy() {
        let d = w(Alphabet::PDY, "d");
        let p = w(Alphabet::PDY, "p");
        let y = w(Alphabet::PDY, "y");
        for lambda in [rational(1), rational(-1), rational(2), ratio(-3, 5)] {
            let dd =
                shuffle_lambda_letters(d.letters(), d.letters(), &lambda, Alphabet::PDY).unwrap();
            assert_eq!(dd, Poly::monomial(d.clone(), -lambda.recip()));
            let dp =
                shuffle_lambda_letters(d.letters(), p.letters(), &lambda, Alphabet::PDY).unwrap();
            assert_eq!(dp, Poly::monomial(d.clone(), -lambda.clone()));
            let pd =
                shuffle_lambda_letters(p.letters(), d.letters(), &lambda, Alphabet::PDY).unwrap();
            assert_eq!(pd, dp);
        }
        let yd =
            shuffle_lambda_letters(y.letters(), d.letters(), &rational(1), Alphabet::PDY).unwrap();
        assert_eq!(yd, Poly::word(w(Alphabet::PDY, "yd")));
        assert!(matches!(
            shuffle_lambda_letters(d.letters(), d.letters(), &rational(0), Alphabet::PDY),
            Err(MzvError::ZeroLambda)
        ));
    }

    #[test]
    fn star_shuffle_examples() {
        assert_eq!(
            shuffle_star_words(&h("x1"), &h("x1")),
            poly(
                Alphabet::H2,
                &[("x1x1", rational(2)), ("x0x1", rational(-2))]
            )
        );
        assert_eq!(
            shuffle_star_words(&h("x1"), &h("x0")),
            poly(
                Alphabet::H2,
                &[
                    ("x1x0", rational(1)),
                    ("x0x1", rational(1)),
                    ("x0x0", rational(-1)),
                    ("x1x1", rational(-1))
                ]
            )
        );
        assert_eq!(
            shuffle_star_words(&h("1"), &h("x0x1")),
            Poly::word(h("x0x1"))
        );
        assert_eq!(
            shuffle_star_words(&h("x0"), &h("x0")),
            poly(
                Alphabet::H2,
                &[("x0x0", rational(2)), ("x1x0", rational(-2))]
            )
        );
    }

    #[test]
    fn star_shuffle_alt_matches_on_small_cases() {
        for (a, b) in [
            ("x1", "x1"),
            ("x0", "x0"),
            ("x1", "x0"),
            ("x0x1", "x0x1"),
            ("x0x0x1", "x1x0"),
        ] {
            assert_eq!(
                shuffle_star_alt_words(&h(a), &h(b)).unwrap(),
                shuffle_star_words(&h(a), &h(b)),
                "{a} {b}"
            );
        }
        assert!(matches!(
            shuffle_star_alt_words(&h("1"), &h("x0")),
            Err(MzvError::EmptyWord)
        ));
    }
}
