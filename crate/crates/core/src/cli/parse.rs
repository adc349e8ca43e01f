//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | 'sh' | 'sq') factor)*
//! factor := '-' factor | [rational] atom*        (at least one of the two)
//! atom   := letter | 'z{' int '}' | '(' int (',' int)* ')' | '()' | '(' expr ')'
//! letter := 'x0' | 'x1' | 'p' | 'y' | 'd'
//! ```
//!
//! Juxtaposed atoms are concatenated. A parenthesized list of integers is
//! always read as a composition.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{MzvError, Result};
use crate::linear::Rational;
use crate::maps::Isomorphism;
use crate::products::{
    quasi_shuffle, quasi_shuffle_lambda, shuffle, shuffle_lambda_pdy, shuffle_lambda_py,
    transferred_product, ProductKind,
};
use crate::words::{z_encode, Alphabet, Composition, Letter, Poly, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Sh,
    Sq,
    LParen,
    RParen,
    Comma,
    Letter(Letter),
    Z(i64),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Slash => "`/`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Sh => "`sh`".into(),
            Tok::Sq => "`sq`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Letter(l) => format!("letter {}", l.name()),
            Tok::Z(k) => format!("z{{{k}}}"),
        }
    }
}

fn parse_error(pos: usize, expected: &str, found: impl Into<String>) -> MzvError {
    MzvError::Parse {
        pos,
        expected: expected.into(),
        found: found.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' => {
                i += 1;
                continue;
            }
            b'/' => Some(Tok::Slash),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'p' => Some(Tok::Letter(Letter::P)),
            b'y' => Some(Tok::Letter(Letter::Y)),
            b'd' => Some(Tok::Letter(Letter::D)),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((start, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((start, Tok::Int(n)));
        } else if text[i..].starts_with("x0") || text[i..].starts_with("x1") {
            let l = if bytes[i + 1] == b'0' {
                Letter::X0
            } else {
                Letter::X1
            };
            out.push((start, Tok::Letter(l)));
            i += 2;
        } else if text[i..].starts_with("sh") || text[i..].starts_with("sq") {
            out.push((
                start,
                if bytes[i + 1] == b'h' {
                    Tok::Sh
                } else {
                    Tok::Sq
                },
            ));
            i += 2;
        } else if text[i..].starts_with("z{") {
            i += 2;
            let num_start = i;
            if i < bytes.len() && bytes[i] == b'-' {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: i64 = text[num_start..i]
                .parse()
                .map_err(|_| parse_error(num_start, "integer index", &text[num_start..i]))?;
            if i >= bytes.len() || bytes[i] != b'}' {
                return Err(parse_error(i, "`}`", snippet(text, i)));
            }
            i += 1;
            out.push((start, Tok::Z(k)));
        } else {
            return Err(parse_error(
                start,
                "letter, number or operator",
                snippet(text, start),
            ));
        }
    }
    Ok(out)
}

fn snippet(text: &str, pos: usize) -> String {
    match text[pos..].chars().next() {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

/// Settings that resolve the meaning of an expression.
#[derive(Debug, Clone)]
pub struct ExprContext {
    pub alphabet: Option<Alphabet>,
    pub lambda: Rational,
}

impl Default for ExprContext {
    fn default() -> Self {
        ExprContext {
            alphabet: None,
            lambda: Rational::one(),
        }
    }
}

/// Result of [`parse_expr`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Poly(Poly),
    Composition(Composition),
}

fn infer_alphabet(tokens: &[(usize, Tok)], given: Option<Alphabet>) -> Result<Alphabet> {
    let mut classical = None;
    let mut py = None;
    let mut has_d = false;
    for (pos, t) in tokens {
        if let Tok::Letter(l) = t {
            match l {
                Letter::X0 | Letter::X1 => classical = classical.or(Some(*pos)),
                Letter::D => {
                    has_d = true;
                    py = py.or(Some(*pos));
                }
                _ => py = py.or(Some(*pos)),
            }
        }
    }
    if let Some(a) = given {
        for (pos, t) in tokens {
            if let Tok::Letter(l) = t {
                if !a.contains(*l) {
                    return Err(MzvError::InvalidLetter {
                        letter: format!("{} (at byte {pos})", l.name()),
                        alphabet: a,
                    });
                }
            }
        }
        return Ok(a);
    }
    match (classical, py) {
        (Some(_), Some(pos)) => Err(parse_error(
            pos,
            "letters from a single alphabet",
            "mixed alphabets",
        )),
        (Some(_), None) => Ok(Alphabet::H2),
        (None, Some(_)) if has_d => Ok(Alphabet::PDY),
        (None, Some(_)) => Ok(Alphabet::PY),
        (None, None) => Err(MzvError::Usage(
            "alphabet is ambiguous; pass --alphabet h, H or pdy".into(),
        )),
    }
}

struct Parser<'a> {
    tokens: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    alphabet: Alphabet,
    lambda: &'a Rational,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(parse_error(self.pos(), what, self.found()))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(t @ (Tok::Star | Tok::Sh | Tok::Sq)) => t.clone(),
                _ => return Ok(acc),
            };
            let pos = self.pos();
            self.at += 1;
            let rhs = self.factor()?;
            acc = self.apply(&op, &acc, &rhs).map_err(|e| match e {
                MzvError::Usage(msg) => MzvError::Usage(format!("{msg} (operator at byte {pos})")),
                other => other,
            })?;
        }
    }

    fn apply(&self, op: &Tok, u: &Poly, v: &Poly) -> Result<Poly> {
        let classical_lambda = || {
            if self.lambda.is_one() {
                Ok(())
            } else {
                Err(MzvError::Usage(
                    "--lambda other than 1 is not defined on x0,x1 words".into(),
                ))
            }
        };
        match (op, self.alphabet) {
            (Tok::Star, Alphabet::H2) => {
                classical_lambda()?;
                quasi_shuffle(u, v)
            }
            (Tok::Star, Alphabet::PY) => quasi_shuffle_lambda(u, v, self.lambda),
            (Tok::Sh, Alphabet::H2) => {
                classical_lambda()?;
                shuffle(u, v)
            }
            (Tok::Sh, Alphabet::PY) => shuffle_lambda_py(u, v, self.lambda),
            (Tok::Sh, Alphabet::PDY) => shuffle_lambda_pdy(u, v, self.lambda),
            (Tok::Sq, Alphabet::H2) => {
                classical_lambda()?;
                transferred_product(&ProductKind::QuasiShuffle, &Isomorphism::tau(), u, v)
            }
            (Tok::Sq, Alphabet::PY) => transferred_product(
                &ProductKind::QuasiShuffleLambda(self.lambda.clone()),
                &Isomorphism::tau_tilde(),
                u,
                v,
            ),
            (op, a) => Err(MzvError::Usage(format!(
                "{} is not defined on {a}",
                op.describe()
            ))),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(self.factor()?.negated());
        }
        let coeff = self.coefficient()?;
        let mut body: Option<Poly> = None;
        while let Some(atom) = self.atom()? {
            body = Some(match body {
                None => atom,
                Some(prev) => prev.concat(&atom),
            });
        }
        match (coeff, body) {
            (None, None) => Err(parse_error(self.pos(), "number, word or `(`", self.found())),
            (Some(c), None) => Ok(Poly::monomial(Word::unit(self.alphabet), c)),
            (None, Some(b)) => Ok(b),
            (Some(c), Some(b)) => Ok(b.scaled(&c)),
        }
    }

    fn coefficient(&mut self) -> Result<Option<Rational>> {
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return Ok(None);
        };
        self.at += 1;
        if self.peek() != Some(&Tok::Slash) {
            return Ok(Some(Rational::from_integer(n)));
        }
        self.at += 1;
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(d)) if !d.is_zero() => {
                self.at += 1;
                Ok(Some(Rational::new(n, d)))
            }
            _ => Err(parse_error(pos, "nonzero denominator", self.found())),
        }
    }

    fn atom(&mut self) -> Result<Option<Poly>> {
        match self.peek().cloned() {
            Some(Tok::Letter(l)) => {
                self.at += 1;
                Ok(Some(Poly::word(Word::new(self.alphabet, vec![l])?)))
            }
            Some(Tok::Z(k)) => {
                let pos = self.pos();
                self.at += 1;
                let w = z_encode(&Composition::new([k]), self.alphabet).map_err(|e| match e {
                    MzvError::Encoding { .. } => parse_error(
                        pos,
                        &format!("z-block valid over {}", self.alphabet),
                        format!("z{{{k}}}"),
                    ),
                    other => other,
                })?;
                Ok(Some(Poly::word(w)))
            }
            Some(Tok::LParen) => {
                if let Some((comp, next)) = composition_at(self.tokens, self.at) {
                    self.at = next;
                    return Ok(Some(Poly::word(z_encode(&comp, self.alphabet)?)));
                }
                self.at += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Some(inner))
            }
            _ => Ok(None),
        }
    }
}

/// Reads `(k1, ..., kn)` or `()` starting at token `at`; returns the token
/// index after the closing parenthesis.
fn composition_at(tokens: &[(usize, Tok)], at: usize) -> Option<(Composition, usize)> {
    let tok = |i: usize| tokens.get(i).map(|(_, t)| t);
    if tok(at) != Some(&Tok::LParen) {
        return None;
    }
    let mut i = at + 1;
    let mut parts = Vec::new();
    if tok(i) == Some(&Tok::RParen) {
        return Some((Composition(parts), i + 1));
    }
    loop {
        let negative = tok(i) == Some(&Tok::Minus);
        if negative {
            i += 1;
        }
        let Some(Tok::Int(n)) = tok(i) else {
            return None;
        };
        let k: i64 = n.try_into().ok()?;
        parts.push(if negative { -k } else { k });
        i += 1;
        match tok(i) {
            Some(Tok::Comma) => i += 1,
            Some(Tok::RParen) => return Some((Composition(parts), i + 1)),
            _ => return None,
        }
    }
}

/// Parses a composition `(k1,...,kn)`.
pub fn parse_composition(text: &str) -> Result<Composition> {
    let tokens = tokenize(text)?;
    match composition_at(&tokens, 0) {
        Some((comp, next)) if next == tokens.len() => Ok(comp),
        Some((_, next)) => Err(parse_error(
            tokens[next].0,
            "end of input",
            tokens[next].1.describe(),
        )),
        None => Err(parse_error(
            0,
            "composition `(k1,...,kn)`",
            snippet(text, 0),
        )),
    }
}

/// Parses a word polynomial expression.
pub fn parse_poly(text: &str, ctx: &ExprContext) -> Result<Poly> {
    let tokens = tokenize(text)?;
    let alphabet = infer_alphabet(&tokens, ctx.alphabet)?;
    let mut parser = Parser {
        tokens: &tokens,
        at: 0,
        end: text.len(),
        alphabet,
        lambda: &ctx.lambda,
    };
    let poly = parser.expr()?;
    if parser.at != tokens.len() {
        return Err(parse_error(
            parser.pos(),
            "operator or end of input",
            parser.found(),
        ));
    }
    Ok(poly)
}

/// A bare composition stays a composition; anything else is a polynomial.
pub fn parse_expr(text: &str, ctx: &ExprContext) -> Result<Parsed> {
    let tokens = tokenize(text)?;
    if let Some((comp, next)) = composition_at(&tokens, 0) {
        if next == tokens.len() {
            return Ok(Parsed::Composition(comp));
        }
    }
    parse_poly(text, ctx).map(Parsed::Poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rational;

    fn ctx(a: Option<Alphabet>) -> ExprContext {
        ExprContext {
            alphabet: a,
            lambda: rational(1),
        }
    }

    #[test]
    fn z_blocks_and_compositions() {
        let p = parse_poly("z{2}z{1}", &ctx(Some(Alphabet::H2))).unwrap();
        assert_eq!(p.to_string(), "x0x1x1");
        let p = parse_poly("(1,0)", &ctx(Some(Alphabet::PY))).unwrap();
        assert_eq!(p.to_string(), "pyy");
        assert_eq!(
            parse_expr("(3, -1)", &ctx(None)).unwrap(),
            Parsed::Composition(Composition::new([3, -1]))
        );
        assert!(matches!(
            parse_poly("z{2}", &ctx(None)),
            Err(MzvError::Usage(_))
        ));
    }

    #[test]
    fn operators_and_coefficients() {
        let p = parse_poly("x0x1 sh x0x1", &ctx(None)).unwrap();
        assert_eq!(p.to_string(), "4 x0x0x1x1 + 2 x0x1x0x1");
        let p = parse_poly("z{2} * z{2}", &ctx(Some(Alphabet::H2))).unwrap();
        assert_eq!(p.display_z(), "z{4} + 2 z{2}z{2}");
        let p = parse_poly("x0x1 sq x0x1", &ctx(None)).unwrap();
        assert_eq!(p.to_string(), "2 x0x1x0x1 + x0x1x1x1");
        let p = parse_poly("1/2 - 2 p(y + py) + ppy", &ctx(None)).unwrap();
        assert_eq!(p.to_string(), "1/2 - 2 py - ppy");
        let p = parse_poly("pd y", &ctx(None)).unwrap();
        assert_eq!(p.alphabet(), Alphabet::PDY);
        assert_eq!(p.to_string(), "y");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x0x1 + ", &ctx(None)) {
            Err(MzvError::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse_poly("x0 q", &ctx(None)) {
            Err(MzvError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x0 p", &ctx(None)),
            Err(MzvError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("p", &ctx(Some(Alphabet::H2))),
            Err(MzvError::InvalidLetter { .. })
        ));
        assert!(parse_poly("(1,2", &ctx(Some(Alphabet::PY))).is_err());
        assert!(parse_poly("d * d", &ctx(None)).is_err());
    }

    #[test]
    fn canonical_output_round_trips() {
        for text in ["1/2 - x1 + 4 x0x0x1x1 + 2 x0x1x0x1", "-3/4 dy + pyy", "0"] {
            let p = parse_poly(text, &ctx(None))
                .or_else(|_| parse_poly(text, &ctx(Some(Alphabet::PY))))
                .unwrap();
            assert_eq!(p.to_string(), text);
        }
    }
}
