use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QPoly;
use crate::error::{MzvError, Result};
use crate::linear::Rational;
use crate::words::{z_decode, Alphabet, Composition, Poly, Subspace, Word};

/// The four q-models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelTag {
    /// `Σ_{m1>…>mn>0} Π q^{m_j k_j} / (1−q^{m_j})^{k_j}`.
    SZ,
    /// As [`ModelTag::SZ`] with `m1 ≥ … ≥ mn`.
    SZstar,
    /// `Σ_{m1>…>mn>0} Π q^{(k_j−1) m_j} / (1−q^{m_j})^{k_j}`.
    BZ,
    /// `Σ_{m1>…>mn>0} q^{m1} / Π (1−q^{m_j})^{k_j}`.
    OOZ,
}

impl ModelTag {
    pub const ALL: [ModelTag; 4] = [ModelTag::SZ, ModelTag::SZstar, ModelTag::BZ, ModelTag::OOZ];

    pub fn is_admissible(self, parts: &[i64]) -> bool {
        let Some((&first, rest)) = parts.split_first() else {
            return true;
        };
        match self {
            ModelTag::SZ | ModelTag::SZstar => first >= 1 && rest.iter().all(|&k| k >= 0),
            ModelTag::BZ => first >= 2 && rest.iter().all(|&k| k >= 1),
            ModelTag::OOZ => true,
        }
    }

    pub fn check(self, parts: &[i64]) -> Result<()> {
        if self.is_admissible(parts) {
            Ok(())
        } else {
            Err(MzvError::Inadmissible {
                comp: Composition::new(parts).to_string(),
                model: self.to_string(),
            })
        }
    }

    /// Alphabet whose words this model evaluates.
    pub fn alphabet(self) -> Alphabet {
        match self {
            ModelTag::BZ => Alphabet::H2,
            _ => Alphabet::PY,
        }
    }

    fn strict(self) -> bool {
        self != ModelTag::SZstar
    }

    /// Exponent of the numerator `q^e` at depth position `j` and summation index `m`.
    fn numerator(self, j: usize, k: i64, m: usize) -> i64 {
        let m = m as i64;
        match self {
            ModelTag::SZ | ModelTag::SZstar => k * m,
            ModelTag::BZ => (k - 1) * m,
            ModelTag::OOZ => {
                if j == 0 {
                    m
                } else {
                    0
                }
            }
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelTag::SZ => "SZ",
            ModelTag::SZstar => "SZstar",
            ModelTag::BZ => "BZ",
            ModelTag::OOZ => "OOZ",
        })
    }
}

impl FromStr for ModelTag {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<ModelTag> {
        match s.to_ascii_lowercase().as_str() {
            "sz" => Ok(ModelTag::SZ),
            "szstar" | "sz*" | "sz-star" | "sz⋆" => Ok(ModelTag::SZstar),
            "bz" => Ok(ModelTag::BZ),
            "ooz" => Ok(ModelTag::OOZ),
            _ => Err(MzvError::Usage(format!(
                "unknown model `{s}` (expected SZ, SZstar, BZ or OOZ)"
            ))),
        }
    }
}

type Series = Vec<BigInt>;

/// Sparse `q^e (1 − q^m)^{−k}` truncated at `order`.
fn factor(e: i64, k: i64, m: usize, order: usize) -> Vec<(usize, BigInt)> {
    let mut out = Vec::new();
    if e < 0 || e as usize > order {
        return out;
    }
    let mut c = BigInt::one();
    let mut exp = e as usize;
    let mut i = 0i64;
    while exp <= order && !c.is_zero() {
        out.push((exp, c.clone()));
        c = c * BigInt::from(k + i) / BigInt::from(i + 1);
        i += 1;
        exp += m;
    }
    out
}

fn mul_acc(acc: &mut Series, sparse: &[(usize, BigInt)], dense: &Series) {
    let order = acc.len() - 1;
    for (e, c) in sparse {
        for (i, d) in dense.iter().take(order + 1 - e).enumerate() {
            if !d.is_zero() {
                acc[e + i] += c * d;
            }
        }
    }
}

/// Nested sum with outer index `m1 ≤ order`; inner layers are accumulated as
/// running sums over the index of the layer above.
fn nested(model: ModelTag, parts: &[i64], order: usize) -> Series {
    let mut one = vec![BigInt::zero(); order + 1];
    one[0] = BigInt::one();
    if parts.is_empty() {
        return one;
    }
    let mut inner: Option<Vec<Series>> = None;
    for (j, &k) in parts.iter().enumerate().rev() {
        let mut layer = Vec::with_capacity(order + 1);
        let mut acc = vec![BigInt::zero(); order + 1];
        layer.push(acc.clone());
        for m in 1..=order {
            let src = match &inner {
                None => &one,
                Some(prev) if model.strict() => &prev[m - 1],
                Some(prev) => &prev[m],
            };
            mul_acc(
                &mut acc,
                &factor(model.numerator(j, k, m), k, m, order),
                src,
            );
            layer.push(acc.clone());
        }
        inner = Some(layer);
    }
    inner.expect("nonempty composition").swap_remove(order)
}

/// `ζ^model(comp)` through `q^order`.
pub fn zeta(model: ModelTag, comp: &Composition, order: usize) -> Result<QPoly> {
    if order < 1 {
        return Err(MzvError::Order(order));
    }
    model.check(comp.parts())?;
    QPoly::from_integers(order, nested(model, comp.parts(), order))
}

pub fn zeta_sz(comp: &Composition, order: usize) -> Result<QPoly> {
    zeta(ModelTag::SZ, comp, order)
}

pub fn zeta_sz_star(comp: &Composition, order: usize) -> Result<QPoly> {
    zeta(ModelTag::SZstar, comp, order)
}

pub fn zeta_bz(comp: &Composition, order: usize) -> Result<QPoly> {
    zeta(ModelTag::BZ, comp, order)
}

pub fn zeta_ooz(comp: &Composition, order: usize) -> Result<QPoly> {
    zeta(ModelTag::OOZ, comp, order)
}

/// Composition read off a word for a given model: `h0` words for BZ, `H0`
/// words for the others, and `{p,d,y}` words ending in `y` for OOZ.
pub fn word_composition(model: ModelTag, word: &Word) -> Result<Composition> {
    let space = match (model, word.alphabet()) {
        (ModelTag::BZ, _) => {
            word.require_alphabet(Alphabet::H2)?;
            Subspace::SmallH0
        }
        (ModelTag::OOZ, Alphabet::PDY) => Subspace::BigH1,
        _ => {
            word.require_alphabet(Alphabet::PY)?;
            Subspace::BigH0
        }
    };
    if space == Subspace::BigH1 {
        if word.last().is_some_and(|l| l != crate::words::Letter::Y) {
            return Err(MzvError::NotInSubspace {
                word: word.to_string(),
                space,
            });
        }
    } else {
        word.require(space)?;
    }
    let comp = z_decode(word)?;
    model.check(comp.parts())?;
    Ok(comp)
}

type SeriesCache = Mutex<HashMap<(ModelTag, Vec<i64>), Arc<QPoly>>>;

/// Memoizing evaluator at a fixed truncation order; safe to share across threads.
#[derive(Debug)]
pub struct Evaluator {
    order: usize,
    cache: SeriesCache,
}

impl Evaluator {
    pub fn new(order: usize) -> Result<Evaluator> {
        if order < 1 {
            return Err(MzvError::Order(order));
        }
        Ok(Evaluator {
            order,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zeta(&self, model: ModelTag, comp: &Composition) -> Result<Arc<QPoly>> {
        let key = (model, comp.0.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = Arc::new(zeta(model, comp, self.order)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, value.clone());
        Ok(value)
    }

    pub fn eval_word(&self, model: ModelTag, word: &Word) -> Result<Arc<QPoly>> {
        self.zeta(model, &word_composition(model, word)?)
    }

    /// Linear extension over the terms of `poly`.
    pub fn eval(&self, model: ModelTag, poly: &Poly) -> Result<QPoly> {
        let mut out = QPoly::zero(self.order)?;
        for (w, c) in poly.terms() {
            out.add_scaled(&*self.eval_word(model, w)?, c);
        }
        Ok(out)
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// Uncached linear extension of the composition evaluator.
pub fn eval_word(model: ModelTag, poly: &Poly, order: usize) -> Result<QPoly> {
    Evaluator::new(order)?.eval(model, poly)
}

/// Evaluates a linear combination given as `(coefficient, composition)` pairs.
pub fn eval_compositions(
    model: ModelTag,
    terms: &[(Rational, Composition)],
    order: usize,
) -> Result<QPoly> {
    let mut out = QPoly::zero(order)?;
    for (c, comp) in terms {
        out.add_scaled(&zeta(model, comp, order)?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[i64]) -> Composition {
        Composition::new(p)
    }

    fn ints(q: &QPoly) -> Vec<i64> {
        q.coeffs()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn closed_form_spot_values() {
        assert_eq!(ints(&zeta_sz(&comp(&[2]), 4).unwrap()), vec![0, 0, 1, 2, 4]);
        assert_eq!(
            ints(&zeta_ooz(&comp(&[3]), 4).unwrap()),
            vec![0, 1, 4, 7, 14]
        );
        assert_eq!(zeta_ooz(&comp(&[]), 7).unwrap(), QPoly::one(7).unwrap());
    }

    #[test]
    fn admissibility() {
        assert!(zeta_sz(&comp(&[0, 1]), 5).is_err());
        assert!(zeta_bz(&comp(&[2, 0]), 5).is_err());
        assert!(zeta_bz(&comp(&[1]), 5).is_err());
        assert!(zeta_ooz(&comp(&[-2, 3, 0]), 5).is_ok());
        assert!(zeta_sz_star(&comp(&[1, 0, 0]), 5).is_ok());
        assert!(zeta_sz(&comp(&[2]), 0).is_err());
    }

    #[test]
    fn negative_ooz_part_is_polynomial_factor() {
        // q^m (1 − q^m) summed over m: Σ q^m − Σ q^{2m}.
        let v = zeta_ooz(&comp(&[-1]), 6).unwrap();
        assert_eq!(ints(&v), vec![0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn word_examples() {
        let p = |s: &str| Poly::word(Word::parse(Alphabet::PY, s).unwrap());
        let d = &p("ppy") - &p("pyy");
        assert!(eval_word(ModelTag::SZ, &d, 30).unwrap().is_zero());
        assert_eq!(
            eval_word(ModelTag::SZ, &p("1"), 5).unwrap(),
            QPoly::one(5).unwrap()
        );
        let e = Evaluator::new(12).unwrap();
        let lhs = e.eval(ModelTag::OOZ, &p("pppy")).unwrap();
        let rhs = &e.eval(ModelTag::OOZ, &p("ppypy")).unwrap()
            + &e.eval(ModelTag::OOZ, &p("ppy")).unwrap();
        assert_eq!(lhs, rhs);
        assert!(e.eval(ModelTag::SZ, &p("ypy")).is_err());
        assert!(e
            .eval(
                ModelTag::SZ,
                &Poly::word(Word::parse(Alphabet::H2, "x0x1").unwrap())
            )
            .is_err());
        assert_eq!(e.cached(), 3);
    }
}
