//! Named verification suites. Each suite enumerates its samples in a fixed
//! order (weight, then canonical word order), evaluates the cases in parallel
//! and reassembles them in enumeration order.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::parse::{parse_poly, ExprContext};
use crate::error::{MzvError, Result};
use crate::hopf::{
    check_axioms, coideal_check, coproduct_square_op, deconcat, infinitesimal_coproduct,
    infinitesimal_coproduct_poly, infinitesimal_letters, infinitesimal_split, to_pdy, HopfAlgebra,
    QuasiShuffleHopf, Side, Tensor2, Tensor3, Transferred,
};
use crate::linear::{ratio, rational, Rational};
use crate::maps::{
    derivation, dual_family_1, dual_family_2, ihara_s, ihara_s_inv, map_u, map_v, tau, tau_tilde,
    tau_tilde_poly, Isomorphism,
};
use crate::products::{
    ooz_explicit_poly, ooz_quasi_shuffle, ooz_square, ooz_square_recursive, quasi_shuffle,
    quasi_shuffle_lambda, shuffle, shuffle_lambda_pdy, shuffle_lambda_py, shuffle_star,
    shuffle_star_alt, transferred_product, ProductKind,
};
use crate::qseries::{rota_baxter_eval_ooz, zeta_classical_float, Evaluator, ModelTag, QPoly};
use crate::words::enumerate::{all_words, classical_words, py_words, words_in, z_words};
use crate::words::{
    block_map, embed_j, weight_projection, z_decode, Alphabet, Composition, Letter, Poly, Subspace,
    Word,
};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MZV_LAB_THREADS";

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub check: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: usize,
    pub order: usize,
    pub cases: usize,
    /// Failed cases, in enumeration order.
    pub failures: Vec<CaseRecord>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// First line of an exported vector file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorHeader {
    pub suite: String,
    pub bound: usize,
    pub order: usize,
    pub records: usize,
}

struct Ctx {
    bound: usize,
    order: usize,
}

type Runner = fn(&Ctx) -> Result<Vec<CaseRecord>>;

/// A registered suite and its default bounds.
pub struct SuiteInfo {
    pub name: &'static str,
    pub about: &'static str,
    pub default_bound: usize,
    pub default_order: usize,
    run: Runner,
}

const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "classical-products",
        about: "displayed quasi-shuffle and shuffle products of z2 with itself",
        default_bound: 0,
        default_order: 0,
        run: classical_products,
    },
    SuiteInfo {
        name: "thm-derivation",
        about: "∂2(w) = w□z2 − w∗z2 on convergent words up to the weight bound",
        default_bound: 8,
        default_order: 0,
        run: thm_derivation,
    },
    SuiteInfo {
        name: "hoffman-ohno",
        about: "∂1(w) = w⧢z1 − w∗z1, and z1∗w − x1⧢w convergent with vanishing real value",
        default_bound: 8,
        default_order: 0,
        run: hoffman_ohno,
    },
    SuiteInfo {
        name: "thm-szdual",
        about: "τ̃∘∗_λ∘(τ̃⊗τ̃) = ⧢_λ on H0 for λ = ±1, total length up to the bound",
        default_bound: 8,
        default_order: 0,
        run: thm_szdual,
    },
    SuiteInfo {
        name: "zhao-duality",
        about: "ζ^SZ∘τ̃ = ζ^SZ on H0",
        default_bound: 5,
        default_order: 30,
        run: zhao_duality,
    },
    SuiteInfo {
        name: "ooz-szstar-duality",
        about: "ζ^OOZ = ζ^SZ⋆∘τ̃ on H0",
        default_bound: 5,
        default_order: 30,
        run: ooz_szstar_duality,
    },
    SuiteInfo {
        name: "bradley-duality",
        about: "ζ^BZ∘τ = ζ^BZ on h0",
        default_bound: 5,
        default_order: 30,
        run: bradley_duality,
    },
    SuiteInfo {
        name: "ooz-transfer",
        about: "ζ^OOZ∘J = ζ^BZ∘U on h0 and ζ^OOZ = ζ^SZ∘V on H0",
        default_bound: 5,
        default_order: 30,
        run: ooz_transfer,
    },
    SuiteInfo {
        name: "ooz-duality-families",
        about: "ζ^OOZ invariant under V⁻¹∘τ̃∘V and U⁻¹∘τ∘U",
        default_bound: 5,
        default_order: 30,
        run: ooz_duality_families,
    },
    SuiteInfo {
        name: "q-spot-values",
        about: "ζ^SZ(2) and ζ^OOZ(3) against divisor-sum closed forms",
        default_bound: 0,
        default_order: 30,
        run: q_spot_values,
    },
    SuiteInfo {
        name: "characters",
        about:
            "double shuffle and multiplicativity of the q-models, total z-length up to the bound",
        default_bound: 5,
        default_order: 30,
        run: characters,
    },
    SuiteInfo {
        name: "ihara-diagram",
        about: "S∘S⁻¹ = id, S(u∗₋₁v) = S(u)∗₁S(v) and the squares of the ⧢/∗ diagram",
        default_bound: 6,
        default_order: 0,
        run: ihara_diagram,
    },
    SuiteInfo {
        name: "pdy-shuffle",
        about: "⧢_λ on {p,d,y}: commutativity, associativity, unit, d⧢d",
        default_bound: 6,
        default_order: 0,
        run: pdy_shuffle,
    },
    SuiteInfo {
        name: "infinitesimal",
        about: "Δ̄ splitting, coassociativity and compatibility; Δ_{□,op} = Δ̄ on H0; coideals",
        default_bound: 7,
        default_order: 0,
        run: infinitesimal,
    },
    SuiteInfo {
        name: "ooz-explicit-vs-recursive",
        about: "explicit and recursive ∗_OOZ and □_OOZ agree on H0",
        default_bound: 6,
        default_order: 0,
        run: ooz_explicit_vs_recursive,
    },
    SuiteInfo {
        name: "star-shuffle",
        about: "⧢⋆ through ordinary shuffles equals ⧢⋆",
        default_bound: 8,
        default_order: 0,
        run: star_shuffle,
    },
    SuiteInfo {
        name: "szs-dual",
        about: "top weight of □_OOZ maps to ⧢⋆ under the block map",
        default_bound: 6,
        default_order: 0,
        run: szs_dual,
    },
    SuiteInfo {
        name: "hopf-axioms",
        about: "Hopf axioms of (H1, ∗_λ, Δ) and of its τ- and τ̃-transferred structures",
        default_bound: 6,
        default_order: 0,
        run: hopf_axioms,
    },
    SuiteInfo {
        name: "oracles",
        about:
            "Rota–Baxter and nested-sum OOZ values agree; float values of ζ(2), ζ(2,1), ζ(2,1,1)",
        default_bound: 5,
        default_order: 15,
        run: oracles,
    },
];

pub fn suites() -> &'static [SuiteInfo] {
    SUITES
}

pub fn suite_info(name: &str) -> Result<&'static SuiteInfo> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| MzvError::UnknownSuite(name.to_string()))
}

/// Worker cap from `MZV_LAB_THREADS`; `None` when unset or not a positive integer.
pub fn worker_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

fn in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_cap().unwrap_or(0))
        .build()
        .map_err(|e| MzvError::Io(e.to_string()))?;
    Ok(pool.install(f))
}

/// Runs the cases of a suite without timing or failure filtering.
pub fn run_cases(
    name: &str,
    bound: Option<usize>,
    order: Option<usize>,
) -> Result<Vec<CaseRecord>> {
    let info = suite_info(name)?;
    let ctx = Ctx {
        bound: bound.unwrap_or(info.default_bound),
        order: order.unwrap_or(info.default_order),
    };
    in_pool(|| (info.run)(&ctx))?
}

/// Runs one suite; `None` bounds fall back to the suite defaults.
pub fn run_suite(name: &str, bound: Option<usize>, order: Option<usize>) -> Result<SuiteReport> {
    let info = suite_info(name)?;
    let start = Instant::now();
    let cases = run_cases(name, bound, order)?;
    Ok(SuiteReport {
        suite: info.name.to_string(),
        bound: bound.unwrap_or(info.default_bound),
        order: order.unwrap_or(info.default_order),
        cases: cases.len(),
        failures: cases.into_iter().filter(|c| !c.passed).collect(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Runs every registered suite, or the named one; `all` selects every suite.
pub fn run_named(
    name: &str,
    bound: Option<usize>,
    order: Option<usize>,
) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES
            .iter()
            .map(|s| run_suite(s.name, bound, order))
            .collect()
    } else {
        Ok(vec![run_suite(name, bound, order)?])
    }
}

/// Writes a header line followed by one JSON record per case. Returns the
/// number of records.
pub fn export_vectors(
    name: &str,
    bound: Option<usize>,
    order: Option<usize>,
    path: &Path,
) -> Result<usize> {
    let info = suite_info(name)?;
    let cases = run_cases(name, bound, order)?;
    let header = VectorHeader {
        suite: info.name.to_string(),
        bound: bound.unwrap_or(info.default_bound),
        order: order.unwrap_or(info.default_order),
        records: cases.len(),
    };
    let mut out = BufWriter::new(File::create(path)?);
    let json = |e: serde_json::Error| MzvError::Io(e.to_string());
    writeln!(out, "{}", serde_json::to_string(&header).map_err(json)?)?;
    for c in &cases {
        writeln!(out, "{}", serde_json::to_string(c).map_err(json)?)?;
    }
    out.flush()?;
    Ok(cases.len())
}

/// Reads a file written by [`export_vectors`].
pub fn read_vectors(path: &Path) -> Result<(VectorHeader, Vec<CaseRecord>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let bad = |e: serde_json::Error| MzvError::Io(e.to_string());
    let header: VectorHeader =
        serde_json::from_str(lines.next().unwrap_or_default()).map_err(bad)?;
    let records = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(bad))
        .collect::<Result<Vec<CaseRecord>>>()?;
    Ok((header, records))
}

// ---------------------------------------------------------------------------
// helpers

fn names(ws: &[&Word]) -> Vec<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

fn poly_case(check: &str, inputs: &[&Word], lhs: &Poly, rhs: &Poly) -> CaseRecord {
    CaseRecord {
        check: check.to_string(),
        inputs: names(inputs),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        passed: lhs == rhs,
    }
}

fn tensor_case(check: &str, inputs: &[&Word], lhs: &Tensor2, rhs: &Tensor2) -> CaseRecord {
    CaseRecord {
        check: check.to_string(),
        inputs: names(inputs),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        passed: lhs == rhs,
    }
}

fn series_case(check: &str, inputs: &[&Word], lhs: &QPoly, rhs: &QPoly) -> CaseRecord {
    CaseRecord {
        check: check.to_string(),
        inputs: names(inputs),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        passed: lhs == rhs,
    }
}

fn flag_case(
    check: &str,
    inputs: Vec<String>,
    lhs: String,
    rhs: String,
    passed: bool,
) -> CaseRecord {
    CaseRecord {
        check: check.to_string(),
        inputs,
        lhs,
        rhs,
        passed,
    }
}

fn pw(w: &Word) -> Poly {
    Poly::word(w.clone())
}

fn nonunit(ws: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = ws.into_iter().filter(|w| !w.is_empty()).collect();
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    out
}

fn blocks(w: &Word) -> usize {
    w.letters().iter().filter(|&&l| l == Letter::Y).count()
}

/// Unordered pairs `u ≤ v` (in list order) with `size(u) + size(v) ≤ max`.
fn unordered_pairs(ws: &[Word], max: usize, size: impl Fn(&Word) -> usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for (i, u) in ws.iter().enumerate() {
        for v in &ws[i..] {
            if size(u) + size(v) <= max {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn ordered_pairs(ws: &[Word], max: usize, size: impl Fn(&Word) -> usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for u in ws {
        for v in ws {
            if size(u) + size(v) <= max {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn par<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Vec<CaseRecord>> + Sync + Send,
) -> Result<Vec<CaseRecord>> {
    let chunks = items.par_iter().map(f).collect::<Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn classical(text: &str) -> Result<Poly> {
    parse_poly(
        text,
        &ExprContext {
            alphabet: Some(Alphabet::H2),
            ..ExprContext::default()
        },
    )
}

fn h(text: &str) -> Result<Word> {
    Word::parse(Alphabet::H2, text)
}

fn embed_poly(p: &Poly) -> Result<Poly> {
    p.linear(Alphabet::PY, |w| Ok(Poly::word(embed_j(w)?)))
}

const LAMBDAS_SIGNED: [i64; 2] = [1, -1];
const LAMBDAS_PDY: [i64; 3] = [1, -1, 2];

// ---------------------------------------------------------------------------
// classical suites

fn classical_products(_: &Ctx) -> Result<Vec<CaseRecord>> {
    let z2 = h("x0x1")?;
    let lhs = quasi_shuffle(&pw(&z2), &pw(&z2))?;
    let stuffle_case = poly_case(
        "z2 ∗ z2",
        &[&z2, &z2],
        &lhs,
        &classical("2 z{2}z{2} + z{4}")?,
    );
    let lhs = shuffle(&pw(&z2), &pw(&z2))?;
    let shuffle_case = poly_case(
        "x0x1 ⧢ x0x1",
        &[&z2, &z2],
        &lhs,
        &classical("2 x0x1x0x1 + 4 x0x0x1x1")?,
    );
    Ok(vec![stuffle_case, shuffle_case])
}

fn square_classical(u: &Poly, v: &Poly) -> Result<Poly> {
    transferred_product(&ProductKind::QuasiShuffle, &Isomorphism::tau(), u, v)
}

fn thm_derivation(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let z2 = pw(&h("x0x1")?);
    let example = poly_case(
        "x0x1 □ x0x1",
        &[&h("x0x1")?, &h("x0x1")?],
        &square_classical(&z2, &z2)?,
        &classical("2 x0x1x0x1 + x0x1x1x1")?,
    );
    let words = nonunit(classical_words(Subspace::SmallH0, ctx.bound));
    let mut out = vec![example];
    out.extend(par(&words, |w| {
        let p = pw(w);
        let lhs = derivation(&p, 2)?;
        let rhs = &square_classical(&p, &z2)? - &quasi_shuffle(&p, &z2)?;
        Ok(vec![poly_case("∂2(w) = w□z2 − w∗z2", &[w], &lhs, &rhs)])
    })?);
    Ok(out)
}

/// Float evaluation of a convergent classical polynomial from corrected
/// partial sums, with a cache keyed by composition.
struct FloatCache {
    cutoff: usize,
    values: Mutex<HashMap<Vec<i64>, f64>>,
}

impl FloatCache {
    fn new(cutoff: usize) -> FloatCache {
        FloatCache {
            cutoff,
            values: Mutex::new(HashMap::new()),
        }
    }

    fn word(&self, w: &Word) -> Result<f64> {
        let comp = z_decode(w)?;
        if let Some(v) = self.values.lock().expect("float cache").get(&comp.0) {
            return Ok(*v);
        }
        let v = zeta_classical_float(&comp, self.cutoff)?.corrected;
        self.values.lock().expect("float cache").insert(comp.0, v);
        Ok(v)
    }

    fn poly(&self, p: &Poly) -> Result<f64> {
        let mut acc = 0.0;
        for (w, c) in p.terms() {
            acc += self.word(w)? * rational_f64(c);
        }
        Ok(acc)
    }
}

fn rational_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn hoffman_ohno(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let z1 = pw(&h("x1")?);
    let words = nonunit(classical_words(Subspace::SmallH0, ctx.bound));
    let floats = FloatCache::new(100_000);
    par(&words, |w| {
        let p = pw(w);
        let lhs = derivation(&p, 1)?;
        let rhs = &shuffle(&p, &z1)? - &quasi_shuffle(&p, &z1)?;
        let mut out = vec![poly_case("∂1(w) = w⧢z1 − w∗z1", &[w], &lhs, &rhs)];
        let relation = &quasi_shuffle(&z1, &p)? - &shuffle(&z1, &p)?;
        let convergent = relation.all_in(Subspace::SmallH0);
        out.push(flag_case(
            "z1∗w − x1⧢w ∈ h0",
            vec![w.to_string()],
            relation.to_string(),
            "h0".into(),
            convergent,
        ));
        if convergent && w.weight() <= 4 {
            let value = floats.poly(&relation)?;
            out.push(flag_case(
                "|ζ(z1∗w − x1⧢w)| < 1e-4",
                vec![w.to_string()],
                format!("{value:.3e}"),
                "0".into(),
                value.abs() < 1e-4,
            ));
        }
        Ok(out)
    })
}

fn thm_szdual(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let words = nonunit(words_in(Subspace::BigH0, ctx.bound));
    let pairs = ordered_pairs(&words, ctx.bound, Word::len);
    let mut out = Vec::new();
    for l in LAMBDAS_SIGNED {
        let lambda = rational(l);
        let base = ProductKind::QuasiShuffleLambda(lambda.clone());
        let check = format!("τ̃∘∗_λ∘(τ̃⊗τ̃) = ⧢_λ, λ = {l}");
        out.extend(par(&pairs, |(u, v)| {
            let lhs = transferred_product(&base, &Isomorphism::tau_tilde(), &pw(u), &pw(v))?;
            let rhs = shuffle_lambda_py(&pw(u), &pw(v), &lambda)?;
            Ok(vec![poly_case(&check, &[u, v], &lhs, &rhs)])
        })?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// q-series suites

fn q_words(ctx: &Ctx) -> Vec<Word> {
    nonunit(py_words(Subspace::BigH0, ctx.bound, ctx.bound))
}

fn h0_words(ctx: &Ctx) -> Vec<Word> {
    nonunit(classical_words(Subspace::SmallH0, ctx.bound))
}

fn zhao_duality(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    par(&q_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::SZ, w)?;
        let rhs = ev.eval_word(ModelTag::SZ, &tau_tilde(w)?)?;
        Ok(vec![series_case("ζ^SZ(w) = ζ^SZ(τ̃w)", &[w], &lhs, &rhs)])
    })
}

fn ooz_szstar_duality(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    par(&q_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::OOZ, w)?;
        let rhs = ev.eval_word(ModelTag::SZstar, &tau_tilde(w)?)?;
        Ok(vec![series_case("ζ^OOZ(w) = ζ^SZ⋆(τ̃w)", &[w], &lhs, &rhs)])
    })
}

fn bradley_duality(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    par(&h0_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::BZ, w)?;
        let rhs = ev.eval_word(ModelTag::BZ, &tau(w)?)?;
        Ok(vec![series_case("ζ^BZ(w) = ζ^BZ(τw)", &[w], &lhs, &rhs)])
    })
}

fn ooz_transfer(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    let mut out = par(&h0_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::OOZ, &embed_j(w)?)?;
        let rhs = ev.eval(ModelTag::BZ, &map_u(&pw(w))?)?;
        Ok(vec![series_case("ζ^OOZ(Jw) = ζ^BZ(Uw)", &[w], &lhs, &rhs)])
    })?;
    out.extend(par(&q_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::OOZ, w)?;
        let rhs = ev.eval(ModelTag::SZ, &map_v(&pw(w))?)?;
        Ok(vec![series_case("ζ^OOZ(w) = ζ^SZ(Vw)", &[w], &lhs, &rhs)])
    })?);
    Ok(out)
}

fn ooz_duality_families(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    let mut out = par(&q_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::OOZ, w)?;
        let rhs = ev.eval(ModelTag::OOZ, &dual_family_1(&pw(w))?)?;
        Ok(vec![series_case(
            "ζ^OOZ(w) = ζ^OOZ(V⁻¹τ̃Vw)",
            &[w],
            &lhs,
            &rhs,
        )])
    })?;
    out.extend(par(&h0_words(ctx), |w| {
        let lhs = ev.eval_word(ModelTag::OOZ, &embed_j(w)?)?;
        let rhs = ev.eval(ModelTag::OOZ, &embed_poly(&dual_family_2(&pw(w))?)?)?;
        Ok(vec![series_case(
            "ζ^OOZ(Jw) = ζ^OOZ(J U⁻¹τUw)",
            &[w],
            &lhs,
            &rhs,
        )])
    })?);
    Ok(out)
}

/// `Σ_{k,l ≥ 1} f(k) q^{kl}` truncated at `order`.
fn divisor_series(order: usize, f: impl Fn(i64) -> Rational) -> Result<QPoly> {
    let mut coeffs = vec![Rational::from_integer(0.into()); order + 1];
    for k in 1..=order {
        for n in (k..=order).step_by(k) {
            coeffs[n] += f(k as i64);
        }
    }
    QPoly::new(order, coeffs)
}

fn q_spot_values(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    let two = Word::parse(Alphabet::PY, "ppy")?;
    let three = Word::parse(Alphabet::PY, "pppy")?;
    let sz2 = ev.eval_word(ModelTag::SZ, &two)?;
    let ooz3 = ev.eval_word(ModelTag::OOZ, &three)?;
    Ok(vec![
        series_case(
            "ζ^SZ(2) = Σ (k−1) q^{kl}",
            &[&two],
            &sz2,
            &divisor_series(ctx.order, |k| rational(k - 1))?,
        ),
        series_case(
            "ζ^OOZ(3) = Σ k(k+1)/2 q^{kl}",
            &[&three],
            &ooz3,
            &divisor_series(ctx.order, |k| ratio(k * (k + 1), 2))?,
        ),
    ])
}

fn characters(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let ev = Evaluator::new(ctx.order)?;
    let words = nonunit(z_words(Subspace::BigH0, ctx.bound, 2));
    let pairs = unordered_pairs(&words, ctx.bound, blocks);
    let one = rational(1);
    let minus = rational(-1);
    par(&pairs, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        let inputs = [u, v];
        let shuffled = ev.eval(ModelTag::SZ, &shuffle_lambda_py(&pu, &pv, &one)?)?;
        let stuffled = ev.eval(ModelTag::SZ, &quasi_shuffle_lambda(&pu, &pv, &one)?)?;
        let star = ev.eval(ModelTag::SZstar, &quasi_shuffle_lambda(&pu, &pv, &minus)?)?;
        let star_prod =
            &*ev.eval_word(ModelTag::SZstar, u)? * &*ev.eval_word(ModelTag::SZstar, v)?;
        let ooz_prod = &*ev.eval_word(ModelTag::OOZ, u)? * &*ev.eval_word(ModelTag::OOZ, v)?;
        let ooz_stuffle = ev.eval(ModelTag::OOZ, &ooz_quasi_shuffle(&pu, &pv)?)?;
        let ooz_shuffle = ev.eval(ModelTag::OOZ, &shuffle_lambda_py(&pu, &pv, &minus)?)?;
        Ok(vec![
            series_case("ζ^SZ(u⧢₁v) = ζ^SZ(u∗₁v)", &inputs, &shuffled, &stuffled),
            series_case(
                "ζ^SZ⋆(u∗₋₁v) = ζ^SZ⋆(u)ζ^SZ⋆(v)",
                &inputs,
                &star,
                &star_prod,
            ),
            series_case(
                "ζ^OOZ(u∗_OOZ v) = ζ^OOZ(u)ζ^OOZ(v)",
                &inputs,
                &ooz_stuffle,
                &ooz_prod,
            ),
            series_case(
                "ζ^OOZ(u⧢₋₁v) = ζ^OOZ(u)ζ^OOZ(v)",
                &inputs,
                &ooz_shuffle,
                &ooz_prod,
            ),
        ])
    })
}

// ---------------------------------------------------------------------------
// Ihara map and the {p,d,y} structures

fn ihara_diagram(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let one = rational(1);
    let minus = rational(-1);
    let words = nonunit(z_words(Subspace::BigH0, ctx.bound, 2));
    let mut out = par(&words, |w| {
        let p = pw(w);
        Ok(vec![
            poly_case("S(S⁻¹(w)) = w", &[w], &ihara_s(&ihara_s_inv(&p)?)?, &p),
            poly_case("S⁻¹(S(w)) = w", &[w], &ihara_s_inv(&ihara_s(&p)?)?, &p),
        ])
    })?;
    let pairs = unordered_pairs(&words, ctx.bound, blocks);
    out.extend(par(&pairs, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        let lhs = ihara_s(&quasi_shuffle_lambda(&pu, &pv, &minus)?)?;
        let rhs = quasi_shuffle_lambda(&ihara_s(&pu)?, &ihara_s(&pv)?, &one)?;
        Ok(vec![poly_case(
            "S(u∗₋₁v) = S(u)∗₁S(v)",
            &[u, v],
            &lhs,
            &rhs,
        )])
    })?);
    let shared = nonunit(words_in(Subspace::BigH0, ctx.bound + 2));
    let shared = ordered_pairs(&shared, ctx.bound + 2, Word::len);
    out.extend(par(&shared, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        let (tu, tv) = (tau_tilde_poly(&pu)?, tau_tilde_poly(&pv)?);
        let top_mid = quasi_shuffle_lambda(&tu, &tv, &minus)?;
        let bottom_mid = quasi_shuffle_lambda(&ihara_s(&tu)?, &ihara_s(&tv)?, &one)?;
        Ok(vec![
            poly_case(
                "u⧢₋₁v = τ̃(τ̃u ∗₋₁ τ̃v)",
                &[u, v],
                &shuffle_lambda_py(&pu, &pv, &minus)?,
                &tau_tilde_poly(&top_mid)?,
            ),
            poly_case(
                "S(τ̃u ∗₋₁ τ̃v) = S(τ̃u) ∗₁ S(τ̃v)",
                &[u, v],
                &ihara_s(&top_mid)?,
                &bottom_mid,
            ),
            poly_case(
                "u⧢₁v = τ̃(τ̃u ∗₁ τ̃v)",
                &[u, v],
                &shuffle_lambda_py(&pu, &pv, &one)?,
                &tau_tilde_poly(&quasi_shuffle_lambda(&tu, &tv, &one)?)?,
            ),
        ])
    })?);
    Ok(out)
}

fn pdy(text: &str) -> Result<Word> {
    Word::parse(Alphabet::PDY, text)
}

fn pdy_shuffle(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let words = all_words(Alphabet::PDY, ctx.bound);
    let nonempty = nonunit(words.clone());
    let pairs = ordered_pairs(&nonempty, ctx.bound, Word::len);
    let mut triples = Vec::new();
    for (u, v) in &pairs {
        for w in &nonempty {
            if u.len() + v.len() + w.len() <= ctx.bound {
                triples.push((u.clone(), v.clone(), w.clone()));
            }
        }
    }
    let unit = Poly::one(Alphabet::PDY);
    let mut out = Vec::new();
    for l in LAMBDAS_PDY {
        let lambda = rational(l);
        let sh = |a: &Poly, b: &Poly| shuffle_lambda_pdy(a, b, &lambda);
        let d = pdy("d")?;
        out.push(poly_case(
            &format!("d⧢d = −(1/λ)d, λ = {l}"),
            &[&d, &d],
            &sh(&pw(&d), &pw(&d))?,
            &pw(&d).scaled(&-ratio(1, l)),
        ));
        out.extend(par(&words, |w| {
            let p = pw(w);
            let ok = sh(&unit, &p)? == p && sh(&p, &unit)? == p;
            Ok(vec![flag_case(
                &format!("1⧢w = w⧢1 = w, λ = {l}"),
                vec![w.to_string()],
                p.to_string(),
                p.to_string(),
                ok,
            )])
        })?);
        out.extend(par(&pairs, |(u, v)| {
            let (pu, pv) = (pw(u), pw(v));
            Ok(vec![poly_case(
                &format!("u⧢v = v⧢u, λ = {l}"),
                &[u, v],
                &sh(&pu, &pv)?,
                &sh(&pv, &pu)?,
            )])
        })?);
        out.extend(par(&triples, |(u, v, w)| {
            let (pu, pv, pw_) = (pw(u), pw(v), pw(w));
            Ok(vec![poly_case(
                &format!("(u⧢v)⧢w = u⧢(v⧢w), λ = {l}"),
                &[u, v, w],
                &sh(&sh(&pu, &pv)?, &pw_)?,
                &sh(&pu, &sh(&pv, &pw_)?)?,
            )])
        })?);
    }
    Ok(out)
}

fn infinitesimal(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let small = ctx.bound.min(6);
    let words = nonunit(all_words(Alphabet::PDY, small));
    let mut out = par(&words, |w| {
        let delta = infinitesimal_coproduct(w)?;
        let mut cases = Vec::new();
        for at in 0..=w.len() {
            cases.push(tensor_case(
                &format!("Δ̄ split after {at} letters"),
                &[w],
                &infinitesimal_split(w, at)?,
                &delta,
            ));
        }
        let lhs = Tensor3::split_left(&delta, infinitesimal_coproduct)?;
        let rhs = Tensor3::split_right(&delta, infinitesimal_coproduct)?;
        cases.push(flag_case(
            "(Δ̄⊗id)Δ̄ = (id⊗Δ̄)Δ̄",
            vec![w.to_string()],
            format!("{} terms", delta.len()),
            String::new(),
            lhs == rhs,
        ));
        Ok(cases)
    })?;
    let short = nonunit(all_words(Alphabet::PDY, small.min(4)));
    out.extend(par(&short, |w| {
        let mut cases = Vec::new();
        for at in 0..=w.len() {
            for pair in [[Letter::P, Letter::D], [Letter::D, Letter::P]] {
                let mut raw = w.letters()[..at].to_vec();
                raw.extend(pair);
                raw.extend_from_slice(&w.letters()[at..]);
                cases.push(tensor_case(
                    &format!("Δ̄ ignores inserted {}{}", pair[0].name(), pair[1].name()),
                    &[w],
                    &infinitesimal_letters(&raw)?,
                    &infinitesimal_coproduct(w)?,
                ));
            }
        }
        Ok(cases)
    })?);
    let pairs = ordered_pairs(&words, small, Word::len);
    for l in LAMBDAS_PDY {
        let lambda = rational(l);
        out.extend(par(&pairs, |(u, v)| {
            let (pu, pv) = (pw(u), pw(v));
            let lhs = infinitesimal_coproduct_poly(&shuffle_lambda_pdy(&pu, &pv, &lambda)?)?;
            let rhs = infinitesimal_coproduct(u)?
                .multiply(&infinitesimal_coproduct(v)?, |a, b| {
                    shuffle_lambda_pdy(&pw(a), &pw(b), &lambda)
                })?;
            Ok(vec![tensor_case(
                &format!("Δ̄(u⧢v) = Δ̄(u)⧢Δ̄(v), λ = {l}"),
                &[u, v],
                &lhs,
                &rhs,
            )])
        })?);
    }
    let h0 = nonunit(words_in(Subspace::BigH0, ctx.bound));
    out.extend(par(&h0, |w| {
        let lhs = to_pdy(&coproduct_square_op(&pw(w))?)?;
        let rhs = infinitesimal_coproduct(&w.to_pdy()?)?;
        Ok(vec![tensor_case("Δ_{□,op}(w) = Δ̄(w)", &[w], &lhs, &rhs)])
    })?);
    let in_h0 = |w: &Word| w.is_in(Subspace::BigH0).unwrap_or(false);
    let square_op = |w: &Word| coproduct_square_op(&pw(w));
    let report = coideal_check(in_h0, square_op, Side::Right, &h0)?;
    out.push(flag_case(
        "H0 right coideal under Δ_{□,op}",
        vec![format!("{} words", h0.len())],
        format!(
            "{:?}",
            report.witness.map(|(a, b, c)| format!("{a}: {b} ⊗ {c}"))
        ),
        "None".into(),
        report.holds,
    ));
    let report = coideal_check(in_h0, deconcat, Side::Left, &h0)?;
    out.push(flag_case(
        "H0 left coideal under Δ",
        vec![format!("{} words", h0.len())],
        format!(
            "{:?}",
            report.witness.map(|(a, b, c)| format!("{a}: {b} ⊗ {c}"))
        ),
        "None".into(),
        report.holds,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// OOZ and star-shuffle identities

fn ooz_explicit_vs_recursive(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let words = nonunit(z_words(Subspace::BigH0, ctx.bound, 2));
    let pairs = ordered_pairs(&words, ctx.bound, blocks);
    par(&pairs, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        Ok(vec![
            poly_case(
                "explicit ∗_OOZ = recursive ∗_OOZ",
                &[u, v],
                &ooz_explicit_poly(&pu, &pv)?,
                &ooz_quasi_shuffle(&pu, &pv)?,
            ),
            poly_case(
                "□_OOZ through □_1 = τ̃∘∗_OOZ∘(τ̃⊗τ̃)",
                &[u, v],
                &ooz_square_recursive(&pu, &pv)?,
                &ooz_square(&pu, &pv)?,
            ),
        ])
    })
}

fn star_shuffle(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let words = nonunit(all_words(Alphabet::H2, ctx.bound));
    let pairs = ordered_pairs(&words, ctx.bound, Word::len);
    par(&pairs, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        Ok(vec![poly_case(
            "ua⧢⋆vb = ua⧢vb − (u⧢vτ(b))a − (uτ(a)⧢v)b",
            &[u, v],
            &shuffle_star_alt(&pu, &pv)?,
            &shuffle_star(&pu, &pv)?,
        )])
    })
}

fn block_poly(p: &Poly) -> Result<Poly> {
    p.linear(Alphabet::H2, |w| Ok(Poly::word(block_map(w)?)))
}

fn szs_dual(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let mut words = nonunit(z_words(Subspace::BigH0, ctx.bound, 2));
    words.retain(|w| z_decode(w).is_ok_and(|c| c.parts().iter().all(|&k| k >= 1)));
    let pairs = ordered_pairs(&words, ctx.bound, blocks);
    let py = Word::parse(Alphabet::PY, "py")?;
    let worked = weight_projection(&ooz_square(&pw(&py), &pw(&py))?, 2);
    let mut out = vec![
        poly_case(
            "top(py□_OOZ py) ↦ 2x1x1 − 2x0x1",
            &[&py, &py],
            &block_poly(&worked)?,
            &classical("2 x1x1 - 2 x0x1")?,
        ),
        poly_case(
            "x1⧢⋆x1 = 2x1x1 − 2x0x1",
            &[&h("x1")?, &h("x1")?],
            &shuffle_star(&pw(&h("x1")?), &pw(&h("x1")?))?,
            &classical("2 x1x1 - 2 x0x1")?,
        ),
    ];
    out.extend(par(&pairs, |(u, v)| {
        let (pu, pv) = (pw(u), pw(v));
        let top = weight_projection(&ooz_square(&pu, &pv)?, u.weight() + v.weight());
        let rhs = shuffle_star(&Poly::word(block_map(u)?), &Poly::word(block_map(v)?))?;
        let case = match block_poly(&top) {
            Ok(lhs) => poly_case(
                "block(top(u□_OOZ v)) = block(u)⧢⋆block(v)",
                &[u, v],
                &lhs,
                &rhs,
            ),
            Err(e) => flag_case(
                "block(top(u□_OOZ v)) = block(u)⧢⋆block(v)",
                names(&[u, v]),
                e.to_string(),
                rhs.to_string(),
                false,
            ),
        };
        Ok(vec![case])
    })?);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Hopf axioms and oracles

fn hopf_axioms(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let mut algebras: Vec<Box<dyn HopfAlgebra>> = Vec::new();
    for l in LAMBDAS_SIGNED {
        algebras.push(Box::new(QuasiShuffleHopf::new(Alphabet::PY, rational(l))?));
    }
    algebras.push(Box::new(Transferred::new(
        Box::new(QuasiShuffleHopf::new(Alphabet::H2, rational(1))?),
        Isomorphism::tau(),
    )?));
    for l in LAMBDAS_SIGNED {
        algebras.push(Box::new(Transferred::new(
            Box::new(QuasiShuffleHopf::new(Alphabet::PY, rational(l))?),
            Isomorphism::tau_tilde(),
        )?));
    }
    let mut out = Vec::new();
    for h in &algebras {
        let words: Vec<Word> = all_words(h.alphabet(), ctx.bound)
            .into_iter()
            .filter(|w| h.contains(w))
            .collect();
        let words = {
            let mut ws = words;
            ws.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
            ws
        };
        let name = h.name();
        out.extend(par(&words, |w| {
            let failures = check_axioms(h.as_ref(), std::slice::from_ref(w))?;
            Ok(vec![flag_case(
                &format!("unit, counit, coassociativity, antipode: {name}"),
                vec![w.to_string()],
                failures
                    .iter()
                    .map(|f| f.axiom)
                    .collect::<Vec<_>>()
                    .join(", "),
                String::new(),
                failures.is_empty(),
            )])
        })?);
    }
    Ok(out)
}

fn oracles(ctx: &Ctx) -> Result<Vec<CaseRecord>> {
    let words: Vec<Word> = nonunit(py_words(Subspace::BigH1, ctx.bound, ctx.bound))
        .into_iter()
        .filter(|w| w.last() == Some(Letter::Y))
        .collect();
    let mut out = par(&words, |w| {
        let comp = z_decode(w)?;
        let lhs = rota_baxter_eval_ooz(&comp, ctx.order)?;
        let rhs = crate::qseries::zeta_ooz(&comp, ctx.order)?;
        Ok(vec![series_case(
            "Rota–Baxter ζ^OOZ = nested-sum ζ^OOZ",
            &[w],
            &lhs,
            &rhs,
        )])
    })?;
    let est = |p: &[i64]| zeta_classical_float(&Composition::new(p), 100_000);
    let z2 = est(&[2])?;
    out.push(flag_case(
        "ζ(2) = 1.644934 ± 1e-5",
        vec!["(2)".into()],
        format!("{:.9}", z2.partial),
        "1.644934".into(),
        (z2.partial - 1.644934).abs() < 1e-5,
    ));
    for (a, b) in [(&[2i64, 1][..], &[3i64][..]), (&[2, 1, 1][..], &[4][..])] {
        let (x, y) = (est(a)?, est(b)?);
        let overlap = (x.partial - y.partial).abs() <= x.tail_bound.max(y.tail_bound);
        out.push(flag_case(
            "classical values agree within tail bounds",
            vec![
                Composition::new(a).to_string(),
                Composition::new(b).to_string(),
            ],
            format!("{:.12} (+{:.1e})", x.partial, x.tail_bound),
            format!("{:.12} (+{:.1e})", y.partial, y.tail_bound),
            overlap && (x.corrected - y.corrected).abs() < 1e-6,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", None, None),
            Err(MzvError::UnknownSuite(_))
        ));
    }

    #[test]
    fn small_suites_pass() {
        for name in ["classical-products", "q-spot-values"] {
            let r = run_suite(name, None, Some(12)).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert_eq!(r.cases, 2);
        }
        let r = run_suite("thm-derivation", Some(5), None).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 1 + 15);
    }

    #[test]
    fn names_are_unique() {
        let mut seen: Vec<_> = SUITES.iter().map(|s| s.name).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), SUITES.len());
    }
}
