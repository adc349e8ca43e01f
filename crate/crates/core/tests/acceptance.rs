//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mzv_lab::cli::suites::run_cases;
use mzv_lab::cli::{parse_poly, CaseRecord, ExprContext};
use mzv_lab::linear::rational;
use mzv_lab::products::{quasi_shuffle, shuffle};
use mzv_lab::qseries::{zeta, zeta_classical_float, ModelTag};
use mzv_lab::{Alphabet, Composition, Poly};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str, bound: usize, order: usize, sink: &mut Vec<CaseRecord>) -> Outcome {
    match run_cases(name, Some(bound), Some(order)) {
        Ok(records) => {
            let failed = records.iter().filter(|r| !r.passed).count();
            let detail = format!("{name}: {} cases, {failed} failures", records.len());
            let ok = failed == 0 && !records.is_empty();
            sink.extend(records);
            Outcome { ok, detail }
        }
        Err(e) => Outcome {
            ok: false,
            detail: format!("{name}: {e}"),
        },
    }
}

fn check(label: &str, ok: bool) -> Outcome {
    Outcome {
        ok,
        detail: format!("{label}: {}", if ok { "ok" } else { "mismatch" }),
    }
}

fn poly(text: &str, alphabet: Alphabet) -> Poly {
    let ctx = ExprContext {
        alphabet: Some(alphabet),
        lambda: rational(1),
    };
    parse_poly(text, &ctx).expect("literal parses")
}

fn coeffs(
    model: ModelTag,
    parts: &[i64],
    order: usize,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<i64> {
    let series = zeta(model, &Composition::new(parts), order).expect("evaluates");
    series.coeffs()[range]
        .iter()
        .map(|c| c.to_integer().try_into().expect("small coefficient"))
        .collect()
}

fn has_passing(records: &[CaseRecord], check: &str) -> bool {
    records
        .iter()
        .any(|r| r.check.starts_with(check) && r.passed)
}

fn criterion(
    n: usize,
    title: &str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Vec<Outcome>,
) -> bool {
    let start = Instant::now();
    let outcomes = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = in_time && outcomes.iter().all(|o| o.ok);
    let limit_text = limit
        .map(|l| format!(" (limit {}s)", l.as_secs()))
        .unwrap_or_default();
    let details: Vec<&str> = outcomes.iter().map(|o| o.detail.as_str()).collect();
    println!(
        "criterion {n:>2} {}: {title} [{:.2}s{limit_text}] {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        details.join("; ")
    );
    ok
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut results = Vec::new();

    results.push(criterion(
        1,
        "classical product examples",
        Some(secs(1)),
        || {
            let z2 = poly("z{2}", Alphabet::H2);
            let x = poly("x0x1", Alphabet::H2);
            let mut sink = Vec::new();
            vec![
                check(
                    "z2∗z2 = 2z2z2 + z4",
                    quasi_shuffle(&z2, &z2).ok() == Some(poly("2 z{2}z{2} + z{4}", Alphabet::H2)),
                ),
                check(
                    "x0x1⧢x0x1 = 2x0x1x0x1 + 4x0x0x1x1",
                    shuffle(&x, &x).ok() == Some(poly("2 x0x1x0x1 + 4 x0x0x1x1", Alphabet::H2)),
                ),
                suite("classical-products", 0, 0, &mut sink),
            ]
        },
    ));

    results.push(criterion(
        2,
        "∂2(w) = w□z2 − w∗z2, weight ≤ 8",
        Some(secs(30)),
        || {
            let mut sink = Vec::new();
            let s = suite("thm-derivation", 8, 0, &mut sink);
            let ex = check(
                "x0x1□x0x1 = 2x0x1x0x1 + x0x1x1x1",
                has_passing(&sink, "x0x1 □ x0x1"),
            );
            vec![s, ex]
        },
    ));

    results.push(criterion(
        3,
        "Hoffman–Ohno relations, weight ≤ 8",
        None,
        || vec![suite("hoffman-ohno", 8, 0, &mut Vec::new())],
    ));

    results.push(criterion(
        4,
        "transferred stuffle = ⧢_λ on H0, λ = ±1, length ≤ 8",
        Some(secs(60)),
        || vec![suite("thm-szdual", 8, 0, &mut Vec::new())],
    ));

    results.push(criterion(
        5,
        "q-series dualities, N = 30, weight ≤ 5",
        Some(secs(120)),
        || {
            let mut sink = Vec::new();
            let mut out: Vec<Outcome> = [
                "zhao-duality",
                "ooz-szstar-duality",
                "bradley-duality",
                "ooz-transfer",
                "ooz-duality-families",
            ]
            .iter()
            .map(|name| suite(name, 5, 30, &mut sink))
            .collect();
            out.push(suite("q-spot-values", 0, 30, &mut sink));
            out.push(check(
                "ζ^SZ(2) q^2..q^4 = 1,2,4",
                coeffs(ModelTag::SZ, &[2], 30, 2..=4) == [1, 2, 4],
            ));
            out.push(check(
                "ζ^OOZ(3) q..q^4 = 1,4,7,14",
                coeffs(ModelTag::OOZ, &[3], 30, 1..=4) == [1, 4, 7, 14],
            ));
            out
        },
    ));

    results.push(criterion(
        6,
        "character and double-shuffle checks, N = 30, z-length ≤ 5",
        Some(secs(120)),
        || vec![suite("characters", 5, 30, &mut Vec::new())],
    ));

    results.push(criterion(
        7,
        "Ihara S-map diagram, z-length ≤ 6",
        None,
        || vec![suite("ihara-diagram", 6, 0, &mut Vec::new())],
    ));

    results.push(criterion(
        8,
        "⧢_λ on {p,d,y} and the infinitesimal coproduct",
        None,
        || {
            let mut sink = Vec::new();
            vec![
                suite("pdy-shuffle", 6, 0, &mut sink),
                suite("infinitesimal", 7, 0, &mut sink),
            ]
        },
    ));

    results.push(criterion(
        9,
        "OOZ products, star shuffle and block-map identity",
        None,
        || {
            let mut sink = Vec::new();
            let mut out = vec![
                suite("ooz-explicit-vs-recursive", 6, 0, &mut sink),
                suite("star-shuffle", 8, 0, &mut sink),
                suite("szs-dual", 6, 0, &mut sink),
            ];
            out.push(check(
                "top(py□_OOZ py) ↦ 2x1x1 − 2x0x1 = x1⧢⋆x1",
                has_passing(&sink, "top(py□_OOZ py)") && has_passing(&sink, "x1⧢⋆x1"),
            ));
            out
        },
    ));

    results.push(criterion(10, "Hopf axioms, length ≤ 6", None, || {
        vec![suite("hopf-axioms", 6, 0, &mut Vec::new())]
    }));

    results.push(criterion(
        11,
        "Rota–Baxter and float oracles",
        None,
        || {
            let mut out = vec![suite("oracles", 5, 15, &mut Vec::new())];
            let z2 = zeta_classical_float(&Composition::new([2]), 100_000);
            out.push(check(
                "ζ(2) = 1.644934 ± 1e-5",
                z2.is_ok_and(|e| (e.corrected - 1.644934).abs() < 1e-5),
            ));
            out
        },
    ));

    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
