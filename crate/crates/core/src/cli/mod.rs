//! Command-line front end: expression parsing, output formatting and the
//! named verification suites.

pub mod format;
pub mod parse;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{MzvError, Result};
use crate::hopf::{
    coproduct_square_op, deconcat_poly, infinitesimal_coproduct_poly, HopfAlgebra,
    QuasiShuffleHopf, Tensor2, Transferred,
};
use crate::linear::{parse_rational, rational};
use crate::maps::{named, Isomorphism};
use crate::products::{ooz_square_recursive, ProductKind};
use crate::qseries::{zeta_classical_float, Evaluator, ModelTag};
use crate::words::{z_encode, Alphabet, Poly};

pub use parse::{parse_composition, parse_expr, parse_poly, ExprContext, Parsed};
pub use suites::{export_vectors, run_named, run_suite, CaseRecord, SuiteReport};

#[derive(Debug, Parser)]
#[command(
    name = "mzv-lab",
    version,
    about = "Word algebras, Hopf duality and q-series for multiple zeta values"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// `h` for {x0,x1}, `H` for {p,y}, `pdy` for {p,d,y}; inferred from the letters when omitted.
    #[arg(long)]
    pub alphabet: Option<String>,

    /// Weight of the contraction term in `*`, `sh`, `sq`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductOp {
    Shuffle,
    Stuffle,
    ShuffleLambda,
    StuffleLambda,
    StarShuffle,
    StarShuffleAlt,
    OozStuffle,
    OozExplicit,
    OozSquare,
    OozSquareRecursive,
    Circle,
    /// `T⁻¹∘∗∘(T⊗T)` with `T = τ` on `{x0,x1}` or `T = τ̃` on `{p,y}`.
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoproductKind {
    Deconcat,
    /// Deconcatenation carried over by τ (on {x0,x1}) or τ̃ (on {p,y}).
    Transferred,
    SquareOp,
    Infinitesimal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a product expression, or apply `--op` to two operands.
    Product {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum)]
        op: Option<ProductOp>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        rhs: Option<String>,
    },
    /// Apply a named linear map.
    Map {
        /// tau, tautilde, dn:<n>, U, Uinv, V, Vinv, S, Sinv, dual1, dual2.
        #[arg(long)]
        name: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply a coproduct.
    Coproduct {
        #[arg(long, value_enum)]
        kind: CoproductKind,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Truncated q-series of a model, or a classical float value.
    Qeval {
        /// SZ, SZstar, BZ or OOZ.
        #[arg(long, required_unless_present = "classical")]
        model: Option<String>,
        #[arg(long, conflicts_with = "expr")]
        comp: Option<String>,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Classical value by partial summation instead of a q-model.
        #[arg(long, conflicts_with = "model")]
        classical: bool,
        #[arg(long, default_value_t = 100_000)]
        cutoff: usize,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(allow_hyphen_values = true, required_unless_present = "comp")]
        expr: Option<String>,
    },
    /// Run a verification suite (`all` runs every suite).
    Verify {
        #[arg(long, required_unless_present = "list")]
        suite: Option<String>,
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        /// List the suites and their default bounds.
        #[arg(long)]
        list: bool,
    },
    /// Write a suite's cases as JSON lines.
    ExportVectors {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Outcome {
    Ok,
    Failed,
}

fn context(args: &AlgebraArgs) -> Result<ExprContext> {
    let lambda = parse_rational(&args.lambda)
        .ok_or_else(|| MzvError::Usage(format!("invalid --lambda `{}`", args.lambda)))?;
    Ok(ExprContext {
        alphabet: args
            .alphabet
            .as_deref()
            .map(format::alphabet_from_flag)
            .transpose()?,
        lambda,
    })
}

/// Whether the input was written with `z{k}` blocks or a composition.
fn uses_z(text: &str) -> bool {
    if text.contains("z{") {
        return true;
    }
    let bytes = text.as_bytes();
    bytes.iter().enumerate().any(|(i, &b)| {
        b == b'(' && {
            let rest = text[i + 1..].trim_start();
            let rest = rest.strip_prefix('-').unwrap_or(rest);
            rest.starts_with(|c: char| c.is_ascii_digit()) || rest.starts_with(')')
        }
    })
}

fn write_poly(out: &mut dyn Write, json: bool, poly: &Poly, z_form: bool) -> Result<()> {
    if json {
        writeln!(out, "{}", to_json(&format::poly_to_json(poly))?)?;
    } else if z_form {
        writeln!(out, "{}", poly.display_z())?;
    } else {
        writeln!(out, "{poly}")?;
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| MzvError::Io(e.to_string()))
}

fn product(
    args: &AlgebraArgs,
    op: Option<ProductOp>,
    expr: &str,
    rhs: Option<&str>,
) -> Result<Poly> {
    let ctx = context(args)?;
    let Some(op) = op else {
        if rhs.is_some() {
            return Err(MzvError::Usage("a second operand needs --op".into()));
        }
        return parse_poly(expr, &ctx);
    };
    let rhs = rhs.ok_or_else(|| MzvError::Usage("--op needs two operands".into()))?;
    let u = parse_poly(expr, &ctx)?;
    let ctx = ExprContext {
        alphabet: Some(ctx.alphabet.unwrap_or(u.alphabet())),
        lambda: ctx.lambda.clone(),
    };
    let v = parse_poly(rhs, &ctx)?;
    let lambda = ctx.lambda;
    let alphabet = u.alphabet();
    let kind = match op {
        ProductOp::Shuffle => ProductKind::Shuffle,
        ProductOp::Stuffle => ProductKind::QuasiShuffle,
        ProductOp::ShuffleLambda if alphabet == Alphabet::PDY => {
            ProductKind::ShuffleLambdaPdy(lambda)
        }
        ProductOp::ShuffleLambda => ProductKind::ShuffleLambdaPy(lambda),
        ProductOp::StuffleLambda => ProductKind::QuasiShuffleLambda(lambda),
        ProductOp::StarShuffle => ProductKind::ShuffleStar,
        ProductOp::StarShuffleAlt => ProductKind::ShuffleStarAlt,
        ProductOp::OozStuffle => ProductKind::OozQuasiShuffle,
        ProductOp::OozExplicit => ProductKind::OozExplicit,
        ProductOp::OozSquare => ProductKind::OozSquare,
        ProductOp::OozSquareRecursive => return ooz_square_recursive(&u, &v),
        ProductOp::Circle => ProductKind::IharaCirc,
        ProductOp::Square if alphabet == Alphabet::H2 => {
            ProductKind::Transferred(Box::new(ProductKind::QuasiShuffle), Isomorphism::tau())
        }
        ProductOp::Square => ProductKind::Transferred(
            Box::new(ProductKind::QuasiShuffleLambda(lambda)),
            Isomorphism::tau_tilde(),
        ),
    };
    kind.multiply(&u, &v)
}

fn coproduct(kind: CoproductKind, args: &AlgebraArgs, expr: &str) -> Result<Tensor2> {
    let ctx = context(args)?;
    let poly = parse_poly(expr, &ctx)?;
    match kind {
        CoproductKind::Deconcat => deconcat_poly(&poly),
        CoproductKind::SquareOp => coproduct_square_op(&poly),
        CoproductKind::Infinitesimal => {
            let poly = if poly.alphabet() == Alphabet::PY {
                poly.linear(Alphabet::PDY, |w| Ok(Poly::word(w.to_pdy()?)))?
            } else {
                poly
            };
            infinitesimal_coproduct_poly(&poly)
        }
        CoproductKind::Transferred => {
            let (base, iso) = match poly.alphabet() {
                Alphabet::H2 => (
                    QuasiShuffleHopf::new(Alphabet::H2, rational(1))?,
                    Isomorphism::tau(),
                ),
                _ => (
                    QuasiShuffleHopf::new(Alphabet::PY, ctx.lambda)?,
                    Isomorphism::tau_tilde(),
                ),
            };
            Transferred::new(Box::new(base), iso)?.coproduct(&poly)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn qeval(
    out: &mut dyn Write,
    json: bool,
    model: Option<&str>,
    comp: Option<&str>,
    order: usize,
    classical: bool,
    cutoff: usize,
    alphabet: Option<&str>,
    expr: Option<&str>,
) -> Result<()> {
    if classical {
        let text = comp.or(expr).unwrap_or_default();
        let estimate = zeta_classical_float(&parse_composition(text)?, cutoff)?;
        if json {
            writeln!(out, "{}", to_json(&estimate)?)?;
        } else {
            writeln!(
                out,
                "{:.12} (partial {:.12}, tail bound {:.3e}, cutoff {})",
                estimate.corrected, estimate.partial, estimate.tail_bound, estimate.cutoff
            )?;
        }
        return Ok(());
    }
    let model: ModelTag = model.unwrap_or_default().parse()?;
    let ev = Evaluator::new(order)?;
    let value = if let Some(text) = comp {
        (*ev.zeta(model, &parse_composition(text)?)?).clone()
    } else {
        let text = expr.unwrap_or_default();
        let given = alphabet.map(format::alphabet_from_flag).transpose()?;
        let ctx = ExprContext {
            alphabet: Some(given.unwrap_or(model.alphabet())),
            ..ExprContext::default()
        };
        let poly = match parse_expr(text, &ctx)? {
            Parsed::Composition(c) => Poly::word(z_encode(&c, model.alphabet())?),
            Parsed::Poly(p) => p,
        };
        ev.eval(model, &poly)?
    };
    if json {
        writeln!(
            out,
            "{}",
            to_json(&json!({"model": model.to_string(), "series": value.to_json()}))?
        )?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(())
}

fn verify(
    out: &mut dyn Write,
    json: bool,
    suite: &str,
    bound: Option<usize>,
    order: Option<usize>,
) -> Result<Outcome> {
    let reports = run_named(suite, bound, order)?;
    if json {
        writeln!(out, "{}", to_json(&reports)?)?;
    } else {
        for r in &reports {
            writeln!(
                out,
                "{:<28} {:>7} cases {:>5} failures {:>9.3}s  {}",
                r.suite,
                r.cases,
                r.failures.len(),
                r.wall_time_secs,
                if r.passed() { "ok" } else { "FAILED" }
            )?;
            for f in r.failures.iter().take(10) {
                writeln!(
                    out,
                    "    {} [{}]\n      lhs: {}\n      rhs: {}",
                    f.check,
                    f.inputs.join(", "),
                    f.lhs,
                    f.rhs
                )?;
            }
        }
    }
    Ok(if reports.iter().all(SuiteReport::passed) {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn list_suites(out: &mut dyn Write, json: bool) -> Result<()> {
    let all = suites::suites();
    if json {
        let rows: Vec<_> = all
            .iter()
            .map(|s| json!({"suite": s.name, "about": s.about, "bound": s.default_bound, "order": s.default_order}))
            .collect();
        writeln!(out, "{}", to_json(&rows)?)?;
    } else {
        for s in all {
            writeln!(
                out,
                "{:<28} bound {:>2}  order {:>2}  {}",
                s.name, s.default_bound, s.default_order, s.about
            )?;
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Product {
            algebra,
            op,
            expr,
            rhs,
        } => {
            let poly = product(algebra, *op, expr, rhs.as_deref())?;
            let z = uses_z(expr) || rhs.as_deref().is_some_and(uses_z);
            write_poly(out, json, &poly, z)?;
        }
        Command::Map {
            name,
            algebra,
            expr,
        } => {
            let map = named(name)?;
            let mut ctx = context(algebra)?;
            ctx.alphabet.get_or_insert(map.domain());
            let poly = parse_poly(expr, &ctx)?;
            write_poly(out, json, &map.apply(&poly)?, uses_z(expr))?;
        }
        Command::Coproduct {
            kind,
            algebra,
            expr,
        } => {
            let t = coproduct(*kind, algebra, expr)?;
            if json {
                writeln!(out, "{}", to_json(&format::tensor_to_json(&t))?)?;
            } else {
                writeln!(out, "{t}")?;
            }
        }
        Command::Qeval {
            model,
            comp,
            order,
            classical,
            cutoff,
            alphabet,
            expr,
        } => qeval(
            out,
            json,
            model.as_deref(),
            comp.as_deref(),
            *order,
            *classical,
            *cutoff,
            alphabet.as_deref(),
            expr.as_deref(),
        )?,
        Command::Verify {
            suite,
            max_weight,
            order,
            list,
        } => {
            if *list {
                list_suites(out, json)?;
            } else {
                return verify(
                    out,
                    json,
                    suite.as_deref().unwrap_or("all"),
                    *max_weight,
                    *order,
                );
            }
        }
        Command::ExportVectors {
            suite,
            max_weight,
            order,
            out: path,
        } => {
            let n = export_vectors(suite, *max_weight, *order, path)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    to_json(&json!({"suite": suite, "records": n, "path": path}))?
                )?;
            } else {
                writeln!(out, "wrote {n} records to {}", path.display())?;
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Runs the command line. Exit codes: 0 success, 1 verification failure,
/// 2 usage or input error, 3 i/o failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                MzvError::Io(_) => 3,
                _ => 2,
            }
        }
    }
}
