//! Python bindings: word polynomials, products, maps, coproducts, q-series
//! evaluation and the verification suites.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use mzv_lab::cli::format::alphabet_from_flag;
use mzv_lab::cli::{parse_composition, parse_expr, run_suite as run_suite_core, ExprContext, Parsed};
use mzv_lab::hopf::{coproduct_square_op, deconcat_poly, infinitesimal_coproduct_poly, Tensor2};
use mzv_lab::linear::{parse_rational, rational_to_string};
use mzv_lab::maps::named;
use mzv_lab::products::{self, ProductKind};
use mzv_lab::qseries::{rota_baxter_eval_ooz, zeta_classical_float, Evaluator, ModelTag};
use mzv_lab::words::{z_encode, Alphabet};
use mzv_lab::{MzvError, Rational};

fn err(e: MzvError) -> PyErr {
    match e {
        MzvError::Io(msg) => PyOSError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn lambda_of(text: &str) -> PyResult<Rational> {
    parse_rational(text).ok_or_else(|| PyValueError::new_err(format!("invalid lambda `{text}`")))
}

/// A word polynomial with exact rational coefficients.
#[pyclass(name = "Poly", module = "mzvlab", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPoly {
    inner: mzv_lab::Poly,
}

#[pymethods]
impl PyPoly {
    /// Parses an expression such as `"2 ppy - z{1}z{0}"` or `"x0x1 sh x0x1"`.
    #[new]
    #[pyo3(signature = (text, alphabet = None, lam = "1"))]
    fn new(text: &str, alphabet: Option<&str>, lam: &str) -> PyResult<Self> {
        let ctx = ExprContext {
            alphabet: alphabet.map(alphabet_from_flag).transpose().map_err(err)?,
            lambda: lambda_of(lam)?,
        };
        let inner = match parse_expr(text, &ctx).map_err(err)? {
            Parsed::Poly(p) => p,
            Parsed::Composition(c) => {
                let a = ctx
                    .alphabet
                    .ok_or_else(|| PyValueError::new_err("a composition needs an alphabet"))?;
                mzv_lab::Poly::word(z_encode(&c, a).map_err(err)?)
            }
        };
        Ok(PyPoly { inner })
    }

    #[getter]
    fn alphabet(&self) -> &'static str {
        self.inner.alphabet().flag()
    }

    /// `(coefficient, word)` pairs in canonical order.
    fn terms(&self) -> Vec<(String, String)> {
        self.inner
            .terms()
            .map(|(w, c)| (rational_to_string(c), w.to_string()))
            .collect()
    }

    fn z_form(&self) -> String {
        self.inner.display_z()
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly {
            inner: &self.inner - &other.inner,
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', alphabet='{}')", self.inner, self.alphabet())
    }
}

/// Product of two polynomials. `op` is one of `shuffle`, `stuffle`,
/// `shuffle-lambda`, `stuffle-lambda`, `star-shuffle`, `star-shuffle-alt`,
/// `ooz-stuffle`, `ooz-explicit`, `ooz-square`, `ooz-square-recursive`,
/// `circle`, `square`.
#[pyfunction]
#[pyo3(signature = (op, u, v, lam = "1"))]
fn product(op: &str, u: &PyPoly, v: &PyPoly, lam: &str) -> PyResult<PyPoly> {
    let lambda = lambda_of(lam)?;
    let (a, b) = (&u.inner, &v.inner);
    let pdy = a.alphabet() == Alphabet::PDY;
    let kind = match op {
        "shuffle" => ProductKind::Shuffle,
        "stuffle" => ProductKind::QuasiShuffle,
        "shuffle-lambda" if pdy => ProductKind::ShuffleLambdaPdy(lambda),
        "shuffle-lambda" => ProductKind::ShuffleLambdaPy(lambda),
        "stuffle-lambda" => ProductKind::QuasiShuffleLambda(lambda),
        "star-shuffle" => ProductKind::ShuffleStar,
        "star-shuffle-alt" => ProductKind::ShuffleStarAlt,
        "ooz-stuffle" => ProductKind::OozQuasiShuffle,
        "ooz-explicit" => ProductKind::OozExplicit,
        "ooz-square" => ProductKind::OozSquare,
        "ooz-square-recursive" => {
            return Ok(PyPoly {
                inner: products::ooz_square_recursive(a, b).map_err(err)?,
            })
        }
        "circle" => ProductKind::IharaCirc,
        "square" if a.alphabet() == Alphabet::H2 => ProductKind::Transferred(
            Box::new(ProductKind::QuasiShuffle),
            mzv_lab::maps::Isomorphism::tau(),
        ),
        "square" => ProductKind::Transferred(
            Box::new(ProductKind::QuasiShuffleLambda(lambda)),
            mzv_lab::maps::Isomorphism::tau_tilde(),
        ),
        _ => return Err(PyValueError::new_err(format!("unknown product `{op}`"))),
    };
    Ok(PyPoly {
        inner: kind.multiply(a, b).map_err(err)?,
    })
}

/// Applies a named map: `tau`, `tautilde`, `dn:<n>`, `U`, `Uinv`, `V`,
/// `Vinv`, `S`, `Sinv`, `dual1`, `dual2`.
#[pyfunction]
fn apply_map(name: &str, p: &PyPoly) -> PyResult<PyPoly> {
    let map = named(name).map_err(err)?;
    Ok(PyPoly {
        inner: map.apply(&p.inner).map_err(err)?,
    })
}

fn tensor_terms(t: &Tensor2) -> Vec<(String, String, String)> {
    t.terms()
        .map(|(l, r, c)| (rational_to_string(c), l.to_string(), r.to_string()))
        .collect()
}

/// `(coefficient, left, right)` terms of `deconcat`, `square-op` or
/// `infinitesimal` applied to `p`.
#[pyfunction]
fn coproduct(kind: &str, p: &PyPoly) -> PyResult<Vec<(String, String, String)>> {
    let t = match kind {
        "deconcat" => deconcat_poly(&p.inner),
        "square-op" => coproduct_square_op(&p.inner),
        "infinitesimal" => infinitesimal_coproduct_poly(&p.inner),
        _ => return Err(PyValueError::new_err(format!("unknown coproduct `{kind}`"))),
    }
    .map_err(err)?;
    Ok(tensor_terms(&t))
}

/// Coefficients `[c0, ..., cN]` (as `"num/den"` strings) of a q-model on a
/// composition.
#[pyfunction]
fn qeval(model: &str, comp: Vec<i64>, order: usize) -> PyResult<Vec<String>> {
    let model: ModelTag = model.parse().map_err(err)?;
    let ev = Evaluator::new(order).map_err(err)?;
    let value = ev.zeta(model, &mzv_lab::Composition::new(comp)).map_err(err)?;
    Ok(value.coeffs().iter().map(rational_to_string).collect())
}

/// As [`qeval`] on a polynomial of convergent words.
#[pyfunction]
fn qeval_poly(model: &str, p: &PyPoly, order: usize) -> PyResult<Vec<String>> {
    let model: ModelTag = model.parse().map_err(err)?;
    let ev = Evaluator::new(order).map_err(err)?;
    let value = ev.eval(model, &p.inner).map_err(err)?;
    Ok(value.coeffs().iter().map(rational_to_string).collect())
}

/// OOZ values through the Rota–Baxter operator.
#[pyfunction]
fn rota_baxter_ooz(comp: Vec<i64>, order: usize) -> PyResult<Vec<String>> {
    let value = rota_baxter_eval_ooz(&mzv_lab::Composition::new(comp), order).map_err(err)?;
    Ok(value.coeffs().iter().map(rational_to_string).collect())
}

/// `(partial, corrected, tail_bound)` for the classical value of a
/// composition written as `"(2,1)"`.
#[pyfunction]
#[pyo3(signature = (comp, cutoff = 100_000))]
fn classical_zeta(comp: &str, cutoff: usize) -> PyResult<(f64, f64, f64)> {
    let c = parse_composition(comp).map_err(err)?;
    let e = zeta_classical_float(&c, cutoff).map_err(err)?;
    Ok((e.partial, e.corrected, e.tail_bound))
}

/// `(cases, failures)` of a verification suite.
#[pyfunction]
#[pyo3(signature = (name, max_weight = None, order = None))]
fn run_suite(py: Python<'_>, name: &str, max_weight: Option<usize>, order: Option<usize>) -> PyResult<(usize, usize)> {
    let report = py
        .detach(|| run_suite_core(name, max_weight, order))
        .map_err(err)?;
    Ok((report.cases, report.failures.len()))
}

#[pymodule]
fn mzvlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(apply_map, m)?)?;
    m.add_function(wrap_pyfunction!(coproduct, m)?)?;
    m.add_function(wrap_pyfunction!(qeval, m)?)?;
    m.add_function(wrap_pyfunction!(qeval_poly, m)?)?;
    m.add_function(wrap_pyfunction!(rota_baxter_ooz, m)?)?;
    m.add_function(wrap_pyfunction!(classical_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
