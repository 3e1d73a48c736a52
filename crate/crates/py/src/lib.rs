use std::path::PathBuf;

use knotsym::analysis::{self, BatchOptions, Catalog};
use knotsym::construct::{self, BraidWord, HalfDiagram, TwistSpec};
use knotsym::invariants;
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

create_exception!(knotsym, KnotsymError, PyValueError);

fn err(e: knotsym::Error) -> PyErr {
    KnotsymError::new_err(e.to_string())
}

/// Exact Laurent polynomial in one variable.
#[pyclass(name = "LaurentPoly", module = "knotsym", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: knotsym::LaurentPoly,
    var: &'static str,
}

impl PyPoly {
    fn new(inner: knotsym::LaurentPoly, var: &'static str) -> Self {
        Self { inner, var }
    }
}

#[pymethods]
impl PyPoly {
    /// Builds from `[(exponent, coefficient), ...]`.
    #[new]
    #[pyo3(signature = (terms, var = "t"))]
    fn py_new(terms: Vec<(i64, BigInt)>, var: &str) -> Self {
        let v = match var {
            "A" => "A",
            "q" => "q",
            _ => "t",
        };
        Self::new(knotsym::LaurentPoly::from_pairs(terms), v)
    }

    /// `[(exponent, coefficient), ...]` in ascending exponent order.
    fn terms(&self) -> Vec<(i64, BigInt)> {
        self.inner.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// Space separated `exponent:coefficient` pairs.
    fn sparse(&self) -> String {
        self.inner.to_sparse_string()
    }

    fn eval(&self, x: i64) -> BigInt {
        self.inner.eval(x)
    }

    fn is_palindromic(&self) -> bool {
        self.inner.is_palindromic()
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self::new(&self.inner * &other.inner, self.var)
    }

    fn __str__(&self) -> String {
        self.inner.display_in(self.var)
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly({:?})", self.inner.display_in(self.var))
    }
}

/// Oriented planar diagram in PD form.
#[pyclass(name = "Diagram", module = "knotsym", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDiagram {
    inner: knotsym::Diagram,
}

fn wrap(inner: knotsym::Diagram) -> PyDiagram {
    PyDiagram { inner }
}

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    fn from_pd(text: &str) -> PyResult<Self> {
        knotsym::parse_pd(text).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn from_dt(text: &str) -> PyResult<Self> {
        knotsym::parse_dt(text).map(wrap).map_err(err)
    }

    /// `"<strands>: <letters>"`, e.g. `"2: 1 1 1"`.
    #[staticmethod]
    fn from_braid(text: &str) -> PyResult<Self> {
        text.parse::<BraidWord>().map(|w| wrap(w.closure())).map_err(err)
    }

    /// Closure of `(σ1 σ2^-1)^n`.
    #[staticmethod]
    fn rosette(n: i64) -> PyResult<Self> {
        construct::rosette(n).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn unknot() -> Self {
        wrap(knotsym::Diagram::unknot())
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    #[getter]
    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    #[getter]
    fn is_knot(&self) -> bool {
        self.inner.is_knot()
    }

    fn pd(&self) -> String {
        self.inner.to_string()
    }

    /// Problems found by validation; empty for a valid diagram.
    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .issues
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn mirror(&self) -> Self {
        wrap(self.inner.mirror())
    }

    fn determinant(&self) -> PyResult<u64> {
        invariants::determinant(&self.inner).map_err(err)
    }

    /// `|det|` of the Goeritz matrix.
    fn goeritz_determinant(&self) -> PyResult<u64> {
        invariants::goeritz(&self.inner)
            .map(|g| g.abs_determinant())
            .map_err(err)
    }

    /// Normalized so that `Δ(t) = Δ(1/t)` and `Δ(1) = 1`.
    fn alexander(&self) -> PyResult<PyPoly> {
        invariants::alexander(&self.inner)
            .map(|a| PyPoly::new(a.delta, "t"))
            .map_err(err)
    }

    /// Jones polynomial in `t`.
    fn jones(&self) -> PyResult<PyPoly> {
        invariants::jones(&self.inner)
            .map(|j| PyPoly::new(j.jones_in_t(), "t"))
            .map_err(err)
    }

    /// Kauffman bracket in `A`.
    fn bracket(&self) -> PyPoly {
        PyPoly::new(invariants::bracket_contract(&self.inner), "A")
    }

    /// Applies `steps` random Reidemeister moves, staying within
    /// `max_crossings`.
    #[pyo3(signature = (steps, max_crossings, seed = 0))]
    fn random_walk(&self, steps: usize, max_crossings: usize, seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let walk = self.inner.random_walk(steps, max_crossings, &mut rng);
        wrap(walk.last().map_or_else(|| self.inner.clone(), |(_, d)| d.clone()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", self.inner.to_string())
    }
}

/// Quarter of a doubly symmetric diagram with twist slots on both axes.
#[pyclass(name = "QuarterTemplate", module = "knotsym", frozen)]
struct PyTemplate {
    inner: construct::QuarterTemplate,
}

/// Result of a template expansion.
#[pyclass(name = "Expansion", module = "knotsym", frozen, get_all)]
struct PyExpansion {
    diagram: PyDiagram,
    partial: PyDiagram,
    /// Crossing involution for the π rotation onto the mirror image.
    rho: Vec<usize>,
}

#[pymethods]
impl PyTemplate {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        construct::QuarterTemplate::load(path)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn x_slots(&self) -> usize {
        self.inner.x_slots()
    }

    #[getter]
    fn y_slots(&self) -> usize {
        self.inner.y_slots()
    }

    /// Expands with the given twists; a `switch` such as `"I,III:c1"`
    /// gives the almost doubly symmetric variant.
    #[pyo3(signature = (x, y, switch = None))]
    fn expand(&self, x: Vec<i64>, y: Vec<i64>, switch: Option<&str>) -> PyResult<PyExpansion> {
        let mut spec = TwistSpec::new(x, y);
        let e = match switch {
            Some(s) => {
                spec = spec.with_switch(s.parse().map_err(err)?);
                construct::expand_almost(&self.inner, &spec)
            }
            None => construct::expand_template(&self.inner, &spec),
        }
        .map_err(err)?;
        Ok(PyExpansion {
            diagram: wrap(e.diagram),
            partial: wrap(e.partial),
            rho: e.rho,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Symmetric union of `knot` cut at its largest face with one axis slot
/// per twist; returns `(union, partial_knot)`.
#[pyfunction]
fn symmetric_union(knot: &PyDiagram, y_twists: Vec<i64>) -> PyResult<(PyDiagram, PyDiagram)> {
    let h = HalfDiagram::from_knot(&knot.inner, y_twists.len()).map_err(err)?;
    let k = h.symmetric_union(&y_twists).map_err(err)?;
    Ok((wrap(k), wrap(h.partial_knot().map_err(err)?)))
}

/// Certificate failures; an empty list means the certificate holds.
#[pyfunction]
fn certify_spa(diagram: &PyDiagram, rho: Vec<usize>) -> Vec<String> {
    match analysis::certify_spa(&diagram.inner, &rho) {
        Ok(_) => Vec::new(),
        Err(fails) => fails.iter().map(ToString::to_string).collect(),
    }
}

/// `(jones_palindromic, alexander_square)`.
#[pyfunction]
fn check_amphicheiral(diagram: &PyDiagram) -> PyResult<(bool, bool)> {
    let r = analysis::check_amphicheiral_necessary(&diagram.inner).map_err(err)?;
    Ok((r.jones_palindromic, r.alexander_square()))
}

/// `det(K) = det(J)^2`.
#[pyfunction]
fn check_union_det(k: &PyDiagram, j: &PyDiagram) -> PyResult<bool> {
    analysis::check_union_det(&k.inner, &j.inner).map_err(err)
}

#[pyfunction]
fn poly_sqrt(p: &PyPoly) -> Option<PyPoly> {
    analysis::poly_sqrt(&p.inner).map(|f| PyPoly::new(f, p.var))
}

/// Catalog names matching the diagram, e.g. `["4_1 (amphicheiral)"]`.
#[pyfunction]
#[pyo3(signature = (diagram, catalog = None))]
fn identify(diagram: &PyDiagram, catalog: Option<PathBuf>) -> PyResult<Vec<String>> {
    let c = match catalog {
        Some(p) => Catalog::load(p).map_err(err)?,
        None => Catalog::builtin(),
    };
    let found = c.identify(&diagram.inner).map_err(err)?;
    Ok(found.iter().map(ToString::to_string).collect())
}

/// Runs batch checks over spec strings and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (entries, base_dir = PathBuf::from("."), jobs = 1))]
fn batch(py: Python<'_>, entries: Vec<String>, base_dir: PathBuf, jobs: usize) -> PyResult<String> {
    let opts = BatchOptions {
        base_dir,
        catalog: Some(Catalog::builtin()),
        jobs,
    };
    py.detach(|| analysis::batch_verify(&entries, &opts))
        .map(|r| r.to_json())
        .map_err(err)
}

#[pymodule]
#[pyo3(name = "knotsym")]
fn knotsym_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KnotsymError", m.py().get_type::<KnotsymError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyTemplate>()?;
    m.add_class::<PyExpansion>()?;
    m.add_function(wrap_pyfunction!(symmetric_union, m)?)?;
    m.add_function(wrap_pyfunction!(certify_spa, m)?)?;
    m.add_function(wrap_pyfunction!(check_amphicheiral, m)?)?;
    m.add_function(wrap_pyfunction!(check_union_det, m)?)?;
    m.add_function(wrap_pyfunction!(poly_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(identify, m)?)?;
    m.add_function(wrap_pyfunction!(batch, m)?)?;
    Ok(())
}
