//! Python bindings: catalog fixtures, the axiom suite, scenario reports and
//! integer Smith normal form.

use num_bigint::BigInt;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use uiab::fixtures::{self, CATALOG, DEFAULT_WINDOW};
use uiab::scenario::Scenario;
use uiab::suite::{run, RunOptions};
use uiab::{Error, ExactMatrix, Report, Ring, UiabInstance};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_ring(ring: &str) -> PyResult<Ring> {
    ring.parse::<Ring>().map_err(py_err)
}

/// A bialgebra fixture truncated to a window.
#[pyclass(name = "Fixture", module = "uiab", frozen)]
struct PyFixture {
    inst: UiabInstance,
}

impl PyFixture {
    fn index(&self, name: &str) -> PyResult<usize> {
        self.inst.module().index_of(name).map_err(|_| PyKeyError::new_err(name.to_string()))
    }
}

#[pymethods]
impl PyFixture {
    #[getter]
    fn name(&self) -> String {
        self.inst.name().to_string()
    }

    #[getter]
    fn ring(&self) -> String {
        self.inst.ring().name()
    }

    /// Basis as (name, degree) pairs.
    fn basis(&self) -> Vec<(String, i64)> {
        let m = self.inst.module();
        (0..m.len()).map(|i| (m.name(i).to_string(), m.degree(i))).collect()
    }

    /// Product of two basis elements, rendered; "0" when it vanishes.
    fn mu(&self, x: &str, y: &str) -> PyResult<String> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        Ok(self.inst.mu(i, j).map_or_else(|| "0".to_string(), |v| self.inst.module().render(&v)))
    }

    /// Coproduct of a basis element, rendered; "0" when it vanishes.
    fn lam(&self, x: &str) -> PyResult<String> {
        let i = self.index(x)?;
        Ok(self.inst.lambda(i).map_or_else(|| "0".to_string(), |t| t.render()))
    }

    fn lambda_eta(&self) -> PyResult<String> {
        uiab::lambda_eta(&self.inst).map(|t| t.render()).map_err(py_err)
    }

    /// Axiom suite as a JSON report.
    fn check_axioms(&self, py: Python<'_>) -> String {
        let inst = &self.inst;
        py.detach(|| Report::new(vec![uiab::check_axioms(inst)]).to_json())
    }

    fn __repr__(&self) -> String {
        format!("Fixture({:?}, ring={:?}, dim={})", self.inst.name(), self.inst.ring().name(), self.inst.module().len())
    }
}

#[pyfunction]
fn catalog() -> Vec<&'static str> {
    CATALOG.to_vec()
}

#[pyfunction]
#[pyo3(signature = (name, window = DEFAULT_WINDOW, ring = "Z"))]
fn fixture(name: &str, window: i64, ring: &str) -> PyResult<PyFixture> {
    let inst = fixtures::bialgebra(name, window, parse_ring(ring)?).map_err(py_err)?;
    Ok(PyFixture { inst })
}

fn integer_rows(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_integer().expect("integral entry")).collect())
        .collect()
}

/// Smith normal form of an integer matrix: dict with u, d, v (u·m·v = d),
/// the invariant factors and the rank.
#[pyfunction]
fn smith_normal_form<'py>(py: Python<'py>, rows: Vec<Vec<i64>>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let m = ExactMatrix::from_i64_rows(Ring::Integers, &rows).map_err(py_err)?;
    let snf = m.smith_normal_form().map_err(py_err)?;
    let out = pyo3::types::PyDict::new(py);
    out.set_item("u", integer_rows(&snf.u))?;
    out.set_item("d", integer_rows(&snf.d))?;
    out.set_item("v", integer_rows(&snf.v))?;
    out.set_item("rank", snf.invariants.len())?;
    out.set_item("invariants", snf.invariants)?;
    Ok(out)
}

/// Runs every check listed in a scenario document. Returns (passed, report JSON).
#[pyfunction]
#[pyo3(signature = (json, ring = None, cone_homology = true))]
fn run_scenario(py: Python<'_>, json: &str, ring: Option<&str>, cone_homology: bool) -> PyResult<(bool, String)> {
    let ring = ring.map(parse_ring).transpose()?;
    let loaded = Scenario::parse(json).and_then(|s| s.validate(ring)).map_err(py_err)?;
    let report = py
        .detach(|| run(&loaded, &loaded.checks, RunOptions { cone_homology, timing: false }))
        .map_err(py_err)?;
    Ok((report.all_passed(), report.to_json()))
}

/// Scenario document for a catalog fixture.
#[pyfunction]
#[pyo3(signature = (name, window = DEFAULT_WINDOW, ring = "Z"))]
fn export_fixture(name: &str, window: i64, ring: &str) -> PyResult<String> {
    uiab::suite::fixture_scenario(name, window, parse_ring(ring)?).map(|s| s.to_json()).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "uiab")]
fn uiab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFixture>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(export_fixture, m)?)?;
    Ok(())
}
