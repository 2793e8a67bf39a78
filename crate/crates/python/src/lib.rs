//! Python bindings: quivers, representations, based rings and the report-producing pipelines.

use std::sync::Arc;

use chowres::{BasedRing, DimVector, HilbertFunction, RingElement, Weight};
use chowres_cli::commands::{self, QuiverArgs, QuiverOp};
use chowres_cli::report::{Outcome, RunReport};
use chowres_cli::schema::{parse_rational_list, QuiverDoc};
use chowres_cli::{Cli, CliError};
use clap::Parser;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pychowres, InvalidInput, PyValueError);
create_exception!(pychowres, UnsupportedInstance, PyException);

fn py_err(e: impl Into<CliError>) -> PyErr {
    match e.into() {
        CliError::Invalid(m) => InvalidInput::new_err(m),
        CliError::Unsupported(m) => UnsupportedInstance::new_err(m),
    }
}

/// A report as a Python dict, decoded from its canonical JSON.
fn report<'py>(py: Python<'py>, argv: Vec<String>, outcome: Result<Outcome, CliError>) -> PyResult<Bound<'py, PyAny>> {
    let report = RunReport::new(argv, outcome.map_err(py_err)?, None);
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

#[pyclass(name = "Quiver", frozen)]
struct PyQuiver {
    inner: Arc<chowres::Quiver>,
}

#[pymethods]
impl PyQuiver {
    /// `arrows` holds `(id, tail, head)` triples naming vertices.
    #[new]
    fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> PyResult<Self> {
        Ok(PyQuiver { inner: Arc::new(chowres::Quiver::new(vertices, arrows).map_err(py_err)?) })
    }

    #[staticmethod]
    fn kronecker(arrows: usize) -> Self {
        PyQuiver { inner: Arc::new(chowres::Quiver::kronecker(arrows)) }
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn arrows(&self) -> Vec<(String, String, String)> {
        let v = self.inner.vertices();
        self.inner.arrows().iter().map(|a| (a.id.clone(), v[a.tail].clone(), v[a.head].clone())).collect()
    }

    fn is_acyclic(&self) -> bool {
        self.inner.is_acyclic()
    }

    fn path_count(&self, from: &str, to: &str) -> PyResult<u64> {
        let (i, j) = (self.inner.vertex_index(from).map_err(py_err)?, self.inner.vertex_index(to).map_err(py_err)?);
        self.inner.path_count(i, j).map_err(py_err)
    }

    fn euler_form(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<i64> {
        self.inner.euler_form(&DimVector(a), &DimVector(b)).map_err(py_err)
    }

    fn moduli_dimension(&self, alpha: Vec<u64>) -> PyResult<i64> {
        self.inner.moduli_dimension(&DimVector(alpha)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Quiver(vertices={}, arrows={})", self.inner.vertex_count(), self.inner.arrows().len())
    }
}

#[pyclass(name = "Representation", frozen)]
struct PyRepresentation {
    inner: chowres::Representation,
}

#[pymethods]
impl PyRepresentation {
    /// Parses a quiver document with `dim` and `matrices`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyRepresentation { inner: QuiverDoc::parse(text).and_then(|d| d.representation()).map_err(py_err)? })
    }

    #[getter]
    fn quiver(&self) -> PyQuiver {
        PyQuiver { inner: self.inner.quiver().clone() }
    }

    #[getter]
    fn dim(&self) -> Vec<u64> {
        self.inner.dim().0.clone()
    }

    /// `(dim Hom, dim Ext^1)` from this representation to `other`.
    fn hom_ext(&self, other: &PyRepresentation) -> PyResult<(usize, usize)> {
        let he = self.inner.hom_ext(&other.inner).map_err(py_err)?;
        Ok((he.hom, he.ext1))
    }

    /// King stability for a weight such as `"-1,1"` or `"1/2,-1/2"`.
    fn is_stable(&self, theta: &str) -> PyResult<bool> {
        let theta = Weight(parse_rational_list(theta).map_err(py_err)?);
        self.inner.is_theta_stable(&theta).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Representation(dim={:?}, field={})", self.inner.dim().0, self.inner.field())
    }
}

#[pyclass(name = "BasedRing", frozen)]
struct PyBasedRing {
    inner: BasedRing,
}

impl PyBasedRing {
    fn element(&self, name: &str) -> PyResult<RingElement> {
        self.inner.element_by_name(name).map_err(py_err)
    }
}

#[pymethods]
impl PyBasedRing {
    #[staticmethod]
    fn projective_space(n: usize) -> Self {
        PyBasedRing { inner: BasedRing::projective_space(n) }
    }

    #[staticmethod]
    fn grassmannian(k: usize, n: usize) -> PyResult<Self> {
        Ok(PyBasedRing { inner: BasedRing::grassmannian(k, n).map_err(py_err)? })
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn top_degree(&self) -> usize {
        self.inner.top_degree()
    }

    fn degree(&self, name: &str) -> PyResult<usize> {
        Ok(self.inner.degree(self.inner.index_of(name).map_err(py_err)?))
    }

    /// Product of two basis elements as `(name, coefficient)` pairs, coefficients as strings.
    fn multiply(&self, a: &str, b: &str) -> PyResult<Vec<(String, String)>> {
        let product = self.element(a)?.mul(&self.element(b)?);
        Ok(product.terms().into_iter().map(|(n, c)| (n, c.to_string())).collect())
    }

    /// Degree of a product of basis elements under the top-degree functional.
    fn integrate(&self, factors: Vec<String>) -> PyResult<String> {
        let mut acc = self.inner.one();
        for f in &factors {
            acc = acc.mul(&self.element(f)?);
        }
        Ok(acc.evaluate().to_string())
    }

    /// Smith diagonal of the pairing between degrees `degree` and `top - degree`.
    fn pairing_smith_diagonal(&self, degree: usize) -> PyResult<Vec<String>> {
        let snf = self.inner.pairing_matrix(degree).map_err(py_err)?.smith_normal_form().map_err(py_err)?;
        Ok(snf.diagonal.iter().map(|d| d.to_string()).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.rank()
    }

    fn __repr__(&self) -> String {
        format!("BasedRing(rank={}, top_degree={})", self.inner.rank(), self.inner.top_degree())
    }
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn join(t: &[u64]) -> String {
    t.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[pyfunction]
#[pyo3(signature = (n, twist = 0))]
fn diagonal_pn(py: Python<'_>, n: usize, twist: i64) -> PyResult<Bound<'_, PyAny>> {
    let args = argv(&["diagonal", "pn", "--n", &n.to_string(), "--twist", &twist.to_string()]);
    report(py, args, commands::diagonal_pn(n, twist))
}

#[pyfunction]
#[pyo3(signature = (k, n, twist = 0))]
fn diagonal_grass(py: Python<'_>, k: usize, n: usize, twist: i64) -> PyResult<Bound<'_, PyAny>> {
    let args = argv(&["diagonal", "grass", "--k", &k.to_string(), "--n", &n.to_string(), "--twist", &twist.to_string()]);
    report(py, args, commands::diagonal_grass(k, n, twist))
}

#[pyfunction]
fn diagonal_gt(py: Python<'_>, t: Vec<u64>) -> PyResult<Bound<'_, PyAny>> {
    report(py, argv(&["diagonal", "gt", "--T", &join(&t)]), commands::diagonal_gt(&t))
}

#[pyfunction]
#[pyo3(signature = (r, c1, chi, m = 100))]
fn diagonal_p2(py: Python<'_>, r: i64, c1: i64, chi: i64, m: i64) -> PyResult<Bound<'_, PyAny>> {
    let args = argv(&["diagonal", "p2", "--r", &r.to_string(), "--c1", &c1.to_string(), "--chi", &chi.to_string(), "--m", &m.to_string()]);
    report(py, args, commands::diagonal_p2(r, c1, chi, m))
}

#[pyfunction]
fn gt_cells(py: Python<'_>, t: Vec<u64>) -> PyResult<Bound<'_, PyAny>> {
    report(py, argv(&["gt", "cells", "--T", &join(&t)]), commands::gt_cells(&t))
}

#[pyfunction]
fn gt_tangent(py: Python<'_>, t: Vec<u64>) -> PyResult<Bound<'_, PyAny>> {
    report(py, argv(&["gt", "tangent", "--T", &join(&t)]), commands::gt_tangent(&t))
}

#[pyfunction]
fn gt_quiver(py: Python<'_>, t: Vec<u64>) -> PyResult<Bound<'_, PyAny>> {
    report(py, argv(&["gt", "quiver", "--T", &join(&t)]), commands::gt_quiver_cmd(&t))
}

/// Expected dimension of `G_T`.
#[pyfunction]
fn gt_dimension(t: Vec<u64>) -> PyResult<i64> {
    chowres::gt_dimension(&HilbertFunction::new(t)).map_err(py_err)
}

/// Staircases realizing `T`, as column heights.
#[pyfunction]
fn enumerate_staircases(t: Vec<u64>) -> PyResult<Vec<Vec<u64>>> {
    let cells = chowres::enumerate_staircases(&HilbertFunction::new(t)).map_err(py_err)?;
    Ok(cells.into_iter().map(|s| s.heights().to_vec()).collect())
}

/// A `quiver` subcommand on a JSON document; `theta` is a comma-separated weight.
#[pyfunction]
#[pyo3(signature = (op, document, other = None, theta = None, source = None, target = None))]
fn quiver_report<'py>(
    py: Python<'py>,
    op: &str,
    document: &str,
    other: Option<String>,
    theta: Option<&str>,
    source: Option<String>,
    target: Option<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind: QuiverOp = op.parse().map_err(py_err)?;
    let theta = theta.map(parse_rational_list).transpose().map_err(py_err)?;
    let args = QuiverArgs { other, theta, from: source, to: target };
    report(py, argv(&["quiver", op]), commands::quiver(kind, document, &args))
}

/// Runs a command line (without the program name); returns `(output, exit_code)`.
#[pyfunction]
fn run(args: Vec<String>) -> (String, i32) {
    let full = std::iter::once("chowres".to_string()).chain(args.iter().cloned());
    match Cli::try_parse_from(full) {
        Ok(cli) => chowres_cli::run(&cli, args),
        // help and version requests are not errors
        Err(e) => (e.to_string(), if e.use_stderr() { chowres_cli::EXIT_INVALID } else { chowres_cli::EXIT_PASS }),
    }
}

#[pymodule]
fn pychowres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InvalidInput", m.py().get_type::<InvalidInput>())?;
    m.add("UnsupportedInstance", m.py().get_type::<UnsupportedInstance>())?;
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyBasedRing>()?;
    m.add_function(wrap_pyfunction!(diagonal_pn, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_grass, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_gt, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_p2, m)?)?;
    m.add_function(wrap_pyfunction!(gt_cells, m)?)?;
    m.add_function(wrap_pyfunction!(gt_tangent, m)?)?;
    m.add_function(wrap_pyfunction!(gt_quiver, m)?)?;
    m.add_function(wrap_pyfunction!(gt_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_staircases, m)?)?;
    m.add_function(wrap_pyfunction!(quiver_report, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
