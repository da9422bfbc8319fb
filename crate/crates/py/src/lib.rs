//! Python bindings for the `weakprod` workbench.
//!
//! Elements and sets are passed either as `Elem`/`FinSet` objects or as
//! literal strings. Structured results come back as plain dicts and lists.
//! Usage and parse errors raise `ValueError`, unknown catalog names raise
//! `KeyError`, and violations (broken tables, disconnected monads) raise
//! `ViolationError`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use weakprod::catalog::custom::load_custom;
use weakprod::catalog::{CatalogEntry, Instance, Kind, Registry};
use weakprod::connected::Connectedness;
use weakprod::preservation::{check_weakly_preserves_product, split_product, PreservationVerdict};
use weakprod::suite::{paper_criteria, run_suite, Suite, DEFAULT_MAX_SIZE};
use weakprod::{Elem, Error, FinSet, Report};

create_exception!(weakprod_py, ViolationError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NotConnected(_) | Error::Rejected(_) | Error::Inconsistent(_) => ViolationError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Elem", module = "weakprod_py", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyElem(Elem);

#[pymethods]
impl PyElem {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyElem).map_err(py_err)
    }

    /// Number of atoms and constructors in the literal.
    fn size(&self) -> usize {
        self.0.size()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Elem({:?})", self.0.to_string())
    }
}

#[pyclass(name = "FinSet", module = "weakprod_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFinSet(FinSet);

#[pymethods]
impl PyFinSet {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyFinSet).map_err(py_err)
    }

    /// The set `{0, ..., n-1}` of atoms.
    #[staticmethod]
    fn standard(n: usize) -> Self {
        PyFinSet(FinSet::standard(n))
    }

    fn elements(&self) -> Vec<PyElem> {
        self.0.iter().cloned().map(PyElem).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(&elem_arg(x)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FinSet({:?})", self.0.to_string())
    }
}

fn elem_arg(x: &Bound<'_, PyAny>) -> PyResult<Elem> {
    if let Ok(e) = x.cast::<PyElem>() {
        return Ok(e.get().0.clone());
    }
    x.extract::<String>()?.parse().map_err(py_err)
}

fn set_arg(x: &Bound<'_, PyAny>) -> PyResult<FinSet> {
    if let Ok(s) = x.cast::<PyFinSet>() {
        return Ok(s.get().0.clone());
    }
    x.extract::<String>()?.parse().map_err(py_err)
}

fn registry(documents: &[String]) -> PyResult<Registry> {
    let mut reg = Registry::builtin();
    for text in documents {
        let (entry, instance) = load_custom(text).map_err(py_err)?;
        reg.register(entry, instance).map_err(py_err)?;
    }
    Ok(reg)
}

fn lookup<'r>(reg: &'r Registry, name: &str) -> PyResult<&'r (CatalogEntry, Instance)> {
    reg.get(name).ok_or_else(|| {
        PyKeyError::new_err(format!(
            "unknown catalog entry {name:?}; known: {}",
            reg.names().join(", ")
        ))
    })
}

fn entry_dict<'py>(py: Python<'py>, entry: &CatalogEntry) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("name", &entry.name)?;
    d.set_item(
        "kind",
        match entry.kind {
            Kind::Functor => "functor",
            Kind::Monad => "monad",
        },
    )?;
    d.set_item("connected", entry.connected)?;
    d.set_item("has_constant", entry.has_constant)?;
    d.set_item("bound", entry.finiteness.bound())?;
    Ok(d)
}

fn json_value<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Catalog entries with their declared flags.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    Registry::builtin().iter().map(|(e, _)| entry_dict(py, e)).collect()
}

/// Validates a custom table document and returns its computed flags.
#[pyfunction]
fn load<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let (entry, _) = load_custom(text).map_err(py_err)?;
    entry_dict(py, &entry)
}

/// Runs one suite (or `"all"`) and returns the structured report.
#[pyfunction]
#[pyo3(signature = (name, suite = "all", max_size = DEFAULT_MAX_SIZE, documents = Vec::new()))]
fn check<'py>(
    py: Python<'py>,
    name: &str,
    suite: &str,
    max_size: usize,
    documents: Vec<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(py_err)?]
    };
    let reg = registry(&documents)?;
    let (entry, instance) = lookup(&reg, name)?;
    let json = py.detach(|| {
        let mut report = Report::new(name).under_bound(entry.finiteness.bound());
        for s in suites {
            report.merge(run_suite(entry, instance, s, max_size));
        }
        report.to_json()
    });
    json_value(py, &json)
}

/// `True` or `False` when `F(1)` is enumerated, `None` when only a bounded
/// enumeration was possible.
#[pyfunction]
fn is_connected(name: &str) -> PyResult<Option<bool>> {
    let reg = Registry::builtin();
    let (_, instance) = lookup(&reg, name)?;
    Ok(
        match weakprod::connected::is_connected(instance.functor()).map_err(py_err)? {
            Connectedness::Connected(_) => Some(true),
            Connectedness::NotConnected(..) | Connectedness::Empty => Some(false),
            Connectedness::UnknownUnderBound(_) => None,
        },
    )
}

/// Surjectivity of `F(A1×A2) -> F(A1)×F(A2)`: `(True, None)` or
/// `(False, unhit)`.
#[pyfunction]
fn weakly_preserves_product(
    name: &str,
    a1: &Bound<'_, PyAny>,
    a2: &Bound<'_, PyAny>,
) -> PyResult<(bool, Option<PyElem>)> {
    let reg = Registry::builtin();
    let (_, instance) = lookup(&reg, name)?;
    let v = check_weakly_preserves_product(instance.functor(), &set_arg(a1)?, &set_arg(a2)?).map_err(py_err)?;
    Ok(match v {
        PreservationVerdict::Preserved { .. } => (true, None),
        PreservationVerdict::NotPreserved { unhit } => (false, Some(PyElem(unhit))),
    })
}

/// Splits `(p, q) ∈ F(A1)×F(A2)` into `t ∈ F(A1×A2)` for a connected monad.
#[pyfunction]
fn split<'py>(
    py: Python<'py>,
    name: &str,
    a1: &Bound<'py, PyAny>,
    a2: &Bound<'py, PyAny>,
    p: &Bound<'py, PyAny>,
    q: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyDict>> {
    let reg = Registry::builtin();
    let (_, instance) = lookup(&reg, name)?;
    let monad = instance
        .monad()
        .ok_or_else(|| PyValueError::new_err(format!("{name} is not a monad")))?;
    let r = split_product(monad, &set_arg(a1)?, &set_arg(a2)?, &elem_arg(p)?, &elem_arg(q)?).map_err(py_err)?;
    let tau = PyDict::new(py);
    for (a, ta) in r.tau.iter() {
        tau.set_item(PyElem(a.clone()), PyElem(ta.clone()))?;
    }
    let d = PyDict::new(py);
    d.set_item("t", PyElem(r.t))?;
    d.set_item("tau", tau)?;
    d.set_item("f_tau_p", PyElem(r.f_tau_p))?;
    Ok(d)
}

/// The ten regression criteria as a list of dicts.
#[pyfunction]
#[pyo3(signature = (max_size = DEFAULT_MAX_SIZE, inject_mutant = false))]
fn verify_paper(py: Python<'_>, max_size: usize, inject_mutant: bool) -> PyResult<Bound<'_, PyList>> {
    let outcomes = py.detach(|| paper_criteria(max_size, inject_mutant));
    let list = PyList::empty(py);
    for o in outcomes {
        let d = PyDict::new(py);
        d.set_item("id", o.id)?;
        d.set_item("title", o.title)?;
        d.set_item("verdict", o.verdict.to_string())?;
        d.set_item("passed", o.passed())?;
        d.set_item("detail", o.detail)?;
        list.append(d)?;
    }
    Ok(list)
}

#[pymodule]
fn weakprod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ViolationError", m.py().get_type::<ViolationError>())?;
    m.add_class::<PyElem>()?;
    m.add_class::<PyFinSet>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(is_connected, m)?)?;
    m.add_function(wrap_pyfunction!(weakly_preserves_product, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
