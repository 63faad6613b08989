//! Python bindings. Forms and classes cross the boundary as the same JSON
//! documents the command line reads and writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wittkit::io::{
    dw_class_from_json, dw_class_to_json, report_to_json, seifert_form_from_json, seifert_form_to_json,
    witt_class_from_json, witt_class_to_json, AnyLinkingForm, OracleReport,
};
use wittkit::linking::oracle::{oracle_is_hyperbolic, oracle_is_metabolic, DEFAULT_MAX_SIZE};
use wittkit::ring::{parse_rational, Rational};
use wittkit::seifert::{alexander_polynomial, covering, doubly_slice_report_with_precision};
use wittkit::witt::{
    dw_add, dw_neg, forgetful, multisignature_with_precision, witt_class_via_devissage_with_precision,
    DEFAULT_PLACE_BITS,
};
use wittkit::WittError;

fn err(e: WittError) -> PyErr {
    match e {
        WittError::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A linking form over `Z_(p)`, `Z`, `Q[z, z^-1]_(P)` or `Q[z, z^-1]`.
#[pyclass(name = "LinkingForm", module = "wittkit_py", frozen)]
struct PyLinkingForm {
    inner: AnyLinkingForm,
}

#[pymethods]
impl PyLinkingForm {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: AnyLinkingForm::from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn rank(&self) -> usize {
        match &self.inner {
            AnyLinkingForm::Int(l) => l.rank(),
            AnyLinkingForm::Laurent(l) => l.rank(),
        }
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<String> {
        match &self.inner {
            AnyLinkingForm::Int(l) => l.invariant_factors().iter().map(|d| d.to_string()).collect(),
            AnyLinkingForm::Laurent(l) => l.invariant_factors().iter().map(|d| d.to_string()).collect(),
        }
    }

    #[pyo3(signature = (places_precision = DEFAULT_PLACE_BITS))]
    fn multisignature(&self, places_precision: u32) -> PyResult<PyDWClass> {
        let c = match &self.inner {
            AnyLinkingForm::Int(l) => multisignature_with_precision(l, places_precision),
            AnyLinkingForm::Laurent(l) => multisignature_with_precision(l, places_precision),
        };
        Ok(PyDWClass { inner: c.map_err(err)? })
    }

    #[pyo3(signature = (places_precision = DEFAULT_PLACE_BITS))]
    fn witt_class(&self, places_precision: u32) -> PyResult<PyWittClass> {
        let c = match &self.inner {
            AnyLinkingForm::Int(l) => witt_class_via_devissage_with_precision(l, places_precision),
            AnyLinkingForm::Laurent(l) => witt_class_via_devissage_with_precision(l, places_precision),
        };
        Ok(PyWittClass { inner: c.map_err(err)? })
    }

    /// Exhaustive search over subgroups; returns the oracle report as JSON.
    #[pyo3(signature = (max_size = DEFAULT_MAX_SIZE))]
    fn oracle(&self, py: Python<'_>, max_size: usize) -> PyResult<String> {
        let AnyLinkingForm::Int(l) = &self.inner else {
            return Err(PyValueError::new_err("the oracle needs a finite form over Z_(p)"));
        };
        let l = l.clone();
        py.detach(|| {
            let met = oracle_is_metabolic(&l, max_size)?;
            let hyp = oracle_is_hyperbolic(&l, max_size)?;
            Ok(OracleReport::new(met, hyp).to_json())
        })
        .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("LinkingForm(invariant_factors={:?})", self.invariant_factors())
    }
}

/// A class in the double Witt group.
#[pyclass(name = "DWClass", module = "wittkit_py", frozen)]
struct PyDWClass {
    inner: wittkit::witt::DWClass,
}

#[pymethods]
impl PyDWClass {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: dw_class_from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> String {
        dw_class_to_json(&self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    #[getter]
    fn complete(&self) -> bool {
        self.inner.complete
    }

    /// `(prime, l)` keys of the nonzero entries.
    #[getter]
    fn keys(&self) -> Vec<(String, u32)> {
        self.inner.entries.iter().map(|e| (e.prime.clone(), e.l)).collect()
    }

    fn forgetful(&self) -> PyResult<PyWittClass> {
        Ok(PyWittClass { inner: forgetful(&self.inner).map_err(err)? })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: dw_add(&self.inner, &other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        Self { inner: dw_neg(&self.inner) }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner.clone().normalized() == other.inner.clone().normalized()
    }

    fn __repr__(&self) -> String {
        format!("DWClass(keys={:?})", self.keys())
    }
}

/// A class in the ordinary Witt group.
#[pyclass(name = "WittClass", module = "wittkit_py", frozen)]
struct PyWittClass {
    inner: wittkit::witt::WittClass,
}

#[pymethods]
impl PyWittClass {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: witt_class_from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> String {
        witt_class_to_json(&self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let primes: Vec<&str> = self.inner.entries.iter().map(|e| e.prime.as_str()).collect();
        format!("WittClass(primes={primes:?})")
    }
}

/// An `ε`-symmetric Seifert form, `ψ + εψ^T` nonsingular.
#[pyclass(name = "SeifertForm", module = "wittkit_py", frozen)]
struct PySeifertForm {
    inner: wittkit::seifert::SeifertForm,
}

#[pymethods]
impl PySeifertForm {
    /// Entries may be ints or strings such as `"-3/2"`.
    #[new]
    fn new(matrix: Vec<Vec<Bound<'_, PyAny>>>, epsilon: i8) -> PyResult<Self> {
        let rows = matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let s = x.str()?.to_string();
                        parse_rational(&s).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s}")))
                    })
                    .collect::<PyResult<Vec<Rational>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        let psi = wittkit::linalg::Matrix::from_rows(rows).map_err(err)?;
        Ok(Self { inner: wittkit::seifert::SeifertForm::new(psi, epsilon).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(Self { inner: seifert_form_from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> String {
        seifert_form_to_json(&self.inner)
    }

    #[getter]
    fn epsilon(&self) -> i8 {
        self.inner.epsilon()
    }

    fn alexander_polynomial(&self) -> PyResult<String> {
        Ok(alexander_polynomial(&self.inner).map_err(err)?.to_string())
    }

    fn covering(&self) -> PyResult<PyLinkingForm> {
        let l = covering(&self.inner).map_err(err)?.form;
        Ok(PyLinkingForm { inner: AnyLinkingForm::Laurent(l) })
    }

    #[pyo3(signature = (places_precision = DEFAULT_PLACE_BITS))]
    fn report(&self, places_precision: u32) -> PyResult<PyReport> {
        Ok(PyReport { inner: doubly_slice_report_with_precision(&self.inner, places_precision).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("SeifertForm(size={}, epsilon={})", self.inner.size(), self.inner.epsilon())
    }
}

/// The doubly-slice obstruction report of a Seifert form.
#[pyclass(name = "Report", module = "wittkit_py", frozen)]
struct PyReport {
    inner: wittkit::seifert::Report,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict.as_str()
    }

    #[getter]
    fn alexander(&self) -> String {
        self.inner.alexander.to_string()
    }

    #[getter]
    fn dw(&self) -> PyDWClass {
        PyDWClass { inner: self.inner.dw.clone() }
    }

    #[getter]
    fn witt(&self) -> PyWittClass {
        PyWittClass { inner: self.inner.witt.clone() }
    }

    fn to_json(&self) -> String {
        report_to_json(&self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Report(verdict={:?})", self.verdict())
    }
}

/// Runs the embedded corpus; returns `(name, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (max_oracle_size = DEFAULT_MAX_SIZE))]
fn selftest(max_oracle_size: usize) -> Vec<(String, bool, String)> {
    wittkit::selftest::run_selftest(max_oracle_size)
        .into_iter()
        .map(|c| (c.name.to_string(), c.passed, c.detail))
        .collect()
}

#[pymodule]
fn wittkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinkingForm>()?;
    m.add_class::<PyDWClass>()?;
    m.add_class::<PyWittClass>()?;
    m.add_class::<PySeifertForm>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
