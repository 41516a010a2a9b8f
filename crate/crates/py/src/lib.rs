//! Python bindings. Structured inputs and outputs cross the boundary as
//! plain dicts with the same layout as the CLI's JSON.

use fixloc_core as core;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn domain_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = PyModule::import(obj.py(), "json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyclass(name = "CoverProfile", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyCoverProfile {
    inner: core::CoverProfile,
}

#[pymethods]
impl PyCoverProfile {
    /// `orbits` lists `(id, k)` for the special orbits.
    #[new]
    #[pyo3(signature = (n, genus_base, orbits = Vec::new()))]
    fn new(n: i64, genus_base: i64, orbits: Vec<(String, i64)>) -> PyResult<Self> {
        let inner = core::CoverProfile::new(n, genus_base, orbits).map_err(domain_err)?;
        Ok(PyCoverProfile { inner })
    }

    #[staticmethod]
    fn hyperelliptic(g: i64) -> PyResult<Self> {
        Ok(PyCoverProfile { inner: core::CoverProfile::hyperelliptic(g).map_err(domain_err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, genus_base = 1))]
    fn unramified(n: i64, genus_base: i64) -> PyResult<Self> {
        Ok(PyCoverProfile { inner: core::CoverProfile::unramified(n, genus_base).map_err(domain_err)? })
    }

    #[staticmethod]
    fn from_dict(d: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCoverProfile { inner: from_py(d)? })
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner)
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.n()
    }

    #[getter]
    fn genus_base(&self) -> i64 {
        self.inner.genus_base()
    }

    /// `(id, k, n')` per special orbit.
    #[getter]
    fn orbits(&self) -> Vec<(String, i64, i64)> {
        self.inner.orbits().iter().map(|o| (o.id.clone(), o.k, o.nprime)).collect()
    }

    fn kernel_order(&self) -> i64 {
        self.inner.kernel_order()
    }

    fn gcd_orbit_lengths(&self) -> i64 {
        self.inner.gcd_orbit_lengths()
    }

    fn factor_cover(&self) -> (PyCoverProfile, i64) {
        let (ramified, r) = self.inner.factor_cover();
        (PyCoverProfile { inner: ramified }, r)
    }

    fn __repr__(&self) -> String {
        let orbits: Vec<String> = self.inner.orbits().iter().map(|o| format!("({:?}, {})", o.id, o.k)).collect();
        format!("CoverProfile(n={}, genus_base={}, orbits=[{}])", self.inner.n(), self.inner.genus_base(), orbits.join(", "))
    }
}

/// The two lifts of the hyperelliptic picture, as dicts.
#[pyfunction]
fn hyperelliptic_lifts(py: Python<'_>, profile: &PyCoverProfile) -> PyResult<Py<PyAny>> {
    to_py(py, &core::cli::hyperelliptic_lifts(&profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn enumerate_lambda(py: Python<'_>, profile: &PyCoverProfile, det: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let det: core::DeterminantLift = from_py(det)?;
    to_py(py, &core::enumerate_lambda(&det, &profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn weight_system(py: Python<'_>, profile: &PyCoverProfile, numeric: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let numeric: core::NumericData = from_py(numeric)?;
    let w = core::weight_system(&numeric, &profile.inner).map_err(domain_err)?;
    to_py(py, &core::rational::QMap(w))
}

#[pyfunction]
fn bar_delta_degree(profile: &PyCoverProfile, det: &Bound<'_, PyAny>, numeric: &Bound<'_, PyAny>) -> PyResult<i64> {
    let det: core::DeterminantLift = from_py(det)?;
    let numeric: core::NumericData = from_py(numeric)?;
    core::bar_delta_degree(&det, &numeric, &profile.inner).map_err(domain_err)
}

#[pyfunction]
fn to_parabolic(py: Python<'_>, profile: &PyCoverProfile, data: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let data: core::Rank2EqData = from_py(data)?;
    to_py(py, &core::to_parabolic(&data, &profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn from_parabolic(py: Python<'_>, profile: &PyCoverProfile, pdat: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let pdat: core::AdmissibleParabolicDatum = from_py(pdat)?;
    to_py(py, &core::from_parabolic(&pdat, &profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn zeta2_apply(py: Python<'_>, profile: &PyCoverProfile, data: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let data: core::Rank2EqData = from_py(data)?;
    to_py(py, &core::zeta2_apply(&data, &profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn decomposition_report(py: Python<'_>, profile: &PyCoverProfile) -> PyResult<Py<PyAny>> {
    to_py(py, &core::decomposition_report(&profile.inner).map_err(domain_err)?)
}

#[pyfunction]
fn hyperelliptic_report(py: Python<'_>, g: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &core::hyperelliptic_report(g).map_err(domain_err)?)
}

#[pyfunction]
fn unramified_census(py: Python<'_>, n: i64, deg_delta: i64, genus_y: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &core::unramified_census(n, deg_delta, genus_y).map_err(domain_err)?)
}

/// Classifies a flag configuration `{g, c, points, flags, weights}`.
#[pyfunction]
fn stability_classify(py: Python<'_>, config: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let cfg: core::FlagConfig = from_py(config)?;
    let bundle = cfg.bundle().map_err(domain_err)?;
    to_py(py, &core::stability_classify(&bundle))
}

#[pymodule]
pub fn fixloc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoverProfile>()?;
    m.add_function(wrap_pyfunction!(hyperelliptic_lifts, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(weight_system, m)?)?;
    m.add_function(wrap_pyfunction!(bar_delta_degree, m)?)?;
    m.add_function(wrap_pyfunction!(to_parabolic, m)?)?;
    m.add_function(wrap_pyfunction!(from_parabolic, m)?)?;
    m.add_function(wrap_pyfunction!(zeta2_apply, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_report, m)?)?;
    m.add_function(wrap_pyfunction!(hyperelliptic_report, m)?)?;
    m.add_function(wrap_pyfunction!(unramified_census, m)?)?;
    m.add_function(wrap_pyfunction!(stability_classify, m)?)?;
    Ok(())
}
