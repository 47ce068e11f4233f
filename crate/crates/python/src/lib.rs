//! Python bindings: exact q-series values cross the boundary as
//! "p/q" strings (lossless, directly consumable by fractions.Fraction),
//! parameters as name -> value string mappings, and verification
//! reports as plain dictionaries.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qmock_core::rational::{format_rat, parse_rat};
use qmock_core::series::Sign;
use qmock_core::{
    compare, identities, MockTheta, ParamPoint, ParamValue, QError, QSeries as CoreSeries,
    VerificationReport,
};

fn qerr(e: QError) -> PyErr {
    match e {
        QError::NonInvertible => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_value(name: &str, raw: &str) -> PyResult<ParamValue> {
    ParamValue::parse(raw)
        .ok_or_else(|| PyValueError::new_err(format!("cannot parse parameter `{name}` = `{raw}`")))
}

fn point_from_dict(params: Option<&Bound<'_, PyDict>>) -> PyResult<ParamPoint> {
    let mut point = ParamPoint::empty();
    if let Some(d) = params {
        for (k, v) in d.iter() {
            let name: String = k.extract()?;
            let raw: String = v.extract()?;
            point.set(&name, parse_value(&name, &raw)?);
        }
    }
    Ok(point)
}

fn report_to_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("id", &r.id)?;
    let params = PyDict::new_bound(py);
    for (k, v) in r.params.iter() {
        params.set_item(k, v.to_string())?;
    }
    d.set_item("params", params)?;
    d.set_item("order", r.requested_order)?;
    d.set_item("status", r.status.as_str())?;
    match &r.first_mismatch {
        Some(m) => {
            let mm = PyDict::new_bound(py);
            mm.set_item("exponent", m.exponent)?;
            mm.set_item("lhs", format_rat(&m.lhs))?;
            mm.set_item("rhs", format_rat(&m.rhs))?;
            d.set_item("first_mismatch", mm)?;
        }
        None => d.set_item("first_mismatch", py.None())?,
    }
    d.set_item("error", r.error.clone())?;
    d.set_item("elapsed_ms", r.elapsed_ms as u64)?;
    Ok(d)
}

/// A truncated Laurent series with exact rational coefficients.
#[pyclass(name = "Series")]
#[derive(Clone)]
struct PySeries {
    inner: CoreSeries,
}

#[pymethods]
impl PySeries {
    /// A series from explicit coefficient strings, starting at min_exp.
    #[new]
    #[pyo3(signature = (coeffs, order, min_exp = 0))]
    fn new(coeffs: Vec<String>, order: i64, min_exp: i64) -> PyResult<PySeries> {
        let parsed: Option<Vec<_>> = coeffs.iter().map(|s| parse_rat(s)).collect();
        let parsed =
            parsed.ok_or_else(|| PyValueError::new_err("coefficients must be rationals p/q"))?;
        Ok(PySeries {
            inner: CoreSeries::new(min_exp, parsed, order).map_err(qerr)?,
        })
    }

    #[staticmethod]
    fn one(order: i64) -> PySeries {
        PySeries {
            inner: CoreSeries::one(order),
        }
    }

    #[getter]
    fn order(&self) -> i64 {
        self.inner.order()
    }

    #[getter]
    fn min_exp(&self) -> i64 {
        self.inner.min_exp()
    }

    /// Coefficient of q^k as a "p/q" string.
    fn coeff(&self, k: i64) -> PyResult<String> {
        if k >= self.inner.order() {
            return Err(PyValueError::new_err(format!(
                "coefficient q^{k} is beyond the tracked order {}",
                self.inner.order()
            )));
        }
        Ok(format_rat(&self.inner.coeff(k)))
    }

    /// All tracked coefficients as (exponent, "p/q") pairs.
    fn coeffs(&self) -> Vec<(i64, String)> {
        self.inner
            .terms()
            .map(|(e, c)| (e, format_rat(c)))
            .collect()
    }

    fn add(&self, other: &PySeries) -> PySeries {
        PySeries {
            inner: self.inner.add(&other.inner),
        }
    }

    fn sub(&self, other: &PySeries) -> PySeries {
        PySeries {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn mul(&self, other: &PySeries) -> PySeries {
        PySeries {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn invert(&self) -> PyResult<PySeries> {
        Ok(PySeries {
            inner: self.inner.invert().map_err(qerr)?,
        })
    }

    fn truncate(&self, order: i64) -> PyResult<PySeries> {
        if order <= self.inner.min_exp() || order > self.inner.order() {
            return Err(PyValueError::new_err("order out of range"));
        }
        Ok(PySeries {
            inner: self.inner.truncate(order),
        })
    }

    /// Substitute q -> q^k or q -> -q^k (negative=True).
    #[pyo3(signature = (k, negative = false))]
    fn compose_power(&self, k: i64, negative: bool) -> PyResult<PySeries> {
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Ok(PySeries {
            inner: self.inner.compose_power(sign, k).map_err(qerr)?,
        })
    }

    fn equal_to(&self, other: &PySeries, order: i64) -> bool {
        compare(&self.inner, &other.inner, order).is_pass()
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(min_exp={}, order={})",
            self.inner.min_exp(),
            self.inner.order()
        )
    }
}

/// Expansion of a named mock theta function.
#[pyfunction]
fn mock_series(name: &str, order: i64) -> PyResult<PySeries> {
    let m: MockTheta = name.parse().map_err(qerr)?;
    if order < 1 {
        return Err(PyValueError::new_err("order must be at least 1"));
    }
    Ok(PySeries {
        inner: m.series(order).map_err(qerr)?,
    })
}

/// Both sides of a named identity, as (lhs, rhs).
#[pyfunction]
#[pyo3(signature = (id, order, params = None))]
fn identity_sides(
    id: &str,
    order: i64,
    params: Option<&Bound<'_, PyDict>>,
) -> PyResult<(PySeries, PySeries)> {
    let point = point_from_dict(params)?;
    let (lhs, rhs) = identities::identity_sides(id, &point, order).map_err(qerr)?;
    Ok((PySeries { inner: lhs }, PySeries { inner: rhs }))
}

/// The identity catalog as a list of dictionaries.
#[pyfunction]
fn list_identities(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    qmock_core::list_identities()
        .iter()
        .map(|s| {
            let d = PyDict::new_bound(py);
            d.set_item("id", s.id)?;
            d.set_item("params", s.param_names.to_vec())?;
            d.set_item("panel_points", s.panel.len())?;
            d.set_item("description", s.description)?;
            Ok(d)
        })
        .collect()
}

/// Verify one identity; either at an explicit parameter point or over
/// its default panel.
#[pyfunction]
#[pyo3(signature = (id, order, params = None))]
fn verify<'py>(
    py: Python<'py>,
    id: &str,
    order: i64,
    params: Option<&Bound<'py, PyDict>>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    if order < 1 {
        return Err(PyValueError::new_err("order must be at least 1"));
    }
    let spec = qmock_core::find_identity(id).map_err(qerr)?;
    let reports = match params {
        Some(_) => vec![qmock_core::verify(id, &point_from_dict(params)?, order)],
        None => spec
            .panel
            .iter()
            .map(|p| qmock_core::verify(spec.id, p, order))
            .collect(),
    };
    reports.iter().map(|r| report_to_dict(py, r)).collect()
}

/// Verify the whole catalog over its default panels.
#[pyfunction]
fn verify_all(py: Python<'_>, order: i64) -> PyResult<Vec<Bound<'_, PyDict>>> {
    if order < 1 {
        return Err(PyValueError::new_err("order must be at least 1"));
    }
    qmock_core::verify_all(order)
        .iter()
        .map(|r| report_to_dict(py, r))
        .collect()
}

#[pymodule]
fn qmock_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(mock_series, m)?)?;
    m.add_function(wrap_pyfunction!(identity_sides, m)?)?;
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add("DEFAULT_ORDER", qmock_core::DEFAULT_ORDER)?;
    Ok(())
}
