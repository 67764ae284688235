//! Python bindings for splitrolle.
//!
//! Rationals cross the boundary as `fractions.Fraction`; anything with
//! integer `numerator`/`denominator` attributes, or a string such as
//! `"-3/4"`, is accepted on input.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};
use rolle::belyi::{construct_belyi as build_belyi, verify_belyi, BelyiCertificate};
use rolle::document::{AnalysisDocument, Certificate, CertificateDocument, DocumentError};
use rolle::expr::{format_poly, parse_coeffs, parse_poly};
use rolle::realroots::{classify_roots as classify, simplest_rational_between as simplest};
use rolle::report::Report;
use rolle::witness::{build_witness, verify_witness, RolleWitness, WitnessOptions};
use rolle::{Poly, Rat};

create_exception!(
    splitrolle,
    RefusedError,
    PyValueError,
    "The input is outside what a construction can certify."
);

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((r.numer().clone(), r.denom().clone()))
}

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(s) = obj.cast::<PyString>() {
        return s
            .to_str()?
            .trim()
            .parse()
            .map_err(|e| PyValueError::new_err(format!("{e}")));
    }
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(Rat::from(n));
    }
    let (Ok(num), Ok(den)) = (obj.getattr("numerator"), obj.getattr("denominator")) else {
        return Err(PyTypeError::new_err(
            "expected an int, a Fraction or a string",
        ));
    };
    Rat::new(num.extract::<BigInt>()?, den.extract::<BigInt>()?)
        .ok_or_else(|| PyZeroDivisionError::new_err("zero denominator"))
}

fn fractions<'py>(py: Python<'py>, rs: &[Rat]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    rs.iter().map(|r| fraction(py, r)).collect()
}

fn report_dict<'py>(py: Python<'py>, report: &Report) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("valid", report.valid())?;
    let checks = PyList::empty(py);
    for c in &report.checks {
        let entry = PyDict::new(py);
        entry.set_item("name", c.name)?;
        entry.set_item("passed", c.passed)?;
        entry.set_item("detail", &c.detail)?;
        checks.append(entry)?;
    }
    d.set_item("checks", checks)?;
    Ok(d)
}

fn doc_err(e: DocumentError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Polynomial with rational coefficients.
#[pyclass(name = "Poly", module = "splitrolle", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(Poly);

#[pymethods]
impl PyPoly {
    /// Parse an expression such as `"x^3 - 3/2*x + 1"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_poly(text)
            .map(PyPoly)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Build from coefficients in ascending powers.
    #[staticmethod]
    fn from_coeffs(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let cs = coeffs.iter().map(to_rat).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPoly(Poly::from_coeffs(cs)))
    }

    /// Parse a comma-separated coefficient list in ascending powers.
    #[staticmethod]
    fn parse_coeffs(text: &str) -> PyResult<Self> {
        parse_coeffs(text)
            .map(PyPoly)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Coefficients in ascending powers; empty for the zero polynomial.
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.0.coeffs())
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree().finite()
    }

    fn derivative(&self) -> Self {
        PyPoly(self.0.derivative())
    }

    fn eval<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.eval(&to_rat(x)?))
    }

    fn divrem(&self, other: &PyPoly) -> PyResult<(Self, Self)> {
        let (q, r) = self
            .0
            .divrem(&other.0)
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))?;
        Ok((PyPoly(q), PyPoly(r)))
    }

    /// Monic greatest common divisor.
    fn gcd(&self, other: &PyPoly) -> PyResult<Self> {
        self.0
            .gcd(&other.0)
            .map(PyPoly)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPoly) -> Self {
        PyPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        PyPoly(-&self.0)
    }

    fn __pow__(&self, exp: u32, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        if modulo.is_some_and(|m| !m.is_none()) {
            return Err(PyTypeError::new_err("three-argument pow is not supported"));
        }
        Ok(PyPoly(self.0.pow(exp)))
    }

    fn __str__(&self) -> String {
        format_poly(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", format_poly(&self.0))
    }
}

/// Certificate that `f` divides the derivative of a split polynomial.
#[pyclass(name = "RolleWitness", module = "splitrolle", frozen)]
struct PyWitness(RolleWitness);

#[pymethods]
impl PyWitness {
    #[getter]
    fn f(&self) -> PyPoly {
        PyPoly(self.0.f.clone())
    }

    #[getter]
    fn nodes<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.0.nodes)
    }

    #[getter]
    fn exponents(&self) -> Vec<BigInt> {
        self.0
            .exponents
            .iter()
            .map(|k| BigInt::from(k.clone()))
            .collect()
    }

    #[getter]
    fn power(&self) -> u64 {
        self.0.power
    }

    #[getter]
    fn scale<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.scale)
    }

    /// Degree of the split polynomial.
    #[getter]
    fn degree(&self) -> BigInt {
        self.0.degree().into()
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        report_dict(py, &verify_witness(&self.0))
    }

    /// Certificate document, with the verification block when `verified`.
    #[pyo3(signature = (verified = true))]
    fn to_json(&self, verified: bool) -> String {
        let report = verified.then(|| verify_witness(&self.0));
        CertificateDocument::new(Certificate::RolleWitness((&self.0).into()), report.as_ref())
            .render()
    }

    fn __repr__(&self) -> String {
        format!(
            "RolleWitness(f='{}', nodes={}, power={})",
            format_poly(&self.0.f),
            self.0.nodes.len(),
            self.0.power
        )
    }
}

/// Belyi map certificate for a set of rational points.
#[pyclass(name = "BelyiCertificate", module = "splitrolle", frozen)]
struct PyBelyi(BelyiCertificate);

#[pymethods]
impl PyBelyi {
    #[getter]
    fn points<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.0.points)
    }

    #[getter]
    fn exponents(&self) -> Vec<BigInt> {
        self.0.exponents.clone()
    }

    #[getter]
    fn constant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.constant)
    }

    #[getter]
    fn degree(&self) -> BigInt {
        self.0.degree.clone().into()
    }

    /// Ramified points as dicts with `location`, `value` and
    /// `ramification_index`, in the certificate's text form.
    #[getter]
    fn critical_report<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.0
            .critical_report
            .iter()
            .map(|c| {
                let d = PyDict::new(py);
                d.set_item("location", c.location.to_string())?;
                d.set_item("value", c.value.to_string())?;
                d.set_item(
                    "ramification_index",
                    BigInt::from(c.ramification_index.clone()),
                )?;
                Ok(d)
            })
            .collect()
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        report_dict(py, &verify_belyi(&self.0))
    }

    #[pyo3(signature = (verified = true))]
    fn to_json(&self, verified: bool) -> String {
        let report = verified.then(|| verify_belyi(&self.0));
        CertificateDocument::new(Certificate::Belyi((&self.0).into()), report.as_ref()).render()
    }

    fn __repr__(&self) -> String {
        format!(
            "BelyiCertificate(points={}, degree={})",
            self.0.points.len(),
            self.0.degree
        )
    }
}

/// Rational and real root structure of `f`.
#[pyfunction]
fn classify_roots<'py>(py: Python<'py>, f: &PyPoly) -> PyResult<Bound<'py, PyDict>> {
    let c = classify(&f.0).map_err(|e| RefusedError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    d.set_item("degree", c.degree)?;
    let rational = PyList::empty(py);
    for (r, m) in &c.rational_roots {
        rational.append((fraction(py, r)?, *m))?;
    }
    d.set_item("rational_roots", rational)?;
    let irrational = PyList::empty(py);
    for (iv, m) in &c.irrational_real {
        irrational.append((fraction(py, iv.lo())?, fraction(py, iv.hi())?, *m))?;
    }
    d.set_item("irrational_real", irrational)?;
    d.set_item("nonreal_pair_count", c.nonreal_pair_count)?;
    d.set_item("totally_real", c.totally_real)?;
    d.set_item("irrational_simple", c.irrational_simple)?;
    Ok(d)
}

/// The root classification of `f` as a JSON document.
#[pyfunction]
fn analyze(f: &PyPoly) -> PyResult<String> {
    let c = classify(&f.0).map_err(|e| RefusedError::new_err(e.to_string()))?;
    Ok(AnalysisDocument::new(&f.0, &c).render())
}

#[pyfunction]
#[pyo3(signature = (f, max_denominator = None))]
fn construct_witness(f: &PyPoly, max_denominator: Option<BigInt>) -> PyResult<PyWitness> {
    if max_denominator
        .as_ref()
        .is_some_and(|d| d.sign() != num_bigint::Sign::Plus)
    {
        return Err(PyValueError::new_err("max_denominator must be positive"));
    }
    let opts = WitnessOptions { max_denominator };
    build_witness(&f.0, &opts)
        .map(|b| PyWitness(b.witness))
        .map_err(|e| RefusedError::new_err(e.to_string()))
}

#[pyfunction]
fn construct_belyi(points: Vec<Bound<'_, PyAny>>) -> PyResult<PyBelyi> {
    let points = points.iter().map(to_rat).collect::<PyResult<Vec<_>>>()?;
    build_belyi(&points)
        .map(PyBelyi)
        .map_err(|e| RefusedError::new_err(e.to_string()))
}

/// Re-check a certificate document from scratch.
#[pyfunction]
fn verify_document<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let doc = CertificateDocument::parse(text).map_err(doc_err)?;
    let report = match &doc.certificate {
        Certificate::RolleWitness(p) => {
            verify_witness(&RolleWitness::try_from(p).map_err(doc_err)?)
        }
        Certificate::Belyi(p) => verify_belyi(&BelyiCertificate::try_from(p).map_err(doc_err)?),
    };
    report_dict(py, &report)
}

/// Simplest rational strictly between `lo` and `hi`.
#[pyfunction]
fn simplest_rational_between<'py>(
    py: Python<'py>,
    lo: &Bound<'py, PyAny>,
    hi: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let q =
        simplest(&to_rat(lo)?, &to_rat(hi)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    fraction(py, &q)
}

#[pymodule]
fn splitrolle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyWitness>()?;
    m.add_class::<PyBelyi>()?;
    m.add("RefusedError", m.py().get_type::<RefusedError>())?;
    m.add_function(wrap_pyfunction!(classify_roots, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(construct_witness, m)?)?;
    m.add_function(wrap_pyfunction!(construct_belyi, m)?)?;
    m.add_function(wrap_pyfunction!(verify_document, m)?)?;
    m.add_function(wrap_pyfunction!(simplest_rational_between, m)?)?;
    Ok(())
}
