//! Python bindings for `respoly`.
//!
//! Exact values cross the boundary as `fractions.Fraction`, float-mode values
//! as `float`. In exact mode each coefficient is read through `str()`, so
//! `int`, `Fraction`, `"a/b"` strings and decimal literals all parse exactly
//! (`0.1` is read as `1/10`).

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use respoly::scalar::parse_rational;
use respoly::{
    CirculantMatrix, ConvergenceReport, DenseMatrix, Error, Mode, Polynomial, Rational,
    ResidueVector, Scalar, SquareMatrix,
};

create_exception!(pyrespoly, RespolyError, PyValueError, "Invalid input to a respoly operation.");
create_exception!(pyrespoly, GuardError, RespolyError, "A size guard refused the request.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } => GuardError::new_err(e.to_string()),
        _ => RespolyError::new_err(e.to_string()),
    }
}

trait PyScalar: Scalar {
    fn read(obj: &Bound<'_, PyAny>) -> PyResult<Self>;
    fn emit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>>;
    fn from_inner(p: &Inner) -> Polynomial<Self>;
}

fn map_coeffs<S: Scalar, T: Scalar>(p: &Polynomial<S>, f: impl Fn(&S) -> T) -> Polynomial<T> {
    Polynomial::new(p.coeffs().iter().map(f).collect()).expect("finite coefficients")
}

impl PyScalar for Rational {
    fn read(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        let text = obj.str()?.to_string();
        parse_rational(&text).map_err(|reason| RespolyError::new_err(format!("{text:?}: {reason}")))
    }

    fn emit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        py.import("fractions")?
            .getattr("Fraction")?
            .call1((self.numer().clone(), self.denom().clone()))
    }

    fn from_inner(p: &Inner) -> Polynomial<Self> {
        match p {
            Inner::Exact(q) => q.clone(),
            Inner::Float(q) => map_coeffs(q, |&x| Rational::from_f64(x)),
        }
    }
}

impl PyScalar for f64 {
    fn read(obj: &Bound<'_, PyAny>) -> PyResult<Self> {
        obj.extract()
    }

    fn emit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        Ok(self.into_pyobject(py)?.into_any())
    }

    fn from_inner(p: &Inner) -> Polynomial<Self> {
        match p {
            Inner::Exact(q) => map_coeffs(q, Scalar::to_f64),
            Inner::Float(q) => q.clone(),
        }
    }
}

fn list<'py, T: PyScalar>(py: Python<'py>, v: &[T]) -> PyResult<Bound<'py, PyList>> {
    let items = v.iter().map(|x| x.emit(py)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn matrix<'py, T: PyScalar>(py: Python<'py>, m: &DenseMatrix<T>) -> PyResult<Bound<'py, PyList>> {
    let rows = m.rows().map(|r| list(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    match mode {
        "exact" => Ok(Mode::Exact),
        "float" => Ok(Mode::Float),
        other => Err(RespolyError::new_err(format!("unknown mode {other:?}; expected 'exact' or 'float'"))),
    }
}

#[derive(Clone)]
enum Inner {
    Exact(Polynomial<Rational>),
    Float(Polynomial<f64>),
}

/// Polynomial with coefficients in ascending degree, exact or float.
#[pyclass(name = "Polynomial", module = "pyrespoly", frozen)]
struct PyPolynomial {
    inner: Inner,
}

fn read_poly<T: PyScalar>(obj: &Bound<'_, PyAny>) -> PyResult<Polynomial<T>> {
    if let Ok(p) = obj.extract::<PyRef<'_, PyPolynomial>>() {
        return Ok(T::from_inner(&p.inner));
    }
    let coeffs = obj.try_iter()?.map(|c| T::read(&c?)).collect::<PyResult<Vec<_>>>()?;
    Polynomial::new(coeffs).map_err(to_py)
}

/// Resolves the numeric mode: explicit argument, else the mode of a
/// `Polynomial` argument, else exact.
fn resolve_mode(obj: &Bound<'_, PyAny>, mode: Option<&str>) -> PyResult<Mode> {
    if let Some(m) = mode {
        return parse_mode(m);
    }
    Ok(match obj.extract::<PyRef<'_, PyPolynomial>>() {
        Ok(p) if matches!(p.inner, Inner::Float(_)) => Mode::Float,
        _ => Mode::Exact,
    })
}

macro_rules! by_mode {
    ($mode:expr, $f:ident($($arg:expr),*)) => {
        match $mode {
            Mode::Exact => $f::<Rational>($($arg),*),
            Mode::Float => $f::<f64>($($arg),*),
        }
    };
}

#[pymethods]
impl PyPolynomial {
    #[new]
    #[pyo3(signature = (coeffs, mode = "exact"))]
    fn new(coeffs: &Bound<'_, PyAny>, mode: &str) -> PyResult<Self> {
        let inner = match parse_mode(mode)? {
            Mode::Exact => Inner::Exact(read_poly(coeffs)?),
            Mode::Float => Inner::Float(read_poly(coeffs)?),
        };
        Ok(PyPolynomial { inner })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        match &self.inner {
            Inner::Exact(p) => list(py, p.coeffs()),
            Inner::Float(p) => list(py, p.coeffs()),
        }
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner {
            Inner::Exact(_) => "exact",
            Inner::Float(_) => "float",
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        match &self.inner {
            Inner::Exact(p) => p.degree(),
            Inner::Float(p) => p.degree(),
        }
    }

    /// One of "zero", "nonnegative", "positive", "mixed-sign".
    fn classify(&self) -> String {
        let c = match &self.inner {
            Inner::Exact(p) => p.classify(),
            Inner::Float(p) => p.classify(),
        };
        serde_label(c)
    }

    /// `(p(1), p / p(1))` for nonnegative `p`.
    fn normalize<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, PyPolynomial)> {
        match &self.inner {
            Inner::Exact(p) => {
                let (s, q) = p.normalize().map_err(to_py)?;
                Ok((s.emit(py)?, PyPolynomial { inner: Inner::Exact(q) }))
            }
            Inner::Float(p) => {
                let (s, q) = p.normalize().map_err(to_py)?;
                Ok((s.emit(py)?, PyPolynomial { inner: Inner::Float(q) }))
            }
        }
    }

    fn residue<'py>(slf: &Bound<'py, Self>, d: usize) -> PyResult<Bound<'py, PyList>> {
        residue(slf.py(), slf.as_any(), d, None)
    }

    #[pyo3(signature = (n, d, method = "square"))]
    fn pow_mod<'py>(slf: &Bound<'py, Self>, n: u64, d: usize, method: &str) -> PyResult<Bound<'py, PyList>> {
        pow_mod(slf.py(), slf.as_any(), n, d, None, method)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyPolynomial> {
        let inner = match &self.inner {
            Inner::Exact(p) => Inner::Exact(p.mul(&read_poly(other)?)),
            Inner::Float(p) => Inner::Float(p.mul(&read_poly(other)?)),
        };
        Ok(PyPolynomial { inner })
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        let Ok(other) = other.extract::<PyRef<'_, PyPolynomial>>() else {
            return false;
        };
        match (&self.inner, &other.inner) {
            (Inner::Exact(a), Inner::Exact(b)) => a == b,
            (Inner::Float(a), Inner::Float(b)) => a == b,
            _ => false,
        }
    }

    fn __str__(&self) -> String {
        match &self.inner {
            Inner::Exact(p) => p.to_string(),
            Inner::Float(p) => p.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', mode='{}')", self.__str__(), self.mode())
    }
}

fn serde_label(c: respoly::Classification) -> String {
    match c {
        respoly::Classification::Zero => "zero",
        respoly::Classification::Nonnegative => "nonnegative",
        respoly::Classification::Positive => "positive",
        respoly::Classification::MixedSign => "mixed-sign",
    }
    .to_owned()
}

fn residue_in<'py, T: PyScalar>(py: Python<'py>, p: &Bound<'py, PyAny>, d: usize) -> PyResult<Bound<'py, PyList>> {
    let r = read_poly::<T>(p)?.residue(d).map_err(to_py)?;
    list(py, r.coeffs())
}

/// `r(p)`, the remainder of `p` modulo `x^d - 1`.
#[pyfunction]
#[pyo3(signature = (p, d, mode = None))]
fn residue<'py>(py: Python<'py>, p: &Bound<'py, PyAny>, d: usize, mode: Option<&str>) -> PyResult<Bound<'py, PyList>> {
    by_mode!(resolve_mode(p, mode)?, residue_in(py, p, d))
}

fn pow_mod_in<'py, T: PyScalar>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    n: u64,
    d: usize,
    method: &str,
) -> PyResult<Bound<'py, PyList>> {
    let p = read_poly::<T>(p)?;
    let r = match method {
        "square" => respoly::pow_mod(&p, n, d).map_err(to_py)?,
        "naive" => respoly::pow_mod_naive(&p, n, d).map_err(to_py)?,
        "dft" if T::MODE == Mode::Float => {
            let r = p.residue(d).map_err(to_py)?;
            let floats = ResidueVector::new(r.coeffs().iter().map(Scalar::to_f64).collect()).map_err(to_py)?;
            let out = respoly::dft_pow(&floats, n);
            ResidueVector::new(out.coeffs().iter().map(|&x| T::from_f64(x)).collect()).map_err(to_py)?
        }
        "dft" => {
            return Err(to_py(Error::MethodUnavailable {
                method: "dft".into(),
                mode: T::MODE.to_string(),
            }))
        }
        other => return Err(RespolyError::new_err(format!("unknown method {other:?}"))),
    };
    list(py, r.coeffs())
}

/// `r(p^n)` by square-and-multiply, naive expansion or (float only) DFT.
#[pyfunction]
#[pyo3(signature = (p, n, d, mode = None, method = "square"))]
fn pow_mod<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    n: u64,
    d: usize,
    mode: Option<&str>,
    method: &str,
) -> PyResult<Bound<'py, PyList>> {
    by_mode!(resolve_mode(p, mode)?, pow_mod_in(py, p, n, d, method))
}

fn strided_sums_in<'py, T: PyScalar>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    n: u64,
    d: usize,
) -> PyResult<Bound<'py, PyList>> {
    let s = respoly::strided_sums(&read_poly::<T>(p)?, n, d).map_err(to_py)?;
    list(py, &s.j_sums)
}

/// `S_j(n)`: sums of the coefficients of `p^n` with index `j mod d`.
#[pyfunction]
#[pyo3(signature = (p, n, d, mode = None))]
fn strided_sums<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    n: u64,
    d: usize,
    mode: Option<&str>,
) -> PyResult<Bound<'py, PyList>> {
    by_mode!(resolve_mode(p, mode)?, strided_sums_in(py, p, n, d))
}

fn certificate_in<'py, T: PyScalar>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    d: usize,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let Some(c) = respoly::lemma1_certificate(&read_poly::<T>(p)?, d).map_err(to_py)? else {
        return Ok(None);
    };
    let out = PyDict::new(py);
    out.set_item("k", c.k)?;
    out.set_item("l", c.l)?;
    out.set_item("h", c.h)?;
    out.set_item("threshold", c.threshold)?;
    Ok(Some(out))
}

/// Coprime pair of positive residue indices, or `None`.
#[pyfunction]
#[pyo3(signature = (p, d, mode = None))]
fn certificate<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    d: usize,
    mode: Option<&str>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    by_mode!(resolve_mode(p, mode)?, certificate_in(py, p, d))
}

fn read_matrix<T: PyScalar>(m: &Bound<'_, PyAny>) -> PyResult<DenseMatrix<T>> {
    let rows: Vec<Bound<'_, PyAny>> = m.try_iter()?.collect::<PyResult<_>>()?;
    let nested = rows.first().is_some_and(|r| r.try_iter().is_ok() && !r.is_instance_of::<pyo3::types::PyString>());
    if nested {
        let rows = rows
            .iter()
            .map(|r| r.try_iter()?.map(|x| T::read(&x?)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        DenseMatrix::from_rows(rows).map_err(to_py)
    } else {
        let first = rows.iter().map(T::read).collect::<PyResult<Vec<_>>>()?;
        Ok(CirculantMatrix::new(first).map_err(to_py)?.to_dense())
    }
}

fn lambda_in<'py, T: PyScalar>(py: Python<'py>, m: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let dec = respoly::lambda_decomposition(&read_matrix::<T>(m)?).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("lambda", dec.lambda.emit(py)?)?;
    out.set_item("m0", matrix(py, &dec.m0)?)?;
    out.set_item("special_case_j", dec.special_case_j)?;
    Ok(out)
}

/// `M = lambda*J + (1 - lambda)*M0` for a positive doubly stochastic `M`,
/// given densely or as the first row of a circulant.
#[pyfunction]
#[pyo3(signature = (m, mode = "exact"))]
fn lambda_decomposition<'py>(py: Python<'py>, m: &Bound<'py, PyAny>, mode: &str) -> PyResult<Bound<'py, PyDict>> {
    by_mode!(parse_mode(mode)?, lambda_in(py, m))
}

fn report<'py, T: PyScalar>(py: Python<'py>, r: &ConvergenceReport<T>) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("d", r.d)?;
    out.set_item("tol", r.tol)?;
    out.set_item("n", r.n_grid.clone())?;
    let sums = r.sums.iter().map(|s| list(py, &s.j_sums)).collect::<PyResult<Vec<_>>>()?;
    out.set_item("sums", sums)?;
    out.set_item("distances", list(py, &r.distances)?)?;
    let bound = r
        .bound
        .iter()
        .map(|b| b.as_ref().map(|x| x.emit(py)).transpose())
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("bound", bound)?;
    out.set_item("m0", r.m0)?;
    out.set_item("lambda", r.lambda.as_ref().map(|l| l.emit(py)).transpose()?)?;
    out.set_item("n_star", r.n_star)?;
    out.set_item("nonconvergent", r.nonconvergent)?;
    let subs = r
        .subsequences
        .iter()
        .map(|s| {
            let t = PyDict::new(py);
            t.set_item("offset", s.offset)?;
            t.set_item("stride", s.stride)?;
            t.set_item("indices", s.indices.clone())?;
            t.set_item("distances", list(py, &s.distances)?)?;
            t.set_item("bounds", list(py, &s.bounds)?)?;
            Ok(t)
        })
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("subsequences", subs)?;
    Ok(out)
}

fn trace_in<'py, T: PyScalar>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    d: usize,
    n_max: u64,
    tol: f64,
    subsequences: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let p = read_poly::<T>(p)?;
    let r = if subsequences {
        respoly::equidist::corollary_check_with_tol(&p, d, n_max, tol)
    } else {
        respoly::converge_trace(&p, d, n_max, tol)
    };
    report(py, &r.map_err(to_py)?)
}

/// `max_j |S_j(n) - 1/d|` for `n = 1..n_max` with the lambda bound, for a
/// stochastic `p`.
#[pyfunction]
#[pyo3(signature = (p, d, n_max, tol = 1e-6, mode = None))]
fn converge_trace<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    d: usize,
    n_max: u64,
    tol: f64,
    mode: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    by_mode!(resolve_mode(p, mode)?, trace_in(py, p, d, n_max, tol, false))
}

/// As `converge_trace`, plus the `d - 1` interleaved subsequence traces.
#[pyfunction]
#[pyo3(signature = (p, d, n_max, tol = 1e-6, mode = None))]
fn corollary_check<'py>(
    py: Python<'py>,
    p: &Bound<'py, PyAny>,
    d: usize,
    n_max: u64,
    tol: f64,
    mode: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    by_mode!(resolve_mode(p, mode)?, trace_in(py, p, d, n_max, tol, true))
}

#[pyfunction]
fn binomial_support_check(h: usize, d: usize) -> bool {
    respoly::binomial_support_check(h, d)
}

#[pyfunction]
fn binomial_row(n: u64) -> PyResult<Vec<BigUint>> {
    Ok(respoly::binomial_row(n).map_err(to_py)?.entries)
}

/// `sums[j] = C(n, j) + C(n, j + d) + ...` and `ratios[j] = d * sums[j] / 2^n`.
#[pyfunction]
fn pascal_strided<'py>(py: Python<'py>, n: u64, d: usize) -> PyResult<Bound<'py, PyDict>> {
    let profile = respoly::pascal_strided(n, d).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("n", n)?;
    out.set_item("d", d)?;
    out.set_item("sums", profile.sums)?;
    out.set_item("ratios", list(py, &profile.ratios)?)?;
    Ok(out)
}

#[pyfunction]
fn pascal_deviation(n: u64, d: usize) -> PyResult<f64> {
    respoly::pascal_deviation(n, d).map_err(to_py)
}

#[pymodule]
fn pyrespoly(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("RespolyError", py.get_type::<RespolyError>())?;
    m.add("GuardError", py.get_type::<GuardError>())?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(residue, m)?)?;
    m.add_function(wrap_pyfunction!(pow_mod, m)?)?;
    m.add_function(wrap_pyfunction!(strided_sums, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(converge_trace, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_check, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_support_check, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_row, m)?)?;
    m.add_function(wrap_pyfunction!(pascal_strided, m)?)?;
    m.add_function(wrap_pyfunction!(pascal_deviation, m)?)?;
    Ok(())
}
