//! Python bindings. Elements and polynomials cross the boundary as their
//! canonical strings; indices are 1-based, as in theory files.

use std::collections::BTreeSet;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hypertoric::lattice::{Flavor, ModuleSignature, Sign, TorusDatum};
use hypertoric::{modules, parse, quiver, AlgebraElement, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "TorusDatum", frozen)]
struct PyTorusDatum {
    inner: Arc<TorusDatum>,
}

#[pymethods]
impl PyTorusDatum {
    #[new]
    fn new(k: usize, iota: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Self { inner: Arc::new(TorusDatum::new(k, iota).map_err(py_err)?) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// Exceptional subsets, 1-based.
    fn exceptional_subsets(&self) -> Vec<Vec<usize>> {
        self.inner
            .exceptional_subsets()
            .into_iter()
            .map(|s| s.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    /// Parses an element such as `"(x1 - 1/2 * h) * r[0]"`.
    fn element(&self, src: &str) -> PyResult<PyAlgebraElement> {
        Ok(PyAlgebraElement { inner: parse::parse_element(src, &self.inner).map_err(py_err)? })
    }

    fn monopole(&self, weight: Vec<i64>) -> PyResult<PyAlgebraElement> {
        Ok(PyAlgebraElement { inner: AlgebraElement::monopole(self.inner.clone(), &weight).map_err(py_err)? })
    }
}

#[pyclass(name = "AlgebraElement", frozen)]
struct PyAlgebraElement {
    inner: AlgebraElement,
}

#[pymethods]
impl PyAlgebraElement {
    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.multiply(&other.inner).map_err(py_err)? })
    }

    fn __add__(&self, other: &Self) -> Self {
        Self { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self { inner: &self.inner - &other.inner }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AlgebraElement({:?})", self.inner.to_string())
    }

    fn commutator(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.commutator(&other.inner).map_err(py_err)? })
    }

    /// `alpha` is a string of `+`/`-`.
    fn fourier_transform(&self, alpha: &str) -> PyResult<Self> {
        let alpha = Sign::parse_vector(alpha).map_err(py_err)?;
        Ok(Self { inner: self.inner.fourier_transform(&alpha).map_err(py_err)? })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

#[pyclass(name = "ModuleSignature", frozen)]
struct PyModuleSignature {
    inner: Arc<ModuleSignature>,
}

#[pymethods]
impl PyModuleSignature {
    #[new]
    #[pyo3(signature = (datum, alpha, subset, mu, flavor = "small"))]
    fn new(datum: &PyTorusDatum, alpha: &str, subset: Vec<usize>, mu: Vec<i64>, flavor: &str) -> PyResult<Self> {
        let alpha = Sign::parse_vector(alpha).map_err(py_err)?;
        let flavor = match flavor {
            "small" => Flavor::Small,
            "big" => Flavor::Big,
            other => return Err(PyValueError::new_err(format!("unknown flavor {other:?}"))),
        };
        if subset.contains(&0) {
            return Err(PyValueError::new_err("subset indices are 1-based"));
        }
        let subset: BTreeSet<usize> = subset.into_iter().map(|i| i - 1).collect();
        let sig = ModuleSignature::new(datum.inner.clone(), alpha, subset, mu, flavor).map_err(py_err)?;
        Ok(Self { inner: Arc::new(sig) })
    }

    fn support(&self, radius: u32) -> Vec<Vec<i64>> {
        self.inner.support_polytope().enumerate(radius)
    }

    fn in_support(&self, sigma: Vec<i64>) -> bool {
        self.inner.in_support(&sigma)
    }

    /// `a|σ⟩` as a list of `(weight, coefficient)`.
    fn act(&self, element: &PyAlgebraElement, sigma: Vec<i64>) -> PyResult<Vec<(Vec<i64>, String)>> {
        let v = modules::basis_vector(&self.inner, &sigma).map_err(py_err)?;
        let out = modules::act(&element.inner, &v).map_err(py_err)?;
        Ok(out.entries().map(|(k, c)| (k.clone(), c.to_string())).collect())
    }

    /// `(label, in_O, verma, sigma_max)`.
    fn classify(&self, chi: Vec<i64>) -> PyResult<(String, bool, String, Option<Vec<i64>>)> {
        let c = modules::classify(&self.inner, &chi).map_err(py_err)?;
        Ok((format!("{:?}", c.label), c.in_category_o, format!("{:?}", c.verma_status), c.sigma_max))
    }

    fn character_series(&self, chi: Vec<i64>, max_degree: u32) -> PyResult<Vec<(u32, u64)>> {
        modules::character_series(&self.inner, &chi, max_degree).map_err(py_err)
    }

    fn simplicity_probe(&self, radius: u32) -> bool {
        modules::simplicity_probe(&self.inner, radius)
    }
}

#[pyfunction]
fn gt_pattern_count(n: usize, degrees: Vec<i64>) -> PyResult<usize> {
    Ok(quiver::gt_patterns(n, &degrees).map_err(py_err)?.len())
}

#[pyfunction]
fn spaltenstein_fixed_count(mu: Vec<u32>, r: u32) -> u64 {
    quiver::spaltenstein_fixed_count(&mu, r)
}

#[pyfunction]
fn invariant_subspace_count(q: usize, mu: Vec<u32>, r: u32) -> PyResult<u64> {
    quiver::invariant_subspace_count(q, &mu, r).map_err(py_err)
}

/// Integer coefficients, lowest degree first.
#[pyfunction]
fn point_count_polynomial(mu: Vec<u32>, r: u32) -> PyResult<Vec<i64>> {
    quiver::point_count_polynomial(&mu, r).map_err(py_err)
}

/// `(polynomial, strings, ratio_holds, general_position)`; offsets are
/// rational strings such as `"1/2"`.
#[pyfunction]
fn drinfeld(r: Vec<String>, mu: Vec<i64>) -> PyResult<(String, String, bool, bool)> {
    let r = r.iter().map(|s| parse::parse_rational(s)).collect::<Result<Vec<_>, _>>().map_err(py_err)?;
    let (p, s) = quiver::drinfeld_polynomial(&r, &mu).map_err(py_err)?;
    Ok((p.to_string(), s.to_string(), quiver::drinfeld_ratio_holds(&p, &s), quiver::general_position(&s)))
}

#[pymodule]
#[pyo3(name = "hypertoric")]
fn hypertoric_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTorusDatum>()?;
    m.add_class::<PyAlgebraElement>()?;
    m.add_class::<PyModuleSignature>()?;
    m.add_function(wrap_pyfunction!(gt_pattern_count, m)?)?;
    m.add_function(wrap_pyfunction!(spaltenstein_fixed_count, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_subspace_count, m)?)?;
    m.add_function(wrap_pyfunction!(point_count_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(drinfeld, m)?)?;
    Ok(())
}
