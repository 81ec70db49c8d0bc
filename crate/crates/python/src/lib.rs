//! Python bindings for `tensorcat-core`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use tensorcat_core::brauer::{self, BiObject, DEFAULT_DEGREE_CAP};
use tensorcat_core::growth::{self, DEFAULT_BOUNDS_CAP};
use tensorcat_core::modrep;
use tensorcat_core::scalars::{Fp, Prime};
use tensorcat_core::{verlinde, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn prime(p: u64) -> PyResult<Prime> {
    Prime::new(p).map_err(py_err)
}

/// Element of the Grothendieck ring of Ver_p.
#[pyclass(name = "FusionElement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFusionElement(verlinde::FusionElement);

#[pymethods]
impl PyFusionElement {
    #[new]
    fn new(p: u64, m: Vec<u64>) -> PyResult<Self> {
        Ok(Self(
            verlinde::FusionElement::new(prime(p)?, m).map_err(py_err)?,
        ))
    }

    #[staticmethod]
    fn simple(p: u64, k: u64) -> PyResult<Self> {
        Ok(Self(
            verlinde::FusionElement::simple(prime(p)?, k).map_err(py_err)?,
        ))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p().get()
    }

    #[getter]
    fn multiplicities(&self) -> Vec<u64> {
        self.0.multiplicities().to_vec()
    }

    #[getter]
    fn length(&self) -> u64 {
        self.0.length()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.add(&other.0).map_err(py_err)?))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(verlinde::product(&self.0, &other.0).map_err(py_err)?))
    }

    fn __pow__(&self, n: u32, _modulo: Option<u64>) -> PyResult<Self> {
        Ok(Self(verlinde::power(&self.0, n).map_err(py_err)?))
    }

    fn dual(&self) -> Self {
        Self(self.0.dual())
    }

    /// Categorical dimension in F_p.
    fn cat_dim(&self) -> u64 {
        verlinde::cat_dim(&self.0).value()
    }

    /// Frobenius–Perron dimension; `digits` selects a decimal string instead
    /// of a float.
    #[pyo3(signature = (digits = None))]
    fn fp_dim(&self, py: Python<'_>, digits: Option<usize>) -> PyResult<Py<PyAny>> {
        let x = verlinde::fp_dim(&self.0);
        Ok(match digits {
            Some(d) => x.to_sig_string(d).into_pyobject(py)?.into_any().unbind(),
            None => x.to_f64().into_pyobject(py)?.into_any().unbind(),
        })
    }

    fn is_invertible(&self) -> PyResult<bool> {
        verlinde::is_invertible(&self.0).map_err(py_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "FusionElement(p={}, m={:?})",
            self.0.p(),
            self.0.multiplicities()
        )
    }
}

/// A representation of Z/p^e over F_p, given by its Jordan blocks.
#[pyclass(name = "JordanModule", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyJordanModule(modrep::JordanModule);

#[pymethods]
impl PyJordanModule {
    #[new]
    #[pyo3(signature = (p, blocks, e = 1))]
    fn new(p: u64, blocks: Vec<usize>, e: u32) -> PyResult<Self> {
        let v = modrep::JordanModule::new(prime(p)?, e, blocks).map_err(py_err)?;
        v.check_order_cap(modrep::DEFAULT_ORDER_CAP)
            .map_err(py_err)?;
        Ok(Self(v))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p().get()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.0.e()
    }

    #[getter]
    fn blocks(&self) -> Vec<usize> {
        self.0.blocks().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.direct_sum(&other.0).map_err(py_err)?))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(
            modrep::jordan_tensor(&self.0, &other.0).map_err(py_err)?,
        ))
    }

    fn sym2(&self) -> PyResult<Self> {
        Ok(Self(modrep::sym2(&self.0).map_err(py_err)?))
    }

    fn ext2(&self) -> PyResult<Self> {
        Ok(Self(modrep::ext2(&self.0).map_err(py_err)?))
    }

    fn exterior_power(&self, k: usize) -> PyResult<Self> {
        Ok(Self(modrep::exterior_power(&self.0, k).map_err(py_err)?))
    }

    fn non_negligible_part(&self) -> Self {
        Self(modrep::non_negligible_part(&self.0))
    }

    fn to_verlinde(&self) -> PyResult<PyFusionElement> {
        Ok(PyFusionElement(
            modrep::to_verlinde(&self.0).map_err(py_err)?,
        ))
    }

    /// `m_k` recovered from `b(V)` and `b(S²V) - b(∧²V)` alone.
    fn recover_mk(&self) -> PyResult<Vec<u64>> {
        let (b, diff) = growth::b_data(&self.0).map_err(py_err)?;
        growth::recover_mk(self.0.p(), &b, &diff).map_err(py_err)
    }

    /// Full invariants report as a JSON document.
    fn invariants_json(&self) -> PyResult<String> {
        let r = growth::invariants_report(&self.0, DEFAULT_BOUNDS_CAP).map_err(py_err)?;
        Ok(serde_json::to_string(&r).expect("serializable"))
    }

    /// Digits of the p-adic dimension read off the exterior powers.
    fn padic_digits(&self) -> PyResult<Vec<u64>> {
        let dims = growth::exterior_cat_dims(&self.0).map_err(py_err)?;
        Ok(growth::padic_digits(self.0.p(), &dims)
            .map_err(py_err)?
            .digits)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "JordanModule(p={}, blocks={:?}, e={})",
            self.0.p(),
            self.0.blocks(),
            self.0.e()
        )
    }
}

#[pyfunction]
fn fusion(p: u64, i: u64, j: u64) -> PyResult<PyFusionElement> {
    Ok(PyFusionElement(
        verlinde::fusion(prime(p)?, i, j).map_err(py_err)?,
    ))
}

/// `[k]_q` at `q = e^{iπ/p}` as a decimal string.
#[pyfunction]
#[pyo3(signature = (p, k, digits = 30))]
fn q_int(p: u64, k: u64, digits: usize) -> PyResult<String> {
    Ok(tensorcat_core::scalars::q_int(prime(p)?, k, 1)
        .map_err(py_err)?
        .to_sig_string(digits))
}

#[pyfunction]
fn padic_digits(p: u64, dims: Vec<u64>) -> PyResult<Vec<u64>> {
    let q = prime(p)?;
    let dims: Vec<Fp> = dims.into_iter().map(|d| Fp::from_u64(d, q)).collect();
    Ok(growth::padic_digits(q, &dims).map_err(py_err)?.digits)
}

#[pyfunction]
fn plancherel_bound(p: u64, d: u64) -> PyResult<String> {
    let b = growth::plancherel_bound(prime(p)?, d, DEFAULT_BOUNDS_CAP).map_err(py_err)?;
    Ok(b.bound.to_sig_string(30))
}

#[pyfunction]
fn improved_bound_json(p: u64, d: u64) -> PyResult<String> {
    let b = growth::improved_bound(prime(p)?, d, DEFAULT_BOUNDS_CAP).map_err(py_err)?;
    Ok(serde_json::to_string(&b).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (r, s, u = None, v = None))]
fn hom_dim(r: usize, s: usize, u: Option<usize>, v: Option<usize>) -> PyResult<usize> {
    let (src, tgt) = (
        BiObject::new(r, s),
        BiObject::new(u.unwrap_or(r), v.unwrap_or(s)),
    );
    if let Some(d) = brauer::hom_degree(src, tgt).filter(|&d| d > DEFAULT_DEGREE_CAP) {
        return Err(py_err(Error::CapExceeded {
            what: "Brauer degree",
            value: d as u64,
            cap: DEFAULT_DEGREE_CAP as u64,
        }));
    }
    Ok(brauer::hom_basis(src, tgt).len())
}

#[pyfunction]
fn schur_weyl_homdim(n: usize, r: usize, s: usize, u: usize, v: usize) -> String {
    let d: BigUint = brauer::schur_weyl_homdim(n, BiObject::new(r, s), BiObject::new(u, v));
    d.to_string()
}

/// Symbolic Gram matrix entries as polynomials in `t`.
#[pyfunction]
#[pyo3(signature = (r, s, u = None, v = None))]
fn gram_matrix(
    r: usize,
    s: usize,
    u: Option<usize>,
    v: Option<usize>,
) -> PyResult<Vec<Vec<String>>> {
    let (src, tgt) = (
        BiObject::new(r, s),
        BiObject::new(u.unwrap_or(r), v.unwrap_or(s)),
    );
    let g = brauer::gram_matrix_symbolic(src, tgt, DEFAULT_DEGREE_CAP).map_err(py_err)?;
    Ok(g.iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (r, s, u = None, v = None))]
fn gram_determinant(r: usize, s: usize, u: Option<usize>, v: Option<usize>) -> PyResult<String> {
    let (src, tgt) = (
        BiObject::new(r, s),
        BiObject::new(u.unwrap_or(r), v.unwrap_or(s)),
    );
    Ok(brauer::gram_determinant(src, tgt, DEFAULT_DEGREE_CAP)
        .map_err(py_err)?
        .to_string())
}

/// Runs the command line in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = tensorcat_core::cli::run(std::iter::once("tensorcat".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn tensorcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFusionElement>()?;
    m.add_class::<PyJordanModule>()?;
    m.add_function(wrap_pyfunction!(fusion, m)?)?;
    m.add_function(wrap_pyfunction!(q_int, m)?)?;
    m.add_function(wrap_pyfunction!(padic_digits, m)?)?;
    m.add_function(wrap_pyfunction!(plancherel_bound, m)?)?;
    m.add_function(wrap_pyfunction!(improved_bound_json, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(schur_weyl_homdim, m)?)?;
    m.add_function(wrap_pyfunction!(gram_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(gram_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
