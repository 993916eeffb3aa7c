//! Python bindings: exact rational matrices, generalized inverses,
//! commuting splittings, and the block-theorem checker/fuzzer.
//!
//! Matrix entries cross the boundary as strings (`"p/q"`) or Python ints so
//! exactness survives the round trip; report-shaped results come back as
//! JSON text identical to the CLI output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hirano::blockthm::{self, Profile, TheoremId};
use hirano::decomp;
use hirano::format;
use hirano::gendrazin;
use hirano::genfuzz::{self, GenConfig};
use hirano::ratmat::{parse_rational, rat_int, render_rational, Matrix as RsMatrix};

fn err(e: hirano::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mat_err(e: hirano::ratmat::MatrixError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn profile(as_stated: bool) -> Profile {
    if as_stated { Profile::AsStated } else { Profile::Default }
}

fn theorem(id: &str) -> PyResult<TheoremId> {
    id.parse().map_err(err)
}

#[derive(FromPyObject)]
enum Cell {
    Int(i64),
    Str(String),
}

#[pyclass(name = "Matrix", from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: RsMatrix,
}

fn wrap(inner: RsMatrix) -> PyMatrix {
    PyMatrix { inner }
}

#[pymethods]
impl PyMatrix {
    /// Build from a list of rows; entries are ints or rational strings.
    #[new]
    fn new(rows: Vec<Vec<Cell>>) -> PyResult<Self> {
        if rows.is_empty() {
            return Err(PyValueError::new_err("matrix has no rows"));
        }
        let width = rows[0].len();
        let mut entries = Vec::with_capacity(rows.len() * width);
        for row in &rows {
            if row.len() != width {
                return Err(PyValueError::new_err("ragged rows"));
            }
            for cell in row {
                entries.push(match cell {
                    Cell::Int(i) => rat_int(*i),
                    Cell::Str(s) => parse_rational(s).map_err(mat_err)?,
                });
            }
        }
        Ok(wrap(RsMatrix::new(rows.len(), width, entries).map_err(mat_err)?))
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        wrap(RsMatrix::identity(n))
    }

    #[staticmethod]
    fn zeros(rows: usize, cols: usize) -> Self {
        wrap(RsMatrix::zero(rows, cols))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(wrap(format::parse_matrix_file(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        format::render_matrix_file(&self.inner)
    }

    /// Entries as rational strings, row by row.
    fn entries(&self) -> Vec<Vec<String>> {
        (0..self.inner.rows())
            .map(|r| {
                (0..self.inner.cols())
                    .map(|c| render_rational(self.inner.at(r, c)))
                    .collect()
            })
            .collect()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    fn __add__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(wrap(self.inner.add(&other.inner).map_err(mat_err)?))
    }

    fn __sub__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(wrap(self.inner.sub(&other.inner).map_err(mat_err)?))
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        Ok(wrap(self.inner.mul(&other.inner).map_err(mat_err)?))
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.entries())
    }

    fn power(&self, k: usize) -> PyResult<Self> {
        Ok(wrap(self.inner.power(k).map_err(mat_err)?))
    }

    fn transpose(&self) -> Self {
        wrap(self.inner.transpose())
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn det(&self) -> PyResult<String> {
        Ok(render_rational(&self.inner.det().map_err(mat_err)?))
    }

    /// Inverse, or None when singular.
    fn inverse(&self) -> PyResult<Option<Self>> {
        Ok(self.inner.try_inverse().map_err(mat_err)?.map(wrap))
    }

    /// Characteristic polynomial coefficients, constant term first.
    fn char_poly(&self) -> PyResult<Vec<String>> {
        let chi = self.inner.char_poly().map_err(mat_err)?;
        Ok(chi.coeffs().iter().map(render_rational).collect())
    }

    /// Nilpotency exponent, or None.
    fn nilpotency(&self) -> PyResult<Option<usize>> {
        gendrazin::is_nilpotent(&self.inner).map_err(err)
    }
}

/// The Drazin inverse with its spectral data.
#[pyclass(name = "DrazinResult")]
struct PyDrazin {
    #[pyo3(get)]
    inverse: PyMatrix,
    #[pyo3(get)]
    index: usize,
    #[pyo3(get)]
    core_projection: PyMatrix,
    #[pyo3(get)]
    spectral_complement: PyMatrix,
}

/// A class-restricted inverse plus its certifying splitting.
#[pyclass(name = "InverseCert")]
struct PyInverseCert {
    #[pyo3(get)]
    kind: String,
    #[pyo3(get)]
    inverse: PyMatrix,
    #[pyo3(get)]
    structured_part: PyMatrix,
    #[pyo3(get)]
    nilpart: PyMatrix,
    #[pyo3(get)]
    nil_exponent: usize,
}

/// A commuting structured + nilpotent splitting.
#[pyclass(name = "SplitPair")]
struct PySplitPair {
    #[pyo3(get)]
    structured_part: PyMatrix,
    #[pyo3(get)]
    nilpart: PyMatrix,
    #[pyo3(get)]
    nil_exponent: usize,
    #[pyo3(get)]
    newton_steps: usize,
}

fn split_pair(p: decomp::SplitPair) -> PySplitPair {
    PySplitPair {
        structured_part: wrap(p.structured_part),
        nilpart: wrap(p.nilpart),
        nil_exponent: p.nil_exponent,
        newton_steps: p.newton_steps,
    }
}

#[pyfunction]
fn drazin_inverse(m: &PyMatrix) -> PyResult<PyDrazin> {
    let dz = gendrazin::drazin_inverse(&m.inner).map_err(err)?;
    Ok(PyDrazin {
        inverse: wrap(dz.dinv),
        index: dz.index_k,
        core_projection: wrap(dz.core_proj),
        spectral_complement: wrap(dz.core_complement),
    })
}

#[pyfunction]
fn is_hirano_invertible(m: &PyMatrix) -> PyResult<Option<usize>> {
    gendrazin::is_hirano_invertible(&m.inner).map_err(err)
}

#[pyfunction]
fn is_strongly_drazin_invertible(m: &PyMatrix) -> PyResult<Option<usize>> {
    gendrazin::is_strongly_drazin_invertible(&m.inner).map_err(err)
}

/// Spectrum test: all eigenvalues in {0, 1, -1} over the rationals.
#[pyfunction]
fn eigencheck_hirano(m: &PyMatrix) -> PyResult<bool> {
    gendrazin::eigencheck_hirano(&m.inner).map_err(err)
}

#[pyfunction]
fn hirano_inverse(m: &PyMatrix) -> PyResult<PyInverseCert> {
    if gendrazin::is_hirano_invertible(&m.inner).map_err(err)?.is_none() {
        return Err(PyValueError::new_err("matrix is not Hirano invertible"));
    }
    let c = gendrazin::hirano_inverse(&m.inner).map_err(err)?;
    Ok(PyInverseCert {
        kind: "hirano".into(),
        inverse: wrap(c.z),
        structured_part: wrap(c.tripotent),
        nilpart: wrap(c.nilpart),
        nil_exponent: c.nil_exponent,
    })
}

#[pyfunction]
fn strongly_drazin_inverse(m: &PyMatrix) -> PyResult<PyInverseCert> {
    if gendrazin::is_strongly_drazin_invertible(&m.inner).map_err(err)?.is_none() {
        return Err(PyValueError::new_err("matrix is not strongly Drazin invertible"));
    }
    let c = gendrazin::strongly_drazin_inverse(&m.inner).map_err(err)?;
    Ok(PyInverseCert {
        kind: "strongly-drazin".into(),
        inverse: wrap(c.z),
        structured_part: wrap(c.idem),
        nilpart: wrap(c.nilpart),
        nil_exponent: c.nil_exponent,
    })
}

#[pyfunction]
fn tripotent_nilpotent(m: &PyMatrix) -> PyResult<PySplitPair> {
    Ok(split_pair(decomp::tripotent_nilpotent(&m.inner).map_err(err)?))
}

#[pyfunction]
fn idempotent_nilpotent(m: &PyMatrix) -> PyResult<PySplitPair> {
    Ok(split_pair(decomp::idempotent_nilpotent(&m.inner).map_err(err)?))
}

#[pyfunction]
fn jordan_chevalley(m: &PyMatrix) -> PyResult<PySplitPair> {
    Ok(split_pair(decomp::jordan_chevalley(&m.inner).map_err(err)?))
}

/// Transfer a Drazin inverse of BA to one of AB: A ((BA)^D)^2 B.
#[pyfunction]
fn cline_transfer(a: &PyMatrix, b: &PyMatrix, z_ba: &PyMatrix) -> PyResult<PyMatrix> {
    Ok(wrap(gendrazin::cline_transfer(&a.inner, &b.inner, &z_ba.inner).map_err(err)?))
}

#[pyfunction]
fn theorem_ids() -> Vec<String> {
    TheoremId::ALL.iter().map(|id| id.name().to_string()).collect()
}

/// Check one statement on a block instance (JSON text, same schema as the
/// CLI block files). Returns the full report as JSON text.
#[pyfunction]
#[pyo3(signature = (id, blocks_json, as_stated = false))]
fn check_theorem(id: &str, blocks_json: &str, as_stated: bool) -> PyResult<String> {
    let id = theorem(id)?;
    let inst = format::parse_block_file(id, blocks_json).map_err(err)?;
    let report = blockthm::verify_conclusion(id, &inst, profile(as_stated)).map_err(err)?;
    Ok(serde_json::to_string_pretty(&format::report_to_json(&report)).unwrap())
}

/// Seeded soundness sweep; returns the summary as JSON text.
#[pyfunction]
#[pyo3(signature = (id, trials = 100, size = 3, seed = 0, entry_bound = 3, as_stated = false))]
fn fuzz_sweep(
    id: &str,
    trials: usize,
    size: usize,
    seed: u64,
    entry_bound: i64,
    as_stated: bool,
) -> PyResult<String> {
    let id = theorem(id)?;
    let cfg = GenConfig { seed, block_size: size, entry_bound, trials };
    let s = genfuzz::sweep(id, &cfg, profile(as_stated)).map_err(err)?;
    Ok(serde_json::to_string_pretty(&format::sweep_to_json(&s, seed)).unwrap())
}

/// Drop one hypothesis and hunt for a conclusion failure; returns the probe
/// summary as JSON text.
#[pyfunction]
#[pyo3(signature = (id, drop, trials = 100, size = 3, seed = 0, entry_bound = 3, as_stated = false))]
fn necessity_probe(
    id: &str,
    drop: &str,
    trials: usize,
    size: usize,
    seed: u64,
    entry_bound: i64,
    as_stated: bool,
) -> PyResult<String> {
    let id = theorem(id)?;
    let cfg = GenConfig { seed, block_size: size, entry_bound, trials };
    let p = genfuzz::necessity_probe(id, drop, &cfg, profile(as_stated)).map_err(err)?;
    Ok(serde_json::to_string_pretty(&format::probe_to_json(&p, seed)).unwrap())
}

#[pymodule]
fn hirano_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyDrazin>()?;
    m.add_class::<PyInverseCert>()?;
    m.add_class::<PySplitPair>()?;
    m.add_function(wrap_pyfunction!(drazin_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(is_hirano_invertible, m)?)?;
    m.add_function(wrap_pyfunction!(is_strongly_drazin_invertible, m)?)?;
    m.add_function(wrap_pyfunction!(eigencheck_hirano, m)?)?;
    m.add_function(wrap_pyfunction!(hirano_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(strongly_drazin_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(tripotent_nilpotent, m)?)?;
    m.add_function(wrap_pyfunction!(idempotent_nilpotent, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_chevalley, m)?)?;
    m.add_function(wrap_pyfunction!(cline_transfer, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_ids, m)?)?;
    m.add_function(wrap_pyfunction!(check_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(necessity_probe, m)?)?;
    Ok(())
}
