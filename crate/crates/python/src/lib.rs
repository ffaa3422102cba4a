//! Python bindings for the doob-codes library.
//!
//! Exposes the Galois-ring arithmetic, check matrices with verification and
//! decoding, the construction chain, and the structure reports. Ring
//! elements cross the boundary as digit strings (lowest coefficient first),
//! vertices in their text form `z4pairs|z2pairs|z4coords`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

use doob_codes::analysis::{quasi_cyclic_permutation, weight3_last_part, DecoderTable};
use doob_codes::construct;
use doob_codes::format;
use doob_codes::galois::{RingContext, RingElement};
use doob_codes::matrix::CheckMatrix;
use doob_codes::space::Vertex;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_element(text: &str) -> PyResult<RingElement> {
    RingElement::parse(text).map_err(value_error)
}

/// The Galois ring GR(4^delta) behind the constructions.
#[pyclass(module = "doobpc_py")]
struct Ring {
    ctx: RingContext,
}

#[pymethods]
impl Ring {
    /// Ring(delta, modulus=None): modulus digits low-first; presets exist
    /// for delta in {3, 5, 7}.
    #[new]
    #[pyo3(signature = (delta, modulus = None))]
    fn new(delta: usize, modulus: Option<Vec<u8>>) -> PyResult<Ring> {
        let ctx = match modulus {
            Some(m) => RingContext::new(delta, &m),
            None => RingContext::preset(delta),
        }
        .map_err(value_error)?;
        Ok(Ring { ctx })
    }

    #[getter]
    fn delta(&self) -> usize {
        self.ctx.delta()
    }

    #[getter]
    fn unit_count(&self) -> usize {
        self.ctx.unit_count()
    }

    /// The primitive element xi as a digit string.
    #[getter]
    fn xi(&self) -> String {
        self.ctx.xi().to_string()
    }

    fn xi_pow(&self, e: u64) -> String {
        self.ctx.xi_pow(e).to_string()
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.ctx.mul(&parse_element(a)?, &parse_element(b)?).to_string())
    }

    fn power(&self, a: &str, e: u64) -> PyResult<String> {
        Ok(self.ctx.power(&parse_element(a)?, e).to_string())
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(parse_element(a)?.add(&parse_element(b)?).to_string())
    }

    fn frobenius(&self, a: &str) -> PyResult<String> {
        Ok(self.ctx.frobenius(&parse_element(a)?).to_string())
    }

    fn teichmuller_component(&self, a: &str) -> PyResult<String> {
        Ok(self.ctx.teichmuller_component(&parse_element(a)?).to_string())
    }

    fn is_unit(&self, a: &str) -> PyResult<bool> {
        Ok(parse_element(a)?.is_unit())
    }

    fn __repr__(&self) -> String {
        format!("Ring(delta={})", self.ctx.delta())
    }
}

/// A check matrix over Z4 whose kernel is an additive code in a Doob graph.
#[pyclass(module = "doobpc_py")]
struct Matrix {
    inner: CheckMatrix,
}

impl Matrix {
    fn decoder(&self) -> PyResult<DecoderTable> {
        DecoderTable::new(&self.inner).map_err(value_error)
    }
}

#[pymethods]
impl Matrix {
    /// Named matrices: d814, d707-qc, d707-alt, d155-qc, d2667-qc.
    #[classmethod]
    fn preset(_cls: &Bound<'_, PyType>, name: &str) -> PyResult<Matrix> {
        let inner = match name {
            "d814" => construct::base_d814(),
            "d707-qc" => construct::quasi_cyclic(3).map_err(value_error)?,
            "d707-alt" => construct::alt_d707(),
            "d155-qc" => construct::quasi_cyclic(5).map_err(value_error)?,
            "d2667-qc" => construct::quasi_cyclic(7).map_err(value_error)?,
            other => return Err(value_error(format!("unknown preset '{other}'"))),
        };
        Ok(Matrix { inner })
    }

    /// Build the admissible (gamma, delta, npp) matrix through the
    /// construction chain and verify it.
    #[classmethod]
    fn construct(_cls: &Bound<'_, PyType>, gamma: u32, delta: u32, npp: u64) -> PyResult<Matrix> {
        let inner = construct::build_admissible(gamma, delta, npp).map_err(value_error)?;
        if !inner.verify_perfect().is_perfect {
            return Err(value_error("constructed matrix failed verification"));
        }
        Ok(Matrix { inner })
    }

    #[classmethod]
    fn from_text(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Matrix> {
        Ok(Matrix { inner: format::parse_matrix(text).map_err(value_error)? })
    }

    #[classmethod]
    fn from_file(_cls: &Bound<'_, PyType>, path: &str) -> PyResult<Matrix> {
        let text = std::fs::read_to_string(path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        Ok(Matrix { inner: format::parse_matrix(&text).map_err(value_error)? })
    }

    fn to_text(&self) -> String {
        format::write_matrix(&self.inner)
    }

    fn to_file(&self, path: &str) -> PyResult<()> {
        std::fs::write(path, format::write_matrix(&self.inner))
            .map_err(|e| PyOSError::new_err(e.to_string()))
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    /// Shape as the tuple (m, nprime, npp).
    #[getter]
    fn shape(&self) -> (usize, usize, usize) {
        let s = self.inner.shape();
        (s.m, s.nprime, s.npp)
    }

    /// Full verification verdict and counters as a dict.
    fn verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = self.inner.verify_perfect();
        let dict = pyo3::types::PyDict::new(py);
        dict.set_item("perfect", report.is_perfect)?;
        dict.set_item("rows", report.rows)?;
        dict.set_item("weight1", report.weight1_count)?;
        dict.set_item("subgroup", report.subgroup_size)?;
        dict.set_item("zero_columns", report.zero_columns.clone())?;
        dict.set_item("duplicate_syndromes", report.duplicate_syndromes.len())?;
        dict.set_item(
            "zero_syndrome_errors",
            report.zero_syndrome_patterns.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        )?;
        Ok(dict.unbind().into_any())
    }

    fn is_perfect(&self) -> bool {
        self.inner.verify_perfect().is_perfect
    }

    /// Syndrome of a word in vertex text form, as a digit string.
    fn syndrome(&self, word: &str) -> PyResult<String> {
        let v = Vertex::parse_for_shape(word, self.inner.shape()).map_err(value_error)?;
        Ok(self.inner.syndrome(&v).to_string())
    }

    /// Nearest codeword to the given word, in vertex text form.
    fn decode(&self, word: &str) -> PyResult<String> {
        let v = Vertex::parse_for_shape(word, self.inner.shape()).map_err(value_error)?;
        Ok(self.decoder()?.decode(&v).to_string())
    }

    /// Number of codewords as a Python int.
    fn cardinality(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        // BigUint -> arbitrary-precision Python int via its decimal string.
        let s = self.inner.code_cardinality().to_string();
        let obj = py.import("builtins")?.getattr("int")?.call1((s,))?;
        Ok(obj.unbind())
    }

    /// (order2, order4) counts of weight-3 codewords on the last part.
    fn weight3(&self) -> (u64, u64) {
        let counts = weight3_last_part(&self.inner);
        (counts.order2, counts.order4)
    }

    /// Column cycles under multiplication by xi, or ValueError when the
    /// matrix is not quasi-cyclic.
    fn cyclic_cycles(&self) -> PyResult<Vec<Vec<usize>>> {
        let ring = RingContext::preset(self.inner.rows()).map_err(value_error)?;
        quasi_cyclic_permutation(&self.inner, &ring).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Matrix(rows={}, {})", self.inner.rows(), self.inner.shape())
    }
}

/// Admissible (m, nprime, npp) triples for the given gamma and delta,
/// ascending in m.
#[pyfunction]
fn admissible_params(gamma: u32, delta: u32) -> Vec<(u64, u64, u64)> {
    construct::admissible_params(gamma, delta)
        .into_iter()
        .map(|p| (p.m, p.nprime, p.npp))
        .collect()
}

/// Cyclotomic cosets of 2 modulo n, ordered by smallest member.
#[pyfunction]
fn cyclotomic_cosets(n: u64) -> PyResult<Vec<Vec<u64>>> {
    construct::cyclotomic_cosets(n).map_err(value_error)
}

#[pymodule]
fn doobpc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Matrix>()?;
    m.add_function(wrap_pyfunction!(admissible_params, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_cosets, m)?)?;
    Ok(())
}
