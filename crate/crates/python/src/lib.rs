//! Python bindings for the unicusp core: the graph calculus, erasability
//! search, multiplicity arithmetic, pencil resolution and the exact linear
//! systems, with JSON documents for the structured inputs.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use unicusp::cusp::{
    block_decompose, section_obstruction, verify_euclid_identities, CuspProfile,
    MultiplicitySequence, ObstructionConfig,
};
use unicusp::jsonio::{graph_from_json, pair_from_json};
use unicusp::linsys::curve::CurveDoc;
use unicusp::linsys::{map_degree_probe, ProbeConfig};
use unicusp::pair::SearchConfig;
use unicusp::{catalog, cusp, pencil, verify};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any().unbind()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, value_to_py(py, val)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(err)?;
    value_to_py(py, &v)
}

/// S(a, b): the multiplicity block of the Euclidean algorithm.
#[pyfunction]
fn euclid_sequence(a: u64, b: u64) -> PyResult<Vec<u64>> {
    Ok(cusp::euclid_sequence(a, b).map_err(err)?.entries().to_vec())
}

/// Sum and square-sum identities of S(a, b).
#[pyfunction]
fn euclid_identities(py: Python<'_>, a: u64, b: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_euclid_identities(a, b).map_err(err)?)
}

#[pyfunction]
fn nu_tilde(degree: u64, multiplicities: Vec<u64>) -> PyResult<i64> {
    Ok(CuspProfile::new(degree, multiplicities).map_err(err)?.nu_tilde())
}

#[pyfunction]
fn nu_emb(degree: u64, multiplicities: Vec<u64>) -> PyResult<i64> {
    Ok(CuspProfile::new(degree, multiplicities).map_err(err)?.nu_emb())
}

#[pyfunction]
fn genus_zero_check(degree: u64, multiplicities: Vec<u64>) -> PyResult<bool> {
    Ok(CuspProfile::new(degree, multiplicities)
        .map_err(err)?
        .genus_zero_check())
}

/// Staircase decomposition {blocks, tail_value, tail_count}.
#[pyfunction]
fn staircase_blocks(py: Python<'_>, seq: Vec<u64>) -> PyResult<Py<PyAny>> {
    let ms = MultiplicitySequence::new(seq).map_err(err)?;
    to_py(py, &block_decompose(&ms).map_err(err)?)
}

/// Greedy proximity targets (0-based) of the sequence extended to the
/// given length.
#[pyfunction]
fn proximity_targets(seq: Vec<u64>, extend_to: usize) -> PyResult<Vec<Vec<usize>>> {
    let ms = MultiplicitySequence::new(seq).map_err(err)?;
    Ok(cusp::proximity_matrix(&ms, extend_to).map_err(err)?.targets)
}

/// Full resolution report for a profile; raises on invalid profiles.
#[pyfunction]
fn resolve_pencil(py: Python<'_>, degree: u64, multiplicities: Vec<u64>) -> PyResult<Py<PyAny>> {
    let profile = CuspProfile::new(degree, multiplicities).map_err(err)?;
    let (value, _ok) = pencil::resolve_report(&profile).map_err(err)?;
    value_to_py(py, &value)
}

/// Dicritical indices and degrees of the resolved pencil.
#[pyfunction]
fn dicriticals(py: Python<'_>, degree: u64, multiplicities: Vec<u64>) -> PyResult<Py<PyAny>> {
    let profile = CuspProfile::new(degree, multiplicities).map_err(err)?;
    let plan = pencil::plan(&profile).map_err(err)?;
    to_py(py, &pencil::dicriticals(&plan).map_err(err)?)
}

/// Exact lattice invariants of a graph document.
#[pyfunction]
fn graph_invariants(py: Python<'_>, graph_json: &str) -> PyResult<Py<PyAny>> {
    let g = graph_from_json(graph_json).map_err(err)?;
    to_py(py, &g.lattice_invariants())
}

/// Three-valued equivalence with the empty graph.
#[pyfunction]
#[pyo3(signature = (graph_json, depth = 2))]
fn graph_equiv_empty(py: Python<'_>, graph_json: &str, depth: usize) -> PyResult<Py<PyAny>> {
    let g = graph_from_json(graph_json).map_err(err)?;
    to_py(py, &unicusp::equiv_empty(&g, depth))
}

/// Bounded erasability of a pair given as JSON or chain shorthand like
/// "[-3,-1*,-1,-2]".
#[pyfunction]
#[pyo3(signature = (pair, depth = 6))]
fn pair_erasability(py: Python<'_>, pair: &str, depth: usize) -> PyResult<Py<PyAny>> {
    let p = if pair.trim_start().starts_with('{') {
        pair_from_json(pair).map_err(err)?
    } else {
        unicusp::pair::WeightedPair::parse_chain(pair).map_err(err)?
    };
    let out = unicusp::erasability(&p, SearchConfig::with_depth(depth));
    to_py(py, &out)
}

/// Members of the semigroup window [0, d^2] of a curve document.
#[pyfunction]
fn semigroup_window(curve_json: &str) -> PyResult<Vec<usize>> {
    let curve = CurveDoc::parse(curve_json).map_err(err)?.build().map_err(err)?;
    Ok(curve.semigroup_window().map_err(err)?.members)
}

/// dim X_{ell, j} of a curve document.
#[pyfunction]
fn system_dimension(curve_json: &str, form_degree: u32, contact: usize) -> PyResult<usize> {
    let curve = CurveDoc::parse(curve_json).map_err(err)?.build().map_err(err)?;
    curve.system_dimension(form_degree, contact).map_err(err)
}

/// Minimal and embedded multiplicity sequences from the parametrization.
#[pyfunction]
fn curve_multiplicities(py: Python<'_>, curve_json: &str) -> PyResult<Py<PyAny>> {
    let curve = CurveDoc::parse(curve_json).map_err(err)?.build().map_err(err)?;
    to_py(py, &curve.multiplicities().map_err(err)?)
}

/// Generic-fiber probe of the net attached to the curve.
#[pyfunction]
#[pyo3(signature = (curve_json, trials = 10, seed = 1))]
fn net_map_degree(py: Python<'_>, curve_json: &str, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let curve = CurveDoc::parse(curve_json).map_err(err)?.build().map_err(err)?;
    let (f, g, h) = curve.net_basis().map_err(err)?;
    let rep = map_degree_probe(
        &[f, g, h],
        ProbeConfig {
            trials,
            seed,
            max_degree: 5,
        },
    )
    .map_err(err)?;
    to_py(py, &rep)
}

/// Degree-d solutions of the two equations with their obstruction findings.
#[pyfunction]
#[pyo3(signature = (degree, enforce_r1_bound = true))]
fn obstruction_report(py: Python<'_>, degree: u64, enforce_r1_bound: bool) -> PyResult<Py<PyAny>> {
    let report = section_obstruction(
        degree,
        ObstructionConfig {
            enforce_r1_bound,
            ..Default::default()
        },
    )
    .map_err(err)?;
    to_py(py, &report)
}

/// The built-in curve fixtures as dictionaries.
#[pyfunction]
fn catalog_entries(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let entries = catalog::load().map_err(err)?;
    let list = PyList::empty(py);
    for e in entries {
        let d = PyDict::new(py);
        d.set_item("name", &e.name)?;
        d.set_item("degree", e.degree)?;
        d.set_item("summary", &e.summary)?;
        d.set_item("minseq", &e.minseq)?;
        d.set_item("nu_tilde", e.nu_tilde)?;
        d.set_item("nu_emb", e.nu_emb)?;
        list.append(d)?;
    }
    Ok(list.into_any().unbind())
}

/// Run the full acceptance battery; returns one record per criterion.
#[pyfunction]
#[pyo3(signature = (seed = 0x5EED))]
fn verify_all(py: Python<'_>, seed: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &verify::run_all(seed))
}

#[pymodule]
fn pyunicusp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(euclid_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(euclid_identities, m)?)?;
    m.add_function(wrap_pyfunction!(nu_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(nu_emb, m)?)?;
    m.add_function(wrap_pyfunction!(genus_zero_check, m)?)?;
    m.add_function(wrap_pyfunction!(staircase_blocks, m)?)?;
    m.add_function(wrap_pyfunction!(proximity_targets, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_pencil, m)?)?;
    m.add_function(wrap_pyfunction!(dicriticals, m)?)?;
    m.add_function(wrap_pyfunction!(graph_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(graph_equiv_empty, m)?)?;
    m.add_function(wrap_pyfunction!(pair_erasability, m)?)?;
    m.add_function(wrap_pyfunction!(semigroup_window, m)?)?;
    m.add_function(wrap_pyfunction!(system_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(curve_multiplicities, m)?)?;
    m.add_function(wrap_pyfunction!(net_map_degree, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction_report, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entries, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
