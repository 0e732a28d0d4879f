//! Python bindings: `import tldp`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use toric_cascade::cascade::{brauer_family as family, run_cascade};
use toric_cascade::classify::{classify as classify_rs, literal_step4_verdict, recognize_wps};
use toric_cascade::enumerate::{
    audit as audit_rs, enumerate_records, EnumerationConfig, SurfaceRecord,
};
use toric_cascade::fan::{canonical_form, realize, resolve};
use toric_cascade::invariants::{brauer_group as brauer_rs, surface_invariants};
use toric_cascade::lattice::{self, parse_singularities, HJChain, SingularityType};
use toric_cascade::{Error, FanoTriangle, WeightedCycle};

create_exception!(tldp, TldpError, PyValueError);

fn err(e: Error) -> PyErr {
    TldpError::new_err(e.to_string())
}

/// Round-trips a serializable value through JSON into plain Python objects.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| TldpError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(
    name = "FanoTriangle",
    module = "tldp",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFanoTriangle(FanoTriangle);

#[pymethods]
impl PyFanoTriangle {
    #[new]
    fn new(vertices: [[i64; 2]; 3]) -> PyResult<Self> {
        FanoTriangle::from_coords(vertices)
            .map(PyFanoTriangle)
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyFanoTriangle).map_err(err)
    }

    /// Vertices in counterclockwise order.
    #[getter]
    fn vertices(&self) -> [[i64; 2]; 3] {
        self.0.coords()
    }

    fn canonical(&self) -> PyResult<Self> {
        canonical_form(&self.0).map(PyFanoTriangle).map_err(err)
    }

    fn cycle(&self) -> PyResult<PyWeightedCycle> {
        Ok(PyWeightedCycle(resolve(&self.0).map_err(err)?.cycle()))
    }

    fn rays(&self) -> PyResult<Vec<[i64; 2]>> {
        Ok(resolve(&self.0)
            .map_err(err)?
            .rays
            .iter()
            .map(|r| [r.x, r.y])
            .collect())
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &surface_invariants(&self.0).map_err(err)?)
    }

    fn cascade<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cycle = resolve(&self.0).map_err(err)?.cycle();
        to_py(py, &run_cascade(&cycle).map_err(err)?)
    }

    /// `((a, b, c), quotient_order)` with `a v1 + b v2 + c v3 = 0`.
    fn wps(&self) -> PyResult<([i64; 3], i64)> {
        let name = recognize_wps(&self.0).map_err(err)?;
        Ok((name.weights, name.quotient_order))
    }

    fn brauer_order(&self) -> PyResult<i64> {
        brauer_rs(&self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("FanoTriangle({})", self.0)
    }
}

#[pyclass(
    name = "WeightedCycle",
    module = "tldp",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWeightedCycle(WeightedCycle);

#[pymethods]
impl PyWeightedCycle {
    #[new]
    fn new(weights: Vec<i64>) -> PyResult<Self> {
        WeightedCycle::new(weights)
            .map(PyWeightedCycle)
            .map_err(err)
    }

    #[getter]
    fn weights(&self) -> Vec<i64> {
        self.0.weights().to_vec()
    }

    fn canonical(&self) -> Self {
        PyWeightedCycle(self.0.canonical())
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn trace(&self) -> i64 {
        self.0.trace()
    }

    /// Canonical resolution chains of the singular points.
    fn singular_chains(&self) -> Vec<Vec<i64>> {
        self.0
            .singular_chains()
            .iter()
            .map(|s| s.chain().entries().to_vec())
            .collect()
    }

    fn realize(&self) -> PyResult<PyFanoTriangle> {
        let fan = realize(&self.0).map_err(err)?;
        fan.triangle().map(PyFanoTriangle).map_err(err)
    }

    fn cascade<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &run_cascade(&self.0).map_err(err)?)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("WeightedCycle({})", self.0)
    }
}

fn rational_str(r: lattice::Rational) -> String {
    r.to_string()
}

/// Value of `[n_1, ..., n_l]` as a `"p/q"` string.
#[pyfunction]
fn hj_eval(chain: Vec<i64>) -> PyResult<String> {
    lattice::hj_eval(&chain).map(rational_str).map_err(err)
}

#[pyfunction]
fn hj_expand(r: i64, a: i64) -> PyResult<Vec<i64>> {
    Ok(lattice::hj_expand(r, a).map_err(err)?.entries().to_vec())
}

#[pyfunction]
fn zero_complement(chain: Vec<i64>) -> PyResult<Vec<i64>> {
    let chain = HJChain::new(chain).map_err(err)?;
    Ok(lattice::zero_complement(&chain)
        .map_err(err)?
        .entries()
        .to_vec())
}

/// Accepts `"3/2,2/1"`-style text or a list of chains.
fn singularities(input: &Bound<'_, PyAny>) -> PyResult<Vec<SingularityType>> {
    if let Ok(text) = input.extract::<String>() {
        return parse_singularities(&text).map_err(err);
    }
    let chains: Vec<Vec<i64>> = input.extract()?;
    chains
        .into_iter()
        .map(|c| SingularityType::new(HJChain::new(c)?))
        .collect::<Result<_, _>>()
        .map_err(err)
}

#[derive(Serialize)]
struct ClassifyOut {
    exists: bool,
    literal_step4: Option<bool>,
    solutions: Vec<SolutionOut>,
}

#[derive(Serialize)]
struct SolutionOut {
    triangle: FanoTriangle,
    cycle: WeightedCycle,
    basic: toric_cascade::cascade::BasicType,
    name: Option<String>,
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, sing: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let input = singularities(sing)?;
    let result = classify_rs(&input).map_err(err)?;
    let out = ClassifyOut {
        exists: result.exists(),
        literal_step4: literal_step4_verdict(&input),
        solutions: result
            .solutions()
            .iter()
            .map(|s| SolutionOut {
                triangle: s.triangle,
                cycle: s.cycle.clone(),
                basic: s.basic,
                name: s.name.map(|n| n.to_string()),
            })
            .collect(),
    };
    to_py(py, &out)
}

/// `(cycle, triangle, brauer_order)` for member `n` of the Brauer family.
#[pyfunction]
fn brauer_family(n: usize) -> PyResult<(PyWeightedCycle, PyFanoTriangle, i64)> {
    let (cycle, t) = family(n).map_err(err)?;
    let order = brauer_rs(&t).map_err(err)?;
    Ok((PyWeightedCycle(cycle), PyFanoTriangle(t), order))
}

fn records(box_bound: i64, index_max: Option<i64>) -> PyResult<Vec<SurfaceRecord>> {
    let cfg = EnumerationConfig {
        box_bound,
        index_max,
        jobs: None,
    };
    enumerate_records(&cfg).map_err(err)
}

/// Full records of every class with vertices in `[-box_bound, box_bound]^2`.
#[pyfunction]
#[pyo3(signature = (box_bound, index_max=None))]
fn enumerate<'py>(
    py: Python<'py>,
    box_bound: i64,
    index_max: Option<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let rs = py.detach(|| records(box_bound, index_max))?;
    to_py(py, &rs)
}

/// Enumerates and audits in one go; returns the audit report.
#[pyfunction]
fn audit<'py>(py: Python<'py>, box_bound: i64) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| records(box_bound, None).map(|rs| audit_rs(&rs, Some(box_bound))))?;
    to_py(py, &report)
}

#[pymodule]
fn tldp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TldpError", m.py().get_type::<TldpError>())?;
    m.add_class::<PyFanoTriangle>()?;
    m.add_class::<PyWeightedCycle>()?;
    m.add_function(wrap_pyfunction!(hj_eval, m)?)?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(zero_complement, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(brauer_family, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    Ok(())
}
