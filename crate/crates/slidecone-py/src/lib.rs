//! Python bindings for the slidecone toolkit.
//!
//! Structured results are returned as plain Python objects (dicts, lists,
//! floats) built from their JSON form. Angles are in radians here, unlike
//! the command line. Toolkit errors raise `ValueError`, except I/O failures
//! which raise `OSError`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use slidecone::calibration::{calibration_for, verify_certificate};
use slidecone::cones::{build_mesh, ConeSpec, Window};
use slidecone::energy::{j_alpha_exact, j_alpha_mesh};
use slidecone::evolver::mesh::{Tag, TaggedMesh};
use slidecone::evolver::{evolve as evolve_mesh, pinch, EvolveConfig, PinchPreset, PinchRecipe};
use slidecone::onedim::{self, Branch1D};
use slidecone::{competitor, geom, spherical, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(m) => PyOSError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn cone_spec(family: &str, beta: f64, n: usize) -> PyResult<ConeSpec> {
    let spec = match family {
        "t-plus" => ConeSpec::TPlus,
        "y-beta" => ConeSpec::YBeta { beta },
        "ybar-beta" => ConeSpec::YbarBeta { beta },
        "w-beta" => ConeSpec::WBeta { beta },
        "delta-plus" => ConeSpec::DeltaPlus { n },
        "c-plus" => ConeSpec::CPlus,
        other => return Err(PyValueError::new_err(format!("unknown cone family `{other}`"))),
    };
    spec.validate().map_err(err)?;
    Ok(spec)
}

fn window(name: &str, radius: f64) -> PyResult<Window> {
    match name {
        "simplex" => Ok(Window::Simplex),
        "prism" => Ok(Window::Prism),
        "ball" => Ok(Window::Ball(radius)),
        other => Err(PyValueError::new_err(format!("unknown window `{other}`"))),
    }
}

fn preset(name: &str) -> PyResult<PinchPreset> {
    PinchPreset::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown preset `{name}`")))
}

/// Triangle mesh with per-vertex tags "F" (free), "G" (on Γ), "P" (pinned).
#[pyclass(name = "Mesh", from_py_object)]
#[derive(Clone)]
struct PyMesh {
    inner: TaggedMesh,
}

#[pymethods]
impl PyMesh {
    #[new]
    fn new(vertices: Vec<[f64; 3]>, tags: Vec<String>, triangles: Vec<[usize; 3]>) -> PyResult<Self> {
        let tags = tags
            .iter()
            .map(|t| Tag::from_letter(t).ok_or_else(|| PyValueError::new_err(format!("bad tag `{t}`"))))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: TaggedMesh::new(vertices, tags, triangles).map_err(err)? })
    }

    /// Parse the TMESH text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self { inner: TaggedMesh::from_text(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn vertices(&self) -> Vec<[f64; 3]> {
        self.inner.vertices.clone()
    }

    #[getter]
    fn tags(&self) -> Vec<String> {
        self.inner.tags.iter().map(|t| t.letter().to_string()).collect()
    }

    #[getter]
    fn triangles(&self) -> Vec<[usize; 3]> {
        self.inner.triangles.clone()
    }

    /// Energy report {off_gamma, on_gamma, alpha, j_alpha}.
    fn energy(&self, py: Python<'_>, alpha: f64) -> PyResult<Py<PyAny>> {
        to_py(py, &j_alpha_mesh(&self.inner, alpha).map_err(err)?)
    }

    fn __len__(&self) -> usize {
        self.inner.num_triangles()
    }

    fn __repr__(&self) -> String {
        format!("Mesh(vertices={}, triangles={})", self.inner.num_vertices(), self.inner.num_triangles())
    }
}

/// Vertices of the canonical regular simplex in ℝⁿ.
#[pyfunction]
fn simplex_vertices(n: usize) -> PyResult<Vec<Vec<f64>>> {
    let s = geom::simplex_vertices(n).map_err(err)?;
    Ok(s.vertices.into_iter().map(|v| v.coords).collect())
}

/// Edge length √(2(n+1)/n) of the canonical simplex.
#[pyfunction]
fn edge_length(n: usize) -> PyResult<f64> {
    geom::edge_length(n).map_err(err)
}

/// Critical contact angle θ_α = arccos α.
#[pyfunction]
fn theta_alpha(alpha: f64) -> PyResult<f64> {
    onedim::theta_alpha(alpha).map_err(err)
}

/// Optimal foot displacement of a tilted half-line.
#[pyfunction]
fn optimal_contact(theta: f64, alpha: f64) -> PyResult<f64> {
    onedim::optimal_contact(theta, alpha).map_err(err)
}

/// Classify a one-dimensional cone given as (angle, in_gamma) pairs.
#[pyfunction]
fn is_minimal_1d(py: Python<'_>, branches: Vec<(f64, bool)>, alpha: f64) -> PyResult<Py<PyAny>> {
    let bs = branches.into_iter().map(|(a, g)| Branch1D::new(a, g)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    to_py(py, &onedim::is_minimal_1d(&bs, alpha).map_err(err)?)
}

/// Exact window energy of a cone family.
#[pyfunction]
#[pyo3(signature = (family, alpha, window_name = "simplex", beta = 0.0, n = 3, radius = 1.0))]
fn energy_exact(py: Python<'_>, family: &str, alpha: f64, window_name: &str, beta: f64, n: usize, radius: f64) -> PyResult<Py<PyAny>> {
    let spec = cone_spec(family, beta, n)?;
    to_py(py, &j_alpha_exact(&spec, window(window_name, radius)?, alpha).map_err(err)?)
}

/// Window mesh of a cone family.
#[pyfunction]
#[pyo3(signature = (family, window_name = "simplex", resolution = 8, beta = 0.0, n = 3, radius = 1.0))]
fn cone_mesh(family: &str, window_name: &str, resolution: usize, beta: f64, n: usize, radius: f64) -> PyResult<PyMesh> {
    let spec = cone_spec(family, beta, n)?;
    Ok(PyMesh { inner: build_mesh(&spec, window(window_name, radius)?, resolution).map_err(err)? })
}

/// Build and verify the paired-calibration certificate of a cone.
#[pyfunction]
#[pyo3(signature = (family, alpha = None, beta = 0.0, n = 3))]
fn calibrate(py: Python<'_>, family: &str, alpha: Option<f64>, beta: f64, n: usize) -> PyResult<Py<PyAny>> {
    let fam = calibration_for(&cone_spec(family, beta, n)?).map_err(err)?;
    let a = alpha.unwrap_or(fam.alpha_required);
    to_py(py, &verify_certificate(&fam, a).map_err(err)?)
}

/// x₀ of a push-down competitor beating the half tetrahedral cone, if any.
#[pyfunction]
fn find_beating_competitor(alpha: f64) -> PyResult<Option<f64>> {
    competitor::find_beating_competitor(alpha).map_err(err)
}

/// Closed-form energy difference (competitor − cone) at x₀.
#[pyfunction]
fn energy_gap(x0: f64, alpha: f64) -> PyResult<f64> {
    competitor::energy_gap(x0, alpha).map_err(err)
}

/// Quadrature energy of the competitor at x₀.
#[pyfunction]
fn competitor_energy(py: Python<'_>, x0: f64, alpha: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &competitor::competitor_energy(x0, alpha).map_err(err)?)
}

/// Side of the spherical triangle network, arccos(−1/3).
#[pyfunction]
fn triangle_side() -> f64 {
    spherical::triangle_side()
}

/// Opposite side of the rectangle network.
#[pyfunction]
fn rect_side(a: f64) -> PyResult<f64> {
    spherical::rect_side(a).map_err(err)
}

/// Side of the pentagon network adjacent to neither given side.
#[pyfunction]
fn pentagon_side(a: f64, b: f64) -> PyResult<f64> {
    spherical::pentagon_side(a, b).map_err(err)
}

/// The symmetric single-pentagon network.
#[pyfunction]
fn pentagon_family(py: Python<'_>, beta: f64, gamma: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &spherical::pentagon_family(beta, gamma).map_err(err)?)
}

/// Cone mesh of a competitor preset.
#[pyfunction]
#[pyo3(signature = (name, param = None, resolution = 3))]
fn preset_cone(name: &str, param: Option<f64>, resolution: usize) -> PyResult<PyMesh> {
    let p = preset(name)?;
    Ok(PyMesh { inner: p.cone_mesh(param.unwrap_or(p.default_param()), resolution).map_err(err)? })
}

/// The α singled out by a tilted preset family, if any.
#[pyfunction]
#[pyo3(signature = (name, param = None))]
fn preset_alpha(name: &str, param: Option<f64>) -> PyResult<Option<f64>> {
    let p = preset(name)?;
    Ok(p.family_alpha(param.unwrap_or(p.default_param())))
}

/// Replace a preset cone mesh by its pinched competitor.
#[pyfunction(name = "pinch")]
#[pyo3(signature = (mesh, name, param = None, size = None, resolution = 3))]
fn pinch_mesh(mesh: &PyMesh, name: &str, param: Option<f64>, size: Option<f64>, resolution: usize) -> PyResult<PyMesh> {
    let p = preset(name)?;
    let recipe = PinchRecipe::Preset {
        preset: p,
        param: param.unwrap_or(p.default_param()),
        size: size.unwrap_or(p.default_size()),
        resolution,
    };
    Ok(PyMesh { inner: pinch(&mesh.inner, &recipe).map_err(err)? })
}

/// Projected gradient descent; returns (final mesh, list of j_alpha values).
#[pyfunction]
#[pyo3(signature = (mesh, alpha, steps = 500, step_size = 0.05))]
fn evolve(mesh: &PyMesh, alpha: f64, steps: usize, step_size: f64) -> PyResult<(PyMesh, Vec<f64>)> {
    let config = EvolveConfig { alpha, step_size, max_steps: steps, ..Default::default() };
    let (m, trace) = evolve_mesh(&mesh.inner, &config).map_err(err)?;
    Ok((PyMesh { inner: m }, trace.iter().map(|r| r.report.j_alpha).collect()))
}

#[pymodule]
#[pyo3(name = "slidecone")]
fn slidecone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMesh>()?;
    m.add_function(wrap_pyfunction!(simplex_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(edge_length, m)?)?;
    m.add_function(wrap_pyfunction!(theta_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_contact, m)?)?;
    m.add_function(wrap_pyfunction!(is_minimal_1d, m)?)?;
    m.add_function(wrap_pyfunction!(energy_exact, m)?)?;
    m.add_function(wrap_pyfunction!(cone_mesh, m)?)?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    m.add_function(wrap_pyfunction!(find_beating_competitor, m)?)?;
    m.add_function(wrap_pyfunction!(energy_gap, m)?)?;
    m.add_function(wrap_pyfunction!(competitor_energy, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_side, m)?)?;
    m.add_function(wrap_pyfunction!(rect_side, m)?)?;
    m.add_function(wrap_pyfunction!(pentagon_side, m)?)?;
    m.add_function(wrap_pyfunction!(pentagon_family, m)?)?;
    m.add_function(wrap_pyfunction!(preset_cone, m)?)?;
    m.add_function(wrap_pyfunction!(preset_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(pinch_mesh, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    Ok(())
}
