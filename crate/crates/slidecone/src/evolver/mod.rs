//! Projected gradient descent of J_α on tagged triangle meshes.
//!
//! Pinned vertices never move, ON_GAMMA vertices slide inside Γ and free
//! vertices stay in the closed upper half-space. Topology is fixed during
//! descent; topology changes happen only through [`pinch`].

pub mod mesh;
pub mod pinch;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::energy::{j_alpha_mesh, EnergyReport};
use crate::error::{check_alpha, Error, Result};
use crate::geom::v3::{self, V3};
use mesh::{Tag, TaggedMesh, MIN_TRIANGLE_AREA};

pub use pinch::{pinch, PinchPreset, PinchRecipe};

/// Parameters of [`evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub alpha: f64,
    /// Initial step length multiplying the gradient.
    pub step_size: f64,
    pub max_steps: usize,
    /// Stop once the largest projected gradient row is below this value.
    pub grad_tol: f64,
    /// Apply tangential averaging every this many steps (0 disables it).
    pub averaging_every: usize,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self { alpha: 1.0, step_size: 0.05, max_steps: 500, grad_tol: 1e-8, averaging_every: 20 }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::Configuration(format!("step size {} must be positive", self.step_size)));
        }
        if !(self.grad_tol >= 0.0) {
            return Err(Error::Configuration("gradient tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// One accepted step of a descent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: usize,
    pub report: EnergyReport,
    pub step_size: f64,
}

/// Render a trace as CSV `step,off_gamma,on_gamma,j_alpha,step_size`.
pub fn trace_csv(trace: &[TraceRow]) -> String {
    let mut s = String::from("step,off_gamma,on_gamma,j_alpha,step_size\n");
    for r in trace {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.step,
            mesh::fmt17(r.report.off_gamma),
            mesh::fmt17(r.report.on_gamma),
            mesh::fmt17(r.report.j_alpha),
            mesh::fmt17(r.step_size)
        );
    }
    s
}

/// Exact gradient of the discrete J_α before applying constraints.
pub fn raw_energy_gradient(mesh: &TaggedMesh, alpha: f64) -> Result<Vec<V3>> {
    check_alpha(alpha)?;
    let mut g = vec![[0.0; 3]; mesh.num_vertices()];
    for k in 0..mesh.num_triangles() {
        let [a, b, c] = mesh.corners(k);
        let nrm = v3::cross(v3::sub(b, a), v3::sub(c, a));
        let len = v3::norm(nrm);
        if !(0.5 * len > MIN_TRIANGLE_AREA) {
            return Err(Error::DegenerateTriangle { index: k, area: 0.5 * len });
        }
        let w = if mesh.triangle_on_gamma(k) { alpha } else { 1.0 };
        let n = v3::scale(nrm, 0.5 * w / len);
        let t = mesh.triangles[k];
        g[t[0]] = v3::add(g[t[0]], v3::cross(n, v3::sub(c, b)));
        g[t[1]] = v3::add(g[t[1]], v3::cross(n, v3::sub(a, c)));
        g[t[2]] = v3::add(g[t[2]], v3::cross(n, v3::sub(b, a)));
    }
    Ok(g)
}

/// Gradient of J_α with pinned rows zeroed and Γ rows projected into Γ.
pub fn energy_gradient(mesh: &TaggedMesh, alpha: f64) -> Result<Vec<V3>> {
    let mut g = raw_energy_gradient(mesh, alpha)?;
    for (row, tag) in g.iter_mut().zip(&mesh.tags) {
        match tag {
            Tag::Pinned => *row = [0.0; 3],
            Tag::OnGamma => row[2] = 0.0,
            Tag::Free => {}
        }
    }
    Ok(g)
}

/// Re-impose the sliding constraints on a vertex position.
fn project(p: V3, tag: Tag) -> V3 {
    match tag {
        Tag::OnGamma => [p[0], p[1], 0.0],
        Tag::Free => [p[0], p[1], p[2].max(0.0)],
        Tag::Pinned => p,
    }
}

/// Whether every triangle of `m` stays above the minimal area.
fn nondegenerate(m: &TaggedMesh) -> bool {
    (0..m.num_triangles()).all(|k| m.triangle_area(k) > MIN_TRIANGLE_AREA)
}

/// Free vertices whose incident edges all bound exactly two triangles.
fn interior_free_vertices(m: &TaggedMesh) -> Vec<bool> {
    let mut ok: Vec<bool> = m.tags.iter().map(|t| *t == Tag::Free).collect();
    for ((a, b), v) in m.edge_valence() {
        if v != 2 {
            ok[a] = false;
            ok[b] = false;
        }
    }
    ok
}

/// Move each interior free vertex halfway towards the average of its
/// neighbours, keeping only the component tangent to the surface.
fn tangential_average(m: &TaggedMesh, interior: &[bool], nbrs: &[Vec<usize>]) -> TaggedMesh {
    let mut normals = vec![[0.0; 3]; m.num_vertices()];
    for t in &m.triangles {
        let [a, b, c] = [m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]];
        let n = v3::cross(v3::sub(b, a), v3::sub(c, a));
        for &i in t {
            normals[i] = v3::add(normals[i], n);
        }
    }
    let mut out = m.clone();
    for i in 0..m.num_vertices() {
        if !interior[i] || nbrs[i].is_empty() {
            continue;
        }
        let avg = v3::scale(nbrs[i].iter().fold([0.0; 3], |s, &j| v3::add(s, m.vertices[j])), 1.0 / nbrs[i].len() as f64);
        let mut d = v3::sub(avg, m.vertices[i]);
        let n = v3::normalize(normals[i]);
        d = v3::sub(d, v3::scale(n, v3::dot(d, n)));
        out.vertices[i] = project(v3::add(m.vertices[i], v3::scale(d, 0.5)), Tag::Free);
    }
    out
}

/// Smallest step length tried before the descent gives up.
pub const MIN_STEP: f64 = 1e-12;

/// Projected gradient descent with step halving on energy increase.
///
/// Returns the final mesh and the energy trace (row 0 is the input). Every
/// accepted step has energy no larger than its predecessor.
pub fn evolve(mesh: &TaggedMesh, config: &EvolveConfig) -> Result<(TaggedMesh, Vec<TraceRow>)> {
    config.validate()?;
    mesh.validate()?;
    let alpha = config.alpha;
    let mut m = mesh.clone();
    let mut e = j_alpha_mesh(&m, alpha)?;
    if !e.j_alpha.is_finite() {
        return Err(Error::NonFinite { step: 0 });
    }
    let mut h = config.step_size;
    let mut trace = vec![TraceRow { step: 0, report: e, step_size: h }];
    let interior = interior_free_vertices(&m);
    let nbrs = m.neighbours();
    for step in 1..=config.max_steps {
        let g = energy_gradient(&m, alpha)?;
        let gmax = g.iter().map(|r| v3::norm(*r)).fold(0.0, f64::max);
        if gmax <= config.grad_tol {
            break;
        }
        let mut accepted = None;
        while h >= MIN_STEP {
            let mut cand = m.clone();
            for (i, p) in cand.vertices.iter_mut().enumerate() {
                *p = project(v3::sub(*p, v3::scale(g[i], h)), m.tags[i]);
            }
            if nondegenerate(&cand) {
                let ec = j_alpha_mesh(&cand, alpha)?;
                if !ec.j_alpha.is_finite() {
                    return Err(Error::NonFinite { step });
                }
                if ec.j_alpha <= e.j_alpha {
                    accepted = Some((cand, ec));
                    break;
                }
            }
            h *= 0.5;
        }
        let Some((cand, ec)) = accepted else { break };
        m = cand;
        e = ec;
        let used = h;
        h *= 1.2;
        if config.averaging_every > 0 && step % config.averaging_every == 0 {
            let sm = tangential_average(&m, &interior, &nbrs);
            if nondegenerate(&sm) {
                let es = j_alpha_mesh(&sm, alpha)?;
                if es.j_alpha <= e.j_alpha {
                    m = sm;
                    e = es;
                }
            }
        }
        trace.push(TraceRow { step, report: e, step_size: used });
    }
    Ok((m, trace))
}
