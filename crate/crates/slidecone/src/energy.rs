//! The weighted area functional J_α(E) = H²(E \ Γ) + α·H²(E ∩ Γ).
//!
//! Energies are evaluated exactly for the analytic cone families and by
//! summing triangle areas for meshes. The slicing identity for products of
//! one-dimensional profiles with a segment is checked numerically.

use serde::{Deserialize, Serialize};

use crate::cones::{self, ConeSpec, Window};
use crate::error::{check_alpha, Error, Result};
use crate::evolver::mesh::TaggedMesh;
use crate::geom::v3;
use crate::meshing::{self, HalfSpace, PolyFace, Region};
use crate::onedim::Profile1D;

/// Split areas and the combined weighted energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub off_gamma: f64,
    pub on_gamma: f64,
    pub alpha: f64,
    pub j_alpha: f64,
}

impl EnergyReport {
    /// Assemble a report, checking α and the sign of the areas.
    pub fn new(off_gamma: f64, on_gamma: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(off_gamma >= 0.0 && on_gamma >= 0.0) {
            return Err(Error::Domain("areas must be non-negative".into()));
        }
        Ok(Self { off_gamma, on_gamma, alpha, j_alpha: off_gamma + alpha * on_gamma })
    }
}

/// Compensated (Neumaier) summation in a fixed order.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Areas of a mesh split by the on-Γ triangle classification.
pub fn mesh_areas(mesh: &TaggedMesh) -> (f64, f64) {
    let on: Vec<bool> = (0..mesh.num_triangles()).map(|k| mesh.triangle_on_gamma(k)).collect();
    let off = neumaier_sum((0..mesh.num_triangles()).filter(|k| !on[*k]).map(|k| mesh.triangle_area(k)));
    let ong = neumaier_sum((0..mesh.num_triangles()).filter(|k| on[*k]).map(|k| mesh.triangle_area(k)));
    (off, ong)
}

/// J_α of a tagged mesh. A triangle counts as lying in Γ iff all three of
/// its vertices do (see [`TaggedMesh::triangle_on_gamma`]).
pub fn j_alpha_mesh(mesh: &TaggedMesh, alpha: f64) -> Result<EnergyReport> {
    check_alpha(alpha)?;
    let (off, on) = mesh_areas(mesh);
    EnergyReport::new(off, on, alpha)
}

/// Exact J_α of an analytic cone clipped to a window.
pub fn j_alpha_exact(spec: &ConeSpec, window: Window, alpha: f64) -> Result<EnergyReport> {
    check_alpha(alpha)?;
    if let ConeSpec::Custom { .. } = spec {
        return Err(Error::Unsupported("exact energy needs an analytic family".into()));
    }
    if let ConeSpec::DeltaPlus { n } = spec {
        if *n != 3 {
            return Err(Error::Unsupported(format!("exact window energy of DELTA_PLUS({n}) is only implemented for n = 3")));
        }
    }
    let (off, on) = cones::exact_areas(spec, window)?;
    EnergyReport::new(off, on, alpha)
}

/// Result of the slicing check: mesh energy of the product in the cylinder
/// versus height × one-dimensional energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicingCheck {
    pub lhs: f64,
    pub rhs: f64,
}

/// Height of the cylinder used by [`slicing_check`].
pub const SLICING_HEIGHT: f64 = 1.0;

/// Mesh of the product A × [0, h] of a profile with a segment along y,
/// inside the cylinder (unit half-disc in the xz plane) × [0, h].
pub fn product_mesh(profile: &Profile1D, height: f64, resolution: usize) -> Result<TaggedMesh> {
    profile.validate()?;
    let y = [0.0, height, 0.0];
    let mut faces = Vec::new();
    let mut hs = vec![HalfSpace { n: [0.0, 1.0, 0.0], c: height }, HalfSpace { n: [0.0, -1.0, 0.0], c: 0.0 }];
    for (i, b) in profile.branches().iter().enumerate() {
        let (s, c) = b.angle.sin_cos();
        let dir = [c, 0.0, if b.in_gamma { 0.0 } else { s }];
        let mut label = format!("B{}", i + 1);
        if b.in_gamma {
            label.push_str(cones::GAMMA_LABEL);
        }
        faces.push(PolyFace::polygon(label, vec![[0.0; 3], dir, v3::add(dir, y), y]));
        hs.push(HalfSpace { n: dir, c: 1.0 });
    }
    meshing::triangulate(&faces, resolution, &Region::Polytope(hs), 1.0)
}

/// Numerical slicing identity for a product cone.
pub fn slicing_check(profile: &Profile1D, alpha: f64, resolution: usize) -> Result<SlicingCheck> {
    check_alpha(alpha)?;
    let mesh = product_mesh(profile, SLICING_HEIGHT, resolution)?;
    let lhs = j_alpha_mesh(&mesh, alpha)?.j_alpha;
    let rhs = SLICING_HEIGHT * profile.energy_in_unit_disc(alpha)?;
    Ok(SlicingCheck { lhs, rhs })
}
