//! Cone families, their planar fold decompositions and mesh realisations.
//!
//! Γ is the plane {z = 0} and every cone lives in the closed upper
//! half-space. A fold is a planar sector with apex at the origin, stored as
//! an ordered list of boundary rays; consecutive rays span convex
//! sub-sectors of angle less than π.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolver::mesh::TaggedMesh;
use crate::geom::v3::{self, V3};
use crate::geom::{check_beta, rotation_beta, VecN};
use crate::meshing::{self, clip_all, polygon_area, HalfSpace, PolyFace, Region};
use crate::onedim::Profile1D;

/// Length of the radial extent used before clipping to polytope windows.
const FAR: f64 = 16.0;
/// Largest angle between consecutive rays after refinement.
const MAX_SECTOR: f64 = FRAC_PI_2 + 1e-9;
/// Prism height as a multiple of the circumradius of its triangular base.
pub const PRISM_HEIGHT_FACTOR: f64 = 4.0;

/// Symbolic description of a cone family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConeSpec {
    /// Product of a one-dimensional profile (in the xz half-plane) with the y axis.
    Product1d { profile: Profile1D },
    /// Cone over the edges of a tetrahedron with one vertex pointing down.
    TPlus,
    /// Tilted Y with the convex sector of Γ between its sloping folds.
    YBeta { beta: f64 },
    /// Tilted upside-down Y with the non-convex sector of Γ.
    YbarBeta { beta: f64 },
    /// Two mirror-image halves of the upside-down tilted Y sharing a vertical fold.
    WBeta { beta: f64 },
    /// Cone over the (n−2)-skeleton of the regular simplex in the half-space.
    DeltaPlus { n: usize },
    /// Upper half of the cone over the edges of a cube.
    CPlus,
    /// A mesh read from a file.
    Custom { path: String },
}

impl ConeSpec {
    /// Check the family parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConeSpec::YBeta { beta } | ConeSpec::YbarBeta { beta } | ConeSpec::WBeta { beta } => check_beta(*beta),
            ConeSpec::DeltaPlus { n } if *n < 3 => Err(Error::InvalidDimension { n: *n, reason: "DELTA_PLUS needs n >= 3" }),
            ConeSpec::Product1d { profile } => profile.validate(),
            _ => Ok(()),
        }
    }

    /// Ambient dimension of the cone.
    pub fn dim(&self) -> usize {
        match self {
            ConeSpec::DeltaPlus { n } => *n,
            _ => 3,
        }
    }
}

/// Compact window in which a cone is realised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "window", content = "radius", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Window {
    /// Ball of radius r centred at the origin.
    Ball(f64),
    /// The polytope generating the cone: the prism over the horizontal
    /// projection of the top face for T₊ (and Δ³₊), the upper half-cube for C₊.
    Simplex,
    /// Right prism around the spine of a tilted Y.
    Prism,
}

/// One planar fold of a cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fold {
    pub name: String,
    /// Unit normal; oriented with positive last coordinate when possible.
    pub normal: VecN,
    /// Ordered boundary rays (for DELTA_PLUS: generators of the fold cone).
    pub rays: Vec<VecN>,
    pub on_gamma: bool,
}

impl Fold {
    fn new3(name: &str, rays: &[V3], on_gamma: bool) -> Fold {
        let normal = orient(sector_normal(rays));
        Fold { name: name.into(), normal: VecN::from3(normal), rays: rays.iter().map(|r| VecN::from3(v3::normalize(*r))).collect(), on_gamma }
    }

    /// Boundary rays as 3-vectors.
    pub fn rays3(&self) -> Vec<V3> {
        self.rays.iter().map(|r| r.to3()).collect()
    }

    /// Total opening angle of the fold (sum over its convex sub-sectors).
    pub fn angle(&self) -> f64 {
        let r = self.rays3();
        r.windows(2).map(|w| v3::angle(w[0], w[1])).sum()
    }
}

/// Planar-fold decomposition of a cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldSet {
    pub folds: Vec<Fold>,
}

impl FoldSet {
    pub fn get(&self, name: &str) -> Option<&Fold> {
        self.folds.iter().find(|f| f.name == name)
    }
}

fn sector_normal(rays: &[V3]) -> V3 {
    let mut best = [0.0; 3];
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let c = v3::cross(rays[i], rays[j]);
            if v3::norm(c) > v3::norm(best) {
                best = c;
            }
        }
    }
    v3::normalize(best)
}

/// Fix the sign of a normal: positive z, else positive y, else positive x.
pub fn orient(n: V3) -> V3 {
    let e = 1e-14;
    let flip = if n[2].abs() > e { n[2] < 0.0 } else if n[1].abs() > e { n[1] < 0.0 } else { n[0] < 0.0 };
    if flip {
        v3::neg(n)
    } else {
        n
    }
}

/// Angle γ between the sloping folds of a tilted Y and Γ: (√3/2) cos β = cos γ.
pub fn gamma_from_beta(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok((3f64.sqrt() / 2.0 * beta.cos()).acos())
}

/// Part of the half-plane {t u + s d : t ≥ 0} lying in {z ≥ 0}, as an ordered
/// ray list (empty when the half-plane lies below Γ).
pub fn upper_part(u: V3, d: V3) -> Vec<V3> {
    let eps = 1e-14;
    if d[2] > eps {
        let g = v3::normalize(v3::sub(u, v3::scale(d, u[2] / d[2])));
        vec![g, d]
    } else if d[2] < -eps {
        upper_part(u, v3::neg(d))
    } else if u[2] > eps {
        vec![d, u, v3::neg(d)]
    } else if u[2] < -eps {
        Vec::new()
    } else {
        vec![d, u, v3::neg(d)]
    }
}

/// Rays of the tetrahedral cone T₊: v₁..v₃ (top), v₄ = (0, 0, −1).
pub fn t_plus_vertices() -> [V3; 4] {
    let r2 = 2f64.sqrt();
    let r23 = (2.0f64 / 3.0).sqrt();
    [[2.0 * r2 / 3.0, 0.0, 1.0 / 3.0], [-r2 / 3.0, r23, 1.0 / 3.0], [-r2 / 3.0, -r23, 1.0 / 3.0], [0.0, 0.0, -1.0]]
}

/// Generating rays of the Y cone: p₁, p₂, p₃ in the xy plane.
pub fn y_generators() -> [V3; 3] {
    let h = 3f64.sqrt() / 2.0;
    [[1.0, 0.0, 0.0], [-0.5, h, 0.0], [-0.5, -h, 0.0]]
}

/// Direction of the Γ trace (t, k·t, 0), t ≥ 0 when `forward`.
fn trace(k: f64, forward: bool) -> V3 {
    let d = v3::normalize([1.0, k, 0.0]);
    if forward {
        d
    } else {
        v3::neg(d)
    }
}

/// Planar-fold decomposition of an analytic cone.
pub fn folds(spec: &ConeSpec) -> Result<FoldSet> {
    spec.validate()?;
    let folds = match spec {
        ConeSpec::Custom { .. } => return Err(Error::Unsupported("folds are only defined for analytic families".into())),
        ConeSpec::Product1d { profile } => profile
            .branches()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let (s, c) = b.angle.sin_cos();
                let dir = [c, 0.0, s];
                let y = [0.0, 1.0, 0.0];
                let mut f = Fold::new3(&format!("B{}", i + 1), &[v3::neg(y), dir, y], b.in_gamma);
                f.normal = VecN::from3(orient(v3::normalize(v3::cross(dir, y))));
                f
            })
            .collect(),
        ConeSpec::TPlus => {
            let v = t_plus_vertices();
            let mut out = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                out.push(Fold::new3(&format!("S{}{}", i + 1, j + 1), &[v[i], v[j]], false));
            }
            for i in 0..3 {
                let foot = v3::normalize([v[i][0], v[i][1], 0.0]);
                out.push(Fold::new3(&format!("V{}", i + 1), &[foot, v[i]], false));
            }
            out
        }
        ConeSpec::YBeta { beta } | ConeSpec::YbarBeta { beta } => {
            let bar = matches!(spec, ConeSpec::YbarBeta { .. });
            let r = rotation_beta(*beta)?;
            let d = r.apply([0.0, 0.0, 1.0]);
            let sign = if bar { -1.0 } else { 1.0 };
            let mut out = Vec::new();
            for (k, p) in y_generators().iter().enumerate() {
                let u = r.apply(v3::scale(*p, sign));
                let rays = upper_part(u, d);
                if rays.len() >= 2 && rays.windows(2).any(|w| v3::angle(w[0], w[1]) > 1e-12) {
                    let mut f = Fold::new3(&format!("F{}", k + 1), &rays, false);
                    f.normal = VecN::from3(orient(v3::normalize(v3::cross(d, u))));
                    out.push(f);
                }
            }
            let k = 3f64.sqrt() * beta.sin();
            if !bar {
                // Convex sector around −x between q₂ and q₃.
                if k > 1e-12 {
                    out.push(Fold::new3("S", &[trace(-k, false), [-1.0, 0.0, 0.0], trace(k, false)], true));
                }
            } else {
                // Non-convex sector around −x between q̄₃ and q̄₂.
                let rays = [trace(k, true), [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], trace(-k, true)];
                let mut f = Fold::new3("S", &rays, true);
                f.normal = VecN::from3([0.0, 0.0, 1.0]);
                out.push(f);
            }
            for f in &mut out {
                if f.on_gamma {
                    f.normal = VecN::from3([0.0, 0.0, 1.0]);
                }
            }
            out
        }
        ConeSpec::WBeta { beta } => {
            let (s, c) = beta.sin_cos();
            let k = 3f64.sqrt() * s;
            let s1 = [c, 0.0, s];
            let s2 = [-c, 0.0, s];
            let q1 = trace(k, true);
            let q2 = trace(-k, true);
            let q3 = trace(k, false);
            let q4 = trace(-k, false);
            let mut out = vec![
                Fold::new3("V", &[s1, [0.0, 0.0, 1.0], s2], false),
                Fold::new3("H1", &[q1, [0.0, 1.0, 0.0], q4], true),
                Fold::new3("H2", &[q2, [0.0, -1.0, 0.0], q3], true),
            ];
            let h = 3f64.sqrt() / 2.0;
            let normals = [[-h * s, 0.5, h * c], [-h * s, -0.5, h * c], [h * s, -0.5, h * c], [h * s, 0.5, h * c]];
            for (i, (q, sp)) in [(q1, s1), (q2, s1), (q3, s2), (q4, s2)].iter().enumerate() {
                let mut f = Fold::new3(&format!("S{}", i + 1), &[*q, *sp], false);
                // Normals from the generating spans (the sector degenerates at β = 0).
                f.normal = VecN::from3(normals[i]);
                out.push(f);
            }
            out[0].normal = VecN::from3([0.0, 1.0, 0.0]);
            out[1].normal = VecN::from3([0.0, 0.0, 1.0]);
            out[2].normal = VecN::from3([0.0, 0.0, 1.0]);
            out
        }
        ConeSpec::DeltaPlus { n } => {
            let s = crate::geom::simplex_vertices(*n)?;
            let ell = crate::geom::edge_length(*n)?;
            let mut out = Vec::new();
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    let rays = (1..=n + 1).filter(|k| *k != i && *k != j).map(|k| s.p(k).clone()).collect();
                    let normal = s.p(j).sub(s.p(i)).scale(1.0 / ell);
                    out.push(Fold { name: format!("F{i}{j}"), normal, rays, on_gamma: false });
                }
            }
            out
        }
        ConeSpec::CPlus => {
            let top = [[1.0, 1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [1.0, -1.0, 1.0]];
            let mut out = Vec::new();
            for i in 0..4 {
                out.push(Fold::new3(&format!("S{}", i + 1), &[top[i], top[(i + 1) % 4]], false));
            }
            for (i, t) in top.iter().enumerate() {
                out.push(Fold::new3(&format!("V{}", i + 1), &[[t[0], t[1], 0.0], *t], false));
            }
            out
        }
    };
    Ok(FoldSet { folds })
}

/// Insert intermediate rays so that consecutive rays are at most π/2 apart.
pub(crate) fn refine_rays(rays: &[V3]) -> Vec<V3> {
    let mut out = vec![v3::normalize(rays[0])];
    for w in rays.windows(2) {
        let (a, b) = (v3::normalize(w[0]), v3::normalize(w[1]));
        let ang = v3::angle(a, b);
        let k = ((ang / MAX_SECTOR).ceil() as usize).max(1);
        for j in 1..=k {
            out.push(meshing::slerp(a, b, j as f64 / k as f64, 1.0));
        }
    }
    out
}

/// Half-spaces of the polytope window of a family.
pub fn window_halfspaces(spec: &ConeSpec, window: Window) -> Result<Vec<HalfSpace>> {
    match (spec, window) {
        (ConeSpec::TPlus, Window::Simplex) | (ConeSpec::DeltaPlus { n: 3 }, Window::Simplex) => {
            let v = t_plus_vertices();
            let base: Vec<V3> = v[..3].iter().map(|p| [p[0], p[1], 0.0]).collect();
            let mut hs = Vec::new();
            for i in 0..3 {
                let a = base[i];
                let b = base[(i + 1) % 3];
                let mid = v3::scale(v3::add(a, b), 0.5);
                let n = v3::normalize(mid);
                hs.push(HalfSpace { n, c: v3::dot(n, a) });
            }
            hs.push(HalfSpace { n: [0.0, 0.0, 1.0], c: 1.0 / 3.0 });
            Ok(hs)
        }
        (ConeSpec::CPlus, Window::Simplex) => Ok(vec![
            HalfSpace { n: [1.0, 0.0, 0.0], c: 1.0 },
            HalfSpace { n: [-1.0, 0.0, 0.0], c: 1.0 },
            HalfSpace { n: [0.0, 1.0, 0.0], c: 1.0 },
            HalfSpace { n: [0.0, -1.0, 0.0], c: 1.0 },
            HalfSpace { n: [0.0, 0.0, 1.0], c: 1.0 },
        ]),
        (ConeSpec::YBeta { beta }, Window::Prism) | (ConeSpec::YbarBeta { beta }, Window::Prism) => {
            let bar = matches!(spec, ConeSpec::YbarBeta { .. });
            let r = rotation_beta(*beta)?;
            let d = r.apply([0.0, 0.0, 1.0]);
            let sign = if bar { -1.0 } else { 1.0 };
            let rho = 1.0;
            let mut hs: Vec<HalfSpace> = y_generators().iter().map(|p| HalfSpace { n: v3::neg(r.apply(v3::scale(*p, sign))), c: rho / 2.0 }).collect();
            let half = PRISM_HEIGHT_FACTOR * rho / 2.0;
            hs.push(HalfSpace { n: d, c: half });
            hs.push(HalfSpace { n: v3::neg(d), c: half });
            Ok(hs)
        }
        _ => Err(Error::Configuration(format!("window {window:?} is not available for {spec:?}"))),
    }
}

/// Polygonal faces of a cone clipped to a window (arc edges on ball rims).
pub fn window_faces(spec: &ConeSpec, window: Window) -> Result<Vec<PolyFace>> {
    let spec3 = match spec {
        ConeSpec::DeltaPlus { n: 3 } => ConeSpec::TPlus,
        ConeSpec::DeltaPlus { n } => return Err(Error::Configuration(format!("DELTA_PLUS({n}) has no three-dimensional realisation"))),
        ConeSpec::Custom { .. } => return Err(Error::Unsupported("custom meshes have no analytic faces".into())),
        s => s.clone(),
    };
    let fs = folds(&spec3)?;
    let mut faces = Vec::new();
    match window {
        Window::Ball(r) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!("ball radius {r} must be positive")));
            }
            for f in &fs.folds {
                let rays = f.rays3();
                if f.angle() < 1e-12 {
                    continue;
                }
                let mut pts = vec![[0.0; 3]];
                let mut arc = vec![false];
                for (i, ray) in rays.iter().enumerate() {
                    pts.push(v3::scale(*ray, r));
                    arc.push(i + 1 < rays.len());
                }
                // Closing edge back to the apex is straight.
                let face = PolyFace { pts, arc, center: None, label: f.name.clone() };
                faces.extend(split_fan(face, f.on_gamma));
            }
        }
        _ => {
            let hs = window_halfspaces(&spec3, window)?;
            let mut clip = hs.clone();
            clip.push(HalfSpace { n: [0.0, 0.0, -1.0], c: 0.0 });
            for f in &fs.folds {
                let rays = refine_rays(&f.rays3());
                for w in rays.windows(2) {
                    if v3::angle(w[0], w[1]) < 1e-12 {
                        continue;
                    }
                    let poly = clip_all(&[[0.0; 3], v3::scale(w[0], FAR), v3::scale(w[1], FAR)], &clip);
                    if polygon_area(&poly) > 1e-14 {
                        faces.push(tag_face(PolyFace::polygon(f.name.clone(), poly), f.on_gamma));
                    }
                }
            }
        }
    }
    Ok(faces)
}

/// Label marker for faces lying in Γ.
pub const GAMMA_LABEL: &str = "[gamma]";

fn tag_face(mut f: PolyFace, on_gamma: bool) -> PolyFace {
    if on_gamma {
        f.label.push_str(GAMMA_LABEL);
    }
    f
}

/// Split a ball sector face into sub-sectors of at most π/2 so that each fan
/// is star-shaped about its centre.
fn split_fan(face: PolyFace, on_gamma: bool) -> Vec<PolyFace> {
    let rim: Vec<V3> = face.pts[1..].to_vec();
    let r = v3::norm(rim[0]);
    let rays = refine_rays(&rim);
    rays.windows(2)
        .filter(|w| v3::angle(w[0], w[1]) > 1e-12)
        .map(|w| {
            let f = PolyFace { pts: vec![[0.0; 3], v3::scale(w[0], r), v3::scale(w[1], r)], arc: vec![false, true, false], center: None, label: face.label.clone() };
            tag_face(f, on_gamma)
        })
        .collect()
}

/// Region description used to tag window-boundary vertices.
pub fn window_region(spec: &ConeSpec, window: Window) -> Result<Region> {
    match window {
        Window::Ball(r) => Ok(Region::Ball(r)),
        w => {
            let s = if let ConeSpec::DeltaPlus { n: 3 } = spec { ConeSpec::TPlus } else { spec.clone() };
            Ok(Region::Polytope(window_halfspaces(&s, w)?))
        }
    }
}

/// Triangulated realisation of a cone in a window.
///
/// Vertices on Γ are tagged ON_GAMMA and vertices on the window boundary
/// PINNED. Polytope windows are triangulated exactly; ball rims are
/// inscribed polygons with 8·res chords per right angle.
pub fn build_mesh(spec: &ConeSpec, window: Window, resolution: usize) -> Result<TaggedMesh> {
    if resolution < 1 {
        return Err(Error::Domain("resolution must be at least 1".into()));
    }
    spec.validate()?;
    let faces = window_faces(spec, window)?;
    let region = window_region(spec, window)?;
    meshing::triangulate(&faces, resolution, &region, FRAC_PI_2 / 8.0)
}

/// Exact areas (off Γ, on Γ) of the window-clipped cone.
pub fn exact_areas(spec: &ConeSpec, window: Window) -> Result<(f64, f64)> {
    let spec3 = match spec {
        ConeSpec::DeltaPlus { n: 3 } => ConeSpec::TPlus,
        s => s.clone(),
    };
    let fs = folds(&spec3)?;
    let (mut off, mut on) = (0.0, 0.0);
    match window {
        Window::Ball(r) => {
            for f in &fs.folds {
                let a = 0.5 * r * r * f.angle();
                if f.on_gamma {
                    on += a;
                } else {
                    off += a;
                }
            }
        }
        _ => {
            for face in window_faces(&spec3, window)? {
                let a = polygon_area(&face.pts);
                if face.label.ends_with(GAMMA_LABEL) {
                    on += a;
                } else {
                    off += a;
                }
            }
        }
    }
    Ok((off, on))
}
