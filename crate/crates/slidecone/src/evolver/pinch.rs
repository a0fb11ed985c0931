//! Topology surgery producing the better-competitor seeds of non-minimal
//! cones.
//!
//! Every preset describes its cone as a complex of sheets: fans of rays that
//! reach the window boundary, whose inner ends are polylines rather than the
//! apex. The cone itself uses the apex for every inner end; the pinched
//! competitor replaces it by a few junction points and adds the new
//! interface faces. Both share the same window rim, so their energies are
//! directly comparable and the rim can be used to recognise the cone mesh
//! a recipe applies to.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cones::{self, refine_rays};
use crate::competitor;
use crate::error::{Error, Result};
use crate::evolver::mesh::{Tag, TaggedMesh};
use crate::geom::v3::{self, V3};
use crate::meshing::{self, HalfSpace, PolyFace, Region};

/// Longest rim chord (radians) of ball windows.
const MAX_CHORD: f64 = PI / 16.0;
/// Radius of the ball window used by the tilted-Y presets.
const BALL: f64 = 1.0;
const O: V3 = [0.0, 0.0, 0.0];
const Z: V3 = [0.0, 0.0, 1.0];

/// Named competitor constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PinchPreset {
    /// Vertical Y plus one sloping Y: new interface between the region
    /// under the sloping Y and the opposite region.
    YPlusY,
    /// Two sloping Ys, sin φ ≤ 1/2: interface as for Y+Y, second sloping Y
    /// pulled away from the origin.
    YPlus2YLow,
    /// Two sloping Ys, sin φ ≥ 1/2: the facing sloping folds zipped into a
    /// vertical interface.
    YPlus2YHigh,
    /// Three sloping Ys, sin φ ≤ 1/2.
    YPlus3YLow,
    /// Three sloping Ys, sin φ ≥ 1/2: three vertical interfaces forming a Y.
    YPlus3YHigh,
    /// Half tetrahedral cone plus a sloping Y: sloping folds pushed down to
    /// Γ, sloping Y pulled away.
    TPlusY,
    /// Upper half of the cube cone: half of the small central square.
    CPlus,
    /// Upper half of the cone over the edges of a box with square top
    /// replaced by a rectangle of the given aspect ratio.
    Rectangle,
    /// Upper half of the cone over a regular pentagonal prism: small central
    /// pentagon on a column standing on Γ.
    PentagonPrismHalf,
    /// Half tetrahedral cone: the push-down family M_c.
    TPlus,
}

impl PinchPreset {
    pub const ALL: [PinchPreset; 10] = [
        PinchPreset::YPlusY,
        PinchPreset::YPlus2YLow,
        PinchPreset::YPlus2YHigh,
        PinchPreset::YPlus3YLow,
        PinchPreset::YPlus3YHigh,
        PinchPreset::TPlusY,
        PinchPreset::CPlus,
        PinchPreset::Rectangle,
        PinchPreset::PentagonPrismHalf,
        PinchPreset::TPlus,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            PinchPreset::YPlusY => "y+y",
            PinchPreset::YPlus2YLow => "y+2y-low",
            PinchPreset::YPlus2YHigh => "y+2y-high",
            PinchPreset::YPlus3YLow => "y+3y-low",
            PinchPreset::YPlus3YHigh => "y+3y-high",
            PinchPreset::TPlusY => "t+y",
            PinchPreset::CPlus => "c-plus",
            PinchPreset::Rectangle => "rectangle",
            PinchPreset::PentagonPrismHalf => "pentagon-prism-half",
            PinchPreset::TPlus => "t-plus",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == s)
    }

    /// Admissible range of the family parameter (sin φ for tilted families,
    /// aspect ratio for the rectangle, unused otherwise).
    pub fn param_range(self) -> (f64, f64) {
        match self {
            PinchPreset::YPlusY => (0.0, 0.95),
            PinchPreset::YPlus2YLow | PinchPreset::YPlus3YLow => (0.0, 0.5),
            PinchPreset::YPlus2YHigh | PinchPreset::YPlus3YHigh => (0.5, 0.95),
            PinchPreset::TPlusY => (0.0, 1.0 / 3.0),
            PinchPreset::Rectangle => (0.5, 2.0),
            PinchPreset::CPlus | PinchPreset::PentagonPrismHalf | PinchPreset::TPlus => (0.0, 1.0),
        }
    }

    /// Default family parameter.
    pub fn default_param(self) -> f64 {
        match self {
            PinchPreset::YPlusY => 0.5,
            PinchPreset::YPlus2YLow | PinchPreset::YPlus3YLow => 0.3,
            PinchPreset::YPlus2YHigh | PinchPreset::YPlus3YHigh => 0.8,
            PinchPreset::TPlusY => 0.2,
            PinchPreset::Rectangle => 1.5,
            _ => 0.0,
        }
    }

    /// Default size of the inserted structure.
    pub fn default_size(self) -> f64 {
        match self {
            PinchPreset::TPlus => 0.05,
            PinchPreset::TPlusY => 0.08,
            PinchPreset::CPlus | PinchPreset::Rectangle | PinchPreset::PentagonPrismHalf => 0.2,
            _ => 0.1,
        }
    }

    /// The α at which the cone satisfies the optimal-contact condition:
    /// (√3/2)·cos φ for tilted families; `None` when no α is singled out.
    pub fn family_alpha(self, param: f64) -> Option<f64> {
        match self {
            PinchPreset::YPlusY
            | PinchPreset::YPlus2YLow
            | PinchPreset::YPlus2YHigh
            | PinchPreset::YPlus3YLow
            | PinchPreset::YPlus3YHigh
            | PinchPreset::TPlusY => Some(3f64.sqrt() / 2.0 * (1.0 - param * param).sqrt()),
            _ => None,
        }
    }

    fn check(self, param: f64, size: f64) -> Result<()> {
        let (lo, hi) = self.param_range();
        if !(param >= lo - 1e-15 && param <= hi + 1e-15) {
            return Err(Error::Domain(format!("parameter {param} outside [{lo}, {hi}] for preset {}", self.name())));
        }
        if !(size > 0.0 && size < 0.3) {
            return Err(Error::Domain(format!("pinch size {size} must lie in (0, 0.3)")));
        }
        Ok(())
    }

    /// Mesh of the cone the preset applies to.
    pub fn cone_mesh(self, param: f64, resolution: usize) -> Result<TaggedMesh> {
        self.check(param, self.default_size())?;
        self.build(param, None, resolution)
    }

    /// Mesh of the pinched competitor (same rim as [`Self::cone_mesh`]).
    pub fn competitor_mesh(self, param: f64, size: f64, resolution: usize) -> Result<TaggedMesh> {
        self.check(param, size)?;
        self.build(param, Some(size), resolution)
    }

    fn build(self, param: f64, size: Option<f64>, res: usize) -> Result<TaggedMesh> {
        match self {
            PinchPreset::TPlus => competitor::competitor_mesh(size.unwrap_or(0.0), 12, res),
            PinchPreset::CPlus => box_complex(1.0, size).realize(res),
            PinchPreset::Rectangle => box_complex(param, size).realize(res),
            PinchPreset::PentagonPrismHalf => pentagon_complex(size).realize(res),
            PinchPreset::TPlusY => t_plus_y_complex(param, size).realize(res),
            y => y_complex(y, param, size).realize(res),
        }
    }
}

/// A surgery recipe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PinchRecipe {
    /// Leave the mesh unchanged.
    Identity,
    /// Replace a preset cone mesh by its pinched competitor.
    Preset { preset: PinchPreset, param: f64, size: f64, resolution: usize },
}

impl PinchRecipe {
    /// Recipe with the preset's default parameter and size.
    pub fn preset(preset: PinchPreset, resolution: usize) -> Self {
        PinchRecipe::Preset { preset, param: preset.default_param(), size: preset.default_size(), resolution }
    }
}

fn pinned_points(m: &TaggedMesh) -> Vec<V3> {
    let mut p: Vec<V3> = m.vertices.iter().zip(&m.tags).filter(|(_, t)| **t == Tag::Pinned).map(|(p, _)| *p).collect();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    p
}

/// Apply a recipe. A preset recipe requires the input to be the preset's
/// cone mesh (recognised by its pinned rim) and returns the competitor with
/// the identical rim.
pub fn pinch(mesh: &TaggedMesh, recipe: &PinchRecipe) -> Result<TaggedMesh> {
    match *recipe {
        PinchRecipe::Identity => Ok(mesh.clone()),
        PinchRecipe::Preset { preset, param, size, resolution } => {
            let cone = preset.cone_mesh(param, resolution)?;
            let (a, b) = (pinned_points(mesh), pinned_points(&cone));
            if a.len() != b.len() {
                return Err(Error::Surgery(format!("rim has {} pinned vertices, preset {} expects {}", a.len(), preset.name(), b.len())));
            }
            if a.iter().zip(&b).any(|(p, q)| v3::norm(v3::sub(*p, *q)) > 1e-9) {
                return Err(Error::Surgery(format!("rim does not match the {} cone", preset.name())));
            }
            preset.competitor_mesh(param, size, resolution)
        }
    }
}

/// Fan of rays reaching the window sphere whose inner end is the polyline
/// `inner` (inner[0] starts the first ray, the last point the last ray).
#[derive(Debug, Clone)]
struct Sheet {
    label: String,
    rays: Vec<V3>,
    inner: Vec<V3>,
    gamma: bool,
}

impl Sheet {
    fn new(label: &str, rays: &[V3], gamma: bool) -> Self {
        Sheet { label: label.into(), rays: rays.to_vec(), inner: vec![O, O], gamma }
    }
}

/// A complex realised in a window.
struct Complex {
    sheets: Vec<Sheet>,
    faces: Vec<PolyFace>,
    region: Region,
}

impl Complex {
    fn sheet(&mut self, label: &str) -> &mut Sheet {
        self.sheets.iter_mut().find(|s| s.label == label).expect("preset sheet labels are fixed")
    }

    fn set(&mut self, label: &str, inner: &[V3]) {
        self.sheet(label).inner = inner.to_vec();
    }

    fn realize(&self, res: usize) -> Result<TaggedMesh> {
        let mut faces = self.faces.clone();
        for s in &self.sheets {
            let rays = refine_rays(&s.rays);
            let rim: Vec<V3> = rays.iter().map(|r| v3::scale(*r, BALL)).collect();
            let m = rim.len() - 1;
            let p0 = s.inner[0];
            let label = if s.gamma { format!("{}{}", s.label, cones::GAMMA_LABEL) } else { s.label.clone() };
            for i in 0..m {
                let mut pts = vec![p0, rim[i], rim[i + 1]];
                if i + 1 == m {
                    pts.extend(s.inner[1..].iter().rev());
                }
                let pts = meshing::dedup_ring(pts);
                let mut arc = vec![false; pts.len()];
                arc[1] = true;
                faces.push(PolyFace { pts, arc, center: None, label: label.clone() });
            }
        }
        meshing::triangulate(&faces, res, &self.region, MAX_CHORD)
    }
}

fn e(deg: f64) -> V3 {
    let t = deg.to_radians();
    [t.cos(), t.sin(), 0.0]
}

/// Spine direction of a sloping Y at azimuth `deg` and elevation φ.
fn spine(deg: f64, sin_phi: f64) -> V3 {
    let c = (1.0 - sin_phi * sin_phi).sqrt();
    let h = e(deg);
    [c * h[0], c * h[1], sin_phi]
}

/// Azimuth offset of the Γ traces of a sloping Y: tan ψ = √3 sin φ.
fn trace_offset(sin_phi: f64) -> f64 {
    (3f64.sqrt() * sin_phi).atan().to_degrees()
}

/// Vertical Y with azimuths 0°, 120°, 240°, of which `sloped` carry a
/// sloping Y below their spine; the cone contains Γ outside the wedges
/// under the sloping Ys.
fn y_cone(sloped: &[bool; 3], sin_phi: f64) -> Complex {
    let psi = trace_offset(sin_phi);
    let mut sheets = Vec::new();
    for j in 0..3 {
        let az = 120.0 * j as f64;
        let n = j + 1;
        if sloped[j] {
            let d = spine(az, sin_phi);
            sheets.push(Sheet::new(&format!("S{n}+"), &[e(az + psi), d], false));
            sheets.push(Sheet::new(&format!("S{n}-"), &[e(az - psi), d], false));
            sheets.push(Sheet::new(&format!("C{n}"), &[d, Z], false));
        } else {
            sheets.push(Sheet::new(&format!("V{n}"), &[e(az), Z], false));
        }
    }
    for j in 0..3 {
        let k = (j + 1) % 3;
        let a = 120.0 * j as f64 + if sloped[j] { psi } else { 0.0 };
        let b = 120.0 * (j + 1) as f64 - if sloped[k] { psi } else { 0.0 };
        sheets.push(Sheet::new(&format!("G{}{}", j + 1, k + 1), &[e(a), e(0.5 * (a + b)), e(b)], true));
    }
    Complex { sheets, faces: Vec::new(), region: Region::Ball(BALL) }
}

fn y_complex(preset: PinchPreset, sin_phi: f64, size: Option<f64>) -> Complex {
    let sloped = match preset {
        PinchPreset::YPlusY => [true, false, false],
        PinchPreset::YPlus2YLow | PinchPreset::YPlus2YHigh => [true, true, false],
        _ => [true, true, true],
    };
    let mut c = y_cone(&sloped, sin_phi);
    let Some(s) = size else { return c };
    match preset {
        PinchPreset::YPlusY | PinchPreset::YPlus2YLow | PinchPreset::YPlus3YLow => {
            // Interface between the region under the first sloping Y and the
            // opposite region: a small triangle in the plane x = 0.
            let u = [0.0, 0.0, s];
            let gp = [0.0, s, 0.0];
            let gm = [0.0, -s, 0.0];
            let q2 = v3::scale(e(120.0), 2.0 * s);
            let q3 = v3::scale(e(240.0), 2.0 * s);
            c.set("S1+", &[gp, u]);
            c.set("S1-", &[gm, u]);
            c.set("C1", &[u, u]);
            if sloped[1] {
                c.set("S2+", &[q2, q2]);
                c.set("S2-", &[q2, q2]);
                c.set("C2", &[q2, gp, u]);
                c.set("G12", &[gp, q2]);
            } else {
                c.set("V2", &[gp, u]);
                c.set("G12", &[gp, gp]);
            }
            if sloped[2] {
                c.set("S3+", &[q3, q3]);
                c.set("S3-", &[q3, q3]);
                c.set("C3", &[q3, gm, u]);
                c.set("G31", &[q3, gm]);
            } else {
                c.set("V3", &[gm, u]);
                c.set("G31", &[gm, gm]);
            }
            let mut g23 = if sloped[1] { vec![q2, gp] } else { vec![gp] };
            g23.extend(if sloped[2] { vec![gm, q3] } else { vec![gm] });
            c.set("G23", &g23);
            c.faces.push(PolyFace::polygon("T", vec![gp, u, gm]));
        }
        _ => {
            // Zip each pair of facing sloping folds into a vertical triangle.
            let pairs: &[(usize, usize)] = if sloped[2] { &[(1, 2), (2, 3), (3, 1)] } else { &[(1, 2)] };
            for &(a, b) in pairs {
                let mid = 120.0 * (a - 1) as f64 + 60.0;
                let q = v3::scale(e(mid), 2.0 * s);
                let h = v3::add(v3::scale(e(mid), s), [0.0, 0.0, s]);
                c.set(&format!("S{a}+"), &[q, h, O]);
                c.set(&format!("S{b}-"), &[q, h, O]);
                c.set(&format!("G{a}{b}"), &[q, q]);
                c.faces.push(PolyFace::polygon(format!("W{a}{b}"), vec![O, q, h]));
            }
        }
    }
    c
}

/// T₊ in the unit ball with its first vertical fold replaced, below the
/// elevation φ, by a sloping Y; Γ is contained outside the wedge under it.
fn t_plus_y_complex(sin_phi: f64, size: Option<f64>) -> Complex {
    let v: Vec<V3> = cones::t_plus_vertices()[..3].iter().map(|p| v3::normalize(*p)).collect();
    let psi = trace_offset(sin_phi);
    let d = spine(0.0, sin_phi);
    let sheets = vec![
        Sheet::new("T12", &[v[0], v[1]], false),
        Sheet::new("T23", &[v[1], v[2]], false),
        Sheet::new("T31", &[v[2], v[0]], false),
        Sheet::new("V2", &[e(120.0), v[1]], false),
        Sheet::new("V3", &[e(240.0), v[2]], false),
        Sheet::new("C1", &[d, v[0]], false),
        Sheet::new("S1+", &[e(psi), d], false),
        Sheet::new("S1-", &[e(-psi), d], false),
        Sheet::new("G12", &[e(psi), e(60.0 + 0.5 * psi), e(120.0)], true),
        Sheet::new("G23", &[e(120.0), e(180.0), e(240.0)], true),
        Sheet::new("G31", &[e(240.0), e(300.0 - 0.5 * psi), e(360.0 - psi)], true),
    ];
    let mut c = Complex { sheets, faces: Vec::new(), region: Region::Ball(BALL) };
    let Some(x0) = size else { return c };
    // Push the tetrahedral apex down to a triangle on Γ with apothem x0 and
    // move the sloping Y out to distance 3·x0.
    let k: Vec<V3> = (0..3).map(|i| v3::scale(e(120.0 * i as f64), 2.0 * x0)).collect();
    let q = v3::scale(e(0.0), 3.0 * x0);
    c.set("T12", &[k[0], k[1]]);
    c.set("T23", &[k[1], k[2]]);
    c.set("T31", &[k[2], k[0]]);
    c.set("V2", &[k[1], k[1]]);
    c.set("V3", &[k[2], k[2]]);
    c.set("C1", &[q, k[0]]);
    c.set("S1+", &[q, q]);
    c.set("S1-", &[q, q]);
    c.set("G12", &[q, k[0], k[1]]);
    c.set("G23", &[k[1], k[2]]);
    c.set("G31", &[k[2], k[0], q]);
    c.faces.push(PolyFace::polygon(format!("K{}", cones::GAMMA_LABEL), k));
    c
}

/// Upper half of the cone over the edges of the box [−1,1]×[−b,b]×[−1,1];
/// the competitor is half of a small square in the plane x = 0.
fn box_complex(b: f64, size: Option<f64>) -> Complex {
    let top = |sx: f64, sy: f64| [sx, sy * b, 1.0];
    let foot = |sx: f64, sy: f64| [sx, sy * b, 0.0];
    let region = Region::Polytope(vec![
        HalfSpace { n: [1.0, 0.0, 0.0], c: 1.0 },
        HalfSpace { n: [-1.0, 0.0, 0.0], c: 1.0 },
        HalfSpace { n: [0.0, 1.0, 0.0], c: b },
        HalfSpace { n: [0.0, -1.0, 0.0], c: b },
        HalfSpace { n: [0.0, 0.0, 1.0], c: 1.0 },
    ]);
    let mut faces = Vec::new();
    let s = size.unwrap_or(0.0);
    // Junction points: (0, ±s·b, s) on the square's top edge, (0, ±s·b, 0) on Γ.
    let up = |sy: f64| if size.is_some() { [0.0, sy * s * b, s] } else { O };
    let down = |sy: f64| if size.is_some() { [0.0, sy * s * b, 0.0] } else { O };
    for sx in [1.0, -1.0] {
        // Folds over the top edges parallel to y.
        faces.push(PolyFace::polygon("Sy", meshing::dedup_ring(vec![up(-1.0), top(sx, -1.0), top(sx, 1.0), up(1.0)])));
    }
    for sy in [1.0, -1.0] {
        // Folds over the top edges parallel to x.
        faces.push(PolyFace::polygon("Sx", vec![up(sy), top(-1.0, sy), top(1.0, sy)]));
        for sx in [1.0, -1.0] {
            faces.push(PolyFace::polygon("V", meshing::dedup_ring(vec![down(sy), foot(sx, sy), top(sx, sy), up(sy)])));
        }
    }
    if size.is_some() {
        faces.push(PolyFace::polygon("Q", vec![down(-1.0), down(1.0), up(1.0), up(-1.0)]));
    }
    Complex { sheets: Vec::new(), faces, region }
}

/// Upper half of the cone over a regular pentagonal prism (vertical axis,
/// circumradius 1, half-height 1); the competitor cuts the apex by a small
/// horizontal pentagon carried by a column standing on Γ.
fn pentagon_complex(size: Option<f64>) -> Complex {
    let corner = |k: usize, r: f64, z: f64| {
        let p = e(72.0 * k as f64);
        [r * p[0], r * p[1], z]
    };
    let mut hs: Vec<HalfSpace> = (0..5)
        .map(|k| {
            let n = e(72.0 * k as f64 + 36.0);
            HalfSpace { n, c: v3::dot(n, corner(k, 1.0, 0.0)) }
        })
        .collect();
    hs.push(HalfSpace { n: [0.0, 0.0, 1.0], c: 1.0 });
    let mut faces = Vec::new();
    let s = size.unwrap_or(0.0);
    let inner = |k: usize, z: f64| if size.is_some() { corner(k, s, z * s) } else { O };
    for k in 0..5 {
        let k1 = (k + 1) % 5;
        faces.push(PolyFace::polygon("S", meshing::dedup_ring(vec![inner(k, 1.0), corner(k, 1.0, 1.0), corner(k1, 1.0, 1.0), inner(k1, 1.0)])));
        faces.push(PolyFace::polygon("V", meshing::dedup_ring(vec![inner(k, 0.0), corner(k, 1.0, 0.0), corner(k, 1.0, 1.0), inner(k, 1.0)])));
        if size.is_some() {
            faces.push(PolyFace::polygon("W", vec![inner(k, 0.0), inner(k1, 0.0), inner(k1, 1.0), inner(k, 1.0)]));
        }
    }
    if size.is_some() {
        faces.push(PolyFace::polygon("P", (0..5).map(|k| inner(k, 1.0)).collect()));
    }
    Complex { sheets: Vec::new(), faces, region: Region::Polytope(hs) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::j_alpha_mesh;

    #[test]
    fn names_round_trip() {
        for p in PinchPreset::ALL {
            assert_eq!(PinchPreset::from_name(p.name()), Some(p));
        }
    }

    #[test]
    fn identity_recipe_is_noop() {
        let m = PinchPreset::YPlusY.cone_mesh(0.5, 1).unwrap();
        assert_eq!(pinch(&m, &PinchRecipe::Identity).unwrap(), m);
    }

    #[test]
    fn y_plus_y_cone_energy_matches_sectors() {
        // Sector areas: sloping folds, common fold, two vertical quarter
        // discs, and Γ outside the wedge (inscribed rim, so slightly less).
        let s = 0.5f64;
        let m = PinchPreset::YPlusY.cone_mesh(s, 2).unwrap();
        let r = j_alpha_mesh(&m, 0.75).unwrap();
        let psi = (3f64.sqrt() * s).atan();
        let on = 0.5 * (2.0 * PI - 2.0 * psi);
        assert!(r.on_gamma < on && r.on_gamma > 0.99 * on);
    }

    #[test]
    fn presets_share_the_cone_rim() {
        for p in PinchPreset::ALL {
            let cone = p.cone_mesh(p.default_param(), 1).unwrap();
            let comp = pinch(&cone, &PinchRecipe::preset(p, 1)).unwrap();
            assert_eq!(pinned_points(&cone), pinned_points(&comp), "{}", p.name());
        }
    }

    #[test]
    fn mismatched_rim_is_a_surgery_error() {
        let cone = PinchPreset::YPlusY.cone_mesh(0.5, 1).unwrap();
        let r = pinch(&cone, &PinchRecipe::preset(PinchPreset::CPlus, 1));
        assert!(matches!(r, Err(Error::Surgery(_))));
    }
}
