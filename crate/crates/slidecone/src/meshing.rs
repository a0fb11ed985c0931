//! Polygonal 2-complexes and their conforming triangulation.
//!
//! Cones and competitors are described as lists of (possibly non-planar)
//! polygonal faces. Each face is triangulated as a fan around an interior
//! point and every fan triangle is refined on a uniform barycentric grid, so
//! that two faces sharing an edge produce identical vertices along it.
//! Rim edges of a ball window are sampled on the sphere.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::evolver::mesh::{Tag, TaggedMesh, MIN_TRIANGLE_AREA};
use crate::geom::v3::{self, V3};

/// Heights below this value are snapped onto Γ.
pub const GAMMA_SNAP: f64 = 1e-12;
/// Tolerance for recognising window-boundary vertices.
pub const WINDOW_TOL: f64 = 1e-9;

/// A polygonal face of a 2-complex.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFace {
    pub pts: Vec<V3>,
    /// `arc[i]` marks the edge `pts[i] → pts[i+1]` as a great-circle arc on
    /// the window sphere.
    pub arc: Vec<bool>,
    /// Optional fan centre; defaults to the vertex average.
    pub center: Option<V3>,
    pub label: String,
}

impl PolyFace {
    pub fn polygon(label: impl Into<String>, pts: Vec<V3>) -> Self {
        let n = pts.len();
        Self { pts, arc: vec![false; n], center: None, label: label.into() }
    }
}

/// Half-space {x : n·x ≤ c}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub n: V3,
    pub c: f64,
}

/// The bounded region in which a complex is realised.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// Ball of the given radius about the origin.
    Ball(f64),
    /// Intersection of half-spaces (Γ is never one of them).
    Polytope(Vec<HalfSpace>),
}

impl Region {
    /// Whether `p` lies on the region boundary.
    pub fn on_boundary(&self, p: V3) -> bool {
        match self {
            Region::Ball(r) => v3::norm(p) >= r * (1.0 - WINDOW_TOL),
            Region::Polytope(hs) => hs.iter().any(|h| (v3::dot(h.n, p) - h.c).abs() <= WINDOW_TOL),
        }
    }
}

/// Sutherland–Hodgman clipping of a planar polygon by a half-space.
pub fn clip_polygon(poly: &[V3], h: &HalfSpace) -> Vec<V3> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let da = v3::dot(h.n, a) - h.c;
        let db = v3::dot(h.n, b) - h.c;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            out.push(v3::lerp(a, b, da / (da - db)));
        }
    }
    dedup_ring(out)
}

/// Remove consecutive (cyclically) coincident points.
pub fn dedup_ring(pts: Vec<V3>) -> Vec<V3> {
    let mut out: Vec<V3> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q| v3::norm(v3::sub(p, *q)) > 1e-13) {
            out.push(p);
        }
    }
    while out.len() > 1 && v3::norm(v3::sub(out[0], *out.last().unwrap())) <= 1e-13 {
        out.pop();
    }
    out
}

/// Clip a polygon by every half-space of a list.
pub fn clip_all(poly: &[V3], hs: &[HalfSpace]) -> Vec<V3> {
    let mut p = poly.to_vec();
    for h in hs {
        if p.len() < 3 {
            return Vec::new();
        }
        p = clip_polygon(&p, h);
    }
    if p.len() < 3 {
        Vec::new()
    } else {
        p
    }
}

/// Area of a planar polygon in ℝ³ (vector area formula).
pub fn polygon_area(poly: &[V3]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = [0.0; 3];
    for i in 0..poly.len() {
        s = v3::add(s, v3::cross(poly[i], poly[(i + 1) % poly.len()]));
    }
    0.5 * v3::norm(s)
}

/// Spherical linear interpolation between two directions of equal norm `r`.
pub fn slerp(a: V3, b: V3, t: f64, r: f64) -> V3 {
    let ang = v3::angle(a, b);
    if ang < 1e-15 {
        return a;
    }
    let s = ang.sin();
    let wa = ((1.0 - t) * ang).sin() / s;
    let wb = (t * ang).sin() / s;
    v3::scale(v3::normalize(v3::add(v3::scale(a, wa), v3::scale(b, wb))), r)
}

/// Accumulates vertices with positional de-duplication.
struct VertexPool {
    pts: Vec<V3>,
    index: HashMap<[i64; 3], usize>,
}

impl VertexPool {
    fn key(p: V3) -> [i64; 3] {
        [(p[0] * 1e9).round() as i64, (p[1] * 1e9).round() as i64, (p[2] * 1e9).round() as i64]
    }

    fn get(&mut self, mut p: V3) -> usize {
        if p[2].abs() < GAMMA_SNAP {
            p[2] = 0.0;
        }
        let k = Self::key(p);
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        self.pts.push(p);
        self.index.insert(k, self.pts.len() - 1);
        self.pts.len() - 1
    }
}

/// Point at fraction k/res along segment (a, b), computed from the
/// lexicographically smaller endpoint so that shared edges agree bitwise.
fn edge_point(a: V3, b: V3, k: usize, res: usize) -> V3 {
    if k == 0 {
        return a;
    }
    if k == res {
        return b;
    }
    if a.partial_cmp(&b) == Some(std::cmp::Ordering::Greater) {
        return v3::lerp(b, a, (res - k) as f64 / res as f64);
    }
    v3::lerp(a, b, k as f64 / res as f64)
}

/// Triangulate a list of faces into a tagged mesh.
///
/// Arc edges are first split into chords of at most `max_chord` radians,
/// every fan triangle is refined `res` times per side, and rim samples are
/// projected back onto the sphere of radius `rim_radius`.
pub fn triangulate(faces: &[PolyFace], res: usize, region: &Region, max_chord: f64) -> Result<TaggedMesh> {
    if res < 1 {
        return Err(Error::Domain("resolution must be at least 1".into()));
    }
    let rim_radius = match region {
        Region::Ball(r) => Some(*r),
        Region::Polytope(_) => None,
    };
    let mut pool = VertexPool { pts: Vec::new(), index: HashMap::new() };
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for face in faces {
        // Expand arc edges into chords.
        let mut ring: Vec<(V3, bool)> = Vec::new();
        let n = face.pts.len();
        for i in 0..n {
            let a = face.pts[i];
            let b = face.pts[(i + 1) % n];
            let is_arc = face.arc.get(i).copied().unwrap_or(false);
            if is_arc {
                let r = rim_radius.ok_or_else(|| Error::Configuration("arc edge outside a ball window".into()))?;
                let k = ((v3::angle(a, b) / max_chord).ceil() as usize).max(1);
                for j in 0..k {
                    ring.push((slerp(a, b, j as f64 / k as f64, r), true));
                }
            } else {
                ring.push((a, false));
            }
        }
        let m = ring.len();
        if m < 3 {
            continue;
        }
        let c = face.center.unwrap_or_else(|| v3::scale(ring.iter().fold([0.0; 3], |s, (p, _)| v3::add(s, *p)), 1.0 / m as f64));
        for i in 0..m {
            let (a, arc_edge) = ring[i];
            let b = ring[(i + 1) % m].0;
            if v3::tri_area(c, a, b) <= MIN_TRIANGLE_AREA {
                continue;
            }
            // Grid point (i, j) = c + (a − c) i/res + (b − c) j/res.
            let mut ids = vec![vec![0usize; res + 1]; res + 1];
            for ii in 0..=res {
                for jj in 0..=(res - ii) {
                    let p = if jj == 0 {
                        edge_point(c, a, ii, res)
                    } else if ii == 0 {
                        edge_point(c, b, jj, res)
                    } else if ii + jj == res {
                        let q = edge_point(a, b, jj, res);
                        match (arc_edge, rim_radius) {
                            (true, Some(r)) => v3::scale(v3::normalize(q), r),
                            _ => q,
                        }
                    } else {
                        v3::add(c, v3::add(v3::scale(v3::sub(a, c), ii as f64 / res as f64), v3::scale(v3::sub(b, c), jj as f64 / res as f64)))
                    };
                    ids[ii][jj] = pool.get(p);
                }
            }
            for ii in 0..res {
                for jj in 0..(res - ii) {
                    tris.push([ids[ii][jj], ids[ii + 1][jj], ids[ii][jj + 1]]);
                    if ii + jj + 1 < res {
                        tris.push([ids[ii + 1][jj], ids[ii + 1][jj + 1], ids[ii][jj + 1]]);
                    }
                }
            }
        }
    }
    let vertices = pool.pts;
    let tags = vertices
        .iter()
        .map(|p| {
            if region.on_boundary(*p) {
                Tag::Pinned
            } else if p[2] == 0.0 {
                Tag::OnGamma
            } else {
                Tag::Free
            }
        })
        .collect();
    let tris = tris.into_iter().filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]).collect();
    TaggedMesh::new(vertices, tags, tris)
}
