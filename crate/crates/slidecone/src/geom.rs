//! Vector primitives, canonical regular simplices and the tilt rotation.
//!
//! Points in arbitrary dimension use [`VecN`]; the three-dimensional mesh
//! code works on plain `[f64; 3]` arrays through the helpers in [`v3`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structural tolerance used for simplex and rotation invariants.
pub const STRUCT_TOL: f64 = 1e-12;

/// A point or direction in ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VecN {
    pub coords: Vec<f64>,
}

impl VecN {
    /// Build a vector, rejecting empty or non-finite input.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidDimension { n: 0, reason: "vector length must be at least 1" });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("vector coordinates must be finite".into()));
        }
        Ok(Self { coords })
    }

    /// The zero vector of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { coords: vec![0.0; n] }
    }

    /// The `k`-th standard basis vector (0-based) of length `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[k] = 1.0;
        v
    }

    pub fn from3(a: [f64; 3]) -> Self {
        Self { coords: a.to_vec() }
    }

    /// The first three coordinates as an array (missing ones are zero).
    pub fn to3(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            *o = *c;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    /// Unit vector in the same direction (the zero vector is returned as is).
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / n)
        }
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// A regular simplex with `n + 1` unit vertices centred at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    pub n: usize,
    pub vertices: Vec<VecN>,
}

impl Simplex {
    /// Vertex `i` using 1-based numbering.
    pub fn p(&self, i: usize) -> &VecN {
        &self.vertices[i - 1]
    }

    /// Sum of the vertices (zero for a centred simplex).
    pub fn barycenter(&self) -> VecN {
        self.vertices.iter().fold(VecN::zeros(self.n), |acc, v| acc.add(v)).scale(1.0 / (self.n + 1) as f64)
    }
}

/// Canonical unit regular simplex in ℝⁿ.
///
/// Vertex `k ≤ n` has its last non-zero coordinate on the diagonal, with the
/// diagonal entries chosen negative; the coordinates before the diagonal are
/// shared by all later vertices and fixed by the centring condition. The last
/// vertex repeats the shared coordinates and flips the sign of the final one.
pub fn simplex_vertices(n: usize) -> Result<Simplex> {
    if n < 2 {
        return Err(Error::InvalidDimension { n, reason: "a simplex needs n >= 2" });
    }
    // shared[j] is the coordinate j carried by every vertex after the j-th.
    let mut shared = vec![0.0; n];
    let mut vertices = Vec::with_capacity(n + 1);
    let mut prefix_sq: f64 = 0.0;
    for k in 0..n {
        let diag = -(1.0 - prefix_sq).max(0.0).sqrt();
        let mut c = shared[..k].to_vec();
        c.push(diag);
        c.resize(n, 0.0);
        vertices.push(VecN { coords: c });
        shared[k] = -diag / (n - k) as f64;
        prefix_sq += shared[k] * shared[k];
    }
    vertices.push(VecN { coords: shared });
    Ok(Simplex { n, vertices })
}

/// Edge length ℓ = √(2(n+1)/n) of the canonical simplex.
pub fn edge_length(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDimension { n, reason: "edge length needs n >= 2" });
    }
    Ok((2.0 * (n as f64 + 1.0) / n as f64).sqrt())
}

/// Largest |(p_i − p_j)·p_k| over the vertices k ∉ {i, j} (1-based indices).
pub fn edge_orthogonality_defect(n: usize, i: usize, j: usize) -> Result<f64> {
    let s = simplex_vertices(n)?;
    simplex_edge_defect(&s, i, j)
}

/// [`edge_orthogonality_defect`] evaluated on an explicit vertex set.
pub fn simplex_edge_defect(s: &Simplex, i: usize, j: usize) -> Result<f64> {
    let m = s.vertices.len();
    if i < 1 || j <= i || j > m {
        return Err(Error::Index(format!("need 1 <= i < j <= {m}, got i={i}, j={j}")));
    }
    let e = s.p(i).sub(s.p(j));
    Ok((1..=m).filter(|k| *k != i && *k != j).map(|k| e.dot(s.p(k)).abs()).fold(0.0, f64::max))
}

/// A 3×3 orthogonal matrix (rotation, or a reflection when flagged).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation3 {
    pub m: [[f64; 3]; 3],
    /// True for improper (determinant −1) matrices such as `R_x`.
    pub reflection: bool,
}

impl Rotation3 {
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// max |MᵀM − I| entry.
    pub fn orthogonality_defect(&self) -> f64 {
        let m = &self.m;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// The tilt about the y axis: rows (sinβ, 0, cosβ), (0, 1, 0), (−cosβ, 0, sinβ).
pub fn rotation_beta(beta: f64) -> Result<Rotation3> {
    check_beta(beta)?;
    let (s, c) = beta.sin_cos();
    Ok(Rotation3 { m: [[s, 0.0, c], [0.0, 1.0, 0.0], [-c, 0.0, s]], reflection: false })
}

/// Reflection through the yz plane, diag(−1, 1, 1).
pub fn reflection_x() -> Rotation3 {
    Rotation3 { m: [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], reflection: true }
}

/// Reject tilt angles outside [0, π/2].
pub fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && (-STRUCT_TOL..=std::f64::consts::FRAC_PI_2 + STRUCT_TOL).contains(&beta) {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta = {beta} must lie in [0, pi/2]")))
    }
}

/// Small fixed-size vector helpers for the 3-D mesh code.
pub mod v3 {
    pub type V3 = [f64; 3];

    pub fn add(a: V3, b: V3) -> V3 {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }
    pub fn sub(a: V3, b: V3) -> V3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }
    pub fn scale(a: V3, s: f64) -> V3 {
        [a[0] * s, a[1] * s, a[2] * s]
    }
    pub fn dot(a: V3, b: V3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }
    pub fn cross(a: V3, b: V3) -> V3 {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    }
    pub fn norm(a: V3) -> f64 {
        dot(a, a).sqrt()
    }
    pub fn normalize(a: V3) -> V3 {
        let n = norm(a);
        if n == 0.0 {
            a
        } else {
            scale(a, 1.0 / n)
        }
    }
    pub fn lerp(a: V3, b: V3, t: f64) -> V3 {
        [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t]
    }
    pub fn neg(a: V3) -> V3 {
        [-a[0], -a[1], -a[2]]
    }
    /// Area of the triangle (a, b, c).
    pub fn tri_area(a: V3, b: V3, c: V3) -> f64 {
        0.5 * norm(cross(sub(b, a), sub(c, a)))
    }
    /// Angle between two non-zero vectors.
    pub fn angle(a: V3, b: V3) -> f64 {
        let c = norm(cross(a, b));
        c.atan2(dot(a, b))
    }
}
