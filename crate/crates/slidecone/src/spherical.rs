//! Side-length relations of 120° spherical polygons and the symmetric
//! single-pentagon network.
//!
//! A two-dimensional minimal cone meets the unit sphere in a network of
//! great-circle arcs with 120° triple junctions. Equiangular triangles,
//! rectangles and pentagons obey closed-form side relations; the pentagonal
//! network with radial arcs to the equator is built here with a small
//! spherical "turtle" and closed by bisection.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::v3::{self, V3};

/// Tolerance for the bisection solves of this module.
pub const BISECT_TOL: f64 = 1e-13;

/// Side of the equiangular 120° triangle, arccos(−1/3).
pub fn triangle_side() -> f64 {
    (-1.0f64 / 3.0).acos()
}

/// Full rectangle relation: cos b = (3 − 5 cos a)/(5 − 3 cos a).
fn rect_cos(a: f64) -> f64 {
    let c = a.cos();
    (3.0 - 5.0 * c) / (5.0 - 3.0 * c)
}

/// Half-angle form of the rectangle relation:
/// cos(b/2) = 2 sin(a/2) / √(1 + 3 sin²(a/2)).
pub fn rect_side_half_angle(a: f64) -> Result<f64> {
    check_rect_arg(a)?;
    let s = (a / 2.0).sin();
    let ch = 2.0 * s / (1.0 + 3.0 * s * s).sqrt();
    if !(-1.0..=1.0 + 1e-15).contains(&ch) {
        return Err(Error::NoSolution(format!("half-angle rectangle relation out of range at a = {a}")));
    }
    Ok(2.0 * ch.min(1.0).acos())
}

fn check_rect_arg(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 && a <= PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("rectangle side a = {a} must lie in (0, pi]")))
    }
}

/// Adjacent side b of a 120° spherical rectangle with side a.
///
/// The map a ↦ b is an involution; the square fixed point is arccos(1/3).
/// The result is cross-checked against the half-angle form.
pub fn rect_side(a: f64) -> Result<f64> {
    check_rect_arg(a)?;
    let cb = rect_cos(a);
    if !(-1.0..=1.0).contains(&cb) {
        return Err(Error::NoSolution(format!("cos b = {cb} outside [-1, 1] for a = {a}")));
    }
    let b = cb.acos();
    let h = rect_side_half_angle(a)?;
    if (h - b).abs() > 1e-12 * (1.0 + b.abs()) && (h.cos() - cb).abs() > 1e-12 {
        return Err(Error::NoSolution(format!("half-angle form disagrees at a = {a}")));
    }
    Ok(b)
}

/// Side γ of a 120° spherical pentagon opposite the common vertex of the
/// adjacent sides a and b:
/// 2 cos γ = 1/3 + cos a + cos b + cos a cos b − 2 sin a sin b.
///
/// The regular solution is the spherical dodecahedron face, cos γ = √5/3.
pub fn pentagon_side(a: f64, b: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("pentagon sides must be finite".into()));
    }
    let rhs = 0.5 * (1.0 / 3.0 + a.cos() + b.cos() + a.cos() * b.cos() - 2.0 * a.sin() * b.sin());
    if !(-1.0..=1.0).contains(&rhs) {
        return Err(Error::NoSolution(format!("cos gamma = {rhs} outside [-1, 1] for a = {a}, b = {b}")));
    }
    Ok(rhs.acos())
}

/// Kind of network node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    /// Interior triple junction.
    Junction,
    /// Endpoint on the equator, with the angle between the arc and Γ.
    Equator { contact_angle: f64, contact: String },
}

/// Node of an arc network on the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub position: V3,
    #[serde(flatten)]
    pub kind: NodeKind,
}

/// Great-circle arc between two nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub name: String,
    pub length: f64,
    pub endpoints: (usize, usize),
}

/// A network of great-circle arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcNet {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
}

impl ArcNet {
    /// Length of the arc with the given name.
    pub fn length(&self, name: &str) -> Option<f64> {
        self.arcs.iter().find(|a| a.name == name).map(|a| a.length)
    }

    /// Check the structural invariants: junctions have exactly three arcs
    /// and all lengths lie in (0, π].
    pub fn validate(&self) -> Result<()> {
        for a in &self.arcs {
            if !(a.length > 0.0 && a.length <= PI) {
                return Err(Error::Structural(format!("arc {} has length {}", a.name, a.length)));
            }
        }
        for n in &self.nodes {
            let deg = self.arcs.iter().filter(|a| a.endpoints.0 == n.id || a.endpoints.1 == n.id).count();
            let want = if matches!(n.kind, NodeKind::Junction) { 3 } else { 1 };
            if deg != want {
                return Err(Error::Structural(format!("node {} has {} arcs, expected {}", n.id, deg, want)));
            }
        }
        Ok(())
    }
}

/// A point moving on the unit sphere with a unit tangent heading.
#[derive(Debug, Clone, Copy)]
struct Turtle {
    p: V3,
    h: V3,
}

impl Turtle {
    fn advance(self, s: f64) -> Turtle {
        let (sn, cs) = s.sin_cos();
        Turtle { p: v3::add(v3::scale(self.p, cs), v3::scale(self.h, sn)), h: v3::sub(v3::scale(self.h, cs), v3::scale(self.p, sn)) }
    }

    /// Rotate the heading counterclockwise (seen from outside) by `phi`.
    fn turn(self, phi: f64) -> Turtle {
        let (sn, cs) = phi.sin_cos();
        Turtle { p: self.p, h: v3::add(v3::scale(self.h, cs), v3::scale(v3::cross(self.p, self.h), sn)) }
    }
}

/// Generic bisection for a sign change of `f` on [lo, hi].
pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < BISECT_TOL {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Distance travelled by a turtle until it first reaches the equator,
/// found by bisection on the height along the great circle.
fn distance_to_equator(t: Turtle) -> Result<f64> {
    if t.p[2] <= 0.0 {
        return Err(Error::Domain("junction lies on or below the equator".into()));
    }
    // z(s) = p_z cos s + h_z sin s changes sign on (0, π).
    bisect(0.0, PI, |s| t.advance(s).p[2]).ok_or_else(|| Error::NoSolution("radial arc never reaches the equator".into()))
}

/// Radial arc from a junction: length to the equator, via bisection.
///
/// This is the sub-operation δ(β, γ) of the pentagon family: once the 120°
/// condition fixes the heading at the junction, the arc length is the first
/// zero of the height along the great circle.
pub fn radial_arc_length(position: V3, heading: V3) -> Result<f64> {
    distance_to_equator(Turtle { p: v3::normalize(position), h: v3::normalize(heading) })
}

fn contact_kind(angle: f64) -> String {
    if (angle - FRAC_PI_2).abs() < 1e-9 {
        "orthogonal".into()
    } else {
        "optimal_angle".into()
    }
}

fn junction_defect(p: V3, dirs: [V3; 3]) -> f64 {
    // Tangent directions projected into the tangent plane at p.
    let t: Vec<V3> = dirs.iter().map(|d| v3::normalize(v3::sub(*d, v3::scale(p, v3::dot(*d, p))))).collect();
    let mut worst: f64 = 0.0;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        worst = worst.max((v3::angle(t[i], t[j]) - 2.0 * FRAC_PI_3).abs());
    }
    worst
}

/// Symmetric single-pentagon network with five radial arcs.
///
/// `beta` is the length of the radial arc meeting the equator orthogonally
/// (the latitude of its junction A) and `gamma` the length of the two
/// pentagon sides at A, which are equal by the mirror symmetry. Arcs are
/// named `beta`, `gamma`, `gamma_prime` (sides at A), `delta`, `delta_prime`
/// (radial arcs at the far ends B, B′ of the γ sides), `zeta`, `zeta_prime`
/// (sides B–C, B′–C′), `epsilon` (side C–C′) and `eta`, `eta_prime` (radial
/// arcs at C, C′).
pub fn pentagon_family(beta: f64, gamma: f64) -> Result<ArcNet> {
    if !(beta.is_finite() && beta > 0.0 && beta < FRAC_PI_2) {
        return Err(Error::Domain(format!("beta = {beta} must lie in (0, pi/2)")));
    }
    if !(gamma.is_finite() && gamma > 0.0 && gamma < PI) {
        return Err(Error::Domain(format!("gamma = {gamma} must lie in (0, pi)")));
    }
    let (sb, cb) = beta.sin_cos();
    let a_pos = [0.0, -cb, sb];
    let down = [0.0, -sb, -cb];
    let up = v3::neg(down);
    // Leave A at 60° clockwise from the upward meridian; interior on the left.
    let start = Turtle { p: a_pos, h: up }.turn(-FRAC_PI_3);
    let b_arrive = start.advance(gamma);
    if b_arrive.p[2] <= 0.0 {
        return Err(Error::Configuration("junction B lies below the equator".into()));
    }
    let b_radial = b_arrive.turn(-FRAC_PI_3);
    let b_side = b_arrive.turn(FRAC_PI_3);
    // Closure: after side ζ and a 60° turn, the heading must follow the
    // great circle through C and its mirror image C′.
    let closure = |zeta: f64| -> f64 {
        let c = b_side.advance(zeta);
        let cm = [-c.p[0], c.p[1], c.p[2]];
        let n = v3::cross(c.p, cm);
        let h = c.turn(FRAC_PI_3).h;
        if v3::norm(n) < 1e-14 {
            return f64::NAN;
        }
        // Signed: heading must point toward the mirror (negative x side).
        v3::dot(h, v3::normalize(n))
    };
    let zeta = scan_bisect(1e-6, PI - 1e-6, 400, &closure, |z| {
        let c = b_side.advance(z);
        c.turn(FRAC_PI_3).h[0] < 0.0 && c.p[0] > 0.0
    })
    .ok_or_else(|| Error::NoSolution(format!("no 120-degree closure for gamma = {gamma}")))?;
    let c_arrive = b_side.advance(zeta);
    let c_pos = c_arrive.p;
    if c_pos[2] <= 0.0 {
        return Err(Error::Configuration("junction C lies below the equator".into()));
    }
    let c_radial = c_arrive.turn(-FRAC_PI_3);
    let cm = [-c_pos[0], c_pos[1], c_pos[2]];
    let epsilon = v3::angle(c_pos, cm);

    let delta = distance_to_equator(b_radial)?;
    let eta = distance_to_equator(c_radial)?;
    let b_foot = b_radial.advance(delta);
    let c_foot = c_radial.advance(eta);

    let mirror = |p: V3| [-p[0], p[1], p[2]];
    let b_pos = b_arrive.p;
    let junctions = [a_pos, b_pos, mirror(b_pos), c_pos, cm];
    // Closure check at every junction.
    let checks = [
        (a_pos, [down, b_pos, mirror(b_pos)]),
        (b_pos, [a_pos, c_pos, b_foot.p]),
        (c_pos, [b_pos, cm, c_foot.p]),
    ];
    for (p, nbrs) in checks {
        let dirs = nbrs.map(|q| v3::sub(q, v3::scale(p, v3::dot(q, p))));
        let d = junction_defect(p, dirs);
        if d > 1e-8 {
            return Err(Error::NoSolution(format!("120-degree closure violated by {d:e}")));
        }
    }

    let contact = |t: Turtle| t.h[2].abs().min(1.0).asin();
    let feet = [
        ([0.0, -1.0, 0.0], FRAC_PI_2),
        (b_foot.p, contact(b_foot)),
        (mirror(b_foot.p), contact(b_foot)),
        (c_foot.p, contact(c_foot)),
        (mirror(c_foot.p), contact(c_foot)),
    ];
    let mut nodes = Vec::new();
    for (i, p) in junctions.iter().enumerate() {
        nodes.push(Node { id: i, position: *p, kind: NodeKind::Junction });
    }
    for (i, (p, ang)) in feet.iter().enumerate() {
        nodes.push(Node { id: 5 + i, position: *p, kind: NodeKind::Equator { contact_angle: *ang, contact: contact_kind(*ang) } });
    }
    let arc = |name: &str, length: f64, a: usize, b: usize| Arc { name: name.into(), length, endpoints: (a, b) };
    let arcs = vec![
        arc("beta", beta, 0, 5),
        arc("gamma", gamma, 0, 1),
        arc("gamma_prime", v3::angle(a_pos, mirror(b_pos)), 0, 2),
        arc("delta", delta, 1, 6),
        arc("delta_prime", v3::angle(mirror(b_pos), mirror(b_foot.p)), 2, 7),
        arc("zeta", zeta, 1, 3),
        arc("zeta_prime", v3::angle(mirror(b_pos), cm), 2, 4),
        arc("epsilon", epsilon, 3, 4),
        arc("eta", eta, 3, 8),
        arc("eta_prime", v3::angle(cm, mirror(c_foot.p)), 4, 9),
    ];
    let net = ArcNet { nodes, arcs };
    net.validate()?;
    Ok(net)
}

/// Scan [lo, hi] in `n` steps for the first sign change of `f` on which
/// `accept` holds at the midpoint, then bisect it.
fn scan_bisect(lo: f64, hi: f64, n: usize, f: &impl Fn(f64) -> f64, accept: impl Fn(f64) -> bool) -> Option<f64> {
    let step = (hi - lo) / n as f64;
    let mut a = lo;
    let mut fa = f(a);
    for k in 1..=n {
        let b = lo + step * k as f64;
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && fa.signum() != fb.signum() && accept(0.5 * (a + b)) {
            return bisect(a, b, f);
        }
        a = b;
        fa = fb;
    }
    None
}

/// Grid scan of the (β, γ) parameter window: each entry records whether
/// [`pentagon_family`] succeeds at that point.
pub fn pentagon_window(steps: usize) -> Vec<(f64, f64, bool)> {
    let mut out = Vec::with_capacity(steps * steps);
    for i in 1..steps {
        for j in 1..steps {
            let b = FRAC_PI_2 * i as f64 / steps as f64;
            let g = PI * j as f64 / steps as f64;
            out.push((b, g, pentagon_family(b, g).is_ok()));
        }
    }
    out
}
