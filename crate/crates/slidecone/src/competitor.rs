//! The push-down competitor family M_c of the half tetrahedral cone T₊.
//!
//! M_c replaces the apex of T₊ by a horizontal equilateral triangle on Γ of
//! apothem x₀ and bends the three sloping folds along the profile
//! z(x) = x/√2 + c·log(3x/√2), which meets the top face of the window at
//! z(√2/3) = 1/3 for every c. The vertical folds fill 0 ≤ z ≤ z(x).

use serde::{Deserialize, Serialize};

use crate::cones::{self, ConeSpec, Window};
use crate::energy::EnergyReport;
use crate::error::{check_alpha, Error, Result};
use crate::evolver::mesh::TaggedMesh;
use crate::geom::v3::{self, V3};
use crate::meshing::{self, PolyFace};
use crate::quadrature::integrate;

/// Apothem of the top face of the window (upper end of the profile).
pub const X_TOP: f64 = std::f64::consts::SQRT_2 / 3.0;
/// Absolute accuracy of the energy quadratures.
pub const QUAD_TOL: f64 = 1e-10;
/// Search interval of log(3x₀/√2) used by [`find_beating_competitor`].
pub const LOG_SEARCH_MIN: f64 = -340.0;

fn sqrt2() -> f64 {
    std::f64::consts::SQRT_2
}

/// log(3x/√2), the logarithm appearing in the profile.
fn log_arg(x: f64) -> f64 {
    (3.0 * x / sqrt2()).ln()
}

fn check_x0(x0: f64) -> Result<()> {
    if !(x0 > 0.0 && x0 < X_TOP) {
        return Err(Error::Domain(format!("x0 = {x0} must lie in (0, sqrt(2)/3)")));
    }
    Ok(())
}

/// Profile z(x) = x/√2 + c·log(3x/√2).
pub fn profile_z(x: f64, c: f64) -> Result<f64> {
    if !(x > 0.0) || !(c >= 0.0) {
        return Err(Error::Domain(format!("profile needs x > 0 and c >= 0, got x = {x}, c = {c}")));
    }
    Ok(x / sqrt2() + c * log_arg(x))
}

/// Derivative z′(x) = 1/√2 + c/x.
pub fn profile_dz(x: f64, c: f64) -> Result<f64> {
    if !(x > 0.0) || !(c >= 0.0) {
        return Err(Error::Domain(format!("profile needs x > 0 and c >= 0, got x = {x}, c = {c}")));
    }
    Ok(1.0 / sqrt2() + c / x)
}

/// The log-coefficient c making x₀ the root of the profile.
pub fn c_from_x0(x0: f64) -> Result<f64> {
    check_x0(x0)?;
    Ok(-x0 / (sqrt2() * log_arg(x0)))
}

/// A member of the competitor family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub c: f64,
    pub x0: f64,
}

impl ProfileCurve {
    pub fn from_x0(x0: f64) -> Result<Self> {
        Ok(Self { c: c_from_x0(x0)?, x0 })
    }

    pub fn z(&self, x: f64) -> Result<f64> {
        profile_z(x, self.c)
    }
}

/// Energy of M_c by quadrature, with the closed-form upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompetitorEnergy {
    pub x0: f64,
    pub c: f64,
    /// Quadrature split of the competitor energy.
    pub report: EnergyReport,
    /// Closed-form upper bound of J_α(M_c).
    pub bound: f64,
}

/// Area of one bent fold: ∫ 2√3·x·√(1 + z′²) dx over [x₀, √2/3].
pub fn bent_fold_area(x0: f64) -> Result<f64> {
    let c = c_from_x0(x0)?;
    integrate(|x| 2.0 * 3f64.sqrt() * x * (1.0 + (1.0 / sqrt2() + c / x).powi(2)).sqrt(), x0, X_TOP, QUAD_TOL)
}

/// Area of one vertical fold: ∫ 2·z dx over [x₀, √2/3].
pub fn vertical_fold_area(x0: f64) -> Result<f64> {
    let c = c_from_x0(x0)?;
    integrate(|x| 2.0 * (x / sqrt2() + c * log_arg(x)), x0, X_TOP, QUAD_TOL)
}

/// Closed-form bound of J_α(M_c) obtained from the pointwise inequality
/// √(3x²/2 + √2cx + c²) ≤ √(3/2)x + c/√3 + √(2/3)c²/x.
pub fn energy_bound(x0: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let c = c_from_x0(x0)?;
    let prim = |x: f64| sqrt2() * x * x + sqrt2() * c * c * log_arg(x) + c * x * log_arg(x);
    Ok(6.0 * (prim(X_TOP) - prim(x0)) + alpha * 3.0 * 3f64.sqrt() * x0 * x0)
}

/// J_α(M_c) = 3H²(B) + 3H²(V) + α·3√3·x₀².
pub fn competitor_energy(x0: f64, alpha: f64) -> Result<CompetitorEnergy> {
    check_alpha(alpha)?;
    let c = c_from_x0(x0)?;
    let off = 3.0 * bent_fold_area(x0)? + 3.0 * vertical_fold_area(x0)?;
    let on = 3.0 * 3f64.sqrt() * x0 * x0;
    Ok(CompetitorEnergy { x0, c, report: EnergyReport::new(off, on, alpha)?, bound: energy_bound(x0, alpha)? })
}

/// Bracket of the closed-form gap as a function of L = log(3x₀/√2) < 0:
/// gap = 3x₀²·(−√2 − √2/L + α√3).
pub fn gap_bracket(log_arg: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(log_arg < 0.0) {
        return Err(Error::Domain(format!("log(3 x0 / sqrt 2) = {log_arg} must be negative")));
    }
    Ok(-sqrt2() - sqrt2() / log_arg + alpha * 3f64.sqrt())
}

/// Closed-form gap J_α(M_c) − J_α(T₊) (upper-bound version).
pub fn energy_gap(x0: f64, alpha: f64) -> Result<f64> {
    check_x0(x0)?;
    Ok(3.0 * x0 * x0 * gap_bracket(log_arg(x0), alpha)?)
}

/// The α at which the gap of a fixed x₀ vanishes: √(2/3)·(1 + 1/L).
pub fn zero_gap_alpha(x0: f64) -> Result<f64> {
    check_x0(x0)?;
    Ok((2.0f64 / 3.0).sqrt() * (1.0 + 1.0 / log_arg(x0)))
}

/// Exact window energy of T₊ (independent of α since T₊ does not touch Γ
/// in a set of positive area).
pub fn cone_energy() -> f64 {
    4.0 * sqrt2() / 3.0
}

/// Golden-section minimisation on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// x₀ minimising the closed-form gap, returned when that gap is negative.
///
/// The search runs over L = log(3x₀/√2) ∈ [−340, 0) so that x₀² stays
/// representable; as α approaches √(2/3) from below the optimal x₀ becomes
/// smaller than any double, see [`beats_cone`] for the exact predicate.
pub fn find_beating_competitor(alpha: f64) -> Result<Option<f64>> {
    check_alpha(alpha)?;
    let to_x0 = |l: f64| sqrt2() / 3.0 * l.exp();
    let gap = |l: f64| energy_gap(to_x0(l), alpha).unwrap_or(f64::INFINITY);
    let l = golden_min(gap, LOG_SEARCH_MIN, -1e-9, 200);
    let x0 = to_x0(l);
    Ok(if energy_gap(x0, alpha)? < 0.0 { Some(x0) } else { None })
}

/// Whether some member of the family beats the cone: the bracket tends to
/// α√3 − √2 from above as x₀ → 0, so it suffices to test a very negative L.
pub fn beats_cone(alpha: f64) -> Result<bool> {
    Ok(gap_bracket(-1e15, alpha)? < 0.0)
}

/// One row of a competitor sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x0: f64,
    pub c: f64,
    pub alpha: f64,
    pub gap_closed_form: f64,
    pub j_quadrature: f64,
}

/// Evaluate the family on `points` values of x₀ spaced geometrically in
/// [1e−4, 0.4].
pub fn sweep(alpha: f64, points: usize) -> Result<Vec<SweepRow>> {
    check_alpha(alpha)?;
    let (lo, hi) = (1e-4f64.ln(), 0.4f64.ln());
    (0..points.max(1))
        .map(|k| {
            let t = if points > 1 { k as f64 / (points - 1) as f64 } else { 0.0 };
            let x0 = (lo + t * (hi - lo)).exp();
            let e = competitor_energy(x0, alpha)?;
            Ok(SweepRow { x0, c: e.c, alpha, gap_closed_form: energy_gap(x0, alpha)?, j_quadrature: e.report.j_alpha })
        })
        .collect()
}

/// Horizontal direction of the k-th top vertex of T₊.
fn corner_dir(k: usize) -> V3 {
    let v = cones::t_plus_vertices()[k % 3];
    v3::normalize([v[0], v[1], 0.0])
}

/// Triangulated M_c in the window of T₊, with `levels` profile levels
/// (graded towards x₀) and `resolution` refinement per polygon.
///
/// `x0 = 0` gives the cone T₊ itself on the same rim.
pub fn competitor_mesh(x0: f64, levels: usize, resolution: usize) -> Result<TaggedMesh> {
    let curve = if x0 == 0.0 { None } else { Some(ProfileCurve::from_x0(x0)?) };
    if levels < 1 {
        return Err(Error::Domain("at least one profile level is required".into()));
    }
    let xs: Vec<f64> = (0..=levels).map(|j| x0 + (X_TOP - x0) * (j as f64 / levels as f64).powf(1.5)).collect();
    let mut zs = Vec::with_capacity(xs.len());
    for (j, x) in xs.iter().enumerate() {
        zs.push(match curve {
            _ if j == 0 => 0.0,
            _ if j == levels => 1.0 / 3.0,
            None => x / sqrt2(),
            Some(c) => c.z(*x)?.max(0.0),
        });
    }
    let at = |k: usize, j: usize| v3::add(v3::scale(corner_dir(k), 2.0 * xs[j]), [0.0, 0.0, zs[j]]);
    let mut faces = Vec::new();
    let base: Vec<V3> = (0..3).map(|k| at(k, 0)).collect();
    if curve.is_some() {
        faces.push(PolyFace::polygon(format!("T{}", cones::GAMMA_LABEL), base));
    }
    for k in 0..3 {
        for j in 0..levels {
            let strip = meshing::dedup_ring(vec![at(k, j), at(k + 1, j), at(k + 1, j + 1), at(k, j + 1)]);
            faces.push(PolyFace::polygon(format!("B{}", k + 1), strip));
            let foot = |jj: usize| v3::scale(corner_dir(k), 2.0 * xs[jj]);
            let quad = meshing::dedup_ring(vec![foot(j), foot(j + 1), at(k, j + 1), at(k, j)]);
            faces.push(PolyFace::polygon(format!("V{}", k + 1), quad));
        }
    }
    let region = cones::window_region(&ConeSpec::TPlus, Window::Simplex)?;
    meshing::triangulate(&faces, resolution, &region, 1.0)
}
