//! One-dimensional sliding cones in the upper half-plane.
//!
//! The boundary Γ is the horizontal axis. A cone is a finite union of
//! half-lines ("branches") from the origin, each described by its angle from
//! the positive Γ direction. This module provides the five optimal profiles,
//! the contact-point minimisation for a tilted branch joined to Γ, the
//! closed-form competitor energies and the branch-count classification.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, Error, Result};

/// Tolerance used when comparing branch angles.
pub const ANGLE_TOL: f64 = 1e-9;

/// The optimal one-dimensional profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "theta", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Profile1D {
    /// The whole boundary line.
    Gamma,
    /// The vertical half-line.
    Vertical,
    /// The boundary line together with the vertical half-line.
    GammaPlusVertical,
    /// A half-line at angle θ joined to the half of Γ on the opposite side.
    TiltedPlusHorizontal(f64),
    /// Two half-lines at angles θ and π − θ.
    VCone(f64),
}

impl Profile1D {
    /// Validate the angle parameter, if any.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Profile1D::TiltedPlusHorizontal(t) | Profile1D::VCone(t) => {
                if t.is_finite() && (0.0..=FRAC_PI_2).contains(&t) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("profile angle {t} must lie in [0, pi/2]")))
                }
            }
            _ => Ok(()),
        }
    }

    /// The branches making up the profile.
    pub fn branches(&self) -> Vec<Branch1D> {
        let g = |angle| Branch1D { angle, in_gamma: true };
        let f = |angle| Branch1D { angle, in_gamma: false };
        match *self {
            Profile1D::Gamma => vec![g(0.0), g(PI)],
            Profile1D::Vertical => vec![f(FRAC_PI_2)],
            Profile1D::GammaPlusVertical => vec![g(0.0), f(FRAC_PI_2), g(PI)],
            Profile1D::TiltedPlusHorizontal(t) => vec![f(t), g(PI)],
            Profile1D::VCone(t) => vec![f(t), f(PI - t)],
        }
    }

    /// One-dimensional energy J_α of the profile inside the unit half-disc.
    pub fn energy_in_unit_disc(&self, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        self.validate()?;
        Ok(self.branches().iter().map(|b| if b.in_gamma { alpha } else { 1.0 }).sum())
    }
}

/// A half-line from the origin in the closed upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Branch1D {
    /// Angle in radians from the positive Γ direction, in [0, π].
    pub angle: f64,
    /// Whether the branch lies in Γ.
    pub in_gamma: bool,
}

impl Branch1D {
    /// Construct a branch; angles at 0 or π are always treated as lying in Γ.
    pub fn new(angle: f64, in_gamma: bool) -> Result<Self> {
        let b = Branch1D { angle, in_gamma };
        b.normalized()
    }

    fn normalized(self) -> Result<Self> {
        if !self.angle.is_finite() || self.angle < -ANGLE_TOL || self.angle > PI + ANGLE_TOL {
            return Err(Error::Domain(format!("branch angle {} outside [0, pi]", self.angle)));
        }
        if self.angle.abs() <= ANGLE_TOL {
            return Ok(Branch1D { angle: 0.0, in_gamma: true });
        }
        if (self.angle - PI).abs() <= ANGLE_TOL {
            return Ok(Branch1D { angle: PI, in_gamma: true });
        }
        if self.in_gamma {
            return Err(Error::Domain(format!("branch at angle {} cannot lie in the boundary", self.angle)));
        }
        Ok(self)
    }
}

/// θ_α = arccos α, the optimal contact angle with Γ.
pub fn theta_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(alpha.acos())
}

fn check_theta_open(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 && theta <= FRAC_PI_2 + ANGLE_TOL {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta = {theta} must lie in (0, pi/2]")))
    }
}

/// Energy of the segment of Γ from −1 to x joined to the point (cosθ, sinθ):
/// α(1 + x) + √((x − cosθ)² + sin²θ).
pub fn join_energy(x: f64, theta: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !x.is_finite() || x <= -1.0 || x > theta.cos() + ANGLE_TOL {
        return Err(Error::Domain(format!("contact point x = {x} must lie in (-1, cos theta]")));
    }
    let (s, c) = theta.sin_cos();
    Ok(alpha * (1.0 + x) + ((x - c).powi(2) + s * s).sqrt())
}

/// First derivative of [`join_energy`] with respect to x.
pub fn join_energy_dx(x: f64, theta: f64, alpha: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    alpha + (x - c) / ((x - c).powi(2) + s * s).sqrt()
}

/// Second derivative of [`join_energy`] with respect to x.
pub fn join_energy_dxx(x: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    s * s / ((x - c).powi(2) + s * s).powf(1.5)
}

/// Minimiser of [`join_energy`] over the admissible interval (−1, cosθ].
///
/// The energy is convex in x; the critical point is x = cosθ − α sinθ/√(1−α²).
/// When it falls outside the interval the corresponding endpoint is returned
/// (the infimum at −1 is reported as −1 itself).
pub fn optimal_contact(theta: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if theta == 0.0 {
        return Err(Error::Domain("theta = 0 is degenerate: the branch lies in the boundary".into()));
    }
    check_theta_open(theta)?;
    let (s, c) = theta.sin_cos();
    if alpha >= 1.0 {
        return Ok(-1.0);
    }
    let root = c - alpha * s / (1.0 - alpha * alpha).sqrt();
    Ok(root.clamp(-1.0, c))
}

/// Energy in the unit half-disc of the Y-shaped competitor obtained by
/// pinching the two branches of V_θ together: 2 sin(θ + π/3) for θ ≥ π/6,
/// otherwise no Y fits and the V itself (energy 2) is returned.
pub fn pinch_energy(theta: f64) -> Result<f64> {
    check_theta_open(theta)?;
    if theta >= FRAC_PI_6 {
        Ok(2.0 * (theta + FRAC_PI_3).sin())
    } else {
        Ok(2.0)
    }
}

/// Energy in the unit half-disc of the competitor obtained by pushing the
/// vertex of V_θ down to Γ and opening a horizontal segment [−t, t].
///
/// The optimal half-width is t* = cosθ − sinθ·α/√(1−α²), clamped at zero;
/// at t* > 0 the energy equals 2αt* + 2 sinθ / sin θ_α.
pub fn push_down_energy(theta: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_theta_open(theta)?;
    let (s, c) = theta.sin_cos();
    let t = if alpha >= 1.0 { 0.0 } else { (c - s * alpha / (1.0 - alpha * alpha).sqrt()).max(0.0) };
    Ok(2.0 * alpha * t + 2.0 * ((c - t).powi(2) + s * s).sqrt())
}

/// Outcome of the classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub minimal: bool,
    pub reason: String,
    /// Set when a different configuration has exactly the same energy.
    pub tie: bool,
}

fn verdict(minimal: bool, reason: impl Into<String>) -> Verdict {
    Verdict { minimal, reason: reason.into(), tie: false }
}

/// Decide sliding minimality of a one-dimensional cone from its branches.
///
/// * one branch: minimal iff vertical;
/// * two branches: both in Γ (the line), one in Γ with the other meeting Γ
///   at θ_α on the far side, or a symmetric V_θ with θ_α ≤ θ ≤ π/6;
/// * three branches: only Γ together with the vertical half-line;
/// * four or more branches: never minimal.
pub fn is_minimal_1d(branches: &[Branch1D], alpha: f64) -> Result<Verdict> {
    check_alpha(alpha)?;
    if branches.is_empty() {
        return Err(Error::Domain("a cone needs at least one branch".into()));
    }
    let mut bs = branches.iter().map(|b| b.normalized()).collect::<Result<Vec<_>>>()?;
    bs.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    if bs.windows(2).any(|w| (w[1].angle - w[0].angle).abs() <= ANGLE_TOL) {
        return Err(Error::Domain("branches must be distinct".into()));
    }
    let ta = alpha.acos();
    let is_vertical = |b: &Branch1D| (b.angle - FRAC_PI_2).abs() <= ANGLE_TOL;
    let n_gamma = bs.iter().filter(|b| b.in_gamma).count();
    Ok(match bs.len() {
        1 => {
            if is_vertical(&bs[0]) {
                verdict(true, "vertical half-line")
            } else if bs[0].in_gamma {
                verdict(false, "half-line in the boundary can be retracted along it")
            } else {
                verdict(false, "tilted half-line can be shortened by sliding its foot")
            }
        }
        2 => match n_gamma {
            2 => verdict(true, "the boundary line"),
            1 => {
                let g = bs.iter().find(|b| b.in_gamma).unwrap();
                let f = bs.iter().find(|b| !b.in_gamma).unwrap();
                // Angle of the free branch measured on the side away from the Γ branch.
                let away = if g.angle == PI { f.angle } else { PI - f.angle };
                if (away - ta).abs() <= ANGLE_TOL {
                    verdict(true, "tilted branch meets the boundary at the optimal angle")
                } else if away > ta {
                    verdict(false, "push-down: sliding the contact point away lowers the energy")
                } else {
                    verdict(false, "pull-up: sliding the contact point back lowers the energy")
                }
            }
            _ => {
                let (a, b) = (bs[0].angle, bs[1].angle);
                if (a + b - PI).abs() > ANGLE_TOL {
                    verdict(false, "unbalanced pair: moving the vertex lowers the energy")
                } else if a > FRAC_PI_6 + ANGLE_TOL {
                    verdict(false, "pinch: branches closer than 120 degrees form a Y")
                } else if a < ta - ANGLE_TOL {
                    verdict(false, "push-down: opening a segment on the boundary lowers the energy")
                } else if (a - ta).abs() <= ANGLE_TOL {
                    Verdict {
                        minimal: true,
                        reason: "symmetric V at the optimal angle".into(),
                        tie: true,
                    }
                } else {
                    verdict(true, "symmetric V between the optimal angle and 30 degrees")
                }
            }
        },
        3 => {
            if n_gamma == 2 && is_vertical(&bs[1]) {
                verdict(true, "boundary line with the vertical half-line")
            } else if n_gamma == 2 {
                verdict(false, "push-down: the branch meets the boundary at more than 90 degrees on one side")
            } else if n_gamma == 1 {
                let free: Vec<f64> = bs.iter().filter(|b| !b.in_gamma).map(|b| b.angle).collect();
                if (free[1] - free[0]).abs() < 2.0 * FRAC_PI_3 {
                    verdict(false, "pinch: two branches closer than 120 degrees")
                } else {
                    verdict(false, "push-down: a branch meets the boundary at more than 90 degrees")
                }
            } else {
                verdict(false, "pinch: two branches closer than 120 degrees")
            }
        }
        _ => verdict(false, "more than three branches are never minimal"),
    })
}
