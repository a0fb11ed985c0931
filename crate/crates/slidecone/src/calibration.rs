//! Paired-calibration certificates.
//!
//! A certificate assigns a constant vector w_i to every complementary region
//! U_i of the cone. Minimality follows from the divergence theorem once
//!
//! * (C1) each w_i is parallel to the normal of the window face bounding U_i;
//! * (C2) |w_i − w_j| ≤ 1 for every pair of regions;
//! * (C3) w_j − w_i is the unit normal of every fold between U_i and U_j,
//!   oriented from U_i into U_j;
//! * (C4) the vertical component of w_i − w_b (b a region whose floor on Γ
//!   is free) is at most α, with equality where the cone contains the floor
//!   of U_i in Γ.
//!
//! The vectors come from closed formulas; fold normals and face normals are
//! recomputed here from the cone geometry (spanning vectors plus orientation
//! witnesses), so the checks are independent of the formulas.

use serde::{Deserialize, Serialize};

use crate::cones::{self, ConeSpec};
use crate::error::{check_alpha, Error, Result};
use crate::geom::v3::{self, V3};
use crate::geom::{edge_length, reflection_x, rotation_beta, simplex_vertices, VecN};

/// Tolerance of every certificate inequality.
pub const CERT_TOL: f64 = 1e-12;

/// A fold separating two regions, with its geometric unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interface {
    /// Regions (1-based); the normal points from `i` into `j`.
    pub i: usize,
    pub j: usize,
    pub fold: String,
    pub normal: VecN,
}

/// A region whose floor on Γ costs α relative to the free baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RaisedRegion {
    pub region: usize,
    /// Whether the cone actually contains the floor of this region in Γ.
    pub realized: bool,
}

/// Vector family, adjacency and boundary data of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFamily {
    pub family: String,
    pub vectors: Vec<VecN>,
    /// Outward normal of the window face bounding each region (`None` when
    /// the window imposes no face condition, e.g. a ball).
    pub region_faces: Vec<Option<VecN>>,
    pub interface_normals: Vec<Interface>,
    /// Regions whose floor on Γ is free (connected to the lower half-space).
    pub baseline: Vec<usize>,
    /// Regions whose floor on Γ is weighted.
    pub boundary_pairs: Vec<RaisedRegion>,
    /// Unit vertical direction (normal of Γ).
    pub vertical: VecN,
    pub alpha_required: f64,
}

impl CalibrationFamily {
    pub fn w(&self, i: usize) -> &VecN {
        &self.vectors[i - 1]
    }
}

/// Outcome of one certificate condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub pass: bool,
    /// Worst violation (positive means violated by that amount).
    pub worst: f64,
    pub detail: String,
}

/// Per-condition results of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub family: String,
    pub alpha: f64,
    pub alpha_required: f64,
    pub c1_face_orthogonality: Condition,
    pub c2_pair_norms: Condition,
    pub c3_fold_attainment: Condition,
    pub c4_boundary: Condition,
    /// Largest vertical coefficient among the raised regions.
    pub boundary_coefficient: f64,
    pub pass: bool,
}

/// Unit vector orthogonal to the span of `gens` (which must have rank n − 1),
/// oriented so that its product with `toward` is positive.
pub fn complement_normal(gens: &[VecN], toward: &VecN) -> Result<VecN> {
    let n = toward.dim();
    if gens.iter().any(|g| g.dim() != n) {
        return Err(Error::Structural("generators of mixed dimension".into()));
    }
    let mut basis: Vec<VecN> = Vec::new();
    for g in gens {
        let mut r = g.clone();
        for b in &basis {
            r = r.sub(&b.scale(r.dot(b)));
        }
        if r.norm() > 1e-10 {
            basis.push(r.normalized());
        }
    }
    if basis.len() != n - 1 {
        return Err(Error::Structural(format!("fold generators span dimension {}, expected {}", basis.len(), n - 1)));
    }
    let mut best = VecN::zeros(n);
    for k in 0..n {
        let mut r = VecN::basis(n, k);
        for _ in 0..2 {
            for b in &basis {
                r = r.sub(&b.scale(r.dot(b)));
            }
        }
        if r.norm() > best.norm() {
            best = r;
        }
    }
    let mut nrm = best.normalized();
    let s = nrm.dot(toward);
    if s.abs() < 1e-12 {
        return Err(Error::Structural("orientation witness lies in the fold plane".into()));
    }
    if s < 0.0 {
        nrm = nrm.scale(-1.0);
    }
    Ok(nrm)
}

fn vn(a: V3) -> VecN {
    VecN::from3(a)
}

fn interface(i: usize, j: usize, fold: &str, gens: &[V3], wit: &[V3]) -> Result<Interface> {
    let toward = vn(v3::sub(wit[j - 1], wit[i - 1]));
    let normal = complement_normal(&gens.iter().map(|g| vn(*g)).collect::<Vec<_>>(), &toward)?;
    Ok(Interface { i, j, fold: fold.into(), normal })
}

fn face(gens: &[V3], outward: V3) -> Result<Option<VecN>> {
    Ok(Some(complement_normal(&gens.iter().map(|g| vn(*g)).collect::<Vec<_>>(), &vn(outward))?))
}

/// Threshold α_n = √((n+1)/(2n)) of the half-space simplicial cone.
pub fn alpha_threshold(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("alpha threshold needs n >= 3, got {n}")));
    }
    alpha_formula(n)
}

/// The expression √((n+1)/(2n)) for any n ≥ 2. At n = 2 it is the planar
/// value √3/2, where the half-plane cone Γ ∪ vertical stops being minimal
/// without the sliding condition.
pub fn alpha_formula(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDimension { n, reason: "the threshold formula needs n >= 2" });
    }
    Ok(((n as f64 + 1.0) / (2.0 * n as f64)).sqrt())
}

/// Printed calibration of a calibrated cone family, with geometric fold and
/// face normals.
pub fn calibration_for(spec: &ConeSpec) -> Result<CalibrationFamily> {
    spec.validate()?;
    let z = vn([0.0, 0.0, 1.0]);
    let h = 3f64.sqrt() / 2.0;
    match spec {
        ConeSpec::TPlus => {
            let v = cones::t_plus_vertices();
            let k = (3.0f64 / 8.0).sqrt();
            let vectors = v.iter().map(|p| vn(v3::scale(*p, -k))).collect();
            let wit: Vec<V3> = v.iter().map(|p| v3::neg(*p)).collect();
            let mut ifs = Vec::new();
            for i in 1..=4 {
                for j in i + 1..=4 {
                    let gens: Vec<V3> = (1..=4).filter(|m| *m != i && *m != j).map(|m| v[m - 1]).collect();
                    let name = if gens.contains(&v[3]) { "vertical" } else { "sloping" };
                    ifs.push(interface(i, j, name, &gens, &wit)?);
                }
            }
            let mut faces = Vec::new();
            for i in 0..4 {
                let others: Vec<V3> = (0..4).filter(|m| *m != i).map(|m| v[m]).collect();
                faces.push(face(&[v3::sub(others[1], others[0]), v3::sub(others[2], others[0])], v3::neg(v[i]))?);
            }
            Ok(CalibrationFamily {
                family: "T_PLUS".into(),
                vectors,
                region_faces: faces,
                interface_normals: ifs,
                baseline: vec![1, 2, 3],
                boundary_pairs: vec![RaisedRegion { region: 4, realized: false }],
                vertical: z,
                alpha_required: (2.0f64 / 3.0).sqrt(),
            })
        }
        ConeSpec::YBeta { beta } | ConeSpec::YbarBeta { beta } => {
            let bar = matches!(spec, ConeSpec::YbarBeta { .. });
            let r = rotation_beta(*beta)?;
            let d = r.apply([0.0, 0.0, 1.0]);
            let sgn = if bar { -1.0 } else { 1.0 };
            let r3 = 3f64.sqrt();
            let v = [[-1.0 / r3, 0.0, 0.0], [1.0 / (2.0 * r3), -0.5, 0.0], [1.0 / (2.0 * r3), 0.5, 0.0]];
            let vectors = v.iter().map(|p| vn(r.apply(v3::scale(*p, sgn)))).collect();
            let gen: Vec<V3> = cones::y_generators().iter().map(|p| r.apply(v3::scale(*p, sgn))).collect();
            let wit: Vec<V3> = gen.iter().map(|g| v3::neg(*g)).collect();
            let mut ifs = Vec::new();
            for (i, j, k) in [(2, 3, 1), (1, 3, 2), (1, 2, 3)] {
                ifs.push(interface(i, j, &format!("F{k}"), &[gen[k - 1], d], &wit)?);
            }
            let mut faces = Vec::new();
            for i in 0..3 {
                let (a, b) = (gen[(i + 1) % 3], gen[(i + 2) % 3]);
                faces.push(face(&[v3::sub(b, a), d], v3::neg(gen[i]))?);
            }
            let (baseline, raised) = if bar { (vec![1], vec![2, 3]) } else { (vec![2, 3], vec![1]) };
            Ok(CalibrationFamily {
                family: if bar { "YBAR_BETA" } else { "Y_BETA" }.into(),
                vectors,
                region_faces: faces,
                interface_normals: ifs,
                baseline,
                boundary_pairs: raised.into_iter().map(|region| RaisedRegion { region, realized: true }).collect(),
                vertical: z,
                alpha_required: h * beta.cos(),
            })
        }
        ConeSpec::WBeta { beta } => {
            let (s, c) = beta.sin_cos();
            let vectors = vec![vn([h * s, 0.0, -h * c]), vn([-h * s, 0.0, -h * c]), vn([0.0, 0.5, 0.0]), vn([0.0, -0.5, 0.0])];
            let r = rotation_beta(*beta)?;
            let rx = reflection_x();
            let s1 = [c, 0.0, s];
            let s2 = rx.apply(s1);
            let p = cones::y_generators();
            let u2 = r.apply(v3::neg(p[1]));
            let u3 = r.apply(v3::neg(p[2]));
            let wit = [[c, 0.0, s / 2.0], [-c, 0.0, s / 2.0], [0.0, 1.0, 0.5], [0.0, -1.0, 0.5]];
            let ifs = vec![
                interface(3, 4, "V", &[s1, s2, [0.0, 0.0, 1.0]], &wit)?,
                interface(1, 3, "S1", &[s1, u3], &wit)?,
                interface(1, 4, "S2", &[s1, u2], &wit)?,
                interface(2, 4, "S3", &[s2, rx.apply(u2)], &wit)?,
                interface(2, 3, "S4", &[s2, rx.apply(u3)], &wit)?,
            ];
            Ok(CalibrationFamily {
                family: "W_BETA".into(),
                vectors,
                region_faces: vec![None; 4],
                interface_normals: ifs,
                baseline: vec![1, 2],
                boundary_pairs: vec![RaisedRegion { region: 3, realized: true }, RaisedRegion { region: 4, realized: true }],
                vertical: z,
                alpha_required: h * c,
            })
        }
        ConeSpec::DeltaPlus { n } => {
            let n = *n;
            let sx = simplex_vertices(n)?;
            let ell = edge_length(n)?;
            let vectors = sx.vertices.iter().map(|p| p.scale(-1.0 / ell)).collect();
            let wit: Vec<VecN> = sx.vertices.iter().map(|p| p.scale(-1.0)).collect();
            let mut ifs = Vec::new();
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    let gens: Vec<VecN> = (1..=n + 1).filter(|k| *k != i && *k != j).map(|k| sx.p(k).clone()).collect();
                    let normal = complement_normal(&gens, &wit[j - 1].sub(&wit[i - 1]))?;
                    ifs.push(Interface { i, j, fold: format!("F{i}{j}"), normal });
                }
            }
            let mut faces = Vec::new();
            for i in 1..=n + 1 {
                let others: Vec<&VecN> = (1..=n + 1).filter(|k| *k != i).map(|k| sx.p(k)).collect();
                let gens: Vec<VecN> = others[1..].iter().map(|p| p.sub(others[0])).collect();
                faces.push(Some(complement_normal(&gens, &sx.p(i).scale(-1.0))?));
            }
            Ok(CalibrationFamily {
                family: format!("DELTA_PLUS({n})"),
                vectors,
                region_faces: faces,
                interface_normals: ifs,
                baseline: (2..=n + 1).collect(),
                boundary_pairs: vec![RaisedRegion { region: 1, realized: false }],
                vertical: VecN::basis(n, 0),
                alpha_required: alpha_threshold(n)?,
            })
        }
        other => Err(Error::Unsupported(format!("no calibration is available for {other:?}"))),
    }
}

/// Check conditions C1–C4 of a certificate at weight α.
pub fn verify_certificate(family: &CalibrationFamily, alpha: f64) -> Result<CertificateReport> {
    check_alpha(alpha)?;
    let m = family.vectors.len();
    let n = family.vertical.dim();
    if m == 0 || family.vectors.iter().any(|w| w.dim() != n) {
        return Err(Error::Structural("calibration vectors must share the ambient dimension".into()));
    }
    if family.region_faces.len() != m {
        return Err(Error::Structural("one window face entry per region is required".into()));
    }
    let region_ok = |r: usize| r >= 1 && r <= m;
    if family.interface_normals.iter().any(|f| !region_ok(f.i) || !region_ok(f.j) || f.normal.dim() != n)
        || family.baseline.iter().any(|r| !region_ok(*r))
        || family.boundary_pairs.iter().any(|r| !region_ok(r.region))
    {
        return Err(Error::Structural("region index or normal dimension mismatch".into()));
    }

    // C1: |w·f| = |w||f| for every region with a window face.
    let mut c1 = 0.0f64;
    for (i, f) in family.region_faces.iter().enumerate() {
        if let Some(f) = f {
            if f.dim() != n {
                return Err(Error::Structural("face normal of wrong dimension".into()));
            }
            let w = &family.vectors[i];
            c1 = c1.max(w.norm() * f.norm() - w.dot(f).abs());
        }
    }
    let c1 = Condition { pass: c1 <= CERT_TOL, worst: c1, detail: "max |w||f| - |w.f| over window faces".into() };

    // C2: all pairs.
    let mut worst2 = f64::NEG_INFINITY;
    let mut pair = (0, 0);
    for i in 1..=m {
        for j in i + 1..=m {
            let d = family.w(i).sub(family.w(j)).norm() - 1.0;
            if d > worst2 {
                worst2 = d;
                pair = (i, j);
            }
        }
    }
    let c2 = Condition {
        pass: worst2 <= CERT_TOL,
        worst: worst2,
        detail: format!("max |w_i - w_j| - 1 attained at pair ({}, {})", pair.0, pair.1),
    };

    // C3: w_j − w_i equals the oriented fold normal.
    let mut worst3 = 0.0f64;
    let mut which = String::new();
    for f in &family.interface_normals {
        let d = family.w(f.j).sub(family.w(f.i)).max_abs_diff(&f.normal);
        if d >= worst3 {
            worst3 = d;
            which = format!("fold {} between regions {} and {}", f.fold, f.i, f.j);
        }
    }
    let c3 = Condition { pass: worst3 <= CERT_TOL, worst: worst3, detail: format!("max |w_j - w_i - n_ij| at {which}") };

    // C4: baseline regions share the vertical component; raised regions
    // stay below α, with equality where realised.
    let vert = |r: usize| family.w(r).dot(&family.vertical);
    let base = vert(family.baseline[0]);
    let mut worst4 = family.baseline.iter().map(|b| (vert(*b) - base).abs()).fold(0.0, f64::max);
    let mut coef_max = f64::NEG_INFINITY;
    let mut detail = String::from("baseline regions agree");
    for rr in &family.boundary_pairs {
        let coef = vert(rr.region) - base;
        coef_max = coef_max.max(coef);
        let viol = if rr.realized { (coef - alpha).abs() } else { coef - alpha };
        if viol > worst4 {
            worst4 = viol;
            detail = format!("region {} coefficient {coef} vs alpha {alpha}{}", rr.region, if rr.realized { " (equality required)" } else { "" });
        }
    }
    let c4 = Condition { pass: worst4 <= CERT_TOL, worst: worst4, detail };
    let pass = c1.pass && c2.pass && c3.pass && c4.pass;
    Ok(CertificateReport {
        family: family.family.clone(),
        alpha,
        alpha_required: family.alpha_required,
        c1_face_orthogonality: c1,
        c2_pair_norms: c2,
        c3_fold_attainment: c3,
        c4_boundary: c4,
        boundary_coefficient: coef_max,
        pass,
    })
}
