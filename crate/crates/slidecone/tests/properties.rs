//! Property tests of the structural invariants of every module.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use proptest::prelude::*;

use slidecone::calibration::{calibration_for, verify_certificate};
use slidecone::competitor::{c_from_x0, energy_gap, X_TOP};
use slidecone::cones::{build_mesh, exact_areas, folds, ConeSpec, Window};
use slidecone::energy::{j_alpha_exact, j_alpha_mesh, mesh_areas};
use slidecone::evolver::mesh::{Tag, TaggedMesh};
use slidecone::evolver::{evolve, EvolveConfig, PinchPreset};
use slidecone::geom::{reflection_x, rotation_beta, simplex_vertices};
use slidecone::onedim::{is_minimal_1d, pinch_energy, push_down_energy, Branch1D};
use slidecone::spherical::{pentagon_family, pentagon_side, rect_side, rect_side_half_angle};

fn tilted_spec() -> impl Strategy<Value = ConeSpec> {
    (0usize..3, 0.0f64..1.5).prop_map(|(k, beta)| match k {
        0 => ConeSpec::YBeta { beta },
        1 => ConeSpec::YbarBeta { beta },
        _ => ConeSpec::WBeta { beta: beta.min(0.6) },
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_preserves_norms(beta in 0.0f64..FRAC_PI_2, v in prop::array::uniform3(-10.0f64..10.0)) {
        let r = rotation_beta(beta).unwrap();
        let w = r.apply(v);
        let n = |a: [f64; 3]| (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        prop_assert!((n(w) - n(v)).abs() <= 1e-12 * n(v).max(1.0));
        prop_assert!(r.orthogonality_defect() <= 1e-15);
    }

    #[test]
    fn simplex_vertices_are_unit_and_centred(n in 2usize..=12) {
        let s = simplex_vertices(n).unwrap();
        for v in &s.vertices {
            prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
        }
        prop_assert!(s.barycenter().norm() <= 1e-12);
    }

    #[test]
    fn sloping_y_normals_satisfy_slope_relation(beta in 0.0f64..1.5) {
        let f = folds(&ConeSpec::YBeta { beta }).unwrap();
        let target = 3f64.sqrt() / 2.0 * beta.cos();
        let sloping = f.folds.iter().filter(|x| !x.on_gamma && (x.normal.coords[2] - target).abs() <= 1e-12).count();
        prop_assert!(sloping >= 2, "only {} sloping folds", sloping);
    }

    #[test]
    fn w_beta_folds_are_mirror_symmetric(beta in 0.0f64..0.6) {
        let f = folds(&ConeSpec::WBeta { beta }).unwrap();
        let rx = reflection_x();
        for fold in &f.folds {
            let image: Vec<[f64; 3]> = fold.rays3().iter().map(|r| rx.apply(*r)).collect();
            let found = f.folds.iter().any(|g| {
                let rays = g.rays3();
                rays.len() == image.len()
                    && image.iter().all(|p| rays.iter().any(|q| (0..3).all(|k| (p[k] - q[k]).abs() <= 1e-12)))
            });
            prop_assert!(found, "image of {} is not a fold", fold.name);
        }
    }

    #[test]
    fn energy_is_monotone_in_alpha(spec in tilted_spec(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let e1 = j_alpha_exact(&spec, Window::Ball(1.0), lo).unwrap();
        let e2 = j_alpha_exact(&spec, Window::Ball(1.0), hi).unwrap();
        prop_assert!(e2.j_alpha >= e1.j_alpha);
        if e1.on_gamma > 0.0 && hi > lo {
            prop_assert!(e2.j_alpha > e1.j_alpha);
        }
    }

    #[test]
    fn areas_scale_quadratically(t in 0.5f64..2.0, beta in 0.0f64..1.2) {
        let m = build_mesh(&ConeSpec::YBeta { beta }, Window::Ball(1.0), 2).unwrap();
        let (off, on) = mesh_areas(&m);
        let (off_t, on_t) = mesh_areas(&m.scaled(t));
        prop_assert!((off_t - t * t * off).abs() <= 1e-9);
        prop_assert!((on_t - t * t * on).abs() <= 1e-9);
    }

    #[test]
    fn certificates_pass_at_required_alpha(spec in tilted_spec()) {
        let fam = calibration_for(&spec).unwrap();
        let r = verify_certificate(&fam, fam.alpha_required).unwrap();
        let w_excluded = matches!(spec, ConeSpec::WBeta { beta } if beta.sin() > 1.0 / 3f64.sqrt());
        prop_assert!(r.pass || w_excluded, "{:?}", r);
    }

    #[test]
    fn c4_failure_is_monotone(n in 3usize..=8, alpha in 0.0f64..1.0) {
        let fam = calibration_for(&ConeSpec::DeltaPlus { n }).unwrap();
        let r = verify_certificate(&fam, alpha).unwrap();
        prop_assert_eq!(r.c4_boundary.pass, alpha >= fam.alpha_required);
    }

    #[test]
    fn y_certificates_need_equality(beta in 0.0f64..1.5, bar in any::<bool>()) {
        let spec = if bar { ConeSpec::YbarBeta { beta } } else { ConeSpec::YBeta { beta } };
        let fam = calibration_for(&spec).unwrap();
        for d in [-1e-6, 1e-6] {
            let a = fam.alpha_required + d;
            if (0.0..=1.0).contains(&a) {
                prop_assert!(!verify_certificate(&fam, a).unwrap().c4_boundary.pass);
            }
        }
    }

    #[test]
    fn gap_increases_with_alpha(x0 in 1e-4f64..0.45, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        prop_assume!(x0 < X_TOP && (a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(energy_gap(x0, hi).unwrap() > energy_gap(x0, lo).unwrap());
        prop_assert!(c_from_x0(x0).unwrap() > 0.0);
    }

    #[test]
    fn gap_is_positive_above_threshold(x0 in 1e-6f64..0.45, alpha in 0.8165f64..1.0) {
        prop_assume!(x0 < X_TOP && alpha >= (2.0f64 / 3.0).sqrt());
        prop_assert!(energy_gap(x0, alpha).unwrap() > 0.0);
    }

    #[test]
    fn classification_is_reflection_invariant(
        angles in prop::collection::vec(0.0f64..=180.0, 1..5),
        alpha in 0.0f64..=1.0,
    ) {
        let mut sorted = angles.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assume!(sorted.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let make = |d: f64| Branch1D::new(d.to_radians(), d == 0.0 || d == 180.0);
        let bs: Vec<Branch1D> = angles.iter().map(|d| make(*d).unwrap()).collect();
        let mirrored: Vec<Branch1D> = angles.iter().map(|d| make(180.0 - d).unwrap()).collect();
        prop_assert_eq!(is_minimal_1d(&bs, alpha).unwrap().minimal, is_minimal_1d(&mirrored, alpha).unwrap().minimal);
    }

    #[test]
    fn symmetric_v_classification_matches_competitors(theta in 0.01f64..FRAC_PI_2, alpha in 0.0f64..0.999) {
        let v = [Branch1D::new(theta, false).unwrap(), Branch1D::new(PI - theta, false).unwrap()];
        prop_assume!((theta - alpha.acos()).abs() > 1e-7 && (theta - FRAC_PI_6).abs() > 1e-7);
        let minimal = is_minimal_1d(&v, alpha).unwrap().minimal;
        // Closed-form competitors, both measured in the unit half-disc.
        let beaten = pinch_energy(theta).unwrap() < 2.0 - 1e-12 || push_down_energy(theta, alpha).unwrap() < 2.0 - 1e-12;
        prop_assert_eq!(minimal, !beaten);
        prop_assert_eq!(minimal, theta >= alpha.acos() && theta <= FRAC_PI_6);
    }

    #[test]
    fn half_angle_rectangle_formula(a in 0.01f64..3.13) {
        if let (Ok(full), Ok(half)) = (rect_side(a), rect_side_half_angle(a)) {
            prop_assert!((full - half).abs() <= 1e-12);
        }
    }

    #[test]
    fn rectangle_formula_is_an_involution(a in 0.3f64..3.1) {
        if let Ok(b) = rect_side(a) {
            if let Ok(back) = rect_side(b) {
                prop_assert!((back - a).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn pentagon_family_satisfies_side_relation(beta in 0.1f64..1.4, gamma in 0.65f64..1.1) {
        if let Ok(net) = pentagon_family(beta, gamma) {
            let l = |n: &str| net.length(n).unwrap();
            let ring = [l("gamma"), l("zeta"), l("epsilon"), l("zeta_prime"), l("gamma_prime")];
            for k in 0..5 {
                let opposite = ring[(k + 3) % 5];
                let rel = pentagon_side(ring[k], ring[(k + 1) % 5]).unwrap();
                prop_assert!((rel - opposite).abs() <= 1e-10, "side {} : {} vs {}", k, rel, opposite);
            }
        }
    }
}

#[test]
fn mesh_energy_converges_under_refinement() {
    for spec in [ConeSpec::YBeta { beta: 0.4 }, ConeSpec::YbarBeta { beta: 0.7 }, ConeSpec::WBeta { beta: 0.3 }] {
        let (off, on) = exact_areas(&spec, Window::Ball(1.0)).unwrap();
        let exact = off + 0.6 * on;
        let err = |res: usize| (j_alpha_mesh(&build_mesh(&spec, Window::Ball(1.0), res).unwrap(), 0.6).unwrap().j_alpha - exact).abs();
        let (e1, e2, e4) = (err(1), err(2), err(4));
        assert!(e2 < e1 && e4 < e2, "{spec:?}: {e1:e} {e2:e} {e4:e}");
        assert!(e1 / e2 >= 1.5 && e2 / e4 >= 1.5, "{spec:?}: ratios {} {}", e1 / e2, e2 / e4);
    }
}

#[test]
fn evolution_keeps_sliding_constraints_at_every_step() {
    for preset in [PinchPreset::YPlus2YHigh, PinchPreset::TPlusY] {
        let alpha = preset.family_alpha(preset.default_param()).unwrap();
        let mut m: TaggedMesh = preset.competitor_mesh(preset.default_param(), preset.default_size(), 2).unwrap();
        let tags = m.tags.clone();
        let pinned: Vec<[f64; 3]> = m.vertices.iter().zip(&tags).filter(|(_, t)| **t == Tag::Pinned).map(|(p, _)| *p).collect();
        for _ in 0..25 {
            let (next, trace) = evolve(&m, &EvolveConfig { alpha, max_steps: 1, ..Default::default() }).unwrap();
            assert!(trace.windows(2).all(|w| w[1].report.j_alpha <= w[0].report.j_alpha));
            assert_eq!(next.tags, tags);
            for (p, t) in next.vertices.iter().zip(&next.tags) {
                assert!(p[2] >= 0.0);
                if *t == Tag::OnGamma {
                    assert_eq!(p[2], 0.0);
                }
            }
            let now: Vec<[f64; 3]> = next.vertices.iter().zip(&tags).filter(|(_, t)| **t == Tag::Pinned).map(|(p, _)| *p).collect();
            assert_eq!(now, pinned);
            m = next;
        }
    }
}
