use std::f64::consts::FRAC_1_SQRT_2;

use isoparam_core::algebra::Epsilon;
use isoparam_core::geometry::geodesic::parallel_mean_curvature;
use isoparam_core::geometry::helicoid::{helicoid_height, helicoid_homogeneity_check};
use isoparam_core::geometry::residuals::fundamental_residuals;
use isoparam_core::geometry::verify::ad_finite_difference_error;
use isoparam_core::geometry::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn immersion(family: Family, eps: Epsilon) -> Immersion {
    Immersion::new(family, eps, FamilyParams::defaults(family)).unwrap()
}

fn torus(family: Family, r1: f64, r2: f64) -> Immersion {
    let p = FamilyParams {
        r1,
        r2,
        ..FamilyParams::defaults(family)
    };
    Immersion::new(family, family.forced_epsilon().unwrap(), p).unwrap()
}

fn sorted_curvatures(imm: &Immersion, u: [f64; 3]) -> [f64; 3] {
    let amb = AmbientSpace::new(imm.epsilon);
    shape_operator_at(imm, &amb, &u, Orientation::Canonical)
        .unwrap()
        .principal_curvatures
}

fn close_up_to_sign(got: [f64; 3], want: [f64; 3], tol: f64) -> bool {
    [1.0, -1.0].into_iter().any(|s| {
        let mut w = want.map(|v| s * v);
        w.sort_by(f64::total_cmp);
        (0..3).all(|i| (got[i] - w[i]).abs() <= tol)
    })
}

#[test]
fn sphere_torus_curvatures() {
    let k = sorted_curvatures(&immersion(Family::SphereTorusCylinder, Epsilon::Sphere), [0.3, 1.1, 0.2]);
    assert!(close_up_to_sign(k, [-0.75, 0.0, 4.0 / 3.0], 1e-8), "{k:?}");
}

#[test]
fn hyperbolic_torus_curvatures() {
    let k = sorted_curvatures(&immersion(Family::HyperbolicTorusCylinder, Epsilon::Hyperbolic), [0.4, 2.0, -0.3]);
    let r = 2f64.sqrt();
    assert!(close_up_to_sign(k, [-r, -r / 2.0, 0.0], 1e-8), "{k:?}");
}

#[test]
fn slices_are_totally_geodesic() {
    for eps in Epsilon::BOTH {
        let imm = immersion(Family::Slice, eps);
        let k = sorted_curvatures(&imm, [0.1, -0.2, 0.3]);
        assert!(k.iter().all(|v| v.abs() < 1e-12));
        let amb = AmbientSpace::new(eps);
        let s = shape_operator_at(&imm, &amb, &[0.1, -0.2, 0.3], Orientation::Canonical).unwrap();
        let res = fundamental_residuals(&imm, &amb, &s, Orientation::Canonical).unwrap();
        assert!(res.values().all(|v| *v <= 1e-10), "{res:?}");
        assert!((s.cos_theta.abs() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn equal_radii_give_three_distinct_values() {
    let k = sorted_curvatures(&torus(Family::SphereTorusCylinder, FRAC_1_SQRT_2, FRAC_1_SQRT_2), [0.5, 0.5, 0.0]);
    assert!(close_up_to_sign(k, [-1.0, 0.0, 1.0], 1e-8), "{k:?}");
}

#[test]
fn umbilical_cylinder_has_t_in_zero_eigenspace() {
    for eps in Epsilon::BOTH {
        let imm = immersion(Family::UmbilicalCylinder, eps);
        let mut opts = VerifyOptions::default();
        opts.grid.resolution = 4;
        opts.grid.offsets.clear();
        let r = grid_verify(&imm, &opts);
        assert!(r.passed, "{:?}", r.criteria.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert_eq!(r.curvatures.as_ref().unwrap().distinct, 2);
        assert!(r.criterion("t-in-zero-eigenspace").unwrap().pass);
    }
}

#[test]
fn christoffels_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for eps in Epsilon::BOTH {
        let amb = AmbientSpace::new(eps);
        for _ in 0..100 {
            let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.1..3.0), rng.gen_range(-1.0..1.0)];
            let g = amb.christoffel_at(&x).unwrap();
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        assert_eq!(g[k][i][j], g[k][j][i]);
                        if i == 3 || j == 3 || k == 3 {
                            assert_eq!(g[k][i][j], 0.0);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn half_space_rejects_nonpositive_height() {
    let amb = AmbientSpace::new(Epsilon::Hyperbolic);
    assert!(matches!(amb.metric_at(&[0.0, 0.0, 0.0, 0.0]), Err(GeomError::OutsideChart { .. })));
}

#[test]
fn zero_offset_reproduces_base_mean_curvature() {
    for family in Family::ALL {
        for eps in Epsilon::BOTH {
            if family.forced_epsilon().is_some_and(|e| e != eps) {
                continue;
            }
            let imm = immersion(family, eps);
            let amb = AmbientSpace::new(eps);
            let u = [0.35, 0.7, 0.1];
            let base = shape_operator_at(&imm, &amb, &u, Orientation::Canonical).unwrap();
            let p = parallel_mean_curvature(&imm, &amb, &u, 0.0, &GeodesicOptions::default()).unwrap();
            assert!((p.mean_curvature - base.mean_curvature()).abs() <= 1e-9, "{family} {eps}");
        }
    }
}

#[test]
fn offset_through_center_is_focal() {
    let imm = Immersion::new(
        Family::UmbilicalCylinder,
        Epsilon::Sphere,
        FamilyParams {
            r1: 0.2,
            ..FamilyParams::defaults(Family::UmbilicalCylinder)
        },
    )
    .unwrap();
    let amb = AmbientSpace::new(Epsilon::Sphere);
    let err = parallel_mean_curvature(&imm, &amb, &[0.4, 0.0, 0.0], 0.3, &GeodesicOptions::default()).unwrap_err();
    match err {
        GeomError::FocalPoint { sigma, .. } => assert!((sigma - 0.2).abs() < 1e-6),
        other => panic!("{other}"),
    }
}

#[test]
fn helicoid_dilation_example() {
    let p = [1.0, 0.0, 1.0, helicoid_height(1.0, 1.0)];
    let r = helicoid_homogeneity_check(
        1.0,
        HelicoidMotion {
            lambda: 2f64.ln(),
            shift: [0.0, 0.0],
        },
        &p,
    );
    assert!(r.graph_residual <= 1e-12 && r.metric_residual <= 1e-10);
    let r = helicoid_homogeneity_check(
        1.0,
        HelicoidMotion {
            lambda: 0.0,
            shift: [3.0, -2.0],
        },
        &p,
    );
    assert!(r.graph_residual == 0.0);
}

#[test]
fn helicoid_report_records_two_curvatures() {
    let imm = Immersion::new(
        Family::ParabolicHelicoid,
        Epsilon::Hyperbolic,
        FamilyParams {
            b: 1.5,
            ..FamilyParams::defaults(Family::ParabolicHelicoid)
        },
    )
    .unwrap();
    let mut opts = VerifyOptions::default();
    opts.grid.resolution = 4;
    opts.grid.offsets = vec![0.1];
    let r = grid_verify(&imm, &opts);
    assert!(r.passed);
    assert_eq!(r.curvatures.unwrap().distinct, 2);
    let [lo, hi] = r.cos_theta.unwrap();
    assert!((lo - 1.0 / (1.0 + 1.5f64 * 1.5).sqrt()).abs() < 1e-12 && hi - lo < 1e-12);
}

#[test]
fn constraint_violations_are_rejected() {
    let bad = FamilyParams {
        r1: 0.6,
        r2: 0.9,
        ..FamilyParams::defaults(Family::SphereTorusCylinder)
    };
    assert!(matches!(
        Immersion::new(Family::SphereTorusCylinder, Epsilon::Sphere, bad),
        Err(GeomError::InvalidParameter(_))
    ));
    let defaults = FamilyParams::defaults(Family::ParabolicHelicoid);
    assert!(Immersion::new(Family::ParabolicHelicoid, Epsilon::Sphere, defaults).is_err());
}

#[test]
fn dual_derivatives_match_central_differences() {
    for family in Family::ALL {
        let imm = immersion(family, family.forced_epsilon().unwrap_or(Epsilon::Hyperbolic));
        assert!(ad_finite_difference_error(&imm, 50, 11) <= 1e-7, "{family}");
    }
}

#[test]
fn reports_are_deterministic() {
    let imm = immersion(Family::SphereTorusCylinder, Epsilon::Sphere);
    let mut opts = VerifyOptions::default();
    opts.grid.resolution = 3;
    opts.grid.offsets = vec![0.2];
    let a = serde_json::to_string(&grid_verify(&imm, &opts).to_json()).unwrap();
    let b = serde_json::to_string(&grid_verify(&imm, &opts).to_json()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clifford_torus_invariants(a in 0.15f64..1.42, u in prop::array::uniform3(-3.0f64..3.0)) {
        let imm = torus(Family::SphereTorusCylinder, a.cos(), a.sin());
        let amb = AmbientSpace::new(Epsilon::Sphere);
        let u = [u[0], u[1], u[2] / 3.0];
        let s = shape_operator_at(&imm, &amb, &u, Orientation::Canonical).unwrap();
        prop_assert!(s.normal_norm_error <= 1e-10);
        prop_assert!(s.self_adjoint_error <= 1e-9);
        let t2 = s.inner(&s.t_components, &s.t_components);
        prop_assert!((t2 + s.cos_theta * s.cos_theta - 1.0).abs() <= 1e-10);
        let want = [0.0, a.sin() / a.cos(), -a.cos() / a.sin()];
        prop_assert!(close_up_to_sign(s.principal_curvatures, want, 1e-7), "{:?} vs {:?}", s.principal_curvatures, want);
        let res = fundamental_residuals(&imm, &amb, &s, Orientation::Canonical).unwrap();
        prop_assert!(res.values().all(|v| *v <= 1e-7), "{:?}", res);
    }

    #[test]
    fn hyperbolic_torus_invariants(r2 in 0.3f64..3.0, u in prop::array::uniform3(-1.0f64..1.0)) {
        let r1 = (1.0 + r2 * r2).sqrt();
        let imm = torus(Family::HyperbolicTorusCylinder, r1, r2);
        let amb = AmbientSpace::new(Epsilon::Hyperbolic);
        let s = shape_operator_at(&imm, &amb, &u, Orientation::Canonical).unwrap();
        let want = [0.0, -r2 / r1, -r1 / r2];
        prop_assert!(close_up_to_sign(s.principal_curvatures, want, 1e-7), "{:?} vs {:?}", s.principal_curvatures, want);
        prop_assert!(s.cos_theta.abs() <= 1e-10);
    }

    #[test]
    fn helicoid_motions_preserve_graph(b in -3.0f64..3.0, lambda in -2.0f64..2.0, s1 in -5.0f64..5.0, s2 in -5.0f64..5.0,
                                       x in -2.0f64..2.0, y in -2.0f64..2.0, w in 0.1f64..4.0) {
        let p = [x, y, w, helicoid_height(b, w)];
        let r = helicoid_homogeneity_check(b, HelicoidMotion { lambda, shift: [s1, s2] }, &p);
        prop_assert!(r.graph_residual <= 1e-12 * (1.0 + b.abs() * 3.0));
        prop_assert!(r.metric_residual <= 1e-10);
    }
}
