use isoparam_core::algebra::{int, rat, Epsilon, MultiPoly, RatFunc, Rational};
use isoparam_core::elimination::relations::{build_gauss_relations, Slot};
use isoparam_core::elimination::{reference, run_certification, run_certification_with, CertifyOptions, Mutation};

fn sample() -> [Rational; 4] {
    [int(1), int(2), int(4), rat(1, 3)]
}

#[test]
fn both_signs_certify() {
    for eps in Epsilon::BOTH {
        let trace = run_certification(eps);
        assert!(trace.certified, "eps={eps}: {:?}", trace.first_failure);
        assert_eq!(trace.mu_system_kernel.as_ref().unwrap().basis, vec![[1, 1, 1]]);
        let sol = trace.solution.as_ref().unwrap();
        assert_eq!(sol.q.leading_term_t().unwrap().0, 2);
        for p in &sol.p {
            assert_eq!(p.leading_term_t().unwrap().0, 3);
        }
        let points = trace
            .stage("cross-validation")
            .unwrap()
            .objects
            .get("points")
            .unwrap()
            .parse::<usize>()
            .unwrap();
        assert!(points >= 100);
    }
}

#[test]
fn p2_leading_coefficient_is_literal() {
    let trace = run_certification(Epsilon::Sphere);
    let lead = trace.solution.unwrap().p[1].coeff_t(3);
    let times = MultiPoly::diff_mu(1, 2).pow(4).scale_int(12) * MultiPoly::diff_mu(1, 3) * MultiPoly::diff_mu(2, 3);
    assert_eq!(lead, times);
}

#[test]
fn leading_ratio_at_sample_point() {
    let lead = reference::leading_coefficients();
    let p = sample();
    assert_eq!(lead[0].eval(&p), int(-80));
    assert_eq!(lead[3].eval(&p), int(144));
    assert_eq!(lead[0].eval(&p) / lead[3].eval(&p), rat(-5, 9));
}

#[test]
fn t5_coefficient_spot_value() {
    let trace = run_certification(Epsilon::Sphere);
    let c = &trace.t5_coeffs.unwrap()[0];
    assert_eq!(c.eval(&sample()), int(11520));
}

#[test]
fn t5_coefficients_match_golden_files() {
    for (eps, file) in [
        (Epsilon::Sphere, include_str!("golden/t5_eps_plus.txt")),
        (Epsilon::Hyperbolic, include_str!("golden/t5_eps_minus.txt")),
    ] {
        let golden: Vec<MultiPoly> = file.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(golden.len(), 3);
        let closed = reference::t5_coefficients(eps);
        let trace = run_certification(eps);
        let computed = trace.t5_coeffs.unwrap();
        for n in 0..3 {
            assert_eq!(golden[n], closed[n]);
            assert_eq!(golden[n], computed[n]);
            assert_eq!(computed[n].to_string(), file.lines().nth(n).unwrap());
        }
    }
}

#[test]
fn cubic_identity_c_spot_value() {
    let ids = reference::cubic_identities();
    for f in &ids[2].forms {
        assert_eq!(f.eval(&sample()), int(-18));
    }
}

#[test]
fn corrupted_gauss_relation_fails_at_elimination() {
    for relation in 0..3 {
        for slot in [Slot::A2, Slot::B1, Slot::B2, Slot::B3, Slot::Const] {
            let opts = CertifyOptions {
                mutation: Some(Mutation::GaussCoefficient { relation, slot }),
                ..CertifyOptions::default()
            };
            let trace = run_certification_with(Epsilon::Sphere, &opts);
            assert!(!trace.certified);
            let first = trace.first_failure.unwrap();
            assert!(first.starts_with("eliminate-A/"), "{first}");
        }
    }
}

#[test]
fn perturbed_p1_fails_leading_checks() {
    let opts = CertifyOptions {
        mutation: Some(Mutation::SolutionP1),
        ..CertifyOptions::default()
    };
    let trace = run_certification_with(Epsilon::Hyperbolic, &opts);
    assert!(!trace.certified);
    assert_eq!(
        trace.first_failure.as_deref(),
        Some("leading-ratios/leading-coefficient-p1")
    );
}

#[test]
fn reduced_b3_coefficient_matches_closed_form() {
    let eps = Epsilon::Sphere;
    let reduced = isoparam_core::elimination::relations::eliminate_a(&build_gauss_relations(eps)).unwrap();
    let d = MultiPoly::diff_mu;
    let expect = &(&RatFunc::frac(MultiPoly::mu(3) * d(2, 1), d(3, 2))
        - &RatFunc::frac(d(2, 1).scale_int(2) * MultiPoly::t(), d(3, 2).pow(2)))
        + &RatFunc::from_poly(d(3, 2));
    assert!(reduced[0].coeffs[2].rf_equal(&expect));
}

#[test]
fn m12_structure() {
    let eps = Epsilon::Hyperbolic;
    let reduced = isoparam_core::elimination::relations::eliminate_a(&build_gauss_relations(eps)).unwrap();
    let sys = isoparam_core::elimination::system::substitute_b3(&reduced);
    let d = MultiPoly::diff_mu;
    let rebuilt = RatFunc::frac(d(3, 2).scale_int(2) * MultiPoly::t(), d(2, 1).pow(2))
        + sys.c[0][1].checked_div(&RatFunc::from_poly(d(2, 1).pow(2))).unwrap();
    assert!(sys.m[0][1].rf_equal(&rebuilt));
    for l in &sys.l {
        assert!(l.num().degree_in(isoparam_core::algebra::Var::T).unwrap_or(0) <= 1);
    }
}

#[test]
fn trace_json_shape() {
    let trace = run_certification(Epsilon::Sphere);
    let v = trace.to_json();
    assert_eq!(v["epsilon"], 1);
    assert_eq!(v["certified"], true);
    let stages = v["stages"].as_array().unwrap();
    assert!(stages.len() >= 9);
    for s in stages {
        assert!(s["name"].is_string());
        assert!(s["objects"].is_object());
        for c in s["checks"].as_array().unwrap() {
            assert_eq!(c["pass"], true);
            assert!(c["witness"].is_string());
        }
    }
}
