//! Exact reconstruction of the elimination that forces the angle function of a
//! hypersurface with three distinct constant principal curvatures to be constant.
//!
//! Pipeline: three Gauss relations in `(A^2, b1^2, b2^2, b3^2)` → eliminate `A^2`
//! → substitute `b3^2 = 1 - t - b1^2 - b2^2` → solve the 2x2 system
//! `b_i^2 = p_i/q` → derivative-consistency polynomials `P_n` → their `t^5`
//! coefficients → a homogeneous linear system in the curvatures with kernel
//! `(1,1,1)`. Every intermediate object is compared with its closed form.

pub mod crossval;
pub mod derivative;
pub mod reference;
pub mod relations;
pub mod system;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{int, rat, Epsilon, MultiPoly, RatFunc, Rational};

use derivative::MuKernel;
use reference::CubicIdentity;
use relations::{AffineForm, GaussRelation, GenericAgreement, Slot};
use system::{BSquaredSolution, LinearSystem2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("the A^2 coefficient of the (1,2) relation vanishes")]
    VanishingA2Coefficient,
    #[error("det M vanishes identically")]
    SingularSystem,
    #[error("{0} is not a polynomial after clearing denominators")]
    NotPolynomial(&'static str),
}

/// `[m1 - m2, m1 - m3, m2 - m3]`, the only factors ever cancelled from fractions.
pub fn difference_factors() -> [MultiPoly; 3] {
    [MultiPoly::diff_mu(1, 2), MultiPoly::diff_mu(1, 3), MultiPoly::diff_mu(2, 3)]
}

/// One named assertion with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            witness: witness.into(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            witness: witness.into(),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, witness)
        } else {
            Check::fail(name, witness)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: String,
    pub objects: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Stage {
    fn new(name: &str) -> Self {
        Stage {
            name: name.to_string(),
            objects: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn object(&mut self, key: impl Into<String>, value: impl ToString) {
        self.objects.insert(key.into(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Every closed-form object the pipeline is compared against. Mutation tests
/// corrupt one entry and expect certification to fail.
#[derive(Clone)]
pub struct Reference {
    pub gauss: [GaussRelation; 3],
    pub reduced: [AffineForm; 2],
    pub substituted: [[RatFunc; 3]; 2],
    pub det_t2_expanded: MultiPoly,
    pub det_t2_factored: MultiPoly,
    pub first_step_t3: [MultiPoly; 2],
    pub leading: [MultiPoly; 4],
    pub t5: [MultiPoly; 3],
    pub mu_system: [[i64; 3]; 3],
    pub cubic: [CubicIdentity; 3],
}

impl Reference {
    pub fn closed_form(eps: Epsilon) -> Self {
        Reference {
            gauss: relations::build_gauss_relations(eps),
            reduced: [reference::reduced_relation_1(eps), reference::reduced_relation_2(eps)],
            substituted: [
                reference::substituted_relation_1(eps),
                reference::substituted_relation_2(eps),
            ],
            det_t2_expanded: reference::det_t2_expanded(),
            det_t2_factored: reference::det_t2_factored(),
            first_step_t3: reference::first_step_t3(),
            leading: reference::leading_coefficients(),
            t5: reference::t5_coefficients(eps),
            mu_system: reference::MU_SYSTEM,
            cubic: reference::cubic_identities(),
        }
    }

    /// Add one to the addressed coefficient.
    pub fn corrupt(&mut self, target: &Mutation) {
        let one = RatFunc::one();
        let one_p = MultiPoly::one();
        match *target {
            Mutation::GaussCoefficient { relation, slot } => {
                let c = self.gauss[relation].coefficient_mut(slot);
                *c = &*c + &one;
            }
            Mutation::Reduced { relation, slot } => {
                let c = self.reduced[relation].slot_mut(slot);
                *c = &*c + &one;
            }
            Mutation::Substituted { relation, index } => {
                let c = &mut self.substituted[relation][index];
                *c = &*c + &one;
            }
            Mutation::DetT2Expanded => self.det_t2_expanded = &self.det_t2_expanded + &one_p,
            Mutation::DetT2Factored => self.det_t2_factored = &self.det_t2_factored + &one_p,
            Mutation::FirstStepT3(k) => self.first_step_t3[k] = &self.first_step_t3[k] + &one_p,
            Mutation::Leading(k) => self.leading[k] = &self.leading[k] + &one_p,
            Mutation::T5(k) => self.t5[k] = &self.t5[k] + &one_p,
            Mutation::MuSystem { row, col } => self.mu_system[row][col] += 1,
            Mutation::Cubic { identity, form } => {
                let f = &mut self.cubic[identity].forms[form];
                *f = &*f + &one_p;
            }
            Mutation::SolutionP1 => {}
        }
    }
}

/// A single-coefficient corruption used to show that certification is sensitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mutation {
    GaussCoefficient { relation: usize, slot: Slot },
    Reduced { relation: usize, slot: Slot },
    Substituted { relation: usize, index: usize },
    DetT2Expanded,
    DetT2Factored,
    FirstStepT3(usize),
    Leading(usize),
    T5(usize),
    MuSystem { row: usize, col: usize },
    Cubic { identity: usize, form: usize },
    /// Adds `t^3` to the computed `p1` before the leading-term checks.
    SolutionP1,
}

impl Mutation {
    /// Every single-coefficient corruption of a displayed object.
    pub fn all() -> Vec<Mutation> {
        let mut out = Vec::new();
        for relation in 0..3 {
            for slot in [Slot::A2, Slot::B1, Slot::B2, Slot::B3, Slot::Const] {
                out.push(Mutation::GaussCoefficient { relation, slot });
            }
        }
        for relation in 0..2 {
            for slot in Slot::AFFINE {
                out.push(Mutation::Reduced { relation, slot });
            }
            for index in 0..3 {
                out.push(Mutation::Substituted { relation, index });
            }
        }
        out.push(Mutation::DetT2Expanded);
        out.push(Mutation::DetT2Factored);
        out.extend((0..2).map(Mutation::FirstStepT3));
        out.extend((0..4).map(Mutation::Leading));
        out.extend((0..3).map(Mutation::T5));
        for row in 0..3 {
            for col in 0..3 {
                out.push(Mutation::MuSystem { row, col });
            }
        }
        for identity in 0..3 {
            for form in 0..4 {
                out.push(Mutation::Cubic { identity, form });
            }
        }
        out.push(Mutation::SolutionP1);
        out
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub random_points: usize,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            random_points: 128,
            seed: 20_240_101,
            mutation: None,
        }
    }
}

/// Full record of one run of the pipeline.
#[derive(Debug, Clone)]
pub struct EliminationTrace {
    pub epsilon: Epsilon,
    pub relations: Option<[GaussRelation; 3]>,
    pub reduced_system: Option<LinearSystem2>,
    pub solution: Option<BSquaredSolution>,
    pub derivative_polys: Option<[MultiPoly; 3]>,
    pub t5_coeffs: Option<Vec<MultiPoly>>,
    pub mu_system_kernel: Option<MuKernel>,
    pub stages: Vec<Stage>,
    pub certified: bool,
    /// `stage/check` of the first failing check.
    pub first_failure: Option<String>,
}

impl EliminationTrace {
    pub fn checks(&self) -> impl Iterator<Item = (&str, &Check)> {
        self.stages
            .iter()
            .flat_map(|s| s.checks.iter().map(move |c| (s.name.as_str(), c)))
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks().map(|(_, c)| c).find(|c| c.name == name)
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "objects": s.objects,
                    "checks": s.checks,
                    "notes": s.notes,
                })
            })
            .collect();
        json!({
            "epsilon": self.epsilon.value(),
            "stages": stages,
            "certified": self.certified,
            "first_failure": self.first_failure,
            "mu_system_kernel": self.mu_system_kernel,
        })
    }
}

pub fn run_certification(eps: Epsilon) -> EliminationTrace {
    run_certification_with(eps, &CertifyOptions::default())
}

pub fn run_certification_with(eps: Epsilon, opts: &CertifyOptions) -> EliminationTrace {
    let mut reference = Reference::closed_form(eps);
    if let Some(m) = &opts.mutation {
        reference.corrupt(m);
    }
    let mut trace = EliminationTrace {
        epsilon: eps,
        relations: None,
        reduced_system: None,
        solution: None,
        derivative_polys: None,
        t5_coeffs: None,
        mu_system_kernel: None,
        stages: Vec::new(),
        certified: false,
        first_failure: None,
    };
    if let Err(e) = pipeline(eps, opts, &reference, &mut trace) {
        let mut stage = Stage::new("pipeline-error");
        stage.checks.push(Check::fail("pipeline-completed", e.to_string()));
        trace.stages.push(stage);
    }
    let first = trace
        .checks()
        .find(|(_, c)| !c.pass)
        .map(|(s, c)| format!("{s}/{}", c.name));
    trace.first_failure = first;
    trace.certified = trace.first_failure.is_none() && !trace.stages.is_empty();
    trace
}

fn sample_point() -> [Rational; 4] {
    [int(1), int(2), int(4), rat(1, 3)]
}

fn pipeline(
    eps: Epsilon,
    opts: &CertifyOptions,
    reference: &Reference,
    trace: &mut EliminationTrace,
) -> Result<(), EliminationError> {
    trace.stages.push(cubic_stage(&reference.cubic));

    let relations = reference.gauss.clone();
    trace.stages.push(gauss_stage(eps, &relations));

    let mut stage = Stage::new("eliminate-A");
    let reduced = relations::eliminate_a(&relations)?;
    for (r, (got, want)) in reduced.iter().zip(reference.reduced.iter()).enumerate() {
        for s in Slot::AFFINE {
            let name = format!("reduced-{}-{}", r + 1, s.label());
            stage.object(name.clone(), got.slot(s));
            let ok = got.slot(s).rf_equal(want.slot(s));
            stage.checks.push(Check::from_bool(
                name,
                ok,
                if ok {
                    "rf_equal to closed form".to_string()
                } else {
                    format!("computed {}; expected {}", got.slot(s), want.slot(s))
                },
            ));
        }
    }
    trace.stages.push(stage);

    let mut stage = Stage::new("substitute-b3");
    let sys = system::substitute_b3(&reduced);
    for r in 0..2 {
        for (k, label) in ["b1^2", "b2^2", "const"].iter().enumerate() {
            let name = format!("substituted-{}-{}", r + 1, label);
            let got = &sys.substituted[r][k];
            let want = &reference.substituted[r][k];
            let ok = got.rf_equal(want);
            stage.checks.push(Check::from_bool(
                name,
                ok,
                if ok {
                    "rf_equal to closed form".to_string()
                } else {
                    format!("computed {got}; expected {want}")
                },
            ));
        }
    }
    stage.checks.extend(sys.structure_checks());
    for i in 0..2 {
        for j in 0..2 {
            stage.object(format!("M{}{}", i + 1, j + 1), &sys.m[i][j]);
            stage.object(format!("C{}{}", i + 1, j + 1), &sys.c[i][j]);
        }
        stage.object(format!("rhs{}", i + 1), &sys.rhs[i]);
        stage.object(format!("L{}", i + 1), &sys.l[i]);
    }
    stage.notes.push(sys.provenance.to_string());
    trace.stages.push(stage);

    let mut stage = Stage::new("solve");
    let mut sol = system::solve_b_squared(&sys)?;
    let q2 = sol.q.coeff_t(2);
    stage.checks.push(Check::from_bool(
        "det-M-t2-expanded-form",
        q2 == reference.det_t2_expanded,
        format!("t^2 coefficient of q: {q2}"),
    ));
    stage.checks.push(Check::from_bool(
        "det-M-t2-factored-form",
        q2 == reference.det_t2_factored,
        format!("t^2 coefficient of q: {q2}"),
    ));
    for k in 0..2 {
        let c3 = sol.first_step[k].coeff_t(3);
        stage.checks.push(Check::from_bool(
            format!("cleared-numerator-{}-t3", k + 1),
            c3 == reference.first_step_t3[k],
            format!("{c3}"),
        ));
        stage.checks.push(Check::from_bool(
            format!("b{}-squared-equals-cramer-quotient", k + 1),
            sol.b_sq[k].rf_equal(&sol.cramer[k]),
            "p_i/q versus n_i/det M",
        ));
    }
    let one_minus_t = RatFunc::from_poly(MultiPoly::one() - MultiPoly::t());
    let b3 = &(&one_minus_t - &sol.b_sq[0]) - &sol.b_sq[1];
    stage.checks.push(Check::from_bool(
        "b3-squared-consistency",
        sol.b_sq[2].rf_equal(&b3),
        "b3^2 = 1 - t - b1^2 - b2^2",
    ));
    stage.checks.extend(sample_point_checks(&relations, &sys, &sol));
    for (k, p) in sol.p.iter().enumerate() {
        stage.object(format!("p{}", k + 1), p);
    }
    stage.object("q", &sol.q);
    stage.object("detM", &sol.det_m);
    trace.stages.push(stage);

    if opts.mutation == Some(Mutation::SolutionP1) {
        sol.p[0] = &sol.p[0] + &MultiPoly::t().pow(3);
    }
    let mut stage = Stage::new("leading-ratios");
    stage.checks = system::verify_leading_ratios(&sol, &reference.leading);
    for (k, name) in ["p1", "p2", "p3", "q"].iter().enumerate() {
        stage.object(format!("lead-{name}"), &reference.leading[k]);
    }
    trace.stages.push(stage);

    let mut stage = Stage::new("derivative-identities");
    let polys = derivative::derivative_identity_polys(&sol, eps);
    let (checks, coeffs) = derivative::extract_and_check_t5(&polys, &reference.t5);
    stage.checks = checks;
    let spot = coeffs[0].eval(&sample_point());
    let want = int(11520 * eps.value());
    stage.checks.push(Check::from_bool(
        "P1-t5-at-(1,2,4)",
        spot == want,
        format!("{spot} (expected {want})"),
    ));
    for (k, p) in polys.iter().enumerate() {
        stage.object(format!("P{}-terms", k + 1), p.len());
        stage.object(format!("P{}-t5", k + 1), &coeffs[k]);
    }
    trace.stages.push(stage);

    let mut stage = Stage::new("t5-factors");
    let mut rows = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        let (checks, row) = derivative::analyze_t5_factor(c, k + 1);
        stage.checks.extend(checks);
        let name = format!("P{}-t5-row", k + 1);
        stage.checks.push(match row {
            Some(r) if r == reference.mu_system[k] => Check::pass(name, format!("{r:?}")),
            Some(r) => Check::fail(name, format!("{r:?} versus {:?}", reference.mu_system[k])),
            None => Check::fail(name, "no linear factor extracted"),
        });
        rows.push(row);
    }
    trace.stages.push(stage);

    let mut stage = Stage::new("mu-system");
    let kernel = derivative::solve_mu_system(&reference.mu_system);
    stage.checks.push(Check::from_bool(
        "mu-system-rank-2",
        kernel.rank == 2,
        format!("rank {}", kernel.rank),
    ));
    stage.checks.push(Check::from_bool(
        "mu-system-kernel-diagonal",
        kernel.basis == vec![[1, 1, 1]],
        format!("{:?}", kernel.basis),
    ));
    stage.object("matrix", format!("{:?}", reference.mu_system));
    trace.stages.push(stage);

    let mut stage = Stage::new("cross-validation");
    let input = crossval::CrossValidationInput {
        eps_value: eps.value(),
        relations: &relations,
        reduced: &reduced,
        system: &sys,
        solution: &sol,
        derivative_polys: &polys,
    };
    stage.checks = crossval::cross_validate(&input, opts.random_points.max(100), opts.seed);
    stage.object("seed", opts.seed);
    stage.object("points", opts.random_points.max(100));
    trace.stages.push(stage);

    trace.relations = Some(relations);
    trace.reduced_system = Some(sys);
    trace.solution = Some(sol);
    trace.derivative_polys = Some(polys);
    trace.t5_coeffs = Some(coeffs);
    trace.mu_system_kernel = Some(kernel);
    Ok(())
}

fn cubic_stage(ids: &[CubicIdentity; 3]) -> Stage {
    let mut stage = Stage::new("cubic-identities");
    for id in ids {
        for (k, f) in id.forms.iter().enumerate() {
            stage.object(format!("{}-{}", id.name, k), f);
            if k > 0 {
                stage.checks.push(Check::from_bool(
                    format!("{}-form-{}", id.name, k),
                    *f == id.forms[0],
                    format!("{f}"),
                ));
            }
        }
    }
    let c = &ids[2];
    let vals: Vec<Rational> = c.forms.iter().map(|f| f.eval(&sample_point())).collect();
    stage.checks.push(Check::from_bool(
        "cubic-sum-c-at-(1,2,4)",
        vals.iter().all(|v| *v == int(-18)),
        format!("{vals:?}"),
    ));
    stage
}

fn gauss_stage(eps: Epsilon, relations: &[GaussRelation; 3]) -> Stage {
    let mut stage = Stage::new("gauss-relations");
    for r in relations {
        stage.object(format!("{}-A^2", r.label()), &r.a2_coeff);
        for s in Slot::AFFINE {
            stage.object(format!("{}-{}", r.label(), s.label()), r.rhs.slot(s));
        }
        stage.checks.push(Check::from_bool(
            format!("{}-A2-coefficient-nonzero", r.label()),
            !r.a2_coeff.is_zero(),
            format!("{}", r.a2_coeff),
        ));
    }
    // Builder properties, checked on freshly built relations.
    let fresh = relations::build_gauss_relations(eps);
    let other = relations::build_gauss_relations(eps.flip());
    let expect_12 = RatFunc::frac(
        MultiPoly::t().scale_int(2),
        MultiPoly::diff_mu(3, 1) * MultiPoly::diff_mu(3, 2),
    );
    stage.checks.push(Check::from_bool(
        "gauss-1212-A2-coefficient",
        fresh[0].a2_coeff.rf_equal(&expect_12),
        format!("{}", fresh[0].a2_coeff),
    ));
    let a2_eps_free = fresh
        .iter()
        .zip(other.iter())
        .all(|(a, b)| a.a2_coeff.rf_equal(&b.a2_coeff));
    stage.checks.push(Check::from_bool(
        "gauss-A2-coefficients-independent-of-eps",
        a2_eps_free,
        "eps enters only through the right-hand sides",
    ));
    for r in relations {
        let note = match relations::compare_with_generic(r, eps) {
            GenericAgreement::Identical => "coincides with the generic frame relation",
            GenericAgreement::A2SignReversed => {
                "A^2 coefficient has the opposite sign to the generic frame relation; used as displayed"
            }
            GenericAgreement::Different => "differs from the generic frame relation",
        };
        stage.notes.push(format!("{}: {note}", r.label()));
    }
    stage
}

/// Fixed-point oracle at `mu = (1,2,4)`, `t = 1/3`.
fn sample_point_checks(relations: &[GaussRelation; 3], sys: &LinearSystem2, sol: &BSquaredSolution) -> Vec<Check> {
    let p = sample_point();
    let mut out = Vec::new();
    match crossval::numeric_oracle(relations, &p) {
        Some(o) => {
            let q = sol.q.eval(&p);
            let ok = (0..3).all(|i| sol.p[i].eval(&p) / &q == o.b_sq[i]);
            out.push(Check::from_bool(
                "sample-point-b-squared",
                ok,
                format!("oracle b^2 = ({}, {}, {})", o.b_sq[0], o.b_sq[1], o.b_sq[2]),
            ));
            let m: Option<Vec<Rational>> = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|&(i, j)| sys.m[i][j].eval(&p))
                .collect();
            let r: Option<Vec<Rational>> = sys.rhs.iter().map(|x| x.eval(&p)).collect();
            let direct = m.zip(r).map(|(m, r)| {
                let det = &m[0] * &m[3] - &m[1] * &m[2];
                (&r[0] * &m[3] - &m[1] * &r[1]) / det
            });
            out.push(Check::from_bool(
                "sample-point-cramer-on-M",
                direct.as_ref() == Some(&o.b_sq[0]),
                format!("{direct:?}"),
            ));
            let res_ok = relations.iter().all(|r| {
                r.residual(&p, &o.a_sq, &o.b_sq)
                    .map(|v| v == int(0))
                    .unwrap_or(false)
            });
            out.push(Check::from_bool(
                "sample-point-gauss-residuals",
                res_ok,
                format!("A^2 = {}", o.a_sq),
            ));
        }
        None => out.push(Check::fail("sample-point-oracle", "inadmissible sample point")),
    }
    out
}
