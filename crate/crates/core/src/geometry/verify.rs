use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::ambient::AmbientSpace;
use super::dual::{seed, Dual};
use super::geodesic::{parallel_mean_curvature, sphere_torus_parallel_oracle, GeodesicOptions};
use super::helicoid::seeded_homogeneity;
use super::immersion::{Family, Immersion, Surface};
use super::linalg::mat_vec;
use super::residuals::{self, fundamental_residuals};
use super::shape::{shape_operator_at, CurvatureSample, Orientation};
use super::GeomError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Observed versus closed-form principal curvatures.
    pub curvature: f64,
    /// Per-curvature `max - min` over the grid.
    pub constancy: f64,
    /// Gauss, Codazzi, `nabla T` and `X(cos)` residuals.
    pub residual: f64,
    /// `|T|^2 + cos^2 = 1` and `<N, N> = 1`.
    pub identity: f64,
    pub self_adjoint: f64,
    pub cos_constancy: f64,
    /// `|cos(theta)|` on vertical cylinders.
    pub cos_zero: f64,
    /// Standard deviation of offset mean curvature, and the closed-form offset oracle.
    pub parallel: f64,
    pub ad_vs_fd: f64,
    pub graph: f64,
    pub pullback: f64,
    /// Curvature values closer than this count as one.
    pub distinct_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            curvature: 1e-7,
            constancy: 1e-8,
            residual: 1e-7,
            identity: 1e-10,
            self_adjoint: 1e-9,
            cos_constancy: 1e-9,
            cos_zero: 1e-10,
            parallel: 1e-6,
            ad_vs_fd: 1e-7,
            graph: 1e-12,
            pullback: 1e-10,
            distinct_gap: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    /// Nodes per parameter axis for curvature and residual checks.
    pub resolution: usize,
    /// Nodes per axis for offset checks.
    pub parallel_resolution: usize,
    pub offsets: Vec<f64>,
    pub ad_points: usize,
    pub homogeneity_motions: usize,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            resolution: 10,
            parallel_resolution: 5,
            offsets: vec![0.1, 0.2, 0.3],
            ad_points: 50,
            homogeneity_motions: 20,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub grid: GridSpec,
    pub tol: Tolerances,
    pub geodesic: GeodesicOptions,
    /// Skip curvature/residual checks (offset table only).
    pub parallel_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub max: f64,
    pub mean: f64,
}

impl Stat {
    fn of(values: &[f64]) -> Self {
        let max = values.iter().copied().fold(0.0f64, |a, b| a.max(b));
        let mean = if values.is_empty() {
            0.0
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        };
        Stat { max, mean }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureSummary {
    pub expected: Option<[f64; 3]>,
    /// Sign applied to `expected` for the comparison (orientation is a convention).
    pub expected_sign: f64,
    pub observed_mean: [f64; 3],
    pub observed_min: [f64; 3],
    pub observed_max: [f64; 3],
    pub distinct: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParallelRow {
    pub offset: f64,
    pub samples: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub oracle: Option<f64>,
    pub oracle_error: Option<f64>,
    pub stretch_min: f64,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleFailure {
    pub point: [f64; 3],
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub family: Family,
    pub epsilon: i64,
    pub params: Value,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub criteria: Vec<Criterion>,
    pub samples_summary: BTreeMap<String, Stat>,
    pub curvatures: Option<CurvatureSummary>,
    pub cos_theta: Option<[f64; 2]>,
    pub parallel: Vec<ParallelRow>,
    pub failures: Vec<SampleFailure>,
    pub passed: bool,
}

impl GeometryReport {
    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn crit(name: impl Into<String>, expected: Value, observed: Value, pass: bool) -> Criterion {
    Criterion {
        name: name.into(),
        expected,
        observed,
        pass,
    }
}

fn le(name: &str, observed: f64, tol: f64) -> Criterion {
    crit(name, json!(format!("<= {tol:e}")), json!(observed), observed <= tol)
}

fn grid_nodes(imm: &Immersion, n: usize) -> Vec<[f64; 3]> {
    let axes = imm.domain().map(|a| a.nodes(n));
    let mut out = Vec::with_capacity(n * n * n);
    for &a in &axes[0] {
        for &b in &axes[1] {
            for &c in &axes[2] {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn params_json(imm: &Immersion) -> Value {
    let p = imm.params;
    match imm.family {
        Family::Slice => json!({ "t0": p.t0 }),
        Family::TotallyGeodesicCylinder => json!({}),
        Family::UmbilicalCylinder => json!({ "r1": p.r1 }),
        Family::SphereTorusCylinder | Family::HyperbolicTorusCylinder => json!({ "r1": p.r1, "r2": p.r2 }),
        Family::ParabolicHelicoid => json!({ "B": p.b }),
    }
}

/// Maximum deviation between dual-number and central-difference first
/// derivatives of the immersion at seeded random points.
pub fn ad_finite_difference_error(imm: &Immersion, points: usize, seed_value: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_value);
    let dom = imm.domain();
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let u: [f64; 3] = std::array::from_fn(|i| rng.gen_range(dom[i].lo..dom[i].hi));
        for k in 0..3 {
            let ad = imm.map::<Dual<f64>>(&seed(&u, k)).map(|c| c.du);
            let mut up = u;
            let mut dn = u;
            up[k] += h;
            dn[k] -= h;
            let (fp, fm) = (imm.map(&up), imm.map(&dn));
            for i in 0..4 {
                worst = worst.max((ad[i] - (fp[i] - fm[i]) / (2.0 * h)).abs());
            }
        }
    }
    worst
}

struct NodeResult {
    sample: CurvatureSample,
    residuals: BTreeMap<String, f64>,
}

fn evaluate_node<F: Surface>(surf: &F, amb: &AmbientSpace, u: &[f64; 3]) -> Result<NodeResult, GeomError> {
    let sample = shape_operator_at(surf, amb, u, Orientation::Canonical)?;
    let mut residuals = fundamental_residuals(surf, amb, &sample, Orientation::Canonical)?;
    let st = mat_vec(&sample.shape, &sample.t_components);
    residuals.insert("t_eigen".to_string(), sample.inner(&st, &st).max(0.0).sqrt());
    Ok(NodeResult { sample, residuals })
}

pub fn grid_verify(imm: &Immersion, opts: &VerifyOptions) -> GeometryReport {
    let amb = AmbientSpace::new(imm.epsilon);
    let tol = &opts.tol;
    let mut criteria = Vec::new();
    let mut failures = Vec::new();
    let mut samples_summary = BTreeMap::new();
    let mut curvatures = None;
    let mut cos_range = None;

    if !opts.parallel_only {
        let nodes = grid_nodes(imm, opts.grid.resolution);
        let results: Vec<Result<NodeResult, SampleFailure>> = nodes
            .par_iter()
            .map(|u| {
                evaluate_node(imm, &amb, u).map_err(|e| SampleFailure {
                    point: *u,
                    error: e.to_string(),
                })
            })
            .collect();
        let mut ok = Vec::new();
        for r in results {
            match r {
                Ok(n) => ok.push(n),
                Err(f) => failures.push(f),
            }
        }
        criteria.push(crit(
            "samples-computed",
            json!(nodes.len()),
            json!(ok.len()),
            failures.is_empty() && !ok.is_empty(),
        ));
        if !ok.is_empty() {
            let (summary, cs, cr, mut crits) = summarize(imm, &ok, tol);
            samples_summary = summary;
            curvatures = Some(cs);
            cos_range = Some(cr);
            criteria.append(&mut crits);
        }
        let ad = ad_finite_difference_error(imm, opts.grid.ad_points, opts.grid.seed);
        criteria.push(le("ad-vs-finite-differences", ad, tol.ad_vs_fd));

        if imm.family == Family::ParabolicHelicoid {
            let hs = seeded_homogeneity(imm.params.b, opts.grid.homogeneity_motions, opts.grid.seed);
            let g = hs.iter().map(|h| h.graph_residual).fold(0.0f64, f64::max);
            let m = hs.iter().map(|h| h.metric_residual).fold(0.0f64, f64::max);
            criteria.push(crit(
                "homogeneity",
                json!({ "motions": hs.len(), "graph": format!("<= {:e}", tol.graph), "pullback": format!("<= {:e}", tol.pullback) }),
                json!({ "graph": g, "pullback": m }),
                !hs.is_empty() && g <= tol.graph && m <= tol.pullback,
            ));
        }
    }

    let parallel = parallel_table(imm, &amb, opts);
    for row in &parallel {
        let name = format!("isoparametric-offset-{}", row.offset);
        match &row.failure {
            Some(f) => criteria.push(crit(name, json!(format!("std <= {:e}", tol.parallel)), json!(f), false)),
            None => criteria.push(crit(
                name,
                json!(format!("std <= {:e}", tol.parallel)),
                json!(row.std),
                row.std <= tol.parallel,
            )),
        }
        if let (Some(err), None) = (row.oracle_error, &row.failure) {
            criteria.push(crit(
                format!("parallel-oracle-offset-{}", row.offset),
                json!(row.oracle),
                json!(row.mean),
                err <= tol.parallel,
            ));
        }
    }

    let passed = !criteria.is_empty() && criteria.iter().all(|c| c.pass);
    GeometryReport {
        family: imm.family,
        epsilon: imm.epsilon.value(),
        params: params_json(imm),
        grid: opts.grid.clone(),
        tolerances: *tol,
        criteria,
        samples_summary,
        curvatures,
        cos_theta: cos_range,
        parallel,
        failures,
        passed,
    }
}

type Summary = (BTreeMap<String, Stat>, CurvatureSummary, [f64; 2], Vec<Criterion>);

fn summarize(imm: &Immersion, ok: &[NodeResult], tol: &Tolerances) -> Summary {
    let mut crits = Vec::new();
    let mut summary = BTreeMap::new();
    let keys: Vec<String> = ok[0].residuals.keys().cloned().collect();
    for k in &keys {
        let vals: Vec<f64> = ok.iter().map(|n| n.residuals[k]).collect();
        summary.insert(k.clone(), Stat::of(&vals));
    }

    let n = ok.len() as f64;
    let mut kmin = [f64::INFINITY; 3];
    let mut kmax = [f64::NEG_INFINITY; 3];
    let mut kmean = [0.0; 3];
    for node in ok {
        for i in 0..3 {
            let v = node.sample.principal_curvatures[i];
            kmin[i] = kmin[i].min(v);
            kmax[i] = kmax[i].max(v);
            kmean[i] += v / n;
        }
    }
    let spread = (0..3).map(|i| kmax[i] - kmin[i]).fold(0.0f64, f64::max);
    crits.push(le("curvature-constancy", spread, tol.constancy));

    let mut distinct = 1;
    for i in 0..2 {
        if kmean[i + 1] - kmean[i] > tol.distinct_gap {
            distinct += 1;
        }
    }
    crits.push(crit(
        "distinct-curvatures",
        json!(imm.expected_distinct()),
        json!(distinct),
        distinct == imm.expected_distinct(),
    ));

    let expected = imm.expected_curvatures();
    let mut expected_sign = 1.0;
    if let Some(exp) = expected {
        let dev_for = |sign: f64| {
            let mut e = exp.map(|v| sign * v);
            e.sort_by(f64::total_cmp);
            ok.iter()
                .flat_map(|node| (0..3).map(move |i| (node.sample.principal_curvatures[i] - e[i]).abs()))
                .fold(0.0f64, f64::max)
        };
        let (dp, dm) = (dev_for(1.0), dev_for(-1.0));
        let dev = if dm < dp {
            expected_sign = -1.0;
            dm
        } else {
            dp
        };
        let mut shown = exp.map(|v| expected_sign * v);
        shown.sort_by(f64::total_cmp);
        crits.push(crit(
            "principal-curvatures",
            json!({ "values": shown, "tolerance": tol.curvature }),
            json!({ "mean": kmean, "max_deviation": dev }),
            dev <= tol.curvature,
        ));
    }

    let cmin = ok.iter().map(|n| n.sample.cos_theta).fold(f64::INFINITY, f64::min);
    let cmax = ok.iter().map(|n| n.sample.cos_theta).fold(f64::NEG_INFINITY, f64::max);
    crits.push(le("cos-theta-constant", cmax - cmin, tol.cos_constancy));
    let want_cos = imm.expected_cos_theta();
    let cos_dev = (cmax - want_cos).abs().max((cmin - want_cos).abs());
    let cos_tol = if imm.family.is_vertical_cylinder() {
        tol.cos_zero
    } else {
        tol.cos_constancy
    };
    crits.push(crit(
        "cos-theta-value",
        json!(want_cos),
        json!({ "min": cmin, "max": cmax }),
        cos_dev <= cos_tol,
    ));
    if imm.family == Family::ParabolicHelicoid {
        let away = cmin.abs().min((1.0 - cmax.abs()).abs()).min((1.0 - cmin.abs()).abs());
        crits.push(crit(
            "cos-theta-not-0-or-1",
            json!("cos(theta) outside {0, 1, -1}"),
            json!(cmin),
            away > tol.distinct_gap,
        ));
    }

    let worst = |k: &str| summary.get(k).map(|s| s.max).unwrap_or(f64::INFINITY);
    crits.push(le("t-norm-identity", worst(residuals::T_NORM), tol.identity));
    crits.push(le("normal-unit", worst(residuals::NORMAL_NORM), tol.identity));
    crits.push(le("shape-self-adjoint", worst(residuals::SELF_ADJOINT), tol.self_adjoint));
    crits.push(le("gauss-residual", worst(residuals::GAUSS), tol.residual));
    crits.push(le("codazzi-residual", worst(residuals::CODAZZI), tol.residual));
    crits.push(le("t-derivative-residual", worst(residuals::T_DERIV), tol.residual));
    crits.push(le("x-cos-residual", worst(residuals::XCOS), tol.residual));
    if imm.family.is_vertical_cylinder() {
        crits.push(le("t-in-zero-eigenspace", worst("t_eigen"), tol.residual));
    }

    let cs = CurvatureSummary {
        expected,
        expected_sign,
        observed_mean: kmean,
        observed_min: kmin,
        observed_max: kmax,
        distinct,
    };
    (summary, cs, [cmin, cmax], crits)
}

fn parallel_table(imm: &Immersion, amb: &AmbientSpace, opts: &VerifyOptions) -> Vec<ParallelRow> {
    let nodes = grid_nodes(imm, opts.grid.parallel_resolution);
    let base_curvatures = if imm.family == Family::SphereTorusCylinder && !nodes.is_empty() {
        shape_operator_at(imm, amb, &nodes[0], Orientation::Canonical)
            .ok()
            .map(|s| s.principal_curvatures)
    } else {
        None
    };
    opts.grid
        .offsets
        .iter()
        .map(|&s| {
            let results: Vec<Result<(f64, f64), String>> = nodes
                .par_iter()
                .map(|u| {
                    parallel_mean_curvature(imm, amb, u, s, &opts.geodesic)
                        .map(|p| (p.mean_curvature, p.stretch_min))
                        .map_err(|e| format!("at u = {u:?}: {e}"))
                })
                .collect();
            let failure = results.iter().find_map(|r| r.as_ref().err().cloned());
            let hs: Vec<f64> = results.iter().filter_map(|r| r.as_ref().ok().map(|p| p.0)).collect();
            let ratio = results
                .iter()
                .filter_map(|r| r.as_ref().ok().map(|p| p.1))
                .fold(f64::INFINITY, f64::min);
            let n = hs.len().max(1) as f64;
            let mean = hs.iter().sum::<f64>() / n;
            let std = (hs.iter().map(|h| (h - mean) * (h - mean)).sum::<f64>() / n).sqrt();
            let oracle = base_curvatures.map(|k| sphere_torus_parallel_oracle(imm.params.r1, &k, s));
            let oracle_error = oracle.map(|o| hs.iter().map(|h| (h - o).abs()).fold(0.0f64, f64::max));
            ParallelRow {
                offset: s,
                samples: hs.len(),
                mean,
                std,
                min: hs.iter().copied().fold(f64::INFINITY, f64::min),
                max: hs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                oracle,
                oracle_error,
                stretch_min: ratio,
                failure,
            }
        })
        .collect()
}
