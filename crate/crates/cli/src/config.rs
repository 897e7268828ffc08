use std::path::PathBuf;

use isoparam_core::algebra::Epsilon;
use isoparam_core::geometry::{Family, FamilyParams, Immersion, Tolerances, VerifyOptions};
use serde::Serialize;

use crate::args::{AllArgs, Cli, Command, GeometryArgs, SymbolicArgs, ToleranceArgs};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Validated run configuration; echoed verbatim into the report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub seed: u64,
    #[serde(skip)]
    pub out: PathBuf,
    pub symbolic: Option<SymbolicConfig>,
    pub geometry: Vec<GeometryJob>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicConfig {
    pub epsilons: Vec<Epsilon>,
    pub points: usize,
    #[serde(skip)]
    pub golden: Option<PathBuf>,
    #[serde(skip)]
    pub write_golden: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometryJob {
    pub immersion: Immersion,
    pub options: VerifyOptions,
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

pub fn parse_epsilons(s: &str) -> Result<Vec<Epsilon>, ConfigError> {
    match s.trim() {
        "both" => Ok(Epsilon::BOTH.to_vec()),
        "1" | "+1" => Ok(vec![Epsilon::Sphere]),
        "-1" => Ok(vec![Epsilon::Hyperbolic]),
        other => err(format!("epsilon must be 1, -1 or both (got `{other}`)")),
    }
}

fn tolerances(t: &ToleranceArgs) -> Result<Tolerances, ConfigError> {
    let mut tol = Tolerances::default();
    for (slot, v, name) in [
        (&mut tol.curvature, t.tol_curvature, "tol-curvature"),
        (&mut tol.constancy, t.tol_constancy, "tol-constancy"),
        (&mut tol.residual, t.tol_residual, "tol-residual"),
        (&mut tol.parallel, t.tol_parallel, "tol-parallel"),
    ] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                return err(format!("--{name} must be positive"));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn options(grid: usize, parallel_grid: usize, offsets: Vec<f64>, seed: u64, tol: Tolerances, parallel_only: bool) -> Result<VerifyOptions, ConfigError> {
    if grid < 2 || parallel_grid < 2 {
        return err("grid resolutions must be at least 2");
    }
    if offsets.iter().any(|s| !s.is_finite()) {
        return err("offsets must be finite");
    }
    let mut o = VerifyOptions::default();
    o.grid.resolution = grid;
    o.grid.parallel_resolution = parallel_grid;
    o.grid.offsets = offsets;
    o.grid.seed = seed;
    o.tol = tol;
    o.parallel_only = parallel_only;
    Ok(o)
}

fn symbolic(a: &SymbolicArgs) -> Result<SymbolicConfig, ConfigError> {
    Ok(SymbolicConfig {
        epsilons: parse_epsilons(&a.epsilon)?,
        points: a.points.max(100),
        golden: a.golden.clone(),
        write_golden: a.write_golden.clone(),
    })
}

fn geometry(a: &GeometryArgs, seed: u64, parallel_only: bool) -> Result<Vec<GeometryJob>, ConfigError> {
    let family: Family = a.family.parse().map_err(|e: isoparam_core::geometry::GeomError| ConfigError(e.to_string()))?;
    let eps = match (&a.epsilon, family.forced_epsilon()) {
        (Some(s), _) => parse_epsilons(s)?,
        (None, Some(e)) => vec![e],
        (None, None) => Epsilon::BOTH.to_vec(),
    };
    let mut params = FamilyParams::defaults(family);
    if let Some(v) = a.r1 {
        params.r1 = v;
    }
    if let Some(v) = a.r2 {
        params.r2 = v;
    }
    if let Some(v) = a.b {
        params.b = v;
    }
    if let Some(v) = a.t0 {
        params.t0 = v;
    }
    let opts = options(a.grid, a.parallel_grid, a.offsets.clone(), seed, tolerances(&a.tol)?, parallel_only)?;
    eps.into_iter()
        .map(|e| {
            let immersion = Immersion::new(family, e, params).map_err(|e| ConfigError(e.to_string()))?;
            Ok(GeometryJob {
                immersion,
                options: opts.clone(),
            })
        })
        .collect()
}

fn all(a: &AllArgs, seed: u64) -> Result<Vec<GeometryJob>, ConfigError> {
    let tol = tolerances(&a.tol)?;
    let mut jobs = Vec::new();
    for family in Family::ALL {
        for e in Epsilon::BOTH {
            if family.forced_epsilon().is_some_and(|f| f != e) {
                continue;
            }
            let immersion = Immersion::new(family, e, FamilyParams::defaults(family)).map_err(|e| ConfigError(e.to_string()))?;
            let options = options(a.grid, 5, vec![0.1, 0.2, 0.3], seed, tol, false)?;
            jobs.push(GeometryJob { immersion, options });
        }
    }
    Ok(jobs)
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, ConfigError> {
        let seed = cli.seed;
        let (command, symbolic_cfg, jobs) = match &cli.command {
            Command::Symbolic(a) => ("symbolic", Some(symbolic(a)?), Vec::new()),
            Command::Geometry(a) => ("geometry", None, geometry(a, seed, false)?),
            Command::Parallel(a) => ("parallel", None, geometry(a, seed, true)?),
            Command::All(a) => (
                "all",
                Some(SymbolicConfig {
                    epsilons: Epsilon::BOTH.to_vec(),
                    points: 128,
                    golden: None,
                    write_golden: None,
                }),
                all(a, seed)?,
            ),
        };
        Ok(RunConfig {
            command,
            seed,
            out: cli.out.clone(),
            symbolic: symbolic_cfg,
            geometry: jobs,
        })
    }
}
