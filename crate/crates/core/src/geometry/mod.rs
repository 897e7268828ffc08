//! Numeric verification of model hypersurfaces of `S^3 x R` and `H^3 x R`.
//!
//! Everything is derived from a chart metric and an immersion written once,
//! generically over [`dual::Scalar`]; first, second and third derivatives come
//! from nested dual numbers.

pub mod ambient;
pub mod dual;
pub mod geodesic;
pub mod helicoid;
pub mod immersion;
pub mod linalg;
pub mod residuals;
pub mod shape;
pub mod verify;

use thiserror::Error;

pub use ambient::{AmbientSpace, ChartModel};
pub use geodesic::{geodesic_exp, parallel_mean_curvature, GeodesicOptions, ParallelSurface};
pub use helicoid::{helicoid_homogeneity_check, HelicoidMotion};
pub use immersion::{Family, FamilyParams, Immersion, Surface};
pub use shape::{shape_operator_at, CurvatureSample, Orientation};
pub use verify::{grid_verify, GeometryReport, GridSpec, Tolerances, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point {point:?} is outside the chart domain")]
    OutsideChart { point: [f64; 4] },
    #[error("immersion is not of rank 3")]
    RankDeficient,
    #[error("degenerate {0}")]
    Degenerate(&'static str),
    #[error("geodesic step budget of {steps} exceeded (speed drift {drift:e})")]
    StepBudget { steps: usize, drift: f64 },
    #[error("offset {offset} reaches a focal point near sigma = {sigma:.6}")]
    FocalPoint { offset: f64, sigma: f64 },
    #[error("{0}")]
    InvalidParameter(String),
}
