use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dual::Scalar;
use super::GeomError;
use crate::algebra::Epsilon;

/// Tolerance for the radius constraints `r1^2 + eps r2^2 = 1`.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Anything that maps a parameter box into the ambient chart and can be
/// evaluated at any [`Scalar`], so derivatives come from dual numbers.
pub trait Surface: Sync {
    fn point<S: Scalar>(&self, u: &[S; 3]) -> Result<[S; 4], GeomError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Slice,
    TotallyGeodesicCylinder,
    UmbilicalCylinder,
    SphereTorusCylinder,
    HyperbolicTorusCylinder,
    ParabolicHelicoid,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Slice,
        Family::TotallyGeodesicCylinder,
        Family::UmbilicalCylinder,
        Family::SphereTorusCylinder,
        Family::HyperbolicTorusCylinder,
        Family::ParabolicHelicoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Slice => "slice",
            Family::TotallyGeodesicCylinder => "totally-geodesic-cylinder",
            Family::UmbilicalCylinder => "umbilical-cylinder",
            Family::SphereTorusCylinder => "sphere-torus-cylinder",
            Family::HyperbolicTorusCylinder => "hyperbolic-torus-cylinder",
            Family::ParabolicHelicoid => "parabolic-helicoid",
        }
    }

    /// The ambient sign a family lives in, when it is forced.
    pub fn forced_epsilon(self) -> Option<Epsilon> {
        match self {
            Family::SphereTorusCylinder => Some(Epsilon::Sphere),
            Family::HyperbolicTorusCylinder | Family::ParabolicHelicoid => Some(Epsilon::Hyperbolic),
            _ => None,
        }
    }

    pub fn is_vertical_cylinder(self) -> bool {
        matches!(
            self,
            Family::TotallyGeodesicCylinder
                | Family::UmbilicalCylinder
                | Family::SphereTorusCylinder
                | Family::HyperbolicTorusCylinder
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GeomError::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// Family parameters; each family reads only the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub r1: f64,
    pub r2: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub t0: f64,
}

impl FamilyParams {
    pub fn defaults(family: Family) -> Self {
        let (r1, r2) = match family {
            Family::SphereTorusCylinder => (0.6, 0.8),
            Family::HyperbolicTorusCylinder => (2f64.sqrt(), 1.0),
            Family::UmbilicalCylinder => (0.8, 0.0),
            _ => (0.0, 0.0),
        };
        FamilyParams {
            r1,
            r2,
            b: if family == Family::ParabolicHelicoid { 1.0 } else { 0.0 },
            t0: 0.0,
        }
    }
}

/// One coordinate of the parameter box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl Axis {
    const fn open(lo: f64, hi: f64) -> Self {
        Axis { lo, hi, periodic: false }
    }

    const fn angle() -> Self {
        Axis {
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
        }
    }

    /// `n` evenly spaced nodes; periodic axes skip the duplicated endpoint.
    pub fn nodes(&self, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![0.5 * (self.lo + self.hi)];
        }
        let div = if self.periodic { n } else { n - 1 } as f64;
        (0..n)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / div)
            .collect()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.periodic || (x >= self.lo - 1e-12 && x <= self.hi + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Immersion {
    pub family: Family,
    pub epsilon: Epsilon,
    pub params: FamilyParams,
}

impl Immersion {
    /// Validates the family's parameter constraints.
    pub fn new(family: Family, epsilon: Epsilon, params: FamilyParams) -> Result<Self, GeomError> {
        let imm = Immersion::new_unchecked(family, epsilon, params)?;
        imm.check_constraint()?;
        Ok(imm)
    }

    /// Skips only the radius relation, so that off-constraint surfaces can be
    /// examined; ambient sign, positivity and finiteness are still enforced.
    pub fn new_unchecked(family: Family, epsilon: Epsilon, params: FamilyParams) -> Result<Self, GeomError> {
        let p = params;
        if ![p.r1, p.r2, p.b, p.t0].iter().all(|v| v.is_finite()) {
            return Err(GeomError::InvalidParameter("parameters must be finite".into()));
        }
        if let Some(e) = family.forced_epsilon() {
            if e != epsilon {
                return Err(GeomError::InvalidParameter(format!(
                    "{family} requires epsilon = {}",
                    e.value()
                )));
            }
        }
        match family {
            Family::SphereTorusCylinder | Family::HyperbolicTorusCylinder => {
                if p.r1 <= 0.0 || p.r2 <= 0.0 {
                    return Err(GeomError::InvalidParameter("radii must be positive".into()));
                }
            }
            Family::UmbilicalCylinder => {
                let ok = p.r1 > 0.0 && (epsilon == Epsilon::Hyperbolic || p.r1 < PI);
                if !ok {
                    return Err(GeomError::InvalidParameter(
                        "umbilical radius r1 must lie in (0, pi) for eps = 1 and be positive for eps = -1"
                            .into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(Immersion {
            family,
            epsilon,
            params,
        })
    }

    /// Residual of the radius relation, if the family has one.
    pub fn constraint_residual(&self) -> Option<f64> {
        let p = self.params;
        match self.family {
            Family::SphereTorusCylinder => Some(p.r1 * p.r1 + p.r2 * p.r2 - 1.0),
            Family::HyperbolicTorusCylinder => Some(p.r1 * p.r1 - p.r2 * p.r2 - 1.0),
            _ => None,
        }
    }

    pub fn check_constraint(&self) -> Result<(), GeomError> {
        match self.constraint_residual() {
            Some(r) if r.abs() > CONSTRAINT_TOL => Err(GeomError::InvalidParameter(format!(
                "{} requires r1^2 {} r2^2 = 1 (residual {r:e})",
                self.family,
                if self.family == Family::SphereTorusCylinder { "+" } else { "-" }
            ))),
            _ => Ok(()),
        }
    }

    pub fn domain(&self) -> [Axis; 3] {
        let height = Axis::open(-1.0, 1.0);
        let hyperbolic = self.epsilon == Epsilon::Hyperbolic;
        match self.family {
            Family::Slice if hyperbolic => [Axis::open(-1.0, 1.0), Axis::open(-1.0, 1.0), Axis::open(0.5, 2.0)],
            Family::Slice => [Axis::open(-0.8, 0.8); 3],
            Family::TotallyGeodesicCylinder if hyperbolic => [Axis::open(-1.0, 1.0), Axis::open(0.5, 2.0), height],
            Family::TotallyGeodesicCylinder => [Axis::open(-0.8, 0.8), Axis::open(-0.8, 0.8), height],
            Family::UmbilicalCylinder => [Axis::open(0.4, PI - 0.4), Axis::angle(), height],
            Family::SphereTorusCylinder => [Axis::angle(), Axis::angle(), height],
            Family::HyperbolicTorusCylinder => [Axis::open(-1.0, 1.0), Axis::angle(), height],
            Family::ParabolicHelicoid => [Axis::open(-1.0, 1.0), Axis::open(-1.0, 1.0), Axis::open(0.5, 2.0)],
        }
    }

    pub fn map<S: Scalar>(&self, u: &[S; 3]) -> [S; 4] {
        let p = self.params;
        let hyperbolic = self.epsilon == Epsilon::Hyperbolic;
        let c = S::cst;
        match self.family {
            Family::Slice => [u[0], u[1], u[2], c(p.t0)],
            Family::TotallyGeodesicCylinder if hyperbolic => [u[0], S::zero(), u[1], u[2]],
            Family::TotallyGeodesicCylinder => [u[0], u[1], S::zero(), u[2]],
            Family::UmbilicalCylinder => {
                let (th, ph) = (u[0], u[1]);
                let dir = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
                if hyperbolic {
                    let (rad, ctr) = (p.r1.sinh(), p.r1.cosh());
                    [dir[0].scale(rad), dir[1].scale(rad), c(ctr) + dir[2].scale(rad), u[2]]
                } else {
                    let rad = (0.5 * p.r1).tan();
                    [dir[0].scale(rad), dir[1].scale(rad), dir[2].scale(rad), u[2]]
                }
            }
            Family::SphereTorusCylinder => {
                let (a, b) = (u[0], u[1]);
                let x4 = b.sin().scale(p.r2);
                let den = S::one() - x4;
                [
                    a.cos().scale(p.r1) / den,
                    a.sin().scale(p.r1) / den,
                    b.cos().scale(p.r2) / den,
                    u[2],
                ]
            }
            Family::HyperbolicTorusCylinder => {
                let w = u[0].exp().scale(1.0 / p.r1);
                [w * u[1].cos().scale(p.r2), w * u[1].sin().scale(p.r2), w, u[2]]
            }
            Family::ParabolicHelicoid => [u[0], u[1], u[2], -(u[2].ln().scale(p.b))],
        }
    }

    /// Closed-form principal curvatures (as an unordered set, up to a global
    /// sign), where they are known.
    pub fn expected_curvatures(&self) -> Option<[f64; 3]> {
        let p = self.params;
        let e = self.epsilon.as_f64();
        match self.family {
            Family::Slice | Family::TotallyGeodesicCylinder => Some([0.0; 3]),
            Family::UmbilicalCylinder => {
                let k = if e > 0.0 { 1.0 / p.r1.tan() } else { 1.0 / p.r1.tanh() };
                Some([0.0, k, k])
            }
            Family::SphereTorusCylinder | Family::HyperbolicTorusCylinder => {
                Some([0.0, e * p.r2 / p.r1, -p.r1 / p.r2])
            }
            Family::ParabolicHelicoid => None,
        }
    }

    /// Number of distinct principal curvatures.
    pub fn expected_distinct(&self) -> usize {
        match self.family {
            Family::Slice | Family::TotallyGeodesicCylinder => 1,
            Family::UmbilicalCylinder | Family::ParabolicHelicoid => 2,
            Family::SphereTorusCylinder | Family::HyperbolicTorusCylinder => 3,
        }
    }

    /// Closed-form `cos(theta)` for the canonical orientation.
    pub fn expected_cos_theta(&self) -> f64 {
        match self.family {
            Family::Slice => 1.0,
            Family::ParabolicHelicoid => 1.0 / (1.0 + self.params.b * self.params.b).sqrt(),
            _ => 0.0,
        }
    }
}

impl Surface for Immersion {
    fn point<S: Scalar>(&self, u: &[S; 3]) -> Result<[S; 4], GeomError> {
        Ok(self.map(u))
    }
}
