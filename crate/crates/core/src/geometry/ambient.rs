use serde::Serialize;

use super::dual::{seed, Dual, Scalar};
use super::linalg::{inv_spd, zeros, Mat};
use super::GeomError;
use crate::algebra::Epsilon;

/// Chart points with `|x|^2` above this are treated as the stereographic
/// chart's excluded point.
pub const STEREO_RADIUS_SQ_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartModel {
    SphereStereographic,
    HyperbolicHalfSpace,
}

/// `Q^3_eps x R` in a single chart. Coordinates are `(x1, x2, x3, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmbientSpace {
    pub epsilon: Epsilon,
    pub model: ChartModel,
}

impl AmbientSpace {
    pub fn new(epsilon: Epsilon) -> Self {
        let model = match epsilon {
            Epsilon::Sphere => ChartModel::SphereStereographic,
            Epsilon::Hyperbolic => ChartModel::HyperbolicHalfSpace,
        };
        AmbientSpace { epsilon, model }
    }

    pub fn check_domain<S: Scalar>(&self, x: &[S; 4]) -> Result<(), GeomError> {
        let p = [x[0].re(), x[1].re(), x[2].re(), x[3].re()];
        if p.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::OutsideChart { point: p });
        }
        let ok = match self.model {
            ChartModel::SphereStereographic => {
                p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < STEREO_RADIUS_SQ_LIMIT
            }
            ChartModel::HyperbolicHalfSpace => p[2] > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(GeomError::OutsideChart { point: p })
        }
    }

    /// Conformal factor of the spatial block.
    pub fn conformal<S: Scalar>(&self, x: &[S; 4]) -> S {
        match self.model {
            ChartModel::SphereStereographic => {
                let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                let d = S::one() + r2;
                S::cst(4.0) / (d * d)
            }
            ChartModel::HyperbolicHalfSpace => S::one() / (x[2] * x[2]),
        }
    }

    /// Product metric `lambda(x) (dx1^2 + dx2^2 + dx3^2) + dt^2`.
    pub fn metric_at<S: Scalar>(&self, x: &[S; 4]) -> Result<Mat<S, 4>, GeomError> {
        self.check_domain(x)?;
        Ok(self.metric_unchecked(x))
    }

    fn metric_unchecked<S: Scalar>(&self, x: &[S; 4]) -> Mat<S, 4> {
        let l = self.conformal(x);
        let mut g = zeros();
        for (i, row) in g.iter_mut().enumerate().take(3) {
            row[i] = l;
        }
        g[3][3] = S::one();
        g
    }

    /// `Gamma[k][i][j]`, from forward-mode derivatives of [`Self::metric_at`].
    pub fn christoffel_at<S: Scalar>(&self, x: &[S; 4]) -> Result<[Mat<S, 4>; 4], GeomError> {
        self.check_domain(x)?;
        let g = self.metric_unchecked(x);
        let ginv = inv_spd(&g).ok_or(GeomError::Degenerate("ambient metric"))?;
        // dg[l][i][j] = d_l g_ij
        let dg: [Mat<S, 4>; 4] = std::array::from_fn(|l| {
            let gd = self.metric_unchecked::<Dual<S>>(&seed(x, l));
            gd.map(|row| row.map(|v| v.du))
        });
        let mut gamma = [zeros::<S, 4>(); 4];
        for k in 0..4 {
            for i in 0..4 {
                for j in i..4 {
                    let mut acc = S::zero();
                    for l in 0..4 {
                        let term = dg[i][l][j] + dg[j][l][i] - dg[l][i][j];
                        acc += ginv[k][l] * term;
                    }
                    let v = acc.scale(0.5);
                    gamma[k][i][j] = v;
                    gamma[k][j][i] = v;
                }
            }
        }
        Ok(gamma)
    }

    /// Geodesic acceleration `-Gamma(v, v)`.
    pub fn geodesic_accel<S: Scalar>(&self, x: &[S; 4], v: &[S; 4]) -> Result<[S; 4], GeomError> {
        let gamma = self.christoffel_at(x)?;
        Ok(std::array::from_fn(|k| {
            let mut acc = S::zero();
            for i in 0..4 {
                for j in 0..4 {
                    acc += gamma[k][i][j] * v[i] * v[j];
                }
            }
            -acc
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_space_metric_examples() {
        let h = AmbientSpace::new(Epsilon::Hyperbolic);
        let g = h.metric_at(&[0.0, 0.0, 1.0, 3.0]).unwrap();
        assert_eq!(g[0][0], 1.0);
        assert_eq!(g[2][2], 1.0);
        let g = h.metric_at(&[0.0, 0.0, 2.0, 0.0]).unwrap();
        assert_eq!(g[1][1], 0.25);
        assert_eq!(g[3][3], 1.0);
        assert!(h.metric_at(&[0.0, 0.0, -1.0, 0.0]).is_err());
    }

    #[test]
    fn stereographic_factor_at_origin() {
        let s = AmbientSpace::new(Epsilon::Sphere);
        let g = s.metric_at(&[0.0; 4]).unwrap();
        assert_eq!(g[0][0], 4.0);
        assert_eq!(g[0][1], 0.0);
    }

    #[test]
    fn stereographic_metric_reproduces_great_circle_length() {
        // The chart line (r, 0, 0), r in [0, inf), is half a great circle: length pi/2 up to r = 1.
        let s = AmbientSpace::new(Epsilon::Sphere);
        let n = 2000;
        let mut len = 0.0;
        for k in 0..n {
            let r = (k as f64 + 0.5) / n as f64;
            len += s.metric_at(&[r, 0.0, 0.0, 0.0]).unwrap()[0][0].sqrt() / n as f64;
        }
        assert!((len - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn half_space_christoffels() {
        let h = AmbientSpace::new(Epsilon::Hyperbolic);
        let g = h.christoffel_at(&[0.3, -0.2, 1.0, 0.0]).unwrap();
        assert!((g[2][0][0] - 1.0).abs() < 1e-15);
        assert!((g[0][0][2] + 1.0).abs() < 1e-15);
        assert!((g[2][2][2] + 1.0).abs() < 1e-15);
        for k in 0..4 {
            for i in 0..4 {
                assert_eq!(g[k][i][3], 0.0);
                assert_eq!(g[3][k][i], 0.0);
            }
        }
    }
}
