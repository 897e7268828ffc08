use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;

use super::ambient::AmbientSpace;
use super::dual::{seed, seed2, Dual, Scalar};
use super::immersion::Surface;
use super::linalg::{det4_cols, inner, inv3, inv_spd, mat_to_f64, mat_vec, to_f64, Mat};
use super::GeomError;

/// Below this `|cos(theta)|` the orientation falls back to the determinant rule.
pub const ORIENTATION_COS_THRESHOLD: f64 = 1e-12;

/// How the sign of the unit normal is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Orientation {
    /// `cos(theta) >= 0` when nonzero; otherwise `det(f_1, f_2, f_3, N) > 0`.
    Canonical,
    /// `<N, v> > 0` for the given ambient vector.
    Along([f64; 4]),
}

/// Local extrinsic data at one parameter point, at scalar type `S`.
#[derive(Debug, Clone, Copy)]
pub struct Local<S> {
    pub x: [S; 4],
    pub jac: [[S; 4]; 3],
    pub normal: [S; 4],
    pub g: Mat<S, 3>,
    pub g_inv: Mat<S, 3>,
    pub ii: Mat<S, 3>,
    pub shape: Mat<S, 3>,
    pub cos_theta: S,
    /// Coordinates of `T` in the basis `f_1, f_2, f_3`.
    pub t_coords: [S; 3],
}

/// Unit normal for the tangent frame `jac` at `x`, with its orientation applied.
pub fn unit_normal<S: Scalar>(
    metric: &Mat<S, 4>,
    jac: &[[S; 4]; 3],
    orient: Orientation,
) -> Result<[S; 4], GeomError> {
    let cov: [S; 4] = std::array::from_fn(|a| {
        let e: [S; 4] = std::array::from_fn(|b| if a == b { S::one() } else { S::zero() });
        det4_cols(&[jac[0], jac[1], jac[2], e])
    });
    let ginv = inv_spd(metric).ok_or(GeomError::Degenerate("ambient metric"))?;
    let raised = mat_vec(&ginv, &cov);
    let mut n2 = S::zero();
    for a in 0..4 {
        n2 += cov[a] * raised[a];
    }
    if !(n2.re() > 1e-300) {
        return Err(GeomError::RankDeficient);
    }
    let norm = n2.sqrt();
    let n: [S; 4] = raised.map(|v| v / norm);
    let sign = match orient {
        Orientation::Canonical => {
            let c = n[3].re() * metric[3][3].re();
            if c.abs() > ORIENTATION_COS_THRESHOLD && c < 0.0 {
                -1.0
            } else {
                1.0
            }
        }
        Orientation::Along(v) => {
            let gp = mat_to_f64(metric);
            if inner(&gp, &to_f64(&n), &v) < 0.0 {
                -1.0
            } else {
                1.0
            }
        }
    };
    Ok(n.map(|v| v.scale(sign)))
}

/// Induced metric only (cheaper than [`local`]).
pub fn induced_metric<S: Scalar, F: Surface>(surf: &F, amb: &AmbientSpace, u: &[S; 3]) -> Result<Mat<S, 3>, GeomError> {
    let mut x = [S::zero(); 4];
    let mut jac = [[S::zero(); 4]; 3];
    for k in 0..3 {
        let p = surf.point::<Dual<S>>(&seed(u, k))?;
        x = p.map(|v| v.re);
        jac[k] = p.map(|v| v.du);
    }
    let metric = amb.metric_at(&x)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| inner(&metric, &jac[i], &jac[j]))))
}

/// Point and unit normal (first derivatives only).
pub fn point_and_normal<S: Scalar, F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    u: &[S; 3],
    orient: Orientation,
) -> Result<([S; 4], [S; 4]), GeomError> {
    let mut x = [S::zero(); 4];
    let mut jac = [[S::zero(); 4]; 3];
    for k in 0..3 {
        let p = surf.point::<Dual<S>>(&seed(u, k))?;
        x = p.map(|v| v.re);
        jac[k] = p.map(|v| v.du);
    }
    let metric = amb.metric_at(&x)?;
    Ok((x, unit_normal(&metric, &jac, orient)?))
}

/// Metric, second fundamental form, shape operator, angle function and `T`.
pub fn local<S: Scalar, F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    u: &[S; 3],
    orient: Orientation,
) -> Result<Local<S>, GeomError> {
    let mut x = [S::zero(); 4];
    let mut jac = [[S::zero(); 4]; 3];
    let mut hess = [[[S::zero(); 4]; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let p = surf.point::<Dual<Dual<S>>>(&seed2(u, i, j))?;
            x = p.map(|v| v.re.re);
            jac[i] = p.map(|v| v.du.re);
            jac[j] = p.map(|v| v.re.du);
            hess[i][j] = p.map(|v| v.du.du);
            hess[j][i] = hess[i][j];
        }
    }
    let metric = amb.metric_at(&x)?;
    let gamma = amb.christoffel_at(&x)?;
    let g: Mat<S, 3> = std::array::from_fn(|i| std::array::from_fn(|j| inner(&metric, &jac[i], &jac[j])));
    let g_inv = inv3(&g).ok_or(GeomError::RankDeficient)?;
    let normal = unit_normal(&metric, &jac, orient)?;
    let ii: Mat<S, 3> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let acc: [S; 4] = std::array::from_fn(|k| {
                let mut v = hess[i][j][k];
                for a in 0..4 {
                    for b in 0..4 {
                        v += gamma[k][a][b] * jac[i][a] * jac[j][b];
                    }
                }
                v
            });
            inner(&metric, &acc, &normal)
        })
    });
    let shape: Mat<S, 3> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut v = S::zero();
            for k in 0..3 {
                v += g_inv[i][k] * ii[k][j];
            }
            v
        })
    });
    let dt: [S; 4] = [S::zero(), S::zero(), S::zero(), S::one()];
    let cos_theta = inner(&metric, &normal, &dt);
    let proj: [S; 3] = std::array::from_fn(|j| inner(&metric, &dt, &jac[j]));
    let t_coords = mat_vec(&g_inv, &proj);
    Ok(Local {
        x,
        jac,
        normal,
        g,
        g_inv,
        ii,
        shape,
        cos_theta,
        t_coords,
    })
}

/// Everything recorded about one grid node.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSample {
    pub point: [f64; 3],
    pub chart_point: [f64; 4],
    pub induced_metric: Mat<f64, 3>,
    pub second_fund: Mat<f64, 3>,
    pub shape: Mat<f64, 3>,
    /// Ascending.
    pub principal_curvatures: [f64; 3],
    /// `frame[a]` is the `g`-orthonormal principal direction for
    /// `principal_curvatures[a]`, in parameter coordinates.
    pub frame: [[f64; 3]; 3],
    pub normal: [f64; 4],
    pub cos_theta: f64,
    pub t_components: [f64; 3],
    pub normal_norm_error: f64,
    pub self_adjoint_error: f64,
}

impl CurvatureSample {
    pub fn mean_curvature(&self) -> f64 {
        (self.shape[0][0] + self.shape[1][1] + self.shape[2][2]) / 3.0
    }

    pub fn inner(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        inner(&self.induced_metric, a, b)
    }

    pub fn apply_shape(&self, v: &[f64; 3]) -> [f64; 3] {
        mat_vec(&self.shape, v)
    }
}

/// Generalized symmetric eigenproblem `II v = k g v`.
pub fn principal_decomposition(g: &Mat<f64, 3>, ii: &Mat<f64, 3>) -> Result<([f64; 3], [[f64; 3]; 3]), GeomError> {
    let gm = Matrix3::from_fn(|i, j| g[i][j]);
    let im = Matrix3::from_fn(|i, j| 0.5 * (ii[i][j] + ii[j][i]));
    let chol = gm.cholesky().ok_or(GeomError::RankDeficient)?;
    let l = chol.l();
    let l_inv = l.try_inverse().ok_or(GeomError::RankDeficient)?;
    let a = l_inv * im * l_inv.transpose();
    let a = 0.5 * (a + a.transpose());
    let eig = SymmetricEigen::new(a);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&p, &q| eig.eigenvalues[p].total_cmp(&eig.eigenvalues[q]));
    let back = l_inv.transpose() * eig.eigenvectors;
    let vals = order.map(|k| eig.eigenvalues[k]);
    let frame = order.map(|k| [back[(0, k)], back[(1, k)], back[(2, k)]]);
    Ok((vals, frame))
}

pub fn shape_operator_at<F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    u: &[f64; 3],
    orient: Orientation,
) -> Result<CurvatureSample, GeomError> {
    let loc = local::<f64, F>(surf, amb, u, orient)?;
    let (vals, frame) = principal_decomposition(&loc.g, &loc.ii)?;
    let metric = amb.metric_at(&loc.x)?;
    let nn = inner(&metric, &loc.normal, &loc.normal);
    let mut asym: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut gs_ij = 0.0;
            let mut gs_ji = 0.0;
            for k in 0..3 {
                gs_ij += loc.g[i][k] * loc.shape[k][j];
                gs_ji += loc.g[j][k] * loc.shape[k][i];
            }
            asym = asym.max((gs_ij - gs_ji).abs());
        }
    }
    Ok(CurvatureSample {
        point: *u,
        chart_point: loc.x,
        induced_metric: loc.g,
        second_fund: loc.ii,
        shape: loc.shape,
        principal_curvatures: vals,
        frame,
        normal: loc.normal,
        cos_theta: loc.cos_theta,
        t_components: loc.t_coords,
        normal_norm_error: (nn - 1.0).abs(),
        self_adjoint_error: asym,
    })
}
