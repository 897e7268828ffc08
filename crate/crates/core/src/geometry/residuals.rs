use std::collections::BTreeMap;

use super::ambient::AmbientSpace;
use super::dual::{seed, seed2, Dual};
use super::immersion::Surface;
use super::linalg::{mat_vec, Mat};
use super::shape::{induced_metric, local, CurvatureSample, Orientation};
use super::GeomError;

pub const T_NORM: &str = "t_norm";
pub const T_DERIV: &str = "t_deriv";
pub const XCOS: &str = "xcos";
pub const GAUSS: &str = "gauss";
pub const CODAZZI: &str = "codazzi";
pub const NORMAL_NORM: &str = "normal_norm";
pub const SELF_ADJOINT: &str = "self_adjoint";

type Christoffel = [Mat<f64, 3>; 3];

/// Christoffel symbols of the induced metric and their first derivatives.
fn intrinsic_connection<F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    u: &[f64; 3],
    g_inv: &Mat<f64, 3>,
) -> Result<(Christoffel, [Christoffel; 3]), GeomError> {
    let mut dg = [[[0.0; 3]; 3]; 3];
    let mut ddg = [[[[0.0; 3]; 3]; 3]; 3];
    for k in 0..3 {
        for l in k..3 {
            let m = induced_metric::<Dual<Dual<f64>>, F>(surf, amb, &seed2(u, k, l))?;
            for i in 0..3 {
                for j in 0..3 {
                    dg[k][i][j] = m[i][j].du.re;
                    dg[l][i][j] = m[i][j].re.du;
                    ddg[k][l][i][j] = m[i][j].du.du;
                    ddg[l][k][i][j] = m[i][j].du.du;
                }
            }
        }
    }
    // d_m g^{il} = -g^{ia} d_m g_ab g^{bl}
    let mut dg_inv = [[[0.0; 3]; 3]; 3];
    for m in 0..3 {
        for i in 0..3 {
            for l in 0..3 {
                let mut acc = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        acc -= g_inv[i][a] * dg[m][a][b] * g_inv[b][l];
                    }
                }
                dg_inv[m][i][l] = acc;
            }
        }
    }
    let lower = |j: usize, k: usize, l: usize| dg[j][l][k] + dg[k][l][j] - dg[l][j][k];
    let dlower = |m: usize, j: usize, k: usize, l: usize| ddg[m][j][l][k] + ddg[m][k][l][j] - ddg[m][l][j][k];
    let mut gamma = [[[0.0; 3]; 3]; 3];
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut acc = 0.0;
                for l in 0..3 {
                    acc += g_inv[i][l] * lower(j, k, l);
                }
                gamma[i][j][k] = 0.5 * acc;
                for m in 0..3 {
                    let mut d = 0.0;
                    for l in 0..3 {
                        d += dg_inv[m][i][l] * lower(j, k, l) + g_inv[i][l] * dlower(m, j, k, l);
                    }
                    dgamma[m][i][j][k] = 0.5 * d;
                }
            }
        }
    }
    Ok((gamma, dgamma))
}

/// `<R(X,Y)Z, W>` with `R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`.
fn riemann_lowered(g: &Mat<f64, 3>, gamma: &Christoffel, dgamma: &[Christoffel; 3]) -> [[[[f64; 3]; 3]; 3]; 3] {
    // r[l][k][i][j]: component l of R(d_i, d_j) d_k
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut v = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..3 {
                        v += gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k];
                    }
                    r[l][k][i][j] = v;
                }
            }
        }
    }
    // out[i][j][k][w] = <R(d_i, d_j) d_k, d_w>
    let mut out = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for w in 0..3 {
                    let mut v = 0.0;
                    for l in 0..3 {
                        v += g[l][w] * r[l][k][i][j];
                    }
                    out[i][j][k][w] = v;
                }
            }
        }
    }
    out
}

fn contract4(t: &[[[[f64; 3]; 3]; 3]; 3], x: &[f64; 3], y: &[f64; 3], z: &[f64; 3], w: &[f64; 3]) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    acc += t[i][j][k][l] * x[i] * y[j] * z[k] * w[l];
                }
            }
        }
    }
    acc
}

/// Max-norm residuals of the structural identities at one sample, evaluated on
/// the orthonormal principal frame.
pub fn fundamental_residuals<F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    sample: &CurvatureSample,
    orient: Orientation,
) -> Result<BTreeMap<String, f64>, GeomError> {
    let u = &sample.point;
    let g = &sample.induced_metric;
    let g_inv = super::linalg::inv3(g).ok_or(GeomError::RankDeficient)?;
    let (gamma, dgamma) = intrinsic_connection(surf, amb, u, &g_inv)?;

    let mut d_shape = [[[0.0; 3]; 3]; 3];
    let mut d_cos = [0.0; 3];
    let mut d_t = [[0.0; 3]; 3];
    for k in 0..3 {
        let l = local::<Dual<f64>, F>(surf, amb, &seed(u, k), orient)?;
        for i in 0..3 {
            for j in 0..3 {
                d_shape[k][i][j] = l.shape[i][j].du;
            }
            d_t[k][i] = l.t_coords[i].du;
        }
        d_cos[k] = l.cos_theta.du;
    }

    let s = &sample.shape;
    let t = &sample.t_components;
    let c = sample.cos_theta;
    let eps = amb.epsilon.as_f64();
    let e = &sample.frame;
    let ip = |a: &[f64; 3], b: &[f64; 3]| sample.inner(a, b);
    let norm = |v: &[f64; 3]| ip(v, v).max(0.0).sqrt();

    let mut res = BTreeMap::new();
    res.insert(T_NORM.to_string(), (ip(t, t) + c * c - 1.0).abs());
    res.insert(NORMAL_NORM.to_string(), sample.normal_norm_error);
    res.insert(SELF_ADJOINT.to_string(), sample.self_adjoint_error);

    // (nabla_k T)^i = d_k T^i + Gamma^i_{kl} T^l
    let nabla_t: Mat<f64, 3> = std::array::from_fn(|k| {
        std::array::from_fn(|i| d_t[k][i] + (0..3).map(|l| gamma[i][k][l] * t[l]).sum::<f64>())
    });
    let st = mat_vec(s, t);
    let mut t_deriv: f64 = 0.0;
    let mut xcos: f64 = 0.0;
    for x in e {
        let lhs: [f64; 3] = std::array::from_fn(|i| (0..3).map(|k| x[k] * nabla_t[k][i]).sum());
        let sx = mat_vec(s, x);
        let diff: [f64; 3] = std::array::from_fn(|i| lhs[i] - c * sx[i]);
        t_deriv = t_deriv.max(norm(&diff));
        let xc: f64 = (0..3).map(|k| x[k] * d_cos[k]).sum();
        xcos = xcos.max((xc + ip(x, &st)).abs());
    }
    res.insert(T_DERIV.to_string(), t_deriv);
    res.insert(XCOS.to_string(), xcos);

    let r = riemann_lowered(g, &gamma, &dgamma);
    let mut gauss: f64 = 0.0;
    for x in e {
        for y in e {
            for z in e {
                for w in e {
                    let lhs = contract4(&r, x, y, z, w);
                    let (xt, yt, zt, wt) = (ip(x, t), ip(y, t), ip(z, t), ip(w, t));
                    let amb_part = ip(x, w) * ip(y, z) - ip(x, z) * ip(y, w) + xt * zt * ip(y, w) + yt * wt * ip(x, z)
                        - yt * zt * ip(x, w)
                        - xt * wt * ip(y, z);
                    let (sx, sy) = (mat_vec(s, x), mat_vec(s, y));
                    let rhs = eps * amb_part + ip(&sx, w) * ip(&sy, z) - ip(&sx, z) * ip(&sy, w);
                    gauss = gauss.max((lhs - rhs).abs());
                }
            }
        }
    }
    res.insert(GAUSS.to_string(), gauss);

    // (nabla_k S)^i_j = d_k S^i_j + Gamma^i_{kl} S^l_j - Gamma^l_{kj} S^i_l
    let mut nabla_s = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut v = d_shape[k][i][j];
                for l in 0..3 {
                    v += gamma[i][k][l] * s[l][j] - gamma[l][k][j] * s[i][l];
                }
                nabla_s[k][i][j] = v;
            }
        }
    }
    let apply = |x: &[f64; 3], y: &[f64; 3]| -> [f64; 3] {
        std::array::from_fn(|i| {
            let mut acc = 0.0;
            for k in 0..3 {
                for j in 0..3 {
                    acc += x[k] * y[j] * nabla_s[k][i][j];
                }
            }
            acc
        })
    };
    let mut codazzi: f64 = 0.0;
    for x in e {
        for y in e {
            let a = apply(x, y);
            let b = apply(y, x);
            let (yt, xt) = (ip(y, t), ip(x, t));
            let diff: [f64; 3] = std::array::from_fn(|i| a[i] - b[i] - eps * c * (yt * x[i] - xt * y[i]));
            codazzi = codazzi.max(norm(&diff));
        }
    }
    res.insert(CODAZZI.to_string(), codazzi);
    Ok(res)
}
