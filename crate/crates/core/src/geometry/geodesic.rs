use nalgebra::Matrix3;
use serde::Serialize;

use super::ambient::AmbientSpace;
use super::dual::{seed, Dual, Scalar};
use super::immersion::Surface;
use super::linalg::{inner, to_f64};
use super::shape::{local, point_and_normal, Orientation};
use super::GeomError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicOptions {
    /// Allowed drift of the metric speed along the integrated geodesic.
    pub drift_tol: f64,
    /// Allowed change of the endpoint when the step count is doubled,
    /// relative to `1 + |endpoint|`.
    pub endpoint_tol: f64,
    pub min_steps: usize,
    pub max_steps: usize,
}

impl Default for GeodesicOptions {
    fn default() -> Self {
        GeodesicOptions {
            drift_tol: 1e-9,
            endpoint_tol: 1e-12,
            min_steps: 16,
            max_steps: 1 << 14,
        }
    }
}

type State<S> = ([S; 4], [S; 4]);

fn axpy<S: Scalar>(a: &[S; 4], k: f64, b: &[S; 4]) -> [S; 4] {
    std::array::from_fn(|i| a[i] + b[i].scale(k))
}

fn rk4_step<S: Scalar>(amb: &AmbientSpace, (x, v): &State<S>, h: f64) -> Result<State<S>, GeomError> {
    let a1 = amb.geodesic_accel(x, v)?;
    let (x2, v2) = (axpy(x, 0.5 * h, v), axpy(v, 0.5 * h, &a1));
    let a2 = amb.geodesic_accel(&x2, &v2)?;
    let (x3, v3) = (axpy(x, 0.5 * h, &v2), axpy(v, 0.5 * h, &a2));
    let a3 = amb.geodesic_accel(&x3, &v3)?;
    let (x4, v4) = (axpy(x, h, &v3), axpy(v, h, &a3));
    let a4 = amb.geodesic_accel(&x4, &v4)?;
    let xn = std::array::from_fn(|i| {
        x[i] + (v[i] + (v2[i] + v3[i]).scale(2.0) + v4[i]).scale(h / 6.0)
    });
    let vn = std::array::from_fn(|i| {
        v[i] + (a1[i] + (a2[i] + a3[i]).scale(2.0) + a4[i]).scale(h / 6.0)
    });
    Ok((xn, vn))
}

/// Fixed-step RK4 over parameter `[0, 1]` with `n` steps; returns every state.
pub fn integrate_path<S: Scalar>(amb: &AmbientSpace, p: &[S; 4], v: &[S; 4], n: usize) -> Result<Vec<State<S>>, GeomError> {
    let h = 1.0 / n as f64;
    let mut path = Vec::with_capacity(n + 1);
    let mut st = (*p, *v);
    amb.check_domain(p)?;
    path.push(st);
    for _ in 0..n {
        st = rk4_step(amb, &st, h)?;
        amb.check_domain(&st.0)?;
        path.push(st);
    }
    Ok(path)
}

fn speed(amb: &AmbientSpace, x: &[f64; 4], v: &[f64; 4]) -> Result<f64, GeomError> {
    let g = amb.metric_at(x)?;
    Ok(inner(&g, v, v).max(0.0).sqrt())
}

/// Smallest power-of-two step count (from `min_steps`) whose speed drift is
/// within tolerance and whose endpoint agrees with that of half as many steps,
/// decided on primal values.
pub fn choose_steps(amb: &AmbientSpace, p: &[f64; 4], v: &[f64; 4], opts: &GeodesicOptions) -> Result<usize, GeomError> {
    let s0 = speed(amb, p, v)?;
    let mut n = opts.min_steps.max(1);
    let mut previous: Option<[f64; 4]> = None;
    loop {
        let path = integrate_path(amb, p, v, n)?;
        let mut drift: f64 = 0.0;
        for (x, w) in &path {
            drift = drift.max((speed(amb, x, w)? - s0).abs());
        }
        let end = path.last().expect("nonempty path").0;
        let scale = 1.0 + end.iter().map(|c| c * c).sum::<f64>().sqrt();
        let settled = previous.is_some_and(|prev| {
            let d = prev.iter().zip(&end).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            d <= opts.endpoint_tol * scale
        });
        if drift <= opts.drift_tol && settled {
            return Ok(n);
        }
        previous = Some(end);
        n *= 2;
        if n > opts.max_steps {
            return Err(GeomError::StepBudget { steps: opts.max_steps, drift });
        }
    }
}

/// `exp_p(s v)`: endpoint and velocity of the geodesic with initial velocity `v`
/// after arc parameter `s` (for unit `v`, arc length `s`).
pub fn geodesic_exp<S: Scalar>(
    amb: &AmbientSpace,
    p: &[S; 4],
    v: &[S; 4],
    s: f64,
    opts: &GeodesicOptions,
) -> Result<State<S>, GeomError> {
    let sv: [S; 4] = v.map(|c| c.scale(s));
    if s == 0.0 {
        return Ok((*p, *v));
    }
    let n = choose_steps(amb, &to_f64(p), &to_f64(&sv), opts)?;
    let (x, w) = *integrate_path(amb, p, &sv, n)?.last().expect("nonempty path");
    Ok((x, w.map(|c| c.scale(1.0 / s))))
}

/// The offset immersion `u -> exp_{f(u)}(s N(u))`.
pub struct ParallelSurface<'a, F: Surface> {
    pub base: &'a F,
    pub amb: AmbientSpace,
    pub offset: f64,
    pub opts: GeodesicOptions,
}

impl<F: Surface> Surface for ParallelSurface<'_, F> {
    fn point<S: Scalar>(&self, u: &[S; 3]) -> Result<[S; 4], GeomError> {
        let (x, n) = point_and_normal(self.base, &self.amb, u, Orientation::Canonical)?;
        Ok(geodesic_exp(&self.amb, &x, &n, self.offset, &self.opts)?.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelSample {
    pub offset: f64,
    pub mean_curvature: f64,
    /// Smallest singular value of `d f_sigma` relative to `d f_0` along the ray.
    pub stretch_min: f64,
}

/// Below this relative stretch the offset map is treated as degenerate.
pub const FOCAL_STRETCH_TOL: f64 = 1e-6;

/// Mean curvature (`tr S / 3`) of the offset hypersurface at `u`, with the
/// offset normal pointing along the transported geodesic velocity.
pub fn parallel_mean_curvature<F: Surface>(
    surf: &F,
    amb: &AmbientSpace,
    u: &[f64; 3],
    s: f64,
    opts: &GeodesicOptions,
) -> Result<ParallelSample, GeomError> {
    let (x, n) = point_and_normal(surf, amb, u, Orientation::Canonical)?;
    let par = ParallelSurface {
        base: surf,
        amb: *amb,
        offset: s,
        opts: *opts,
    };
    if s == 0.0 {
        let l = local::<f64, _>(&par, amb, u, Orientation::Along(n))?;
        return Ok(ParallelSample {
            offset: s,
            mean_curvature: trace3(&l.shape) / 3.0,
            stretch_min: 1.0,
        });
    }
    let sv = n.map(|c| c * s);
    let steps = choose_steps(amb, &x, &sv, opts)?;

    let rays = normal_rays(surf, amb, u)?;
    let g0 = stretch_gram(amb, &rays.iter().map(|(x, _)| x.map(|c| c.du)).collect::<Vec<_>>(), &x)?;
    let paths = rays
        .iter()
        .map(|(xd, nd)| integrate_path(amb, xd, &nd.map(|c| c.scale(s)), steps))
        .collect::<Result<Vec<_>, _>>()?;
    let stretch_at = |paths: &[Vec<State<Dual<f64>>>], k: usize| -> Result<f64, GeomError> {
        let cols: Vec<[f64; 4]> = paths.iter().map(|p| p[k].0.map(|c| c.du)).collect();
        min_stretch(&g0, &stretch_gram(amb, &cols, &paths[0][k].0.map(|c| c.re))?)
    };
    let focal = |sigma: f64| GeomError::FocalPoint { offset: s, sigma };
    let sigma_of = |k: usize| s * k as f64 / steps as f64;

    let mut stretch = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let v = stretch_at(&paths, k)?;
        if !(v > FOCAL_STRETCH_TOL) {
            return Err(focal(sigma_of(k)));
        }
        stretch.push(v);
    }
    // A focal point between nodes shows up as an interior local minimum; flat
    // stretches only jitter at round-off level and are skipped.
    for k in 1..steps {
        let dip = stretch[k] < stretch[k - 1] * (1.0 - 1e-6) && stretch[k] <= stretch[k + 1] * (1.0 + 1e-6);
        if dip {
            let eval = |sigma: f64| -> Result<f64, GeomError> {
                let p = rays
                    .iter()
                    .map(|(xd, nd)| integrate_path(amb, xd, &nd.map(|c| c.scale(sigma)), steps))
                    .collect::<Result<Vec<_>, _>>()?;
                stretch_at(&p, steps)
            };
            let (sigma, v) = golden_min(eval, sigma_of(k - 1), sigma_of(k + 1))?;
            if !(v > FOCAL_STRETCH_TOL) {
                return Err(focal(sigma));
            }
        }
    }
    let stretch_min = stretch.iter().copied().fold(f64::INFINITY, f64::min);

    let end_v = paths[0][steps].1.map(|c| c.re);
    let dir = end_v.map(|c| c * s.signum());
    let l = local::<f64, _>(&par, amb, u, Orientation::Along(dir))?;
    Ok(ParallelSample {
        offset: s,
        mean_curvature: trace3(&l.shape) / 3.0,
        stretch_min,
    })
}

/// Base point and unit normal, differentiated along each parameter axis.
fn normal_rays<F: Surface>(surf: &F, amb: &AmbientSpace, u: &[f64; 3]) -> Result<Vec<State<Dual<f64>>>, GeomError> {
    (0..3)
        .map(|k| point_and_normal::<Dual<f64>, F>(surf, amb, &seed(u, k), Orientation::Canonical))
        .collect()
}

fn stretch_gram(amb: &AmbientSpace, cols: &[[f64; 4]], x: &[f64; 4]) -> Result<[[f64; 3]; 3], GeomError> {
    let g = amb.metric_at(x)?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| inner(&g, &cols[i], &cols[j]))))
}

/// Smallest singular value of the offset differential relative to the base
/// metric: `sqrt(lambda_min(g0^-1 g))`.
fn min_stretch(g0: &[[f64; 3]; 3], g: &[[f64; 3]; 3]) -> Result<f64, GeomError> {
    let a = Matrix3::from_fn(|i, j| g0[i][j]);
    let b = Matrix3::from_fn(|i, j| g[i][j]);
    let l = a.cholesky().ok_or(GeomError::RankDeficient)?.l();
    let li = l.try_inverse().ok_or(GeomError::RankDeficient)?;
    let m = li * b * li.transpose();
    let m = (m + m.transpose()) * 0.5;
    Ok(m.symmetric_eigenvalues().min().max(0.0).sqrt())
}

fn golden_min(f: impl Fn(f64) -> Result<f64, GeomError>, mut a: f64, mut b: f64) -> Result<(f64, f64), GeomError> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..80 {
        if (b - a).abs() <= 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

fn trace3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

/// Closed-form offset mean curvature of the Clifford-type torus cylinder with
/// `r1 = cos(a)`: the offset torus has radii rotated by the offset.
pub fn sphere_torus_parallel_oracle(r1: f64, base_curvatures: &[f64; 3], s: f64) -> f64 {
    let a = r1.acos();
    let outward = base_curvatures.iter().any(|k| (k - a.tan()).abs() < 1e-6);
    if outward {
        ((a + s).tan() - 1.0 / (a + s).tan()) / 3.0
    } else {
        -((a - s).tan() - 1.0 / (a - s).tan()) / 3.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Epsilon;

    #[test]
    fn vertical_half_space_geodesic() {
        let h = AmbientSpace::new(Epsilon::Hyperbolic);
        let (x, v) = geodesic_exp(&h, &[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 1.0, 0.0], 2f64.ln(), &GeodesicOptions::default()).unwrap();
        assert!((x[2] - 2.0).abs() < 1e-9);
        assert!(x[0].abs() < 1e-15 && x[3].abs() < 1e-15);
        assert!((v[2] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn height_direction_is_straight() {
        for eps in Epsilon::BOTH {
            let amb = AmbientSpace::new(eps);
            let p = [0.2, -0.1, 1.3, 0.5];
            let (x, _) = geodesic_exp(&amb, &p, &[0.0, 0.0, 0.0, 1.0], 0.75, &GeodesicOptions::default()).unwrap();
            assert!((x[3] - 1.25).abs() < 1e-14);
            for i in 0..3 {
                assert!((x[i] - p[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn speed_is_conserved() {
        let amb = AmbientSpace::new(Epsilon::Sphere);
        let p = [0.3, 0.1, -0.2, 0.0];
        let g = amb.metric_at(&p).unwrap();
        let mut v = [0.4, -0.7, 0.2, 0.3];
        let nv = inner(&g, &v, &v).sqrt();
        v.iter_mut().for_each(|c| *c /= nv);
        let opts = GeodesicOptions::default();
        let n = choose_steps(&amb, &p, &v, &opts).unwrap();
        let path = integrate_path(&amb, &p, &v, n).unwrap();
        for (x, w) in &path {
            let gx = amb.metric_at(x).unwrap();
            assert!((inner(&gx, w, w).sqrt() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn stereographic_geodesic_through_origin() {
        // Along a chart ray through the origin the distance is 2 atan(r).
        let amb = AmbientSpace::new(Epsilon::Sphere);
        let s = 0.9;
        let (x, _) = geodesic_exp(&amb, &[0.0; 4], &[0.5, 0.0, 0.0, 0.0], s, &GeodesicOptions::default()).unwrap();
        assert!((x[0] - (s / 2.0).tan()).abs() < 1e-9);
    }
}
