use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ambient::AmbientSpace;
use super::dual::{seed, Dual, Scalar};
use crate::algebra::Epsilon;

/// Element of the isometry group preserving the graph `t = -B log w`:
/// `(u, v, w, t) -> (e^l u + a, e^l v + b, e^l w, t - B l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HelicoidMotion {
    pub lambda: f64,
    pub shift: [f64; 2],
}

impl HelicoidMotion {
    pub fn apply<S: Scalar>(&self, b: f64, x: &[S; 4]) -> [S; 4] {
        let k = self.lambda.exp();
        [
            x[0].scale(k) + S::cst(self.shift[0]),
            x[1].scale(k) + S::cst(self.shift[1]),
            x[2].scale(k),
            x[3] - S::cst(b * self.lambda),
        ]
    }
}

/// Height of the graph over `w`.
pub fn helicoid_height(b: f64, w: f64) -> f64 {
    -b * w.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogeneityResult {
    pub motion: HelicoidMotion,
    pub point: [f64; 4],
    pub graph_residual: f64,
    pub metric_residual: f64,
}

impl HomogeneityResult {
    pub fn passes(&self, graph_tol: f64, metric_tol: f64) -> bool {
        self.graph_residual <= graph_tol && self.metric_residual <= metric_tol
    }
}

/// Graph residual of the image point and `max |J^T G(phi x) J - G(x)|` at the point.
pub fn helicoid_homogeneity_check(b: f64, motion: HelicoidMotion, point: &[f64; 4]) -> HomogeneityResult {
    let amb = AmbientSpace::new(Epsilon::Hyperbolic);
    let y = motion.apply(b, point);
    let graph_residual = (y[3] - helicoid_height(b, y[2])).abs();
    let jac: [[f64; 4]; 4] = std::array::from_fn(|k| motion.apply::<Dual<f64>>(b, &seed(point, k)).map(|c| c.du));
    let metric_residual = match (amb.metric_at(&y), amb.metric_at(point)) {
        (Ok(gy), Ok(gx)) => {
            let mut worst: f64 = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    let mut v = 0.0;
                    for a in 0..4 {
                        for c in 0..4 {
                            v += jac[i][a] * gy[a][c] * jac[j][c];
                        }
                    }
                    worst = worst.max((v - gx[i][j]).abs());
                }
            }
            worst
        }
        _ => f64::INFINITY,
    };
    HomogeneityResult {
        motion,
        point: *point,
        graph_residual,
        metric_residual,
    }
}

/// `count` seeded motions applied to seeded graph points.
pub fn seeded_homogeneity(b: f64, count: usize, seed: u64) -> Vec<HomogeneityResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let motion = HelicoidMotion {
                lambda: rng.gen_range(-1.0..1.0),
                shift: [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)],
            };
            let w: f64 = rng.gen_range(0.25..4.0);
            let p = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), w, helicoid_height(b, w)];
            helicoid_homogeneity_check(b, motion, &p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_translation() {
        let p = [0.3, 0.4, 1.7, helicoid_height(1.0, 1.7)];
        let id = HelicoidMotion { lambda: 0.0, shift: [0.0, 0.0] };
        let r = helicoid_homogeneity_check(1.0, id, &p);
        assert_eq!(r.graph_residual, 0.0);
        assert_eq!(r.metric_residual, 0.0);
        let tr = HelicoidMotion { lambda: 0.0, shift: [3.0, -2.0] };
        let r = helicoid_homogeneity_check(1.0, tr, &p);
        assert_eq!(r.graph_residual, 0.0);
        assert!(r.metric_residual <= 1e-15);
    }

    #[test]
    fn dilation_by_two() {
        let m = HelicoidMotion { lambda: 2f64.ln(), shift: [0.0, 0.0] };
        let p = [1.0, 0.0, 1.0, helicoid_height(1.0, 1.0)];
        let y = m.apply(1.0, &p);
        assert!((y[0] - 2.0).abs() < 1e-15 && (y[2] - 2.0).abs() < 1e-15);
        assert!((y[3] + 2f64.ln()).abs() < 1e-15);
        assert!(helicoid_homogeneity_check(1.0, m, &p).passes(1e-12, 1e-10));
    }

    #[test]
    fn opposite_convention_is_not_preserved() {
        // The graph t = +B log w is not invariant under the same motions.
        let m = HelicoidMotion { lambda: 0.5, shift: [0.0, 0.0] };
        let p = [0.0, 0.0, 1.5, 1.5f64.ln()];
        let y = m.apply(1.0, &p);
        assert!((y[3] - y[2].ln()).abs() > 0.5);
    }
}
