//! Randomized exact cross-validation: specialize the Gauss relations at a random
//! rational point, run the elimination numerically there, and compare with the
//! symbolic output evaluated at the same point.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{int, MultiPoly, Rational};

use super::relations::{AffineForm, GaussRelation, NumericAffine};
use super::system::{BSquaredSolution, LinearSystem2};
use super::{reference, Check};

/// Numerators and denominators are drawn uniformly from `[-RANGE, RANGE]`.
pub const RANGE: i64 = 1_000_000;

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-RANGE..=RANGE);
    let d = loop {
        let d = rng.gen_range(-RANGE..=RANGE);
        if d != 0 {
            break d;
        }
    };
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Result of running the elimination on numbers instead of polynomials.
#[derive(Debug, Clone)]
pub struct NumericOracle {
    pub b_sq: [Rational; 3],
    pub det_m: Rational,
    pub a_sq: Rational,
}

/// Eliminate `A^2` and `b3^2` and solve the 2x2 system by Cramer's rule, all in
/// exact rational arithmetic at one point. `None` when the point is inadmissible.
pub fn numeric_oracle(relations: &[GaussRelation; 3], point: &[Rational; 4]) -> Option<NumericOracle> {
    let [m1, m2, m3, t] = point;
    if m1 == m2 || m1 == m3 || m2 == m3 {
        return None;
    }
    let a: Vec<Rational> = relations
        .iter()
        .map(|r| r.a2_coeff.eval(point))
        .collect::<Option<_>>()?;
    let rhs: Vec<NumericAffine> = relations
        .iter()
        .map(|r| r.rhs.eval(point))
        .collect::<Option<_>>()?;
    if a[0].is_zero() {
        return None;
    }
    let scale = m2 - m1;
    let reduce = |k: usize| {
        let ratio = &a[k] / &a[0];
        let c = |i: usize| (&ratio * &rhs[0].coeffs[i] - &rhs[k].coeffs[i]) * &scale;
        let c0 = (&ratio * &rhs[0].constant - &rhs[k].constant) * &scale;
        ([c(0), c(1), c(2)], c0)
    };
    let one_minus_t = Rational::one() - t;
    let rows = [reduce(1), reduce(2)].map(|(c, c0)| {
        (
            [&c[0] - &c[2], &c[1] - &c[2]],
            -(c0 + &c[2] * &one_minus_t),
        )
    });
    let det = &rows[0].0[0] * &rows[1].0[1] - &rows[0].0[1] * &rows[1].0[0];
    if det.is_zero() {
        return None;
    }
    let b1 = (&rows[0].1 * &rows[1].0[1] - &rows[0].0[1] * &rows[1].1) / &det;
    let b2 = (&rows[0].0[0] * &rows[1].1 - &rows[1].0[0] * &rows[0].1) / &det;
    let b3 = &one_minus_t - &b1 - &b2;
    let b = [b1, b2, b3];
    let a_sq = rhs[0].apply(&b) / &a[0];
    Some(NumericOracle {
        b_sq: b,
        det_m: det,
        a_sq,
    })
}

/// `p'(t0)` for a polynomial of degree at most 3 in `t`, from forward
/// differences with unit step (exact for cubics).
pub fn forward_difference_derivative(p: &MultiPoly, point: &[Rational; 4]) -> Rational {
    let vals: Vec<Rational> = (0..4)
        .map(|k| {
            let mut x = point.clone();
            x[3] = &x[3] + int(k);
            p.eval(&x)
        })
        .collect();
    let d1 = &vals[1] - &vals[0];
    let d2 = &vals[2] - int(2) * &vals[1] + &vals[0];
    let d3 = &vals[3] - int(3) * &vals[2] + int(3) * &vals[1] - &vals[0];
    d1 - d2 / int(2) + d3 / int(3)
}

pub struct CrossValidationInput<'a> {
    pub eps_value: i64,
    pub relations: &'a [GaussRelation; 3],
    pub reduced: &'a [AffineForm; 2],
    pub system: &'a LinearSystem2,
    pub solution: &'a BSquaredSolution,
    pub derivative_polys: &'a [MultiPoly; 3],
}

#[derive(Default, Clone)]
struct PointOutcome {
    b_sq: bool,
    det: bool,
    det_symbolic_m: bool,
    gauss: bool,
    reduced: bool,
    derivative: bool,
}

/// Draw `count` admissible points from `seed` and run every comparison at each.
pub fn cross_validate(input: &CrossValidationInput<'_>, count: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let det_den = reference::det_denominator();
    let mut points = Vec::with_capacity(count);
    let mut rejected = 0usize;
    while points.len() < count {
        let p = [(); 4].map(|_| random_rational(&mut rng));
        let distinct = p[0] != p[1] && p[0] != p[2] && p[1] != p[2];
        if !distinct || p[3].is_zero() || input.solution.q.eval(&p).is_zero() || det_den.eval(&p).is_zero() {
            rejected += 1;
            continue;
        }
        points.push(p);
    }

    let outcomes: Vec<(usize, Option<PointOutcome>)> = points
        .par_iter()
        .enumerate()
        .map(|(idx, p)| (idx, check_point(input, p)))
        .collect();

    let admissible: Vec<&(usize, Option<PointOutcome>)> =
        outcomes.iter().filter(|(_, o)| o.is_some()).collect();
    let n_ok = admissible.len();
    let mut checks = vec![if n_ok == count {
        Check::pass(
            "cross-validation-admissible-points",
            format!("{count} points (seed {seed}, {rejected} rejected before evaluation)"),
        )
    } else {
        Check::fail(
            "cross-validation-admissible-points",
            format!("oracle rejected {} of {count} points", count - n_ok),
        )
    }];

    let summarize = |name: &str, pick: fn(&PointOutcome) -> bool| {
        let bad: Vec<usize> = outcomes
            .iter()
            .filter_map(|(i, o)| match o {
                Some(o) if pick(o) => None,
                _ => Some(*i),
            })
            .collect();
        if bad.is_empty() {
            Check::pass(name.to_string(), format!("{count}/{count} points agree exactly"))
        } else {
            let p = &points[bad[0]];
            Check::fail(
                name.to_string(),
                format!(
                    "{} of {count} points disagree; first at (m1,m2,m3,t) = ({}, {}, {}, {})",
                    bad.len(),
                    p[0],
                    p[1],
                    p[2],
                    p[3]
                ),
            )
        }
    };
    checks.push(summarize("cross-validation-b-squared", |o| o.b_sq));
    checks.push(summarize("cross-validation-det-M", |o| o.det));
    checks.push(summarize("cross-validation-det-M-from-symbolic-M", |o| o.det_symbolic_m));
    checks.push(summarize("cross-validation-gauss-residuals", |o| o.gauss));
    checks.push(summarize("cross-validation-reduced-relations", |o| o.reduced));
    checks.push(summarize("cross-validation-derivative-polynomials", |o| o.derivative));
    checks
}

fn check_point(input: &CrossValidationInput<'_>, p: &[Rational; 4]) -> Option<PointOutcome> {
    let oracle = numeric_oracle(input.relations, p)?;
    let sol = input.solution;
    let q = sol.q.eval(p);
    let pv: Vec<Rational> = sol.p.iter().map(|pi| pi.eval(p)).collect();
    let b_sym: Vec<Rational> = pv.iter().map(|v| v / &q).collect();
    let b_sq = (0..3).all(|i| b_sym[i] == oracle.b_sq[i]);

    let det_sym = &q / reference::det_denominator().eval(p);
    let det = det_sym == oracle.det_m;
    let mv: Option<Vec<Rational>> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, j)| input.system.m[i][j].eval(p))
        .collect();
    let det_symbolic_m = mv
        .map(|m| &m[0] * &m[3] - &m[1] * &m[2] == oracle.det_m)
        .unwrap_or(false);

    let gauss = input.relations.iter().all(|r| {
        r.residual(p, &oracle.a_sq, &oracle.b_sq)
            .map(|v| v.is_zero())
            .unwrap_or(false)
    });

    let reduced = input.reduced.iter().all(|r| {
        r.eval(p)
            .map(|v| v.apply(&oracle.b_sq).is_zero())
            .unwrap_or(false)
    });

    let eps = int(input.eps_value);
    let dq = forward_difference_derivative(&sol.q, p);
    let dp: Vec<Rational> = sol
        .p
        .iter()
        .map(|pi| forward_difference_derivative(pi, p))
        .collect();
    let mu = |i: usize| p[i - 1].clone();
    let derivative = (1..=3).all(|n| {
        let (j, k) = match n {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        let mix = (mu(k) - mu(n)) * &pv[j - 1] + (mu(j) - mu(n)) * &pv[k - 1];
        let wr = &dp[n - 1] * &q - &pv[n - 1] * &dq;
        let expect = &eps * &q * mix - mu(n) * (mu(j) - mu(n)) * (mu(k) - mu(n)) * (wr + &q * &q);
        input.derivative_polys[n - 1].eval(p) == expect
    });

    Some(PointOutcome {
        b_sq,
        det,
        det_symbolic_m,
        gauss,
        reduced,
        derivative,
    })
}
