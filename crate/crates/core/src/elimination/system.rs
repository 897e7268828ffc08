use crate::algebra::{MultiPoly, RatFunc, Var};

use super::reference;
use super::relations::AffineForm;
use super::{difference_factors, Check, EliminationError};

/// `M (b1^2, b2^2)^T = rhs` after eliminating `A` and `b3^2`.
#[derive(Debug, Clone)]
pub struct LinearSystem2 {
    pub m: [[RatFunc; 2]; 2],
    pub rhs: [RatFunc; 2],
    /// `t`-free parts `C_ij` of the entries of `M`.
    pub c: [[RatFunc; 2]; 2],
    /// Degree-one remainders `L_i(t)` of the right-hand side.
    pub l: [RatFunc; 2],
    /// `[b1, b2, constant]` coefficients of each relation after substitution.
    pub substituted: [[RatFunc; 3]; 2],
    pub provenance: &'static str,
}

/// Substitute `b3^2 = 1 - t - b1^2 - b2^2` into both reduced relations.
pub fn substitute_b3(reduced: &[AffineForm; 2]) -> LinearSystem2 {
    let cancel = difference_factors();
    let one_minus_t = RatFunc::from_poly(MultiPoly::one() - MultiPoly::t());
    let substituted = reduced.clone().map(|r| {
        let c3 = &r.coeffs[2];
        [
            (&r.coeffs[0] - c3).cancel_factors(&cancel),
            (&r.coeffs[1] - c3).cancel_factors(&cancel),
            (&r.constant + &(c3 * &one_minus_t)).cancel_factors(&cancel),
        ]
    });
    let m = [
        [substituted[0][0].clone(), substituted[0][1].clone()],
        [substituted[1][0].clone(), substituted[1][1].clone()],
    ];
    let rhs = [-&substituted[0][2], -&substituted[1][2]];

    let structure = reference::matrix_structure();
    let c = [0, 1].map(|i| {
        [0, 1].map(|j| {
            let (t_part, den) = &structure[i][j];
            (&m[i][j].scale_poly(den) - &RatFunc::from_poly(t_part.clone())).cancel_factors(&cancel)
        })
    });
    let quad = reference::rhs_quadratic_parts();
    let l = [0, 1].map(|i| (&quad[i] - &rhs[i]).cancel_factors(&cancel));
    LinearSystem2 {
        m,
        rhs,
        c,
        l,
        substituted,
        provenance: "A^2 solved from the (1,2) relation; b3^2 = 1 - t - b1^2 - b2^2",
    }
}

impl LinearSystem2 {
    pub fn det(&self) -> RatFunc {
        (&(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0]))
            .cancel_factors(&difference_factors())
    }

    /// Structural checks on `C_ij` and `L_i`.
    pub fn structure_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let name = format!("C{}{}-is-t-free", i + 1, j + 1);
                let c = &self.c[i][j];
                let free = c.num().degree_in(Var::T).unwrap_or(0) == 0
                    && c.den().degree_in(Var::T).unwrap_or(0) == 0;
                out.push(Check::from_bool(name, free, format!("C{}{} = {}", i + 1, j + 1, c)));
            }
        }
        for i in 0..2 {
            let name = format!("L{}-degree-at-most-one-in-t", i + 1);
            let l = &self.l[i];
            let den_t = l.den().degree_in(Var::T).unwrap_or(0);
            let num_t = l.num().degree_in(Var::T).unwrap_or(0);
            if den_t == 0 && num_t <= 1 {
                out.push(Check::pass(name, format!("deg_t numerator {num_t}")));
            } else {
                out.push(Check::fail(
                    name,
                    format!("numerator deg_t {num_t}, denominator deg_t {den_t}"),
                ));
            }
        }
        out
    }
}

/// `b_i^2 = p_i / q` together with the intermediate objects of the clearing.
#[derive(Debug, Clone)]
pub struct BSquaredSolution {
    pub b_sq: [RatFunc; 3],
    pub det_m: RatFunc,
    /// Cramer quotients `n_i / det M` before any clearing.
    pub cramer: [RatFunc; 2],
    /// `D * n_i` with `D = (m2-m1)^2 (m3-m1)^2 (m3-m2)^2`.
    pub first_step: [MultiPoly; 2],
    pub p: [MultiPoly; 3],
    pub q: MultiPoly,
}

/// Cramer's rule on `M`, with denominators cleared as
/// `q = det M * (m1-m2)^4 (m1-m3)^2 (m2-m3)^2`, `p_i = (m1-m2)^2 * D * n_i`,
/// and `p3 = q (1 - t) - p1 - p2`.
pub fn solve_b_squared(sys: &LinearSystem2) -> Result<BSquaredSolution, EliminationError> {
    let det = sys.det();
    if det.is_zero() {
        return Err(EliminationError::SingularSystem);
    }
    let cancel = difference_factors();
    let n1 = (&(&sys.m[1][1] * &sys.rhs[0]) - &(&sys.m[0][1] * &sys.rhs[1])).cancel_factors(&cancel);
    let n2 = (&(&sys.m[0][0] * &sys.rhs[1]) - &(&sys.m[1][0] * &sys.rhs[0])).cancel_factors(&cancel);

    let q = det
        .scale_poly(&reference::det_denominator())
        .cancel_factors(&cancel)
        .to_poly()
        .ok_or(EliminationError::NotPolynomial("q"))?;
    let d = reference::cramer_denominator();
    let first = |n: &RatFunc, name: &'static str| {
        n.scale_poly(&d)
            .cancel_factors(&cancel)
            .to_poly()
            .ok_or(EliminationError::NotPolynomial(name))
    };
    let first_step = [first(&n1, "D*n1")?, first(&n2, "D*n2")?];
    let lift = MultiPoly::diff_mu(1, 2).pow(2);
    let p1 = &lift * &first_step[0];
    let p2 = &lift * &first_step[1];
    let p3 = &(&q * &(MultiPoly::one() - MultiPoly::t())) - &(&p1 + &p2);
    let b_sq = [&p1, &p2, &p3].map(|p| RatFunc::frac(p.clone(), q.clone()));
    let cramer = [
        n1.checked_div(&det).map_err(|_| EliminationError::SingularSystem)?,
        n2.checked_div(&det).map_err(|_| EliminationError::SingularSystem)?,
    ];
    Ok(BSquaredSolution {
        b_sq,
        det_m: det,
        cramer,
        first_step,
        p: [p1, p2, p3],
        q,
    })
}

/// Degree and leading-coefficient checks on `p_i`, `q` against the closed forms.
pub fn verify_leading_ratios(sol: &BSquaredSolution, expected: &[MultiPoly; 4]) -> Vec<Check> {
    let mut out = Vec::new();
    let names = ["p1", "p2", "p3", "q"];
    let polys = [&sol.p[0], &sol.p[1], &sol.p[2], &sol.q];
    let want_deg = [3, 3, 3, 2];
    let mut leads: Vec<Option<MultiPoly>> = Vec::new();
    for k in 0..4 {
        match polys[k].leading_term_t() {
            Ok((deg, lead)) => {
                let name = format!("deg_t-{}", names[k]);
                if deg == want_deg[k] {
                    out.push(Check::pass(name, format!("{deg}")));
                } else {
                    out.push(Check::fail(name, format!("expected {}, got {deg}", want_deg[k])));
                }
                let name = format!("leading-coefficient-{}", names[k]);
                if deg == want_deg[k] && lead == expected[k] {
                    out.push(Check::pass(name, "structurally equal"));
                } else {
                    out.push(Check::fail(
                        name,
                        format!("computed {lead} (deg {deg}); expected {}", expected[k]),
                    ));
                }
                leads.push((deg == want_deg[k]).then_some(lead));
            }
            Err(_) => {
                out.push(Check::fail(format!("deg_t-{}", names[k]), "zero polynomial"));
                leads.push(None);
            }
        }
    }
    for k in 0..3 {
        let name = format!("leading-ratio-{}-over-q", names[k]);
        let ok = match (&leads[k], &leads[3]) {
            (Some(lp), Some(lq)) if !lq.is_zero() && !expected[3].is_zero() => {
                RatFunc::frac(lp.clone(), lq.clone())
                    .rf_equal(&RatFunc::frac(expected[k].clone(), expected[3].clone()))
            }
            _ => false,
        };
        out.push(if ok {
            Check::pass(name, "cross-multiplied equality")
        } else {
            Check::fail(name, "ratio mismatch or missing leading term")
        });
    }
    out
}
