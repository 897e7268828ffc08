//! Closed-form expressions the pipeline output is certified against, transcribed
//! term by term. Nothing here is computed from the pipeline; every function
//! builds its expression directly.

use crate::algebra::{Epsilon, MultiPoly, RatFunc};

use super::relations::AffineForm;

fn m(i: usize) -> MultiPoly {
    MultiPoly::mu(i)
}

fn d(i: usize, j: usize) -> MultiPoly {
    MultiPoly::diff_mu(i, j)
}

fn t() -> MultiPoly {
    MultiPoly::t()
}

fn c(k: i64) -> MultiPoly {
    MultiPoly::int(k)
}

fn fr(num: MultiPoly, den: MultiPoly) -> RatFunc {
    RatFunc::frac(num, den)
}

fn poly(p: MultiPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

fn sum(parts: Vec<RatFunc>) -> RatFunc {
    parts.iter().fold(RatFunc::zero(), |acc, p| &acc + p)
}

/// `3(m1-m3)^2 + 3(m2-m3)^2 + (m1-m2)^2`
pub fn quad_x() -> MultiPoly {
    d(1, 3).pow(2).scale_int(3) + d(2, 3).pow(2).scale_int(3) + d(1, 2).pow(2)
}

/// `(m1-m3)^2 + 3(m1-m2)^2 + 3(m2-m3)^2`
pub fn quad_y() -> MultiPoly {
    d(1, 3).pow(2) + d(1, 2).pow(2).scale_int(3) + d(2, 3).pow(2).scale_int(3)
}

/// `3(m1-m2)^2 + 3(m1-m3)^2 + (m2-m3)^2`
pub fn quad_z() -> MultiPoly {
    d(1, 2).pow(2).scale_int(3) + d(1, 3).pow(2).scale_int(3) + d(2, 3).pow(2)
}

/// First reduced relation (A eliminated via the (2,3) relation).
pub fn reduced_relation_1(eps: Epsilon) -> AffineForm {
    let e = eps.poly();
    AffineForm {
        coeffs: [
            sum(vec![
                fr(&e * &m(1) * d(3, 2), d(2, 1)),
                fr(c(2) * d(3, 2) * t(), d(2, 1).pow(2)),
                poly(-(&e * &d(2, 1))),
            ]),
            sum(vec![
                fr(&e * &m(2) * d(2, 3), d(2, 1)),
                fr(-(&e * &m(2) * d(2, 1)), d(3, 2)),
                fr(c(2) * d(3, 2) * t(), d(2, 1).pow(2)),
                fr(c(-2) * d(2, 1) * t(), d(3, 2).pow(2)),
            ]),
            sum(vec![
                fr(&e * &m(3) * d(2, 1), d(3, 2)),
                fr(c(-2) * d(2, 1) * t(), d(3, 2).pow(2)),
                poly(&e * &d(3, 2)),
            ]),
        ],
        constant: poly(
            c(2) * &e * d(3, 2) * t() - c(2) * &e * d(2, 1) * t() + m(1) * m(2) * d(3, 2)
                - m(2) * m(3) * d(2, 1),
        ),
    }
}

/// Second reduced relation (A eliminated via the (1,3) relation).
pub fn reduced_relation_2(eps: Epsilon) -> AffineForm {
    let e = eps.poly();
    AffineForm {
        coeffs: [
            sum(vec![
                fr(&e * &m(1) * d(3, 1), d(2, 1)),
                fr(-(&e * &m(1) * d(2, 1)), d(3, 1)),
                fr(c(2) * d(3, 1) * t(), d(2, 1).pow(2)),
                fr(c(-2) * d(2, 1) * t(), d(3, 1).pow(2)),
            ]),
            sum(vec![
                fr(&e * &m(2) * d(1, 3), d(2, 1)),
                fr(c(2) * d(3, 1) * t(), d(2, 1).pow(2)),
                poly(-(&e * &d(2, 1))),
            ]),
            sum(vec![
                fr(&e * &m(3) * d(2, 1), d(3, 1)),
                fr(c(-2) * d(2, 1) * t(), d(3, 1).pow(2)),
                poly(&e * &d(3, 1)),
            ]),
        ],
        constant: poly(
            c(2) * &e * d(3, 1) * t() - c(2) * &e * d(2, 1) * t() + m(1) * m(2) * d(3, 1)
                - m(1) * m(3) * d(2, 1),
        ),
    }
}

/// The two relations after `b3^2 = 1 - t - b1^2 - b2^2`, as `[b1, b2, constant]`.
pub fn substituted_relation_1(eps: Epsilon) -> [RatFunc; 3] {
    let e = eps.poly();
    let b1 = sum(vec![
        fr(&e * &m(1) * d(3, 2), d(2, 1)),
        fr(-(&e * &m(3) * d(2, 1)), d(3, 2)),
        fr(c(2) * d(3, 2) * t(), d(2, 1).pow(2)),
        fr(c(2) * d(2, 1) * t(), d(3, 2).pow(2)),
        poly(&e * &d(1, 3)),
    ]);
    let b2 = sum(vec![
        fr(&e * &m(2) * d(2, 3), d(2, 1)),
        fr(-(&e * &m(2) * d(2, 1)), d(3, 2)),
        fr(-(&e * &m(3) * d(2, 1)), d(3, 2)),
        fr(c(2) * d(3, 2) * t(), d(2, 1).pow(2)),
        poly(-(&e * &d(3, 2))),
    ]);
    let t_coeff = sum(vec![
        fr(c(2) * d(1, 2), d(3, 2).pow(2)),
        fr(&e * &m(3) * d(1, 2), d(3, 2)),
        poly(&e * &d(3, 2)),
        poly(c(2) * &e * d(1, 2)),
    ]);
    let constant = sum(vec![
        fr(c(2) * d(2, 1) * t().pow(2), d(3, 2).pow(2)),
        t_coeff.scale_poly(&t()),
        fr(&e * &m(3) * d(2, 1), d(3, 2)),
        poly(m(1) * m(2) * d(3, 2)),
        poly(m(2) * m(3) * d(1, 2)),
        poly(&e * &d(3, 2)),
    ]);
    [b1, b2, constant]
}

pub fn substituted_relation_2(eps: Epsilon) -> [RatFunc; 3] {
    let e = eps.poly();
    let b1 = sum(vec![
        fr(&e * &m(1) * d(3, 1), d(2, 1)),
        fr(-(&e * &m(1) * d(2, 1)), d(3, 1)),
        fr(-(&e * &m(3) * d(2, 1)), d(3, 1)),
        fr(c(2) * d(3, 1) * t(), d(2, 1).pow(2)),
        poly(-(&e * &d(3, 1))),
    ]);
    let b2 = sum(vec![
        fr(&e * &m(2) * d(1, 3), d(2, 1)),
        fr(-(&e * &m(3) * d(2, 1)), d(3, 1)),
        fr(c(2) * d(3, 1) * t(), d(2, 1).pow(2)),
        fr(c(2) * d(2, 1) * t(), d(3, 1).pow(2)),
        poly(-(&e * &d(3, 1))),
        poly(-(&e * &d(2, 1))),
    ]);
    let t_coeff = sum(vec![
        fr(c(2) * d(1, 2), d(3, 1).pow(2)),
        fr(&e * &m(3) * d(1, 2), d(3, 1)),
        poly(&e * &d(3, 1)),
        poly(c(2) * &e * d(1, 2)),
    ]);
    let constant = sum(vec![
        fr(c(2) * d(2, 1) * t().pow(2), d(3, 1).pow(2)),
        t_coeff.scale_poly(&t()),
        fr(&e * &m(3) * d(2, 1), d(3, 1)),
        poly(m(1) * m(2) * d(3, 1)),
        poly(m(1) * m(3) * d(1, 2)),
        poly(&e * &d(3, 1)),
    ]);
    [b1, b2, constant]
}

/// The `t`-dependent part of each entry of `M`, with the entry's displayed
/// denominator: `M_ij = (t_part_ij + C_ij) / den_ij`.
pub fn matrix_structure() -> [[(MultiPoly, MultiPoly); 2]; 2] {
    [
        [
            (
                (d(3, 2).pow(3) + d(2, 1).pow(3)) * t().scale_int(2),
                d(2, 1).pow(2) * d(3, 2).pow(2),
            ),
            (d(3, 2) * t().scale_int(2), d(2, 1).pow(2)),
        ],
        [
            (d(3, 1) * t().scale_int(2), d(2, 1).pow(2)),
            (
                (d(3, 1).pow(3) + d(2, 1).pow(3)) * t().scale_int(2),
                d(2, 1).pow(2) * d(3, 1).pow(2),
            ),
        ],
    ]
}

/// The quadratic part of each right-hand side entry: `rhs_i = quad_i - L_i(t)`.
pub fn rhs_quadratic_parts() -> [RatFunc; 2] {
    [
        fr(c(2) * d(1, 2) * t().pow(2), d(3, 2).pow(2)),
        fr(c(2) * d(1, 2) * t().pow(2), d(3, 1).pow(2)),
    ]
}

/// Denominator that turns `det M` into the polynomial `q`.
pub fn det_denominator() -> MultiPoly {
    d(1, 2).pow(4) * d(1, 3).pow(2) * d(2, 3).pow(2)
}

/// `D = (m2-m1)^2 (m3-m1)^2 (m3-m2)^2`, the common denominator of the Cramer numerators.
pub fn cramer_denominator() -> MultiPoly {
    d(2, 1).pow(2) * d(3, 1).pow(2) * d(3, 2).pow(2)
}

/// `t^2` coefficient of `q`, in the first (unsimplified) displayed form.
pub fn det_t2_expanded() -> MultiPoly {
    let a = d(3, 2).pow(3) + d(2, 1).pow(3);
    let b = d(3, 1).pow(3) + d(2, 1).pow(3);
    (a * b - d(3, 1).pow(3) * d(3, 2).pow(3)).scale_int(4)
}

/// `t^2` coefficient of `q`, in the factored displayed form.
pub fn det_t2_factored() -> MultiPoly {
    d(2, 1).pow(3).scale_int(4) * (d(3, 2).pow(3) + d(3, 1).pow(3) + d(2, 1).pow(3))
}

/// `t^3` coefficients of `D * (Cramer numerator)` for `b1^2` and `b2^2`.
pub fn first_step_t3() -> [MultiPoly; 2] {
    [
        d(1, 2).scale_int(4) * (d(3, 1).pow(3) + d(2, 1).pow(3) + d(2, 3).pow(3)),
        d(1, 2).scale_int(4) * (d(3, 2).pow(3) + d(2, 1).pow(3) + d(1, 3).pow(3)),
    ]
}

/// Leading `t`-coefficients of `p1, p2, p3, q`.
pub fn leading_coefficients() -> [MultiPoly; 4] {
    [
        d(1, 2).pow(4).scale_int(-2) * quad_x(),
        d(1, 2).pow(4).scale_int(12) * d(1, 3) * d(2, 3),
        d(2, 3).scale_int(-2) * d(1, 2).pow(3) * quad_z(),
        d(1, 3).scale_int(2) * d(1, 2).pow(3) * quad_y(),
    ]
}

/// The `t^5` coefficients of the three derivative-consistency polynomials.
pub fn t5_coefficients(eps: Epsilon) -> [MultiPoly; 3] {
    let e8 = eps.value() * 8;
    [
        (m(1).scale_int(3) - m(2).scale_int(2) - m(3)).scale_int(-e8)
            * d(1, 2).pow(7)
            * d(2, 3).pow(2)
            * d(1, 3)
            * quad_y(),
        (m(1) - m(2).scale_int(2) + m(3)).scale_int(-e8)
            * d(1, 2).pow(7)
            * d(1, 3).pow(2)
            * d(2, 3)
            * quad_y(),
        (m(1) + m(2).scale_int(2) - m(3).scale_int(3)).scale_int(e8)
            * d(1, 2).pow(8)
            * d(1, 3)
            * d(2, 3)
            * quad_y(),
    ]
}

/// Linear factors of the `t^5` coefficients and the non-linear cofactors they multiply
/// (up to the integer constant `-8 eps`, `-8 eps`, `8 eps`).
pub fn t5_factorization() -> [(MultiPoly, MultiPoly); 3] {
    [
        (
            m(1).scale_int(3) - m(2).scale_int(2) - m(3),
            d(1, 2).pow(7) * d(2, 3).pow(2) * d(1, 3) * quad_y(),
        ),
        (
            m(1) - m(2).scale_int(2) + m(3),
            d(1, 2).pow(7) * d(1, 3).pow(2) * d(2, 3) * quad_y(),
        ),
        (
            m(1) + m(2).scale_int(2) - m(3).scale_int(3),
            d(1, 2).pow(8) * d(1, 3) * d(2, 3) * quad_y(),
        ),
    ]
}

/// The homogeneous system in `(mu_1, mu_2, mu_3)` read off the vanishing `t^5` coefficients.
pub const MU_SYSTEM: [[i64; 3]; 3] = [[3, -2, -1], [1, -2, 1], [1, 2, -3]];

/// One cubic-sum identity with its displayed intermediate forms; all entries must agree.
#[derive(Debug, Clone)]
pub struct CubicIdentity {
    pub name: &'static str,
    pub forms: Vec<MultiPoly>,
}

pub fn cubic_identities() -> [CubicIdentity; 3] {
    let (m1, m2, m3) = (m(1), m(2), m(3));
    [
        CubicIdentity {
            name: "cubic-sum-a",
            forms: vec![
                (d(3, 1).pow(3) + d(2, 1).pow(3) + d(2, 3).pow(3)).scale_int(4),
                m3.pow(2).scale_int(12) * d(2, 1) - m3.scale_int(12) * (m2.pow(2) - m1.pow(2))
                    + (m2.pow(3) - m1.pow(3)).scale_int(8)
                    - (&m1 * &m2).scale_int(12) * d(2, 1),
                d(2, 1)
                    * (m3.pow(2).scale_int(12) - (&m1 * &m3).scale_int(12)
                        - (&m2 * &m3).scale_int(12)
                        + m2.pow(2).scale_int(8)
                        + m1.pow(2).scale_int(8)
                        - (&m1 * &m2).scale_int(4)),
                d(2, 1).scale_int(2) * quad_x(),
            ],
        },
        CubicIdentity {
            name: "cubic-sum-b",
            forms: vec![
                (d(3, 2).pow(3) + d(3, 1).pow(3) + d(2, 1).pow(3)).scale_int(4),
                (m3.pow(3) - m1.pow(3)).scale_int(8) - m2.scale_int(12) * (m3.pow(2) - m1.pow(2))
                    + m2.pow(2).scale_int(12) * d(3, 1)
                    - (&m1 * &m3).scale_int(12) * d(3, 1),
                d(3, 1)
                    * (m1.pow(2).scale_int(8) - (&m1 * &m2).scale_int(12)
                        - (&m1 * &m3).scale_int(4)
                        + m2.pow(2).scale_int(12)
                        - (&m2 * &m3).scale_int(12)
                        + m3.pow(2).scale_int(8)),
                d(3, 1).scale_int(2) * quad_y(),
            ],
        },
        CubicIdentity {
            name: "cubic-sum-c",
            forms: vec![
                d(3, 2).pow(3) + d(2, 1).pow(3) + d(1, 3).pow(3),
                (m3.pow(2) * d(1, 2) + &m3 * &(m2.pow(2) - m1.pow(2)) + &m1 * &m2 * d(1, 2))
                    .scale_int(3),
                d(1, 2).scale_int(3) * (m3.pow(2) - &m3 * &(&m1 + &m2) + &m1 * &m2),
                d(1, 2).scale_int(3) * d(1, 3) * d(2, 3),
            ],
        },
    ]
}
