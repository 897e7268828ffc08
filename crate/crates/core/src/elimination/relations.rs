use serde::Serialize;

use crate::algebra::{Epsilon, MultiPoly, RatFunc, Rational};

/// Affine expression `c1*B1 + c2*B2 + c3*B3 + c0` in the unknowns `B_i = b_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineForm {
    pub coeffs: [RatFunc; 3],
    pub constant: RatFunc,
}

/// Slot of an affine relation, used to address single coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Slot {
    A2,
    B1,
    B2,
    B3,
    Const,
}

impl Slot {
    pub const AFFINE: [Slot; 4] = [Slot::B1, Slot::B2, Slot::B3, Slot::Const];

    pub fn label(self) -> &'static str {
        match self {
            Slot::A2 => "A^2",
            Slot::B1 => "b1^2",
            Slot::B2 => "b2^2",
            Slot::B3 => "b3^2",
            Slot::Const => "const",
        }
    }
}

impl AffineForm {
    pub fn zero() -> Self {
        AffineForm {
            coeffs: [RatFunc::zero(), RatFunc::zero(), RatFunc::zero()],
            constant: RatFunc::zero(),
        }
    }

    pub fn slot(&self, s: Slot) -> &RatFunc {
        match s {
            Slot::B1 => &self.coeffs[0],
            Slot::B2 => &self.coeffs[1],
            Slot::B3 => &self.coeffs[2],
            Slot::Const => &self.constant,
            Slot::A2 => panic!("affine forms carry no A^2 slot"),
        }
    }

    pub fn slot_mut(&mut self, s: Slot) -> &mut RatFunc {
        match s {
            Slot::B1 => &mut self.coeffs[0],
            Slot::B2 => &mut self.coeffs[1],
            Slot::B3 => &mut self.coeffs[2],
            Slot::Const => &mut self.constant,
            Slot::A2 => panic!("affine forms carry no A^2 slot"),
        }
    }

    pub fn scale(&self, k: &RatFunc) -> Self {
        AffineForm {
            coeffs: [
                &self.coeffs[0] * k,
                &self.coeffs[1] * k,
                &self.coeffs[2] * k,
            ],
            constant: &self.constant * k,
        }
    }

    pub fn sub(&self, other: &AffineForm) -> Self {
        AffineForm {
            coeffs: [
                &self.coeffs[0] - &other.coeffs[0],
                &self.coeffs[1] - &other.coeffs[1],
                &self.coeffs[2] - &other.coeffs[2],
            ],
            constant: &self.constant - &other.constant,
        }
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        AffineForm {
            coeffs: [f(&self.coeffs[0]), f(&self.coeffs[1]), f(&self.coeffs[2])],
            constant: f(&self.constant),
        }
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Option<NumericAffine> {
        Some(NumericAffine {
            coeffs: [
                self.coeffs[0].eval(point)?,
                self.coeffs[1].eval(point)?,
                self.coeffs[2].eval(point)?,
            ],
            constant: self.constant.eval(point)?,
        })
    }
}

/// An [`AffineForm`] specialized at a rational point.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericAffine {
    pub coeffs: [Rational; 3],
    pub constant: Rational,
}

impl NumericAffine {
    pub fn apply(&self, b: &[Rational; 3]) -> Rational {
        &self.coeffs[0] * &b[0] + &self.coeffs[1] * &b[1] + &self.coeffs[2] * &b[2] + &self.constant
    }
}

/// A Gauss relation `a2_coeff * A^2 = rhs` obtained from the `(m,n,m,n)` component
/// of the Gauss equation in a principal frame, with `t = cos^2(theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRelation {
    pub pair: (usize, usize),
    pub a2_coeff: RatFunc,
    pub rhs: AffineForm,
}

impl GaussRelation {
    pub fn label(&self) -> String {
        format!("gauss-{}{}{}{}", self.pair.0, self.pair.1, self.pair.0, self.pair.1)
    }

    pub fn coefficient_mut(&mut self, s: Slot) -> &mut RatFunc {
        match s {
            Slot::A2 => &mut self.a2_coeff,
            other => self.rhs.slot_mut(other),
        }
    }

    /// Exact residual `a2_coeff * A^2 - rhs` at a point.
    pub fn residual(&self, point: &[Rational; 4], a2: &Rational, b: &[Rational; 3]) -> Option<Rational> {
        let a = self.a2_coeff.eval(point)?;
        let rhs = self.rhs.eval(point)?;
        Some(a * a2 - rhs.apply(b))
    }
}

fn mu(i: usize) -> MultiPoly {
    MultiPoly::mu(i)
}

fn d(i: usize, j: usize) -> MultiPoly {
    MultiPoly::diff_mu(i, j)
}

fn t() -> MultiPoly {
    MultiPoly::t()
}

/// Right-hand side shared by the three displayed relations:
/// `eps(mu_i B_i - mu_j B_j)/(mu_j - mu_i) + 2(B_i + B_j)t/(mu_j - mu_i)^2 + 2 eps t + mu_i mu_j + eps B_k`.
fn displayed_rhs(eps: &MultiPoly, i: usize, j: usize, k: usize) -> AffineForm {
    let mut form = AffineForm::zero();
    let lin = RatFunc::frac(eps.clone(), d(j, i));
    let quad = RatFunc::frac(t().scale_int(2), d(j, i).pow(2));
    *form.slot_mut(b_slot(i)) = &lin.scale_poly(&mu(i)) + &quad;
    *form.slot_mut(b_slot(j)) = &(-lin.scale_poly(&mu(j))) + &quad;
    *form.slot_mut(b_slot(k)) = RatFunc::from_poly(eps.clone());
    form.constant = RatFunc::from_poly(&(eps * &t()).scale_int(2) + &(mu(i) * mu(j)));
    form
}

pub(crate) fn b_slot(i: usize) -> Slot {
    match i {
        1 => Slot::B1,
        2 => Slot::B2,
        3 => Slot::B3,
        _ => panic!("index {i} out of range"),
    }
}

/// The three Gauss relations for the pairs (1,2), (2,3), (1,3), exactly as
/// written for the `b_i^2 = p_i/q` derivation, with `eps` substituted.
pub fn build_gauss_relations(eps: Epsilon) -> [GaussRelation; 3] {
    let e = eps.poly();
    let two_t = t().scale_int(2);
    [
        GaussRelation {
            pair: (1, 2),
            a2_coeff: RatFunc::frac(two_t.clone(), d(3, 1) * d(3, 2)),
            rhs: displayed_rhs(&e, 1, 2, 3),
        },
        GaussRelation {
            pair: (2, 3),
            a2_coeff: RatFunc::frac(two_t.clone(), d(2, 1) * d(3, 1)),
            rhs: displayed_rhs(&e, 2, 3, 1),
        },
        GaussRelation {
            pair: (1, 3),
            a2_coeff: RatFunc::frac(two_t, d(2, 1) * d(3, 2)),
            rhs: displayed_rhs(&e, 1, 3, 2),
        },
    ]
}

/// The frame relation for distinct `(m, n)` with third index `l`, in the form
/// `a2_coeff * A^2 = rhs` obtained by moving every `A`-free term of
///
/// ```text
/// 2A^2 t/((mu_m-mu_l)(mu_l-mu_n)) + 2(B_n+B_m)t/(mu_n-mu_m)^2
///   + eps(mu_n B_n - mu_m B_m)/(mu_m-mu_n) + 2 eps t + eps B_l + mu_m mu_n = 0
/// ```
///
/// to the right.
pub fn generic_gauss_relation(eps: Epsilon, m: usize, n: usize) -> GaussRelation {
    assert!(m != n && (1..=3).contains(&m) && (1..=3).contains(&n));
    let l = 6 - m - n;
    let e = eps.poly();
    let mut rest = AffineForm::zero();
    let quad = RatFunc::frac(t().scale_int(2), d(n, m).pow(2));
    let lin = RatFunc::frac(e.clone(), d(m, n));
    *rest.slot_mut(b_slot(n)) = &quad + &lin.scale_poly(&mu(n));
    *rest.slot_mut(b_slot(m)) = &quad - &lin.scale_poly(&mu(m));
    *rest.slot_mut(b_slot(l)) = RatFunc::from_poly(e.clone());
    rest.constant = RatFunc::from_poly(&(&e * &t()).scale_int(2) + &(mu(m) * mu(n)));
    GaussRelation {
        pair: (m.min(n), m.max(n)),
        a2_coeff: -RatFunc::frac(t().scale_int(2), d(m, l) * d(l, n)),
        rhs: rest,
    }
}

/// How a displayed relation compares with the generic frame relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenericAgreement {
    Identical,
    A2SignReversed,
    Different,
}

pub fn compare_with_generic(rel: &GaussRelation, eps: Epsilon) -> GenericAgreement {
    let g = generic_gauss_relation(eps, rel.pair.0, rel.pair.1);
    let rhs_same = Slot::AFFINE
        .iter()
        .all(|s| rel.rhs.slot(*s).rf_equal(g.rhs.slot(*s)));
    if !rhs_same {
        return GenericAgreement::Different;
    }
    if rel.a2_coeff.rf_equal(&g.a2_coeff) {
        GenericAgreement::Identical
    } else if rel.a2_coeff.rf_equal(&-&g.a2_coeff) {
        GenericAgreement::A2SignReversed
    } else {
        GenericAgreement::Different
    }
}

/// Solve the (1,2) relation for `A^2` and substitute into the other two.
///
/// Each resulting relation `(a_k/a_12) * rhs_12 - rhs_k = 0` is scaled by
/// `(mu_2 - mu_1)`, so that `rhs_k` enters with coefficient `-(mu_2 - mu_1)`.
pub fn eliminate_a(relations: &[GaussRelation; 3]) -> Result<[AffineForm; 2], super::EliminationError> {
    let base = &relations[0];
    if base.a2_coeff.is_zero() {
        return Err(super::EliminationError::VanishingA2Coefficient);
    }
    let scale = RatFunc::from_poly(d(2, 1));
    let cancel = super::difference_factors();
    let reduce = |k: usize| -> Result<AffineForm, super::EliminationError> {
        let ratio = relations[k]
            .a2_coeff
            .checked_div(&base.a2_coeff)
            .map_err(|_| super::EliminationError::VanishingA2Coefficient)?
            .cancel_factors(&cancel)
            .cancel_factor(&t());
        let form = base.rhs.scale(&ratio).sub(&relations[k].rhs).scale(&scale);
        Ok(form.map(|c| c.cancel_factors(&cancel)))
    };
    Ok([reduce(1)?, reduce(2)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_12_a2_coefficient() {
        let rels = build_gauss_relations(Epsilon::Sphere);
        let expect = RatFunc::frac(t().scale_int(2), d(3, 1) * d(3, 2));
        assert!(rels[0].a2_coeff.rf_equal(&expect));
    }

    #[test]
    fn displayed_relations_versus_generic() {
        for eps in Epsilon::BOTH {
            let rels = build_gauss_relations(eps);
            assert_eq!(compare_with_generic(&rels[0], eps), GenericAgreement::Identical);
            assert_eq!(compare_with_generic(&rels[1], eps), GenericAgreement::Identical);
            // The displayed (1,3) relation carries the opposite A^2 sign.
            assert_eq!(compare_with_generic(&rels[2], eps), GenericAgreement::A2SignReversed);
        }
    }

    #[test]
    fn generic_relation_is_symmetric_in_pair() {
        let a = generic_gauss_relation(Epsilon::Sphere, 1, 3);
        let b = generic_gauss_relation(Epsilon::Sphere, 3, 1);
        assert!(a.a2_coeff.rf_equal(&b.a2_coeff));
        for s in Slot::AFFINE {
            assert!(a.rhs.slot(s).rf_equal(b.rhs.slot(s)));
        }
    }

    #[test]
    fn vanishing_base_coefficient_is_rejected() {
        let mut rels = build_gauss_relations(Epsilon::Sphere);
        rels[0].a2_coeff = RatFunc::zero();
        assert!(eliminate_a(&rels).is_err());
    }
}
