use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::poly::MultiPoly;
use super::{AlgebraError, Rational};

/// Quotient of two polynomials with nonzero denominator.
///
/// Only sign, integer content and shared monomial factors are normalized away;
/// equality is decided by cross-multiplication, so representations with a
/// leftover common factor still compare equal.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: MultiPoly, mut den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num,
                den: MultiPoly::one(),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        let mut c = rational_gcd(&num.integer_content(), &den.integer_content());
        if den.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        let inv = c.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
        .renormalize()
    }

    fn renormalize(self) -> Self {
        Self::normalized(self.num, self.den)
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(MultiPoly::int(c))
    }

    /// `num / den`; panics on a zero denominator. For literal transcriptions
    /// whose denominators are products of nonzero factors.
    pub fn frac(num: MultiPoly, den: MultiPoly) -> Self {
        Self::new(num, den).expect("literal fraction with zero denominator")
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cross-multiplication equality.
    pub fn rf_equal(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    /// Divide numerator and denominator by `f` as often as it divides both.
    pub fn cancel_factor(&self, f: &MultiPoly) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            match (num.div_exact(f), den.div_exact(f)) {
                (Some(n), Some(d)) if !num.is_zero() => {
                    num = n;
                    den = d;
                }
                _ => break,
            }
        }
        Self::normalized(num, den)
    }

    pub fn cancel_factors(&self, fs: &[MultiPoly]) -> Self {
        fs.iter().fold(self.clone(), |acc, f| acc.cancel_factor(f))
    }

    /// The polynomial this function equals, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.num.div_exact(&self.den)
    }

    /// Exact value, or `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational; 4]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn substitute(&self, var: super::Var, value: &MultiPoly) -> Result<Self, AlgebraError> {
        Self::new(
            self.num.substitute(var, value),
            self.den.substitute(var, value),
        )
    }
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

fn add_impl(a: &RatFunc, b: &RatFunc, negate_b: bool) -> RatFunc {
    let bn = if negate_b { -&b.num } else { b.num.clone() };
    if a.is_zero() {
        return RatFunc::normalized(bn, b.den.clone());
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return RatFunc::normalized(&a.num + &bn, a.den.clone());
    }
    if let Some(k) = a.den.div_exact(&b.den) {
        return RatFunc::normalized(&a.num + &(&bn * &k), a.den.clone());
    }
    if let Some(k) = b.den.div_exact(&a.den) {
        return RatFunc::normalized(&(&a.num * &k) + &bn, b.den.clone());
    }
    RatFunc::normalized(&a.num * &b.den + &bn * &a.den, &a.den * &b.den)
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: usize) -> MultiPoly {
        MultiPoly::mu(i)
    }

    #[test]
    fn a_over_a_is_one() {
        let a = RatFunc::frac(m(1) * m(2) + MultiPoly::t(), m(3) - MultiPoly::int(2));
        let q = a.checked_div(&a).unwrap();
        assert!(q.rf_equal(&RatFunc::one()));
    }

    #[test]
    fn opposite_fractions_cancel() {
        let a = RatFunc::frac(MultiPoly::one(), m(2) - m(1));
        let b = RatFunc::frac(MultiPoly::one(), m(1) - m(2));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = RatFunc::one();
        assert!(matches!(
            a.checked_div(&RatFunc::zero()),
            Err(AlgebraError::DivisionByZero)
        ));
        assert!(RatFunc::new(MultiPoly::one(), MultiPoly::zero()).is_err());
    }

    #[test]
    fn equality_ignores_common_factor() {
        let p = m(1).pow(2) - MultiPoly::t();
        let q = m(2) + m(3);
        let c = m(1) - m(3) * MultiPoly::t();
        let a = RatFunc::frac(p.clone(), q.clone());
        let b = RatFunc::frac(&c * &p, &c * &q);
        assert!(a.rf_equal(&b));
        assert!(b.rf_equal(&a));
    }

    #[test]
    fn normalization_sign_content_monomial() {
        let r = RatFunc::frac(
            m(1).scale_int(4) * MultiPoly::t(),
            m(1).scale_int(-6) * MultiPoly::t().pow(2),
        );
        assert_eq!(r.num().to_string(), "-2");
        assert_eq!(r.den().to_string(), "3*t");
    }

    #[test]
    fn cancel_known_factor() {
        let f = m(1) - m(2);
        let r = RatFunc::frac(f.pow(3) * m(3), f.pow(2) * MultiPoly::t());
        let c = r.cancel_factor(&f);
        assert_eq!(c.den(), &MultiPoly::t());
        assert!(c.rf_equal(&r));
        assert_eq!(c.to_poly(), None);
        let s = RatFunc::frac(f.pow(2) * m(3), f.clone());
        assert_eq!(s.to_poly(), Some(&f * &m(3)));
    }
}
