use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::{AlgebraError, Rational};

/// Sparse polynomial in `Q[m1, m2, m3, t]`.
///
/// Terms are kept in a map keyed by monomial; no zero coefficient is ever stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn mu(i: usize) -> Self {
        Self::var(Var::mu(i))
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// `mu_i - mu_j`.
    pub fn diff_mu(i: usize, j: usize) -> Self {
        Self::mu(i) - Self::mu(j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in `t`.
    pub fn diff_t(&self) -> Self {
        let ti = Var::T.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[ti];
            if e == 0 {
                continue;
            }
            let mut nm = *m;
            nm.0[ti] = e - 1;
            out.add_term(nm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// The polynomial in `(m1, m2, m3)` multiplying `t^k`.
    pub fn coeff_t(&self, k: u32) -> Self {
        let ti = Var::T.index();
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[ti] == k)
                .map(|(m, c)| {
                    let mut nm = *m;
                    nm.0[ti] = 0;
                    (nm, c.clone())
                })
                .collect(),
        }
    }

    /// Highest power of `t` together with its coefficient polynomial.
    pub fn leading_term_t(&self) -> Result<(u32, MultiPoly), AlgebraError> {
        let d = self.degree_in(Var::T).ok_or(AlgebraError::NoLeadingTerm)?;
        Ok((d, self.coeff_t(d)))
    }

    /// Exact evaluation at `(m1, m2, m3, t)`.
    ///
    /// Each coordinate `n/d` is homogenized against its largest exponent so that
    /// the sum runs over integers; one rational reduction happens at the end.
    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        if self.terms.is_empty() {
            return Rational::zero();
        }
        let mut max_exp = [0u32; 4];
        for m in self.terms.keys() {
            for (mx, e) in max_exp.iter_mut().zip(m.0.iter()) {
                *mx = (*mx).max(*e);
            }
        }
        let table = |x: &BigInt, mx: u32| {
            let mut v = Vec::with_capacity(mx as usize + 1);
            v.push(BigInt::one());
            for k in 1..=mx as usize {
                let next = &v[k - 1] * x;
                v.push(next);
            }
            v
        };
        let nums: Vec<Vec<BigInt>> = (0..4).map(|i| table(point[i].numer(), max_exp[i])).collect();
        let dens: Vec<Vec<BigInt>> = (0..4).map(|i| table(point[i].denom(), max_exp[i])).collect();
        let coeff_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.numer() * (&coeff_lcm / c.denom());
            for i in 0..4 {
                let e = m.0[i];
                if e > 0 {
                    term *= &nums[i][e as usize];
                }
                if e < max_exp[i] {
                    term *= &dens[i][(max_exp[i] - e) as usize];
                }
            }
            acc += term;
        }
        let mut den = coeff_lcm;
        for i in 0..4 {
            den *= &dens[i][max_exp[i] as usize];
        }
        Rational::new(acc, den)
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.0.iter().enumerate() {
                    v *= point[i].powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Replace `var` by the polynomial `value` everywhere.
    pub fn substitute(&self, var: Var, value: &MultiPoly) -> Self {
        let vi = var.index();
        let max = self.degree_in(var).unwrap_or(0);
        let mut powers = vec![MultiPoly::one()];
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[vi] as usize;
            let mut rest = *m;
            rest.0[vi] = 0;
            let part = powers[e].mul_monomial(&rest).scale(c);
            out += part;
        }
        out
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    /// Divide every term by `m`; panics if `m` does not divide some term.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.div_into(k).expect("monomial does not divide term"), c.clone()))
                .collect(),
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients
    /// (sign is left to the caller).
    pub fn integer_content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::new(num_gcd.abs(), den_lcm)
    }

    /// Exact quotient `self / d` if `d` divides `self` in `Q[m1, m2, m3, t]`.
    ///
    /// Uses the one-divisor division algorithm under the grlex order; a single
    /// polynomial is a Groebner basis of the ideal it generates, so the remainder
    /// vanishes exactly when `d` divides `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm_d, lc_d) = d.leading()?;
        let (lm_d, lc_d) = (*lm_d, lc_d.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let m = lm_d.div_into(lm)?;
            let c = lc / &lc_d;
            let step = MultiPoly::term(c, m);
            rem -= &(&step * d);
            quot += step;
        }
        Some(quot)
    }

    pub fn is_divisible_by(&self, d: &MultiPoly) -> bool {
        self.div_exact(d).is_some()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: std::collections::HashMap<Monomial, Rational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
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
    fn additive_identity() {
        let p = &m(1) * &m(2) + MultiPoly::t().pow(3);
        assert_eq!(&p + &MultiPoly::zero(), p);
    }

    #[test]
    fn difference_of_squares() {
        let lhs = (m(1) - m(2)) * (m(1) + m(2));
        let rhs = m(1).pow(2) - m(2).pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn diff_t_examples() {
        let t = MultiPoly::t();
        assert_eq!(t.pow(3).diff_t(), t.pow(2).scale_int(3));
        let p = m(1).pow(2) * t.pow(2) + m(2);
        assert_eq!(p.diff_t(), m(1).pow(2) * t.clone() * MultiPoly::int(2));
    }

    #[test]
    fn leading_term_in_t() {
        let t = MultiPoly::t();
        let p = m(1).scale_int(2) * t.pow(2) + t.clone();
        let (d, c) = p.leading_term_t().unwrap();
        assert_eq!(d, 2);
        assert_eq!(c, m(1).scale_int(2));
        assert!(matches!(
            MultiPoly::zero().leading_term_t(),
            Err(AlgebraError::NoLeadingTerm)
        ));
    }

    #[test]
    fn eval_difference_of_squares() {
        let p = m(1).pow(2) - m(2).pow(2);
        let pt = [3, 1, 0, 0].map(|v| Rational::from_integer(BigInt::from(v)));
        assert_eq!(p.eval(&pt), Rational::from_integer(BigInt::from(8)));
    }

    #[test]
    fn exact_division() {
        let a = m(1) - m(2);
        let b = m(1).pow(2) + MultiPoly::t() * m(3) - MultiPoly::int(7);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&(m(1) - m(3))), None);
    }

    #[test]
    fn substitute_t() {
        let t = MultiPoly::t();
        let p = t.pow(2) + m(1) * t.clone();
        let s = p.substitute(Var::T, &(MultiPoly::one() - m(2)));
        let expect = (MultiPoly::one() - m(2)).pow(2) + m(1) * (MultiPoly::one() - m(2));
        assert_eq!(s, expect);
    }

    #[test]
    fn integer_content_of_rational_poly() {
        let p = m(1).scale(&Rational::new(BigInt::from(4), BigInt::from(3)))
            + m(2).scale(&Rational::new(BigInt::from(-6), BigInt::from(5)));
        assert_eq!(
            p.integer_content(),
            Rational::new(BigInt::from(2), BigInt::from(15))
        );
    }
}
