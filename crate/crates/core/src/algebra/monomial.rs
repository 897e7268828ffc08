use std::cmp::Ordering;
use std::fmt;

/// The four indeterminates of the polynomial ring, in monomial-order priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Mu1 = 0,
    Mu2 = 1,
    Mu3 = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Mu1, Var::Mu2, Var::Mu3, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Mu1 => "m1",
            Var::Mu2 => "m2",
            Var::Mu3 => "m3",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "m1" => Some(Var::Mu1),
            "m2" => Some(Var::Mu2),
            "m3" => Some(Var::Mu3),
            "t" => Some(Var::T),
            _ => None,
        }
    }

    /// The principal-curvature variable `mu_i` for `i` in 1..=3.
    pub fn mu(i: usize) -> Var {
        match i {
            1 => Var::Mu1,
            2 => Var::Mu2,
            3 => Var::Mu3,
            _ => panic!("principal curvature index {i} out of range 1..=3"),
        }
    }
}

/// Exponent vector over `(m1, m2, m3, t)`.
///
/// Ordered graded-lexicographically with `m1 > m2 > m3 > t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Some(Monomial(e))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let m1 = Monomial([1, 0, 0, 0]);
        let t2 = Monomial([0, 0, 0, 2]);
        let m2 = Monomial([0, 1, 0, 0]);
        let t = Monomial([0, 0, 0, 1]);
        assert!(t2 > m1);
        assert!(m1 > m2);
        assert!(m2 > t);
        assert!(Monomial::ONE < t);
    }

    #[test]
    fn display_skips_unit_exponents() {
        assert_eq!(Monomial([2, 0, 1, 3]).to_string(), "m1^2*m3*t^3");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
