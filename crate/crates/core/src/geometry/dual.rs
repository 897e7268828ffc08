//! Forward-mode dual numbers that nest: `Dual<Dual<f64>>` carries mixed second
//! derivatives, `Dual<Dual<Dual<f64>>>` third derivatives, and so on.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Real-like scalar. `re` strips every infinitesimal part.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn cst(v: f64) -> Self;
    fn re(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }

    fn one() -> Self {
        Self::cst(1.0)
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self;
        }
        acc
    }

    fn scale(self, k: f64) -> Self {
        self * Self::cst(k)
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn powi(self, n: u32) -> Self {
        f64::powi(self, n as i32)
    }
}

/// `re + du * e` with `e^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub du: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, du: T) -> Self {
        Dual { re, du }
    }

    /// A variable with unit tangent.
    pub fn var(re: T) -> Self {
        Dual { re, du: T::one() }
    }

    pub fn constant(re: T) -> Self {
        Dual { re, du: T::zero() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.du + o.du)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.du - o.du)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.du - q * o.du) / o.re)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.du)
    }
}

impl<T: Scalar> AddAssign for Dual<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> SubAssign for Dual<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> MulAssign for Dual<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn cst(v: f64) -> Self {
        Dual::constant(T::cst(v))
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        Dual::new(r, self.du / (r + r))
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.du * self.re.cos())
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.du * self.re.sin()))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.du * e)
    }
    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.du / self.re)
    }
}

/// Lift a point into `Dual<S>` with tangent `e_dir`.
pub fn seed<S: Scalar, const N: usize>(x: &[S; N], dir: usize) -> [Dual<S>; N] {
    std::array::from_fn(|i| {
        if i == dir {
            Dual::var(x[i])
        } else {
            Dual::constant(x[i])
        }
    })
}

/// Lift a point into `Dual<Dual<S>>`: outer tangent `e_i`, inner tangent `e_j`.
/// The result's `du.du` part is the mixed second derivative.
pub fn seed2<S: Scalar, const N: usize>(x: &[S; N], i: usize, j: usize) -> [Dual<Dual<S>>; N] {
    std::array::from_fn(|k| {
        let inner = if k == j { Dual::var(x[k]) } else { Dual::constant(x[k]) };
        let outer_du = if k == i { Dual::constant(S::one()) } else { Dual::constant(S::zero()) };
        Dual::new(inner, outer_du)
    })
}

pub fn values<S: Scalar, const N: usize>(x: &[Dual<S>; N]) -> [S; N] {
    std::array::from_fn(|i| x[i].re)
}

pub fn tangents<S: Scalar, const N: usize>(x: &[Dual<S>; N]) -> [S; N] {
    std::array::from_fn(|i| x[i].du)
}

pub fn lift<S: Scalar, const N: usize>(x: &[S; N]) -> [Dual<S>; N] {
    std::array::from_fn(|i| Dual::constant(x[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_and_second_derivatives() {
        // f(x) = x^3 sin(x)
        let f = |x: Dual<Dual<f64>>| x.powi(3) * x.sin();
        let x0 = 0.7;
        let r = f(seed2(&[x0], 0, 0)[0]);
        let d1 = 3.0 * x0 * x0 * x0.sin() + x0.powi(3) * x0.cos();
        let d2 = 6.0 * x0 * x0.sin() + 6.0 * x0 * x0 * x0.cos() - x0.powi(3) * x0.sin();
        assert!((r.re.re - x0.powi(3) * x0.sin()).abs() < 1e-15);
        assert!((r.re.du - d1).abs() < 1e-14);
        assert!((r.du.re - d1).abs() < 1e-14);
        assert!((r.du.du - d2).abs() < 1e-13);
    }

    #[test]
    fn mixed_partial() {
        // f(x, y) = exp(x y) / (1 + y^2)
        let f = |p: [Dual<Dual<f64>>; 2]| (p[0] * p[1]).exp() / (<Dual<Dual<f64>> as Scalar>::one() + p[1] * p[1]);
        let (x, y) = (0.3, -0.4);
        let r = f(seed2(&[x, y], 0, 1));
        let h = 1e-4;
        let g = |x: f64, y: f64| (x * y).exp() / (1.0 + y * y);
        let fd = (g(x + h, y + h) - g(x + h, y - h) - g(x - h, y + h) + g(x - h, y - h)) / (4.0 * h * h);
        assert!((r.du.du - fd).abs() < 1e-7);
    }

    #[test]
    fn sqrt_ln_chain() {
        let x = Dual::var(2.0f64);
        let r = (x.ln() + x.sqrt()).exp();
        let v = (2f64.ln() + 2f64.sqrt()).exp();
        assert!((r.du - v * (0.5 + 0.5 / 2f64.sqrt())).abs() < 1e-14);
    }
}
