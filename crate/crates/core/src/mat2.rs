//! 2×2 matrices over a generic commutative ring.
//!
//! One implementation serves both the exact symbolic scalars and
//! double-precision complex numbers, so every word construction has a single
//! code path.

use num_complex::Complex64;

use crate::laurent::LaurentScalar;

/// Minimal ring interface for matrix entries.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn one() -> Self {
        LaurentScalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        LaurentScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        LaurentScalar::neg(self)
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

/// A 2×2 matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2::new(
            self.a.mul(&rhs.a).add(&self.b.mul(&rhs.c)),
            self.a.mul(&rhs.b).add(&self.b.mul(&rhs.d)),
            self.c.mul(&rhs.a).add(&self.d.mul(&rhs.c)),
            self.c.mul(&rhs.b).add(&self.d.mul(&rhs.d)),
        )
    }

    pub fn neg(&self) -> Self {
        Mat2::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    pub fn trace(&self) -> T {
        self.a.add(&self.d)
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_unimodular(&self) -> Self {
        Mat2::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.a.sub(&T::one()).is_zero()
            && self.b.is_zero()
            && self.c.is_zero()
            && self.d.sub(&T::one()).is_zero()
    }

    pub fn is_neg_identity(&self) -> bool {
        self.a.add(&T::one()).is_zero()
            && self.b.is_zero()
            && self.c.is_zero()
            && self.d.add(&T::one()).is_zero()
    }
}
