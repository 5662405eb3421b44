//! 2x2 matrices and phase points over any [`Scalar`].

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{half, int, Real, Scalar};

/// Phase-space point `(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseState<T> {
    pub p: T,
    pub q: T,
}

impl<T: Scalar> PhaseState<T> {
    pub fn new(p: T, q: T) -> Self {
        PhaseState { p, q }
    }

    /// `p^2 + q^2`.
    pub fn norm_sqr(&self) -> T {
        self.p.clone() * self.p.clone() + self.q.clone() * self.q.clone()
    }
}

/// Row-major 2x2 matrix acting on the column vector `(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.m[r][c]
    }

    pub fn trace(&self) -> T {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    pub fn det(&self) -> T {
        self.m[0][0].clone() * self.m[1][1].clone() - self.m[0][1].clone() * self.m[1][0].clone()
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.m.clone();
        Self::new(a, c, b, d)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 { m: [[f(&self.m[0][0]), f(&self.m[0][1])], [f(&self.m[1][0]), f(&self.m[1][1])]] }
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn is_symmetric(&self) -> bool {
        self.m[0][1] == self.m[1][0]
    }

    /// `self^T + self == 0`
    pub fn is_antisymmetric(&self) -> bool {
        (&self.transpose() + self) == Self::zero()
    }

    pub fn apply(&self, s: &PhaseState<T>) -> PhaseState<T> {
        let [[a, b], [c, d]] = &self.m;
        PhaseState {
            p: a.clone() * s.p.clone() + b.clone() * s.q.clone(),
            q: c.clone() * s.p.clone() + d.clone() * s.q.clone(),
        }
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, s: &PhaseState<T>) -> T {
        let mv = self.apply(s);
        s.p.clone() * mv.p + s.q.clone() * mv.q
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<T: Real> Mat2<T> {
    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let d = self - other;
        d.m.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let norm = self.m.iter().flatten().fold(T::zero(), |acc, v| acc + v.abs());
        let mut squarings = 0u32;
        let mut scaled = self.clone();
        let mut n = norm;
        while n > half::<T>() {
            n = n * half::<T>();
            scaled = scaled.scale(&half::<T>());
            squarings += 1;
        }
        let mut sum = Self::identity();
        let mut term = Self::identity();
        for k in 1..=30 {
            term = (&term * &scaled).scale(&(T::one() / int::<T>(k)));
            sum = &sum + &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }
}

impl<T: Scalar> Add for &Mat2<T> {
    type Output = Mat2<T>;
    fn add(self, o: &Mat2<T>) -> Mat2<T> {
        let e = |r: usize, c: usize| self.m[r][c].clone() + o.m[r][c].clone();
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<T: Scalar> Sub for &Mat2<T> {
    type Output = Mat2<T>;
    fn sub(self, o: &Mat2<T>) -> Mat2<T> {
        let e = |r: usize, c: usize| self.m[r][c].clone() - o.m[r][c].clone();
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<T: Scalar> Mul for &Mat2<T> {
    type Output = Mat2<T>;
    fn mul(self, o: &Mat2<T>) -> Mat2<T> {
        let e = |r: usize, c: usize| {
            self.m[r][0].clone() * o.m[0][c].clone() + self.m[r][1].clone() * o.m[1][c].clone()
        };
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<T: Scalar> Neg for &Mat2<T> {
    type Output = Mat2<T>;
    fn neg(self) -> Mat2<T> {
        self.map(|v| -v.clone())
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for Mat2<T> {
            type Output = Mat2<T>;
            fn $f(self, o: Mat2<T>) -> Mat2<T> {
                (&self).$f(&o)
            }
        }
    };
}

forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
