//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Real`] so that they run on `f32` and
//! `f64`. Tolerances quoted in the documentation of the evaluators assume
//! `f64`; with `f32` the same code runs with proportionally looser accuracy.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts an integer into the scalar type.
    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn real<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// Reduces `x` modulo 2 into `[-1, 1]`, exactly for representable inputs.
#[inline]
fn reduce_mod_two<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    x - two * (x / two).round()
}

/// `sin(pi x)`, exactly zero at integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let r = reduce_mod_two(x);
    if r == T::zero() || r.abs() == T::one() {
        return T::zero();
    }
    if r.abs() == T::lit(0.5) {
        return r.signum();
    }
    (T::PI() * r).sin()
}

/// `cos(pi x)`, exactly `±1` at integers and zero at half integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    let r = reduce_mod_two(x);
    if r == T::zero() {
        return T::one();
    }
    if r.abs() == T::one() {
        return -T::one();
    }
    if r.abs() == T::lit(0.5) {
        return T::zero();
    }
    (T::PI() * r).cos()
}

/// `exp(i pi x)` for real `x`, exact at integers and half integers.
pub fn cis_pi<T: Real>(x: T) -> C<T> {
    cplx(cos_pi(x), sin_pi(x))
}

/// `exp(2 pi i z)` for complex `z`, with exact phase at integer `Re z`.
pub fn exp_2pi_i<T: Real>(z: C<T>) -> C<T> {
    let modulus = (-T::lit(2.0) * T::PI() * z.im).exp();
    cis_pi(T::lit(2.0) * z.re) * modulus
}

/// `exp(i pi z)` for complex `z`.
pub fn exp_pi_i<T: Real>(z: C<T>) -> C<T> {
    let modulus = (-T::PI() * z.im).exp();
    cis_pi(z.re) * modulus
}

/// `sin(pi z)` for complex `z`, exactly zero at real integers.
pub fn sin_pi_complex<T: Real>(z: C<T>) -> C<T> {
    let py = T::PI() * z.im;
    cplx(sin_pi(z.re) * py.cosh(), cos_pi(z.re) * py.sinh())
}

/// Distance from a real number to the nearest integer.
pub fn dist_to_integer<T: Real>(x: T) -> T {
    (x - x.round()).abs()
}

/// True when `z` is exactly a real integer.
pub fn is_integer<T: Real>(z: C<T>) -> bool {
    z.im == T::zero() && z.re == z.re.round()
}

/// True when `z` is exactly a nonpositive real integer.
pub fn is_nonpositive_integer<T: Real>(z: C<T>) -> bool {
    is_integer(z) && z.re <= T::zero()
}
