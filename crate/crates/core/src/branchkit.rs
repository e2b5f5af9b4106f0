//! Branch-aware complex primitives.
//!
//! The logarithm used throughout is real on the positive axis with its cut
//! along the closed negative imaginary axis, so `arg z ∈ (-π/2, 3π/2)` and
//! `log(-x) = log x + iπ` for `x > 0`.

use crate::error::{LerchError, Result};
use crate::real::{cis_pi, cone, cplx, is_nonpositive_integer, sin_pi_complex, Real, C};

/// Marker for the logarithm convention; see the module docs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrincipalLogConvention;

impl PrincipalLogConvention {
    /// Lower end of the open argument range.
    pub fn arg_min<T: Real>() -> T {
        -T::FRAC_PI_2()
    }

    /// Upper end of the open argument range.
    pub fn arg_max<T: Real>() -> T {
        T::lit(1.5) * T::PI()
    }
}

/// True when `z` lies on the closed cut `{-it : t >= 0}`.
pub fn on_cut<T: Real>(z: C<T>) -> bool {
    z.re == T::zero() && z.im <= T::zero()
}

/// Argument in `(-π/2, 3π/2)`.
pub fn principal_arg<T: Real>(z: C<T>) -> Result<T> {
    if on_cut(z) {
        return Err(LerchError::CutViolation(format!("{z} is on the cut of the principal logarithm")));
    }
    let mut t = z.im.atan2(z.re);
    if t <= -T::FRAC_PI_2() {
        t = t + T::TAU();
    }
    Ok(t)
}

/// Logarithm with the negative-imaginary-axis cut.
pub fn principal_log<T: Real>(z: C<T>) -> Result<C<T>> {
    let t = principal_arg(z)?;
    Ok(cplx(z.norm().ln(), t))
}

/// Complex power on an explicitly chosen sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedPower<T: Real> {
    pub base: C<T>,
    pub exponent: C<T>,
    pub extra_winding: i64,
}

impl<T: Real> BranchedPower<T> {
    pub fn new(base: C<T>, exponent: C<T>, extra_winding: i64) -> Self {
        Self { base, exponent, extra_winding }
    }

    pub fn value(&self) -> Result<C<T>> {
        branched_pow(self.base, self.exponent, self.extra_winding)
    }
}

/// `exp(exponent * (principal_log(base) + 2πi * extra_winding))`.
pub fn branched_pow<T: Real>(base: C<T>, exponent: C<T>, extra_winding: i64) -> Result<C<T>> {
    let l = principal_log(base)?;
    let p = (exponent * l).exp();
    if extra_winding == 0 {
        return Ok(p);
    }
    // exp(2πi k e) with exact phase for real e
    let w = T::int(extra_winding);
    let arg = exponent * w;
    let phase = cis_pi(T::lit(2.0) * arg.re) * (-T::TAU() * arg.im).exp();
    Ok(p * phase)
}

/// Principal-branch power `base^exponent`.
pub fn principal_pow<T: Real>(base: C<T>, exponent: C<T>) -> Result<C<T>> {
    branched_pow(base, exponent, 0)
}

// Lanczos approximation, g = 10.900511, 11 terms.
const LANCZOS_G: f64 = 10.900511;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_057_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];
// 2 sqrt(e / pi)
#[allow(clippy::excessive_precision)]
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_717_3;

/// `ln Γ(s)` for `Re s >= 0.5`, on the branch continuous from the real axis.
fn ln_gamma_right<T: Real>(s: C<T>) -> C<T> {
    let z = s - cone();
    let mut sum = cplx(T::lit(LANCZOS_COEF[0]), T::zero());
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum = sum + cplx(T::lit(ck), T::zero()) / (z + T::int(k as i64));
    }
    let half = T::lit(0.5);
    let g = T::lit(LANCZOS_G);
    let base = z + g + half;
    let e = T::one().exp();
    // Γ(z+1) = 2√(e/π) · ((z+g+½)/e)^{z+½} · sum
    (z + half) * (base / e).ln() + sum.ln() + T::lit(TWO_SQRT_E_OVER_PI).ln()
}

/// Complex Gamma function.
pub fn complex_gamma<T: Real>(s: C<T>) -> Result<C<T>> {
    if is_nonpositive_integer(s) {
        return Err(LerchError::PoleAtNonpositiveInteger(s.re.to_i64().unwrap_or(i64::MIN)));
    }
    if s.re < T::lit(0.5) {
        let sp = sin_pi_complex(s);
        Ok(cplx(T::PI(), T::zero()) / (sp * ln_gamma_right(cone::<T>() - s).exp()))
    } else {
        Ok(ln_gamma_right(s).exp())
    }
}

/// `1/Γ(s)`, entire and exactly zero at `0, -1, -2, ...`.
pub fn reciprocal_gamma<T: Real>(s: C<T>) -> C<T> {
    if s.re < T::lit(0.5) {
        let sp = sin_pi_complex(s);
        sp * ln_gamma_right(cone::<T>() - s).exp() / T::PI()
    } else {
        (-ln_gamma_right(s)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn rel(x: C<f64>, y: C<f64>) -> f64 {
        (x - y).norm() / y.norm()
    }

    #[test]
    fn log_examples() {
        assert_eq!(principal_log(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        let l = principal_log(c(-2.0, 0.0)).unwrap();
        assert!((l - c(2f64.ln(), PI)).norm() < 1e-15);
        let l = principal_log(c(0.0, 1.0)).unwrap();
        assert!((l - c(0.0, PI / 2.0)).norm() < 1e-15);
        let l = principal_log(c(-1.0, -1e-9)).unwrap();
        assert!(l.im > PI);
    }

    #[test]
    fn log_rejects_cut() {
        for z in [c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1e-300)] {
            assert!(matches!(principal_log(z), Err(LerchError::CutViolation(_))));
        }
        assert!(principal_log(c(1e-300, -1.0)).is_ok());
    }

    #[test]
    fn pow_examples() {
        let p = branched_pow(c(4.0, 0.0), c(0.5, 0.0), 0).unwrap();
        assert!((p - c(2.0, 0.0)).norm() < 1e-15);
        let p = branched_pow(c(1.0, 0.0), c(0.3, 0.0), 1).unwrap();
        let e = (c(0.0, 0.6 * PI)).exp();
        assert!((p - e).norm() < 1e-15);
        let s = 0.5;
        let p = branched_pow(c(0.5 - 1.0, 0.0), c(s - 1.0, 0.0), 0).unwrap();
        let e = c(0.0, -0.5 * PI).exp() * 0.5f64.powf(-0.5);
        assert!((p - e).norm() < 1e-14);
        let bp = BranchedPower::new(c(4.0, 0.0), c(0.5, 0.0), 1);
        assert!((bp.value().unwrap() - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn gamma_oracle_values() {
        assert!(rel(complex_gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(complex_gamma(c(0.5, 0.0)).unwrap(), c(1.772_453_850_905_516, 0.0)) < 1e-14);
        let g = complex_gamma(c(0.3, 0.2)).unwrap();
        assert!(rel(g, c(1.980_358_172_823_442_6, -1.414_576_008_373_303_2)) < 1e-13);
        let g = complex_gamma(c(-4.5, 3.0)).unwrap();
        assert!(rel(g, c(-6.329_154_822_393_255_7e-6, 2.177_125_857_887_714_5e-5)) < 1e-12);
        let g = complex_gamma(c(20.5, -30.0)).unwrap();
        assert!(rel(g, c(-10_979_079_558.975_664, -2_006_287_968.239_613_7)) < 1e-12);
        let r = reciprocal_gamma(c(2.5, 0.0));
        assert!(rel(r, c(0.752_252_778_063_675_1, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_poles() {
        assert_eq!(
            complex_gamma(c(-3.0, 0.0)),
            Err(LerchError::PoleAtNonpositiveInteger(-3))
        );
        for n in 0..20 {
            assert_eq!(reciprocal_gamma(c(-(n as f64), 0.0)), c(0.0, 0.0));
        }
        assert!(rel(reciprocal_gamma(c(1.0, 0.0)), c(1.0, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_reflection_example() {
        let s = c(0.3, 0.2);
        let v = complex_gamma(s).unwrap() * complex_gamma(c(1.0, 0.0) - s).unwrap() * (s * PI).sin() / PI;
        assert!((v - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn f32_instantiation() {
        let g = complex_gamma(C::new(0.5f32, 0.0)).unwrap();
        assert!((g.re - 1.772_453_9).abs() < 1e-5);
        let l = principal_log(C::new(-2.0f32, 0.0)).unwrap();
        assert!((l.im - std::f32::consts::PI).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            prop_assume!(!(re == 0.0 && im <= 0.0));
            let z = c(re, im);
            let l = principal_log(z).unwrap();
            prop_assert!(l.im > -PI / 2.0 && l.im < 1.5 * PI);
            prop_assert!((l.exp() - z).norm() <= 1e-14 * z.norm() * 4.0);
        }

        #[test]
        fn log_agrees_on_right_half_plane(re in 1e-6f64..1e3, im in -1e3f64..1e3) {
            let z = c(re, im);
            prop_assert!((principal_log(z).unwrap() - z.ln()).norm() < 1e-14 * (1.0 + z.ln().norm()));
        }

        #[test]
        fn gamma_times_reciprocal(re in -20f64..20.0, im in -20f64..20.0) {
            let s = c(re, im);
            prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
            let g = complex_gamma(s).unwrap();
            prop_assert!((g * reciprocal_gamma(s) - c(1.0, 0.0)).norm() < 1e-12);
        }

        #[test]
        fn gamma_reflection(re in -5f64..5.0, im in -5f64..5.0) {
            prop_assume!((re - re.round()).abs() >= 0.1);
            let s = c(re, im);
            let lhs = complex_gamma(s).unwrap() * complex_gamma(c(1.0, 0.0) - s).unwrap();
            let rhs = c(PI, 0.0) / (s * PI).sin();
            prop_assert!(rel(lhs, rhs) < 1e-11);
        }

        #[test]
        fn gamma_recurrence(re in -10f64..10.0, im in -10f64..10.0) {
            prop_assume!((re - re.round()).abs() > 1e-2 || im.abs() > 1e-2);
            let s = c(re, im);
            let lhs = complex_gamma(s + 1.0).unwrap();
            let rhs = s * complex_gamma(s).unwrap();
            prop_assert!(rel(lhs, rhs) < 1e-12);
        }
    }
}
