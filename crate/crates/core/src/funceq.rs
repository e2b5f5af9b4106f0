//! Symmetrized combinations `L^± = ζ(s,a,c) ± e^{-2πia} ζ(s,1-a,1-c)`, their
//! completions `L̂^± = π^{-(s+k)/2} Γ((s+k)/2) L^±` and functional-equation
//! residuals on the polycylinder `0 < Re a, Re c < 1`.
//!
//! Residuals are relative: `|L - R| / max(|L|, |R|, 1)`.

use crate::branchkit::complex_gamma;
use crate::continuation::{dde_lower_steps, evaluate, BranchState, EvalOptions};
use crate::error::{LerchError, Result};
use crate::evaluator::{Point3, SeriesKind};
use crate::real::{cis_pi, cone, cplx, exp_2pi_i, exp_pi_i, Real, C};

/// Distance from a Γ-factor pole below which the completed value is taken as
/// a Cauchy mean.
const POLE_ZONE: f64 = 0.05;
const MEAN_RADIUS: f64 = 0.1;
const MEAN_NODES: usize = 16;

/// A completed value with its archimedean factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedL<T: Real> {
    pub kind: SeriesKind,
    pub value: C<T>,
    /// `π^{-(s+k)/2} Γ((s+k)/2)`; infinite at a pole.
    pub factor: C<T>,
    /// Set when `(s+k)/2` is within 0.05 of a pole; `value` is then the mean
    /// over a circle in `s`, valid because the product is entire.
    pub near_pole: bool,
}

/// Functional-equation variant obtained by iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeVariant {
    /// `L̂(s,a,c) = (-1)^k e^{-2πia} L̂(s,1-a,1-c)`.
    AReflect,
    /// `L̂(s,a,c) = (-i)^k e^{-2πiac+2πic} L̂(1-s,c,1-a)`.
    QuarterTurn,
}

fn relative<T: Real>(l: C<T>, r: C<T>) -> T {
    (l - r).norm() / l.norm().max(r.norm()).max(T::one())
}

fn check_polycylinder<T: Real>(a: C<T>, c: C<T>) -> Result<()> {
    let inside = |x: T| x > T::zero() && x < T::one();
    if inside(a.re) && inside(c.re) {
        Ok(())
    } else {
        Err(LerchError::InvalidRegion("needs 0 < Re a < 1 and 0 < Re c < 1".into()))
    }
}

/// `ζ(s,a,c) ± e^{-2πia} ζ(s,1-a,1-c)`, each term at half the target.
pub fn l_pm<T: Real>(kind: SeriesKind, s: C<T>, a: C<T>, c: C<T>, target_abs_err: T) -> Result<C<T>> {
    let one = cone::<T>();
    let e = exp_2pi_i(-a);
    let half = target_abs_err / T::lit(2.0);
    let z1 = evaluate(&Point3::new(s, a, c), half)?.value;
    let z2 = evaluate(&Point3::new(s, one - a, one - c), half / e.norm().max(T::one()))?.value;
    Ok(match kind {
        SeriesKind::Plus => z1 + e * z2,
        SeriesKind::Minus => z1 - e * z2,
    })
}

fn archimedean<T: Real>(kind: SeriesKind, s: C<T>) -> Result<C<T>> {
    let x = (s + T::int(kind.parity())) / T::lit(2.0);
    Ok((-x * T::PI().ln()).exp() * complex_gamma(x)?)
}

/// Distance of `(s+k)/2` from the poles of Γ.
fn pole_distance<T: Real>(kind: SeriesKind, s: C<T>) -> T {
    let x = (s + T::int(kind.parity())) / T::lit(2.0);
    let n = x.re.round().min(T::zero());
    cplx(x.re - n, x.im).norm()
}

/// `L̂^±(s, a, c)`.
pub fn completed<T: Real>(kind: SeriesKind, s: C<T>, a: C<T>, c: C<T>, target_abs_err: T) -> Result<CompletedL<T>> {
    if pole_distance(kind, s) >= T::lit(POLE_ZONE) {
        let factor = archimedean(kind, s)?;
        let inner = target_abs_err / factor.norm().max(T::lit(1e-3));
        let value = factor * l_pm(kind, s, a, c, inner)?;
        return Ok(CompletedL { kind, value, factor, near_pole: false });
    }
    let factor = archimedean(kind, s).unwrap_or(cplx(T::infinity(), T::zero()));
    let m = T::int(MEAN_NODES as i64);
    let r = T::lit(MEAN_RADIUS);
    let mut acc = C::new(T::zero(), T::zero());
    for j in 0..MEAN_NODES {
        let sj = s + cis_pi(T::lit(2.0) * (T::int(j as i64) + T::lit(0.5)) / m) * r;
        let f = archimedean(kind, sj)?;
        acc = acc + f * l_pm(kind, sj, a, c, target_abs_err / f.norm().max(T::lit(1e-3)))?;
    }
    Ok(CompletedL { kind, value: acc / m, factor, near_pole: true })
}

/// Residual of `L̂^±(s,a,c) = i^k e^{-2πiac} L̂^±(1-s,1-c,a)`.
pub fn fe_residual<T: Real>(kind: SeriesKind, s: C<T>, a: C<T>, c: C<T>, target_abs_err: T) -> Result<T> {
    check_polycylinder(a, c)?;
    let one = cone::<T>();
    let lhs = completed(kind, s, a, c, target_abs_err)?.value;
    let ik = match kind {
        SeriesKind::Plus => one,
        SeriesKind::Minus => cplx(T::zero(), T::one()),
    };
    let rhs = ik * exp_2pi_i(-a * c) * completed(kind, one - s, one - c, a, target_abs_err)?.value;
    Ok(relative(lhs, rhs))
}

/// Residual of the iterated forms of the functional equation.
pub fn fe_iterated_residual<T: Real>(
    kind: SeriesKind,
    variant: FeVariant,
    s: C<T>,
    a: C<T>,
    c: C<T>,
    target_abs_err: T,
) -> Result<T> {
    check_polycylinder(a, c)?;
    let one = cone::<T>();
    let lhs = completed(kind, s, a, c, target_abs_err)?.value;
    let rhs = match (variant, kind) {
        (FeVariant::AReflect, SeriesKind::Plus) => exp_2pi_i(-a) * completed(kind, s, one - a, one - c, target_abs_err)?.value,
        (FeVariant::AReflect, SeriesKind::Minus) => {
            -exp_2pi_i(-a) * completed(kind, s, one - a, one - c, target_abs_err)?.value
        }
        (FeVariant::QuarterTurn, _) => {
            let unit = match kind {
                SeriesKind::Plus => one,
                SeriesKind::Minus => cplx(T::zero(), -T::one()),
            };
            unit * exp_2pi_i(c - a * c) * completed(kind, one - s, c, one - a, target_abs_err)?.value
        }
    };
    Ok(relative(lhs, rhs))
}

/// Residual of the three-term transformation formula
/// `ζ(s,a,c) = (2π)^{s-1}Γ(1-s)[e^{πi(1-s)/2}e^{-2πiac}ζ(1-s,1-c,a)
/// + e^{-πi(1-s)/2}e^{2πic(1-a)}ζ(1-s,c,1-a)]`, for `Re s < 1`.
///
/// The left side comes from direct methods when `Re s > 0` and from one
/// lowering step out of `s + 1` when `-1 < Re s ≤ 0`; further left it is the
/// formula itself and the residual is only a consistency check.
pub fn transform_residual<T: Real>(s: C<T>, a: C<T>, c: C<T>, target_abs_err: T) -> Result<T> {
    check_polycylinder(a, c)?;
    if !(s.re < T::one()) {
        return Err(LerchError::InvalidRegion("needs Re s < 1".into()));
    }
    let one = cone::<T>();
    let sp = one - s;
    let pref = (-sp * T::TAU().ln()).exp() * complex_gamma(sp)?;
    let f1 = pref * exp_pi_i(sp / T::lit(2.0)) * exp_2pi_i(-a * c);
    let f2 = pref * exp_pi_i(-sp / T::lit(2.0)) * exp_2pi_i(c * (one - a));
    let t1 = target_abs_err / f1.norm().max(T::one());
    let t2 = target_abs_err / f2.norm().max(T::one());
    let rhs = f1 * evaluate(&Point3::new(sp, one - c, a), t1)?.value + f2 * evaluate(&Point3::new(sp, c, one - a), t2)?.value;
    let p = Point3::new(s, a, c);
    let lhs = if s.re <= T::zero() && s.re > -T::one() {
        let opts = EvalOptions::default();
        let up = Point3::new(s + one, a, c);
        dde_lower_steps(&up, &BranchState::zero(), 1, target_abs_err, &opts)?.value
    } else {
        evaluate(&p, target_abs_err)?.value
    };
    Ok(relative(lhs, rhs))
}
