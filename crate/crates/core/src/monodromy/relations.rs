//! Linear relations among monodromy functions inherited from the functional
//! equations through the automorphism `θ(s, a, c) = (1-s, 1-c, a)`.

use crate::branchkit::complex_gamma;
use crate::error::Result;
use crate::evaluator::{Point3, SeriesKind};
use crate::real::{cone, cplx, exp_2pi_i, Real, C};

use super::forms::monodromy_of_word;
use super::word::Word;

/// `θ^power` applied to a point; `θ² (s,a,c) = (s, 1-a, 1-c)`.
pub fn theta_point<T: Real>(p: &Point3<T>, power: u32) -> Point3<T> {
    let one = cone::<T>();
    let mut q = *p;
    for _ in 0..(power % 4) {
        q = Point3::new(one - q.s, one - q.c, q.a);
    }
    q
}

/// `π^{-x/2} Γ(x/2)`.
fn archimedean<T: Real>(x: C<T>) -> Result<C<T>> {
    let half = x / T::lit(2.0);
    Ok((-half * T::PI().ln()).exp() * complex_gamma(half)?)
}

/// Both sides of the monodromy relation for `w` at `(s, a, c)`:
///
/// plus: `G(s)[M_w + e^{-2πia} M_{θ²w}∘θ²] = e^{-2πiac} G(1-s)[M_{θw}∘θ + e^{2πic} M_{θ³w}∘θ³]`
///
/// minus: `G(s+1)[M_w - e^{-2πia} M_{θ²w}∘θ²] = i e^{-2πiac} G(2-s)[M_{θw}∘θ - e^{2πic} M_{θ³w}∘θ³]`
///
/// with `G(x) = π^{-x/2}Γ(x/2)`.
pub fn fe_monodromy_sides<T: Real>(kind: SeriesKind, w: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<(C<T>, C<T>)> {
    let p = Point3::new(s, a, c);
    let m = |power: u32| -> Result<C<T>> {
        let q = theta_point(&p, power);
        monodromy_of_word(&w.theta(power), q.s, q.a, q.c)
    };
    let m0 = m(0)?;
    let m1 = m(1)?;
    let m2 = m(2)?;
    let m3 = m(3)?;
    let one = cone::<T>();
    let ea = exp_2pi_i(-a);
    let eac = exp_2pi_i(-a * c);
    let ec = exp_2pi_i(c);
    Ok(match kind {
        SeriesKind::Plus => {
            let lhs = archimedean(s)? * (m0 + ea * m2);
            let rhs = eac * archimedean(one - s)? * (m1 + ec * m3);
            (lhs, rhs)
        }
        SeriesKind::Minus => {
            let lhs = archimedean(s + one)? * (m0 - ea * m2);
            let rhs = cplx(T::zero(), T::one()) * eac * archimedean(one + one - s)? * (m1 - ec * m3);
            (lhs, rhs)
        }
    })
}

/// `|LHS - RHS| / max(|LHS|, |RHS|, 1)` for [`fe_monodromy_sides`].
pub fn fe_monodromy_residual<T: Real>(kind: SeriesKind, w: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<T> {
    let (l, r) = fe_monodromy_sides(kind, w, s, a, c)?;
    let scale = l.norm().max(r.norm()).max(T::one());
    Ok((l - r).norm() / scale)
}
