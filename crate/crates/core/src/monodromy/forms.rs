//! Closed-form monodromy functions of the generators, their powers, and the
//! sum over an abelianized word.
//!
//! With `λ = e^{2πis}` and `μ = e^{-2πis}`:
//!
//! * `M_{X_n} = -(2π)^s e^{πis/2}/Γ(s) · (a-n)^{s-1} e^{-2πic(a-n)}`
//! * `M_{Y_n} = (μ - 1) e^{-2πina} (c-n)^{-s}` for `n ≤ 0`, and `0` for `n ≥ 1`
//! * `M_{S^k} = (χ^k - 1)/(χ - 1) · M_S` with `χ = λ` for `X`, `μ` for `Y`.

use crate::branchkit::{principal_pow, reciprocal_gamma};
use crate::continuation::BranchState;
use crate::error::Result;
use crate::real::{cone, czero, exp_2pi_i, exp_pi_i, Real, C};

use super::word::{Axis, Generator, Word};

/// Below this `|χ - 1|` the geometric ratio is summed explicitly.
const GEOMETRIC_GUARD: f64 = 1e-8;

/// Exponent `z` with `χ_S = e^{2πiz}`: `s` for `X`, `-s` for `Y`.
fn character_exponent<T: Real>(axis: Axis, s: C<T>) -> C<T> {
    match axis {
        Axis::X => s,
        Axis::Y => -s,
    }
}

/// `χ_S = e^{±2πis}`.
pub fn character<T: Real>(axis: Axis, s: C<T>) -> C<T> {
    exp_2pi_i(character_exponent(axis, s))
}

/// `(χ^k - 1)/(χ - 1)` for `χ = e^{2πiz}`, with the polynomial limit near
/// `χ = 1`.
pub fn geometric_factor<T: Real>(z: C<T>, k: i64) -> C<T> {
    let chi = exp_2pi_i(z);
    if (chi - cone::<T>()).norm() >= T::lit(GEOMETRIC_GUARD) {
        return (exp_2pi_i(z * T::int(k)) - cone::<T>()) / (chi - cone::<T>());
    }
    let mut acc = czero::<T>();
    if k > 0 {
        for j in 0..k {
            acc = acc + exp_2pi_i(z * T::int(j));
        }
    } else {
        for j in k..0 {
            acc = acc - exp_2pi_i(z * T::int(j));
        }
    }
    acc
}

/// `M_S(Z)` at `(s, a, c)` on the principal branch.
pub fn monodromy_generator<T: Real>(g: Generator, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    let n = T::int(g.n);
    match g.axis {
        Axis::X => {
            let d = a - n;
            let pw = principal_pow(d, s - cone::<T>())?;
            let two_pi_s = (s * T::TAU().ln()).exp();
            let pref = -two_pi_s * exp_pi_i(s / T::lit(2.0)) * reciprocal_gamma(s);
            Ok(pref * pw * exp_2pi_i(-c * d))
        }
        Axis::Y => {
            if g.n >= 1 {
                return Ok(czero());
            }
            let pw = principal_pow(c - n, -s)?;
            let mu = exp_2pi_i(-s);
            Ok((mu - cone::<T>()) * exp_2pi_i(-a * n) * pw)
        }
    }
}

/// `M_{S^k}(Z)`.
pub fn monodromy_power<T: Real>(g: Generator, k: i64, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    let m = monodromy_generator(g, s, a, c)?;
    if k == 0 {
        return Ok(czero());
    }
    Ok(geometric_factor(character_exponent(g.axis, s), k) * m)
}

/// Per-generator contributions `M_{S^{k(S)}}` for a winding vector, in
/// generator order.
pub fn monodromy_contributions<T: Real>(
    b: &BranchState,
    s: C<T>,
    a: C<T>,
    c: C<T>,
) -> Result<Vec<(Generator, i64, C<T>)>> {
    b.iter()
        .map(|(g, k)| monodromy_power(g, k, s, a, c).map(|v| (g, k, v)))
        .collect()
}

/// `Σ_S M_{S^{k(S)}}` for a winding vector.
pub fn monodromy_of_state<T: Real>(b: &BranchState, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    let mut acc = czero::<T>();
    for (g, k) in b.iter() {
        acc = acc + monodromy_power(g, k, s, a, c)?;
    }
    Ok(acc)
}

/// `M_w(Z)` via the abelianization of `w`.
pub fn monodromy_of_word<T: Real>(w: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    monodromy_of_state(&w.abelianize(), s, a, c)
}

/// `M_{w2}(M_{w1}(Z))`: continuing each `M_{S^{k1}}` around `w2` multiplies it
/// by `χ_S^{k2(S)}`; different generators do not interact.
pub fn nested_monodromy<T: Real>(w1: &Word, w2: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    let b1 = w1.abelianize();
    let b2 = w2.abelianize();
    let mut acc = czero::<T>();
    for (g, k1) in b1.iter() {
        let k2 = b2.get(g);
        if k2 == 0 {
            continue;
        }
        let z = character_exponent(g.axis, s);
        let factor = exp_2pi_i(z * T::int(k2)) - cone::<T>();
        acc = acc + factor * monodromy_power(g, k1, s, a, c)?;
    }
    Ok(acc)
}

/// `|M(w1 w2) - M(w1) - M(w2) - M_{w2}(M_{w1})|`.
pub fn compose_check<T: Real>(w1: &Word, w2: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<T> {
    let whole = monodromy_of_word(&w1.mul(w2), s, a, c)?;
    let parts = monodromy_of_word(w1, s, a, c)? + monodromy_of_word(w2, s, a, c)? + nested_monodromy(w1, w2, s, a, c)?;
    Ok((whole - parts).norm())
}

/// `M_w(Z)` built one letter at a time from the composition rule, without the
/// closed-form power law: appending `S^ε` updates the `S` component as
/// `m ← m + M_{S^ε} + (χ_S^ε - 1) m`, with `M_{S^{-1}} = -χ_S^{-1} M_S`.
pub fn monodromy_by_letters<T: Real>(w: &Word, s: C<T>, a: C<T>, c: C<T>) -> Result<C<T>> {
    let mut comps: Vec<(Generator, C<T>)> = Vec::new();
    for l in w.letters() {
        let g = l.generator;
        let m = monodromy_generator(g, s, a, c)?;
        let chi = character(g.axis, s);
        let (step, chi_e) = if l.exponent > 0 {
            (m, chi)
        } else {
            let inv = exp_2pi_i(-character_exponent(g.axis, s));
            (-inv * m, inv)
        };
        let slot = match comps.iter().position(|(h, _)| *h == g) {
            Some(i) => i,
            None => {
                comps.push((g, czero()));
                comps.len() - 1
            }
        };
        let cur = comps[slot].1;
        comps[slot].1 = cur + step + (chi_e - cone::<T>()) * cur;
    }
    comps.sort_by_key(|(g, _)| *g);
    Ok(comps.into_iter().fold(czero(), |acc, (_, v)| acc + v))
}

/// `M_{S^{j+k}} - M_{S^j} - χ^j M_{S^k}`, which vanishes identically.
pub fn power_law_residual<T: Real>(g: Generator, j: i64, k: i64, s: C<T>, a: C<T>, c: C<T>) -> Result<T> {
    let z = character_exponent(g.axis, s);
    let lhs = monodromy_power(g, j + k, s, a, c)?;
    let rhs = monodromy_power(g, j, s, a, c)? + exp_2pi_i(z * T::int(j)) * monodromy_power(g, k, s, a, c)?;
    Ok((lhs - rhs).norm())
}
