//! Evaluation of `Z(s, a, c)` anywhere on the abelian cover.
//!
//! The principal sheet is the continuation from `(1/2, 1/2, 1/2)` with the
//! `a`-plane cut along the rays `k - it` (`k ∈ ℤ`, `t ≥ 0`) and the `c`-plane
//! cut along `n - it` (`n ≤ 0`). On it `Z` is 1-periodic in `a` and obeys
//! `Z(c) = Σ_{n<N} e^{2πina}(n+c)^{-s} + e^{2πiNa} Z(c+N)` with principal
//! powers, so every point reduces to `0 ≤ Re a < 1`, `0 < Re c ≤ 1`. A cover
//! value is the principal value plus the closed-form monodromy of its winding
//! vector.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::branchkit::{complex_gamma, principal_pow};
use crate::error::{LerchError, Result};
use crate::evaluator::{
    integral_eval_with, series_eval_with, ContourSpec, LerchValue, Method, Point3, QuadOptions, SeriesOptions,
};
use crate::monodromy::{monodromy_of_state, Axis, Generator, Word};
use crate::real::{cis_pi, cone, cplx, czero, dist_to_integer, exp_2pi_i, exp_pi_i, real, Real, C};

/// Finitely supported winding numbers `k(X_n)`, `k(Y_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BranchState {
    kx: BTreeMap<i64, i64>,
    ky: BTreeMap<i64, i64>,
}

impl BranchState {
    pub fn zero() -> Self {
        Self::default()
    }

    fn map_mut(&mut self, axis: Axis) -> &mut BTreeMap<i64, i64> {
        match axis {
            Axis::X => &mut self.kx,
            Axis::Y => &mut self.ky,
        }
    }

    /// Adds `k` to the winding of `g`.
    pub fn add(&mut self, g: Generator, k: i64) {
        let m = self.map_mut(g.axis);
        let v = m.get(&g.n).copied().unwrap_or(0) + k;
        if v == 0 {
            m.remove(&g.n);
        } else {
            m.insert(g.n, v);
        }
    }

    pub fn set(&mut self, g: Generator, k: i64) {
        let m = self.map_mut(g.axis);
        if k == 0 {
            m.remove(&g.n);
        } else {
            m.insert(g.n, k);
        }
    }

    pub fn add_state(&mut self, other: &BranchState) {
        for (g, k) in other.iter() {
            self.add(g, k);
        }
    }

    pub fn get(&self, g: Generator) -> i64 {
        let m = match g.axis {
            Axis::X => &self.kx,
            Axis::Y => &self.ky,
        };
        m.get(&g.n).copied().unwrap_or(0)
    }

    pub fn kx(&self, n: i64) -> i64 {
        self.get(Generator::x(n))
    }

    pub fn ky(&self, n: i64) -> i64 {
        self.get(Generator::y(n))
    }

    pub fn is_zero(&self) -> bool {
        self.kx.is_empty() && self.ky.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.kx.len() + self.ky.len()
    }

    /// Nonzero entries, `X` before `Y`, increasing index.
    pub fn iter(&self) -> impl Iterator<Item = (Generator, i64)> + '_ {
        self.kx
            .iter()
            .map(|(&n, &k)| (Generator::x(n), k))
            .chain(self.ky.iter().map(|(&n, &k)| (Generator::y(n), k)))
    }
}

impl fmt::Display for BranchState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, k) in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = match g.axis {
                Axis::X => "kx",
                Axis::Y => "ky",
            };
            write!(f, "{name}[{}]={k}", g.n)?;
        }
        Ok(())
    }
}

impl FromStr for BranchState {
    type Err = LerchError;

    /// Either assignments `kx[0]=1 ky[3]=7` (comma or space separated) or a
    /// word such as `X0 Y-2^-1`, which is abelianized.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if !t.contains('[') {
            return Ok(t.parse::<Word>()?.abelianize());
        }
        let mut b = BranchState::zero();
        for tok in t.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|x| !x.is_empty()) {
            let bad = || LerchError::Parse(format!("bad winding assignment {tok:?}"));
            let (lhs, rhs) = tok.split_once('=').ok_or_else(bad)?;
            let axis = if lhs.starts_with("kx[") {
                Axis::X
            } else if lhs.starts_with("ky[") {
                Axis::Y
            } else {
                return Err(bad());
            };
            let idx = lhs[3..].strip_suffix(']').ok_or_else(bad)?;
            let n: i64 = idx.parse().map_err(|_| bad())?;
            let k: i64 = rhs.parse().map_err(|_| bad())?;
            b.add(Generator { axis, n }, k);
        }
        Ok(b)
    }
}

/// Evaluation strategy for a principal-sheet point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// `Im a > 0`, `Re c > 0`: Dirichlet series.
    USeries,
    /// `Re s > 0`, `Re c > 0`, `Im a ≤ 0`: contour integral.
    UPlusIntegral,
    /// `0 < Re a < 1`, `0 < Re c < 1`, any `s`.
    OmegaTilde,
    /// Reduced into the polycylinder by periodicity in `a` and shifts in `c`.
    TransformNeeded,
    /// Reduces to the wall `Re c = 1` with `Re s ≤ 0`, `Im a ≤ 0`: raised from
    /// `s - 1` by differentiation in `c`.
    DdeNeeded,
}

impl RegionTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionTag::USeries => "u_series",
            RegionTag::UPlusIntegral => "u_plus_integral",
            RegionTag::OmegaTilde => "omega_tilde",
            RegionTag::TransformNeeded => "transform_needed",
            RegionTag::DdeNeeded => "dde_needed",
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Settings for Cauchy-circle differentiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyOptions<T: Real> {
    /// Requested circle radius.
    pub radius: T,
    /// Trapezoid nodes on the circle.
    pub nodes: usize,
    /// Shrink the radius to a quarter of the clearance instead of failing.
    pub clip: bool,
}

impl<T: Real> Default for CauchyOptions<T> {
    fn default() -> Self {
        Self { radius: T::lit(1e-2), nodes: 24, clip: true }
    }
}

/// Settings shared by every evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalOptions<T: Real> {
    pub series: SeriesOptions,
    pub quad: QuadOptions<T>,
    pub cauchy: CauchyOptions<T>,
}

/// Direction of a differential-difference step in `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `Z(s+1) = -(1/s) ∂_c Z(s)`.
    Raise,
    /// `Z(s-1) = ((1/2πi) ∂_a + c) Z(s)`.
    Lower,
}

// wall radius for raising onto Re c = 1
const WALL_RADIUS: f64 = 0.25;
const WALL_NODES: usize = 32;

fn unit_open<T: Real>(x: T) -> bool {
    x > T::zero() && x < T::one()
}

/// Rejects points on the `a`- or `c`-cuts of the principal sheet.
pub fn check_anchor<T: Real>(p: &Point3<T>) -> Result<()> {
    if p.a.im < T::zero() && p.a.re == p.a.re.round() {
        return Err(LerchError::CutViolation(format!("a = {} lies on a downward cut ray", p.a)));
    }
    if p.c.im < T::zero() && p.c.re == p.c.re.round() && p.c.re <= T::zero() {
        return Err(LerchError::CutViolation(format!("c = {} lies on a downward cut ray", p.c)));
    }
    Ok(())
}

/// Distance from `a` to the nearest `a`-cut ray or puncture.
pub fn a_clearance<T: Real>(a: C<T>) -> T {
    if a.im >= T::zero() {
        let dx = dist_to_integer(a.re);
        (dx * dx + a.im * a.im).sqrt()
    } else {
        dist_to_integer(a.re)
    }
}

/// Distance from `c` to the nearest `c`-cut ray `n - it`, `n ≤ 0`.
pub fn c_clearance<T: Real>(c: C<T>) -> T {
    let n = c.re.round().min(T::zero());
    let mut best = T::infinity();
    for d in [-1i64, 0, 1] {
        let k = n + T::int(d);
        if k > T::zero() {
            continue;
        }
        let dist = if c.im >= T::zero() { cplx(c.re - k, c.im).norm() } else { (c.re - k).abs() };
        best = best.min(dist);
    }
    best
}

/// Strategy choice for the principal sheet.
pub fn classify<T: Real>(p: &Point3<T>) -> Result<RegionTag> {
    p.validate()?;
    if p.in_u() {
        return Ok(RegionTag::USeries);
    }
    if p.in_omega_tilde() {
        return Ok(RegionTag::OmegaTilde);
    }
    if p.s.re > T::zero() && p.c.re > T::zero() {
        return Ok(RegionTag::UPlusIntegral);
    }
    if p.c.re == p.c.re.round() && p.s.re <= T::zero() && p.a.im <= T::zero() {
        return Ok(RegionTag::DdeNeeded);
    }
    Ok(RegionTag::TransformNeeded)
}

/// Principal-sheet value with default settings.
pub fn evaluate<T: Real>(p: &Point3<T>, target_abs_err: T) -> Result<LerchValue<T>> {
    evaluate_with(p, target_abs_err, &EvalOptions::default())
}

/// Principal-sheet value of `Z(s, a, c)`.
pub fn evaluate_with<T: Real>(p: &Point3<T>, target_abs_err: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    check_anchor(p)?;
    match classify(p)? {
        RegionTag::USeries => series_eval_with(p, target_abs_err, &opts.series),
        RegionTag::OmegaTilde => omega_eval(p, target_abs_err, opts),
        RegionTag::UPlusIntegral => integral_eval_with(p, ContourSpec::Straight, target_abs_err, &opts.quad),
        RegionTag::TransformNeeded | RegionTag::DdeNeeded => reduced_eval(p, target_abs_err, opts),
    }
}

fn omega_eval<T: Real>(p: &Point3<T>, target: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    if p.s.re > T::zero() {
        if p.a.im >= T::zero() {
            return series_eval_with(p, target, &opts.series);
        }
        match integral_eval_with(p, ContourSpec::Straight, target, &opts.quad) {
            Err(LerchError::ContourHitsPole(_)) if p.s.re < T::one() => transform_eval_with(p, target, opts),
            r => r,
        }
    } else {
        transform_eval_with(p, target, opts)
    }
}

/// Reduces `Re a` into `[0, 1)` and `Re c` into `(0, 1]`, evaluates there and
/// shifts back.
fn reduced_eval<T: Real>(p: &Point3<T>, target: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    let Point3 { s, a, c } = *p;
    let a_r = a - a.re.floor();
    let shift = if c.re == c.re.round() { T::one() - c.re } else { -c.re.floor() };
    let n = shift.to_i64().ok_or_else(|| LerchError::InvalidPoint("c out of range".into()))?;
    let c_r = c + T::int(n);
    let inner_p = Point3::new(s, a_r, c_r);
    let q = exp_2pi_i(a_r);
    let qn = exp_2pi_i(a_r * T::int(n));
    let scale = qn.norm().max(T::min_positive_value());

    let inner_target = if n >= 0 { target / T::lit(2.0) / scale } else { target * scale / T::lit(2.0) };
    let inner = if c_r.re == T::one() && s.re <= T::zero() && a_r.im <= T::zero() {
        wall_eval(&inner_p, inner_target, opts)?
    } else {
        evaluate_with(&inner_p, inner_target, opts)?
    };

    let eps = T::epsilon();
    let mut partial = czero::<T>();
    let mut mass = T::zero();
    let base = if n >= 0 { c } else { c_r };
    let mut qk = cone::<T>();
    for k in 0..n.unsigned_abs() {
        let term = qk * principal_pow(base + T::int(k as i64), -s)?;
        partial = partial + term;
        mass = mass + term.norm();
        qk = qk * q;
    }
    let (value, abs_err) = if n >= 0 {
        (partial + qn * inner.value, inner.abs_err * scale + T::lit(8.0) * eps * mass)
    } else {
        ((inner.value - partial) * qn, (inner.abs_err + T::lit(8.0) * eps * mass) * scale)
    };
    let mut v = LerchValue::new(value, inner.method, abs_err);
    v.route = format!("shift[a-={},c+={n}]>{}", a.re.floor(), inner.route);
    Ok(v)
}

/// `Z(s, a, c)` on `Re c = 1` with `Re s ≤ 0`, `Im a ≤ 0`, from
/// `Z(s) = -∂_c Z(s-1, a, c)/(s-1)`.
fn wall_eval<T: Real>(p: &Point3<T>, target: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    let Point3 { s, a, c } = *p;
    let sm1 = s - cone::<T>();
    let r = T::lit(WALL_RADIUS);
    let inner_target = target * r * sm1.norm() / T::lit(8.0);
    let f = |gamma: C<T>| evaluate_with(&Point3::new(sm1, a, gamma), inner_target, opts);
    let d = cauchy_derivatives(f, c, r, WALL_NODES, 1, true)?;
    let value = -d.derivs[1] / sm1;
    let abs_err = d.err[1] / sm1.norm();
    let mut v = LerchValue::new(value, Method::DdeShift, abs_err);
    v.route = format!("dde-raise[c-circle r={}]", r);
    Ok(v)
}

/// Transform formula with default settings.
pub fn transform_eval<T: Real>(p: &Point3<T>, target_abs_err: T) -> Result<LerchValue<T>> {
    transform_eval_with(p, target_abs_err, &EvalOptions::default())
}

/// `ζ(1-s', a, c) = (2π)^{-s'}Γ(s')[e^{πis'/2}e^{-2πiac}ζ(s', 1-c, a)
/// + e^{-πis'/2}e^{2πic(1-a)}ζ(s', c, 1-a)]` with `s' = 1 - s`; needs
/// `0 < Re a, Re c < 1` and `Re s < 1`.
pub fn transform_eval_with<T: Real>(p: &Point3<T>, target_abs_err: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    let Point3 { s, a, c } = *p;
    if !(unit_open(a.re) && unit_open(c.re)) {
        return Err(LerchError::InvalidRegion("transform needs 0 < Re a < 1 and 0 < Re c < 1".into()));
    }
    if !(s.re < T::one()) {
        return Err(LerchError::InvalidRegion("transform needs Re s < 1".into()));
    }
    let one = cone::<T>();
    let sp = one - s;
    let pref = (-sp * T::TAU().ln()).exp() * complex_gamma(sp)?;
    let f1 = pref * exp_pi_i(sp / T::lit(2.0)) * exp_2pi_i(-a * c);
    let f2 = pref * exp_pi_i(-sp / T::lit(2.0)) * exp_2pi_i(c * (one - a));
    let t1_target = target_abs_err / (T::lit(4.0) * f1.norm().max(T::min_positive_value()));
    let t2_target = target_abs_err / (T::lit(4.0) * f2.norm().max(T::min_positive_value()));
    let z1 = evaluate_with(&Point3::new(sp, one - c, a), t1_target, opts)?;
    let z2 = evaluate_with(&Point3::new(sp, c, one - a), t2_target, opts)?;
    let value = f1 * z1.value + f2 * z2.value;
    let abs_err = f1.norm() * z1.abs_err
        + f2.norm() * z2.abs_err
        + T::lit(8.0) * T::epsilon() * ((f1 * z1.value).norm() + (f2 * z2.value).norm());
    let mut v = LerchValue::new(value, Method::Transform, abs_err);
    v.route = format!("transform[{},{}]", z1.route, z2.route);
    Ok(v)
}

/// Taylor data from a Cauchy circle.
#[derive(Debug, Clone)]
pub struct CauchyDerivatives<T: Real> {
    /// `f^{(k)}(z0)` for `k = 0..=max_order`.
    pub derivs: Vec<C<T>>,
    /// Error estimate per order.
    pub err: Vec<T>,
    pub radius: T,
}

/// Derivatives of a holomorphic `f` at `z0` from the trapezoid rule on
/// `|z - z0| = r`. With `offset` the nodes sit at half-steps.
pub fn cauchy_derivatives<T: Real, F>(
    f: F,
    z0: C<T>,
    r: T,
    nodes: usize,
    max_order: usize,
    offset: bool,
) -> Result<CauchyDerivatives<T>>
where
    F: Fn(C<T>) -> Result<LerchValue<T>>,
{
    let m = nodes.max(max_order + 4);
    let mt = T::int(m as i64);
    let shift = if offset { T::lit(0.5) } else { T::zero() };
    let mut vals = Vec::with_capacity(m);
    let mut val_err = T::zero();
    for j in 0..m {
        let x = T::lit(2.0) * (T::int(j as i64) + shift) / mt;
        let z = z0 + cis_pi(x) * r;
        let v = f(z)?;
        val_err = val_err.max(v.abs_err);
        vals.push((x, v.value));
    }
    // Fourier coefficients a_k ≈ f^{(k)} r^k / k!
    let coef = |k: usize| -> C<T> {
        let mut acc = czero::<T>();
        for &(x, v) in &vals {
            acc = acc + v * cis_pi(-x * T::int(k as i64));
        }
        acc / mt
    };
    let tail = coef(m / 2).norm().max(coef(m / 2 - 1).norm());
    let noise = val_err + T::lit(4.0) * T::epsilon() * vals.iter().fold(T::zero(), |acc, (_, v)| acc.max(v.norm()));
    let mut derivs = Vec::with_capacity(max_order + 1);
    let mut err = Vec::with_capacity(max_order + 1);
    let mut fact = T::one();
    let mut rk = T::one();
    for k in 0..=max_order {
        if k > 0 {
            fact = fact * T::int(k as i64);
            rk = rk * r;
        }
        derivs.push(coef(k) * fact / rk);
        err.push((noise + tail) * fact / rk);
    }
    Ok(CauchyDerivatives { derivs, err, radius: r })
}

fn circle_radius<T: Real>(clearance: T, opts: &CauchyOptions<T>) -> Result<T> {
    let limit = clearance / T::lit(4.0);
    if opts.radius <= limit {
        return Ok(opts.radius);
    }
    if opts.clip && limit > T::lit(1e-6) {
        return Ok(limit);
    }
    Err(LerchError::DerivativeCircleLeavesDomain(format!(
        "radius {} exceeds a quarter of the clearance {}",
        opts.radius, clearance
    )))
}

/// Differential-difference step with default settings.
pub fn dde_shift<T: Real>(p: &Point3<T>, direction: Direction, target_abs_err: T) -> Result<LerchValue<T>> {
    dde_shift_with(p, direction, target_abs_err, &EvalOptions::default())
}

/// `Z(s∓1, a, c)` from principal-sheet values of `Z(s, ·, ·)` on a circle.
pub fn dde_shift_with<T: Real>(
    p: &Point3<T>,
    direction: Direction,
    target_abs_err: T,
    opts: &EvalOptions<T>,
) -> Result<LerchValue<T>> {
    let state = BranchState::zero();
    match direction {
        Direction::Lower => dde_lower_steps(p, &state, 1, target_abs_err, opts),
        Direction::Raise => dde_raise(p, &state, target_abs_err, opts),
    }
}

/// `Z(s-m) = Σ_j C(m,j) c^{m-j} (2πi)^{-j} ∂_a^j Z(s)` on the sheet `b`.
pub fn dde_lower_steps<T: Real>(
    p: &Point3<T>,
    b: &BranchState,
    m: usize,
    target_abs_err: T,
    opts: &EvalOptions<T>,
) -> Result<LerchValue<T>> {
    p.validate()?;
    check_anchor(p)?;
    let r = circle_radius(a_clearance(p.a), &opts.cauchy)?;
    let inner_target = target_abs_err * r.powi(m as i32) / T::lit(8.0);
    let f = |alpha: C<T>| evaluate_on_cover_with(&Point3::new(p.s, alpha, p.c), b, inner_target, opts);
    let d = cauchy_derivatives(f, p.a, r, opts.cauchy.nodes, m, false)?;
    let inv_2pi_i = cplx(T::zero(), -T::one() / T::TAU());
    let mut value = czero::<T>();
    let mut err = T::zero();
    let mut binom = T::one();
    for j in 0..=m {
        if j > 0 {
            binom = binom * T::int((m - j + 1) as i64) / T::int(j as i64);
        }
        let w = p.c.powu((m - j) as u32) * inv_2pi_i.powu(j as u32) * binom;
        value = value + w * d.derivs[j];
        err = err + w.norm() * d.err[j];
    }
    let mut v = LerchValue::new(value, Method::DdeShift, err);
    v.route = format!("dde-lower^{m}[a-circle r={}]", r);
    Ok(v)
}

fn dde_raise<T: Real>(p: &Point3<T>, b: &BranchState, target: T, opts: &EvalOptions<T>) -> Result<LerchValue<T>> {
    p.validate()?;
    check_anchor(p)?;
    if p.s == czero() {
        return Err(LerchError::SZero);
    }
    let r = circle_radius(c_clearance(p.c), &opts.cauchy)?;
    let inner_target = target * r * p.s.norm() / T::lit(8.0);
    let f = |gamma: C<T>| evaluate_on_cover_with(&Point3::new(p.s, p.a, gamma), b, inner_target, opts);
    let d = cauchy_derivatives(f, p.c, r, opts.cauchy.nodes, 1, false)?;
    let value = -d.derivs[1] / p.s;
    let mut v = LerchValue::new(value, Method::DdeShift, d.err[1] / p.s.norm());
    v.route = format!("dde-raise[c-circle r={}]", r);
    Ok(v)
}

/// Cover value with default settings.
pub fn evaluate_on_cover<T: Real>(p: &Point3<T>, b: &BranchState, target_abs_err: T) -> Result<LerchValue<T>> {
    evaluate_on_cover_with(p, b, target_abs_err, &EvalOptions::default())
}

/// Principal value plus `Σ_S M_{S^{k(S)}}` at `p`.
pub fn evaluate_on_cover_with<T: Real>(
    p: &Point3<T>,
    b: &BranchState,
    target_abs_err: T,
    opts: &EvalOptions<T>,
) -> Result<LerchValue<T>> {
    let mut v = evaluate_with(p, target_abs_err, opts)?;
    if b.is_zero() {
        return Ok(v);
    }
    let m = monodromy_of_state(b, p.s, p.a, p.c)?;
    v.value = v.value + m;
    v.abs_err = v.abs_err + T::lit(8.0) * T::epsilon() * m.norm() * T::int(b.support_len() as i64);
    v.route = format!("{}+monodromy[{}]", v.route, b);
    Ok(v)
}

/// `|Z(s-1) - ((1/2πi)∂_a + c)Z(s)|` (lower) or `|Z(s+1) + (1/s)∂_c Z(s)|`
/// (raise) on the sheet `b`, with `Z(s∓1)` evaluated directly.
pub fn dde_residual<T: Real>(p: &Point3<T>, b: &BranchState, direction: Direction) -> Result<T> {
    dde_residual_with(p, b, direction, T::lit(1e-13), &EvalOptions::default())
}

pub fn dde_residual_with<T: Real>(
    p: &Point3<T>,
    b: &BranchState,
    direction: Direction,
    target_abs_err: T,
    opts: &EvalOptions<T>,
) -> Result<T> {
    let (shifted, direct_s) = match direction {
        Direction::Lower => (dde_lower_steps(p, b, 1, target_abs_err, opts)?, p.s - cone::<T>()),
        Direction::Raise => (dde_raise(p, b, target_abs_err, opts)?, p.s + cone::<T>()),
    };
    let direct = evaluate_on_cover_with(&Point3::new(direct_s, p.a, p.c), b, target_abs_err, opts)?;
    Ok((shifted.value - direct.value).norm())
}

/// `|𝔇 Z + s Z|` with `𝔇 = ((1/2πi)∂_a + c)∂_c`, derivatives from a product of
/// Cauchy circles.
pub fn pde_residual<T: Real>(p: &Point3<T>, b: &BranchState) -> Result<T> {
    pde_residual_with(p, b, T::lit(1e-13), &EvalOptions::default())
}

pub fn pde_residual_with<T: Real>(p: &Point3<T>, b: &BranchState, target_abs_err: T, opts: &EvalOptions<T>) -> Result<T> {
    p.validate()?;
    check_anchor(p)?;
    let ra = circle_radius(a_clearance(p.a), &opts.cauchy)?;
    let rc = circle_radius(c_clearance(p.c), &opts.cauchy)?;
    let m = opts.cauchy.nodes.max(8);
    let mt = T::int(m as i64);
    let mut f0 = czero::<T>();
    let mut fc = czero::<T>();
    let mut fac = czero::<T>();
    for j in 0..m {
        let xj = T::lit(2.0) * T::int(j as i64) / mt;
        let ea = cis_pi(xj);
        for k in 0..m {
            let xk = T::lit(2.0) * T::int(k as i64) / mt;
            let ec = cis_pi(xk);
            let q = Point3::new(p.s, p.a + ea * ra, p.c + ec * rc);
            let v = evaluate_on_cover_with(&q, b, target_abs_err, opts)?.value;
            f0 = f0 + v;
            fc = fc + v * ec.conj();
            fac = fac + v * ea.conj() * ec.conj();
        }
    }
    let norm = mt * mt;
    let f0 = f0 / norm;
    let d_c = fc / (norm * rc);
    let d_ac = fac / (norm * ra * rc);
    let inv_2pi_i = cplx(T::zero(), -T::one() / T::TAU());
    let residual = inv_2pi_i * d_ac + p.c * d_c + p.s * f0;
    Ok(residual.norm())
}

/// Values along `c = n + δ` for the removable point `c = n ≥ 1`, the value at
/// `c = n`, and the Richardson extrapolant from the two smallest `δ`.
#[derive(Debug, Clone)]
pub struct RemovabilityCheck<T: Real> {
    pub at_point: C<T>,
    pub deltas: Vec<T>,
    pub along: Vec<C<T>>,
    pub extrapolated: C<T>,
    /// `|value(n+δ) - value(n)|` per `δ`.
    pub gaps: Vec<T>,
}

/// Approaches `c = n` (`n ≥ 1`) along `c = n + δ`.
pub fn removability_check<T: Real>(
    s: C<T>,
    a: C<T>,
    n: i64,
    b: &BranchState,
    deltas: &[T],
    target_abs_err: T,
) -> Result<RemovabilityCheck<T>> {
    if n < 1 {
        return Err(LerchError::InvalidPoint("removable points are c = n >= 1".into()));
    }
    let cn = real(T::int(n));
    let at_point = evaluate_on_cover(&Point3::new(s, a, cn), b, target_abs_err)?.value;
    let mut along = Vec::with_capacity(deltas.len());
    for &d in deltas {
        along.push(evaluate_on_cover(&Point3::new(s, a, cn + d), b, target_abs_err)?.value);
    }
    let k = along.len();
    let extrapolated = if k >= 2 {
        let (d1, d2) = (deltas[k - 2], deltas[k - 1]);
        (along[k - 1] * d1 - along[k - 2] * d2) / (d1 - d2)
    } else {
        along.last().copied().unwrap_or(at_point)
    };
    let gaps = along.iter().map(|v| (*v - at_point).norm()).collect();
    Ok(RemovabilityCheck { at_point, deltas: deltas.to_vec(), along, extrapolated, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{integral_eval, series_eval};
    use crate::monodromy::monodromy_generator;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn pt(s: C<f64>, a: C<f64>, cc: C<f64>) -> Point3<f64> {
        Point3::new(s, a, cc)
    }

    #[test]
    fn branch_state_parsing() {
        let b: BranchState = "kx[0]=1, ky[3]=7".parse().unwrap();
        assert_eq!(b.kx(0), 1);
        assert_eq!(b.ky(3), 7);
        assert_eq!(b.to_string(), "kx[0]=1 ky[3]=7");
        let b2: BranchState = b.to_string().parse().unwrap();
        assert_eq!(b, b2);
        let w: BranchState = "Y3^7".parse().unwrap();
        assert_eq!(w.ky(3), 7);
        assert!("kz[1]=2".parse::<BranchState>().is_err());
        let mut z = BranchState::zero();
        z.add(Generator::x(2), 3);
        z.add(Generator::x(2), -3);
        assert!(z.is_zero());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&pt(c(2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0))).unwrap(), RegionTag::USeries);
        assert_eq!(classify(&Point3::real(-3.0, 0.5, 0.5)).unwrap(), RegionTag::OmegaTilde);
        assert!(matches!(classify(&Point3::real(0.5, 0.5, 0.0)), Err(LerchError::InvalidPoint(_))));
        assert_eq!(classify(&Point3::real(0.5, 1.5, 2.0)).unwrap(), RegionTag::UPlusIntegral);
        assert_eq!(classify(&Point3::real(-1.0, 1.5, 2.5)).unwrap(), RegionTag::TransformNeeded);
        assert_eq!(classify(&Point3::real(-1.0, 0.5, 2.0)).unwrap(), RegionTag::DdeNeeded);
    }

    #[test]
    fn transform_oracle_values() {
        let v = transform_eval(&Point3::real(-0.5, 0.4, 0.6), 1e-12).unwrap();
        assert!((v.value - c(0.225_672_421_688_666_83, 0.139_086_607_790_569_07)).norm() < 1e-11);
        assert_eq!(v.method, Method::Transform);
        let v = transform_eval(&Point3::real(0.5, 0.5, 0.5), 1e-12).unwrap();
        assert!((v.value - c(0.944_258_314_238_200_08, 0.0)).norm() < 1e-11);
        let v = transform_eval(&pt(c(-1.5, 2.0), c(0.25, 0.5), c(0.75, 0.0)), 1e-12).unwrap();
        assert!((v.value - c(0.638_362_715_125_005_4, 0.405_256_440_252_344_3)).norm() < 1e-10);
        assert!(matches!(
            transform_eval(&Point3::real(-0.5, 1.2, 0.5), 1e-10),
            Err(LerchError::InvalidRegion(_))
        ));
    }

    #[test]
    fn reduced_points_match_oracle() {
        let v = evaluate(&Point3::real(-1.0, 0.5, 2.0), 1e-12).unwrap();
        assert!((v.value - c(0.75, 0.0)).norm() < 1e-10, "{}", v.value);
        assert_eq!(v.method, Method::DdeShift);
        let v = evaluate(&Point3::real(2.0, 0.5, 2.0), 1e-12).unwrap();
        assert!((v.value - c(0.177_532_966_575_886_78, 0.0)).norm() < 1e-12);
        let v = evaluate(&pt(c(-1.5, 0.5), c(0.3, 0.0), c(2.0, 0.0)), 1e-12).unwrap();
        assert!((v.value - c(0.888_166_747_788_343_6, 1.021_662_338_553_507_3)).norm() < 1e-10);
        // periodic in a on the principal sheet
        let w = evaluate(&pt(c(-1.5, 0.5), c(-2.7, 0.0), c(2.0, 0.0)), 1e-12).unwrap();
        assert!((v.value - w.value).norm() < 1e-10);
    }

    #[test]
    fn anchoring_rejects_cut_points() {
        let r = evaluate(&pt(c(0.5, 0.0), c(1.0, -0.3), c(0.5, 0.0)), 1e-10);
        assert!(matches!(r, Err(LerchError::CutViolation(_))));
        let r = evaluate(&pt(c(0.5, 0.0), c(0.5, 0.0), c(-1.0, -0.3)), 1e-10);
        assert!(matches!(r, Err(LerchError::CutViolation(_))));
    }

    #[test]
    fn lower_from_series_point() {
        let p = pt(c(2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0));
        let v = dde_shift(&p, Direction::Lower, 1e-11).unwrap();
        let d = series_eval(&pt(c(1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)), 1e-13).unwrap();
        assert!((v.value - d.value).norm() < 1e-9);
        assert!((v.value - c(1.000_934_885_443_845_2, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn raise_at_zero_rejected_and_c_independent() {
        let p = pt(c(0.0, 0.0), c(0.3, 0.2), c(0.7, 0.0));
        assert_eq!(dde_shift(&p, Direction::Raise, 1e-10), Err(LerchError::SZero));
        let f = |g: C<f64>| evaluate(&pt(c(0.0, 0.0), c(0.3, 0.2), g), 1e-13);
        let d = cauchy_derivatives(f, c(0.7, 0.0), 0.05, 16, 1, false).unwrap();
        assert!(d.derivs[1].norm() < 1e-10);
        let q = exp_2pi_i(c(0.3, 0.2));
        assert!((d.derivs[0] - 1.0 / (1.0 - q)).norm() < 1e-12);
    }

    #[test]
    fn chained_lower_matches_transform() {
        let opts = EvalOptions { cauchy: CauchyOptions { radius: 0.05, nodes: 24, clip: true }, ..Default::default() };
        let p = pt(c(2.5, 0.0), c(0.3, 0.2), c(0.6, 0.0));
        let v = dde_lower_steps(&p, &BranchState::zero(), 2, 1e-10, &opts).unwrap();
        let t = transform_eval(&pt(c(0.5, 0.0), c(0.3, 0.2), c(0.6, 0.0)), 1e-12).unwrap();
        assert!((v.value - t.value).norm() < 1e-7);
        let p = Point3::real(1.5, 0.4, 0.6);
        let v = dde_lower_steps(&p, &BranchState::zero(), 2, 1e-10, &opts).unwrap();
        let t = transform_eval(&Point3::real(-0.5, 0.4, 0.6), 1e-12).unwrap();
        assert!((v.value - t.value).norm() < 1e-9);
    }

    #[test]
    fn cover_examples() {
        let p = Point3::real(0.5, 0.5, 0.5);
        let z = evaluate(&p, 1e-12).unwrap().value;
        let v = evaluate_on_cover(&p, &BranchState::zero(), 1e-12).unwrap();
        assert_eq!(v.value, z);
        let mut b = BranchState::zero();
        b.set(Generator::x(0), 1);
        let v = evaluate_on_cover(&p, &b, 1e-12).unwrap();
        let m = monodromy_generator(Generator::x(0), p.s, p.a, p.c).unwrap();
        assert!((v.value - (z + m)).norm() < 1e-14);
        let mut b = BranchState::zero();
        b.set(Generator::y(3), 7);
        assert_eq!(evaluate_on_cover(&p, &b, 1e-12).unwrap().value, z);
    }

    #[test]
    fn monodromy_additivity() {
        let p = pt(c(0.3, 0.2), c(0.4, -0.1), c(0.6, 0.1));
        let b1: BranchState = "X0 X0 Y-1^-1".parse().unwrap();
        let b2: BranchState = "X1^3 Y0 X0^-1".parse().unwrap();
        let mut b12 = b1.clone();
        b12.add_state(&b2);
        let f = |b: &BranchState| evaluate_on_cover(&p, b, 1e-12).unwrap().value;
        let z = f(&BranchState::zero());
        let m = |b: &BranchState| monodromy_of_state(b, p.s, p.a, p.c).unwrap();
        let lhs = f(&b12) - z;
        assert!((lhs - m(&b12)).norm() < 1e-12);
        let mut only_x1: BranchState = BranchState::zero();
        only_x1.set(Generator::x(1), 3);
        let mut b13 = b1.clone();
        b13.add_state(&only_x1);
        let d = f(&b13) - f(&b1) - f(&only_x1) + z;
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn pde_examples() {
        let p = Point3::real(0.5, 0.5, 0.5);
        assert!(pde_residual(&p, &BranchState::zero()).unwrap() < 1e-8);
        let mut b = BranchState::zero();
        b.set(Generator::x(0), 1);
        assert!(pde_residual(&p, &b).unwrap() < 1e-8);
        let p0 = pt(c(0.0, 0.0), c(0.3, 0.2), c(0.6, 0.1));
        assert!(pde_residual(&p0, &BranchState::zero()).unwrap() < 1e-8);
    }

    #[test]
    fn dde_residuals_on_cover() {
        let p = pt(c(0.7, 0.3), c(0.35, 0.1), c(0.55, -0.05));
        let b: BranchState = "X0 Y0^2 X1^-1".parse().unwrap();
        for dir in [Direction::Lower, Direction::Raise] {
            let r = dde_residual(&p, &b, dir).unwrap();
            assert!(r < 1e-8, "{dir:?}: {r}");
        }
    }

    #[test]
    fn removable_point_c_two() {
        let r = removability_check(c(-0.5, 0.0), c(0.3, 0.0), 2, &BranchState::zero(), &[1e-3, 1e-4, 1e-5], 1e-12)
            .unwrap();
        assert!((r.extrapolated - r.at_point).norm() < 1e-8);
        assert!(r.gaps[1] < r.gaps[0] && r.gaps[2] < r.gaps[1]);
    }

    #[test]
    fn circle_radius_clipping() {
        let strict = CauchyOptions { radius: 0.1, nodes: 16, clip: false };
        assert!(matches!(
            circle_radius(0.2, &strict),
            Err(LerchError::DerivativeCircleLeavesDomain(_))
        ));
        assert_eq!(circle_radius(0.2, &CauchyOptions { radius: 0.1, nodes: 16, clip: true }).unwrap(), 0.05);
        assert!((a_clearance(c(0.3, -1.0)) - 0.3).abs() < 1e-15);
        assert!((c_clearance(c(-0.5, -1.0)) - 0.5).abs() < 1e-15);
        assert!((c_clearance(c(3.5, 0.0)) - 3.5).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn integral_agrees_with_transform(sr in 0.1f64..0.9, si in -2.0f64..2.0, ar in 0.1f64..0.9,
                                          ai in -0.3f64..0.0, cr in 0.1f64..0.9, ci in -0.3f64..0.3) {
            let p = pt(c(sr, si), c(ar, ai), c(cr, ci));
            let x = integral_eval(&p, ContourSpec::Straight, 1e-12).unwrap();
            let y = transform_eval(&p, 1e-12).unwrap();
            prop_assert!((x.value - y.value).norm() <= x.abs_err + y.abs_err + 1e-12);
        }

        #[test]
        fn shift_identity_on_principal_sheet(sr in -2.0f64..2.0, si in -1.0f64..1.0, ar in -2.0f64..2.0,
                                             ai in -0.3f64..0.3, cr in -2.5f64..2.5, ci in 0.05f64..0.5) {
            let s = c(sr, si);
            let a = c(ar, ai);
            let cc = c(cr, ci);
            prop_assume!(dist_to_integer(ar) > 0.05);
            let z0 = evaluate(&pt(s, a, cc), 1e-12).unwrap();
            let z1 = evaluate(&pt(s, a, cc + 1.0), 1e-12).unwrap();
            let rhs = principal_pow(cc, -s).unwrap() + exp_2pi_i(a) * z1.value;
            let tol = 1e-9 * (1.0 + z0.value.norm() + z1.value.norm());
            prop_assert!((z0.value - rhs).norm() < tol);
        }
    }

    #[test]
    fn pi_check() {
        let v = evaluate(&Point3::real(2.0, 0.5, 1.0), 1e-13).unwrap();
        assert!((v.value.re - PI * PI / 12.0).abs() < 1e-13);
    }
}
