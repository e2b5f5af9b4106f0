//! Direct evaluation of ζ(s,a,c) = Σ_{n≥0} e^{2πina}(n+c)^{-s} on its native
//! regions: the Dirichlet series with an asymptotic tail, and the Mellin
//! integral (1/Γ(s))∫ t^{s-1}e^{-ct}/(1 - e^{2πia}e^{-t}) dt over a straight
//! or detoured contour.

use std::fmt;

use crate::branchkit::{principal_log, principal_pow, reciprocal_gamma};
use crate::error::{LerchError, Result};
use crate::quadrature::integrate;
use crate::real::{cone, cplx, czero, dist_to_integer, exp_2pi_i, is_integer, is_nonpositive_integer, real, Real, C};

/// A point `(s, a, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3<T: Real> {
    pub s: C<T>,
    pub a: C<T>,
    pub c: C<T>,
}

impl<T: Real> Point3<T> {
    pub fn new(s: C<T>, a: C<T>, c: C<T>) -> Self {
        Self { s, a, c }
    }

    /// Real-coordinate shorthand.
    pub fn real(s: T, a: T, c: T) -> Self {
        Self::new(real(s), real(a), real(c))
    }

    /// Rejects the punctures `a ∈ ℤ` and `c ∈ ℤ≤0`; `c ∈ ℤ≥1` is allowed.
    pub fn validate(&self) -> Result<()> {
        let finite = |z: C<T>| z.re.is_finite() && z.im.is_finite();
        if !(finite(self.s) && finite(self.a) && finite(self.c)) {
            return Err(LerchError::InvalidPoint("non-finite coordinate".into()));
        }
        if is_integer(self.a) {
            return Err(LerchError::InvalidPoint("a is an integer puncture".into()));
        }
        if is_nonpositive_integer(self.c) {
            return Err(LerchError::InvalidPoint("c is a nonpositive integer puncture".into()));
        }
        Ok(())
    }

    pub fn in_u(&self) -> bool {
        self.a.im > T::zero() && self.c.re > T::zero()
    }

    pub fn in_u_plus(&self) -> bool {
        self.s.re > T::zero() && self.in_u()
    }

    pub fn in_omega_tilde(&self) -> bool {
        let unit = |x: T| x > T::zero() && x < T::one();
        unit(self.a.re) && unit(self.c.re)
    }
}

impl<T: Real> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, a={}, c={})", self.s, self.a, self.c)
    }
}

/// Integration path from 0 to ∞ along the positive real axis, optionally
/// detouring above `u` on a clockwise semicircle of radius `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourSpec<T: Real> {
    Straight,
    Detour { u: T, epsilon: T },
}

impl<T: Real> ContourSpec<T> {
    /// Requires `0 < epsilon < min(u, 1/2)`.
    pub fn detour(u: T, epsilon: T) -> Result<Self> {
        if !(u > T::zero() && epsilon > T::zero() && epsilon < u && epsilon < T::lit(0.5)) {
            return Err(LerchError::InvalidRegion(format!(
                "detour needs 0 < epsilon < min(u, 1/2), got u={u}, epsilon={epsilon}"
            )));
        }
        Ok(ContourSpec::Detour { u, epsilon })
    }
}

/// Evaluation strategy that produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Integral,
    Transform,
    DdeShift,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Integral => "integral",
            Method::Transform => "transform",
            Method::DdeShift => "dde",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value with the method that produced it and its error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct LerchValue<T: Real> {
    pub value: C<T>,
    pub method: Method,
    pub abs_err: T,
    /// Full evaluation path, e.g. `shift>transform[integral,series]`.
    pub route: String,
}

impl<T: Real> LerchValue<T> {
    pub fn new(value: C<T>, method: Method, abs_err: T) -> Self {
        Self { value, method, abs_err, route: method.as_str().to_string() }
    }
}

/// Tail acceleration settings for [`series_eval_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Highest retained term of the asymptotic tail expansion.
    pub order: usize,
    /// Cap on explicitly summed terms.
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { order: 8, max_terms: 2_000_000 }
    }
}

/// Settings for [`integral_eval_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T: Real> {
    /// Minimum t-plane distance between the contour and any integrand pole.
    pub pole_clearance: T,
    pub max_panels: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self { pole_clearance: T::lit(1e-3), max_panels: 20_000 }
    }
}

const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Taylor coefficients `b_0..=b_n` of `1/(1 - q e^{-t})` at `t = 0`, `q ≠ 1`.
pub(crate) fn kernel_coeffs<T: Real>(q: C<T>, n: usize) -> Vec<C<T>> {
    let one_minus_q = cone::<T>() - q;
    let mut inv_fact = vec![T::one(); n + 1];
    for j in 1..=n {
        inv_fact[j] = inv_fact[j - 1] / T::int(j as i64);
    }
    let mut b = Vec::with_capacity(n + 1);
    b.push(cone::<T>() / one_minus_q);
    for k in 1..=n {
        let mut acc = czero::<T>();
        for j in 1..=k {
            let w = if j % 2 == 1 { -inv_fact[j] } else { inv_fact[j] };
            acc = acc + b[k - j] * w;
        }
        b.push(q * acc / one_minus_q);
    }
    b
}

/// Coefficients for `q = 1`: `1/(1 - e^{-t}) = 1/t + Σ b_k t^k`.
fn hurwitz_coeffs<T: Real>(n: usize) -> Vec<C<T>> {
    let mut b = vec![czero::<T>(); n + 1];
    b[0] = real(T::lit(0.5));
    let mut fact = 1.0f64;
    for (k, bk) in b.iter_mut().enumerate().skip(1) {
        fact *= (k + 1) as f64;
        if k % 2 == 1 {
            let j = k.div_ceil(2);
            if j <= BERNOULLI_EVEN.len() {
                *bk = real(T::lit(BERNOULLI_EVEN[j - 1] / fact));
            }
        }
    }
    b
}

/// `2π · min_k |a - k|`: the distance from `t = 0` to the nearest pole of the
/// kernel `1/(1 - e^{2πia} e^{-t})`.
pub(crate) fn kernel_radius<T: Real>(a: C<T>) -> T {
    let dx = dist_to_integer(a.re);
    T::TAU() * (dx * dx + a.im * a.im).sqrt()
}

/// Asymptotic expansion of `Σ_{m≥0} q^m (C+m)^{-s}` in powers of `1/C`.
struct Tail<T: Real> {
    value: C<T>,
    omitted: T,
    lead: T,
    mass: T,
}

fn tail_expansion<T: Real>(s: C<T>, big_c: C<T>, b: &[C<T>], hurwitz: bool) -> Result<Tail<T>> {
    let order = b.len() - 2;
    let ln_c = principal_log(big_c)?;
    let c_pow = (-s * ln_c).exp();
    let inv_c = cone::<T>() / big_c;
    let mut value = czero::<T>();
    let mut mass = T::zero();
    let mut lead = T::zero();
    if hurwitz {
        let t = c_pow * big_c / (s - cone::<T>());
        value = value + t;
        mass = mass + t.norm();
        lead = t.norm();
    }
    let mut poch = cone::<T>();
    let mut cp = c_pow;
    let mut omitted = T::zero();
    for (k, bk) in b.iter().enumerate() {
        let term = *bk * poch * cp;
        if k <= order {
            value = value + term;
            mass = mass + term.norm();
            if k == 0 && !hurwitz {
                lead = term.norm();
            }
        } else {
            omitted = term.norm();
        }
        poch = poch * (s + T::int(k as i64));
        cp = cp * inv_c;
    }
    Ok(Tail { value, omitted, lead, mass })
}

/// Dirichlet series with default tail settings.
pub fn series_eval<T: Real>(p: &Point3<T>, target_abs_err: T) -> Result<LerchValue<T>> {
    series_eval_with(p, target_abs_err, &SeriesOptions::default())
}

/// Partial sum of `N` terms plus an order-`K` asymptotic tail.
///
/// Accepts `Im a > 0, Re c > 0` (any `s`), real non-integer `a` with
/// `Re s > 0`, and integer `a` with `Re s > 1`.
pub fn series_eval_with<T: Real>(p: &Point3<T>, target_abs_err: T, opts: &SeriesOptions) -> Result<LerchValue<T>> {
    let Point3 { s, a, c } = *p;
    if !(c.re > T::zero()) {
        return Err(LerchError::DivergentSeries("series needs Re c > 0".into()));
    }
    if is_nonpositive_integer(c) {
        return Err(LerchError::InvalidPoint("c is a nonpositive integer puncture".into()));
    }
    let hurwitz = is_integer(a);
    if a.im < T::zero() {
        return Err(LerchError::DivergentSeries("series needs Im a >= 0".into()));
    }
    if a.im == T::zero() {
        if hurwitz && !(s.re > T::one()) {
            return Err(LerchError::DivergentSeries("integer a needs Re s > 1".into()));
        }
        if !(s.re > T::zero()) {
            return Err(LerchError::DivergentSeries("real a needs Re s > 0".into()));
        }
    }
    let order = opts.order.clamp(1, 18);
    let q = exp_2pi_i(a);
    let (b, rho) = if hurwitz {
        (hurwitz_coeffs::<T>(order + 1), T::TAU())
    } else {
        (kernel_coeffs(q, order + 1), kernel_radius(a))
    };
    let qn = |n: usize| exp_2pi_i(a * T::int(n as i64));
    let s_abs = s.norm();
    let eps = T::epsilon();

    // smallest N with a well-separated and sufficiently small tail
    let ratio_n = T::lit(2.0) * (T::int(order as i64 + 1) + s_abs) / rho - c.re;
    let mut n = if ratio_n > T::zero() { ratio_n.ceil().to_usize().unwrap_or(usize::MAX) } else { 0 };
    let tail = loop {
        if n > opts.max_terms {
            return Err(LerchError::NonConvergence(format!(
                "series tail above target with {} terms",
                opts.max_terms
            )));
        }
        let big_c = c + T::int(n as i64);
        let t = tail_expansion(s, big_c, &b, hurwitz)?;
        let scale = qn(n).norm();
        let omitted = t.omitted * scale;
        if omitted <= (target_abs_err / T::lit(8.0)).max(T::lit(8.0) * eps * t.lead * scale) {
            break t;
        }
        let next = (T::int(n as i64) * T::lit(1.5)).ceil().to_usize().unwrap_or(usize::MAX);
        n = next.max(n + 4);
    };

    let mut sum = czero::<T>();
    let mut mass = T::zero();
    for k in 0..n {
        let base = c + T::int(k as i64);
        let term = qn(k) * principal_pow(base, -s)?;
        sum = sum + term;
        mass = mass + term.norm();
    }
    let qn_val = qn(n);
    let value = sum + qn_val * tail.value;
    let scale = qn_val.norm();
    let rounding = T::lit(4.0) * eps * (mass + scale * tail.mass) * (T::one() + T::int(n as i64).sqrt());
    let abs_err = T::lit(2.0) * tail.omitted * scale + rounding;
    let mut v = LerchValue::new(value, Method::Series, abs_err);
    v.route = format!("series[n={n}]");
    Ok(v)
}

/// Contour integral with default quadrature settings.
pub fn integral_eval<T: Real>(p: &Point3<T>, contour: ContourSpec<T>, target_abs_err: T) -> Result<LerchValue<T>> {
    integral_eval_with(p, contour, target_abs_err, &QuadOptions::default())
}

/// Distance from `z` to the segment `[x0, x1]` of the real axis.
fn dist_to_real_segment<T: Real>(z: C<T>, x0: T, x1: T) -> T {
    let x = z.re.max(x0).min(x1);
    cplx(z.re - x, z.im).norm()
}

/// Distance from `z` to the upper semicircle of radius `eps` about `u`.
fn dist_to_arc<T: Real>(z: C<T>, u: T, eps: T) -> T {
    let w = z - u;
    if w.im >= T::zero() {
        (w.norm() - eps).abs()
    } else {
        let l = (w - eps).norm();
        let r = (w + eps).norm();
        l.min(r)
    }
}

/// Mellin integral over `contour`; needs `Re s > 0` and `Re c > 0`.
pub fn integral_eval_with<T: Real>(
    p: &Point3<T>,
    contour: ContourSpec<T>,
    target_abs_err: T,
    opts: &QuadOptions<T>,
) -> Result<LerchValue<T>> {
    let Point3 { s, a, c } = *p;
    if !(s.re > T::zero()) {
        return Err(LerchError::InvalidRegion("integral needs Re s > 0".into()));
    }
    if !(c.re > T::zero()) {
        return Err(LerchError::InvalidRegion("integral needs Re c > 0".into()));
    }
    if is_integer(a) {
        return Err(LerchError::InvalidPoint("a is an integer puncture".into()));
    }
    let zero = T::zero();
    let one = T::one();
    let two = T::lit(2.0);
    let q = exp_2pi_i(a);
    let rho = kernel_radius(a);
    let sm1 = s - cone::<T>();

    // poles t_k = 2πi(a - k) near the contour
    let k0 = a.re.round();
    let poles: Vec<C<T>> = (-2..=2)
        .map(|d| {
            let k = k0 + T::int(d);
            cplx(-T::TAU() * a.im, T::TAU() * (a.re - k))
        })
        .collect();

    let (split_lo, detour) = match contour {
        ContourSpec::Straight => (None, None),
        ContourSpec::Detour { u, epsilon } => {
            ContourSpec::detour(u, epsilon)?;
            (Some(u - epsilon), Some((u, epsilon)))
        }
    };

    let mut t0 = (rho / two).min(one).min(one / c.norm().max(one));
    if let Some(lo) = split_lo {
        t0 = t0.min(lo / two);
    }

    // tail cut-off from |∫_T^∞ t^{σ-1} e^{-ct} / (1 - q e^{-t})| ≤ bound(T)
    let gamma_c = c.re;
    let excess = (s.re - one).max(zero);
    let qabs = q.norm();
    let rg = reciprocal_gamma(s);
    let rg_abs = rg.norm().max(T::min_positive_value());
    let int_tol = target_abs_err / rg_abs;
    let tail_bound = |t: T| -> Option<T> {
        let damp = qabs * (-t).exp();
        if damp >= T::lit(0.5) || gamma_c * t <= two * excess {
            return None;
        }
        let j = t.powf(s.re - one) * (-gamma_c * t).exp() / (gamma_c - excess / t);
        Some(j / (one - damp))
    };
    let mut big_t = two.max(two * t0).max(qabs.ln() + two);
    if let Some((u, eps)) = detour {
        big_t = big_t.max(two * (u + eps));
    }
    loop {
        if let Some(bd) = tail_bound(big_t) {
            if bd <= int_tol / T::lit(16.0) {
                break;
            }
        }
        big_t = big_t * T::lit(1.5);
        if big_t > T::lit(1e7) {
            return Err(LerchError::NonConvergence("integral tail does not decay fast enough".into()));
        }
    }
    let tail_err = tail_bound(big_t).unwrap_or(zero);

    // clearance between the contour and every pole
    for &tp in &poles {
        let d = match detour {
            None => dist_to_real_segment(tp, zero, T::infinity()),
            Some((u, eps)) => dist_to_real_segment(tp, zero, u - eps)
                .min(dist_to_real_segment(tp, u + eps, T::infinity()))
                .min(dist_to_arc(tp, u, eps)),
        };
        if d < opts.pole_clearance {
            return Err(LerchError::ContourHitsPole(format!("{tp}")));
        }
    }

    // [0, t0]: ∫ t^{s-1} Σ g_k t^k dt termwise
    let kmax = 160usize;
    let b = kernel_coeffs(q, kmax);
    let mut ek = vec![cone::<T>(); kmax + 1];
    for k in 1..=kmax {
        ek[k] = ek[k - 1] * (-c) / T::int(k as i64);
    }
    let ln_t0 = t0.ln();
    let t0_s = (s * ln_t0).exp();
    let mut head = czero::<T>();
    let mut head_mass = T::zero();
    let mut head_err = T::infinity();
    let mut t0k = T::one();
    let mut small_run = 0;
    for k in 0..=kmax {
        let mut g = czero::<T>();
        for j in 0..=k {
            g = g + ek[j] * b[k - j];
        }
        let term = g * t0_s * t0k / (s + T::int(k as i64));
        head = head + term;
        head_mass = head_mass + term.norm();
        let tn = term.norm();
        if tn <= T::epsilon() * head.norm() {
            small_run += 1;
            if small_run >= 3 {
                head_err = T::lit(2.0) * tn;
                break;
            }
        } else {
            small_run = 0;
        }
        t0k = t0k * t0;
    }
    if !head_err.is_finite() {
        return Err(LerchError::NonConvergence("small-t expansion did not converge".into()));
    }
    let head_err = head_err + T::lit(8.0) * T::epsilon() * head_mass;

    let kernel = move |t: C<T>| -> C<T> {
        let den = cone::<T>() - q * (-t).exp();
        (-c * t).exp() / den
    };
    let f_real = move |t: T| -> C<T> {
        let pw = (sm1 * t.ln()).exp();
        pw * kernel(real(t))
    };

    // breakpoints: projections of poles near the axis and a geometric ladder
    let mut breaks: Vec<T> = poles.iter().filter(|tp| tp.re > zero).map(|tp| tp.re).collect();
    let mut x = one;
    while x < big_t {
        breaks.push(x);
        x = x * two;
    }
    let budget = (int_tol - tail_err - head_err).max(int_tol / T::lit(4.0));
    let rel = T::lit(2.0) * T::epsilon();

    let mut total = head;
    let mut err = head_err + tail_err;
    let mut panels = 0usize;
    let mut converged = true;
    match detour {
        None => {
            let r = integrate(f_real, t0, big_t, &breaks, budget, rel, opts.max_panels);
            total = total + r.value;
            err = err + r.abs_err;
            panels += r.panels;
            converged &= r.converged;
        }
        Some((u, eps)) => {
            let third = budget / T::lit(3.0);
            let r1 = integrate(f_real, t0, u - eps, &breaks, third, rel, opts.max_panels);
            // t(φ) = u + ε e^{i(π-φ)}, φ ∈ [0, π]
            let f_arc = move |phi: T| -> C<T> {
                let e = cplx((T::PI() - phi).cos(), (T::PI() - phi).sin());
                let t = e * eps + u;
                let dt = cplx(zero, -eps) * e;
                let lt = cplx(t.norm().ln(), t.im.atan2(t.re));
                (sm1 * lt).exp() * kernel(t) * dt
            };
            let r2 = integrate(f_arc, zero, T::PI(), &[T::FRAC_PI_2()], third, rel, opts.max_panels);
            let r3 = integrate(f_real, u + eps, big_t, &breaks, third, rel, opts.max_panels);
            for r in [r1, r2, r3] {
                total = total + r.value;
                err = err + r.abs_err;
                panels += r.panels;
                converged &= r.converged;
            }
        }
    }
    if !converged {
        return Err(LerchError::NonConvergence(format!(
            "quadrature error {} above tolerance after {panels} panels",
            err.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let value = total * rg;
    let abs_err = err * rg_abs + T::lit(4.0) * T::epsilon() * value.norm();
    let mut v = LerchValue::new(value, Method::Integral, abs_err);
    v.route = match contour {
        ContourSpec::Straight => format!("integral[panels={panels}]"),
        ContourSpec::Detour { .. } => format!("integral-detour[panels={panels}]"),
    };
    Ok(v)
}

/// True when the kernel pole `2πi(a-n)` lies inside the upper half-disk
/// `|t - u| < ε, Im t > 0` swept by the detour.
pub fn pole_in_detour<T: Real>(a: C<T>, n: i64, u: T, epsilon: T) -> bool {
    let tp = cplx(-T::TAU() * a.im, T::TAU() * (a.re - T::int(n)));
    let w = tp - u;
    w.im > T::zero() && w.norm() < epsilon
}

/// Difference between the detoured and straight contour integrals at a point
/// whose pole `2πi(a-n)` is enclosed by the detour.
pub fn residue_discrepancy<T: Real>(s: C<T>, a: C<T>, c: C<T>, n: i64, u: T, epsilon: T) -> Result<C<T>> {
    residue_discrepancy_with(s, a, c, n, u, epsilon, T::lit(1e-12)).map(|(d, _)| d)
}

/// [`residue_discrepancy`] with an explicit target; also returns the summed
/// quadrature error estimate.
pub fn residue_discrepancy_with<T: Real>(
    s: C<T>,
    a: C<T>,
    c: C<T>,
    n: i64,
    u: T,
    epsilon: T,
    target_abs_err: T,
) -> Result<(C<T>, T)> {
    let contour = ContourSpec::detour(u, epsilon)?;
    if !pole_in_detour(a, n, u, epsilon) {
        return Err(LerchError::InvalidRegion(format!(
            "pole 2πi(a-{n}) not inside the detour half-disk of radius {epsilon} about {u}"
        )));
    }
    let p = Point3::new(s, a, c);
    let half = target_abs_err / T::lit(2.0);
    let bent = integral_eval(&p, contour, half)?;
    let straight = integral_eval(&p, ContourSpec::Straight, half)?;
    Ok((bent.value - straight.value, bent.abs_err + straight.abs_err))
}

/// `-(2πi)^s/Γ(s) · (a-n)^{s-1} · e^{-2πic(a-n)}`, principal branches.
pub fn residue_closed_form<T: Real>(s: C<T>, a: C<T>, c: C<T>, n: i64) -> Result<C<T>> {
    let two_pi_i = cplx(T::zero(), T::TAU());
    let d = a - T::int(n);
    let pw = principal_pow(two_pi_i, s)? * principal_pow(d, s - cone::<T>())?;
    Ok(-pw * reciprocal_gamma(s) * exp_2pi_i(-c * d))
}

/// Symmetrization sign in the two-sided series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Plus,
    Minus,
}

impl SeriesKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesKind::Plus => "plus",
            SeriesKind::Minus => "minus",
        }
    }

    /// `0` for plus, `1` for minus.
    pub fn parity(&self) -> i64 {
        match self {
            SeriesKind::Plus => 0,
            SeriesKind::Minus => 1,
        }
    }
}

/// `Σ_{n∈ℤ} e^{2πina} |n+c|^{-s}` (plus) or the same with `sgn(n+c)` (minus),
/// summed symmetrically with an asymptotic tail on each side.
pub fn two_sided_series<T: Real>(kind: SeriesKind, s: C<T>, a: T, c: T) -> Result<C<T>> {
    if !(s.re > T::one()) {
        return Err(LerchError::DivergentSeries("two-sided series needs Re s > 1".into()));
    }
    let unit = |x: T| x > T::zero() && x < T::one();
    if !(unit(a) && unit(c)) {
        return Err(LerchError::InvalidRegion("two-sided series needs 0 < a, c < 1".into()));
    }
    let order = 10usize;
    let q = exp_2pi_i(real(a));
    let qm = exp_2pi_i(real(-a));
    let bq = kernel_coeffs(q, order + 1);
    let bm = kernel_coeffs(qm, order + 1);
    let rho = kernel_radius(real(a));
    let n = (T::lit(2.0) * (T::int(order as i64 + 1) + s.norm()) / rho)
        .ceil()
        .max(T::lit(64.0))
        .to_usize()
        .unwrap_or(64);
    let sign = match kind {
        SeriesKind::Plus => T::one(),
        SeriesKind::Minus => -T::one(),
    };
    let mut acc = czero::<T>();
    for k in 0..n {
        let kk = T::int(k as i64);
        let pos = exp_2pi_i(real(a * kk)) * principal_pow(real(kk + c), -s)?;
        let neg = exp_2pi_i(real(-a * (kk + T::one()))) * principal_pow(real(kk + T::one() - c), -s)?;
        acc = acc + pos + neg * sign;
    }
    let nn = T::int(n as i64);
    let right = tail_expansion(s, real(nn + c), &bq, false)?;
    let left = tail_expansion(s, real(nn + T::one() - c), &bm, false)?;
    acc = acc + exp_2pi_i(real(a * nn)) * right.value;
    acc = acc + exp_2pi_i(real(-a * (nn + T::one()))) * left.value * sign;
    Ok(acc)
}
