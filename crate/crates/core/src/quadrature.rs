//! Adaptive Gauss–Kronrod (10/21 point) integration of complex-valued
//! functions of a real parameter.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::real::{czero, Real, C};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T: Real> {
    pub value: C<T>,
    pub abs_err: T,
    pub panels: usize,
    pub converged: bool,
}

struct Panel<T: Real> {
    a: T,
    b: T,
    value: C<T>,
    err: T,
    res_abs: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<T: Real, F: Fn(T) -> C<T>>(f: &F, a: T, b: T) -> Panel<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let h = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = czero::<T>();
    let mut res_abs = fc.norm() * T::lit(WGK[10]);
    let mut fv1 = [czero::<T>(); 10];
    let mut fv2 = [czero::<T>(); 10];
    for j in 0..10 {
        let dx = h * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + (f1 + f2) * w;
        res_abs = res_abs + (f1.norm() + f2.norm()) * w;
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }
    let mean = res_k * half;
    let mut res_asc = (fc - mean).norm() * T::lit(WGK[10]);
    for j in 0..10 {
        res_asc = res_asc + ((fv1[j] - mean).norm() + (fv2[j] - mean).norm()) * T::lit(WGK[j]);
    }
    let habs = h.abs();
    let value = res_k * h;
    let res_abs = res_abs * habs;
    let res_asc = res_asc * habs;
    let mut err = ((res_k - res_g) * h).norm();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = res_asc * if scale < T::one() { scale } else { T::one() };
    }
    let eps = T::epsilon();
    if res_abs > T::min_positive_value() / (T::lit(50.0) * eps) {
        let floor = T::lit(50.0) * eps * res_abs;
        if err < floor {
            err = floor;
        }
    }
    Panel { a, b, value, err, res_abs }
}

/// Integrates `f` over `[a, b]` split at `breaks`, until the summed error
/// estimate is at most `max(abs_tol, rel_tol * |I|)` or `max_panels` is hit.
///
/// The tolerance never drops below the roundoff floor `100 eps ∫|f|`.
pub fn integrate<T: Real, F: Fn(T) -> C<T>>(
    f: F,
    a: T,
    b: T,
    breaks: &[T],
    abs_tol: T,
    rel_tol: T,
    max_panels: usize,
) -> QuadResult<T> {
    let mut pts: Vec<T> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    pts.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = czero::<T>();
    let mut err = T::zero();
    let mut mass = T::zero();
    for w in pts.windows(2) {
        let p = gk21(&f, w[0], w[1]);
        total = total + p.value;
        err = err + p.err;
        mass = mass + p.res_abs;
        heap.push(p);
    }
    let floor = |m: T| T::lit(100.0) * T::epsilon() * m;
    let mut panels = heap.len();
    loop {
        let tol = abs_tol.max(rel_tol * total.norm()).max(floor(mass));
        if err <= tol {
            return QuadResult { value: total, abs_err: err, panels, converged: true };
        }
        if panels >= max_panels {
            break;
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total = total - worst.value + left.value + right.value;
        err = err - worst.err + left.err + right.err;
        mass = mass - worst.res_abs + left.res_abs + right.res_abs;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }
    // resum to shed accumulated cancellation in the running totals
    let mut total = czero::<T>();
    let mut err = T::zero();
    let mut mass = T::zero();
    for p in heap.iter() {
        total = total + p.value;
        err = err + p.err;
        mass = mass + p.res_abs;
    }
    let tol = abs_tol.max(rel_tol * total.norm()).max(floor(mass));
    QuadResult { value: total, abs_err: err, panels, converged: err <= tol }
}
