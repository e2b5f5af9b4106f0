//! Seeded property suites over random points, words and branch states.
//!
//! Every check reports its worst residual against a fixed threshold. DDE and
//! PDE residuals are divided by `max(1, |Z|)` at the base point; functional
//! equation residuals are already relative.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::continuation::{dde_residual, evaluate_on_cover, pde_residual, BranchState, Direction};
use crate::error::{LerchError, Result};
use crate::evaluator::{residue_closed_form, residue_discrepancy_with, Point3, SeriesKind};
use crate::funceq::{fe_iterated_residual, fe_residual, transform_residual, FeVariant};
use crate::monodromy::{
    fe_monodromy_residual, monodromy_by_letters, monodromy_generator, monodromy_of_word, power_law_residual,
    monodromy_power, character, Generator, Word,
};
use crate::real::C;

type Cx = C<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Funceq,
    Dde,
    Pde,
    Monodromy,
    Residue,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Funceq => "funceq",
            Suite::Dde => "dde",
            Suite::Pde => "pde",
            Suite::Monodromy => "monodromy",
            Suite::Residue => "residue",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = LerchError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "funceq" => Suite::Funceq,
            "dde" => Suite::Dde,
            "pde" => Suite::Pde,
            "monodromy" => Suite::Monodromy,
            "residue" => Suite::Residue,
            "all" => Suite::All,
            _ => return Err(LerchError::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
    /// Samples above the threshold or that returned an error; a zero
    /// threshold makes the check exact.
    pub failures: usize,
    pub first_error: Option<String>,
}

impl CheckResult {
    fn new(name: &str, threshold: f64) -> Self {
        Self { name: name.into(), samples: 0, max_residual: 0.0, threshold, failures: 0, first_error: None }
    }

    /// Records one residual; errors count as failures.
    pub fn record(&mut self, r: Result<f64>) {
        self.samples += 1;
        match r {
            Ok(x) if x.is_finite() => {
                self.max_residual = self.max_residual.max(x);
                if x > self.threshold {
                    self.failures += 1;
                }
            }
            Ok(x) => {
                self.failures += 1;
                self.max_residual = f64::INFINITY;
                self.first_error.get_or_insert(format!("non-finite residual {x}"));
            }
            Err(e) => {
                self.failures += 1;
                self.first_error.get_or_insert(e.to_string());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.samples > 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: samples={} max_residual={:.3e} threshold={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.samples,
            self.max_residual,
            self.threshold
        )?;
        if let Some(e) = &self.first_error {
            write!(f, " first_error={e:?}")?;
        }
        Ok(())
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cx<R: Rng>(rng: &mut R, re: (f64, f64), im: (f64, f64)) -> Cx {
    Cx::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

/// `s` with `|s| ≤ radius` and `|Re s| ≤ 3`, kept 0.05 away from the real
/// integers so that no Γ factor sits on a pole.
pub fn random_s<R: Rng>(rng: &mut R, radius: f64) -> Cx {
    loop {
        let s = cx(rng, (-3.0, 3.0), (-radius, radius));
        let near_pole = (s.re - s.re.round()).abs() < 0.05 && s.im.abs() < 0.05;
        if s.norm() <= radius && !near_pole {
            return s;
        }
    }
}

/// `(a, c)` in the polycylinder with real parts in `[0.05, 0.95]`.
pub fn random_ac<R: Rng>(rng: &mut R) -> (Cx, Cx) {
    (cx(rng, (0.05, 0.95), (-0.3, 0.3)), cx(rng, (0.05, 0.95), (-0.3, 0.3)))
}

/// Abelianization of a random word on `X_n`, `Y_n` with `|n| ≤ span`.
pub fn random_branch<R: Rng>(rng: &mut R, max_len: usize, span: i64) -> BranchState {
    Word::random(rng, max_len, span).abelianize()
}

/// Admissible `(s, a, c, n, u, ε)`: the pole `2πi(a-n)` sits strictly inside
/// the detour half-disk, clear of both contours.
pub fn random_residue_config<R: Rng>(rng: &mut R) -> (Cx, Cx, Cx, i64, f64, f64) {
    let s = cx(rng, (0.3, 3.0), (-2.0, 2.0));
    let c = cx(rng, (0.2, 2.0), (-0.5, 0.5));
    let n = rng.gen_range(-2..=2);
    let u = rng.gen_range(0.6..3.0);
    let eps = rng.gen_range(0.2..0.45);
    let rho = rng.gen_range(0.3..0.7);
    let phi = rng.gen_range(0.2..0.8) * std::f64::consts::PI;
    let t = Cx::new(u, 0.0) + Cx::from_polar(rho * eps, phi);
    let a = Cx::new(n as f64, 0.0) + t / Cx::new(0.0, std::f64::consts::TAU);
    (s, a, c, n, u, eps)
}

const FE_TOL: f64 = 1e-9;
const DDE_TOL: f64 = 1e-8;
const RESIDUE_TOL: f64 = 1e-7;
const ALGEBRA_TOL: f64 = 1e-12;
const RELATION_TOL: f64 = 1e-10;
const TARGET: f64 = 1e-12;

/// Functional equations, iterated forms and the three-term transform.
pub fn funceq_suite(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = rng_from_seed(seed);
    let mut plus = CheckResult::new("funceq.plus", FE_TOL);
    let mut minus = CheckResult::new("funceq.minus", FE_TOL);
    let mut reflect = CheckResult::new("funceq.a_reflect", FE_TOL);
    let mut quarter = CheckResult::new("funceq.quarter_turn", FE_TOL);
    let mut three = CheckResult::new("funceq.transform", FE_TOL);
    for _ in 0..samples {
        let s = random_s(&mut rng, 5.0);
        let (a, c) = random_ac(&mut rng);
        let kind = if rng.gen_bool(0.5) { SeriesKind::Plus } else { SeriesKind::Minus };
        plus.record(fe_residual(SeriesKind::Plus, s, a, c, TARGET));
        minus.record(fe_residual(SeriesKind::Minus, s, a, c, TARGET));
        reflect.record(fe_iterated_residual(kind, FeVariant::AReflect, s, a, c, TARGET));
        quarter.record(fe_iterated_residual(kind, FeVariant::QuarterTurn, s, a, c, TARGET));
        // the transform needs Re s < 1; reflect the sample if necessary
        let st = if s.re < 1.0 { s } else { Cx::new(1.0, 0.0) - s };
        three.record(transform_residual(st, a, c, TARGET));
    }
    vec![plus, minus, reflect, quarter, three]
}

fn cover_scale(p: &Point3<f64>, b: &BranchState) -> Result<f64> {
    Ok(evaluate_on_cover(p, b, TARGET)?.value.norm().max(1.0))
}

fn cover_point<R: Rng>(rng: &mut R) -> (Point3<f64>, BranchState) {
    let s = cx(rng, (-2.0, 2.0), (-1.0, 1.0));
    let (a, c) = random_ac(rng);
    (Point3::new(s, a, c), random_branch(rng, 6, 2))
}

/// Lowering and raising differential-difference equations on the cover.
pub fn dde_suite(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = rng_from_seed(seed);
    let mut lower = CheckResult::new("dde.lower", DDE_TOL);
    let mut raise = CheckResult::new("dde.raise", DDE_TOL);
    for _ in 0..samples {
        let (p, b) = cover_point(&mut rng);
        let scale = cover_scale(&p, &b);
        lower.record(scale.clone().and_then(|k| Ok(dde_residual(&p, &b, Direction::Lower)? / k)));
        raise.record(scale.and_then(|k| Ok(dde_residual(&p, &b, Direction::Raise)? / k)));
    }
    vec![lower, raise]
}

/// The second-order equation `((1/2πi)∂_a + c)∂_c Z = -sZ` on the cover.
pub fn pde_suite(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = rng_from_seed(seed);
    let mut pde = CheckResult::new("pde", DDE_TOL);
    for _ in 0..samples {
        let (p, b) = cover_point(&mut rng);
        pde.record(cover_scale(&p, &b).and_then(|k| Ok(pde_residual(&p, &b)? / k)));
    }
    vec![pde]
}

/// Detour-minus-straight quadrature against the closed-form residue term.
pub fn residue_suite(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = rng_from_seed(seed);
    let mut check = CheckResult::new("residue", RESIDUE_TOL);
    for _ in 0..samples {
        let (s, a, c, n, u, eps) = random_residue_config(&mut rng);
        check.record((|| {
            let (d, _) = residue_discrepancy_with(s, a, c, n, u, eps, 1e-10)?;
            Ok((d - residue_closed_form(s, a, c, n)?).norm())
        })());
    }
    vec![check]
}

/// Commutators, sum law versus letter fold, power laws, exact zeros and the
/// θ-relations.
pub fn monodromy_suite(samples: usize, seed: u64) -> Vec<CheckResult> {
    let mut rng = rng_from_seed(seed);
    let mut comm = CheckResult::new("monodromy.commutator", 0.0);
    let mut fold = CheckResult::new("monodromy.sum_law", ALGEBRA_TOL);
    let mut power = CheckResult::new("monodromy.power_law", ALGEBRA_TOL);
    let mut zeros = CheckResult::new("monodromy.special_zeros", 0.0);
    let mut relations = CheckResult::new("monodromy.theta_relations", RELATION_TOL);
    for _ in 0..samples {
        let s = cx(&mut rng, (-2.0, 3.0), (-1.0, 1.0));
        let (a, c) = random_ac(&mut rng);
        let cw = Word::random_commutator(&mut rng, 8, 3);
        comm.record(monodromy_of_word(&cw, s, a, c).map(|m| m.norm()));

        let w = Word::random(&mut rng, 16, 3);
        fold.record((|| {
            let x = monodromy_of_word(&w, s, a, c)?;
            let y = monodromy_by_letters(&w, s, a, c)?;
            Ok((x - y).norm() / x.norm().max(1.0))
        })());

        let g = if rng.gen_bool(0.5) { Generator::x(rng.gen_range(-3..=3)) } else { Generator::y(rng.gen_range(-3..=3)) };
        let (j, k) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        power.record((|| {
            let r = power_law_residual(g, j, k, s, a, c)?;
            let scale = monodromy_power(g, j + k, s, a, c)?.norm()
                + monodromy_power(g, j, s, a, c)?.norm()
                + monodromy_power(g, k, s, a, c)?.norm() * character(g.axis, s).norm().powi(j as i32);
            Ok(r / scale.max(1.0))
        })());

        let n = -(rng.gen_range(0..=5) as f64);
        zeros.record((|| {
            let mut worst = monodromy_of_word(&w, Cx::new(n, 0.0), a, c)?.norm();
            let gy = Generator::y(rng.gen_range(1..=6));
            worst = worst.max(monodromy_generator(gy, s, a, c)?.norm());
            Ok(worst)
        })());

        let kind = if rng.gen_bool(0.5) { SeriesKind::Plus } else { SeriesKind::Minus };
        let sr = random_s(&mut rng, 4.0);
        let short = Word::random(&mut rng, 6, 2);
        relations.record(fe_monodromy_residual(kind, &short, sr, a, c));
    }
    vec![comm, fold, power, zeros, relations]
}

/// Runs a suite; `All` concatenates every suite with the same seed.
pub fn run_suite(suite: Suite, samples: usize, seed: u64) -> Vec<CheckResult> {
    match suite {
        Suite::Funceq => funceq_suite(samples, seed),
        Suite::Dde => dde_suite(samples, seed),
        Suite::Pde => pde_suite(samples, seed),
        Suite::Monodromy => monodromy_suite(samples, seed),
        Suite::Residue => residue_suite(samples, seed),
        Suite::All => [Suite::Funceq, Suite::Dde, Suite::Pde, Suite::Monodromy, Suite::Residue]
            .into_iter()
            .flat_map(|s| run_suite(s, samples, seed))
            .collect(),
    }
}
