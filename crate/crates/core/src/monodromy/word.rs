//! Reduced words in the free group on `{X_n} ∪ {Y_n}`, their abelianization,
//! the order-4 automorphism θ and the word-level representation action.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::continuation::BranchState;
use crate::error::{LerchError, Result};

/// Loop around `a = n` (`X`) or `c = n` (`Y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub axis: Axis,
    pub n: i64,
}

impl Generator {
    pub const fn x(n: i64) -> Self {
        Self { axis: Axis::X, n }
    }

    pub const fn y(n: i64) -> Self {
        Self { axis: Axis::Y, n }
    }

    /// `θ(X_n) = Y_n`, `θ(Y_n) = X_{1-n}`.
    pub fn theta(self) -> Self {
        match self.axis {
            Axis::X => Generator::y(self.n),
            Axis::Y => Generator::x(1 - self.n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::X => write!(f, "X{}", self.n),
            Axis::Y => write!(f, "Y{}", self.n),
        }
    }
}

/// A letter `g^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    fn inverse(self) -> Self {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

/// Freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    /// `g^k`.
    pub fn power(g: Generator, k: i64) -> Self {
        let mut w = Word::identity();
        w.push_power(g, k);
        w
    }

    pub fn generator(g: Generator) -> Self {
        Self::power(g, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter, cancelling against the last one when inverse.
    pub fn push(&mut self, g: Generator, exponent: i8) {
        debug_assert!(exponent == 1 || exponent == -1);
        let l = Letter { generator: g, exponent };
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn push_power(&mut self, g: Generator, k: i64) {
        let e = if k >= 0 { 1 } else { -1 };
        for _ in 0..k.unsigned_abs() {
            self.push(g, e);
        }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.generator, l.exponent);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `u v u^{-1} v^{-1}`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Signed letter count per generator.
    pub fn abelianize(&self) -> BranchState {
        let mut b = BranchState::zero();
        for l in &self.letters {
            b.add(l.generator, l.exponent as i64);
        }
        b
    }

    /// Letterwise image under `θ^power`; `θ^4` is the identity.
    pub fn theta(&self, power: u32) -> Word {
        let mut w = Word::identity();
        for l in &self.letters {
            let mut g = l.generator;
            for _ in 0..(power % 4) {
                g = g.theta();
            }
            w.push(g, l.exponent);
        }
        w
    }

    /// Random freely reduced word of at most `max_len` letters with indices
    /// in `-index_span..=index_span`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_len: usize, index_span: i64) -> Word {
        let len = rng.gen_range(0..=max_len);
        let mut w = Word::identity();
        while w.len() < len {
            let axis = if rng.gen_bool(0.5) { Axis::X } else { Axis::Y };
            let n = rng.gen_range(-index_span..=index_span);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            w.push(Generator { axis, n }, e);
            if w.len() + 1 < len && rng.gen_bool(0.05) {
                break;
            }
        }
        w
    }

    /// Random element of the commutator subgroup: nested commutators of random
    /// words, at most `max_len` letters.
    pub fn random_commutator<R: Rng + ?Sized>(rng: &mut R, max_len: usize, index_span: i64) -> Word {
        loop {
            let u = Word::random(rng, 4, index_span);
            let v = Word::random(rng, 4, index_span);
            let mut w = Word::commutator(&u, &v);
            if rng.gen_bool(0.5) {
                let z = Word::random(rng, 2, index_span);
                w = Word::commutator(&w, &z);
            }
            if w.len() <= max_len {
                return w;
            }
        }
    }
}

/// Word-level action `ρ(σ)` on the basis label `τ`: returns `σ^{-1} τ`.
pub fn rep_apply(sigma: &Word, tau: &Word) -> Word {
    sigma.inverse().mul(tau)
}

/// The word `W` with `rep_apply(σ1, rep_apply(σ2, τ)) = rep_apply(W, τ)`,
/// namely `σ2 σ1`.
pub fn rep_compose(sigma1: &Word, sigma2: &Word) -> Word {
    sigma2.mul(sigma1)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * l.exponent as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{}", l.generator)?;
            } else {
                write!(f, "{}^{}", l.generator, k)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = LerchError;

    /// Whitespace-separated `X<n>` / `Y<n>` with optional `^k`; `1` or an empty
    /// string is the identity.
    fn from_str(text: &str) -> Result<Word> {
        let mut w = Word::identity();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let bad = || LerchError::Parse(format!("bad word token {tok:?}"));
            let mut chars = tok.chars();
            let axis = match chars.next() {
                Some('X') | Some('x') => Axis::X,
                Some('Y') | Some('y') => Axis::Y,
                _ => return Err(bad()),
            };
            let rest = chars.as_str();
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let n: i64 = idx.parse().map_err(|_| bad())?;
            let k: i64 = match exp {
                Some(e) => e.parse().map_err(|_| bad())?,
                None => 1,
            };
            if k.unsigned_abs() > 1_000_000 {
                return Err(LerchError::Parse(format!("exponent too large in {tok:?}")));
            }
            w.push_power(Generator { axis, n }, k);
        }
        Ok(w)
    }
}
