//! Symbolic bases of the span of `Z` and its monodromy functions at fixed `s`.

use std::fmt;

use crate::real::{is_integer, Real, C};

use super::word::{Axis, Generator};

/// Index set of a generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexSet {
    AllIntegers,
    NonPositive,
}

impl IndexSet {
    pub fn contains(&self, n: i64) -> bool {
        match self {
            IndexSet::AllIntegers => true,
            IndexSet::NonPositive => n <= 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    /// The function `Z` itself.
    Zeta,
    /// `{M_{X_n} : n ∈ I}`.
    XFamily(IndexSet),
    /// `{M_{Y_n} : n ∈ I}`.
    YFamily(IndexSet),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |i: &IndexSet| match i {
            IndexSet::AllIntegers => "n in Z",
            IndexSet::NonPositive => "n <= 0",
        };
        match self {
            BasisElement::Zeta => f.write_str("Z"),
            BasisElement::XFamily(i) => write!(f, "M[X_n] ({})", set(i)),
            BasisElement::YFamily(i) => write!(f, "M[Y_n] ({})", set(i)),
        }
    }
}

/// Which of the three cases of `s` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialClass {
    NonPositiveInteger,
    PositiveInteger,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyBasis {
    pub class: SpecialClass,
    pub elements: Vec<BasisElement>,
}

impl MonodromyBasis {
    /// `Some(1)` when only `Z` survives, `None` for the infinite bases.
    pub fn dimension(&self) -> Option<usize> {
        if self.elements.len() == 1 {
            Some(1)
        } else {
            None
        }
    }

    /// Whether `M_g` is a basis element.
    pub fn contains(&self, g: Generator) -> bool {
        self.elements.iter().any(|e| match (e, g.axis) {
            (BasisElement::XFamily(i), Axis::X) | (BasisElement::YFamily(i), Axis::Y) => i.contains(g.n),
            _ => false,
        })
    }
}

/// `s ∈ ℤ≤0`: `{Z}`; `s ∈ ℤ≥1`: `{Z} ∪ {M_{X_n}}`; otherwise additionally
/// `{M_{Y_n} : n ≤ 0}`.
pub fn monodromy_space_basis<T: Real>(s: C<T>) -> MonodromyBasis {
    let (class, elements) = if is_integer(s) && s.re <= T::zero() {
        (SpecialClass::NonPositiveInteger, vec![BasisElement::Zeta])
    } else if is_integer(s) {
        (
            SpecialClass::PositiveInteger,
            vec![BasisElement::Zeta, BasisElement::XFamily(IndexSet::AllIntegers)],
        )
    } else {
        (
            SpecialClass::Generic,
            vec![
                BasisElement::Zeta,
                BasisElement::XFamily(IndexSet::AllIntegers),
                BasisElement::YFamily(IndexSet::NonPositive),
            ],
        )
    };
    MonodromyBasis { class, elements }
}
