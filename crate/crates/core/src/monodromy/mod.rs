//! Monodromy algebra: words in the fundamental group, closed-form monodromy
//! functions, composition and power laws, θ-relations and fixed-`s` bases.

pub mod basis;
pub mod forms;
pub mod relations;
pub mod word;

pub use basis::{monodromy_space_basis, BasisElement, IndexSet, MonodromyBasis, SpecialClass};
pub use forms::{
    character, compose_check, geometric_factor, monodromy_by_letters, monodromy_contributions, monodromy_generator,
    monodromy_of_state, monodromy_of_word, monodromy_power, nested_monodromy, power_law_residual,
};
pub use relations::{fe_monodromy_residual, fe_monodromy_sides, theta_point};
pub use word::{rep_apply, rep_compose, Axis, Generator, Letter, Word};
