//! Base word-problem objects: finite semigroups, free monoids and groups,
//! rewriting-presented monoids, and change of generators.

mod builders;
mod change;
mod finite;
mod wpo;

pub use builders::{default_letters, free_group, free_group_on, free_monoid, free_monoid_on, rewriting_word_problem};
pub use change::change_generators;
pub use finite::{finite_word_problem, FiniteSemigroup};
pub use wpo::WordProblemObject;
