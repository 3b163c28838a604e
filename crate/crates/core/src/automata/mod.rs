//! Finite automata, deterministic sequential transducers (gsms) and the
//! semilattice content automaton.

mod gsm;
pub(crate) mod nfa;
mod semilattice;

pub use gsm::Gsm;
pub use nfa::Nfa;
pub use semilattice::{content_automaton, SemilatticeOrder};
