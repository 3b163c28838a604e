//! Pushdown recognizers and context-free grammars for word problems of
//! semigroups and monoids, with closure constructions and brute-force
//! equality oracles to check them against.

pub mod alphabet;
pub mod automata;
pub mod cfg;
pub mod constructions;
pub mod error;
pub mod pda;
pub mod oracle;
pub mod rewriting;
pub mod semigroups;

pub use alphabet::{encode_pair, word, Alphabet, Letter, Word, SEP};
pub use automata::{content_automaton, Gsm, Nfa, SemilatticeOrder};
pub use error::{Error, Result};
