//! Shared fixtures for the membership benchmarks.

use cfwp::alphabet::words_up_to;
use cfwp::constructions::{bicyclic_fixture, bruck_reilly, c2_identity_spec};
use cfwp::semigroups::{free_group, WordProblemObject};
use cfwp::{encode_pair, Word};

pub fn bicyclic() -> WordProblemObject {
    bicyclic_fixture().expect("bicyclic fixture builds")
}

pub fn free_group_rank2() -> WordProblemObject {
    free_group(2).expect("free group builds")
}

pub fn br_c2() -> WordProblemObject {
    bruck_reilly(&c2_identity_spec().expect("spec")).expect("BR(C2, id) builds").0
}

/// Every encoded pair `u # v^rev` with both sides of length at most `max`.
pub fn encoded_pairs(w: &WordProblemObject, max: usize) -> Vec<Word> {
    let sides = words_up_to(w.alphabet().names(), max);
    let mut out = Vec::with_capacity(sides.len() * sides.len());
    for u in &sides {
        for v in &sides {
            out.push(encode_pair(u, v));
        }
    }
    out
}
