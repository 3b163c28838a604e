//! The word-hyperbolic structure `(A*, M(A*))` of a word problem.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter, Word, SEP};
use crate::automata::Nfa;
use crate::error::Result;
use crate::pda::LanguageRep;
use crate::semigroups::WordProblemObject;

pub const MARK1: &str = "#1";
pub const MARK2: &str = "#2";

/// `M(A*) = { u #1 v #2 w^rev : uv = w }`, as the preimage of the word
/// problem under `#1 ↦ ε, #2 ↦ #` cut down to `A*#1A*#2A*`.
pub fn word_hyperbolic_structure(w: &WordProblemObject) -> Result<LanguageRep> {
    let p = w.require_pda()?;
    let mut input = w.alphabet().clone();
    input.insert(MARK1);
    input.insert(MARK2);
    let mut h: HashMap<Letter, Word> = w.alphabet().iter().map(|l| (l.to_string(), vec![l.to_string()])).collect();
    h.insert(MARK1.to_string(), vec![]);
    h.insert(MARK2.to_string(), vec![SEP.to_string()]);
    let pre = p.inverse_homomorphism(&input, &h)?;
    Ok(LanguageRep::Pda(pre.intersect_regular(&shape(w.alphabet(), &input)?)?))
}

fn shape(a: &Alphabet, input: &Alphabet) -> Result<Nfa> {
    let mut n = Nfa::new(input.clone());
    let s: Vec<usize> = (0..3).map(|k| n.add_state(format!("part{k}"))).collect();
    n.set_initial(s[0]);
    n.set_final(s[2]);
    for l in a.iter() {
        for &q in &s {
            n.add_transition(q, Some(l), q)?;
        }
    }
    n.add_transition(s[0], Some(MARK1), s[1])?;
    n.add_transition(s[1], Some(MARK2), s[2])?;
    Ok(n)
}

/// `u #1 v #2 w^rev`.
pub fn hyperbolic_word(u: &[Letter], v: &[Letter], w: &[Letter]) -> Word {
    let mut out = u.to_vec();
    out.push(MARK1.to_string());
    out.extend(v.iter().cloned());
    out.push(MARK2.to_string());
    out.extend(w.iter().rev().cloned());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{word, words_up_to};
    use crate::constructions::bicyclic_fixture;
    use crate::semigroups::free_monoid;

    #[test]
    fn free_monoid_examples() {
        let w = free_monoid(1, true).unwrap();
        let m = word_hyperbolic_structure(&w).unwrap();
        assert!(m.accepts(&hyperbolic_word(&word("a"), &word("a"), &word("aa"))).unwrap());
        assert!(!m.accepts(&hyperbolic_word(&word("a"), &word("a"), &word("a"))).unwrap());
        let mut stray = hyperbolic_word(&word("a"), &[], &word("a"));
        stray.push(MARK1.to_string());
        assert!(!m.accepts(&stray).unwrap());
    }

    #[test]
    fn bicyclic_agrees_with_oracle() {
        let w = bicyclic_fixture().unwrap();
        let m = word_hyperbolic_structure(&w).unwrap();
        assert!(m.accepts(&hyperbolic_word(&word("b"), &word("c"), &[])).unwrap());
        let ws = words_up_to(w.alphabet().names(), 2);
        for u in &ws {
            for v in &ws {
                for x in &ws {
                    let uv: Word = u.iter().chain(v).cloned().collect();
                    let expect = w.oracle_equal(&uv, x).unwrap();
                    assert_eq!(m.accepts(&hyperbolic_word(u, v, x)).unwrap(), expect, "{u:?} {v:?} {x:?}");
                }
            }
        }
    }
}
