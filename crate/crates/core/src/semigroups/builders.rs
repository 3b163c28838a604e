use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter, SEP};
use crate::error::{Error, Result};
use crate::oracle::{string_oracle, EqualityOracle};
use crate::pda::{AcceptMode, LanguageRep, Npda, BOTTOM};
use crate::rewriting::MonadicRewritingSystem;

use super::WordProblemObject;

/// Letters a, b, c, ... of a free monoid of the given rank.
pub fn default_letters(rank: usize) -> Vec<Letter> {
    (0..rank).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

/// Free monoid (or free semigroup) of rank `rank` on a, b, c, ...
pub fn free_monoid(rank: usize, monoid: bool) -> Result<WordProblemObject> {
    if rank == 0 || rank > 26 {
        return Err(Error::input("free monoid rank must be between 1 and 26"));
    }
    free_monoid_on(&default_letters(rank), monoid)
}

/// Push `u`, switch on `#`, pop-match `v^rev`.
pub fn free_monoid_on(letters: &[Letter], monoid: bool) -> Result<WordProblemObject> {
    if letters.is_empty() {
        return Err(Error::input("a free monoid needs at least one generator"));
    }
    let alphabet = Alphabet::from_names(letters.iter().cloned());
    let mut full = alphabet.clone();
    full.insert(SEP);
    let mut m = Npda::new(full, "⊥", "push0", AcceptMode::FinalStateAndBareBottom);
    let syms: Vec<usize> = letters.iter().map(|l| m.stack_symbol(format!("S{l}"))).collect();
    let all: Vec<usize> = std::iter::once(BOTTOM).chain(syms.iter().copied()).collect();
    let (push0, push1, pop0, pop1) = if monoid {
        let pop = m.add_state("pop");
        (0, 0, pop, pop)
    } else {
        let push1 = m.add_state("push1");
        let pop0 = m.add_state("pop0");
        let pop1 = m.add_state("pop1");
        (0, push1, pop0, pop1)
    };
    for (l, &s) in letters.iter().zip(&syms) {
        for &y in &all {
            m.add_transition(push0, Some(l), y, push1, &[s, y])?;
            if push1 != push0 {
                m.add_transition(push1, Some(l), y, push1, &[s, y])?;
            }
        }
        m.add_transition(pop0, Some(l), s, pop1, &[])?;
        if pop1 != pop0 {
            m.add_transition(pop1, Some(l), s, pop1, &[])?;
        }
    }
    for &y in &all {
        m.add_transition(push1, Some(SEP), y, pop0, &[y])?;
    }
    m.set_final(pop1);
    m.set_deterministic_hint(true);
    WordProblemObject::new(alphabet.clone(), monoid, Some(LanguageRep::Pda(m)), string_oracle(alphabet))
}

/// Free group on x, y, z, ... with inverses X, Y, Z, ...
pub fn free_group(rank: usize) -> Result<WordProblemObject> {
    const GENS: &str = "xyzwvutsrqponmlkjihgfedcba";
    if rank == 0 || rank > GENS.len() {
        return Err(Error::input("free group rank must be between 1 and 26"));
    }
    let pairs: Vec<(Letter, Letter)> =
        GENS.chars().take(rank).map(|c| (c.to_string(), c.to_ascii_uppercase().to_string())).collect();
    free_group_on(&pairs, true)
}

fn free_reduce(w: &[Letter], inv: &HashMap<Letter, Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in w {
        if out.last() == Some(&inv[l]) {
            out.pop();
        } else {
            out.push(l.clone());
        }
    }
    out
}

/// Free group on the given (generator, inverse) name pairs. Before `#` the
/// stack holds the free reduction of the prefix; after `#` each letter's
/// inverse is multiplied on, so the stack empties exactly when `u = v`.
pub fn free_group_on(pairs: &[(Letter, Letter)], monoid: bool) -> Result<WordProblemObject> {
    let mut inv: HashMap<Letter, Letter> = HashMap::new();
    let mut alphabet = Alphabet::new();
    for (g, h) in pairs {
        if g == h || inv.contains_key(g) || inv.contains_key(h) {
            return Err(Error::input(format!("bad generator/inverse pair `{g}`/`{h}`")));
        }
        inv.insert(g.clone(), h.clone());
        inv.insert(h.clone(), g.clone());
        alphabet.insert(g.clone());
        alphabet.insert(h.clone());
    }
    let mut full = alphabet.clone();
    full.insert(SEP);
    let mut m = Npda::new(full, "⊥", "pre", AcceptMode::FinalStateAndBareBottom);
    let post = m.add_state("post");
    let sym: HashMap<Letter, usize> = alphabet.iter().map(|l| (l.to_string(), m.stack_symbol(format!("S{l}")))).collect();
    let all: Vec<usize> = std::iter::once(BOTTOM).chain(alphabet.iter().map(|l| sym[l])).collect();
    for l in alphabet.iter() {
        let li = inv[l].as_str();
        for &y in &all {
            // before #: multiply by l; after #: multiply by l^-1
            for (state, factor) in [(0, l), (post, li)] {
                let cancel = sym[&inv[factor]];
                if y == cancel {
                    m.add_transition(state, Some(l), y, state, &[])?;
                } else {
                    m.add_transition(state, Some(l), y, state, &[sym[factor], y])?;
                }
            }
        }
    }
    for &y in &all {
        m.add_transition(0, Some(SEP), y, post, &[y])?;
    }
    m.set_final(post);
    m.set_deterministic_hint(true);
    let desc = "free reduction".to_string();
    let oracle = EqualityOracle::new(alphabet.clone(), desc, move |u, v| Ok(free_reduce(u, &inv) == free_reduce(v, &inv)));
    WordProblemObject::new(alphabet, monoid, Some(LanguageRep::Pda(m)), oracle)
}

/// The monoid presented by a confluent monadic system, as an oracle only.
pub fn rewriting_word_problem(rs: &MonadicRewritingSystem) -> Result<WordProblemObject> {
    if !rs.confluent() {
        return Err(Error::hypothesis("the rewriting system is not asserted to be confluent"));
    }
    let sys = rs.clone();
    let oracle = EqualityOracle::new(rs.alphabet().clone(), "rewriting normal forms", move |u, v| sys.word_equal(u, v));
    WordProblemObject::new(rs.alphabet().clone(), true, None, oracle)
}
