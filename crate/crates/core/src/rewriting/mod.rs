//! Monadic rewriting systems whose left-hand sides form finite, regular or
//! context-free languages, and their normal forms.

pub mod fixtures;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{words_up_to, Alphabet, Letter, Word};
use crate::automata::Nfa;
use crate::cfg::Cfg;
use crate::error::{Error, Result};
use crate::pda::CfgRep;

/// A language of left-hand sides.
#[derive(Clone, Debug)]
pub enum LhsLanguage {
    Finite(Vec<Word>),
    Nfa(Nfa),
    Cfg(CfgRep),
}

#[derive(Clone, Debug)]
enum Lhs {
    Finite(HashSet<Vec<usize>>),
    Nfa(Nfa),
    /// grammar plus the map from system letters to grammar terminals
    Cfg(CfgRep, Vec<Option<usize>>),
}

impl Lhs {
    fn contains(&self, w: &[usize]) -> bool {
        match self {
            Lhs::Finite(set) => set.contains(w),
            Lhs::Nfa(n) => n.accepts_encoded(w),
            Lhs::Cfg(g, map) => {
                let Some(enc) = w.iter().map(|&l| map[l]).collect::<Option<Vec<_>>>() else {
                    return false;
                };
                g.cnf().member(&enc)
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Rule {
    rhs: Option<usize>,
    lhs: Lhs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    /// leftmost position, shortest factor, ε before letters in alphabet order
    LeftmostShortest,
    /// rightmost position, longest factor, the reverse preference on right sides
    RightmostLongest,
}

#[derive(Clone, Debug)]
pub struct MonadicRewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    confluent: bool,
}

/// Mismatches found by [`MonadicRewritingSystem::confluence_smoke_test`].
#[derive(Clone, Debug)]
pub struct SmokeReport {
    pub samples: usize,
    /// (word, leftmost-shortest normal form, rightmost-longest normal form)
    pub mismatches: Vec<(Word, Word, Word)>,
}

impl MonadicRewritingSystem {
    pub fn new(alphabet: Alphabet, confluent: bool) -> Self {
        MonadicRewritingSystem { alphabet, rules: Vec::new(), confluent }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn confluent(&self) -> bool {
        self.confluent
    }

    /// Adds the rules `l -> rhs` for every `l` in `lhs`, rejecting any short
    /// left-hand side: length at least 2 for a letter, at least 1 for ε.
    pub fn add_rules(&mut self, rhs: Option<&str>, lhs: LhsLanguage) -> Result<()> {
        let rhs_idx = match rhs {
            None => None,
            Some(l) => Some(
                self.alphabet
                    .get(l)
                    .ok_or_else(|| Error::input(format!("right-hand side `{l}` is not in the alphabet")))?,
            ),
        };
        let lhs = match lhs {
            LhsLanguage::Finite(ws) => Lhs::Finite(ws.iter().map(|w| self.alphabet.encode(w)).collect::<Result<_>>()?),
            LhsLanguage::Nfa(n) => Lhs::Nfa(n.with_alphabet(&self.alphabet)?),
            LhsLanguage::Cfg(g) => {
                let map = self.alphabet.iter().map(|l| g.grammar.terminals().get(l)).collect();
                if let Some(t) = g.grammar.terminals().iter().find(|t| !self.alphabet.contains(t)) {
                    return Err(Error::input(format!("grammar terminal `{t}` is not in the alphabet")));
                }
                Lhs::Cfg(g, map)
            }
        };
        let min_len = if rhs_idx.is_some() { 2 } else { 1 };
        for w in words_up_to(self.alphabet.names(), min_len - 1) {
            let enc = self.alphabet.encode(&w)?;
            if lhs.contains(&enc) {
                return Err(Error::input(format!(
                    "rule `{}` -> `{}` is not length-reducing",
                    crate::alphabet::show(&w),
                    rhs.unwrap_or("ε")
                )));
            }
        }
        self.rules.push(Rule { rhs: rhs_idx, lhs });
        Ok(())
    }

    fn rhs_rank(&self, rhs: Option<usize>) -> usize {
        rhs.map_or(0, |l| l + 1)
    }

    fn step(&self, w: &[usize], strategy: Strategy) -> Option<Vec<usize>> {
        let n = w.len();
        let positions: Vec<usize> = match strategy {
            Strategy::LeftmostShortest => (0..n).collect(),
            Strategy::RightmostLongest => (0..n).rev().collect(),
        };
        for i in positions {
            let lens: Vec<usize> = match strategy {
                Strategy::LeftmostShortest => (1..=n - i).collect(),
                Strategy::RightmostLongest => (1..=n - i).rev().collect(),
            };
            for len in lens {
                let factor = &w[i..i + len];
                let best = self
                    .rules
                    .iter()
                    .filter(|r| r.lhs.contains(factor))
                    .map(|r| r.rhs)
                    .min_by_key(|&r| match strategy {
                        Strategy::LeftmostShortest => self.rhs_rank(r),
                        Strategy::RightmostLongest => usize::MAX - self.rhs_rank(r),
                    });
                if let Some(rhs) = best {
                    let mut out = w[..i].to_vec();
                    out.extend(rhs);
                    out.extend_from_slice(&w[i + len..]);
                    return Some(out);
                }
            }
        }
        None
    }

    fn normal_form_with(&self, w: &[usize], strategy: Strategy) -> Vec<usize> {
        let mut cur = w.to_vec();
        while let Some(next) = self.step(&cur, strategy) {
            cur = next;
        }
        cur
    }

    pub(crate) fn normal_form_encoded(&self, w: &[usize]) -> Vec<usize> {
        self.normal_form_with(w, Strategy::LeftmostShortest)
    }

    fn decode(&self, w: &[usize]) -> Word {
        w.iter().map(|&l| self.alphabet.name(l).to_string()).collect()
    }

    /// Rewrites until irreducible: leftmost position, shortest factor, and ε
    /// preferred over letters, letters in alphabet order.
    pub fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        let enc = self.alphabet.encode(w)?;
        Ok(self.decode(&self.normal_form_encoded(&enc)))
    }

    /// Whether some factor of `w` is a left-hand side.
    pub fn is_reducible(&self, w: &[Letter]) -> Result<bool> {
        let enc = self.alphabet.encode(w)?;
        Ok(self.step(&enc, Strategy::LeftmostShortest).is_some())
    }

    pub fn word_equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        if !self.confluent {
            return Err(Error::hypothesis("word equality needs a system asserted to be confluent"));
        }
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// Compares normal forms under two rewriting strategies on random words.
    pub fn confluence_smoke_test(&self, samples: usize, max_len: usize, seed: u64) -> SmokeReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mismatches = Vec::new();
        for _ in 0..samples {
            if self.alphabet.is_empty() {
                break;
            }
            let len = rng.gen_range(0..=max_len);
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..self.alphabet.len())).collect();
            let a = self.normal_form_with(&w, Strategy::LeftmostShortest);
            let b = self.normal_form_with(&w, Strategy::RightmostLongest);
            if a != b {
                mismatches.push((self.decode(&w), self.decode(&a), self.decode(&b)));
            }
        }
        SmokeReport { samples, mismatches }
    }
}

impl LhsLanguage {
    pub fn grammar(g: Cfg) -> Self {
        LhsLanguage::Cfg(CfgRep::new(g))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::alphabet::word;

    #[test]
    fn bicyclic_normal_forms() {
        let rs = bicyclic();
        assert_eq!(rs.normal_form(&word("bbcc")).unwrap(), Vec::<Letter>::new());
        assert!(rs.word_equal(&word("bc"), &[]).unwrap());
        assert!(!rs.word_equal(&word("b"), &word("c")).unwrap());
        assert_eq!(rs.normal_form(&word("cbbcb")).unwrap(), word("cbb"));
    }

    #[test]
    fn palindrome_system() {
        let rs = palindromes();
        assert_eq!(rs.normal_form(&word("xabbay")).unwrap(), word("z"));
        assert!(!rs.word_equal(&word("xaby"), &word("z")).unwrap());
        assert!(rs.word_equal(&word("xabay"), &word("z")).unwrap());
    }

    #[test]
    fn non_automatic_example() {
        let rs = non_automatic();
        assert_eq!(rs.normal_form(&word("abbccd")).unwrap(), word("z"));
        assert_eq!(rs.normal_form(&word("abbcd")).unwrap(), word("abbcd"));
    }

    #[test]
    fn length_reduction_enforced() {
        let mut rs = MonadicRewritingSystem::new(Alphabet::from_names(["a", "b"]), true);
        assert!(rs.add_rules(Some("a"), LhsLanguage::Finite(vec![word("b")])).is_err());
        assert!(rs.add_rules(None, LhsLanguage::Finite(vec![vec![]])).is_err());
        assert!(rs.add_rules(None, LhsLanguage::Finite(vec![word("b")])).is_ok());
    }

    #[test]
    fn unasserted_confluence_is_hypothesis_error() {
        let rs = MonadicRewritingSystem::new(Alphabet::from_names(["a"]), false);
        assert!(matches!(rs.word_equal(&[], &[]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn smoke_test() {
        assert!(bicyclic().confluence_smoke_test(100, 10, 7).mismatches.is_empty());
        let empty = MonadicRewritingSystem::new(Alphabet::from_names(["a", "b"]), true);
        assert!(empty.confluence_smoke_test(50, 6, 1).mismatches.is_empty());
        let mut bad = MonadicRewritingSystem::new(Alphabet::from_names(["a", "b"]), false);
        bad.add_rules(Some("a"), LhsLanguage::Finite(vec![word("ab")])).unwrap();
        bad.add_rules(Some("b"), LhsLanguage::Finite(vec![word("ab")])).unwrap();
        let r = bad.confluence_smoke_test(200, 4, 3);
        assert!(r.mismatches.iter().any(|(w, _, _)| *w == word("ab")));
    }

    #[test]
    fn normal_forms_are_irreducible_and_idempotent() {
        for rs in [bicyclic(), palindromes(), non_automatic()] {
            let r = rs.confluence_smoke_test(0, 0, 0);
            assert_eq!(r.samples, 0);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..200 {
                let len = rng.gen_range(0..=9);
                let w: Word = (0..len)
                    .map(|_| rs.alphabet().name(rng.gen_range(0..rs.alphabet().len())).to_string())
                    .collect();
                let nf = rs.normal_form(&w).unwrap();
                assert!(nf.len() <= w.len());
                assert!(!rs.is_reducible(&nf).unwrap());
                assert_eq!(rs.normal_form(&nf).unwrap(), nf);
            }
        }
    }
}
