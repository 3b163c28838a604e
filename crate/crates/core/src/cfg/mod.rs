//! Context-free grammars: text format, pruning, homomorphic images, CNF and
//! CYK membership.

mod cnf;

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

pub use cnf::Cnf;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A grammar symbol: terminal or nonterminal index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T(usize),
    N(usize),
}

#[derive(Clone, Debug)]
pub struct Cfg {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    nt_index: HashMap<String, usize>,
    productions: Vec<(usize, Vec<Sym>)>,
    start: usize,
}

impl Cfg {
    pub fn new(terminals: Alphabet, start: impl Into<String>) -> Self {
        let mut g = Cfg {
            terminals,
            nonterminals: Vec::new(),
            nt_index: HashMap::new(),
            productions: Vec::new(),
            start: 0,
        };
        g.start = g.nonterminal(start);
        g
    }

    /// Interns a nonterminal by name.
    pub fn nonterminal(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.nt_index.get(&name) {
            return i;
        }
        self.nonterminals.push(name.clone());
        self.nt_index.insert(name, self.nonterminals.len() - 1);
        self.nonterminals.len() - 1
    }

    pub fn terminal(&self, letter: &str) -> Result<Sym> {
        self.terminals
            .get(letter)
            .map(Sym::T)
            .ok_or_else(|| Error::input(format!("terminal `{letter}` is not in the grammar alphabet")))
    }

    pub fn add_production(&mut self, lhs: usize, body: Vec<Sym>) -> Result<()> {
        let ok = lhs < self.nonterminals.len()
            && body.iter().all(|s| match *s {
                Sym::T(t) => t < self.terminals.len(),
                Sym::N(n) => n < self.nonterminals.len(),
            });
        if !ok {
            return Err(Error::input("production uses an undeclared symbol"));
        }
        self.productions.push((lhs, body));
        Ok(())
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn num_nonterminals(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn nonterminal_name(&self, n: usize) -> &str {
        &self.nonterminals[n]
    }

    pub fn productions(&self) -> &[(usize, Vec<Sym>)] {
        &self.productions
    }

    /// Nonterminals deriving some terminal word.
    pub fn productive(&self) -> Vec<bool> {
        let mut prod = vec![false; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for (lhs, body) in &self.productions {
                if !prod[*lhs] && body.iter().all(|s| matches!(*s, Sym::T(_)) || matches!(*s, Sym::N(n) if prod[n])) {
                    prod[*lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                return prod;
            }
        }
    }

    /// Removes unproductive and unreachable nonterminals. The start symbol is
    /// always kept, possibly with no productions.
    pub fn prune(&self) -> Cfg {
        let prod = self.productive();
        let useful: Vec<&(usize, Vec<Sym>)> = self
            .productions
            .iter()
            .filter(|(l, b)| prod[*l] && b.iter().all(|s| !matches!(*s, Sym::N(n) if !prod[n])))
            .collect();
        let mut by_lhs: HashMap<usize, Vec<&Vec<Sym>>> = HashMap::new();
        for (l, b) in &useful {
            by_lhs.entry(*l).or_default().push(b);
        }
        let mut reach = HashSet::from([self.start]);
        let mut stack = vec![self.start];
        while let Some(a) = stack.pop() {
            for b in by_lhs.get(&a).into_iter().flatten() {
                for s in b.iter() {
                    if let Sym::N(n) = *s {
                        if reach.insert(n) {
                            stack.push(n);
                        }
                    }
                }
            }
        }
        let mut out = Cfg::new(self.terminals.clone(), self.nonterminals[self.start].clone());
        let mut map = HashMap::from([(self.start, out.start)]);
        for (l, b) in useful {
            if !reach.contains(l) {
                continue;
            }
            let mut remap = |n: usize, out: &mut Cfg| *map.entry(n).or_insert_with(|| out.nonterminal(self.nonterminals[n].clone()));
            let lhs = remap(*l, &mut out);
            let body = b
                .iter()
                .map(|s| match *s {
                    Sym::T(t) => Sym::T(t),
                    Sym::N(n) => Sym::N(remap(n, &mut out)),
                })
                .collect();
            out.productions.push((lhs, body));
        }
        out
    }

    /// True when the start symbol derives nothing.
    pub fn is_empty_language(&self) -> bool {
        !self.productive()[self.start]
    }

    /// The image of the language under a letter-to-word homomorphism.
    pub fn apply_homomorphism(&self, target: &Alphabet, h: &HashMap<Letter, Word>) -> Result<Cfg> {
        let images: Vec<Vec<usize>> = self
            .terminals
            .iter()
            .map(|l| {
                let w = h
                    .get(l)
                    .ok_or_else(|| Error::input(format!("homomorphism has no image for `{l}`")))?;
                target.encode(w)
            })
            .collect::<Result<_>>()?;
        let mut out = self.clone();
        out.terminals = target.clone();
        for (_, body) in out.productions.iter_mut() {
            *body = body
                .iter()
                .flat_map(|s| match *s {
                    Sym::T(t) => images[t].iter().map(|&x| Sym::T(x)).collect::<Vec<_>>(),
                    Sym::N(n) => vec![Sym::N(n)],
                })
                .collect();
        }
        Ok(out)
    }

    pub fn to_cnf(&self) -> Cnf {
        Cnf::from_cfg(&self.prune())
    }

    /// Membership via CNF and CYK. Repeated queries should reuse [`Cfg::to_cnf`].
    pub fn cyk_member(&self, w: &[Letter]) -> Result<bool> {
        let enc = self.terminals.encode(w)?;
        Ok(self.to_cnf().member(&enc))
    }

    /// One production per line: `start: S` then `A -> 'a' B`, with `ε` for
    /// the empty body.
    /// Nonterminal names that survive a round trip through text are kept;
    /// others lose whitespace and reserved tokens, with a suffix on clashes.
    pub fn to_text(&self) -> String {
        let mut used = HashSet::new();
        let names: Vec<String> = self
            .nonterminals
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut t: String = n.split_whitespace().collect::<String>().replace("->", "=>").replace(['|', '\''], "_");
                if t.is_empty() || t == "ε" || t.starts_with("//") {
                    t = format!("N{i}");
                }
                if !used.insert(t.clone()) {
                    t = format!("{t}~{i}");
                    used.insert(t.clone());
                }
                t
            })
            .collect();
        let mut s = format!("start: {}\n", names[self.start]);
        for (l, body) in &self.productions {
            let _ = write!(s, "{} ->", names[*l]);
            if body.is_empty() {
                s.push_str(" ε");
            }
            for sym in body {
                match *sym {
                    Sym::T(t) => {
                        let _ = write!(s, " '{}'", self.terminals.name(t));
                    }
                    Sym::N(n) => {
                        let _ = write!(s, " {}", names[n]);
                    }
                }
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`Cfg::to_text`]. Alternatives may also be
    /// separated by `|` on one line. Terminals must belong to `terminals`.
    pub fn parse_text(text: &str, terminals: &Alphabet) -> Result<Cfg> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with("//"));
        let first = lines.next().ok_or_else(|| Error::input("empty grammar text"))?;
        let start = first
            .strip_prefix("start:")
            .ok_or_else(|| Error::input("grammar text must begin with `start: <nonterminal>`"))?
            .trim();
        let mut g = Cfg::new(terminals.clone(), start);
        for line in lines {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::input(format!("grammar line without `->`: {line}")))?;
            let lhs = g.nonterminal(lhs.trim());
            for alt in rhs.split('|') {
                let mut body = Vec::new();
                for tok in alt.split_whitespace() {
                    if tok == "ε" {
                        continue;
                    }
                    if let Some(t) = tok.strip_prefix('\'').and_then(|t| t.strip_suffix('\'')) {
                        body.push(g.terminal(t)?);
                    } else {
                        body.push(Sym::N(g.nonterminal(tok)));
                    }
                }
                g.productions.push((lhs, body));
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::alphabet::{word, words_up_to};

    pub(crate) fn anbn() -> Cfg {
        Cfg::parse_text("start: S\nS -> 'a' S 'b' | ε", &Alphabet::from_names(["a", "b"])).unwrap()
    }

    pub(crate) fn palindromes() -> Cfg {
        Cfg::parse_text(
            "start: P\nP -> ε | 'a' | 'b' | 'a' P 'a' | 'b' P 'b'",
            &Alphabet::from_names(["a", "b"]),
        )
        .unwrap()
    }

    #[test]
    fn cyk_examples() {
        let g = anbn();
        assert!(g.cyk_member(&word("aabb")).unwrap());
        assert!(g.cyk_member(&[]).unwrap());
        assert!(!g.cyk_member(&word("abab")).unwrap());
        assert!(g.cyk_member(&word("abc")).is_err());
        assert!(palindromes().cyk_member(&word("abba")).unwrap());
    }

    #[test]
    fn cyk_matches_predicates() {
        let g = anbn().to_cnf();
        let p = palindromes().to_cnf();
        let al = Alphabet::from_names(["a", "b"]);
        for w in words_up_to(al.names(), 8) {
            let enc = al.encode(&w).unwrap();
            let k = w.len() / 2;
            let is_anbn = w.len() % 2 == 0 && w[..k].iter().all(|l| l == "a") && w[k..].iter().all(|l| l == "b");
            let rev: Word = w.iter().rev().cloned().collect();
            assert_eq!(g.member(&enc), is_anbn, "{w:?}");
            assert_eq!(p.member(&enc), rev == w, "{w:?}");
        }
    }

    #[test]
    fn text_round_trip() {
        let g = palindromes();
        let h = Cfg::parse_text(&g.to_text(), g.terminals()).unwrap();
        assert_eq!(g.to_text(), h.to_text());
    }

    #[test]
    fn homomorphism_erasing_letter() {
        let al = Alphabet::from_names(["a", "b"]);
        let g = Cfg::parse_text("start: S\nS -> 'a' 'b'", &al).unwrap();
        let h = HashMap::from([("a".to_string(), vec![]), ("b".to_string(), word("b"))]);
        let img = g.apply_homomorphism(&al, &h).unwrap();
        for w in words_up_to(al.names(), 4) {
            assert_eq!(img.cyk_member(&w).unwrap(), w == word("b"));
        }
    }

    #[test]
    fn homomorphism_matches_enumeration() {
        // image of a^n b^n under a -> ab, b -> ε is (ab)^n
        let g = anbn();
        let al = g.terminals().clone();
        let h = HashMap::from([("a".to_string(), word("ab")), ("b".to_string(), vec![])]);
        let img = g.apply_homomorphism(&al, &h).unwrap().to_cnf();
        for w in words_up_to(al.names(), 8) {
            let expect = w.len() % 2 == 0 && w.chunks(2).all(|c| c == word("ab").as_slice());
            assert_eq!(img.member(&al.encode(&w).unwrap()), expect, "{w:?}");
        }
    }

    #[test]
    fn empty_grammar() {
        let al = Alphabet::from_names(["a"]);
        let g = Cfg::parse_text("start: S\nS -> S 'a'", &al).unwrap();
        assert!(g.is_empty_language());
        assert!(!g.cyk_member(&[]).unwrap());
        assert!(g.prune().productions().is_empty());
    }
}
