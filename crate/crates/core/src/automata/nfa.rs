use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A nondeterministic finite automaton with ε-moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    state_names: Vec<String>,
    alphabet: Alphabet,
    /// Outgoing edges per state; `None` labels an ε-move.
    delta: Vec<Vec<(Option<usize>, usize)>>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            state_names: Vec::new(),
            alphabet,
            delta: Vec::new(),
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.delta.push(Vec::new());
        self.state_names.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, letter: Option<&str>, to: usize) -> Result<()> {
        if from >= self.delta.len() || to >= self.delta.len() {
            return Err(Error::input(format!("transition {from} -> {to} references an unknown state")));
        }
        let l = match letter {
            None => None,
            Some(l) => Some(
                self.alphabet
                    .get(l)
                    .ok_or_else(|| Error::input(format!("letter `{l}` is not in the automaton alphabet")))?,
            ),
        };
        self.push_edge(from, l, to);
        Ok(())
    }

    fn push_edge(&mut self, from: usize, letter: Option<usize>, to: usize) {
        if !self.delta[from].contains(&(letter, to)) {
            self.delta[from].push((letter, to));
        }
    }

    pub fn set_initial(&mut self, s: usize) {
        self.initial.insert(s);
    }

    pub fn set_final(&mut self, s: usize) {
        self.finals.insert(s);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn initial_states(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.contains(&s)
    }

    pub(crate) fn edges(&self, s: usize) -> &[(Option<usize>, usize)] {
        &self.delta[s]
    }

    pub fn has_epsilon_moves(&self) -> bool {
        self.delta.iter().flatten().any(|(l, _)| l.is_none())
    }

    /// True when there are no ε-moves, one initial state and at most one
    /// successor per (state, letter).
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 || self.has_epsilon_moves() {
            return false;
        }
        self.delta.iter().all(|edges| {
            let mut seen = BTreeSet::new();
            edges.iter().all(|(l, _)| seen.insert(*l))
        })
    }

    pub fn epsilon_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &(l, t) in &self.delta[s] {
                if l.is_none() && out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    fn step(&self, set: &BTreeSet<usize>, letter: usize) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &s in set {
            for &(l, t) in &self.delta[s] {
                if l == Some(letter) {
                    next.insert(t);
                }
            }
        }
        self.epsilon_closure(&next)
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        let enc = self.alphabet.encode(w)?;
        Ok(self.accepts_encoded(&enc))
    }

    pub(crate) fn accepts_encoded(&self, w: &[usize]) -> bool {
        let mut cur = self.epsilon_closure(&self.initial);
        for &l in w {
            if cur.is_empty() {
                return false;
            }
            cur = self.step(&cur, l);
        }
        cur.iter().any(|s| self.finals.contains(s))
    }

    /// Subset construction over the reachable subsets. States are named by
    /// the sets of original state names they contain. The result is partial:
    /// the empty subset is omitted.
    pub fn determinize(&self) -> Nfa {
        let mut out = Nfa::new(self.alphabet.clone());
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = self.epsilon_closure(&self.initial);
        let name = |set: &BTreeSet<usize>| {
            let parts: Vec<&str> = set.iter().map(|&s| self.state_names[s].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        let s0 = out.add_state(name(&start));
        out.set_initial(s0);
        ids.insert(start.clone(), s0);
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let id = ids[&set];
            if set.iter().any(|s| self.finals.contains(s)) {
                out.set_final(id);
            }
            for l in 0..self.alphabet.len() {
                let next = self.step(&set, l);
                if next.is_empty() {
                    continue;
                }
                let nid = match ids.get(&next) {
                    Some(&n) => n,
                    None => {
                        let n = out.add_state(name(&next));
                        ids.insert(next.clone(), n);
                        queue.push_back(next);
                        n
                    }
                };
                out.push_edge(id, Some(l), nid);
            }
        }
        out
    }

    /// Same automaton over a larger alphabet (new letters have no moves).
    pub(crate) fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|l| {
                alphabet
                    .get(l)
                    .ok_or_else(|| Error::input(format!("letter `{l}` missing from the target alphabet")))
            })
            .collect::<Result<_>>()?;
        let mut out = Nfa::new(alphabet.clone());
        out.state_names = self.state_names.clone();
        out.delta = self
            .delta
            .iter()
            .map(|edges| edges.iter().map(|&(l, t)| (l.map(|l| map[l]), t)).collect())
            .collect();
        out.initial = self.initial.clone();
        out.finals = self.finals.clone();
        Ok(out)
    }

    /// One-letter language drawn from `letters`.
    pub(crate) fn letter_class(alphabet: &Alphabet, letters: &[Letter]) -> Result<Nfa> {
        let mut n = Nfa::new(alphabet.clone());
        let s = n.add_state("s");
        let f = n.add_state("f");
        n.set_initial(s);
        n.set_final(f);
        for l in letters {
            n.add_transition(s, Some(l), f)?;
        }
        Ok(n)
    }

    /// A finite set of words.
    pub(crate) fn word_set(alphabet: &Alphabet, words: &[Word]) -> Result<Nfa> {
        let mut n = Nfa::new(alphabet.clone());
        let s = n.add_state("s");
        n.set_initial(s);
        for (k, w) in words.iter().enumerate() {
            let mut cur = s;
            for (i, l) in w.iter().enumerate() {
                let next = n.add_state(format!("w{k}.{i}"));
                n.add_transition(cur, Some(l), next)?;
                cur = next;
            }
            n.set_final(cur);
        }
        Ok(n)
    }

    fn disjoint_merge(&self, other: &Nfa, out: &mut Nfa, tag_a: &str, tag_b: &str) -> (usize, usize) {
        let off_a = out.num_states();
        for n in &self.state_names {
            out.add_state(format!("{tag_a}{n}"));
        }
        let off_b = out.num_states();
        for n in &other.state_names {
            out.add_state(format!("{tag_b}{n}"));
        }
        for (s, edges) in self.delta.iter().enumerate() {
            for &(l, t) in edges {
                out.push_edge(off_a + s, l, off_a + t);
            }
        }
        for (s, edges) in other.delta.iter().enumerate() {
            for &(l, t) in edges {
                out.push_edge(off_b + s, l, off_b + t);
            }
        }
        (off_a, off_b)
    }

    fn check_same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::input("regular combinator applied to automata over different alphabets"));
        }
        Ok(())
    }

    pub(crate) fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        let mut out = Nfa::new(self.alphabet.clone());
        let (a, b) = self.disjoint_merge(other, &mut out, "L.", "R.");
        for &i in &self.initial {
            out.set_initial(a + i);
        }
        for &f in &self.finals {
            for &i in &other.initial {
                out.push_edge(a + f, None, b + i);
            }
        }
        for &f in &other.finals {
            out.set_final(b + f);
        }
        Ok(out)
    }

    pub(crate) fn star(&self) -> Nfa {
        let mut out = self.clone();
        let hub = out.add_state("star");
        for &i in &self.initial {
            out.push_edge(hub, None, i);
        }
        for &f in &self.finals {
            out.push_edge(f, None, hub);
        }
        out.initial = BTreeSet::from([hub]);
        out.finals = BTreeSet::from([hub]);
        out
    }

    /// Labelled graph in dot syntax, one node per state.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n");
        for (i, n) in self.state_names.iter().enumerate() {
            let shape = if self.finals.contains(&i) { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{i} [label=\"{}\", shape={shape}];", escape(n));
        }
        for &i in &self.initial {
            let _ = writeln!(s, "  start{i} [shape=point];\n  start{i} -> s{i};");
        }
        for (from, edges) in self.delta.iter().enumerate() {
            for &(l, to) in edges {
                let label = l.map_or("ε", |l| self.alphabet.name(l));
                let _ = writeln!(s, "  s{from} -> s{to} [label=\"{}\"];", escape(label));
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{word, words_up_to};

    fn alpha() -> Alphabet {
        Alphabet::from_names(["a", "b", "#"])
    }

    /// a*#a*
    fn a_hash_a() -> Nfa {
        let al = alpha();
        let a = Nfa::letter_class(&al, &word("a")).unwrap().star();
        let h = Nfa::letter_class(&al, &word("#")).unwrap();
        a.concat(&h).unwrap().concat(&a).unwrap()
    }

    #[test]
    fn a_star_hash_a_star() {
        let n = a_hash_a();
        assert!(n.accepts(&word("a#a")).unwrap());
        assert!(n.accepts(&word("#")).unwrap());
        assert!(!n.accepts(&word("ab")).unwrap());
        assert!(n.accepts(&word("ac")).is_err());
    }

    #[test]
    fn combinators_match_set_semantics() {
        let al = alpha();
        let ab = Nfa::word_set(&al, &[word("ab"), word("b")]).unwrap();
        let hash_star = Nfa::letter_class(&al, &word("#a")).unwrap().star();
        let cat = ab.concat(&hash_star).unwrap();
        let det = cat.determinize();
        assert!(det.is_deterministic());
        let in_ab = |w: &[String]| w == word("ab") || w == word("b");
        let in_star = |w: &[String]| w.iter().all(|l| l == "#" || l == "a");
        let in_cat = |w: &[String]| (0..=w.len()).any(|k| in_ab(&w[..k]) && in_star(&w[k..]));
        for w in words_up_to(al.names(), 6) {
            assert_eq!(cat.accepts(&w).unwrap(), in_cat(&w), "concat {w:?}");
            assert_eq!(det.accepts(&w).unwrap(), in_cat(&w), "determinize {w:?}");
        }
    }

    #[test]
    fn dot_has_one_node_per_state() {
        let n = a_hash_a();
        let dot = n.to_dot();
        assert_eq!(dot.matches("shape=circle").count() + dot.matches("shape=doublecircle").count(), n.num_states());
    }
}
