use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter, SEP};
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::{AcceptMode, LanguageRep, Npda, BOTTOM};

use super::WordProblemObject;

/// A finite semigroup given by its Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates the table shape and associativity; detects an identity.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a semigroup needs at least one element"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::input("Cayley table has the wrong shape or out-of-range entries"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::input(format!(
                            "table is not associative: ({0}{1}){2} != {0}({1}{2}) for {0}, {1}, {2}",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
        Ok(FiniteSemigroup { names, table, identity })
    }

    /// Parses a table whose entries are element names.
    pub fn from_named_table(names: Vec<String>, table: &[Vec<String>]) -> Result<Self> {
        let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let t = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| idx.get(x.as_str()).copied().ok_or_else(|| Error::input(format!("unknown element `{x}` in table"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, t)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    /// Product of a word of element names; `None` for the empty word.
    pub fn eval(&self, w: &[Letter]) -> Result<Option<usize>> {
        let mut acc = None;
        for l in w {
            let x = self.index(l).ok_or_else(|| Error::input(format!("`{l}` is not an element")))?;
            acc = Some(acc.map_or(x, |a| self.mul(a, x)));
        }
        Ok(acc)
    }

    /// Whether `S² = S`.
    pub fn is_decomposable(&self) -> bool {
        let mut hit = vec![false; self.len()];
        for row in &self.table {
            for &z in row {
                hit[z] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Elements of the subsemigroup generated by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.len()];
        let mut stack: Vec<usize> = gens.to_vec();
        for &g in gens {
            inside[g] = true;
        }
        while let Some(x) = stack.pop() {
            for &g in gens {
                for z in [self.mul(x, g), self.mul(g, x)] {
                    if !inside[z] {
                        inside[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        inside
    }

    fn named(names: &[&str], table: Vec<Vec<usize>>) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), table).expect("fixture table")
    }

    /// The cyclic group {e, a}.
    pub fn c2() -> Self {
        Self::named(&["e", "a"], vec![vec![0, 1], vec![1, 0]])
    }

    /// The right-zero semigroup {r, s}: xy = y.
    pub fn right_zero() -> Self {
        Self::named(&["r", "s"], vec![vec![0, 1], vec![0, 1]])
    }

    /// The null semigroup {0, n}: every product is 0.
    pub fn null2() -> Self {
        Self::named(&["0", "n"], vec![vec![0, 0], vec![0, 0]])
    }

    pub fn trivial() -> Self {
        Self::named(&["e"], vec![vec![0]])
    }

    /// Whether two products (`None` for the empty word) are equal, reading
    /// the empty word as the identity in monoid mode.
    pub(crate) fn same(&self, a: Option<usize>, b: Option<usize>, monoid: bool) -> bool {
        match (a, b) {
            (Some(x), Some(y)) => x == y,
            (None, None) => monoid,
            (None, Some(x)) | (Some(x), None) => monoid && self.identity == Some(x),
        }
    }
}

/// The word problem of a finite semigroup as a finite automaton run on the
/// bottom of the stack: the product of `u` before `#`, then the product of
/// `v` accumulated right to left from `v^rev`.
pub fn finite_word_problem(t: &FiniteSemigroup, gens: &[Letter], monoid: bool) -> Result<WordProblemObject> {
    let g: Vec<usize> = gens
        .iter()
        .map(|l| t.index(l).ok_or_else(|| Error::input(format!("generator `{l}` is not an element"))))
        .collect::<Result<_>>()?;
    let inside = t.generated_by(&g);
    if let Some(x) = inside.iter().position(|&b| !b) {
        if !(monoid && t.identity() == Some(x) && inside.iter().filter(|&&b| !b).count() == 1) {
            return Err(Error::input(format!("generators do not generate the element `{}`", t.name(x))));
        }
    }
    let alphabet = Alphabet::from_names(gens.iter().cloned());
    let mut full = alphabet.clone();
    full.insert(SEP);
    let n = t.len();
    let opt = |x: Option<usize>| x.map_or("1".to_string(), |x| t.name(x).to_string());
    // states: pre(None), pre(Some x), post(pu, sv) indexed on the fly
    let mut m = Npda::new(full, "⊥", "pre.1", AcceptMode::FinalStateAndBareBottom);
    let pre: Vec<usize> = (0..n).map(|x| m.add_state(format!("pre.{}", t.name(x)))).collect();
    let pre_of = |p: Option<usize>| p.map_or(0, |x| pre[x]);
    let mut post = HashMap::new();
    for pu in std::iter::once(None).chain((0..n).map(Some)) {
        for sv in std::iter::once(None).chain((0..n).map(Some)) {
            let s = m.add_state(format!("post.{}.{}", opt(pu), opt(sv)));
            if pu.is_some() || monoid {
                post.insert((pu, sv), s);
            }
            if t.same(pu, sv, monoid) && (monoid || (pu.is_some() && sv.is_some())) {
                m.set_final(s);
            }
        }
    }
    for pu in std::iter::once(None).chain((0..n).map(Some)) {
        for (k, l) in gens.iter().enumerate() {
            let next = Some(pu.map_or(g[k], |p| t.mul(p, g[k])));
            m.add_transition(pre_of(pu), Some(l), BOTTOM, pre_of(next), &[BOTTOM])?;
        }
        if let Some(&to) = post.get(&(pu, None)) {
            m.add_transition(pre_of(pu), Some(SEP), BOTTOM, to, &[BOTTOM])?;
        }
        for sv in std::iter::once(None).chain((0..n).map(Some)) {
            let Some(&from) = post.get(&(pu, sv)) else { continue };
            for (k, l) in gens.iter().enumerate() {
                let next = Some(sv.map_or(g[k], |s| t.mul(g[k], s)));
                m.add_transition(from, Some(l), BOTTOM, post[&(pu, next)], &[BOTTOM])?;
            }
        }
    }
    m.set_deterministic_hint(true);
    let tt = t.clone();
    let oracle = EqualityOracle::new(alphabet.clone(), "finite table product", move |u, v| {
        Ok(tt.same(tt.eval(u)?, tt.eval(v)?, monoid))
    });
    WordProblemObject::new(alphabet, monoid, Some(LanguageRep::Pda(m)), oracle)
}
