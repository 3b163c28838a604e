use std::collections::HashMap;

use super::Nfa;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// A finite meet-semilattice given by its meet table.
#[derive(Clone, Debug)]
pub struct SemilatticeOrder {
    names: Vec<String>,
    meet: Vec<Vec<usize>>,
}

impl SemilatticeOrder {
    /// Validates associativity, commutativity and idempotence exhaustively.
    pub fn new(names: Vec<String>, meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a semilattice needs at least one element"));
        }
        if meet.len() != n || meet.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::input("meet table has the wrong shape or out-of-range entries"));
        }
        for a in 0..n {
            if meet[a][a] != a {
                return Err(Error::hypothesis(format!("meet is not idempotent at `{}`", names[a])));
            }
            for b in 0..n {
                if meet[a][b] != meet[b][a] {
                    return Err(Error::hypothesis(format!(
                        "meet is not commutative at `{}`, `{}`",
                        names[a], names[b]
                    )));
                }
                for c in 0..n {
                    if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                        return Err(Error::hypothesis(format!(
                            "meet is not associative at `{}`, `{}`, `{}`",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(SemilatticeOrder { names, meet })
    }

    /// Builds the order from (upper, lower) covering pairs, deriving meets
    /// as greatest lower bounds. Fails if some pair has no greatest lower bound.
    pub fn from_relations(names: Vec<String>, above: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(hi, lo) in above {
            if hi >= n || lo >= n {
                return Err(Error::input("order relation references an unknown element"));
            }
            leq[lo][hi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::hypothesis("order relation has a cycle"));
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                let glb = lower.iter().copied().find(|&g| lower.iter().all(|&c| leq[c][g]));
                meet[a][b] = glb.ok_or_else(|| {
                    Error::hypothesis(format!("`{}` and `{}` have no greatest lower bound", names[a], names[b]))
                })?;
            }
        }
        Self::new(names, meet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    /// `a ≥ b` in the induced order.
    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == b
    }

    /// Meet of a nonempty sequence, `None` for the empty one.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> Option<usize> {
        xs.into_iter().reduce(|a, b| self.meet[a][b])
    }
}

/// The automaton recognising words whose letters have meet of origins equal
/// to `target`. States are the elements plus an adjoined top as start.
pub fn content_automaton(
    order: &SemilatticeOrder,
    alphabet: &Alphabet,
    origin: &HashMap<Letter, usize>,
    target: usize,
) -> Result<Nfa> {
    let mut nfa = Nfa::new(alphabet.clone());
    for a in 0..order.len() {
        nfa.add_state(order.name(a));
    }
    let top = nfa.add_state("⊤");
    nfa.set_initial(top);
    nfa.set_final(target);
    for l in alphabet.iter() {
        let g = *origin
            .get(l)
            .ok_or_else(|| Error::input(format!("letter `{l}` has no origin vertex")))?;
        nfa.add_transition(top, Some(l), g)?;
        for b in 0..order.len() {
            nfa.add_transition(b, Some(l), order.meet(b, g))?;
        }
    }
    Ok(nfa)
}
