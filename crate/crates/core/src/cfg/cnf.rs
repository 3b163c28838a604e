use std::collections::{HashMap, HashSet};

use super::{Cfg, Sym};

/// A grammar in Chomsky normal form, with an optional ε-production on the
/// start symbol, ready for CYK.
#[derive(Clone, Debug)]
pub struct Cnf {
    num_nt: usize,
    start: usize,
    start_eps: bool,
    /// terminal -> nonterminals with `A -> a`
    by_terminal: Vec<Vec<usize>>,
    /// B -> list of (C, A) for `A -> B C`
    by_left: Vec<Vec<(usize, usize)>>,
}

impl Cnf {
    pub(crate) fn from_cfg(g: &Cfg) -> Cnf {
        let nt = g.num_nonterminals();
        // START: fresh start symbol never on a right-hand side
        let start = nt;
        let mut next = nt + 1;
        let mut rules: Vec<(usize, Vec<Sym>)> = vec![(start, vec![Sym::N(g.start())])];
        // TERM: terminals inside long bodies get their own nonterminal
        let mut term_nt: HashMap<usize, usize> = HashMap::new();
        let mut term_rules = Vec::new();
        for (lhs, body) in g.productions() {
            if body.len() < 2 {
                rules.push((*lhs, body.clone()));
                continue;
            }
            let body = body
                .iter()
                .map(|s| match *s {
                    Sym::T(t) => Sym::N(*term_nt.entry(t).or_insert_with(|| {
                        let n = next;
                        next += 1;
                        term_rules.push((n, vec![Sym::T(t)]));
                        n
                    })),
                    s => s,
                })
                .collect();
            rules.push((*lhs, body));
        }
        rules.extend(term_rules);
        // BIN: split long bodies
        let mut bin: Vec<(usize, Vec<Sym>)> = Vec::with_capacity(rules.len());
        for (lhs, body) in rules {
            if body.len() <= 2 {
                bin.push((lhs, body));
                continue;
            }
            let mut cur = lhs;
            for s in body.iter().take(body.len() - 2) {
                let n = next;
                next += 1;
                bin.push((cur, vec![*s, Sym::N(n)]));
                cur = n;
            }
            bin.push((cur, body[body.len() - 2..].to_vec()));
        }
        // DEL: nullable nonterminals, then expand optional occurrences
        let mut nullable = vec![false; next];
        loop {
            let mut changed = false;
            for (lhs, body) in &bin {
                if !nullable[*lhs] && body.iter().all(|s| matches!(*s, Sym::N(n) if nullable[n])) {
                    nullable[*lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut del: HashSet<(usize, Vec<Sym>)> = HashSet::new();
        for (lhs, body) in &bin {
            let opt: Vec<bool> = body.iter().map(|s| matches!(*s, Sym::N(n) if nullable[n])).collect();
            for mask in 0..(1u32 << body.len()) {
                if (0..body.len()).any(|i| mask & (1 << i) != 0 && !opt[i]) {
                    continue;
                }
                let b: Vec<Sym> = (0..body.len()).filter(|i| mask & (1 << i) == 0).map(|i| body[i]).collect();
                if b.is_empty() || b == [Sym::N(*lhs)] {
                    continue;
                }
                del.insert((*lhs, b));
            }
        }
        let start_eps = nullable[start];
        // UNIT: close under A =>* B, then copy B's non-unit bodies to A
        let mut units: Vec<Vec<usize>> = vec![Vec::new(); next];
        let mut by_terminal: Vec<HashSet<usize>> = vec![HashSet::new(); g.terminals().len()];
        let mut bins: Vec<(usize, usize, usize)> = Vec::new();
        for (lhs, body) in &del {
            match body.as_slice() {
                [Sym::N(b)] => units[*lhs].push(*b),
                [Sym::T(t)] => {
                    by_terminal[*t].insert(*lhs);
                }
                [Sym::N(b), Sym::N(c)] => bins.push((*lhs, *b, *c)),
                _ => unreachable!("body shape after BIN and TERM"),
            }
        }
        // reverse unit graph: who reaches B
        let mut rev_units: Vec<Vec<usize>> = vec![Vec::new(); next];
        for (a, bs) in units.iter().enumerate() {
            for &b in bs {
                rev_units[b].push(a);
            }
        }
        let reaching = |b: usize| {
            let mut seen = HashSet::from([b]);
            let mut st = vec![b];
            while let Some(x) = st.pop() {
                for &a in &rev_units[x] {
                    if seen.insert(a) {
                        st.push(a);
                    }
                }
            }
            seen
        };
        let mut cache: HashMap<usize, HashSet<usize>> = HashMap::new();
        let mut final_bins: HashSet<(usize, usize, usize)> = HashSet::new();
        for (a, b, c) in bins {
            for &x in cache.entry(a).or_insert_with(|| reaching(a)).iter() {
                final_bins.insert((x, b, c));
            }
        }
        let mut final_terms: Vec<Vec<usize>> = Vec::with_capacity(by_terminal.len());
        for set in by_terminal {
            let mut all = HashSet::new();
            for a in set {
                all.extend(cache.entry(a).or_insert_with(|| reaching(a)).iter().copied());
            }
            let mut v: Vec<usize> = all.into_iter().collect();
            v.sort_unstable();
            final_terms.push(v);
        }
        let mut by_left = vec![Vec::new(); next];
        for (a, b, c) in final_bins {
            by_left[b].push((c, a));
        }
        Cnf { num_nt: next, start, start_eps, by_terminal: final_terms, by_left }
    }

    pub fn num_nonterminals(&self) -> usize {
        self.num_nt
    }

    pub fn num_binary_rules(&self) -> usize {
        self.by_left.iter().map(Vec::len).sum()
    }

    /// CYK over a dense table of nonterminal bitsets indexed by (start, span).
    pub fn member(&self, w: &[usize]) -> bool {
        let n = w.len();
        if n == 0 {
            return self.start_eps;
        }
        let words = self.num_nt.div_ceil(64);
        // cell (i, len) at ((len-1) * n + i) * words
        let mut table = vec![0u64; n * n * words];
        let idx = |i: usize, len: usize| ((len - 1) * n + i) * words;
        for (i, &t) in w.iter().enumerate() {
            let base = idx(i, 1);
            for &a in self.by_terminal.get(t).map(Vec::as_slice).unwrap_or(&[]) {
                table[base + a / 64] |= 1 << (a % 64);
            }
        }
        let mut acc = vec![0u64; words];
        for len in 2..=n {
            for i in 0..=n - len {
                acc.iter_mut().for_each(|x| *x = 0);
                for k in 1..len {
                    let l = idx(i, k);
                    let r = idx(i + k, len - k);
                    for wi in 0..words {
                        let mut bits = table[l + wi];
                        while bits != 0 {
                            let b = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &(c, a) in &self.by_left[b] {
                                if table[r + c / 64] & (1 << (c % 64)) != 0 {
                                    acc[a / 64] |= 1 << (a % 64);
                                }
                            }
                        }
                    }
                }
                let base = idx(i, len);
                table[base..base + words].copy_from_slice(&acc);
            }
        }
        table[idx(0, n) + self.start / 64] & (1 << (self.start % 64)) != 0
    }
}
