//! Direct products with a finite decomposable semigroup, and recovery of a
//! direct factor.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter, Word, SEP};
use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::oracle::{pair_letter, pair_oracle, split_pair, EqualityOracle};
use crate::pda::{AcceptMode, CfgRep, LanguageRep, Npda, Transition, BOTTOM};
use crate::semigroups::{FiniteSemigroup, WordProblemObject};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    Pre(usize, Option<usize>),
    Post(usize, Option<usize>, Option<usize>),
}

fn table_oracle(t: &FiniteSemigroup, monoid: bool) -> EqualityOracle {
    let tt = t.clone();
    EqualityOracle::new(Alphabet::from_names(t.names().iter().cloned()), "finite table product", move |u, v| {
        Ok(tt.same(tt.eval(u)?, tt.eval(v)?, monoid))
    })
}

/// `S × T` over the generators `A × T`. The machine for `S` runs on first
/// coordinates while the finite control folds the product of the second
/// coordinates of `u`, then of `v` from its reversal.
pub fn direct_product_finite(s: &WordProblemObject, t: &FiniteSemigroup) -> Result<WordProblemObject> {
    if !t.is_decomposable() {
        return Err(Error::hypothesis("the finite factor is not decomposable (T² ≠ T)"));
    }
    let p = s.require_pda()?.normalize();
    let monoid = s.is_monoid() && t.identity().is_some();
    let mut alphabet = Alphabet::new();
    let mut letter_of: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut full_names: Vec<String> = Vec::new();
    for a in s.alphabet().iter() {
        for x in 0..t.len() {
            full_names.push(pair_letter(a, t.name(x)));
        }
    }
    for n in &full_names {
        alphabet.insert(n.clone());
    }
    let mut full = alphabet.clone();
    let sep = full.insert(SEP);
    for a in s.alphabet().iter() {
        let pa = p.input().get(a).expect("generator in machine alphabet");
        for x in 0..t.len() {
            let l = full.get(&pair_letter(a, t.name(x))).unwrap();
            letter_of.entry(pa).or_default().push((l, x));
        }
    }
    let psep = p.input().get(SEP).expect("separator in machine alphabet");
    let mut m = Npda::new(full, p.stack_alphabet().name(BOTTOM), "", AcceptMode::FinalStateAndBareBottom);
    for k in 1..p.stack_alphabet().len() {
        m.stack_symbol(p.stack_alphabet().name(k));
    }
    let opt = |x: Option<usize>| x.map_or("1".to_string(), |x| t.name(x).to_string());
    let name = |ph: &Phase| match *ph {
        Phase::Pre(q, a) => format!("({},{})", p.state_name(q), opt(a)),
        Phase::Post(q, a, b) => format!("({},{},{})", p.state_name(q), opt(a), opt(b)),
    };
    let mut by_src: Vec<Vec<&Transition>> = vec![Vec::new(); p.num_states()];
    for tr in p.transitions() {
        by_src[tr.from].push(tr);
    }
    let mut ids: HashMap<Phase, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = Phase::Pre(p.initial(), None);
    ids.insert(start, 0);
    m.rename_state(0, name(&start));
    queue.push_back(start);
    let mut intern = |m: &mut Npda, queue: &mut VecDeque<Phase>, ph: Phase| {
        *ids.entry(ph).or_insert_with(|| {
            queue.push_back(ph);
            m.add_state(name(&ph))
        })
    };
    while let Some(ph) = queue.pop_front() {
        let id = intern(&mut m, &mut queue, ph);
        let q = match ph {
            Phase::Pre(q, _) | Phase::Post(q, _, _) => q,
        };
        if let Phase::Post(_, pu, sv) = ph {
            if p.is_final(q) && t.same(pu, sv, monoid) && (monoid || (pu.is_some() && sv.is_some())) {
                m.set_final(id);
            }
        }
        for tr in &by_src[q] {
            let mut add = |m: &mut Npda, queue: &mut VecDeque<Phase>, input: Option<usize>, next: Phase| {
                let to = intern(m, queue, next);
                m.push_transition(Transition { from: id, input, pop: tr.pop, to, push: tr.push.clone() });
            };
            match (tr.input, ph) {
                (None, Phase::Pre(_, a)) => add(&mut m, &mut queue, None, Phase::Pre(tr.to, a)),
                (None, Phase::Post(_, a, b)) => add(&mut m, &mut queue, None, Phase::Post(tr.to, a, b)),
                (Some(c), Phase::Pre(_, a)) if c == psep => add(&mut m, &mut queue, Some(sep), Phase::Post(tr.to, a, None)),
                (Some(c), Phase::Pre(_, a)) => {
                    for &(l, x) in letter_of.get(&c).into_iter().flatten() {
                        let a2 = Some(a.map_or(x, |a| t.mul(a, x)));
                        add(&mut m, &mut queue, Some(l), Phase::Pre(tr.to, a2));
                    }
                }
                (Some(c), Phase::Post(_, a, b)) if c != psep => {
                    for &(l, x) in letter_of.get(&c).into_iter().flatten() {
                        let b2 = Some(b.map_or(x, |b| t.mul(x, b)));
                        add(&mut m, &mut queue, Some(l), Phase::Post(tr.to, a, b2));
                    }
                }
                _ => {}
            }
        }
    }
    let det = s.deterministic_hint() && m.is_deterministic();
    m.set_deterministic_hint(det);
    let oracle = pair_oracle(s.oracle(), &table_oracle(t, monoid), alphabet.clone())?;
    WordProblemObject::new(alphabet, monoid, Some(LanguageRep::Pda(m)), oracle)
}

/// An element `c` of `T` and a word `w` of labels with `c·w = c`, found on a
/// circuit of the factorization digraph.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub generators: Vec<usize>,
    pub c: usize,
    /// labels around the circuit, in the order they multiply onto `c`
    pub labels: Vec<usize>,
    /// the product of `labels`
    pub w: usize,
}

/// Minimal generating subset of `gens` (greedy), its factorization digraph
/// `c_i = c_j u_i`, and a circuit in it.
pub fn factor_circuit(t: &FiniteSemigroup, gens: &[usize]) -> Result<Circuit> {
    let all = |g: &[usize]| t.generated_by(g).into_iter().all(|b| b);
    if !all(gens) {
        return Err(Error::input("second coordinates do not generate the finite factor"));
    }
    let mut c: Vec<usize> = gens.to_vec();
    c.sort_unstable();
    c.dedup();
    let mut k = 0;
    while k < c.len() {
        let mut rest = c.clone();
        rest.remove(k);
        if !rest.is_empty() && all(&rest) {
            c = rest;
        } else {
            k += 1;
        }
    }
    // zeta(i) and u_i with c_i = c_zeta(i) u_i
    let mut edge = Vec::with_capacity(c.len());
    for &ci in &c {
        let found = c
            .iter()
            .enumerate()
            .find_map(|(j, &cj)| (0..t.len()).find(|&u| t.mul(cj, u) == ci).map(|u| (j, u)))
            .ok_or_else(|| Error::hypothesis(format!("`{}` has no factorization; T is not decomposable", t.name(ci))))?;
        edge.push(found);
    }
    let mut seen = vec![false; c.len()];
    let mut v = 0;
    while !seen[v] {
        seen[v] = true;
        v = edge[v].0;
    }
    let start = v;
    let mut labels_fwd = Vec::new();
    loop {
        labels_fwd.push(edge[v].1);
        v = edge[v].0;
        if v == start {
            break;
        }
    }
    let labels: Vec<usize> = labels_fwd.into_iter().rev().collect();
    let w = labels.iter().copied().reduce(|a, b| t.mul(a, b)).ok_or_else(|| Error::internal("empty circuit"))?;
    if t.mul(c[start], w) != c[start] {
        return Err(Error::internal("circuit product does not fix its vertex"));
    }
    Ok(Circuit { generators: c.clone(), c: c[start], labels, w })
}

/// Recovers `WP(S, B)` from a word-problem object for `S × T` over pair
/// letters: intersect with `(B×c)(B×w)*#(B×w)*(B×c)`, convert to a grammar,
/// erase second coordinates.
pub fn direct_factor(st: &WordProblemObject, t: &FiniteSemigroup, gens_b: &[Letter]) -> Result<(WordProblemObject, Circuit)> {
    let rec = st.require_pda()?;
    let mut seconds = Vec::new();
    for l in st.alphabet().iter() {
        let (_, y) = split_pair(l)?;
        let x = t.index(&y).ok_or_else(|| Error::input(format!("`{y}` in `{l}` is not an element of the finite factor")))?;
        seconds.push(x);
    }
    let circ = factor_circuit(t, &seconds)?;
    let (cn, wn) = (t.name(circ.c).to_string(), t.name(circ.w).to_string());
    if gens_b.is_empty() {
        return Err(Error::input("the factor needs at least one generator"));
    }
    let full = st.full_alphabet();
    let mut with_c = Vec::new();
    let mut with_w = Vec::new();
    for b in gens_b {
        for (y, out) in [(&cn, &mut with_c), (&wn, &mut with_w)] {
            let l = pair_letter(b, y);
            if !full.contains(&l) {
                return Err(Error::input(format!("the product alphabet lacks `{l}`")));
            }
            out.push(l);
        }
    }
    let lc = Nfa::letter_class(&full, &with_c)?;
    let lw = Nfa::letter_class(&full, &with_w)?.star();
    let hash = Nfa::letter_class(&full, &[SEP.to_string()])?;
    let r = lc.concat(&lw)?.concat(&hash)?.concat(&lw)?.concat(&lc)?;
    let l = rec.intersect_regular(&r)?;
    let g = l.to_cfg();
    let alphabet = Alphabet::from_names(gens_b.iter().cloned());
    let mut target = alphabet.clone();
    target.insert(SEP);
    let mut pi: HashMap<Letter, Word> = HashMap::new();
    for x in full.iter() {
        let img = if x == SEP {
            vec![SEP.to_string()]
        } else {
            let (b, _) = split_pair(x)?;
            if alphabet.contains(&b) {
                vec![b]
            } else {
                vec![]
            }
        };
        pi.insert(x.to_string(), img);
    }
    let image = g.apply_homomorphism(&target, &pi)?.prune();
    let st_oracle = st.oracle().clone();
    let lift = move |u: &[Letter]| -> Word {
        u.iter()
            .enumerate()
            .map(|(i, b)| pair_letter(b, if i == 0 { &cn } else { &wn }))
            .collect()
    };
    let desc = format!("projection of ({})", st_oracle.description());
    let oracle = EqualityOracle::new(alphabet.clone(), desc, move |u, v| st_oracle.equal(&lift(u), &lift(v)));
    let w = WordProblemObject::new(alphabet, false, Some(LanguageRep::Cfg(CfgRep::new(image))), oracle)?;
    Ok((w, circ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{letters, word};
    use crate::oracle::cross_check;
    use crate::semigroups::free_monoid;

    #[test]
    fn product_examples() {
        let fm = free_monoid(1, false).unwrap();
        let w = direct_product_finite(&fm, &FiniteSemigroup::right_zero()).unwrap();
        assert!(w.accepts_pair(&letters(&["(a,r)", "(a,s)"]), &letters(&["(a,s)", "(a,s)"])).unwrap());
        assert!(!w.accepts_pair(&letters(&["(a,r)"]), &letters(&["(a,s)"])).unwrap());
        let Some(LanguageRep::Pda(p)) = w.recognizer() else { panic!() };
        assert!(p.is_deterministic());
        let r = cross_check(&w, 4, 4, 1).unwrap();
        assert!(r.ok(), "{r}");
        assert!(matches!(direct_product_finite(&fm, &FiniteSemigroup::null2()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn monoid_product() {
        let fm = free_monoid(1, true).unwrap();
        let w = direct_product_finite(&fm, &FiniteSemigroup::c2()).unwrap();
        assert!(w.is_monoid());
        let r = cross_check(&w, 3, 3, 1).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn circuit_on_c2() {
        let t = FiniteSemigroup::c2();
        let c = factor_circuit(&t, &[0, 1]).unwrap();
        assert_eq!(c.generators, vec![1]);
        assert_eq!(c.c, 1);
        assert_eq!(t.mul(c.c, c.w), c.c);
        assert_eq!(c.w, 0);
    }

    #[test]
    fn factor_recovers_free_monoid() {
        let fm = free_monoid(1, false).unwrap();
        let t = FiniteSemigroup::c2();
        let st = direct_product_finite(&fm, &t).unwrap();
        let (w, circ) = direct_factor(&st, &t, &word("a")).unwrap();
        assert_eq!(t.mul(circ.c, circ.w), circ.c);
        assert!(w.accepts_pair(&word("a"), &word("a")).unwrap());
        assert!(!w.accepts_pair(&word("aa"), &word("a")).unwrap());
        let r = cross_check(&w, 4, 4, 1).unwrap();
        assert!(r.ok(), "{r}");
    }
}
