use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::{AcceptMode, Npda, Transition, BOTTOM};
use crate::automata::{Gsm, Nfa};
use crate::error::{Error, Result};

/// Reachable-state builder for product constructions.
struct StateSpace<K> {
    ids: HashMap<K, usize>,
    queue: VecDeque<K>,
}

impl<K: Hash + Eq + Clone> StateSpace<K> {
    fn new() -> Self {
        StateSpace { ids: HashMap::new(), queue: VecDeque::new() }
    }

    fn id(&mut self, m: &mut Npda, key: K, name: impl FnOnce() -> String) -> usize {
        if let Some(&i) = self.ids.get(&key) {
            return i;
        }
        let i = m.add_state(name());
        self.ids.insert(key.clone(), i);
        self.queue.push_back(key);
        i
    }
}

fn by_source(p: &Npda) -> Vec<Vec<&Transition>> {
    let mut v = vec![Vec::new(); p.num_states()];
    for t in &p.transitions {
        v[t.from].push(t);
    }
    v
}

/// Product with the subset automaton of `r`.
pub(super) fn intersect_regular(p: &Npda, r: &Nfa) -> Result<Npda> {
    if !p.input.same_set(r.alphabet()) {
        return Err(Error::input(format!(
            "intersection needs a shared alphabet: {:?} vs {:?}",
            p.input,
            r.alphabet()
        )));
    }
    let d = r.with_alphabet(&p.input)?.determinize();
    let p = p.normalize();
    let mut delta: HashMap<(usize, usize), usize> = HashMap::new();
    for s in 0..d.num_states() {
        for &(l, t) in d.edges(s) {
            if let Some(l) = l {
                delta.insert((s, l), t);
            }
        }
    }
    let d0 = *d.initial_states().iter().next().expect("subset automaton has a start state");
    let mut m = Npda::new(p.input.clone(), p.stack.name(BOTTOM), "", AcceptMode::FinalStateAndBareBottom);
    m.stack = p.stack.clone();
    m.state_names.clear();
    m.finals.clear();
    let mut space = StateSpace::new();
    let name = |q: usize, s: usize| format!("({},{})", p.state_names[q], d.state_name(s));
    space.id(&mut m, (p.initial, d0), || name(p.initial, d0));
    let src = by_source(&p);
    while let Some((q, s)) = space.queue.pop_front() {
        let id = space.ids[&(q, s)];
        if p.finals[q] && d.is_final(s) {
            m.finals[id] = true;
        }
        for t in &src[q] {
            let s2 = match t.input {
                None => s,
                Some(a) => match delta.get(&(s, a)) {
                    Some(&s2) => s2,
                    None => continue,
                },
            };
            let to = space.id(&mut m, (t.to, s2), || name(t.to, s2));
            m.push_transition(Transition { from: id, input: t.input, pop: t.pop, to, push: t.push.clone() });
        }
    }
    let det = p.deterministic_hint && m.is_deterministic();
    m.set_deterministic_hint(det);
    Ok(m)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum GsmState {
    /// simulating `p` in state q while the gsm rests in state s
    Main(usize, usize),
    /// feeding output position i of gsm edge e
    Feed(usize, usize, usize),
    /// feeding position i of the terminal output of gsm state s
    Term(usize, usize, usize),
}

/// Machine for `{ w : g(w) defined and in L(p) }`. Each input letter is
/// combined with the first move of `p` on the first letter of its output;
/// the rest of the output is fed through ε-chains.
pub(super) fn inverse_gsm(p: &Npda, g: &Gsm) -> Result<Npda> {
    if !p.input.same_set(g.output()) {
        return Err(Error::input(format!(
            "gsm output alphabet {:?} differs from the machine's input alphabet {:?}",
            g.output(),
            p.input
        )));
    }
    let p = p.normalize();
    let out_map: Vec<usize> = g.output().iter().map(|l| p.input.get(l).unwrap()).collect();
    let edges: Vec<(usize, usize, usize, Vec<usize>)> = g
        .transitions()
        .map(|(s, a, s2, out)| (s, a, s2, out.iter().map(|&o| out_map[o]).collect()))
        .collect();
    let mut edges_from: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, e) in edges.iter().enumerate() {
        edges_from.entry(e.0).or_default().push(k);
    }
    let terminal: Vec<Vec<usize>> = (0..g.num_states())
        .map(|s| g.terminal_output(s).iter().map(|&o| out_map[o]).collect())
        .collect();

    let mut m = Npda::new(g.input().clone(), p.stack.name(BOTTOM), "", AcceptMode::FinalStateAndBareBottom);
    m.stack = p.stack.clone();
    m.state_names.clear();
    m.finals.clear();
    let src = by_source(&p);
    let name = |k: &GsmState| match *k {
        GsmState::Main(q, s) => format!("({},{})", p.state_names[q], g.state_name(s)),
        GsmState::Feed(q, e, i) => format!("({},edge{e}:{i})", p.state_names[q]),
        GsmState::Term(q, s, i) => format!("({},{}:end{i})", p.state_names[q], g.state_name(s)),
    };
    // the state reached after `p` has consumed output position i of a word of length len
    let after = |i: usize, len: usize, done: GsmState, mid: GsmState| if i == len { done } else { mid };
    let mut space = StateSpace::new();
    let start = GsmState::Main(p.initial, g.initial());
    space.id(&mut m, start.clone(), || name(&start));
    let num_stack = p.stack.len();
    while let Some(key) = space.queue.pop_front() {
        let id = space.ids[&key];
        let q = match key {
            GsmState::Main(q, _) | GsmState::Feed(q, _, _) | GsmState::Term(q, _, _) => q,
        };
        // ε-moves of p are available everywhere, leaving the gsm component alone
        for t in src[q].iter().filter(|t| t.input.is_none()) {
            let k2 = match key {
                GsmState::Main(_, s) => GsmState::Main(t.to, s),
                GsmState::Feed(_, e, i) => GsmState::Feed(t.to, e, i),
                GsmState::Term(_, s, i) => GsmState::Term(t.to, s, i),
            };
            let to = space.id(&mut m, k2.clone(), || name(&k2));
            m.push_transition(Transition { from: id, input: None, pop: t.pop, to, push: t.push.clone() });
        }
        match key {
            GsmState::Main(_, s) => {
                if g.is_final(s) {
                    if terminal[s].is_empty() {
                        m.finals[id] = p.finals[q];
                    } else {
                        for t in src[q].iter().filter(|t| t.input == Some(terminal[s][0])) {
                            let k2 = GsmState::Term(t.to, s, 1);
                            let to = space.id(&mut m, k2.clone(), || name(&k2));
                            m.push_transition(Transition { from: id, input: None, pop: t.pop, to, push: t.push.clone() });
                        }
                    }
                }
                for &e in edges_from.get(&s).into_iter().flatten() {
                    let (_, a, s2, ref out) = edges[e];
                    if out.is_empty() {
                        let k2 = GsmState::Main(q, s2);
                        let to = space.id(&mut m, k2.clone(), || name(&k2));
                        for y in 0..num_stack {
                            m.push_transition(Transition { from: id, input: Some(a), pop: y, to, push: vec![y] });
                        }
                        continue;
                    }
                    for t in src[q].iter().filter(|t| t.input == Some(out[0])) {
                        let k2 = after(1, out.len(), GsmState::Main(t.to, s2), GsmState::Feed(t.to, e, 1));
                        let to = space.id(&mut m, k2.clone(), || name(&k2));
                        m.push_transition(Transition { from: id, input: Some(a), pop: t.pop, to, push: t.push.clone() });
                    }
                }
            }
            GsmState::Feed(_, e, i) => {
                let (_, _, s2, ref out) = edges[e];
                for t in src[q].iter().filter(|t| t.input == Some(out[i])) {
                    let k2 = after(i + 1, out.len(), GsmState::Main(t.to, s2), GsmState::Feed(t.to, e, i + 1));
                    let to = space.id(&mut m, k2.clone(), || name(&k2));
                    m.push_transition(Transition { from: id, input: None, pop: t.pop, to, push: t.push.clone() });
                }
            }
            GsmState::Term(_, s, i) => {
                if i == terminal[s].len() {
                    m.finals[id] = p.finals[q];
                    continue;
                }
                for t in src[q].iter().filter(|t| t.input == Some(terminal[s][i])) {
                    let k2 = GsmState::Term(t.to, s, i + 1);
                    let to = space.id(&mut m, k2.clone(), || name(&k2));
                    m.push_transition(Transition { from: id, input: None, pop: t.pop, to, push: t.push.clone() });
                }
            }
        }
    }
    let det = p.deterministic_hint && m.is_deterministic();
    m.set_deterministic_hint(det);
    Ok(m)
}

/// Fresh start state branching by ε-moves into each machine.
pub(super) fn union(ps: &[Npda]) -> Result<Npda> {
    let first = ps.first().ok_or_else(|| Error::input("union of an empty list of machines"))?;
    let input = first.input.clone();
    let mut m = Npda::new(input.clone(), "⊥", "union.start", AcceptMode::FinalStateAndBareBottom);
    for (k, p) in ps.iter().enumerate() {
        if !p.input.same_set(&input) {
            return Err(Error::input("union needs machines over a shared alphabet"));
        }
        let p = p.normalize();
        let letters: Vec<usize> = p.input.iter().map(|l| input.get(l).unwrap()).collect();
        let syms: Vec<usize> = (0..p.stack.len())
            .map(|x| if x == BOTTOM { BOTTOM } else { m.stack_symbol(format!("m{k}.{}", p.stack.name(x))) })
            .collect();
        let base = m.num_states();
        for (q, n) in p.state_names.iter().enumerate() {
            let id = m.add_state(format!("m{k}.{n}"));
            if p.finals[q] {
                m.set_final(id);
            }
        }
        m.push_transition(Transition { from: 0, input: None, pop: BOTTOM, to: base + p.initial, push: vec![BOTTOM] });
        for t in &p.transitions {
            m.push_transition(Transition {
                from: base + t.from,
                input: t.input.map(|a| letters[a]),
                pop: syms[t.pop],
                to: base + t.to,
                push: t.push.iter().map(|&x| syms[x]).collect(),
            });
        }
    }
    Ok(m)
}
