//! Grammar from a normalized machine by the triple construction, limited
//! to triples that can actually be derived.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Npda, BOTTOM};
use crate::cfg::{Cfg, Sym};

pub(super) fn to_cfg(p: &Npda) -> Cfg {
    let m = p.normalize();
    let n = m.num_states();
    // saturate derivable triples (p, A, q) with A above the bottom
    let mut derived: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut by_start: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut by_end: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    let mut unit_rules: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut bin_first: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut bin_second: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    let ts = m.transitions();
    for (k, t) in ts.iter().enumerate() {
        if t.pop == BOTTOM {
            continue;
        }
        match t.push.as_slice() {
            [] => queue.push_back((t.from, t.pop, t.to)),
            [b] => unit_rules.entry((t.to, *b)).or_default().push(k),
            [b, c] => {
                bin_first.entry((t.to, *b)).or_default().push(k);
                bin_second.entry((t.to, *b, *c)).or_default().push(k);
            }
            _ => unreachable!(),
        }
    }
    while let Some(x) = queue.pop_front() {
        if !derived.insert(x) {
            continue;
        }
        let (r, b, s) = x;
        by_start.entry((r, b)).or_default().push(s);
        by_end.entry(s).or_default().push((r, b));
        for &k in unit_rules.get(&(r, b)).into_iter().flatten() {
            queue.push_back((ts[k].from, ts[k].pop, s));
        }
        // x as the first half of a binary move
        for &k in bin_first.get(&(r, b)).into_iter().flatten() {
            let c = ts[k].push[1];
            for &q in by_start.get(&(s, c)).into_iter().flatten() {
                queue.push_back((ts[k].from, ts[k].pop, q));
            }
        }
        // x as the second half: need a derived (r', b', r) with a move pushing [b', b]
        for &(r1, b1) in by_end.get(&r).into_iter().flatten() {
            for &k in bin_second.get(&(r1, b1, b)).into_iter().flatten() {
                queue.push_back((ts[k].from, ts[k].pop, s));
            }
        }
    }

    let mut g = Cfg::new(m.input().clone(), "S");
    let triple = |g: &mut Cfg, a: usize, x: usize, b: usize| {
        g.nonterminal(format!("[{},{},{}]", m.state_name(a), m.stack_alphabet().name(x), m.state_name(b)))
    };
    let reach = |g: &mut Cfg, q: usize| g.nonterminal(format!("R[{}]", m.state_name(q)));
    let lead = |a: Option<usize>| a.map(Sym::T).into_iter().collect::<Vec<_>>();
    let mut prods: Vec<(usize, Vec<Sym>)> = Vec::new();
    for t in ts {
        if t.pop == BOTTOM {
            let rp = reach(&mut g, t.from);
            match t.push.as_slice() {
                [_] => {
                    let rq = reach(&mut g, t.to);
                    let mut body = vec![Sym::N(rp)];
                    body.extend(lead(t.input));
                    prods.push((rq, body));
                }
                [x, _] => {
                    for &q in by_start.get(&(t.to, *x)).into_iter().flatten() {
                        let rq = reach(&mut g, q);
                        let mid = triple(&mut g, t.to, *x, q);
                        let mut body = vec![Sym::N(rp)];
                        body.extend(lead(t.input));
                        body.push(Sym::N(mid));
                        prods.push((rq, body));
                    }
                }
                _ => unreachable!(),
            }
            continue;
        }
        match t.push.as_slice() {
            [] => {
                let lhs = triple(&mut g, t.from, t.pop, t.to);
                prods.push((lhs, lead(t.input)));
            }
            [b] => {
                for &q in by_start.get(&(t.to, *b)).into_iter().flatten() {
                    let lhs = triple(&mut g, t.from, t.pop, q);
                    let mut body = lead(t.input);
                    body.push(Sym::N(triple(&mut g, t.to, *b, q)));
                    prods.push((lhs, body));
                }
            }
            [b, c] => {
                for &s in by_start.get(&(t.to, *b)).into_iter().flatten() {
                    for &q in by_start.get(&(s, *c)).into_iter().flatten() {
                        let lhs = triple(&mut g, t.from, t.pop, q);
                        let mut body = lead(t.input);
                        body.push(Sym::N(triple(&mut g, t.to, *b, s)));
                        body.push(Sym::N(triple(&mut g, s, *c, q)));
                        prods.push((lhs, body));
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    let r0 = reach(&mut g, m.initial());
    prods.push((r0, vec![]));
    let start = g.start();
    for f in (0..n).filter(|&f| m.is_final(f)) {
        let rf = reach(&mut g, f);
        prods.push((start, vec![Sym::N(rf)]));
    }
    for (l, b) in prods {
        g.add_production(l, b).expect("symbols were interned above");
    }
    g.prune()
}
