//! Membership for normalized machines by tabulating "net pop" facts.
//!
//! A call `(i, p, A)` asks: starting in state `p` at input position `i` with
//! `A` on top, in which states `q` and at which positions `j` can the machine
//! first expose the symbol under `A`? These facts are exactly the triple
//! nonterminals `[pAq]` spanning `w[i..j]`, so this is CYK on the triple
//! grammar, evaluated on demand from reachable calls only. A second layer
//! tracks configurations `(i, p)` with a bare bottom marker.

use std::collections::{HashMap, HashSet};

use super::{Npda, BOTTOM};

#[derive(Debug)]
pub(crate) struct Prepared {
    machine: Npda,
    /// (state, top) -> transitions
    index: HashMap<(u32, u32), Vec<u32>>,
}

#[derive(Clone, Copy)]
enum Cont {
    /// Each result of the awaited call is a result of this call.
    Return(u32),
    /// Each result `(s, k)` starts a call `(k, s, C)` returning to this call.
    Then(u32, u32),
    /// Each result `(q, j)` is a bare-bottom configuration.
    Bottom,
}

enum Event {
    Expand(u32),
    Result(u32, u32, u32),
    Reach(u32, u32),
}

struct Run<'a> {
    prep: &'a Prepared,
    w: &'a [usize],
    calls: HashMap<(u32, u32, u32), u32>,
    call_keys: Vec<(u32, u32, u32)>,
    results: Vec<Vec<(u32, u32)>>,
    seen_results: HashSet<(u32, u32, u32)>,
    waiters: Vec<Vec<Cont>>,
    reached: HashSet<(u32, u32)>,
    events: Vec<Event>,
}

impl Prepared {
    pub(crate) fn new(machine: Npda) -> Prepared {
        let mut index: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (k, t) in machine.transitions.iter().enumerate() {
            index.entry((t.from as u32, t.pop as u32)).or_default().push(k as u32);
        }
        Prepared { machine, index }
    }

    pub(crate) fn accepts(&self, w: &[usize]) -> bool {
        let mut run = Run {
            prep: self,
            w,
            calls: HashMap::new(),
            call_keys: Vec::new(),
            results: Vec::new(),
            seen_results: HashSet::new(),
            waiters: Vec::new(),
            reached: HashSet::new(),
            events: Vec::new(),
        };
        run.reach(0, self.machine.initial as u32);
        let n = w.len() as u32;
        while let Some(e) = run.events.pop() {
            match e {
                Event::Expand(c) => run.expand(c),
                Event::Result(c, q, j) => {
                    run.results[c as usize].push((q, j));
                    // waiters added from here on replay the result themselves
                    let n = run.waiters[c as usize].len();
                    for k in 0..n {
                        let cont = run.waiters[c as usize][k];
                        run.apply(cont, q, j);
                    }
                }
                Event::Reach(i, p) => {
                    if i == n && self.machine.finals[p as usize] {
                        return true;
                    }
                    run.expand_bottom(i, p);
                }
            }
        }
        false
    }
}

impl Run<'_> {
    /// Position after optionally reading `input` at `i`.
    fn advance(&self, i: u32, input: Option<usize>) -> Option<u32> {
        match input {
            None => Some(i),
            Some(a) => (self.w.get(i as usize) == Some(&a)).then_some(i + 1),
        }
    }

    fn call(&mut self, i: u32, p: u32, a: u32) -> u32 {
        if let Some(&c) = self.calls.get(&(i, p, a)) {
            return c;
        }
        let c = self.call_keys.len() as u32;
        self.calls.insert((i, p, a), c);
        self.call_keys.push((i, p, a));
        self.results.push(Vec::new());
        self.waiters.push(Vec::new());
        self.events.push(Event::Expand(c));
        c
    }

    fn wait(&mut self, c: u32, cont: Cont) {
        self.waiters[c as usize].push(cont);
        let n = self.results[c as usize].len();
        for k in 0..n {
            let (q, j) = self.results[c as usize][k];
            self.apply(cont, q, j);
        }
    }

    fn add_result(&mut self, c: u32, q: u32, j: u32) {
        if self.seen_results.insert((c, q, j)) {
            self.events.push(Event::Result(c, q, j));
        }
    }

    fn reach(&mut self, i: u32, p: u32) {
        if self.reached.insert((i, p)) {
            self.events.push(Event::Reach(i, p));
        }
    }

    fn apply(&mut self, cont: Cont, q: u32, j: u32) {
        match cont {
            Cont::Return(parent) => self.add_result(parent, q, j),
            Cont::Then(parent, c) => {
                let sub = self.call(j, q, c);
                self.wait(sub, Cont::Return(parent));
            }
            Cont::Bottom => self.reach(j, q),
        }
    }

    fn expand(&mut self, c: u32) {
        let (i, p, a) = self.call_keys[c as usize];
        let Some(ts) = self.prep.index.get(&(p, a)) else { return };
        for &k in ts {
            let t = &self.prep.machine.transitions[k as usize];
            let Some(i2) = self.advance(i, t.input) else { continue };
            let to = t.to as u32;
            match t.push.as_slice() {
                [] => self.add_result(c, to, i2),
                [b] => {
                    let sub = self.call(i2, to, *b as u32);
                    self.wait(sub, Cont::Return(c));
                }
                [b, d] => {
                    let sub = self.call(i2, to, *b as u32);
                    self.wait(sub, Cont::Then(c, *d as u32));
                }
                _ => unreachable!("normalized machines push at most two symbols"),
            }
        }
    }

    fn expand_bottom(&mut self, i: u32, p: u32) {
        let Some(ts) = self.prep.index.get(&(p, BOTTOM as u32)) else { return };
        for &k in ts {
            let t = &self.prep.machine.transitions[k as usize];
            let Some(i2) = self.advance(i, t.input) else { continue };
            let to = t.to as u32;
            match t.push.as_slice() {
                [_] => self.reach(i2, to),
                [x, _] => {
                    let sub = self.call(i2, to, *x as u32);
                    self.wait(sub, Cont::Bottom);
                }
                _ => unreachable!("normalized bottom moves keep the marker"),
            }
        }
    }
}
