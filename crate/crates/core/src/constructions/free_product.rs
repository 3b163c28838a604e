//! Free products of two semigroups or two monoids.
//!
//! The machine simulates one factor's machine per syllable. Before `#`, a
//! switch to the other factor saves the paused state on the stack above the
//! paused stack contents and starts a fresh simulation over a new bottom
//! marker. After `#`, a simulation that accepts on its bare bottom marker is
//! discarded and the saved one below resumes, first taking its `#` move.
//!
//! For monoids, an identity segment can be read at any point by a nested
//! simulation: before `#` it runs a factor's machine on the segment and then
//! on `#` with an empty right side; after `#` it runs it on `#` and then on the
//! segment. Nested simulations save their context on the stack and restore it
//! when they close.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, SEP};
use crate::error::{Error, Result};
use crate::oracle::syllable_oracle;
use crate::pda::{AcceptMode, LanguageRep, Npda, Transition, BOTTOM};
use crate::semigroups::{change_generators, WordProblemObject};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum K {
    Start,
    /// simulating factor f in state q before `#`; fresh until a letter is read
    Pre(usize, usize, bool),
    Post(usize, usize, bool),
    /// resuming factor f from a saved state, its `#` move still to come
    HashPending(usize, usize),
    /// a simulation closed; inspect what lies below its bottom marker
    Below,
    Accept,
    /// monoid mode: `#` read with nothing before it
    EmptyLeft,
    NestPre(usize, usize),
    NestPreDone(usize, usize),
    NestPostBefore(usize, usize),
    NestPostAfter(usize, usize),
    Restore,
}

struct Factor {
    p: Npda,
    sep: usize,
    /// machine letter -> product letter
    letters: Vec<usize>,
    /// machine stack symbol -> product stack symbol
    syms: Vec<usize>,
    by_src: Vec<Vec<usize>>,
}

/// Renames letters of `t` that collide with `s`'s to the first unused
/// lowercase letters.
fn disjoint(s: &WordProblemObject, t: &WordProblemObject) -> Result<WordProblemObject> {
    if !t.alphabet().iter().any(|l| s.alphabet().contains(l)) {
        return Ok(t.clone());
    }
    let mut used: Vec<String> = s.alphabet().names().iter().chain(t.alphabet().names()).cloned().collect();
    let mut gens = Vec::new();
    let mut relabel = Vec::new();
    for l in t.alphabet().iter() {
        let new = if s.alphabet().contains(l) {
            let fresh = ('a'..='z')
                .map(|c| c.to_string())
                .find(|c| !used.contains(c))
                .ok_or_else(|| Error::input("no unused letter left to rename a colliding generator"))?;
            used.push(fresh.clone());
            relabel.push((l.to_string(), fresh.clone()));
            fresh
        } else {
            l.to_string()
        };
        gens.push((new, vec![l.to_string()]));
    }
    let mut out = change_generators(t, &gens)?;
    out.relabeling = relabel;
    Ok(out)
}

pub fn free_product_semigroups(s: &WordProblemObject, t: &WordProblemObject) -> Result<WordProblemObject> {
    if s.is_monoid() || t.is_monoid() {
        return Err(Error::input("semigroup free product needs two semigroup-mode objects"));
    }
    build(s, t, false)
}

pub fn free_product_monoids(s: &WordProblemObject, t: &WordProblemObject) -> Result<WordProblemObject> {
    if !s.is_monoid() || !t.is_monoid() {
        return Err(Error::input("monoid free product needs two monoid-mode objects"));
    }
    build(s, t, true)
}

fn build(s: &WordProblemObject, t0: &WordProblemObject, monoid: bool) -> Result<WordProblemObject> {
    s.require_recognizer()?;
    t0.require_recognizer()?;
    let t = disjoint(s, t0)?;
    let mut alphabet = s.alphabet().clone();
    for l in t.alphabet().iter() {
        alphabet.insert(l);
    }
    let mut full = alphabet.clone();
    let sep = full.insert(SEP);
    let mut m = Npda::new(full.clone(), "⊥", "start", AcceptMode::FinalStateAndBareBottom);
    let mut factors = Vec::new();
    for (tag, w) in [("S", s), ("T", &t)] {
        let p = w.require_pda()?.normalize();
        let letters = p.input().iter().map(|l| full.get(l).unwrap()).collect();
        let syms = (0..p.stack_alphabet().len())
            .map(|k| m.stack_symbol(format!("{tag}.{}", p.stack_alphabet().name(k))))
            .collect();
        let mut by_src = vec![Vec::new(); p.num_states()];
        for (k, tr) in p.transitions().iter().enumerate() {
            by_src[tr.from].push(k);
        }
        let psep = p.input().get(SEP).unwrap();
        factors.push(Factor { p, sep: psep, letters, syms, by_src });
    }
    let saved: Vec<Vec<usize>> = factors
        .iter()
        .enumerate()
        .map(|(f, fa)| {
            (0..fa.p.num_states())
                .map(|q| m.stack_symbol(format!("saved.{}.{}", ["S", "T"][f], fa.p.state_name(q))))
                .collect()
        })
        .collect();
    let name = |k: &K| -> String {
        let st = |f: usize, q: usize| format!("{}.{}", ["S", "T"][f], factors[f].p.state_name(q));
        match *k {
            K::Start => "start".into(),
            K::Pre(f, q, fr) => format!("pre({}{})", st(f, q), if fr { ",fresh" } else { "" }),
            K::Post(f, q, fr) => format!("post({}{})", st(f, q), if fr { ",fresh" } else { "" }),
            K::HashPending(f, q) => format!("resume({})", st(f, q)),
            K::Below => "below".into(),
            K::Accept => "accept".into(),
            K::EmptyLeft => "empty-left".into(),
            K::NestPre(f, q) => format!("nest-pre({})", st(f, q)),
            K::NestPreDone(f, q) => format!("nest-pre#({})", st(f, q)),
            K::NestPostBefore(f, q) => format!("nest-post({})", st(f, q)),
            K::NestPostAfter(f, q) => format!("nest-post#({})", st(f, q)),
            K::Restore => "restore".into(),
        }
    };
    let mut ids: HashMap<K, usize> = HashMap::from([(K::Start, 0)]);
    let mut queue = VecDeque::from([K::Start]);
    let mut ctx_syms: Vec<(usize, usize)> = Vec::new();
    let mut ts: Vec<Transition> = Vec::new();

    macro_rules! id {
        ($k:expr) => {{
            let k = $k;
            match ids.get(&k) {
                Some(&i) => i,
                None => {
                    let i = m.add_state(name(&k));
                    ids.insert(k, i);
                    queue.push_back(k);
                    i
                }
            }
        }};
    }

    while let Some(k) = queue.pop_front() {
        let id = ids[&k];
        let mut nest: Option<(bool, Vec<usize>)> = None;
        match k {
            K::Start => {
                for f in 0..2 {
                    let to = id!(K::Pre(f, factors[f].p.initial(), true));
                    ts.push(Transition { from: id, input: None, pop: BOTTOM, to, push: vec![factors[f].syms[BOTTOM], BOTTOM] });
                }
                if monoid {
                    let to = id!(K::EmptyLeft);
                    ts.push(Transition { from: id, input: Some(sep), pop: BOTTOM, to, push: vec![BOTTOM] });
                    nest = Some((true, vec![BOTTOM]));
                }
            }
            K::Pre(f, q, fresh) | K::Post(f, q, fresh) => {
                let pre = matches!(k, K::Pre(..));
                let fa = &factors[f];
                for &e in &fa.by_src[q] {
                    let tr = &fa.p.transitions()[e];
                    let (input, next) = match tr.input {
                        None => (None, if pre { K::Pre(f, tr.to, fresh) } else { K::Post(f, tr.to, fresh) }),
                        Some(a) if a == fa.sep => {
                            if !pre || fresh {
                                continue;
                            }
                            (Some(sep), K::Post(f, tr.to, true))
                        }
                        Some(a) => (Some(fa.letters[a]), if pre { K::Pre(f, tr.to, false) } else { K::Post(f, tr.to, false) }),
                    };
                    let to = id!(next);
                    ts.push(Transition {
                        from: id,
                        input,
                        pop: fa.syms[tr.pop],
                        to,
                        push: tr.push.iter().map(|&x| fa.syms[x]).collect(),
                    });
                }
                if !fresh && pre {
                    let g = 1 - f;
                    let to = id!(K::Pre(g, factors[g].p.initial(), true));
                    for &z in &factors[f].syms {
                        ts.push(Transition { from: id, input: None, pop: z, to, push: vec![factors[g].syms[BOTTOM], saved[f][q], z] });
                    }
                }
                if !fresh && !pre && factors[f].p.is_final(q) {
                    let to = id!(K::Below);
                    ts.push(Transition { from: id, input: None, pop: factors[f].syms[BOTTOM], to, push: vec![] });
                }
                if monoid {
                    nest = Some((pre, factors[f].syms.clone()));
                }
            }
            K::HashPending(f, q) => {
                let fa = &factors[f];
                for &e in &fa.by_src[q] {
                    let tr = &fa.p.transitions()[e];
                    let next = match tr.input {
                        None => K::HashPending(f, tr.to),
                        Some(a) if a == fa.sep => K::Post(f, tr.to, true),
                        Some(_) => continue,
                    };
                    let to = id!(next);
                    ts.push(Transition { from: id, input: None, pop: fa.syms[tr.pop], to, push: tr.push.iter().map(|&x| fa.syms[x]).collect() });
                }
            }
            K::Below => {
                for (f, sv) in saved.iter().enumerate() {
                    for (q, &x) in sv.iter().enumerate() {
                        let to = id!(K::HashPending(f, q));
                        ts.push(Transition { from: id, input: None, pop: x, to, push: vec![] });
                    }
                }
                let to = id!(K::Accept);
                ts.push(Transition { from: id, input: None, pop: BOTTOM, to, push: vec![BOTTOM] });
            }
            K::Accept => m.set_final(id),
            K::EmptyLeft => {
                m.set_final(id);
                nest = Some((false, vec![BOTTOM]));
            }
            K::NestPre(f, q) | K::NestPreDone(f, q) | K::NestPostBefore(f, q) | K::NestPostAfter(f, q) => {
                let fa = &factors[f];
                for &e in &fa.by_src[q] {
                    let tr = &fa.p.transitions()[e];
                    let (input, next) = match (k, tr.input) {
                        (K::NestPre(..), None) => (None, K::NestPre(f, tr.to)),
                        (K::NestPre(..), Some(a)) if a == fa.sep => (None, K::NestPreDone(f, tr.to)),
                        (K::NestPre(..), Some(a)) => (Some(fa.letters[a]), K::NestPre(f, tr.to)),
                        (K::NestPreDone(..), None) => (None, K::NestPreDone(f, tr.to)),
                        (K::NestPostBefore(..), None) => (None, K::NestPostBefore(f, tr.to)),
                        (K::NestPostBefore(..), Some(a)) if a == fa.sep => (None, K::NestPostAfter(f, tr.to)),
                        (K::NestPostAfter(..), None) => (None, K::NestPostAfter(f, tr.to)),
                        (K::NestPostAfter(..), Some(a)) if a != fa.sep => (Some(fa.letters[a]), K::NestPostAfter(f, tr.to)),
                        _ => continue,
                    };
                    let to = id!(next);
                    ts.push(Transition { from: id, input, pop: fa.syms[tr.pop], to, push: tr.push.iter().map(|&x| fa.syms[x]).collect() });
                }
                let closing = matches!(k, K::NestPreDone(..) | K::NestPostAfter(..));
                if closing && fa.p.is_final(q) {
                    let to = id!(K::Restore);
                    ts.push(Transition { from: id, input: None, pop: fa.syms[BOTTOM], to, push: vec![] });
                }
                match k {
                    K::NestPre(..) => nest = Some((true, factors[f].syms.clone())),
                    K::NestPostAfter(..) => nest = Some((false, factors[f].syms.clone())),
                    _ => {}
                }
            }
            K::Restore => {}
        }
        if let Some((pre, tops)) = nest {
            let ctx = m.stack_symbol(format!("ctx.{}", name(&k)));
            ctx_syms.push((ctx, id));
            for g in 0..2 {
                let q0 = factors[g].p.initial();
                let to = if pre { id!(K::NestPre(g, q0)) } else { id!(K::NestPostBefore(g, q0)) };
                for &z in &tops {
                    ts.push(Transition { from: id, input: None, pop: z, to, push: vec![factors[g].syms[BOTTOM], ctx, z] });
                }
            }
        }
    }
    if let Some(&restore) = ids.get(&K::Restore) {
        for &(ctx, to) in &ctx_syms {
            ts.push(Transition { from: restore, input: None, pop: ctx, to, push: vec![] });
        }
    }
    for tr in ts {
        m.push_transition(tr);
    }
    let oracle = syllable_oracle(s.oracle(), t.oracle(), monoid)?;
    let mut out = WordProblemObject::new(alphabet, monoid, Some(LanguageRep::Pda(m)), oracle)?;
    out.relabeling = t.relabeling.clone();
    Ok(out)
}

/// Letters of the second factor after renaming, for callers that need them.
pub fn renamed(w: &WordProblemObject, l: &str) -> Letter {
    w.relabeling.iter().find(|(a, _)| a == l).map_or_else(|| l.to_string(), |(_, b)| b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::word;
    use crate::oracle::cross_check;
    use crate::semigroups::{finite_word_problem, free_monoid_on, FiniteSemigroup};

    #[test]
    fn semigroup_free_product_examples() {
        let a = free_monoid_on(&word("a"), false).unwrap();
        let b = free_monoid_on(&word("b"), false).unwrap();
        let w = free_product_semigroups(&a, &b).unwrap();
        assert!(w.accepts_pair(&word("ab"), &word("ab")).unwrap());
        assert!(!w.accepts_pair(&word("ab"), &word("ba")).unwrap());
        assert!(w.accepts_pair(&word("aab"), &word("aab")).unwrap());
        let r = cross_check(&w, 3, 3, 1).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn monoid_free_product_examples() {
        let c2 = finite_word_problem(&FiniteSemigroup::c2(), &word("a"), true).unwrap();
        let w = free_product_monoids(&c2, &c2).unwrap();
        assert_eq!(w.relabeling, vec![("a".to_string(), "b".to_string())]);
        assert!(w.accepts_pair(&word("aab"), &word("b")).unwrap());
        assert!(w.accepts_pair(&[], &[]).unwrap());
        assert!(!w.accepts_pair(&word("ab"), &word("ba")).unwrap());
        let r = cross_check(&w, 3, 3, 1).unwrap();
        assert!(r.ok(), "{r}");
    }
}
