use super::{AcceptMode, Npda, Transition, BOTTOM};
use crate::cfg::{Cfg, Sym};

/// Top-down machine: expand the leftmost nonterminal on the stack, match
/// terminals against the input.
pub(super) fn from_cfg(g: &Cfg) -> Npda {
    let mut m = Npda::new(g.terminals().clone(), "⊥", "cfg.start", AcceptMode::FinalStateAndBareBottom);
    let run = m.add_state("cfg.run");
    let acc = m.add_state("cfg.accept");
    m.set_final(acc);
    let nts: Vec<usize> = (0..g.num_nonterminals()).map(|n| m.stack_symbol(format!("N:{}", g.nonterminal_name(n)))).collect();
    let ts: Vec<usize> = g.terminals().iter().map(|a| m.stack_symbol(format!("T:{a}"))).collect();
    m.push_transition(Transition { from: 0, input: None, pop: BOTTOM, to: run, push: vec![nts[g.start()], BOTTOM] });
    for (lhs, body) in g.productions() {
        let push = body
            .iter()
            .map(|s| match *s {
                Sym::T(t) => ts[t],
                Sym::N(n) => nts[n],
            })
            .collect();
        m.push_transition(Transition { from: run, input: None, pop: nts[*lhs], to: run, push });
    }
    for (a, &t) in ts.iter().enumerate() {
        m.push_transition(Transition { from: run, input: Some(a), pop: t, to: run, push: vec![] });
    }
    m.push_transition(Transition { from: run, input: None, pop: BOTTOM, to: acc, push: vec![BOTTOM] });
    m
}
