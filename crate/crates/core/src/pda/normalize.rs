use super::{AcceptMode, Npda, Transition, BOTTOM};

/// Converts to the normal form checked by [`Npda::is_normal`]. A fresh
/// bottom marker goes under the old one, which becomes an ordinary symbol;
/// long pushes are spread over chains of fresh states; acceptance is routed
/// through a single final drain state.
pub(super) fn normalize(p: &Npda) -> Npda {
    if p.is_normal() {
        return p.clone();
    }
    let mut q = Npda::new(p.input.clone(), "⊥'", "norm.start", AcceptMode::FinalStateAndBareBottom);
    // old stack symbol i maps to i + 1; old bottom becomes Z0
    let shift = |s: usize| s + 1;
    for (i, name) in p.stack.iter().enumerate() {
        let n = if i == BOTTOM { format!("{name}.Z0") } else { name.to_string() };
        let id = q.stack_symbol(n);
        debug_assert_eq!(id, shift(i));
    }
    let base = q.num_states();
    for name in &p.state_names {
        q.add_state(name.clone());
    }
    let st = |s: usize| base + s;
    let z0 = shift(BOTTOM);
    q.push_transition(Transition { from: 0, input: None, pop: BOTTOM, to: st(p.initial), push: vec![z0, BOTTOM] });
    for (k, t) in p.transitions.iter().enumerate() {
        let push: Vec<usize> = t.push.iter().map(|&s| shift(s)).collect();
        if push.len() <= 2 {
            q.push_transition(Transition { from: st(t.from), input: t.input, pop: shift(t.pop), to: st(t.to), push });
            continue;
        }
        // replace the popped symbol by the two bottom-most pushed symbols, then
        // grow upwards one symbol at a time
        let len = push.len();
        let mut cur = q.add_state(format!("norm.chain{k}.0"));
        q.push_transition(Transition {
            from: st(t.from),
            input: t.input,
            pop: shift(t.pop),
            to: cur,
            push: push[len - 2..].to_vec(),
        });
        for j in (2..len - 1).rev() {
            let next = q.add_state(format!("norm.chain{k}.{}", len - 1 - j));
            q.push_transition(Transition { from: cur, input: None, pop: push[j], to: next, push: push[j - 1..=j].to_vec() });
            cur = next;
        }
        q.push_transition(Transition { from: cur, input: None, pop: push[1], to: st(t.to), push: push[..2].to_vec() });
    }
    let drain = q.add_state("norm.accept");
    q.set_final(drain);
    match p.mode {
        AcceptMode::FinalState => {
            for f in (0..p.num_states()).filter(|&f| p.finals[f]) {
                for x in 1..q.stack.len() {
                    q.push_transition(Transition { from: st(f), input: None, pop: x, to: drain, push: vec![] });
                }
                q.push_transition(Transition { from: st(f), input: None, pop: BOTTOM, to: drain, push: vec![BOTTOM] });
            }
            for x in 1..q.stack.len() {
                q.push_transition(Transition { from: drain, input: None, pop: x, to: drain, push: vec![] });
            }
        }
        AcceptMode::EmptyStack => {
            for s in 0..p.num_states() {
                q.push_transition(Transition { from: st(s), input: None, pop: BOTTOM, to: drain, push: vec![BOTTOM] });
            }
        }
        AcceptMode::FinalStateAndBareBottom => {
            for f in (0..p.num_states()).filter(|&f| p.finals[f]) {
                q.push_transition(Transition { from: st(f), input: None, pop: z0, to: drain, push: vec![] });
            }
        }
    }
    let det = p.deterministic_hint && q.is_deterministic();
    q.set_deterministic_hint(det);
    q
}
