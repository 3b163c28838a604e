//! Small machines shared by the pda unit tests.

use super::{AcceptMode, Npda, BOTTOM};
use crate::alphabet::Alphabet;

fn push_pop(mode: AcceptMode) -> Npda {
    let mut p = Npda::new(Alphabet::from_names(["a", "b", "#"]), "⊥", "push", mode);
    let pop = p.add_state("pop");
    let sa = p.stack_symbol("A");
    let sb = p.stack_symbol("B");
    for x in [BOTTOM, sa, sb] {
        p.add_transition(0, Some("a"), x, 0, &[sa, x]).unwrap();
        p.add_transition(0, Some("b"), x, 0, &[sb, x]).unwrap();
        p.add_transition(0, Some("#"), x, pop, &[x]).unwrap();
    }
    p.add_transition(pop, Some("a"), sa, pop, &[]).unwrap();
    p.add_transition(pop, Some("b"), sb, pop, &[]).unwrap();
    p.set_deterministic_hint(true);
    p
}

/// `{u # u^rev}` over {a, b}, final state on a bare bottom.
pub(crate) fn palindrome_hash() -> Npda {
    let mut p = push_pop(AcceptMode::FinalStateAndBareBottom);
    p.set_final(1);
    p
}

/// Same language, accepting by empty stack.
pub(crate) fn palindrome_hash_empty_stack() -> Npda {
    let mut p = push_pop(AcceptMode::EmptyStack);
    p.add_transition(1, None, BOTTOM, 1, &[]).unwrap();
    p
}

/// `a^n b^{3n}`, pushing three symbols per `a` in one move.
pub(crate) fn triple_pusher() -> Npda {
    let mut p = Npda::new(Alphabet::from_names(["a", "b"]), "⊥", "s", AcceptMode::FinalStateAndBareBottom);
    let t = p.add_state("t");
    let a = p.stack_symbol("A");
    for x in [BOTTOM, a] {
        p.add_transition(0, Some("a"), x, 0, &[a, a, a, x]).unwrap();
    }
    p.add_transition(0, Some("b"), a, t, &[]).unwrap();
    p.add_transition(t, Some("b"), a, t, &[]).unwrap();
    p.set_final(0);
    p.set_final(t);
    p
}

/// `a^n # a^n`.
pub(crate) fn an_hash_an() -> Npda {
    let mut p = Npda::new(Alphabet::from_names(["a", "#"]), "⊥", "up", AcceptMode::FinalStateAndBareBottom);
    let down = p.add_state("down");
    let a = p.stack_symbol("A");
    for x in [BOTTOM, a] {
        p.add_transition(0, Some("a"), x, 0, &[a, x]).unwrap();
        p.add_transition(0, Some("#"), x, down, &[x]).unwrap();
    }
    p.add_transition(down, Some("a"), a, down, &[]).unwrap();
    p.set_final(down);
    p
}
