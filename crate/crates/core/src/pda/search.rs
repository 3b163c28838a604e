use std::collections::{HashMap, HashSet, VecDeque};

use super::{AcceptMode, Npda, BOTTOM};

pub(super) const DEFAULT_BUDGET: usize = 200_000;

/// Answer of the bounded configuration search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Known(bool),
    /// The height bound or the configuration budget cut the search short.
    Unknown,
}

impl SearchOutcome {
    pub fn known(self) -> Option<bool> {
        match self {
            SearchOutcome::Known(b) => Some(b),
            SearchOutcome::Unknown => None,
        }
    }
}

/// Explores configurations (state, position, stack) of the raw machine.
pub(super) fn search(p: &Npda, w: &[usize], height: usize, budget: usize) -> SearchOutcome {
    let mut index: HashMap<(usize, usize), Vec<&super::Transition>> = HashMap::new();
    for t in &p.transitions {
        index.entry((t.from, t.pop)).or_default().push(t);
    }
    // stack stored bottom first
    let start = (p.initial, 0usize, vec![BOTTOM]);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut truncated = false;
    while let Some((q, i, stack)) = queue.pop_front() {
        if i == w.len() {
            let ok = match p.mode {
                AcceptMode::FinalState => p.finals[q],
                AcceptMode::EmptyStack => stack.is_empty(),
                AcceptMode::FinalStateAndBareBottom => p.finals[q] && stack == [BOTTOM],
            };
            if ok {
                return SearchOutcome::Known(true);
            }
        }
        let Some(&top) = stack.last() else { continue };
        for t in index.get(&(q, top)).into_iter().flatten() {
            let i2 = match t.input {
                None => i,
                Some(a) if w.get(i) == Some(&a) => i + 1,
                Some(_) => continue,
            };
            let mut s2 = stack[..stack.len() - 1].to_vec();
            s2.extend(t.push.iter().rev());
            if s2.len() > height {
                truncated = true;
                continue;
            }
            let c = (t.to, i2, s2);
            if seen.contains(&c) {
                continue;
            }
            if seen.len() >= budget {
                truncated = true;
                continue;
            }
            seen.insert(c.clone());
            queue.push_back(c);
        }
    }
    if truncated {
        SearchOutcome::Unknown
    } else {
        SearchOutcome::Known(false)
    }
}
