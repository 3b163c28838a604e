//! Nondeterministic pushdown automata, their normal form, membership, the
//! closure operations on them and conversion to grammars.

mod chart;
mod closure;
mod from_cfg;
mod normalize;
mod search;
mod triple;

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::{Arc, OnceLock};

pub use search::SearchOutcome;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::nfa::escape;
use crate::error::{Error, Result};

/// How a run is judged accepting once the input is consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AcceptMode {
    /// In a final state, whatever the stack.
    FinalState,
    /// With the stack completely empty, bottom marker included.
    EmptyStack,
    /// In a final state with only the bottom marker on the stack.
    FinalStateAndBareBottom,
}

impl AcceptMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AcceptMode::FinalState => "final_state",
            AcceptMode::EmptyStack => "empty_stack",
            AcceptMode::FinalStateAndBareBottom => "final_state_and_bare_bottom",
        }
    }

    pub fn parse(s: &str) -> Result<AcceptMode> {
        match s {
            "final_state" => Ok(AcceptMode::FinalState),
            "empty_stack" => Ok(AcceptMode::EmptyStack),
            "final_state_and_bare_bottom" => Ok(AcceptMode::FinalStateAndBareBottom),
            _ => Err(Error::input(format!("unknown acceptance mode `{s}`"))),
        }
    }
}

/// A move: in `from`, reading `input` (or nothing), with `pop` on top,
/// replace the top by `push` (written top first) and go to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: usize,
    pub input: Option<usize>,
    pub pop: usize,
    pub to: usize,
    pub push: Vec<usize>,
}

/// A nondeterministic pushdown automaton. Stack symbol 0 is the bottom
/// marker, which is the whole initial stack.
#[derive(Clone, Debug)]
pub struct Npda {
    state_names: Vec<String>,
    input: Alphabet,
    stack: Alphabet,
    transitions: Vec<Transition>,
    initial: usize,
    finals: Vec<bool>,
    mode: AcceptMode,
    deterministic_hint: bool,
    prepared: OnceLock<Arc<chart::Prepared>>,
}

/// The bottom marker's stack index.
pub const BOTTOM: usize = 0;

impl Npda {
    pub fn new(input: Alphabet, bottom: &str, initial: &str, mode: AcceptMode) -> Self {
        let mut stack = Alphabet::new();
        stack.insert(bottom);
        Npda {
            state_names: vec![initial.to_string()],
            input,
            stack,
            transitions: Vec::new(),
            initial: 0,
            finals: vec![false],
            mode,
            deterministic_hint: false,
            prepared: OnceLock::new(),
        }
    }

    fn touch(&mut self) {
        self.prepared = OnceLock::new();
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.touch();
        self.state_names.push(name.into());
        self.finals.push(false);
        self.state_names.len() - 1
    }

    pub(crate) fn rename_state(&mut self, s: usize, name: impl Into<String>) {
        self.state_names[s] = name.into();
    }

    /// Interns a stack symbol by name.
    pub fn stack_symbol(&mut self, name: impl Into<String>) -> usize {
        self.touch();
        self.stack.insert(name)
    }

    pub fn set_final(&mut self, s: usize) {
        self.touch();
        self.finals[s] = true;
    }

    pub fn set_deterministic_hint(&mut self, hint: bool) {
        self.deterministic_hint = hint;
    }

    pub fn add_transition(&mut self, from: usize, input: Option<&str>, pop: usize, to: usize, push: &[usize]) -> Result<()> {
        let input = match input {
            None => None,
            Some(l) => Some(
                self.input
                    .get(l)
                    .ok_or_else(|| Error::input(format!("letter `{l}` is not in the machine's input alphabet")))?,
            ),
        };
        let n = self.state_names.len();
        let m = self.stack.len();
        if from >= n || to >= n || pop >= m || push.iter().any(|&s| s >= m) {
            return Err(Error::input("transition references an unknown state or stack symbol"));
        }
        self.push_transition(Transition { from, input, pop, to, push: push.to_vec() });
        Ok(())
    }

    pub(crate) fn push_transition(&mut self, t: Transition) {
        self.touch();
        self.transitions.push(t);
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &Alphabet {
        &self.stack
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn mode(&self) -> AcceptMode {
        self.mode
    }

    pub fn deterministic_hint(&self) -> bool {
        self.deterministic_hint
    }

    /// Structural determinism: at most one move per (state, letter or ε, top),
    /// and no (state, top) with both an ε-move and a letter move.
    pub fn is_deterministic(&self) -> bool {
        let mut seen: HashMap<(usize, Option<usize>, usize), usize> = HashMap::new();
        let mut eps: HashMap<(usize, usize), (bool, bool)> = HashMap::new();
        for t in &self.transitions {
            let c = seen.entry((t.from, t.input, t.pop)).or_default();
            *c += 1;
            if *c > 1 {
                return false;
            }
            let e = eps.entry((t.from, t.pop)).or_default();
            if t.input.is_none() {
                e.0 = true;
            } else {
                e.1 = true;
            }
            if e.0 && e.1 {
                return false;
            }
        }
        true
    }

    /// Whether the machine is already in the normal form used for
    /// membership: every move pops one symbol and pushes at most two, the
    /// bottom marker stays at the bottom, acceptance by final state on a bare
    /// bottom.
    pub fn is_normal(&self) -> bool {
        self.mode == AcceptMode::FinalStateAndBareBottom
            && self.transitions.iter().all(|t| {
                if t.push.len() > 2 {
                    return false;
                }
                if t.pop == BOTTOM {
                    t.push.last() == Some(&BOTTOM) && !t.push[..t.push.len() - 1].contains(&BOTTOM)
                } else {
                    !t.push.contains(&BOTTOM)
                }
            })
    }

    pub fn normalize(&self) -> Npda {
        normalize::normalize(self)
    }

    fn prepared(&self) -> &chart::Prepared {
        self.prepared.get_or_init(|| Arc::new(chart::Prepared::new(self.normalize())))
    }

    /// Builds the membership index now rather than on first query.
    pub fn prepare(&self) {
        let _ = self.prepared();
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        let enc = self.input.encode(w)?;
        Ok(self.prepared().accepts(&enc))
    }

    /// Breadth-first search over configurations of the machine as given,
    /// with stack height capped at `2(|w|+2)`.
    pub fn search(&self, w: &[Letter]) -> Result<SearchOutcome> {
        let enc = self.input.encode(w)?;
        Ok(search::search(self, &enc, 2 * (w.len() + 2), search::DEFAULT_BUDGET))
    }

    pub fn search_with(&self, w: &[Letter], height: usize, budget: usize) -> Result<SearchOutcome> {
        let enc = self.input.encode(w)?;
        Ok(search::search(self, &enc, height, budget))
    }

    pub fn to_cfg(&self) -> crate::cfg::Cfg {
        triple::to_cfg(self)
    }

    pub fn intersect_regular(&self, r: &crate::automata::Nfa) -> Result<Npda> {
        closure::intersect_regular(self, r)
    }

    pub fn inverse_gsm(&self, g: &crate::automata::Gsm) -> Result<Npda> {
        closure::inverse_gsm(self, g)
    }

    pub fn inverse_homomorphism(&self, input: &Alphabet, h: &HashMap<Letter, crate::alphabet::Word>) -> Result<Npda> {
        let g = crate::automata::Gsm::homomorphism(input.clone(), self.input.clone(), h)?;
        closure::inverse_gsm(self, &g)
    }

    pub fn union(ps: &[Npda]) -> Result<Npda> {
        closure::union(ps)
    }

    pub fn from_cfg(g: &crate::cfg::Cfg) -> Npda {
        from_cfg::from_cfg(g)
    }

    /// Human-readable listing: header, then one transition per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode: {}", self.mode.as_str());
        let _ = writeln!(s, "initial: {}", self.state_names[self.initial]);
        let finals: Vec<&str> = (0..self.num_states()).filter(|&q| self.finals[q]).map(|q| self.state_names[q].as_str()).collect();
        let _ = writeln!(s, "finals: {}", finals.join(" "));
        let _ = writeln!(s, "bottom: {}", self.stack.name(BOTTOM));
        for t in &self.transitions {
            let push: Vec<&str> = t.push.iter().map(|&x| self.stack.name(x)).collect();
            let _ = writeln!(
                s,
                "{} --{}/{}--> {} [{}]",
                self.state_names[t.from],
                t.input.map_or("ε", |a| self.input.name(a)),
                self.stack.name(t.pop),
                self.state_names[t.to],
                push.join(" ")
            );
        }
        s
    }

    /// Labelled graph in dot syntax, one node per state.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph pda {\n  rankdir=LR;\n");
        for (i, n) in self.state_names.iter().enumerate() {
            let shape = if self.finals[i] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{i} [label=\"{}\", shape={shape}];", escape(n));
        }
        let _ = writeln!(s, "  start [shape=point];\n  start -> s{};", self.initial);
        for t in &self.transitions {
            let push: Vec<&str> = t.push.iter().map(|&x| self.stack.name(x)).collect();
            let label = format!(
                "{}, {} / {}",
                t.input.map_or("ε", |a| self.input.name(a)),
                self.stack.name(t.pop),
                if push.is_empty() { "ε".to_string() } else { push.join(" ") }
            );
            let _ = writeln!(s, "  s{} -> s{} [label=\"{}\"];", t.from, t.to, escape(&label));
        }
        s.push_str("}\n");
        s
    }
}

/// Either representation of a context-free language.
#[derive(Clone, Debug)]
pub enum LanguageRep {
    Pda(Npda),
    Cfg(CfgRep),
}

/// A grammar with its CNF computed on first use.
#[derive(Clone, Debug)]
pub struct CfgRep {
    pub grammar: crate::cfg::Cfg,
    cnf: OnceLock<Arc<crate::cfg::Cnf>>,
}

impl CfgRep {
    pub fn new(grammar: crate::cfg::Cfg) -> Self {
        CfgRep { grammar, cnf: OnceLock::new() }
    }

    pub fn cnf(&self) -> &crate::cfg::Cnf {
        self.cnf.get_or_init(|| Arc::new(self.grammar.to_cnf()))
    }
}

impl LanguageRep {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            LanguageRep::Pda(p) => p.input(),
            LanguageRep::Cfg(g) => g.grammar.terminals(),
        }
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        match self {
            LanguageRep::Pda(p) => p.accepts(w),
            LanguageRep::Cfg(g) => {
                let enc = g.grammar.terminals().encode(w)?;
                Ok(g.cnf().member(&enc))
            }
        }
    }

    pub fn to_cfg(&self) -> crate::cfg::Cfg {
        match self {
            LanguageRep::Pda(p) => p.to_cfg(),
            LanguageRep::Cfg(g) => g.grammar.clone(),
        }
    }

    pub fn to_pda(&self) -> Npda {
        match self {
            LanguageRep::Pda(p) => p.clone(),
            LanguageRep::Cfg(g) => Npda::from_cfg(&g.grammar),
        }
    }

    pub fn prepare(&self) {
        match self {
            LanguageRep::Pda(p) => p.prepare(),
            LanguageRep::Cfg(g) => {
                let _ = g.cnf();
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures;
