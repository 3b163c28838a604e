use std::collections::HashMap;
use std::fmt::Write;

use super::nfa::escape;
use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// A deterministic generalized sequential machine: a partial deterministic
/// finite automaton whose transitions emit words, with an extra output
/// emitted on halting in a final state.
#[derive(Clone, Debug)]
pub struct Gsm {
    state_names: Vec<String>,
    input: Alphabet,
    output: Alphabet,
    /// (state, input letter) -> (next state, output in output-alphabet indices)
    delta: HashMap<(usize, usize), (usize, Vec<usize>)>,
    initial: usize,
    finals: Vec<bool>,
    terminal: Vec<Vec<usize>>,
}

impl Gsm {
    /// Creates a gsm with a single initial state named `initial`.
    pub fn new(input: Alphabet, output: Alphabet, initial: impl Into<String>) -> Self {
        Gsm {
            state_names: vec![initial.into()],
            input,
            output,
            delta: HashMap::new(),
            initial: 0,
            finals: vec![false],
            terminal: vec![Vec::new()],
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.finals.push(false);
        self.terminal.push(Vec::new());
        self.state_names.len() - 1
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

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    fn encode_out(&self, w: &[Letter]) -> Result<Vec<usize>> {
        self.output.encode(w)
    }

    pub fn add_transition(&mut self, from: usize, letter: &str, to: usize, out: &[Letter]) -> Result<()> {
        let l = self
            .input
            .get(letter)
            .ok_or_else(|| Error::input(format!("gsm input letter `{letter}` is not in the input alphabet")))?;
        if from >= self.num_states() || to >= self.num_states() {
            return Err(Error::input("gsm transition references an unknown state"));
        }
        let out = self.encode_out(out)?;
        if self.delta.insert((from, l), (to, out)).is_some() {
            return Err(Error::input(format!(
                "gsm is not deterministic: two moves from `{}` on `{letter}`",
                self.state_names[from]
            )));
        }
        Ok(())
    }

    /// Marks a state final with the given terminal output.
    pub fn set_final(&mut self, s: usize, terminal: &[Letter]) -> Result<()> {
        self.finals[s] = true;
        self.terminal[s] = self.encode_out(terminal)?;
        Ok(())
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub(crate) fn terminal_output(&self, s: usize) -> &[usize] {
        &self.terminal[s]
    }

    /// Transitions as (from, input letter, to, output) in index form.
    pub(crate) fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize, &[usize])> {
        self.delta.iter().map(|(&(p, a), (q, out))| (p, a, *q, out.as_slice()))
    }

    pub(crate) fn step(&self, s: usize, a: usize) -> Option<(usize, &[usize])> {
        self.delta.get(&(s, a)).map(|(q, out)| (*q, out.as_slice()))
    }

    /// The image of `w`, or `None` when the gsm is undefined on it. Letters
    /// outside the input alphabet make the image undefined.
    pub fn apply(&self, w: &[Letter]) -> Option<Word> {
        let mut s = self.initial;
        let mut out = Vec::new();
        for l in w {
            let a = self.input.get(l)?;
            let (q, o) = self.step(s, a)?;
            out.extend(o.iter().map(|&i| self.output.name(i).to_string()));
            s = q;
        }
        if !self.finals[s] {
            return None;
        }
        out.extend(self.terminal[s].iter().map(|&i| self.output.name(i).to_string()));
        Some(out)
    }

    /// Labelled graph in dot syntax; edges read `input / output`, final
    /// states show their terminal output.
    pub fn to_dot(&self) -> String {
        let show = |w: &[usize]| -> String {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|&i| self.output.name(i)).collect::<Vec<_>>().join(" ")
            }
        };
        let mut s = String::from("digraph gsm {\n  rankdir=LR;\n");
        for (i, n) in self.state_names.iter().enumerate() {
            if self.finals[i] {
                let label = format!("{n} / {}", show(&self.terminal[i]));
                let _ = writeln!(s, "  s{i} [label=\"{}\", shape=doublecircle];", escape(&label));
            } else {
                let _ = writeln!(s, "  s{i} [label=\"{}\", shape=circle];", escape(n));
            }
        }
        let _ = writeln!(s, "  start [shape=point];\n  start -> s{};", self.initial);
        let mut edges: Vec<_> = self.transitions().collect();
        edges.sort();
        for (p, a, q, out) in edges {
            let label = format!("{} / {}", self.input.name(a), show(out));
            let _ = writeln!(s, "  s{p} -> s{q} [label=\"{}\"];", escape(&label));
        }
        s.push_str("}\n");
        s
    }

    /// A letter-to-word homomorphism as a one-state gsm.
    pub fn homomorphism(input: Alphabet, output: Alphabet, image: &HashMap<Letter, Word>) -> Result<Gsm> {
        let mut g = Gsm::new(input.clone(), output, "h");
        for l in input.iter() {
            let w = image
                .get(l)
                .ok_or_else(|| Error::input(format!("homomorphism has no image for `{l}`")))?;
            g.add_transition(0, l, 0, w)?;
        }
        g.set_final(0, &[])?;
        Ok(g)
    }
}
