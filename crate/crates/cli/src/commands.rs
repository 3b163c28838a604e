//! The four commands. Each returns the text to print and the exit code.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cfwp::alphabet::show;
use cfwp::oracle::cross_check;
use cfwp::pda::{LanguageRep, Npda};
use cfwp::semigroups::WordProblemObject;
use cfwp::{Alphabet, Word};

use crate::build::{evaluate, Object};
use crate::doc::{Body, Definition, PdaMove, SpecDocument, VERSION};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportKind {
    Pda,
    Cfg,
    Dot,
}

fn target_wp(doc: &SpecDocument) -> Result<(WordProblemObject, Vec<String>), CliError> {
    match evaluate(doc)? {
        Object::WordProblem(w, notes) => Ok((w, notes)),
        o => Err(CliError::Usage(format!("target `{}` is a {}, not a word problem", doc.target, o.kind()))),
    }
}

/// Letters separated by whitespace; a single token that is not a generator
/// is read one character per letter.
pub fn parse_word(s: &str, alphabet: &Alphabet) -> Word {
    let toks: Vec<&str> = s.split_whitespace().collect();
    match toks.as_slice() {
        [] => vec![],
        [one] if !alphabet.contains(one) => one.chars().map(String::from).collect(),
        _ => toks.iter().map(|t| t.to_string()).collect(),
    }
}

pub fn run_build(doc: &SpecDocument) -> Result<Outcome, CliError> {
    let obj = evaluate(doc)?;
    let mut s = String::new();
    let _ = writeln!(s, "target: {} ({})", doc.target, obj.kind());
    match &obj {
        Object::WordProblem(w, notes) => {
            let _ = writeln!(s, "generators: {}", w.alphabet().names().join(" "));
            let _ = writeln!(s, "mode: {}", if w.is_monoid() { "monoid" } else { "semigroup" });
            match w.recognizer() {
                Some(r) => {
                    let _ = writeln!(s, "recognizer: {}", describe(r));
                }
                None => {
                    let _ = writeln!(s, "recognizer: none");
                }
            }
            let _ = writeln!(s, "oracle: {}", w.oracle().description());
            let _ = writeln!(s, "deterministic: {}", w.deterministic_hint());
            for n in notes {
                let _ = writeln!(s, "{n}");
            }
        }
        Object::Language(r) => {
            let _ = writeln!(s, "{}", describe(r));
        }
        Object::Nfa(n) => {
            let _ = writeln!(s, "states: {}, deterministic: {}", n.num_states(), n.is_deterministic());
        }
        Object::Gsm(g) => {
            let _ = writeln!(s, "states: {}", g.num_states());
        }
        Object::Rewriting(rs) => {
            let _ = writeln!(s, "alphabet: {}, confluent: {}", rs.alphabet().names().join(" "), rs.confluent());
        }
        Object::Finite(t) => {
            let _ = writeln!(s, "elements: {}, decomposable: {}", t.names().join(" "), t.is_decomposable());
        }
    }
    Ok(Outcome::ok(s))
}

fn describe(r: &LanguageRep) -> String {
    match r {
        LanguageRep::Pda(p) => format!(
            "pda with {} states, {} stack symbols, {} transitions, acceptance {}",
            p.num_states(),
            p.stack_alphabet().len(),
            p.transitions().len(),
            p.mode().as_str()
        ),
        LanguageRep::Cfg(g) => format!(
            "grammar with {} nonterminals, {} productions",
            g.grammar.num_nonterminals(),
            g.grammar.productions().len()
        ),
    }
}

/// Decides `left = right` in the target; the separator is added here.
pub fn run_query(doc: &SpecDocument, left: &str, right: &str) -> Result<Outcome, CliError> {
    let (w, _) = target_wp(doc)?;
    let (u, v) = (parse_word(left, w.alphabet()), parse_word(right, w.alphabet()));
    let yes = w.query(&u, &v)?;
    let via = if w.recognizer().is_some() { "recognizer" } else { "oracle" };
    let text = format!("{} ({via}: u = {}, v = {})\n", if yes { "accept" } else { "reject" }, show(&u), show(&v));
    Ok(Outcome { text, code: if yes { 0 } else { 1 } })
}

/// Exhaustive comparison within the bounds, or `sample` random pairs drawn
/// with `seed` when given.
pub fn run_crosscheck(
    doc: &SpecDocument,
    max_left: usize,
    max_right: usize,
    jobs: usize,
    sample: Option<usize>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let (w, _) = target_wp(doc)?;
    w.require_recognizer()?;
    if let Some(n) = sample {
        return sampled(&w, max_left, max_right, n, seed);
    }
    let report = cross_check(&w, max_left, max_right, jobs.max(1))?;
    Ok(Outcome { text: report.to_string(), code: if report.ok() { 0 } else { 1 } })
}

fn sampled(w: &WordProblemObject, max_left: usize, max_right: usize, n: usize, seed: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = w.alphabet().names();
    let min = usize::from(!w.is_monoid());
    if letters.is_empty() || max_left < min || max_right < min {
        return Err(CliError::Usage("no pairs within these bounds".into()));
    }
    let draw = |max: usize, rng: &mut ChaCha8Rng| -> Word {
        let len = rng.gen_range(min..=max);
        (0..len).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect()
    };
    let mut s = String::new();
    let _ = writeln!(s, "bounds: |u| <= {max_left}, |v| <= {max_right}");
    let _ = writeln!(s, "sampled: {n} (seed {seed})");
    let mut bad = Vec::new();
    let mut accepted = 0;
    for _ in 0..n {
        let u = draw(max_left, &mut rng);
        let v = draw(max_right, &mut rng);
        let r = w.accepts_pair(&u, &v)?;
        let o = w.oracle_equal(&u, &v)?;
        accepted += r as usize;
        if r != o {
            bad.push((u, v, r));
        }
    }
    let _ = writeln!(s, "accepted: {accepted}");
    let _ = writeln!(s, "mismatches: {}", bad.len());
    for (u, v, r) in bad.iter().take(20) {
        let _ = writeln!(
            s,
            "  u = {}, v = {}: recognizer {}, oracle {}",
            show(u),
            show(v),
            if *r { "accepts" } else { "rejects" },
            if *r { "different" } else { "equal" }
        );
    }
    Ok(Outcome { text: s, code: if bad.is_empty() { 0 } else { 1 } })
}

pub fn run_export(doc: &SpecDocument, what: ExportKind) -> Result<Outcome, CliError> {
    let obj = evaluate(doc)?;
    let lang = match &obj {
        Object::WordProblem(w, _) => Some(w.require_recognizer()?.clone()),
        Object::Language(r) => Some(r.clone()),
        _ => None,
    };
    let text = match (what, &obj, lang) {
        (ExportKind::Dot, Object::Nfa(n), _) => n.to_dot(),
        (ExportKind::Dot, Object::Gsm(g), _) => g.to_dot(),
        (ExportKind::Dot, _, Some(r)) => r.to_pda().to_dot(),
        (ExportKind::Pda, _, Some(r)) => pda_document(&r.to_pda()).to_json(),
        (ExportKind::Cfg, _, Some(r)) => r.to_cfg().prune().to_text(),
        (k, o, _) => {
            return Err(CliError::Usage(format!(
                "cannot export {} from target `{}` ({})",
                format!("{k:?}").to_lowercase(),
                doc.target,
                o.kind()
            )))
        }
    };
    Ok(Outcome::ok(text))
}

/// A machine as a one-definition spec document, with states, stack symbols
/// and moves sorted by name so that the text does not depend on construction
/// order. Repeated state names get a suffix.
pub fn pda_document(p: &Npda) -> SpecDocument {
    let mut order: Vec<usize> = (0..p.num_states()).collect();
    order.sort_by(|&a, &b| (a != p.initial(), p.state_name(a)).cmp(&(b != p.initial(), p.state_name(b))));
    let mut names = vec![String::new(); p.num_states()];
    let mut used = std::collections::HashSet::new();
    for (k, &q) in order.iter().enumerate() {
        let mut n = p.state_name(q).to_string();
        if !used.insert(n.clone()) {
            n = format!("{n}~{k}");
            used.insert(n.clone());
        }
        names[q] = n;
    }
    let stack = p.stack_alphabet();
    let mut transitions: Vec<PdaMove> = p
        .transitions()
        .iter()
        .map(|t| PdaMove {
            from: names[t.from].clone(),
            read: t.input.map(|a| p.input().name(a).to_string()),
            pop: stack.name(t.pop).to_string(),
            to: names[t.to].clone(),
            push: t.push.iter().map(|&z| stack.name(z).to_string()).collect(),
        })
        .collect();
    transitions.sort();
    let mut symbols = stack.names()[1..].to_vec();
    symbols.sort();
    let body = Body::Pda {
        input: p.input().names().to_vec(),
        stack: symbols,
        bottom: stack.name(0).to_string(),
        initial: names[p.initial()].clone(),
        mode: p.mode().as_str().to_string(),
        states: order.iter().map(|&q| names[q].clone()).collect(),
        finals: order.iter().filter(|&&q| p.is_final(q)).map(|&q| names[q].clone()).collect(),
        transitions,
    };
    SpecDocument { version: VERSION, definitions: vec![Definition { name: "pda".into(), body }], target: "pda".into() }
}
