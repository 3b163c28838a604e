//! Evaluates a spec document into library objects, one definition at a time.

use std::collections::{BTreeMap, HashMap};

use cfwp::cfg::Cfg;
use cfwp::constructions::{
    bruck_reilly, direct_factor, direct_product_finite, free_product_monoids, free_product_semigroups, rees_matrix,
    strong_semilattice, word_hyperbolic_structure, BruckReillySpec, ReesMatrixSpec, SemilatticeSpec,
};
use cfwp::pda::{AcceptMode, CfgRep, LanguageRep, Npda};
use cfwp::rewriting::{LhsLanguage, MonadicRewritingSystem};
use cfwp::semigroups::{
    change_generators, finite_word_problem, free_group_on, free_monoid_on, rewriting_word_problem, FiniteSemigroup,
    WordProblemObject,
};
use cfwp::{Alphabet, Error, Gsm, Nfa, SemilatticeOrder};

use crate::doc::{Body, LhsSpec, SpecDocument, Word};
use crate::CliError;

/// An evaluated definition.
#[derive(Clone, Debug)]
pub enum Object {
    Nfa(Nfa),
    Gsm(Gsm),
    Language(LanguageRep),
    Rewriting(MonadicRewritingSystem),
    Finite(FiniteSemigroup),
    /// A word-problem object with notes on derived data (circuits,
    /// relabelings, Bruck–Reilly parameters) for `build` to report.
    WordProblem(WordProblemObject, Vec<String>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Nfa(_) => "nfa",
            Object::Gsm(_) => "gsm",
            Object::Language(LanguageRep::Pda(_)) => "pda",
            Object::Language(LanguageRep::Cfg(_)) => "grammar",
            Object::Rewriting(_) => "rewriting system",
            Object::Finite(_) => "finite semigroup",
            Object::WordProblem(..) => "word problem",
        }
    }
}

type Env = HashMap<String, Object>;

fn get<'a>(env: &'a Env, name: &str) -> Result<&'a Object, Error> {
    env.get(name).ok_or_else(|| Error::input(format!("`{name}` is not defined")))
}

fn wrong(name: &str, want: &str, got: &Object) -> Error {
    Error::input(format!("`{name}` is a {}, expected a {want}", got.kind()))
}

fn want_wp<'a>(env: &'a Env, name: &str) -> Result<&'a WordProblemObject, Error> {
    match get(env, name)? {
        Object::WordProblem(w, _) => Ok(w),
        o => Err(wrong(name, "word problem", o)),
    }
}

fn want_finite<'a>(env: &'a Env, name: &str) -> Result<&'a FiniteSemigroup, Error> {
    match get(env, name)? {
        Object::Finite(t) => Ok(t),
        o => Err(wrong(name, "finite semigroup", o)),
    }
}

fn want_nfa<'a>(env: &'a Env, name: &str) -> Result<&'a Nfa, Error> {
    match get(env, name)? {
        Object::Nfa(n) => Ok(n),
        o => Err(wrong(name, "nfa", o)),
    }
}

fn want_gsm<'a>(env: &'a Env, name: &str) -> Result<&'a Gsm, Error> {
    match get(env, name)? {
        Object::Gsm(g) => Ok(g),
        o => Err(wrong(name, "gsm", o)),
    }
}

/// A language: a machine, a grammar, or a word problem's recognizer.
fn want_language<'a>(env: &'a Env, name: &str) -> Result<&'a LanguageRep, Error> {
    match get(env, name)? {
        Object::Language(l) => Ok(l),
        Object::WordProblem(w, _) => w.require_recognizer(),
        o => Err(wrong(name, "pda or grammar", o)),
    }
}

fn hash_map(m: &BTreeMap<String, Word>) -> HashMap<String, Word> {
    m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

fn nfa(alphabet: &[String], states: &[String], initial: &[String], finals: &[String], moves: &[(String, Option<String>, String)]) -> Result<Nfa, Error> {
    let mut n = Nfa::new(Alphabet::from_names(alphabet.iter().cloned()));
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut id = |n: &mut Nfa, s: &str| *ids.entry(s.to_string()).or_insert_with(|| n.add_state(s));
    for s in states {
        id(&mut n, s);
    }
    for s in initial {
        let q = id(&mut n, s);
        n.set_initial(q);
    }
    for s in finals {
        let q = id(&mut n, s);
        n.set_final(q);
    }
    for (p, a, q) in moves {
        let (p, q) = (id(&mut n, p), id(&mut n, q));
        n.add_transition(p, a.as_deref(), q)?;
    }
    Ok(n)
}

fn gsm(input: &[String], output: &[String], initial: &str, states: &[String], moves: &[(String, String, String, Word)], finals: &[(String, Word)]) -> Result<Gsm, Error> {
    let mut g = Gsm::new(Alphabet::from_names(input.iter().cloned()), Alphabet::from_names(output.iter().cloned()), initial);
    let mut ids: HashMap<String, usize> = HashMap::from([(initial.to_string(), g.initial())]);
    let mut id = |g: &mut Gsm, s: &str| *ids.entry(s.to_string()).or_insert_with(|| g.add_state(s));
    for s in states {
        id(&mut g, s);
    }
    for (p, a, q, out) in moves {
        let (p, q) = (id(&mut g, p), id(&mut g, q));
        g.add_transition(p, a, q, out)?;
    }
    for (s, out) in finals {
        let q = id(&mut g, s);
        g.set_final(q, out)?;
    }
    Ok(g)
}

#[allow(clippy::too_many_arguments)]
fn pda(
    input: &[String],
    stack: &[String],
    bottom: &str,
    initial: &str,
    mode: &str,
    states: &[String],
    finals: &[String],
    moves: &[crate::doc::PdaMove],
) -> Result<Npda, Error> {
    let mut p = Npda::new(Alphabet::from_names(input.iter().cloned()), bottom, initial, AcceptMode::parse(mode)?);
    for z in stack {
        p.stack_symbol(z.as_str());
    }
    let mut ids: HashMap<String, usize> = HashMap::from([(initial.to_string(), p.initial())]);
    let mut id = |p: &mut Npda, s: &str| *ids.entry(s.to_string()).or_insert_with(|| p.add_state(s));
    for s in states {
        id(&mut p, s);
    }
    for s in finals {
        let q = id(&mut p, s);
        p.set_final(q);
    }
    for m in moves {
        let (from, to) = (id(&mut p, &m.from), id(&mut p, &m.to));
        let pop = p.stack_symbol(m.pop.as_str());
        let push: Vec<usize> = m.push.iter().map(|z| p.stack_symbol(z.as_str())).collect();
        p.add_transition(from, m.read.as_deref(), pop, to, &push)?;
    }
    Ok(p)
}

fn eval(env: &Env, body: &Body) -> Result<Object, Error> {
    Ok(match body {
        Body::Nfa { alphabet, states, initial, finals, transitions } => {
            Object::Nfa(nfa(alphabet, states, initial, finals, transitions)?)
        }
        Body::Gsm { input, output, initial, states, transitions, finals } => {
            Object::Gsm(gsm(input, output, initial, states, transitions, finals)?)
        }
        Body::Homomorphism { input, output, images } => Object::Gsm(Gsm::homomorphism(
            Alphabet::from_names(input.iter().cloned()),
            Alphabet::from_names(output.iter().cloned()),
            &hash_map(images),
        )?),
        Body::Pda { input, stack, bottom, initial, mode, states, finals, transitions } => {
            Object::Language(LanguageRep::Pda(pda(input, stack, bottom, initial, mode, states, finals, transitions)?))
        }
        Body::Grammar { terminals, text } => {
            let g = Cfg::parse_text(text, &Alphabet::from_names(terminals.iter().cloned()))?;
            Object::Language(LanguageRep::Cfg(CfgRep::new(g)))
        }
        Body::IntersectRegular { pda, nfa } => {
            let p = want_language(env, pda)?.to_pda();
            Object::Language(LanguageRep::Pda(p.intersect_regular(want_nfa(env, nfa)?)?))
        }
        Body::InverseGsm { pda, gsm } => {
            let p = want_language(env, pda)?.to_pda();
            Object::Language(LanguageRep::Pda(p.inverse_gsm(want_gsm(env, gsm)?)?))
        }
        Body::Union { of } => {
            let ps = of.iter().map(|n| Ok(want_language(env, n)?.to_pda())).collect::<Result<Vec<_>, Error>>()?;
            Object::Language(LanguageRep::Pda(Npda::union(&ps)?))
        }
        Body::Rewriting { alphabet, confluent, rules } => {
            let mut rs = MonadicRewritingSystem::new(Alphabet::from_names(alphabet.iter().cloned()), *confluent);
            for r in rules {
                let lhs = match &r.lhs {
                    LhsSpec::Words(ws) => LhsLanguage::Finite(ws.clone()),
                    LhsSpec::Nfa(n) => LhsLanguage::Nfa(want_nfa(env, n)?.clone()),
                    LhsSpec::Grammar(g) => match want_language(env, g)? {
                        LanguageRep::Cfg(c) => LhsLanguage::Cfg(c.clone()),
                        LanguageRep::Pda(p) => LhsLanguage::grammar(p.to_cfg()),
                    },
                };
                rs.add_rules(r.rhs.as_deref(), lhs)?;
            }
            Object::Rewriting(rs)
        }
        Body::FiniteSemigroup { elements, table } => Object::Finite(FiniteSemigroup::from_named_table(elements.clone(), table)?),
        Body::FreeMonoid { letters, monoid } => Object::WordProblem(free_monoid_on(letters, *monoid)?, vec![]),
        Body::FreeGroup { pairs, monoid } => Object::WordProblem(free_group_on(pairs, *monoid)?, vec![]),
        Body::FiniteWordProblem { semigroup, generators, monoid } => {
            Object::WordProblem(finite_word_problem(want_finite(env, semigroup)?, generators, *monoid)?, vec![])
        }
        Body::RewritingWordProblem { system } => match get(env, system)? {
            Object::Rewriting(rs) => Object::WordProblem(rewriting_word_problem(rs)?, vec![]),
            o => return Err(wrong(system, "rewriting system", o)),
        },
        Body::WithRecognizer { base, recognizer } => {
            let r = want_language(env, recognizer)?.clone();
            Object::WordProblem(want_wp(env, base)?.clone().with_recognizer(r)?, vec![])
        }
        Body::ChangeGenerators { base, generators } => {
            Object::WordProblem(change_generators(want_wp(env, base)?, generators)?, vec![])
        }
        Body::DirectProductFinite { base, factor } => {
            Object::WordProblem(direct_product_finite(want_wp(env, base)?, want_finite(env, factor)?)?, vec![])
        }
        Body::DirectFactor { product, factor, generators } => {
            let t = want_finite(env, factor)?;
            let (w, c) = direct_factor(want_wp(env, product)?, t, generators)?;
            let labels: Vec<&str> = c.labels.iter().map(|&x| t.name(x)).collect();
            let note = format!("circuit: c = {}, w = {}, labels [{}]", t.name(c.c), t.name(c.w), labels.join(" "));
            Object::WordProblem(w, vec![note])
        }
        Body::FreeProduct { left, right, monoid } => {
            let (s, t) = (want_wp(env, left)?, want_wp(env, right)?);
            let w = if *monoid { free_product_monoids(s, t)? } else { free_product_semigroups(s, t)? };
            let notes = w.relabeling.iter().map(|(a, b)| format!("relabeled `{a}` of `{right}` as `{b}`")).collect();
            Object::WordProblem(w, notes)
        }
        Body::StrongSemilattice { elements, above, components, homs } => {
            let idx = |e: &str| {
                elements
                    .iter()
                    .position(|x| x == e)
                    .ok_or_else(|| Error::input(format!("`{e}` is not a semilattice element")))
            };
            let rel = above.iter().map(|(hi, lo)| Ok((idx(hi)?, idx(lo)?))).collect::<Result<Vec<_>, Error>>()?;
            let order = SemilatticeOrder::from_relations(elements.clone(), &rel)?;
            let comps = components.iter().map(|c| want_wp(env, c).cloned()).collect::<Result<Vec<_>, Error>>()?;
            let mut hm = HashMap::new();
            for h in homs {
                hm.insert((idx(&h.from)?, idx(&h.to)?), hash_map(&h.images));
            }
            let spec = SemilatticeSpec { order, components: comps, homs: hm };
            Object::WordProblem(strong_semilattice(&spec)?, vec![])
        }
        Body::ReesMatrix { base, rows, cols, sandwich, generators } => {
            let sandwich = sandwich.iter().map(|e| ((e.col.clone(), e.row.clone()), e.entry.clone())).collect();
            let spec = ReesMatrixSpec {
                base: want_wp(env, base)?.clone(),
                rows: rows.clone(),
                cols: cols.clone(),
                sandwich,
                generators: generators.clone(),
            };
            Object::WordProblem(rees_matrix(&spec)?, vec![])
        }
        Body::BruckReilly { base, phi, image_bound } => {
            let spec = BruckReillySpec { base: want_wp(env, base)?.clone(), phi: hash_map(phi), image_bound: *image_bound };
            let (w, d) = bruck_reilly(&spec)?;
            let note = format!("derived: n = {}, i = {}, p = {}, m = {}, |T| = {}", d.n, d.i, d.p, d.m, d.t.len());
            Object::WordProblem(w, vec![note])
        }
        Body::HyperbolicStructure { of } => Object::Language(word_hyperbolic_structure(want_wp(env, of)?)?),
    })
}

/// Evaluates every definition in order and returns the target, with each
/// failure located at its definition.
pub fn evaluate(doc: &SpecDocument) -> Result<Object, CliError> {
    let mut env: Env = HashMap::new();
    for d in &doc.definitions {
        let o = eval(&env, &d.body).map_err(|source| CliError::Definition { name: d.name.clone(), source })?;
        env.insert(d.name.clone(), o);
    }
    Ok(env.remove(&doc.target).expect("target checked at parse time"))
}
