//! Rees matrix semigroups over a semigroup with a word problem recognizer.

use std::collections::HashMap;

use crate::alphabet::{reversed, Alphabet, Letter, Word, SEP};
use crate::automata::{Gsm, Nfa};
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::LanguageRep;
use crate::semigroups::{finite_word_problem, FiniteSemigroup, WordProblemObject};

/// `M[S; I, Λ; P]` generated by the given triples. `sandwich[(λ, i)]` is a
/// word over the base alphabet representing `p_{λi}`.
#[derive(Clone, Debug)]
pub struct ReesMatrixSpec {
    pub base: WordProblemObject,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub sandwich: HashMap<(String, String), Word>,
    pub generators: Vec<(String, Letter, String)>,
}

pub fn rees_letter(i: &str, x: &str, l: &str) -> Letter {
    format!("({i},{x},{l})")
}

/// Generators as (row index, base letter, column index).
struct Checked {
    alphabet: Alphabet,
    gens: Vec<(usize, Letter, usize)>,
    /// `w[λ][i]`
    w: Vec<Vec<Word>>,
}

impl ReesMatrixSpec {
    fn check(&self) -> Result<Checked> {
        let row = |i: &str| self.rows.iter().position(|r| r == i).ok_or_else(|| Error::input(format!("unknown row index `{i}`")));
        let col = |l: &str| self.cols.iter().position(|c| c == l).ok_or_else(|| Error::input(format!("unknown column index `{l}`")));
        let mut w = vec![vec![Vec::new(); self.rows.len()]; self.cols.len()];
        for (lam, ws) in w.iter_mut().enumerate() {
            for (i, slot) in ws.iter_mut().enumerate() {
                let key = (self.cols[lam].clone(), self.rows[i].clone());
                let word = self
                    .sandwich
                    .get(&key)
                    .ok_or_else(|| Error::input(format!("sandwich entry ({}, {}) missing", key.0, key.1)))?;
                if word.is_empty() {
                    return Err(Error::input(format!("sandwich entry ({}, {}) is empty", key.0, key.1)));
                }
                self.base.alphabet().encode(word)?;
                *slot = word.clone();
            }
        }
        let mut alphabet = Alphabet::new();
        let mut gens = Vec::new();
        for (i, x, l) in &self.generators {
            self.base.alphabet().encode(std::slice::from_ref(x))?;
            let name = rees_letter(i, x, l);
            if alphabet.contains(&name) {
                return Err(Error::input(format!("generator {name} listed twice")));
            }
            alphabet.insert(&name);
            gens.push((row(i)?, x.clone(), col(l)?));
        }
        if gens.is_empty() {
            return Err(Error::input("a Rees matrix semigroup needs at least one generator"));
        }
        Ok(Checked { alphabet, gens, w })
    }
}

/// Folds `(i₁,x₁,λ₁)…(i_m,x_m,λ_m)` into `(i₁, x₁ w_{λ₁i₂} x₂ …, λ_m)`.
fn fold(c: &Checked, index: &HashMap<Letter, usize>, u: &[Letter]) -> Option<(usize, Word, usize)> {
    let mut it = u.iter().map(|l| &c.gens[index[l]]);
    let (i1, x1, mut lam) = it.next()?.clone();
    let mut mid = vec![x1];
    for (i, x, l) in it {
        mid.extend(c.w[lam][*i].iter().cloned());
        mid.push(x.clone());
        lam = *l;
    }
    Some((i1, mid, lam))
}

pub fn rees_oracle(spec: &ReesMatrixSpec) -> Result<EqualityOracle> {
    let c = spec.check()?;
    Ok(build_oracle(spec, c))
}

fn build_oracle(spec: &ReesMatrixSpec, c: Checked) -> EqualityOracle {
    let index: HashMap<Letter, usize> = c.alphabet.iter().enumerate().map(|(k, l)| (l.to_string(), k)).collect();
    let base = spec.base.oracle().clone();
    EqualityOracle::new(c.alphabet.clone(), "Rees matrix: fold triples, compare indices and middles", move |u, v| {
        match (fold(&c, &index, u), fold(&c, &index, v)) {
            (Some((i, m, l)), Some((j, n, k))) => Ok(i == j && l == k && base.equal(&m, &n)?),
            (None, None) => Ok(true),
            _ => Ok(false),
        }
    })
}

/// The gsm sending `u#v^rev` to `uφ#(vφ)^rev`, followed by `#` when the
/// outer indices of `u` and `v` differ.
fn phi_gsm(c: &Checked, spec: &ReesMatrixSpec) -> Result<Gsm> {
    let (ni, nl) = (spec.rows.len(), spec.cols.len());
    let mut input = c.alphabet.clone();
    input.insert(SEP);
    let mut output = spec.base.alphabet().clone();
    output.insert(SEP);
    let mut g = Gsm::new(input, output, "start");
    let mut pre = HashMap::new();
    let mut post0 = HashMap::new();
    let mut post = HashMap::new();
    for i in 0..ni {
        for l in 0..nl {
            pre.insert((i, l), g.add_state(format!("pre({},{})", spec.rows[i], spec.cols[l])));
            post0.insert((i, l), g.add_state(format!("post({},{})", spec.rows[i], spec.cols[l])));
            for lv in 0..nl {
                for j in 0..ni {
                    let s = g.add_state(format!(
                        "post({},{};{},{})",
                        spec.rows[i], spec.cols[l], spec.cols[lv], spec.rows[j]
                    ));
                    post.insert((i, l, lv, j), s);
                }
            }
        }
    }
    let sep = [SEP.to_string()];
    for (k, name) in c.alphabet.iter().enumerate() {
        let (gi, x, gl) = &c.gens[k];
        g.add_transition(g.initial(), name, pre[&(*gi, *gl)], std::slice::from_ref(x))?;
        for i in 0..ni {
            for l in 0..nl {
                let mut out = c.w[l][*gi].clone();
                out.push(x.clone());
                g.add_transition(pre[&(i, l)], name, pre[&(i, *gl)], &out)?;
                // first letter after `#` is the last letter of v
                g.add_transition(post0[&(i, l)], name, post[&(i, l, *gl, *gi)], std::slice::from_ref(x))?;
                for lv in 0..nl {
                    for j in 0..ni {
                        let mut out = reversed(&c.w[*gl][j]);
                        out.push(x.clone());
                        g.add_transition(post[&(i, l, lv, j)], name, post[&(i, l, lv, *gi)], &out)?;
                    }
                }
            }
        }
    }
    for i in 0..ni {
        for l in 0..nl {
            g.add_transition(pre[&(i, l)], SEP, post0[&(i, l)], &sep)?;
            for lv in 0..nl {
                for j in 0..ni {
                    let terminal: &[Letter] = if i == j && l == lv { &[] } else { &sep };
                    g.set_final(post[&(i, l, lv, j)], terminal)?;
                }
            }
        }
    }
    Ok(g)
}

/// `A(WA)*#A(W^rev A)*` over the base alphabet plus `#`.
fn bridge(c: &Checked, base: &Alphabet) -> Result<Nfa> {
    let mut full = base.clone();
    full.insert(SEP);
    let letters: Vec<Letter> = base.names().to_vec();
    let a = Nfa::letter_class(&full, &letters)?;
    let mut ws: Vec<Word> = c.w.iter().flatten().cloned().collect();
    ws.sort();
    ws.dedup();
    let wr: Vec<Word> = ws.iter().map(|w| reversed(w)).collect();
    let before = a.concat(&Nfa::word_set(&full, &ws)?.concat(&a)?.star())?;
    let after = a.concat(&Nfa::word_set(&full, &wr)?.concat(&a)?.star())?;
    before.concat(&Nfa::letter_class(&full, &[SEP.to_string()])?)?.concat(&after)
}

pub fn rees_matrix(spec: &ReesMatrixSpec) -> Result<WordProblemObject> {
    if spec.base.is_monoid() {
        return Err(Error::input("the Rees matrix base must be given in semigroup mode"));
    }
    let c = spec.check()?;
    let p = spec.base.require_pda()?;
    let l = p.intersect_regular(&bridge(&c, spec.base.alphabet())?)?;
    let m = l.inverse_gsm(&phi_gsm(&c, spec)?)?;
    let alphabet = c.alphabet.clone();
    let oracle = build_oracle(spec, c);
    WordProblemObject::new(alphabet, false, Some(LanguageRep::Pda(m)), oracle)
}

/// The gsm Φ of a spec, for inspection.
pub fn rees_gsm(spec: &ReesMatrixSpec) -> Result<Gsm> {
    let c = spec.check()?;
    phi_gsm(&c, spec)
}

/// `C2 = {e, a}` with `I = Λ = {1, 2}`, `p₂₂ = a` and `e` elsewhere, generated by
/// all eight triples.
pub fn c2_rees_fixture() -> Result<ReesMatrixSpec> {
    let c2 = FiniteSemigroup::c2();
    let base = finite_word_problem(&c2, &["e".to_string(), "a".to_string()], false)?;
    let idx = ["1".to_string(), "2".to_string()];
    let mut sandwich = HashMap::new();
    for l in &idx {
        for i in &idx {
            let p = if l == "2" && i == "2" { "a" } else { "e" };
            sandwich.insert((l.clone(), i.clone()), vec![p.to_string()]);
        }
    }
    let mut generators = Vec::new();
    for i in &idx {
        for x in ["e", "a"] {
            for l in &idx {
                generators.push((i.clone(), x.to_string(), l.clone()));
            }
        }
    }
    Ok(ReesMatrixSpec { base, rows: idx.to_vec(), cols: idx.to_vec(), sandwich, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cross_check;

    fn w(s: &str) -> Word {
        // letters are written back to back: "(1,a,1)(1,e,2)"
        s.split_inclusive(')').map(String::from).collect()
    }

    #[test]
    fn oracle_examples() {
        let o = rees_oracle(&c2_rees_fixture().unwrap()).unwrap();
        assert!(o.equal(&w("(1,a,1)(1,a,1)"), &w("(1,e,1)")).unwrap());
        assert!(!o.equal(&w("(1,a,1)"), &w("(1,a,2)")).unwrap());
        assert!(o.equal(&w("(2,a,2)(2,a,2)"), &w("(2,a,2)")).unwrap());
    }

    #[test]
    fn gsm_terminal_output() {
        let spec = c2_rees_fixture().unwrap();
        let g = rees_gsm(&spec).unwrap();
        let out = g.apply(&["(1,a,1)".to_string(), "#".into(), "(1,a,1)".into()]);
        assert_eq!(out, Some(vec!["a".to_string(), "#".into(), "a".into()]));
        let mismatch = g.apply(&["(1,a,1)".to_string(), "#".into(), "(2,a,1)".into()]);
        assert_eq!(mismatch, Some(vec!["a".to_string(), "#".into(), "a".into(), "#".into()]));
    }

    #[test]
    fn recognizer_examples() {
        let m = rees_matrix(&c2_rees_fixture().unwrap()).unwrap();
        assert!(m.accepts_pair(&w("(1,a,1)(1,a,1)"), &w("(1,e,1)")).unwrap());
        assert!(!m.accepts_pair(&w("(1,a,1)"), &w("(2,a,1)")).unwrap());
        assert!(m.accepts_pair(&w("(1,a,2)(1,a,1)"), &w("(1,e,1)")).unwrap());
        let r = cross_check(&m, 2, 2, 2).unwrap();
        assert!(r.ok(), "{r}");
    }
}
