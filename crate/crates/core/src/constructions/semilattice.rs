//! Strong semilattices of semigroups.

use std::collections::HashMap;
use std::sync::Arc;

use crate::alphabet::{reversed, Alphabet, Letter, Word, SEP};
use crate::automata::{content_automaton, Gsm, Nfa, SemilatticeOrder};
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::{LanguageRep, Npda};
use crate::semigroups::WordProblemObject;

/// Components indexed by the elements of `order`; `homs[(a, b)]` for
/// `a ≥ b` maps each generator of component `a` to a word over component
/// `b`'s generators. Missing pairs are obtained by composing along the order.
#[derive(Clone, Debug)]
pub struct SemilatticeSpec {
    pub order: SemilatticeOrder,
    pub components: Vec<WordProblemObject>,
    pub homs: HashMap<(usize, usize), HashMap<Letter, Word>>,
}

/// Letter images into each component, checked for coherence.
struct Resolved {
    origin: HashMap<Letter, usize>,
    alphabet: Alphabet,
    /// `into[a]` maps every letter whose origin is ≥ `a` to a word over `A_a`
    into: Vec<HashMap<Letter, Word>>,
}

fn apply(map: &HashMap<Letter, Word>, w: &[Letter]) -> Word {
    w.iter().flat_map(|l| map[l].iter().cloned()).collect()
}

impl SemilatticeSpec {
    fn resolve(&self) -> Result<Resolved> {
        let y = &self.order;
        if self.components.len() != y.len() {
            return Err(Error::input(format!(
                "{} components given for a semilattice of {} elements",
                self.components.len(),
                y.len()
            )));
        }
        let mut origin = HashMap::new();
        let mut alphabet = Alphabet::new();
        for (a, c) in self.components.iter().enumerate() {
            for l in c.alphabet().iter() {
                if origin.insert(l.to_string(), a).is_some() {
                    return Err(Error::input(format!("letter `{l}` belongs to two components")));
                }
                alphabet.insert(l);
            }
        }
        for (&(a, b), map) in &self.homs {
            if a >= y.len() || b >= y.len() || !y.geq(a, b) {
                return Err(Error::input(format!("homomorphism given for a pair ({a}, {b}) that is not ordered")));
            }
            let (src, dst) = (&self.components[a], &self.components[b]);
            for l in src.alphabet().iter() {
                let img = map.get(l).ok_or_else(|| {
                    Error::input(format!("homomorphism {} → {} has no image for `{l}`", y.name(a), y.name(b)))
                })?;
                dst.alphabet().encode(img)?;
                if img.is_empty() && !dst.is_monoid() {
                    return Err(Error::input(format!("`{l}` maps to the empty word in a semigroup component")));
                }
            }
            if a == b {
                for l in src.alphabet().iter() {
                    if !src.oracle_equal(&map[l], &[l.to_string()])? {
                        return Err(Error::hypothesis(format!(
                            "the homomorphism on {} is not the identity at `{l}`",
                            y.name(a)
                        )));
                    }
                }
            }
        }
        // chosen[a][b]: letters of A_a into A_b, for a ≥ b
        let mut chosen: Vec<Vec<Option<HashMap<Letter, Word>>>> = vec![vec![None; y.len()]; y.len()];
        for a in 0..y.len() {
            let id = self.components[a].alphabet().iter().map(|l| (l.to_string(), vec![l.to_string()])).collect();
            chosen[a][a] = Some(id);
        }
        // fill by increasing height gap: a pair is done once every strictly
        // smaller interval is
        let mut pending: Vec<(usize, usize)> =
            (0..y.len()).flat_map(|a| (0..y.len()).map(move |b| (a, b))).filter(|&(a, b)| a != b && y.geq(a, b)).collect();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|&(a, b)| {
                if let Some(h) = self.homs.get(&(a, b)) {
                    chosen[a][b] = Some(h.clone());
                    return false;
                }
                for (&(s, g), h) in &self.homs {
                    if s == a && g != a && y.geq(g, b) {
                        if let Some(rest) = &chosen[g][b] {
                            let composed = h.iter().map(|(l, w)| (l.clone(), apply(rest, w))).collect();
                            chosen[a][b] = Some(composed);
                            return false;
                        }
                    }
                }
                true
            });
            if pending.len() == before {
                let (a, b) = pending[0];
                return Err(Error::input(format!(
                    "no homomorphism path from {} down to {}",
                    y.name(a),
                    y.name(b)
                )));
            }
        }
        // coherence: every given map followed by a chosen one agrees with the chosen composite
        for (&(a, g), h) in &self.homs {
            for b in 0..y.len() {
                if !y.geq(g, b) {
                    continue;
                }
                let via = chosen[g][b].as_ref().unwrap();
                let direct = chosen[a][b].as_ref().unwrap();
                for (l, w) in h {
                    if !self.components[b].oracle_equal(&apply(via, w), &direct[l])? {
                        return Err(Error::hypothesis(format!(
                            "homomorphisms are not coherent at `{l}` on the way {} → {} → {}",
                            y.name(a),
                            y.name(g),
                            y.name(b)
                        )));
                    }
                }
            }
        }
        let into = (0..y.len())
            .map(|b| {
                let mut m = HashMap::new();
                for a in 0..y.len() {
                    if let Some(h) = &chosen[a][b] {
                        m.extend(h.iter().map(|(l, w)| (l.clone(), w.clone())));
                    }
                }
                m
            })
            .collect();
        Ok(Resolved { origin, alphabet, into })
    }
}

pub fn semilattice_oracle(spec: &SemilatticeSpec) -> Result<EqualityOracle> {
    let r = spec.resolve()?;
    Ok(build_oracle(spec, &r))
}

fn build_oracle(spec: &SemilatticeSpec, r: &Resolved) -> EqualityOracle {
    let order = spec.order.clone();
    let origin = r.origin.clone();
    let into = Arc::new(r.into.clone());
    let oracles: Vec<EqualityOracle> = spec.components.iter().map(|c| c.oracle().clone()).collect();
    EqualityOracle::new(r.alphabet.clone(), "strong semilattice: compare in the meet component", move |u, v| {
        if u.is_empty() || v.is_empty() {
            return Ok(u.is_empty() && v.is_empty());
        }
        let mu = order.meet_all(u.iter().map(|l| origin[l]));
        let mv = order.meet_all(v.iter().map(|l| origin[l]));
        match (mu, mv) {
            (Some(a), Some(b)) if a == b => oracles[a].equal(&apply(&into[a], u), &apply(&into[a], v)),
            _ => Ok(false),
        }
    })
}

/// The gsm sending letters above `a` to their images in `A_a`, reversed
/// after `#`. Other letters have no move.
fn image_gsm(full: &Alphabet, target: &Alphabet, images: &HashMap<Letter, Word>) -> Result<Gsm> {
    let mut output = target.clone();
    output.insert(SEP);
    let mut g = Gsm::new(full.clone(), output, "pre");
    let post = g.add_state("post");
    let mut letters: Vec<&Letter> = images.keys().collect();
    letters.sort();
    for l in letters {
        g.add_transition(0, l, 0, &images[l])?;
        g.add_transition(post, l, post, &reversed(&images[l]))?;
    }
    g.add_transition(0, SEP, post, &[SEP.to_string()])?;
    g.set_final(post, &[])?;
    Ok(g)
}

pub fn strong_semilattice(spec: &SemilatticeSpec) -> Result<WordProblemObject> {
    let r = spec.resolve()?;
    let mut full = r.alphabet.clone();
    full.insert(SEP);
    let hash = Nfa::letter_class(&full, &[SEP.to_string()])?;
    let mut parts = Vec::new();
    for a in 0..spec.order.len() {
        let p = spec.components[a].require_pda()?;
        let g = image_gsm(&full, spec.components[a].alphabet(), &r.into[a])?;
        let lifted = p.inverse_gsm(&g)?;
        let side = content_automaton(&spec.order, &r.alphabet, &r.origin, a)?.with_alphabet(&full)?;
        let content = side.concat(&hash)?.concat(&side)?;
        parts.push(lifted.intersect_regular(&content)?);
    }
    let m = Npda::union(&parts)?;
    let oracle = build_oracle(spec, &r);
    WordProblemObject::new(r.alphabet, false, Some(LanguageRep::Pda(m)), oracle)
}

/// Two elements `α > β`: the free group on `x, y` above the integers on
/// `p = +1, q = −1`, with `x ↦ p`, `y ↦ q`.
pub fn free_group_over_integers() -> Result<SemilatticeSpec> {
    use crate::alphabet::word;
    use crate::semigroups::{free_group, free_group_on};
    let order = SemilatticeOrder::from_relations(vec!["alpha".into(), "beta".into()], &[(0, 1)])?;
    let top = free_group(2)?;
    let ints = free_group_on(&[("p".to_string(), "q".to_string())], true)?;
    let h: HashMap<Letter, Word> =
        [("x", "p"), ("y", "q"), ("X", "q"), ("Y", "p")].iter().map(|(a, b)| (a.to_string(), word(b))).collect();
    Ok(SemilatticeSpec { order, components: vec![top, ints], homs: HashMap::from([((0, 1), h)]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::word;
    use crate::oracle::cross_check;

    #[test]
    fn oracle_examples() {
        let o = semilattice_oracle(&free_group_over_integers().unwrap()).unwrap();
        assert!(o.equal(&word("xp"), &word("pp")).unwrap());
        assert!(!o.equal(&word("x"), &word("y")).unwrap());
        assert!(o.equal(&word("xX"), &word("yY")).unwrap());
        assert!(!o.equal(&word("xY"), &word("xX")).unwrap());
    }

    #[test]
    fn recognizer_examples() {
        let w = strong_semilattice(&free_group_over_integers().unwrap()).unwrap();
        assert!(w.accepts_pair(&word("xp"), &word("pp")).unwrap());
        assert!(w.accepts_pair(&word("xX"), &word("Yy")).unwrap());
        assert!(!w.recognizer().unwrap().accepts(&word("xY#")).unwrap());
        let r = cross_check(&w, 2, 2, 2).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn incoherent_homs_are_rejected() {
        let mut spec = free_group_over_integers().unwrap();
        spec.homs.get_mut(&(0, 1)).unwrap().insert("X".into(), word("p"));
        spec.homs.insert((0, 0), [("x", "x"), ("y", "y"), ("X", "X"), ("Y", "y")].iter().map(|(a, b)| (a.to_string(), word(b))).collect());
        assert!(matches!(strong_semilattice(&spec), Err(Error::Hypothesis(_))));
    }
}
