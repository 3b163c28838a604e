//! Brute-force equality oracles and the exhaustive cross-check harness.

mod crosscheck;

use std::fmt;
use std::sync::Arc;

pub use crosscheck::{cross_check, CrossCheckReport, Mismatch};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

type EqFn = dyn Fn(&[Letter], &[Letter]) -> Result<bool> + Send + Sync;

/// Decides equality of words in some semigroup or monoid without looking at
/// any recognizer.
#[derive(Clone)]
pub struct EqualityOracle {
    alphabet: Alphabet,
    description: String,
    equal: Arc<EqFn>,
}

impl fmt::Debug for EqualityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EqualityOracle({} over {:?})", self.description, self.alphabet)
    }
}

impl EqualityOracle {
    pub fn new<F>(alphabet: Alphabet, description: impl Into<String>, equal: F) -> Self
    where
        F: Fn(&[Letter], &[Letter]) -> Result<bool> + Send + Sync + 'static,
    {
        EqualityOracle { alphabet, description: description.into(), equal: Arc::new(equal) }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        self.alphabet.encode(u)?;
        self.alphabet.encode(v)?;
        (self.equal)(u, v)
    }
}

/// Splits `(x,y)` at its top-level comma.
pub fn split_pair(letter: &str) -> Result<(String, String)> {
    let bad = || Error::input(format!("`{letter}` is not a pair letter `(first,second)`"));
    let inner = letter.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut depth = 0i32;
    let mut cut = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if cut.is_some() {
                    return Err(bad());
                }
                cut = Some(i);
            }
            _ => {}
        }
    }
    let i = cut.ok_or_else(bad)?;
    Ok((inner[..i].to_string(), inner[i + 1..].to_string()))
}

pub fn pair_letter(a: &str, t: &str) -> String {
    format!("({a},{t})")
}

/// Equality of paired-letter words: first coordinates under `first`, second
/// coordinates under `second`.
pub fn pair_oracle(first: &EqualityOracle, second: &EqualityOracle, alphabet: Alphabet) -> Result<EqualityOracle> {
    for l in alphabet.iter() {
        let (a, t) = split_pair(l)?;
        if !first.alphabet().contains(&a) || !second.alphabet().contains(&t) {
            return Err(Error::input(format!("pair letter `{l}` has a coordinate outside the component alphabets")));
        }
    }
    let (o1, o2) = (first.clone(), second.clone());
    let desc = format!("pairs of ({}) and ({})", o1.description(), o2.description());
    Ok(EqualityOracle::new(alphabet, desc, move |u, v| {
        let split = |w: &[Letter]| -> Result<(Word, Word)> {
            let ps = w.iter().map(|l| split_pair(l)).collect::<Result<Vec<_>>>()?;
            Ok(ps.into_iter().unzip())
        };
        let (u1, u2) = split(u)?;
        let (v1, v2) = split(v)?;
        Ok(o1.equal(&u1, &v1)? && o2.equal(&u2, &v2)?)
    }))
}

/// Syllables of a free-product word: (factor index, letters).
fn syllables(w: &[Letter], left: &Alphabet) -> Vec<(usize, Word)> {
    let mut out: Vec<(usize, Word)> = Vec::new();
    for l in w {
        let f = if left.contains(l) { 0 } else { 1 };
        match out.last_mut() {
            Some((g, s)) if *g == f => s.push(l.clone()),
            _ => out.push((f, vec![l.clone()])),
        }
    }
    out
}

/// Free-product equality by comparing syllable decompositions. In monoid
/// mode, syllables equal to the identity are deleted and neighbours merged
/// until nothing changes.
pub fn syllable_oracle(first: &EqualityOracle, second: &EqualityOracle, monoid: bool) -> Result<EqualityOracle> {
    let mut alphabet = first.alphabet().clone();
    for l in second.alphabet().iter() {
        if alphabet.contains(l) {
            return Err(Error::input(format!("free factors share the letter `{l}`")));
        }
        alphabet.insert(l);
    }
    let os = [first.clone(), second.clone()];
    let left = first.alphabet().clone();
    let desc = format!("free product of ({}) and ({})", os[0].description(), os[1].description());
    Ok(EqualityOracle::new(alphabet, desc, move |u, v| {
        let reduce = |w: &[Letter]| -> Result<Vec<(usize, Word)>> {
            let mut syl = syllables(w, &left);
            if !monoid {
                return Ok(syl);
            }
            loop {
                let mut changed = false;
                let mut kept: Vec<(usize, Word)> = Vec::with_capacity(syl.len());
                for (f, s) in syl {
                    if os[f].equal(&s, &[])? {
                        changed = true;
                        continue;
                    }
                    match kept.last_mut() {
                        Some((g, t)) if *g == f => {
                            t.extend(s);
                            changed = true;
                        }
                        _ => kept.push((f, s)),
                    }
                }
                syl = kept;
                if !changed {
                    return Ok(syl);
                }
            }
        };
        let (su, sv) = (reduce(u)?, reduce(v)?);
        if su.len() != sv.len() {
            return Ok(false);
        }
        for ((f, a), (g, b)) in su.iter().zip(&sv) {
            if f != g || !os[*f].equal(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }))
}

/// Plain string equality.
pub fn string_oracle(alphabet: Alphabet) -> EqualityOracle {
    EqualityOracle::new(alphabet, "string equality", |u, v| Ok(u == v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{letters, word, words_up_to};

    fn c2_oracle(names: [&str; 2]) -> EqualityOracle {
        // words over two letters, the first of which is the identity of C2 and the second the generator
        let [e, a] = names;
        let (e, a) = (e.to_string(), a.to_string());
        let al = Alphabet::from_names([e.clone(), a.clone()]);
        EqualityOracle::new(al, "C2", move |u, v| {
            let parity = |w: &[Letter]| w.iter().filter(|l| **l == a).count() % 2;
            let _ = &e;
            Ok(parity(u) == parity(v))
        })
    }

    #[test]
    fn pair_letters() {
        assert_eq!(split_pair("(a,r)").unwrap(), ("a".into(), "r".into()));
        assert_eq!(split_pair("((1,a,2),r)").unwrap(), ("(1,a,2)".into(), "r".into()));
        assert!(split_pair("a").is_err());
        assert!(split_pair("(a,b,c)").is_err());
    }

    #[test]
    fn pair_oracle_examples() {
        let free = string_oracle(Alphabet::from_names(["a"]));
        let rz = EqualityOracle::new(Alphabet::from_names(["r", "s"]), "right zero", |u, v| Ok(u.last() == v.last()));
        let al = Alphabet::from_names(["(a,r)", "(a,s)"]);
        let o = pair_oracle(&free, &rz, al.clone()).unwrap();
        assert!(o.equal(&letters(&["(a,r)", "(a,s)"]), &letters(&["(a,s)", "(a,s)"])).unwrap());
        assert!(!o.equal(&letters(&["(a,r)"]), &letters(&["(a,s)"])).unwrap());
        for w in words_up_to(al.names(), 3) {
            assert!(o.equal(&w, &w).unwrap());
        }
    }

    #[test]
    fn syllable_examples() {
        let fa = string_oracle(Alphabet::from_names(["a"]));
        let fb = string_oracle(Alphabet::from_names(["b"]));
        let o = syllable_oracle(&fa, &fb, false).unwrap();
        assert!(!o.equal(&word("aab"), &word("baa")).unwrap());
        assert!(o.equal(&word("ab"), &word("ab")).unwrap());
        let m = syllable_oracle(&c2_oracle(["e", "a"]), &c2_oracle(["f", "b"]), true).unwrap();
        assert!(m.equal(&word("aab"), &word("b")).unwrap());
        assert!(!m.equal(&word("ab"), &word("ba")).unwrap());
        assert!(m.equal(&word("abfb"), &word("a")).unwrap());
    }

    #[test]
    fn syllable_oracle_is_equivalence() {
        let m = syllable_oracle(&c2_oracle(["e", "a"]), &c2_oracle(["f", "b"]), true).unwrap();
        let ws = words_up_to(m.alphabet().names(), 3);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, w) in ws.iter().enumerate() {
            assert!(m.equal(w, w).unwrap());
            let hits: Vec<usize> = classes.iter().enumerate().filter(|(_, c)| m.equal(&ws[c[0]], w).unwrap()).map(|(k, _)| k).collect();
            assert!(hits.len() <= 1, "{w:?} joins two classes");
            match hits.first() {
                Some(&k) => {
                    for &j in &classes[k] {
                        assert!(m.equal(w, &ws[j]).unwrap() && m.equal(&ws[j], w).unwrap());
                    }
                    classes[k].push(i);
                }
                None => classes.push(vec![i]),
            }
        }
    }

    #[test]
    fn identity_insertion_invariance() {
        let m = syllable_oracle(&c2_oracle(["e", "a"]), &c2_oracle(["f", "b"]), true).unwrap();
        for w in words_up_to(m.alphabet().names(), 3) {
            for ins in [word("aa"), word("f"), word("bb"), word("e")] {
                for k in 0..=w.len() {
                    let mut w2 = w[..k].to_vec();
                    w2.extend(ins.iter().cloned());
                    w2.extend_from_slice(&w[k..]);
                    assert!(m.equal(&w, &w2).unwrap(), "{w:?} vs {w2:?}");
                }
            }
        }
    }
}
