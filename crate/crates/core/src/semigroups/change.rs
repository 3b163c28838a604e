use std::collections::HashMap;

use crate::alphabet::{reversed, Alphabet, Letter, Word, SEP};
use crate::automata::Gsm;
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::LanguageRep;

use super::WordProblemObject;

/// Substitutes `image[x]` for each letter `x`.
pub(crate) fn substitute(w: &[Letter], image: &HashMap<Letter, Word>) -> Result<Word> {
    let mut out = Vec::new();
    for l in w {
        out.extend(
            image
                .get(l)
                .ok_or_else(|| Error::input(format!("no image for `{l}`")))?
                .iter()
                .cloned(),
        );
    }
    Ok(out)
}

/// The gsm that fixes `#`, maps letters before it to their images and
/// letters after it to their reversed images.
pub(crate) fn two_sided_gsm(new: &Alphabet, old: &Alphabet, image: &[(Letter, Word)]) -> Result<Gsm> {
    let mut input = new.clone();
    input.insert(SEP);
    let mut output = old.clone();
    output.insert(SEP);
    let mut g = Gsm::new(input, output, "pre");
    let post = g.add_state("post");
    for (x, w) in image {
        g.add_transition(0, x, 0, w)?;
        g.add_transition(post, x, post, &reversed(w))?;
    }
    g.add_transition(0, SEP, post, &[SEP.to_string()])?;
    g.set_final(post, &[])?;
    Ok(g)
}

/// The same semigroup over new generators given as words over the old ones.
pub fn change_generators(w: &WordProblemObject, new_gens: &[(Letter, Word)]) -> Result<WordProblemObject> {
    let rec = w.require_pda()?;
    let mut alphabet = Alphabet::new();
    for (x, img) in new_gens {
        if x == SEP {
            return Err(Error::input("the separator `#` cannot be a generator"));
        }
        if alphabet.contains(x) {
            return Err(Error::input(format!("generator `{x}` is listed twice")));
        }
        if img.is_empty() && !w.is_monoid() {
            return Err(Error::input(format!("generator `{x}` has an empty image in a semigroup")));
        }
        w.alphabet().encode(img)?;
        alphabet.insert(x.clone());
    }
    if alphabet.is_empty() {
        return Err(Error::input("at least one generator is needed"));
    }
    let g = two_sided_gsm(&alphabet, w.alphabet(), new_gens)?;
    let m = rec.inverse_gsm(&g)?;
    let image: HashMap<Letter, Word> = new_gens.iter().cloned().collect();
    let old = w.oracle().clone();
    let desc = format!("substitution into ({})", old.description());
    let oracle = EqualityOracle::new(alphabet.clone(), desc, move |u, v| old.equal(&substitute(u, &image)?, &substitute(v, &image)?));
    let hint = m.deterministic_hint();
    Ok(WordProblemObject::new(alphabet, w.is_monoid(), Some(LanguageRep::Pda(m)), oracle)?.with_hint(hint))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{letters, word};
    use crate::oracle::cross_check;
    use crate::semigroups::free_monoid;

    #[test]
    fn examples() {
        let fm = free_monoid(1, false).unwrap();
        let w = change_generators(&fm, &[("a'".to_string(), word("aa"))]).unwrap();
        assert!(w.accepts_pair(&letters(&["a'"]), &letters(&["a'"])).unwrap());
        assert!(!w.accepts_pair(&letters(&["a'", "a'"]), &letters(&["a'"])).unwrap());
        assert!(change_generators(&fm, &[("e".to_string(), vec![])]).is_err());
    }

    #[test]
    fn contract_after_change() {
        let fm = free_monoid(2, true).unwrap();
        let gens = vec![
            ("p".to_string(), word("ab")),
            ("q".to_string(), word("b")),
            ("r".to_string(), vec![]),
        ];
        let w = change_generators(&fm, &gens).unwrap();
        let r = cross_check(&w, 4, 4, 1).unwrap();
        assert!(r.ok(), "{r}");
    }
}
