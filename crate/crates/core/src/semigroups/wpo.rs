use crate::alphabet::{encode_pair, Alphabet, Letter, SEP};
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::{LanguageRep, Npda};

/// A semigroup or monoid given by its generators, optionally a recognizer
/// for `{u # v^rev : u = v}`, and an independent equality oracle.
#[derive(Clone, Debug)]
pub struct WordProblemObject {
    alphabet: Alphabet,
    monoid: bool,
    recognizer: Option<LanguageRep>,
    oracle: EqualityOracle,
    deterministic_hint: bool,
    /// Letters renamed on the way in, as (original, new).
    pub relabeling: Vec<(Letter, Letter)>,
}

impl WordProblemObject {
    pub fn new(alphabet: Alphabet, monoid: bool, recognizer: Option<LanguageRep>, oracle: EqualityOracle) -> Result<Self> {
        if alphabet.contains(SEP) {
            return Err(Error::input("the separator `#` cannot be a generator"));
        }
        if !oracle.alphabet().same_set(&alphabet) {
            return Err(Error::internal(format!(
                "oracle alphabet {:?} differs from generators {:?}",
                oracle.alphabet(),
                alphabet
            )));
        }
        if let Some(r) = &recognizer {
            let mut expect = alphabet.clone();
            expect.insert(SEP);
            if !r.alphabet().same_set(&expect) {
                return Err(Error::internal(format!(
                    "recognizer alphabet {:?} is not the generators plus `#`",
                    r.alphabet()
                )));
            }
        }
        let deterministic_hint = match &recognizer {
            Some(LanguageRep::Pda(p)) => p.deterministic_hint(),
            _ => false,
        };
        Ok(WordProblemObject { alphabet, monoid, recognizer, oracle, deterministic_hint, relabeling: Vec::new() })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The recognizer's alphabet: generators plus the separator.
    pub fn full_alphabet(&self) -> Alphabet {
        let mut a = self.alphabet.clone();
        a.insert(SEP);
        a
    }

    pub fn is_monoid(&self) -> bool {
        self.monoid
    }

    pub fn recognizer(&self) -> Option<&LanguageRep> {
        self.recognizer.as_ref()
    }

    pub fn oracle(&self) -> &EqualityOracle {
        &self.oracle
    }

    pub fn deterministic_hint(&self) -> bool {
        self.deterministic_hint
    }

    pub fn require_recognizer(&self) -> Result<&LanguageRep> {
        self.recognizer
            .as_ref()
            .ok_or_else(|| Error::input(format!("`{}` has no recognizer (oracle only)", self.oracle.description())))
    }

    /// The recognizer as a machine, converting a grammar if needed.
    pub fn require_pda(&self) -> Result<Npda> {
        Ok(self.require_recognizer()?.to_pda())
    }

    fn check_sides(&self, u: &[Letter], v: &[Letter]) -> Result<()> {
        if !self.monoid && (u.is_empty() || v.is_empty()) {
            return Err(Error::input("semigroup word problems need nonempty words on both sides"));
        }
        self.alphabet.encode(u)?;
        self.alphabet.encode(v)?;
        Ok(())
    }

    /// Recognizer membership of `u # v^rev`.
    pub fn accepts_pair(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        self.check_sides(u, v)?;
        self.require_recognizer()?.accepts(&encode_pair(u, v))
    }

    pub fn oracle_equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        self.check_sides(u, v)?;
        self.oracle.equal(u, v)
    }

    /// Recognizer answer when there is one, otherwise the oracle's.
    pub fn query(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        match self.recognizer {
            Some(_) => self.accepts_pair(u, v),
            None => self.oracle_equal(u, v),
        }
    }

    pub fn with_recognizer(mut self, r: LanguageRep) -> Result<Self> {
        let mut expect = self.alphabet.clone();
        expect.insert(SEP);
        if !r.alphabet().same_set(&expect) {
            return Err(Error::input("replacement recognizer has the wrong alphabet"));
        }
        self.deterministic_hint = matches!(&r, LanguageRep::Pda(p) if p.deterministic_hint());
        self.recognizer = Some(r);
        Ok(self)
    }

    pub(crate) fn with_hint(mut self, hint: bool) -> Self {
        self.deterministic_hint = hint;
        self
    }
}
