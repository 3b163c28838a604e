//! The spec document: a versioned list of named definitions and a target.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: u32 = 1;

pub type Word = Vec<String>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    pub definitions: Vec<Definition>,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Definition {
    pub name: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdaMove {
    pub from: String,
    #[serde(default)]
    pub read: Option<String>,
    pub pop: String,
    pub to: String,
    #[serde(default)]
    pub push: Vec<String>,
}

/// Left-hand sides of a rule family: an explicit list or a named language.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LhsSpec {
    Words(Vec<Word>),
    Nfa(String),
    Grammar(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub rhs: Option<String>,
    pub lhs: LhsSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub from: String,
    pub to: String,
    pub images: BTreeMap<String, Word>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SandwichEntry {
    pub col: String,
    pub row: String,
    pub entry: Word,
}

fn default_true() -> bool {
    true
}

fn default_image_bound() -> usize {
    64
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Body {
    Nfa {
        alphabet: Vec<String>,
        #[serde(default)]
        states: Vec<String>,
        initial: Vec<String>,
        finals: Vec<String>,
        transitions: Vec<(String, Option<String>, String)>,
    },
    Gsm {
        input: Vec<String>,
        output: Vec<String>,
        initial: String,
        #[serde(default)]
        states: Vec<String>,
        transitions: Vec<(String, String, String, Word)>,
        finals: Vec<(String, Word)>,
    },
    Homomorphism {
        input: Vec<String>,
        output: Vec<String>,
        images: BTreeMap<String, Word>,
    },
    Pda {
        input: Vec<String>,
        #[serde(default)]
        stack: Vec<String>,
        bottom: String,
        initial: String,
        mode: String,
        #[serde(default)]
        states: Vec<String>,
        finals: Vec<String>,
        transitions: Vec<PdaMove>,
    },
    Grammar {
        terminals: Vec<String>,
        text: String,
    },
    IntersectRegular {
        pda: String,
        nfa: String,
    },
    InverseGsm {
        pda: String,
        gsm: String,
    },
    Union {
        of: Vec<String>,
    },
    Rewriting {
        alphabet: Vec<String>,
        #[serde(default = "default_true")]
        confluent: bool,
        rules: Vec<RuleSpec>,
    },
    FiniteSemigroup {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
    FreeMonoid {
        letters: Vec<String>,
        #[serde(default = "default_true")]
        monoid: bool,
    },
    FreeGroup {
        pairs: Vec<(String, String)>,
        #[serde(default = "default_true")]
        monoid: bool,
    },
    FiniteWordProblem {
        semigroup: String,
        generators: Vec<String>,
        #[serde(default)]
        monoid: bool,
    },
    RewritingWordProblem {
        system: String,
    },
    WithRecognizer {
        base: String,
        recognizer: String,
    },
    ChangeGenerators {
        base: String,
        generators: Vec<(String, Word)>,
    },
    DirectProductFinite {
        base: String,
        factor: String,
    },
    DirectFactor {
        product: String,
        factor: String,
        generators: Vec<String>,
    },
    FreeProduct {
        left: String,
        right: String,
        #[serde(default)]
        monoid: bool,
    },
    StrongSemilattice {
        elements: Vec<String>,
        #[serde(default)]
        above: Vec<(String, String)>,
        components: Vec<String>,
        #[serde(default)]
        homs: Vec<HomSpec>,
    },
    ReesMatrix {
        base: String,
        rows: Vec<String>,
        cols: Vec<String>,
        sandwich: Vec<SandwichEntry>,
        generators: Vec<(String, String, String)>,
    },
    BruckReilly {
        base: String,
        phi: BTreeMap<String, Word>,
        #[serde(default = "default_image_bound")]
        image_bound: usize,
    },
    HyperbolicStructure {
        of: String,
    },
}

impl Body {
    /// Names of earlier definitions this one refers to.
    pub fn references(&self) -> Vec<&str> {
        use Body::*;
        match self {
            Nfa { .. } | Gsm { .. } | Homomorphism { .. } | Pda { .. } | Grammar { .. } => vec![],
            FiniteSemigroup { .. } | FreeMonoid { .. } | FreeGroup { .. } => vec![],
            IntersectRegular { pda, nfa } => vec![pda, nfa],
            InverseGsm { pda, gsm } => vec![pda, gsm],
            Union { of } => of.iter().map(String::as_str).collect(),
            Rewriting { rules, .. } => rules
                .iter()
                .filter_map(|r| match &r.lhs {
                    LhsSpec::Words(_) => None,
                    LhsSpec::Nfa(n) | LhsSpec::Grammar(n) => Some(n.as_str()),
                })
                .collect(),
            FiniteWordProblem { semigroup, .. } => vec![semigroup],
            RewritingWordProblem { system } => vec![system],
            WithRecognizer { base, recognizer } => vec![base, recognizer],
            ChangeGenerators { base, .. } | BruckReilly { base, .. } | ReesMatrix { base, .. } => vec![base],
            DirectProductFinite { base, factor } => vec![base, factor],
            DirectFactor { product, factor, .. } => vec![product, factor],
            FreeProduct { left, right, .. } => vec![left, right],
            StrongSemilattice { components, .. } => components.iter().map(String::as_str).collect(),
            HyperbolicStructure { of } => vec![of],
        }
    }
}

impl SpecDocument {
    /// Parses and checks the version, name uniqueness and that every
    /// reference points at an earlier definition (so the graph is acyclic).
    pub fn parse(text: &str) -> Result<SpecDocument, CliError> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if doc.version != VERSION {
            return Err(CliError::Parse(format!("unsupported version {} (expected {VERSION})", doc.version)));
        }
        let mut seen: HashSet<&str> = HashSet::new();
        for d in &doc.definitions {
            for r in d.body.references() {
                if !seen.contains(r) {
                    let later = doc.definitions.iter().any(|e| e.name == r);
                    return Err(CliError::Reference(format!(
                        "definition `{}` refers to `{r}`, which is {}",
                        d.name,
                        if later { "not defined before it" } else { "not defined" }
                    )));
                }
            }
            if !seen.insert(&d.name) {
                return Err(CliError::Reference(format!("`{}` is defined twice", d.name)));
            }
        }
        if !seen.contains(doc.target.as_str()) {
            return Err(CliError::Reference(format!("target `{}` is not defined", doc.target)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec documents serialize");
        s.push('\n');
        s
    }
}
