//! Rewriting systems used as examples and as ground truth.

use super::{LhsLanguage, MonadicRewritingSystem};
use crate::alphabet::{word, Alphabet};
use crate::cfg::Cfg;

/// `bc -> ε` over {b, c}: the bicyclic monoid.
pub fn bicyclic() -> MonadicRewritingSystem {
    let mut rs = MonadicRewritingSystem::new(Alphabet::from_names(["b", "c"]), true);
    rs.add_rules(None, LhsLanguage::Finite(vec![word("bc")])).expect("bc is length-reducing");
    rs
}

/// `x w y -> z` for every palindrome `w` over {a, b}.
pub fn palindromes() -> MonadicRewritingSystem {
    let al = Alphabet::from_names(["a", "b", "x", "y", "z"]);
    let g = Cfg::parse_text(
        "start: S\nS -> 'x' P 'y'\nP -> ε | 'a' | 'b' | 'a' P 'a' | 'b' P 'b'",
        &al,
    )
    .expect("fixture grammar");
    let mut rs = MonadicRewritingSystem::new(al, true);
    rs.add_rules(Some("z"), LhsLanguage::grammar(g)).expect("left sides have length ≥ 2");
    rs
}

/// `a b^k c^k d -> z` for k ≥ 1.
pub fn non_automatic() -> MonadicRewritingSystem {
    let al = Alphabet::from_names(["a", "b", "c", "d", "z"]);
    let g = Cfg::parse_text("start: S\nS -> 'a' T 'd'\nT -> 'b' T 'c' | 'b' 'c'", &al).expect("fixture grammar");
    let mut rs = MonadicRewritingSystem::new(al, true);
    rs.add_rules(Some("z"), LhsLanguage::grammar(g)).expect("left sides have length ≥ 4");
    rs
}

/// Words over {a, b, c} outside `{a^k b^k c^k : k ≥ 0}`.
pub fn complement_abc_grammar() -> Cfg {
    let al = Alphabet::from_names(["a", "b", "c"]);
    Cfg::parse_text(
        "start: S
S -> X | Y Cs | As Z
X -> U 'b' 'a' U | U 'c' 'a' U | U 'c' 'b' U
U -> ε | 'a' U | 'b' U | 'c' U
Y -> 'a' Y 'b' | 'a' As | 'b' Bs
Z -> 'b' Z 'c' | 'b' Bs | 'c' Cs
As -> ε | 'a' As
Bs -> ε | 'b' Bs
Cs -> ε | 'c' Cs",
        &al,
    )
    .expect("fixture grammar")
}

/// `x w y -> z` for every `w` in the complement of `{a^k b^k c^k}`.
pub fn abc_complement_system() -> MonadicRewritingSystem {
    let al = Alphabet::from_names(["a", "b", "c", "x", "y", "z"]);
    let inner = complement_abc_grammar();
    let mut text = inner.to_text().replacen("start: S", "start: R\nR -> 'x' S 'y'", 1);
    text.push('\n');
    let g = Cfg::parse_text(&text, &al).expect("fixture grammar");
    let mut rs = MonadicRewritingSystem::new(al, true);
    rs.add_rules(Some("z"), LhsLanguage::grammar(g)).expect("left sides have length ≥ 2");
    rs
}

/// The counting predicate `w ∉ {a^k b^k c^k}`.
pub fn outside_abc(w: &[String]) -> bool {
    let n = w.len();
    if n % 3 != 0 {
        return true;
    }
    let k = n / 3;
    !(w[..k].iter().all(|l| l == "a") && w[k..2 * k].iter().all(|l| l == "b") && w[2 * k..].iter().all(|l| l == "c"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::words_up_to;

    #[test]
    fn complement_grammar_matches_counting_predicate() {
        let g = complement_abc_grammar();
        let cnf = g.to_cnf();
        for w in words_up_to(g.terminals().names(), 8) {
            let enc = g.terminals().encode(&w).unwrap();
            assert_eq!(cnf.member(&enc), outside_abc(&w), "{w:?}");
        }
    }

    #[test]
    fn abc_complement_system_rewrites() {
        let rs = abc_complement_system();
        assert_eq!(rs.normal_form(&word("xacby")).unwrap(), word("z"));
        assert_eq!(rs.normal_form(&word("xabcy")).unwrap(), word("xabcy"));
        assert_eq!(rs.normal_form(&word("xy")).unwrap(), word("xy"));
    }
}
