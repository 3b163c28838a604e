//! The acceptance suite: one line per criterion, PASS or FAIL.

use std::collections::HashMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cfwp::alphabet::{word, words_up_to};
use cfwp::constructions::{
    bicyclic_bruck_reilly, bicyclic_fixture, br_oracle, bruck_reilly, c2_identity_spec, c2_rees_fixture, direct_factor,
    direct_product_finite, free_group_over_integers, free_product_monoids, free_product_semigroups, hyperbolic_word,
    rees_gsm, rees_matrix, semilattice_oracle, strong_semilattice, word_hyperbolic_structure, BruckReillySpec,
};
use cfwp::oracle::cross_check;
use cfwp::pda::{AcceptMode, CfgRep, LanguageRep, Npda, BOTTOM};
use cfwp::rewriting::fixtures::{abc_complement_system, complement_abc_grammar, non_automatic, outside_abc, palindromes};
use cfwp::semigroups::{finite_word_problem, free_group, free_monoid_on, rewriting_word_problem, FiniteSemigroup};
use cfwp::{Alphabet, Error, Word};

type Outcome = Result<String, String>;

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn check<T>(r: cfwp::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn l(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn bicyclic_criterion() -> Outcome {
    let start = Instant::now();
    let fixture = check(bicyclic_fixture())?;
    let report = check(cross_check(&fixture, 5, 5, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    let rewriting = check(rewriting_word_problem(&cfwp::rewriting::fixtures::bicyclic()))?;
    let br = check(bicyclic_bruck_reilly())?;
    let sides = words_up_to(&l(&["b", "c"]), 5);
    let mut disagreements = 0;
    for u in &sides {
        for v in &sides {
            let a = check(rewriting.oracle_equal(u, v))?;
            if a != check(br.oracle_equal(u, v))? || a != check(br.accepts_pair(u, v))? {
                disagreements += 1;
            }
        }
    }
    ensure(disagreements == 0, format!("{disagreements} pairs where the two constructions disagree"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("{} queries, 0 mismatches, constructions agree, {:.1?}", report.total, took))
}

fn free_group_criterion() -> Outcome {
    let start = Instant::now();
    let f = check(free_group(2))?;
    let report = check(cross_check(&f, 3, 3, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!("{} queries, 0 mismatches, {:.1?}", report.total, took))
}

fn direct_product_criterion() -> Outcome {
    let a = check(free_monoid_on(&l(&["a"]), false))?;
    let w = check(direct_product_finite(&a, &FiniteSemigroup::right_zero()))?;
    ensure(w.alphabet().len() == 2, "paired alphabet should have two letters")?;
    let report = check(cross_check(&w, 4, 4, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    let det = match w.recognizer() {
        Some(LanguageRep::Pda(p)) => p.is_deterministic(),
        _ => false,
    };
    ensure(det, "result is not deterministic")?;
    Ok(format!("{} queries, 0 mismatches, deterministic", report.total))
}

fn direct_factor_criterion() -> Outcome {
    let a = check(free_monoid_on(&l(&["a"]), false))?;
    let t = FiniteSemigroup::c2();
    let st = check(direct_product_finite(&a, &t))?;
    let (w, circ) = check(direct_factor(&st, &t, &word("a")))?;
    ensure(t.mul(circ.c, circ.w) == circ.c, "circuit does not satisfy cw = c")?;
    let sides: Vec<Word> = words_up_to(&l(&["a"]), 4).into_iter().filter(|x| !x.is_empty()).collect();
    let mut n = 0;
    for u in &sides {
        for v in &sides {
            ensure(check(w.accepts_pair(u, v))? == (u == v), format!("mismatch on {u:?}, {v:?}"))?;
            n += 1;
        }
    }
    let report = check(cross_check(&w, 4, 4, 1))?;
    ensure(report.ok(), format!("{report}"))?;
    Ok(format!("{n} queries vs string equality, 0 mismatches; c = {}, w = {}", t.name(circ.c), t.name(circ.w)))
}

fn free_product_semigroups_criterion() -> Outcome {
    let s = check(free_monoid_on(&l(&["a"]), false))?;
    let t = check(free_monoid_on(&l(&["b"]), false))?;
    let p = check(free_product_semigroups(&s, &t))?;
    let sides: Vec<Word> = words_up_to(&l(&["a", "b"]), 5).into_iter().filter(|x| !x.is_empty()).collect();
    let mut n = 0;
    for u in &sides {
        for v in &sides {
            ensure(check(p.accepts_pair(u, v))? == (u == v), format!("mismatch on {u:?}, {v:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} queries vs free semigroup equality, 0 mismatches"))
}

/// Infinite dihedral group as words over {a, b} with aa = bb = 1.
fn dihedral_reduce(w: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for x in w {
        if out.last() == Some(x) {
            out.pop();
        } else {
            out.push(x.clone());
        }
    }
    out
}

fn free_product_monoids_criterion() -> Outcome {
    let c2 = check(finite_word_problem(&FiniteSemigroup::c2(), &word("a"), true))?;
    let p = check(free_product_monoids(&c2, &c2))?;
    ensure(p.relabeling == vec![("a".to_string(), "b".to_string())], format!("relabeling {:?}", p.relabeling))?;
    ensure(check(p.accepts_pair(&[], &[]))?, "`#` rejected")?;
    let report = check(cross_check(&p, 4, 4, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    for u in words_up_to(&l(&["a", "b"]), 4) {
        for v in words_up_to(&l(&["a", "b"]), 4) {
            let want = dihedral_reduce(&u) == dihedral_reduce(&v);
            ensure(check(p.accepts_pair(&u, &v))? == want, format!("dihedral mismatch on {u:?}, {v:?}"))?;
        }
    }
    Ok(format!("{} queries, 0 mismatches, `#` accepted", report.total))
}

fn semilattice_criterion() -> Outcome {
    let spec = check(free_group_over_integers())?;
    check(semilattice_oracle(&spec))?;
    let w = check(strong_semilattice(&spec))?;
    ensure(w.alphabet().len() == 6, "expected six letters")?;
    let report = check(cross_check(&w, 3, 3, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    let mut bad = spec.clone();
    let not_identity = [("x", "x"), ("y", "y"), ("X", "X"), ("Y", "y")];
    bad.homs.insert((0, 0), not_identity.iter().map(|(a, b)| (a.to_string(), word(b))).collect());
    ensure(matches!(strong_semilattice(&bad), Err(Error::Hypothesis(_))), "a non-identity map on a component was accepted")?;
    Ok(format!("{} queries, 0 mismatches, coherence checks pass", report.total))
}

fn rees_criterion() -> Outcome {
    let spec = check(c2_rees_fixture())?;
    ensure(spec.generators.len() == 8, "expected eight generators")?;
    let g = check(rees_gsm(&spec))?;
    let same = g.apply(&l(&["(1,a,1)", "#", "(1,a,1)"]));
    let differ = g.apply(&l(&["(1,a,1)", "#", "(2,a,1)"]));
    ensure(same == Some(l(&["a", "#", "a"])), format!("matching indices gave {same:?}"))?;
    ensure(differ == Some(l(&["a", "#", "a", "#"])), format!("index mismatch gave {differ:?}"))?;
    let m = check(rees_matrix(&spec))?;
    let report = check(cross_check(&m, 3, 3, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    Ok(format!("{} queries, 0 mismatches, terminal `#` on index mismatch", report.total))
}

fn bruck_reilly_criterion() -> Outcome {
    let spec = check(c2_identity_spec())?;
    let (w, d) = check(bruck_reilly(&spec))?;
    ensure((d.n, d.i, d.p, d.m) == (1, 0, 1, 1), format!("derived {:?}", (d.n, d.i, d.p, d.m)))?;
    let rec = check(w.require_recognizer())?;
    ensure(check(rec.accepts(&word("ba#ba")))?, "ba#ba rejected")?;
    let report = check(cross_check(&w, 4, 4, jobs()))?;
    ensure(report.ok(), format!("{report}"))?;
    let oracle = check(br_oracle(&spec))?;
    ensure(check(oracle.equal(&word("ba"), &word("ab")))?, "oracle: ba != ab")?;
    Ok(format!("(n,i,p,m) = (1,0,1,1), {} queries over {{a,b,c}}, 0 mismatches, ba#ba accepted", report.total))
}

fn rewriting_criterion() -> Outcome {
    let p = palindromes();
    ensure(check(p.normal_form(&word("xabbay")))? == word("z"), "xabbay")?;
    ensure(!check(p.word_equal(&word("xaby"), &word("z")))?, "xaby = z")?;
    ensure(check(non_automatic().normal_form(&word("abbccd")))? == word("z"), "abbccd")?;
    let g = complement_abc_grammar();
    let cnf = g.to_cnf();
    let mut n = 0;
    for w in words_up_to(g.terminals().names(), 8) {
        let enc = check(g.terminals().encode(&w))?;
        ensure(cnf.member(&enc) == outside_abc(&w), format!("complement grammar wrong on {w:?}"))?;
        n += 1;
    }
    ensure(check(abc_complement_system().normal_form(&word("xacby")))? == word("z"), "xacby")?;
    Ok(format!("normal forms as expected; complement grammar validated on {n} words"))
}

fn hyperbolic_criterion() -> Outcome {
    let mut n = 0;
    for (name, w) in [("free monoid", check(free_monoid_on(&l(&["a"]), true))?), ("bicyclic", check(bicyclic_fixture())?)] {
        let m = check(word_hyperbolic_structure(&w))?;
        m.prepare();
        let sides = words_up_to(w.alphabet().names(), 3);
        for u in &sides {
            for v in &sides {
                let uv: Word = u.iter().chain(v).cloned().collect();
                for x in &sides {
                    let want = check(w.oracle_equal(&uv, x))?;
                    let got = check(m.accepts(&hyperbolic_word(u, v, x)))?;
                    ensure(got == want, format!("{name}: {u:?} {v:?} {x:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} triples, 0 mismatches"))
}

fn random_pda(rng: &mut ChaCha8Rng) -> Npda {
    let mode = [AcceptMode::FinalState, AcceptMode::EmptyStack, AcceptMode::FinalStateAndBareBottom][rng.gen_range(0..3)];
    let mut p = Npda::new(Alphabet::from_names(["a", "b"]), "⊥", "q0", mode);
    let states = rng.gen_range(2..=3);
    for i in 1..states {
        p.add_state(format!("q{i}"));
    }
    let mut stack = vec![BOTTOM];
    for i in 0..rng.gen_range(1..=2) {
        stack.push(p.stack_symbol(format!("Z{i}")));
    }
    for q in 0..states {
        if rng.gen_bool(0.4) {
            p.set_final(q);
        }
    }
    for _ in 0..rng.gen_range(3..=9) {
        let from = rng.gen_range(0..states);
        let to = rng.gen_range(0..states);
        let input = [None, Some("a"), Some("b")][rng.gen_range(0..3)];
        let pop = stack[rng.gen_range(0..stack.len())];
        let push: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| stack[rng.gen_range(1..stack.len())]).collect();
        // keep the bottom in place unless it is popped for good
        let push = if pop == BOTTOM && !(mode == AcceptMode::EmptyStack && push.is_empty() && rng.gen_bool(0.5)) {
            push.into_iter().chain([BOTTOM]).collect()
        } else {
            push
        };
        p.add_transition(from, input, pop, to, &push).expect("valid move");
    }
    p
}

fn engine_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let words = words_up_to(&l(&["a", "b"]), 6);
    let (mut answered, mut unknown) = (0, 0);
    for k in 0..100 {
        let p = random_pda(&mut rng);
        let g = CfgRep::new(p.to_cfg());
        let normal = p.normalize();
        let back = Npda::from_cfg(&g.grammar);
        for w in &words {
            let cyk = g.cnf().member(&check(g.grammar.terminals().encode(w))?);
            match check(p.search(w))?.known() {
                Some(s) => {
                    answered += 1;
                    ensure(cyk == s, format!("pda {k}: CYK {cyk} vs search {s} on {w:?}\n{}", p.to_text()))?;
                }
                None => unknown += 1,
            }
            ensure(check(p.accepts(w))? == cyk, format!("pda {k}: chart vs CYK on {w:?}"))?;
            ensure(check(normal.accepts(w))? == cyk, format!("pda {k}: normalize changed {w:?}"))?;
            if let Some(s) = check(normal.search(w))?.known() {
                ensure(s == cyk, format!("pda {k}: normalized search on {w:?}"))?;
            }
            ensure(check(back.accepts(w))? == cyk, format!("pda {k}: grammar round trip changed {w:?}"))?;
        }
    }
    ensure(answered > unknown, format!("search answered only {answered} of {}", answered + unknown))?;
    Ok(format!("100 machines x {} words; search answered {answered}, agreed with CYK every time", words.len()))
}

fn negative_criterion() -> Outcome {
    let a = check(free_monoid_on(&l(&["a"]), false))?;
    let e = direct_product_finite(&a, &FiniteSemigroup::null2()).err().ok_or("null factor accepted")?;
    ensure(e.exit_code() == 3, format!("null factor: exit {} ({e})", e.exit_code()))?;
    let x = check(free_monoid_on(&l(&["x"]), true))?;
    let phi = HashMap::from([("x".to_string(), word("x"))]);
    let e = bruck_reilly(&BruckReillySpec { base: x, phi, image_bound: 16 }).err().ok_or("free base accepted")?;
    ensure(e.exit_code() == 3, format!("free base: exit {} ({e})", e.exit_code()))?;
    Ok("both rejected as hypothesis violations (exit 3)".to_string())
}

/// Written straight to stdout so the lines show without `--nocapture`.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("bicyclic monoid, two constructions", bicyclic_criterion),
        ("free group of rank 2", free_group_criterion),
        ("direct product with a finite decomposable factor", direct_product_criterion),
        ("direct factor recovery", direct_factor_criterion),
        ("free product of semigroups", free_product_semigroups_criterion),
        ("free product of monoids", free_product_monoids_criterion),
        ("strong semilattice", semilattice_criterion),
        ("Rees matrix semigroup", rees_criterion),
        ("Bruck-Reilly extension of C2", bruck_reilly_criterion),
        ("rewriting fixtures", rewriting_criterion),
        ("word-hyperbolic structure", hyperbolic_criterion),
        ("engine soundness on random machines", engine_criterion),
        ("negative hypotheses", negative_criterion),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match r {
            Ok(detail) => report(format!("criterion {:>2} PASS  {name}: {detail} [{:.1?}]", i + 1, start.elapsed())),
            Err(why) => {
                report(format!("criterion {:>2} FAIL  {name}: {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

