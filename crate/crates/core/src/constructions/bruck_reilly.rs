//! Bruck–Reilly extensions `BR(M, φ)` with `im φⁿ` finite.
//!
//! Normal forms are `c^α m b^β`. Writing `u = … x_j …`, the middle of `u` is
//! the product of `x_j φ^{e_j}` where `e_j` is the number of `b`s before `x_j`
//! not yet cancelled plus the number of `c`s after it that find no `b` to
//! cancel. Only the class `[e_j]` matters, so the machine guesses the second
//! summand and checks the guess. Factors with `e_j ≥ n` lie in the finite
//! monoid `T = im φⁿ` and are multiplied in the finite control; the others are
//! fed to a simulation of the base machine, whose stack sits between the `C`
//! counter below and the compressed `B` counter above. After `#` the same
//! happens for `v` read backwards with a `D` counter, and the simulation is
//! closed once every factor that needs it has been fed. The rest of `v` only
//! contributes elements of `T` and counter moves; each remaining `c` either
//! waits as a `D` for a `b` to cancel it or consumes one of the `C`s.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter, Word, SEP};
use crate::error::{Error, Result};
use crate::oracle::EqualityOracle;
use crate::pda::{AcceptMode, LanguageRep, Npda, Transition, BOTTOM};
use crate::rewriting::fixtures::bicyclic;
use crate::semigroups::{change_generators, finite_word_problem, rewriting_word_problem, FiniteSemigroup, WordProblemObject};

pub const B_LETTER: &str = "b";
pub const C_LETTER: &str = "c";
const MAX_IMAGE_LEN: usize = 1 << 16;

/// A base monoid, the endomorphism as images of generators, and the bound on
/// the search for a finite image power.
#[derive(Clone, Debug)]
pub struct BruckReillySpec {
    pub base: WordProblemObject,
    pub phi: HashMap<Letter, Word>,
    pub image_bound: usize,
}

/// `T = im φⁿ` as representative words, and the index `i`, period `p` of φ
/// acting on `T`; `m = n + i + p − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrDerived {
    pub n: usize,
    pub i: usize,
    pub p: usize,
    pub m: usize,
    pub t: Vec<Word>,
}

impl BrDerived {
    /// `[β]`: the exponent in `0..=m` with the same power of φ.
    pub fn class(&self, beta: usize) -> usize {
        let ni = self.n + self.i;
        if beta <= self.m {
            beta
        } else {
            ni + (beta - ni) % self.p
        }
    }

    fn succ(&self, k: usize) -> usize {
        self.class(k + 1)
    }

    /// Possible classes of `β − 1` given `[β]`.
    fn pred(&self, k: usize) -> Vec<usize> {
        let ni = self.n + self.i;
        match k {
            0 => vec![],
            _ if k == ni && self.m != ni - 1 => {
                let mut v = vec![ni - 1, self.m];
                v.dedup();
                v
            }
            _ => vec![k - 1],
        }
    }
}

/// `wψ`.
fn apply(phi: &HashMap<Letter, Word>, w: &[Letter]) -> Result<Word> {
    let out: Word = w.iter().flat_map(|l| phi[l].iter().cloned()).collect();
    if out.len() > MAX_IMAGE_LEN {
        return Err(Error::hypothesis("images under the endomorphism grow beyond the supported length"));
    }
    Ok(out)
}

fn power(phi: &HashMap<Letter, Word>, w: &[Letter], k: usize) -> Result<Word> {
    let mut w = w.to_vec();
    for _ in 0..k {
        w = apply(phi, &w)?;
    }
    Ok(w)
}

fn find(oracle: &EqualityOracle, elems: &[Word], w: &[Letter]) -> Result<Option<usize>> {
    for (k, e) in elems.iter().enumerate() {
        if oracle.equal(e, w)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Submonoid generated by `gens`, or `None` once it exceeds `bound` elements.
fn closure(oracle: &EqualityOracle, gens: &[Word], bound: usize) -> Result<Option<Vec<Word>>> {
    let mut elems: Vec<Word> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let w: Word = elems[e].iter().chain(g).cloned().collect();
            if find(oracle, &elems, &w)?.is_none() {
                if elems.len() >= bound {
                    return Ok(None);
                }
                elems.push(w);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    Ok(Some(elems))
}

impl BruckReillySpec {
    fn check(&self) -> Result<()> {
        if !self.base.is_monoid() {
            return Err(Error::input("a Bruck–Reilly extension needs a monoid base"));
        }
        for l in [B_LETTER, C_LETTER, SEP] {
            if self.base.alphabet().contains(l) {
                return Err(Error::input(format!("the base alphabet may not use `{l}`")));
            }
        }
        for x in self.base.alphabet().iter() {
            let img = self.phi.get(x).ok_or_else(|| Error::input(format!("no image given for `{x}`")))?;
            self.base.alphabet().encode(img)?;
        }
        if self.phi.len() != self.base.alphabet().len() {
            return Err(Error::input("images given for letters outside the base alphabet"));
        }
        if self.image_bound == 0 {
            return Err(Error::input("the image bound must be positive"));
        }
        Ok(())
    }

    /// Finds the least `n ≥ 1` with `⟨Xψⁿ⟩` finite within the bound, then the
    /// index and period of φ on it.
    pub fn derive(&self) -> Result<BrDerived> {
        self.check()?;
        let oracle = self.base.oracle();
        let xs: Vec<Letter> = self.base.alphabet().names().to_vec();
        for n in 1..=self.image_bound {
            let gens: Vec<Word> = xs.iter().map(|x| power(&self.phi, std::slice::from_ref(x), n)).collect::<Result<_>>()?;
            let Some(t) = closure(oracle, &gens, self.image_bound)? else { continue };
            let act: Vec<usize> = t
                .iter()
                .map(|w| {
                    find(oracle, &t, &apply(&self.phi, w)?)?
                        .ok_or_else(|| Error::hypothesis("the image monoid is not closed under the endomorphism"))
                })
                .collect::<Result<_>>()?;
            let mut powers: Vec<Vec<usize>> = vec![(0..t.len()).collect()];
            loop {
                let next: Vec<usize> = powers.last().unwrap().iter().map(|&e| act[e]).collect();
                if let Some(i) = powers.iter().position(|f| *f == next) {
                    let p = powers.len() - i;
                    return Ok(BrDerived { n, i, p, m: n + i + p - 1, t });
                }
                if powers.len() > self.image_bound {
                    return Err(Error::hypothesis("the action on the image has no period within the bound"));
                }
                powers.push(next);
            }
        }
        Err(Error::hypothesis(format!(
            "no power of the endomorphism up to {} has an image of at most {} elements",
            self.image_bound, self.image_bound
        )))
    }
}

/// `c^α m b^β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrNormalForm {
    pub alpha: usize,
    pub middle: Word,
    pub beta: usize,
}

impl BrNormalForm {
    pub fn to_word(&self) -> Word {
        let mut w = vec![C_LETTER.to_string(); self.alpha];
        w.extend(self.middle.iter().cloned());
        w.extend(std::iter::repeat(B_LETTER.to_string()).take(self.beta));
        w
    }
}

/// Folds a word letter by letter into its normal form.
pub fn br_fold(phi: &HashMap<Letter, Word>, w: &[Letter]) -> Result<BrNormalForm> {
    let mut nf = BrNormalForm { alpha: 0, middle: Vec::new(), beta: 0 };
    for l in w {
        match l.as_str() {
            B_LETTER => nf.beta += 1,
            C_LETTER if nf.beta > 0 => nf.beta -= 1,
            C_LETTER => {
                nf.alpha += 1;
                nf.middle = apply(phi, &nf.middle)?;
            }
            _ => {
                let img = power(phi, std::slice::from_ref(l), nf.beta)?;
                nf.middle.extend(img);
            }
        }
    }
    Ok(nf)
}

/// `(a,m,b)(g,n,d) = (a−b+t, (mφ^{t−b})(nφ^{t−g}), d−g+t)` with `t = max(b,g)`.
pub fn br_multiply(phi: &HashMap<Letter, Word>, x: &BrNormalForm, y: &BrNormalForm) -> Result<BrNormalForm> {
    let t = x.beta.max(y.alpha);
    let mut middle = power(phi, &x.middle, t - x.beta)?;
    middle.extend(power(phi, &y.middle, t - y.alpha)?);
    Ok(BrNormalForm { alpha: x.alpha + t - x.beta, middle, beta: y.beta + t - y.alpha })
}

fn br_alphabet(base: &Alphabet) -> Alphabet {
    let mut a = base.clone();
    a.insert(B_LETTER);
    a.insert(C_LETTER);
    a
}

pub fn br_oracle(spec: &BruckReillySpec) -> Result<EqualityOracle> {
    spec.check()?;
    let phi = spec.phi.clone();
    let base = spec.base.oracle().clone();
    Ok(EqualityOracle::new(br_alphabet(spec.base.alphabet()), "Bruck–Reilly normal form fold", move |u, v| {
        let (x, y) = (br_fold(&phi, u)?, br_fold(&phi, v)?);
        Ok(x.alpha == y.alpha && x.beta == y.beta && base.equal(&x.middle, &y.middle)?)
    }))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Target {
    /// pre-`#` with pending `t`, `[β]`, guessed class of later `c` increments
    Pre { t: usize, k: usize, l: usize },
    Post { tu: Option<usize>, tp: usize, k: usize, l: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Cont {
    Resume { push: Vec<usize>, target: Target },
    Close { a: usize, tau: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum K {
    Start,
    /// `q` is `None` until the base simulation is opened
    Pre { q: Option<usize>, t: usize, k: usize, l: usize },
    /// `tu` is the pending part of `u`'s middle while `#` has not been fed
    Post { q: usize, tu: Option<usize>, tp: usize, k: usize, l: usize },
    Dig { q: usize, word: usize, a: usize, target: Target },
    DigFinish { q: usize, word: usize, a: usize },
    Feed { q: usize, word: usize, pos: usize, cont: usize },
    Reseat { a: usize, tau: usize },
    /// pop the `C`s matched by surviving `D`s, then push the rest back
    Drain { d: usize, left: usize, sc: usize, tau: usize },
    /// `k` is the class of the `D` count, `sc` of the `c`s that matched a `C`
    Tail { tau: usize, tt: usize, k: usize, sc: usize },
    Accept,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sym {
    Bottom,
    C,
    Bj(usize),
    B,
    Dj(usize),
    D,
    Gamma(usize),
}

struct Tables {
    d: BrDerived,
    /// `img[x][e]`: `xψ^e` over the base machine's input
    img: Vec<Vec<Vec<usize>>>,
    /// `big[x][e]`: element of `T` for `e ≥ n`
    big: Vec<Vec<Option<usize>>>,
    mul: Vec<Vec<usize>>,
    tword: Vec<Vec<usize>>,
    id_t: usize,
}

pub fn bruck_reilly(spec: &BruckReillySpec) -> Result<(WordProblemObject, BrDerived)> {
    let d = spec.derive()?;
    let oracle = spec.base.oracle();
    let bm = spec.base.require_pda()?.normalize();
    let enc = |w: &[Letter]| bm.input().encode(w);
    let xs: Vec<Letter> = spec.base.alphabet().names().to_vec();
    let mut img = Vec::new();
    let mut big = Vec::new();
    for x in &xs {
        let mut row = Vec::new();
        let mut brow = Vec::new();
        let mut w = vec![x.clone()];
        for e in 0..=d.m {
            if e > 0 {
                w = apply(&spec.phi, &w)?;
            }
            row.push(enc(&w)?);
            brow.push(if e >= d.n {
                Some(find(oracle, &d.t, &w)?.ok_or_else(|| Error::internal("an image power fell outside T"))?)
            } else {
                None
            });
        }
        img.push(row);
        big.push(brow);
    }
    let mut mul = vec![vec![0; d.t.len()]; d.t.len()];
    for (a, wa) in d.t.iter().enumerate() {
        for (b, wb) in d.t.iter().enumerate() {
            let w: Word = wa.iter().chain(wb).cloned().collect();
            mul[a][b] = find(oracle, &d.t, &w)?.ok_or_else(|| Error::internal("T is not closed under products"))?;
        }
    }
    let tword = d.t.iter().map(|w| enc(w)).collect::<Result<_>>()?;
    let id_t = find(oracle, &d.t, &[])?.ok_or_else(|| Error::internal("T lacks the identity"))?;
    let tables = Tables { d: d.clone(), img, big, mul, tword, id_t };
    let m = build(spec, &bm, &tables)?;
    let alphabet = br_alphabet(spec.base.alphabet());
    let w = WordProblemObject::new(alphabet, true, Some(LanguageRep::Pda(m)), br_oracle(spec)?)?;
    Ok((w, d))
}

fn build(spec: &BruckReillySpec, bm: &Npda, tb: &Tables) -> Result<Npda> {
    let d = &tb.d;
    let (n, ni, mm) = (d.n, d.n + d.i, d.m);
    let alphabet = br_alphabet(spec.base.alphabet());
    let mut full = alphabet.clone();
    let sep = full.insert(SEP);
    let (lb, lc) = (full.get(B_LETTER).unwrap(), full.get(C_LETTER).unwrap());
    let xs: Vec<usize> = spec.base.alphabet().iter().map(|x| full.get(x).unwrap()).collect();
    let bsep = bm.input().get(SEP).unwrap();

    let mut m = Npda::new(full, "⊥", "start", AcceptMode::FinalStateAndBareBottom);
    let sym_c = m.stack_symbol("C");
    let bj: Vec<usize> = (0..=ni).map(|j| if j == 0 { usize::MAX } else { m.stack_symbol(format!("B{j}")) }).collect();
    let sym_b = m.stack_symbol("B");
    let dj: Vec<usize> = (0..=ni).map(|j| if j == 0 { usize::MAX } else { m.stack_symbol(format!("D{j}")) }).collect();
    let sym_d = m.stack_symbol("D");
    let gamma: Vec<usize> =
        (0..bm.stack_alphabet().len()).map(|g| m.stack_symbol(format!("M.{}", bm.stack_alphabet().name(g)))).collect();
    let bbot = gamma[BOTTOM];
    let nsyms = m.stack_alphabet().len();
    let kind = |s: usize| -> Sym {
        if s == BOTTOM {
            Sym::Bottom
        } else if s == sym_c {
            Sym::C
        } else if s == sym_b {
            Sym::B
        } else if s == sym_d {
            Sym::D
        } else if let Some(j) = bj.iter().position(|&x| x == s) {
            Sym::Bj(j)
        } else if let Some(j) = dj.iter().position(|&x| x == s) {
            Sym::Dj(j)
        } else {
            Sym::Gamma(gamma.iter().position(|&x| x == s).unwrap())
        }
    };
    let kinds: Vec<Sym> = (0..nsyms).map(kind).collect();
    let mut by_src = vec![Vec::new(); bm.num_states()];
    for (e, tr) in bm.transitions().iter().enumerate() {
        by_src[tr.from].push(e);
    }

    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut word_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut conts: Vec<Cont> = Vec::new();
    let mut cont_ids: HashMap<Cont, usize> = HashMap::new();
    let mut ids: HashMap<K, usize> = HashMap::from([(K::Start, 0)]);
    let mut queue = VecDeque::from([K::Start]);
    let mut ts: Vec<Transition> = Vec::new();

    macro_rules! id {
        ($k:expr) => {{
            let k = $k;
            match ids.get(&k) {
                Some(&i) => i,
                None => {
                    let i = m.add_state(format!("{k:?}"));
                    ids.insert(k, i);
                    queue.push_back(k);
                    i
                }
            }
        }};
    }
    macro_rules! word {
        ($w:expr) => {{
            let w: Vec<usize> = $w;
            let next = words.len();
            *word_ids.entry(w.clone()).or_insert_with(|| {
                words.push(w);
                next
            })
        }};
    }
    macro_rules! cont {
        ($c:expr) => {{
            let c: Cont = $c;
            let next = conts.len();
            *cont_ids.entry(c.clone()).or_insert_with(|| {
                conts.push(c);
                next
            })
        }};
    }
    let tr = |from: usize, input: Option<usize>, pop: usize, to: usize, push: Vec<usize>| Transition { from, input, pop, to, push };
    let rev = |w: &[usize]| -> Vec<usize> { w.iter().rev().copied().collect() };
    let fill = |q: usize, t: Target| match t {
        Target::Pre { t, k, l } => K::Pre { q: Some(q), t, k, l },
        Target::Post { tu, tp, k, l } => K::Post { q, tu, tp, k, l },
    };
    // the part of the base word owed before anything read after `#`
    let owed = |tu: Option<usize>, tp: usize| -> Vec<usize> {
        let mut w = Vec::new();
        if let Some(t) = tu {
            w.extend(&tb.tword[t]);
            w.push(bsep);
        }
        w.extend(rev(&tb.tword[tp]));
        w
    };

    while let Some(key) = queue.pop_front() {
        let id = ids[&key];
        match key {
            K::Start => {
                for l in 0..=mm {
                    let to = id!(K::Pre { q: None, t: tb.id_t, k: 0, l });
                    ts.push(tr(id, None, BOTTOM, to, vec![BOTTOM]));
                }
            }
            K::Pre { q, t, k, l } => {
                for z in 0..nsyms {
                    let zk = kinds[z];
                    let low = matches!(zk, Sym::Bottom | Sym::C);
                    // open the base simulation once the remaining increments are exact
                    if q.is_none() && low && l < ni {
                        let to = id!(K::Pre { q: Some(bm.initial()), t, k, l });
                        let mut push = vec![bbot];
                        push.extend(std::iter::repeat(sym_c).take(l));
                        push.push(z);
                        ts.push(tr(id, None, z, to, push));
                    }
                    // b
                    let (push, ok) = match zk {
                        Sym::Bottom | Sym::C | Sym::Gamma(_) => (vec![bj[1], z], true),
                        Sym::Bj(j) if j < ni => (vec![bj[j + 1]], true),
                        Sym::Bj(_) | Sym::B => (vec![sym_b, z], true),
                        _ => (vec![], false),
                    };
                    if ok && (q.is_some() || !matches!(zk, Sym::Gamma(_))) {
                        let to = id!(K::Pre { q, t, k: d.succ(k), l });
                        ts.push(tr(id, Some(lb), z, to, push));
                    }
                    // c
                    match zk {
                        Sym::Bj(j) => {
                            let push = if j > 1 { vec![bj[j - 1]] } else { vec![] };
                            let to = id!(K::Pre { q, t, k: j - 1, l });
                            ts.push(tr(id, Some(lc), z, to, push));
                        }
                        Sym::B if k >= ni => {
                            let k2 = if k == ni { mm } else { k - 1 };
                            let to = id!(K::Pre { q, t, k: k2, l });
                            ts.push(tr(id, Some(lc), z, to, vec![]));
                        }
                        Sym::Bottom | Sym::C if q.is_none() => {
                            for l2 in d.pred(l) {
                                let to = id!(K::Pre { q, t, k: 0, l: l2 });
                                ts.push(tr(id, Some(lc), z, to, vec![sym_c, z]));
                            }
                        }
                        Sym::Gamma(_) if q.is_some() && l > 0 => {
                            let to = id!(K::Pre { q, t, k: 0, l: l - 1 });
                            ts.push(tr(id, Some(lc), z, to, vec![z]));
                        }
                        _ => {}
                    }
                    // x
                    let e = d.class(k + l);
                    for (xi, &x) in xs.iter().enumerate() {
                        if e >= n {
                            let t2 = tb.mul[t][tb.big[xi][e].unwrap()];
                            let to = id!(K::Pre { q, t: t2, k, l });
                            ts.push(tr(id, Some(x), z, to, vec![z]));
                            continue;
                        }
                        let Some(q) = q else { continue };
                        let mut w = tb.tword[t].clone();
                        w.extend(&tb.img[xi][e]);
                        let word = word!(w);
                        let target = Target::Pre { t: tb.id_t, k, l };
                        match zk {
                            Sym::Bj(j) if j == k => {
                                let c = cont!(Cont::Resume { push: vec![z], target });
                                let to = id!(K::Feed { q, word, pos: 0, cont: c });
                                ts.push(tr(id, Some(x), z, to, vec![]));
                            }
                            Sym::Gamma(_) if k == 0 => {
                                let c = cont!(Cont::Resume { push: vec![], target });
                                let to = id!(K::Feed { q, word, pos: 0, cont: c });
                                ts.push(tr(id, Some(x), z, to, vec![z]));
                            }
                            _ => {}
                        }
                    }
                    // #
                    if let (Some(q), 0) = (q, l) {
                        for l2 in 0..=mm {
                            let to = id!(K::Post { q, tu: Some(t), tp: tb.id_t, k: 0, l: l2 });
                            ts.push(tr(id, Some(sep), z, to, vec![z]));
                        }
                    }
                }
            }
            K::Post { q, tu, tp, k, l } => {
                for z in 0..nsyms {
                    let zk = kinds[z];
                    if matches!(zk, Sym::Bottom | Sym::C) {
                        continue;
                    }
                    // c
                    let push = match zk {
                        Sym::Dj(j) if j < ni => vec![dj[j + 1]],
                        Sym::Dj(_) | Sym::D => vec![sym_d, z],
                        _ => vec![dj[1], z],
                    };
                    let to = id!(K::Post { q, tu, tp, k: d.succ(k), l });
                    ts.push(tr(id, Some(lc), z, to, push));
                    // b
                    match zk {
                        Sym::Dj(j) => {
                            let push = if j > 1 { vec![dj[j - 1]] } else { vec![] };
                            let to = id!(K::Post { q, tu, tp, k: j - 1, l });
                            ts.push(tr(id, Some(lb), z, to, push));
                        }
                        Sym::D if k >= ni => {
                            let k2 = if k == ni { mm } else { k - 1 };
                            let to = id!(K::Post { q, tu, tp, k: k2, l });
                            ts.push(tr(id, Some(lb), z, to, vec![]));
                        }
                        Sym::Bj(_) | Sym::B => {
                            let push = match zk {
                                Sym::Bj(j) if j > 1 => vec![bj[j - 1]],
                                _ => vec![],
                            };
                            for l2 in d.pred(l) {
                                let to = id!(K::Post { q, tu, tp, k: 0, l: l2 });
                                ts.push(tr(id, Some(lb), z, to, push.clone()));
                            }
                        }
                        _ => {}
                    }
                    // x
                    let f = d.class(k + l);
                    for (xi, &x) in xs.iter().enumerate() {
                        if f >= n {
                            let tp2 = tb.mul[tb.big[xi][f].unwrap()][tp];
                            let to = id!(K::Post { q, tu, tp: tp2, k, l });
                            ts.push(tr(id, Some(x), z, to, vec![z]));
                            continue;
                        }
                        let mut w = owed(tu, tp);
                        w.extend(rev(&tb.img[xi][f]));
                        let word = word!(w);
                        let target = Target::Post { tu: None, tp: tb.id_t, k, l };
                        match zk {
                            Sym::Dj(j) if j == k => {
                                let to = id!(K::Dig { q, word, a: k, target });
                                ts.push(tr(id, Some(x), z, to, vec![]));
                            }
                            Sym::Bj(j) if k == 0 => {
                                let c = cont!(Cont::Resume { push: vec![bj[j]], target });
                                let to = id!(K::Feed { q, word, pos: 0, cont: c });
                                ts.push(tr(id, Some(x), z, to, vec![]));
                            }
                            Sym::Gamma(_) if k == 0 => {
                                let c = cont!(Cont::Resume { push: vec![], target });
                                let to = id!(K::Feed { q, word, pos: 0, cont: c });
                                ts.push(tr(id, Some(x), z, to, vec![z]));
                            }
                            _ => {}
                        }
                    }
                    // close the base simulation
                    if l == 0 {
                        let word = word!(owed(tu, tp));
                        match zk {
                            Sym::Dj(j) if j == k => {
                                let to = id!(K::DigFinish { q, word, a: j });
                                ts.push(tr(id, None, z, to, vec![]));
                            }
                            Sym::Gamma(_) if k == 0 => {
                                let to = id!(K::DigFinish { q, word, a: 0 });
                                ts.push(tr(id, None, z, to, vec![z]));
                            }
                            _ => {}
                        }
                    }
                }
            }
            K::Dig { q, word, a, target } => {
                for z in 0..nsyms {
                    let push = match kinds[z] {
                        Sym::Bj(j) => vec![dj[a], bj[j]],
                        Sym::Gamma(_) => vec![dj[a]],
                        _ => continue,
                    };
                    let keep = matches!(kinds[z], Sym::Gamma(_));
                    let c = cont!(Cont::Resume { push, target });
                    let to = id!(K::Feed { q, word, pos: 0, cont: c });
                    ts.push(tr(id, None, z, to, if keep { vec![z] } else { vec![] }));
                }
            }
            K::DigFinish { q, word, a } => {
                for (g, &z) in gamma.iter().enumerate() {
                    let _ = g;
                    for tau in 0..tb.tword.len() {
                        let mut w = words[word].clone();
                        w.extend(rev(&tb.tword[tau]));
                        let w2 = word!(w);
                        let c = cont!(Cont::Close { a, tau });
                        let to = id!(K::Feed { q, word: w2, pos: 0, cont: c });
                        ts.push(tr(id, None, z, to, vec![z]));
                    }
                }
            }
            K::Feed { q, word, pos, cont } => {
                let w = &words[word];
                for &e in &by_src[q] {
                    let t = &bm.transitions()[e];
                    let pos2 = match t.input {
                        None => pos,
                        Some(a) if pos < w.len() && w[pos] == a => pos + 1,
                        _ => continue,
                    };
                    let to = id!(K::Feed { q: t.to, word, pos: pos2, cont });
                    ts.push(tr(id, None, gamma[t.pop], to, t.push.iter().map(|&s| gamma[s]).collect()));
                }
                if pos == w.len() {
                    match conts[cont].clone() {
                        Cont::Resume { push, target } => {
                            let to = id!(fill(q, target));
                            for &z in &gamma {
                                let mut p = push.clone();
                                p.push(z);
                                ts.push(tr(id, None, z, to, p));
                            }
                        }
                        Cont::Close { a, tau } => {
                            if bm.is_final(q) {
                                let to = id!(K::Reseat { a, tau });
                                ts.push(tr(id, None, bbot, to, vec![]));
                            }
                        }
                    }
                }
            }
            K::Reseat { a, tau } => {
                // guess how many of the carried `D`s are never cancelled
                for keep in 0..=a {
                    let to = id!(K::Drain { d: a - keep, left: keep, sc: keep, tau });
                    for z in [BOTTOM, sym_c] {
                        ts.push(tr(id, None, z, to, vec![z]));
                    }
                }
            }
            K::Drain { d: dd, left, sc, tau } => {
                if left > 0 {
                    let to = id!(K::Drain { d: dd, left: left - 1, sc, tau });
                    ts.push(tr(id, None, sym_c, to, vec![]));
                } else {
                    let to = id!(K::Tail { tau, tt: tb.id_t, k: dd, sc });
                    for z in [BOTTOM, sym_c] {
                        let push = if dd > 0 { vec![dj[dd], z] } else { vec![z] };
                        ts.push(tr(id, None, z, to, push));
                    }
                }
            }
            K::Tail { tau, tt, k, sc } => {
                for z in 0..nsyms {
                    let zk = kinds[z];
                    let push = match zk {
                        Sym::Dj(j) if j < ni => vec![dj[j + 1]],
                        Sym::Dj(_) | Sym::D => vec![sym_d, z],
                        Sym::Bottom | Sym::C => vec![dj[1], z],
                        _ => continue,
                    };
                    let to = id!(K::Tail { tau, tt, k: d.succ(k), sc });
                    ts.push(tr(id, Some(lc), z, to, push));
                    match zk {
                        Sym::C => {
                            let to = id!(K::Tail { tau, tt, k, sc: d.succ(sc) });
                            ts.push(tr(id, Some(lc), z, to, vec![]));
                        }
                        Sym::Dj(j) => {
                            let push = if j > 1 { vec![dj[j - 1]] } else { vec![] };
                            let to = id!(K::Tail { tau, tt, k: j - 1, sc });
                            ts.push(tr(id, Some(lb), z, to, push));
                        }
                        Sym::D if k >= ni => {
                            let k2 = if k == ni { mm } else { k - 1 };
                            let to = id!(K::Tail { tau, tt, k: k2, sc });
                            ts.push(tr(id, Some(lb), z, to, vec![]));
                        }
                        _ => {}
                    }
                    let f = d.class(k + sc);
                    if f >= n {
                        for (xi, &x) in xs.iter().enumerate() {
                            let tt2 = tb.mul[tb.big[xi][f].unwrap()][tt];
                            let to = id!(K::Tail { tau, tt: tt2, k, sc });
                            ts.push(tr(id, Some(x), z, to, vec![z]));
                        }
                    }
                    if tt == tau && zk == Sym::Bottom {
                        let to = id!(K::Accept);
                        ts.push(tr(id, None, z, to, vec![z]));
                    }
                }
            }
            K::Accept => m.set_final(id),
        }
    }
    for t in ts {
        m.push_transition(t);
    }
    Ok(m)
}

/// `BR(C2, id)` over `{a, b, c}`.
pub fn c2_identity_spec() -> Result<BruckReillySpec> {
    let base = finite_word_problem(&FiniteSemigroup::c2(), &["a".to_string()], true)?;
    let phi = HashMap::from([("a".to_string(), vec!["a".to_string()])]);
    Ok(BruckReillySpec { base, phi, image_bound: 32 })
}

/// The bicyclic monoid as `BR(trivial, id)` restricted to `{b, c}`.
pub fn bicyclic_bruck_reilly() -> Result<WordProblemObject> {
    let base = finite_word_problem(&FiniteSemigroup::trivial(), &["e".to_string()], true)?;
    let phi = HashMap::from([("e".to_string(), vec![])]);
    let (br, _) = bruck_reilly(&BruckReillySpec { base, phi, image_bound: 32 })?;
    change_generators(&br, &[(B_LETTER.to_string(), vec![B_LETTER.to_string()]), (C_LETTER.to_string(), vec![C_LETTER.to_string()])])
}

/// The bicyclic monoid with the recognizer from [`bicyclic_bruck_reilly`]
/// and the oracle from rewriting with `bc → ε`.
pub fn bicyclic_fixture() -> Result<WordProblemObject> {
    let br = bicyclic_bruck_reilly()?;
    let rw = rewriting_word_problem(&bicyclic())?;
    WordProblemObject::new(rw.alphabet().clone(), true, br.recognizer().cloned(), rw.oracle().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::word;
    use crate::oracle::cross_check;
    use crate::semigroups::free_monoid_on;

    #[test]
    fn derived_values_for_c2() {
        let d = c2_identity_spec().unwrap().derive().unwrap();
        assert_eq!((d.n, d.i, d.p, d.m), (1, 0, 1, 1));
        assert_eq!(d.t.len(), 2);
        assert_eq!(d.class(5), 1);
    }

    #[test]
    fn free_monoid_has_no_finite_image_power() {
        let base = free_monoid_on(&word("x"), true).unwrap();
        let spec = BruckReillySpec { base, phi: HashMap::from([("x".to_string(), word("x"))]), image_bound: 8 };
        assert!(matches!(spec.derive(), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn fold_matches_multiplication_law() {
        let phi = c2_identity_spec().unwrap().phi;
        let c2 = FiniteSemigroup::c2();
        let val = |w: &[Letter]| c2.eval(w).unwrap();
        let forms: Vec<BrNormalForm> = (0..=3)
            .flat_map(|a| (0..=3).flat_map(move |b| [vec![], word("a")].into_iter().map(move |m| BrNormalForm { alpha: a, middle: m, beta: b })))
            .collect();
        for x in &forms {
            for y in &forms {
                let mut w = x.to_word();
                w.extend(y.to_word());
                let f = br_fold(&phi, &w).unwrap();
                let g = br_multiply(&phi, x, y).unwrap();
                assert_eq!((f.alpha, f.beta), (g.alpha, g.beta));
                assert_eq!(val(&f.middle), val(&g.middle));
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let o = br_oracle(&c2_identity_spec().unwrap()).unwrap();
        assert!(o.equal(&word("ba"), &word("ab")).unwrap());
        assert!(!o.equal(&word("cb"), &[]).unwrap());
        assert!(o.equal(&word("bc"), &[]).unwrap());
    }

    #[test]
    fn c2_recognizer() {
        let (w, _) = bruck_reilly(&c2_identity_spec().unwrap()).unwrap();
        assert!(w.accepts_pair(&word("ba"), &word("ab")).unwrap());
        assert!(w.accepts_pair(&[], &[]).unwrap());
        let r = cross_check(&w, 3, 3, 2).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn bicyclic_recognizer() {
        let w = bicyclic_bruck_reilly().unwrap();
        assert!(w.accepts_pair(&word("bc"), &[]).unwrap());
        assert!(!w.accepts_pair(&word("cb"), &[]).unwrap());
        let r = cross_check(&w, 4, 4, 2).unwrap();
        assert!(r.ok(), "{r}");
    }
}

#[cfg(test)]
mod stress {
    use super::*;
    use crate::alphabet::word;
    use crate::oracle::cross_check;
    use crate::semigroups::free_monoid_on;

    fn run(spec: BruckReillySpec, bound: usize) -> BrDerived {
        let (w, d) = bruck_reilly(&spec).unwrap();
        let r = cross_check(&w, bound, bound, 8).unwrap();
        assert!(r.ok(), "{d:?}\n{r}");
        d
    }

    #[test]
    fn erasing_and_shifting() {
        let base = free_monoid_on(&word("xy"), true).unwrap();
        let phi = HashMap::from([("x".to_string(), word("y")), ("y".to_string(), vec![])]);
        let d = run(BruckReillySpec { base, phi, image_bound: 16 }, 3);
        assert_eq!((d.n, d.i, d.p), (2, 0, 1));
    }

    #[test]
    fn period_two() {
        let names = ["e", "a", "f"].map(String::from).to_vec();
        // cyclic group of order 3, f = a²
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let c3 = FiniteSemigroup::new(names, table).unwrap();
        let base = finite_word_problem(&c3, &["a".to_string()], true).unwrap();
        let phi = HashMap::from([("a".to_string(), word("aa"))]);
        let d = run(BruckReillySpec { base, phi, image_bound: 16 }, 3);
        assert_eq!((d.n, d.i, d.p, d.m), (1, 0, 2, 2));
    }

    #[test]
    fn c2_collapse() {
        let base = finite_word_problem(&FiniteSemigroup::c2(), &["a".to_string()], true).unwrap();
        let phi = HashMap::from([("a".to_string(), vec![])]);
        run(BruckReillySpec { base, phi, image_bound: 16 }, 3);
    }

    #[test]
    fn positive_index() {
        // {1, x, y, 0} with all products of x, y equal to 0
        let names = ["1", "x", "y", "0"].map(String::from).to_vec();
        let table = vec![vec![0, 1, 2, 3], vec![1, 3, 3, 3], vec![2, 3, 3, 3], vec![3, 3, 3, 3]];
        let m = FiniteSemigroup::new(names, table).unwrap();
        let base = finite_word_problem(&m, &["x".to_string(), "y".to_string()], true).unwrap();
        let phi = HashMap::from([("x".to_string(), word("y")), ("y".to_string(), word("yy"))]);
        let d = run(BruckReillySpec { base, phi, image_bound: 16 }, 3);
        assert_eq!((d.n, d.i, d.p, d.m), (1, 1, 1, 2));
    }
}
