//! The Lie operad in the left-normed basis, the morphism `φ : Lie → PreLie`
//! and the cyclic module `CycLie`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseVec};
use crate::prelie::{bracket_unchecked, parse_lincomb, write_lincomb, TreeVector};
use crate::trees::{Label, LabelSet, Parser};

/// A binary bracket expression `W := Label | "[" W "," W "]"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LieWord {
    Leaf(Label),
    Bracket(Box<LieWord>, Box<LieWord>),
}

impl LieWord {
    pub fn leaf(l: Label) -> LieWord {
        LieWord::Leaf(l)
    }

    pub fn bracket(a: LieWord, b: LieWord) -> LieWord {
        LieWord::Bracket(Box::new(a), Box::new(b))
    }

    /// The left-normed word `[…[[s₀, s₁], s₂]…, s_k]`.
    pub fn left_normed(seq: &[Label]) -> LieWord {
        let mut w = LieWord::Leaf(seq[0].clone());
        for l in &seq[1..] {
            w = LieWord::bracket(w, LieWord::Leaf(l.clone()));
        }
        w
    }

    pub fn leaves(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Label>) {
        match self {
            LieWord::Leaf(l) => out.push(l.clone()),
            LieWord::Bracket(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn labels(&self) -> LabelSet {
        self.leaves().into_iter().collect()
    }

    pub fn contains(&self, l: &Label) -> bool {
        match self {
            LieWord::Leaf(x) => x == l,
            LieWord::Bracket(a, b) => a.contains(l) || b.contains(l),
        }
    }

    /// Labels of a word using each label once.
    pub fn checked_labels(&self) -> Result<LabelSet> {
        let mut set = LabelSet::new();
        for l in self.leaves() {
            if !set.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        Ok(set)
    }

    /// Replaces the leaf `pos` by `w`.
    pub fn substitute(&self, pos: &Label, w: &LieWord) -> LieWord {
        match self {
            LieWord::Leaf(l) if l == pos => w.clone(),
            LieWord::Leaf(_) => self.clone(),
            LieWord::Bracket(a, b) => LieWord::bracket(a.substitute(pos, w), b.substitute(pos, w)),
        }
    }

    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> LieWord {
        match self {
            LieWord::Leaf(l) => LieWord::Leaf(map.get(l).unwrap_or(l).clone()),
            LieWord::Bracket(a, b) => LieWord::bracket(a.relabel(map), b.relabel(map)),
        }
    }

    pub fn parse(text: &str) -> Result<LieWord> {
        let mut p = Parser { src: text, pos: 0 };
        p.skip_ws();
        if p.at_end() {
            return Err(Error::Empty);
        }
        let w = parse_word(&mut p)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        w.checked_labels()?;
        Ok(w)
    }
}

fn parse_word(p: &mut Parser<'_>) -> Result<LieWord> {
    if p.eat('[') {
        let a = parse_word(p)?;
        if !p.eat(',') {
            return Err(p.error("expected `,`"));
        }
        let b = parse_word(p)?;
        if !p.eat(']') {
            return Err(p.error("expected `]`"));
        }
        Ok(LieWord::bracket(a, b))
    } else {
        p.skip_ws();
        Ok(LieWord::Leaf(p.label()?))
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieWord::Leaf(l) => write!(f, "{l}"),
            LieWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// An element of `Lie(I)` over the left-normed basis anchored at `min(I)`.
///
/// A key `(i₀, σ₁, …, σ_{n−1})` stands for `[…[i₀, σ₁]…, σ_{n−1}]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LieVector(SparseVec<Vec<Label>>);

impl LieVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element with the given left-normed sequence; the first
    /// label must be the minimum.
    pub fn basis_element(seq: Vec<Label>) -> Self {
        debug_assert!(seq.iter().all(|l| *l >= seq[0]));
        LieVector(SparseVec::unit(seq))
    }

    pub fn leaf(l: Label) -> Self {
        Self::basis_element(vec![l])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Label>, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, seq: &[Label]) -> Rational {
        self.0.get(&seq.to_vec()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_scaled(&mut self, other: &LieVector, c: &Rational) {
        self.0.add_scaled(&other.0, c);
    }

    pub fn scaled(&self, c: &Rational) -> LieVector {
        LieVector(self.0.scaled(c))
    }

    pub fn as_sparse(&self) -> &SparseVec<Vec<Label>> {
        &self.0
    }

    pub fn labels(&self) -> Option<LabelSet> {
        self.0.keys().next().map(|k| k.iter().cloned().collect())
    }

    /// Terms as left-normed words.
    pub fn words(&self) -> impl Iterator<Item = (LieWord, &Rational)> {
        self.0.iter().map(|(k, c)| (LieWord::left_normed(k), c))
    }

    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> LieVector {
        let mut out = LieVector::zero();
        for (w, c) in self.words() {
            out.add_scaled(&lie_normal_form(&w.relabel(map)), c);
        }
        out
    }

    /// Parses a combination `c*W ± …` of Lie words on a common label set.
    pub fn parse(text: &str) -> Result<LieVector> {
        let mut p = Parser { src: text, pos: 0 };
        let terms = parse_lincomb(&mut p, parse_word)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        let mut out = LieVector::zero();
        let mut labels: Option<LabelSet> = None;
        for (c, w) in terms {
            let ls = w.checked_labels()?;
            match &labels {
                None => labels = Some(ls),
                Some(prev) if *prev != ls => return Err(Error::Inhomogeneous),
                _ => {}
            }
            out.add_scaled(&lie_normal_form(&w), &c);
        }
        Ok(out)
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lincomb(f, self.words())
    }
}

impl fmt::Debug for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct LieTermJson<'a> {
    word: String,
    coeff: &'a Rational,
}

impl Serialize for LieVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.words().map(|(w, coeff)| LieTermJson {
            word: w.to_string(),
            coeff,
        }))
    }
}

impl Add for LieVector {
    type Output = LieVector;
    fn add(self, rhs: LieVector) -> LieVector {
        LieVector(self.0 + rhs.0)
    }
}

impl Sub for LieVector {
    type Output = LieVector;
    fn sub(self, rhs: LieVector) -> LieVector {
        LieVector(self.0 - rhs.0)
    }
}

impl Neg for LieVector {
    type Output = LieVector;
    fn neg(self) -> LieVector {
        LieVector(-self.0)
    }
}

/// Rewrites a word into the left-normed basis.
///
/// `[u, v]` with the minimum in `u` becomes `ad_v(nf u)`, otherwise
/// `−ad_u(nf v)`; `ad` pushes the word through by
/// `[X, [p, q]] = [[X, p], q] − [[X, q], p]`.
pub fn lie_normal_form(w: &LieWord) -> LieVector {
    match w {
        LieWord::Leaf(l) => LieVector::leaf(l.clone()),
        LieWord::Bracket(u, v) => {
            let (ul, vl) = (u.labels(), v.labels());
            if ul.first() < vl.first() {
                adjoin(&lie_normal_form(u), v)
            } else {
                -adjoin(&lie_normal_form(v), u)
            }
        }
    }
}

/// `nf([X, w])` for `X` in normal form containing the overall minimum.
fn adjoin(x: &LieVector, w: &LieWord) -> LieVector {
    match w {
        LieWord::Leaf(l) => {
            let mut out = SparseVec::new();
            for (k, c) in x.iter() {
                let mut k = k.clone();
                k.push(l.clone());
                out.add_term(k, c.clone());
            }
            LieVector(out)
        }
        LieWord::Bracket(p, q) => adjoin(&adjoin(x, p), q) - adjoin(&adjoin(x, q), p),
    }
}

/// Checked normal form: rejects words repeating a label.
pub fn lie_normal_form_checked(w: &LieWord) -> Result<LieVector> {
    w.checked_labels()?;
    Ok(lie_normal_form(w))
}

/// The left-normed basis of `Lie(I)`: `(n−1)!` elements.
pub fn lie_basis(labels: &LabelSet) -> Vec<Vec<Label>> {
    let mut it = labels.iter().cloned();
    let Some(first) = it.next() else {
        return Vec::new();
    };
    let rest: Vec<Label> = it.collect();
    let mut out = Vec::new();
    permutations(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |perm| {
        let mut seq = vec![first.clone()];
        seq.extend(perm.iter().cloned());
        out.push(seq);
    });
    out
}

pub(crate) fn permutations<T: Clone>(
    items: &[T],
    cur: &mut Vec<T>,
    used: &mut Vec<bool>,
    f: &mut impl FnMut(&[T]),
) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i].clone());
            permutations(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

/// `φ` on a word: every bracket becomes a `◁`-commutator.
pub fn phi_word(w: &LieWord) -> TreeVector {
    match w {
        LieWord::Leaf(l) => TreeVector::leaf(l),
        LieWord::Bracket(a, b) => bracket_unchecked(&phi_word(a), &phi_word(b)),
    }
}

/// The operad morphism `φ : Lie → PreLie`.
pub fn phi(v: &LieVector) -> TreeVector {
    let mut out = TreeVector::zero();
    for (w, c) in v.words() {
        out.add_scaled(&phi_word(&w), c);
    }
    out
}

/// Partial composition `u ∘_pos v` in `Lie`.
pub fn lie_compose(u: &LieVector, pos: &Label, v: &LieVector) -> Result<LieVector> {
    let (lu, lv) = (u.labels(), v.labels());
    if let Some(lu) = &lu {
        if !lu.contains(pos) {
            return Err(Error::MissingLabel(pos.to_string()));
        }
        if let Some(lv) = &lv {
            if let Some(l) = lv.iter().find(|l| *l != pos && lu.contains(*l)) {
                return Err(Error::LabelClash(l.to_string()));
            }
        }
    }
    let mut out = LieVector::zero();
    for (wu, a) in u.words() {
        for (wv, b) in v.words() {
            out.add_scaled(&lie_normal_form(&wu.substitute(pos, &wv)), &(a * b));
        }
    }
    Ok(out)
}

/// An element `⟨i₀, ℓ⟩` of `CycLie(I)` with `i₀ = min(I)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycLieElem {
    basepoint: Label,
    body: LieVector,
}

impl CycLieElem {
    /// `⟨i, body⟩` for any `i`, normalized to the minimal basepoint.
    pub fn new(i: Label, body: LieVector) -> Result<CycLieElem> {
        let Some(mut labels) = body.labels() else {
            return Ok(CycLieElem {
                basepoint: i,
                body,
            });
        };
        if !labels.insert(i.clone()) {
            return Err(Error::LabelClash(i.to_string()));
        }
        let i0 = labels.first().expect("nonempty").clone();
        if i0 == i {
            return Ok(CycLieElem { basepoint: i, body });
        }
        let mut out = LieVector::zero();
        for (w, c) in body.words() {
            out.add_scaled(&rotate_pair(&LieWord::Leaf(i.clone()), &w, &i0), c);
        }
        Ok(CycLieElem {
            basepoint: i0,
            body: out,
        })
    }

    /// The class of `⟨m₁, m₂⟩`.
    pub fn from_pair(m1: &LieWord, m2: &LieWord) -> Result<CycLieElem> {
        let (l1, l2) = (m1.checked_labels()?, m2.checked_labels()?);
        if let Some(l) = l1.intersection(&l2).next() {
            return Err(Error::LabelClash(l.to_string()));
        }
        let i0 = l1.first().min(l2.first()).expect("nonempty").clone();
        let body = if m1.contains(&i0) {
            rotate_pair(m2, m1, &i0)
        } else {
            rotate_pair(m1, m2, &i0)
        };
        Ok(CycLieElem { basepoint: i0, body })
    }

    pub fn basepoint(&self) -> &Label {
        &self.basepoint
    }

    pub fn body(&self) -> &LieVector {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn labels(&self) -> LabelSet {
        let mut ls = self.body.labels().unwrap_or_default();
        ls.insert(self.basepoint.clone());
        ls
    }

    /// Parses `i | lincomb` with `i` any label of the element.
    pub fn parse(text: &str) -> Result<CycLieElem> {
        let (i, body) = text
            .split_once('|')
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: "expected `basepoint | body`".into(),
            })?;
        CycLieElem::new(Label::new(i.trim())?, LieVector::parse(body)?)
    }
}

impl fmt::Display for CycLieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.basepoint, self.body)
    }
}

impl Serialize for CycLieElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CycLieElem", 2)?;
        s.serialize_field("basepoint", &self.basepoint)?;
        s.serialize_field("body", &self.body)?;
        s.end()
    }
}

/// Basis of `CycLie(I)`: `⟨i₀, b⟩` for `b` in the basis of `Lie(I∖{i₀})`.
pub fn cyclie_basis(labels: &LabelSet) -> Vec<CycLieElem> {
    let Some(i0) = labels.first().cloned() else {
        return Vec::new();
    };
    let mut rest = labels.clone();
    rest.remove(&i0);
    lie_basis(&rest)
        .into_iter()
        .map(|seq| CycLieElem {
            basepoint: i0.clone(),
            body: LieVector::basis_element(seq),
        })
        .collect()
}

/// `ℓ` with `⟨x, w⟩ = ⟨i, ℓ⟩`, for a label `i` occurring in `w`, using
/// `⟨X, [P, Q]⟩ = ⟨[X, P], Q⟩` and the symmetry of the pairing.
fn rotate_pair(x: &LieWord, w: &LieWord, i: &Label) -> LieVector {
    match w {
        LieWord::Leaf(_) => lie_normal_form(x),
        LieWord::Bracket(p, q) => {
            if q.contains(i) {
                rotate_pair(&LieWord::bracket(x.clone(), (**p).clone()), q, i)
            } else {
                -rotate_pair(&LieWord::bracket(x.clone(), (**q).clone()), p, i)
            }
        }
    }
}

/// `ℓ_i` with `⟨i, ℓ_i⟩ = e`.
pub fn cyclie_rotate(e: &CycLieElem, i: &Label) -> Result<LieVector> {
    if *i == e.basepoint {
        return Ok(e.body.clone());
    }
    if !e.labels().contains(i) {
        return Err(Error::MissingLabel(i.to_string()));
    }
    let x = LieWord::Leaf(e.basepoint.clone());
    let mut out = LieVector::zero();
    for (w, c) in e.body.words() {
        out.add_scaled(&rotate_pair(&x, &w, i), c);
    }
    Ok(out)
}
