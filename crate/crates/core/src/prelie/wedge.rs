use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use super::{
    bracket_unchecked, compose_unchecked, graft_terms, parse_lincomb, product_unchecked,
    write_lincomb, TreeVector,
};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseVec};
use crate::trees::{enumerate_trees, Label, LabelSet, Parser, RootedTree};

/// Key of a wedge term `S ∧ T`, stored with the overall minimal label in `S`.
pub type WedgeKey = (RootedTree, RootedTree);

/// An element of `Λ²PreLie(I)`.
///
/// Terms are pairs of trees on complementary label sets. The stored
/// orientation puts `min(I)` in the left tree; every sign change caused by
/// reorienting happens in [`WedgeVector::add_pair`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WedgeVector(SparseVec<WedgeKey>);

impl WedgeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pair(s: RootedTree, t: RootedTree) -> Self {
        let mut w = Self::zero();
        w.add_pair(s, t, Rational::one());
        w
    }

    /// Adds `c · (s ∧ t)`.
    pub fn add_pair(&mut self, s: RootedTree, t: RootedTree, c: Rational) {
        debug_assert_ne!(s.min_label(), t.min_label(), "blocks must be disjoint");
        if s.min_label() < t.min_label() {
            self.0.add_term((s, t), c);
        } else {
            self.0.add_term((t, s), -c);
        }
    }

    /// Bilinear `s ∧ t`.
    pub fn wedge(s: &TreeVector, t: &TreeVector) -> Self {
        let mut w = Self::zero();
        for (x, a) in s.iter() {
            for (y, b) in t.iter() {
                w.add_pair(x.clone(), y.clone(), a * b);
            }
        }
        w
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

    pub fn iter(&self) -> impl Iterator<Item = (&WedgeKey, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, s: &RootedTree, t: &RootedTree) -> Rational {
        let c = |k: &WedgeKey| self.0.get(k).cloned().unwrap_or_else(Rational::zero);
        if s.min_label() < t.min_label() {
            c(&(s.clone(), t.clone()))
        } else {
            -c(&(t.clone(), s.clone()))
        }
    }

    pub fn add_scaled(&mut self, other: &WedgeVector, c: &Rational) {
        self.0.add_scaled(&other.0, c);
    }

    pub fn scaled(&self, c: &Rational) -> WedgeVector {
        WedgeVector(self.0.scaled(c))
    }

    pub fn as_sparse(&self) -> &SparseVec<WedgeKey> {
        &self.0
    }

    /// Label set of the terms; `None` for zero.
    pub fn labels(&self) -> Option<LabelSet> {
        self.0.keys().next().map(|(s, t)| {
            let mut ls = s.labels();
            ls.extend(t.vertices());
            ls
        })
    }

    pub fn relabel(&self, map: &std::collections::BTreeMap<Label, Label>) -> WedgeVector {
        let mut out = WedgeVector::zero();
        for ((s, t), c) in self.iter() {
            out.add_pair(s.relabel(map), t.relabel(map), c.clone());
        }
        out
    }

    /// Parses `c*S ^ T ± …`.
    pub fn parse(text: &str) -> Result<WedgeVector> {
        let mut p = Parser { src: text, pos: 0 };
        let terms = parse_lincomb(&mut p, |p| {
            let s = p.tree()?;
            if !p.eat('^') {
                return Err(p.error("expected `^` between wedge factors"));
            }
            let t = p.tree()?;
            Ok((s, t))
        })?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        let mut out = WedgeVector::zero();
        let mut labels: Option<LabelSet> = None;
        for (c, (s, t)) in terms {
            let mut ls = s.labels();
            for l in t.vertices() {
                if !ls.insert(l.clone()) {
                    return Err(Error::LabelClash(l.to_string()));
                }
            }
            match &labels {
                None => labels = Some(ls),
                Some(prev) if *prev != ls => return Err(Error::Inhomogeneous),
                _ => {}
            }
            out.add_pair(s, t, c);
        }
        Ok(out)
    }
}

struct Wedged<'a>(&'a WedgeKey);

impl fmt::Display for Wedged<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ^ {}", self.0 .0, self.0 .1)
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lincomb(f, self.0.iter().map(|(k, c)| (Wedged(k), c)))
    }
}

impl fmt::Debug for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct WedgeTermJson<'a> {
    left: &'a RootedTree,
    right: &'a RootedTree,
    coeff: &'a Rational,
}

impl Serialize for WedgeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.0
                .iter()
                .map(|((left, right), coeff)| WedgeTermJson { left, right, coeff }),
        )
    }
}

impl Add for WedgeVector {
    type Output = WedgeVector;
    fn add(self, rhs: WedgeVector) -> WedgeVector {
        WedgeVector(self.0 + rhs.0)
    }
}

impl Sub for WedgeVector {
    type Output = WedgeVector;
    fn sub(self, rhs: WedgeVector) -> WedgeVector {
        WedgeVector(self.0 - rhs.0)
    }
}

impl Neg for WedgeVector {
    type Output = WedgeVector;
    fn neg(self) -> WedgeVector {
        WedgeVector(-self.0)
    }
}

/// An element of `Λ³PreLie(I)`; blocks stored sorted by minimal label.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Wedge3Vector(SparseVec<[RootedTree; 3]>);

impl Wedge3Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn triple(r: RootedTree, s: RootedTree, t: RootedTree) -> Self {
        let mut w = Self::zero();
        w.add_triple(r, s, t, Rational::one());
        w
    }

    /// Adds `c · (r ∧ s ∧ t)`, sorting blocks by minimal label with the sign
    /// of the sorting permutation.
    pub fn add_triple(&mut self, r: RootedTree, s: RootedTree, t: RootedTree, c: Rational) {
        let mut blocks = [r, s, t];
        let mut odd = false;
        for i in 0..3 {
            for j in 0..2 - i {
                match blocks[j].min_label().cmp(blocks[j + 1].min_label()) {
                    std::cmp::Ordering::Greater => {
                        blocks.swap(j, j + 1);
                        odd = !odd;
                    }
                    // a repeated block is impossible for disjoint labels; an
                    // alternating form vanishes on it anyway
                    std::cmp::Ordering::Equal => return,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        self.0.add_term(blocks, if odd { -c } else { c });
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[RootedTree; 3], &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `(r ∧ s) ∘_pos t = (r ∘_pos t) ∧ s` or `r ∧ (s ∘_pos t)`.
pub fn wedge_compose(w: &WedgeVector, pos: &Label, t: &TreeVector) -> Result<WedgeVector> {
    for ((s, u), _) in w.iter() {
        if s.contains(pos) == u.contains(pos) {
            return Err(Error::AmbiguousPosition(pos.to_string()));
        }
    }
    Ok(wedge_compose_unchecked(w, pos, t))
}

pub(crate) fn wedge_compose_unchecked(w: &WedgeVector, pos: &Label, t: &TreeVector) -> WedgeVector {
    let mut out = WedgeVector::zero();
    for ((s, u), c) in w.iter() {
        let left = s.contains(pos);
        let target = TreeVector::from_tree(if left { s.clone() } else { u.clone() });
        let composed = compose_unchecked(&target, pos, t);
        for (x, d) in composed.iter() {
            let cd = c * d;
            if left {
                out.add_pair(x.clone(), u.clone(), cd);
            } else {
                out.add_pair(s.clone(), x.clone(), cd);
            }
        }
    }
    out
}

/// `δ(s ∧ t) = s ◁ t − t ◁ s`.
pub fn delta2(w: &WedgeVector) -> TreeVector {
    let mut out = TreeVector::zero();
    for ((s, t), c) in w.iter() {
        for x in graft_terms(s, t) {
            out.add_term(x, c.clone());
        }
        for x in graft_terms(t, s) {
            out.add_term(x, -c);
        }
    }
    out
}

/// `δ(r ∧ s ∧ t) = [r,s] ∧ t + [s,t] ∧ r − [r,t] ∧ s`.
pub fn delta3(w: &Wedge3Vector) -> WedgeVector {
    let mut out = WedgeVector::zero();
    for ([r, s, t], c) in w.iter() {
        let (r, s, t) = (
            TreeVector::from_tree(r.clone()),
            TreeVector::from_tree(s.clone()),
            TreeVector::from_tree(t.clone()),
        );
        out.add_scaled(&WedgeVector::wedge(&bracket_unchecked(&r, &s), &t), c);
        out.add_scaled(&WedgeVector::wedge(&bracket_unchecked(&s, &t), &r), c);
        out.add_scaled(&WedgeVector::wedge(&bracket_unchecked(&r, &t), &s), &-c);
    }
    out
}

/// `r∧(s◁t) + s∧(t◁r) + t∧(r◁s) − s∧(r◁t) − t∧(s◁r) − r∧(t◁s)`.
pub fn six_term(r: &TreeVector, s: &TreeVector, t: &TreeVector) -> Result<WedgeVector> {
    let (lr, ls, lt) = (r.homogeneous_labels()?, s.homogeneous_labels()?, t.homogeneous_labels()?);
    if let (Some(lr), Some(ls), Some(lt)) = (lr, ls, lt) {
        for (a, b) in [(&lr, &ls), (&ls, &lt), (&lr, &lt)] {
            if let Some(l) = a.intersection(b).next() {
                return Err(Error::LabelClash(l.to_string()));
            }
        }
    }
    let p = product_unchecked;
    let w = WedgeVector::wedge;
    Ok(w(r, &p(s, t)) + w(s, &p(t, r)) + w(t, &p(r, s))
        - w(s, &p(r, t))
        - w(t, &p(s, r))
        - w(r, &p(t, s)))
}

/// Subsets of `labels` containing its minimum, excluding the full set.
fn min_subsets(labels: &[Label]) -> Vec<(LabelSet, LabelSet)> {
    let n = labels.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << (n - 1)) {
        let mut left = LabelSet::from([labels[0].clone()]);
        let mut right = LabelSet::new();
        for (i, l) in labels.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                left.insert(l.clone());
            } else {
                right.insert(l.clone());
            }
        }
        if !right.is_empty() {
            out.push((left, right));
        }
    }
    out
}

/// Basis of `Λ²PreLie(I)` in stored orientation.
pub fn wedge_basis(labels: &LabelSet) -> Vec<WedgeKey> {
    let ls: Vec<Label> = labels.iter().cloned().collect();
    if ls.len() < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (j, k) in min_subsets(&ls) {
        let tj = enumerate_trees(&j).expect("nonempty");
        let tk = enumerate_trees(&k).expect("nonempty");
        for s in &tj {
            for t in &tk {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Basis of `Λ³PreLie(I)`, blocks sorted by minimal label.
pub fn wedge3_basis(labels: &LabelSet) -> Vec<[RootedTree; 3]> {
    let ls: Vec<Label> = labels.iter().cloned().collect();
    let n = ls.len();
    if n < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // restricted growth strings with exactly three blocks
    let mut assign = vec![0usize; n];
    loop {
        if assign.iter().max() == Some(&2) {
            let mut blocks = [LabelSet::new(), LabelSet::new(), LabelSet::new()];
            for (l, &b) in ls.iter().zip(&assign) {
                blocks[b].insert(l.clone());
            }
            let trees: Vec<Vec<RootedTree>> = blocks
                .iter()
                .map(|b| enumerate_trees(b).expect("nonempty"))
                .collect();
            for a in &trees[0] {
                for b in &trees[1] {
                    for c in &trees[2] {
                        out.push([a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            let bound = assign[..i].iter().max().copied().unwrap_or(0) + 1;
            if assign[i] < bound.min(2) {
                assign[i] += 1;
                for a in assign.iter_mut().skip(i + 1) {
                    *a = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Span;
    use crate::trees::{label, labels, tree};

    fn tv(s: &str) -> TreeVector {
        TreeVector::parse(s).unwrap()
    }

    fn wv(s: &str) -> WedgeVector {
        WedgeVector::parse(s).unwrap()
    }

    #[test]
    fn orientation_flips_sign() {
        let w = wv("b ^ a");
        assert_eq!(w, wv("-a ^ b"));
        assert_eq!(w.coeff(&tree("a"), &tree("b")), Rational::from_int(-1));
        assert_eq!(w.coeff(&tree("b"), &tree("a")), Rational::from_int(1));
        assert_eq!(wv("a ^ b").to_string(), "a ^ b");
    }

    #[test]
    fn wedge_json_shape() {
        let s = serde_json::to_string(&wv("(b c) ^ a")).unwrap();
        assert_eq!(s, r#"[{"left":"a","right":"(b c)","coeff":"-1"}]"#);
    }

    #[test]
    fn wedge_compose_examples() {
        let star = label("s");
        let t = tv("(c d)");
        assert_eq!(wedge_compose(&wv("a ^ s"), &star, &t).unwrap(), wv("a ^ (c d)"));
        assert_eq!(
            wedge_compose(&wv("a ^ (b s)"), &star, &t).unwrap(),
            wv("a ^ (b (c d))")
        );
        // ((b◁*)∧a)∘_* T = −(a∧(b◁T))
        assert_eq!(
            wedge_compose(&wv("(b s) ^ a"), &star, &t).unwrap(),
            wv("-a ^ (b (c d))")
        );
        assert_eq!(
            wedge_compose(&wv("a ^ b"), &star, &t),
            Err(Error::AmbiguousPosition("s".into()))
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta2(&wv("a ^ b")), tv("(a b) - (b a)"));
        let w3 = Wedge3Vector::triple(tree("a"), tree("b"), tree("c"));
        assert!(delta2(&delta3(&w3)).is_zero());
        // six_term and δ₃ agree up to the overall sign of the δ₃ convention
        let st = six_term(&tv("a"), &tv("b"), &tv("c")).unwrap();
        assert_eq!(delta3(&w3), -st.clone());
        assert!(delta2(&st).is_zero());
    }

    #[test]
    fn delta3_expansion_by_hand() {
        let w3 = Wedge3Vector::triple(tree("a"), tree("b"), tree("c"));
        let expected = wv("(a b) ^ c - (b a) ^ c + (b c) ^ a - (c b) ^ a - (a c) ^ b + (c a) ^ b");
        assert_eq!(delta3(&w3), expected);
        assert_eq!(expected.len(), 6);
    }

    #[test]
    fn wedge3_sign_rule() {
        let a = Wedge3Vector::triple(tree("b"), tree("a"), tree("c"));
        let b = Wedge3Vector::triple(tree("a"), tree("b"), tree("c"));
        assert_eq!(a.iter().next().unwrap().1, &Rational::from_int(-1));
        assert_eq!(b.iter().next().unwrap().1, &Rational::from_int(1));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(wedge_basis(&labels("a")).len(), 0);
        assert_eq!(wedge_basis(&labels("a b")).len(), 1);
        // three splits 1+2, each with 1·2 tree pairs
        assert_eq!(wedge_basis(&labels("a b c")).len(), 6);
        // four splits 1+3 (1·9) and three splits 2+2 (2·2)
        assert_eq!(wedge_basis(&labels("a b c d")).len(), 48);
        assert_eq!(wedge_basis(&labels("a b c d e")).len(), 500);
        assert_eq!(wedge3_basis(&labels("a b c")).len(), 1);
        // {a,b,c,d} into 3 blocks: 6 partitions, each with one 2-block (2 trees)
        assert_eq!(wedge3_basis(&labels("a b c d")).len(), 12);
    }

    #[test]
    fn six_term_lies_in_delta3_image_at_four() {
        let ls = labels("a b c d");
        let mut img = Span::new();
        for [r, s, t] in wedge3_basis(&ls) {
            img.insert(delta3(&Wedge3Vector::triple(r, s, t)).as_sparse());
        }
        let st = six_term(&tv("a"), &tv("b"), &tv("(c d)")).unwrap();
        assert!(img.contains(st.as_sparse()));
        assert!(six_term(&tv("a"), &tv("(a b)"), &tv("c")).is_err());
    }
}
