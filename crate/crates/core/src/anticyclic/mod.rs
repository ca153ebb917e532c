//! The anticyclic structure of `PreLie`: the maps `Γ_b`, the normal form of
//! `CycPreLie`, the relation module `K_P`, and the `Perm`/`Reflex` side.

mod gamma;
mod perm;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use gamma::{gamma, gamma_seeded};
pub(crate) use gamma::gamma_pair;
pub use perm::{
    iota, psi, psi_inv, reflex_project, reflex_section, sum_of_gammas, PermCycElem, ReflexCycElem,
};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, Span};
use crate::prelie::{product_unchecked, TreeVector, WedgeKey, WedgeVector};
use crate::trees::{enumerate_trees, Label, LabelSet, RootedTree};

/// An element `⟨i₀, body⟩` of `CycPreLie(I)` with `i₀ = min(I)`.
#[derive(Clone, Debug)]
pub struct CycPreLieElem {
    labels: LabelSet,
    body: TreeVector,
}

impl PartialEq for CycPreLieElem {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body && (self.labels == other.labels || self.body.is_zero())
    }
}

impl Eq for CycPreLieElem {}

impl CycPreLieElem {
    pub fn zero(labels: LabelSet) -> Self {
        CycPreLieElem {
            labels,
            body: TreeVector::zero(),
        }
    }

    /// `⟨i, t⟩` for any label `i` outside `t`, normalized to the minimal
    /// basepoint.
    pub fn from_pair(i: &Label, t: &TreeVector) -> Result<CycPreLieElem> {
        let mut labels = t.homogeneous_labels()?.unwrap_or_default();
        if !labels.insert(i.clone()) {
            return Err(Error::LabelClash(i.to_string()));
        }
        let i0 = labels.first().expect("nonempty").clone();
        let body = if i0 == *i {
            t.clone()
        } else {
            let leaf = RootedTree::leaf(i.clone());
            let mut out = TreeVector::zero();
            for (s, c) in t.iter() {
                out.add_scaled(&gamma_pair(&i0, &leaf, s), c);
            }
            out
        };
        Ok(CycPreLieElem { labels, body })
    }

    /// The basis element `⟨min(I), t⟩`.
    pub fn basis_element(labels: &LabelSet, t: RootedTree) -> CycPreLieElem {
        CycPreLieElem {
            labels: labels.clone(),
            body: TreeVector::from_tree(t),
        }
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn basepoint(&self) -> &Label {
        self.labels.first().expect("nonempty label set")
    }

    pub fn body(&self) -> &TreeVector {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// `i₀ ∧ body`.
    pub fn to_wedge(&self) -> WedgeVector {
        WedgeVector::wedge(&TreeVector::leaf(self.basepoint()), &self.body)
    }

    /// `Γ_b` of this element.
    pub fn gamma_at(&self, b: &Label) -> Result<TreeVector> {
        if !self.labels.contains(b) {
            return Err(Error::MissingLabel(b.to_string()));
        }
        if b == self.basepoint() {
            return Ok(self.body.clone());
        }
        gamma(b, &self.to_wedge())
    }

    pub fn scaled(&self, c: &Rational) -> CycPreLieElem {
        CycPreLieElem {
            labels: self.labels.clone(),
            body: self.body.scaled(c),
        }
    }

    pub fn add_scaled(&mut self, other: &CycPreLieElem, c: &Rational) {
        self.body.add_scaled(&other.body, c);
    }

    /// Parses `i | lincomb`, `i` any label outside the trees.
    pub fn parse(text: &str) -> Result<CycPreLieElem> {
        let (i, body) = text.split_once('|').ok_or_else(|| Error::Syntax {
            pos: 0,
            msg: "expected `basepoint | body`".into(),
        })?;
        let i = Label::new(i.trim())?;
        CycPreLieElem::from_pair(&i, &TreeVector::parse(body)?)
    }
}

impl fmt::Display for CycPreLieElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.labels.first() {
            Some(i0) => write!(f, "{i0} | {}", self.body),
            None => write!(f, "0"),
        }
    }
}

impl Serialize for CycPreLieElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycPreLieElem", 2)?;
        s.serialize_field("basepoint", &self.labels.first())?;
        s.serialize_field("body", &self.body)?;
        s.end()
    }
}

impl Add for CycPreLieElem {
    type Output = CycPreLieElem;
    fn add(mut self, rhs: CycPreLieElem) -> CycPreLieElem {
        if self.labels.is_empty() {
            self.labels = rhs.labels.clone();
        }
        self.body = self.body + rhs.body;
        self
    }
}

impl Sub for CycPreLieElem {
    type Output = CycPreLieElem;
    fn sub(self, rhs: CycPreLieElem) -> CycPreLieElem {
        self + (-rhs)
    }
}

impl Neg for CycPreLieElem {
    type Output = CycPreLieElem;
    fn neg(self) -> CycPreLieElem {
        CycPreLieElem {
            labels: self.labels,
            body: -self.body,
        }
    }
}

/// The class of `w` in `CycPreLie(I)`, as `⟨min(I), Γ_{min(I)}(w)⟩`.
pub fn cyc_normal(w: &WedgeVector) -> CycPreLieElem {
    let Some(labels) = w.labels() else {
        return CycPreLieElem::zero(LabelSet::new());
    };
    let i0 = labels.first().expect("nonempty").clone();
    let mut body = TreeVector::zero();
    for ((s, t), c) in w.iter() {
        body.add_scaled(&gamma_pair(&i0, s, t), c);
    }
    CycPreLieElem { labels, body }
}

/// Basis `⟨min(I), T⟩` of `CycPreLie(I)`, `T` over the trees on `I∖{min}`.
pub fn cycprelie_basis(labels: &LabelSet) -> Vec<CycPreLieElem> {
    let mut rest = labels.clone();
    if rest.pop_first().is_none() || rest.is_empty() {
        return Vec::new();
    }
    enumerate_trees(&rest)
        .expect("nonempty")
        .into_iter()
        .map(|t| CycPreLieElem::basis_element(labels, t))
        .collect()
}

/// The relation `x∧(y◁z) + z∧(y◁x)` (symmetry under exchanging the outer
/// entries).
pub fn kp_relation_swap(x: &TreeVector, y: &TreeVector, z: &TreeVector) -> WedgeVector {
    let p = product_unchecked;
    WedgeVector::wedge(x, &p(y, z)) + WedgeVector::wedge(z, &p(y, x))
}

/// The relation `x∧(y◁z) − y∧(x◁z) + y∧(z◁x)` (moving `y` to the front).
pub fn kp_relation_move(x: &TreeVector, y: &TreeVector, z: &TreeVector) -> WedgeVector {
    let p = product_unchecked;
    WedgeVector::wedge(x, &p(y, z)) - WedgeVector::wedge(y, &p(x, z)) + WedgeVector::wedge(y, &p(z, x))
}

/// Ordered partitions of `labels` into three nonempty blocks.
pub(crate) fn ordered_triples(labels: &LabelSet) -> Vec<[LabelSet; 3]> {
    let ls: Vec<&Label> = labels.iter().collect();
    let n = ls.len();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut blocks = [LabelSet::new(), LabelSet::new(), LabelSet::new()];
        let mut c = code;
        for l in &ls {
            blocks[c % 3].insert((*l).clone());
            c /= 3;
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
    }
    out
}

/// `K_P(I)` inside `Λ²PreLie(I)`: the right sub-module generated by the two
/// arity-3 relations, obtained by instantiating their variables with all
/// trees on all ordered triples of disjoint blocks covering `I`.
pub fn kp_oracle(labels: &LabelSet) -> Span<WedgeKey> {
    let mut sp = Span::with_universe(crate::prelie::wedge_basis(labels));
    for [a, b, c] in ordered_triples(labels) {
        let ta = enumerate_trees(&a).expect("nonempty");
        let tb = enumerate_trees(&b).expect("nonempty");
        let tc = enumerate_trees(&c).expect("nonempty");
        for x in &ta {
            let x = TreeVector::from_tree(x.clone());
            for y in &tb {
                let y = TreeVector::from_tree(y.clone());
                for z in &tc {
                    let z = TreeVector::from_tree(z.clone());
                    sp.insert(kp_relation_swap(&x, &y, &z).as_sparse());
                    sp.insert(kp_relation_move(&x, &y, &z).as_sparse());
                }
            }
        }
    }
    sp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelie::{wedge_basis, wedge_compose};
    use crate::trees::{label, labels};

    fn wv(s: &str) -> WedgeVector {
        WedgeVector::parse(s).unwrap()
    }

    fn tv(s: &str) -> TreeVector {
        TreeVector::parse(s).unwrap()
    }

    #[test]
    fn kp_codimensions() {
        assert_eq!(kp_oracle(&labels("a b")).rank(), 0);
        assert_eq!(kp_oracle(&labels("a b")).codim(), 1);
        assert_eq!(kp_oracle(&labels("a b c")).codim(), 2);
        assert_eq!(kp_oracle(&labels("a b c d")).codim(), 9);
    }

    #[test]
    fn kp_closed_under_composition() {
        // composing arity-3 relations with every 2-vertex tree stays in K_P(4)
        let big = kp_oracle(&labels("a b c s"));
        let small = kp_oracle(&labels("a b s"));
        let s = label("s");
        for g in small.generators() {
            let w: WedgeVector = wedge_from(g);
            for t in ["(s c)", "(c s)"] {
                let t = tv(t);
                let img = wedge_compose(&w, &s, &t).unwrap();
                assert!(big.contains(img.as_sparse()));
            }
        }
    }

    fn wedge_from(v: &crate::SparseVec<WedgeKey>) -> WedgeVector {
        let mut w = WedgeVector::zero();
        for ((a, b), c) in v.iter() {
            w.add_pair(a.clone(), b.clone(), c.clone());
        }
        w
    }

    #[test]
    fn cyc_normal_examples() {
        let e = cyc_normal(&wv("a ^ b"));
        assert_eq!(e.basepoint(), &label("a"));
        assert_eq!(e.body(), &tv("b"));
        let cyc = cyc_normal(&wv("x ^ (y z)")) + cyc_normal(&wv("y ^ (z x)")) + cyc_normal(&wv("z ^ (x y)"));
        assert!(cyc.is_zero());
    }

    #[test]
    fn cyc_normal_kills_kp_and_matches_codim() {
        for ls in ["a b c", "a b c d"] {
            let ls = labels(ls);
            let kp = kp_oracle(&ls);
            for g in kp.generators() {
                assert!(cyc_normal(&wedge_from(g)).is_zero());
            }
            let images: Vec<_> = wedge_basis(&ls)
                .into_iter()
                .map(|(s, t)| cyc_normal(&WedgeVector::pair(s, t)).body().as_sparse().clone())
                .collect();
            assert_eq!(crate::exactalg::rank_of(&images), kp.codim());
        }
    }

    #[test]
    fn gamma_against_oracle_at_four() {
        let ls = labels("a b c d");
        let kp = kp_oracle(&ls);
        for (s, t) in wedge_basis(&ls) {
            let w = WedgeVector::pair(s, t);
            for b in &ls {
                let g = gamma(b, &w).unwrap();
                let diff = w.clone() - WedgeVector::wedge(&TreeVector::leaf(b), &g);
                assert!(kp.contains(diff.as_sparse()), "{w} at {b}");
            }
        }
    }

    #[test]
    fn pair_presentation_and_parse() {
        let e = CycPreLieElem::parse("c | (a b)").unwrap();
        assert_eq!(e.basepoint(), &label("a"));
        assert_eq!(e, cyc_normal(&wv("c ^ (a b)")));
        assert_eq!(e.gamma_at(&label("c")).unwrap(), tv("(a b)"));
        assert_eq!(cycprelie_basis(&labels("a b c d")).len(), 9);
        assert!(CycPreLieElem::parse("a | (a b)").is_err());
        let s = serde_json::to_string(&CycPreLieElem::parse("a | (b c)").unwrap()).unwrap();
        assert_eq!(s, r#"{"basepoint":"a","body":[{"tree":"(b c)","coeff":"1"}]}"#);
    }
}
