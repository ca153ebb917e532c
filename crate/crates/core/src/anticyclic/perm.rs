use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::CycPreLieElem;
use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseVec};
use crate::prelie::TreeVector;
use crate::trees::{Label, LabelSet, RootedTree};

/// An element `Σ_i i ⊗ t_i` of `(Perm ⊙ CycPreLie)(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermCycElem {
    labels: LabelSet,
    slots: BTreeMap<Label, CycPreLieElem>,
}

impl PermCycElem {
    pub fn zero(labels: LabelSet) -> Self {
        PermCycElem {
            labels,
            slots: BTreeMap::new(),
        }
    }

    /// `i ⊗ t`.
    pub fn single(i: &Label, t: &CycPreLieElem) -> Result<Self> {
        let mut p = Self::zero(t.labels().clone());
        p.add_slot(i, t, &Rational::one())?;
        Ok(p)
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    /// Adds `c · (i ⊗ t)`.
    pub fn add_slot(&mut self, i: &Label, t: &CycPreLieElem, c: &Rational) -> Result<()> {
        if !self.labels.contains(i) {
            return Err(Error::MissingLabel(i.to_string()));
        }
        if !t.is_zero() && *t.labels() != self.labels {
            return Err(Error::Inhomogeneous);
        }
        let slot = self
            .slots
            .entry(i.clone())
            .or_insert_with(|| CycPreLieElem::zero(self.labels.clone()));
        slot.add_scaled(t, c);
        if slot.is_zero() {
            self.slots.remove(i);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &PermCycElem, c: &Rational) {
        for (i, t) in &other.slots {
            self.add_slot(i, t, c).expect("same label set");
        }
    }

    pub fn slot(&self, i: &Label) -> CycPreLieElem {
        self.slots
            .get(i)
            .cloned()
            .unwrap_or_else(|| CycPreLieElem::zero(self.labels.clone()))
    }

    pub fn slots(&self) -> impl Iterator<Item = (&Label, &CycPreLieElem)> {
        self.slots.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    /// `Σ_i t_i`, the image in `CycPreLie(I)` forgetting the slot.
    pub fn slot_sum(&self) -> CycPreLieElem {
        let mut out = CycPreLieElem::zero(self.labels.clone());
        for t in self.slots.values() {
            out.add_scaled(t, &Rational::one());
        }
        out
    }

    /// Coordinates keyed by `(slot, tree)` over the normal-form basis.
    pub fn coords(&self) -> SparseVec<(Label, RootedTree)> {
        let mut out = SparseVec::new();
        for (i, t) in &self.slots {
            for (s, c) in t.body().iter() {
                out.add_term((i.clone(), s.clone()), c.clone());
            }
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> PermCycElem {
        let mut out = PermCycElem::zero(self.labels.clone());
        out.add_scaled(self, c);
        out
    }
}

#[derive(Serialize)]
struct SlotJson<'a> {
    slot: &'a Label,
    elem: &'a CycPreLieElem,
}

impl Serialize for PermCycElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.slots.iter().map(|(slot, elem)| SlotJson { slot, elem }))
    }
}

/// A `PermCycElem` whose slots sum to zero: the canonical lift of a class in
/// `(Reflex ⊙ CycPreLie)(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReflexCycElem(PermCycElem);

impl ReflexCycElem {
    pub fn as_perm(&self) -> &PermCycElem {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The class of `(i − j) ⊗ t`.
    pub fn difference(i: &Label, j: &Label, t: &CycPreLieElem) -> Result<ReflexCycElem> {
        let mut p = PermCycElem::single(i, t)?;
        p.add_slot(j, t, &Rational::from_int(-1))?;
        Ok(ReflexCycElem(p))
    }
}

/// `ι(t) = Σ_i i ⊗ t`.
pub fn iota(t: &CycPreLieElem) -> PermCycElem {
    let mut p = PermCycElem::zero(t.labels().clone());
    for i in t.labels() {
        p.add_slot(i, t, &Rational::one()).expect("slot in label set");
    }
    p
}

/// Projection to `Reflex ⊙ CycPreLie`, realized by subtracting the mean slot.
pub fn reflex_project(p: &PermCycElem) -> ReflexCycElem {
    let n = p.labels().len() as i64;
    let mean = p.slot_sum().scaled(&Rational::new(1, n));
    let mut out = p.clone();
    out.add_scaled(&iota(&mean), &Rational::from_int(-1));
    ReflexCycElem(out)
}

/// The section of the projection: the sum-zero representative.
pub fn reflex_section(r: &ReflexCycElem) -> PermCycElem {
    r.0.clone()
}

/// `ψ(Σ_i i ⊗ t_i) = Σ_i i ◁ Γ_i(t_i)`.
pub fn psi(p: &PermCycElem) -> TreeVector {
    let mut out = TreeVector::zero();
    for (i, t) in p.slots() {
        let g = t.gamma_at(i).expect("slot in label set");
        for (s, c) in g.iter() {
            out.add_term(RootedTree::node(i.clone(), vec![s.clone()]), c.clone());
        }
    }
    out
}

/// Inverse of [`psi`] on root-valence-1 trees: `a ◁ T ↦ a ⊗ ⟨a, T⟩`.
pub fn psi_inv(v: &TreeVector) -> Result<PermCycElem> {
    let labels = v.homogeneous_labels()?.unwrap_or_default();
    let mut out = PermCycElem::zero(labels);
    for (t, c) in v.iter() {
        if t.root_valence() != 1 {
            return Err(Error::NotRootValenceOne(t.to_string()));
        }
        let a = t.root();
        let child = &t.children()[0];
        let elem = CycPreLieElem::from_pair(a, &TreeVector::from_tree(child.clone()))?;
        out.add_slot(a, &elem, c)?;
    }
    Ok(out)
}

/// `Σ_j j ◁ Γ_j(t)`, the right-hand side of the defining property of `ρ`.
pub fn sum_of_gammas(t: &CycPreLieElem) -> TreeVector {
    psi(&iota(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anticyclic::{cyc_normal, cycprelie_basis};
    use crate::exactalg::rank_of;
    use crate::prelie::WedgeVector;
    use crate::trees::{enumerate_trees, label, labels, tree};

    fn tv(s: &str) -> TreeVector {
        TreeVector::parse(s).unwrap()
    }

    #[test]
    fn psi_examples() {
        let t = CycPreLieElem::parse("a | (b c)").unwrap();
        assert_eq!(psi(&PermCycElem::single(&label("a"), &t).unwrap()), tv("(a (b c))"));
        let p = psi_inv(&tv("(a (b c))")).unwrap();
        let expected = PermCycElem::single(&label("a"), &cyc_normal(&WedgeVector::parse("a ^ (b c)").unwrap())).unwrap();
        assert_eq!(p, expected);
        assert!(matches!(psi_inv(&tv("(a b c)")), Err(Error::NotRootValenceOne(_))));
    }

    #[test]
    fn psi_round_trips_on_root_valence_one() {
        for ls in ["a b", "a b c", "a b c d"] {
            for t in enumerate_trees(&labels(ls)).unwrap() {
                if t.root_valence() == 1 {
                    let v = TreeVector::from_tree(t);
                    assert_eq!(psi(&psi_inv(&v).unwrap()), v);
                }
            }
        }
        let t = CycPreLieElem::parse("b | (a c)").unwrap();
        let p = PermCycElem::single(&label("b"), &t).unwrap();
        assert_eq!(psi_inv(&psi(&p)).unwrap(), p);
    }

    #[test]
    fn reflex_projection() {
        let t = CycPreLieElem::parse("a | (b c)").unwrap();
        assert!(reflex_project(&iota(&t)).is_zero());
        let r = reflex_project(&PermCycElem::single(&label("b"), &t).unwrap());
        assert!(r.as_perm().slot_sum().is_zero());
        let expected = {
            let mut p = PermCycElem::single(&label("b"), &t).unwrap();
            p.add_scaled(&iota(&t), &Rational::new(-1, 3));
            p
        };
        assert_eq!(reflex_section(&r), expected);
    }

    #[test]
    fn reflex_dimension() {
        for (ls, d) in [("a b c", 4), ("a b c d", 27)] {
            let ls = labels(ls);
            let basis = cycprelie_basis(&ls);
            let i0 = ls.first().unwrap().clone();
            let mut vs = Vec::new();
            for t in &basis {
                for j in &ls {
                    if *j != i0 {
                        vs.push(ReflexCycElem::difference(j, &i0, t).unwrap().as_perm().coords());
                    }
                }
            }
            assert_eq!(rank_of(&vs), d);
        }
    }

    #[test]
    fn psi_of_iota() {
        let t = CycPreLieElem::basis_element(&labels("a b c"), tree("(b c)"));
        let expected = tv("(a (b c))") + (tv("(b (a c))") - tv("(b (c a))")) - tv("(c (b a))");
        assert_eq!(sum_of_gammas(&t), expected);
    }
}
