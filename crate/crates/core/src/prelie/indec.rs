use super::{delta2, wedge::wedge_basis, TreeVector, WedgeVector};
use crate::exactalg::{SparseVec, Span};
use crate::trees::{enumerate_trees, LabelSet, RootedTree};

/// `PreLie(I)` modulo the image of `δ : Λ²PreLie(I) → PreLie(I)`.
///
/// Coordinates on the quotient are the coefficients of the non-pivot trees
/// in the fully reduced representative.
#[derive(Clone, Debug)]
pub struct IndecSpace {
    labels: LabelSet,
    image: Span<RootedTree>,
    free: Vec<RootedTree>,
}

impl IndecSpace {
    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    /// The span of `im δ` inside `PreLie(I)`.
    pub fn image(&self) -> &Span<RootedTree> {
        &self.image
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Trees whose classes form the coordinate basis of the quotient.
    pub fn basis(&self) -> &[RootedTree] {
        &self.free
    }

    /// Quotient coordinates of `v`, keyed by basis tree.
    pub fn pi_coords(&self, v: &TreeVector) -> SparseVec<RootedTree> {
        self.image.residual(v.as_sparse())
    }

    /// Quotient coordinates as a dense vector over [`IndecSpace::basis`].
    pub fn pi_dense(&self, v: &TreeVector) -> Vec<crate::Rational> {
        let r = self.pi_coords(v);
        self.free
            .iter()
            .map(|t| r.get(t).cloned().unwrap_or_else(crate::Rational::zero))
            .collect()
    }
}

pub fn indec_space(labels: &LabelSet) -> IndecSpace {
    let trees = if labels.is_empty() {
        Vec::new()
    } else {
        enumerate_trees(labels).expect("nonempty label set")
    };
    let mut image = Span::with_universe(trees.iter().cloned());
    for (s, t) in wedge_basis(labels) {
        image.insert(delta2(&WedgeVector::pair(s, t)).as_sparse());
    }
    let pivots: std::collections::BTreeSet<RootedTree> = image.pivot_keys().into_iter().collect();
    let free = trees.into_iter().filter(|t| !pivots.contains(t)).collect();
    IndecSpace {
        labels: labels.clone(),
        image,
        free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::labels;

    #[test]
    fn dimensions() {
        assert_eq!(indec_space(&labels("a")).dim(), 1);
        assert_eq!(indec_space(&labels("a b")).dim(), 1);
        assert_eq!(indec_space(&labels("a b c")).dim(), 4);
        assert_eq!(indec_space(&labels("a b c d")).dim(), 27);
    }

    #[test]
    fn image_projects_to_zero() {
        let sp = indec_space(&labels("a b c"));
        let w = WedgeVector::parse("a ^ (b c) - 2*(b a) ^ c").unwrap();
        assert!(sp.pi_coords(&delta2(&w)).is_zero());
        let t = TreeVector::parse("(a b c)").unwrap();
        assert!(!sp.pi_coords(&t).is_zero());
        assert_eq!(sp.pi_dense(&t).len(), 4);
    }
}
