use super::{graft_terms, wedge::wedge_compose_unchecked, TreeVector, WedgeVector};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::trees::{Label, RootedTree};

/// Rewrites `t` modulo brackets as a combination of root-valence-1 trees.
///
/// Returns `(result, witness)` with `t − result = δ(witness)` exactly and
/// every tree of `result` of root-valence 1.
pub fn reduce_rv1(t: &RootedTree) -> Result<(TreeVector, WedgeVector)> {
    if t.size() < 2 {
        return Err(Error::ArityTooSmall {
            got: t.size(),
            min: 2,
        });
    }
    Ok(reduce(t))
}

fn reduce(t: &RootedTree) -> (TreeVector, WedgeVector) {
    if t.root_valence() <= 1 {
        return (TreeVector::from_tree(t.clone()), WedgeVector::zero());
    }
    let non_leaf = t.children().iter().filter(|c| !c.is_leaf()).count();
    if non_leaf <= 1 {
        peel_leaf(t)
    } else {
        split_top_corolla(t)
    }
}

/// Root with leaves `a_2..a_k` and at most one larger subtree: with `T′`
/// the tree without `a_k`, `T′ ◁ a_k = T + r`, so
/// `T = δ(T′ ∧ a_k) + a_k ◁ T′ − r` and each tree of `r` has smaller
/// root-valence or a leaf on a valence-1 vertex.
fn peel_leaf(t: &RootedTree) -> (TreeVector, WedgeVector) {
    let ak = t
        .children()
        .iter()
        .rev()
        .find(|c| c.is_leaf())
        .expect("a root with at most one non-leaf child among several has a leaf")
        .root()
        .clone();
    let rest = t.remove_subtree(&ak);
    let leaf = RootedTree::leaf(ak.clone());
    let mut result = TreeVector::from_tree(RootedTree::node(ak, vec![rest.clone()]));
    let mut witness = WedgeVector::pair(rest.clone(), leaf.clone());
    let minus = Rational::from_int(-1);
    for x in graft_terms(&rest, &leaf) {
        if x == *t {
            continue;
        }
        let (r, w) = reduce(&x);
        result.add_scaled(&r, &minus);
        witness.add_scaled(&w, &minus);
    }
    (result, witness)
}

/// `T = T′ ∘_* C_b` for a top corolla `C_b`; reduce the smaller `T′` and
/// push the result through the composition.
fn split_top_corolla(t: &RootedTree) -> (TreeVector, WedgeVector) {
    let (corolla, b) = t.top_corolla().expect("size at least 2");
    let star = Label::fresh_outside(&[&t.labels()]);
    let outer = t.replace_subtree(&b, &star);
    let (r_outer, w_outer) = reduce(&outer);
    let c = TreeVector::from_tree(corolla.tree().clone());
    let mut witness = wedge_compose_unchecked(&w_outer, &star, &c);
    let mut result = TreeVector::zero();
    for (x, k) in r_outer.iter() {
        for y in x.compose_terms(&star, corolla.tree()) {
            if y.root_valence() == 1 {
                result.add_term(y, k.clone());
            } else {
                let (r, w) = reduce(&y);
                result.add_scaled(&r, k);
                witness.add_scaled(&w, k);
            }
        }
    }
    (result, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelie::delta2;
    use crate::trees::{enumerate_trees, labels, tree};

    fn check(t: &RootedTree) {
        let (result, witness) = reduce_rv1(t).unwrap();
        assert!(result.trees().all(|x| x.root_valence() == 1), "{t}: {result}");
        let back = result + delta2(&witness);
        assert_eq!(back, TreeVector::from_tree(t.clone()), "{t}");
    }

    #[test]
    fn already_reduced() {
        let (r, w) = reduce_rv1(&tree("(a b)")).unwrap();
        assert_eq!(r, TreeVector::parse("(a b)").unwrap());
        assert!(w.is_zero());
    }

    #[test]
    fn corolla_example() {
        let (r, w) = reduce_rv1(&tree("(a b c)")).unwrap();
        assert_eq!(r, TreeVector::parse("(c (a b)) - (a (b c))").unwrap());
        assert_eq!(w, WedgeVector::parse("(a b) ^ c").unwrap());
    }

    #[test]
    fn singleton_rejected() {
        assert_eq!(
            reduce_rv1(&tree("a")),
            Err(Error::ArityTooSmall { got: 1, min: 2 })
        );
    }

    #[test]
    fn exhaustive_up_to_four() {
        for ls in ["a b", "a b c", "a b c d"] {
            for t in enumerate_trees(&labels(ls)).unwrap() {
                check(&t);
            }
        }
    }

    #[test]
    fn mixed_shapes_at_six() {
        for t in ["(a (b c) (d e) f)", "(a (b c d) (e f))", "(a b c d e f)", "(f (e (d c) b) a)"] {
            check(&tree(t));
        }
    }
}
