//! The PreLie operad on ℚ-linear combinations of rooted trees.

mod indec;
mod reduce;
mod wedge;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseVec};
use crate::trees::{Label, LabelSet, Parser, RootedTree};

pub use indec::{indec_space, IndecSpace};
pub use reduce::reduce_rv1;
pub use wedge::{
    delta2, delta3, six_term, wedge3_basis, wedge_basis, wedge_compose, Wedge3Vector, WedgeKey,
    WedgeVector,
};
pub(crate) use wedge::wedge_compose_unchecked;

/// An element of `PreLie(I)`: a finite combination of rooted trees on `I`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVector(SparseVec<RootedTree>);

impl TreeVector {
    pub fn zero() -> Self {
        TreeVector(SparseVec::new())
    }

    pub fn from_tree(t: RootedTree) -> Self {
        TreeVector(SparseVec::unit(t))
    }

    pub fn leaf(l: &Label) -> Self {
        Self::from_tree(RootedTree::leaf(l.clone()))
    }

    pub fn from_sparse(v: SparseVec<RootedTree>) -> Self {
        TreeVector(v)
    }

    pub fn as_sparse(&self) -> &SparseVec<RootedTree> {
        &self.0
    }

    pub fn into_sparse(self) -> SparseVec<RootedTree> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of trees with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootedTree, &Rational)> {
        self.0.iter()
    }

    pub fn trees(&self) -> impl Iterator<Item = &RootedTree> {
        self.0.keys()
    }

    pub fn coeff(&self, t: &RootedTree) -> Rational {
        self.0.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, t: RootedTree, c: Rational) {
        self.0.add_term(t, c);
    }

    pub fn add_scaled(&mut self, other: &TreeVector, c: &Rational) {
        self.0.add_scaled(&other.0, c);
    }

    pub fn scaled(&self, c: &Rational) -> TreeVector {
        TreeVector(self.0.scaled(c))
    }

    /// Label set shared by all terms; `None` for the zero vector.
    pub fn labels(&self) -> Option<LabelSet> {
        self.0.keys().next().map(RootedTree::labels)
    }

    /// Checks that every term lives on the same label set and returns it.
    pub fn homogeneous_labels(&self) -> Result<Option<LabelSet>> {
        let mut it = self.0.keys();
        let Some(first) = it.next() else {
            return Ok(None);
        };
        let ls = first.labels();
        for t in it {
            if t.size() != ls.len() || t.vertices().iter().any(|l| !ls.contains(l)) {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(Some(ls))
    }

    pub fn relabel(&self, map: &std::collections::BTreeMap<Label, Label>) -> TreeVector {
        TreeVector(self.0.map_keys(|t| t.relabel(map)))
    }

    pub fn rename(&self, from: &Label, to: &Label) -> TreeVector {
        TreeVector(self.0.map_keys(|t| t.rename(from, to)))
    }

    /// Keeps only the trees satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&RootedTree) -> bool) -> TreeVector {
        let mut v = self.0.clone();
        v.retain(|t| keep(t));
        TreeVector(v)
    }

    /// Parses `3/2*(a b) - (b a)`; coefficients default to 1.
    pub fn parse(text: &str) -> Result<TreeVector> {
        let mut p = Parser { src: text, pos: 0 };
        let v = parse_lincomb(&mut p, |p| p.tree())?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        let mut out = TreeVector::zero();
        for (c, t) in v {
            out.add_term(t, c);
        }
        out.homogeneous_labels()?;
        Ok(out)
    }
}

/// Shared parser for `[-] [c*] X (± [c*] X)*`.
pub(crate) fn parse_lincomb<T>(
    p: &mut Parser<'_>,
    mut item: impl FnMut(&mut Parser<'_>) -> Result<T>,
) -> Result<Vec<(Rational, T)>> {
    let mut out = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Err(Error::Empty);
    }
    if p.src[p.pos..].trim() == "0" {
        p.pos = p.src.len();
        return Ok(out);
    }
    let mut sign = if p.eat('-') {
        -1
    } else {
        p.eat('+');
        1
    };
    loop {
        p.skip_ws();
        let coeff = parse_coeff(p)?;
        let x = item(p)?;
        out.push((coeff * Rational::from_int(sign), x));
        p.skip_ws();
        if p.eat('+') {
            sign = 1;
        } else if p.eat('-') {
            sign = -1;
        } else {
            return Ok(out);
        }
    }
}

/// An optional `p/q*` prefix. A bare number not followed by `*` is left for
/// the item parser, since labels may be numeric.
fn parse_coeff(p: &mut Parser<'_>) -> Result<Rational> {
    let start = p.pos;
    let rest = &p.src[p.pos..];
    let num_len = rest
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || *c == '/'))
        .map_or(rest.len(), |(i, _)| i);
    if num_len > 0 {
        let token = &rest[..num_len];
        p.pos += num_len;
        if p.eat('*') {
            return token.parse::<Rational>().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("bad coefficient `{token}`"),
            });
        }
        p.pos = start;
    }
    Ok(Rational::one())
}

pub(crate) fn write_lincomb<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (T, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (x, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "{x}")?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lincomb(f, self.0.iter())
    }
}

impl fmt::Debug for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TreeVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<TreeVector> {
        TreeVector::parse(s)
    }
}

impl From<RootedTree> for TreeVector {
    fn from(t: RootedTree) -> Self {
        TreeVector::from_tree(t)
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    tree: &'a RootedTree,
    coeff: &'a Rational,
}

impl Serialize for TreeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|(tree, coeff)| TermJson { tree, coeff }))
    }
}

impl Add for TreeVector {
    type Output = TreeVector;
    fn add(self, rhs: TreeVector) -> TreeVector {
        TreeVector(self.0 + rhs.0)
    }
}

impl Sub for TreeVector {
    type Output = TreeVector;
    fn sub(self, rhs: TreeVector) -> TreeVector {
        TreeVector(self.0 - rhs.0)
    }
}

impl Neg for TreeVector {
    type Output = TreeVector;
    fn neg(self) -> TreeVector {
        TreeVector(-self.0)
    }
}

fn check_disjoint(a: &LabelSet, b: &LabelSet) -> Result<()> {
    match a.intersection(b).next() {
        Some(l) => Err(Error::LabelClash(l.to_string())),
        None => Ok(()),
    }
}

/// `S ∘_pos T` extended bilinearly.
pub fn compose_partial(s: &TreeVector, pos: &Label, t: &TreeVector) -> Result<TreeVector> {
    let s_labels = s.homogeneous_labels()?;
    let t_labels = t.homogeneous_labels()?;
    if let Some(mut sl) = s_labels {
        if !sl.remove(pos) {
            return Err(Error::MissingLabel(pos.to_string()));
        }
        if let Some(tl) = &t_labels {
            check_disjoint(&sl, tl)?;
        }
    }
    Ok(compose_unchecked(s, pos, t))
}

pub(crate) fn compose_unchecked(s: &TreeVector, pos: &Label, t: &TreeVector) -> TreeVector {
    let mut out = TreeVector::zero();
    for (x, a) in s.iter() {
        for (y, b) in t.iter() {
            let ab = a * b;
            for z in x.compose_terms(pos, y) {
                out.add_term(z, ab.clone());
            }
        }
    }
    out
}

/// Trees of `s ◁ t`: the root of `t` grafted under each vertex of `s`.
pub fn graft_terms(s: &RootedTree, t: &RootedTree) -> Vec<RootedTree> {
    s.vertices().iter().map(|v| s.graft(v, t)).collect()
}

pub(crate) fn product_unchecked(s: &TreeVector, t: &TreeVector) -> TreeVector {
    let mut out = TreeVector::zero();
    for (x, a) in s.iter() {
        for (y, b) in t.iter() {
            let ab = a * b;
            for z in graft_terms(x, y) {
                out.add_term(z, ab.clone());
            }
        }
    }
    out
}

/// The pre-Lie product `S ◁ T`.
pub fn prelie_product(s: &TreeVector, t: &TreeVector) -> Result<TreeVector> {
    if let (Some(a), Some(b)) = (s.homogeneous_labels()?, t.homogeneous_labels()?) {
        check_disjoint(&a, &b)?;
    }
    Ok(product_unchecked(s, t))
}

/// `[S, T] = S ◁ T − T ◁ S`.
pub fn bracket(s: &TreeVector, t: &TreeVector) -> Result<TreeVector> {
    Ok(prelie_product(s, t)? - product_unchecked(t, s))
}

pub(crate) fn bracket_unchecked(s: &TreeVector, t: &TreeVector) -> TreeVector {
    product_unchecked(s, t) - product_unchecked(t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{label, tree};

    fn tv(s: &str) -> TreeVector {
        TreeVector::parse(s).unwrap()
    }

    #[test]
    fn zero_round_trips() {
        assert_eq!(TreeVector::zero().to_string(), "0");
        assert_eq!(tv(" 0 "), TreeVector::zero());
        assert!(Label::new("0").is_err());
        assert!(TreeVector::parse("(0 a)").is_err());
        assert_eq!(tv("(a 01)").len(), 1);
    }

    #[test]
    fn lincomb_parse_and_display() {
        let v = tv("3/2*(a b) - (b a)");
        assert_eq!(v.coeff(&tree("(a b)")), Rational::new(3, 2));
        assert_eq!(v.coeff(&tree("(b a)")), Rational::from_int(-1));
        assert_eq!(v.to_string(), "3/2*(a b) - (b a)");
        assert_eq!(tv(&v.to_string()), v);
        assert_eq!(tv("-2*a").to_string(), "-2*a");
        // numeric labels are not mistaken for coefficients
        assert_eq!(tv("(1 2)").to_string(), "(1 2)");
        assert_eq!(tv("2*(1 2) + (2 1)").coeff(&tree("(1 2)")), Rational::from_int(2));
        assert!(TreeVector::parse("(a b) + c").is_err());
        assert!(TreeVector::parse("x*(a b)").is_err());
        assert_eq!(TreeVector::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&tv("(a b) - 1/2*(b a)")).unwrap();
        assert_eq!(
            s,
            r#"[{"tree":"(a b)","coeff":"1"},{"tree":"(b a)","coeff":"-1/2"}]"#
        );
    }

    #[test]
    fn compose_examples() {
        let s = label("s");
        assert_eq!(compose_partial(&tv("(a s)"), &s, &tv("(c d)")).unwrap(), tv("(a (c d))"));
        assert_eq!(
            compose_partial(&tv("(s b)"), &s, &tv("(c d)")).unwrap(),
            tv("(c b d) + (c (d b))")
        );
        assert_eq!(compose_partial(&tv("(a (s b))"), &s, &tv("x")).unwrap(), tv("(a (x b))"));
    }

    #[test]
    fn compose_errors() {
        let s = label("s");
        assert_eq!(
            compose_partial(&tv("(a b)"), &s, &tv("c")),
            Err(Error::MissingLabel("s".into()))
        );
        assert_eq!(
            compose_partial(&tv("(a s)"), &s, &tv("(a c)")),
            Err(Error::LabelClash("a".into()))
        );
    }

    #[test]
    fn product_examples() {
        assert_eq!(prelie_product(&tv("a"), &tv("b")).unwrap(), tv("(a b)"));
        assert_eq!(
            prelie_product(&tv("(a b)"), &tv("c")).unwrap(),
            tv("(a b c) + (a (b c))")
        );
        assert_eq!(prelie_product(&tv("a"), &tv("a")), Err(Error::LabelClash("a".into())));
    }

    #[test]
    fn prelie_axiom_on_letters() {
        let (x, y, z) = (tv("x"), tv("y"), tv("z"));
        let p = |a: &TreeVector, b: &TreeVector| prelie_product(a, b).unwrap();
        let assoc = p(&p(&x, &y), &z) - p(&x, &p(&y, &z)) - p(&p(&x, &z), &y) + p(&x, &p(&z, &y));
        assert!(assoc.is_zero());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&tv("a"), &tv("b")).unwrap(), tv("(a b) - (b a)"));
        let s = tv("(a b) + 2*(b a)");
        let t = tv("(c d)");
        assert!((bracket(&s, &t).unwrap() + bracket(&t, &s).unwrap()).is_zero());
        let (a, b, c) = (tv("a"), tv("b"), tv("c"));
        let br = |x: &TreeVector, y: &TreeVector| bracket(x, y).unwrap();
        let jac = br(&br(&a, &b), &c) + br(&br(&b, &c), &a) + br(&br(&c, &a), &b);
        assert!(jac.is_zero());
    }
}
