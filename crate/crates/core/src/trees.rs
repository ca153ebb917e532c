//! Labeled rooted trees on finite label sets.
//!
//! A [`RootedTree`] is an immutable value whose identity is its canonical
//! serialization: `a` for a single vertex and `(a T1 T2 …)` for a root `a`
//! with child subtrees `T1, T2, …`, siblings sorted by `(size, text)`.
//! Trees compare by that text, which is the basis order used everywhere.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex label: a nonempty token over `[A-Za-z0-9_]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

pub type LabelSet = BTreeSet<Label>;

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Label {
    /// Labels are nonempty runs of ASCII letters, digits and `_`. The single
    /// character `0` is reserved: it denotes the zero vector in linear
    /// combinations.
    pub fn new(s: &str) -> Result<Label> {
        if s.is_empty() || s == "0" || !s.chars().all(is_label_char) {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        Ok(Label(Arc::from(s)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// A label not satisfying `taken`, of the form `_0`, `_1`, …
    pub fn fresh(taken: impl Fn(&Label) -> bool) -> Label {
        (0..)
            .map(|i| Label(Arc::from(format!("_{i}"))))
            .find(|l| !taken(l))
            .expect("infinitely many candidates")
    }

    /// A label absent from every given set.
    pub fn fresh_outside(sets: &[&LabelSet]) -> Label {
        Label::fresh(|l| sets.iter().any(|s| s.contains(l)))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        Label::new(s)
    }
}

/// The labels `1, …, n`, zero-padded so that string order is numeric order.
pub fn standard_labels(n: usize) -> Vec<Label> {
    let width = n.to_string().len();
    (1..=n)
        .map(|i| Label(Arc::from(format!("{i:0width$}"))))
        .collect()
}

struct Node {
    label: Label,
    children: Vec<RootedTree>,
    size: usize,
    min: Label,
    text: String,
}

/// A rooted tree whose vertices are distinct labels.
#[derive(Clone)]
pub struct RootedTree(Arc<Node>);

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.text == other.0.text
    }
}

impl Eq for RootedTree {}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.text.cmp(&other.0.text)
    }
}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.text.hash(state)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.text)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.text)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl Serialize for RootedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.text)
    }
}

impl<'de> Deserialize<'de> for RootedTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_tree(&s).map_err(serde::de::Error::custom)
    }
}

impl FromStr for RootedTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<RootedTree> {
        parse_tree(s)
    }
}

fn sibling_order(a: &RootedTree, b: &RootedTree) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.text().cmp(b.text()))
}

impl RootedTree {
    pub fn leaf(label: Label) -> RootedTree {
        RootedTree(Arc::new(Node {
            text: label.as_str().to_string(),
            min: label.clone(),
            label,
            children: Vec::new(),
            size: 1,
        }))
    }

    /// Builds `label` with the given child subtrees without checking label
    /// disjointness.
    pub(crate) fn node(label: Label, mut children: Vec<RootedTree>) -> RootedTree {
        if children.is_empty() {
            return RootedTree::leaf(label);
        }
        children.sort_by(sibling_order);
        let size = 1 + children.iter().map(RootedTree::size).sum::<usize>();
        let min = children
            .iter()
            .map(|c| &c.0.min)
            .chain(std::iter::once(&label))
            .min()
            .cloned()
            .expect("nonempty");
        let mut text = String::with_capacity(4 * size);
        text.push('(');
        text.push_str(label.as_str());
        for c in &children {
            text.push(' ');
            text.push_str(c.text());
        }
        text.push(')');
        RootedTree(Arc::new(Node {
            label,
            children,
            size,
            min,
            text,
        }))
    }

    pub fn root(&self) -> &Label {
        &self.0.label
    }

    /// Child subtrees of the root in canonical order.
    pub fn children(&self) -> &[RootedTree] {
        &self.0.children
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn min_label(&self) -> &Label {
        &self.0.min
    }

    /// Canonical serialization.
    pub fn text(&self) -> &str {
        &self.0.text
    }

    pub fn root_valence(&self) -> usize {
        self.0.children.len()
    }

    pub fn height(&self) -> usize {
        self.children().iter().map(|c| 1 + c.height()).max().unwrap_or(0)
    }

    /// Vertex labels in preorder.
    pub fn vertices(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices(&self, out: &mut Vec<Label>) {
        out.push(self.root().clone());
        for c in self.children() {
            c.collect_vertices(out);
        }
    }

    pub fn labels(&self) -> LabelSet {
        self.vertices().into_iter().collect()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.root() == label || self.children().iter().any(|c| c.contains(label))
    }

    /// Parent of every non-root vertex.
    pub fn parent_map(&self) -> BTreeMap<Label, Label> {
        let mut out = BTreeMap::new();
        self.collect_parents(&mut out);
        out
    }

    fn collect_parents(&self, out: &mut BTreeMap<Label, Label>) {
        for c in self.children() {
            out.insert(c.root().clone(), self.root().clone());
            c.collect_parents(out);
        }
    }

    /// Rebuilds a tree from a root and a parent map. Returns an error if the
    /// map does not describe a tree on `{root} ∪ dom(parent)` rooted at `root`.
    pub fn from_parent_map(root: &Label, parent: &BTreeMap<Label, Label>) -> Result<RootedTree> {
        if parent.contains_key(root) {
            return Err(Error::DuplicateLabel(root.to_string()));
        }
        let mut kids: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        for (v, p) in parent {
            if p != root && !parent.contains_key(p) {
                return Err(Error::MissingLabel(p.to_string()));
            }
            kids.entry(p).or_default().push(v);
        }
        fn build(v: &Label, kids: &BTreeMap<&Label, Vec<&Label>>, seen: &mut usize) -> RootedTree {
            *seen += 1;
            let children = kids
                .get(v)
                .map(|cs| cs.iter().map(|c| build(c, kids, seen)).collect())
                .unwrap_or_default();
            RootedTree::node(v.clone(), children)
        }
        let mut seen = 0;
        let t = build(root, &kids, &mut seen);
        if seen != parent.len() + 1 {
            // some vertices sit on a cycle unreachable from the root
            return Err(Error::Syntax {
                pos: 0,
                msg: "parent map contains a cycle".into(),
            });
        }
        Ok(t)
    }

    /// The subtree rooted at `v`.
    pub fn subtree(&self, v: &Label) -> Option<RootedTree> {
        if self.root() == v {
            return Some(self.clone());
        }
        self.children().iter().find_map(|c| c.subtree(v))
    }

    /// Parent of `v`, `None` for the root or an absent label.
    pub fn parent_of(&self, v: &Label) -> Option<Label> {
        for c in self.children() {
            if c.root() == v {
                return Some(self.root().clone());
            }
            if let Some(p) = c.parent_of(v) {
                return Some(p);
            }
        }
        None
    }

    /// Attaches `t` as a new child of vertex `v`.
    pub fn graft(&self, v: &Label, t: &RootedTree) -> RootedTree {
        if self.root() == v {
            let mut children = self.children().to_vec();
            children.push(t.clone());
            return RootedTree::node(self.root().clone(), children);
        }
        let children = self
            .children()
            .iter()
            .map(|c| if c.contains(v) { c.graft(v, t) } else { c.clone() })
            .collect();
        RootedTree::node(self.root().clone(), children)
    }

    /// Replaces the subtree at `v` by a single vertex `leaf`.
    pub fn replace_subtree(&self, v: &Label, leaf: &Label) -> RootedTree {
        if self.root() == v {
            return RootedTree::leaf(leaf.clone());
        }
        let children = self
            .children()
            .iter()
            .map(|c| {
                if c.contains(v) {
                    c.replace_subtree(v, leaf)
                } else {
                    c.clone()
                }
            })
            .collect();
        RootedTree::node(self.root().clone(), children)
    }

    /// Deletes the subtree at a non-root vertex `v`.
    pub fn remove_subtree(&self, v: &Label) -> RootedTree {
        let children = self
            .children()
            .iter()
            .filter(|c| c.root() != v)
            .map(|c| if c.contains(v) { c.remove_subtree(v) } else { c.clone() })
            .collect();
        RootedTree::node(self.root().clone(), children)
    }

    /// Renames labels according to `map`; labels not in the map are kept.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> RootedTree {
        let label = map.get(self.root()).unwrap_or(self.root()).clone();
        if self.is_leaf() {
            return RootedTree::leaf(label);
        }
        RootedTree::node(label, self.children().iter().map(|c| c.relabel(map)).collect())
    }

    pub fn rename(&self, from: &Label, to: &Label) -> RootedTree {
        self.relabel(&BTreeMap::from([(from.clone(), to.clone())]))
    }

    /// Non-root vertices that have at least one child.
    pub fn inner_vertices(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for c in self.children() {
            c.collect_inner(&mut out);
        }
        out
    }

    fn collect_inner(&self, out: &mut Vec<Label>) {
        if !self.is_leaf() {
            out.push(self.root().clone());
            for c in self.children() {
                c.collect_inner(out);
            }
        }
    }

    /// Vertices with at least one child, all of whose children are leaves.
    pub fn top_corolla_vertices(&self) -> Vec<(Label, usize)> {
        let mut out = Vec::new();
        self.collect_top(&mut out);
        out
    }

    fn collect_top(&self, out: &mut Vec<(Label, usize)>) {
        if self.is_leaf() {
            return;
        }
        if self.children().iter().all(RootedTree::is_leaf) {
            out.push((self.root().clone(), self.root_valence()));
        } else {
            for c in self.children() {
                c.collect_top(out);
            }
        }
    }

    /// A top corolla: a vertex `b` carrying only leaves, chosen with the
    /// fewest leaves and then the smallest label. For a corolla this is
    /// the root itself.
    pub fn top_corolla(&self) -> Result<(Corolla, Label)> {
        if self.size() < 2 {
            return Err(Error::ArityTooSmall {
                got: self.size(),
                min: 2,
            });
        }
        let (b, _) = self
            .top_corolla_vertices()
            .into_iter()
            .min_by(|(a, na), (b, nb)| na.cmp(nb).then_with(|| a.cmp(b)))
            .expect("a tree with an edge has a top corolla");
        let c = self.subtree(&b).expect("vertex of the tree");
        Ok((Corolla(c), b))
    }

    /// All trees of `self ∘_pos t`: every edge entering `pos` is rerouted to
    /// some vertex of `t`; the edge leaving `pos` (if any) now leaves the
    /// root of `t`. Assumes `pos ∈ self` and disjoint labels otherwise.
    pub fn compose_terms(&self, pos: &Label, t: &RootedTree) -> Vec<RootedTree> {
        let sub = self.subtree(pos).expect("composition position present");
        let incoming: Vec<RootedTree> = sub.children().to_vec();
        let targets = t.vertices();
        let mut out = Vec::new();
        let mut choice = vec![0usize; incoming.len()];
        loop {
            let mut placed = t.clone();
            for (child, &k) in incoming.iter().zip(&choice) {
                placed = placed.graft(&targets[k], child);
            }
            out.push(if self.root() == pos {
                placed
            } else {
                self.replace_subtree_with(pos, &placed)
            });
            // odometer over targets^incoming
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < targets.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn replace_subtree_with(&self, v: &Label, t: &RootedTree) -> RootedTree {
        if self.root() == v {
            return t.clone();
        }
        let children = self
            .children()
            .iter()
            .map(|c| {
                if c.contains(v) {
                    c.replace_subtree_with(v, t)
                } else {
                    c.clone()
                }
            })
            .collect();
        RootedTree::node(self.root().clone(), children)
    }
}

/// A tree of height at most one: a center with leaves attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corolla(RootedTree);

impl Corolla {
    pub fn tree(&self) -> &RootedTree {
        &self.0
    }

    pub fn center(&self) -> &Label {
        self.0.root()
    }

    pub fn leaves(&self) -> Vec<Label> {
        self.0.children().iter().map(|c| c.root().clone()).collect()
    }
}

/// Grafts `subtrees` onto a new root labeled `root`.
pub fn bplus(root: Label, subtrees: Vec<RootedTree>) -> Result<RootedTree> {
    let mut seen = LabelSet::from([root.clone()]);
    for t in &subtrees {
        for l in t.vertices() {
            if !seen.insert(l.clone()) {
                return Err(Error::LabelClash(l.to_string()));
            }
        }
    }
    Ok(RootedTree::node(root, subtrees))
}

/// Parses `Tree := Label | "(" Label Tree+ ")"`.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::Empty);
    }
    let t = p.tree()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    let mut seen = LabelSet::new();
    for l in t.vertices() {
        if !seen.insert(l.clone()) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(t)
}

/// Canonical text of a tree.
pub fn format_tree(t: &RootedTree) -> String {
    t.text().to_string()
}

pub(crate) struct Parser<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl Parser<'_> {
    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn label(&mut self) -> Result<Label> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if is_label_char(c) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected a label"));
        }
        Label::new(&self.src[start..self.pos])
    }

    pub(crate) fn tree(&mut self) -> Result<RootedTree> {
        if self.eat('(') {
            let root = self.label()?;
            let mut children = Vec::new();
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    None => return Err(self.error("unclosed parenthesis")),
                    _ => children.push(self.tree()?),
                }
            }
            if children.is_empty() {
                return Err(self.error("a parenthesized tree needs at least one subtree"));
            }
            Ok(RootedTree::node(root, children))
        } else {
            Ok(RootedTree::leaf(self.label()?))
        }
    }
}

/// Decodes a Prüfer sequence over `0..n` into the edge list of a labeled
/// tree on `n ≥ 2` vertices.
fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&j| degree[j] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&j| degree[j] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every rooted tree on the label set, each exactly once, sorted by
/// canonical text. There are `n^{n-1}` of them.
pub fn enumerate_trees(labels: &LabelSet) -> Result<Vec<RootedTree>> {
    let labels: Vec<Label> = labels.iter().cloned().collect();
    let n = labels.len();
    match n {
        0 => return Err(Error::Empty),
        1 => return Ok(vec![RootedTree::leaf(labels[0].clone())]),
        _ => {}
    }
    let mut out = Vec::with_capacity(n.pow(n as u32 - 1));
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_edges(&seq, n);
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for root in 0..n {
            out.push(orient(&adj, root, usize::MAX, &labels));
        }
        let mut i = 0;
        loop {
            if i == seq.len() {
                out.sort();
                return Ok(out);
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn orient(adj: &[Vec<usize>], v: usize, from: usize, labels: &[Label]) -> RootedTree {
    let children = adj[v]
        .iter()
        .filter(|&&w| w != from)
        .map(|&w| orient(adj, w, v, labels))
        .collect();
    RootedTree::node(labels[v].clone(), children)
}

/// Label set of a slice of labels.
pub fn label_set(labels: &[Label]) -> LabelSet {
    labels.iter().cloned().collect()
}

/// Convenience for tests and examples: parse, panicking on error.
pub fn tree(text: &str) -> RootedTree {
    parse_tree(text).unwrap_or_else(|e| panic!("bad tree `{text}`: {e}"))
}

pub fn label(text: &str) -> Label {
    Label::new(text).unwrap_or_else(|e| panic!("bad label `{text}`: {e}"))
}

pub fn labels(text: &str) -> LabelSet {
    text.split_whitespace().map(label).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let t = tree("a");
        assert_eq!(t.size(), 1);
        assert_eq!(t.root(), &label("a"));
        let t = tree("(a b)");
        assert_eq!(t.children().len(), 1);
        assert_eq!(t.children()[0].root(), &label("b"));
        assert_eq!(format_tree(&tree("(a (c d) b)")), "(a b (c d))");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree("  "), Err(Error::Empty));
        assert_eq!(parse_tree("(a b a)"), Err(Error::DuplicateLabel("a".into())));
        assert!(matches!(parse_tree("(a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tree("(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tree("a b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tree("(a b))"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_tree("(a b-c)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(&labels("a")).unwrap(), vec![tree("a")]);
        assert_eq!(
            enumerate_trees(&labels("a b")).unwrap(),
            vec![tree("(a b)"), tree("(b a)")]
        );
        assert_eq!(enumerate_trees(&LabelSet::new()), Err(Error::Empty));
    }

    /// Brute force: every choice of root and parent function, kept when it
    /// is acyclic.
    fn count_parent_maps(n: usize) -> usize {
        let mut count = 0;
        for root in 0..n {
            let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
            let mut parent = vec![0usize; others.len()];
            loop {
                let mut p = vec![usize::MAX; n];
                for (i, &v) in others.iter().enumerate() {
                    p[v] = parent[i];
                }
                let acyclic = others.iter().all(|&v| {
                    let mut cur = v;
                    for _ in 0..n {
                        if cur == root {
                            return true;
                        }
                        if p[cur] == cur {
                            return false;
                        }
                        cur = p[cur];
                    }
                    cur == root
                });
                if acyclic {
                    count += 1;
                }
                let mut i = 0;
                loop {
                    if i == parent.len() {
                        break;
                    }
                    parent[i] += 1;
                    if parent[i] < n {
                        break;
                    }
                    parent[i] = 0;
                    i += 1;
                }
                if i == parent.len() {
                    break;
                }
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=6 {
            let ts = enumerate_trees(&label_set(&standard_labels(n))).unwrap();
            assert_eq!(ts.len(), count_parent_maps(n), "n = {n}");
            assert_eq!(ts.len(), n.pow(n as u32 - 1));
            let distinct: BTreeSet<_> = ts.iter().collect();
            assert_eq!(distinct.len(), ts.len());
            assert!(ts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn enumerated_trees_round_trip() {
        for t in enumerate_trees(&labels("a b c d")).unwrap() {
            assert_eq!(parse_tree(&format_tree(&t)).unwrap(), t);
            let rebuilt = RootedTree::from_parent_map(t.root(), &t.parent_map()).unwrap();
            assert_eq!(rebuilt, t);
        }
    }

    #[test]
    fn bplus_examples() {
        assert_eq!(bplus(label("a"), vec![]).unwrap(), tree("a"));
        assert_eq!(bplus(label("a"), vec![tree("b"), tree("c")]).unwrap(), tree("(a b c)"));
        let t = bplus(label("a"), vec![tree("(b c)")]).unwrap();
        assert_eq!(t, tree("(a (b c))"));
        assert_eq!(t.root_valence(), 1);
        assert_eq!(
            bplus(label("a"), vec![tree("(b c)"), tree("c")]),
            Err(Error::LabelClash("c".into()))
        );
        assert_eq!(
            bplus(label("a"), vec![tree("(b a)")]),
            Err(Error::LabelClash("a".into()))
        );
    }

    #[test]
    fn root_valence_examples() {
        assert_eq!(tree("(a b c)").root_valence(), 2);
        assert_eq!(tree("(a (b c))").root_valence(), 1);
        assert_eq!(tree("a").root_valence(), 0);
    }

    #[test]
    fn top_corolla_examples() {
        let t = tree("(a (b c) d)");
        let (c, b) = t.top_corolla().unwrap();
        assert_eq!(b, label("b"));
        assert_eq!(c.tree(), &tree("(b c)"));
        // oracle: b has only leaf children and the fewest among such vertices
        let candidates = t.top_corolla_vertices();
        let best = candidates.iter().map(|(_, k)| *k).min().unwrap();
        assert!(candidates.contains(&(b.clone(), best)));
        assert!(t.subtree(&b).unwrap().children().iter().all(RootedTree::is_leaf));

        let t = tree("(a (b c d) (e f))");
        let (c, b) = t.top_corolla().unwrap();
        assert_eq!((c.tree().text(), b.as_str()), ("(e f)", "e"));
        // tie on leaf count broken by label
        let (_, b) = tree("(r (y z) (x w))").top_corolla().unwrap();
        assert_eq!(b, label("x"));
        assert!(tree("a").top_corolla().is_err());
        // the decomposition t = t' ∘_* C_b with t' smaller
        let t = tree("(a (b c) d)");
        let (c, b) = t.top_corolla().unwrap();
        let star = label("s");
        let rest = t.replace_subtree(&b, &star);
        assert!(rest.size() < t.size());
        assert_eq!(rest.compose_terms(&star, c.tree()), vec![t]);
    }

    #[test]
    fn compose_terms_rule() {
        // * is a leaf: only its outgoing edge is rerouted
        let t = tree("(a s)").compose_terms(&label("s"), &tree("(c d)"));
        assert_eq!(t, vec![tree("(a (c d))")]);
        // b's edge lands on c or on d
        let mut t = tree("(s b)").compose_terms(&label("s"), &tree("(c d)"));
        t.sort();
        assert_eq!(t, vec![tree("(c (d b))"), tree("(c b d)")]);
    }

    fn arb_tree(max: usize) -> impl Strategy<Value = RootedTree> {
        (1..=max).prop_flat_map(|n| {
            let ls = standard_labels(n);
            (Just(ls), prop::collection::vec(any::<prop::sample::Index>(), n))
        })
        .prop_map(|(ls, picks)| {
            // random recursive tree: vertex i picks a parent among 0..i
            let mut parent = BTreeMap::new();
            for i in 1..ls.len() {
                parent.insert(ls[i].clone(), ls[picks[i].index(i)].clone());
            }
            RootedTree::from_parent_map(&ls[0], &parent).unwrap()
        })
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_sibling_order(t in arb_tree(7), seed in any::<u64>()) {
            // rebuild the text with shuffled siblings and reparse
            fn shuffled(t: &RootedTree, seed: &mut u64) -> String {
                if t.is_leaf() {
                    return t.root().to_string();
                }
                let mut parts: Vec<String> = t.children().iter().map(|c| shuffled(c, seed)).collect();
                for i in (1..parts.len()).rev() {
                    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    parts.swap(i, (*seed >> 33) as usize % (i + 1));
                }
                format!("({} {})", t.root(), parts.join(" "))
            }
            let mut s = seed;
            let text = shuffled(&t, &mut s);
            prop_assert_eq!(parse_tree(&text).unwrap(), t.clone());
            prop_assert_eq!(parse_tree(&format_tree(&t)).unwrap(), t);
        }
    }
}
