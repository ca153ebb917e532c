use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use super::{Rational, SparseVec};

type Entries = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    entries: Entries,
    /// Expression of this row over the independent generators.
    combo: Entries,
}

/// `dst - coeff * src` for column-sorted sparse rows.
fn sub_scaled(dst: &Entries, coeff: &Rational, src: &Entries) -> Entries {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, -(coeff * &src[j].1)));
            j += 1;
        } else {
            let v = &dst[i].1 - &(coeff * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(entries: &Entries, col: usize) -> Option<&Rational> {
    entries
        .binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &entries[i].1)
}

/// Exact row space over ℚ kept in reduced row echelon form.
///
/// Columns are basis keys; the universe of keys grows as vectors are
/// inserted. The pivot of a new row is the smallest key in its support, so
/// the echelon form depends only on the inserted vectors and their order.
#[derive(Clone, Debug)]
pub struct Span<K: Ord + Clone + Hash> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
    rows: Vec<Row>,
    pivot_row: Vec<Option<usize>>,
    generators: Vec<SparseVec<K>>,
}

impl<K: Ord + Clone + Hash> Default for Span<K> {
    fn default() -> Self {
        Span {
            keys: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
            pivot_row: Vec::new(),
            generators: Vec::new(),
        }
    }
}

/// Residual, keys outside the universe, and the generator combination used.
type Reduction<K> = (BTreeMap<usize, Rational>, Vec<(K, Rational)>, BTreeMap<usize, Rational>);

impl<K: Ord + Clone + Hash> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A span whose key universe is known up front (needed for quotient
    /// dimensions).
    pub fn with_universe(keys: impl IntoIterator<Item = K>) -> Self {
        let mut sp = Self::new();
        for k in keys {
            sp.column(&k);
        }
        sp
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn universe_len(&self) -> usize {
        self.keys.len()
    }

    /// Dimension of the ambient space modulo this span.
    pub fn codim(&self) -> usize {
        self.keys.len() - self.rows.len()
    }

    /// The inserted vectors that increased the rank, in insertion order.
    pub fn generators(&self) -> &[SparseVec<K>] {
        &self.generators
    }

    /// The reduced echelon rows as vectors.
    pub fn echelon_rows(&self) -> Vec<SparseVec<K>> {
        self.rows
            .iter()
            .map(|r| {
                r.entries
                    .iter()
                    .map(|(c, x)| (self.keys[*c].clone(), x.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn pivot_keys(&self) -> Vec<K> {
        self.rows.iter().map(|r| self.keys[r.pivot].clone()).collect()
    }

    fn column(&mut self, key: &K) -> usize {
        if let Some(&c) = self.index.get(key) {
            return c;
        }
        let c = self.keys.len();
        self.keys.push(key.clone());
        self.index.insert(key.clone(), c);
        self.pivot_row.push(None);
        c
    }

    /// Residual of `v` after eliminating every pivot column, together with
    /// the generator combination that was subtracted. Keys outside the
    /// universe are reported separately; they can never be eliminated.
    fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let mut residual: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut outside = Vec::new();
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut hits = Vec::new();
        for (k, x) in v {
            match self.index.get(k) {
                None => outside.push((k.clone(), x.clone())),
                Some(&c) => match self.pivot_row[c] {
                    Some(r) => hits.push((r, x)),
                    None => {
                        let e = residual.entry(c).or_insert_with(Rational::zero);
                        *e += x;
                    }
                },
            }
        }
        for (r, x) in hits {
            let row = &self.rows[r];
            for (c, y) in &row.entries {
                if *c == row.pivot {
                    continue;
                }
                let e = residual.entry(*c).or_insert_with(Rational::zero);
                *e -= &(x * y);
            }
            for (g, y) in &row.combo {
                let e = combo.entry(*g).or_insert_with(Rational::zero);
                *e += &(x * y);
            }
        }
        residual.retain(|_, x| !x.is_zero());
        combo.retain(|_, x| !x.is_zero());
        (residual, outside, combo)
    }

    /// Inserts `v`; returns whether the rank increased.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        for k in v.keys() {
            self.column(k);
        }
        let (residual, outside, combo) = self.reduce(v);
        debug_assert!(outside.is_empty());
        if residual.is_empty() {
            return false;
        }
        let pivot = *residual
            .keys()
            .min_by(|a, b| self.keys[**a].cmp(&self.keys[**b]))
            .expect("nonempty residual");
        let inv = residual[&pivot].recip();
        let entries: Entries = residual.into_iter().map(|(c, x)| (c, x * &inv)).collect();

        let g = self.generators.len();
        let mut combo_row: Entries = combo.into_iter().map(|(i, x)| (i, -(x * &inv))).collect();
        combo_row.push((g, inv.clone()));
        self.generators.push(v.clone());

        for row in &mut self.rows {
            if let Some(x) = lookup(&row.entries, pivot).cloned() {
                row.entries = sub_scaled(&row.entries, &x, &entries);
                row.combo = sub_scaled(&row.combo, &x, &combo_row);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(Row {
            pivot,
            entries,
            combo: combo_row,
        });
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        let (residual, outside, _) = self.reduce(v);
        residual.is_empty() && outside.is_empty()
    }

    /// Coefficients of `v` over [`Span::generators`] if `v` lies in the
    /// span. Only nonzero coefficients are listed.
    pub fn coords(&self, v: &SparseVec<K>) -> Option<Vec<(usize, Rational)>> {
        let (residual, outside, combo) = self.reduce(v);
        if residual.is_empty() && outside.is_empty() {
            Some(combo.into_iter().collect())
        } else {
            None
        }
    }

    /// The canonical representative of `v` modulo the span: `v` with every
    /// pivot column eliminated.
    pub fn residual(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let (residual, outside, _) = self.reduce(v);
        let mut out: SparseVec<K> = outside.into_iter().collect();
        for (c, x) in residual {
            out.add_term(self.keys[c].clone(), x);
        }
        out
    }
}

/// Rank of a family of vectors.
pub fn rank_of<'a, K: Ord + Clone + Hash + 'a>(vs: impl IntoIterator<Item = &'a SparseVec<K>>) -> usize {
    let mut sp = Span::new();
    for v in vs {
        sp.insert(v);
    }
    sp.rank()
}
