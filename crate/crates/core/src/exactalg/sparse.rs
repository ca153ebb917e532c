use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::Rational;

/// A finite linear combination of basis keys with nonzero rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec<K: Ord> {
    entries: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.add_term(key, Rational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.entries.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.entries.keys()
    }

    /// Adds `coeff * key`, dropping the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, other: &SparseVec<K>, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c * coeff);
        }
    }

    pub fn scaled(&self, coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(k, c)| (k.clone(), c * coeff))
                .collect(),
        }
    }

    /// Re-keys every entry, summing coefficients that collide.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, c) in &self.entries {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.entries.retain(|k, _| keep(k));
    }
}

impl<K: Ord> IntoIterator for SparseVec<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a SparseVec<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for SparseVec<K> {
    fn from_iter<T: IntoIterator<Item = (K, Rational)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<K: Ord + Clone> Add for SparseVec<K> {
    type Output = SparseVec<K>;
    fn add(mut self, rhs: SparseVec<K>) -> SparseVec<K> {
        for (k, c) in rhs.entries {
            self.add_term(k, c);
        }
        self
    }
}

impl<K: Ord + Clone> Sub for SparseVec<K> {
    type Output = SparseVec<K>;
    fn sub(mut self, rhs: SparseVec<K>) -> SparseVec<K> {
        for (k, c) in rhs.entries {
            self.add_term(k, -c);
        }
        self
    }
}

impl<K: Ord + Clone> Neg for SparseVec<K> {
    type Output = SparseVec<K>;
    fn neg(mut self) -> SparseVec<K> {
        for c in self.entries.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}
