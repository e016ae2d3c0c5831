//! Sparse finite linear combinations with rational coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use num_traits::{One, Zero};

use crate::Rational;

/// A finite formal sum `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lc<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Lc<K> {
    fn default() -> Self {
        Lc { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lc<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Rational) -> Self {
        let mut lc = Self::new();
        lc.add_term(key, coeff);
        lc
    }

    pub fn basis(key: K) -> Self {
        Self::single(key, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Lc<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Lc<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Lc<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), -v.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    pub fn sub(&self, other: &Lc<K>) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Re-key every term through `f`, merging collisions.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lc<K2> {
        let mut out = Lc::new();
        for (k, v) in self.iter() {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Keep only the terms whose key satisfies `pred`.
    pub fn filtered(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        Lc { terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Lc<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut lc = Lc::new();
        for (k, v) in iter {
            lc.add_term(k, v);
        }
        lc
    }
}

impl<'a, K: Ord> IntoIterator for &'a Lc<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord> IntoIterator for Lc<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
