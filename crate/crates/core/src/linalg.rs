//! Rank of sparse rational vectors.

use alloc::collections::BTreeMap;

use crate::lc::Lc;

/// Incremental row echelon form keyed by each row's largest coordinate.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, Lc<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: Lc<K>) -> Lc<K> {
        loop {
            let Some(p) = v.keys().next_back().cloned() else { return v };
            match self.rows.get(&p) {
                Some(row) => {
                    let c = v.coeff(&p) / row.coeff(&p);
                    v.add_scaled(row, &-c);
                }
                None => return v,
            }
        }
    }

    /// Insert `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: Lc<K>) -> bool {
        let v = self.reduce(v);
        match v.keys().next_back().cloned() {
            Some(p) => {
                self.rows.insert(p, v);
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = Lc<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
