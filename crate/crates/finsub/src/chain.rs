//! Formal integer linear combinations of basis cells.

use std::collections::BTreeMap;

/// A finite integer combination of basis elements of type `T`.
///
/// Zero coefficients are never stored, so equality of chains is equality of
/// their supported terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<T: Ord>(BTreeMap<T, i64>);

impl<T: Ord> Default for Chain<T> {
    fn default() -> Self {
        Chain(BTreeMap::new())
    }
}

impl<T: Ord> Chain<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(cell: T, coeff: i64) -> Self {
        let mut c = Self::zero();
        c.add(cell, coeff);
        c
    }

    pub fn add(&mut self, cell: T, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(cell) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_chain(&mut self, other: Chain<T>, scale: i64) {
        for (cell, coeff) in other.0 {
            self.add(cell, coeff * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, i64)> {
        self.0.iter().map(|(t, c)| (t, *c))
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (T, i64)> {
        self.0.into_iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, cell: &T) -> i64 {
        self.0.get(cell).copied().unwrap_or(0)
    }

    pub fn map<U: Ord, F: Fn(&T) -> U>(&self, f: F) -> Chain<U> {
        let mut out = Chain::zero();
        for (t, c) in self.iter() {
            out.add(f(t), c);
        }
        out
    }
}

impl<T: Ord> FromIterator<(T, i64)> for Chain<T> {
    fn from_iter<I: IntoIterator<Item = (T, i64)>>(iter: I) -> Self {
        let mut c = Self::zero();
        for (t, v) in iter {
            c.add(t, v);
        }
        c
    }
}
