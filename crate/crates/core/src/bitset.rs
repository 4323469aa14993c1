use std::fmt;

use fixedbitset::FixedBitSet;

/// A set of lattice (or poset) elements over the universe `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn new(n: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        ElementSet(s)
    }

    pub fn from_iter_in(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, x: usize) {
        self.0.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.0.set(x, false);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        self.0.difference_with(&other.0);
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
