//! Finite lattices with precomputed join and meet tables.

use std::collections::HashMap;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default cap on the size of [`downset_lattice`] results.
pub const DOWNSET_CAP: usize = 4096;

/// Largest lattice whose tables fit the `u16` storage.
pub const MAX_ELEMENTS: usize = 1 << 16;

/// A finite lattice on elements `0..n`.
///
/// Immutable after construction; the join and meet tables are total and were
/// derived from (and checked against) the order.
#[derive(Clone)]
pub struct FiniteLattice {
    poset: Poset,
    join: Vec<u16>,
    meet: Vec<u16>,
    bottom: usize,
    top: usize,
    heights: Vec<usize>,
}

impl std::fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("n", &self.len())
            .field("covers", &self.covers())
            .finish()
    }
}

/// Builds a lattice from its cover pairs (`(a, b)` means `a` is covered by `b`).
pub fn build_lattice(n: usize, covers: &[(usize, usize)]) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::EmptyLattice);
    }
    FiniteLattice::from_poset(Poset::from_covers(n, covers)?)
}

impl FiniteLattice {
    /// Checks that every pair has a join and a meet and tabulates both.
    pub fn from_poset(poset: Poset) -> Result<FiniteLattice> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "lattice",
                size: n,
                cap: MAX_ELEMENTS,
            });
        }
        let order = poset.linear_extension();
        let join = Self::tabulate(&poset, order.iter().rev().copied(), true)?;
        let meet = Self::tabulate(&poset, order.iter().copied(), false)?;
        let heights = poset.heights();
        let bottom = order[0];
        let top = order[n - 1];
        let lattice = FiniteLattice {
            poset,
            join,
            meet,
            bottom,
            top,
            heights,
        };
        debug_assert!((0..n).all(|x| lattice.leq(bottom, x) && lattice.leq(x, top)));
        Ok(lattice)
    }

    /// For incomparable `a, b`, `a ∨ b` is the least of `c ∨ b` over the upper
    /// covers `c` of `a` (any upper bound of `a, b` lies above some such `c`).
    /// Rows are filled in an order where every `c` row is already complete.
    /// The meet table is the same computation on the dual.
    fn tabulate(
        poset: &Poset,
        visit: impl Iterator<Item = usize>,
        is_join: bool,
    ) -> Result<Vec<u16>> {
        let n = poset.len();
        let mut table = vec![0u16; n * n];
        let below = |x: usize, y: usize| {
            if is_join {
                poset.leq(x, y)
            } else {
                poset.leq(y, x)
            }
        };
        for a in visit {
            let steps = if is_join {
                poset.upper_covers(a)
            } else {
                poset.lower_covers(a)
            };
            for b in 0..n {
                let value = if below(a, b) {
                    b
                } else if below(b, a) {
                    a
                } else {
                    let mut best: Option<usize> = None;
                    for &c in steps {
                        let cand = table[c * n + b] as usize;
                        best = match best {
                            None => Some(cand),
                            Some(m) if below(cand, m) => Some(cand),
                            keep => keep,
                        };
                    }
                    let which = if is_join { "join" } else { "meet" };
                    let m = best.ok_or(Error::NotALattice { a, b, which })?;
                    if !steps.iter().all(|&c| below(m, table[c * n + b] as usize)) {
                        return Err(Error::NotALattice { a, b, which });
                    }
                    m
                };
                table[a * n + b] = value as u16;
            }
        }
        Ok(table)
    }

    pub fn singleton() -> FiniteLattice {
        build_lattice(1, &[]).expect("singleton")
    }

    /// The `(k+1)`-element chain `0 < 1 < … < k`.
    pub fn chain(len: usize) -> FiniteLattice {
        Self::from_poset(Poset::chain(len + 1)).expect("chain")
    }

    /// The Boolean lattice with `k` atoms.
    pub fn boolean(k: usize) -> Result<FiniteLattice> {
        downset_lattice(&Poset::antichain(k))
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.poset.lt(a, b)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        self.poset.lower_covers(a)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        self.poset.upper_covers(a)
    }

    /// Length of the longest chain below `x`.
    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn length(&self) -> usize {
        self.heights[self.top]
    }

    /// Length of the interval `[a, b]`, or `None` when `a ≰ b`.
    pub fn interval_length(&self, a: usize, b: usize) -> Option<usize> {
        if !self.leq(a, b) {
            return None;
        }
        let members = self.interval_set(a, b);
        let mut dist = vec![None::<usize>; self.len()];
        dist[a] = Some(0);
        for v in self.poset.linear_extension() {
            if !members.contains(v) || v == a {
                continue;
            }
            dist[v] = self
                .lower_covers(v)
                .iter()
                .filter_map(|&c| dist[c].map(|d| d + 1))
                .max();
        }
        dist[b]
    }

    /// Members of `[a, b]` (empty when `a ≰ b`).
    pub fn interval_set(&self, a: usize, b: usize) -> ElementSet {
        self.poset.up_set(a).intersection(self.poset.down_set(b))
    }

    /// Upper covers of the bottom.
    pub fn atoms(&self) -> ElementSet {
        ElementSet::from_iter_in(self.len(), self.upper_covers(self.bottom).iter().copied())
    }

    /// Non-bottom elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> ElementSet {
        self.elements_with_lower_covers(1)
    }

    /// Join-irreducibles that are not atoms.
    pub fn upper_ji(&self) -> ElementSet {
        self.join_irreducibles().difference(&self.atoms())
    }

    /// Elements with exactly `k` lower covers.
    pub fn elements_with_lower_covers(&self, k: usize) -> ElementSet {
        ElementSet::from_iter_in(
            self.len(),
            (0..self.len()).filter(|&x| self.lower_covers(x).len() == k),
        )
    }

    /// The poset of join-irreducibles; element `i` of the result is
    /// `elements[i]` of `L`.
    pub fn ji_poset(&self) -> (Poset, Vec<usize>) {
        let elements = self.join_irreducibles().to_vec();
        (self.poset.induced(&elements), elements)
    }

    pub fn ji_length(&self) -> usize {
        self.ji_poset().0.length()
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.meet(x, y);
                (0..n).all(|z| self.meet(x, self.join(y, z)) == self.join(xy, self.meet(x, z)))
            })
        })
    }

    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            self.poset.up_set(x).iter().all(|z| {
                (0..n).all(|y| self.join(x, self.meet(y, z)) == self.meet(self.join(x, y), z))
            })
        })
    }

    /// Searches for a pentagon: `a < b` and `c` with `a ∨ c = b ∨ c` and
    /// `a ∧ c = b ∧ c`. Exists iff the lattice is not modular.
    pub fn find_pentagon(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in self.poset.up_set(a).iter().filter(|&b| b != a) {
                for c in 0..n {
                    if self.join(a, c) == self.join(b, c) && self.meet(a, c) == self.meet(b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Searches for a diamond: three pairwise incomparable elements sharing
    /// all pairwise joins and meets.
    pub fn find_diamond(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for x in 0..n {
            for y in (x + 1)..n {
                if self.poset.comparable(x, y) {
                    continue;
                }
                let (j, m) = (self.join(x, y), self.meet(x, y));
                for z in (y + 1)..n {
                    if self.join(x, z) == j
                        && self.join(y, z) == j
                        && self.meet(x, z) == m
                        && self.meet(y, z) == m
                        && !self.poset.comparable(x, z)
                        && !self.poset.comparable(y, z)
                    {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// The interval `[a, b]` as a lattice of its own.
    pub fn interval(&self, a: usize, b: usize) -> Result<Interval> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(a, b));
        }
        let elements = self.interval_set(a, b).to_vec();
        let lattice = FiniteLattice::from_poset(self.poset.induced(&elements))?;
        Ok(Interval { lattice, elements })
    }
}

/// An interval re-indexed as a standalone lattice; `elements[i]` is the
/// element of the ambient lattice that `i` stands for.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lattice: FiniteLattice,
    pub elements: Vec<usize>,
}

/// The lattice of downsets of `p` ordered by inclusion.
pub fn downset_lattice(p: &Poset) -> Result<FiniteLattice> {
    downset_lattice_capped(p, DOWNSET_CAP).map(|(l, _)| l)
}

/// Like [`downset_lattice`], with an explicit size cap, also returning the
/// downset each lattice element stands for.
///
/// Elements are numbered by (size, sorted member list), so the empty downset
/// is `0` and the whole poset is the last element.
pub fn downset_lattice_capped(p: &Poset, cap: usize) -> Result<(FiniteLattice, Vec<ElementSet>)> {
    let mut sets = p.downsets(cap)?;
    sets.sort_by_cached_key(|s| (s.len(), s.to_vec()));
    let index: HashMap<&ElementSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = Vec::new();
    for (i, d) in sets.iter().enumerate() {
        for x in 0..p.len() {
            if !d.contains(x) && p.lower_covers(x).iter().all(|&c| d.contains(c)) {
                let mut e = d.clone();
                e.insert(x);
                covers.push((i, index[&e]));
            }
        }
    }
    let lattice = build_lattice(sets.len(), &covers)?;
    Ok((lattice, sets))
}
