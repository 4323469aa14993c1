//! Tolerances of finite lattices and their blocks.

use std::collections::VecDeque;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// A reflexive, symmetric relation compatible with join and meet.
#[derive(Clone)]
pub struct Tolerance<'a> {
    lattice: &'a FiniteLattice,
    rel: Vec<ElementSet>,
}

impl std::fmt::Debug for Tolerance<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tolerance")
            .field("pairs", &self.pairs())
            .finish()
    }
}

/// A block `[lo, hi]` of a tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub lo: usize,
    pub hi: usize,
    pub members: ElementSet,
}

/// The least tolerance containing `seeds`.
///
/// A tolerance `T` of a finite lattice is determined by `up(a)`, the largest
/// element related to `a` and above it: `x T y` iff `x ∨ y ≤ up(x ∧ y)`.
/// Compatibility amounts to `up(a ∨ c) ≥ up(a) ∨ up(c)` and
/// `up(a ∧ c) ≥ up(a) ∧ up(c)`, so the least tolerance is the least `up`
/// satisfying these and the seeds, reached by a worklist fixpoint.
pub fn generate_tolerance<'a>(
    lattice: &'a FiniteLattice,
    seeds: &[(usize, usize)],
) -> Tolerance<'a> {
    let n = lattice.len();
    let mut up: Vec<usize> = (0..n).collect();
    let mut queued = vec![false; n];
    let mut work = VecDeque::new();
    let raise = |up: &mut Vec<usize>,
                 work: &mut VecDeque<usize>,
                 queued: &mut Vec<bool>,
                 a: usize,
                 b: usize| {
        let j = lattice.join(up[a], b);
        if j != up[a] {
            up[a] = j;
            if !std::mem::replace(&mut queued[a], true) {
                work.push_back(a);
            }
        }
    };
    for &(a, b) in seeds {
        raise(
            &mut up,
            &mut work,
            &mut queued,
            lattice.meet(a, b),
            lattice.join(a, b),
        );
    }
    while let Some(a) = work.pop_front() {
        queued[a] = false;
        for c in 0..n {
            let (ua, uc) = (up[a], up[c]);
            raise(
                &mut up,
                &mut work,
                &mut queued,
                lattice.join(a, c),
                lattice.join(ua, uc),
            );
            raise(
                &mut up,
                &mut work,
                &mut queued,
                lattice.meet(a, c),
                lattice.meet(ua, uc),
            );
        }
    }
    let rel = (0..n)
        .map(|x| {
            ElementSet::from_iter_in(
                n,
                (0..n).filter(|&y| lattice.leq(lattice.join(x, y), up[lattice.meet(x, y)])),
            )
        })
        .collect();
    Tolerance { lattice, rel }
}

/// Θ(L): the tolerance generated by all cover pairs, the smallest glued one.
pub fn skeleton_tolerance(lattice: &FiniteLattice) -> Tolerance<'_> {
    generate_tolerance(lattice, &lattice.covers())
}

impl<'a> Tolerance<'a> {
    /// Wraps an explicit relation after checking the tolerance axioms.
    pub fn from_relation(
        lattice: &'a FiniteLattice,
        related: impl Fn(usize, usize) -> bool,
    ) -> Result<Tolerance<'a>> {
        let n = lattice.len();
        let rel: Vec<ElementSet> = (0..n)
            .map(|a| ElementSet::from_iter_in(n, (0..n).filter(|&b| related(a, b))))
            .collect();
        for a in 0..n {
            if !rel[a].contains(a) {
                return Err(Error::NotATolerance(format!("({a}, {a}) missing")));
            }
            for b in rel[a].iter() {
                if !rel[b].contains(a) {
                    return Err(Error::NotATolerance(format!(
                        "({a}, {b}) without ({b}, {a})"
                    )));
                }
            }
        }
        for a in 0..n {
            for b in rel[a].iter() {
                for c in 0..n {
                    for d in rel[c].iter() {
                        let (j, m) = (
                            (lattice.join(a, c), lattice.join(b, d)),
                            (lattice.meet(a, c), lattice.meet(b, d)),
                        );
                        if !rel[j.0].contains(j.1) || !rel[m.0].contains(m.1) {
                            return Err(Error::NotATolerance(format!(
                                "({a}, {b}) and ({c}, {d}) are not compatible"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Tolerance { lattice, rel })
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rel[a].contains(b)
    }

    /// Elements related to `a` (including `a`).
    pub fn neighbours(&self, a: usize) -> &ElementSet {
        &self.rel[a]
    }

    /// All related pairs, both orientations, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rel.len())
            .flat_map(|a| self.rel[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.rel.iter().map(ElementSet::len).sum()
    }

    /// `self ⊆ other` as relations.
    pub fn is_subset(&self, other: &Tolerance<'_>) -> bool {
        self.rel.iter().zip(&other.rel).all(|(a, b)| a.is_subset(b))
    }

    /// Whether the transitive closure is total. Evaluated both as graph
    /// connectivity and as the cover criterion; the two must agree for a
    /// lattice tolerance.
    pub fn is_glued(&self) -> bool {
        let n = self.rel.len();
        let mut seen = ElementSet::new(n);
        let mut queue = VecDeque::from([0usize]);
        seen.insert(0);
        while let Some(v) = queue.pop_front() {
            for w in self.rel[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        let connected = seen.len() == n;
        let covers_in = self
            .lattice
            .covers()
            .into_iter()
            .all(|(a, b)| self.related(a, b));
        assert_eq!(
            connected, covers_in,
            "glued-tolerance criteria disagree; relation is not compatible"
        );
        connected
    }

    /// The blocks (maximal cliques), each checked to be an interval, sorted by
    /// their least element.
    pub fn blocks(&self) -> Result<Vec<Block>> {
        let n = self.rel.len();
        let adj: Vec<ElementSet> = (0..n)
            .map(|v| {
                let mut s = self.rel[v].clone();
                s.remove(v);
                s
            })
            .collect();
        let mut cliques = Vec::new();
        bron_kerbosch(
            &adj,
            ElementSet::new(n),
            ElementSet::full(n),
            ElementSet::new(n),
            &mut cliques,
        );
        let l = self.lattice;
        let mut blocks = Vec::with_capacity(cliques.len());
        for members in cliques {
            let lo = l.meet_all(members.iter());
            let hi = l.join_all(members.iter());
            if l.interval_set(lo, hi) != members {
                return Err(Error::BlockNotInterval(members.to_vec()));
            }
            blocks.push(Block { lo, hi, members });
        }
        blocks.sort_by_key(|b| b.lo);
        Ok(blocks)
    }
}

/// Bron–Kerbosch with Tomita pivoting on bitsets.
fn bron_kerbosch(
    adj: &[ElementSet],
    clique: ElementSet,
    mut candidates: ElementSet,
    mut excluded: ElementSet,
    out: &mut Vec<ElementSet>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique);
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(excluded.iter())
        .max_by_key(|&u| adj[u].intersection(&candidates).len())
        .expect("candidates is non-empty");
    let branch = candidates.difference(&adj[pivot]);
    for v in branch.iter() {
        let mut next = clique.clone();
        next.insert(v);
        bron_kerbosch(
            adj,
            next,
            candidates.intersection(&adj[v]),
            excluded.intersection(&adj[v]),
            out,
        );
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    fn b2() -> FiniteLattice {
        build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn d5() -> FiniteLattice {
        build_lattice(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    /// Closure by brute force: repeat full passes over all pair pairs until
    /// nothing changes.
    fn naive_closure(l: &FiniteLattice, seeds: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let n = l.len();
        let mut r = vec![vec![false; n]; n];
        for (x, row) in r.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in seeds {
            r[a][b] = true;
            r[b][a] = true;
        }
        loop {
            let mut changed = false;
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| r[a][b])
                .collect();
            for &(a, b) in &pairs {
                for &(c, d) in &pairs {
                    for (x, y) in [(l.join(a, c), l.join(b, d)), (l.meet(a, c), l.meet(b, d))] {
                        if !r[x][y] {
                            r[x][y] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    #[test]
    fn chain_closure_is_banded() {
        let l = FiniteLattice::chain(3);
        let t = skeleton_tolerance(&l);
        for i in 0..4usize {
            for j in 0..4usize {
                assert_eq!(t.related(i, j), i.abs_diff(j) <= 1, "({i},{j})");
            }
        }
        assert!(t.is_glued());
        let naive = naive_closure(&l, &l.covers());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(naive[i][j], t.related(i, j));
            }
        }
    }

    #[test]
    fn closure_matches_naive_oracle() {
        let lattices = [
            b2(),
            d5(),
            FiniteLattice::chain(4),
            FiniteLattice::boolean(3).unwrap(),
            build_lattice(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap(),
            build_lattice(5, &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)]).unwrap(),
            build_lattice(
                7,
                &[
                    (0, 1),
                    (0, 2),
                    (1, 3),
                    (2, 3),
                    (3, 4),
                    (3, 5),
                    (4, 6),
                    (5, 6),
                ],
            )
            .unwrap(),
        ];
        for l in &lattices {
            let n = l.len();
            let mut seed_sets = vec![l.covers(), vec![]];
            for a in 0..n {
                for b in 0..n {
                    seed_sets.push(vec![(a, b)]);
                    seed_sets.push(vec![(a, b), ((a + 1) % n, (b + 2) % n)]);
                }
            }
            for seeds in &seed_sets {
                let fast = generate_tolerance(l, seeds);
                let naive = naive_closure(l, seeds);
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(
                            fast.related(x, y),
                            naive[x][y],
                            "seeds {seeds:?} at ({x},{y})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn b2_closure_is_total() {
        let l = b2();
        let t = skeleton_tolerance(&l);
        assert_eq!(t.pair_count(), 16);
        let blocks = t.blocks().unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].lo, blocks[0].hi), (0, 3));
    }

    #[test]
    fn empty_seeds_give_diagonal() {
        let l = b2();
        let t = generate_tolerance(&l, &[]);
        assert_eq!(t.pair_count(), 4);
        assert!(!t.is_glued());
        let blocks = t.blocks().unwrap();
        assert_eq!(blocks.len(), 4);
        assert!(blocks.iter().all(|b| b.members.len() == 1));
    }

    #[test]
    fn full_relation_is_glued() {
        let l = d5();
        let t = Tolerance::from_relation(&l, |_, _| true).unwrap();
        assert!(t.is_glued());
    }

    #[test]
    fn singleton_skeleton_tolerance() {
        let l = FiniteLattice::singleton();
        let t = skeleton_tolerance(&l);
        assert_eq!(t.pair_count(), 1);
        assert!(t.is_glued());
    }

    #[test]
    fn chain_blocks() {
        let l = FiniteLattice::chain(3);
        let t = skeleton_tolerance(&l);
        let blocks: Vec<_> = t
            .blocks()
            .unwrap()
            .into_iter()
            .map(|b| b.members.to_vec())
            .collect();
        assert_eq!(blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn d5_blocks() {
        let l = d5();
        let t = skeleton_tolerance(&l);
        let blocks: Vec<_> = t.blocks().unwrap().iter().map(|b| (b.lo, b.hi)).collect();
        assert_eq!(blocks, vec![(0, 3), (3, 4)]);
    }

    #[test]
    fn from_relation_rejects_non_tolerances() {
        let l = FiniteLattice::chain(2);
        assert_eq!(
            Tolerance::from_relation(&l, |a, b| a == b || (a, b) == (0, 1))
                .unwrap_err()
                .name(),
            "NotATolerance"
        );
        // (0,1),(1,2) on a 3-chain: reflexive and symmetric, and compatible.
        assert!(Tolerance::from_relation(&l, |a: usize, b: usize| a.abs_diff(b) <= 1).is_ok());
        // On B2, relating only 1 and 3: (1,3) ∧ (2,2) = (0,2) is missing.
        let b = b2();
        assert!(
            Tolerance::from_relation(&b, |a, c| a == c || (a.min(c), a.max(c)) == (1, 3)).is_err()
        );
    }

    #[test]
    fn worklist_matches_naive_closure_on_small_seeds() {
        let l = build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        for seeds in [
            vec![(0, 1)],
            vec![(1, 2)],
            vec![(0, 3), (2, 4)],
            vec![(1, 3)],
        ] {
            let t = generate_tolerance(&l, &seeds);
            let naive = naive_closure(&l, &seeds);
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(naive[i][j], t.related(i, j));
                }
            }
        }
    }
}
