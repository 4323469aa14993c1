//! Isomorph-free enumeration of small posets and lattices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, downset_lattice_capped, FiniteLattice, DOWNSET_CAP};
use crate::poset::Poset;

/// Largest poset size [`enumerate_posets`] accepts.
pub const MAX_POSET_ELEMENTS: usize = 7;
/// Largest lattice size [`enumerate_lattices`] accepts.
pub const MAX_LATTICE_ELEMENTS: usize = 8;

/// A byte string equal for two posets exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Strict order as bit rows; only for posets with at most 64 elements.
struct Relation {
    n: usize,
    above: Vec<u64>,
    below: Vec<u64>,
}

impl Relation {
    fn new(p: &Poset) -> Relation {
        assert!(p.len() <= 64, "canonical forms are limited to 64 elements");
        let n = p.len();
        let mut above = vec![0u64; n];
        let mut below = vec![0u64; n];
        for a in 0..n {
            for b in p.up_set(a).iter().filter(|&b| b != a) {
                above[a] |= 1 << b;
                below[b] |= 1 << a;
            }
        }
        Relation { n, above, below }
    }

    /// Colour refinement until stable. Colours are ranks of sorted keys, so
    /// they depend only on the isomorphism type of the coloured poset.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = distinct(colors);
        loop {
            let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..self.n)
                .map(|v| {
                    let mut up: Vec<u32> = bits(self.above[v]).map(|u| colors[u]).collect();
                    let mut down: Vec<u32> = bits(self.below[v]).map(|u| colors[u]).collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    (colors[v], up, down)
                })
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            for (v, key) in keys.iter().enumerate() {
                colors[v] = sorted.binary_search(key).expect("key present") as u32;
            }
            if sorted.len() == classes {
                return;
            }
            classes = sorted.len();
        }
    }

    fn search(&self, mut colors: Vec<u32>, best: &mut Option<Vec<u8>>) {
        self.refine(&mut colors);
        let n = self.n;
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            let mut order = vec![0usize; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c as usize] = v;
            }
            let leaf = self.encode(&order);
            if best.as_ref().is_none_or(|b| leaf < *b) {
                *best = Some(leaf);
            }
            return;
        };
        for v in (0..n).filter(|&v| colors[v] as usize == target) {
            let split = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c as usize == target && u != v))
                .collect();
            self.search(split, best);
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = vec![n as u8];
        let mut byte = 0u8;
        let mut filled = 0;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                byte = byte << 1 | (self.above[order[i]] >> order[j] & 1) as u8;
                filled += 1;
                if filled == 8 {
                    out.push(byte);
                    byte = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(byte << (8 - filled));
        }
        out
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn poset_certificate(p: &Poset) -> CanonicalCertificate {
    let rel = Relation::new(p);
    let mut best = None;
    rel.search(vec![0; p.len()], &mut best);
    CanonicalCertificate(best.unwrap_or_else(|| vec![0]))
}

/// Lattices are isomorphic exactly when their orders are.
pub fn lattice_certificate(l: &FiniteLattice) -> CanonicalCertificate {
    poset_certificate(l.poset())
}

/// `p` with one new element on top of the downset `d`, numbered last.
fn extend(p: &Poset, d: &crate::bitset::ElementSet) -> Poset {
    let n = p.len();
    let mut covers = p.covers();
    for m in d.iter() {
        if p.upper_covers(m).iter().all(|&u| !d.contains(u)) {
            covers.push((m, n));
        }
    }
    Poset::from_covers(n + 1, &covers).expect("extension of a poset is a poset")
}

/// All posets with `0..=max_n` elements, one per isomorphism type, grouped by
/// size and sorted by certificate within each size.
pub(crate) fn poset_levels(max_n: usize, max_downsets: Option<usize>) -> Vec<Vec<Poset>> {
    poset_levels_where(max_n, |q| match max_downsets {
        Some(cap) => q.downsets(cap).is_ok(),
        None => true,
    })
}

/// Like [`poset_levels`], keeping only posets accepted by `keep`.
///
/// `keep` must survive deleting a maximal element (a bound on the number of
/// downsets or on the length does), otherwise some posets are never reached.
pub fn poset_levels_where(max_n: usize, keep: impl Fn(&Poset) -> bool) -> Vec<Vec<Poset>> {
    let mut levels = vec![vec![Poset::antichain(0)]];
    for _ in 0..max_n {
        let mut next: BTreeMap<CanonicalCertificate, Poset> = BTreeMap::new();
        for p in levels.last().expect("non-empty") {
            for d in &p.downsets(usize::MAX).expect("uncapped") {
                let q = extend(p, d);
                if keep(&q) {
                    next.entry(poset_certificate(&q)).or_insert(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_values().collect());
    }
    levels
}

/// All posets on `n` elements up to isomorphism.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_POSET_ELEMENTS {
        return Err(Error::TooLarge {
            what: "poset enumeration",
            size: n,
            cap: MAX_POSET_ELEMENTS,
        });
    }
    Ok(poset_levels(n, None).pop().expect("level n"))
}

/// Downset lattices of all posets with at most `max_ji` elements.
pub fn enumerate_distributive(max_ji: usize) -> Result<Vec<FiniteLattice>> {
    if max_ji > MAX_POSET_ELEMENTS {
        return Err(Error::TooLarge {
            what: "distributive enumeration by join-irreducibles",
            size: max_ji,
            cap: MAX_POSET_ELEMENTS,
        });
    }
    Ok(distributive_by_ji(max_ji)
        .into_iter()
        .map(|(_, l)| l)
        .collect())
}

/// Like [`enumerate_distributive`] without the size cap, also returning the
/// poset of join-irreducibles each lattice comes from.
pub fn distributive_by_ji(max_ji: usize) -> Vec<(Poset, FiniteLattice)> {
    poset_levels(max_ji, None)
        .into_iter()
        .flatten()
        .map(|p| {
            let (l, _) = downset_lattice_capped(&p, usize::MAX).expect("downsets form a lattice");
            (p, l)
        })
        .collect()
}

/// All distributive lattices with at most `max_size` elements, with their
/// posets of join-irreducibles.
pub fn distributive_by_size(max_size: usize) -> Result<Vec<(Poset, FiniteLattice)>> {
    if max_size > DOWNSET_CAP {
        return Err(Error::TooLarge {
            what: "distributive enumeration by size",
            size: max_size,
            cap: DOWNSET_CAP,
        });
    }
    if max_size == 0 {
        return Ok(Vec::new());
    }
    Ok(poset_levels(max_size - 1, Some(max_size))
        .into_iter()
        .flatten()
        .map(|p| {
            let (l, _) = downset_lattice_capped(&p, max_size).expect("pruned by size");
            (p, l)
        })
        .collect())
}

/// `q` with a new bottom `0` and top `n - 1` added; `q`'s elements shift by one.
fn bounded(q: &Poset) -> Result<FiniteLattice> {
    let k = q.len();
    let top = k + 1;
    let mut covers: Vec<(usize, usize)> = q
        .covers()
        .into_iter()
        .map(|(a, b)| (a + 1, b + 1))
        .collect();
    if k == 0 {
        covers.push((0, 1));
    }
    covers.extend(q.minimal_elements().into_iter().map(|m| (0, m + 1)));
    covers.extend(q.maximal_elements().into_iter().map(|m| (m + 1, top)));
    build_lattice(k + 2, &covers)
}

/// All lattices with exactly `n` elements up to isomorphism. A lattice with
/// `n ≥ 2` elements is a poset on `n - 2` elements with bounds added.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if n > MAX_LATTICE_ELEMENTS {
        return Err(Error::TooLarge {
            what: "lattice enumeration",
            size: n,
            cap: MAX_LATTICE_ELEMENTS,
        });
    }
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![FiniteLattice::singleton()]),
        _ => Ok(poset_levels(n - 2, None)
            .pop()
            .expect("level n - 2")
            .iter()
            .filter_map(|q| bounded(q).ok())
            .collect()),
    }
}

/// All lattices with at most `max_n` elements, smallest first.
pub fn lattices_up_to(max_n: usize) -> Result<Vec<FiniteLattice>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_lattices(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    /// Every strict order on `0..n` as an `n × n` bit matrix, up to
    /// isomorphism by minimising over all permutations.
    fn brute_force_poset_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut perms = vec![vec![]];
        for k in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=k).map(move |i| {
                        let mut q = p.clone();
                        q.insert(i, k);
                        q
                    })
                })
                .collect();
        }
        let mut seen = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut m = vec![vec![false; n]; n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                m[a][b] = mask >> i & 1 == 1;
            }
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    !(m[a][b] && m[b][a]) && (0..n).all(|c| !(m[a][b] && m[b][c]) || m[a][c])
                })
            });
            if !ok {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .fold(0u64, |acc, (a, b)| acc << 1 | u64::from(m[p[a]][p[b]]))
                })
                .min()
                .unwrap();
            seen.insert(canon);
        }
        seen.len()
    }

    #[test]
    fn poset_counts_match_brute_force() {
        for n in 0..=5 {
            assert_eq!(
                enumerate_posets(n).unwrap().len(),
                brute_force_poset_count(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = poset_levels(7, None).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318, 2045]);
        assert_eq!(enumerate_posets(8).unwrap_err().name(), "TooLarge");
    }

    #[test]
    fn lattice_counts_and_cross_check() {
        let counts: Vec<usize> = (1..=8)
            .map(|n| enumerate_lattices(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53, 222]);
        // Independent path: every poset on n elements that happens to be a
        // lattice.
        for n in 1..=6 {
            let direct = enumerate_posets(n)
                .unwrap()
                .into_iter()
                .filter(|p| FiniteLattice::from_poset(p.clone()).is_ok())
                .count();
            assert_eq!(direct, enumerate_lattices(n).unwrap().len(), "n = {n}");
        }
        assert_eq!(enumerate_lattices(9).unwrap_err().name(), "TooLarge");
        assert!(enumerate_lattices(0).unwrap().is_empty());
    }

    #[test]
    fn five_element_lattices() {
        let ls = enumerate_lattices(5).unwrap();
        let m3 = build_lattice(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let n5 = build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(ls.iter().any(|l| are_isomorphic(l, &m3).is_some()));
        assert!(ls.iter().any(|l| are_isomorphic(l, &n5).is_some()));
        let two = enumerate_lattices(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].length(), 1);
    }

    #[test]
    fn distributive_universe() {
        let d = enumerate_distributive(2).unwrap();
        let mut sizes: Vec<usize> = d.iter().map(FiniteLattice::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 4]);
        assert_eq!(enumerate_distributive(0).unwrap().len(), 1);
        let five = enumerate_distributive(5).unwrap();
        assert_eq!(five.len(), 1 + 1 + 2 + 5 + 16 + 63);
        assert!(five.iter().all(FiniteLattice::is_distributive));
        for (i, a) in five.iter().enumerate().step_by(7) {
            for b in &five[i + 1..] {
                assert!(are_isomorphic(a, b).is_none());
            }
        }
    }

    #[test]
    fn distributive_by_size_matches_filter() {
        let by_size = distributive_by_size(12).unwrap();
        assert!(by_size
            .iter()
            .all(|(_, l)| l.len() <= 12 && l.is_distributive()));
        // Every lattice with at most 8 elements that is distributive shows up.
        let small: Vec<_> = lattices_up_to(8)
            .unwrap()
            .into_iter()
            .filter(FiniteLattice::is_distributive)
            .collect();
        let up_to_8: Vec<_> = by_size.iter().filter(|(_, l)| l.len() <= 8).collect();
        assert_eq!(small.len(), up_to_8.len());
        for l in &small {
            assert!(up_to_8.iter().any(|(_, m)| are_isomorphic(l, m).is_some()));
        }
        // A 12-element example: the chain with 11 join-irreducibles.
        assert!(by_size.iter().any(|(p, _)| p.len() == 11));
        assert!(distributive_by_size(0).unwrap().is_empty());
    }

    fn relabel(p: &Poset, perm: &[usize]) -> Poset {
        let covers: Vec<(usize, usize)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        Poset::from_covers(p.len(), &covers).unwrap()
    }

    #[test]
    fn certificates_are_complete_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let all: Vec<Poset> = poset_levels(6, None).into_iter().flatten().collect();
        for _ in 0..1000 {
            let a = all.choose(&mut rng).unwrap();
            let mut perm: Vec<usize> = (0..a.len()).collect();
            perm.shuffle(&mut rng);
            let a2 = relabel(a, &perm);
            assert_eq!(poset_certificate(a), poset_certificate(&a2));
            let b = if rng.gen_bool(0.5) {
                all.choose(&mut rng).unwrap().clone()
            } else {
                a2
            };
            let same = poset_certificate(a) == poset_certificate(&b);
            assert_eq!(same, a.isomorphism_to(&b).is_some());
        }
    }
}
