//! Factor lattices by tolerances, the skeleton S(L), and the Herrmann rank.

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::Poset;
use crate::tolerance::{skeleton_tolerance, Block, Tolerance};

/// A factor lattice `L/R` together with the block each of its elements names.
#[derive(Debug, Clone)]
pub struct SkeletonResult {
    /// Element `i` of this lattice is `blocks[i]`.
    pub skeleton: FiniteLattice,
    pub blocks: Vec<Block>,
    /// The least block; its `lo` is the bottom of `L`.
    pub zeta0: usize,
}

/// `L/R`, ordered by the least elements of the blocks.
///
/// The result is validated: the block order must agree with the order of the
/// greatest elements, the order must be a lattice, and the joins and meets of
/// blocks must contain all elementwise joins and meets.
pub fn factor_lattice(t: &Tolerance<'_>) -> Result<SkeletonResult> {
    let l = t.lattice();
    let blocks = t.blocks()?;
    let k = blocks.len();
    for i in 0..k {
        for j in 0..k {
            let by_lo = l.leq(blocks[i].lo, blocks[j].lo);
            let by_hi = l.leq(blocks[i].hi, blocks[j].hi);
            if by_lo != by_hi {
                return Err(Error::Internal(format!(
                    "blocks {i} and {j} are ordered differently by their bounds"
                )));
            }
        }
    }
    let order = Poset::from_relation(k, |i, j| l.leq(blocks[i].lo, blocks[j].lo))
        .map_err(|e| Error::Internal(format!("block order: {e}")))?;
    let skeleton = FiniteLattice::from_poset(order)?;
    // x ∨ y over x ∈ α, y ∈ β sweeps from lo_α ∨ lo_β up to hi_α ∨ hi_β and
    // hits both ends, so containment in the interval of α ∨ β reduces to
    // these two comparisons (dually for meets).
    for a in 0..k {
        for b in 0..k {
            let (ba, bb) = (&blocks[a], &blocks[b]);
            let g = &blocks[skeleton.join(a, b)];
            if !(l.leq(g.lo, l.join(ba.lo, bb.lo)) && l.leq(l.join(ba.hi, bb.hi), g.hi)) {
                return Err(Error::Internal(format!(
                    "join of blocks {a} and {b} does not contain their elementwise joins"
                )));
            }
            let d = &blocks[skeleton.meet(a, b)];
            if !(l.leq(d.lo, l.meet(ba.lo, bb.lo)) && l.leq(l.meet(ba.hi, bb.hi), d.hi)) {
                return Err(Error::Internal(format!(
                    "meet of blocks {a} and {b} does not contain their elementwise meets"
                )));
            }
        }
    }
    let zeta0 = skeleton.bottom();
    if blocks[zeta0].lo != l.bottom() {
        return Err(Error::Internal("least block does not start at 0".into()));
    }
    Ok(SkeletonResult {
        skeleton,
        blocks,
        zeta0,
    })
}

/// S(L) = L/Θ(L) with its blocks.
pub fn skeleton(l: &FiniteLattice) -> Result<SkeletonResult> {
    factor_lattice(&skeleton_tolerance(l))
}

/// `S⁰(L) = L, S¹(L), …` up to and including the first singleton.
pub fn iterated_skeletons(l: &FiniteLattice) -> Result<Vec<FiniteLattice>> {
    let mut out = vec![l.clone()];
    while out.last().expect("non-empty").len() > 1 {
        let next = skeleton(out.last().expect("non-empty"))?.skeleton;
        out.push(next);
    }
    Ok(out)
}

/// Least `n` with `|Sⁿ(L)| = 1`.
pub fn herrmann_rank(l: &FiniteLattice) -> Result<usize> {
    Ok(iterated_skeletons(l)?.len() - 1)
}

/// Herrmann rank at most `n`.
pub fn is_h_irreducible(l: &FiniteLattice, n: usize) -> Result<bool> {
    let mut current = l.clone();
    for _ in 0..n {
        if current.len() == 1 {
            return Ok(true);
        }
        current = skeleton(&current)?.skeleton;
    }
    Ok(current.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, downset_lattice};

    fn d5() -> FiniteLattice {
        build_lattice(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn chain_skeleton_is_shorter_chain() {
        let s = skeleton(&FiniteLattice::chain(3)).unwrap();
        assert_eq!(s.skeleton.len(), 3);
        assert_eq!(s.skeleton.length(), 2);
        assert_eq!(s.zeta0, 0);
    }

    #[test]
    fn boolean_skeleton_is_trivial() {
        let b = FiniteLattice::boolean(2).unwrap();
        assert_eq!(skeleton(&b).unwrap().skeleton.len(), 1);
    }

    #[test]
    fn d5_skeleton() {
        let s = skeleton(&d5()).unwrap();
        assert_eq!(s.skeleton.len(), 2);
        let z = &s.blocks[s.zeta0];
        assert_eq!((z.lo, z.hi), (0, 3));
        let other = &s.blocks[1 - s.zeta0];
        assert_eq!((other.lo, other.hi), (3, 4));
    }

    #[test]
    fn ranks() {
        assert_eq!(herrmann_rank(&FiniteLattice::singleton()).unwrap(), 0);
        for n in 1..=6 {
            assert_eq!(
                herrmann_rank(&FiniteLattice::chain(n)).unwrap(),
                n,
                "chain {n}"
            );
        }
        for k in 1..=4 {
            assert_eq!(
                herrmann_rank(&FiniteLattice::boolean(k).unwrap()).unwrap(),
                1
            );
        }
        assert_eq!(herrmann_rank(&d5()).unwrap(), 2);
        assert_eq!(
            iterated_skeletons(&FiniteLattice::chain(2)).unwrap().len(),
            3
        );
    }

    #[test]
    fn h_irreducibility() {
        let b3 = FiniteLattice::boolean(3).unwrap();
        assert!(is_h_irreducible(&b3, 1).unwrap());
        assert!(!is_h_irreducible(&FiniteLattice::chain(3), 2).unwrap());
        let d = downset_lattice(&crate::poset::Poset::chain(3)).unwrap();
        assert!(is_h_irreducible(&d, d.length()).unwrap());
        assert!(is_h_irreducible(&FiniteLattice::singleton(), 0).unwrap());
    }
}
