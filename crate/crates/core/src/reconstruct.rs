//! Rebuilding a distributive lattice of join-irreducible length at most 1
//! from its abstract weighted double skeleton.

use crate::bipartite::{
    exact_from_strong, strong_from_domination, BipartiteGraph, DominationQuery, MAX_TABLE_UPPER,
};
use crate::error::{Error, Result};
use crate::lattice::{downset_lattice_capped, FiniteLattice, DOWNSET_CAP};
use crate::poset::Poset;
use crate::wds::{extract_wds, wds_isomorphic, WeightedDoubleSkeleton};

#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub lattice: FiniteLattice,
    /// Atoms are `0..graph.lower()`, the remaining join-irreducibles follow.
    pub ji: Poset,
    pub graph: BipartiteGraph,
    /// The block of `K` each upper vertex of `graph` belongs to.
    pub block_assignment: Vec<usize>,
}

/// Number of atoms below `0_{⋁B}`, read off Σ as `w*(η₀(ζ₀), η₀(⋁B))`.
pub fn blockwise_domination(s: &WeightedDoubleSkeleton, blocks: &[usize]) -> Result<u64> {
    if blocks.is_empty() {
        return Ok(0);
    }
    let zeta0 = s.zeta0();
    if let Some(&b) = blocks.iter().find(|&&b| b == zeta0) {
        return Err(Error::IsZeta0(b));
    }
    let top = s.k().join_all(blocks.iter().copied());
    s.extended_weight(s.eta0(zeta0), s.eta0(top))
}

pub fn reconstruct(s: &WeightedDoubleSkeleton) -> Result<ReconstructionReport> {
    reconstruct_capped(s, DOWNSET_CAP)
}

/// [`reconstruct`] with an explicit bound on the size of the result.
pub fn reconstruct_capped(s: &WeightedDoubleSkeleton, cap: usize) -> Result<ReconstructionReport> {
    let zeta0 = s.zeta0();
    let m = s.extended_weight(s.eta0(zeta0), s.eta1(zeta0))? as usize;

    let mut counts = Vec::new();
    for alpha in 0..s.k().len() {
        if alpha == zeta0 {
            continue;
        }
        let count = s.j_alpha_count(alpha)?;
        if count < 0 {
            return Err(Error::NegativeJCount {
                block: alpha,
                count,
            });
        }
        if count > 0 {
            counts.push((alpha, count as usize));
        }
    }
    let blocks: Vec<usize> = counts.iter().map(|&(a, _)| a).collect();
    let k = blocks.len();

    if k > MAX_TABLE_UPPER {
        return Err(Error::TooLarge {
            what: "set of blocks with join-irreducibles",
            size: k,
            cap: MAX_TABLE_UPPER,
        });
    }
    let mut d = vec![0i64; 1 << k];
    for (mask, slot) in d.iter_mut().enumerate() {
        let chosen: Vec<usize> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| blocks[i])
            .collect();
        *slot = blockwise_domination(s, &chosen)? as i64;
    }
    let sigma = strong_from_domination(k, |q| match q {
        DominationQuery::Infinity => m as i64,
        DominationQuery::Subset(v) => d[v as usize],
    })?;
    let eps = exact_from_strong(k, &sigma)?;
    if let Some(mask) = eps.iter().position(|&e| e < 0) {
        return Err(Error::InconsistentCounts(format!(
            "exact domination of block set {:?} is {}",
            mask_blocks(&blocks, mask),
            eps[mask]
        )));
    }
    let dominated: i64 = eps[1..].iter().sum();
    if dominated > m as i64 {
        return Err(Error::InconsistentCounts(format!(
            "{dominated} atoms are dominated but there are only {m}"
        )));
    }

    let mut block_assignment = Vec::new();
    let mut first_copy = Vec::with_capacity(k);
    for &(alpha, count) in &counts {
        first_copy.push(block_assignment.len());
        block_assignment.extend(std::iter::repeat_n(alpha, count));
    }
    let upper = block_assignment.len();
    let mut edges = Vec::new();
    let mut atom = 0usize;
    for mask in 1..eps.len() {
        for _ in 0..eps[mask] {
            for i in (0..k).filter(|&i| mask >> i & 1 == 1) {
                for u in first_copy[i]..first_copy[i] + counts[i].1 {
                    edges.push((u, atom));
                }
            }
            atom += 1;
        }
    }
    let graph = BipartiteGraph::new(upper, m, &edges)?;
    let covers: Vec<(usize, usize)> = edges.iter().map(|&(u, x)| (x, m + u)).collect();
    let ji = Poset::from_covers(m + upper, &covers)?;
    let (lattice, _) = downset_lattice_capped(&ji, cap)?;

    let check = extract_wds(&lattice)?;
    if wds_isomorphic(&check, s).is_none() {
        return Err(Error::InconsistentCounts(
            "the rebuilt lattice has a different weighted double skeleton".into(),
        ));
    }
    Ok(ReconstructionReport {
        lattice,
        ji,
        graph,
        block_assignment,
    })
}

fn mask_blocks(blocks: &[usize], mask: usize) -> Vec<usize> {
    (0..blocks.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| blocks[i])
        .collect()
}
