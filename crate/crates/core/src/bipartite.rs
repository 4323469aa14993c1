//! Bipartite graphs `(U, X, E)` and their domination counts.
//!
//! Subsets of `U` are bit masks, so `|U| ≤ 64`; functions that tabulate over
//! all subsets further need `2^|U|` entries to fit in memory.

use crate::error::{Error, Result};

/// Largest `|U|` whose full subset tables are computed.
pub const MAX_TABLE_UPPER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    upper: usize,
    /// Neighbourhood of each lower vertex, as a mask over `U`.
    nbhd: Vec<u64>,
}

/// Argument of the domination function: a subset of `U`, or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominationQuery {
    Subset(u64),
    Infinity,
}

impl BipartiteGraph {
    /// `U = 0..upper`, `X = 0..lower`, `E ⊆ U × X`.
    pub fn new(upper: usize, lower: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if upper > 64 {
            return Err(Error::TooLarge {
                what: "upper vertex set",
                size: upper,
                cap: 64,
            });
        }
        let mut nbhd = vec![0u64; lower];
        for &(u, x) in edges {
            if u >= upper {
                return Err(Error::ElementOutOfRange {
                    element: u,
                    n: upper,
                });
            }
            if x >= lower {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    n: lower,
                });
            }
            nbhd[x] |= 1 << u;
        }
        Ok(BipartiteGraph { upper, nbhd })
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.nbhd.len()
    }

    pub fn has_edge(&self, u: usize, x: usize) -> bool {
        self.nbhd[x] >> u & 1 == 1
    }

    pub fn neighbourhood(&self, x: usize) -> u64 {
        self.nbhd[x]
    }

    /// Edges sorted by `(u, x)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.lower())
            .flat_map(|x| {
                (0..self.upper)
                    .filter(move |&u| self.has_edge(u, x))
                    .map(move |u| (u, x))
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn table_size(&self) -> Result<usize> {
        table_size(self.upper)
    }
}

fn table_size(upper: usize) -> Result<usize> {
    if upper > MAX_TABLE_UPPER {
        return Err(Error::TooLarge {
            what: "subset table",
            size: upper,
            cap: MAX_TABLE_UPPER,
        });
    }
    Ok(1 << upper)
}

/// `d(V) = |{x : some v ∈ V is adjacent to x}|`, `d(∞) = |X|`.
pub fn domination(g: &BipartiteGraph, q: DominationQuery) -> usize {
    match q {
        DominationQuery::Infinity => g.lower(),
        DominationQuery::Subset(v) => g.nbhd.iter().filter(|&&n| n & v != 0).count(),
    }
}

/// `σ(V) = |{x : every v ∈ V is adjacent to x}|`.
pub fn strong_domination(g: &BipartiteGraph, v: u64) -> usize {
    g.nbhd.iter().filter(|&&n| n & v == v).count()
}

/// `ε(V) = |{x : the neighbourhood of x is exactly V}|`.
pub fn exact_domination(g: &BipartiteGraph, v: u64) -> usize {
    g.nbhd.iter().filter(|&&n| n == v).count()
}

/// The σ table over all subsets of `0..upper`, from `d` alone:
/// `σ(∅) = d(∞)` and `σ(V) = Σ_{∅ ≠ W ⊆ V} (-1)^{|W|+1} d(W)`.
pub fn strong_from_domination(
    upper: usize,
    d: impl Fn(DominationQuery) -> i64,
) -> Result<Vec<i64>> {
    let size = table_size(upper)?;
    let dt: Vec<i64> = (0..size as u64)
        .map(|w| d(DominationQuery::Subset(w)))
        .collect();
    // Signed subset sums: f(V) = Σ_{W ⊆ V} (-1)^{|W|+1} d(W), with the empty term dropped.
    let mut f: Vec<i64> = (0..size)
        .map(|w| match w {
            0 => 0,
            _ if (w as u64).count_ones() % 2 == 1 => dt[w],
            _ => -dt[w],
        })
        .collect();
    for bit in 0..upper {
        for v in 0..size {
            if v >> bit & 1 == 1 {
                f[v] += f[v ^ (1 << bit)];
            }
        }
    }
    f[0] = d(DominationQuery::Infinity);
    Ok(f)
}

/// `ε(V) = Σ_{W ⊇ V} (-1)^{|W ∖ V|} σ(W)`.
pub fn exact_from_strong(upper: usize, sigma: &[i64]) -> Result<Vec<i64>> {
    let size = table_size(upper)?;
    assert_eq!(sigma.len(), size, "σ table has the wrong length");
    let mut e = sigma.to_vec();
    for bit in 0..upper {
        for v in 0..size {
            if v >> bit & 1 == 0 {
                e[v] -= e[v | (1 << bit)];
            }
        }
    }
    Ok(e)
}

fn map_mask(phi: &[usize], v: u64) -> u64 {
    (0..phi.len())
        .filter(|&u| v >> u & 1 == 1)
        .fold(0, |m, u| m | 1 << phi[u])
}

/// Given a bijection `φ: U → U'` preserving `d` everywhere, builds `ξ: X → X'`
/// cell by cell over the exact-domination classes and returns `(φ, ξ)` once it
/// is checked to be a graph isomorphism. Returns `None` otherwise.
pub fn complete_isomorphism(
    g: &BipartiteGraph,
    h: &BipartiteGraph,
    phi: &[usize],
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let size = g.table_size()?;
    if g.upper != h.upper || phi.len() != g.upper || g.lower() != h.lower() {
        return Ok(None);
    }
    let mut seen = 0u64;
    for &p in phi {
        if p >= h.upper || seen >> p & 1 == 1 {
            return Ok(None);
        }
        seen |= 1 << p;
    }
    for v in 0..size as u64 {
        let q = DominationQuery::Subset(v);
        let q2 = DominationQuery::Subset(map_mask(phi, v));
        if domination(g, q) != domination(h, q2) {
            return Ok(None);
        }
    }
    let mut targets: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for x in (0..h.lower()).rev() {
        targets.entry(h.nbhd[x]).or_default().push(x);
    }
    let mut xi = Vec::with_capacity(g.lower());
    for x in 0..g.lower() {
        let cell = map_mask(phi, g.nbhd[x]);
        match targets.get_mut(&cell).and_then(Vec::pop) {
            Some(y) => xi.push(y),
            None => return Ok(None),
        }
    }
    let preserved = (0..g.lower()).all(|x| h.nbhd[xi[x]] == map_mask(phi, g.nbhd[x]));
    Ok(preserved.then(|| (phi.to_vec(), xi)))
}
