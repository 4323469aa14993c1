//! Weighted double skeletons: the poset of block endpoints over S(L), with
//! interval lengths on its covers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::iso::for_each_isomorphism;
use crate::lattice::{build_lattice, FiniteLattice};
use crate::poset::Poset;
use crate::skeleton::{skeleton, SkeletonResult};

/// An abstract weighted double skeleton `(P, ≤, K, η₀, η₁, w)`.
///
/// Construction always validates the axioms. Skeletons extracted from a
/// lattice additionally remember which lattice element each `P` element is.
#[derive(Debug, Clone)]
pub struct WeightedDoubleSkeleton {
    p: Poset,
    k: FiniteLattice,
    eta0: Vec<usize>,
    eta1: Vec<usize>,
    weights: BTreeMap<(usize, usize), u64>,
    origin: Option<Vec<usize>>,
}

/// A pair `(ψ, κ)` of image tables witnessing `Σ ≅ Σ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdsIsomorphism {
    pub psi: Vec<usize>,
    pub kappa: Vec<usize>,
}

fn invalid(axiom: &'static str, detail: impl Into<String>) -> Error {
    Error::InvalidWds {
        axiom,
        detail: detail.into(),
    }
}

impl WeightedDoubleSkeleton {
    pub fn new(
        p: Poset,
        k: FiniteLattice,
        eta0: Vec<usize>,
        eta1: Vec<usize>,
        weights: BTreeMap<(usize, usize), u64>,
    ) -> Result<Self> {
        let s = WeightedDoubleSkeleton {
            p,
            k,
            eta0,
            eta1,
            weights,
            origin: None,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let (p, k) = (&self.p, &self.k);
        let nk = k.len();
        for (name, eta) in [("eta0", &self.eta0), ("eta1", &self.eta1)] {
            if eta.len() != nk {
                return Err(invalid(
                    "eta-domain",
                    format!("{name} has {} entries, K has {nk} elements", eta.len()),
                ));
            }
            if let Some(&bad) = eta.iter().find(|&&v| v >= p.len()) {
                return Err(invalid(
                    "eta-domain",
                    format!("{name} maps to {bad}, P has {} elements", p.len()),
                ));
            }
        }
        for (axiom, eta) in [
            ("eta0-order-embedding", &self.eta0),
            ("eta1-order-embedding", &self.eta1),
        ] {
            for x in 0..nk {
                for y in 0..nk {
                    if k.leq(x, y) != p.leq(eta[x], eta[y]) {
                        return Err(invalid(axiom, format!("K elements {x}, {y}")));
                    }
                }
            }
        }
        for x in 0..nk {
            for y in 0..nk {
                let j = self.eta0[k.join(x, y)];
                let (a, b) = (self.eta0[x], self.eta0[y]);
                let least = (0..p.len())
                    .filter(|&u| p.leq(a, u) && p.leq(b, u))
                    .all(|u| p.leq(j, u));
                if !least {
                    return Err(invalid(
                        "eta0-join-preserving",
                        format!("K elements {x}, {y}"),
                    ));
                }
                let m = self.eta1[k.meet(x, y)];
                let (a, b) = (self.eta1[x], self.eta1[y]);
                let greatest = (0..p.len())
                    .filter(|&u| p.leq(u, a) && p.leq(u, b))
                    .all(|u| p.leq(u, m));
                if !greatest {
                    return Err(invalid(
                        "eta1-meet-preserving",
                        format!("K elements {x}, {y}"),
                    ));
                }
            }
        }
        let mut carrier = ElementSet::new(p.len());
        for x in 0..nk {
            carrier.insert(self.eta0[x]);
            carrier.insert(self.eta1[x]);
            if !p.leq(self.eta0[x], self.eta1[x]) {
                return Err(invalid("eta0-below-eta1", format!("K element {x}")));
            }
        }
        if carrier.len() != p.len() {
            let missing = ElementSet::full(p.len()).difference(&carrier).to_vec();
            return Err(invalid(
                "carrier-union",
                format!("P elements {missing:?} are not images"),
            ));
        }
        let covers: BTreeSet<(usize, usize)> = p.covers().into_iter().collect();
        let keys: BTreeSet<(usize, usize)> = self.weights.keys().copied().collect();
        if covers != keys {
            return Err(invalid(
                "weight-domain",
                format!("weights on {keys:?}, covers of P are {covers:?}"),
            ));
        }
        if let Some((edge, _)) = self.weights.iter().find(|(_, &w)| w == 0) {
            return Err(invalid(
                "weight-positive",
                format!("edge {edge:?} has weight 0"),
            ));
        }
        Ok(())
    }

    pub fn p(&self) -> &Poset {
        &self.p
    }

    pub fn k(&self) -> &FiniteLattice {
        &self.k
    }

    pub fn eta0(&self, x: usize) -> usize {
        self.eta0[x]
    }

    pub fn eta1(&self, x: usize) -> usize {
        self.eta1[x]
    }

    /// `w(a, b)` for a cover `a ≺ b` of `P`.
    pub fn weight(&self, a: usize, b: usize) -> Option<u64> {
        self.weights.get(&(a, b)).copied()
    }

    pub fn weights(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.weights
    }

    /// For concrete skeletons, the lattice element behind each `P` element.
    pub fn origin(&self) -> Option<&[usize]> {
        self.origin.as_deref()
    }

    /// The least element ζ₀ of `K`.
    pub fn zeta0(&self) -> usize {
        self.k.bottom()
    }

    /// `w*(x, y)`: the weight summed along a maximal chain of `[x, y]` in `P`,
    /// 0 unless `x < y`. Every maximal chain is evaluated; differing sums are
    /// an error.
    pub fn extended_weight(&self, x: usize, y: usize) -> Result<u64> {
        if x == y || !self.p.leq(x, y) {
            return Ok(0);
        }
        let n = self.p.len();
        let mut sums: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n];
        sums[x].insert(0);
        for v in self.p.linear_extension() {
            if v == x || !self.p.leq(x, v) || !self.p.leq(v, y) {
                continue;
            }
            let mut here = BTreeSet::new();
            for &c in self.p.lower_covers(v) {
                let w = self.weights[&(c, v)];
                here.extend(sums[c].iter().map(|s| s + w));
            }
            sums[v] = here;
        }
        let at_y = &sums[y];
        if at_y.len() != 1 {
            return Err(Error::ChainDependentWeight {
                from: x,
                to: y,
                sums: at_y.iter().copied().collect(),
            });
        }
        Ok(*at_y.first().expect("one sum"))
    }

    /// `Σ_{β ≤ α} μ_K(β, α) · w*(η₀(α), η₁(β))`, the number of join-irreducibles
    /// in block `α` when Σ comes from a distributive lattice. Not clamped.
    pub fn j_alpha_count(&self, alpha: usize) -> Result<i64> {
        let mut total = 0i64;
        for beta in self.k.poset().down_set(alpha).iter() {
            let mu = self.k.poset().mobius(beta, alpha);
            if mu == 0 {
                continue;
            }
            let w = self.extended_weight(self.eta0[alpha], self.eta1[beta])?;
            total += mu * w as i64;
        }
        Ok(total)
    }

    /// Cheap isomorphism invariant for bucketing before [`wds_isomorphic`].
    pub fn invariant_key(&self) -> Vec<u64> {
        let mut key = vec![
            self.p.len() as u64,
            self.k.len() as u64,
            self.weights.len() as u64,
            self.k.covers().len() as u64,
            self.k.length() as u64,
        ];
        let mut w: Vec<u64> = self.weights.values().copied().collect();
        w.sort_unstable();
        key.extend(w);
        let mut profile: Vec<u64> = (0..self.p.len())
            .map(|v| {
                let lo: u64 = self
                    .p
                    .lower_covers(v)
                    .iter()
                    .map(|&c| self.weights[&(c, v)])
                    .sum();
                let hi: u64 = self
                    .p
                    .upper_covers(v)
                    .iter()
                    .map(|&c| self.weights[&(v, c)])
                    .sum();
                (lo << 32) | hi
            })
            .collect();
        profile.sort_unstable();
        key.extend(profile);
        key
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&WdsJson::from(self)).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: WdsJson = serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        raw.try_into()
    }
}

/// Σ(L) from an already computed skeleton of `L`.
pub fn extract_wds_with(
    l: &FiniteLattice,
    skel: &SkeletonResult,
) -> Result<WeightedDoubleSkeleton> {
    let mut ends: Vec<usize> = skel
        .blocks
        .iter()
        .flat_map(|b| [b.lo, b.hi])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    ends.sort_unstable();
    let index = |v: usize| ends.binary_search(&v).expect("endpoint present");
    let p = l.poset().induced(&ends);
    let eta0: Vec<usize> = skel.blocks.iter().map(|b| index(b.lo)).collect();
    let eta1: Vec<usize> = skel.blocks.iter().map(|b| index(b.hi)).collect();
    let weights = p
        .covers()
        .into_iter()
        .map(|(a, b)| {
            let len = l.interval_length(ends[a], ends[b]).expect("a < b in L");
            ((a, b), len as u64)
        })
        .collect();
    let mut s = WeightedDoubleSkeleton::new(p, skel.skeleton.clone(), eta0, eta1, weights)?;
    s.origin = Some(ends);
    Ok(s)
}

/// Σ(L).
pub fn extract_wds(l: &FiniteLattice) -> Result<WeightedDoubleSkeleton> {
    extract_wds_with(l, &skeleton(l)?)
}

/// `J_α = Ji(L) ∩ (α ∖ {0_α})`.
pub fn j_alpha_set(l: &FiniteLattice, skel: &SkeletonResult, alpha: usize) -> ElementSet {
    let block = &skel.blocks[alpha];
    let mut s = l.join_irreducibles().intersection(&block.members);
    s.remove(block.lo);
    s
}

/// Atoms of the block `α` viewed as the lattice `[0_α, 1_α]`.
pub fn block_atoms(l: &FiniteLattice, skel: &SkeletonResult, alpha: usize) -> ElementSet {
    let block = &skel.blocks[alpha];
    ElementSet::from_iter_in(
        l.len(),
        l.upper_covers(block.lo)
            .iter()
            .copied()
            .filter(|&x| block.members.contains(x)),
    )
}

/// Number of elements of `L` with exactly `k` lower covers.
pub fn jk_count(l: &FiniteLattice, k: usize) -> usize {
    l.elements_with_lower_covers(k).len()
}

/// Number of elements of the sublattice `α ∩ β` having exactly `k` lower
/// covers inside it; 0 when the blocks are disjoint.
pub fn jk_count_in(
    l: &FiniteLattice,
    skel: &SkeletonResult,
    alpha: usize,
    beta: usize,
    k: usize,
) -> usize {
    let (a, b) = (&skel.blocks[alpha], &skel.blocks[beta]);
    let (lo, hi) = (l.join(a.lo, b.lo), l.meet(a.hi, b.hi));
    if !l.leq(lo, hi) {
        return 0;
    }
    count_lower_covers_within(l, lo, hi, k)
}

/// Elements of `[lo, hi]` with exactly `k` lower covers inside `[lo, hi]`.
pub fn count_lower_covers_within(l: &FiniteLattice, lo: usize, hi: usize, k: usize) -> usize {
    l.interval_set(lo, hi)
        .iter()
        .filter(|&x| l.lower_covers(x).iter().filter(|&&c| l.leq(lo, c)).count() == k)
        .count()
}

/// Atoms of `L` below `0_α`. Undefined for the least block.
pub fn dominated_atoms(
    l: &FiniteLattice,
    skel: &SkeletonResult,
    alpha: usize,
) -> Result<ElementSet> {
    if alpha == skel.zeta0 {
        return Err(Error::IsZeta0(alpha));
    }
    let lo = skel.blocks[alpha].lo;
    Ok(l.atoms().intersection(l.poset().down_set(lo)))
}

/// Searches lattice isomorphisms `κ: K → K'`; each determines at most one `ψ`
/// through `ψ(ηᵢ(x)) = ηᵢ'(κ(x))`, which is accepted when it is a well-defined
/// weight-preserving order isomorphism.
pub fn wds_isomorphic(
    a: &WeightedDoubleSkeleton,
    b: &WeightedDoubleSkeleton,
) -> Option<WdsIsomorphism> {
    if a.p.len() != b.p.len() || a.weights.len() != b.weights.len() {
        return None;
    }
    let mut found = None;
    for_each_isomorphism(&a.k, &b.k, |kappa| {
        if let Some(psi) = induced_psi(a, b, kappa) {
            found = Some(WdsIsomorphism {
                psi,
                kappa: kappa.to_vec(),
            });
            return false;
        }
        true
    });
    found
}

fn induced_psi(
    a: &WeightedDoubleSkeleton,
    b: &WeightedDoubleSkeleton,
    kappa: &[usize],
) -> Option<Vec<usize>> {
    let n = a.p.len();
    let mut psi = vec![usize::MAX; n];
    for x in 0..a.k.len() {
        for (ea, eb) in [(&a.eta0, &b.eta0), (&a.eta1, &b.eta1)] {
            let (src, dst) = (ea[x], eb[kappa[x]]);
            if psi[src] != usize::MAX && psi[src] != dst {
                return None;
            }
            psi[src] = dst;
        }
    }
    let mut hit = vec![false; n];
    for &q in &psi {
        if q == usize::MAX || std::mem::replace(&mut hit[q], true) {
            return None;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.p.leq(x, y) != b.p.leq(psi[x], psi[y]) {
                return None;
            }
        }
    }
    let weights_kept = a
        .weights
        .iter()
        .all(|(&(x, y), &w)| b.weights.get(&(psi[x], psi[y])) == Some(&w));
    weights_kept.then_some(psi)
}

#[derive(Debug, Serialize, Deserialize)]
struct CoverListJson {
    n: usize,
    covers: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WdsJson {
    #[serde(rename = "P")]
    p: CoverListJson,
    #[serde(rename = "K")]
    k: CoverListJson,
    eta0: Vec<usize>,
    eta1: Vec<usize>,
    w: Vec<[u64; 3]>,
}

impl From<&WeightedDoubleSkeleton> for WdsJson {
    fn from(s: &WeightedDoubleSkeleton) -> Self {
        let list = |covers: Vec<(usize, usize)>| covers.into_iter().map(|(a, b)| [a, b]).collect();
        WdsJson {
            p: CoverListJson {
                n: s.p.len(),
                covers: list(s.p.covers()),
            },
            k: CoverListJson {
                n: s.k.len(),
                covers: list(s.k.covers()),
            },
            eta0: s.eta0.clone(),
            eta1: s.eta1.clone(),
            w: s.weights
                .iter()
                .map(|(&(a, b), &w)| [a as u64, b as u64, w])
                .collect(),
        }
    }
}

impl TryFrom<WdsJson> for WeightedDoubleSkeleton {
    type Error = Error;

    fn try_from(raw: WdsJson) -> Result<Self> {
        let pairs = |c: &[[usize; 2]]| c.iter().map(|&[a, b]| (a, b)).collect::<Vec<_>>();
        let p = Poset::from_covers(raw.p.n, &pairs(&raw.p.covers))
            .map_err(|e| invalid("P-partial-order", e.to_string()))?;
        let k = build_lattice(raw.k.n, &pairs(&raw.k.covers))
            .map_err(|e| invalid("K-lattice", e.to_string()))?;
        let mut weights = BTreeMap::new();
        for [a, b, w] in raw.w {
            let key = (a as usize, b as usize);
            if weights.insert(key, w).is_some() {
                return Err(invalid(
                    "weight-domain",
                    format!("edge {key:?} weighted twice"),
                ));
            }
        }
        WeightedDoubleSkeleton::new(p, k, raw.eta0, raw.eta1, weights)
    }
}
