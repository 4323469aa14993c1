//! Finite partial orders on dense element ids `0..n`.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// A finite poset stored as its full order relation plus the cover relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `up[a]` holds every `b` with `a <= b`.
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Kahn's algorithm, always releasing the smallest available id first so the
/// result is deterministic. Fails with the id of some element on a cycle.
pub(crate) fn topological_order(n: usize, succ: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = ready.pop() {
        order.push(v);
        for &b in &succ[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(std::cmp::Reverse(b));
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(Error::CycleDetected(stuck));
    }
    Ok(order)
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `pairs`. Redundant (non-cover) pairs are accepted and dropped.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            succ[a].push(b);
        }
        let order = topological_order(n, &succ)?;
        let mut up = vec![ElementSet::new(n); n];
        for &v in order.iter().rev() {
            let mut s = ElementSet::new(n);
            s.insert(v);
            for &b in &succ[v] {
                s.union_with(&up[b]);
            }
            up[v] = s;
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds a poset from an arbitrary relation, checking the order axioms.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut up = vec![ElementSet::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up[a].insert(b);
                }
            }
        }
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(Error::NotAPartialOrder(format!("{a} <= {a} fails")));
            }
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{a} <= {b} <= {a} with {a} != {b}"
                    )));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails above {a} <= {b}"
                    )));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// `up` must already be a valid (reflexive, antisymmetric, transitive)
    /// relation.
    pub(crate) fn from_up_sets(up: Vec<ElementSet>) -> Poset {
        let n = up.len();
        let mut down = vec![ElementSet::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            let mut strict = up[a].clone();
            strict.remove(a);
            let mut above_strict = ElementSet::new(n);
            for c in strict.iter() {
                let mut s = up[c].clone();
                s.remove(c);
                above_strict.union_with(&s);
            }
            for b in strict.difference(&above_strict).iter() {
                upper_covers[a].push(b);
                lower_covers[b].push(a);
            }
        }
        Poset {
            n,
            up,
            down,
            lower_covers,
            upper_covers,
        }
    }

    pub fn antichain(n: usize) -> Poset {
        Self::from_covers(n, &[]).expect("antichain")
    }

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn covers_pair(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].contains(&b)
    }

    pub fn up_set(&self, a: usize) -> &ElementSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &ElementSet {
        &self.down[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// All cover pairs `(a, b)` with `a ≺ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n)
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| self.lower_covers[a].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| self.upper_covers[a].is_empty())
            .collect()
    }

    /// A deterministic linear extension.
    pub fn linear_extension(&self) -> Vec<usize> {
        topological_order(self.n, &self.upper_covers).expect("posets are acyclic")
    }

    /// `heights()[x]` is the length of the longest chain ending in `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        for v in self.linear_extension() {
            h[v] = self.lower_covers[v]
                .iter()
                .map(|&c| h[c] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain, counted in edges. The empty poset has
    /// length 0.
    pub fn length(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// Sub-poset induced on `elements`; element `i` of the result is
    /// `elements[i]`.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let up = (0..k)
            .map(|i| {
                ElementSet::from_iter_in(k, (0..k).filter(|&j| self.leq(elements[i], elements[j])))
            })
            .collect();
        Self::from_up_sets(up)
    }

    pub fn dual(&self) -> Poset {
        Self::from_up_sets(self.down.clone())
    }

    /// Every down-closed subset, in no particular order. Fails once more than
    /// `cap` have been produced.
    pub fn downsets(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut current = ElementSet::new(self.n);
        self.downsets_rec(&order, 0, &mut current, &mut out, cap)?;
        Ok(out)
    }

    fn downsets_rec(
        &self,
        order: &[usize],
        i: usize,
        current: &mut ElementSet,
        out: &mut Vec<ElementSet>,
        cap: usize,
    ) -> Result<()> {
        if i == order.len() {
            if out.len() >= cap {
                return Err(Error::TooLarge {
                    what: "downset lattice",
                    size: out.len() + 1,
                    cap,
                });
            }
            out.push(current.clone());
            return Ok(());
        }
        let v = order[i];
        self.downsets_rec(order, i + 1, current, out, cap)?;
        // Elements earlier in the linear extension are decided, so `v` may
        // join only when all of its lower covers already did.
        if self.lower_covers[v].iter().all(|&c| current.contains(c)) {
            current.insert(v);
            self.downsets_rec(order, i + 1, current, out, cap)?;
            current.remove(v);
        }
        Ok(())
    }

    /// Möbius values `μ(x, ·)` for a fixed lower end `x`.
    pub fn mobius_row(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.n];
        mu[x] = 1;
        for y in self.linear_extension() {
            if y == x || !self.leq(x, y) {
                continue;
            }
            // Every z with x <= z < y precedes y in the linear extension.
            let s: i64 = self.down[y]
                .iter()
                .filter(|&z| z != y && self.leq(x, z))
                .map(|z| mu[z])
                .sum();
            mu[y] = -s;
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        if !self.leq(x, y) {
            return 0;
        }
        self.mobius_row(x)[y]
    }

    /// Full Möbius matrix, `m[x][y] = μ(x, y)`.
    pub fn mobius_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|x| self.mobius_row(x)).collect()
    }

    fn invariant(&self, a: usize) -> (usize, usize, usize, usize) {
        (
            self.down[a].len(),
            self.up[a].len(),
            self.lower_covers[a].len(),
            self.upper_covers[a].len(),
        )
    }

    /// Some order isomorphism `self -> other`, as an image table.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let mut invs_a: Vec<_> = (0..self.n).map(|a| self.invariant(a)).collect();
        let mut invs_b: Vec<_> = (0..other.n).map(|b| other.invariant(b)).collect();
        let (ia, ib) = (invs_a.clone(), invs_b.clone());
        invs_a.sort_unstable();
        invs_b.sort_unstable();
        if invs_a != invs_b {
            return None;
        }
        // Rarest invariant classes first keeps the search shallow.
        let mut order: Vec<usize> = self.linear_extension();
        order.sort_by_key(|&a| ia.iter().filter(|&&v| v == ia[a]).count());
        let mut image = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.iso_rec(other, &order, 0, &ia, &ib, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_rec(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        ia: &[(usize, usize, usize, usize)],
        ib: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let a = order[depth];
        for b in 0..other.n {
            if used[b] || ia[a] != ib[b] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| {
                let q = image[p];
                self.leq(a, p) == other.leq(b, q) && self.leq(p, a) == other.leq(q, b)
            });
            if !consistent {
                continue;
            }
            image[a] = b;
            used[b] = true;
            if self.iso_rec(other, order, depth + 1, ia, ib, image, used) {
                return true;
            }
            used[b] = false;
        }
        image[a] = usize::MAX;
        false
    }
}
