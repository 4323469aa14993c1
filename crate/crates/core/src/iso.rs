//! Lattice isomorphism by backtracking over join-irreducibles.
//!
//! Elements are mapped in order of height. A join-reducible element has all
//! of its lower covers mapped already, and its image is forced to be the
//! join of their images; only join-irreducibles branch. Candidates are pruned
//! by (height, co-height, #lower covers, #upper covers).

use crate::lattice::FiniteLattice;

type Invariant = (usize, usize, usize, usize);

fn invariants(l: &FiniteLattice) -> Vec<Invariant> {
    let co = l.poset().dual().heights();
    (0..l.len())
        .map(|x| {
            (
                l.height(x),
                co[x],
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
            )
        })
        .collect()
}

struct Search<'a, F> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    order: Vec<usize>,
    inv_a: Vec<Invariant>,
    inv_b: Vec<Invariant>,
    image: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    /// Returns `false` once the visitor asked to stop.
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return (self.visit)(&self.image);
        }
        let x = self.order[depth];
        let lower = self.a.lower_covers(x);
        let candidates: Vec<usize> = match lower.len() {
            0 => vec![self.b.bottom()],
            1 => self.b.upper_covers(self.image[lower[0]]).to_vec(),
            _ => vec![self.b.join_all(lower.iter().map(|&c| self.image[c]))],
        };
        for y in candidates {
            if self.used[y] || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            let lower_ok = self
                .b
                .lower_covers(y)
                .iter()
                .all(|&c| lower.iter().any(|&d| self.image[d] == c));
            if !lower_ok {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            let go_on = self.run(depth + 1);
            self.used[y] = false;
            self.image[x] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Calls `visit` with every isomorphism `a -> b` (as an image table) until it
/// returns `false`.
pub fn for_each_isomorphism(
    a: &FiniteLattice,
    b: &FiniteLattice,
    visit: impl FnMut(&[usize]) -> bool,
) {
    if a.len() != b.len() || a.covers().len() != b.covers().len() {
        return;
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&x| (a.height(x), x));
    let mut search = Search {
        a,
        b,
        order,
        inv_a,
        inv_b,
        image: vec![usize::MAX; a.len()],
        used: vec![false; b.len()],
        visit,
    };
    search.run(0);
}

/// Some cover-preserving order bijection `a -> b`, if one exists.
pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(a, b, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// All isomorphisms `a -> b`.
pub fn all_isomorphisms(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(a, b, |m| {
        out.push(m.to_vec());
        true
    });
    out
}
