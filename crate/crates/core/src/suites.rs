//! Exhaustive invariant suites over enumerated universes, and the searches
//! for small lattices separating the ranks.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::{
    complete_isomorphism, domination, exact_domination, exact_from_strong, strong_domination,
    strong_from_domination, BipartiteGraph, DominationQuery,
};
use crate::enumerate::{
    distributive_by_ji, distributive_by_size, lattices_up_to, poset_levels_where,
};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::lattice::{downset_lattice_capped, FiniteLattice};
use crate::reconstruct::{blockwise_domination, reconstruct};
use crate::skeleton::{herrmann_rank, is_h_irreducible, skeleton, SkeletonResult};
use crate::text::write_lattice;
use crate::tolerance::skeleton_tolerance;
use crate::wds::{
    block_atoms, dominated_atoms, extract_wds_with, j_alpha_set, jk_count_in, wds_isomorphic,
    WeightedDoubleSkeleton,
};

/// Suite names in the order `all` runs them.
pub const SUITES: [&str; 8] = [
    "theorem-a",
    "theorem-b",
    "theorem-c",
    "lemma-31",
    "lemma-blocks",
    "lemma-bipartite",
    "reuter-k2",
    "length-drop",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Universe bounds. Unset fields fall back to per-suite defaults.
#[derive(Debug, Clone)]
pub struct SuiteBounds {
    /// Join-irreducibles of the distributive universes.
    pub max_ji: Option<usize>,
    /// Elements of the lattice universes.
    pub max_size: Option<usize>,
    /// Random bipartite graphs for `lemma-bipartite`.
    pub graphs: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            max_ji: None,
            max_size: None,
            graphs: 500,
            seed: DEFAULT_SEED,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    /// Offending lattices in the lattice text format.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub universe: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Human-readable report. Wall time is left out so reports compare
    /// byte for byte across runs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{verdict} {}: {} instances, {} failures ({})",
            self.name,
            self.instances,
            self.failures.len(),
            self.universe
        );
        for f in &self.failures {
            let _ = writeln!(out, "  {}: {}", f.check, f.detail);
            for w in &f.witnesses {
                for line in w.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        out
    }
}

type Checked = std::result::Result<(), Failure>;

fn failure(check: &str, detail: impl Into<String>, witnesses: &[&FiniteLattice]) -> Failure {
    Failure {
        check: check.to_string(),
        detail: detail.into(),
        witnesses: witnesses
            .iter()
            .enumerate()
            .map(|(i, l)| write_lattice(&format!("witness{}", i + 1), l))
            .collect(),
    }
}

fn ensure(cond: bool, check: &str, detail: impl FnOnce() -> String, l: &FiniteLattice) -> Checked {
    if cond {
        Ok(())
    } else {
        Err(failure(check, detail(), &[l]))
    }
}

fn lift<T>(r: Result<T>, check: &str, l: &FiniteLattice) -> std::result::Result<T, Failure> {
    r.map_err(|e| failure(check, format!("{}: {e}", e.name()), &[l]))
}

/// Runs `check` on every lattice in parallel; failures keep universe order.
fn run_each(
    name: &str,
    universe: String,
    lattices: &[FiniteLattice],
    check: impl Fn(&FiniteLattice) -> Vec<Failure> + Sync + Send,
) -> SuiteReport {
    let failures = lattices.par_iter().map(check).collect::<Vec<_>>().concat();
    SuiteReport {
        name: name.to_string(),
        universe,
        instances: lattices.len(),
        failures,
        wall_time: Duration::ZERO,
    }
}

fn collect(results: impl IntoIterator<Item = Checked>) -> Vec<Failure> {
    results.into_iter().filter_map(|r| r.err()).collect()
}

pub fn run_suite(name: &str, bounds: &SuiteBounds) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let run = || {
        let start = Instant::now();
        let mut report = match name {
            "theorem-a" => modular_shallow_suite(bounds.max_size.unwrap_or(8)),
            "theorem-b" => determination_suite(bounds.max_ji.unwrap_or(5)),
            "theorem-c" => round_trip_suite(bounds.max_ji.unwrap_or(5)),
            "lemma-31" => ji_count_suite(bounds.max_size.unwrap_or(12)),
            "lemma-blocks" => block_suite(bounds.max_size.unwrap_or(7), bounds.max_ji.unwrap_or(5)),
            "lemma-bipartite" => Ok(bipartite_suite(bounds.graphs, bounds.seed)),
            "reuter-k2" => reuter(bounds.max_size.unwrap_or(8)),
            "length-drop" => length_drop(bounds.max_size.unwrap_or(7)),
            _ => unreachable!("checked above"),
        }?;
        report.wall_time = start.elapsed();
        Ok(report)
    };
    match bounds.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Every suite in [`SUITES`] order.
pub fn run_all(bounds: &SuiteBounds) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, bounds)).collect()
}

fn distributive_lattices(max_ji: usize) -> Vec<FiniteLattice> {
    distributive_by_ji(max_ji)
        .into_iter()
        .map(|(_, l)| l)
        .collect()
}

fn modular_shallow_suite(max_size: usize) -> Result<SuiteReport> {
    let modular: Vec<FiniteLattice> = lattices_up_to(max_size)?
        .into_iter()
        .filter(FiniteLattice::is_modular)
        .collect();
    Ok(run_each(
        "theorem-a",
        format!("modular lattices with at most {max_size} elements"),
        &modular,
        |l| {
            let check = "H2-irreducible modular implies ji-length at most 1";
            collect([lift(is_h_irreducible(l, 2), check, l).and_then(|h2| {
                ensure(
                    !h2 || l.ji_length() <= 1,
                    check,
                    || format!("ji-length {}", l.ji_length()),
                    l,
                )
            })])
        },
    ))
}

fn round_trip(l: &FiniteLattice, check: &str) -> Checked {
    let s = lift(crate::wds::extract_wds(l), check, l)?;
    let r = lift(reconstruct(&s), check, l)?;
    ensure(
        are_isomorphic(&r.lattice, l).is_some(),
        check,
        || "reconstruction is not isomorphic to the original".into(),
        l,
    )
}

fn round_trip_suite(max_ji: usize) -> Result<SuiteReport> {
    let universe: Vec<FiniteLattice> = distributive_lattices(max_ji)
        .into_iter()
        .filter(|l| l.ji_length() <= 1)
        .collect();
    Ok(run_each(
        "theorem-c",
        format!(
            "distributive lattices with at most {max_ji} join-irreducibles and ji-length at most 1"
        ),
        &universe,
        |l| collect([round_trip(l, "reconstruction round trip")]),
    ))
}

/// Splits `items` into classes of pairwise isomorphic weighted double
/// skeletons, bucketing by a cheap invariant first. Class order follows the
/// first member's position.
fn wds_classes(items: &[WeightedDoubleSkeleton]) -> Vec<Vec<usize>> {
    let mut buckets: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (i, s) in items.iter().enumerate() {
        buckets.entry(s.invariant_key()).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|bucket| {
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for &i in bucket {
                match classes
                    .iter_mut()
                    .find(|c| wds_isomorphic(&items[c[0]], &items[i]).is_some())
                {
                    Some(c) => c.push(i),
                    None => classes.push(vec![i]),
                }
            }
            classes
        })
        .collect();
    classes.sort();
    classes
}

fn determination_suite(max_ji: usize) -> Result<SuiteReport> {
    let universe = distributive_lattices(max_ji);
    let analysed: Vec<(WeightedDoubleSkeleton, bool)> = universe
        .par_iter()
        .map(|l| Ok((crate::wds::extract_wds(l)?, is_h_irreducible(l, 2)?)))
        .collect::<Result<_>>()?;
    let skeletons: Vec<WeightedDoubleSkeleton> = analysed.iter().map(|(s, _)| s.clone()).collect();
    let check = "H2-irreducible distributive lattice is determined by its weighted double skeleton";
    let mut failures = Vec::new();
    for class in wds_classes(&skeletons) {
        let Some(&anchor) = class.iter().find(|&&i| analysed[i].1) else {
            continue;
        };
        for &other in class.iter().filter(|&&i| i != anchor) {
            if are_isomorphic(&universe[anchor], &universe[other]).is_none() {
                failures.push(failure(
                    check,
                    "isomorphic skeletons, non-isomorphic lattices",
                    &[&universe[anchor], &universe[other]],
                ));
            }
        }
    }
    let mut h2 = 0;
    for (i, (_, irreducible)) in analysed.iter().enumerate() {
        if *irreducible {
            h2 += 1;
            if let Err(f) = round_trip(&universe[i], "H2-irreducible reconstruction round trip") {
                failures.push(f);
            }
        }
    }
    Ok(SuiteReport {
        name: "theorem-b".into(),
        universe: format!(
            "H2-irreducible lattices among the {} distributive lattices with at most {max_ji} join-irreducibles",
            universe.len()
        ),
        instances: h2,
        failures,
        wall_time: Duration::ZERO,
    })
}

fn ji_count_suite(max_size: usize) -> Result<SuiteReport> {
    let universe: Vec<FiniteLattice> = distributive_by_size(max_size)?
        .into_iter()
        .map(|(_, l)| l)
        .collect();
    Ok(run_each(
        "lemma-31",
        format!("distributive lattices with at most {max_size} elements"),
        &universe,
        |l| {
            let check = "join-irreducibles per block from the skeleton";
            let skel = match lift(skeleton(l), check, l) {
                Ok(s) => s,
                Err(f) => return vec![f],
            };
            let s = match lift(extract_wds_with(l, &skel), check, l) {
                Ok(s) => s,
                Err(f) => return vec![f],
            };
            let ji = l.join_irreducibles();
            collect((0..skel.blocks.len()).flat_map(|alpha| {
                let direct = j_alpha_set(l, &skel, alpha);
                let formula = lift(s.j_alpha_count(alpha), check, l);
                let atoms = ji.intersection(&block_atoms(l, &skel, alpha));
                [
                    formula.and_then(|f| {
                        ensure(
                            f == direct.len() as i64,
                            check,
                            || format!("block {alpha}: formula {f}, direct {}", direct.len()),
                            l,
                        )
                    }),
                    ensure(
                        atoms == direct,
                        "join-irreducibles of a block are its atoms",
                        || format!("block {alpha}"),
                        l,
                    ),
                ]
            }))
        },
    ))
}

fn block_checks(l: &FiniteLattice) -> Vec<Failure> {
    let skel = match lift(skeleton(l), "skeleton", l) {
        Ok(s) => s,
        Err(f) => return vec![f],
    };
    let mut out = Vec::new();
    let mut push = |r: Checked| {
        if let Err(f) = r {
            out.push(f);
        }
    };
    let SkeletonResult {
        skeleton: k,
        blocks,
        zeta0,
    } = &skel;
    for a in 0..k.len() {
        for b in 0..k.len() {
            let (x, y) = (&blocks[a], &blocks[b]);
            let (j, m) = (&blocks[k.join(a, b)], &blocks[k.meet(a, b)]);
            let arithmetic = l.join(x.lo, y.lo) == j.lo
                && l.meet(x.hi, y.hi) == m.hi
                && l.leq(l.join(x.hi, y.hi), j.hi)
                && l.leq(m.lo, l.meet(x.lo, y.lo));
            push(ensure(
                arithmetic,
                "block bound arithmetic",
                || format!("blocks {a}, {b}"),
                l,
            ));
        }
    }
    for (a, b) in k.covers() {
        push(ensure(
            !blocks[a].members.is_disjoint(&blocks[b].members),
            "covering blocks intersect",
            || format!("blocks {a} < {b}"),
            l,
        ));
    }
    let theta = skeleton_tolerance(k);
    for (a, b) in theta.pairs() {
        push(ensure(
            !blocks[a].members.is_disjoint(&blocks[b].members),
            "blocks related in the skeleton of the skeleton intersect",
            || format!("blocks {a}, {b}"),
            l,
        ));
    }
    if l.len() > 1 {
        push(ensure(
            k.length() < l.length(),
            "skeleton is shorter",
            || format!("length {} vs {}", k.length(), l.length()),
            l,
        ));
    }
    if l.is_modular() {
        let atoms = l.atoms();
        let ji = l.join_irreducibles();
        push(ensure(
            blocks[*zeta0].lo == l.bottom() && blocks[*zeta0].hi == l.join_all(atoms.iter()),
            "least block is [0, join of atoms]",
            || format!("least block [{}, {}]", blocks[*zeta0].lo, blocks[*zeta0].hi),
            l,
        ));
        let parts: Vec<_> = (0..blocks.len())
            .map(|a| j_alpha_set(l, &skel, a))
            .collect();
        let mut seen = crate::bitset::ElementSet::new(l.len());
        let mut disjoint = true;
        for p in &parts {
            disjoint &= seen.is_disjoint(p);
            seen.union_with(p);
        }
        push(ensure(
            disjoint && seen == ji,
            "join-irreducibles split into blocks",
            String::new,
            l,
        ));
        push(ensure(
            parts[*zeta0] == atoms,
            "atoms are the least block's part",
            String::new,
            l,
        ));
        for (a, part) in parts.iter().enumerate() {
            push(ensure(
                a == *zeta0 || part.is_disjoint(&atoms),
                "atoms only in the least block",
                || format!("block {a}"),
                l,
            ));
        }
        for z in 0..k.len() {
            for a in 0..k.len() {
                for b in 0..k.len() {
                    let distinct = z != a && z != b && a != b;
                    if !distinct || !k.lt(z, a) || !k.lt(z, b) {
                        continue;
                    }
                    let glued = [(a, b), (a, z), (b, z)]
                        .iter()
                        .all(|&(p, q)| theta.related(p, q));
                    if !glued {
                        continue;
                    }
                    let parallel = parts[a]
                        .iter()
                        .all(|x| parts[b].iter().all(|y| !l.poset().comparable(x, y)));
                    push(ensure(
                        parallel,
                        "join-irreducibles of sibling blocks are incomparable",
                        || format!("blocks {a}, {b} over {z}"),
                        l,
                    ));
                }
            }
        }
        if l.is_distributive() && l.ji_length() == 1 {
            push(dominated_set_check(l, &skel, &parts));
        }
    }
    out
}

fn dominated_set_check(
    l: &FiniteLattice,
    skel: &SkeletonResult,
    parts: &[crate::bitset::ElementSet],
) -> Checked {
    let check = "atoms dominated by blocks";
    let s = lift(extract_wds_with(l, skel), check, l)?;
    let chosen: Vec<usize> = (0..parts.len())
        .filter(|&a| a != skel.zeta0 && !parts[a].is_empty())
        .collect();
    let dom: Vec<_> = chosen
        .iter()
        .map(|&a| lift(dominated_atoms(l, skel, a), check, l))
        .collect::<std::result::Result<_, _>>()?;
    for (i, &a) in chosen.iter().enumerate() {
        ensure(
            !dom[i].is_empty(),
            check,
            || format!("block {a} dominates nothing"),
            l,
        )?;
        for (j, &b) in chosen.iter().enumerate() {
            ensure(
                skel.skeleton.leq(a, b) == dom[i].is_subset(&dom[j]),
                check,
                || format!("order of blocks {a}, {b} vs their dominated atoms"),
                l,
            )?;
        }
    }
    if chosen.len() > 12 {
        return Ok(());
    }
    for mask in 1usize..1 << chosen.len() {
        let picked: Vec<usize> = (0..chosen.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let mut union = crate::bitset::ElementSet::new(l.len());
        for &i in &picked {
            union.union_with(&dom[i]);
        }
        let blocks: Vec<usize> = picked.iter().map(|&i| chosen[i]).collect();
        let w = lift(blockwise_domination(&s, &blocks), check, l)?;
        ensure(
            union.len() as u64 == w,
            check,
            || format!("blocks {blocks:?}: {} atoms, weight {w}", union.len()),
            l,
        )?;
    }
    Ok(())
}

fn block_suite(max_size: usize, max_ji: usize) -> Result<SuiteReport> {
    let mut universe = lattices_up_to(max_size)?;
    universe.extend(distributive_lattices(max_ji));
    Ok(run_each(
        "lemma-blocks",
        format!(
            "lattices with at most {max_size} elements and distributive lattices with at most {max_ji} join-irreducibles"
        ),
        &universe,
        block_checks,
    ))
}

fn random_graph(rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let upper = rng.gen_range(1..=6);
    let lower = rng.gen_range(1..=8);
    let density = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> = (0..upper)
        .flat_map(|u| (0..lower).map(move |x| (u, x)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    BipartiteGraph::new(upper, lower, &edges).expect("in range")
}

fn relabel_graph(g: &BipartiteGraph, phi: &[usize], xi: &[usize]) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, x)| (phi[u], xi[x]))
        .collect();
    BipartiteGraph::new(g.upper(), g.lower(), &edges).expect("in range")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
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
    out
}

fn preserves_domination(g: &BipartiteGraph, h: &BipartiteGraph, phi: &[usize]) -> bool {
    g.lower() == h.lower()
        && (0u64..1 << g.upper()).all(|v| {
            let image = (0..g.upper())
                .filter(|&u| v >> u & 1 == 1)
                .fold(0u64, |m, u| m | 1 << phi[u]);
            domination(g, DominationQuery::Subset(v))
                == domination(h, DominationQuery::Subset(image))
        })
}

fn is_graph_isomorphism(
    g: &BipartiteGraph,
    h: &BipartiteGraph,
    phi: &[usize],
    xi: &[usize],
) -> bool {
    let mut hit = vec![false; h.lower()];
    xi.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        && (0..g.upper())
            .all(|u| (0..g.lower()).all(|x| g.has_edge(u, x) == h.has_edge(phi[u], xi[x])))
}

fn bipartite_failure(check: &str, detail: String) -> Failure {
    Failure {
        check: check.to_string(),
        detail,
        witnesses: Vec::new(),
    }
}

fn check_graph(index: usize, g: &BipartiteGraph, h: &BipartiteGraph) -> Vec<Failure> {
    let mut out = Vec::new();
    let k = g.upper();
    let sigma = strong_from_domination(k, |q| domination(g, q) as i64).expect("small");
    let eps = exact_from_strong(k, &sigma).expect("small");
    let edges = || {
        format!(
            "graph {index}: |U|={k}, |X|={}, E={:?}",
            g.lower(),
            g.edges()
        )
    };
    for v in 0..1u64 << k {
        if sigma[v as usize] != strong_domination(g, v) as i64 {
            out.push(bipartite_failure(
                "strong domination from domination",
                format!("{} at {v:#b}", edges()),
            ));
        }
        if eps[v as usize] != exact_domination(g, v) as i64 {
            out.push(bipartite_failure(
                "exact domination from strong",
                format!("{} at {v:#b}", edges()),
            ));
        }
    }
    if eps.iter().sum::<i64>() != g.lower() as i64 {
        out.push(bipartite_failure("exact domination partitions X", edges()));
    }
    for phi in permutations(k) {
        let preserving = preserves_domination(g, h, &phi);
        match complete_isomorphism(g, h, &phi).expect("small") {
            Some((p, xi)) => {
                if !preserving || p != phi || !is_graph_isomorphism(g, h, &phi, &xi) {
                    out.push(bipartite_failure(
                        "completed isomorphism is valid",
                        format!("{} phi={phi:?}", edges()),
                    ));
                }
            }
            None if preserving => {
                out.push(bipartite_failure(
                    "domination-preserving bijection completes",
                    format!("{} phi={phi:?}", edges()),
                ));
            }
            None => {}
        }
    }
    out
}

fn bipartite_suite(graphs: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(BipartiteGraph, BipartiteGraph)> = (0..graphs)
        .map(|_| {
            let g = random_graph(&mut rng);
            let mut phi: Vec<usize> = (0..g.upper()).collect();
            let mut xi: Vec<usize> = (0..g.lower()).collect();
            phi.shuffle(&mut rng);
            xi.shuffle(&mut rng);
            // Half the partners are relabelled copies, half are fresh graphs
            // of the same shape, so both outcomes of completion occur.
            let h = if rng.gen_bool(0.5) {
                relabel_graph(&g, &phi, &xi)
            } else {
                let mut other = random_graph(&mut rng);
                while other.upper() != g.upper() || other.lower() != g.lower() {
                    other = random_graph(&mut rng);
                }
                other
            };
            (g, h)
        })
        .collect();
    let failures = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (g, h))| check_graph(i, g, h))
        .collect::<Vec<_>>()
        .concat();
    SuiteReport {
        name: "lemma-bipartite".into(),
        universe: format!("{graphs} random bipartite graphs with |U| <= 6, |X| <= 8, seed {seed}"),
        instances: graphs,
        failures,
        wall_time: Duration::ZERO,
    }
}

fn reuter_check(l: &FiniteLattice) -> Vec<Failure> {
    let check = "Reuter identity";
    let skel = match lift(skeleton(l), check, l) {
        Ok(s) => s,
        Err(f) => return vec![f],
    };
    let k = &skel.skeleton;
    let mut out = Vec::new();
    for alpha in 0..k.len() {
        let block = &skel.blocks[alpha];
        for kk in [1, 2] {
            let lhs = block
                .members
                .iter()
                .filter(|&x| {
                    let in_l = l.lower_covers(x).len();
                    let in_block = l
                        .lower_covers(x)
                        .iter()
                        .filter(|&&c| block.members.contains(c))
                        .count();
                    in_l == kk && in_block == kk
                })
                .count() as i64;
            let rhs: i64 = k
                .poset()
                .down_set(alpha)
                .iter()
                .map(|beta| {
                    k.poset().mobius(beta, alpha) * jk_count_in(l, &skel, alpha, beta, kk) as i64
                })
                .sum();
            if lhs != rhs {
                out.push(failure(
                    check,
                    format!("block {alpha}, k={kk}: {lhs} vs {rhs}"),
                    &[l],
                ));
            }
        }
    }
    out
}

fn reuter(max_size: usize) -> Result<SuiteReport> {
    let modular: Vec<FiniteLattice> = lattices_up_to(max_size)?
        .into_iter()
        .filter(FiniteLattice::is_modular)
        .collect();
    Ok(run_each(
        "reuter-k2",
        format!("modular lattices with at most {max_size} elements, k in {{1, 2}}"),
        &modular,
        reuter_check,
    ))
}

fn length_drop(max_size: usize) -> Result<SuiteReport> {
    let universe = lattices_up_to(max_size)?;
    Ok(run_each(
        "length-drop",
        format!("lattices with at most {max_size} elements"),
        &universe,
        |l| {
            let check = "skeleton is strictly shorter";
            collect([lift(skeleton(l), check, l).and_then(|s| {
                ensure(
                    l.len() == 1 || s.skeleton.length() < l.length(),
                    check,
                    || format!("length {} vs {}", s.skeleton.length(), l.length()),
                    l,
                )
            })])
        },
    ))
}

/// Distributive lattices (from posets on `0..=max_ji` elements accepted by
/// `keep`) with their Herrmann ranks, in generation order.
fn ranked_distributive(
    max_ji: usize,
    keep: impl Fn(&crate::poset::Poset) -> bool,
) -> Result<Vec<Vec<(FiniteLattice, usize)>>> {
    poset_levels_where(max_ji, keep)
        .into_iter()
        .map(|level| {
            level
                .par_iter()
                .map(|p| {
                    let (l, _) = downset_lattice_capped(p, usize::MAX)?;
                    let rank = herrmann_rank(&l)?;
                    Ok((l, rank))
                })
                .collect()
        })
        .collect()
}

/// Two non-isomorphic distributive lattices of Herrmann rank 3 with
/// isomorphic weighted double skeletons, scanning `|Ji|` upwards.
pub fn search_rank3_counterexample(
    max_ji: usize,
) -> Result<Option<(FiniteLattice, FiniteLattice)>> {
    for level in ranked_distributive(max_ji, |_| true)? {
        // Isomorphic skeletons force equal ranks and, by the block counts,
        // equal numbers of join-irreducibles.
        let candidates: Vec<FiniteLattice> = level
            .into_iter()
            .filter(|(_, r)| *r == 3)
            .map(|(l, _)| l)
            .collect();
        let skeletons: Vec<WeightedDoubleSkeleton> = candidates
            .par_iter()
            .map(crate::wds::extract_wds)
            .collect::<Result<_>>()?;
        for class in wds_classes(&skeletons) {
            for (i, &a) in class.iter().enumerate() {
                if let Some(&b) = class[i + 1..]
                    .iter()
                    .find(|&&b| are_isomorphic(&candidates[a], &candidates[b]).is_none())
                {
                    return Ok(Some((candidates[a].clone(), candidates[b].clone())));
                }
            }
        }
    }
    Ok(None)
}

/// A distributive lattice with ji-length at most 1 and Herrmann rank at least 3.
pub fn search_ji1_not_h2(max_ji: usize) -> Result<Option<FiniteLattice>> {
    for level in ranked_distributive(max_ji, |p| p.length() <= 1)? {
        if let Some((l, _)) = level.into_iter().find(|(_, r)| *r >= 3) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteBounds {
        SuiteBounds {
            max_ji: Some(3),
            max_size: Some(5),
            graphs: 20,
            ..SuiteBounds::default()
        }
    }

    #[test]
    fn all_suites_pass_on_small_bounds() {
        for report in run_all(&small()).unwrap() {
            assert!(report.passed(), "{}", report.render());
            assert!(report.instances > 0, "{}", report.name);
        }
    }

    #[test]
    fn unknown_and_empty() {
        assert_eq!(
            run_suite("no-such-suite", &small()).unwrap_err().name(),
            "UnknownSuite"
        );
        let empty = SuiteBounds {
            max_size: Some(0),
            ..small()
        };
        let r = run_suite("length-drop", &empty).unwrap();
        assert_eq!(r.instances, 0);
        assert!(r.passed());
    }

    #[test]
    fn render_is_stable() {
        let r = SuiteReport {
            name: "x".into(),
            universe: "u".into(),
            instances: 2,
            failures: vec![failure("c", "d", &[&FiniteLattice::chain(1)])],
            wall_time: Duration::from_millis(5),
        };
        assert_eq!(
            r.render(),
            "FAIL x: 2 instances, 1 failures (u)\n  c: d\n    lattice witness1\n    elements 2\n    covers\n    0 1\n    end\n"
        );
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let one = run_suite(
            "lemma-blocks",
            &SuiteBounds {
                jobs: Some(1),
                ..small()
            },
        )
        .unwrap();
        let many = run_suite(
            "lemma-blocks",
            &SuiteBounds {
                jobs: Some(4),
                ..small()
            },
        )
        .unwrap();
        assert_eq!(one.render(), many.render());
    }
}
