use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use latskel_core::enumerate::{distributive_by_ji, enumerate_posets, lattices_up_to};
use latskel_core::iso::are_isomorphic;
use latskel_core::skeleton::{herrmann_rank, is_h_irreducible};
use latskel_core::suites::{run_suite, SuiteBounds, SuiteReport};
use latskel_core::text::parse_lattice;
use latskel_core::wds::{extract_wds, wds_isomorphic};
use latskel_core::FiniteLattice;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Distributive lattices on 1..=12 elements.
const DISTRIBUTIVE_COUNTS: [usize; 12] = [1, 1, 1, 2, 3, 5, 8, 15, 26, 47, 82, 151];
/// Modular lattices on 1..=8 elements.
const MODULAR_COUNTS: [usize; 8] = [1, 1, 1, 2, 4, 8, 16, 34];

fn latskel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latskel"))
        .args(args)
        .output()
        .expect("latskel runs")
}

fn suite(name: &str, bounds: SuiteBounds, expected: usize, limit: Duration) -> Outcome {
    let start = Instant::now();
    let r: SuiteReport = run_suite(name, &bounds).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !r.passed() {
        return Err(r.render());
    }
    if r.instances != expected {
        return Err(format!("{} instances, expected {expected}", r.instances));
    }
    if elapsed > limit {
        return Err(format!("took {elapsed:.1?}, limit {limit:?}"));
    }
    Ok(format!(
        "{} instances, 0 failures, {elapsed:.1?}",
        r.instances
    ))
}

fn max_ji(k: usize) -> SuiteBounds {
    SuiteBounds {
        max_ji: Some(k),
        ..SuiteBounds::default()
    }
}

fn max_size(n: usize) -> SuiteBounds {
    SuiteBounds {
        max_size: Some(n),
        ..SuiteBounds::default()
    }
}

fn round_trip() -> Outcome {
    let expected = (0..=5)
        .flat_map(|n| enumerate_posets(n).unwrap())
        .filter(|p| p.length() <= 1)
        .count();
    suite("theorem-c", max_ji(5), expected, Duration::from_secs(120))
}

fn sigma_determines_h2() -> Outcome {
    let expected = distributive_by_ji(5)
        .iter()
        .filter(|(_, l)| is_h_irreducible(l, 2).unwrap())
        .count();
    suite("theorem-b", max_ji(5), expected, Duration::from_secs(300))
}

fn modular_h2_is_shallow() -> Outcome {
    let modular: Vec<FiniteLattice> = lattices_up_to(8)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|l| l.is_modular())
        .collect();
    for l in &modular {
        if is_h_irreducible(l, 2).unwrap() && l.ji_length() > 1 {
            return Err(format!("{}-element counterexample", l.len()));
        }
    }
    suite(
        "theorem-a",
        max_size(8),
        MODULAR_COUNTS.iter().sum(),
        Duration::from_secs(600),
    )
}

fn load(path: &Path) -> Result<FiniteLattice, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_lattice(&src).map_err(|e| e.to_string())?.lattice)
}

fn search_witnesses() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().unwrap();
    let mut found_at = None;
    for k in 1..=8 {
        let o = latskel(&["search", "rank3", "--max-ji", &k.to_string(), "-o", out]);
        if !o.status.success() {
            return Err(String::from_utf8_lossy(&o.stderr).into_owned());
        }
        if dir.path().join("rank3-1.txt").exists() {
            found_at = Some(k);
            break;
        }
    }
    let k = found_at.ok_or("no rank-3 pair with at most 8 join-irreducibles")?;
    let a = load(&dir.path().join("rank3-1.txt"))?;
    let b = load(&dir.path().join("rank3-2.txt"))?;
    if are_isomorphic(&a, &b).is_some() {
        return Err("rank-3 witnesses are isomorphic".into());
    }
    if wds_isomorphic(&extract_wds(&a).unwrap(), &extract_wds(&b).unwrap()).is_none() {
        return Err("rank-3 witnesses have different skeletons".into());
    }
    if herrmann_rank(&a).unwrap() != 3 || herrmann_rank(&b).unwrap() != 3 {
        return Err("rank-3 witnesses do not have rank 3".into());
    }

    let o = latskel(&["search", "ji1-not-h2", "--max-ji", "8", "-o", out]);
    if !o.status.success() || !dir.path().join("ji1-not-h2.txt").exists() {
        return Err("no shallow lattice of rank at least 3".into());
    }
    let c = load(&dir.path().join("ji1-not-h2.txt"))?;
    let rank = herrmann_rank(&c).unwrap();
    if !c.is_distributive() || c.ji_length() > 1 || rank < 3 {
        return Err("shallow witness fails re-verification".into());
    }
    Ok(format!(
        "rank-3 pair of size {} found at |Ji| <= {k}; shallow lattice of size {} has rank {rank}",
        a.len(),
        c.len()
    ))
}

fn ji_count() -> Outcome {
    suite(
        "lemma-31",
        max_size(12),
        DISTRIBUTIVE_COUNTS.iter().sum(),
        Duration::from_secs(60),
    )
}

fn reuter() -> Outcome {
    suite(
        "reuter-k2",
        max_size(8),
        MODULAR_COUNTS.iter().sum(),
        Duration::from_secs(600),
    )
}

fn bipartite() -> Outcome {
    suite(
        "lemma-bipartite",
        SuiteBounds::default(),
        500,
        Duration::from_secs(600),
    )
}

fn structural() -> Outcome {
    let small = lattices_up_to(7).map_err(|e| e.to_string())?.len();
    let a = suite(
        "lemma-blocks",
        SuiteBounds {
            max_ji: Some(5),
            max_size: Some(7),
            ..SuiteBounds::default()
        },
        small + distributive_by_ji(5).len(),
        Duration::from_secs(600),
    )?;
    let b = suite("length-drop", max_size(7), small, Duration::from_secs(600))?;
    Ok(format!("lemma-blocks {a}; length-drop {b}"))
}

fn determinism() -> Outcome {
    let first = latskel(&["verify", "--suite", "all"]);
    let second = latskel(&["verify", "--suite", "all"]);
    if !first.status.success() {
        return Err(String::from_utf8_lossy(&first.stdout).into_owned());
    }
    if first.stdout != second.stdout {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("round trip on shallow distributive lattices", round_trip),
        (
            "skeleton determines H2-irreducible lattices",
            sigma_determines_h2,
        ),
        (
            "modular H2-irreducible lattices are shallow",
            modular_h2_is_shallow,
        ),
        ("rank-3 and shallow separating examples", search_witnesses),
        ("block join-irreducible count formula", ji_count),
        ("Reuter identity for k in {1, 2}", reuter),
        ("bipartite sieves and isomorphism completion", bipartite),
        ("structural block properties", structural),
        ("deterministic verify reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
