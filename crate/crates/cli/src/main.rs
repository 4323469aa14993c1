use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use latskel_core::dot::{lattice_dot, wds_dot};
use latskel_core::reconstruct::reconstruct;
use latskel_core::skeleton::{herrmann_rank, is_h_irreducible, iterated_skeletons, skeleton};
use latskel_core::suites::{
    run_all, run_suite, search_ji1_not_h2, search_rank3_counterexample, SuiteBounds, DEFAULT_SEED,
};
use latskel_core::text::{parse_lattice, write_lattice, NamedLattice};
use latskel_core::wds::{extract_wds, WeightedDoubleSkeleton};
use latskel_core::Error;

/// Skeletons, Herrmann ranks and weighted double skeletons of finite lattices.
#[derive(Parser)]
#[command(name = "latskel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary invariants of a lattice.
    Analyze { file: PathBuf },
    /// The skeleton S(L) in lattice format, with its blocks as comments.
    Skeleton {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Herrmann rank and the sizes of the iterated skeletons.
    Rank { file: PathBuf },
    /// The weighted double skeleton as JSON.
    Wds {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a distributive lattice from a weighted double skeleton.
    Reconstruct {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_ji: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Random bipartite graphs for lemma-bipartite.
        #[arg(long, default_value_t = 500)]
        graphs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print the reports as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Print per-suite wall time to stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Search small distributive lattices for separating examples.
    Search {
        kind: SearchKind,
        #[arg(long, default_value_t = 8)]
        max_ji: usize,
        /// Directory receiving the witnesses in lattice format.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hasse diagram in DOT, of a lattice file or a weighted double skeleton.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size of a lattice file against its weighted double skeleton.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    /// Non-isomorphic rank-3 lattices with isomorphic weighted double skeletons.
    Rank3,
    /// A lattice with ji-length at most 1 and rank at least 3.
    Ji1NotH2,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<NamedLattice> {
    Ok(parse_lattice(&read(path)?)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analyze(path: &Path) -> Result<()> {
    let l = load(path)?.lattice;
    println!(
        "n={} length={} atoms={} ji={} jiLength={} distributive={} rank={} modular={} h1={} h2={}",
        l.len(),
        l.length(),
        l.atoms().len(),
        l.join_irreducibles().len(),
        l.ji_length(),
        yes_no(l.is_distributive()),
        herrmann_rank(&l)?,
        yes_no(l.is_modular()),
        yes_no(is_h_irreducible(&l, 1)?),
        yes_no(is_h_irreducible(&l, 2)?),
    );
    Ok(())
}

fn skeleton_cmd(path: &Path, output: Option<&Path>) -> Result<()> {
    let named = load(path)?;
    let s = skeleton(&named.lattice)?;
    let mut text = String::new();
    for (i, b) in s.blocks.iter().enumerate() {
        text.push_str(&format!("# block {i} = [{}, {}]\n", b.lo, b.hi));
    }
    text.push_str(&write_lattice(&format!("S({})", named.name), &s.skeleton));
    emit(output, &text)
}

fn rank(path: &Path) -> Result<()> {
    let l = load(path)?.lattice;
    let sizes: Vec<String> = iterated_skeletons(&l)?
        .iter()
        .map(|s| s.len().to_string())
        .collect();
    println!("rank={} sizes={}", sizes.len() - 1, sizes.join(","));
    Ok(())
}

fn verify(suite: &str, bounds: &SuiteBounds, json: bool, timing: bool) -> Result<bool> {
    let reports = if suite == "all" {
        run_all(bounds)?
    } else {
        vec![run_suite(suite, bounds)?]
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            print!("{}", r.render());
        }
    }
    if timing {
        for r in &reports {
            eprintln!("{}: {:.2?}", r.name, r.wall_time);
        }
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn write_witness(
    dir: Option<&Path>,
    file: &str,
    name: &str,
    l: &latskel_core::FiniteLattice,
) -> Result<()> {
    let text = write_lattice(name, l);
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(file);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn search(kind: SearchKind, max_ji: usize, output: Option<&Path>) -> Result<()> {
    match kind {
        SearchKind::Rank3 => match search_rank3_counterexample(max_ji)? {
            Some((a, b)) => {
                println!(
                    "found: {} and {} elements, {} join-irreducibles, rank 3",
                    a.len(),
                    b.len(),
                    a.join_irreducibles().len()
                );
                write_witness(output, "rank3-1.txt", "rank3-1", &a)?;
                write_witness(output, "rank3-2.txt", "rank3-2", &b)
            }
            None => {
                println!("none with at most {max_ji} join-irreducibles");
                Ok(())
            }
        },
        SearchKind::Ji1NotH2 => match search_ji1_not_h2(max_ji)? {
            Some(l) => {
                println!(
                    "found: {} elements, {} join-irreducibles, rank {}",
                    l.len(),
                    l.join_irreducibles().len(),
                    herrmann_rank(&l)?
                );
                write_witness(output, "ji1-not-h2.txt", "ji1-not-h2", &l)
            }
            None => {
                println!("none with at most {max_ji} join-irreducibles");
                Ok(())
            }
        },
    }
}

fn dot(path: &Path, output: Option<&Path>) -> Result<()> {
    let src = read(path)?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("L");
    let text = if src.trim_start().starts_with('{') {
        wds_dot(name, &WeightedDoubleSkeleton::from_json(&src)?)
    } else {
        let named = parse_lattice(&src)?;
        lattice_dot(&named.name, &named.lattice)
    };
    emit(output, &text)
}

fn stats(path: &Path) -> Result<()> {
    let src = read(path)?;
    let l = parse_lattice(&src)?.lattice;
    let json = extract_wds(&l)?.to_json();
    println!(
        "elements={} ji={} lattice_bytes={} wds_bytes={}",
        l.len(),
        l.join_irreducibles().len(),
        src.len(),
        json.len()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze { file } => analyze(&file)?,
        Command::Skeleton { file, output } => skeleton_cmd(&file, output.as_deref())?,
        Command::Rank { file } => rank(&file)?,
        Command::Wds { file, output } => {
            let l = load(&file)?.lattice;
            emit(output.as_deref(), &(extract_wds(&l)?.to_json() + "\n"))?;
        }
        Command::Reconstruct { file, output } => {
            let s = WeightedDoubleSkeleton::from_json(&read(&file)?)?;
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("L");
            emit(
                output.as_deref(),
                &write_lattice(name, &reconstruct(&s)?.lattice),
            )?;
        }
        Command::Verify {
            suite,
            max_ji,
            max_size,
            jobs,
            graphs,
            seed,
            json,
            timing,
        } => {
            let bounds = SuiteBounds {
                max_ji,
                max_size,
                graphs,
                seed,
                jobs,
            };
            return verify(&suite, &bounds, json, timing);
        }
        Command::Search {
            kind,
            max_ji,
            output,
        } => search(kind, max_ji, output.as_deref())?,
        Command::Dot { file, output } => dot(&file, output.as_deref())?,
        Command::Stats { file } => stats(&file)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(err) => eprintln!("error: {}: {err}", err.name()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
