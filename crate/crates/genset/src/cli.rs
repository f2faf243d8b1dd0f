//! Command-line front end: gen, verify, analyze, search, sample, stability
//! and counterexample subcommands, JSON/text/CSV reports, and the exit-code
//! contract (0 success or verified-true, 1 verified-false, 2 usage,
//! 3 parse, 4 capacity).
//!
//! Every command is deterministic given its full flag set; randomized
//! commands take an explicit `--seed` (default 0, never time-based) and the
//! full configuration is echoed into each JSON report.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kneser::{
    chromatic_number, clique_count, clique_density, complete, disjointness_graph, hom_density,
};
use crate::sampling::{
    analytic_tail_bound, empirical_union_tail, estimate_blowup_density,
    estimate_odd_cycle_density, odd_cycle_subset_test, DensityEstimate,
};
use crate::search::{
    counterexample_family, min_generator_size, verify_kneser_blowup, Budget, SearchMode,
    SearchStatus,
};
use crate::setfam::{
    balanced_partition, canonical_generator, canonical_size, counting_lower_bound,
    enumerate_k_unions, enumerate_k_unions_overlapping, SetFamily,
};
use crate::stability::{bipartization_distance_exact, extract_k_partition, StabilityReport};

/// Largest disjointness graph cmd_analyze will take apart.
const ANALYZE_MAX_ORDER: usize = 512;

#[derive(Parser, Debug)]
#[command(name = "genset", version, about = "Set-family generators, disjointness graphs, and exact minimum-generator search")]
pub struct Cli {
    /// Worker threads (falls back to GENSET_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report format. Nested reports are JSON-only; CSV covers flat tables.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub format: OutFormat,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Write the canonical k-generator of [n] in the family text format.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a family file is a k-generator (exit 0) or not (exit 1).
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        input: PathBuf,
    },
    /// Clique counts and densities, chromatic number, bipartization distance
    /// and the stability report for the disjointness graph of a family.
    Analyze {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        input: PathBuf,
        /// Also write the disjointness graph in the exchange format.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Exact minimum k-generator (or k-base) search.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Search k-bases (overlapping unions) instead of k-generators.
        #[arg(long)]
        base: bool,
        /// Enumerate all optimum families.
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Echoed for reproducibility; the search itself is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded Monte Carlo estimators.
    Sample {
        #[command(subcommand)]
        what: SampleCmd,
    },
    /// The blown-up Kneser counterexample family on n = 6m elements.
    Counterexample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the exhaustive blow-up adjacency verification (n <= 12).
        #[arg(long)]
        verify_blowup: bool,
    },
    /// Extract a k-partition of the disjointness graph with the removal
    /// bound (the make-k-partite pipeline).
    Stability {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum SampleCmd {
    /// Density of K_parts ⊗ t via pairwise-disjoint unions of random members.
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        parts: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 10000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Density of C_{2l+1} ⊗ t via cyclic disjointness, or (with
    /// --subset-s) the odd-cycle probability of a random (2s+1)-subset.
    Oddcycle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 10000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Estimate Pr(random (2s+1)-subset induces an odd cycle) instead.
        #[arg(long)]
        subset_s: Option<usize>,
    },
    /// Pr(|union of t random members| <= theta·n) against the analytic bound.
    Tail {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        /// Rational threshold, e.g. 1/2 or 3/4.
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 10000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn init_threads(threads: Option<usize>) {
    let n = threads.or_else(|| {
        std::env::var("GENSET_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 3,
        Error::Capacity(_) => 4,
        Error::Io(_) => 3,
        _ => 2,
    }
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |x: &str| -> Result<num::BigInt> {
        x.trim()
            .parse::<num::BigInt>()
            .map_err(|e| Error::invalid(format!("bad rational `{s}`: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == num::BigInt::from(0) {
                return Err(Error::invalid("rational with zero denominator"));
            }
            Ok(BigRational::new(parse_int(p)?, denom))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn rat_str(r: &BigRational) -> String {
    r.to_string()
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Gen { n, k, out } => cmd_gen(*n, *k, out.as_deref(), cli.format),
        Cmd::Verify { k, input } => cmd_verify(*k, input, cli.format),
        Cmd::Analyze {
            k,
            input,
            emit_graph,
        } => cmd_analyze(*k, input, emit_graph.as_deref(), cli.format),
        Cmd::Search {
            n,
            k,
            base,
            enumerate,
            budget_seconds,
            budget_nodes,
            seed,
        } => cmd_search(
            *n,
            *k,
            *base,
            *enumerate,
            *budget_seconds,
            *budget_nodes,
            *seed,
            cli.format,
        ),
        Cmd::Sample { what } => cmd_sample(what, cli.format),
        Cmd::Counterexample {
            n,
            out,
            verify_blowup,
        } => cmd_counterexample(*n, out.as_deref(), *verify_blowup, cli.format),
        Cmd::Stability { k, input } => cmd_stability(*k, input, cli.format),
    }
}

fn require_json_or_text(format: OutFormat) -> Result<()> {
    if format == OutFormat::Csv {
        return Err(Error::invalid(
            "this report is nested; CSV covers only flat tables (gen, verify)",
        ));
    }
    Ok(())
}

fn emit<T: Serialize>(report: &T, format: OutFormat) -> Result<()> {
    match format {
        OutFormat::Json => println!("{}", serde_json::to_string(report).expect("serializable")),
        OutFormat::Text => {
            let value = serde_json::to_value(report).expect("serializable");
            print_text(&value, "");
        }
        OutFormat::Csv => unreachable!("csv handled per command"),
    }
    Ok(())
}

fn print_text(value: &serde_json::Value, prefix: &str) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, val) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                print_text(val, &path);
            }
        }
        serde_json::Value::Array(items) if items.len() > 8 => {
            println!("{prefix} = [{} items]", items.len());
        }
        other => println!("{prefix} = {other}"),
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GenConfig<'a> {
    cmd: &'static str,
    n: u32,
    k: u32,
    out: Option<&'a str>,
}

#[derive(Serialize)]
struct GenReport<'a> {
    config: GenConfig<'a>,
    canonical_size: u64,
    family_size: u64,
}

fn cmd_gen(n: u32, k: u32, out: Option<&std::path::Path>, format: OutFormat) -> Result<i32> {
    let size = canonical_size(n, k)?;
    if size > 2_000_000 {
        return Err(Error::capacity(format!(
            "canonical family has {size} members; refusing to materialize"
        )));
    }
    let partition = balanced_partition(n, k)?;
    let family = canonical_generator(&partition);
    debug_assert_eq!(family.len() as u64, size);
    match out {
        Some(path) => {
            family.write_file(path)?;
            let report = GenReport {
                config: GenConfig {
                    cmd: "gen",
                    n,
                    k,
                    out: path.to_str(),
                },
                canonical_size: size,
                family_size: family.len() as u64,
            };
            match format {
                OutFormat::Csv => {
                    println!("n,k,canonical_size,family_size");
                    println!("{n},{k},{size},{}", family.len());
                }
                other => emit(&report, other)?,
            }
        }
        None => {
            // family file on stdout; the size line goes to stderr
            print!("{}", family.to_text());
            eprintln!("canonical_size={size}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyConfig<'a> {
    cmd: &'static str,
    k: u32,
    input: &'a str,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: VerifyConfig<'a>,
    n: u32,
    k: u32,
    family_size: u64,
    covered: u64,
    total: u64,
    is_generator: bool,
    is_base: bool,
    canonical_size: u64,
    counting_lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered_witness: Option<String>,
}

fn cmd_verify(k: u32, input: &std::path::Path, format: OutFormat) -> Result<i32> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let family = SetFamily::read_file(input)?;
    let n = family.ground_n();
    let coverage = enumerate_k_unions(&family, k as usize)?;
    let covered = coverage.count_covered();
    let total = 1u64 << n;
    let is_generator = covered == total;
    let is_base = if is_generator {
        true
    } else {
        enumerate_k_unions_overlapping(&family, k as usize)?.is_full()
    };
    let witness = coverage.first_uncovered().map(|m| m.to_string());
    let report = VerifyReport {
        config: VerifyConfig {
            cmd: "verify",
            k,
            input: input.to_str().unwrap_or(""),
        },
        n,
        k,
        family_size: family.len() as u64,
        covered,
        total,
        is_generator,
        is_base,
        canonical_size: if k <= n { canonical_size(n, k)? } else { 0 },
        counting_lower_bound: if k <= n { counting_lower_bound(n, k) } else { 0 },
        uncovered_witness: witness,
    };
    match format {
        OutFormat::Csv => {
            println!("n,k,family_size,covered,total,is_generator,is_base");
            println!(
                "{n},{k},{},{covered},{total},{is_generator},{is_base}",
                family.len()
            );
        }
        other => emit(&report, other)?,
    }
    Ok(if is_generator { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AnalyzeConfig<'a> {
    cmd: &'static str,
    k: u32,
    input: &'a str,
    emit_graph: Option<&'a str>,
}

#[derive(Serialize)]
struct StabilityJson {
    k: usize,
    order: usize,
    alpha: String,
    beta: String,
    gamma: String,
    psi: String,
    chosen_clique: Vec<usize>,
    f_value_of_chosen: u64,
    partition: Vec<Vec<usize>>,
    removed_edges: u64,
    removed: Vec<(usize, usize)>,
    hypotheses_hold: bool,
    bound_holds: bool,
}

impl From<&StabilityReport> for StabilityJson {
    fn from(r: &StabilityReport) -> Self {
        StabilityJson {
            k: r.k,
            order: r.order,
            alpha: rat_str(&r.alpha),
            beta: rat_str(&r.beta),
            gamma: rat_str(&r.gamma),
            psi: rat_str(&r.psi),
            chosen_clique: r.chosen_clique.clone(),
            f_value_of_chosen: r.f_value_of_chosen,
            partition: r.partition.clone(),
            removed_edges: r.removed_edges,
            removed: r.removed.clone(),
            hypotheses_hold: r.hypotheses_hold,
            bound_holds: r.bound_holds,
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    config: AnalyzeConfig<'a>,
    n: u32,
    k: u32,
    family_size: u64,
    graph_order: usize,
    graph_edges: u64,
    /// K_r for r = 0..=k+1.
    clique_counts: Vec<u64>,
    clique_densities: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chromatic_number: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartization_distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability: Option<StabilityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability_error: Option<String>,
}

fn cmd_analyze(
    k: u32,
    input: &std::path::Path,
    emit_graph: Option<&std::path::Path>,
    format: OutFormat,
) -> Result<i32> {
    require_json_or_text(format)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k + 1 > 8 {
        return Err(Error::capacity("analyze caps k at 7"));
    }
    let family = SetFamily::read_file(input)?;
    let graph = disjointness_graph(&family)?;
    if graph.order() > ANALYZE_MAX_ORDER {
        return Err(Error::capacity(format!(
            "analyze caps the graph order at {ANALYZE_MAX_ORDER}, got {}",
            graph.order()
        )));
    }
    if let Some(path) = emit_graph {
        std::fs::write(path, graph.to_text())?;
    }
    let mut clique_counts = Vec::new();
    let mut clique_densities = Vec::new();
    for r in 0..=(k as usize + 1) {
        let count = clique_count(&graph, r);
        clique_counts.push(
            u64::try_from(count).map_err(|_| Error::capacity("clique count overflows u64"))?,
        );
        clique_densities.push(rat_str(&clique_density(&graph, r).value));
    }
    let chromatic = if graph.order() <= 30 {
        Some(chromatic_number(&graph)?)
    } else {
        None
    };
    let bipart = if graph.order() <= 24 {
        Some(bipartization_distance_exact(&graph)?)
    } else {
        None
    };
    let (stability, stability_error) = if k >= 2 && graph.order() <= 64 {
        match extract_k_partition(&graph, k as usize) {
            Ok(report) => (Some(StabilityJson::from(&report)), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, Some("stability extraction needs k >= 2 and order <= 64".into()))
    };
    let report = AnalyzeReport {
        config: AnalyzeConfig {
            cmd: "analyze",
            k,
            input: input.to_str().unwrap_or(""),
            emit_graph: emit_graph.and_then(|p| p.to_str()),
        },
        n: family.ground_n(),
        k,
        family_size: family.len() as u64,
        graph_order: graph.order(),
        graph_edges: graph.edge_count(),
        clique_counts,
        clique_densities,
        chromatic_number: chromatic,
        bipartization_distance: bipart,
        stability,
        stability_error,
    };
    emit(&report, format)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SearchConfig {
    cmd: &'static str,
    n: u32,
    k: u32,
    base: bool,
    enumerate: bool,
    budget_seconds: Option<f64>,
    budget_nodes: Option<u64>,
    seed: u64,
}

#[derive(Serialize)]
struct SearchReport {
    config: SearchConfig,
    n: u32,
    k: u32,
    mode: SearchMode,
    min_size: u64,
    proven_lower: u64,
    canonical_size: u64,
    counting_lower_bound: u64,
    status: SearchStatus,
    nodes: u64,
    optima_count: u64,
    optima_count_exact: bool,
    optima: Vec<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: u32,
    k: u32,
    base: bool,
    enumerate: bool,
    budget_seconds: Option<f64>,
    budget_nodes: Option<u64>,
    seed: u64,
    format: OutFormat,
) -> Result<i32> {
    require_json_or_text(format)?;
    let mode = if base {
        SearchMode::Base
    } else {
        SearchMode::Generator
    };
    let budget = Budget {
        max_nodes: budget_nodes,
        max_seconds: budget_seconds,
        ..Budget::default()
    };
    let result = min_generator_size(n, k, mode, enumerate, &budget)?;
    let report = SearchReport {
        config: SearchConfig {
            cmd: "search",
            n,
            k,
            base,
            enumerate,
            budget_seconds,
            budget_nodes,
            seed,
        },
        n,
        k,
        mode,
        min_size: result.min_size,
        proven_lower: result.proven_lower,
        canonical_size: canonical_size(n, k)?,
        counting_lower_bound: counting_lower_bound(n, k),
        status: result.status,
        nodes: result.nodes,
        optima_count: result.optima.len() as u64,
        optima_count_exact: result.optima_count_exact,
        optima: result.optima.iter().map(|f| f.to_text()).collect(),
    };
    emit(&report, format)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SampleConfig<'a> {
    cmd: &'static str,
    mode: &'static str,
    input: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset_s: Option<usize>,
    trials: u64,
    seed: u64,
}

#[derive(Serialize)]
struct SampleReport<'a> {
    config: SampleConfig<'a>,
    mean: f64,
    std_error: f64,
    trials: u64,
    seed: u64,
    successes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper95: Option<f64>,
    /// Exact value, when cheap to compute on the instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    /// The exact analytic tail bound, for tail mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic_bound: Option<String>,
}

/// Exact homomorphism density of K_parts ⊗ t (or C_{2l+1} ⊗ t) in the
/// disjointness graph, when the pattern fits the exact-counting caps and the
/// family has no empty member (with ∅ the sampled event differs from the
/// homomorphism event).
fn exact_blowup_density(f: &SetFamily, parts: usize, t: usize) -> Option<String> {
    use crate::kneser::{blow_up, BlowupSpec};
    if parts * t > 12 || f.len() > 64 || f.iter().any(|m| m.is_empty()) {
        return None;
    }
    let g = disjointness_graph(f).ok()?;
    let pattern = complete(parts).ok()?;
    let blown = blow_up(&pattern, &BlowupSpec::uniform(parts, t as u32).ok()?).ok()?;
    hom_density(&blown, &g).ok().map(|d| rat_str(&d))
}

fn exact_odd_cycle_density(f: &SetFamily, l: usize, t: usize) -> Option<String> {
    use crate::kneser::{blow_up, cycle, BlowupSpec};
    let len = 2 * l + 1;
    if len * t > 12 || f.len() > 64 || f.iter().any(|m| m.is_empty()) {
        return None;
    }
    let g = disjointness_graph(f).ok()?;
    let pattern = cycle(len).ok()?;
    let blown = blow_up(&pattern, &BlowupSpec::uniform(len, t as u32).ok()?).ok()?;
    hom_density(&blown, &g).ok().map(|d| rat_str(&d))
}

/// Exact Pr(|union of t members| <= theta n) by enumerating |f|^t draws,
/// when that stays small.
fn exact_union_tail(f: &SetFamily, t: usize, theta: &BigRational) -> Option<String> {
    let m = f.len() as u128;
    let total = m.checked_pow(t as u32)?;
    if total > 2_000_000 {
        return None;
    }
    let n = f.ground_n();
    let bound = theta * BigRational::from_integer(n.into());
    let mut hits = 0u128;
    let mut stack = vec![(0usize, 0u32)];
    // iterative enumeration of all t-tuples
    let members = f.members();
    while let Some((depth, acc)) = stack.pop() {
        if depth == t {
            let card = BigRational::from_integer(acc.count_ones().into());
            if card <= bound {
                hits += 1;
            }
            continue;
        }
        for mem in members {
            stack.push((depth + 1, acc | mem.bits()));
        }
    }
    Some(rat_str(&BigRational::new(
        num::BigInt::from(hits),
        num::BigInt::from(total),
    )))
}

fn cmd_sample(what: &SampleCmd, format: OutFormat) -> Result<i32> {
    require_json_or_text(format)?;
    let (config, est, exact, analytic): (SampleConfig, DensityEstimate, Option<String>, Option<String>);
    match what {
        SampleCmd::Blowup {
            input,
            parts,
            t,
            trials,
            seed,
        } => {
            let f = SetFamily::read_file(input)?;
            est = estimate_blowup_density(&f, *parts, *t, *trials, *seed)?;
            exact = exact_blowup_density(&f, *parts, *t);
            analytic = None;
            config = SampleConfig {
                cmd: "sample",
                mode: "blowup",
                input: input.to_str().unwrap_or(""),
                parts: Some(*parts),
                l: None,
                t: Some(*t),
                theta: None,
                subset_s: None,
                trials: *trials,
                seed: *seed,
            };
        }
        SampleCmd::Oddcycle {
            input,
            l,
            t,
            trials,
            seed,
            subset_s,
        } => {
            let f = SetFamily::read_file(input)?;
            match subset_s {
                Some(s) => {
                    est = odd_cycle_subset_test(&f, *s, *trials, *seed)?;
                    exact = None;
                }
                None => {
                    est = estimate_odd_cycle_density(&f, *l, *t, *trials, *seed)?;
                    exact = exact_odd_cycle_density(&f, *l, *t);
                }
            }
            analytic = None;
            config = SampleConfig {
                cmd: "sample",
                mode: "oddcycle",
                input: input.to_str().unwrap_or(""),
                parts: None,
                l: Some(*l),
                t: Some(*t),
                theta: None,
                subset_s: *subset_s,
                trials: *trials,
                seed: *seed,
            };
        }
        SampleCmd::Tail {
            input,
            t,
            theta,
            trials,
            seed,
        } => {
            let f = SetFamily::read_file(input)?;
            let theta_rat = parse_rational(theta)?;
            est = empirical_union_tail(&f, *t, &theta_rat, *trials, *seed)?;
            exact = exact_union_tail(&f, *t, &theta_rat);
            analytic = Some(rat_str(&analytic_tail_bound(
                f.ground_n(),
                f.len() as u64,
                *t as u32,
                &theta_rat,
            )?));
            config = SampleConfig {
                cmd: "sample",
                mode: "tail",
                input: input.to_str().unwrap_or(""),
                parts: None,
                l: None,
                t: Some(*t),
                theta: Some(theta.clone()),
                subset_s: None,
                trials: *trials,
                seed: *seed,
            };
        }
    }
    let report = SampleReport {
        config,
        mean: est.mean,
        std_error: est.std_error,
        trials: est.trials,
        seed: est.seed,
        successes: est.successes,
        upper95: est.upper95,
        exact,
        analytic_bound: analytic,
    };
    emit(&report, format)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// counterexample
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CounterexampleConfig<'a> {
    cmd: &'static str,
    n: u32,
    out: Option<&'a str>,
    verify_blowup: bool,
}

#[derive(Serialize)]
struct CounterexampleReport<'a> {
    config: CounterexampleConfig<'a>,
    n: u32,
    family_size: u64,
    two_element_members: u64,
    /// Chromatic number of the disjointness graph induced on the 2-element
    /// members, when its order is within the exact cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    chi_two_element_graph: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blowup: Option<crate::search::BlowupVerification>,
}

fn cmd_counterexample(
    n: u32,
    out: Option<&std::path::Path>,
    verify_blowup: bool,
    format: OutFormat,
) -> Result<i32> {
    require_json_or_text(format)?;
    let family = counterexample_family(n)?;
    if let Some(path) = out {
        family.write_file(path)?;
    }
    let two_bits: Vec<u32> = family
        .iter()
        .filter(|m| m.cardinality() == 2)
        .map(|m| m.bits())
        .collect();
    let two_family = SetFamily::from_bits(n, &two_bits)?;
    let two_graph = disjointness_graph(&two_family)?;
    let chi = if two_graph.order() <= 30 {
        Some(chromatic_number(&two_graph)?)
    } else {
        None
    };
    let blowup = if verify_blowup {
        Some(verify_kneser_blowup(n)?)
    } else {
        None
    };
    let ok = blowup.as_ref().map(|b| b.adjacency_ok).unwrap_or(true);
    let report = CounterexampleReport {
        config: CounterexampleConfig {
            cmd: "counterexample",
            n,
            out: out.and_then(|p| p.to_str()),
            verify_blowup,
        },
        n,
        family_size: family.len() as u64,
        two_element_members: two_bits.len() as u64,
        chi_two_element_graph: chi,
        blowup,
    };
    emit(&report, format)?;
    Ok(if ok { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct StabilityConfig<'a> {
    cmd: &'static str,
    k: u32,
    input: &'a str,
}

#[derive(Serialize)]
struct StabilityCmdReport<'a> {
    config: StabilityConfig<'a>,
    n: u32,
    family_size: u64,
    graph_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability: Option<StabilityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
}

fn cmd_stability(k: u32, input: &std::path::Path, format: OutFormat) -> Result<i32> {
    require_json_or_text(format)?;
    if k < 2 {
        return Err(Error::invalid("stability extraction needs k >= 2"));
    }
    let family = SetFamily::read_file(input)?;
    let graph = disjointness_graph(&family)?;
    let config = StabilityConfig {
        cmd: "stability",
        k,
        input: input.to_str().unwrap_or(""),
    };
    match extract_k_partition(&graph, k as usize) {
        Ok(rep) => {
            let report = StabilityCmdReport {
                config,
                n: family.ground_n(),
                family_size: family.len() as u64,
                graph_order: graph.order(),
                stability: Some(StabilityJson::from(&rep)),
                error: None,
                alpha: None,
            };
            emit(&report, format)?;
            Ok(0)
        }
        Err(Error::NoGoodClique { alpha }) => {
            let report = StabilityCmdReport {
                config,
                n: family.ground_n(),
                family_size: family.len() as u64,
                graph_order: graph.order(),
                stability: None,
                error: Some("no-good-clique".into()),
                alpha: Some(alpha),
            };
            emit(&report, format)?;
            Ok(1)
        }
        Err(other) => Err(other),
    }
}
