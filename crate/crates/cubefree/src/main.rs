//! Command-line interface: freeness checks, extremal numbers, stability and
//! identity reports, density tables, pattern search, and construction export.
//!
//! Results go to stdout; progress and timing notes go to stderr, so stdout is
//! byte-reproducible for a fixed `--seed` and `--threads 1`.

use clap::{Parser, Subcommand};
use cubefree::config::{parse_named, Configuration, ConfigurationFamily, Construction};
use cubefree::density::{best_pattern, density_table, mu_bounds, write_density_csv};
use cubefree::identities::{verify_square_identity_over_cube, verify_square_identity_over_set};
use cubefree::io::{load_configuration, load_point_set, save_point_set};
use cubefree::report::RunRecord;
use cubefree::solver::{
    enumerate_extremal_sets, extremal_number, Budget, SolveOptions,
};
use cubefree::stability::stability_report;
use cubefree::{PointSet, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "cubefree", version, about = "Forbidden configurations in hypercube vertex sets: exact freeness checks, extremal numbers, and verification reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a single JSON record instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solver (1 = fully deterministic)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-time in JSON records (makes output non-reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point-set file is free of one or more configurations
    CheckFree {
        /// Point-set file (header `n=<dim>`)
        #[arg(long)]
        set: PathBuf,
        /// Configuration names or file paths; all must be avoided
        #[arg(long = "config", required = true, num_args = 1..)]
        configs: Vec<String>,
    },
    /// Exact extremal number with witness
    Exc {
        #[arg(long)]
        n: u32,
        #[arg(long = "config", required = true, num_args = 1..)]
        configs: Vec<String>,
        /// Node budget for the branch-and-bound search
        #[arg(long, default_value_t = 100_000_000)]
        budget_nodes: u64,
        /// Time budget in seconds
        #[arg(long, default_value_t = 300)]
        budget_secs: u64,
        /// Also enumerate all extremal sets up to automorphism (n <= 5)
        #[arg(long)]
        enumerate_extremal: bool,
        /// Where to write the witness (default: exc-witness-n<N>.pts)
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Local-stability statistics of a point-set file
    Stability {
        #[arg(long)]
        set: PathBuf,
        /// Threshold as an exact rational, e.g. 1/5
        #[arg(long)]
        delta: String,
    },
    /// Extremal values and exact ratios over a range of host dimensions
    Density {
        #[arg(long = "config", required = true, num_args = 1..)]
        configs: Vec<String>,
        #[arg(long)]
        n_max: u32,
        /// Write the table as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000_000)]
        budget_nodes: u64,
        #[arg(long, default_value_t = 300)]
        budget_secs: u64,
    },
    /// Best periodic layer pattern avoiding a family
    Pattern {
        #[arg(long = "config", required = true, num_args = 1..)]
        configs: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_period: u32,
    },
    /// Bounds for the guaranteed points-per-subcube function
    Mu {
        #[arg(long)]
        d: u32,
    },
    /// Verify the double-counting identities on seeded random subsets
    Identities {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check one point-set file instead of random subsets
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Write a named construction to a point-set file
    Construct {
        /// S0 | S1 | S2 | even | mod:<m>:<r1,r2,..> | spaced:<d> | nonstab
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn resolve_config(text: &str) -> cubefree::Result<Configuration> {
    match parse_named(text)? {
        Some(cfg) => Ok(cfg),
        None => load_configuration(text),
    }
}

fn resolve_family(names: &[String]) -> cubefree::Result<ConfigurationFamily> {
    let members = names
        .iter()
        .map(|n| resolve_config(n))
        .collect::<cubefree::Result<Vec<_>>>()?;
    ConfigurationFamily::new(members)
}

fn solve_options(budget_nodes: u64, budget_secs: u64, threads: usize) -> SolveOptions {
    SolveOptions {
        budget: Budget {
            max_nodes: budget_nodes,
            time_limit: Duration::from_secs(budget_secs),
        },
        threads,
    }
}

fn set_lines(s: &PointSet) -> Vec<String> {
    s.iter().map(|v| v.to_string()).collect()
}

fn run(cli: &Cli) -> cubefree::Result<(RunRecord, String, u8)> {
    let threads = cli.threads.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    });
    match &cli.command {
        Command::CheckFree { set, configs } => {
            let s = load_point_set(set)?;
            let mut witness = None;
            for name in configs {
                let cfg = resolve_config(name)?;
                if let Some(found) = cubefree::embed::find_witness(&s, &cfg)? {
                    witness = Some((name.clone(), found));
                    break;
                }
            }
            let (text, result, code) = match witness {
                None => (
                    "FREE".to_string(),
                    json!({"free": true}),
                    0,
                ),
                Some((name, found)) => {
                    let points: Vec<String> =
                        found.vertices().iter().map(|v| v.to_string()).collect();
                    let mut text = format!("witness ({name}):\n");
                    text.push_str(&points.join("\n"));
                    (
                        text,
                        json!({"free": false, "config": name, "witness": points}),
                        1,
                    )
                }
            };
            let record = RunRecord::new(
                "check-free",
                json!({"set": set, "configs": configs}),
                result,
            );
            Ok((record, text, code))
        }
        Command::Exc {
            n,
            configs,
            budget_nodes,
            budget_secs,
            enumerate_extremal,
            witness_out,
        } => {
            let fam = resolve_family(configs)?;
            let opts = solve_options(*budget_nodes, *budget_secs, threads);
            let result = extremal_number(*n, &fam, &opts)?;
            let witness_path = witness_out
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("exc-witness-n{n}.pts")));
            save_point_set(&result.witness, &witness_path)?;
            let mut text = format!(
                "exc({n}, {{{}}}) {} {}\noptimal: {}\nwitness: {} ({} points)",
                configs.join(", "),
                if result.optimal { "=" } else { ">=" },
                result.value,
                result.optimal,
                witness_path.display(),
                result.witness.len(),
            );
            let mut payload = json!({
                "value": result.value,
                "optimal": result.optimal,
                "witness_file": witness_path,
                "witness_size": result.witness.len(),
            });
            if *enumerate_extremal {
                let classes = enumerate_extremal_sets(*n, &fam, &opts)?;
                text.push_str(&format!("\nextremal classes: {}", classes.len()));
                let mut class_json = Vec::new();
                for (i, class) in classes.iter().enumerate() {
                    text.push_str(&format!("\nclass {}: {}", i + 1, set_lines(class).join(" ")));
                    class_json.push(set_lines(class));
                }
                payload["extremal_classes"] = json!(class_json);
            }
            let mut record = RunRecord::new(
                "exc",
                json!({
                    "n": n,
                    "configs": configs,
                    "budget_nodes": budget_nodes,
                    "budget_secs": budget_secs,
                }),
                payload,
            );
            record.node_count = Some(result.nodes);
            Ok((record, text, 0))
        }
        Command::Stability { set, delta } => {
            let s = load_point_set(set)?;
            let delta = Rational::parse(delta)?;
            let report = stability_report(&s, delta)?;
            let text = format!(
                "n = {}\n|S| = {}\ndelta = {}\nbad_a = {}\nbad_b = {}\nbad_c = {}\nexceptional_union = {}\nepsilon = {}\ncalibrated_delta = {:.6}\nhist_in = {:?}\nhist_out = {:?}",
                report.n,
                report.set_size,
                report.delta,
                report.bad_a,
                report.bad_b,
                report.bad_c,
                report.exceptional_union,
                report.epsilon,
                report.calibrated_delta(),
                report.hist_in,
                report.hist_out,
            );
            let record = RunRecord::new(
                "stability",
                json!({"set": set, "delta": delta.to_string()}),
                serde_json::to_value(&report).expect("report serializes"),
            );
            Ok((record, text, 0))
        }
        Command::Density {
            configs,
            n_max,
            csv,
            budget_nodes,
            budget_secs,
        } => {
            let fam = resolve_family(configs)?;
            let opts = solve_options(*budget_nodes, *budget_secs, threads);
            let rows = density_table(&fam, *n_max, &opts)?;
            if let Some(path) = csv {
                let mut buffer = Vec::new();
                write_density_csv(&rows, &mut buffer)?;
                std::fs::write(path, buffer)?;
            }
            let mut text = String::from("n exc ratio optimal");
            let mut rows_json = Vec::new();
            let mut nodes = 0u64;
            for row in &rows {
                text.push_str(&format!(
                    "\n{} {} {} {}",
                    row.n, row.exc, row.ratio, row.optimal
                ));
                nodes += row.nodes;
                rows_json.push(json!({
                    "n": row.n,
                    "exc": row.exc,
                    "ratio_num": row.ratio.numer(),
                    "ratio_den": row.ratio.denom(),
                    "optimal": row.optimal,
                }));
            }
            let mut record = RunRecord::new(
                "density",
                json!({"configs": configs, "n_max": n_max}),
                json!({"rows": rows_json}),
            );
            record.node_count = Some(nodes);
            Ok((record, text, 0))
        }
        Command::Pattern {
            configs,
            max_period,
        } => {
            let fam = resolve_family(configs)?;
            let (pattern, density) = best_pattern(&fam, *max_period)?;
            let text = format!("{pattern} density={density}");
            let record = RunRecord::new(
                "pattern",
                json!({"configs": configs, "max_period": max_period}),
                json!({
                    "period": pattern.period(),
                    "residues": pattern.residues(),
                    "density_num": density.numer(),
                    "density_den": density.denom(),
                }),
            );
            Ok((record, text, 0))
        }
        Command::Mu { d } => {
            let (lower, upper) = mu_bounds(*d)?;
            let text = format!("mu({d}): lower {lower}, upper {upper}");
            let record = RunRecord::new(
                "mu",
                json!({"d": d}),
                json!({"lower": lower, "upper": upper}),
            );
            Ok((record, text, 0))
        }
        Command::Identities {
            n,
            l,
            trials,
            seed,
            set,
        } => {
            let mut checked = 0u64;
            let mut matched = 0u64;
            let mut run_one = |s: &PointSet| -> cubefree::Result<()> {
                let one = verify_square_identity_over_cube(s, *l)?;
                let two = verify_square_identity_over_set(s, *l)?;
                checked += 2;
                matched += one.matches as u64 + two.matches as u64;
                Ok(())
            };
            match set {
                Some(path) => run_one(&load_point_set(path)?)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    for _ in 0..*trials {
                        let mut s = PointSet::empty(*n)?;
                        for bits in 0..1u64 << *n {
                            if rng.random_bool(0.5) {
                                s.insert_bits(bits);
                            }
                        }
                        run_one(&s)?;
                    }
                }
            }
            let ok = matched == checked;
            let text = format!("identity checks: {matched}/{checked} matched");
            let record = RunRecord::new(
                "identities",
                json!({"n": n, "l": l, "trials": trials, "seed": seed, "set": set}),
                json!({"checked": checked, "matched": matched, "all_match": ok}),
            );
            Ok((record, text, if ok { 0 } else { 2 }))
        }
        Command::Construct { name, n, out } => {
            let construction = Construction::parse(name)?;
            let s = construction.build(*n)?;
            save_point_set(&s, out)?;
            let text = format!("wrote {} ({} points of V_{n})", out.display(), s.len());
            let record = RunRecord::new(
                "construct",
                json!({"name": name, "n": n, "out": out}),
                json!({"size": s.len()}),
            );
            Ok((record, text, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads > 1 {
            // Ignore failure: the global pool may already exist in tests.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    let started = Instant::now();
    match run(&cli) {
        Ok((mut record, text, code)) => {
            let elapsed = started.elapsed().as_millis() as u64;
            if cli.timings {
                record.wall_time_ms = Some(elapsed);
            }
            if cli.json {
                println!("{}", record.to_json());
            } else {
                println!("{text}");
            }
            eprintln!("[{} in {} ms]", record.command, elapsed);
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
