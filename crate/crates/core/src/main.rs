use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperconv::convergence::{comparison_kernels, Convergence, Reflection};
use hyperconv::funcspace::{natural_convergence, preimage_lift, FunctionCarrier};
use hyperconv::harness::{enumerate_spaces, replay, run_laws, Instance, ScopeConfig};
use hyperconv::hyperconv::{cover_numbers, hyper_topology, scott_convergence, solidity_check, HyperConvergence};
use hyperconv::hyperfamily::{standard_alphas, AlphaLabel};
use hyperconv::space::{FiniteSpace, SpaceSpec};
use hyperconv::transfer::DEFAULT_DEPTH;
use hyperconv::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperconv", version, about = "Finite hyperspace convergences and their law checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run registered laws over their instance grids.
    Laws {
        /// Comma-separated law ids; all laws when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Laws to leave out of this run; they are reported as excluded.
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<String>,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rerun one law on an instance file taken from a report.
    Replay { law: String, instance: PathBuf },
    /// Structural data of the space in a JSON file.
    Invariants {
        space: PathBuf,
        #[arg(long, default_value = "p")]
        alpha: String,
    },
    /// List every labeled topology on a number of points.
    Enumerate {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        t0: bool,
    },
    /// Look for hyperconvergences whose lift is T[X,Z], with Z the 3-chain.
    Explore {
        #[arg(long, default_value_t = 2)]
        max_points: usize,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn invariants(path: &PathBuf, alpha: &str) -> Result<serde_json::Value> {
    let spec: SpaceSpec = read_json(path)?;
    let space = FiniteSpace::build(&spec)?;
    let label: AlphaLabel = alpha.parse()?;
    let alphas = standard_alphas(&space)?;
    let collection = alphas.get(label).ok_or_else(|| Error::Parse("pick one of p, k, kappa, s".into()))?;
    let scott = scott_convergence(&space)?;
    let topology = hyper_topology(&space, collection)?;
    let covers = space
        .opens()
        .iter()
        .map(|&u| {
            let c = cover_numbers(&space, collection, u)?;
            Ok(json!({"open": u, "lindelof": c.lindelof, "arens": c.arens}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "points": space.points(),
        "opens": space.opens(),
        "components": space.components(),
        "separation": space.separation_profile(),
        "alpha": alpha,
        "families": collection.families,
        "scott_solidity": solidity_check(&scott),
        "alpha_solidity": solidity_check(&topology),
        "covers": covers,
    }))
}

fn same_on_sample(a: &Convergence, b: &Convergence) -> bool {
    comparison_kernels(a.size()).all(|k| a.lim(k) == b.lim(k))
}

fn explore(max_points: usize) -> Result<()> {
    let z = FiniteSpace::chain(3);
    for n in 1..=max_points {
        for x in enumerate_spaces(n, true)? {
            let carrier = FunctionCarrier::new(&x, &z)?;
            let goal = natural_convergence(&carrier)?.conv.reflect(Reflection::T);
            let a = standard_alphas(&x)?;
            let scott = scott_convergence(&x)?;
            let mut candidates = vec![
                ("[X,$]", scott.clone()),
                ("T[X,$]", HyperConvergence::new(x.clone(), scott.conv().reflect(Reflection::T))?),
                ("P[X,$]", HyperConvergence::new(x.clone(), scott.conv().reflect(Reflection::P))?),
                ("chaotic", HyperConvergence::new(x.clone(), Convergence::chaotic(x.open_count()))?),
            ];
            for (name, alpha) in [
                ("s(X,$)", a.s.clone()),
                ("s^(X,$)", a.s.intersection_closure()),
                ("p(X,$)", a.p),
                ("kappa(X,$)", a.kappa),
            ] {
                candidates.push((name, hyper_topology(&x, &alpha)?));
            }
            let mut matches = Vec::new();
            for (name, tau) in &candidates {
                if same_on_sample(&preimage_lift(&carrier, tau)?.conv, &goal) {
                    matches.push(*name);
                }
            }
            println!(
                "{}  maps={}  matches: {}",
                serde_json::to_string(&x.spec()).unwrap_or_default(),
                carrier.len(),
                matches.join(", ")
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Laws { only, exclude, max_points, depth, report, seed } => {
            let cfg = ScopeConfig { max_points, depth, seed };
            let r = run_laws(&only, &exclude, &cfg)?;
            match report {
                ReportFormat::Text => print!("{}", r.to_text()),
                ReportFormat::Json => println!("{}", r.to_json()),
            }
            Ok(r.ok())
        }
        Command::Replay { law, instance } => {
            let instance: Instance = read_json(&instance)?;
            match replay(&law, &instance)? {
                Ok(()) => {
                    println!("pass");
                    Ok(true)
                }
                Err(v) => {
                    println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
                    Ok(false)
                }
            }
        }
        Command::Invariants { space, alpha } => {
            println!("{}", serde_json::to_string_pretty(&invariants(&space, &alpha)?).unwrap_or_default());
            Ok(true)
        }
        Command::Enumerate { points, t0 } => {
            for s in enumerate_spaces(points, t0)? {
                println!("{}", serde_json::to_string(&s.spec()).unwrap_or_default());
            }
            Ok(true)
        }
        Command::Explore { max_points } => {
            explore(max_points)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
