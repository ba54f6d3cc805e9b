use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dmc_core::cuts::{enumerate_min_cuts, format_cut_file, parse_cut_file, CutError, MinCut};
use dmc_core::generate::{random_network, NetworkShape};
use dmc_core::maxflow::flow_value;
use dmc_core::oracle::{FlowTable, OracleError};
use dmc_core::solver::Diagnostic;
use dmc_core::{
    audit_complexity, enumerate_candidates, find_all_dmcs, parse_network_file,
    reliability_exhaustive, reliability_from_dmcs, verify, verify_flawed, EdgeDistribution,
    Network, SolveReport, Threshold,
};

#[derive(Parser)]
#[command(
    name = "dmc",
    version,
    about = "Enumerate d-MinCuts of stochastic-flow networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every d-MC at the given demand level.
    Solve {
        #[command(flatten)]
        target: Target,
        /// Minimal cuts to use instead of enumerating them.
        #[arg(long, value_name = "FILE")]
        cuts: Option<PathBuf>,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compare the corrected test against the older published one on every
    /// candidate and print each disagreement.
    CheckFlaw {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_name = "FILE")]
        cuts: Option<PathBuf>,
    },
    /// List every d-MC by exhaustive search over the state space.
    Oracle {
        #[command(flatten)]
        target: Target,
    },
    /// Print the minimal cuts in cut-file format.
    Mincuts {
        #[arg(long = "network", value_name = "FILE")]
        network_flag: Option<PathBuf>,
        #[arg(value_name = "FILE", conflicts_with = "network_flag")]
        network: Option<PathBuf>,
    },
    /// Probability that the max flow meets the demand.
    Reliability {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Method::Dmcs)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ThresholdArg::AtLeast)]
        threshold: ThresholdArg,
    },
    /// Check the solver against the exhaustive search on random networks.
    Sweep {
        #[arg(long, default_value_t = 200)]
        networks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
        #[arg(long, default_value_t = 8)]
        max_arcs: usize,
        #[arg(long, default_value_t = 3)]
        max_capacity: u64,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long, value_name = "FILE")]
    network: PathBuf,
    #[arg(long, value_name = "D", allow_negative_numbers = true)]
    demand: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dmcs,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdArg {
    /// Pr[W(X) >= d]
    AtLeast,
    /// Pr[W(X) > d]
    Strictly,
}

impl From<ThresholdArg> for Threshold {
    fn from(t: ThresholdArg) -> Self {
        match t {
            ThresholdArg::AtLeast => Threshold::AtLeast,
            ThresholdArg::Strictly => Threshold::Strictly,
        }
    }
}

/// Failure classes, each with a fixed exit code.
enum Failure {
    /// Unreadable or invalid input.
    Input(anyhow::Error),
    /// No answer exists for this network and demand.
    Infeasible(anyhow::Error),
    /// A size guard refused the computation.
    Guard(anyhow::Error),
    /// A sweep found disagreements.
    Mismatch(anyhow::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Guard(_) => 4,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e)
            | Failure::Infeasible(e)
            | Failure::Guard(e)
            | Failure::Mismatch(e) => e,
        }
    }
}

impl From<CutError> for Failure {
    fn from(e: CutError) -> Self {
        match e {
            CutError::Disconnected => Failure::Infeasible(e.into()),
            CutError::TooManyNodes(_) => Failure::Guard(e.into()),
            CutError::NotMinimal { .. } | CutError::Parse(_) => Failure::Input(e.into()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::StateSpaceTooLarge { .. } | OracleError::TooManyDmcs { .. } => {
                Failure::Guard(e.into())
            }
            OracleError::EmptyDmcs => Failure::Infeasible(e.into()),
            OracleError::RaggedDmcs | OracleError::Network(_) => Failure::Input(e.into()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { target, cuts, json } => cmd_solve(&target, cuts.as_deref(), json),
        Command::CheckFlaw { target, cuts } => cmd_check_flaw(&target, cuts.as_deref()),
        Command::Oracle { target } => cmd_oracle(&target),
        Command::Mincuts {
            network_flag,
            network,
        } => {
            let path = network_flag
                .or(network)
                .ok_or_else(|| Failure::Input(anyhow!("a network file is required")))?;
            cmd_mincuts(&path)
        }
        Command::Reliability {
            target,
            method,
            threshold,
        } => cmd_reliability(&target, method, threshold.into()),
        Command::Sweep {
            networks,
            seed,
            max_nodes,
            max_arcs,
            max_capacity,
        } => cmd_sweep(
            networks,
            seed,
            NetworkShape {
                max_nodes,
                max_arcs,
                max_capacity,
            },
        ),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn load_network(path: &Path) -> Result<(Network, Option<EdgeDistribution>), Failure> {
    let file = parse_network_file(&read(path)?)
        .with_context(|| format!("invalid network file {}", path.display()))
        .map_err(Failure::Input)?;
    Ok((file.network, file.distribution))
}

fn demand(target: &Target) -> Result<u64, Failure> {
    u64::try_from(target.demand)
        .map_err(|_| Failure::Infeasible(anyhow!("demand {} is negative", target.demand)))
}

fn load_cuts(net: &Network, path: Option<&Path>) -> Result<Vec<MinCut>, Failure> {
    let cuts = match path {
        Some(p) => parse_cut_file(net, &read(p)?)?,
        None => enumerate_min_cuts(net)?,
    };
    if cuts.is_empty() {
        return Err(Failure::Input(anyhow!("the cut file lists no cuts")));
    }
    Ok(cuts)
}

fn solve(net: &Network, d: u64, cuts: &[MinCut]) -> Result<SolveReport, Failure> {
    find_all_dmcs(net, d, cuts).map_err(|e| Failure::Input(e.into()))
}

fn cmd_solve(target: &Target, cuts: Option<&Path>, json: bool) -> Outcome {
    let (net, _) = load_network(&target.network)?;
    let d = demand(target)?;
    let cuts = load_cuts(&net, cuts)?;
    let report = solve(&net, d, &cuts)?;
    if json {
        let text = serde_json::to_string_pretty(&report)
            .context("serialising report")
            .map_err(Failure::Input)?;
        println!("{text}");
        return Ok(());
    }
    for x in &report.dmcs {
        println!("{x}");
    }
    let c = &report.counters;
    let p = &report.parameters;
    println!(
        "# d={} dmcs={} p={} sigma_max={} sigma_sum={}",
        p.d,
        report.dmcs.len(),
        p.p,
        p.sigma_max,
        p.sigma_sum
    );
    println!(
        "# maxflow_calls={} candidates_total={} residual_searches={} duplicates_removed={}",
        c.maxflow_calls, c.candidates_total, c.residual_searches, c.duplicates_removed
    );
    println!(
        "# audit={}",
        if audit_complexity(&report) {
            "pass"
        } else {
            "fail"
        }
    );
    if let Some(Diagnostic::DemandExceedsMaxFlow) = report.diagnostic {
        println!("# diagnostic: demand exceeds the max flow of the saturated network");
    }
    Ok(())
}

fn cmd_check_flaw(target: &Target, cuts: Option<&Path>) -> Outcome {
    let (net, _) = load_network(&target.network)?;
    let d = demand(target)?;
    let cuts = load_cuts(&net, cuts)?;
    let mut candidates = 0u64;
    let mut disagreements = 0u64;
    for (i, cut) in cuts.iter().enumerate() {
        for candidate in enumerate_candidates(&net, cut, i, d) {
            candidates += 1;
            let x = &candidate.vector;
            let corrected = verify(&net, x, d);
            let flawed = verify_flawed(&net, x, d);
            if corrected.is_dmc == flawed.is_dmc {
                continue;
            }
            disagreements += 1;
            let bumps: Vec<String> = net
                .unsaturated_set(x)
                .into_iter()
                .map(|a| format!("{a}:W={}", flow_value(&net, &x.bumped(a))))
                .collect();
            let verdict = |ok: bool| if ok { "accept" } else { "reject" };
            println!(
                "disagreement cut={} candidate={} X={} d={} W(X)={} corrected={} flawed={} bumps={}",
                i + 1,
                candidate.ordinal,
                x,
                d,
                corrected.flow_value,
                verdict(corrected.is_dmc),
                verdict(flawed.is_dmc),
                bumps.join(",")
            );
        }
    }
    println!("# candidates={candidates} disagreements={disagreements}");
    Ok(())
}

fn cmd_oracle(target: &Target) -> Outcome {
    let (net, _) = load_network(&target.network)?;
    let d = demand(target)?;
    let table = FlowTable::build(&net)?;
    let dmcs = table.dmcs(d);
    for x in &dmcs {
        println!("{x}");
    }
    println!("# d={} dmcs={} states={}", d, dmcs.len(), table.len());
    Ok(())
}

fn cmd_mincuts(path: &Path) -> Outcome {
    let (net, _) = load_network(path)?;
    let cuts = enumerate_min_cuts(&net)?;
    print!("{}", format_cut_file(&cuts));
    Ok(())
}

fn cmd_reliability(target: &Target, method: Method, threshold: Threshold) -> Outcome {
    let (net, dist) = load_network(&target.network)?;
    let d = demand(target)?;
    let dist = dist.unwrap_or_else(|| EdgeDistribution::uniform(&net));
    let probability = match method {
        Method::Exhaustive => reliability_exhaustive(&net, &dist, d, threshold)?,
        Method::Dmcs => {
            // Pr[W >= d] = 1 - Pr[W <= d - 1];  Pr[W > d] = 1 - Pr[W <= d]
            let level = match threshold {
                Threshold::AtLeast if d == 0 => None,
                Threshold::AtLeast => Some(d - 1),
                Threshold::Strictly => Some(d),
            };
            match level {
                None => 1.0,
                Some(level) => {
                    let cuts = enumerate_min_cuts(&net)?;
                    let report = solve(&net, level, &cuts)?;
                    if report.dmcs.is_empty() {
                        // level exceeds W(W): every state has W(X) <= level
                        0.0
                    } else {
                        1.0 - reliability_from_dmcs(&report.dmcs, &dist)?
                    }
                }
            }
        }
    };
    println!("{probability:.12}");
    Ok(())
}

fn cmd_sweep(networks: usize, seed: u64, shape: NetworkShape) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = 0u64;
    let mut mismatches = 0u64;
    let mut audit_failures = 0u64;
    for k in 0..networks {
        let net = random_network(&mut rng, shape);
        let cuts = enumerate_min_cuts(&net)?;
        let table = FlowTable::build(&net)?;
        for d in 0..=table.max_flow_of_saturated() + 1 {
            levels += 1;
            let report = solve(&net, d, &cuts)?;
            if report.dmcs != table.dmcs(d) {
                mismatches += 1;
                println!("mismatch network={k} d={d}");
                print!("{net}");
            }
            if !audit_complexity(&report) {
                audit_failures += 1;
                println!("audit-failure network={k} d={d}");
            }
        }
    }
    println!(
        "# networks={networks} seed={seed} levels={levels} mismatches={mismatches} audit_failures={audit_failures}"
    );
    if mismatches + audit_failures > 0 {
        return Err(Failure::Mismatch(anyhow!(
            "{mismatches} mismatches, {audit_failures} audit failures"
        )));
    }
    Ok(())
}
