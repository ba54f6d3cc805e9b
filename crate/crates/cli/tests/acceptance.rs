//! Acceptance criteria. Runs as a plain binary under `cargo test` and prints
//! one PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dmc_core::candidates::{count_bounded_compositions, Compositions};
use dmc_core::cuts::{enumerate_min_cuts, MinCut};
use dmc_core::generate::{random_distribution, random_network, NetworkShape};
use dmc_core::maxflow::{check_one_more_unit, flow_value, max_flow};
use dmc_core::oracle::{FlowTable, MAX_INCLUSION_EXCLUSION_VECTORS};
use dmc_core::{
    audit_complexity, count_candidates, enumerate_candidates, find_all_dmcs,
    reliability_exhaustive, reliability_from_dmcs, verify, verify_flawed, ArcId, EdgeDistribution,
    Network, StateVector, Threshold,
};

const SWEEP_SEED: u64 = 0x5eed_d3c0;
const SWEEP_NETWORKS: usize = 200;
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const UNIT_STEP_PAIRS: usize = 100_000;
const RELIABILITY_NETWORKS: usize = 50;
const RELIABILITY_TOLERANCE: f64 = 1e-12;
const COMPOSITION_TOTAL_CAP: u64 = 24;

fn shape() -> NetworkShape {
    NetworkShape {
        max_nodes: 6,
        max_arcs: 8,
        max_capacity: 3,
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let net = Network::figure_one();
    let cut = MinCut::new(vec![ArcId(1), ArcId(3), ArcId(4), ArcId(6)]);
    let x = StateVector::new(vec![0, 2, 3, 1, 3, 3]);
    let generated = enumerate_candidates(&net, &cut, 0, 7).any(|c| c.vector == x);
    let bumped = flow_value(&net, &x.bumped(ArcId(1)));
    let corrected = verify(&net, &x, 7).is_dmc;
    let flawed = verify_flawed(&net, &x, 7).is_dmc;
    let elapsed = start.elapsed();
    check(
        generated && bumped == 6 && !corrected && flawed && elapsed < EXAMPLE_LIMIT,
        format!(
            "candidate generated={generated}, W(X+0(e1))={bumped}, corrected accepts={corrected}, flawed accepts={flawed}, {elapsed:?}"
        ),
    )
}

#[derive(Default)]
struct SweepStats {
    networks: usize,
    levels: u64,
    mismatches: u64,
    residual_checks: u64,
    residual_disagreements: u64,
    audit_runs: u64,
    audit_failures: u64,
    elapsed: Duration,
}

/// Criteria 2, 3 and 4 share one seeded sweep.
fn sweep() -> SweepStats {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let mut stats = SweepStats::default();
    for _ in 0..SWEEP_NETWORKS {
        let net = random_network(&mut rng, shape());
        let cuts = enumerate_min_cuts(&net).expect("generator yields connected networks");
        let table = FlowTable::build(&net).expect("small state space");
        stats.networks += 1;
        for d in 0..=table.max_flow_of_saturated() + 1 {
            stats.levels += 1;
            let report = find_all_dmcs(&net, d, &cuts).expect("cuts are non-empty");
            if report.dmcs != table.dmcs(d) {
                stats.mismatches += 1;
            }

            stats.audit_runs += 1;
            let sigma_sum: u64 = cuts.iter().map(|c| count_candidates(&net, c, d)).sum();
            let c = &report.counters;
            let bounded = c.maxflow_calls <= sigma_sum
                && c.residual_searches <= net.arc_count() as u64 * c.candidates_total;
            if !(bounded && audit_complexity(&report)) {
                stats.audit_failures += 1;
            }

            for (i, cut) in cuts.iter().enumerate() {
                for candidate in enumerate_candidates(&net, cut, i, d) {
                    let x = &candidate.vector;
                    if table.flow(x) != d {
                        continue;
                    }
                    let fs = max_flow(&net, x);
                    for arc in net.unsaturated_set(x) {
                        let direct = table.flow(&x.bumped(arc)) > d;
                        let pushed = check_one_more_unit(&net, x, d, arc);
                        let reused = fs.residual_reachable_after_bump(arc);
                        stats.residual_checks += 1;
                        if pushed != Ok(direct) || reused != direct {
                            stats.residual_disagreements += 1;
                        }
                    }
                }
            }
        }
    }
    stats.elapsed = start.elapsed();
    stats
}

fn unit_step_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED ^ 5);
    let mut pairs = 0usize;
    let mut violations = 0usize;
    while pairs < UNIT_STEP_PAIRS {
        let net = random_network(&mut rng, shape());
        for _ in 0..100 {
            let x = StateVector::new(
                net.arcs()
                    .iter()
                    .map(|a| rng.gen_range(0..=a.max_capacity))
                    .collect(),
            );
            let open = net.unsaturated_set(&x);
            if open.is_empty() {
                continue;
            }
            let arc = open[rng.gen_range(0..open.len())];
            let before = flow_value(&net, &x);
            let after = flow_value(&net, &net.bump(&x, arc).expect("arc is unsaturated"));
            pairs += 1;
            if !(before <= after && after <= before + 1) {
                violations += 1;
            }
        }
    }
    check(
        violations == 0,
        format!("{pairs} (X, e_i) pairs, {violations} violations"),
    )
}

/// Largest `|1 - Pr[W <= d] - Pr[W >= d + 1]|` over the checkable levels.
fn reliability_gap(net: &Network, dist: &EdgeDistribution) -> (usize, f64) {
    let table = FlowTable::build(net).expect("small state space");
    let mut levels = 0;
    let mut worst = 0.0f64;
    for d in 0..table.max_flow_of_saturated() {
        let dmcs = table.dmcs(d);
        if dmcs.len() > MAX_INCLUSION_EXCLUSION_VECTORS {
            continue;
        }
        let below = reliability_from_dmcs(&dmcs, dist).expect("non-empty d-MC set");
        let above = reliability_exhaustive(net, dist, d + 1, Threshold::AtLeast).expect("guarded");
        worst = worst.max((1.0 - below - above).abs());
        levels += 1;
    }
    (levels, worst)
}

fn reliability_consistency() -> Outcome {
    let fig = Network::figure_one();
    let (mut levels, mut worst) = reliability_gap(&fig, &EdgeDistribution::uniform(&fig));
    let fig_levels = levels;

    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED ^ 6);
    let mut networks = 0;
    while networks < RELIABILITY_NETWORKS {
        let net = random_network(&mut rng, shape());
        let dist = random_distribution(&mut rng, &net);
        let (l, w) = reliability_gap(&net, &dist);
        if l == 0 {
            continue;
        }
        networks += 1;
        levels += l;
        worst = worst.max(w);
    }
    check(
        fig_levels > 0 && worst <= RELIABILITY_TOLERANCE,
        format!(
            "fig1 + {networks} random networks, {levels} levels, max |gap| = {worst:.3e} (tolerance {RELIABILITY_TOLERANCE:e})"
        ),
    )
}

fn candidate_counting() -> Outcome {
    // every profile of 1..=4 caps with total <= 24, plus 5 and 6 caps in 0..=4
    let mut profiles: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=6 {
        let max_cap = if len <= 4 { COMPOSITION_TOTAL_CAP } else { 4 };
        frontier = frontier
            .iter()
            .flat_map(|p| {
                let used: u64 = p.iter().sum();
                (0..=max_cap.min(COMPOSITION_TOTAL_CAP - used.min(COMPOSITION_TOTAL_CAP)))
                    .map(move |c| [p.as_slice(), &[c]].concat())
            })
            .filter(|p| p.iter().all(|&c| c <= max_cap))
            .collect();
        profiles.extend(frontier.iter().cloned());
    }
    let mut cases = 0u64;
    let mut mismatches = 0u64;
    for caps in &profiles {
        let total: u64 = caps.iter().sum();
        for d in 0..=total + 1 {
            cases += 1;
            let streamed = Compositions::new(caps.clone(), d).count() as u64;
            if streamed != count_bounded_compositions(caps, d) {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0,
        format!(
            "{} profiles, {cases} (profile, d) cases, {mismatches} mismatches",
            profiles.len()
        ),
    )
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn determinism() -> Outcome {
    let fixture = workspace_root().join("fixtures/fig1.net");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_dmc"))
            .args(["solve", "--network"])
            .arg(&fixture)
            .args(["--demand", "7", "--json"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("run dmc")
    };
    let a = run("4");
    let b = run("4");
    let c = run("1");
    let ok =
        a.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout && a.stdout == c.stdout;
    check(
        ok,
        format!(
            "{} bytes of JSON, identical across runs and thread counts: {}",
            a.stdout.len(),
            ok
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("AC1 example reproduction", example_reproduction()));

    let stats = sweep();
    results.push((
        "AC2 oracle equivalence sweep",
        check(
            stats.networks >= SWEEP_NETWORKS
                && stats.mismatches == 0
                && stats.elapsed < SWEEP_LIMIT,
            format!(
                "{} networks, {} levels, {} mismatches, {:?}",
                stats.networks, stats.levels, stats.mismatches, stats.elapsed
            ),
        ),
    ));
    results.push((
        "AC3 residual-path test equals direct inequality",
        check(
            stats.residual_checks > 0 && stats.residual_disagreements == 0,
            format!(
                "{} arc checks, {} disagreements",
                stats.residual_checks, stats.residual_disagreements
            ),
        ),
    ));
    results.push((
        "AC4 operation-count audit",
        check(
            stats.audit_failures == 0,
            format!(
                "{} runs, {} failures",
                stats.audit_runs, stats.audit_failures
            ),
        ),
    ));
    results.push(("AC5 unit-step monotonicity", unit_step_monotonicity()));
    results.push(("AC6 reliability consistency", reliability_consistency()));
    results.push(("AC7 candidate counting", candidate_counting()));
    results.push(("AC8 determinism", determinism()));

    let mut failed = 0;
    for (name, outcome) in &results {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
