//! `rgm simulate`: approximation ratios over a graph family, as CSV.

use std::path::{Path, PathBuf};

use clap::Args;
use rgm_core::graph::Graph;
use rgm_core::greedy::AlgorithmKind;
use rgm_core::harness::{check_bound_dominance, write_csv, Evaluation, InstanceFamily};
use rgm_core::Error;

use crate::{write_file, Failure, Outcome};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Algorithm: greedy, irp, rdo, mrg, uur, ranking or franking
    #[arg(long)]
    kind: AlgorithmKind,
    /// Perfect-matching pairs; without --random, every graph with 1 to PAIRS pairs
    #[arg(long, conflicts_with = "graph")]
    pairs: Option<usize>,
    /// Draw COUNT random graphs with exactly PAIRS pairs instead of enumerating
    #[arg(long, value_name = "COUNT", requires = "pairs")]
    random: Option<usize>,
    /// Extra-edge probability of random graphs
    #[arg(long, default_value_t = 0.5, requires = "random")]
    p: f64,
    /// Restrict random graphs to odd girth at least this odd value (5 or more)
    #[arg(long, value_name = "L", requires = "random")]
    min_odd_girth: Option<usize>,
    /// Graph file in edge-list text format (repeatable)
    #[arg(long, value_name = "FILE")]
    graph: Vec<PathBuf>,
    /// Enumerate all random outcomes
    #[arg(long, conflicts_with = "trials")]
    exact: bool,
    /// Monte-Carlo trials per graph
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Minimize over all decision orders (adversarial kinds with --exact)
    #[arg(long, requires = "exact")]
    worst_pi: bool,
    /// Lower bound every ratio must meet; exit 4 otherwise
    #[arg(long)]
    bound: Option<f64>,
    /// Seed for random graphs and Monte-Carlo trials
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV path [default: <out-dir>/simulate-<kind>.csv]
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn family(args: &SimulateArgs) -> Result<InstanceFamily, Failure> {
    if !args.graph.is_empty() {
        let graphs = args
            .graph
            .iter()
            .map(|path| {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                Graph::from_text(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(InstanceFamily::Explicit { graphs });
    }
    let pairs = args.pairs.ok_or_else(|| Failure::Usage("give --pairs or at least one --graph".into()))?;
    Ok(match (args.random, args.min_odd_girth) {
        (None, _) => InstanceFamily::AllPerfectMatching { max_pairs: pairs },
        (Some(count), None) => InstanceFamily::RandomPerfectMatching { pairs, p: args.p, count, seed: args.seed },
        (Some(count), Some(min_odd_girth)) => {
            InstanceFamily::OddGirth { pairs, min_odd_girth, count, seed: args.seed }
        }
    })
}

fn evaluation(args: &SimulateArgs) -> Result<Evaluation, Failure> {
    let adversarial = args.kind.needs_adversarial_order();
    match (args.exact, args.trials) {
        (true, _) if adversarial && !args.worst_pi => Err(Failure::Usage(format!(
            "exact {} minimizes over decision orders; pass --worst-pi",
            args.kind
        ))),
        (true, _) if args.worst_pi && !adversarial => {
            Err(Failure::Usage(format!("--worst-pi applies only to adversarial kinds, not {}", args.kind)))
        }
        (true, _) => Ok(Evaluation::Exact),
        (false, Some(trials)) => {
            if adversarial {
                log::warn!("sampled {} uses the identity decision order", args.kind);
            }
            Ok(Evaluation::Sampled { trials, seed: args.seed })
        }
        (false, None) => Err(Failure::Usage("give --exact or --trials".into())),
    }
}

pub fn run(args: SimulateArgs, out_dir: &Path, jobs: usize) -> Outcome {
    let family = family(&args)?;
    let evaluation = evaluation(&args)?;
    if let Some(b) = args.bound.filter(|b| !b.is_finite()) {
        return Err(Failure::Usage(format!("--bound {b} is not finite")));
    }
    let bound = args.bound.unwrap_or(0.0);
    let report = check_bound_dominance(&family, args.kind, bound, evaluation, jobs).map_err(|e| match e {
        Error::InvalidParameter(_) | Error::OracleScale { .. } | Error::InvalidGraph(_) => Failure::Usage(e.to_string()),
        other => Failure::Io(other.into()),
    })?;

    let mut csv = Vec::new();
    write_csv(&report.rows, &mut csv).map_err(|e| Failure::Io(e.into()))?;
    let path = args.output.clone().unwrap_or_else(|| out_dir.join(format!("simulate-{}.csv", args.kind.name().to_lowercase())));
    write_file(&path, &csv)?;

    let worst = report.rows.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio));
    match worst {
        Some(w) => println!("{} instances, minimum ratio {:.6} on {}", report.rows.len(), w.ratio, w.instance_id),
        None => println!("0 instances"),
    }
    if let Some(b) = args.bound {
        let failed = report.rows.iter().filter(|r| !r.passed).count();
        if failed > 0 {
            return Err(Failure::Mismatch(format!(
                "{failed} of {} instances fall below {b} (minimum margin {:.3e})",
                report.rows.len(),
                report.min_margin
            )));
        }
        println!("bound {b}: all instances pass (minimum margin {:.3e})", report.min_margin);
    }
    Ok(())
}
