//! `rgm verify`: structural property checks, JSON report and witness replay.

use std::path::{Path, PathBuf};

use clap::Args;
use rgm_core::greedy::greedy_match;
use rgm_core::harness::{lemma_names, lemma_suite_with, replay_witness, LemmaWitness, SuiteOptions};
use rgm_core::structure::{alternating_path, franking_profile, ranking_profile, thresholds, Context};
use serde_json::{json, Value};

use crate::{write_file, Failure, Outcome};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run every registered check
    #[arg(long, conflicts_with_all = ["only", "replay"])]
    all: bool,
    /// Run only this check (repeatable)
    #[arg(long, value_name = "NAME", conflicts_with = "replay")]
    only: Vec<String>,
    /// Random instances per check
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest pair count of the exhaustive perfect-matching sweep (0 disables it)
    #[arg(long, default_value_t = 3)]
    exhaustive_pairs: usize,
    /// Re-run a witness file written by a failing check and write its analysis JSON
    #[arg(long, value_name = "FILE")]
    replay: Option<PathBuf>,
    /// Report path [default: <out-dir>/verify-report.json]
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

pub fn run(args: VerifyArgs, out_dir: &Path, jobs: usize) -> Outcome {
    if let Some(path) = &args.replay {
        return replay(path, out_dir);
    }
    let registered = lemma_names();
    let names: Vec<&str> = if args.all {
        registered.clone()
    } else if args.only.is_empty() {
        return Err(Failure::Usage("give --all, --only NAME or --replay FILE".into()));
    } else {
        args.only.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !registered.contains(n)) {
        return Err(Failure::Usage(format!("unknown check {bad:?}; registered: {}", registered.join(", "))));
    }

    let opts = SuiteOptions { exhaustive_max_pairs: args.exhaustive_pairs, jobs, ..SuiteOptions::new(args.budget, args.seed) };
    let report = lemma_suite_with(&names, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
    for c in &report.checks {
        let verdict = if c.failures == 0 { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {}: {} instances, {} assertions, {} failures ({:.1}s)",
            c.name, c.instances, c.assertions, c.failures, c.seconds
        );
    }
    let json = serde_json::to_vec_pretty(&report).map_err(|e| Failure::Io(e.into()))?;
    write_file(&args.report.clone().unwrap_or_else(|| out_dir.join("verify-report.json")), &json)?;

    let mut failing = Vec::new();
    for c in report.checks.iter().filter(|c| c.failures > 0) {
        failing.push(c.name.as_str());
        if let Some(w) = &c.witness {
            eprintln!("{}: {}", c.name, w.message);
            let json = serde_json::to_vec_pretty(w).map_err(|e| Failure::Io(e.into()))?;
            write_file(&out_dir.join(format!("witness-{}.json", c.name)), &json)?;
        }
    }
    if failing.is_empty() {
        println!("all {} checks passed", report.checks.len());
        Ok(())
    } else {
        Err(Failure::Lemma(format!("{} failed", failing.join(", "))))
    }
}

fn replay(path: &Path, out_dir: &Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let witness: LemmaWitness =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{} is not a witness: {e}", path.display())))?;
    let verdict = replay_witness(&witness, greedy_match).map_err(|e| Failure::Usage(e.to_string()))?;
    let json = serde_json::to_vec_pretty(&analysis(&witness)).map_err(|e| Failure::Io(e.into()))?;
    write_file(&out_dir.join(format!("replay-{}.json", witness.check)), &json)?;
    match verdict {
        Ok(assertions) => {
            println!("PASS {}: witness now holds ({assertions} assertions)", witness.check);
            Ok(())
        }
        Err(message) => Err(Failure::Lemma(format!("{} still fails: {message}", witness.check))),
    }
}

/// Trace, alternating paths, profiles and thresholds of a witness instance.
fn analysis(w: &LemmaWitness) -> Value {
    let g = &w.instance.graph;
    let Ok(list) = w.instance.query_list() else {
        return json!({ "check": w.check, "instance": w.instance });
    };
    let paths: Vec<Value> = (0..g.vertex_count())
        .filter_map(|v| alternating_path(g, &list, v).ok())
        .map(|p| json!(p))
        .collect();
    let pairs: Vec<Value> = match w.instance.ranked() {
        None => Vec::new(),
        Some((x, context)) => w
            .instance
            .partner_pairs()
            .into_iter()
            .map(|(u, us)| {
                let profile = match &context {
                    Context::Ranking => ranking_profile(g, &x, u, us).ok(),
                    Context::Franking { decision_order } => franking_profile(g, decision_order, &x, u, us).ok(),
                };
                let report = thresholds(g, &x, u, us, &context).ok();
                json!({ "u": u, "u_star": us, "profile": profile, "thresholds": report })
            })
            .collect(),
    };
    json!({
        "check": w.check,
        "instance": w.instance,
        "trace": greedy_match(g, &list),
        "paths": paths,
        "pairs": pairs,
    })
}
