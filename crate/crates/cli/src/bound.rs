//! `rgm bound`: factor-revealing LP construction, export and solving.

use std::path::Path;

use clap::{Args, ValueEnum};
use rgm_core::lp::{build, export_model, solve, verify_solution, write_solution, Format, Status, Variant};

use crate::golden::{published, Family};
use crate::{write_file, Failure, Outcome};

/// Constraint tolerance for the exact check of a returned solution.
const VERIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Ranking LP without the tightening constraints
    Ranking,
    /// Tightened Ranking LP
    Tightened,
    /// Ranking LP for graphs of odd girth at least 2k+1 (needs --k)
    Oddgirth,
    /// FRanking LP
    Franking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// CPLEX-style LP text
    Lp,
    /// Fixed-section MPS
    Mps,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// LP family
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Discretization size
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Odd-girth class parameter, at least 2 (oddgirth only)
    #[arg(long)]
    k: Option<u32>,
    /// Write the model in this format to the output directory (repeatable)
    #[arg(long, value_enum)]
    export: Vec<FormatArg>,
    /// Solve in-process and verify the solution exactly
    #[arg(long)]
    solve: bool,
    /// Compare the objective with the published value (implies --solve)
    #[arg(long)]
    golden: bool,
    /// Absolute tolerance for --golden
    #[arg(long, default_value_t = 5e-5)]
    tol: f64,
}

fn family(args: &BoundArgs) -> Result<Family, Failure> {
    match (args.variant, args.k) {
        (VariantArg::Oddgirth, None) => Err(Failure::Usage("--variant oddgirth requires --k".into())),
        (VariantArg::Oddgirth, Some(k)) if k < 2 => {
            Err(Failure::Usage(format!("--k {k} is invalid; the odd-girth LP needs k >= 2")))
        }
        (VariantArg::Oddgirth, Some(k)) => Ok(Family::OddGirth(k)),
        (_, Some(_)) => Err(Failure::Usage("--k applies only to --variant oddgirth".into())),
        (VariantArg::Ranking, None) => Ok(Family::Simple),
        (VariantArg::Tightened, None) => Ok(Family::Tightened),
        (VariantArg::Franking, None) => Ok(Family::Franking),
    }
}

fn family_label(args: &BoundArgs) -> String {
    let name = args.variant.to_possible_value().map_or_else(String::new, |v| v.get_name().to_owned());
    args.k.map_or_else(|| name.clone(), |k| format!("{name} k={k}"))
}

pub fn run(args: BoundArgs, out_dir: &Path) -> Outcome {
    let family = family(&args)?;
    let n = args.n as usize;
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol {} must be positive", args.tol)));
    }
    let expected = if args.golden {
        Some(published(family, n).ok_or_else(|| {
            Failure::Usage(format!("no published value for {} at n={n}; --golden is unavailable", family_label(&args)))
        })?)
    } else {
        None
    };
    let variant = match family {
        Family::Simple => Variant::Simple,
        Family::Tightened => Variant::Tightened,
        Family::OddGirth(k) => Variant::OddGirth(k),
        Family::Franking => Variant::Franking,
    };
    let model = build(variant, n).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("model {variant} n={n}: {} variables, {} constraints", model.variables().len(), model.constraints().len());
    for (fam, count) in model.family_counts() {
        log::info!("  {fam}: {count}");
    }

    let stem = format!("{variant}_n{n}");
    for format in &args.export {
        let (format, ext) = match format {
            FormatArg::Lp => (Format::LpText, "lp"),
            FormatArg::Mps => (Format::Mps, "mps"),
        };
        write_file(&out_dir.join(format!("{stem}.{ext}")), export_model(&model, format).as_bytes())?;
    }

    if !(args.solve || args.golden) {
        return Ok(());
    }
    let solution = solve(&model);
    if solution.status != Status::Optimal {
        return Err(Failure::Solver(format!("status {:?} after {} iterations", solution.status, solution.iterations)));
    }
    let report = verify_solution(&model, &solution.assignment, VERIFY_TOL).map_err(|e| Failure::Solver(e.to_string()))?;
    if !report.passed() {
        let first = report.violations.first().map_or_else(String::new, |v| format!("; first {:?} by {:e}", v.tag, v.amount));
        return Err(Failure::Solver(format!(
            "solution violates {} constraints and {} bounds, max {:e}{first}",
            report.violations.len(),
            report.bound_violations.len(),
            report.max_violation
        )));
    }
    println!("status OPTIMAL after {} iterations", solution.iterations);
    println!("objective {:.6}", solution.objective_value);
    if !args.export.is_empty() {
        write_file(&out_dir.join(format!("{stem}.sol")), write_solution(&solution).as_bytes())?;
    }

    if let Some(expected) = expected {
        let diff = (solution.objective_value - expected).abs();
        if diff > args.tol {
            return Err(Failure::Mismatch(format!(
                "objective {:.6} differs from published {expected:.5} by {diff:.2e} (tolerance {:.1e})",
                solution.objective_value, args.tol
            )));
        }
        println!("golden {expected:.5}: match (difference {diff:.2e})");
    }
    Ok(())
}
