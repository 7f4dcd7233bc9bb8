//! Command-line front end. `main.rs` only parses arguments and prints the
//! [`Output`] returned by [`run`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::bicriteria::{self, BiCriteriaError};
use crate::hardness::{self, HardnessError};
use crate::io::{self, Instance, IoError, KnapsackGenParams, PecGenParams, PvcGenParams};
use crate::model::{evaluate_edge_solution, evaluate_vertex_solution, PecInstance, PvcInstance};
use crate::number::{format_rational, parse_rational, Rational};
use crate::oracle::{self, OracleError};
use crate::pec::{self, PecError};
use crate::report::{self, Certificates, ReportSolution, RunReport};
use crate::two_approx::{self, TwoApproxConfig, TwoApproxError};

pub const EXIT_SOLVED: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "partcover", version, about = "Partition vertex cover and edge cover solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a solver and print a report
    Solve {
        #[command(subcommand)]
        algorithm: SolveCommand,
    },
    /// Solve exactly by exhaustive search (small instances only)
    Oracle {
        file: PathBuf,
        #[arg(long)]
        timing: bool,
    },
    /// Transform an instance into another problem
    Reduce {
        #[command(subcommand)]
        source: ReduceCommand,
    },
    /// Print a seeded random instance
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
    },
    /// Re-check a solution or report against its instance
    Verify { instance: PathBuf, solution: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    /// LP-rounding 2-approximation for vertex cover instances
    Pvc2 {
        file: PathBuf,
        /// Worker threads for the guess loop
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print every LP solved to standard error
        #[arg(long)]
        dump_lp: bool,
        #[arg(long)]
        timing: bool,
        /// Also run the exhaustive solver and report the ratio
        #[arg(long)]
        compare_oracle: bool,
    },
    /// Threshold rounding of the LP relaxation
    PvcBi {
        file: PathBuf,
        /// Threshold, strictly between 0 and 1/2 (decimal or p/q)
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        compare_oracle: bool,
    },
    /// Exact edge cover via budgeted matching
    Pec {
        file: PathBuf,
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        compare_oracle: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Knapsack instance to a prize-collecting edge cover instance
    Knapsack { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Pvc {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.5")]
        density: String,
        #[arg(long, default_value_t = 1)]
        omega: usize,
        #[arg(long, default_value_t = 10)]
        weight_max: u64,
        #[arg(long, default_value_t = 10)]
        profit_max: u64,
        #[arg(long, default_value = "0.5")]
        threshold_fraction: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Pec {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.5")]
        density: String,
        #[arg(long, default_value_t = 1)]
        omega: usize,
        #[arg(long, default_value_t = 10)]
        cost_max: u64,
        #[arg(long, default_value = "0.5")]
        requirement_fraction: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Knapsack {
        #[arg(long)]
        items: usize,
        #[arg(long, default_value_t = 10)]
        value_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Generate(#[from] IoError),
    #[error(transparent)]
    TwoApprox(#[from] TwoApproxError),
    #[error(transparent)]
    BiCriteria(#[from] BiCriteriaError),
    #[error(transparent)]
    Pec(#[from] PecError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn report(report: &RunReport, code: u8) -> Self {
        Self { stdout: report.to_json(), stderr: String::new(), code }
    }
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    io::parse_instance(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn expect_pvc(instance: &Instance, command: &str) -> Result<PvcInstance, CliError> {
    match instance {
        Instance::Pvc(p) => Ok(p.clone()),
        other => Err(CliError::Usage(format!("{command} needs a pvc instance, got {}", other.kind()))),
    }
}

fn expect_pec(instance: &Instance, command: &str) -> Result<PecInstance, CliError> {
    match instance {
        Instance::Pec(p) => Ok(p.clone()),
        other => Err(CliError::Usage(format!("{command} needs a pec instance, got {}", other.kind()))),
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn ratio(cost: &Rational, optimum: &Rational) -> Option<f64> {
    use num_traits::Zero;
    if optimum.is_zero() {
        return cost.is_zero().then_some(1.0);
    }
    Some(crate::number::to_f64(&(cost / optimum)))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn infeasible(mut report: RunReport) -> Output {
    report.status = "infeasible".to_string();
    Output::report(&report, EXIT_INFEASIBLE)
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Solve { algorithm } => solve(algorithm),
        Command::Oracle { file, timing } => run_oracle(&file, timing),
        Command::Reduce { source: ReduceCommand::Knapsack { file } } => {
            let instance = read_instance(&file)?;
            let Instance::Knapsack(k) = instance else {
                return Err(CliError::Usage(format!("reduce knapsack needs a knapsack instance, got {}", instance.kind())));
            };
            let reduced = Instance::Wppec(hardness::knapsack_to_wppec(&k));
            Ok(Output { stdout: io::serialize_instance(&reduced), stderr: String::new(), code: EXIT_SOLVED })
        }
        Command::Gen { kind } => generate(kind),
        Command::Verify { instance, solution } => verify(&instance, &solution),
    }
}

fn solve(algorithm: SolveCommand) -> Result<Output, CliError> {
    match algorithm {
        SolveCommand::Pvc2 { file, jobs, dump_lp, timing, compare_oracle } => {
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let instance = read_instance(&file)?;
            let pvc = expect_pvc(&instance, "solve pvc2")?;
            let report = RunReport::new("solve", "pvc2", &instance).parameter("jobs", jobs);
            let start = Instant::now();
            let config = TwoApproxConfig { jobs, record_traces: dump_lp };
            let result = match two_approx::solve_two_approx(&pvc, &config) {
                Ok(r) => r,
                Err(TwoApproxError::Infeasible) => return Ok(infeasible(report)),
                Err(e) => return Err(e.into()),
            };
            let duration = elapsed_ms(start);
            let (solution, mut certificates) = report::vertex_solution(&result.solution);
            certificates.lp_value = result.winning_lp_value;
            certificates.lp_lower_bound = Some(result.lp_lower_bound);
            if compare_oracle {
                let opt = oracle::brute_force_pvc(&pvc)?.total_weight;
                certificates.ratio = ratio(&result.solution.total_weight, &opt);
                certificates.oracle_cost = Some(format_rational(&opt));
            }
            let mut stderr = String::new();
            if dump_lp {
                for t in &result.traces {
                    if let Some(r) = &t.restricted {
                        stderr.push_str(&format!("\\ guess {:?}: restricted LP\n{}", t.guess.guessed, r.model));
                    }
                    if let Some(s) = &t.sparse {
                        stderr.push_str(&format!("\\ guess {:?}: sparse LP\n{}", t.guess.guessed, s.model));
                    }
                }
            }
            let mut report = report;
            report.solution = Some(solution);
            report.certificates = Some(certificates);
            report.duration_ms = timing.then_some(duration);
            Ok(Output { stdout: report.to_json(), stderr, code: EXIT_SOLVED })
        }
        SolveCommand::PvcBi { file, epsilon, timing, compare_oracle } => {
            let epsilon = rational_arg("epsilon", &epsilon)?;
            bicriteria::check_epsilon(&epsilon)?;
            let instance = read_instance(&file)?;
            let pvc = expect_pvc(&instance, "solve pvc-bi")?;
            let report = RunReport::new("solve", "pvc-bi", &instance).parameter("epsilon", format_rational(&epsilon));
            let start = Instant::now();
            let result = match bicriteria::solve_bicriteria(&pvc, &epsilon) {
                Ok(r) => r,
                Err(BiCriteriaError::LpInfeasible) => return Ok(infeasible(report)),
                Err(e) => return Err(e.into()),
            };
            let duration = elapsed_ms(start);
            let (solution, mut certificates) = report::vertex_solution(&result.solution);
            certificates.lp_value = Some(result.lp_value);
            certificates.lp_lower_bound = Some(result.lp_value);
            certificates.cost_bound = Some(result.cost_bound);
            certificates.coverage_bounds = Some(result.coverage_bounds.clone());
            if compare_oracle {
                match oracle::brute_force_pvc(&pvc) {
                    Ok(opt) => {
                        certificates.ratio = ratio(&result.solution.total_weight, &opt.total_weight);
                        certificates.oracle_cost = Some(format_rational(&opt.total_weight));
                    }
                    Err(OracleError::Infeasible) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            let mut report = report;
            report.solution = Some(solution);
            report.certificates = Some(certificates);
            report.duration_ms = timing.then_some(duration);
            Ok(Output::report(&report, EXIT_SOLVED))
        }
        SolveCommand::Pec { file, timing, compare_oracle } => {
            let instance = read_instance(&file)?;
            let pec_instance = expect_pec(&instance, "solve pec")?;
            let report = RunReport::new("solve", "pec", &instance);
            let start = Instant::now();
            let result = match pec::solve_pec(&pec_instance) {
                Ok(r) => r,
                Err(PecError::Infeasible) => return Ok(infeasible(report)),
                Err(e) => return Err(e.into()),
            };
            let duration = elapsed_ms(start);
            let (solution, mut certificates) = report::edge_solution(&result.solution);
            if compare_oracle {
                let opt = oracle::brute_force_pec(&pec_instance)?.total_cost;
                certificates.ratio = ratio(&result.solution.total_cost, &opt);
                certificates.oracle_cost = Some(format_rational(&opt));
            }
            let mut report = report;
            report.solution = Some(solution);
            report.certificates = Some(certificates);
            report.duration_ms = timing.then_some(duration);
            Ok(Output::report(&report, EXIT_SOLVED))
        }
    }
}

fn run_oracle(file: &Path, timing: bool) -> Result<Output, CliError> {
    let instance = read_instance(file)?;
    let mut report = RunReport::new("oracle", "brute-force", &instance);
    let start = Instant::now();
    let code = match &instance {
        Instance::Pvc(p) => match oracle::brute_force_pvc(p) {
            Ok(s) => {
                let (solution, certificates) = report::vertex_solution(&s);
                report.solution = Some(solution);
                report.certificates = Some(certificates);
                EXIT_SOLVED
            }
            Err(OracleError::Infeasible) => return Ok(infeasible(report)),
            Err(e) => return Err(e.into()),
        },
        Instance::Pec(p) => match oracle::brute_force_pec(p) {
            Ok(s) => {
                let (solution, certificates) = report::edge_solution(&s);
                report.solution = Some(solution);
                report.certificates = Some(certificates);
                EXIT_SOLVED
            }
            Err(OracleError::Infeasible) => return Ok(infeasible(report)),
            Err(e) => return Err(e.into()),
        },
        Instance::Wppec(w) => {
            let witness = hardness::wppec_witness(w)?;
            decision(&mut report, witness.map(|edges| {
                let (cost, per_group) = w.evaluate(&edges);
                (ReportSolution { kind: "edges".into(), selected: edges, cost: format_rational(&cost) }, per_group.iter().map(format_rational).collect())
            }))
        }
        Instance::Knapsack(k) => {
            let witness = hardness::knapsack_witness(k)?;
            decision(&mut report, witness.map(|items| {
                let cost: Rational = items.iter().map(|&i| &k.items()[i].1).sum();
                let profit: Rational = items.iter().map(|&i| &k.items()[i].0).sum();
                (ReportSolution { kind: "items".into(), selected: items, cost: format_rational(&cost) }, vec![format_rational(&profit)])
            }))
        }
    };
    report.duration_ms = timing.then(|| elapsed_ms(start));
    Ok(Output::report(&report, code))
}

fn decision(report: &mut RunReport, witness: Option<(ReportSolution, Vec<String>)>) -> u8 {
    match witness {
        Some((solution, per_group)) => {
            report.status = "yes".into();
            report.solution = Some(solution);
            report.certificates = Some(Certificates { feasible: true, per_group, ..Certificates::default() });
            EXIT_SOLVED
        }
        None => {
            report.status = "no".into();
            EXIT_INFEASIBLE
        }
    }
}

fn generate(kind: GenCommand) -> Result<Output, CliError> {
    let instance = match kind {
        GenCommand::Pvc { n, density, omega, weight_max, profit_max, threshold_fraction, seed } => {
            Instance::Pvc(io::generate_random_pvc(&PvcGenParams {
                n,
                density: rational_arg("density", &density)?,
                omega,
                weight_max,
                profit_max,
                threshold_fraction: rational_arg("threshold-fraction", &threshold_fraction)?,
                seed,
            })?)
        }
        GenCommand::Pec { n, density, omega, cost_max, requirement_fraction, seed } => {
            Instance::Pec(io::generate_random_pec(&PecGenParams {
                n,
                density: rational_arg("density", &density)?,
                omega,
                cost_max,
                requirement_fraction: rational_arg("requirement-fraction", &requirement_fraction)?,
                seed,
            })?)
        }
        GenCommand::Knapsack { items, value_max, seed } => {
            Instance::Knapsack(io::generate_random_knapsack(&KnapsackGenParams { items, value_max, seed })?)
        }
    };
    Ok(Output { stdout: io::serialize_instance(&instance), stderr: String::new(), code: EXIT_SOLVED })
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    instance_kind: String,
    instance_digest: String,
    selected: Vec<usize>,
    feasible: bool,
    cost: String,
    per_group: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_report: Option<bool>,
}

fn verify(instance_path: &Path, solution_path: &Path) -> Result<Output, CliError> {
    let instance = read_instance(instance_path)?;
    let text = std::fs::read_to_string(solution_path)
        .map_err(|source| CliError::Read { path: solution_path.to_path_buf(), source })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse { path: solution_path.to_path_buf(), source: IoError::from(e) })?;
    let claimed: Option<RunReport> = value.get("report_version").and_then(|_| serde_json::from_value(value.clone()).ok());
    let selected_value = value.pointer("/solution/selected").or_else(|| value.get("selected"));
    let selected: Vec<usize> = match selected_value {
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| CliError::Usage(format!("{}: bad selection: {e}", solution_path.display())))?,
        None if claimed.as_ref().is_some_and(|r| r.solution.is_none()) => {
            return Err(CliError::Usage(format!("{}: report has no solution to verify", solution_path.display())));
        }
        None => return Err(CliError::Usage(format!("{}: no \"selected\" list found", solution_path.display()))),
    };

    let bad_id = |e: crate::model::ModelError| CliError::Usage(format!("{}: {e}", solution_path.display()));
    let (feasible, cost, per_group) = match &instance {
        Instance::Pvc(p) => {
            let s = evaluate_vertex_solution(p, &selected).map_err(bad_id)?;
            (s.feasible, format_rational(&s.total_weight), s.per_group_profit.iter().map(format_rational).collect())
        }
        Instance::Pec(p) => {
            let s = evaluate_edge_solution(p, &selected).map_err(bad_id)?;
            (s.feasible, format_rational(&s.total_cost), s.per_group_covered.iter().map(usize::to_string).collect())
        }
        Instance::Wppec(w) => {
            if let Some(&e) = selected.iter().find(|&&e| e >= w.graph().m()) {
                return Err(CliError::Usage(format!("edge {e} out of range")));
            }
            let (cost, per_group) = w.evaluate(&selected);
            (w.accepts(&selected), format_rational(&cost), per_group.iter().map(format_rational).collect())
        }
        Instance::Knapsack(k) => {
            if let Some(&i) = selected.iter().find(|&&i| i >= k.len()) {
                return Err(CliError::Usage(format!("item {i} out of range")));
            }
            let mut items = selected.clone();
            items.sort_unstable();
            items.dedup();
            let cost: Rational = items.iter().map(|&i| &k.items()[i].1).sum();
            let profit: Rational = items.iter().map(|&i| &k.items()[i].0).sum();
            (k.accepts(&items), format_rational(&cost), vec![format_rational(&profit)])
        }
    };

    let digest = report::instance_digest(&instance);
    let matches_report = claimed.as_ref().map(|r| {
        let solution_ok = r.solution.as_ref().is_some_and(|s| s.cost == cost);
        let certificate_ok = r.certificates.as_ref().is_none_or(|c| c.feasible == feasible && c.per_group == per_group);
        r.instance_digest == digest && solution_ok && certificate_ok
    });
    let out = VerifyReport {
        instance_kind: instance.kind().to_string(),
        instance_digest: digest,
        selected,
        feasible,
        cost,
        per_group,
        matches_report,
    };
    let mut stdout = serde_json::to_string_pretty(&out).expect("verify output serialises");
    stdout.push('\n');
    let (code, stderr) = match (feasible, matches_report) {
        (_, Some(false)) => (EXIT_ERROR, "error: recomputed values differ from the report\n".to_string()),
        (true, _) => (EXIT_SOLVED, String::new()),
        (false, _) => (EXIT_INFEASIBLE, String::new()),
    };
    Ok(Output { stdout, stderr, code })
}
