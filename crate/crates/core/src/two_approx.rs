//! LP-rounding 2-approximation for partition vertex cover with profits.
//!
//! For every guess `G` of the ω heaviest vertices of an optimal cover:
//!
//! 1. vertices heavier than the lightest guessed one are removed, guessed
//!    vertices become free (`w' = 0`, `y = 1`);
//! 2. the restricted LP relaxation is solved;
//! 3. each edge is charged to its endpoint with the larger `y'`
//!    (`phi`), and `y~ = min(1, 2 y')`;
//! 4. a sparse LP over one variable per vertex maximises the profit of the
//!    first group, keeps the others at their thresholds and caps the
//!    modified cost at that of `y~`;
//! 5. every vertex that is positive in the basic sparse optimum is taken.
//!
//! Subsets smaller than ω are tried directly as complete solutions. The
//! cheapest feasible cover found is returned.

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::lp::{self, count_fractional, LpError, LpModel, LpSolution, LpStatus, Relation, Sense};
use crate::model::{evaluate_vertex_solution, PvcInstance, VertexSolution};
use crate::number::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoApproxError {
    #[error("instance is infeasible: even selecting every vertex misses a threshold")]
    Infeasible,
    #[error("numerical failure for guess {guess:?}: {reason}")]
    PipelineFailure { guess: Vec<usize>, reason: String },
    #[error("sparse LP for guess {guess:?} has {fractional} fractional variables, more than {omega}")]
    NonBasicSolution { guess: Vec<usize>, fractional: usize, omega: usize },
    #[error("cannot build a thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModifiedWeight {
    /// Guessed vertex, free of charge.
    Zero,
    Original(Rational),
    /// Heavier than the lightest guessed vertex; excluded from the LP.
    Removed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guess {
    /// Sorted vertex ids.
    pub guessed: Vec<usize>,
    /// Fewer than ω vertices: tried as a finished solution, no LP.
    pub complete_candidate: bool,
}

impl Guess {
    /// Modified weight of every vertex under this guess.
    pub fn modified_weights(&self, instance: &PvcInstance) -> Vec<ModifiedWeight> {
        let mut out: Vec<ModifiedWeight> =
            instance.vertex_weights().iter().map(|w| ModifiedWeight::Original(w.clone())).collect();
        let Some(&lightest) = self.guessed.iter().min_by(|&&a, &&b| heavier_cmp(instance, a, b)) else {
            return out;
        };
        for v in 0..instance.n() {
            if self.guessed.binary_search(&v).is_ok() {
                out[v] = ModifiedWeight::Zero;
            } else if heavier_cmp(instance, v, lightest).is_gt() {
                out[v] = ModifiedWeight::Removed;
            }
        }
        out
    }
}

/// Total order on vertices: by weight, then by id.
pub fn heavier_cmp(instance: &PvcInstance, a: usize, b: usize) -> std::cmp::Ordering {
    instance.weight(a).cmp(instance.weight(b)).then(a.cmp(&b))
}

/// All subsets of size at most ω, by size and then lexicographically.
pub fn enumerate_guesses(instance: &PvcInstance) -> Vec<Guess> {
    let n = instance.n();
    let omega = instance.omega();
    let mut out = Vec::new();
    for k in 0..=omega.min(n) {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            out.push(Guess { guessed: subset.clone(), complete_candidate: k < omega });
            // advance to the next k-combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| subset[i] != i + n - k) else { break };
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    out
}

/// Restricted LP together with the variable layout needed downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedLp {
    pub model: LpModel,
    /// LP column of `y_v`, or `None` for removed vertices.
    pub y_var: Vec<Option<usize>>,
    /// LP column of `x_e`, or `None` when both endpoints are removed.
    pub x_var: Vec<Option<usize>>,
    pub modified: Vec<ModifiedWeight>,
}

/// Relaxation `min sum w'(v) y_v` subject to the group profit rows
/// and `y_u + y_v >= x_e`, with removed vertices eliminated.
pub fn build_restricted_lp(instance: &PvcInstance, guess: &Guess) -> RestrictedLp {
    build_relaxation(instance, guess.modified_weights(instance))
}

/// Relaxation of the whole instance, without guessing.
pub fn build_full_lp(instance: &PvcInstance) -> RestrictedLp {
    let weights = instance.vertex_weights().iter().map(|w| ModifiedWeight::Original(w.clone())).collect();
    build_relaxation(instance, weights)
}

fn build_relaxation(instance: &PvcInstance, modified: Vec<ModifiedWeight>) -> RestrictedLp {
    let graph = instance.graph();
    let label = |v: usize| graph.label(v);
    let mut model = LpModel::new(Sense::Minimize);
    let mut y_var = vec![None; instance.n()];
    for (v, w) in modified.iter().enumerate() {
        y_var[v] = match w {
            ModifiedWeight::Zero => Some(model.add_variable(format!("y_{}", label(v)), 0.0, 1.0, 1.0)),
            ModifiedWeight::Original(w) => Some(model.add_variable(format!("y_{}", label(v)), to_f64(w), 0.0, 1.0)),
            ModifiedWeight::Removed => None,
        };
    }
    let mut x_var = vec![None; instance.m()];
    for (k, e) in graph.edges().iter().enumerate() {
        if y_var[e.u].is_some() || y_var[e.v].is_some() {
            x_var[k] = Some(model.add_variable(format!("x_{k}"), 0.0, 0.0, 1.0));
        }
    }
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); instance.omega()];
    for (k, x) in x_var.iter().enumerate() {
        if let Some(x) = *x {
            rows[instance.group(k)].push((x, to_f64(instance.profit(k))));
        }
    }
    for (terms, rho) in rows.into_iter().zip(instance.thresholds()) {
        model.add_constraint(terms, Relation::Ge, to_f64(rho));
    }
    for (k, e) in graph.edges().iter().enumerate() {
        let Some(x) = x_var[k] else { continue };
        let mut terms: Vec<(usize, f64)> = [y_var[e.u], y_var[e.v]].into_iter().flatten().map(|y| (y, 1.0)).collect();
        terms.push((x, -1.0));
        model.add_constraint(terms, Relation::Ge, 0.0);
    }
    RestrictedLp { model, y_var, x_var, modified }
}

impl RestrictedLp {
    /// `y'` per vertex (0 for removed vertices).
    pub fn y_values(&self, solution: &LpSolution) -> Vec<f64> {
        self.y_var.iter().map(|y| y.map_or(0.0, |j| solution.values[j])).collect()
    }

    pub fn x_values(&self, solution: &LpSolution) -> Vec<f64> {
        self.x_var.iter().map(|x| x.map_or(0.0, |j| solution.values[j])).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSolution {
    /// Endpoint each edge is charged to; `None` when both ends are removed.
    pub phi: Vec<Option<usize>>,
    pub x_tilde: Vec<f64>,
    pub y_tilde: Vec<f64>,
    /// `group_profit_by_vertex[g][v]` = total profit of group-`g` edges charged to `v`.
    pub group_profit_by_vertex: Vec<Vec<Rational>>,
}

/// Charges each edge to its endpoint with the larger `y'` (lower id on
/// ties; removed endpoints never win) and doubles `y'` capped at 1.
pub fn phi_transform(instance: &PvcInstance, restricted: &RestrictedLp, solution: &LpSolution) -> PhiSolution {
    let y = restricted.y_values(solution);
    let y_tilde: Vec<f64> = y
        .iter()
        .zip(&restricted.y_var)
        .map(|(&v, var)| if var.is_some() { (2.0 * v).min(1.0) } else { 0.0 })
        .collect();
    let mut group_profit_by_vertex = vec![vec![Rational::zero(); instance.n()]; instance.omega()];
    let mut phi = Vec::with_capacity(instance.m());
    let mut x_tilde = Vec::with_capacity(instance.m());
    for (k, e) in instance.graph().edges().iter().enumerate() {
        let (lo, hi) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
        let target = match (restricted.y_var[lo].is_some(), restricted.y_var[hi].is_some()) {
            (true, true) => Some(if y[hi] > y[lo] { hi } else { lo }),
            (true, false) => Some(lo),
            (false, true) => Some(hi),
            (false, false) => None,
        };
        phi.push(target);
        x_tilde.push(target.map_or(0.0, |v| y_tilde[v]));
        if let Some(v) = target {
            group_profit_by_vertex[instance.group(k)][v] += instance.profit(k);
        }
    }
    PhiSolution { phi, x_tilde, y_tilde, group_profit_by_vertex }
}

impl PhiSolution {
    /// `sum w'(v) y~_v`.
    pub fn cost(&self, modified: &[ModifiedWeight]) -> f64 {
        modified
            .iter()
            .zip(&self.y_tilde)
            .map(|(w, y)| match w {
                ModifiedWeight::Original(w) => to_f64(w) * y,
                _ => 0.0,
            })
            .sum()
    }

    /// `sum_{e in C_g} p(e) x~_e` per group.
    pub fn group_coverage(&self, instance: &PvcInstance) -> Vec<f64> {
        let mut out = vec![0.0; instance.omega()];
        for (k, x) in self.x_tilde.iter().enumerate() {
            out[instance.group(k)] += to_f64(instance.profit(k)) * x;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseLp {
    pub model: LpModel,
    /// LP column of `z_v`, or `None` for removed vertices.
    pub z_var: Vec<Option<usize>>,
}

/// `max sum p(C_{1,v}) z_v` subject to the other groups' thresholds and
/// `sum w'(v) z_v <= sum w'(v) y~_v`, with `0 <= z <= 1`.
pub fn build_sparse_lp(instance: &PvcInstance, restricted: &RestrictedLp, phi: &PhiSolution) -> SparseLp {
    let graph = instance.graph();
    let mut model = LpModel::new(Sense::Maximize);
    let mut z_var = vec![None; instance.n()];
    for v in 0..instance.n() {
        if restricted.y_var[v].is_some() {
            let c = to_f64(&phi.group_profit_by_vertex[0][v]);
            z_var[v] = Some(model.add_variable(format!("z_{}", graph.label(v)), c, 0.0, 1.0));
        }
    }
    for g in 1..instance.omega() {
        let terms = (0..instance.n())
            .filter_map(|v| z_var[v].map(|z| (z, to_f64(&phi.group_profit_by_vertex[g][v]))))
            .filter(|t| t.1 != 0.0)
            .collect();
        model.add_constraint(terms, Relation::Ge, to_f64(&instance.thresholds()[g]));
    }
    let mut terms = Vec::new();
    for v in 0..instance.n() {
        if let (Some(z), ModifiedWeight::Original(w)) = (z_var[v], &restricted.modified[v]) {
            terms.push((z, to_f64(w)));
        }
    }
    let budget = phi.cost(&restricted.modified);
    model.add_constraint(terms, Relation::Le, budget);
    SparseLp { model, z_var }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseRounded {
    /// `z^` per vertex (0 for removed vertices).
    pub z_hat: Vec<f64>,
    pub ones: Vec<usize>,
    pub fractional: Vec<usize>,
    /// `z* = 1` on `ones` and `fractional`.
    pub z_star: Vec<bool>,
}

/// Rounds every positive coordinate of a basic sparse optimum up to 1.
pub fn round_sparse(sparse: &SparseLp, solution: &LpSolution, omega: usize) -> Result<SparseRounded, usize> {
    let z_hat: Vec<f64> = sparse.z_var.iter().map(|z| z.map_or(0.0, |j| solution.values[j])).collect();
    let mut ones = Vec::new();
    let mut fractional = Vec::new();
    for (v, &z) in z_hat.iter().enumerate() {
        if z >= 1.0 - lp::FRAC_TOL {
            ones.push(v);
        } else if z > lp::FRAC_TOL {
            fractional.push(v);
        }
    }
    if fractional.len() > omega {
        return Err(fractional.len());
    }
    let mut z_star = vec![false; z_hat.len()];
    for &v in ones.iter().chain(&fractional) {
        z_star[v] = true;
    }
    Ok(SparseRounded { z_hat, ones, fractional, z_star })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoApproxConfig {
    /// Worker threads for the guess loop; 1 runs inline.
    pub jobs: usize,
    /// Keep a [`GuessTrace`] for every guess.
    pub record_traces: bool,
}

impl Default for TwoApproxConfig {
    fn default() -> Self {
        Self { jobs: 1, record_traces: false }
    }
}

/// Intermediate results of one guess.
#[derive(Debug, Clone, PartialEq)]
pub struct GuessTrace {
    pub guess: Guess,
    pub restricted: Option<RestrictedLp>,
    pub restricted_solution: Option<LpSolution>,
    pub phi: Option<PhiSolution>,
    pub sparse: Option<SparseLp>,
    pub sparse_solution: Option<LpSolution>,
    pub rounded: Option<SparseRounded>,
    /// Candidate cover produced by this guess, before the feasibility check.
    pub candidate: Option<Vec<usize>>,
    pub candidate_feasible: bool,
}

impl GuessTrace {
    fn new(guess: Guess) -> Self {
        Self {
            guess,
            restricted: None,
            restricted_solution: None,
            phi: None,
            sparse: None,
            sparse_solution: None,
            rounded: None,
            candidate: None,
            candidate_feasible: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoApproxResult {
    pub solution: VertexSolution,
    /// Guess that produced the returned cover.
    pub winning_guess: Vec<usize>,
    /// Restricted-LP optimum of the winning guess, if it went through the LP.
    pub winning_lp_value: Option<f64>,
    /// Optimum of the unguessed relaxation, a lower bound on OPT.
    pub lp_lower_bound: f64,
    pub guesses: usize,
    pub pipelines: usize,
    pub traces: Vec<GuessTrace>,
}

struct Outcome {
    candidate: Option<(VertexSolution, Option<f64>)>,
    ran_pipeline: bool,
    trace: Option<GuessTrace>,
}

fn failure(guess: &Guess, reason: impl Into<String>) -> TwoApproxError {
    TwoApproxError::PipelineFailure { guess: guess.guessed.clone(), reason: reason.into() }
}

fn lp_failure(guess: &Guess, err: LpError) -> TwoApproxError {
    failure(guess, err.to_string())
}

fn run_guess(instance: &PvcInstance, guess: &Guess, keep_trace: bool) -> Result<Outcome, TwoApproxError> {
    let mut trace = GuessTrace::new(guess.clone());
    let finish = |trace: GuessTrace, candidate, ran_pipeline| Outcome {
        candidate,
        ran_pipeline,
        trace: keep_trace.then_some(trace),
    };

    if guess.complete_candidate {
        let solution = evaluate_vertex_solution(instance, &guess.guessed).expect("guess ids are in range");
        trace.candidate = Some(guess.guessed.clone());
        trace.candidate_feasible = solution.feasible;
        let candidate = solution.feasible.then_some((solution, None));
        return Ok(finish(trace, candidate, false));
    }

    let restricted = build_restricted_lp(instance, guess);
    let first = lp::solve_lp(&restricted.model).map_err(|e| lp_failure(guess, e))?;
    let feasible = first.status == LpStatus::Optimal;
    if keep_trace {
        trace.restricted = Some(restricted.clone());
        trace.restricted_solution = Some(first.clone());
    }
    if !feasible {
        return Ok(finish(trace, None, false));
    }

    let phi = phi_transform(instance, &restricted, &first);
    let sparse = build_sparse_lp(instance, &restricted, &phi);
    let second = lp::solve_lp(&sparse.model).map_err(|e| lp_failure(guess, e))?;
    if keep_trace {
        trace.phi = Some(phi.clone());
        trace.sparse = Some(sparse.clone());
        trace.sparse_solution = Some(second.clone());
    }
    if second.status != LpStatus::Optimal {
        return Err(failure(guess, format!("sparse LP is {:?} although y~ is feasible", second.status)));
    }
    debug_assert!(count_fractional(&sparse.model, &second.values) <= sparse.model.num_constraints());
    let rounded = round_sparse(&sparse, &second, instance.omega()).map_err(|fractional| {
        TwoApproxError::NonBasicSolution { guess: guess.guessed.clone(), fractional, omega: instance.omega() }
    })?;

    let mut selected: Vec<usize> = guess.guessed.clone();
    selected.extend(rounded.ones.iter().chain(&rounded.fractional));
    selected.sort_unstable();
    selected.dedup();
    let solution = evaluate_vertex_solution(instance, &selected).expect("vertex ids are in range");
    if keep_trace {
        trace.rounded = Some(rounded);
        trace.candidate = Some(selected);
        trace.candidate_feasible = solution.feasible;
    }
    let candidate = solution.feasible.then_some((solution, Some(first.objective_value)));
    Ok(finish(trace, candidate, true))
}

fn better(a: &VertexSolution, b: &VertexSolution) -> bool {
    (&a.total_weight, &a.selected) < (&b.total_weight, &b.selected)
}

/// Runs every guess and returns the cheapest feasible cover found.
pub fn solve_two_approx(instance: &PvcInstance, config: &TwoApproxConfig) -> Result<TwoApproxResult, TwoApproxError> {
    if !instance.is_feasible() {
        return Err(TwoApproxError::Infeasible);
    }
    let full = build_full_lp(instance);
    let relaxed = lp::solve_lp(&full.model).map_err(|e| failure(&Guess { guessed: Vec::new(), complete_candidate: false }, e.to_string()))?;
    let lp_lower_bound = relaxed.objective_value;

    let guesses = enumerate_guesses(instance);
    let keep = config.record_traces;
    let outcomes: Vec<Result<Outcome, TwoApproxError>> = if config.jobs <= 1 {
        guesses.iter().map(|g| run_guess(instance, g, keep)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| TwoApproxError::ThreadPool(e.to_string()))?;
        pool.install(|| guesses.par_iter().map(|g| run_guess(instance, g, keep)).collect())
    };

    let mut best: Option<(VertexSolution, Vec<usize>, Option<f64>)> = None;
    let mut pipelines = 0;
    let mut traces = Vec::new();
    for (guess, outcome) in guesses.iter().zip(outcomes) {
        let outcome = outcome?;
        pipelines += usize::from(outcome.ran_pipeline);
        traces.extend(outcome.trace);
        if let Some((solution, lp_value)) = outcome.candidate {
            if best.as_ref().is_none_or(|(b, _, _)| better(&solution, b)) {
                best = Some((solution, guess.guessed.clone(), lp_value));
            }
        }
    }
    let Some((solution, winning_guess, winning_lp_value)) = best else {
        return Err(failure(&Guess { guessed: Vec::new(), complete_candidate: false }, "no guess produced a feasible cover"));
    };
    Ok(TwoApproxResult {
        solution,
        winning_guess,
        winning_lp_value,
        lp_lower_bound,
        guesses: guesses.len(),
        pipelines,
        traces,
    })
}
