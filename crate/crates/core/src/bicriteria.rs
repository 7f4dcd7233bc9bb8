//! Threshold rounding of the LP relaxation.
//!
//! Every vertex with `y*_v >= ε` is selected, so the cover costs at most
//! `O_LP / ε`. An edge is missed only when both endpoints are below ε
//! (so `x*_e < 2ε`). The per-group target `(1 - 2ε) ρ_g` is reported and
//! checked, but it is not guaranteed: when the LP reaches a threshold with
//! small `y*` values, every edge of the group can fall below the cut.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lp::{self, LpError, LpStatus, FRAC_TOL, OBJ_TOL};
use crate::model::{evaluate_vertex_solution, PvcInstance, VertexSolution};
use crate::number::{format_rational, int, to_f64, Rational};
use crate::two_approx::build_full_lp;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BiCriteriaError {
    #[error("epsilon must lie strictly between 0 and 1/2, got {0}")]
    InvalidEpsilon(String),
    #[error("the LP relaxation is infeasible")]
    LpInfeasible,
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiCriteriaResult {
    pub epsilon: Rational,
    pub solution: VertexSolution,
    /// `y*` per vertex.
    pub lp_values: Vec<f64>,
    pub lp_value: f64,
    /// `O_LP / ε`.
    pub cost_bound: f64,
    /// `(1 - 2ε) ρ_g` per group.
    pub coverage_bounds: Vec<f64>,
    pub cost_ok: bool,
    pub coverage_ok: bool,
}

/// Vertices whose LP value reaches `epsilon` (with [`FRAC_TOL`] slack).
pub fn threshold_round(y: &[f64], epsilon: f64) -> Vec<usize> {
    (0..y.len()).filter(|&v| y[v] >= epsilon - FRAC_TOL).collect()
}

pub fn check_epsilon(epsilon: &Rational) -> Result<(), BiCriteriaError> {
    let half = Rational::new(One::one(), 2.into());
    if *epsilon <= Rational::zero() || *epsilon >= half {
        return Err(BiCriteriaError::InvalidEpsilon(format_rational(epsilon)));
    }
    Ok(())
}

/// Rounds an already solved relaxation; used to sweep ε over one solve.
pub fn round_with(instance: &PvcInstance, lp_values: &[f64], lp_value: f64, epsilon: &Rational) -> Result<BiCriteriaResult, BiCriteriaError> {
    check_epsilon(epsilon)?;
    let eps = to_f64(epsilon);
    let selected = threshold_round(lp_values, eps);
    let solution = evaluate_vertex_solution(instance, &selected).expect("vertex ids are in range");
    let cost_bound = lp_value / eps;
    let factor = int(1) - epsilon * int(2);
    let coverage_bounds: Vec<f64> = instance.thresholds().iter().map(|rho| to_f64(&(&factor * rho))).collect();
    let cost_ok = to_f64(&solution.total_weight) <= cost_bound + OBJ_TOL;
    let coverage_ok = solution
        .per_group_profit
        .iter()
        .zip(&coverage_bounds)
        .all(|(got, bound)| to_f64(got) >= bound - OBJ_TOL);
    Ok(BiCriteriaResult {
        epsilon: epsilon.clone(),
        solution,
        lp_values: lp_values.to_vec(),
        lp_value,
        cost_bound,
        coverage_bounds,
        cost_ok,
        coverage_ok,
    })
}

/// Solves the relaxation and thresholds it at `epsilon`.
pub fn solve_bicriteria(instance: &PvcInstance, epsilon: &Rational) -> Result<BiCriteriaResult, BiCriteriaError> {
    check_epsilon(epsilon)?;
    let (y, value) = solve_relaxation(instance)?;
    round_with(instance, &y, value, epsilon)
}

/// `y*` and `O_LP` of the unguessed relaxation.
pub fn solve_relaxation(instance: &PvcInstance) -> Result<(Vec<f64>, f64), BiCriteriaError> {
    let full = build_full_lp(instance);
    let solution = lp::solve_lp(&full.model)?;
    if solution.status != LpStatus::Optimal {
        return Err(BiCriteriaError::LpInfeasible);
    }
    Ok((full.y_values(&solution), solution.objective_value))
}
