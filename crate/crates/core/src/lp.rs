//! Dense bounded-variable primal simplex.
//!
//! The solver always returns a basic (extreme-point) optimum: every
//! variable that is not basic sits at one of its bounds, so at most
//! `num_constraints()` structural variables can lie strictly inside their
//! bounds. The LP rounding in [`crate::two_approx`] relies on that property.
//!
//! Phase one drives a full set of artificial variables to zero, phase two
//! optimises the real objective. Both phases use Bland's rule (smallest
//! eligible index enters; ties in the ratio test leave by smallest index).

use std::fmt;

use thiserror::Error;

/// Feasibility tolerance for constraint rows and bounds.
pub const FEAS_TOL: f64 = 1e-9;
/// Values this close to a bound are snapped onto it.
pub const FRAC_TOL: f64 = 1e-9;
/// Tolerance on objective comparisons.
pub const OBJ_TOL: f64 = 1e-7;

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// Per-variable `[lo, hi]`; `hi` may be `f64::INFINITY`.
    pub bounds: Vec<(f64, f64)>,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Empty unless `status == Optimal`.
    pub values: Vec<f64>,
    pub objective_value: f64,
    /// Structural variables in the final basis, ascending.
    pub basis: Vec<usize>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("malformed model: {0}")]
    InvalidModel(String),
    #[error("simplex did not converge within {iterations} pivots")]
    NumericalFailure { iterations: usize },
}

impl LpModel {
    pub fn new(sense: Sense) -> Self {
        Self { sense, objective: Vec::new(), constraints: Vec::new(), bounds: Vec::new(), names: Vec::new() }
    }

    pub fn add_variable(&mut self, name: impl Into<String>, cost: f64, lo: f64, hi: f64) -> usize {
        self.objective.push(cost);
        self.bounds.push((lo, hi));
        self.names.push(name.into());
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) -> usize {
        self.constraints.push(Constraint { terms, relation, rhs });
        self.constraints.len() - 1
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_variables();
        if self.bounds.len() != n || self.names.len() != n {
            return Err(LpError::InvalidModel(format!(
                "{n} objective coefficients, {} bounds, {} names",
                self.bounds.len(),
                self.names.len()
            )));
        }
        if let Some(j) = self.objective.iter().position(|c| !c.is_finite()) {
            return Err(LpError::InvalidModel(format!("objective coefficient of {} is not finite", self.names[j])));
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !lo.is_finite() || hi.is_nan() || lo > hi {
                return Err(LpError::InvalidModel(format!("bad bounds [{lo}, {hi}] on {}", self.names[j])));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() {
                return Err(LpError::InvalidModel(format!("row {i} has a non-finite right-hand side")));
            }
            for &(j, a) in &c.terms {
                if j >= n || !a.is_finite() {
                    return Err(LpError::InvalidModel(format!("row {i} has a bad term ({j}, {a})")));
                }
            }
        }
        Ok(())
    }

    pub fn row_activity(&self, row: usize, values: &[f64]) -> f64 {
        self.constraints[row].terms.iter().map(|&(j, a)| a * values[j]).sum()
    }

    pub fn objective_at(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// Largest violation of any row or bound at `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            worst = worst.max(lo - values[j]).max(values[j] - hi);
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let lhs = self.row_activity(i, values);
            let v = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(usize, f64)], names: &[String]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, " 0");
    }
    for (k, &(j, a)) in terms.iter().enumerate() {
        let sign = if a < 0.0 { "-" } else if k > 0 { "+" } else { "" };
        write!(f, " {sign}{} {}", a.abs(), names[j])?;
    }
    Ok(())
}

/// Plain-text listing in the style of the CPLEX LP format.
impl fmt::Display for LpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", match self.sense {
            Sense::Minimize => "Minimize",
            Sense::Maximize => "Maximize",
        })?;
        let objective: Vec<(usize, f64)> = self.objective.iter().copied().enumerate().filter(|t| t.1 != 0.0).collect();
        write!(f, " obj:")?;
        write_terms(f, &objective, &self.names)?;
        writeln!(f)?;
        writeln!(f, "Subject To")?;
        for (i, c) in self.constraints.iter().enumerate() {
            write!(f, " c{i}:")?;
            write_terms(f, &c.terms, &self.names)?;
            writeln!(f, " {} {}", c.relation.symbol(), c.rhs)?;
        }
        writeln!(f, "Bounds")?;
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if hi.is_infinite() {
                writeln!(f, " {} >= {lo}", self.names[j])?;
            } else {
                writeln!(f, " {lo} <= {} <= {hi}", self.names[j])?;
            }
        }
        writeln!(f, "End")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Basic,
    AtLower,
    AtUpper,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

/// Tableau over shifted variables `x' = x - lo`, so every column ranges
/// over `[0, upper[j]]`. Column layout: structurals, slacks, artificials.
struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Current value of each basic variable, by row.
    beta: Vec<f64>,
    basis: Vec<usize>,
    position: Vec<Position>,
    upper: Vec<f64>,
    reduced: Vec<f64>,
    first_artificial: usize,
    iterations: usize,
    max_iterations: usize,
}

impl Tableau {
    fn build(model: &LpModel) -> Self {
        let n = model.num_variables();
        let m = model.num_constraints();
        let slacks = model.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let width = n + slacks + m;
        let first_artificial = n + slacks;

        let mut upper = Vec::with_capacity(width);
        upper.extend(model.bounds.iter().map(|&(lo, hi)| hi - lo));
        upper.extend(std::iter::repeat_n(f64::INFINITY, slacks + m));

        let mut rows = Vec::with_capacity(m);
        let mut beta = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in model.constraints.iter().enumerate() {
            let mut row = vec![0.0; width];
            let mut rhs = c.rhs;
            for &(j, a) in &c.terms {
                row[j] += a;
                rhs -= a * model.bounds[j].0;
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = 1.0;
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            if rhs < 0.0 {
                row.iter_mut().for_each(|a| *a = -*a);
                rhs = -rhs;
            }
            row[first_artificial + i] = 1.0;
            rows.push(row);
            beta.push(rhs);
        }

        let mut position = vec![Position::AtLower; width];
        let basis: Vec<usize> = (first_artificial..width).collect();
        for &b in &basis {
            position[b] = Position::Basic;
        }
        Self {
            rows,
            beta,
            basis,
            position,
            upper,
            reduced: vec![0.0; width],
            first_artificial,
            iterations: 0,
            max_iterations: 50 * (n + m).max(1),
        }
    }

    fn width(&self) -> usize {
        self.upper.len()
    }

    fn price(&mut self, cost: &[f64]) {
        self.reduced = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (d, a) in self.reduced.iter_mut().zip(row) {
                    *d -= cb * a;
                }
            }
        }
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.position[j] {
            Position::AtUpper => self.upper[j],
            _ => 0.0,
        }
    }

    fn entering(&self) -> Option<usize> {
        (0..self.width()).find(|&j| {
            if self.upper[j] <= 0.0 {
                return false;
            }
            match self.position[j] {
                Position::AtLower => self.reduced[j] < -COST_TOL,
                Position::AtUpper => self.reduced[j] > COST_TOL,
                Position::Basic => false,
            }
        })
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j];
        self.rows[r].iter_mut().for_each(|a| *a /= p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j];
            if f != 0.0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= f * b;
                }
                row[j] = 0.0;
            }
        }
        let f = self.reduced[j];
        if f != 0.0 {
            for (d, b) in self.reduced.iter_mut().zip(&pivot_row) {
                *d -= f * b;
            }
            self.reduced[j] = 0.0;
        }
    }

    fn run(&mut self) -> Result<PhaseEnd, LpError> {
        while let Some(j) = self.entering() {
            self.iterations += 1;
            if self.iterations > self.max_iterations {
                return Err(LpError::NumericalFailure { iterations: self.iterations - 1 });
            }
            let increasing = self.position[j] == Position::AtLower;
            let sigma = if increasing { 1.0 } else { -1.0 };

            // (step, leaving row, leaving variable, leaves at upper)
            let mut best: Option<(f64, usize, usize, bool)> = None;
            for i in 0..self.rows.len() {
                let delta = -sigma * self.rows[i][j];
                let b = self.basis[i];
                let (step, to_upper) = if delta < -PIVOT_TOL {
                    (self.beta[i] / -delta, false)
                } else if delta > PIVOT_TOL && self.upper[b].is_finite() {
                    ((self.upper[b] - self.beta[i]) / delta, true)
                } else {
                    continue;
                };
                let step = step.max(0.0);
                let better = match best {
                    None => true,
                    Some((s, _, var, _)) => step < s - 1e-12 || (step <= s + 1e-12 && b < var),
                };
                if better {
                    best = Some((step, i, b, to_upper));
                }
            }

            let flip = self.upper[j];
            match best {
                Some((step, r, _, to_upper)) if step < flip => {
                    for i in 0..self.rows.len() {
                        self.beta[i] += -sigma * self.rows[i][j] * step;
                    }
                    let leaving = self.basis[r];
                    self.position[leaving] = if to_upper { Position::AtUpper } else { Position::AtLower };
                    self.beta[r] = if increasing { step } else { self.upper[j] - step };
                    self.basis[r] = j;
                    self.position[j] = Position::Basic;
                    self.pivot(r, j);
                }
                _ if flip.is_finite() => {
                    for i in 0..self.rows.len() {
                        self.beta[i] += -sigma * self.rows[i][j] * flip;
                    }
                    self.position[j] = if increasing { Position::AtUpper } else { Position::AtLower };
                }
                _ => return Ok(PhaseEnd::Unbounded),
            }
        }
        Ok(PhaseEnd::Optimal)
    }

    fn infeasibility(&self) -> f64 {
        self.basis
            .iter()
            .zip(&self.beta)
            .filter(|(&b, _)| b >= self.first_artificial)
            .map(|(_, &v)| v.max(0.0))
            .sum()
    }

    /// Pivot zero-valued artificials out of the basis where possible and
    /// pin every artificial to zero for phase two.
    fn retire_artificials(&mut self) {
        for r in 0..self.rows.len() {
            if self.basis[r] < self.first_artificial {
                continue;
            }
            let candidate = (0..self.first_artificial)
                .find(|&k| self.position[k] != Position::Basic && self.rows[r][k].abs() > PIVOT_TOL);
            if let Some(k) = candidate {
                let leaving = self.basis[r];
                self.position[leaving] = Position::AtLower;
                self.beta[r] = self.nonbasic_value(k);
                self.basis[r] = k;
                self.position[k] = Position::Basic;
                self.pivot(r, k);
            }
        }
        for j in self.first_artificial..self.width() {
            self.upper[j] = 0.0;
        }
    }

    fn structural_values(&self, n: usize) -> Vec<f64> {
        let mut values: Vec<f64> = (0..n).map(|j| self.nonbasic_value(j)).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                values[b] = self.beta[i];
            }
        }
        values
    }
}

/// Solves `model` to a basic optimum, or reports infeasibility/unboundedness.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution, LpError> {
    model.validate()?;
    let n = model.num_variables();
    let mut tableau = Tableau::build(model);
    let width = tableau.width();

    let mut phase_one = vec![0.0; width];
    phase_one[tableau.first_artificial..].iter_mut().for_each(|c| *c = 1.0);
    tableau.price(&phase_one);
    tableau.run()?;
    let scale = 1.0 + model.constraints.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
    if tableau.infeasibility() > FEAS_TOL * scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            values: Vec::new(),
            objective_value: f64::NAN,
            basis: Vec::new(),
            iterations: tableau.iterations,
        });
    }
    tableau.retire_artificials();

    let sign = match model.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut phase_two = vec![0.0; width];
    for (c, &o) in phase_two.iter_mut().zip(&model.objective) {
        *c = sign * o;
    }
    tableau.price(&phase_two);
    if let PhaseEnd::Unbounded = tableau.run()? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            values: Vec::new(),
            objective_value: sign * f64::NEG_INFINITY,
            basis: Vec::new(),
            iterations: tableau.iterations,
        });
    }

    let mut values = tableau.structural_values(n);
    for (x, &(lo, hi)) in values.iter_mut().zip(&model.bounds) {
        *x += lo;
        if (*x - lo).abs() <= FRAC_TOL {
            *x = lo;
        } else if hi.is_finite() && (*x - hi).abs() <= FRAC_TOL {
            *x = hi;
        }
    }
    let mut basis: Vec<usize> = tableau.basis.iter().copied().filter(|&b| b < n).collect();
    basis.sort_unstable();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: model.objective_at(&values),
        values,
        basis,
        iterations: tableau.iterations,
    })
}

/// Number of variables strictly inside their bounds (beyond [`FRAC_TOL`]).
pub fn count_fractional(model: &LpModel, values: &[f64]) -> usize {
    values
        .iter()
        .zip(&model.bounds)
        .filter(|(&x, &(lo, hi))| x > lo + FRAC_TOL && x < hi - FRAC_TOL)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-7
    }

    /// Vertex-cover LP over a triangle, in y only (x forced to 1 by ρ=3).
    fn triangle_cover() -> LpModel {
        let mut lp = LpModel::new(Sense::Minimize);
        for v in 0..3 {
            lp.add_variable(format!("y{v}"), 1.0, 0.0, 1.0);
        }
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            lp.add_constraint(vec![(u, 1.0), (v, 1.0)], Relation::Ge, 1.0);
        }
        lp
    }

    /// Brute-force oracle: enumerate every basis of active constraints
    /// among rows and bounds for a 3-variable LP, keep feasible vertices.
    fn enumerate_vertices_3(model: &LpModel) -> Vec<[f64; 3]> {
        assert_eq!(model.num_variables(), 3);
        let mut planes: Vec<([f64; 3], f64)> = Vec::new();
        for c in &model.constraints {
            let mut a = [0.0; 3];
            for &(j, v) in &c.terms {
                a[j] += v;
            }
            planes.push((a, c.rhs));
        }
        for j in 0..3 {
            let mut a = [0.0; 3];
            a[j] = 1.0;
            planes.push((a, model.bounds[j].0));
            planes.push((a, model.bounds[j].1));
        }
        let mut out = Vec::new();
        let k = planes.len();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    if let Some(x) = solve3([planes[a], planes[b], planes[c]]) {
                        if model.max_violation(&x) <= 1e-9 {
                            out.push(x);
                        }
                    }
                }
            }
        }
        out
    }

    fn solve3(p: [([f64; 3], f64); 3]) -> Option<[f64; 3]> {
        let mut m = [[0.0; 4]; 3];
        for i in 0..3 {
            m[i][..3].copy_from_slice(&p[i].0);
            m[i][3] = p[i].1;
        }
        for col in 0..3 {
            let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
            if m[piv][col].abs() < 1e-12 {
                return None;
            }
            m.swap(col, piv);
            for r in 0..3 {
                if r != col {
                    let f = m[r][col] / m[col][col];
                    for c in col..4 {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
        Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
    }

    #[test]
    fn single_bounded_variable() {
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("y1", 1.0, 0.0, 1.0);
        lp.add_constraint(vec![(0, 1.0)], Relation::Ge, 0.5);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(close(s.values[0], 0.5));
        assert!(close(s.objective_value, 0.5));
    }

    #[test]
    fn triangle_cover_matches_vertex_enumeration() {
        let lp = triangle_cover();
        let oracle = enumerate_vertices_3(&lp)
            .iter()
            .map(|x| lp.objective_at(x))
            .fold(f64::INFINITY, f64::min);
        assert!(close(oracle, 1.5));
        let s = solve_lp(&lp).unwrap();
        assert!(close(s.objective_value, oracle));
        assert!(s.values.iter().all(|&y| close(y, 0.5)));
    }

    #[test]
    fn bound_contradiction_is_infeasible() {
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("y1", 1.0, 0.0, 1.0);
        lp.add_constraint(vec![(0, 1.0)], Relation::Ge, 2.0);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LpModel::new(Sense::Maximize);
        lp.add_variable("x", 1.0, 0.0, f64::INFINITY);
        lp.add_constraint(vec![(0, 1.0)], Relation::Ge, 1.0);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_and_shifted_bounds() {
        // max x + 2y, x + y = 1.5, x in [0.25, 1], y in [0, 1]
        let mut lp = LpModel::new(Sense::Maximize);
        lp.add_variable("x", 1.0, 0.25, 1.0);
        lp.add_variable("y", 2.0, 0.0, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 1.5);
        let s = solve_lp(&lp).unwrap();
        assert!(close(s.values[0], 0.5) && close(s.values[1], 1.0));
        assert!(close(s.objective_value, 2.5));
    }

    #[test]
    fn fixed_variables_stay_fixed() {
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("g", 0.0, 1.0, 1.0);
        lp.add_variable("y", 3.0, 0.0, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Ge, 1.5);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.values[0], 1.0);
        assert!(close(s.values[1], 0.5));
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("a", 1.0, 0.0, 1.0);
        lp.add_variable("b", 1.0, 0.0, 1.0);
        lp.add_constraint(vec![(0, 1.0), (1, 1.0)], Relation::Eq, 1.0);
        lp.add_constraint(vec![(0, 2.0), (1, 2.0)], Relation::Eq, 2.0);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(close(s.objective_value, 1.0));
    }

    #[test]
    fn empty_model() {
        let s = solve_lp(&LpModel::new(Sense::Minimize)).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, 0.0);
    }

    #[test]
    fn malformed_model_rejected() {
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("x", 1.0, 1.0, 0.0);
        assert!(matches!(solve_lp(&lp), Err(LpError::InvalidModel(_))));
        let mut lp = LpModel::new(Sense::Minimize);
        lp.add_variable("x", 1.0, 0.0, 1.0);
        lp.add_constraint(vec![(3, 1.0)], Relation::Le, 1.0);
        assert!(matches!(solve_lp(&lp), Err(LpError::InvalidModel(_))));
    }

    #[test]
    fn listing_mentions_every_row() {
        let text = triangle_cover().to_string();
        assert!(text.starts_with("Minimize"));
        assert!(text.contains(" c2: 1 y1 +1 y2 >= 1"));
        assert!(text.contains(" 0 <= y0 <= 1"));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, a classic cycling instance under the textbook rule.
        let mut lp = LpModel::new(Sense::Minimize);
        let c = [-0.75, 150.0, -0.02, 6.0];
        for (j, &cj) in c.iter().enumerate() {
            lp.add_variable(format!("x{j}"), cj, 0.0, f64::INFINITY);
        }
        lp.add_constraint(vec![(0, 0.25), (1, -60.0), (2, -0.04), (3, 9.0)], Relation::Le, 0.0);
        lp.add_constraint(vec![(0, 0.5), (1, -90.0), (2, -0.02), (3, 3.0)], Relation::Le, 0.0);
        lp.add_constraint(vec![(2, 1.0)], Relation::Le, 1.0);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(close(s.objective_value, -0.05));
    }

    fn random_model(seed: u64, n: usize, m: usize, sense: Sense) -> LpModel {
        let mut rng = crate::io::SplitMix64::new(seed);
        let mut unit = move || (rng.next_u64() % 1000) as f64 / 100.0;
        let mut lp = LpModel::new(sense);
        for j in 0..n {
            lp.add_variable(format!("v{j}"), unit() - 3.0, 0.0, 1.0);
        }
        for _ in 0..m {
            let terms: Vec<(usize, f64)> = (0..n).map(|j| (j, unit() - 4.0)).collect();
            let at_half: f64 = terms.iter().map(|t| t.1 * 0.5).sum();
            // rows pass through a perturbation of the centre, so the box
            // centre stays feasible
            let rel = if unit() < 5.0 { Relation::Le } else { Relation::Ge };
            let rhs = match rel {
                Relation::Le => at_half + unit() / 10.0,
                _ => at_half - unit() / 10.0,
            };
            lp.add_constraint(terms, rel, rhs);
        }
        lp
    }

    proptest::proptest! {
        #[test]
        fn random_lps_return_feasible_basic_optima(seed in 0u64..10_000, n in 1usize..8, m in 0usize..6, max in proptest::bool::ANY) {
            let sense = if max { Sense::Maximize } else { Sense::Minimize };
            let lp = random_model(seed, n, m, sense);
            let s = solve_lp(&lp).unwrap();
            proptest::prop_assert_eq!(s.status, LpStatus::Optimal);
            proptest::prop_assert!(lp.max_violation(&s.values) <= 1e-8);
            proptest::prop_assert!(count_fractional(&lp, &s.values) <= lp.num_constraints());
            // weak duality sanity against the known feasible centre
            let centre = vec![0.5; n];
            let c = lp.objective_at(&centre);
            match sense {
                Sense::Minimize => proptest::prop_assert!(s.objective_value <= c + OBJ_TOL),
                Sense::Maximize => proptest::prop_assert!(s.objective_value >= c - OBJ_TOL),
            }
            // every corner of the box that is feasible is no better
            for mask in 0..(1u32 << n) {
                let corner: Vec<f64> = (0..n).map(|j| f64::from(mask >> j & 1)).collect();
                if lp.max_violation(&corner) <= 0.0 {
                    let v = lp.objective_at(&corner);
                    match sense {
                        Sense::Minimize => proptest::prop_assert!(s.objective_value <= v + OBJ_TOL),
                        Sense::Maximize => proptest::prop_assert!(s.objective_value >= v - OBJ_TOL),
                    }
                }
            }
            // determinism
            proptest::prop_assert_eq!(solve_lp(&lp).unwrap(), s);
        }
    }
}
