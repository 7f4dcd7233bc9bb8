//! Exhaustive reference solvers for small instances.

use thiserror::Error;

use crate::model::{evaluate_edge_solution, evaluate_vertex_solution, EdgeSolution, PecInstance, PvcInstance, VertexSolution};
use crate::number::Rational;
use crate::pec::WbmInstance;

/// Largest vertex count (for vertex cover) or edge count accepted.
pub const ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has size {size}, above the exhaustive-search limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("no feasible solution exists")]
    Infeasible,
}

fn check_size(what: &'static str, size: usize) -> Result<(), OracleError> {
    if size > ORACLE_LIMIT {
        return Err(OracleError::TooLarge { what, size, limit: ORACLE_LIMIT });
    }
    Ok(())
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Minimum-weight feasible vertex set; ties go to the lexicographically
/// smallest sorted id list.
pub fn brute_force_pvc(instance: &PvcInstance) -> Result<VertexSolution, OracleError> {
    check_size("vertex set", instance.n())?;
    let mut best: Option<VertexSolution> = None;
    for mask in 0..(1u32 << instance.n()) {
        let s = evaluate_vertex_solution(instance, &members(mask)).expect("ids in range");
        if s.feasible && best.as_ref().is_none_or(|b| (&s.total_weight, &s.selected) < (&b.total_weight, &b.selected)) {
            best = Some(s);
        }
    }
    best.ok_or(OracleError::Infeasible)
}

/// Minimum-cost feasible edge set; ties go to the lexicographically
/// smallest sorted id list.
pub fn brute_force_pec(instance: &PecInstance) -> Result<EdgeSolution, OracleError> {
    check_size("edge set", instance.m())?;
    let mut best: Option<EdgeSolution> = None;
    for mask in 0..(1u32 << instance.m()) {
        let s = evaluate_edge_solution(instance, &members(mask)).expect("ids in range");
        if s.feasible && best.as_ref().is_none_or(|b| (&s.total_cost, &s.selected) < (&b.total_cost, &b.selected)) {
            best = Some(s);
        }
    }
    best.ok_or(OracleError::Infeasible)
}

/// Minimum-cost matching that matches at least `r_g` vertices of each group.
/// Returns the sorted edge ids and their cost.
pub fn brute_force_wbm(instance: &WbmInstance) -> Result<(Vec<usize>, Rational), OracleError> {
    let graph = instance.graph();
    check_size("edge set", graph.m())?;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut used = vec![false; graph.n()];
    let mut chosen = Vec::new();
    search(instance, 0, &mut used, &mut chosen, &mut best);
    best.map(|(c, e)| (e, c)).ok_or(OracleError::Infeasible)
}

fn search(
    instance: &WbmInstance,
    k: usize,
    used: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    best: &mut Option<(Rational, Vec<usize>)>,
) {
    let graph = instance.graph();
    if k == graph.m() {
        let matched = instance.matched_per_group(chosen);
        if matched.iter().zip(instance.requirements()).all(|(m, r)| m >= r) {
            let cost = instance.cost(chosen);
            if best.as_ref().is_none_or(|(c, e)| (&cost, &*chosen) < (c, e)) {
                *best = Some((cost, chosen.clone()));
            }
        }
        return;
    }
    let e = graph.edge(k);
    if !used[e.u] && !used[e.v] {
        used[e.u] = true;
        used[e.v] = true;
        chosen.push(k);
        search(instance, k + 1, used, chosen, best);
        chosen.pop();
        used[e.u] = false;
        used[e.v] = false;
    }
    search(instance, k + 1, used, chosen, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fixtures, WeightedGraph};
    use crate::number::int;

    #[test]
    fn vertex_cover_micro_instances() {
        let s = brute_force_pvc(&fixtures::path3(2)).unwrap();
        assert_eq!((s.selected, s.total_weight), (vec![1], int(1)));
        assert_eq!(brute_force_pvc(&fixtures::triangle(3)).unwrap().total_weight, int(2));
        assert_eq!(brute_force_pvc(&fixtures::path3(3)), Err(OracleError::Infeasible));
    }

    #[test]
    fn edge_cover_micro_instances() {
        assert_eq!(brute_force_pec(&fixtures::six_vertex_pec([1, 1, 1])).unwrap().total_cost, int(5));
        let s = brute_force_pec(&fixtures::six_vertex_pec([0, 0, 0])).unwrap();
        assert!(s.selected.is_empty());
        let g = WeightedGraph::from_int_edges(3, &[(0, 1, 1)]).unwrap();
        let pec = PecInstance::new(g, vec![0, 0, 1], vec![0, 1]).unwrap();
        assert_eq!(brute_force_pec(&pec), Err(OracleError::Infeasible));
    }

    #[test]
    fn budgeted_matching_micro_instances() {
        let wbm = WbmInstance::new(fixtures::six_vertex_graph(), fixtures::six_vertex_groups(), vec![1, 1, 1]).unwrap();
        let (edges, cost) = brute_force_wbm(&wbm).unwrap();
        assert_eq!(cost, int(8));
        assert_eq!(edges, vec![1, 4]);
        let wbm = WbmInstance::new(fixtures::six_vertex_graph(), fixtures::six_vertex_groups(), vec![0, 0, 0]).unwrap();
        assert_eq!(brute_force_wbm(&wbm).unwrap(), (vec![], int(0)));
        // group 0 = {0, 1, 2}: 0-1 adjacent only to each other, 2 isolated
        let g = WeightedGraph::from_int_edges(3, &[(0, 1, 1)]).unwrap();
        let wbm = WbmInstance::new(g, vec![0, 0, 0], vec![3]).unwrap();
        assert_eq!(brute_force_wbm(&wbm), Err(OracleError::Infeasible));
    }

    #[test]
    fn size_caps_are_errors() {
        let edges: Vec<(usize, usize, i64)> = (0..21).map(|i| (i, i + 1, 1)).collect();
        let g = WeightedGraph::from_int_edges(22, &edges).unwrap();
        let pec = PecInstance::new(g, vec![0; 22], vec![0]).unwrap();
        assert!(matches!(brute_force_pec(&pec), Err(OracleError::TooLarge { size: 21, .. })));
        let g = WeightedGraph::from_int_edges(21, &[(0, 1, 1)]).unwrap();
        let pvc = PvcInstance::new(g, vec![int(1); 21], vec![0], vec![int(1)]).unwrap();
        assert!(matches!(brute_force_pvc(&pvc), Err(OracleError::TooLarge { size: 21, .. })));
    }
}
