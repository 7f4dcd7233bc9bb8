//! Problem instances, solutions and their exact evaluation.
//!
//! Every instance type validates itself on construction, so a value of
//! [`PvcInstance`] or [`PecInstance`] always satisfies its invariants.
//! Vertices and edges are identified by dense ids `0..n` and `0..m`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::number::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} ({u},{v}) duplicates edge {first}")]
    DuplicateEdge { edge: usize, u: usize, v: usize, first: usize },
    #[error("{what} {index} has negative value {value}")]
    NegativeWeight { what: &'static str, index: usize, value: String },
    #[error("{what} {index} refers to group {group}, but only {groups} groups exist")]
    MissingGroup { what: &'static str, index: usize, group: usize, groups: usize },
    #[error("the group partition is empty (at least one group is required)")]
    EmptyGroupPartition,
    #[error("vertex {vertex} is out of range for a graph with {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("edge {edge} is out of range for a graph with {m} edges")]
    UnknownEdge { edge: usize, m: usize },
    #[error("{what}: expected {expected} entries, found {found}")]
    LengthMismatch { what: &'static str, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl WeightedEdge {
    pub fn new(u: usize, v: usize, weight: Rational) -> Self {
        Self { u, v, weight }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Simple undirected graph with non-negative rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<WeightedEdge>,
    labels: Option<Vec<String>>,
}

fn validate_graph(n: usize, edges: &[WeightedEdge]) -> Result<(), ModelError> {
    let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        for x in [e.u, e.v] {
            if x >= n {
                return Err(ModelError::UnknownVertex { vertex: x, n });
            }
        }
        if e.u == e.v {
            return Err(ModelError::SelfLoop { edge: i, vertex: e.u });
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        if let Some(&first) = seen.get(&key) {
            return Err(ModelError::DuplicateEdge { edge: i, u: e.u, v: e.v, first });
        }
        seen.insert(key, i);
        if e.weight.is_negative() {
            return Err(ModelError::NegativeWeight {
                what: "edge",
                index: i,
                value: format_rational(&e.weight),
            });
        }
    }
    Ok(())
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<WeightedEdge>) -> Result<Self, ModelError> {
        validate_graph(n, &edges)?;
        Ok(Self { n, edges, labels: None })
    }

    /// Convenience constructor for integer-weighted graphs.
    pub fn from_int_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self, ModelError> {
        Self::new(
            n,
            edges
                .iter()
                .map(|&(u, v, w)| WeightedEdge::new(u, v, crate::number::int(w)))
                .collect(),
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ModelError> {
        if labels.len() != self.n {
            return Err(ModelError::LengthMismatch {
                what: "vertex labels",
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &WeightedEdge {
        &self.edges[e]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    /// Incident edge ids per vertex, in increasing edge-id order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            inc[e.v].push(i);
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.v == v).count()
    }
}

/// Weighted prize-collecting partition vertex cover instance.
///
/// Edge weights of `graph` are the edge profits `p(e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PvcInstance {
    graph: WeightedGraph,
    vertex_weights: Vec<Rational>,
    edge_groups: Vec<usize>,
    thresholds: Vec<Rational>,
}

impl PvcInstance {
    pub fn new(
        graph: WeightedGraph,
        vertex_weights: Vec<Rational>,
        edge_groups: Vec<usize>,
        thresholds: Vec<Rational>,
    ) -> Result<Self, ModelError> {
        let instance = Self { graph, vertex_weights, edge_groups, thresholds };
        validate_pvc(&instance)?;
        Ok(instance)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn omega(&self) -> usize {
        self.thresholds.len()
    }

    pub fn vertex_weights(&self) -> &[Rational] {
        &self.vertex_weights
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.vertex_weights[v]
    }

    pub fn profit(&self, e: usize) -> &Rational {
        &self.graph.edge(e).weight
    }

    pub fn edge_groups(&self) -> &[usize] {
        &self.edge_groups
    }

    pub fn group(&self, e: usize) -> usize {
        self.edge_groups[e]
    }

    pub fn thresholds(&self) -> &[Rational] {
        &self.thresholds
    }

    pub fn group_total_profit(&self) -> Vec<Rational> {
        let mut totals = vec![Rational::zero(); self.omega()];
        for e in 0..self.m() {
            totals[self.group(e)] += self.profit(e);
        }
        totals
    }

    /// Feasible iff selecting every vertex meets every threshold.
    pub fn is_feasible(&self) -> bool {
        let all: Vec<usize> = (0..self.n()).collect();
        evaluate_vertex_solution(self, &all)
            .map(|s| s.feasible)
            .unwrap_or(false)
    }
}

/// Weighted partition edge cover instance. Edge weights of `graph` are costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PecInstance {
    graph: WeightedGraph,
    vertex_groups: Vec<usize>,
    requirements: Vec<usize>,
}

impl PecInstance {
    pub fn new(
        graph: WeightedGraph,
        vertex_groups: Vec<usize>,
        requirements: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let instance = Self { graph, vertex_groups, requirements };
        validate_pec(&instance)?;
        Ok(instance)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn omega(&self) -> usize {
        self.requirements.len()
    }

    pub fn cost(&self, e: usize) -> &Rational {
        &self.graph.edge(e).weight
    }

    pub fn vertex_groups(&self) -> &[usize] {
        &self.vertex_groups
    }

    pub fn group(&self, v: usize) -> usize {
        self.vertex_groups[v]
    }

    pub fn requirements(&self) -> &[usize] {
        &self.requirements
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.omega()];
        for &g in &self.vertex_groups {
            sizes[g] += 1;
        }
        sizes
    }

    /// Per-group count of vertices with at least one incident edge.
    pub fn coverable_counts(&self) -> Vec<usize> {
        let mut touched = vec![false; self.n()];
        for e in self.graph.edges() {
            touched[e.u] = true;
            touched[e.v] = true;
        }
        let mut counts = vec![0; self.omega()];
        for (v, &t) in touched.iter().enumerate() {
            if t {
                counts[self.group(v)] += 1;
            }
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSolution {
    /// Sorted, duplicate-free vertex ids.
    pub selected: Vec<usize>,
    pub total_weight: Rational,
    pub per_group_profit: Vec<Rational>,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSolution {
    /// Sorted, duplicate-free edge ids.
    pub selected: Vec<usize>,
    pub total_cost: Rational,
    pub per_group_covered: Vec<usize>,
    pub feasible: bool,
}

fn check_groups(
    what: &'static str,
    groups: &[usize],
    omega: usize,
) -> Result<(), ModelError> {
    for (index, &group) in groups.iter().enumerate() {
        if group >= omega {
            return Err(ModelError::MissingGroup { what, index, group, groups: omega });
        }
    }
    Ok(())
}

fn check_non_negative(what: &'static str, values: &[Rational]) -> Result<(), ModelError> {
    for (index, value) in values.iter().enumerate() {
        if value.is_negative() {
            return Err(ModelError::NegativeWeight { what, index, value: format_rational(value) });
        }
    }
    Ok(())
}

pub fn validate_pvc(instance: &PvcInstance) -> Result<(), ModelError> {
    let graph = &instance.graph;
    validate_graph(graph.n, &graph.edges)?;
    if instance.vertex_weights.len() != graph.n() {
        return Err(ModelError::LengthMismatch {
            what: "vertex weights",
            expected: graph.n(),
            found: instance.vertex_weights.len(),
        });
    }
    if instance.edge_groups.len() != graph.m() {
        return Err(ModelError::LengthMismatch {
            what: "edge groups",
            expected: graph.m(),
            found: instance.edge_groups.len(),
        });
    }
    check_non_negative("vertex", &instance.vertex_weights)?;
    if instance.thresholds.is_empty() {
        return Err(ModelError::EmptyGroupPartition);
    }
    check_non_negative("threshold", &instance.thresholds)?;
    check_groups("edge", &instance.edge_groups, instance.thresholds.len())
}

pub fn validate_pec(instance: &PecInstance) -> Result<(), ModelError> {
    let graph = &instance.graph;
    validate_graph(graph.n, &graph.edges)?;
    if instance.vertex_groups.len() != graph.n() {
        return Err(ModelError::LengthMismatch {
            what: "vertex groups",
            expected: graph.n(),
            found: instance.vertex_groups.len(),
        });
    }
    if instance.requirements.is_empty() {
        return Err(ModelError::EmptyGroupPartition);
    }
    check_groups("vertex", &instance.vertex_groups, instance.requirements.len())
}

fn normalize_ids(ids: &[usize], bound: usize, vertex: bool) -> Result<Vec<usize>, ModelError> {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&last) = sorted.last() {
        if last >= bound {
            return Err(if vertex {
                ModelError::UnknownVertex { vertex: last, n: bound }
            } else {
                ModelError::UnknownEdge { edge: last, m: bound }
            });
        }
    }
    Ok(sorted)
}

pub fn evaluate_vertex_solution(
    instance: &PvcInstance,
    selected: &[usize],
) -> Result<VertexSolution, ModelError> {
    let selected = normalize_ids(selected, instance.n(), true)?;
    let mut in_set = vec![false; instance.n()];
    for &v in &selected {
        in_set[v] = true;
    }
    let total_weight = selected.iter().map(|&v| instance.weight(v)).sum();
    let mut per_group_profit = vec![Rational::zero(); instance.omega()];
    for (e, edge) in instance.graph.edges().iter().enumerate() {
        if in_set[edge.u] || in_set[edge.v] {
            per_group_profit[instance.group(e)] += &edge.weight;
        }
    }
    let feasible = per_group_profit
        .iter()
        .zip(instance.thresholds())
        .all(|(got, need)| got >= need);
    Ok(VertexSolution { selected, total_weight, per_group_profit, feasible })
}

pub fn evaluate_edge_solution(
    instance: &PecInstance,
    selected: &[usize],
) -> Result<EdgeSolution, ModelError> {
    let selected = normalize_ids(selected, instance.m(), false)?;
    let mut covered = vec![false; instance.n()];
    let mut total_cost = Rational::zero();
    for &e in &selected {
        let edge = instance.graph.edge(e);
        covered[edge.u] = true;
        covered[edge.v] = true;
        total_cost += &edge.weight;
    }
    let mut per_group_covered = vec![0usize; instance.omega()];
    for (v, &c) in covered.iter().enumerate() {
        if c {
            per_group_covered[instance.group(v)] += 1;
        }
    }
    let feasible = per_group_covered
        .iter()
        .zip(instance.requirements())
        .all(|(got, need)| got >= need);
    Ok(EdgeSolution { selected, total_cost, per_group_covered, feasible })
}

/// Small named instances used across tests, docs and the CLI examples.
pub mod fixtures {
    use super::*;
    use crate::number::int;

    fn unit_pvc(n: usize, edges: &[(usize, usize)], groups: Vec<usize>, rho: &[i64]) -> PvcInstance {
        let graph = WeightedGraph::new(
            n,
            edges.iter().map(|&(u, v)| WeightedEdge::new(u, v, int(1))).collect(),
        )
        .expect("fixture graph");
        PvcInstance::new(graph, vec![int(1); n], groups, rho.iter().map(|&r| int(r)).collect())
            .expect("fixture instance")
    }

    /// Path a-b-c with unit weights and profits, one group.
    pub fn path3(rho: i64) -> PvcInstance {
        unit_pvc(3, &[(0, 1), (1, 2)], vec![0, 0], &[rho])
    }

    /// Triangle with unit weights and profits, one group.
    pub fn triangle(rho: i64) -> PvcInstance {
        unit_pvc(3, &[(0, 1), (0, 2), (1, 2)], vec![0, 0, 0], &[rho])
    }

    /// Path a-b-c where edge ab is in group 0 and bc in group 1.
    pub fn two_group_path() -> PvcInstance {
        unit_pvc(3, &[(0, 1), (1, 2)], vec![0, 1], &[1, 1])
    }

    /// Vertex ids of the six-vertex, three-group reduction example.
    pub const B1: usize = 0;
    pub const B2: usize = 1;
    pub const B3: usize = 2;
    pub const G1: usize = 3;
    pub const G2: usize = 4;
    pub const R1: usize = 5;

    /// Six vertices in three colour groups (b*, g*, r1) and six weighted
    /// edges: b1g1=11, g1b2=2, b2b3=5, g1g2=7, b3r1=6, b2r1=3.
    pub fn six_vertex_graph() -> WeightedGraph {
        WeightedGraph::from_int_edges(
            6,
            &[(B1, G1, 11), (G1, B2, 2), (B2, B3, 5), (G1, G2, 7), (B3, R1, 6), (B2, R1, 3)],
        )
        .expect("fixture graph")
        .with_labels(["b1", "b2", "b3", "g1", "g2", "r1"].map(String::from).to_vec())
        .expect("fixture labels")
    }

    pub fn six_vertex_groups() -> Vec<usize> {
        vec![0, 0, 0, 1, 1, 2]
    }

    pub fn six_vertex_pec(requirements: [usize; 3]) -> PecInstance {
        PecInstance::new(six_vertex_graph(), six_vertex_groups(), requirements.to_vec())
            .expect("fixture instance")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::number::int;

    #[test]
    fn triangle_instance_validates() {
        let t = triangle(3);
        assert!(validate_pvc(&t).is_ok());
        assert_eq!(t.omega(), 1);
        assert!(t.is_feasible());
    }

    #[test]
    fn self_loop_rejected() {
        let err = WeightedGraph::from_int_edges(3, &[(0, 1, 1), (2, 2, 1)]).unwrap_err();
        assert_eq!(err, ModelError::SelfLoop { edge: 1, vertex: 2 });
    }

    #[test]
    fn duplicate_edge_rejected_in_either_orientation() {
        let err = WeightedGraph::from_int_edges(3, &[(0, 1, 1), (1, 0, 2)]).unwrap_err();
        assert_eq!(err, ModelError::DuplicateEdge { edge: 1, u: 1, v: 0, first: 0 });
    }

    #[test]
    fn negative_profit_rejected() {
        let err = WeightedGraph::from_int_edges(2, &[(0, 1, -1)]).unwrap_err();
        assert!(matches!(err, ModelError::NegativeWeight { what: "edge", index: 0, .. }));
    }

    #[test]
    fn negative_vertex_weight_and_threshold_rejected() {
        let g = WeightedGraph::from_int_edges(2, &[(0, 1, 1)]).unwrap();
        let err = PvcInstance::new(g.clone(), vec![int(1), int(-2)], vec![0], vec![int(1)]);
        assert!(matches!(err, Err(ModelError::NegativeWeight { what: "vertex", index: 1, .. })));
        let err = PvcInstance::new(g, vec![int(1), int(1)], vec![0], vec![int(-1)]);
        assert!(matches!(err, Err(ModelError::NegativeWeight { what: "threshold", .. })));
    }

    #[test]
    fn group_errors() {
        let g = WeightedGraph::from_int_edges(2, &[(0, 1, 1)]).unwrap();
        let err = PvcInstance::new(g.clone(), vec![int(1); 2], vec![1], vec![int(1)]);
        assert_eq!(
            err.unwrap_err(),
            ModelError::MissingGroup { what: "edge", index: 0, group: 1, groups: 1 }
        );
        let err = PvcInstance::new(g, vec![int(1); 2], vec![0], vec![]);
        assert_eq!(err.unwrap_err(), ModelError::EmptyGroupPartition);
    }

    #[test]
    fn path_center_covers_everything() {
        let p = path3(2);
        let s = evaluate_vertex_solution(&p, &[1]).unwrap();
        assert_eq!(s.total_weight, int(1));
        assert_eq!(s.per_group_profit, vec![int(2)]);
        assert!(s.feasible);
        let empty = evaluate_vertex_solution(&p, &[]).unwrap();
        assert_eq!(empty.total_weight, int(0));
        assert_eq!(empty.per_group_profit, vec![int(0)]);
        assert!(!empty.feasible);
    }

    #[test]
    fn triangle_single_vertex_covers_two_edges() {
        let s = evaluate_vertex_solution(&triangle(3), &[0]).unwrap();
        assert_eq!(s.per_group_profit, vec![int(2)]);
        assert!(!s.feasible);
    }

    #[test]
    fn unknown_vertex_reported() {
        let err = evaluate_vertex_solution(&path3(1), &[0, 3]).unwrap_err();
        assert_eq!(err, ModelError::UnknownVertex { vertex: 3, n: 3 });
    }

    #[test]
    fn six_vertex_cover_counts_each_group_once() {
        let pec = six_vertex_pec([1, 1, 1]);
        // g1-b2 (edge 1) and b2-r1 (edge 5)
        let s = evaluate_edge_solution(&pec, &[1, 5]).unwrap();
        assert_eq!(s.total_cost, int(5));
        assert_eq!(s.per_group_covered, vec![1, 1, 1]);
        assert!(s.feasible);
    }

    #[test]
    fn empty_edge_set_feasibility_depends_on_requirements() {
        assert!(evaluate_edge_solution(&six_vertex_pec([0, 0, 0]), &[]).unwrap().feasible);
        let s = evaluate_edge_solution(&six_vertex_pec([1, 0, 0]), &[]).unwrap();
        assert_eq!(s.total_cost, int(0));
        assert!(!s.feasible);
        assert_eq!(
            evaluate_edge_solution(&six_vertex_pec([0, 0, 0]), &[6]).unwrap_err(),
            ModelError::UnknownEdge { edge: 6, m: 6 }
        );
    }

    #[test]
    fn coverable_counts_skip_isolated_vertices() {
        let g = WeightedGraph::from_int_edges(4, &[(0, 1, 1)]).unwrap();
        let pec = PecInstance::new(g, vec![0, 0, 1, 1], vec![1, 0]).unwrap();
        assert_eq!(pec.coverable_counts(), vec![2, 0]);
        assert_eq!(pec.group_sizes(), vec![2, 2]);
    }

    proptest::proptest! {
        #[test]
        fn profit_is_monotone_in_the_selected_set(
            mask_small in 0u32..256, extra in 0u32..256, seed in 0u64..500,
        ) {
            let inst = crate::io::generate_random_pvc(&crate::io::PvcGenParams {
                n: 8,
                density: crate::number::parse_rational("0.5").unwrap(),
                omega: 2,
                weight_max: 5,
                profit_max: 5,
                threshold_fraction: crate::number::parse_rational("0.5").unwrap(),
                seed,
            }).unwrap();
            let small: Vec<usize> = (0..8).filter(|i| mask_small >> i & 1 == 1).collect();
            let big: Vec<usize> = (0..8).filter(|i| (mask_small | extra) >> i & 1 == 1).collect();
            let a = evaluate_vertex_solution(&inst, &small).unwrap();
            let b = evaluate_vertex_solution(&inst, &big).unwrap();
            for g in 0..inst.omega() {
                proptest::prop_assert!(a.per_group_profit[g] <= b.per_group_profit[g]);
            }
            proptest::prop_assert_eq!(a.clone(), evaluate_vertex_solution(&inst, &small).unwrap());
        }
    }
}
