//! Exact partition edge cover through budgeted matching.
//!
//! An edge cover that touches `r_g` vertices of every group `S_g` is
//! turned into a matching problem by giving each non-isolated vertex `v`
//! a twin `v'` joined by an edge that costs as much as the cheapest edge at
//! `v`. A minimum-cost matching that matches at least `r_g` vertices of
//! each group (a budgeted matching) then maps back to an optimal cover.
//!
//! Budgeted matching is solved with one maximum-weight matching on an
//! auxiliary graph `H`: with `M > sum c(e)`, every original edge weighs
//! `2M - c(e)`, and each group receives `|S_g| - r_g` extra nodes joined
//! to all of `S_g` by edges of weight `M`. A matching of `H` weighs more
//! than `(n - 1) M` exactly when it matches every original vertex, and
//! then its weight is `n M` minus the cost of its original edges.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::matching::{max_weight_matching, MatchingError};
use crate::model::{evaluate_edge_solution, EdgeSolution, ModelError, PecInstance, WeightedEdge, WeightedGraph};
use crate::number::{common_denominator, scaled_integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PecError {
    #[error("group {group} requires {requirement} vertices but has only {available}")]
    RequirementTooLarge { group: usize, requirement: usize, available: usize },
    #[error("group {group} requires {requirement} covered vertices but only {coverable} have an incident edge")]
    IsolatedRequired { group: usize, requirement: usize, coverable: usize },
    #[error("no feasible solution exists")]
    Infeasible,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// Minimum-cost matching that matches at least `r_g` vertices of each group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbmInstance {
    graph: WeightedGraph,
    vertex_groups: Vec<usize>,
    requirements: Vec<usize>,
}

impl WbmInstance {
    pub fn new(graph: WeightedGraph, vertex_groups: Vec<usize>, requirements: Vec<usize>) -> Result<Self, PecError> {
        // same structural rules as an edge-cover instance
        let checked = PecInstance::new(graph, vertex_groups, requirements)?;
        let sizes = checked.group_sizes();
        for (g, (&r, &size)) in checked.requirements().iter().zip(&sizes).enumerate() {
            if r > size {
                return Err(PecError::RequirementTooLarge { group: g, requirement: r, available: size });
            }
        }
        Ok(Self {
            graph: checked.graph().clone(),
            vertex_groups: checked.vertex_groups().to_vec(),
            requirements: checked.requirements().to_vec(),
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn vertex_groups(&self) -> &[usize] {
        &self.vertex_groups
    }

    pub fn requirements(&self) -> &[usize] {
        &self.requirements
    }

    pub fn omega(&self) -> usize {
        self.requirements.len()
    }

    /// Members of each group, ascending.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.omega()];
        for (v, &g) in self.vertex_groups.iter().enumerate() {
            out[g].push(v);
        }
        out
    }

    /// Number of matched vertices per group for the given edge ids.
    pub fn matched_per_group(&self, edges: &[usize]) -> Vec<usize> {
        let mut out = vec![0; self.omega()];
        for &k in edges {
            let e = self.graph.edge(k);
            out[self.vertex_groups[e.u]] += 1;
            out[self.vertex_groups[e.v]] += 1;
        }
        out
    }

    pub fn cost(&self, edges: &[usize]) -> Rational {
        edges.iter().map(|&k| &self.graph.edge(k).weight).sum()
    }
}

/// Budgeted-matching form of an edge-cover instance and the map back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PecReduction {
    pub wbm: WbmInstance,
    /// Twin of each original vertex; `None` for isolated vertices.
    pub twin: Vec<Option<usize>>,
    /// Cheapest incident edge of each original vertex (cost, then id).
    pub cheapest_edge: Vec<Option<usize>>,
    /// Edge count of the original graph; reduced edges below it are shared.
    pub original_edges: usize,
}

impl PecReduction {
    /// Original edge ids of a cover built from a matching of the reduced graph.
    pub fn recover(&self, matching: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = matching
            .iter()
            .map(|&k| {
                if k < self.original_edges {
                    k
                } else {
                    let owner = self.wbm.graph.edge(k).u;
                    self.cheapest_edge[owner].expect("twin edges exist only at non-isolated vertices")
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn reduce_pec_to_wbm(instance: &PecInstance) -> Result<PecReduction, PecError> {
    let coverable = instance.coverable_counts();
    for (g, (&r, &c)) in instance.requirements().iter().zip(&coverable).enumerate() {
        if r > c {
            return Err(PecError::IsolatedRequired { group: g, requirement: r, coverable: c });
        }
    }
    let graph = instance.graph();
    let n = graph.n();
    let mut cheapest_edge: Vec<Option<usize>> = vec![None; n];
    for (k, e) in graph.edges().iter().enumerate() {
        for v in [e.u, e.v] {
            let replace = match cheapest_edge[v] {
                None => true,
                Some(best) => e.weight < graph.edge(best).weight,
            };
            if replace {
                cheapest_edge[v] = Some(k);
            }
        }
    }

    let twin_group = instance.omega();
    let mut edges: Vec<WeightedEdge> = graph.edges().to_vec();
    let mut groups = instance.vertex_groups().to_vec();
    let mut labels: Vec<String> = (0..n).map(|v| graph.label(v)).collect();
    let mut twin = vec![None; n];
    let mut next = n;
    for v in 0..n {
        if let Some(k) = cheapest_edge[v] {
            twin[v] = Some(next);
            edges.push(WeightedEdge::new(v, next, graph.edge(k).weight.clone()));
            groups.push(twin_group);
            labels.push(format!("{}'", graph.label(v)));
            next += 1;
        }
    }
    let reduced = WeightedGraph::new(next, edges)?;
    let reduced = if graph.labels().is_some() { reduced.with_labels(labels)? } else { reduced };
    let mut requirements = instance.requirements().to_vec();
    requirements.push(0);
    Ok(PecReduction {
        wbm: WbmInstance::new(reduced, groups, requirements)?,
        twin,
        cheapest_edge,
        original_edges: graph.m(),
    })
}

/// Auxiliary graph whose maximum-weight matchings solve a budgeted matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGraph {
    pub base: WbmInstance,
    /// `M = 1 + sum of scaled costs`.
    pub big_m: BigInt,
    /// Common denominator the costs were scaled by.
    pub scale: BigInt,
    pub h: WeightedGraph,
    /// `|S_g| - r_g` per group.
    pub aux_counts: Vec<usize>,
    /// First node id of each group's auxiliary block.
    pub aux_start: Vec<usize>,
    /// Base edge behind each edge of `h`; `None` for auxiliary edges.
    pub origin: Vec<Option<usize>>,
}

pub fn build_h_graph(wbm: &WbmInstance) -> HGraph {
    let graph = wbm.graph();
    let scale = common_denominator(graph.edges().iter().map(|e| &e.weight));
    let costs: Vec<BigInt> = graph
        .edges()
        .iter()
        .map(|e| scaled_integer(&e.weight, &scale).expect("scale clears every denominator"))
        .collect();
    let big_m: BigInt = costs.iter().sum::<BigInt>() + BigInt::one();
    let two_m = &big_m * 2;

    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (k, (e, c)) in graph.edges().iter().zip(&costs).enumerate() {
        edges.push(WeightedEdge::new(e.u, e.v, Rational::from_integer(&two_m - c)));
        origin.push(Some(k));
    }
    let mut aux_counts = Vec::new();
    let mut aux_start = Vec::new();
    let mut next = graph.n();
    let mut labels: Vec<String> = (0..graph.n()).map(|v| graph.label(v)).collect();
    for (g, members) in wbm.groups().iter().enumerate() {
        let count = members.len() - wbm.requirements()[g];
        aux_counts.push(count);
        aux_start.push(next);
        for a in 0..count {
            let x = next + a;
            labels.push(format!("aux{g}_{a}"));
            for &y in members {
                edges.push(WeightedEdge::new(x, y, Rational::from_integer(big_m.clone())));
                origin.push(None);
            }
        }
        next += count;
    }
    let h = WeightedGraph::new(next, edges)
        .expect("auxiliary graph is simple by construction")
        .with_labels(labels)
        .expect("one label per node");
    HGraph { base: wbm.clone(), big_m, scale, h, aux_counts, aux_start, origin }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbmSolution {
    /// Base edge ids, ascending.
    pub edges: Vec<usize>,
    pub cost: Rational,
    /// Weight of the maximum matching of `H`, in scaled integer units.
    pub h_weight: BigInt,
    pub big_m: BigInt,
    pub scale: BigInt,
}

pub fn solve_wbm(wbm: &WbmInstance) -> Result<WbmSolution, PecError> {
    let hg = build_h_graph(wbm);
    let matching = max_weight_matching(&hg.h)?;
    debug_assert!(matching.weight.is_integer());
    let h_weight = matching.weight.to_integer();
    let n = BigInt::from(wbm.graph().n());
    if h_weight <= (&n - 1) * &hg.big_m {
        return Err(PecError::Infeasible);
    }
    let mut edges: Vec<usize> = matching.edges.iter().filter_map(|&k| hg.origin[k]).collect();
    edges.sort_unstable();
    let cost = Rational::new(n * &hg.big_m - &h_weight, hg.scale.clone());
    debug_assert_eq!(cost, wbm.cost(&edges));
    Ok(WbmSolution { edges, cost, h_weight, big_m: hg.big_m, scale: hg.scale })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PecResult {
    pub solution: EdgeSolution,
    pub reduction: PecReduction,
    pub matching: WbmSolution,
}

/// Minimum-cost edge set covering at least `r_g` vertices of every group.
pub fn solve_pec(instance: &PecInstance) -> Result<PecResult, PecError> {
    let reduction = match reduce_pec_to_wbm(instance) {
        Ok(r) => r,
        Err(PecError::IsolatedRequired { .. }) => return Err(PecError::Infeasible),
        Err(e) => return Err(e),
    };
    let matching = solve_wbm(&reduction.wbm)?;
    let cover = reduction.recover(&matching.edges);
    let solution = evaluate_edge_solution(instance, &cover)?;
    assert!(solution.feasible, "recovered cover {cover:?} misses a requirement");
    debug_assert!(solution.total_cost <= matching.cost);
    Ok(PecResult { solution, reduction, matching })
}
