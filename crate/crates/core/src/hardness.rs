//! Knapsack to prize-collecting partition edge cover reduction.
//!
//! The prize-collecting edge cover decision problem asks for an edge set of
//! cost at most a budget whose covered vertex profit reaches every group's
//! threshold. It stays NP-complete with two groups; [`knapsack_to_wppec`]
//! builds that two-group instance from a knapsack instance and the two
//! brute-force deciders let tests confirm the answers always agree.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::model::{ModelError, WeightedEdge, WeightedGraph};
use crate::number::{format_rational, Rational};

/// Largest input the exhaustive deciders accept.
pub const MAX_BRUTE_FORCE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("brute force limited to {limit} {what}, got {size}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    /// `(profit, cost)` per item.
    items: Vec<(Rational, Rational)>,
    profit_target: Rational,
    budget: Rational,
}

impl KnapsackInstance {
    pub fn new(
        items: Vec<(Rational, Rational)>,
        profit_target: Rational,
        budget: Rational,
    ) -> Result<Self, ModelError> {
        if items.is_empty() {
            return Err(ModelError::LengthMismatch { what: "knapsack items", expected: 1, found: 0 });
        }
        for (i, (p, c)) in items.iter().enumerate() {
            for value in [p, c] {
                if value.is_negative() {
                    return Err(ModelError::NegativeWeight {
                        what: "item",
                        index: i,
                        value: format_rational(value),
                    });
                }
            }
        }
        for value in [&profit_target, &budget] {
            if value.is_negative() {
                return Err(ModelError::NegativeWeight {
                    what: "knapsack bound",
                    index: 0,
                    value: format_rational(value),
                });
            }
        }
        Ok(Self { items, profit_target, budget })
    }

    pub fn items(&self) -> &[(Rational, Rational)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn profit_target(&self) -> &Rational {
        &self.profit_target
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }
}

/// Decision instance: vertex profits, vertex groups with profit thresholds,
/// edge costs (the graph's weights) and a total budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WppecInstance {
    graph: WeightedGraph,
    vertex_profits: Vec<Rational>,
    vertex_groups: Vec<usize>,
    thresholds: Vec<Rational>,
    budget: Rational,
}

impl WppecInstance {
    pub fn new(
        graph: WeightedGraph,
        vertex_profits: Vec<Rational>,
        vertex_groups: Vec<usize>,
        thresholds: Vec<Rational>,
        budget: Rational,
    ) -> Result<Self, ModelError> {
        let n = graph.n();
        for (what, len) in [("vertex profits", vertex_profits.len()), ("vertex groups", vertex_groups.len())] {
            if len != n {
                return Err(ModelError::LengthMismatch { what, expected: n, found: len });
            }
        }
        if thresholds.is_empty() {
            return Err(ModelError::EmptyGroupPartition);
        }
        for (index, value) in vertex_profits.iter().enumerate() {
            if value.is_negative() {
                return Err(ModelError::NegativeWeight { what: "vertex", index, value: format_rational(value) });
            }
        }
        for (index, value) in thresholds.iter().enumerate() {
            if value.is_negative() {
                return Err(ModelError::NegativeWeight { what: "threshold", index, value: format_rational(value) });
            }
        }
        if budget.is_negative() {
            return Err(ModelError::NegativeWeight { what: "budget", index: 0, value: format_rational(&budget) });
        }
        for (index, &group) in vertex_groups.iter().enumerate() {
            if group >= thresholds.len() {
                return Err(ModelError::MissingGroup { what: "vertex", index, group, groups: thresholds.len() });
            }
        }
        Ok(Self { graph, vertex_profits, vertex_groups, thresholds, budget })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn vertex_profits(&self) -> &[Rational] {
        &self.vertex_profits
    }

    pub fn vertex_groups(&self) -> &[usize] {
        &self.vertex_groups
    }

    pub fn thresholds(&self) -> &[Rational] {
        &self.thresholds
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn omega(&self) -> usize {
        self.thresholds.len()
    }

    /// Cost and per-group covered profit of an edge subset.
    pub fn evaluate(&self, edges: &[usize]) -> (Rational, Vec<Rational>) {
        let mut covered = vec![false; self.graph.n()];
        let mut cost = Rational::zero();
        for &e in edges {
            let edge = self.graph.edge(e);
            covered[edge.u] = true;
            covered[edge.v] = true;
            cost += &edge.weight;
        }
        let mut profit = vec![Rational::zero(); self.omega()];
        for (v, &c) in covered.iter().enumerate() {
            if c {
                profit[self.vertex_groups[v]] += &self.vertex_profits[v];
            }
        }
        (cost, profit)
    }

    pub fn accepts(&self, edges: &[usize]) -> bool {
        let (cost, profit) = self.evaluate(edges);
        cost <= self.budget && profit.iter().zip(&self.thresholds).all(|(p, t)| p >= t)
    }
}

/// Blue vertices `b_i = i` carry the item profits, red vertices
/// `r_i = N + i` carry zero profit, and edge `i` joins `b_i` to `r_i` at the
/// item's cost. Group 0 holds the blues with threshold `P`; group 1 holds
/// the reds with threshold 0.
pub fn knapsack_to_wppec(knapsack: &KnapsackInstance) -> WppecInstance {
    let count = knapsack.len();
    let edges = knapsack
        .items
        .iter()
        .enumerate()
        .map(|(i, (_, cost))| WeightedEdge::new(i, count + i, cost.clone()))
        .collect();
    let graph = WeightedGraph::new(2 * count, edges).expect("disjoint edges form a simple graph");
    let labels = (0..count)
        .map(|i| format!("b{}", i + 1))
        .chain((0..count).map(|i| format!("r{}", i + 1)))
        .collect();
    let graph = graph.with_labels(labels).expect("one label per vertex");
    let mut profits: Vec<Rational> = knapsack.items.iter().map(|(p, _)| p.clone()).collect();
    profits.resize(2 * count, Rational::zero());
    let groups = (0..2 * count).map(|v| usize::from(v >= count)).collect();
    WppecInstance::new(
        graph,
        profits,
        groups,
        vec![knapsack.profit_target.clone(), Rational::zero()],
        knapsack.budget.clone(),
    )
    .expect("reduction output is valid")
}

fn subsets(size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << size).map(move |mask| (0..size).filter(|i| mask >> i & 1 == 1).collect())
}

/// First accepted edge set in subset-mask order, if any.
pub fn wppec_witness(instance: &WppecInstance) -> Result<Option<Vec<usize>>, HardnessError> {
    let m = instance.graph.m();
    if m > MAX_BRUTE_FORCE {
        return Err(HardnessError::TooLarge { what: "edges", size: m, limit: MAX_BRUTE_FORCE });
    }
    Ok(subsets(m).find(|edges| instance.accepts(edges)))
}

pub fn decide_wppec_bruteforce(instance: &WppecInstance) -> Result<bool, HardnessError> {
    Ok(wppec_witness(instance)?.is_some())
}

impl KnapsackInstance {
    /// Whether the chosen items reach the profit target within budget.
    pub fn accepts(&self, chosen: &[usize]) -> bool {
        let profit: Rational = chosen.iter().map(|&i| &self.items[i].0).sum();
        let cost: Rational = chosen.iter().map(|&i| &self.items[i].1).sum();
        profit >= self.profit_target && cost <= self.budget
    }
}

/// First accepted item set in subset-mask order, if any.
pub fn knapsack_witness(knapsack: &KnapsackInstance) -> Result<Option<Vec<usize>>, HardnessError> {
    let count = knapsack.len();
    if count > MAX_BRUTE_FORCE {
        return Err(HardnessError::TooLarge { what: "items", size: count, limit: MAX_BRUTE_FORCE });
    }
    Ok(subsets(count).find(|chosen| knapsack.accepts(chosen)))
}

pub fn decide_knapsack_bruteforce(knapsack: &KnapsackInstance) -> Result<bool, HardnessError> {
    Ok(knapsack_witness(knapsack)?.is_some())
}
