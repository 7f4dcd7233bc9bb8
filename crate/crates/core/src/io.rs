//! Instance file format (v1) and seeded random generators.
//!
//! Every instance is one JSON document with an explicit `kind`. Rational
//! quantities are written as strings (see [`crate::number`]) so values
//! survive a round trip exactly; counts and ids are plain JSON integers.
//!
//! ```json
//! {"format_version":1,"kind":"pvc","n":3,"vertex_weights":["1","1","1"],
//!  "edges":[{"u":0,"v":1,"profit":"1","group":0}],"thresholds":["1"]}
//! ```
//!
//! Generators draw from [`SplitMix64`] in a fixed order so that the same
//! parameters and seed reproduce the same instance in any language.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hardness::{KnapsackInstance, WppecInstance};
use crate::model::{ModelError, PecInstance, PvcInstance, WeightedEdge, WeightedGraph};
use crate::number::{format_rational, int, parse_rational, Rational};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("invalid instance: {0}")]
    ValidationError(#[from] ModelError),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl From<serde_json::Error> for IoError {
    fn from(err: serde_json::Error) -> Self {
        IoError::SyntaxError { line: err.line(), column: err.column(), message: err.to_string() }
    }
}

/// A parsed instance of any supported kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Pvc(PvcInstance),
    Pec(PecInstance),
    Wppec(WppecInstance),
    Knapsack(KnapsackInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Pvc(_) => "pvc",
            Instance::Pec(_) => "pec",
            Instance::Wppec(_) => "wppec",
            Instance::Knapsack(_) => "knapsack",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PvcEdgeRecord {
    u: usize,
    v: usize,
    profit: String,
    group: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CostEdgeRecord {
    u: usize,
    v: usize,
    cost: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemRecord {
    profit: String,
    cost: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Body {
    Pvc {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        vertex_weights: Vec<String>,
        edges: Vec<PvcEdgeRecord>,
        thresholds: Vec<String>,
    },
    Pec {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        vertex_groups: Vec<usize>,
        edges: Vec<CostEdgeRecord>,
        requirements: Vec<usize>,
    },
    Wppec {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        vertex_profits: Vec<String>,
        vertex_groups: Vec<usize>,
        edges: Vec<CostEdgeRecord>,
        thresholds: Vec<String>,
        budget: String,
    },
    Knapsack {
        items: Vec<ItemRecord>,
        profit_target: String,
        budget: String,
    },
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    format_version: u32,
    #[serde(flatten)]
    body: Body,
}

fn number(text: &str, what: &str) -> Result<Rational, IoError> {
    parse_rational(text).map_err(|message| IoError::SyntaxError {
        line: 0,
        column: 0,
        message: format!("{what}: {message}"),
    })
}

fn numbers(texts: &[String], what: &str) -> Result<Vec<Rational>, IoError> {
    texts.iter().map(|t| number(t, what)).collect()
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn attach_labels(graph: WeightedGraph, labels: Option<Vec<String>>) -> Result<WeightedGraph, IoError> {
    Ok(match labels {
        Some(labels) => graph.with_labels(labels)?,
        None => graph,
    })
}

fn cost_graph(n: usize, edges: &[CostEdgeRecord], labels: Option<Vec<String>>) -> Result<WeightedGraph, IoError> {
    let edges = edges
        .iter()
        .map(|e| Ok(WeightedEdge::new(e.u, e.v, number(&e.cost, "edge cost")?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    attach_labels(WeightedGraph::new(n, edges)?, labels)
}

fn cost_records(graph: &WeightedGraph) -> Vec<CostEdgeRecord> {
    graph
        .edges()
        .iter()
        .map(|e| CostEdgeRecord { u: e.u, v: e.v, cost: format_rational(&e.weight) })
        .collect()
}

/// Parses an instance document and validates it.
pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(IoError::UnsupportedVersion(file.format_version));
    }
    Ok(match file.body {
        Body::Pvc { n, labels, vertex_weights, edges, thresholds } => {
            let mut graph_edges = Vec::with_capacity(edges.len());
            let mut groups = Vec::with_capacity(edges.len());
            for e in &edges {
                graph_edges.push(WeightedEdge::new(e.u, e.v, number(&e.profit, "edge profit")?));
                groups.push(e.group);
            }
            let graph = attach_labels(WeightedGraph::new(n, graph_edges)?, labels)?;
            Instance::Pvc(PvcInstance::new(
                graph,
                numbers(&vertex_weights, "vertex weight")?,
                groups,
                numbers(&thresholds, "threshold")?,
            )?)
        }
        Body::Pec { n, labels, vertex_groups, edges, requirements } => {
            let graph = cost_graph(n, &edges, labels)?;
            Instance::Pec(PecInstance::new(graph, vertex_groups, requirements)?)
        }
        Body::Wppec { n, labels, vertex_profits, vertex_groups, edges, thresholds, budget } => {
            let graph = cost_graph(n, &edges, labels)?;
            Instance::Wppec(WppecInstance::new(
                graph,
                numbers(&vertex_profits, "vertex profit")?,
                vertex_groups,
                numbers(&thresholds, "threshold")?,
                number(&budget, "budget")?,
            )?)
        }
        Body::Knapsack { items, profit_target, budget } => {
            let items = items
                .iter()
                .map(|it| Ok((number(&it.profit, "item profit")?, number(&it.cost, "item cost")?)))
                .collect::<Result<Vec<_>, IoError>>()?;
            Instance::Knapsack(KnapsackInstance::new(
                items,
                number(&profit_target, "profit target")?,
                number(&budget, "budget")?,
            )?)
        }
    })
}

fn to_file(instance: &Instance) -> InstanceFile {
    let body = match instance {
        Instance::Pvc(p) => Body::Pvc {
            n: p.n(),
            labels: p.graph().labels().map(<[String]>::to_vec),
            vertex_weights: strings(p.vertex_weights()),
            edges: p
                .graph()
                .edges()
                .iter()
                .zip(p.edge_groups())
                .map(|(e, &group)| PvcEdgeRecord {
                    u: e.u,
                    v: e.v,
                    profit: format_rational(&e.weight),
                    group,
                })
                .collect(),
            thresholds: strings(p.thresholds()),
        },
        Instance::Pec(p) => Body::Pec {
            n: p.n(),
            labels: p.graph().labels().map(<[String]>::to_vec),
            vertex_groups: p.vertex_groups().to_vec(),
            edges: cost_records(p.graph()),
            requirements: p.requirements().to_vec(),
        },
        Instance::Wppec(w) => Body::Wppec {
            n: w.graph().n(),
            labels: w.graph().labels().map(<[String]>::to_vec),
            vertex_profits: strings(w.vertex_profits()),
            vertex_groups: w.vertex_groups().to_vec(),
            edges: cost_records(w.graph()),
            thresholds: strings(w.thresholds()),
            budget: format_rational(w.budget()),
        },
        Instance::Knapsack(k) => Body::Knapsack {
            items: k
                .items()
                .iter()
                .map(|(p, c)| ItemRecord { profit: format_rational(p), cost: format_rational(c) })
                .collect(),
            profit_target: format_rational(k.profit_target()),
            budget: format_rational(k.budget()),
        },
    };
    InstanceFile { format_version: FORMAT_VERSION, body }
}

/// Pretty-printed document, newline terminated.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&to_file(instance)).expect("instance serializes");
    text.push('\n');
    text
}

/// Single-line canonical form; the basis of instance digests.
pub fn serialize_compact(instance: &Instance) -> String {
    serde_json::to_string(&to_file(instance)).expect("instance serializes")
}

/// SplitMix64 (Steele, Lea and Flood), the generator behind every random
/// instance. Each call advances the state by `0x9E3779B97F4A7C15` and
/// mixes it with the xor-shift-multiply finaliser below.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi` as `lo + next % (hi - lo + 1)`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        if span == 0 {
            return self.next_u64();
        }
        lo + self.next_u64() % span
    }

    /// Uniform in `0..n` as `next % n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// True iff `next * den < num * 2^64`, i.e. probability `num/den`.
    pub fn bernoulli(&mut self, probability: &Rational) -> bool {
        let draw = BigInt::from(self.next_u64());
        draw * probability.denom() < probability.numer() << 64
    }
}

fn check_fraction(name: &str, value: &Rational, allow_zero: bool) -> Result<(), IoError> {
    let ok_low = if allow_zero { *value >= Rational::zero() } else { *value > Rational::zero() };
    if !ok_low || *value > int(1) {
        let range = if allow_zero { "[0, 1]" } else { "(0, 1]" };
        return Err(IoError::InvalidParameter(format!(
            "{name} must lie in {range}, got {}",
            format_rational(value)
        )));
    }
    Ok(())
}

fn ceil_rational(value: &Rational) -> Rational {
    Rational::from_integer(value.ceil().to_integer())
}

#[derive(Debug, Clone)]
pub struct PvcGenParams {
    pub n: usize,
    pub density: Rational,
    pub omega: usize,
    pub weight_max: u64,
    pub profit_max: u64,
    pub threshold_fraction: Rational,
    pub seed: u64,
}

/// Draw order: vertex weights for `v = 0..n`; then for each pair `u < v`
/// in lexicographic order an edge-presence draw and, when present, its
/// profit and group. Thresholds are `ceil(fraction * group profit)`.
pub fn generate_random_pvc(params: &PvcGenParams) -> Result<PvcInstance, IoError> {
    if params.n < 2 {
        return Err(IoError::InvalidParameter("n must be at least 2".into()));
    }
    if params.omega < 1 {
        return Err(IoError::InvalidParameter("omega must be at least 1".into()));
    }
    if params.weight_max < 1 || params.profit_max < 1 {
        return Err(IoError::InvalidParameter("weight_max and profit_max must be at least 1".into()));
    }
    check_fraction("density", &params.density, false)?;
    check_fraction("threshold_fraction", &params.threshold_fraction, false)?;

    let mut rng = SplitMix64::new(params.seed);
    let weights: Vec<Rational> = (0..params.n)
        .map(|_| int(rng.range_inclusive(1, params.weight_max) as i64))
        .collect();
    let mut edges = Vec::new();
    let mut groups = Vec::new();
    for u in 0..params.n {
        for v in u + 1..params.n {
            if rng.bernoulli(&params.density) {
                let profit = int(rng.range_inclusive(1, params.profit_max) as i64);
                edges.push(WeightedEdge::new(u, v, profit));
                groups.push(rng.below(params.omega as u64) as usize);
            }
        }
    }
    let mut totals = vec![Rational::zero(); params.omega];
    for (e, &g) in edges.iter().zip(&groups) {
        totals[g] += &e.weight;
    }
    let thresholds = totals
        .iter()
        .map(|t| ceil_rational(&(&params.threshold_fraction * t)))
        .collect();
    Ok(PvcInstance::new(WeightedGraph::new(params.n, edges)?, weights, groups, thresholds)?)
}

#[derive(Debug, Clone)]
pub struct PecGenParams {
    pub n: usize,
    pub density: Rational,
    pub omega: usize,
    pub cost_max: u64,
    pub requirement_fraction: Rational,
    pub seed: u64,
}

/// Draw order: vertex groups for `v = 0..n`; then for each pair `u < v` an
/// edge-presence draw and, when present, its cost. Requirements are
/// `floor(fraction * coverable vertices of the group)`.
pub fn generate_random_pec(params: &PecGenParams) -> Result<PecInstance, IoError> {
    if params.n < 2 {
        return Err(IoError::InvalidParameter("n must be at least 2".into()));
    }
    if params.omega < 1 {
        return Err(IoError::InvalidParameter("omega must be at least 1".into()));
    }
    if params.cost_max < 1 {
        return Err(IoError::InvalidParameter("cost_max must be at least 1".into()));
    }
    check_fraction("density", &params.density, false)?;
    check_fraction("requirement_fraction", &params.requirement_fraction, true)?;

    let mut rng = SplitMix64::new(params.seed);
    let groups: Vec<usize> = (0..params.n).map(|_| rng.below(params.omega as u64) as usize).collect();
    let mut edges = Vec::new();
    for u in 0..params.n {
        for v in u + 1..params.n {
            if rng.bernoulli(&params.density) {
                edges.push(WeightedEdge::new(u, v, int(rng.range_inclusive(1, params.cost_max) as i64)));
            }
        }
    }
    let graph = WeightedGraph::new(params.n, edges)?;
    let provisional = PecInstance::new(graph.clone(), groups.clone(), vec![0; params.omega])?;
    let requirements = provisional
        .coverable_counts()
        .iter()
        .map(|&c| {
            let r = (&params.requirement_fraction * int(c as i64)).floor().to_integer();
            r.to_usize().expect("requirement fits in usize")
        })
        .collect();
    Ok(PecInstance::new(graph, groups, requirements)?)
}

#[derive(Debug, Clone)]
pub struct KnapsackGenParams {
    pub items: usize,
    pub value_max: u64,
    pub seed: u64,
}

/// Draw order: `(profit, cost)` per item, each uniform in `0..=value_max`;
/// then the profit target uniform in `0..=total profit` and the budget
/// uniform in `0..=total cost`.
pub fn generate_random_knapsack(params: &KnapsackGenParams) -> Result<KnapsackInstance, IoError> {
    if params.items < 1 {
        return Err(IoError::InvalidParameter("at least one item is required".into()));
    }
    let mut rng = SplitMix64::new(params.seed);
    let items: Vec<(u64, u64)> = (0..params.items)
        .map(|_| (rng.range_inclusive(0, params.value_max), rng.range_inclusive(0, params.value_max)))
        .collect();
    let total_profit: u64 = items.iter().map(|i| i.0).sum();
    let total_cost: u64 = items.iter().map(|i| i.1).sum();
    let target = rng.range_inclusive(0, total_profit);
    let budget = rng.range_inclusive(0, total_cost);
    Ok(KnapsackInstance::new(
        items.iter().map(|&(p, c)| (int(p as i64), int(c as i64))).collect(),
        int(target as i64),
        int(budget as i64),
    )?)
}
