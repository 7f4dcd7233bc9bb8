//! Maximum-weight matching in general graphs.
//!
//! Edmonds' blossom algorithm with the primal-dual bookkeeping of Galil,
//! in the O(n^3) form popularised by Van Rantwijk's reference
//! implementation. Weights are integers internally; the rational front end
//! scales them by their common denominator first.
//!
//! Vertex duals are stored doubled so that every slack stays integral:
//! `slack(u, v) = dual[u] + dual[v] - 2 w(u, v)`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::model::WeightedGraph;
use crate::number::{common_denominator, scaled_integer, Rational};

/// Upper bound on the edge count accepted by [`brute_force_max_matching`].
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 25;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge {edge} has negative weight")]
    NegativeWeight { edge: usize },
    #[error("edge {edge} references vertex {vertex} but the graph has {n} vertices")]
    UnknownVertex { edge: usize, vertex: usize, n: usize },
    #[error("edge weights do not fit the integer range once scaled")]
    WeightOverflow,
    #[error("brute-force matching needs at most {limit} edges, got {size}")]
    TooLarge { size: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Matched edge ids, ascending.
    pub edges: Vec<usize>,
    pub weight: Rational,
    /// Partner of each vertex, if matched.
    pub mate: Vec<Option<usize>>,
}

impl Matching {
    fn from_edge_ids(graph: &WeightedGraph, mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        let mut mate = vec![None; graph.n()];
        let mut weight = Rational::zero();
        for &k in &edges {
            let e = graph.edge(k);
            mate[e.u] = Some(e.v);
            mate[e.v] = Some(e.u);
            weight += &e.weight;
        }
        Self { edges, weight, mate }
    }
}

/// Maximum-weight matching of a graph with non-negative rational weights.
pub fn max_weight_matching(graph: &WeightedGraph) -> Result<Matching, MatchingError> {
    let scale = common_denominator(graph.edges().iter().map(|e| &e.weight));
    let mut edges = Vec::with_capacity(graph.m());
    for e in graph.edges() {
        let w: BigInt = scaled_integer(&e.weight, &scale).ok_or(MatchingError::WeightOverflow)?;
        let w = w.to_i128().ok_or(MatchingError::WeightOverflow)?;
        edges.push((e.u, e.v, w));
    }
    let total: Option<i128> = edges.iter().try_fold(0i128, |acc, e| acc.checked_add(e.2));
    if total.is_none_or(|t| t > i128::MAX / 8) {
        return Err(MatchingError::WeightOverflow);
    }
    let mate = max_weight_matching_int(graph.n(), &edges)?;
    let ids: Vec<usize> = mate
        .iter()
        .enumerate()
        .filter_map(|(v, k)| k.filter(|&k| graph.edge(k).u == v))
        .collect();
    Ok(Matching::from_edge_ids(graph, ids))
}

/// Integer core. Returns, for each vertex, the id of its matched edge.
pub fn max_weight_matching_int(n: usize, edges: &[(usize, usize, i128)]) -> Result<Vec<Option<usize>>, MatchingError> {
    for (k, &(u, v, w)) in edges.iter().enumerate() {
        if w < 0 {
            return Err(MatchingError::NegativeWeight { edge: k });
        }
        if let Some(&bad) = [u, v].iter().find(|&&x| x >= n) {
            return Err(MatchingError::UnknownVertex { edge: k, vertex: bad, n });
        }
    }
    if n == 0 || edges.is_empty() {
        return Ok(vec![None; n]);
    }
    let mut engine = Blossom::new(n, edges);
    engine.solve();
    Ok(engine.mate.iter().map(|&p| (p != NONE).then_some(p / 2)).collect())
}

struct Blossom<'a> {
    n: usize,
    edges: &'a [(usize, usize, i128)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    /// Remote endpoint index of the matched edge, or NONE.
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i128>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i128)]) -> Self {
        let m = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * m).map(|p| if p % 2 == 0 { edges[p / 2].0 } else { edges[p / 2].1 }).collect();
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(std::iter::repeat_n(NONE, n));
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(std::iter::repeat_n(0, n));
        Self {
            n,
            edges,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![0; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar,
            allowedge: vec![false; m],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i128 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.n {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let mut w = w;
        let mut t = t;
        let mut p = p;
        loop {
            let b = self.inblossom[w];
            debug_assert!(self.label[w] == 0 && self.label[b] == 0);
            self.label[w] = t;
            self.label[b] = t;
            self.labelend[w] = p;
            self.labelend[b] = p;
            self.bestedge[w] = NONE;
            self.bestedge[b] = NONE;
            if t == 1 {
                let leaves = self.leaves(b);
                self.queue.extend(leaves);
                return;
            }
            let base = self.blossombase[b];
            let mb = self.mate[base];
            debug_assert!(mb != NONE);
            w = self.endpoint[mb];
            t = 1;
            p = mb ^ 1;
        }
    }

    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        let (mut v, mut w) = (v, w);
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (v, w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom pool exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            let v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            let w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        let mut bestedgeto = vec![NONE; 2 * self.n];
        for &bv in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[bv].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let len = childs.len() as isize;
            let at = |j: isize| -> usize { j.rem_euclid(len) as usize };
            let endps = self.blossomendps[b].clone();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).expect("entry child") as isize;
            let (jstep, endptrick) = if j & 1 == 1 {
                j -= len;
                (1isize, 0usize)
            } else {
                (-1isize, 1usize)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                let a = self.endpoint[p ^ 1];
                self.label[a] = 0;
                let q = endps[at(j - endptrick as isize)];
                let c = self.endpoint[q ^ endptrick ^ 1];
                self.label[c] = 0;
                self.assign_label(a, 2, p);
                self.allowedge[q / 2] = true;
                j += jstep;
                p = endps[at(j - endptrick as isize)] ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = childs[at(j)];
            let a = self.endpoint[p ^ 1];
            self.label[a] = 2;
            self.label[bv] = 2;
            self.labelend[a] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[at(j)] != entrychild {
                let bv = childs[at(j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let found = self.leaves(bv).into_iter().find(|&v| self.label[v] != 0);
                if let Some(v) = found {
                    self.label[v] = 0;
                    let partner = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[partner] = 0;
                    let le = self.labelend[v];
                    self.assign_label(v, 2, le);
                }
                j += jstep;
            }
        }
        self.label[b] = u8::MAX;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let at = |j: isize| -> usize { j.rem_euclid(len) as usize };
        let i = self.blossomchilds[b].iter().position(|&c| c == t).expect("child") as isize;
        let mut j = i;
        let (jstep, endptrick) = if i & 1 == 1 {
            j -= len;
            (1isize, 0usize)
        } else {
            (-1isize, 1usize)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            let p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        let i = i as usize;
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (s, p) in [(v, 2 * k + 1), (w, 2 * k)] {
            let (mut s, mut p) = (s, p);
            loop {
                let bs = self.inblossom[s];
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self) {
        let n = self.n;
        for _ in 0..n {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            self.blossombestedges[n..].iter_mut().for_each(|e| *e = None);
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // dual adjustment: pick the smallest of the four delta kinds
                let mut deltatype = 1;
                let mut delta = *self.dualvar[..n].iter().min().expect("non-empty");
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..n {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE && self.label[b] == 1 && self.bestedge[b] != NONE {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && self.dualvar[b] < delta
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

/// Exhaustive maximum-weight matching, for graphs with few edges.
pub fn brute_force_max_matching(graph: &WeightedGraph) -> Result<Matching, MatchingError> {
    if graph.m() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(MatchingError::TooLarge { size: graph.m(), limit: BRUTE_FORCE_EDGE_LIMIT });
    }
    struct Search<'g> {
        graph: &'g WeightedGraph,
        used: Vec<bool>,
        chosen: Vec<usize>,
        current: Rational,
        best: Option<(Rational, Vec<usize>)>,
    }
    impl Search<'_> {
        fn go(&mut self, k: usize) {
            if k == self.graph.m() {
                if self.best.as_ref().is_none_or(|(w, _)| self.current > *w) {
                    self.best = Some((self.current.clone(), self.chosen.clone()));
                }
                return;
            }
            self.go(k + 1);
            let e = self.graph.edge(k);
            if !self.used[e.u] && !self.used[e.v] {
                self.used[e.u] = true;
                self.used[e.v] = true;
                self.chosen.push(k);
                self.current += &e.weight;
                self.go(k + 1);
                self.current -= &e.weight;
                self.chosen.pop();
                self.used[e.u] = false;
                self.used[e.v] = false;
            }
        }
    }
    let mut search = Search {
        graph,
        used: vec![false; graph.n()],
        chosen: Vec::new(),
        current: Rational::zero(),
        best: None,
    };
    search.go(0);
    let (_, edges) = search.best.expect("the empty matching is always available");
    Ok(Matching::from_edge_ids(graph, edges))
}

/// True if no vertex is covered twice by `edge_ids`.
pub fn is_matching(graph: &WeightedGraph, edge_ids: &[usize]) -> bool {
    let mut used = vec![false; graph.n()];
    for &k in edge_ids {
        let e = graph.edge(k);
        if used[e.u] || used[e.v] {
            return false;
        }
        used[e.u] = true;
        used[e.v] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, parse_rational};

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> WeightedGraph {
        WeightedGraph::from_int_edges(n, edges).unwrap()
    }

    fn check(g: &WeightedGraph) -> Matching {
        let fast = max_weight_matching(g).unwrap();
        let slow = brute_force_max_matching(g).unwrap();
        assert!(is_matching(g, &fast.edges));
        assert_eq!(fast.weight, slow.weight, "graph {g:?}");
        fast
    }

    #[test]
    fn triangle_takes_heaviest_edge() {
        let m = check(&graph(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]));
        assert_eq!(m.edges, vec![2]);
        assert_eq!(m.weight, int(3));
    }

    #[test]
    fn path_prefers_middle_or_ends() {
        assert_eq!(check(&graph(4, &[(0, 1, 1), (1, 2, 5), (2, 3, 1)])).edges, vec![1]);
        assert_eq!(check(&graph(4, &[(0, 1, 3), (1, 2, 1), (2, 3, 3)])).edges, vec![0, 2]);
    }

    #[test]
    fn complete_graph_on_four() {
        let g = graph(4, &[(0, 1, 4), (0, 2, 1), (0, 3, 2), (1, 2, 2), (1, 3, 1), (2, 3, 4)]);
        let m = check(&g);
        assert_eq!(m.weight, int(8));
        assert_eq!(m.mate, vec![Some(1), Some(0), Some(3), Some(2)]);
    }

    #[test]
    fn zero_weight_edge_changes_nothing() {
        let base = check(&graph(3, &[(0, 1, 2)]));
        let more = check(&graph(3, &[(0, 1, 2), (1, 2, 0)]));
        assert_eq!(base.weight, more.weight);
    }

    #[test]
    fn empty_and_isolated() {
        let m = max_weight_matching(&graph(3, &[])).unwrap();
        assert!(m.edges.is_empty());
        assert_eq!(m.mate, vec![None; 3]);
    }

    #[test]
    fn rational_weights_are_scaled() {
        let half = parse_rational("1/2").unwrap();
        let third = parse_rational("1/3").unwrap();
        let g = WeightedGraph::new(
            4,
            vec![
                crate::model::WeightedEdge::new(0, 1, half.clone()),
                crate::model::WeightedEdge::new(1, 2, parse_rational("0.8").unwrap()),
                crate::model::WeightedEdge::new(2, 3, third.clone()),
            ],
        )
        .unwrap();
        let m = check(&g);
        assert_eq!(m.weight, half + third);
    }

    #[test]
    fn blossom_expansion_cases() {
        // cases that force S-blossom creation, nested blossoms and expansion
        check(&graph(4, &[(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7)]));
        check(&graph(6, &[(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7), (0, 5, 5), (3, 4, 6)]));
        check(&graph(6, &[(0, 1, 9), (0, 2, 8), (1, 2, 10), (0, 3, 5), (3, 4, 4), (0, 5, 3)]));
        check(&graph(6, &[(0, 1, 9), (0, 2, 8), (1, 2, 10), (0, 3, 5), (3, 4, 3), (0, 5, 4)]));
        check(&graph(6, &[(0, 1, 9), (0, 2, 8), (1, 2, 10), (0, 3, 5), (3, 4, 3), (2, 5, 4)]));
        check(&graph(6, &[(0, 1, 9), (0, 2, 9), (1, 2, 10), (1, 3, 8), (2, 4, 8), (3, 4, 10), (4, 5, 6)]));
        check(&graph(8, &[(0, 1, 10), (0, 6, 10), (1, 2, 12), (2, 3, 20), (2, 4, 20), (3, 4, 25), (4, 5, 10), (5, 6, 10), (6, 7, 8)]));
        check(&graph(8, &[(0, 1, 8), (0, 2, 8), (1, 2, 10), (1, 3, 12), (2, 4, 12), (3, 4, 14), (3, 5, 12), (4, 6, 12), (5, 6, 14), (6, 7, 12)]));
        check(&graph(10, &[(0, 1, 23), (0, 4, 22), (0, 5, 15), (1, 2, 25), (2, 3, 22), (3, 4, 25), (3, 7, 14), (4, 6, 13), (5, 8, 9), (6, 9, 8)]));
        check(&graph(10, &[(0, 1, 19), (0, 2, 20), (0, 7, 8), (1, 2, 25), (1, 3, 18), (2, 4, 18), (3, 4, 13), (3, 6, 7), (4, 5, 7), (7, 8, 5), (8, 9, 4)]));
        check(&graph(12, &[(0, 1, 40), (0, 2, 40), (1, 2, 60), (1, 3, 55), (2, 4, 55), (3, 4, 50), (0, 7, 15), (4, 6, 30), (6, 5, 10), (7, 9, 10), (3, 8, 30), (8, 10, 50), (10, 11, 20)]));
    }

    #[test]
    fn brute_force_caps_edges() {
        let edges: Vec<(usize, usize, i64)> = (0..26).map(|i| (i, i + 1, 1)).collect();
        assert!(matches!(
            brute_force_max_matching(&graph(27, &edges)),
            Err(MatchingError::TooLarge { size: 26, limit: 25 })
        ));
    }

    #[test]
    fn integer_api_rejects_bad_input() {
        assert_eq!(max_weight_matching_int(2, &[(0, 1, -1)]), Err(MatchingError::NegativeWeight { edge: 0 }));
        assert_eq!(
            max_weight_matching_int(2, &[(0, 5, 1)]),
            Err(MatchingError::UnknownVertex { edge: 0, vertex: 5, n: 2 })
        );
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(400))]
        #[test]
        fn agrees_with_brute_force(n in 1usize..9, seed in proptest::prelude::any::<u64>(), density in 1u64..=4) {
            let mut rng = crate::io::SplitMix64::new(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if edges.len() < BRUTE_FORCE_EDGE_LIMIT && rng.below(4) < density {
                        edges.push((u, v, rng.range_inclusive(0, 12) as i64));
                    }
                }
            }
            let g = graph(n, &edges);
            let fast = max_weight_matching(&g).unwrap();
            let slow = brute_force_max_matching(&g).unwrap();
            proptest::prop_assert!(is_matching(&g, &fast.edges));
            proptest::prop_assert_eq!(fast.weight, slow.weight);
        }
    }
}
