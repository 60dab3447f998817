//! Weighted pairs (graph with a distinguished vertex), pair blow-ups,
//! contraction, and the bounded erasability search with pruning certificates.

use std::collections::HashMap;

use num::{BigInt, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    canonical_key_marked, equiv_empty, CanonicalKey, EmptyEquivalenceOutcome, GraphError,
    VertexId, WeightedGraph,
};

#[derive(Debug, Error)]
pub enum PairError {
    #[error("pair graph must be nonempty")]
    EmptyGraph,
    #[error("distinguished vertex `{0}` is not in the graph")]
    MissingDistinguished(String),
    #[error("vertex `{0}` is not contractible: {1}")]
    NotContractible(String, String),
    #[error("chain pair needs exactly one starred entry, found {0}")]
    StarCount(usize),
    #[error("cannot parse chain entry `{0}`")]
    BadChainEntry(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Nonempty weighted graph with a distinguished vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPair {
    graph: WeightedGraph,
    distinguished: VertexId,
}

impl WeightedPair {
    pub fn new(graph: WeightedGraph, distinguished: VertexId) -> Result<Self, PairError> {
        if graph.is_empty() {
            return Err(PairError::EmptyGraph);
        }
        if !graph.contains(distinguished) {
            return Err(PairError::MissingDistinguished(format!(
                "{:?}",
                distinguished
            )));
        }
        Ok(WeightedPair {
            graph,
            distinguished,
        })
    }

    /// Linear chain `[x_1, .., x_i*, .., x_n]` with the starred vertex
    /// distinguished. Reversal yields the same pair up to isomorphism.
    pub fn chain(weights: &[i64], starred: usize) -> Result<Self, PairError> {
        let graph = WeightedGraph::chain(weights);
        let v = graph
            .vertex_by_label(&format!("v{}", starred + 1))
            .ok_or(PairError::EmptyGraph)?;
        WeightedPair::new(graph, v)
    }

    /// Parse the bracketed notation, e.g. `[-3,-1*,-1,-2]`.
    pub fn parse_chain(text: &str) -> Result<Self, PairError> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut weights = Vec::new();
        let mut starred = Vec::new();
        for (idx, raw) in inner.split(',').enumerate() {
            let mut token = raw.trim().to_owned();
            if token.ends_with('*') {
                token.pop();
                starred.push(idx);
            }
            let w: i64 = token
                .parse()
                .map_err(|_| PairError::BadChainEntry(raw.trim().to_owned()))?;
            weights.push(w);
        }
        if starred.len() != 1 {
            return Err(PairError::StarCount(starred.len()));
        }
        WeightedPair::chain(&weights, starred[0])
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn distinguished(&self) -> VertexId {
        self.distinguished
    }

    pub fn distinguished_label(&self) -> &str {
        self.graph.label(self.distinguished)
    }

    /// The graph with the distinguished vertex removed.
    pub fn erased_graph(&self) -> WeightedGraph {
        self.graph.delete_vertex(self.distinguished)
    }

    /// All pair blow-ups: at the distinguished vertex, then at each incident
    /// edge. The new -1 vertex becomes distinguished in each successor.
    pub fn blow_ups(&self) -> Vec<(PairBlowUp, WeightedPair)> {
        let v = self.distinguished;
        let mut out = Vec::new();
        let (g, e) = self.graph.blow_up_at_vertex(v).expect("v in graph");
        out.push((
            PairBlowUp::AtVertex,
            WeightedPair {
                graph: g,
                distinguished: e,
            },
        ));
        let mut nbs = self.graph.neighbors(v);
        nbs.sort();
        for u in nbs {
            let (g, e) = self.graph.blow_up_at_edge(v, u).expect("edge exists");
            out.push((
                PairBlowUp::AtEdge {
                    other: self.graph.label(u).to_owned(),
                },
                WeightedPair {
                    graph: g,
                    distinguished: e,
                },
            ));
        }
        out
    }

    /// Vertices of weight -1 that are neither the distinguished vertex nor
    /// one of its neighbours, with at most two pairwise non-adjacent
    /// neighbours.
    pub fn contractible_vertices(&self) -> Vec<VertexId> {
        let v = self.distinguished;
        let near: Vec<VertexId> = self.graph.neighbors(v);
        self.graph
            .vertices()
            .filter(|&w| w != v && !near.contains(&w) && self.graph.can_blow_down(w))
            .collect()
    }

    pub fn contract(&self, w: VertexId) -> Result<WeightedPair, PairError> {
        if !self.contractible_vertices().contains(&w) {
            let (name, reason) = if !self.graph.contains(w) {
                (format!("{:?}", w), "not a vertex".to_owned())
            } else if w == self.distinguished {
                (
                    self.graph.label(w).to_owned(),
                    "it is the distinguished vertex".to_owned(),
                )
            } else if self.graph.neighbors(self.distinguished).contains(&w) {
                (
                    self.graph.label(w).to_owned(),
                    "it neighbours the distinguished vertex".to_owned(),
                )
            } else {
                (
                    self.graph.label(w).to_owned(),
                    "blow-down precondition fails".to_owned(),
                )
            };
            return Err(PairError::NotContractible(name, reason));
        }
        Ok(WeightedPair {
            graph: self.graph.blow_down(w)?,
            distinguished: self.distinguished,
        })
    }

    /// Contract repeatedly (smallest contractible vertex first) until no
    /// contractible vertex remains. Preserves the erasability length.
    pub fn normalize(&self) -> WeightedPair {
        let mut cur = self.clone();
        loop {
            let mut c = cur.contractible_vertices();
            c.sort();
            match c.first() {
                Some(&w) => cur = cur.contract(w).expect("contractible"),
                None => return cur,
            }
        }
    }

    /// Key equal exactly for isomorphic pairs (distinguished vertex marked).
    pub fn canonical_key_with_limit(&self, limit: usize) -> Result<CanonicalKey, GraphError> {
        canonical_key_marked(&self.graph, Some(self.distinguished), limit)
    }

    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        self.canonical_key_with_limit(crate::graph::DEFAULT_CANONICAL_LIMIT)
    }

    /// Replay a blow-up step recorded by the search.
    pub fn apply(&self, op: &PairBlowUp) -> Result<WeightedPair, PairError> {
        match op {
            PairBlowUp::AtVertex => {
                let (g, e) = self.graph.blow_up_at_vertex(self.distinguished)?;
                Ok(WeightedPair {
                    graph: g,
                    distinguished: e,
                })
            }
            PairBlowUp::AtEdge { other } => {
                let u = self
                    .graph
                    .vertex_by_label(other)
                    .ok_or_else(|| GraphError::UnknownVertex(other.clone()))?;
                let (g, e) = self.graph.blow_up_at_edge(self.distinguished, u)?;
                Ok(WeightedPair {
                    graph: g,
                    distinguished: e,
                })
            }
        }
    }
}

/// A blow-up of a pair happens at the distinguished vertex or at an edge
/// incident to it; `other` names the second endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum PairBlowUp {
    #[serde(rename = "blow_up_vertex")]
    AtVertex,
    #[serde(rename = "blow_up_edge")]
    AtEdge {
        #[serde(rename = "at")]
        other: String,
    },
}

/// Sound non-erasability tests checked before searching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneRule {
    /// A vertex of nonnegative weight, distinct from and not adjacent to the
    /// distinguished vertex, survives every pair blow-up.
    NonnegativeFarVertex,
    /// At least two vertices, distinguished weight negative, and every other
    /// weight strictly below -1: no -1 vertex can ever appear off-center.
    AllOthersBelowMinusOne,
}

/// First firing prune rule, if any. Both rules are sound for
/// non-erasability at every depth.
pub fn prune(p: &WeightedPair) -> Option<PruneRule> {
    let g = p.graph();
    let v = p.distinguished();
    let near = g.neighbors(v);
    let far_nonnegative = g
        .vertices()
        .any(|w| w != v && !near.contains(&w) && !g.weight(w).is_negative());
    if far_nonnegative {
        return Some(PruneRule::NonnegativeFarVertex);
    }
    if g.vertex_count() >= 2
        && g.weight(v).is_negative()
        && g.vertices()
            .all(|w| w == v || *g.weight(w) < BigInt::from(-1))
    {
        return Some(PruneRule::AllOthersBelowMinusOne);
    }
    None
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ErasabilityOutcome {
    Erasable {
        steps: usize,
        witness: Vec<PairBlowUp>,
    },
    NotErasable {
        reason: NotErasableReason,
    },
    Unknown {
        depth: usize,
    },
}

impl ErasabilityOutcome {
    pub fn erasable_steps(&self) -> Option<usize> {
        match self {
            ErasabilityOutcome::Erasable { steps, .. } => Some(*steps),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotErasableReason {
    Pruned { rule: PruneRule },
    /// Every branch of the bounded search was closed by a prune rule, with
    /// no budget cutoff and no unresolved subcall anywhere.
    AllBranchesPruned,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Blow-up budget for the pair search (contractions are free).
    pub depth: usize,
    /// Extra blow-up budget for each graph-emptiness subcall.
    pub equiv_depth: usize,
    /// Disable prune rules; used to test their soundness.
    pub disable_prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: 6,
            equiv_depth: 2,
            disable_prune: false,
        }
    }
}

impl SearchConfig {
    pub fn with_depth(depth: usize) -> Self {
        SearchConfig {
            depth,
            ..Default::default()
        }
    }
}

struct Search {
    cfg: SearchConfig,
    limit: usize,
    /// canonical key -> largest remaining budget fully explored w/o witness
    explored: HashMap<CanonicalKey, usize>,
    any_cutoff: bool,
    any_unknown: bool,
}

enum Dfs {
    Found(Vec<PairBlowUp>, usize),
    NoWitness,
}

impl Search {
    fn erased_here(&mut self, p: &WeightedPair) -> bool {
        match equiv_empty(&p.erased_graph(), self.cfg.equiv_depth) {
            EmptyEquivalenceOutcome::Equivalent { .. } => true,
            EmptyEquivalenceOutcome::NotEquivalent { .. } => false,
            EmptyEquivalenceOutcome::Unknown { .. } => {
                self.any_unknown = true;
                false
            }
        }
    }

    fn dfs(&mut self, p: &WeightedPair, used: usize, budget: usize) -> Dfs {
        if !self.cfg.disable_prune && prune(p).is_some() {
            return Dfs::NoWitness;
        }
        if self.erased_here(p) {
            return Dfs::Found(Vec::new(), used);
        }
        if used == budget {
            self.any_cutoff = true;
            return Dfs::NoWitness;
        }
        let remaining = budget - used;
        if let Ok(key) = p.canonical_key_with_limit(self.limit) {
            if let Some(&seen) = self.explored.get(&key) {
                if seen >= remaining {
                    return Dfs::NoWitness;
                }
            }
        }
        for (op, successor) in p.blow_ups() {
            let normalized = successor.normalize();
            match self.dfs(&normalized, used + 1, budget) {
                Dfs::Found(mut path, steps) => {
                    path.insert(0, op);
                    return Dfs::Found(path, steps);
                }
                Dfs::NoWitness => {}
            }
        }
        if let Ok(key) = p.canonical_key_with_limit(self.limit) {
            let entry = self.explored.entry(key).or_insert(remaining);
            if *entry < remaining {
                *entry = remaining;
            }
        }
        Dfs::NoWitness
    }
}

/// Iterative-deepening search for an erasing sequence of pair blow-ups,
/// normalizing at every node and memoizing canonical forms.
pub fn erasability(p: &WeightedPair, cfg: SearchConfig) -> ErasabilityOutcome {
    // the zero-step criterion is checked literally, before normalization
    match equiv_empty(&p.erased_graph(), cfg.equiv_depth) {
        EmptyEquivalenceOutcome::Equivalent { .. } => {
            return ErasabilityOutcome::Erasable {
                steps: 0,
                witness: Vec::new(),
            }
        }
        EmptyEquivalenceOutcome::NotEquivalent { .. } => {}
        EmptyEquivalenceOutcome::Unknown { .. } => {
            // conservatively keep searching; the verdict can only degrade
        }
    }

    let root = p.normalize();
    if !cfg.disable_prune {
        if let Some(rule) = prune(&root) {
            return ErasabilityOutcome::NotErasable {
                reason: NotErasableReason::Pruned { rule },
            };
        }
    }

    let limit = root.graph().vertex_count() + cfg.depth + 2;
    for budget in 1..=cfg.depth {
        let mut search = Search {
            cfg,
            limit,
            explored: HashMap::new(),
            any_cutoff: false,
            any_unknown: false,
        };
        match search.dfs(&root, 0, budget) {
            Dfs::Found(witness, steps) => {
                return ErasabilityOutcome::Erasable { steps, witness };
            }
            Dfs::NoWitness => {
                if !search.any_cutoff && !search.any_unknown {
                    return ErasabilityOutcome::NotErasable {
                        reason: NotErasableReason::AllBranchesPruned,
                    };
                }
            }
        }
    }
    ErasabilityOutcome::Unknown { depth: cfg.depth }
}
