//! Weighted-graph blow-up calculus: the three blow-ups, blow-down, lattice
//! invariants and a three-valued test for equivalence with the empty graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num::bigint::Sign;
use num::rational::BigRational;
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default vertex cap for exact canonical labeling.
pub const DEFAULT_CANONICAL_LIMIT: usize = 16;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    MissingEdge(String, String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loops are not allowed (`{0}`)")]
    SelfLoop(String),
    #[error("blow-down at `{vertex}` violates: {clause}")]
    BlowDownPrecondition { vertex: String, clause: String },
    #[error("graph has {size} vertices, canonical labeling limit is {limit}")]
    CanonicalLimit { size: usize, limit: usize },
    #[error("invalid graph document: {0}")]
    InvalidDocument(String),
}

/// Internal vertex handle, stable across blow-ups/downs of one graph lineage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Finite simple graph with integer vertex weights. The empty graph is legal.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    weights: BTreeMap<VertexId, BigInt>,
    labels: BTreeMap<VertexId, String>,
    edges: BTreeSet<(VertexId, VertexId)>,
    next_id: u32,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        // next_id is allocator bookkeeping, not part of graph identity
        self.weights == other.weights && self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

fn norm_edge(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Default for WeightedGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl WeightedGraph {
    pub fn new() -> Self {
        WeightedGraph {
            weights: BTreeMap::new(),
            labels: BTreeMap::new(),
            edges: BTreeSet::new(),
            next_id: 0,
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, weight: impl Into<BigInt>) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.weights.insert(id, weight.into());
        self.labels.insert(id, label.into());
        id
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.label(a).to_owned()));
        }
        for v in [a, b] {
            if !self.weights.contains_key(&v) {
                return Err(GraphError::UnknownVertex(format!("{:?}", v)));
            }
        }
        self.edges.insert(norm_edge(a, b));
        Ok(())
    }

    /// Linear chain with the given weights; labels are `v1..vn`.
    pub fn chain(weights: &[i64]) -> Self {
        let mut g = WeightedGraph::new();
        let ids: Vec<_> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| g.add_vertex(format!("v{}", i + 1), w))
            .collect();
        for pair in ids.windows(2) {
            g.add_edge(pair[0], pair[1]).unwrap();
        }
        g
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.weights.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.weights.contains_key(&v)
    }

    pub fn weight(&self, v: VertexId) -> &BigInt {
        &self.weights[&v]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[&v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(id, _)| *id)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&norm_edge(a, b))
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    fn fresh_label(&self) -> String {
        let mut label = format!("e{}", self.next_id + 1);
        while self.labels.values().any(|l| *l == label) {
            label.push('\'');
        }
        label
    }

    /// Disjoint union with a single new vertex of weight -1.
    pub fn blow_up_free(&self) -> (WeightedGraph, VertexId) {
        let mut g = self.clone();
        let label = g.fresh_label();
        let e = g.add_vertex(label, -1);
        (g, e)
    }

    /// Weight of `v` drops by one; the new -1 vertex is joined to `v` only.
    pub fn blow_up_at_vertex(&self, v: VertexId) -> Result<(WeightedGraph, VertexId), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(format!("{:?}", v)));
        }
        let mut g = self.clone();
        let label = g.fresh_label();
        let e = g.add_vertex(label, -1);
        *g.weights.get_mut(&v).unwrap() -= 1;
        g.add_edge(e, v)?;
        Ok((g, e))
    }

    /// The edge is removed, both endpoints drop by one, and the new -1
    /// vertex is joined to both.
    pub fn blow_up_at_edge(
        &self,
        a: VertexId,
        b: VertexId,
    ) -> Result<(WeightedGraph, VertexId), GraphError> {
        if !self.has_edge(a, b) {
            return Err(GraphError::MissingEdge(
                self.labels.get(&a).cloned().unwrap_or_else(|| format!("{:?}", a)),
                self.labels.get(&b).cloned().unwrap_or_else(|| format!("{:?}", b)),
            ));
        }
        let mut g = self.clone();
        let label = g.fresh_label();
        let e = g.add_vertex(label, -1);
        g.edges.remove(&norm_edge(a, b));
        *g.weights.get_mut(&a).unwrap() -= 1;
        *g.weights.get_mut(&b).unwrap() -= 1;
        g.add_edge(e, a)?;
        g.add_edge(e, b)?;
        Ok((g, e))
    }

    /// True when `blow_down` at `e` is legal.
    pub fn can_blow_down(&self, e: VertexId) -> bool {
        self.blow_down_violation(e).is_none()
    }

    fn blow_down_violation(&self, e: VertexId) -> Option<String> {
        if !self.contains(e) {
            return Some("vertex does not exist".into());
        }
        if *self.weight(e) != BigInt::from(-1) {
            return Some(format!("weight is {}, not -1", self.weight(e)));
        }
        let nb = self.neighbors(e);
        if nb.len() > 2 {
            return Some(format!("{} neighbours, more than 2", nb.len()));
        }
        if nb.len() == 2 && self.has_edge(nb[0], nb[1]) {
            return Some("the two neighbours are adjacent".into());
        }
        None
    }

    /// Inverse of the matching blow-up at a -1 vertex with at most two
    /// pairwise non-adjacent neighbours.
    pub fn blow_down(&self, e: VertexId) -> Result<WeightedGraph, GraphError> {
        if let Some(clause) = self.blow_down_violation(e) {
            return Err(GraphError::BlowDownPrecondition {
                vertex: self
                    .labels
                    .get(&e)
                    .cloned()
                    .unwrap_or_else(|| format!("{:?}", e)),
                clause,
            });
        }
        let nb = self.neighbors(e);
        let mut g = self.clone();
        g.weights.remove(&e);
        g.labels.remove(&e);
        g.edges.retain(|&(a, b)| a != e && b != e);
        for &v in &nb {
            *g.weights.get_mut(&v).unwrap() += 1;
        }
        if nb.len() == 2 {
            g.add_edge(nb[0], nb[1])?;
        }
        Ok(g)
    }

    /// Graph with `v` and its incident edges removed.
    pub fn delete_vertex(&self, v: VertexId) -> WeightedGraph {
        let mut g = self.clone();
        g.weights.remove(&v);
        g.labels.remove(&v);
        g.edges.retain(|&(a, b)| a != v && b != v);
        g
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let order: Vec<VertexId> = self.vertices().collect();
        let n = order.len();
        let mut entries = vec![vec![BigInt::zero(); n]; n];
        for (i, &u) in order.iter().enumerate() {
            entries[i][i] = self.weight(u).clone();
            for (j, &v) in order.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    entries[i][j] = BigInt::one();
                    entries[j][i] = BigInt::one();
                }
            }
        }
        IntersectionMatrix { order, entries }
    }

    pub fn lattice_invariants(&self) -> LatticeInvariants {
        let m = self.intersection_matrix();
        let n = self.vertex_count();
        let det = m.determinant();
        let neg_definite = m.is_negative_definite();
        let signature = m.signature();
        let i = if n.is_multiple_of(2) { det.clone() } else { -det.clone() };
        LatticeInvariants {
            vertex_count: n,
            det,
            neg_definite,
            signature,
            i,
        }
    }

    /// Key equal exactly for weight-preserving isomorphic graphs.
    pub fn canonical_key(&self) -> Result<CanonicalKey, GraphError> {
        self.canonical_key_with_limit(DEFAULT_CANONICAL_LIMIT)
    }

    pub fn canonical_key_with_limit(&self, limit: usize) -> Result<CanonicalKey, GraphError> {
        canonical_key_marked(self, None, limit)
    }

    /// Apply a recorded operation; used when replaying witnesses.
    pub fn apply(&self, op: &GraphOp) -> Result<WeightedGraph, GraphError> {
        let resolve = |label: &str| {
            self.vertex_by_label(label)
                .ok_or_else(|| GraphError::UnknownVertex(label.to_owned()))
        };
        match op {
            GraphOp::BlowDown { at } => self.blow_down(resolve(at)?),
            GraphOp::BlowUpVertex { at } => Ok(self.blow_up_at_vertex(resolve(at)?)?.0),
            GraphOp::BlowUpEdge { at } => {
                Ok(self.blow_up_at_edge(resolve(&at.0)?, resolve(&at.1)?)?.0)
            }
            GraphOp::BlowUpFree => Ok(self.blow_up_free().0),
        }
    }
}

/// Symmetric matrix with the weights on the diagonal and 1 per edge.
#[derive(Debug, Clone)]
pub struct IntersectionMatrix {
    pub order: Vec<VertexId>,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.order.len()
    }

    /// Exact determinant (Bareiss); the empty matrix has determinant 1.
    pub fn determinant(&self) -> BigInt {
        bareiss_det(self.entries.clone())
    }

    fn leading_minor(&self, k: usize) -> BigInt {
        let sub: Vec<Vec<BigInt>> = self.entries[..k]
            .iter()
            .map(|row| row[..k].to_vec())
            .collect();
        bareiss_det(sub)
    }

    /// Strict test via signs of leading principal minors. The empty matrix
    /// counts as negative definite.
    pub fn is_negative_definite(&self) -> bool {
        for k in 1..=self.size() {
            let d = self.leading_minor(k);
            let want_positive = k % 2 == 0;
            match d.sign() {
                Sign::NoSign => return false,
                Sign::Plus if !want_positive => return false,
                Sign::Minus if want_positive => return false,
                _ => {}
            }
        }
        true
    }

    /// (positive, negative, zero) inertia via symmetric congruence over Q.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.size();
        let mut m: Vec<Vec<BigRational>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        let mut k = 0;
        while k < n {
            if m[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    // congruence permutation: swap rows and columns k, j
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    // all remaining diagonal entries vanish, so adding row/col j
                    // puts 2*m[k][j] != 0 on the diagonal
                    for col in 0..n {
                        let t = m[j][col].clone();
                        m[k][col] += t;
                    }
                    for row in 0..n {
                        let t = m[row][j].clone();
                        m[row][k] += t;
                    }
                } else {
                    zero += 1;
                    k += 1;
                    continue;
                }
            }
            let pivot = m[k][k].clone();
            if pivot > BigRational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let factor = &m[i][k] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &m[k][j] * &factor;
                    m[i][j] -= t;
                }
            }
            for j in k + 1..n {
                let factor = &m[k][j] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for i in k..n {
                    let t = &m[i][k] * &factor;
                    m[i][j] -= t;
                }
            }
            k += 1;
        }
        (pos, neg, zero)
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeInvariants {
    pub vertex_count: usize,
    #[serde(with = "crate::jsonio::bigint_string")]
    pub det: BigInt,
    pub neg_definite: bool,
    pub signature: (usize, usize, usize),
    /// (-1)^n * det, conserved by blow-ups and blow-downs.
    #[serde(with = "crate::jsonio::bigint_string")]
    pub i: BigInt,
}

/// One step of the calculus, replayable via [`WeightedGraph::apply`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum GraphOp {
    BlowDown { at: String },
    BlowUpVertex { at: String },
    BlowUpEdge { at: (String, String) },
    BlowUpFree,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Certificate {
    /// (-1)^n det differs from 1, so no blow-up/down sequence reaches the
    /// empty graph.
    Unimodularity {
        vertex_count: usize,
        #[serde(with = "crate::jsonio::bigint_string")]
        det: BigInt,
        #[serde(with = "crate::jsonio::bigint_string")]
        i: BigInt,
    },
    NegativeDefiniteness {
        vertex_count: usize,
        signature: (usize, usize, usize),
    },
}

impl Certificate {
    /// Re-evaluate the certified condition against a graph.
    pub fn holds_against(&self, g: &WeightedGraph) -> bool {
        let inv = g.lattice_invariants();
        match self {
            Certificate::Unimodularity { i, .. } => inv.i == *i && !inv.i.is_one(),
            Certificate::NegativeDefiniteness { .. } => !inv.neg_definite,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EmptyEquivalenceOutcome {
    Equivalent { witness: Vec<GraphOp> },
    NotEquivalent { certificate: Certificate },
    Unknown { depth: usize },
}

impl EmptyEquivalenceOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EmptyEquivalenceOutcome::Equivalent { .. })
    }
}

/// Greedy blow-down pass; returns the stalled graph and the ops applied.
pub fn contract_greedily(g: &WeightedGraph) -> (WeightedGraph, Vec<GraphOp>) {
    let mut cur = g.clone();
    let mut ops = Vec::new();
    loop {
        let Some(e) = cur.vertices().find(|&v| cur.can_blow_down(v)) else {
            return (cur, ops);
        };
        ops.push(GraphOp::BlowDown {
            at: cur.label(e).to_owned(),
        });
        cur = cur.blow_down(e).unwrap();
    }
}

/// Three-phase decision: greedy contraction, invariant gate, then bounded
/// search allowing up to `depth` extra blow-ups.
pub fn equiv_empty(g: &WeightedGraph, depth: usize) -> EmptyEquivalenceOutcome {
    let (stalled, ops) = contract_greedily(g);
    if stalled.is_empty() {
        return EmptyEquivalenceOutcome::Equivalent { witness: ops };
    }

    let inv = g.lattice_invariants();
    if !inv.i.is_one() {
        return EmptyEquivalenceOutcome::NotEquivalent {
            certificate: Certificate::Unimodularity {
                vertex_count: inv.vertex_count,
                det: inv.det,
                i: inv.i,
            },
        };
    }
    if !inv.neg_definite {
        return EmptyEquivalenceOutcome::NotEquivalent {
            certificate: Certificate::NegativeDefiniteness {
                vertex_count: inv.vertex_count,
                signature: inv.signature,
            },
        };
    }

    bounded_empty_search(&stalled, ops, depth)
}

fn bounded_empty_search(
    start: &WeightedGraph,
    prefix: Vec<GraphOp>,
    depth: usize,
) -> EmptyEquivalenceOutcome {
    let limit = start.vertex_count() + depth + 1;
    let key = |g: &WeightedGraph| g.canonical_key_with_limit(limit).expect("within limit");

    let mut visited: HashMap<CanonicalKey, usize> = HashMap::new();
    let mut queue: VecDeque<(WeightedGraph, Vec<GraphOp>, usize)> = VecDeque::new();
    visited.insert(key(start), 0);
    queue.push_back((start.clone(), prefix, 0));

    while let Some((g, ops, used)) = queue.pop_front() {
        if g.is_empty() {
            return EmptyEquivalenceOutcome::Equivalent { witness: ops };
        }
        let mut successors: Vec<(WeightedGraph, GraphOp, usize)> = Vec::new();
        for v in g.vertices() {
            if g.can_blow_down(v) {
                successors.push((
                    g.blow_down(v).unwrap(),
                    GraphOp::BlowDown {
                        at: g.label(v).to_owned(),
                    },
                    used,
                ));
            }
        }
        if used < depth {
            for v in g.vertices() {
                let (h, _) = g.blow_up_at_vertex(v).unwrap();
                successors.push((
                    h,
                    GraphOp::BlowUpVertex {
                        at: g.label(v).to_owned(),
                    },
                    used + 1,
                ));
            }
            for (a, b) in g.edges() {
                let (h, _) = g.blow_up_at_edge(a, b).unwrap();
                successors.push((
                    h,
                    GraphOp::BlowUpEdge {
                        at: (g.label(a).to_owned(), g.label(b).to_owned()),
                    },
                    used + 1,
                ));
            }
            let (h, _) = g.blow_up_free();
            successors.push((h, GraphOp::BlowUpFree, used + 1));
        }
        for (h, op, hused) in successors {
            let k = key(&h);
            match visited.get(&k) {
                Some(&seen) if seen <= hused => continue,
                _ => {}
            }
            visited.insert(k, hused);
            let mut hops = ops.clone();
            hops.push(op);
            queue.push_back((h, hops, hused));
        }
    }
    EmptyEquivalenceOutcome::Unknown { depth }
}

/// Canonical certificate of a weighted graph (optionally with one marked
/// vertex), computed by individualization-refinement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{:02x}", b)).collect()
    }
}

pub(crate) fn canonical_key_marked(
    g: &WeightedGraph,
    marked: Option<VertexId>,
    limit: usize,
) -> Result<CanonicalKey, GraphError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(GraphError::CanonicalLimit { size: n, limit });
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.neighbors(v).into_iter().map(|u| index[&u]).collect())
        .collect();

    // initial colors: rank of (is-marked, weight)
    let mut palette: Vec<(bool, BigInt)> = verts
        .iter()
        .map(|&v| (Some(v) == marked, g.weight(v).clone()))
        .collect();
    palette.sort();
    palette.dedup();
    let colors: Vec<usize> = verts
        .iter()
        .map(|&v| {
            palette
                .binary_search(&(Some(v) == marked, g.weight(v).clone()))
                .unwrap()
        })
        .collect();

    let mut best: Option<Vec<u8>> = None;
    search_labeling(&adj, colors, &mut best, &|order: &[usize]| {
        encode_certificate(g, &verts, order, marked)
    });
    Ok(CanonicalKey(best.expect("nonempty search")))
}

fn refine(adj: &[Vec<usize>], mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
            .map(|i| {
                let mut nb: Vec<usize> = adj[i].iter().map(|&j| colors[j]).collect();
                nb.sort_unstable();
                (colors[i], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let new: Vec<usize> = sigs
            .drain(..)
            .map(|s| uniq.binary_search(&s).unwrap())
            .collect();
        if new == colors {
            return colors;
        }
        colors = new;
    }
}

#[allow(clippy::needless_range_loop)]
fn search_labeling(
    adj: &[Vec<usize>],
    colors: Vec<usize>,
    best: &mut Option<Vec<u8>>,
    encode: &dyn Fn(&[usize]) -> Vec<u8>,
) {
    let colors = refine(adj, colors);
    let n = colors.len();
    // smallest non-singleton color class
    let mut class: Option<(usize, Vec<usize>)> = None;
    for c in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| colors[i] == c).collect();
        if members.len() >= 2 {
            class = Some((c, members));
            break;
        }
    }
    match class {
        None => {
            // discrete: vertex i gets position colors[i]
            let mut order = vec![0usize; n];
            for i in 0..n {
                order[colors[i]] = i;
            }
            let cert = encode(&order);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
        }
        Some((_, members)) => {
            for &m in &members {
                let mut branched = colors.clone();
                // individualize m: give it a color just below its class
                for i in 0..n {
                    if branched[i] >= colors[m] && i != m {
                        branched[i] += 1;
                    }
                }
                search_labeling(adj, branched, best, encode);
            }
        }
    }
}

fn encode_certificate(
    g: &WeightedGraph,
    verts: &[VertexId],
    order: &[usize],
    marked: Option<VertexId>,
) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::new();
    out.extend_from_slice(&(n as u32).to_be_bytes());
    for &i in order {
        let v = verts[i];
        if Some(v) == marked {
            out.push(b'*');
        }
        out.extend_from_slice(g.weight(v).to_string().as_bytes());
        out.push(0xFF);
    }
    let pos: HashMap<VertexId, usize> = order
        .iter()
        .enumerate()
        .map(|(rank, &i)| (verts[i], rank))
        .collect();
    let mut bits = vec![0u8; n * n / 8 + 1];
    for (a, b) in g.edges() {
        let (i, j) = (pos[&a], pos[&b]);
        for (x, y) in [(i, j), (j, i)] {
            let idx = x * n + y;
            bits[idx / 8] |= 1 << (idx % 8);
        }
    }
    out.extend_from_slice(&bits);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_weights(g: &WeightedGraph) -> Vec<i64> {
        // follow the path from one end; direction-normalized, test chains only
        let ends: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if g.is_empty() {
            return vec![];
        }
        let mut cur = ends[0];
        let mut prev = None;
        let mut out = Vec::new();
        loop {
            out.push(i64::try_from(g.weight(cur)).unwrap());
            let next = g.neighbors(cur).into_iter().find(|&n| Some(n) != prev);
            match next {
                Some(n) => {
                    prev = Some(cur);
                    cur = n;
                }
                None => break,
            }
        }
        let mut rev = out.clone();
        rev.reverse();
        out.min(rev)
    }

    #[track_caller]
    fn assert_chain(g: &WeightedGraph, expect: &[i64]) {
        let got = chain_weights(g);
        let mut rev = expect.to_vec();
        rev.reverse();
        assert!(
            got == expect || got == rev,
            "chain mismatch: got {:?}, expected {:?}",
            got,
            expect
        );
    }

    #[test]
    fn free_blow_up_adds_isolated_minus_one() {
        let g = WeightedGraph::new();
        let (h, e) = g.blow_up_free();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(*h.weight(e), BigInt::from(-1));
        assert_eq!(h.degree(e), 0);

        let g = WeightedGraph::chain(&[-2]);
        let (h, e) = g.blow_up_free();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(*h.weight(e), BigInt::from(-1));

        let g = WeightedGraph::chain(&[-2, -3]);
        let (h, _) = g.blow_up_free();
        assert_eq!((h.vertex_count(), h.edge_count()), (3, 1));
    }

    #[test]
    fn vertex_blow_up_examples() {
        let g = WeightedGraph::chain(&[0]);
        let v = g.vertex_by_label("v1").unwrap();
        let (h, e) = g.blow_up_at_vertex(v).unwrap();
        assert_eq!(*h.weight(v), BigInt::from(-1));
        assert_eq!(*h.weight(e), BigInt::from(-1));
        assert!(h.has_edge(v, e));

        let g = WeightedGraph::chain(&[-2, -3]);
        let v = g.vertex_by_label("v1").unwrap();
        let (h, e) = g.blow_up_at_vertex(v).unwrap();
        assert_eq!(*h.weight(v), BigInt::from(-3));
        assert_eq!(h.degree(e), 1);
        assert_eq!(chain_weights(&h).len(), 3);

        let g = WeightedGraph::chain(&[-1]);
        let v = g.vertex_by_label("v1").unwrap();
        let (h, _) = g.blow_up_at_vertex(v).unwrap();
        assert_chain(&h, &[-2, -1]);
    }

    #[test]
    fn edge_blow_up_examples() {
        let g = WeightedGraph::chain(&[-2, -3]);
        let (a, b) = (g.vertex_by_label("v1").unwrap(), g.vertex_by_label("v2").unwrap());
        let (h, e) = g.blow_up_at_edge(a, b).unwrap();
        assert!(!h.has_edge(a, b));
        assert!(h.has_edge(a, e) && h.has_edge(b, e));
        assert_chain(&h, &[-3, -1, -4]);

        let g = WeightedGraph::chain(&[0, 0]);
        let (a, b) = (g.vertex_by_label("v1").unwrap(), g.vertex_by_label("v2").unwrap());
        let (h, _) = g.blow_up_at_edge(a, b).unwrap();
        assert_chain(&h, &[-1, -1, -1]);

        // triangle (-1,-1,x), blow up the (-1,-1) edge: 4-cycle
        let mut g = WeightedGraph::new();
        let a = g.add_vertex("a", -1);
        let b = g.add_vertex("b", -1);
        let c = g.add_vertex("c", 5);
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap();
        g.add_edge(a, c).unwrap();
        let (h, e) = g.blow_up_at_edge(a, b).unwrap();
        assert!(!h.has_edge(a, b));
        assert!(h.has_edge(a, e) && h.has_edge(b, e));
        assert_eq!(*h.weight(a), BigInt::from(-2));
        assert_eq!(*h.weight(b), BigInt::from(-2));
        assert_eq!(*h.weight(c), BigInt::from(5));
        assert_eq!(h.edge_count(), 4);
    }

    #[test]
    fn blow_down_examples() {
        let g = WeightedGraph::chain(&[-2, -1]);
        let e = g.vertex_by_label("v2").unwrap();
        let h = g.blow_down(e).unwrap();
        assert_chain(&h, &[-1]);

        let g = WeightedGraph::chain(&[-3, -1, -4]);
        let e = g.vertex_by_label("v2").unwrap();
        let h = g.blow_down(e).unwrap();
        assert_chain(&h, &[-2, -3]);

        // refusal clauses
        let g = WeightedGraph::chain(&[-2, -1]);
        let v = g.vertex_by_label("v1").unwrap();
        assert!(matches!(
            g.blow_down(v),
            Err(GraphError::BlowDownPrecondition { .. })
        ));
    }

    #[test]
    fn blow_down_refuses_adjacent_neighbours() {
        let mut g = WeightedGraph::new();
        let a = g.add_vertex("a", -2);
        let b = g.add_vertex("b", -2);
        let e = g.add_vertex("e", -1);
        g.add_edge(a, b).unwrap();
        g.add_edge(e, a).unwrap();
        g.add_edge(e, b).unwrap();
        let err = g.blow_down(e).unwrap_err();
        assert!(err.to_string().contains("adjacent"));
    }

    #[test]
    fn blow_ups_invert() {
        let g = WeightedGraph::chain(&[-2, -3, 1]);
        let v = g.vertex_by_label("v2").unwrap();
        let (h, e) = g.blow_up_at_vertex(v).unwrap();
        assert_eq!(h.blow_down(e).unwrap(), g);
        let (h, e) = g.blow_up_at_edge(g.vertex_by_label("v1").unwrap(), v).unwrap();
        assert_eq!(h.blow_down(e).unwrap(), g);
        let (h, e) = g.blow_up_free();
        assert_eq!(h.blow_down(e).unwrap(), g);
    }

    #[test]
    fn intersection_matrix_values() {
        let g = WeightedGraph::chain(&[-1]);
        assert_eq!(g.intersection_matrix().determinant(), BigInt::from(-1));

        let empty = WeightedGraph::new();
        assert_eq!(empty.intersection_matrix().determinant(), BigInt::one());
        assert!(empty.intersection_matrix().is_negative_definite());

        // frozen by 3x3 cofactor expansion: det [-2, t, -2] = 4t + 4
        for t in -5..=5i64 {
            let g = WeightedGraph::chain(&[-2, t, -2]);
            assert_eq!(
                g.intersection_matrix().determinant(),
                BigInt::from(4 * t + 4),
                "t = {}",
                t
            );
        }
    }

    #[test]
    fn lattice_invariant_values() {
        let g = WeightedGraph::chain(&[-1]);
        let inv = g.lattice_invariants();
        assert_eq!(inv.vertex_count, 1);
        assert_eq!(inv.det, BigInt::from(-1));
        assert!(inv.neg_definite);
        assert_eq!(inv.i, BigInt::one());

        let g = WeightedGraph::chain(&[-2, -1, -2]);
        let inv = g.lattice_invariants();
        assert_eq!(inv.det, BigInt::zero());
        assert!(!inv.neg_definite);
        assert_eq!(inv.i, BigInt::zero());

        // oracle: cofactor expansion of [[-2,1,0],[1,0,1],[0,1,-2]] gives 4
        let g = WeightedGraph::chain(&[-2, 0, -2]);
        let inv = g.lattice_invariants();
        assert_eq!(inv.det, BigInt::from(4));
        assert_eq!(inv.i, BigInt::from(-4));
        assert!(!inv.neg_definite);
        assert_eq!(inv.signature, (1, 2, 0));
    }

    #[test]
    fn equiv_empty_examples() {
        let g = WeightedGraph::chain(&[-2, -1]);
        let out = equiv_empty(&g, 2);
        match &out {
            EmptyEquivalenceOutcome::Equivalent { witness } => {
                assert_eq!(witness.len(), 2);
                // replay
                let mut cur = g.clone();
                for op in witness {
                    cur = cur.apply(op).unwrap();
                }
                assert!(cur.is_empty());
            }
            other => panic!("expected Equivalent, got {:?}", other),
        }

        let g = WeightedGraph::chain(&[-2, -1, -2]);
        match equiv_empty(&g, 2) {
            EmptyEquivalenceOutcome::NotEquivalent { certificate } => {
                assert!(certificate.holds_against(&g));
            }
            other => panic!("expected NotEquivalent, got {:?}", other),
        }

        for t in -5..=5i64 {
            let g = WeightedGraph::chain(&[-2, t, -2]);
            assert!(
                matches!(equiv_empty(&g, 1), EmptyEquivalenceOutcome::NotEquivalent { .. }),
                "t = {}",
                t
            );
        }
    }

    #[test]
    fn equiv_empty_honest_unknown_on_e8() {
        // the E8 diagram with all weights -2 is negative definite and
        // unimodular, so the invariant gate passes, yet no blow-down is
        // available; the bounded search must answer Unknown, not guess
        let mut g = WeightedGraph::new();
        let chain: Vec<VertexId> = (0..7).map(|i| g.add_vertex(format!("c{}", i), -2)).collect();
        for w in chain.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        let branch = g.add_vertex("b", -2);
        g.add_edge(branch, chain[4]).unwrap();

        let inv = g.lattice_invariants();
        assert_eq!(inv.det, BigInt::one());
        assert!(inv.neg_definite);
        assert_eq!(inv.i, BigInt::one());
        match equiv_empty(&g, 1) {
            EmptyEquivalenceOutcome::Unknown { depth } => assert_eq!(depth, 1),
            other => panic!("expected Unknown, got {:?}", other),
        }
    }

    #[test]
    fn equiv_empty_edgeless_minus_ones() {
        let mut g = WeightedGraph::new();
        g.add_vertex("a", -1);
        g.add_vertex("b", -1);
        g.add_vertex("c", -1);
        assert!(equiv_empty(&g, 0).is_equivalent());
    }

    #[test]
    fn canonical_key_examples() {
        let a = WeightedGraph::chain(&[-2, -3]);
        let b = WeightedGraph::chain(&[-3, -2]);
        assert_eq!(a.canonical_key().unwrap(), b.canonical_key().unwrap());

        let mut disjoint = WeightedGraph::new();
        disjoint.add_vertex("a", -1);
        disjoint.add_vertex("b", -2);
        let chain = WeightedGraph::chain(&[-1, -2]);
        assert_ne!(
            disjoint.canonical_key().unwrap(),
            chain.canonical_key().unwrap()
        );

        let mut g = WeightedGraph::new();
        let x = g.add_vertex("x", -7);
        let y = g.add_vertex("y", 3);
        let z = g.add_vertex("z", -7);
        g.add_edge(x, y).unwrap();
        g.add_edge(y, z).unwrap();
        let mut h = WeightedGraph::new();
        let c = h.add_vertex("c", 3);
        let a = h.add_vertex("a", -7);
        let b = h.add_vertex("b", -7);
        h.add_edge(a, c).unwrap();
        h.add_edge(c, b).unwrap();
        assert_eq!(g.canonical_key().unwrap(), h.canonical_key().unwrap());
    }

    #[test]
    fn canonical_limit_enforced() {
        let g = WeightedGraph::chain(&[-2; 17]);
        assert!(matches!(
            g.canonical_key(),
            Err(GraphError::CanonicalLimit { .. })
        ));
        assert!(g.canonical_key_with_limit(20).is_ok());
    }
}
