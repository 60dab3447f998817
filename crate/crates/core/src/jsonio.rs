//! JSON documents for graphs, pairs and profiles: explicit form plus the
//! `chain` / `chain_pair` shorthands.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::pair::{PairError, WeightedPair};

/// Serialize a BigInt as a decimal string; accept numbers or strings.
pub mod bigint_string {
    use num::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => BigInt::from_str(&t).map_err(de::Error::custom),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphDoc {
    Chain {
        chain: Vec<i64>,
    },
    Explicit {
        vertices: Vec<VertexDoc>,
        #[serde(default)]
        edges: Vec<(String, String)>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    #[serde(with = "bigint_string")]
    pub weight: BigInt,
}

impl GraphDoc {
    pub fn build(&self) -> Result<WeightedGraph, GraphError> {
        match self {
            GraphDoc::Chain { chain } => Ok(WeightedGraph::chain(chain)),
            GraphDoc::Explicit { vertices, edges } => {
                let mut g = WeightedGraph::new();
                let mut ids: Vec<(String, VertexId)> = Vec::new();
                for v in vertices {
                    if ids.iter().any(|(name, _)| *name == v.id) {
                        return Err(GraphError::DuplicateVertex(v.id.clone()));
                    }
                    let id = g.add_vertex(v.id.clone(), v.weight.clone());
                    ids.push((v.id.clone(), id));
                }
                let find = |name: &str| {
                    ids.iter()
                        .find(|(n, _)| n == name)
                        .map(|(_, id)| *id)
                        .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
                };
                for (a, b) in edges {
                    g.add_edge(find(a)?, find(b)?)?;
                }
                Ok(g)
            }
        }
    }
}

pub fn graph_from_json(text: &str) -> Result<WeightedGraph, GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::InvalidDocument(e.to_string()))?;
    doc.build()
}

pub fn graph_to_json(g: &WeightedGraph) -> serde_json::Value {
    let vertices: Vec<serde_json::Value> = g
        .vertices()
        .map(|v| {
            serde_json::json!({
                "id": g.label(v),
                "weight": weight_value(g.weight(v)),
            })
        })
        .collect();
    let edges: Vec<serde_json::Value> = g
        .edges()
        .map(|(a, b)| serde_json::json!([g.label(a), g.label(b)]))
        .collect();
    serde_json::json!({ "vertices": vertices, "edges": edges })
}

fn weight_value(w: &BigInt) -> serde_json::Value {
    match i64::try_from(w) {
        Ok(v) => serde_json::json!(v),
        Err(_) => serde_json::json!(w.to_string()),
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PairDoc {
    ChainPair {
        chain_pair: Vec<ChainPairEntry>,
    },
    Explicit {
        vertices: Vec<VertexDoc>,
        #[serde(default)]
        edges: Vec<(String, String)>,
        distinguished: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ChainPairEntry {
    Plain(i64),
    Text(String),
}

impl PairDoc {
    pub fn build(&self) -> Result<WeightedPair, PairError> {
        match self {
            PairDoc::ChainPair { chain_pair } => {
                let rendered: Vec<String> = chain_pair
                    .iter()
                    .map(|e| match e {
                        ChainPairEntry::Plain(v) => v.to_string(),
                        ChainPairEntry::Text(t) => t.clone(),
                    })
                    .collect();
                WeightedPair::parse_chain(&format!("[{}]", rendered.join(",")))
            }
            PairDoc::Explicit {
                vertices,
                edges,
                distinguished,
            } => {
                let g = GraphDoc::Explicit {
                    vertices: vertices
                        .iter()
                        .map(|v| VertexDoc {
                            id: v.id.clone(),
                            weight: v.weight.clone(),
                        })
                        .collect(),
                    edges: edges.clone(),
                }
                .build()?;
                let v = g
                    .vertex_by_label(distinguished)
                    .ok_or_else(|| PairError::MissingDistinguished(distinguished.clone()))?;
                WeightedPair::new(g, v)
            }
        }
    }
}

pub fn pair_from_json(text: &str) -> Result<WeightedPair, PairError> {
    let doc: PairDoc = serde_json::from_str(text)
        .map_err(|e| PairError::Graph(GraphError::InvalidDocument(e.to_string())))?;
    doc.build()
}

pub fn pair_to_json(p: &WeightedPair) -> serde_json::Value {
    let mut value = graph_to_json(p.graph());
    value["distinguished"] = serde_json::json!(p.distinguished_label());
    value
}
