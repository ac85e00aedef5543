//! JSON interchange for graph maps:
//! `{vertices, edges: [{id, tail, head}], peripheral, edge_image: {id: [signed ids]}, vertex_image?}`.
//! A missing `vertex_image` is read off the endpoints of the image walks.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use knotcert::traintrack::{Edge, EmbeddedGraph, GraphMap};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub head: u32,
    pub id: u32,
    pub tail: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphMapJson {
    pub edge_image: BTreeMap<u32, Vec<i32>>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub peripheral: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_image: Option<BTreeMap<u32, u32>>,
    pub vertices: Vec<u32>,
}

impl GraphMapJson {
    pub fn from_map(m: &GraphMap) -> Self {
        GraphMapJson {
            edge_image: m.edge_image.clone(),
            edges: m
                .graph
                .edges
                .iter()
                .map(|e| EdgeJson {
                    head: e.head,
                    id: e.id,
                    tail: e.tail,
                })
                .collect(),
            peripheral: m.graph.peripheral.clone(),
            vertex_image: Some(m.vertex_image.clone()),
            vertices: m.graph.vertices.clone(),
        }
    }

    pub fn into_map(self) -> Result<GraphMap> {
        let graph = EmbeddedGraph {
            vertices: self.vertices,
            edges: self
                .edges
                .into_iter()
                .map(|e| Edge {
                    id: e.id,
                    tail: e.tail,
                    head: e.head,
                })
                .collect(),
            peripheral: self.peripheral,
        };
        if graph.edges.iter().any(|e| e.id == 0 || e.id > i32::MAX as u32) {
            bail!("edge ids must be in 1..=2^31-1");
        }
        let vertex_image = match self.vertex_image {
            Some(v) => v,
            None => infer_vertex_image(&graph, &self.edge_image),
        };
        Ok(GraphMap {
            graph,
            vertex_image,
            edge_image: self.edge_image,
        })
    }
}

/// First reading wins; inconsistent walks are left for validation to report.
fn infer_vertex_image(graph: &EmbeddedGraph, images: &BTreeMap<u32, Vec<i32>>) -> BTreeMap<u32, u32> {
    let mut out = BTreeMap::new();
    for e in &graph.edges {
        let Some(w) = images.get(&e.id) else { continue };
        let (Some(first), Some(last)) = (w.first(), w.last()) else { continue };
        if let (Some((start, _)), Some((_, end))) = (graph.ends(*first), graph.ends(*last)) {
            out.entry(e.tail).or_insert(start);
            out.entry(e.head).or_insert(end);
        }
    }
    out
}
