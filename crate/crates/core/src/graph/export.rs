use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Graph, GridSpec};
use crate::error::{Error, Result};

/// JSON form of a graph. Boards serialize as
/// `{"m":…,"n":…,"toroidal":…,"edges":[[u,v],…]}`; graphs without a grid
/// carry `m`/`n` as null plus an explicit `vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: Option<usize>,
    pub n: Option<usize>,
    #[serde(default)]
    pub toroidal: bool,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
}

impl Graph {
    pub fn to_json_value(&self) -> GraphJson {
        let edges = self.edges().map(|(u, v)| [u, v]).collect();
        match self.grid {
            Some(grid) => GraphJson {
                m: Some(grid.m),
                n: Some(grid.n),
                toroidal: grid.toroidal,
                edges,
                vertex_count: None,
            },
            None => GraphJson {
                m: None,
                n: None,
                toroidal: false,
                edges,
                vertex_count: Some(self.vertex_count()),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph JSON is always serializable")
    }

    /// Parses the JSON export. Board descriptions are regenerated from `m`, `n`
    /// and `toroidal` and must list exactly the generated edges.
    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&raw)
    }

    pub fn from_json_value(raw: &GraphJson) -> Result<Graph> {
        let edges = raw.edges.iter().map(|&[u, v]| (u, v));
        match (raw.m, raw.n) {
            (Some(m), Some(n)) => {
                let graph = Graph::board(GridSpec::new(m, n, raw.toroidal)?)?;
                let mut listed: Vec<(usize, usize)> =
                    edges.map(|(u, v)| (u.min(v), u.max(v))).collect();
                listed.sort_unstable();
                if !listed.iter().copied().eq(graph.edges()) {
                    return Err(Error::Parse(format!(
                        "edge list does not match the {} board",
                        graph.grid.expect("board")
                    )));
                }
                Ok(graph)
            }
            (None, None) => {
                let count = match raw.vertex_count {
                    Some(c) => c,
                    None => raw
                        .edges
                        .iter()
                        .flat_map(|e| e.iter().copied())
                        .max()
                        .map_or(0, |v| v + 1),
                };
                Graph::from_edges(count, edges)
            }
            _ => Err(Error::Parse("m and n must be given together".into())),
        }
    }

    /// Graphviz export; edges carry `kind="row|col|dp|dn"` on boards.
    pub fn to_dot(&self) -> String {
        let name = match self.grid {
            Some(g) if g.toroidal => format!("TQ_{}_{}", g.m, g.n),
            Some(g) => format!("Q_{}_{}", g.m, g.n),
            None => format!("G_{}", self.vertex_count()),
        };
        let node = |v: usize| match self.grid {
            Some(_) => self.label(v),
            None => format!("v{v}"),
        };
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in 0..self.vertex_count() {
            match self.grid {
                Some(grid) => {
                    let (x, y) = grid.coords(v);
                    writeln!(out, "  {} [pos=\"{x},{y}!\"];", node(v)).unwrap();
                }
                None => writeln!(out, "  {};", node(v)).unwrap(),
            }
        }
        for (u, v) in self.edges() {
            match self.edge_kinds(u, v).and_then(|k| k.primary()) {
                Some(kind) => {
                    writeln!(out, "  {} -- {} [kind=\"{}\"];", node(u), node(v), kind.tag())
                        .unwrap()
                }
                None => writeln!(out, "  {} -- {};", node(u), node(v)).unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}
