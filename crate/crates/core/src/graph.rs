//! Undirected simple graphs over dense vertex indices `0..n`.
//!
//! The text format is a plain edge list:
//!
//! ```text
//! vertices 6
//! # comment
//! 0 1
//! 1 2
//! ```
//!
//! The `vertices N` header is optional and only needed for isolated
//! trailing vertices. Without it the vertex count is one past the largest
//! index seen.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. Edges are stored normalized as `(min, max)` in input order.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            normalized.push(key);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            vertex_count,
            edges: normalized,
            adjacency,
        })
    }

    /// The 6-vertex, 6-edge instance used throughout the experiments.
    /// Minimum PDS: {0,4} and {1,5}; minimum DS: {1,4}.
    pub fn six_vertex_instance() -> Self {
        Self::new(6, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)])
            .expect("static instance is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `N[v]`: the neighbors of `v` together with `v`, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        let adj = &self.adjacency[v];
        let pos = adj.partition_point(|&w| w < v);
        let mut out = Vec::with_capacity(adj.len() + 1);
        out.extend_from_slice(&adj[..pos]);
        out.push(v);
        out.extend_from_slice(&adj[pos..]);
        Ok(out)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_seen: Option<usize> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "vertices" {
                if declared.is_some() || !edges.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "`vertices` header must come first and only once".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "expected `vertices N`".into(),
                    });
                }
                declared = Some(parse_index(tokens[1], line_no)?);
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `u v`, got {line:?}"),
                });
            }
            let u = parse_index(tokens[0], line_no)?;
            let v = parse_index(tokens[1], line_no)?;
            if let Some(n) = declared {
                for w in [u, v] {
                    if w >= n {
                        return Err(Error::VertexOutOfRange {
                            vertex: w,
                            count: n,
                        });
                    }
                }
            }
            max_seen = Some(max_seen.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }

        let implied = max_seen.map_or(0, |m| m + 1);
        let vertex_count = declared.unwrap_or(0).max(implied);
        Self::new(vertex_count, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid vertex index {token:?}"),
    })
}
