//! Problem graphs: variable count, coupler edges, and optional 2D layout
//! coordinates used by the heatmap renderer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of distinct variable indices, stored as (min, max).
pub type Edge = (usize, usize);

/// Canonicalizes an edge to (min, max) order.
pub fn canonical_edge(i: usize, j: usize) -> Edge {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub name: String,
    pub num_vars: usize,
    /// Canonical (i < j) edges, sorted, no duplicates.
    pub edges: Vec<Edge>,
    /// Optional per-variable render coordinates; when present, length is `num_vars`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<Vec<(f64, f64)>>,
}

impl Topology {
    pub fn new(name: impl Into<String>, num_vars: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::with_layout(name, num_vars, edges, None)
    }

    pub fn with_layout(
        name: impl Into<String>,
        num_vars: usize,
        edges: Vec<Edge>,
        layout: Option<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument("num_vars must be positive".into()));
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(i, j)| canonical_edge(i, j))
            .collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(i, j) in &edges {
            if i == j {
                return Err(Error::InvalidArgument(format!("self-loop at {i}")));
            }
            if j >= num_vars {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}) endpoint out of range (n = {num_vars})"
                )));
            }
        }
        if let Some(coords) = &layout {
            if coords.len() != num_vars {
                return Err(Error::InvalidArgument(format!(
                    "layout has {} entries, expected {num_vars}",
                    coords.len()
                )));
            }
        }
        Ok(Topology {
            name: name.into(),
            num_vars,
            edges,
            layout,
        })
    }

    /// A path graph 0-1-2-...-(n-1). Handy for small test instances.
    pub fn chain(n: usize) -> Result<Self> {
        let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        let layout = (0..n).map(|i| (i as f64, 0.0)).collect();
        Self::with_layout(format!("chain-{n}"), n, edges, Some(layout))
    }
}

/// Builds a standard Chimera graph of `rows` x `cols` unit cells, each a
/// complete bipartite K_{shore,shore}.
///
/// Index convention: variable `((r*cols + c)*2 + side)*shore + k` is qubit `k`
/// of the left (`side = 0`) or right (`side = 1`) shore of cell `(r, c)`.
/// Horizontal couplers join corresponding left-shore qubits of horizontally
/// adjacent cells; vertical couplers join corresponding right-shore qubits of
/// vertically adjacent cells.
pub fn chimera_topology(rows: usize, cols: usize, shore: usize) -> Result<Topology> {
    if rows == 0 || cols == 0 || shore == 0 {
        return Err(Error::InvalidArgument(
            "chimera dimensions must be positive".into(),
        ));
    }
    let num_vars = rows * cols * 2 * shore;
    let var = |r: usize, c: usize, side: usize, k: usize| ((r * cols + c) * 2 + side) * shore + k;

    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            // intra-cell K_{shore,shore}
            for k in 0..shore {
                for m in 0..shore {
                    edges.push((var(r, c, 0, k), var(r, c, 1, m)));
                }
            }
            // horizontal couplers on the left shore
            if c + 1 < cols {
                for k in 0..shore {
                    edges.push((var(r, c, 0, k), var(r, c + 1, 0, k)));
                }
            }
            // vertical couplers on the right shore
            if r + 1 < rows {
                for k in 0..shore {
                    edges.push((var(r, c, 1, k), var(r + 1, c, 1, k)));
                }
            }
        }
    }

    // Each cell occupies a block: left shore is a column, right shore the
    // adjacent column, qubits stacked vertically.
    let mut layout = vec![(0.0, 0.0); num_vars];
    for r in 0..rows {
        for c in 0..cols {
            for side in 0..2 {
                for k in 0..shore {
                    let x = c as f64 * 3.0 + side as f64;
                    let y = r as f64 * (shore as f64 + 1.0) + k as f64;
                    layout[var(r, c, side, k)] = (x, y);
                }
            }
        }
    }

    Topology::with_layout(
        format!("chimera-{rows}-{cols}-{shore}"),
        num_vars,
        edges,
        Some(layout),
    )
}

/// Parses a `chimera-R-C-S` spec string.
pub fn parse_chimera_spec(spec: &str) -> Result<Topology> {
    let err = || {
        Error::InvalidArgument(format!(
            "bad topology spec {spec:?}: expected chimera-R-C-S"
        ))
    };
    let rest = spec.strip_prefix("chimera-").ok_or_else(err)?;
    let parts: Vec<&str> = rest.split('-').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| err()))
        .collect::<Result<_>>()?;
    chimera_topology(nums[0], nums[1], nums[2])
}
