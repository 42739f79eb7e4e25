//! Undirected simple graphs with relation-tagged edges.
//!
//! Edges are stored canonically as `(u, v)` with `u < v`, sorted
//! lexicographically. Per-node sorted neighbor lists and a dense degree
//! vector are kept consistent with the edge sequence on every mutation.

use crate::error::{Error, Result};

/// Relation label carried by each edge: original input topology vs.
/// edges introduced by rewiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationTag {
    Original = 1,
    Added = 2,
}

impl RelationTag {
    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            1 => Some(RelationTag::Original),
            2 => Some(RelationTag::Added),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

/// Undirected simple graph over nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize, RelationTag)>,
    neighbors: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Graph {
    /// Empty graph (no edges) on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            node_count: n,
            edges: Vec::new(),
            neighbors: vec![Vec::new(); n],
            degree: vec![0; n],
        }
    }

    /// Builds a graph from an edge list. Edges may arrive in any order
    /// and either endpoint orientation; the stored sequence is canonical.
    pub fn from_edges(n: usize, edges: &[(usize, usize, RelationTag)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v, tag) in edges {
            g.add_edge(u, v, tag)?;
        }
        g.edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge sequence, sorted by `(u, v)` when built through
    /// `from_edges`; edges appended by later `add_edge` calls follow.
    pub fn edges(&self) -> &[(usize, usize, RelationTag)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.neighbors[u].len() <= self.neighbors[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.node_count * (self.node_count - 1) / 2
    }

    /// Index of the first isolated node, if any.
    pub fn isolated_node(&self) -> Option<usize> {
        self.degree.iter().position(|&d| d == 0)
    }

    pub fn check_no_isolated(&self) -> Result<()> {
        match self.isolated_node() {
            Some(v) => Err(Error::IsolatedNode(v)),
            None => Ok(()),
        }
    }

    /// Adds the undirected edge `(u, v)`; rejects self-loops, duplicates
    /// (regardless of tag), and out-of-range endpoints without mutating.
    pub fn add_edge(&mut self, u: usize, v: usize, tag: RelationTag) -> Result<()> {
        if u >= self.node_count {
            return Err(Error::NodeOutOfRange(u, self.node_count));
        }
        if v >= self.node_count {
            return Err(Error::NodeOutOfRange(v, self.node_count));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let (a, b) = (u.min(v), u.max(v));
        if self.has_edge(a, b) {
            return Err(Error::DuplicateEdge(a, b));
        }
        self.edges.push((a, b, tag));
        let ia = self.neighbors[a].binary_search(&b).unwrap_err();
        self.neighbors[a].insert(ia, b);
        let ib = self.neighbors[b].binary_search(&a).unwrap_err();
        self.neighbors[b].insert(ib, a);
        self.degree[a] += 1;
        self.degree[b] += 1;
        debug_assert_eq!(
            self.degree.iter().sum::<usize>(),
            2 * self.edges.len(),
            "handshake identity violated"
        );
        Ok(())
    }

    /// `1 + d_v`, the degree after a notional self-loop.
    pub fn augmented_degree(&self, v: usize) -> Result<usize> {
        if v >= self.node_count {
            return Err(Error::NodeOutOfRange(v, self.node_count));
        }
        Ok(1 + self.degree[v])
    }

    /// True when every node is reachable from node 0 (empty graphs count
    /// as connected).
    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.node_count
    }

    /// Non-edge pairs `(u, v)` with `u < v`, lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.node_count {
            let nbrs = &self.neighbors[u];
            let mut it = nbrs.iter().peekable();
            for v in (u + 1)..self.node_count {
                while let Some(&&w) = it.peek() {
                    if w < v {
                        it.next();
                    } else {
                        break;
                    }
                }
                if it.peek() != Some(&&v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}
