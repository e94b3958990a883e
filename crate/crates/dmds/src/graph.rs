//! Undirected simple graphs with sorted adjacency lists, plus edge-list
//! parsing/serialization and dominating-set checks.

use std::fmt::Write as _;
use thiserror::Error;

/// Vertices are dense integer ids `0..n`.
pub type VertexId = u32;

const ABSENT: u32 = u32::MAX;

/// Set of vertex ids over a fixed domain `0..n` with O(1) insert, erase and
/// membership test, and index access for uniform sampling.
///
/// Members live in a dense array; erasing swaps the last member into the
/// hole, so iteration order depends on the operation history.
#[derive(Clone, Debug)]
pub struct VertexSet {
    items: Vec<VertexId>,
    pos: Vec<u32>,
}

impl VertexSet {
    /// Empty set over the domain `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            items: Vec::new(),
            pos: vec![ABSENT; n],
        }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = VertexSet::new(n);
        for v in members {
            set.insert(v);
        }
        set
    }

    pub fn domain_size(&self) -> usize {
        self.pos.len()
    }

    /// Returns false if `v` was already present.
    pub fn insert(&mut self, v: VertexId) -> bool {
        if self.contains(v) {
            return false;
        }
        self.pos[v as usize] = self.items.len() as u32;
        self.items.push(v);
        true
    }

    /// Returns false if `v` was not present.
    pub fn remove(&mut self, v: VertexId) -> bool {
        let i = self.pos[v as usize];
        if i == ABSENT {
            return false;
        }
        let last = *self.items.last().expect("non-empty: v is present");
        self.items[i as usize] = last;
        self.pos[last as usize] = i;
        self.items.pop();
        self.pos[v as usize] = ABSENT;
        true
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v as usize] != ABSENT
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Member at position `i` in the internal order, `i < len()`.
    pub fn get(&self, i: usize) -> VertexId {
        self.items[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.items
    }

    pub fn clear(&mut self) {
        for &v in &self.items {
            self.pos[v as usize] = ABSENT;
        }
        self.items.clear();
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> Vec<VertexId> {
        let mut out = self.items.clone();
        out.sort_unstable();
        out
    }
}

/// Set equality: same domain and same members, ignoring internal order.
impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.domain_size() == other.domain_size()
            && self.len() == other.len()
            && self.iter().all(|v| other.contains(v))
    }
}

impl Eq for VertexSet {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}): vertex id out of range, graph has {n} vertices")]
    EdgeOutOfRange {
        index: usize,
        u: VertexId,
        v: VertexId,
        n: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected an integer, found `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: negative vertex id {value}")]
    NegativeId { line: usize, value: i64 },
    #[error("line {line}: vertex id 0 in one-indexed input")]
    ZeroIdOneIndexed { line: usize },
    #[error("line {line}: vertex id {id} out of range, header declared {n} vertices")]
    IdOutOfRange { line: usize, id: u64, n: usize },
    #[error("line {line}: vertex id {id} exceeds the supported range")]
    IdTooLarge { line: usize, id: u64 },
    #[error("line {line}: expected an edge `u v`, found {count} token(s)")]
    MalformedEdge { line: usize, count: usize },
    #[error("line {line}: malformed header, expected `p <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: header must appear once, before all edges")]
    UnexpectedHeader { line: usize },
}

/// Undirected simple graph in compressed sparse row form. Adjacency lists
/// are sorted, self-loops and duplicate edges are removed on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Self-loops and
    /// duplicate edges (in either orientation) are dropped; an endpoint
    /// `>= n` is rejected with the offending pair.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::EdgeOutOfRange { index, u, v, n });
            }
            if u == v {
                continue;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        debug_assert!(m % 2 == 0);
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(m);
        offsets.push(0);
        for list in &adj {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Ok(Graph {
            n,
            m: m / 2,
            offsets,
            neighbors,
        })
    }

    /// Parses a whitespace-separated edge list: one `u v` pair per line,
    /// lines starting with `#` or `%` are comments. An optional first line
    /// `p <n> <m>` fixes the vertex count; otherwise `n` is the largest id
    /// plus one. With `one_indexed`, ids are shifted down by one.
    pub fn parse_edge_list(text: &str, one_indexed: bool) -> Result<Self, ParseError> {
        let mut declared_n: Option<usize> = None;
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        let mut max_id: u64 = 0;
        let mut saw_any_id = false;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens[0] == "p" {
                if declared_n.is_some() || !edges.is_empty() {
                    return Err(ParseError::UnexpectedHeader { line });
                }
                if tokens.len() != 3 {
                    return Err(ParseError::MalformedHeader { line });
                }
                let n = parse_count(tokens[1], line)?;
                let _declared_m = parse_count(tokens[2], line)?;
                declared_n = Some(n as usize);
                continue;
            }
            if tokens.len() != 2 {
                return Err(ParseError::MalformedEdge {
                    line,
                    count: tokens.len(),
                });
            }
            let u = parse_id(tokens[0], line, one_indexed, declared_n)?;
            let v = parse_id(tokens[1], line, one_indexed, declared_n)?;
            max_id = max_id.max(u as u64).max(v as u64);
            saw_any_id = true;
            edges.push((u, v));
        }

        let n = declared_n.unwrap_or(if saw_any_id { max_id as usize + 1 } else { 0 });
        Ok(Graph::from_edges(n, edges).expect("ids validated during parsing"))
    }

    /// Serializes to the edge-list format accepted by [`Graph::parse_edge_list`],
    /// with a `p <n> <m>` header and each edge listed once (`u < v`).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n, self.m).unwrap();
        for u in 0..self.n as VertexId {
            for &v in self.neighbors(u) {
                if v > u {
                    writeln!(out, "{} {}", u, v).unwrap();
                }
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges after normalization.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as VertexId).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Open neighborhood of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Closed neighborhood: `v` followed by its neighbors.
    pub fn closed_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::once(v).chain(self.neighbors(v).iter().copied())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// True iff every vertex is in `set` or adjacent to a member of `set`.
    pub fn is_dominating_set(&self, set: &VertexSet) -> bool {
        assert_eq!(set.domain_size(), self.n, "set domain must match the graph");
        let mut covered = vec![false; self.n];
        for v in set.iter() {
            for x in self.closed_neighbors(v) {
                covered[x as usize] = true;
            }
        }
        covered.iter().all(|&c| c)
    }
}

fn parse_count(token: &str, line: usize) -> Result<u64, ParseError> {
    token.parse::<u64>().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })
}

fn parse_id(
    token: &str,
    line: usize,
    one_indexed: bool,
    declared_n: Option<usize>,
) -> Result<VertexId, ParseError> {
    let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
        line,
        token: token.to_string(),
    })?;
    if value < 0 {
        return Err(ParseError::NegativeId { line, value });
    }
    let mut id = value as u64;
    if one_indexed {
        if id == 0 {
            return Err(ParseError::ZeroIdOneIndexed { line });
        }
        id -= 1;
    }
    if id >= ABSENT as u64 {
        return Err(ParseError::IdTooLarge { line, id });
    }
    if let Some(n) = declared_n {
        if id >= n as u64 {
            return Err(ParseError::IdOutOfRange { line, id, n });
        }
    }
    Ok(id as VertexId)
}

/// Cycle 0-1-...-(n-1)-0; handy in tests and benchmarks.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges = (0..n as VertexId).map(|v| (v, (v + 1) % n as VertexId));
    Graph::from_edges(n, edges).unwrap()
}

/// Path 0-1-...-(n-1).
pub fn path(n: usize) -> Graph {
    let edges = (1..n as VertexId).map(|v| (v - 1, v));
    Graph::from_edges(n, edges).unwrap()
}

/// Star with center 0 and `leaves` leaves 1..=leaves.
pub fn star(leaves: usize) -> Graph {
    let edges = (1..=leaves as VertexId).map(|v| (0, v));
    Graph::from_edges(leaves + 1, edges).unwrap()
}
