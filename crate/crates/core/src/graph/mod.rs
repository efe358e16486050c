//! Simple undirected graphs, with generators for queen's boards.
//!
//! Vertices of a board are numbered row-major from the bottom-left corner:
//! vertex `v` sits at column `x = v % m` and row `y = v / m`.

mod export;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub use export::GraphJson;

/// Board dimensions: `m` columns of `n` vertices each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub m: usize,
    pub n: usize,
    pub toroidal: bool,
}

impl GridSpec {
    pub fn new(m: usize, n: usize, toroidal: bool) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::BoardTooSmall { m, n });
        }
        Ok(Self { m, n, toroidal })
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v % self.m, v / self.m)
    }

    #[inline]
    pub fn vertex(&self, x: usize, y: usize) -> usize {
        y * self.m + x
    }

    /// Queen-move relations joining `u` and `v` (empty when not adjacent).
    pub fn kinds_between(&self, u: usize, v: usize) -> EdgeKinds {
        let mut kinds = EdgeKinds::empty();
        if u == v {
            return kinds;
        }
        let (x1, y1) = self.coords(u);
        let (x2, y2) = self.coords(v);
        let dx = x2 as i64 - x1 as i64;
        let dy = y2 as i64 - y1 as i64;
        if dy == 0 {
            kinds.insert(EdgeKind::Row);
        }
        if dx == 0 {
            kinds.insert(EdgeKind::Column);
        }
        if self.toroidal {
            // (dx, dy) = k(1, ±1) mod (m, n) is solvable in k iff dx ≡ ±dy mod gcd(m, n).
            let g = gcd(self.m, self.n) as i64;
            if (dx - dy).rem_euclid(g) == 0 {
                kinds.insert(EdgeKind::DiagPos);
            }
            if (dx + dy).rem_euclid(g) == 0 {
                kinds.insert(EdgeKind::DiagNeg);
            }
        } else {
            if dx == dy {
                kinds.insert(EdgeKind::DiagPos);
            }
            if dx == -dy {
                kinds.insert(EdgeKind::DiagNeg);
            }
        }
        kinds
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.toroidal { "TQ" } else { "Q" };
        write!(f, "{prefix}_{{{},{}}}", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Row,
    Column,
    DiagPos,
    DiagNeg,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 4] = [
        EdgeKind::Row,
        EdgeKind::Column,
        EdgeKind::DiagPos,
        EdgeKind::DiagNeg,
    ];

    /// Short label used in DOT output.
    pub fn tag(self) -> &'static str {
        match self {
            EdgeKind::Row => "row",
            EdgeKind::Column => "col",
            EdgeKind::DiagPos => "dp",
            EdgeKind::DiagNeg => "dn",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

/// Set of [`EdgeKind`]s carried by one simple edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeKinds(u8);

impl EdgeKinds {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn insert(&mut self, kind: EdgeKind) {
        self.0 |= kind.bit();
    }

    pub fn contains(&self, kind: EdgeKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeKind> + '_ {
        EdgeKind::ALL.into_iter().filter(|k| self.contains(*k))
    }

    /// First kind in the fixed order row, col, dp, dn.
    pub fn primary(&self) -> Option<EdgeKind> {
        self.iter().next()
    }
}

/// Immutable, connected, simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    neighbors: Vec<Vec<usize>>,
    edge_kinds: BTreeMap<(usize, usize), EdgeKinds>,
    edge_count: usize,
    grid: Option<GridSpec>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count)
            .field("grid", &self.grid)
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.grid == other.grid
    }
}

impl Eq for Graph {}

impl Graph {
    /// Queen's graph `Q_{m,n}`.
    pub fn queen(m: usize, n: usize) -> Result<Self> {
        Self::board(GridSpec::new(m, n, false)?)
    }

    /// Toroidal queen's graph `TQ_{m,n}`: diagonals wrap around the board.
    pub fn toroidal_queen(m: usize, n: usize) -> Result<Self> {
        Self::board(GridSpec::new(m, n, true)?)
    }

    pub fn board(grid: GridSpec) -> Result<Self> {
        let count = grid.vertex_count();
        let mut kinds = BTreeMap::new();
        for u in 0..count {
            for v in u + 1..count {
                let k = grid.kinds_between(u, v);
                if !k.is_empty() {
                    kinds.insert((u, v), k);
                }
            }
        }
        Self::assemble(count, kinds, Some(grid))
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n));
        }
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges)
    }

    /// Six-vertex graph of two triangles joined by a ladder rung pair:
    /// vertices `L, B1, T1, B2, T2, R` in that order.
    pub fn capped_ladder() -> Self {
        const EDGES: [(usize, usize); 8] = [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 4),
            (3, 4),
            (3, 5),
            (4, 5),
        ];
        Self::from_edges(6, EDGES).expect("fixture is a connected simple graph")
    }

    /// Builds a graph from an explicit edge list. Rejects loops, repeated edges
    /// and disconnected inputs.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut kinds = BTreeMap::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if kinds.insert(key, EdgeKinds::empty()).is_some() {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        Self::assemble(vertex_count, kinds, None)
    }

    fn assemble(
        vertex_count: usize,
        edge_kinds: BTreeMap<(usize, usize), EdgeKinds>,
        grid: Option<GridSpec>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::TooFewVertices(0));
        }
        let mut adjacency = vec![VertexSet::new(vertex_count); vertex_count];
        for &(u, v) in edge_kinds.keys() {
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        let neighbors = adjacency.iter().map(VertexSet::to_vec).collect();
        let graph = Self {
            adjacency,
            neighbors,
            edge_count: edge_kinds.len(),
            edge_kinds,
            grid,
        };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn grid(&self) -> Option<&GridSpec> {
        self.grid.as_ref()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Queen-move relations on the edge `u–v`; `None` if not an edge.
    pub fn edge_kinds(&self, u: usize, v: usize) -> Option<EdgeKinds> {
        self.edge_kinds.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edge_kinds.keys().copied()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.neighbors[v].len())
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `|E(U, U^c)|` for a nonempty proper subset `U`.
    pub fn cut_edge_count(&self, side: &VertexSet) -> Result<usize> {
        self.check_set(side)?;
        let size = side.len();
        if size == 0 || size == self.vertex_count() {
            return Err(Error::TrivialCut);
        }
        Ok(self.outgoing_edges(side))
    }

    /// Edges from `side` to its complement; no triviality check.
    pub(crate) fn outgoing_edges(&self, side: &VertexSet) -> usize {
        side.iter()
            .map(|v| self.neighbors[v].len() - self.adjacency[v].intersection_count(side))
            .sum()
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.capacity() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count(),
                got: set.capacity(),
            });
        }
        Ok(())
    }

    fn require_grid(&self) -> Result<&GridSpec> {
        self.grid.as_ref().ok_or(Error::NotGrid)
    }

    /// The `m` vertices of row `y = i`.
    pub fn row_vertices(&self, i: usize) -> Result<VertexSet> {
        let grid = self.require_grid()?;
        if i >= grid.n {
            return Err(Error::GridIndex {
                index: i,
                limit: grid.n,
            });
        }
        Ok(VertexSet::from_vertices(
            self.vertex_count(),
            (0..grid.m).map(|x| grid.vertex(x, i)),
        ))
    }

    /// The `n` vertices of column `x = j`.
    pub fn column_vertices(&self, j: usize) -> Result<VertexSet> {
        let grid = self.require_grid()?;
        if j >= grid.m {
            return Err(Error::GridIndex {
                index: j,
                limit: grid.m,
            });
        }
        Ok(VertexSet::from_vertices(
            self.vertex_count(),
            (0..grid.n).map(|y| grid.vertex(j, y)),
        ))
    }

    pub fn rows(&self) -> Result<Vec<VertexSet>> {
        let n = self.require_grid()?.n;
        (0..n).map(|i| self.row_vertices(i)).collect()
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let size = set.len();
        set.iter()
            .all(|v| self.adjacency[v].intersection_count(set) == size - 1)
    }

    /// BFS distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.neighbors[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Display label: `c{x}r{y}` on boards, the bare id otherwise.
    pub fn label(&self, v: usize) -> String {
        match &self.grid {
            Some(grid) => {
                let (x, y) = grid.coords(v);
                format!("c{x}r{y}")
            }
            None => v.to_string(),
        }
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
