//! Simple undirected graphs on vertices `0..n`.
//!
//! Graphs of order at most 64 keep one `u64` neighbor mask per vertex; larger
//! graphs fall back to sorted neighbor lists. Both layouts sit behind the same
//! interface and the layout is a function of `n` alone, so derived equality is
//! structural equality.

mod graph6;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use graph6::{parse_graph6, write_graph6, Graph6Error, Graph6ErrorKind, GRAPH6_HEADER, GRAPH6_MAX_ORDER};

/// Largest order accepted by [`Graph`].
pub const MAX_ORDER: usize = 2000;

/// Largest order stored as single-word bitsets.
pub const BITSET_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph order {0} outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("neighbor masks are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Adjacency {
    Bits(Vec<u64>),
    Lists(Vec<Vec<usize>>),
}

/// A simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Adjacency,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        let adj = if n <= BITSET_ORDER {
            Adjacency::Bits(vec![0; n])
        } else {
            Adjacency::Lists(vec![Vec::new(); n])
        };
        Ok(Graph { n, adj })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph of order `n <= 64` from per-vertex neighbor masks.
    ///
    /// The masks must be symmetric and irreflexive.
    pub fn from_masks(masks: &[u64]) -> Result<Self, GraphError> {
        let n = masks.len();
        if n == 0 || n > BITSET_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        for (v, &m) in masks.iter().enumerate() {
            if m >> v & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            if n < 64 && m >> n != 0 {
                return Err(GraphError::VertexOutOfRange { vertex: 63 - m.leading_zeros() as usize, n });
            }
            let mut rest = m;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if masks[u] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj: Adjacency::Bits(masks.to_vec()) })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Neighbor masks when the graph uses the bitset layout.
    pub fn masks(&self) -> Option<&[u64]> {
        match &self.adj {
            Adjacency::Bits(b) => Some(b),
            Adjacency::Lists(_) => None,
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        match &self.adj {
            Adjacency::Bits(b) => b[u] >> v & 1 == 1,
            Adjacency::Lists(l) => l[u].binary_search(&v).is_ok(),
        }
    }

    /// Inserts the edge `uv`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match &mut self.adj {
            Adjacency::Bits(b) => {
                let fresh = b[u] >> v & 1 == 0;
                b[u] |= 1 << v;
                b[v] |= 1 << u;
                Ok(fresh)
            }
            Adjacency::Lists(l) => match l[u].binary_search(&v) {
                Ok(_) => Ok(false),
                Err(pos) => {
                    l[u].insert(pos, v);
                    let pos = l[v].binary_search(&u).unwrap_err();
                    l[v].insert(pos, u);
                    Ok(true)
                }
            },
        }
    }

    /// Removes the edge `uv`. Returns `false` if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match &mut self.adj {
            Adjacency::Bits(b) => {
                let present = b[u] >> v & 1 == 1;
                b[u] &= !(1 << v);
                b[v] &= !(1 << u);
                Ok(present)
            }
            Adjacency::Lists(l) => match l[u].binary_search(&v) {
                Err(_) => Ok(false),
                Ok(pos) => {
                    l[u].remove(pos);
                    let pos = l[v].binary_search(&u).unwrap();
                    l[v].remove(pos);
                    Ok(true)
                }
            },
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.adj {
            Adjacency::Bits(b) => b[v].count_ones() as usize,
            Adjacency::Lists(l) => l[v].len(),
        }
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Bits(b) => Neighbors::Bits(b[v]),
            Adjacency::Lists(l) => Neighbors::List(l[v].iter()),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            out.extend(self.neighbors(i).filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        match &self.adj {
            Adjacency::Bits(b) => {
                let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let masks = b.iter().enumerate().map(|(v, &m)| !m & full & !(1 << v)).collect();
                Graph { n, adj: Adjacency::Bits(masks) }
            }
            Adjacency::Lists(l) => {
                let lists = l
                    .iter()
                    .enumerate()
                    .map(|(v, nb)| {
                        let mut it = nb.iter().peekable();
                        (0..n)
                            .filter(|&u| {
                                if it.peek() == Some(&&u) {
                                    it.next();
                                    false
                                } else {
                                    u != v
                                }
                            })
                            .collect()
                    })
                    .collect();
                Graph { n, adj: Adjacency::Lists(lists) }
            }
        }
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// BFS hop counts from `source`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[source] = 0;
        let mut queue = Vec::with_capacity(self.n);
        queue.push(source);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for u in self.neighbors(v) {
                if dist[u] == u32::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push(u);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_from(0).iter().all(|&d| d != u32::MAX)
    }

    /// All-pairs shortest path lengths. Disconnected input is an error.
    pub fn bfs_distances(&self) -> Result<DistanceMatrix, GraphError> {
        let n = self.n;
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            let row = self.bfs_from(s);
            if let Some(t) = row.iter().position(|&x| x == u32::MAX) {
                return Err(GraphError::Disconnected(s, t));
            }
            d.extend_from_slice(&row);
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn diameter(&self) -> Result<u32, GraphError> {
        Ok(self.bfs_distances()?.max_entry())
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<u8> {
        let n = self.n;
        let mut a = vec![0u8; n * n];
        for (i, j) in self.edges() {
            a[i * n + j] = 1;
            a[j * n + i] = 1;
        }
        a
    }
}

/// Iterator over the neighbors of a vertex.
pub enum Neighbors<'a> {
    Bits(u64),
    List(core::slice::Iter<'a, usize>),
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Neighbors::Bits(m) => {
                if *m == 0 {
                    None
                } else {
                    let v = m.trailing_zeros() as usize;
                    *m &= *m - 1;
                    Some(v)
                }
            }
            Neighbors::List(it) => it.next().copied(),
        }
    }
}

/// Shortest-path lengths of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn max_entry(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Integer entries, row-major.
    pub fn to_i64(&self) -> Vec<i64> {
        self.d.iter().map(|&x| x as i64).collect()
    }

    /// Principal submatrix on `idx`, in the given order.
    pub fn principal(&self, idx: &[usize]) -> DistanceMatrix {
        let m = idx.len();
        let mut d = Vec::with_capacity(m * m);
        for &i in idx {
            for &j in idx {
                d.push(self.get(i, j));
            }
        }
        DistanceMatrix { n: m, d }
    }
}
