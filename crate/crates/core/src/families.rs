//! The named graphs: `K'`, `K''`, `K(a,b)`, the order-5 tree `T`, paths and
//! complete graphs.
//!
//! Vertex order: clique vertices first (`u`, then `v` or `w`, inside their
//! cliques), appended vertices last. Quotient partitions rely on this.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyKind {
    KPrime,
    KDoublePrime,
    KAb,
    TreeT,
    Path,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("order {n} too small for {kind:?} (needs at least {min})")]
    OrderTooSmall { kind: FamilyKind, n: usize, min: usize },
    #[error("K(a,b) needs a >= 3 and b >= 2, got a={a}, b={b}")]
    SplitOutOfRange { a: usize, b: usize },
}

/// A constructed family member with its named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub roles: BTreeMap<String, usize>,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub graph: Graph,
}

impl FamilySpec {
    pub fn role(&self, name: &str) -> usize {
        self.roles[name]
    }
}

fn roles(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(k, v)| (String::from(k), v)).collect()
}

fn clique_edges(start: usize, len: usize) -> impl Iterator<Item = (usize, usize)> {
    (start..start + len).flat_map(move |i| (i + 1..start + len).map(move |j| (i, j)))
}

/// `K_{n-2}` minus `uv`, with pendants `u'` on `u` and `v'` on `v`.
pub fn make_k_prime(n: usize) -> Result<FamilySpec, FamilyError> {
    if n < 7 {
        return Err(FamilyError::OrderTooSmall { kind: FamilyKind::KPrime, n, min: 7 });
    }
    let (u, v, up, vp) = (0, 1, n - 2, n - 1);
    let edges = clique_edges(0, n - 2)
        .filter(|&e| e != (u, v))
        .chain([(u, up), (v, vp)]);
    let graph = Graph::from_edges(n, edges).expect("valid construction");
    Ok(FamilySpec {
        kind: FamilyKind::KPrime,
        n,
        a: None,
        b: None,
        roles: roles(&[("u", u), ("v", v), ("u'", up), ("v'", vp)]),
        graph,
    })
}

/// `K_{n-2}` minus `uv`, with a pendant path `u - a - b`.
pub fn make_k_double_prime(n: usize) -> Result<FamilySpec, FamilyError> {
    if n < 7 {
        return Err(FamilyError::OrderTooSmall { kind: FamilyKind::KDoublePrime, n, min: 7 });
    }
    let (u, v, pa, pb) = (0, 1, n - 2, n - 1);
    let edges = clique_edges(0, n - 2)
        .filter(|&e| e != (u, v))
        .chain([(u, pa), (pa, pb)]);
    let graph = Graph::from_edges(n, edges).expect("valid construction");
    Ok(FamilySpec {
        kind: FamilyKind::KDoublePrime,
        n,
        a: None,
        b: None,
        roles: roles(&[("u", u), ("v", v), ("a", pa), ("b", pb)]),
        graph,
    })
}

/// `K_a` minus `uw`, disjoint `K_b`, and the bridge `uv` with `v` in `K_b`.
pub fn make_k_ab(a: usize, b: usize) -> Result<FamilySpec, FamilyError> {
    if a < 3 || b < 2 {
        return Err(FamilyError::SplitOutOfRange { a, b });
    }
    let n = a + b;
    let (u, w, v) = (0, 1, a);
    let edges = clique_edges(0, a)
        .filter(|&e| e != (u, w))
        .chain(clique_edges(a, b))
        .chain([(u, v)]);
    let graph = Graph::from_edges(n, edges).expect("valid construction");
    Ok(FamilySpec {
        kind: FamilyKind::KAb,
        n,
        a: Some(a),
        b: Some(b),
        roles: roles(&[("u", u), ("w", w), ("v", v)]),
        graph,
    })
}

/// `K(⌈n/2⌉, ⌊n/2⌋)`.
pub fn make_balanced_k_ab(n: usize) -> Result<FamilySpec, FamilyError> {
    make_k_ab(n.div_ceil(2), n / 2)
}

/// Path `c1 - c2 - c3` with two pendants on `c3`.
pub fn make_tree_t() -> FamilySpec {
    let graph = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).expect("valid construction");
    FamilySpec {
        kind: FamilyKind::TreeT,
        n: 5,
        a: None,
        b: None,
        roles: roles(&[("c1", 0), ("c2", 1), ("c3", 2), ("p1", 3), ("p2", 4)]),
        graph,
    }
}

pub fn make_path(n: usize) -> Result<FamilySpec, FamilyError> {
    if n < 1 {
        return Err(FamilyError::OrderTooSmall { kind: FamilyKind::Path, n, min: 1 });
    }
    let graph = Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).map_err(|_| FamilyError::OrderTooSmall {
        kind: FamilyKind::Path,
        n,
        min: 1,
    })?;
    let roles = (0..n).map(|i| (alloc::format!("p{}", i + 1), i)).collect();
    Ok(FamilySpec { kind: FamilyKind::Path, n, a: None, b: None, roles, graph })
}

pub fn make_complete(n: usize) -> Result<FamilySpec, FamilyError> {
    let graph = Graph::from_edges(n, clique_edges(0, n)).map_err(|_| FamilyError::OrderTooSmall {
        kind: FamilyKind::Complete,
        n,
        min: 1,
    })?;
    Ok(FamilySpec { kind: FamilyKind::Complete, n, a: None, b: None, roles: BTreeMap::new(), graph })
}

/// Every 5-subset of `g`'s vertices whose induced subgraph is isomorphic to
/// the tree `T`, found by brute force over subsets and orderings.
pub fn induced_tree_t_subsets(g: &Graph) -> Vec<[usize; 5]> {
    let n = g.order();
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let t = make_tree_t().graph;
    let mut idx = [0, 1, 2, 3, 4];
    loop {
        let sub = g.induced_subgraph(&idx).expect("in range");
        if is_isomorphic_small(&sub, &t) {
            out.push(idx);
        }
        // next 5-combination
        let mut k = 5;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - 5 + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..5 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Isomorphism test by trying every bijection; only for tiny graphs.
fn is_isomorphic_small(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().iter().all(|&(i, j)| b.has_edge(perm[i], perm[j])) {
            return true;
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}
