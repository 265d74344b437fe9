//! Sign partitions of the least eigenvector of `D(G^c)` and the edge moves
//! that cannot raise `λ_n(G^c)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::write_graph6;
use crate::graph::{Graph, GraphError};
use crate::spectra::{max_abs, JacobiSolver, Matrix, SpectraError};

/// Threshold factor for `V_0`, relative to `‖x‖∞`.
pub const ZERO_TOL_FACTOR: f64 = 1e-9;
/// Eigenvalue gap below which the least eigenvalue is flagged as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Slack allowed in `λ_n(G^c) ≥ λ_n(G'^c)`.
pub const MONOTONE_TOL: f64 = 1e-8;
/// Smallest increase accepted as an improvement by [`local_search_max`].
pub const IMPROVEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TransformError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("diameter {0} is not greater than 3")]
    DiameterTooSmall(u32),
    #[error("illegal move: {0}")]
    Illegal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Side {
    Plus,
    Zero,
    Minus,
}

impl Side {
    /// `V_+ ∪ V_0` versus `V_-`.
    pub fn is_nonnegative(self) -> bool {
        !matches!(self, Side::Minus)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SignPartition {
    pub v_plus: Vec<usize>,
    pub v_zero: Vec<usize>,
    pub v_minus: Vec<usize>,
    /// Unit least eigenvector of `D(G^c)`, oriented so that `p ≥ q`.
    pub source_vector: Vec<f64>,
    pub lambda: f64,
    pub zero_tol: f64,
    /// Distance from `λ_n` to `λ_{n-1}`.
    pub gap: f64,
    pub degenerate: bool,
}

impl SignPartition {
    /// `|V_+ ∪ V_0|`
    pub fn p(&self) -> usize {
        self.v_plus.len() + self.v_zero.len()
    }

    /// `|V_-|`
    pub fn q(&self) -> usize {
        self.v_minus.len()
    }

    pub fn side(&self, v: usize) -> Side {
        classify(self.source_vector[v], self.zero_tol)
    }

    pub fn same_side(&self, u: usize, v: usize) -> bool {
        self.side(u).is_nonnegative() == self.side(v).is_nonnegative()
    }
}

fn classify(x: f64, tol: f64) -> Side {
    if x > tol {
        Side::Plus
    } else if x < -tol {
        Side::Minus
    } else {
        Side::Zero
    }
}

fn require_diameter(g: &Graph) -> Result<(), TransformError> {
    if !g.is_connected() {
        return Err(TransformError::Disconnected);
    }
    let d = g.diameter()?;
    if d <= 3 {
        return Err(TransformError::DiameterTooSmall(d));
    }
    Ok(())
}

/// Splits `V` by the sign of the least eigenvector of `D(g^c)`.
pub fn sign_partition(g: &Graph) -> Result<SignPartition, TransformError> {
    require_diameter(g)?;
    let m = Matrix::distance(&g.complement())?;
    let dec = JacobiSolver::new().decompose(&m)?;
    let gap = dec.least_gap();
    let pair = dec.least_pair();
    let mut x = pair.vector;
    let zero_tol = ZERO_TOL_FACTOR * max_abs(&x);
    let minus = x.iter().filter(|&&v| v < -zero_tol).count();
    if x.len() - minus < minus {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let (mut v_plus, mut v_zero, mut v_minus) = (Vec::new(), Vec::new(), Vec::new());
    for (i, &xi) in x.iter().enumerate() {
        match classify(xi, zero_tol) {
            Side::Plus => v_plus.push(i),
            Side::Zero => v_zero.push(i),
            Side::Minus => v_minus.push(i),
        }
    }
    Ok(SignPartition {
        v_plus,
        v_zero,
        v_minus,
        source_vector: x,
        lambda: pair.value,
        zero_tol,
        gap,
        degenerate: gap < DEGENERACY_GAP,
    })
}

/// The three single-edge moves that cannot raise `λ_n(G^c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum EdgeMove {
    /// Delete an edge inside `G[V_+ ∪ V_0]` or inside `G[V_-]`.
    DeleteWithin { edge: (usize, usize) },
    /// Add a missing edge between `V_+ ∪ V_0` and `V_-`.
    AddAcross { edge: (usize, usize) },
    /// Delete `uv` and add `uv1`, given `x(u)x(v) ≥ x(u)x(v1)`.
    Rewire { u: usize, v: usize, v1: usize },
}

impl EdgeMove {
    pub fn removed(&self) -> Option<(usize, usize)> {
        match *self {
            EdgeMove::DeleteWithin { edge } => Some(edge),
            EdgeMove::AddAcross { .. } => None,
            EdgeMove::Rewire { u, v, .. } => Some((u, v)),
        }
    }

    pub fn added(&self) -> Option<(usize, usize)> {
        match *self {
            EdgeMove::DeleteWithin { .. } => None,
            EdgeMove::AddAcross { edge } => Some(edge),
            EdgeMove::Rewire { u, v1, .. } => Some((u, v1)),
        }
    }

    fn needs_diameter(&self) -> bool {
        self.added().is_some()
    }
}

fn delete(g: &mut Graph, (u, v): (usize, usize)) -> Result<(), TransformError> {
    if u == v || !g.remove_edge(u, v)? {
        return Err(TransformError::Illegal(alloc::format!("edge {u}-{v} is not present")));
    }
    Ok(())
}

fn insert(g: &mut Graph, (u, v): (usize, usize)) -> Result<(), TransformError> {
    if u == v || u >= g.order() || v >= g.order() {
        return Err(TransformError::Illegal(alloc::format!("pair {u}-{v} is not a valid edge")));
    }
    if !g.add_edge(u, v)? {
        return Err(TransformError::Illegal(alloc::format!("edge {u}-{v} is already present")));
    }
    Ok(())
}

/// Applies `m`, rejecting illegal moves, disconnection and (for moves that
/// add an edge) a resulting diameter of at most 3.
pub fn apply_move(g: &Graph, m: EdgeMove) -> Result<Graph, TransformError> {
    let mut h = g.clone();
    if let EdgeMove::Rewire { v, v1, .. } = m {
        if v == v1 {
            return Err(TransformError::Illegal(String::from("rewire target equals removed endpoint")));
        }
    }
    if let Some(e) = m.removed() {
        delete(&mut h, e)?;
    }
    if let Some(e) = m.added() {
        insert(&mut h, e)?;
    }
    if !h.is_connected() {
        return Err(TransformError::Disconnected);
    }
    if m.needs_diameter() {
        let d = h.diameter()?;
        if d <= 3 {
            return Err(TransformError::DiameterTooSmall(d));
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum UnmetHypothesis {
    /// The starting graph is disconnected or has diameter at most 3.
    Start(String),
    /// The moved graph has diameter at most 3.
    ResultDiameter(u32),
    /// The move's endpoints are not where the lemma requires.
    Placement(String),
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "outcome", rename_all = "snake_case"))]
pub enum MonotoneOutcome {
    /// `before ≥ after - tol`. `rayleigh` is `xᵀD(G'^c)x` for the pre-move vector.
    Confirmed { before: f64, after: f64, rayleigh: f64, degenerate: bool },
    Violated { before: f64, after: f64, rayleigh: f64, degenerate: bool },
    HypothesisUnmet { reason: UnmetHypothesis },
}

impl MonotoneOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, MonotoneOutcome::Violated { .. })
    }
}

fn placement(sp: &SignPartition, m: &EdgeMove) -> Result<(), String> {
    match *m {
        EdgeMove::DeleteWithin { edge: (u, v) } => {
            if sp.same_side(u, v) {
                Ok(())
            } else {
                Err(alloc::format!("{u} and {v} lie on different sides"))
            }
        }
        EdgeMove::AddAcross { edge: (u, v) } => {
            if sp.same_side(u, v) {
                Err(alloc::format!("{u} and {v} lie on the same side"))
            } else {
                Ok(())
            }
        }
        EdgeMove::Rewire { u, v, v1 } => {
            let x = &sp.source_vector;
            if x[u] * x[v] >= x[u] * x[v1] {
                Ok(())
            } else {
                Err(alloc::format!("x({u})x({v}) < x({u})x({v1})"))
            }
        }
    }
}

fn least(solver: &mut JacobiSolver, m: &Matrix) -> Result<f64, TransformError> {
    Ok(solver.least_unchecked(m)?)
}

/// Checks `λ_n(g^c) ≥ λ_n(g'^c)` for `g' = apply_move(g, m)`.
pub fn monotone_check(g: &Graph, m: EdgeMove) -> Result<MonotoneOutcome, TransformError> {
    let sp = match sign_partition(g) {
        Ok(sp) => sp,
        Err(e @ (TransformError::Disconnected | TransformError::DiameterTooSmall(_))) => {
            return Ok(MonotoneOutcome::HypothesisUnmet { reason: UnmetHypothesis::Start(alloc::format!("{e}")) });
        }
        Err(e) => return Err(e),
    };
    if let Err(why) = placement(&sp, &m) {
        return Ok(MonotoneOutcome::HypothesisUnmet { reason: UnmetHypothesis::Placement(why) });
    }
    let h = match apply_move(g, m) {
        Ok(h) => h,
        Err(TransformError::DiameterTooSmall(d)) => {
            return Ok(MonotoneOutcome::HypothesisUnmet { reason: UnmetHypothesis::ResultDiameter(d) });
        }
        Err(e) => return Err(e),
    };
    let after_matrix = Matrix::distance(&h.complement())?;
    let after = least(&mut JacobiSolver::new(), &after_matrix)?;
    let rayleigh = after_matrix.quadratic_form(&sp.source_vector);
    let (before, degenerate) = (sp.lambda, sp.degenerate);
    Ok(if before >= after - MONOTONE_TOL {
        MonotoneOutcome::Confirmed { before, after, rayleigh, degenerate }
    } else {
        MonotoneOutcome::Violated { before, after, rayleigh, degenerate }
    })
}

/// Moves tried by [`local_search_max`]: the reverse directions of the
/// monotone moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "edge", rename_all = "snake_case"))]
pub enum SearchMove {
    AddWithin((usize, usize)),
    DeleteAcross((usize, usize)),
}

impl SearchMove {
    pub fn edge(&self) -> (usize, usize) {
        match *self {
            SearchMove::AddWithin(e) | SearchMove::DeleteAcross(e) => e,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchStep {
    pub step: usize,
    pub graph6: String,
    pub lambda_n: f64,
    /// Move that produced this graph; `None` for the start.
    #[cfg_attr(feature = "serde", serde(rename = "move"))]
    pub applied: Option<SearchMove>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub steps: Vec<SearchStep>,
    pub graphs: Vec<Graph>,
    /// `true` when the last graph has no improving move.
    pub local_maximum: bool,
}

impl Trajectory {
    pub fn last(&self) -> &SearchStep {
        self.steps.last().expect("trajectory holds the start")
    }
}

fn graph6_or_empty(g: &Graph) -> String {
    write_graph6(g).unwrap_or_default()
}

/// Greedy ascent on `λ_n(G^c)` over single edge additions inside a side and
/// deletions across sides, keeping diameter above 3. Ties go to the smallest
/// edge, additions before deletions.
pub fn local_search_max(g: &Graph, max_steps: usize) -> Result<Trajectory, TransformError> {
    require_diameter(g)?;
    let mut solver = JacobiSolver::new();
    let mut current = g.clone();
    let mut lambda = least(&mut solver, &Matrix::complement_distance_proxy(&current))?;
    let mut steps = alloc::vec![SearchStep { step: 0, graph6: graph6_or_empty(g), lambda_n: lambda, applied: None }];
    let mut graphs = alloc::vec![current.clone()];
    let mut local_maximum = false;
    for step in 1..=max_steps {
        let sp = sign_partition(&current)?;
        let n = current.order();
        let mut best: Option<(f64, SearchMove, Graph)> = None;
        let mut candidates = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let same = sp.same_side(i, j);
                match (current.has_edge(i, j), same) {
                    (false, true) => candidates.push(SearchMove::AddWithin((i, j))),
                    (true, false) => candidates.push(SearchMove::DeleteAcross((i, j))),
                    _ => {}
                }
            }
        }
        candidates.sort();
        for mv in candidates {
            let mut h = current.clone();
            let (i, j) = mv.edge();
            match mv {
                SearchMove::AddWithin(_) => h.add_edge(i, j)?,
                SearchMove::DeleteAcross(_) => h.remove_edge(i, j)?,
            };
            if !h.is_connected() || h.diameter()? <= 3 {
                continue;
            }
            let l = least(&mut solver, &Matrix::complement_distance_proxy(&h))?;
            if l > lambda + IMPROVEMENT_TOL && best.as_ref().map_or(true, |(b, _, _)| l > *b) {
                best = Some((l, mv, h));
            }
        }
        match best {
            Some((l, mv, h)) => {
                lambda = l;
                steps.push(SearchStep { step, graph6: graph6_or_empty(&h), lambda_n: l, applied: Some(mv) });
                graphs.push(h.clone());
                current = h;
            }
            None => {
                local_maximum = true;
                break;
            }
        }
    }
    Ok(Trajectory { steps, graphs, local_maximum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_k_ab, make_k_prime, make_path};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_diameter_gt3(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        loop {
            let mut g = Graph::empty(n).unwrap();
            let perm: Vec<usize> = {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                p
            };
            for k in 1..n {
                g.add_edge(perm[k - 1], perm[k]).unwrap();
            }
            let extra = rng.gen_range(0..n * 2);
            for _ in 0..extra {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != b {
                    let mut h = g.clone();
                    h.add_edge(a, b).unwrap();
                    if h.diameter().unwrap() > 3 {
                        g = h;
                    }
                }
            }
            if g.diameter().unwrap() > 3 {
                return g;
            }
        }
    }

    #[test]
    fn partition_of_kab_and_path() {
        let sp = sign_partition(&make_k_ab(4, 3).unwrap().graph).unwrap();
        assert_eq!(sp.p() + sp.q(), 7);
        assert!(sp.p() >= sp.q());
        assert!(!sp.v_plus.is_empty() && !sp.v_minus.is_empty());
        let sp = sign_partition(&make_path(5).unwrap().graph).unwrap();
        assert_eq!(sp.v_plus.len() + sp.v_zero.len() + sp.v_minus.len(), 5);
    }

    #[test]
    fn partition_rejects_small_diameter() {
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(sign_partition(&c5), Err(TransformError::DiameterTooSmall(2)));
    }

    #[test]
    fn apply_move_errors() {
        let g = make_k_prime(7).unwrap().graph;
        assert!(apply_move(&g, EdgeMove::DeleteWithin { edge: (0, 2) }).is_ok());
        assert!(matches!(apply_move(&g, EdgeMove::AddAcross { edge: (0, 2) }), Err(TransformError::Illegal(_))));
        // Moving the pendant 5 from 0 to 1 leaves diameter 3.
        assert_eq!(apply_move(&g, EdgeMove::Rewire { u: 5, v: 0, v1: 1 }).unwrap_err(), TransformError::DiameterTooSmall(3));
        let p = make_path(6).unwrap().graph;
        assert_eq!(apply_move(&p, EdgeMove::DeleteWithin { edge: (2, 3) }), Err(TransformError::Disconnected));
    }

    #[test]
    fn rewire_disconnection_and_diameter() {
        let p = make_path(7).unwrap().graph;
        assert_eq!(apply_move(&p, EdgeMove::Rewire { u: 0, v: 1, v1: 0 }).unwrap_err(), TransformError::Illegal(String::from("pair 0-0 is not a valid edge")));
        assert_eq!(apply_move(&p, EdgeMove::Rewire { u: 3, v: 4, v1: 2 }).unwrap_err(), TransformError::Illegal(String::from("edge 3-2 is already present")));
        assert_eq!(apply_move(&p, EdgeMove::Rewire { u: 4, v: 3, v1: 6 }).unwrap_err(), TransformError::Disconnected);
    }

    #[test]
    fn add_across_to_diameter_three_is_unmet() {
        let p = make_path(5).unwrap().graph;
        let sp = sign_partition(&p).unwrap();
        let mut found = false;
        for i in 0..5 {
            for j in i + 1..5 {
                if !p.has_edge(i, j) && !sp.same_side(i, j) {
                    let out = monotone_check(&p, EdgeMove::AddAcross { edge: (i, j) }).unwrap();
                    assert!(matches!(out, MonotoneOutcome::HypothesisUnmet { reason: UnmetHypothesis::ResultDiameter(_) }));
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn delete_then_readd_is_identity() {
        let g = make_k_ab(4, 3).unwrap().graph;
        let h = apply_move(&g, EdgeMove::DeleteWithin { edge: (0, 2) }).unwrap();
        let mut back = h.clone();
        back.add_edge(0, 2).unwrap();
        let mut s = JacobiSolver::new();
        let a = s.least_unchecked(&Matrix::complement_distance_proxy(&g)).unwrap();
        let b = s.least_unchecked(&Matrix::complement_distance_proxy(&back)).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn local_search_terminates() {
        let p7 = make_path(7).unwrap().graph;
        let t = local_search_max(&p7, 21).unwrap();
        assert!(t.steps.len() <= 22);
        for w in t.steps.windows(2) {
            assert!(w[1].lambda_n > w[0].lambda_n);
        }
        for g in &t.graphs {
            assert!(g.diameter().unwrap() > 3);
        }
        let kp = make_k_prime(7).unwrap().graph;
        let t = local_search_max(&kp, 21).unwrap();
        assert!(t.last().lambda_n >= t.steps[0].lambda_n);
    }

    fn random_move(rng: &mut ChaCha8Rng, g: &Graph, sp: &SignPartition) -> Option<EdgeMove> {
        let n = g.order();
        for _ in 0..64 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a == b {
                continue;
            }
            let m = match rng.gen_range(0..3) {
                0 if g.has_edge(a, b) && sp.same_side(a, b) => EdgeMove::DeleteWithin { edge: (a, b) },
                1 if !g.has_edge(a, b) && !sp.same_side(a, b) => EdgeMove::AddAcross { edge: (a, b) },
                2 => {
                    let c = rng.gen_range(0..n);
                    if g.has_edge(a, b) && c != a && c != b && !g.has_edge(a, c) {
                        EdgeMove::Rewire { u: a, v: b, v1: c }
                    } else {
                        continue;
                    }
                }
                _ => continue,
            };
            return Some(m);
        }
        None
    }

    #[test]
    fn seeded_monotone_campaign() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut confirmed = 0;
        for _ in 0..300 {
            let n = rng.gen_range(5..=10);
            let g = random_diameter_gt3(&mut rng, n);
            let sp = sign_partition(&g).unwrap();
            let Some(m) = random_move(&mut rng, &g, &sp) else { continue };
            match monotone_check(&g, m) {
                Ok(MonotoneOutcome::Confirmed { before, rayleigh, after, .. }) => {
                    assert!(rayleigh <= before + MONOTONE_TOL, "{rayleigh} > {before}");
                    assert!(after <= rayleigh + MONOTONE_TOL);
                    confirmed += 1;
                }
                Ok(MonotoneOutcome::Violated { .. }) => panic!("violation for {m:?} on {:?}", g.edges()),
                Ok(MonotoneOutcome::HypothesisUnmet { .. }) | Err(TransformError::Disconnected) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(confirmed > 50, "{confirmed}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn partition_covers_and_is_relabel_invariant(seed in any::<u64>(), n in 5usize..=9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_diameter_gt3(&mut rng, n);
            let sp = sign_partition(&g).unwrap();
            let mut all: Vec<usize> = sp.v_plus.iter().chain(&sp.v_zero).chain(&sp.v_minus).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            prop_assert!(sp.q() >= 1 && !sp.v_plus.is_empty());
            prop_assert!(sp.p() >= sp.q());
            if sp.gap > 1e-6 && sp.v_zero.is_empty() && sp.p() != sp.q() {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.reverse();
                let h = g.relabel(&perm).unwrap();
                let sh = sign_partition(&h).unwrap();
                let mapped: Vec<usize> = {
                    let mut v: Vec<usize> = sp.v_minus.iter().map(|&i| perm[i]).collect();
                    v.sort_unstable();
                    v
                };
                prop_assert_eq!(mapped, sh.v_minus.clone());
            }
        }
    }
}
