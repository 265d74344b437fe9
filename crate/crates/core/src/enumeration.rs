//! Labeled enumeration of connected graphs with diameter greater than three,
//! the extremal scan of `λ_n(G^c)` over them, and canonical forms.
//!
//! Edge `(i, j)`, `i < j`, is bit `j(j-1)/2 + i` of a mask, the graph6 order.
//! The mask space is split into chunks by the neighborhood of the last vertex
//! (the highest `n - 1` bits); chunk `0` leaves that vertex isolated and is
//! never visited.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::families::{make_balanced_k_ab, make_k_ab, make_k_prime};
use crate::graph::{write_graph6, Graph, GraphError};
use crate::spectra::{JacobiSolver, Matrix, SpectraError, JACOBI_OFF_TOL};
use crate::transforms::{sign_partition, TransformError};

pub const MIN_ENUM_ORDER: usize = 5;
pub const MAX_ENUM_ORDER: usize = 8;
pub const MAX_CANONICAL_ORDER: usize = 10;
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
pub const DEFAULT_TOP_K: usize = 10;
/// Slack for the conclusions of the `q = 1` and `q ≥ 2` reduction lemmas.
pub const LEMMA_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnumError {
    #[error("built-in enumeration supports 5 <= n <= 8, got {0}")]
    OrderOutOfRange(usize),
    #[error("chunk {chunk} out of range for n = {n}")]
    ChunkOutOfRange { n: usize, chunk: u64 },
    #[error("canonical form supports n <= 10, got {0}")]
    CanonicalTooLarge(usize),
    #[error("scan of order {0} found no graphs")]
    NoCandidates(usize),
    #[error("graph order {found} does not match scan order {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn check_order(n: usize) -> Result<(), EnumError> {
    if (MIN_ENUM_ORDER..=MAX_ENUM_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(EnumError::OrderOutOfRange(n))
    }
}

/// Number of chunks, `2^(n-1)`, including the skipped chunk `0`.
pub fn chunk_count(n: usize) -> Result<u64, EnumError> {
    check_order(n)?;
    Ok(1u64 << (n - 1))
}

fn union_of(closed: &[u64], mut set: u64) -> u64 {
    let mut out = 0;
    while set != 0 {
        let v = set.trailing_zeros() as usize;
        set &= set - 1;
        out |= closed[v];
    }
    out
}

/// Connected with some pair at distance at least 4.
pub fn masks_pass_filter(adj: &[u64]) -> bool {
    let n = adj.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut closed = [0u64; 64];
    for (v, &m) in adj.iter().enumerate() {
        if m == 0 {
            return false;
        }
        closed[v] = m | 1 << v;
    }
    let closed = &closed[..n];
    let mut reach = closed[0];
    loop {
        let next = union_of(closed, reach);
        if next == reach {
            break;
        }
        reach = next;
    }
    if reach != full {
        return false;
    }
    closed.iter().any(|&b1| {
        let b2 = union_of(closed, b1);
        b2 != full && union_of(closed, b2) != full
    })
}

/// Visits every labeled graph in `chunk` passing [`masks_pass_filter`],
/// passing its neighbor masks to `sink`. Returns the number visited.
pub fn enumerate_chunk(n: usize, chunk: u64, mut sink: impl FnMut(&[u64])) -> Result<u64, EnumError> {
    let chunks = chunk_count(n)?;
    if chunk >= chunks {
        return Err(EnumError::ChunkOutOfRange { n, chunk });
    }
    if chunk == 0 {
        return Ok(0);
    }
    let last = n - 1;
    let low_bits = last * (last - 1) / 2;
    let mut adj = [0u64; MAX_ENUM_ORDER];
    let mut count = 0;
    for low in 0..1u64 << low_bits {
        adj[..n].fill(0);
        let mut bits = low;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = PAIRS[k];
            adj[i as usize] |= 1 << j;
            adj[j as usize] |= 1 << i;
        }
        // Early reject: a vertex isolated from the rest and from the last vertex.
        if (0..last).any(|v| adj[v] == 0 && chunk >> v & 1 == 0) {
            continue;
        }
        for v in 0..last {
            if chunk >> v & 1 == 1 {
                adj[v] |= 1 << last;
            }
        }
        adj[last] = chunk;
        if masks_pass_filter(&adj[..n]) {
            count += 1;
            sink(&adj[..n]);
        }
    }
    Ok(count)
}

/// `PAIRS[k]` is the pair `(i, j)` with `pair_index(i, j) == k`, for `n <= 8`.
const PAIRS: [(u8, u8); 28] = {
    let mut out = [(0u8, 0u8); 28];
    let mut j = 1;
    let mut k = 0;
    while j < 8 {
        let mut i = 0;
        while i < j {
            out[k] = (i as u8, j as u8);
            k += 1;
            i += 1;
        }
        j += 1;
    }
    out
};

/// Visits every labeled connected graph of order `n` with diameter greater
/// than three exactly once.
pub fn enumerate_filtered(n: usize, mut sink: impl FnMut(&[u64])) -> Result<u64, EnumError> {
    let mut total = 0;
    for chunk in 1..chunk_count(n)? {
        total += enumerate_chunk(n, chunk, &mut sink)?;
    }
    Ok(total)
}

/// Color refinement from degrees; returns an isomorphism-invariant color per
/// vertex, with colors numbered in sorted signature order.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        if distinct.len() == classes {
            return next;
        }
        classes = distinct.len();
        colors = next;
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    /// Vertices grouped by color, colors ascending.
    cells: Vec<Vec<usize>>,
    /// Color of each position.
    slot_cell: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl CanonSearch<'_> {
    /// Bits of the prefix for positions `0..=pos`, left aligned in a `u64`.
    fn dfs(&mut self, pos: usize, bits: u64) {
        if pos == self.n {
            if self.best.map_or(true, |b| bits < b) {
                self.best = Some(bits);
            }
            return;
        }
        let cell = self.slot_cell[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used[v] {
                continue;
            }
            let mut b = bits;
            let start = pos * pos.saturating_sub(1) / 2;
            for (i, &u) in self.placed.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    b |= 1u64 << (63 - (start + i));
                }
            }
            let len = start + pos;
            if let Some(best) = self.best {
                if len > 0 {
                    let shift = 64 - len;
                    if b >> shift > best >> shift {
                        continue;
                    }
                }
            }
            self.used[v] = true;
            self.placed.push(v);
            self.dfs(pos + 1, b);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

/// Minimum graph6 string over vertex orders that list color-refinement cells
/// in a fixed invariant order. Isomorphic graphs get equal strings.
pub fn canonical_form(g: &Graph) -> Result<String, EnumError> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(EnumError::CanonicalTooLarge(n));
    }
    let colors = refine_colors(g);
    let k = colors.iter().max().map_or(0, |m| m + 1);
    let mut cells = alloc::vec![Vec::new(); k];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].push(v);
    }
    let slot_cell: Vec<usize> = cells.iter().enumerate().flat_map(|(c, vs)| core::iter::repeat(c).take(vs.len())).collect();
    let mut search = CanonSearch {
        g,
        n,
        cells,
        slot_cell,
        placed: Vec::with_capacity(n),
        used: alloc::vec![false; n],
        best: None,
    };
    search.dfs(0, 0);
    let best = search.best.expect("at least one order");
    let mut h = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if best >> (63 - pair_index(i, j)) & 1 == 1 {
                h.add_edge(i, j)?;
            }
        }
    }
    Ok(write_graph6(&h).expect("n <= 10"))
}

/// `J - I + A` from neighbor masks.
pub fn proxy_from_masks(adj: &[u64]) -> Matrix {
    let n = adj.len();
    Matrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            1.0 + (adj[i] >> j & 1) as f64
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankEntry {
    pub graph6: String,
    pub lambda_n: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanReport {
    pub n: usize,
    pub candidates_examined: u64,
    pub max_lambda: f64,
    /// Canonical graph6 of every class within `tie_tol` of `max_lambda`.
    pub maximizers: Vec<String>,
    /// Best classes by `λ_n`, descending, ties by graph6.
    pub ranking: Vec<RankEntry>,
    pub tie_tol: f64,
    /// Best `λ_n` outside the maximizer tie set.
    pub runner_up: Option<f64>,
    /// `max_lambda - runner_up`.
    pub margin: Option<f64>,
    /// Bound on the eigensolver error of any two computed values.
    pub residual_budget: f64,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub runtime_seconds: f64,
}

/// Mergeable state of an extremal scan. Keeps the best isomorphism classes,
/// canonicalizing only graphs that could enter them.
#[derive(Debug, Clone)]
pub struct ScanAccumulator {
    n: usize,
    top_k: usize,
    tie_tol: f64,
    count: u64,
    max_fro: f64,
    classes: BTreeMap<String, f64>,
    cutoff: f64,
    solver: JacobiSolver,
}

impl ScanAccumulator {
    pub fn new(n: usize, top_k: usize, tie_tol: f64) -> Self {
        ScanAccumulator {
            n,
            top_k: top_k.max(2),
            tie_tol,
            count: 0,
            max_fro: 0.0,
            classes: BTreeMap::new(),
            cutoff: f64::NEG_INFINITY,
            solver: JacobiSolver::new(),
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Records a graph already known to pass the filter.
    pub fn observe_masks(&mut self, adj: &[u64]) -> Result<f64, EnumError> {
        let m = proxy_from_masks(adj);
        let lambda = self.solver.least_unchecked(&m)?;
        self.count += 1;
        self.max_fro = self.max_fro.max(m.frobenius());
        if lambda >= self.cutoff - self.tie_tol {
            let g = Graph::from_masks(adj)?;
            self.insert(&g, lambda)?;
        }
        Ok(lambda)
    }

    /// Applies the connectivity and diameter filters, then records the graph.
    /// Returns `None` when the graph is filtered out.
    pub fn observe_graph(&mut self, g: &Graph) -> Result<Option<f64>, EnumError> {
        if g.order() != self.n {
            return Err(EnumError::OrderMismatch { expected: self.n, found: g.order() });
        }
        if !g.is_connected() || g.diameter()? <= 3 {
            return Ok(None);
        }
        let m = Matrix::complement_distance_proxy(g);
        let lambda = self.solver.least_unchecked(&m)?;
        self.count += 1;
        self.max_fro = self.max_fro.max(m.frobenius());
        if lambda >= self.cutoff - self.tie_tol {
            self.insert(g, lambda)?;
        }
        Ok(Some(lambda))
    }

    fn insert(&mut self, g: &Graph, lambda: f64) -> Result<(), EnumError> {
        let key = if g.order() <= MAX_CANONICAL_ORDER {
            canonical_form(g)?
        } else {
            write_graph6(g).map_err(|_| EnumError::CanonicalTooLarge(g.order()))?
        };
        let slot = self.classes.entry(key).or_insert(f64::NEG_INFINITY);
        if lambda > *slot {
            *slot = lambda;
        }
        self.prune();
        Ok(())
    }

    fn prune(&mut self) {
        if self.classes.len() < self.top_k {
            return;
        }
        let mut vals: Vec<f64> = self.classes.values().copied().collect();
        vals.sort_by(|a, b| b.total_cmp(a));
        let kth = vals[self.top_k - 1];
        self.cutoff = kth;
        let floor = kth - self.tie_tol;
        self.classes.retain(|_, v| *v >= floor);
    }

    /// Commutative merge of two scans of disjoint parts of the same space.
    pub fn merge(&mut self, other: ScanAccumulator) {
        self.count += other.count;
        self.max_fro = self.max_fro.max(other.max_fro);
        for (k, v) in other.classes {
            let slot = self.classes.entry(k).or_insert(f64::NEG_INFINITY);
            if v > *slot {
                *slot = v;
            }
        }
        self.prune();
    }

    pub fn finish(&self, runtime_seconds: f64) -> Result<ScanReport, EnumError> {
        let mut ranking: Vec<RankEntry> =
            self.classes.iter().map(|(k, &v)| RankEntry { graph6: k.clone(), lambda_n: v }).collect();
        ranking.sort_by(|a, b| b.lambda_n.total_cmp(&a.lambda_n).then_with(|| a.graph6.cmp(&b.graph6)));
        let max_lambda = ranking.first().ok_or(EnumError::NoCandidates(self.n))?.lambda_n;
        let maximizers: Vec<String> = ranking
            .iter()
            .filter(|e| e.lambda_n >= max_lambda - self.tie_tol)
            .map(|e| e.graph6.clone())
            .collect();
        let runner_up = ranking.iter().find(|e| e.lambda_n < max_lambda - self.tie_tol).map(|e| e.lambda_n);
        ranking.truncate(self.top_k);
        Ok(ScanReport {
            n: self.n,
            candidates_examined: self.count,
            max_lambda,
            maximizers,
            ranking,
            tie_tol: self.tie_tol,
            runner_up,
            margin: runner_up.map(|r| max_lambda - r),
            residual_budget: 2.0 * JACOBI_OFF_TOL * self.max_fro,
            runtime_seconds,
        })
    }
}

/// Scans one chunk; see [`enumerate_chunk`].
pub fn scan_chunk(n: usize, chunk: u64, top_k: usize, tie_tol: f64) -> Result<ScanAccumulator, EnumError> {
    let mut acc = ScanAccumulator::new(n, top_k, tie_tol);
    let mut failure = None;
    enumerate_chunk(n, chunk, |adj| {
        if failure.is_none() {
            if let Err(e) = acc.observe_masks(adj) {
                failure = Some(e);
            }
        }
    })?;
    failure.map_or(Ok(acc), Err)
}

/// Single-threaded extremal scan over all chunks.
pub fn extremal_scan(n: usize, top_k: usize, tie_tol: f64) -> Result<ScanReport, EnumError> {
    let mut acc = ScanAccumulator::new(n, top_k, tie_tol);
    for chunk in 1..chunk_count(n)? {
        acc.merge(scan_chunk(n, chunk, top_k, tie_tol)?);
    }
    acc.finish(0.0)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "verdict", rename_all = "snake_case"))]
pub enum TheoremVerdict {
    /// The only maximizing class is the balanced `K(⌈n/2⌉, ⌊n/2⌋)` and every
    /// other class is below it by more than `tie_tol + residual_budget`.
    Verified,
    Refuted { witness: String, reason: String },
    /// `n < 7`: outside the theorem's range, no verdict.
    ReportOnly,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TheoremCheck {
    /// Canonical graph6 of the balanced `K(⌈n/2⌉, ⌊n/2⌋)`.
    pub expected: String,
    /// `λ_n` of the expected graph's complement.
    pub expected_lambda: f64,
    pub verdict: TheoremVerdict,
}

/// Judges a finished scan against the extremal claim.
pub fn judge(report: &ScanReport) -> Result<TheoremCheck, EnumError> {
    let n = report.n;
    if n < 7 {
        return Ok(TheoremCheck { expected: String::new(), expected_lambda: f64::NAN, verdict: TheoremVerdict::ReportOnly });
    }
    let spec = make_balanced_k_ab(n).map_err(|_| EnumError::OrderOutOfRange(n))?;
    let expected = canonical_form(&spec.graph)?;
    let expected_lambda = JacobiSolver::new().least_unchecked(&Matrix::complement_distance_proxy(&spec.graph))?;
    let verdict = if let Some(other) = report.maximizers.iter().find(|g| **g != expected) {
        TheoremVerdict::Refuted {
            witness: other.clone(),
            reason: alloc::format!(
                "class {other} attains λ_n = {:.12} against {:.12} for the balanced K(a,b)",
                report.max_lambda,
                expected_lambda
            ),
        }
    } else {
        let slack = report.tie_tol + report.residual_budget;
        match (report.margin, report.ranking.get(1)) {
            (Some(m), Some(next)) if m <= slack => TheoremVerdict::Refuted {
                witness: next.graph6.clone(),
                reason: alloc::format!("margin {m:e} does not exceed {slack:e}"),
            },
            _ => TheoremVerdict::Verified,
        }
    };
    Ok(TheoremCheck { expected, expected_lambda, verdict })
}

/// Runs [`extremal_scan`] and [`judge`].
pub fn verify_theorem(n: usize) -> Result<(ScanReport, TheoremCheck), EnumError> {
    let report = extremal_scan(n, DEFAULT_TOP_K, DEFAULT_TIE_TOL)?;
    let check = judge(&report)?;
    Ok((report, check))
}

/// A graph whose sign partition breaks a reduction lemma's conclusion.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaWitness {
    pub graph6: String,
    pub lambda_n: f64,
    pub bound: f64,
    pub p: usize,
    pub q: usize,
}

impl LemmaWitness {
    fn excess(&self) -> f64 {
        self.lambda_n - self.bound
    }

    fn better(&self, other: &LemmaWitness) -> bool {
        match self.excess().total_cmp(&other.excess()) {
            core::cmp::Ordering::Equal => self.graph6 < other.graph6,
            o => o.is_gt(),
        }
    }
}

/// Tally of the `q = 1` bound `λ_n(G^c) ≤ λ_n(K'^c)` and the `q ≥ 2` bound
/// `λ_n(G^c) ≤ λ_n(K^c(p,q))` over visited graphs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaConclusionReport {
    pub n: usize,
    pub checked_q1: u64,
    pub checked_q2: u64,
    pub violations_q1: u64,
    pub violations_q2: u64,
    pub degenerate: u64,
    pub worst_q1: Option<LemmaWitness>,
    pub worst_q2: Option<LemmaWitness>,
}

impl LemmaConclusionReport {
    pub fn new(n: usize) -> Self {
        LemmaConclusionReport {
            n,
            checked_q1: 0,
            checked_q2: 0,
            violations_q1: 0,
            violations_q2: 0,
            degenerate: 0,
            worst_q1: None,
            worst_q2: None,
        }
    }

    pub fn merge(&mut self, other: LemmaConclusionReport) {
        self.checked_q1 += other.checked_q1;
        self.checked_q2 += other.checked_q2;
        self.violations_q1 += other.violations_q1;
        self.violations_q2 += other.violations_q2;
        self.degenerate += other.degenerate;
        keep_worst(&mut self.worst_q1, other.worst_q1);
        keep_worst(&mut self.worst_q2, other.worst_q2);
    }

    pub fn holds(&self) -> bool {
        self.violations_q1 == 0 && self.violations_q2 == 0
    }
}

fn keep_worst(slot: &mut Option<LemmaWitness>, cand: Option<LemmaWitness>) {
    if let Some(c) = cand {
        if slot.as_ref().map_or(true, |s| c.better(s)) {
            *slot = Some(c);
        }
    }
}

/// `λ_n` of the comparison graphs for order `n`: `K'` first, then
/// `K(n-q, q)` for `q = 2..=n/2`.
pub fn lemma_bounds(n: usize) -> Result<(f64, Vec<f64>), EnumError> {
    let mut solver = JacobiSolver::new();
    let kp = make_k_prime(n).map_err(|_| EnumError::OrderOutOfRange(n))?;
    let kp = solver.least_unchecked(&Matrix::complement_distance_proxy(&kp.graph))?;
    let mut by_q = alloc::vec![f64::NAN; n / 2 + 1];
    for (q, slot) in by_q.iter_mut().enumerate().skip(2) {
        let g = make_k_ab(n - q, q).map_err(|_| EnumError::OrderOutOfRange(n))?;
        *slot = solver.least_unchecked(&Matrix::complement_distance_proxy(&g.graph))?;
    }
    Ok((kp, by_q))
}

/// Checks the reduction lemmas' conclusions on every graph of one chunk.
pub fn lemma_scan_chunk(n: usize, chunk: u64, bounds: &(f64, Vec<f64>)) -> Result<LemmaConclusionReport, EnumError> {
    let mut report = LemmaConclusionReport::new(n);
    let mut failure = None;
    enumerate_chunk(n, chunk, |adj| {
        if failure.is_some() {
            return;
        }
        if let Err(e) = lemma_observe(adj, bounds, &mut report) {
            failure = Some(e);
        }
    })?;
    failure.map_or(Ok(report), Err)
}

fn lemma_observe(adj: &[u64], bounds: &(f64, Vec<f64>), report: &mut LemmaConclusionReport) -> Result<(), EnumError> {
    let g = Graph::from_masks(adj)?;
    let sp = sign_partition(&g)?;
    if sp.degenerate {
        report.degenerate += 1;
    }
    let (p, q) = (sp.p(), sp.q());
    let bound = if q == 1 { bounds.0 } else { bounds.1[q] };
    let witness = || LemmaWitness {
        graph6: write_graph6(&g).unwrap_or_default(),
        lambda_n: sp.lambda,
        bound,
        p,
        q,
    };
    let violated = sp.lambda > bound + LEMMA_TOL;
    if q == 1 {
        report.checked_q1 += 1;
        if violated {
            report.violations_q1 += 1;
            keep_worst(&mut report.worst_q1, Some(witness()));
        }
    } else {
        report.checked_q2 += 1;
        if violated {
            report.violations_q2 += 1;
            keep_worst(&mut report.worst_q2, Some(witness()));
        }
    }
    Ok(())
}

/// Single-threaded reduction-lemma scan over all chunks.
pub fn lemma_conclusion_scan(n: usize) -> Result<LemmaConclusionReport, EnumError> {
    let bounds = lemma_bounds(n)?;
    let mut report = LemmaConclusionReport::new(n);
    for chunk in 1..chunk_count(n)? {
        report.merge(lemma_scan_chunk(n, chunk, &bounds)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_path;
    use crate::graph::parse_graph6;
    use alloc::vec;
    use proptest::prelude::*;

    fn path_edges(order: &[usize]) -> Vec<(usize, usize)> {
        order.windows(2).map(|w| (w[0], w[1])).collect()
    }

    #[test]
    fn pair_table_matches_index() {
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(i as usize, j as usize), k);
        }
    }

    #[test]
    fn filter_examples() {
        let p5 = make_path(5).unwrap().graph;
        assert!(masks_pass_filter(p5.masks().unwrap()));
        let c5 = Graph::from_edges(5, path_edges(&[0, 1, 2, 3, 4, 0])).unwrap();
        assert!(!masks_pass_filter(c5.masks().unwrap()));
        let split = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(!masks_pass_filter(split.masks().unwrap()));
    }

    #[test]
    fn order_range() {
        assert_eq!(enumerate_filtered(4, |_| {}), Err(EnumError::OrderOutOfRange(4)));
        assert_eq!(enumerate_filtered(9, |_| {}), Err(EnumError::OrderOutOfRange(9)));
    }

    /// Brute force over all masks with BFS-based filtering.
    fn oracle_count(n: usize) -> u64 {
        let m = n * (n - 1) / 2;
        let mut count = 0;
        for mask in 0u64..1 << m {
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if mask >> pair_index(i, j) & 1 == 1 {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            if g.is_connected() && g.diameter().unwrap() > 3 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        // 5!/2 labeled paths P5.
        assert_eq!(enumerate_filtered(5, |_| {}).unwrap(), 60);
        assert_eq!(oracle_count(5), 60);
        assert_eq!(enumerate_filtered(6, |_| {}).unwrap(), oracle_count(6));
    }

    #[test]
    fn n6_baseline() {
        assert_eq!(enumerate_filtered(6, |_| {}).unwrap(), N6_LABELED_COUNT);
    }

    /// Labeled connected graphs of order 6 with diameter at least 4.
    const N6_LABELED_COUNT: u64 = 3_240;

    #[test]
    fn visits_are_distinct_and_valid() {
        let mut seen = alloc::collections::BTreeSet::new();
        enumerate_filtered(6, |adj| {
            let g = Graph::from_masks(adj).unwrap();
            assert!(g.is_connected() && g.diameter().unwrap() > 3);
            assert!(seen.insert(adj.to_vec()));
        })
        .unwrap();
    }

    #[test]
    fn canonical_form_examples() {
        let a = Graph::from_edges(4, path_edges(&[0, 1, 2, 3])).unwrap();
        let b = Graph::from_edges(4, path_edges(&[2, 0, 3, 1])).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&star).unwrap());
        let k = make_k_ab(4, 3).unwrap().graph;
        assert_eq!(canonical_form(&k).unwrap(), canonical_form(&k).unwrap());
        assert_eq!(canonical_form(&Graph::empty(11).unwrap()), Err(EnumError::CanonicalTooLarge(11)));
    }

    #[test]
    fn canonical_form_regular_graphs() {
        // Two non-isomorphic 3-regular graphs on 6 vertices: K_{3,3} and the prism.
        let k33 = Graph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let prism = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_ne!(canonical_form(&k33).unwrap(), canonical_form(&prism).unwrap());
        let relabeled = k33.relabel(&[5, 0, 4, 1, 3, 2]).unwrap();
        assert_eq!(canonical_form(&k33).unwrap(), canonical_form(&relabeled).unwrap());
    }

    fn is_iso(a: &Graph, b: &Graph) -> bool {
        let n = a.order();
        if n != b.order() || a.edge_count() != b.edge_count() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if a.relabel(&perm).unwrap() == *b {
                return true;
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { return false };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    fn small_graph(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn canonical_form_decides_isomorphism(n in 2usize..=6, m1 in any::<u64>(), m2 in any::<u64>(), seed in any::<u64>()) {
            let bits = n * (n - 1) / 2;
            let (a, b) = (small_graph(n, m1 % (1 << bits)), small_graph(n, m2 % (1 << bits)));
            prop_assert_eq!(canonical_form(&a).unwrap() == canonical_form(&b).unwrap(), is_iso(&a, &b));
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&a.relabel(&perm).unwrap()).unwrap());
            let parsed = parse_graph6(&canonical_form(&a).unwrap()).unwrap();
            prop_assert!(is_iso(&parsed, &a));
        }
    }

    #[test]
    fn scan_n5_and_n6_report_only() {
        let r = extremal_scan(5, 5, DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.candidates_examined, 60);
        assert_eq!(r.maximizers, vec![canonical_form(&make_path(5).unwrap().graph).unwrap()]);
        assert_eq!(judge(&r).unwrap().verdict, TheoremVerdict::ReportOnly);
        let r6 = extremal_scan(6, 5, DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r6.candidates_examined, N6_LABELED_COUNT);
        assert_eq!(r6.ranking[0].lambda_n, r6.max_lambda);
    }

    #[test]
    fn merge_is_order_independent() {
        let n = 6;
        let chunks: Vec<ScanAccumulator> = (1..32).map(|c| scan_chunk(n, c, 4, DEFAULT_TIE_TOL).unwrap()).collect();
        let mut fwd = ScanAccumulator::new(n, 4, DEFAULT_TIE_TOL);
        for c in chunks.iter().cloned() {
            fwd.merge(c);
        }
        let mut rev = ScanAccumulator::new(n, 4, DEFAULT_TIE_TOL);
        for c in chunks.into_iter().rev() {
            rev.merge(c);
        }
        assert_eq!(fwd.finish(0.0).unwrap(), rev.finish(0.0).unwrap());
    }

    #[test]
    fn stream_observation_filters() {
        let mut acc = ScanAccumulator::new(5, 3, DEFAULT_TIE_TOL);
        let c5 = Graph::from_edges(5, path_edges(&[0, 1, 2, 3, 4, 0])).unwrap();
        assert_eq!(acc.observe_graph(&c5).unwrap(), None);
        assert!(acc.observe_graph(&make_path(5).unwrap().graph).unwrap().is_some());
        assert!(matches!(acc.observe_graph(&make_path(6).unwrap().graph), Err(EnumError::OrderMismatch { .. })));
        assert_eq!(acc.finish(0.0).unwrap().candidates_examined, 1);
    }
}
