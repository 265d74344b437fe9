//! Seeded random campaigns. Trial `i` draws from its own ChaCha stream, so a
//! trial's graph depends only on `(seed, i)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use distspec_core::graph::{write_graph6, Graph};
use distspec_core::spectra::{verify_complement_identity, ComplementIdentity};
use distspec_core::transforms::{monotone_check, sign_partition, EdgeMove, MonotoneOutcome, TransformError, UnmetHypothesis};

/// Order of the smallest graph with diameter above 3.
pub const MIN_ORDER: usize = 5;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Random labeled tree by attaching each vertex of a shuffled order to an
/// earlier one.
fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Graph::empty(n).expect("n >= 1");
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        g.add_edge(parent, order[k]).expect("in range");
    }
    g
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    loop {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            return (a.min(b), a.max(b));
        }
    }
}

/// Connected graph with diameter above 3: a random tree of large enough
/// diameter, densified by random edges that keep the diameter above 3.
pub fn random_diameter_gt3(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    assert!(n >= MIN_ORDER);
    let mut g = loop {
        let t = random_tree(rng, n);
        if t.diameter().expect("tree is connected") > 3 {
            break t;
        }
    };
    let attempts = rng.gen_range(0..=n * (n - 1) / 2);
    for _ in 0..attempts {
        let (a, b) = random_pair(rng, n);
        if g.has_edge(a, b) {
            continue;
        }
        g.add_edge(a, b).expect("in range");
        if g.diameter().expect("connected") <= 3 {
            g.remove_edge(a, b).expect("in range");
        }
    }
    g
}

/// Connected graph with diameter exactly 3, from adding random edges to a
/// diameter-above-3 graph until the diameter reaches 3.
pub fn random_diameter_3(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let mut g = random_diameter_gt3(rng, n);
        for _ in 0..n * n {
            let (a, b) = random_pair(rng, n);
            if g.has_edge(a, b) {
                continue;
            }
            g.add_edge(a, b).expect("in range");
            match g.diameter().expect("connected") {
                3 => return g,
                d if d < 3 => break,
                _ => {}
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityViolation {
    pub graph6: String,
    pub i: usize,
    pub j: usize,
    pub lhs: u32,
    pub rhs: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub trials_diameter_gt3: u64,
    pub trials_diameter_3: u64,
    pub equal: u64,
    pub dominates: u64,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `D(G^c) = J - I + A(G)` on `trials` graphs of diameter above 3 and
/// `D(G^c) ≥ J - I + A(G)` on `trials / 4` graphs of diameter 3, orders
/// drawn uniformly from `5..=max_n`.
pub fn identity_campaign(trials: u64, max_n: usize, seed: u64) -> IdentityReport {
    let mut report = IdentityReport {
        trials_diameter_gt3: trials,
        trials_diameter_3: trials / 4,
        equal: 0,
        dominates: 0,
        violations: Vec::new(),
    };
    for t in 0..trials + trials / 4 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(MIN_ORDER..=max_n);
        let g = if t < trials { random_diameter_gt3(&mut rng, n) } else { random_diameter_3(&mut rng, n) };
        match verify_complement_identity(&g) {
            Ok(ComplementIdentity::HoldsEqual) => report.equal += 1,
            Ok(ComplementIdentity::HoldsGeq) => report.dominates += 1,
            Ok(ComplementIdentity::Violated { i, j, lhs, rhs }) => report.violations.push(IdentityViolation {
                graph6: write_graph6(&g).unwrap_or_default(),
                i,
                j,
                lhs,
                rhs,
            }),
            Err(e) => panic!("generator produced an invalid graph: {e}"),
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum MoveLemma {
    /// Rewire `uv` to `uv1`.
    #[value(name = "2.2")]
    #[serde(rename = "2.2")]
    Rewire,
    /// Delete an edge inside one side.
    #[value(name = "2.3")]
    #[serde(rename = "2.3")]
    DeleteWithin,
    /// Add an edge across the sides.
    #[value(name = "2.4")]
    #[serde(rename = "2.4")]
    AddAcross,
}

#[derive(Debug, Clone, Serialize)]
pub struct MoveViolation {
    pub trial: u64,
    pub graph6: String,
    #[serde(rename = "move")]
    pub applied: EdgeMove,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct UnmetCounts {
    /// No move of the requested kind exists in the sampled graph.
    pub no_candidate: u64,
    pub result_diameter: u64,
    pub disconnected: u64,
    pub placement: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneReport {
    pub lemma: MoveLemma,
    pub trials: u64,
    /// Checks run; deletions inside `V_+ ∪ V_0` and inside `V_-` both count when both exist.
    pub checks: u64,
    pub confirmed: u64,
    pub confirmed_degenerate: u64,
    pub hypothesis_unmet: UnmetCounts,
    pub violations: Vec<MoveViolation>,
    /// Largest `xᵀD(G'^c)x - λ_n(G^c)` among confirmed checks.
    pub max_rayleigh_excess: f64,
}

impl MonotoneReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn candidate_moves(rng: &mut ChaCha8Rng, g: &Graph, lemma: MoveLemma) -> Result<Vec<EdgeMove>, TransformError> {
    let sp = sign_partition(g)?;
    let n = g.order();
    let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    Ok(match lemma {
        MoveLemma::DeleteWithin => {
            let plus: Vec<_> = pairs().filter(|&(i, j)| g.has_edge(i, j) && sp.same_side(i, j) && sp.side(i).is_nonnegative()).collect();
            let minus: Vec<_> = pairs().filter(|&(i, j)| g.has_edge(i, j) && sp.same_side(i, j) && !sp.side(i).is_nonnegative()).collect();
            [plus, minus]
                .into_iter()
                .filter_map(|side| side.choose(rng).copied())
                .map(|edge| EdgeMove::DeleteWithin { edge })
                .collect()
        }
        MoveLemma::AddAcross => {
            let across: Vec<_> = pairs().filter(|&(i, j)| !g.has_edge(i, j) && !sp.same_side(i, j)).collect();
            across.choose(rng).map(|&edge| EdgeMove::AddAcross { edge }).into_iter().collect()
        }
        MoveLemma::Rewire => {
            let x = &sp.source_vector;
            let mut options = Vec::new();
            for u in 0..n {
                for v in g.neighbors(u) {
                    for v1 in 0..n {
                        if v1 != u && v1 != v && !g.has_edge(u, v1) && x[u] * x[v] >= x[u] * x[v1] {
                            options.push(EdgeMove::Rewire { u, v, v1 });
                        }
                    }
                }
            }
            options.choose(rng).copied().into_iter().collect()
        }
    })
}

/// `trials` random graphs with a random legal move of the given kind each.
pub fn monotone_campaign(lemma: MoveLemma, trials: u64, max_n: usize, seed: u64) -> MonotoneReport {
    let mut report = MonotoneReport {
        lemma,
        trials,
        checks: 0,
        confirmed: 0,
        confirmed_degenerate: 0,
        hypothesis_unmet: UnmetCounts::default(),
        violations: Vec::new(),
        max_rayleigh_excess: f64::NEG_INFINITY,
    };
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(MIN_ORDER..=max_n);
        let g = random_diameter_gt3(&mut rng, n);
        let moves = candidate_moves(&mut rng, &g, lemma).expect("generator output satisfies the preconditions");
        if moves.is_empty() {
            report.hypothesis_unmet.no_candidate += 1;
        }
        for m in moves {
            report.checks += 1;
            match monotone_check(&g, m) {
                Ok(MonotoneOutcome::Confirmed { before, rayleigh, degenerate, .. }) => {
                    report.confirmed += 1;
                    report.confirmed_degenerate += u64::from(degenerate);
                    report.max_rayleigh_excess = report.max_rayleigh_excess.max(rayleigh - before);
                }
                Ok(MonotoneOutcome::Violated { before, after, .. }) => report.violations.push(MoveViolation {
                    trial: t,
                    graph6: write_graph6(&g).unwrap_or_default(),
                    applied: m,
                    before,
                    after,
                }),
                Ok(MonotoneOutcome::HypothesisUnmet { reason }) => match reason {
                    UnmetHypothesis::ResultDiameter(_) => report.hypothesis_unmet.result_diameter += 1,
                    UnmetHypothesis::Placement(_) => report.hypothesis_unmet.placement += 1,
                    UnmetHypothesis::Start(_) => unreachable!("generator output has diameter above 3"),
                },
                Err(TransformError::Disconnected) => report.hypothesis_unmet.disconnected += 1,
                Err(e) => panic!("unexpected failure on trial {t}: {e}"),
            }
        }
    }
    report
}
