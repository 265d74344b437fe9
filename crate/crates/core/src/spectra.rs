//! Dense symmetric eigensolving and exact characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::graph::{Graph, GraphError};
use crate::poly::IntPolynomial;

/// Entrywise tolerance for accepting a matrix as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm is at most this fraction
/// of the full Frobenius norm.
pub const JACOBI_OFF_TOL: f64 = 1e-13;

const MAX_SWEEPS: usize = 100;

/// Largest dimension accepted by [`char_poly_exact`].
pub const CHAR_POLY_MAX_DIM: usize = 16;

/// Interlacing comparisons use this slack.
pub const INTERLACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error("empty matrix")]
    Empty,
    #[error("matrix data has {len} entries, expected {n}x{n}")]
    Shape { n: usize, len: usize },
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("matrix not symmetric at ({i}, {j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension {0} exceeds the exact characteristic polynomial limit")]
    DimensionTooLarge(usize),
    #[error("vector length {found} does not match order {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Faddeev-LeVerrier produced a non-integral coefficient at degree {0}")]
    NonIntegral(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Dense square matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, SpectraError> {
        if data.len() != n * n {
            return Err(SpectraError::Shape { n, len: data.len() });
        }
        Ok(Matrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// `D(G)` for a connected graph.
    pub fn distance(g: &Graph) -> Result<Self, SpectraError> {
        let d = g.bfs_distances()?;
        Ok(Matrix::from_fn(g.order(), |i, j| d.get(i, j) as f64))
    }

    /// `J - I + A(G)`, which equals `D(G^c)` whenever `d(G) > 3`.
    pub fn complement_distance_proxy(g: &Graph) -> Self {
        Matrix::from_fn(g.order(), |i, j| {
            if i == j {
                0.0
            } else {
                1.0 + f64::from(u8::from(g.has_edge(i, j)))
            }
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn principal(&self, idx: &[usize]) -> Result<Matrix, SpectraError> {
        if let Some(&index) = idx.iter().find(|&&i| i >= self.n) {
            return Err(SpectraError::IndexOutOfRange { index, n: self.n });
        }
        Ok(Matrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b])))
    }

    fn validate_symmetric(&self) -> Result<(), SpectraError> {
        if self.n == 0 {
            return Err(SpectraError::Empty);
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if !a.is_finite() {
                    return Err(SpectraError::NonFinite(i, j));
                }
                if j > i {
                    let b = self.get(j, i);
                    if (a - b).abs() > SYMMETRY_TOL {
                        return Err(SpectraError::Asymmetric { i, j, a, b });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Eigenvalues sorted non-increasing, with the worst residual of the
/// eigenpairs they came from.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub residual_bound: f64,
}

impl Spectrum {
    pub fn least(&self) -> f64 {
        *self.values.last().expect("spectrum is never empty")
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// A unit eigenvector and its eigenvalue. The first entry of largest absolute
/// value is non-negative.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Full eigendecomposition, eigenvalues non-increasing, `vectors[k]` pairing
/// with `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
}

impl Decomposition {
    pub fn spectrum(&self) -> Spectrum {
        Spectrum {
            values: self.values.clone(),
            residual_bound: self.residuals.iter().copied().fold(0.0, f64::max),
        }
    }

    pub fn least_pair(&self) -> EigenPair {
        let k = self.values.len() - 1;
        EigenPair { value: self.values[k], vector: self.vectors[k].clone(), residual: self.residuals[k] }
    }

    /// Gap between the two smallest eigenvalues (infinite for order 1).
    pub fn least_gap(&self) -> f64 {
        let k = self.values.len();
        if k < 2 {
            f64::INFINITY
        } else {
            self.values[k - 2] - self.values[k - 1]
        }
    }
}

/// Reusable workspace for the cyclic Jacobi method.
#[derive(Debug, Clone, Default)]
pub struct JacobiSolver {
    a: Vec<f64>,
    v: Vec<f64>,
    n: usize,
}

impl JacobiSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn load(&mut self, m: &Matrix, want_vectors: bool) {
        self.n = m.n;
        self.a.clear();
        self.a.extend_from_slice(&m.data);
        self.v.clear();
        if want_vectors {
            self.v.resize(m.n * m.n, 0.0);
            for i in 0..m.n {
                self.v[i * m.n + i] = 1.0;
            }
        }
    }

    /// Runs cyclic sweeps in row order `(0,1), (0,2), ..., (n-2,n-1)`.
    fn sweep_until_converged(&mut self, fro: f64) -> Result<(), SpectraError> {
        let n = self.n;
        let vecs = !self.v.is_empty();
        let target = JACOBI_OFF_TOL * fro;
        for _ in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += self.a[i * n + j] * self.a[i * n + j];
                    }
                }
            }
            if libm::sqrt(off) <= target {
                return Ok(());
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = self.a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = self.a[p * n + p];
                    let aqq = self.a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                        if theta < 0.0 { -t } else { t }
                    };
                    let c = 1.0 / libm::sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let akp = self.a[k * n + p];
                        let akq = self.a[k * n + q];
                        self.a[k * n + p] = c * akp - s * akq;
                        self.a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = self.a[p * n + k];
                        let aqk = self.a[q * n + k];
                        self.a[p * n + k] = c * apk - s * aqk;
                        self.a[q * n + k] = s * apk + c * aqk;
                    }
                    self.a[p * n + q] = 0.0;
                    self.a[q * n + p] = 0.0;
                    if vecs {
                        for k in 0..n {
                            let vkp = self.v[k * n + p];
                            let vkq = self.v[k * n + q];
                            self.v[k * n + p] = c * vkp - s * vkq;
                            self.v[k * n + q] = s * vkp + c * vkq;
                        }
                    }
                }
            }
        }
        Err(SpectraError::NoConvergence(MAX_SWEEPS))
    }

    /// Eigenvalues only, sorted non-increasing. Skips validation; intended for
    /// hot loops over matrices already known to be symmetric and finite.
    pub fn eigenvalues_unchecked(&mut self, m: &Matrix) -> Result<Vec<f64>, SpectraError> {
        self.load(m, false);
        self.sweep_until_converged(m.frobenius())?;
        let n = self.n;
        let mut vals: Vec<f64> = (0..n).map(|i| self.a[i * n + i]).collect();
        vals.sort_by(|a, b| b.total_cmp(a));
        Ok(vals)
    }

    /// Least eigenvalue without vectors; see [`Self::eigenvalues_unchecked`].
    pub fn least_unchecked(&mut self, m: &Matrix) -> Result<f64, SpectraError> {
        self.load(m, false);
        self.sweep_until_converged(m.frobenius())?;
        let n = self.n;
        Ok((0..n).map(|i| self.a[i * n + i]).fold(f64::INFINITY, f64::min))
    }

    pub fn decompose(&mut self, m: &Matrix) -> Result<Decomposition, SpectraError> {
        m.validate_symmetric()?;
        self.load(m, true);
        self.sweep_until_converged(m.frobenius())?;
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        // Stable sort keeps the deterministic sweep order among ties.
        order.sort_by(|&x, &y| self.a[y * n + y].total_cmp(&self.a[x * n + x]));
        let mut values = Vec::with_capacity(n);
        let mut vectors = Vec::with_capacity(n);
        let mut residuals = Vec::with_capacity(n);
        for &k in &order {
            let lambda = self.a[k * n + k];
            let mut x: Vec<f64> = (0..n).map(|i| self.v[i * n + k]).collect();
            normalize_sign(&mut x);
            let mx = m.mul_vec(&x);
            let r = libm::sqrt(mx.iter().zip(&x).map(|(a, b)| (a - lambda * b) * (a - lambda * b)).sum());
            values.push(lambda);
            vectors.push(x);
            residuals.push(r);
        }
        Ok(Decomposition { values, vectors, residuals })
    }
}

/// Rescales to unit norm and flips so the first entry of largest magnitude is
/// non-negative.
fn normalize_sign(x: &mut [f64]) {
    let norm = libm::sqrt(x.iter().map(|v| v * v).sum());
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    if x[best] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

pub fn symmetric_eigenvalues(m: &Matrix) -> Result<Spectrum, SpectraError> {
    Ok(JacobiSolver::new().decompose(m)?.spectrum())
}

pub fn least_eigenpair(m: &Matrix) -> Result<EigenPair, SpectraError> {
    Ok(JacobiSolver::new().decompose(m)?.least_pair())
}

/// `x^T A(G) x` computed edge by edge as `2 Σ_{ij ∈ E} x_i x_j`.
pub fn rayleigh_adjacency(g: &Graph, x: &[f64]) -> Result<f64, SpectraError> {
    if x.len() != g.order() {
        return Err(SpectraError::DimensionMismatch { expected: g.order(), found: x.len() });
    }
    Ok(2.0 * g.edges().iter().map(|&(i, j)| x[i] * x[j]).sum::<f64>())
}

/// Outcome of comparing `D(G^c)` with `J - I + A(G)` entry by entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "outcome", rename_all = "snake_case"))]
pub enum ComplementIdentity {
    HoldsEqual,
    HoldsGeq,
    Violated { i: usize, j: usize, lhs: u32, rhs: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityPrecondition {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("complement is disconnected")]
    ComplementDisconnected,
    #[error("diameter {0} is below 3")]
    DiameterTooSmall(u32),
}

/// Checks `D(G^c) = J - I + A(G)` when `d(G) > 3` and `D(G^c) >= J - I + A(G)`
/// when `d(G) = 3`. The left side comes from BFS on the complement.
pub fn verify_complement_identity(g: &Graph) -> Result<ComplementIdentity, IdentityPrecondition> {
    let diam = g.diameter().map_err(|_| IdentityPrecondition::Disconnected)?;
    if diam < 3 {
        return Err(IdentityPrecondition::DiameterTooSmall(diam));
    }
    let dc = g
        .complement()
        .bfs_distances()
        .map_err(|_| IdentityPrecondition::ComplementDisconnected)?;
    let n = g.order();
    for i in 0..n {
        for j in 0..n {
            let lhs = dc.get(i, j);
            let rhs = if i == j { 0 } else { 1 + u32::from(g.has_edge(i, j)) };
            let ok = if diam > 3 { lhs == rhs } else { lhs >= rhs };
            if !ok {
                return Ok(ComplementIdentity::Violated { i, j, lhs, rhs });
            }
        }
    }
    Ok(if diam > 3 { ComplementIdentity::HoldsEqual } else { ComplementIdentity::HoldsGeq })
}

/// `det(λI - M)` by Faddeev-LeVerrier over the rationals.
///
/// `m` is row-major `n x n`. Every coefficient must come out integral; a
/// fractional one is reported as an error rather than rounded.
pub fn char_poly_exact(n: usize, m: &[i64]) -> Result<IntPolynomial, SpectraError> {
    if n == 0 {
        return Err(SpectraError::Empty);
    }
    if n > CHAR_POLY_MAX_DIM {
        return Err(SpectraError::DimensionTooLarge(n));
    }
    if m.len() != n * n {
        return Err(SpectraError::Shape { n, len: m.len() });
    }
    let a: Vec<BigRational> = m.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
    // coeffs[k] is the coefficient of λ^k; c_n = 1.
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(BigInt::from(1));
    let mut mk = vec![BigRational::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    if !a[i * n + l].is_zero() && !mk[l * n + j].is_zero() {
                        acc += &a[i * n + l] * &mk[l * n + j];
                    }
                }
                next[i * n + j] = acc;
            }
            next[i * n + i] += &coeffs[n - k + 1];
        }
        mk = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i * n + l] * &mk[l * n + i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    let mut ints = Vec::with_capacity(n + 1);
    for (k, c) in coeffs.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(SpectraError::NonIntegral(k));
        }
        ints.push(c.to_integer());
    }
    Ok(IntPolynomial::new(ints))
}

/// Eigenvalues of `M` and of the principal submatrix `M[S]` together with the
/// interlacing verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlaceReport {
    pub holds: bool,
    pub full: Vec<f64>,
    pub sub: Vec<f64>,
}

pub fn interlace_report(m: &Matrix, subset: &[usize]) -> Result<InterlaceReport, SpectraError> {
    let full = symmetric_eigenvalues(m)?.values;
    let sub = symmetric_eigenvalues(&m.principal(subset)?)?.values;
    let (n, k) = (full.len(), sub.len());
    let holds = k <= n
        && (0..k).all(|i| full[i] >= sub[i] - INTERLACE_TOL && sub[i] >= full[i + n - k] - INTERLACE_TOL);
    Ok(InterlaceReport { holds, full, sub })
}

/// Cauchy interlacing for the principal submatrix on `subset`:
/// `λ_i >= μ_i >= λ_{i+n-m}`.
pub fn interlace_check(m: &Matrix, subset: &[usize]) -> Result<bool, SpectraError> {
    Ok(interlace_report(m, subset)?.holds)
}

/// Rounds an eigenvalue sum check: `|Σλ - tr M| <= 1e-8 · n · max|m_ij|`.
pub fn trace_consistent(m: &Matrix, s: &Spectrum) -> bool {
    let max = m.data.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    (s.sum() - m.trace()).abs() <= 1e-8 * m.n as f64 * max.max(1.0)
}

/// `|x|` largest entry.
pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |a, b| a.max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::decimal_width;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn tree_t() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn k2_spectrum_and_pair() {
        let m = Matrix::distance(&complete(2)).unwrap();
        let s = symmetric_eigenvalues(&m).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-14 && (s.values[1] + 1.0).abs() < 1e-14);
        let p = least_eigenpair(&m).unwrap();
        assert!((p.value + 1.0).abs() < 1e-14);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((p.vector[0] - r).abs() < 1e-14 && (p.vector[1] + r).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_spectrum() {
        for n in 2..=9 {
            let s = symmetric_eigenvalues(&Matrix::distance(&complete(n)).unwrap()).unwrap();
            assert!((s.values[0] - (n as f64 - 1.0)).abs() < 1e-12);
            assert!(s.values[1..].iter().all(|v| (v + 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn tree_t_least_eigenvalue() {
        let m = Matrix::distance(&tree_t()).unwrap();
        assert!(symmetric_eigenvalues(&m).unwrap().least() < -3.8);
    }

    #[test]
    fn invalid_matrices() {
        assert_eq!(symmetric_eigenvalues(&Matrix::new(0, vec![]).unwrap()), Err(SpectraError::Empty));
        let asym = Matrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).unwrap();
        assert!(matches!(symmetric_eigenvalues(&asym), Err(SpectraError::Asymmetric { .. })));
        let nan = Matrix::new(1, vec![f64::NAN]).unwrap();
        assert_eq!(symmetric_eigenvalues(&nan), Err(SpectraError::NonFinite(0, 0)));
        assert!(Matrix::new(2, vec![1.0]).is_err());
    }

    #[test]
    fn rayleigh_examples() {
        assert_eq!(rayleigh_adjacency(&complete(2), &[1.0, 1.0]).unwrap(), 2.0);
        assert_eq!(rayleigh_adjacency(&path(4), &[0.0; 4]).unwrap(), 0.0);
        assert_eq!(rayleigh_adjacency(&path(4), &[1.0, -1.0, 1.0, -1.0]).unwrap(), -6.0);
        assert!(rayleigh_adjacency(&path(4), &[1.0]).is_err());
    }

    #[test]
    fn rayleigh_matches_full_quadratic_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..12);
            let mut g = Graph::empty(n).unwrap();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = Matrix::from_fn(n, |i, j| f64::from(u8::from(g.has_edge(i, j))));
            assert!((rayleigh_adjacency(&g, &x).unwrap() - a.quadratic_form(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn complement_identity_examples() {
        assert_eq!(verify_complement_identity(&path(5)), Ok(ComplementIdentity::HoldsEqual));
        let dc = path(5).complement().bfs_distances().unwrap();
        assert_eq!(dc.get(0, 1), 2);
        assert_eq!(verify_complement_identity(&path(4)), Ok(ComplementIdentity::HoldsGeq));
        assert_eq!(
            verify_complement_identity(&complete(4)),
            Err(IdentityPrecondition::DiameterTooSmall(1))
        );
    }

    #[test]
    fn char_poly_small_examples() {
        assert_eq!(char_poly_exact(2, &[1, 0, 0, 1]).unwrap(), IntPolynomial::from_descending(&[1, -2, 1]));
        assert_eq!(char_poly_exact(2, &[0, 1, 1, 0]).unwrap(), IntPolynomial::from_descending(&[1, 0, -1]));
        assert_eq!(char_poly_exact(17, &[0; 289]), Err(SpectraError::DimensionTooLarge(17)));
    }

    /// det(λI - M) by expansion over all permutations, with polynomial entries.
    fn char_poly_by_permutations(n: usize, m: &[i64]) -> IntPolynomial {
        let entry = |i: usize, j: usize| {
            if i == j {
                IntPolynomial::from_descending(&[1, -m[i * n + j]])
            } else {
                IntPolynomial::from_i64(&[-m[i * n + j]])
            }
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = IntPolynomial::zero();
        loop {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut term = IntPolynomial::from_i64(&[if inversions % 2 == 0 { 1 } else { -1 }]);
            for (i, &p) in perm.iter().enumerate() {
                term = &term * &entry(i, p);
            }
            total = &total + &term;
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn char_poly_matches_permutation_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=5);
            let m: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
            assert_eq!(char_poly_exact(n, &m).unwrap(), char_poly_by_permutations(n, &m), "{m:?}");
        }
    }

    #[test]
    fn spectrum_invariants_on_random_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let n = rng.gen_range(1..20);
            let mut m = Matrix::from_fn(n, |_, _| 0.0);
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(-5.0..5.0);
                    m.data[i * n + j] = v;
                    m.data[j * n + i] = v;
                }
            }
            let d = JacobiSolver::new().decompose(&m).unwrap();
            let s = d.spectrum();
            assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
            assert!(trace_consistent(&m, &s));
            assert!(s.residual_bound <= 1e-10 * m.frobenius().max(1e-300));
            for (k, x) in d.vectors.iter().enumerate() {
                let mx = m.mul_vec(x);
                let inf = mx.iter().zip(x).map(|(a, b)| (a - d.values[k] * b).abs()).fold(0.0, f64::max);
                assert!(inf <= 1e-9 * m.frobenius());
                assert!((x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interlacing_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut m = Matrix::from_fn(6, |_, _| 0.0);
            for i in 0..6 {
                for j in i..6 {
                    let v = rng.gen_range(-3.0..3.0);
                    m.data[i * 6 + j] = v;
                    m.data[j * 6 + i] = v;
                }
            }
            let mut idx: Vec<usize> = (0..6).collect();
            for i in 0..3 {
                let j = rng.gen_range(i..6);
                idx.swap(i, j);
            }
            assert!(interlace_check(&m, &idx[..3]).unwrap());
            assert!(interlace_check(&m, &[0, 1, 2, 3, 4, 5]).unwrap());
        }
        let m = Matrix::distance(&path(3)).unwrap();
        assert!(matches!(interlace_check(&m, &[0, 5]), Err(SpectraError::IndexOutOfRange { index: 5, n: 3 })));
    }

    #[test]
    fn least_eigenvalue_matches_exact_root_on_paths() {
        for n in 2..=10 {
            let g = path(n);
            let d = g.bfs_distances().unwrap();
            let poly = char_poly_exact(n, &d.to_i64()).unwrap();
            let root = poly.least_real_root(&decimal_width(12)).unwrap();
            let pair = least_eigenpair(&Matrix::distance(&g).unwrap()).unwrap();
            assert!(root.contains(pair.value, 1e-9), "n={n}: {} vs {:?}", pair.value, root.midpoint());
        }
    }
}
