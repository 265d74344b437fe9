//! Equitable 5x5 quotients of `D(K'^c)`, `D(K''^c)` and `D(K^c(p,q))`, the
//! closed-form characteristic polynomials `φ`, `ϕ` (here `varphi`) and
//! `ψ_{p,q}`, and the difference identities between them.
//!
//! Published formulas are compared against `char_poly_exact` of the quotient;
//! disagreement is a [`PolyCheck::Mismatch`] carrying both sides, not a panic.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::families::{make_k_ab, make_k_double_prime, make_k_prime, FamilySpec};
use crate::graph::GraphError;
use crate::poly::IntPolynomial;
use crate::spectra::char_poly_exact;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("partition not equitable: vertex {vertex} has row sum {found} into class {to}, class {from} expects {expected}")]
    NotEquitable { from: usize, to: usize, vertex: usize, expected: i64, found: i64 },
    #[error("quotient entry ({i}, {j}) is {stored} but the full matrix gives {derived}")]
    EntryMismatch { i: usize, j: usize, stored: i64, derived: i64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn out_of_range(msg: String) -> QuotientError {
    QuotientError::OutOfRange(msg)
}

/// A 5x5 integer quotient matrix together with the vertex classes it summarizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: [[i64; 5]; 5],
    pub classes: Vec<Vec<usize>>,
    pub labels: [&'static str; 5],
}

impl QuotientMatrix {
    pub fn flat(&self) -> Vec<i64> {
        self.entries.iter().flatten().copied().collect()
    }

    pub fn char_poly(&self) -> IntPolynomial {
        char_poly_exact(5, &self.flat()).expect("5x5 integer matrix")
    }

    /// Checks that the classes form an equitable partition of the full matrix
    /// `m` (row-major `n x n`) and that the stored entries are its block row sums.
    pub fn verify_against(&self, n: usize, m: &[i64]) -> Result<(), QuotientError> {
        let derived = equitable_quotient(n, m, &self.classes)?;
        for i in 0..5 {
            for j in 0..5 {
                if derived[i][j] != self.entries[i][j] {
                    return Err(QuotientError::EntryMismatch { i, j, stored: self.entries[i][j], derived: derived[i][j] });
                }
            }
        }
        Ok(())
    }
}

/// Block row sums of `m` over `classes`, after checking every vertex of a
/// class has the same row sum into each other class.
pub fn equitable_quotient(n: usize, m: &[i64], classes: &[Vec<usize>]) -> Result<Vec<Vec<i64>>, QuotientError> {
    let k = classes.len();
    let mut seen = vec![false; n];
    for c in classes {
        for &v in c {
            if v >= n || seen[v] {
                return Err(out_of_range(alloc::format!("class member {v} invalid or repeated")));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|s| !s) || classes.iter().any(Vec::is_empty) {
        return Err(out_of_range(String::from("classes must cover all vertices and be nonempty")));
    }
    let mut q = vec![vec![0i64; k]; k];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let sums: Vec<i64> = ci.iter().map(|&v| cj.iter().map(|&w| m[v * n + w]).sum()).collect();
            if let Some(pos) = sums.iter().position(|&s| s != sums[0]) {
                return Err(QuotientError::NotEquitable {
                    from: i,
                    to: j,
                    vertex: ci[pos],
                    expected: sums[0],
                    found: sums[pos],
                });
            }
            q[i][j] = sums[0];
        }
    }
    Ok(q)
}

/// `D(G^c)` of a family member, by BFS on the complement.
pub fn complement_distance(spec: &FamilySpec) -> Result<Vec<i64>, QuotientError> {
    Ok(spec.graph.complement().bfs_distances()?.to_i64())
}

fn rest(n: usize, named: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !named.contains(v)).collect()
}

/// The printed quotient of `D(K'^c)`, classes `(u, u', v, v', rest)`.
pub fn quotient_kprime(n: usize) -> Result<QuotientMatrix, QuotientError> {
    let spec = make_k_prime(n).map_err(|e| out_of_range(alloc::format!("{e}")))?;
    let m = n as i64 - 4;
    let (u, up, v, vp) = (spec.role("u"), spec.role("u'"), spec.role("v"), spec.role("v'"));
    Ok(QuotientMatrix {
        entries: [
            [0, 2, 1, 1, 2 * m],
            [2, 0, 1, 1, m],
            [1, 1, 0, 2, 2 * m],
            [1, 1, 2, 0, m],
            [2, 1, 2, 1, 2 * (m - 1)],
        ],
        classes: vec![vec![u], vec![up], vec![v], vec![vp], rest(n, &[u, up, v, vp])],
        labels: ["u", "u'", "v", "v'", "rest"],
    })
}

/// The printed quotient of `D(K^c(p,q))`, classes `(u, v, w, rest+, rest-)`.
pub fn quotient_kpq(p: usize, q: usize) -> Result<QuotientMatrix, QuotientError> {
    let spec = make_k_ab(p, q).map_err(|e| out_of_range(alloc::format!("{e}")))?;
    let (pi, qi) = (p as i64, q as i64);
    let (u, v, w) = (spec.role("u"), spec.role("v"), spec.role("w"));
    let plus: Vec<usize> = (0..p).filter(|&x| x != u && x != w).collect();
    let minus: Vec<usize> = (p..p + q).filter(|&x| x != v).collect();
    Ok(QuotientMatrix {
        entries: [
            [0, 2, 1, 2 * (pi - 2), qi - 1],
            [2, 0, 1, pi - 2, 2 * (qi - 1)],
            [1, 1, 0, 2 * (pi - 2), qi - 1],
            [2, 1, 2, 2 * (pi - 3), qi - 1],
            [1, 2, 1, pi - 2, 2 * (qi - 2)],
        ],
        classes: vec![vec![u], vec![v], vec![w], plus, minus],
        labels: ["u", "v", "w", "rest+", "rest-"],
    })
}

/// Quotient of `D(K''^c)` over `(u, v, a, b, rest)`, derived from block row
/// sums of the full matrix.
pub fn quotient_kdoubleprime(n: usize) -> Result<QuotientMatrix, QuotientError> {
    let spec = make_k_double_prime(n).map_err(|e| out_of_range(alloc::format!("{e}")))?;
    let (u, v, a, b) = (spec.role("u"), spec.role("v"), spec.role("a"), spec.role("b"));
    let classes = vec![vec![u], vec![v], vec![a], vec![b], rest(n, &[u, v, a, b])];
    let full = complement_distance(&spec)?;
    let q = equitable_quotient(n, &full, &classes)?;
    let mut entries = [[0i64; 5]; 5];
    for i in 0..5 {
        entries[i].copy_from_slice(&q[i]);
    }
    Ok(QuotientMatrix { entries, classes, labels: ["u", "v", "a", "b", "rest"] })
}

fn check_n(n: usize) -> Result<i64, QuotientError> {
    if n < 7 {
        Err(out_of_range(alloc::format!("n = {n} < 7")))
    } else {
        Ok(n as i64)
    }
}

fn check_pq(p: usize, q: usize) -> Result<(i64, i64), QuotientError> {
    if p < 3 || q < 2 {
        Err(out_of_range(alloc::format!("(p, q) = ({p}, {q}) needs p >= 3, q >= 2")))
    } else {
        Ok((p as i64, q as i64))
    }
}

/// `λ^5 - (2n-10)λ^4 - (10n-28)λ^3 - 10nλ^2 + (4n-48)λ`
pub fn phi(n: usize) -> Result<IntPolynomial, QuotientError> {
    Ok(phi_formula(check_n(n)?))
}

fn phi_formula(n: i64) -> IntPolynomial {
    IntPolynomial::from_descending(&[1, -(2 * n - 10), -(10 * n - 28), -10 * n, 4 * n - 48, 0])
}

/// `λ^5 - (2n-10)λ^4 - (10n-28)λ^3 - (8n+10)λ^2 + (15n-103)λ + 14n - 70`
pub fn varphi(n: usize) -> Result<IntPolynomial, QuotientError> {
    let n = check_n(n)?;
    Ok(IntPolynomial::from_descending(&[
        1,
        -(2 * n - 10),
        -(10 * n - 28),
        -(8 * n + 10),
        15 * n - 103,
        14 * n - 70,
    ]))
}

pub fn psi(p: usize, q: usize) -> Result<IntPolynomial, QuotientError> {
    let (p, q) = check_pq(p, q)?;
    Ok(psi_formula(p, q))
}

/// The printed `ψ_{p,q}` as a polynomial in `λ` for any integers `p, q`.
pub fn psi_formula(p: i64, q: i64) -> IntPolynomial {
    IntPolynomial::from_descending(&[
        1,
        -(2 * q - 10 + 2 * p),
        -(-3 * p * q + 16 * p + 16 * q - 40),
        -(-18 * p * q + 44 * p + 50 * q - 74),
        -(-30 * p * q + 45 * p + 63 * q - 53),
        12 * p * q - 10 * p - 22 * q + 2,
    ])
}

/// Result of comparing a printed polynomial with an independently computed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyCheck {
    Match,
    Mismatch {
        printed: IntPolynomial,
        computed: IntPolynomial,
        /// `computed - printed`
        diff: IntPolynomial,
    },
}

impl PolyCheck {
    fn compare(printed: IntPolynomial, computed: IntPolynomial) -> Self {
        if printed == computed {
            PolyCheck::Match
        } else {
            let diff = &computed - &printed;
            PolyCheck::Mismatch { printed, computed, diff }
        }
    }

    pub fn is_match(&self) -> bool {
        matches!(self, PolyCheck::Match)
    }
}

/// `char_poly(quotient_kprime(n))` against `φ`.
pub fn check_eq3(n: usize) -> Result<PolyCheck, QuotientError> {
    Ok(PolyCheck::compare(phi(n)?, quotient_kprime(n)?.char_poly()))
}

/// `char_poly(quotient_kdoubleprime(n))` against `ϕ`.
pub fn check_eq4(n: usize) -> Result<PolyCheck, QuotientError> {
    Ok(PolyCheck::compare(varphi(n)?, quotient_kdoubleprime(n)?.char_poly()))
}

/// `char_poly(quotient_kpq(p, q))` against `ψ_{p,q}`.
pub fn check_eq5(p: usize, q: usize) -> Result<PolyCheck, QuotientError> {
    Ok(PolyCheck::compare(psi(p, q)?, quotient_kpq(p, q)?.char_poly()))
}

/// Printed `φ - ϕ = (-2n+10)λ^2 + (-11n+55)λ - 14n + 70`.
pub fn printed_diff_26(n: i64) -> IntPolynomial {
    IntPolynomial::from_descending(&[-2 * n + 10, -11 * n + 55, -14 * n + 70])
}

/// Printed `ψ_{p,q} - φ = (2p-6)λ^2 + (11p-33)λ + 14p - 42`.
pub fn printed_diff_29(p: i64) -> IntPolynomial {
    IntPolynomial::from_descending(&[2 * p - 6, 11 * p - 33, 14 * p - 42])
}

/// Printed `ψ_{p,q} - ψ_{p-1,q-1}`:
/// `(-3p+3q+3)λ^3 + (-18p+18q+24)λ^2 + (-30p+30q+48)λ - 12p + 12q + 24`.
pub fn printed_diff_210(p: i64, q: i64) -> IntPolynomial {
    IntPolynomial::from_descending(&[
        -3 * p + 3 * q + 3,
        -18 * p + 18 * q + 24,
        -30 * p + 30 * q + 48,
        -12 * p + 12 * q + 24,
    ])
}

/// `φ(n) - ϕ(n)` against its printed form.
pub fn diff_identity_26(n: usize) -> Result<PolyCheck, QuotientError> {
    let computed = &phi(n)? - &varphi(n)?;
    Ok(PolyCheck::compare(printed_diff_26(n as i64), computed))
}

/// `ψ_{p,q} - φ(p+q)` against its printed form.
pub fn diff_identity_29(p: usize, q: usize) -> Result<PolyCheck, QuotientError> {
    let computed = &psi(p, q)? - &phi(p + q)?;
    Ok(PolyCheck::compare(printed_diff_29(p as i64), computed))
}

/// `ψ_{p,q} - ψ_{p-1,q-1}` against the printed form, taking the subscripts
/// literally (the second term evaluates the formula at `(p-1, q-1)` even when
/// that pair is outside the family's range).
pub fn diff_identity_210(p: usize, q: usize) -> Result<PolyCheck, QuotientError> {
    let (pi, qi) = check_pq(p, q)?;
    let computed = &psi_formula(pi, qi) - &psi_formula(pi - 1, qi - 1);
    Ok(PolyCheck::compare(printed_diff_210(pi, qi), computed))
}

/// `ψ_{p,q} - ψ_{p-1,q+1}`, which keeps `n = p + q` fixed, against the same
/// printed right-hand side as [`diff_identity_210`].
pub fn diff_identity_210_same_order(p: usize, q: usize) -> Result<PolyCheck, QuotientError> {
    let (pi, qi) = check_pq(p, q)?;
    if p < 4 {
        return Err(out_of_range(alloc::format!("p = {p} leaves ψ_(p-1,q+1) outside p >= 3")));
    }
    let computed = &psi_formula(pi, qi) - &psi_formula(pi - 1, qi + 1);
    Ok(PolyCheck::compare(printed_diff_210(pi, qi), computed))
}

/// Which sign claim to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "lemma", rename_all = "snake_case"))]
pub enum SignRegime {
    /// `φ - ϕ < 0` for `λ < -3.8`, `n >= 7`.
    Lemma26 { n: usize },
    /// `ψ_{p,q} - φ > 0` for `λ < -3.8`, `p >= 4`, `q >= 2`.
    Lemma29 { p: usize, q: usize },
    /// `ψ_{p,q} - ψ_{p-1,q-1} > 0` for `λ < -3`, `p > q >= 2`.
    Lemma210 { p: usize, q: usize },
}

/// Which difference polynomial to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DiffSource {
    /// The printed low-degree difference.
    Printed,
    /// The difference of the printed full polynomials, subscripts as written.
    Computed,
}

impl SignRegime {
    /// Upper end of the regime, `-19/5` or `-3`.
    pub fn bound(&self) -> BigRational {
        match self {
            SignRegime::Lemma26 { .. } | SignRegime::Lemma29 { .. } => {
                BigRational::new(BigInt::from(-19), BigInt::from(5))
            }
            SignRegime::Lemma210 { .. } => BigRational::from_integer(BigInt::from(-3)),
        }
    }

    /// Order of the graphs involved.
    pub fn order(&self) -> usize {
        match *self {
            SignRegime::Lemma26 { n } => n,
            SignRegime::Lemma29 { p, q } | SignRegime::Lemma210 { p, q } => p + q,
        }
    }

    /// `+1` or `-1`: the sign the difference should have in the regime.
    pub fn expected_sign(&self) -> i8 {
        match self {
            SignRegime::Lemma26 { .. } => -1,
            _ => 1,
        }
    }

    fn validate(&self) -> Result<(), QuotientError> {
        match *self {
            SignRegime::Lemma26 { n } => check_n(n).map(|_| ()),
            SignRegime::Lemma29 { p, q } => {
                if p < 4 || q < 2 {
                    Err(out_of_range(alloc::format!("pq regime needs p >= 4, q >= 2, got ({p}, {q})")))
                } else {
                    Ok(())
                }
            }
            SignRegime::Lemma210 { p, q } => {
                if p <= q || q < 2 {
                    Err(out_of_range(alloc::format!("adjacent-split regime needs p > q >= 2, got ({p}, {q})")))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn difference(&self, source: DiffSource) -> Result<IntPolynomial, QuotientError> {
        self.validate()?;
        Ok(match (*self, source) {
            (SignRegime::Lemma26 { n }, DiffSource::Printed) => printed_diff_26(n as i64),
            (SignRegime::Lemma26 { n }, DiffSource::Computed) => &phi(n)? - &varphi(n)?,
            (SignRegime::Lemma29 { p, .. }, DiffSource::Printed) => printed_diff_29(p as i64),
            (SignRegime::Lemma29 { p, q }, DiffSource::Computed) => &psi(p, q)? - &phi(p + q)?,
            (SignRegime::Lemma210 { p, q }, DiffSource::Printed) => printed_diff_210(p as i64, q as i64),
            (SignRegime::Lemma210 { p, q }, DiffSource::Computed) => {
                let (p, q) = (p as i64, q as i64);
                &psi_formula(p, q) - &psi_formula(p - 1, q - 1)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignViolation {
    pub lambda: BigRational,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRegimeReport {
    pub regime: SignRegime,
    pub source: DiffSource,
    pub difference: IntPolynomial,
    pub points_checked: usize,
    pub violations: Vec<SignViolation>,
}

impl SignRegimeReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Default grid: `bound - k/16` for `k = 1, 2, ...` while above `-10n`.
pub fn default_grid(regime: &SignRegime) -> Vec<BigRational> {
    let bound = regime.bound();
    let floor = BigRational::from_integer(BigInt::from(-10 * regime.order() as i64));
    let step = BigRational::new(BigInt::from(1), BigInt::from(16));
    let mut out = Vec::new();
    let mut x = &bound - &step;
    while x > floor {
        out.push(x.clone());
        x = &x - &step;
    }
    out
}

/// Evaluates the difference polynomial exactly at every grid point.
pub fn sign_regime_check(
    regime: SignRegime,
    source: DiffSource,
    grid: &[BigRational],
) -> Result<SignRegimeReport, QuotientError> {
    let difference = regime.difference(source)?;
    let bound = regime.bound();
    let floor = BigRational::from_integer(BigInt::from(-10 * regime.order() as i64));
    if let Some(x) = grid.iter().find(|x| **x >= bound || **x <= floor) {
        return Err(out_of_range(alloc::format!("grid point {x} outside the regime")));
    }
    let expected = regime.expected_sign();
    let violations = grid
        .iter()
        .filter_map(|x| {
            let value = difference.eval_rational(x);
            let ok = if expected > 0 { value.is_positive() } else { value.is_negative() };
            (!ok).then(|| SignViolation { lambda: x.clone(), value })
        })
        .collect();
    Ok(SignRegimeReport { regime, source, difference, points_checked: grid.len(), violations })
}

/// `true` when every coefficient is zero; convenience for reports.
pub fn is_zero_poly(p: &IntPolynomial) -> bool {
    p.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_k_ab;

    fn p(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending(desc)
    }

    #[test]
    fn kprime_quotient_entries() {
        let q7 = quotient_kprime(7).unwrap();
        assert_eq!(q7.entries[4], [2, 1, 2, 1, 4]);
        assert_eq!(quotient_kprime(9).unwrap().entries[0][4], 10);
        assert!(quotient_kprime(6).is_err());
    }

    #[test]
    fn kpq_quotient_entries() {
        assert_eq!(quotient_kpq(4, 3).unwrap().entries[0], [0, 2, 1, 4, 2]);
        assert_eq!(quotient_kpq(4, 2).unwrap().entries[4][4], 0);
        assert!(quotient_kpq(2, 3).is_err());
    }

    #[test]
    fn quotients_are_equitable_on_full_matrices() {
        for n in 7..=12 {
            let spec = make_k_prime(n).unwrap();
            quotient_kprime(n).unwrap().verify_against(n, &complement_distance(&spec).unwrap()).unwrap();
            let spec = make_k_double_prime(n).unwrap();
            quotient_kdoubleprime(n).unwrap().verify_against(n, &complement_distance(&spec).unwrap()).unwrap();
            for q in 2..=n - 3 {
                let spec = make_k_ab(n - q, q).unwrap();
                quotient_kpq(n - q, q).unwrap().verify_against(n, &complement_distance(&spec).unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn non_equitable_partition_detected() {
        let spec = make_k_prime(7).unwrap();
        let full = complement_distance(&spec).unwrap();
        let classes = vec![vec![0, 5], vec![1], vec![2], vec![3, 4], vec![6]];
        assert!(matches!(equitable_quotient(7, &full, &classes), Err(QuotientError::NotEquitable { .. })));
    }

    #[test]
    fn printed_polynomials_at_seven() {
        assert_eq!(phi(7).unwrap(), p(&[1, -4, -42, -70, -20, 0]));
        assert_eq!(varphi(7).unwrap(), p(&[1, -4, -42, -66, 2, 28]));
        // p = 4, q = 3: λ^5 - 4λ^4 - 36λ^3 - 36λ^2 + 44λ + 40
        assert_eq!(psi(4, 3).unwrap(), p(&[1, -4, -36, -36, 44, 40]));
        assert_eq!(char_poly_exact(5, &quotient_kprime(7).unwrap().flat()).unwrap(), p(&[1, -4, -42, -70, -20, 0]));
    }

    #[test]
    fn closed_forms_match_quotients() {
        for n in 7..=40 {
            assert!(check_eq3(n).unwrap().is_match(), "eq3 n={n}");
            assert!(check_eq4(n).unwrap().is_match(), "eq4 n={n}");
            assert!(is_zero_poly(&(&quotient_kprime(n).unwrap().char_poly() - &phi(n).unwrap())));
        }
        assert!(check_eq5(4, 3).unwrap().is_match());
    }

    #[test]
    fn difference_identity_26() {
        assert_eq!(&phi(7).unwrap() - &varphi(7).unwrap(), p(&[-4, -22, -28]));
        for n in 7..=40 {
            assert!(diff_identity_26(n).unwrap().is_match());
        }
    }

    #[test]
    fn difference_identity_29_only_holds_for_q_two() {
        // The printed right-hand side at p = 4 is 2λ^2 + 11λ + 14.
        assert_eq!(printed_diff_29(4), p(&[2, 11, 14]));
        assert!(diff_identity_29(5, 2).unwrap().is_match());
        match diff_identity_29(4, 3).unwrap() {
            PolyCheck::Mismatch { computed, diff, .. } => {
                // ψ_{4,3} - φ(7), worked out by hand from the two closed forms.
                assert_eq!(computed, p(&[6, 34, 64, 40]));
                assert_eq!(diff, p(&[6, 32, 53, 26]));
            }
            PolyCheck::Match => panic!("expected mismatch"),
        }
    }

    #[test]
    fn difference_identity_210_subscripts() {
        assert_eq!(printed_diff_210(4, 4), p(&[3, 24, 48, 24]));
        assert!(!diff_identity_210(4, 4).unwrap().is_match());
        for n in 8..=40 {
            for q in 2..=n / 2 {
                assert!(diff_identity_210_same_order(n - q, q).unwrap().is_match(), "({}, {q})", n - q);
            }
        }
    }

    #[test]
    fn sign_regime_examples() {
        let x = BigRational::from_integer(BigInt::from(-4));
        let r = sign_regime_check(SignRegime::Lemma26 { n: 7 }, DiffSource::Printed, &[x.clone()]).unwrap();
        assert!(r.holds());
        assert_eq!(r.difference.eval_rational(&x), BigRational::from_integer(BigInt::from(-4)));
        let r = sign_regime_check(SignRegime::Lemma29 { p: 4, q: 3 }, DiffSource::Printed, &[x.clone()]).unwrap();
        assert!(r.holds());
        assert_eq!(r.difference.eval_rational(&x), BigRational::from_integer(BigInt::from(2)));
        assert!(sign_regime_check(SignRegime::Lemma210 { p: 4, q: 4 }, DiffSource::Printed, &[x.clone()]).is_err());
        let bad = BigRational::from_integer(BigInt::from(0));
        assert!(sign_regime_check(SignRegime::Lemma26 { n: 7 }, DiffSource::Printed, &[bad]).is_err());
    }

    #[test]
    fn printed_sign_regimes_on_default_grids() {
        for n in 7..=20 {
            let r = SignRegime::Lemma26 { n };
            assert!(sign_regime_check(r, DiffSource::Printed, &default_grid(&r)).unwrap().holds());
            for q in 2..=n / 2 {
                let r = SignRegime::Lemma29 { p: n - q, q };
                assert!(sign_regime_check(r, DiffSource::Printed, &default_grid(&r)).unwrap().holds());
                if n - q > q {
                    // The cubic is 3(λ+2)[d(λ²+4λ+2) + λ²+6λ+4] with d = q - p, which
                    // changes sign just below -3 once p - q >= 6.
                    let r = SignRegime::Lemma210 { p: n - q, q };
                    let report = sign_regime_check(r, DiffSource::Printed, &default_grid(&r)).unwrap();
                    assert_eq!(report.holds(), n - 2 * q < 6, "({}, {q})", n - q);
                }
            }
        }
    }

    #[test]
    fn lemma_210_printed_sign_witness() {
        let x = BigRational::new(BigInt::from(-301), BigInt::from(100));
        let r = sign_regime_check(SignRegime::Lemma210 { p: 9, q: 2 }, DiffSource::Printed, &[x.clone()]).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].value.is_negative());
    }
}
