//! Exact univariate polynomials over the integers, with rational evaluation
//! and Sturm-sequence root isolation.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with arbitrary-precision integer coefficients, `coeffs[k]` being
/// the coefficient of `λ^k`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From low-to-high `i64` coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From high-to-low `i64` coefficients, the way polynomials are usually written.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `λ^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Floating-point evaluation (Horner), for diagnostics only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients as `i64`, high degree first, if they all fit.
    pub fn to_descending_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().rev().map(ToPrimitive::to_i64).collect()
    }

    fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Bracket of width at most `width` around the least real root.
    pub fn least_real_root(&self, width: &BigRational) -> Option<RootBracket> {
        self.real_roots(width).into_iter().next()
    }

    /// Every real root, each isolated in a half-open bracket `(lo, hi]` of width
    /// at most `width`, in increasing order and repeated by multiplicity.
    pub fn real_roots(&self, width: &BigRational) -> Vec<RootBracket> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (mult, factor) in self.to_rational().squarefree_factors() {
            let sturm = SturmChain::new(&factor);
            let bound = factor.cauchy_bound();
            let mut roots = Vec::new();
            sturm.isolate(-bound.clone(), bound, width, &mut roots);
            for r in roots {
                for _ in 0..mult {
                    out.push(r.clone());
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }
}

/// Half-open interval `(lo, hi]` known to contain exactly one distinct real
/// root of the polynomial it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn midpoint(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        let lo = rational_to_f64(&self.lo);
        let hi = rational_to_f64(&self.hi);
        x > lo - slack && x <= hi + slack
    }
}

/// `1 / 10^digits` as a rational.
pub fn decimal_width(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // Scale so the integer division keeps ~64 significant bits.
    let n = x.numer();
    let d = x.denom();
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 && n.bits() < 53 && d.bits() < 53 {
            return a / b;
        }
    }
    let shift = 64i64 - (n.bits() as i64 - d.bits() as i64);
    let scaled = if shift >= 0 {
        (n << shift as usize).div_floor(d)
    } else {
        n.div_floor(&(d << (-shift) as usize))
    };
    scaled.to_f64().unwrap_or(f64::NAN) * libm::exp2(-shift as f64)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl IntPolynomial {
    pub fn to_display_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Polynomial over the rationals; internal workhorse for gcd and Sturm chains.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => RatPoly::new(self.coeffs.iter().map(|c| c / lead).collect()),
        }
    }

    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.coeffs.last().unwrap();
        if rem.len() < d.coeffs.len() {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: pairs `(multiplicity, square-free factor)`.
    fn squarefree_factors(&self) -> Vec<(usize, RatPoly)> {
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = sub(&c, &b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = sub(&c, &b.derivative());
            i += 1;
        }
        out
    }

    /// Integer strictly larger than the modulus of every root.
    fn cauchy_bound(&self) -> BigRational {
        let lead = self.coeffs.last().expect("nonzero polynomial").abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lead;
            if r > m {
                m = r;
            }
        }
        BigRational::from_integer(m.ceil().to_integer() + BigInt::from(2))
    }
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    let get = |p: &RatPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
    RatPoly::new((0..len).map(|k| get(a, k) - get(b, k)).collect())
}

struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        SturmChain { chain }
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo) - self.sign_changes(hi)
    }

    /// Bisects `(lo, hi]` until every piece holding a root holds exactly one
    /// and is at most `width` wide; pushes the pieces left to right.
    fn isolate(&self, lo: BigRational, hi: BigRational, width: &BigRational, out: &mut Vec<RootBracket>) {
        let count = self.count(&lo, &hi);
        if count == 0 {
            return;
        }
        if count == 1 && &hi - &lo <= *width {
            out.push(RootBracket { lo, hi });
            return;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        self.isolate(lo, mid.clone(), width, out);
        self.isolate(mid, hi, width, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending(desc)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, -1]); // λ - 1
        let b = p(&[1, 1]); // λ + 1
        assert_eq!(&a * &b, p(&[1, 0, -1]));
        assert_eq!(&a + &b, p(&[2, 0]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(p(&[1, -2, 1]).eval_int(&BigInt::from(1)), BigInt::zero());
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(p(&[4, 0, -1]).eval_rational(&half), BigRational::zero());
        assert_eq!(p(&[1, 0, 0, 5]).derivative(), p(&[3, 0, 0]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -4, -42, -70, -20, 0]).to_display_string(), "λ^5 - 4λ^4 - 42λ^3 - 70λ^2 - 20λ");
        assert_eq!(p(&[-1, 0, 1]).to_display_string(), "-λ^2 + 1");
        assert_eq!(IntPolynomial::zero().to_display_string(), "0");
    }

    #[test]
    fn roots_of_product_of_linears() {
        // (λ+3)(λ+3)(λ-1)(2λ-1)
        let f = &(&p(&[1, 3]) * &p(&[1, 3])) * &(&p(&[1, -1]) * &p(&[2, -1]));
        let roots = f.real_roots(&decimal_width(10));
        let mids: Vec<f64> = roots.iter().map(RootBracket::midpoint).collect();
        assert_eq!(mids.len(), 4);
        let expect = [-3.0, -3.0, 0.5, 1.0];
        for (m, e) in mids.iter().zip(expect) {
            assert!((m - e).abs() < 1e-10, "{m} vs {e}");
        }
        let least = f.least_real_root(&decimal_width(10)).unwrap();
        assert!(least.width() <= decimal_width(10));
    }

    #[test]
    fn no_real_roots() {
        assert!(p(&[1, 0, 1]).least_real_root(&decimal_width(6)).is_none());
        assert!(p(&[7]).real_roots(&decimal_width(6)).is_empty());
    }

    #[test]
    fn close_roots_separate() {
        // (1000λ - 1)(1000λ - 2)
        let f = &p(&[1000, -1]) * &p(&[1000, -2]);
        let r = f.real_roots(&decimal_width(12));
        assert_eq!(r.len(), 2);
        assert!((r[0].midpoint() - 0.001).abs() < 1e-12);
        assert!((r[1].midpoint() - 0.002).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn integer_roots_recovered(mut rs in proptest::collection::vec(-20i64..20, 1..6)) {
            let f = rs.iter().fold(p(&[1]), |acc, &r| &acc * &p(&[1, -r]));
            rs.sort();
            let got = f.real_roots(&decimal_width(9));
            prop_assert_eq!(got.len(), rs.len());
            for (b, r) in got.iter().zip(&rs) {
                prop_assert!(b.contains(*r as f64, 1e-12));
            }
        }

        #[test]
        fn ring_laws(a in proptest::collection::vec(-50i64..50, 0..6),
                     b in proptest::collection::vec(-50i64..50, 0..6),
                     x in -10i64..10) {
            let (pa, pb) = (IntPolynomial::from_i64(&a), IntPolynomial::from_i64(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&pa * &pb).eval_int(&x), pa.eval_int(&x) * pb.eval_int(&x));
            prop_assert_eq!((&pa - &pb).eval_int(&x), pa.eval_int(&x) - pb.eval_int(&x));
            prop_assert_eq!(&(&pa + &pb) - &pb, pa);
        }
    }
}
