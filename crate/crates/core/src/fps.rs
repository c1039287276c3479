//! Truncated formal power series in one variable q over exact rationals.
//!
//! A [`TruncatedSeries`] stores exact coefficients of q^0..q^order. Arithmetic
//! never extends precision silently: every binary operation truncates to the
//! minimum of the operand orders. Coefficients are arbitrary-precision
//! rationals, so the identity suite can compare series bit-exactly.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational coefficient type used throughout the crate.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Ratio of two integers as a rational; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    // invariant: coeffs.len() == order + 1
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c * q^exp; the zero series if `exp > order`.
    pub fn monomial(c: Rat, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Series with the given coefficients for q^0..q^(len-1).
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least q^0");
        Self { coeffs }
    }

    /// Convenience constructor from small integers, mostly for tests.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
            .collect();
        Self { coeffs }
    }

    pub fn negate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product truncated at the minimum operand order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Multiply by q^m in place of the order budget: coefficients shift up,
    /// the top m drop off, the order is unchanged.
    pub fn shift_up(&self, m: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for k in m..=order {
            coeffs[k] = self.coeffs[k - m].clone();
        }
        Self { coeffs }
    }

    /// Multiply by the binomial (1 - c*q^m) in O(order).
    pub fn mul_one_minus(&self, c: &Rat, m: usize) -> Self {
        let order = self.order();
        let mut coeffs = self.coeffs.clone();
        if m == 0 {
            let f = Rat::one() - c;
            return self.scalar_mul(&f);
        }
        for k in (m..=order).rev() {
            let t = &self.coeffs[k - m] * c;
            coeffs[k] -= t;
        }
        Self { coeffs }
    }

    /// Divide by the binomial (1 - c*q^m) in O(order): r[k] = a[k] + c*r[k-m].
    pub fn div_one_minus(&self, c: &Rat, m: usize) -> Self {
        let order = self.order();
        assert!(m > 0, "division by (1 - c) is a scalar operation");
        let mut coeffs = self.coeffs.clone();
        for k in m..=order {
            let t = &coeffs[k - m] * c;
            coeffs[k] += t;
        }
        Self { coeffs }
    }

    /// Exact division: returns c with `den * c = self` through the shared
    /// order. The denominator must be a unit (nonzero constant term).
    pub fn div_unit(&self, den: &Self) -> Result<Self> {
        if den.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(den.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !den.coeffs[j].is_zero() && !coeffs[k - j].is_zero() {
                    acc -= &den.coeffs[j] * &coeffs[k - j];
                }
            }
            coeffs[k] = acc / &den.coeffs[0];
        }
        Ok(Self { coeffs })
    }

    /// Horner evaluation in double precision at q in (0, 1). No tail bound is
    /// claimed here; callers that need one track it separately.
    pub fn eval_f64(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q = {q} is not in (0, 1)")));
        }
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c.to_f64().unwrap_or(f64::NAN);
        }
        Ok(acc)
    }

    /// First k with differing coefficients through the shared order.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<(usize, Rat, Rat)> {
        let order = self.order().min(rhs.order());
        (0..=order)
            .find(|&k| self.coeffs[k] != rhs.coeffs[k])
            .map(|k| (k, self.coeffs[k].clone(), rhs.coeffs[k].clone()))
    }

    pub fn agrees_through(&self, rhs: &Self, order: usize) -> bool {
        assert!(order <= self.order() && order <= rhs.order());
        (0..=order).all(|k| self.coeffs[k] == rhs.coeffs[k])
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            if !first && c.is_positive() {
                write!(f, "+ ")?;
            }
            write!(f, "{c}*q^{k}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.negate()
    }
}

/// Finite or truncated-infinite q-Pochhammer product
/// prod_{j=0}^{count-1} (1 - c * q^(shift+j)), truncated at `order`.
/// `count = None` means the infinite product; factors with exponent beyond
/// `order` are identically 1 after truncation, so the product is finite.
pub fn pochhammer(c: &Rat, shift: usize, count: Option<usize>, order: usize) -> Result<TruncatedSeries> {
    if count.is_none() && shift == 0 && !c.is_zero() {
        return Err(Error::DivergentProduct);
    }
    let mut acc = TruncatedSeries::one(order);
    if c.is_zero() {
        return Ok(acc);
    }
    let mut j = 0usize;
    loop {
        if let Some(n) = count {
            if j >= n {
                break;
            }
        }
        let exp = shift + j;
        if exp > order {
            if count.is_none() {
                break;
            }
            // remaining finite factors are 1 after truncation
            break;
        }
        acc = acc.mul_one_minus(c, exp);
        j += 1;
    }
    Ok(acc)
}

/// (q;q)_inf through `order` by the pentagonal number theorem:
/// sum over k in Z of (-1)^k q^{k(3k-1)/2}. Sparse, O(order * sqrt(order))
/// coefficient work; the dense product form is kept as the test oracle.
pub fn euler_product(order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    s.coeffs[0] = Rat::one();
    let mut k: usize = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 > order {
            break;
        }
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        s.coeffs[g1] += &sign;
        if g2 <= order {
            s.coeffs[g2] += &sign;
        }
        k += 1;
    }
    s
}
