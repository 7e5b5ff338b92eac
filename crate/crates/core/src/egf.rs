//! Truncated exponential generating functions with exact rational
//! coefficients.
//!
//! A [`TruncatedEgf`] of order `N` stores `a_0..=a_N` and stands for
//! `Σ_{n≤N} a_n m^n / n!`. Coefficients are kept factorial-normalized, so the
//! product of two series is the binomial convolution
//! `c_n = Σ_s C(n,s) a_s b_{n-s}` and integer sequences stay integral.
//!
//! Every binary operation requires both operands to have the same order.
//! There is no implicit extension or truncation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::binomial_row;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedEgf {
    coeffs: Vec<BigRational>,
}

impl TruncatedEgf {
    /// Builds a series from `a_0..=a_N`. Panics on an empty vector, since a
    /// series always has at least its constant term.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least a_0");
        Self { coeffs }
    }

    pub fn from_integers<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(values.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// The multiplicative identity `1 = (1, 0, 0, …)`.
    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `e^{rm}`, whose coefficients are `r^n` (with `0^0 = 1`).
    pub fn exp_linear(r: i64, order: usize) -> Self {
        let r = BigInt::from(r);
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = BigInt::one();
        for _ in 0..=order {
            coeffs.push(BigRational::from_integer(acc.clone()));
            acc *= &r;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&BigRational> {
        self.coeffs
            .get(n)
            .ok_or(Error::IndexOutOfRange { index: n, order: self.order() })
    }

    /// `a_n` as an integer, failing when it has a nontrivial denominator.
    pub fn coeff_int(&self, n: usize) -> Result<BigInt> {
        let c = self.coeff(n)?;
        if c.is_integer() {
            Ok(c.to_integer())
        } else {
            Err(Error::NotAnInteger { index: n, value: c.to_string() })
        }
    }

    /// All coefficients as integers.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        (0..=self.order()).map(|n| self.coeff_int(n)).collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Binomial convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let row = binomial_row(n as u64);
            let mut acc = BigRational::zero();
            for (s, c) in row.iter().enumerate() {
                let (a, b) = (&self.coeffs[s], &other.coeffs[n - s]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += a * b * c;
            }
            coeffs.push(acc);
        }
        Ok(Self { coeffs })
    }

    /// `f^k` by repeated squaring; `f^0` is the identity series.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }

    /// The series `g` with `f·g = 1` up to the shared order.
    ///
    /// In factorial-normalized form the reciprocal recurrence reads
    /// `g_0 = 1/a_0`, `g_n = -(1/a_0) Σ_{s=1}^{n} C(n,s) a_s g_{n-s}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_a0 = a0.recip();
        let order = self.order();
        let mut g: Vec<BigRational> = Vec::with_capacity(order + 1);
        g.push(inv_a0.clone());
        for n in 1..=order {
            let row = binomial_row(n as u64);
            let mut acc = BigRational::zero();
            for s in 1..=n {
                let a = &self.coeffs[s];
                if a.is_zero() {
                    continue;
                }
                acc += a * &g[n - s] * &row[s];
            }
            g.push(-acc * &inv_a0);
        }
        Ok(Self { coeffs: g })
    }
}
