//! Counts `p^r_j(n)` of restricted barred preferential arrangements: `n`
//! labelled elements spread over `r` restricted sections (at most one block
//! each) and `j` free sections (any preferential arrangement). The
//! exponential generating function is `e^{rm} / (2 - e^m)^j`.
//!
//! Several independent routes are provided so they can be checked against
//! each other:
//!
//! - [`p_egf`]: coefficient extraction from the generating function.
//! - [`p_binomial_shift`]: `Σ_s C(n,s) r^s p^0_j(n-s)`.
//! - [`p_recurrence`]: `p^r_j(n) = p^r_{j-1}(n) + Σ_{s<n} C(n,s) p^r_j(s)`.
//! - [`p_double_sum`]: the alternating double sum over `p^{r+k-s}_{j-1}(n)`,
//!   truncated at `k = n`.
//! - [`p_series_certified`]: the geometric series `½ Σ_s p^{r+s}_{j-1}(n) / 2^s`
//!   summed exactly up to a certified truncation point.
//!
//! Each route computes its own values; none reads another route's cache.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial, binomial_row, int_pow, pow_i64, sign};
use crate::egf::TruncatedEgf;
use crate::error::{Error, Result};

/// Values `p^r_j(0..=N)` of one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTable {
    pub r: u32,
    pub j: u32,
    #[serde(serialize_with = "crate::harness::report::ser_bigints")]
    pub values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Where a certified series was cut and how large the discarded tail can be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailCertificate {
    pub truncation: usize,
    #[serde(serialize_with = "crate::harness::report::ser_display")]
    pub tail_bound: BigRational,
}

/// `2 - e^m` truncated at `order`.
pub fn two_minus_exp(order: usize) -> TruncatedEgf {
    TruncatedEgf::constant(BigRational::from_integer(2.into()), order)
        .sub(&TruncatedEgf::exp_linear(1, order))
        .expect("same order")
}

/// `1 / (2 - e^m)^j`, the free-section factor.
pub fn free_sections_egf(j: u32, order: usize) -> TruncatedEgf {
    two_minus_exp(order).pow(j).reciprocal().expect("constant term is 1")
}

/// The full generating function `e^{rm} / (2 - e^m)^j`.
pub fn rbpa_egf(r: u32, j: u32, order: usize) -> TruncatedEgf {
    TruncatedEgf::exp_linear(i64::from(r), order)
        .mul(&free_sections_egf(j, order))
        .expect("same order")
}

/// `p^r_j(0..=n_max)` by coefficient extraction.
pub fn p_egf(r: u32, j: u32, n_max: usize) -> SequenceTable {
    let values = rbpa_egf(r, j, n_max)
        .to_integers()
        .expect("counting series has integer coefficients");
    SequenceTable { r, j, values }
}

/// `p^r_j(n) = Σ_{s=0}^{n} C(n,s) r^s p^0_j(n-s)`, distributing `s` elements
/// over the restricted sections first.
pub fn p_binomial_shift(r: u32, j: u32, n: usize) -> BigInt {
    let free = p_egf(0, j, n).values;
    let row = binomial_row(n as u64);
    (0..=n)
        .map(|s| &row[s] * pow_i64(i64::from(r), s as u32) * &free[n - s])
        .sum()
}

/// `p^r_j(0..=n_max)` by the recurrence on `j`, with base `p^r_0(n) = r^n`.
pub fn p_recurrence_table(r: u32, j: u32, n_max: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = (0..=n_max).map(|n| pow_i64(i64::from(r), n as u32)).collect();
    for _ in 0..j {
        let mut cur: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        cur.push(BigInt::one());
        for n in 1..=n_max {
            let row = binomial_row(n as u64);
            let tail: BigInt = (0..n).map(|s| &row[s] * &cur[s]).sum();
            cur.push(&prev[n] + tail);
        }
        prev = cur;
    }
    prev
}

pub fn p_recurrence(r: u32, j: u32, n: usize) -> BigInt {
    p_recurrence_table(r, j, n).swap_remove(n)
}

struct DoubleSum {
    n: u32,
    memo: HashMap<(u64, u32), BigInt>,
}

impl DoubleSum {
    fn value(&mut self, base: u64, j: u32) -> BigInt {
        if j == 0 {
            return int_pow(&BigInt::from(base), self.n);
        }
        if let Some(v) = self.memo.get(&(base, j)) {
            return v.clone();
        }
        let n = self.n as u64;
        let mut total = BigInt::zero();
        for k in 0..=n + 3 {
            let inner = self.inner(base, j, k);
            if k <= n {
                total += inner;
            } else {
                assert!(
                    inner.is_zero(),
                    "finite difference of order {k} > {n} must vanish (base {base}, j {j})"
                );
            }
        }
        self.memo.insert((base, j), total.clone());
        total
    }

    // Σ_{s=0}^{k} C(k,s) (-1)^s p^{base+k-s}_{j-1}(n)
    fn inner(&mut self, base: u64, j: u32, k: u64) -> BigInt {
        let row = binomial_row(k);
        let mut acc = BigInt::zero();
        for s in 0..=k {
            let term = &row[s as usize] * self.value(base + k - s, j - 1);
            if s % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// `p^r_j(n) = Σ_k Σ_{s≤k} C(k,s)(-1)^s p^{r+k-s}_{j-1}(n)`.
///
/// The inner sum is the `k`-th finite difference of `b ↦ p^b_{j-1}(n)`, a
/// polynomial of degree `n` in `b`, so only `k ≤ n` contributes. Terms
/// `k = n+1..=n+3` are still evaluated and asserted to vanish.
pub fn p_double_sum(r: u32, j: u32, n: usize) -> Result<BigInt> {
    if j == 0 {
        return Err(Error::Precondition("double sum needs j >= 1".into()));
    }
    let mut ds = DoubleSum { n: n as u32, memo: HashMap::new() };
    Ok(ds.value(u64::from(r), j))
}

/// `Σ_{s=1}^{r} C(r,s)(-1)^{s+1} p^s_{j-s}(n)` for `1 ≤ r ≤ j`.
///
/// This equals `p^r_{j-r}(n)` only when `r = 1`. In general it counts the
/// arrangements of `G^0_j(n)` in which at least one of `r` fixed free
/// sections has at most one block; see [`p_crowded_sections`].
pub fn p_inclusion_exclusion(r: u32, j: u32, n: usize) -> Result<BigInt> {
    if r < 1 || r > j {
        return Err(Error::Precondition(format!("need 1 <= r <= j, got r={r}, j={j}")));
    }
    Ok((1..=r)
        .map(|s| binomial(u64::from(r), u64::from(s)) * sign(u64::from(s) + 1) * &p_egf(s, j - s, n).values[n])
        .sum())
}

/// Arrangements in `G^0_j(n)` whose first `r` free sections each hold at
/// least two blocks: generating function `(1/(2-e^m) - e^m)^r / (2-e^m)^{j-r}`.
pub fn p_crowded_sections(r: u32, j: u32, n_max: usize) -> Result<Vec<BigInt>> {
    if r > j {
        return Err(Error::Precondition(format!("need r <= j, got r={r}, j={j}")));
    }
    let crowded = free_sections_egf(1, n_max).sub(&TruncatedEgf::exp_linear(1, n_max))?;
    crowded.pow(r).mul(&free_sections_egf(j - r, n_max))?.to_integers()
}

/// `p^r_j(n)` from `½ Σ_{s≥0} p^{r+s}_{j-1}(n) / 2^s`, summed exactly up to a
/// truncation point `S` whose tail is provably below `1/2`.
///
/// Certification: the tail is dominated by `Σ_{t≥S} C(t+j-1,j-1)(r+t)^n/2^{t+j}
/// ≤ Σ_{t≥S} x_t^N / 2^t` with `x_t = r+t+j` and `N = n+j+1`. Once
/// `2^{t/2} ≥ x_t^N` holds at `S` and `t/2·ln 2 - N ln x_t` is nondecreasing
/// from `S` to `S+1`, convexity keeps it for all `t ≥ S`, and the tail is at
/// most `Σ_{t≥S} 2^{-t/2} < 4 / 2^{⌊S/2⌋}`.
pub fn p_series_certified(r: u32, j: u32, n: usize) -> Result<(BigInt, TailCertificate)> {
    if j == 0 {
        return Err(Error::Precondition("series form needs j >= 1".into()));
    }
    let cap = 64 * (n + j as usize + r as usize + 4);
    let truncation = certify_truncation(r, j, n, cap)?;
    let tail_bound = BigRational::new(BigInt::from(4), BigInt::one() << (truncation / 2));

    // p^b_{j-1}(n) = Σ_t C(n,t) b^t p^0_{j-1}(n-t)
    let free = free_sections_egf(j - 1, n).to_integers()?;
    let row = binomial_row(n as u64);
    let inner = |b: u64| -> BigInt {
        let b = BigInt::from(b);
        (0..=n).map(|t| &row[t] * int_pow(&b, t as u32) * &free[n - t]).sum()
    };

    let mut partial = BigRational::zero();
    for s in 0..truncation {
        let denom = BigInt::one() << (s + 1);
        partial += BigRational::new(inner(u64::from(r) + s as u64), denom);
    }
    let value = partial.round().to_integer();
    let gap = BigRational::from_integer(value.clone()) - &partial;
    debug_assert!(gap.is_positive() && gap < tail_bound);
    Ok((value, TailCertificate { truncation, tail_bound }))
}

fn certify_truncation(r: u32, j: u32, n: usize, cap: usize) -> Result<usize> {
    let exp = 2 * (n as u32 + j + 1);
    let x = |t: usize| BigInt::from(r as usize + t + j as usize);
    // 4 / 2^{⌊S/2⌋} < 1/2 needs S >= 8
    let mut s = 8usize;
    let mut here = int_pow(&x(s), exp);
    while s <= cap {
        let next = int_pow(&x(s + 1), exp);
        let dominated = (BigInt::one() << s) >= here;
        let growing = &here * 2 >= next;
        if dominated && growing {
            return Ok(s);
        }
        s += 1;
        here = next;
    }
    Err(Error::CertificationFailure { cap })
}

/// Last decimal digit, in `0..=9` also for negative values.
pub fn last_digit(v: &BigInt) -> u8 {
    let d = v.mod_floor(&BigInt::from(10));
    u8::try_from(&d).expect("digit")
}

/// Whether `values[n+4] ≡ values[n] (mod 10)` for every `n ≥ offset` the
/// slice covers. `values[i]` is the term of index `i`. At least nine terms
/// from `offset` on are required; shorter inputs are reported as `false`.
pub fn last_digit_cycle_check(values: &[BigInt], offset: usize) -> bool {
    if values.len() < offset + 9 {
        return false;
    }
    (offset..values.len() - 4).all(|n| last_digit(&values[n + 4]) == last_digit(&values[n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn egf_examples() {
        assert_eq!(p_egf(0, 1, 5).values, big(&[1, 1, 3, 13, 75, 541]));
        assert_eq!(p_egf(2, 0, 3).values[3], BigInt::from(8));
        assert_eq!(p_egf(3, 1, 2).values[2], BigInt::from(18));
        assert_eq!(p_egf(0, 2, 2).values[2], BigInt::from(8));
        assert_eq!(p_egf(0, 0, 4).values, big(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn binomial_shift_examples() {
        assert_eq!(p_binomial_shift(3, 1, 2), BigInt::from(18));
        assert_eq!(p_binomial_shift(0, 1, 4), BigInt::from(75));
        assert_eq!(p_binomial_shift(1, 0, 5), BigInt::from(1));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(p_recurrence(0, 1, 3), BigInt::from(13));
        assert_eq!(p_recurrence(3, 1, 0), BigInt::from(1));
        assert_eq!(p_recurrence(2, 2, 2), p_egf(2, 2, 2).values[2]);
    }

    #[test]
    fn series_examples() {
        let (v, cert) = p_series_certified(0, 1, 2).unwrap();
        assert_eq!(v, BigInt::from(3));
        assert!(cert.tail_bound < BigRational::new(1.into(), 2.into()));
        assert_eq!(p_series_certified(2, 1, 1).unwrap().0, BigInt::from(3));
        assert_eq!(p_binomial_shift(2, 1, 1), BigInt::from(3));
        assert_eq!(p_series_certified(0, 1, 0).unwrap().0, BigInt::from(1));
        assert!(matches!(p_series_certified(1, 0, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn certification_fails_when_cap_is_too_small() {
        assert_eq!(certify_truncation(4, 4, 12, 20), Err(Error::CertificationFailure { cap: 20 }));
    }

    #[test]
    fn double_sum_examples() {
        assert_eq!(p_double_sum(0, 1, 2).unwrap(), BigInt::from(3));
        assert_eq!(p_double_sum(0, 1, 0).unwrap(), BigInt::from(1));
        assert_eq!(p_double_sum(1, 2, 2).unwrap(), p_egf(1, 2, 2).values[2]);
        assert!(p_double_sum(1, 0, 2).is_err());
    }

    #[test]
    fn double_sum_inner_terms_are_ordered_surjections() {
        // with j = 1, r = 0 the k-th inner sum is k!·{n brace k}
        let mut ds = DoubleSum { n: 4, memo: HashMap::new() };
        for k in 0..=7u64 {
            let expect = crate::arith::factorial(k) * crate::arith::stirling2(4, k);
            assert_eq!(ds.inner(0, 1, k), expect, "k={k}");
        }
    }

    #[test]
    fn inclusion_exclusion_examples() {
        assert_eq!(p_inclusion_exclusion(1, 1, 3).unwrap(), BigInt::from(1));
        assert_eq!(p_inclusion_exclusion(1, 2, 2).unwrap(), p_egf(1, 1, 2).values[2]);
        // 2·p^1_1(2) − p^2_0(2) = 2·6 − 4
        let v = p_inclusion_exclusion(2, 2, 2).unwrap();
        assert_eq!(v, BigInt::from(8));
        assert_ne!(v, p_egf(2, 0, 2).values[2]);
        assert!(p_inclusion_exclusion(0, 2, 2).is_err());
        assert!(p_inclusion_exclusion(3, 2, 2).is_err());
    }

    #[test]
    fn inclusion_exclusion_is_complement_of_crowded_count() {
        for j in 1..=4 {
            for r in 1..=j {
                let free = p_egf(0, j, 10).values;
                let crowded = p_crowded_sections(r, j, 10).unwrap();
                for n in 0..=10 {
                    assert_eq!(p_inclusion_exclusion(r, j, n).unwrap(), &free[n] - &crowded[n]);
                }
            }
        }
    }

    #[test]
    fn cycle_check_examples() {
        let fubini = p_egf(0, 1, 12).values;
        assert!(last_digit_cycle_check(&fubini, 1));
        let digits: Vec<u8> = fubini[1..=4].iter().map(last_digit).collect();
        assert_eq!(digits, [1, 3, 3, 5]);
        assert!(last_digit_cycle_check(&p_egf(1, 0, 12).values, 1));
        let ramp = big(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(!last_digit_cycle_check(&ramp, 1));
        assert!(!last_digit_cycle_check(&fubini[..5], 1));
    }

    #[test]
    fn last_digit_of_negatives() {
        assert_eq!(last_digit(&BigInt::from(-3)), 7);
        assert_eq!(last_digit(&BigInt::from(-10)), 0);
    }

    #[test]
    fn tables_are_monotone() {
        for r in 0..=4 {
            for j in 0..=4 {
                if r + j == 0 {
                    continue;
                }
                let t = p_egf(r, j, 12);
                assert!(t.values.windows(2).all(|w| w[1] >= w[0]), "r={r} j={j}");
                assert_eq!(t.values[0], BigInt::one());
            }
        }
    }
}
