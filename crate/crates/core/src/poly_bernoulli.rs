//! Poly-Bernoulli numbers, negative-index multi-poly-Bernoulli numbers and
//! the `e^{-m}`-shifted U-numbers.
//!
//! Conventions: a [`MultiIndex`] `(j_1, …, j_b)` with non-negative entries
//! names the negative index `(-j_1, …, -j_b)`. The generating function is
//! `Li_{k_1,…,k_b}(1 - e^{-m}) / (1 - e^{-m})^b`, which for negative indices
//! expands as `Σ_{0<s_1<…<s_b} s_1^{j_1}⋯s_b^{j_b} (1 - e^{-m})^{s_b - b}`.
//! U-numbers multiply that generating function by `e^{-m}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial_row, factorial, pow_i64, sign, stirling2};
use crate::egf::TruncatedEgf;
use crate::error::{Error, Result};

/// Non-negative entries `(j_1, …, j_b)`, `b ≥ 1`, standing for the index
/// `(-j_1, …, -j_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedIndex(String::new()));
        }
        Ok(Self(entries))
    }

    pub fn single(j: u32) -> Self {
        Self(vec![j])
    }

    /// `(j, 0, …, 0)` with `zeros` trailing zeros.
    pub fn with_trailing_zeros(j: u32, zeros: usize) -> Self {
        let mut v = vec![0; zeros + 1];
        v[0] = j;
        Self(v)
    }

    /// `(0, …, 0)` of length `b ≥ 1`.
    pub fn zeros(b: usize) -> Self {
        assert!(b >= 1, "a multi-index has at least one entry");
        Self(vec![0; b])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&j| j == 0)
    }

    /// Every index of depth `1..=max_depth` with entries in `0..=max_entry`,
    /// in lexicographic order within each depth.
    pub fn all_up_to(max_depth: usize, max_entry: u32) -> Vec<MultiIndex> {
        Self::all_in(1..=max_depth, max_entry)
    }

    pub fn all_in(depths: std::ops::RangeInclusive<usize>, max_entry: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for b in depths.filter(|&b| b >= 1) {
            let mut cur = vec![0u32; b];
            loop {
                out.push(MultiIndex(cur.clone()));
                let Some(pos) = cur.iter().rposition(|&e| e < max_entry) else { break };
                cur[pos] += 1;
                cur[pos + 1..].iter_mut().for_each(|e| *e = 0);
            }
        }
        out
    }

    /// The actual Li exponents `(-j_1, …, -j_b)`.
    pub fn exponents(&self) -> Vec<i64> {
        self.0.iter().map(|&j| -i64::from(j)).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<MultiIndex> for String {
    fn from(idx: MultiIndex) -> String {
        idx.to_string()
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::MalformedIndex(s.to_string()))?;
        Self::new(entries).map_err(|_| Error::MalformedIndex(s.to_string()))
    }
}

/// Integer coefficients `μ_0..=μ_j` with
/// `B^{(-j_1,…,-j_b)}_n = Σ_s μ_s (s+b)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuTable {
    pub index: MultiIndex,
    coeffs: Vec<BigInt>,
}

impl MuTable {
    pub fn weight(&self) -> u32 {
        self.index.weight()
    }

    /// `μ_s`; zero above the weight.
    pub fn get(&self, s: usize) -> BigInt {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn build(index: &MultiIndex) -> Self {
        let entries = index.entries();
        // rule I for the first entry
        let j1 = u64::from(entries[0]);
        let mut mu: Vec<BigInt> = (0..=j1)
            .map(|s| factorial(s) * stirling2(j1, s) * sign(s + j1))
            .collect();
        for (pos, &target) in entries.iter().enumerate().skip(1) {
            // rule II: appending a zero keeps the coefficients, depth grows
            let depth = pos as u64 + 1;
            // rule III, once per unit of the new entry
            for _ in 0..target {
                let mut next = vec![BigInt::zero(); mu.len() + 1];
                for (s, slot) in next.iter_mut().enumerate() {
                    let s64 = s as u64;
                    let up = if s >= 1 { BigInt::from(s64 + depth - 1) * &mu[s - 1] } else { BigInt::zero() };
                    let stay = mu.get(s).map(|m| BigInt::from(s64) * m).unwrap_or_default();
                    *slot = up - stay;
                }
                mu = next;
            }
        }
        Self { index: index.clone(), coeffs: mu }
    }
}

static MU_CACHE: RwLock<Option<HashMap<MultiIndex, Arc<MuTable>>>> = RwLock::new(None);

/// The μ coefficients of `idx`, built once per index and shared afterwards.
pub fn mu_table(idx: &MultiIndex) -> Arc<MuTable> {
    if let Some(t) = MU_CACHE.read().expect("mu cache poisoned").as_ref().and_then(|m| m.get(idx)) {
        return Arc::clone(t);
    }
    let built = Arc::new(MuTable::build(idx));
    let mut guard = MU_CACHE.write().expect("mu cache poisoned");
    let map = guard.get_or_insert_with(HashMap::new);
    Arc::clone(map.entry(idx.clone()).or_insert(built))
}

/// Kaneko's poly-Bernoulli number `B^k_n = Σ_{s≤n} (-1)^{n+s} s! {n brace s} / (s+1)^k`.
pub fn poly_bernoulli(k: i64, n: usize) -> BigRational {
    let n64 = n as u64;
    let mut acc = BigRational::zero();
    for s in 0..=n64 {
        let num = factorial(s) * stirling2(n64, s) * sign(n64 + s);
        if num.is_zero() {
            continue;
        }
        acc += power_weight(s as i64 + 1, k) * BigRational::from_integer(num);
    }
    acc
}

/// The expanded form `Σ_s (s+1)^{-k} Σ_{i≤s} C(s,i)(-1)^{s-i}(i-s)^n`, with
/// the outer sum cut at `s = n + 3`. Inner sums vanish for `s > n`.
pub fn poly_bernoulli_expanded(k: i64, n: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for s in 0..=(n as u64 + 3) {
        let row = binomial_row(s);
        let inner: BigInt = (0..=s)
            .map(|i| &row[i as usize] * sign(s - i) * pow_i64(i as i64 - s as i64, n as u32))
            .sum();
        acc += power_weight(s as i64 + 1, k) * BigRational::from_integer(inner);
    }
    acc
}

// base^{-k} as an exact rational
fn power_weight(base: i64, k: i64) -> BigRational {
    let p = pow_i64(base, k.unsigned_abs() as u32);
    if k <= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `B^{(-j_1,…,-j_b)}_n = Σ_{s=1}^{j} μ_s (s+b)^n`; the all-zero index gives `b^n`.
pub fn multi_poly_bernoulli(idx: &MultiIndex, n: usize) -> BigInt {
    let b = idx.depth() as i64;
    if idx.is_zero() {
        return pow_i64(b, n as u32);
    }
    let mu = mu_table(idx);
    (1..mu.coeffs().len())
        .map(|s| &mu.coeffs()[s] * pow_i64(s as i64 + b, n as u32))
        .sum()
}

/// `t ↦ Σ_{0<s_1<…<s_{b-1}<t} s_1^{-k_1}⋯s_{b-1}^{-k_{b-1}} · t^{-k_b}` for
/// `t` in `0..=top`, computed level by level with prefix sums.
pub(crate) fn nested_power_sums(exponents: &[i64], top: usize) -> Vec<BigRational> {
    let mut level: Vec<BigRational> =
        (0..=top).map(|t| if t == 0 { BigRational::zero() } else { power_weight(t as i64, exponents[0]) }).collect();
    for &k in &exponents[1..] {
        let mut next = vec![BigRational::zero(); top + 1];
        let mut prefix = BigRational::zero();
        for t in 0..=top {
            if t > 0 && !prefix.is_zero() {
                next[t] = &prefix * power_weight(t as i64, k);
            }
            prefix += &level[t];
        }
        level = next;
    }
    level
}

/// Independent value of `B^{(-j_1,…,-j_b)}_n` from the Li expansion:
/// `Σ_{0<s_1<…<s_b} s_1^{j_1}⋯s_b^{j_b} · n![m^n](1 - e^{-m})^{s_b - b}`.
/// Only `s_b ≤ n + b` contributes since `(1 - e^{-m})^k = O(m^k)`.
pub fn multi_poly_bernoulli_li_oracle(idx: &MultiIndex, n: usize) -> BigInt {
    let b = idx.depth();
    let weights = nested_power_sums(&idx.exponents(), n + b);
    let one_minus = TruncatedEgf::one(n).sub(&TruncatedEgf::exp_linear(-1, n)).expect("same order");
    let mut power = TruncatedEgf::one(n);
    let mut acc = BigRational::zero();
    for top in b..=n + b {
        let c = power.coeff(n).expect("in range");
        if !c.is_zero() && !weights[top].is_zero() {
            acc += &weights[top] * c;
        }
        power = power.mul(&one_minus).expect("same order");
    }
    assert!(acc.is_integer(), "negative-index Li expansion is integral");
    acc.to_integer()
}

/// `W_r(n) = 2 r^n - (r-1)^n`, the absolute coefficients of `(2 - e^m) e^{-rm}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WFamily {
    base: u32,
}

impl WFamily {
    pub fn new(base: u32) -> Result<Self> {
        if base == 0 {
            return Err(Error::Precondition("W family needs base >= 1".into()));
        }
        Ok(Self { base })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn value(&self, n: usize) -> BigInt {
        let r = i64::from(self.base);
        pow_i64(r, n as u32) * 2 - pow_i64(r - 1, n as u32)
    }
}

pub fn w_family(r: u32, n: usize) -> Result<BigInt> {
    Ok(WFamily::new(r)?.value(n))
}

/// U-number for arbitrary Li exponents `(k_1, …, k_b)`, via the finite sum
/// `(-1)^{n+1} Σ_{s_b=b}^{n+b} Σ_{s_1<…<s_b} (s_1^{k_1}⋯s_b^{k_b})^{-1}
/// (-1)^{s_b-b+1} (s_b-b)! {n+1 brace s_b-b+1}`.
pub fn u_number_exponents(exponents: &[i64], n: usize) -> Result<BigRational> {
    if exponents.is_empty() {
        return Err(Error::MalformedIndex(String::new()));
    }
    let b = exponents.len();
    let weights = nested_power_sums(exponents, n + b);
    let n1 = n as u64 + 1;
    let mut acc = BigRational::zero();
    for top in b..=n + b {
        let k = (top - b) as u64;
        let factor = factorial(k) * stirling2(n1, k + 1) * sign(k + 1);
        if factor.is_zero() || weights[top].is_zero() {
            continue;
        }
        acc += &weights[top] * BigRational::from_integer(factor);
    }
    Ok(acc * BigRational::from_integer(BigInt::from(sign(n1))))
}

/// `U^{(-j_1,…,-j_b)}_n`; an integer for every multi-index.
pub fn u_number(idx: &MultiIndex, n: usize) -> BigRational {
    u_number_exponents(&idx.exponents(), n).expect("multi-index is nonempty")
}

/// `Σ_s C(n,s)(-1)^{n-s} B^{(-j_1,…,-j_b)}_s`, the `e^{-m}` shift applied to
/// the μ-recursion values.
pub fn u_via_shift(idx: &MultiIndex, n: usize) -> BigRational {
    let row = binomial_row(n as u64);
    let v: BigInt = (0..=n)
        .map(|s| &row[s] * sign((n - s) as u64) * multi_poly_bernoulli(idx, s))
        .sum();
    BigRational::from_integer(v)
}

/// `Σ_s C(n,s) B^{(0^{b-1})}_s B^{-j}_{n-s}`, with `B^{(0^0)}_s = [s = 0]`.
pub fn corollary_convolution(j: u32, b: usize, n: usize) -> Result<BigInt> {
    if b == 0 {
        return Err(Error::Precondition("corollary needs b >= 1".into()));
    }
    let row = binomial_row(n as u64);
    let mut acc = BigInt::zero();
    for s in 0..=n {
        let left = if b == 1 {
            if s == 0 { BigInt::one() } else { BigInt::zero() }
        } else {
            multi_poly_bernoulli(&MultiIndex::zeros(b - 1), s)
        };
        if left.is_zero() {
            continue;
        }
        let right = poly_bernoulli(-i64::from(j), n - s);
        debug_assert!(right.is_integer());
        acc += &row[s] * left * right.to_integer();
    }
    Ok(acc)
}

/// Whether `B^{(-j,0^{b-1})}_n` equals [`corollary_convolution`].
pub fn corollary_convolution_check(j: u32, b: usize, n: usize) -> Result<bool> {
    let rhs = corollary_convolution(j, b, n)?;
    Ok(multi_poly_bernoulli(&MultiIndex::with_trailing_zeros(j, b - 1), n) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(idx("2,0,0").entries(), &[2, 0, 0]);
        assert_eq!(idx(" 3 , 1").to_string(), "3,1");
        assert!("".parse::<MultiIndex>().is_err());
        assert!("2,-1".parse::<MultiIndex>().is_err());
        assert!("a".parse::<MultiIndex>().is_err());
        assert!(MultiIndex::new(vec![]).is_err());
    }

    #[test]
    fn enumerates_all_indices() {
        let all = MultiIndex::all_up_to(2, 1);
        let shown: Vec<String> = all.iter().map(|i| i.to_string()).collect();
        assert_eq!(shown, ["0", "1", "0,0", "0,1", "1,0", "1,1"]);
        assert_eq!(MultiIndex::all_up_to(3, 3).len(), 4 + 16 + 64);
    }

    #[test]
    fn poly_bernoulli_examples() {
        assert_eq!(poly_bernoulli(-2, 1), int(4));
        assert_eq!(poly_bernoulli(-2, 2), int(14));
        assert_eq!(poly_bernoulli(-1, 5), int(32));
        assert_eq!(poly_bernoulli(0, 3), int(1));
        // B^1_1 = 1/2, B^1_2 = 1/6 (classical Bernoulli with B_1 = +1/2)
        assert_eq!(poly_bernoulli(1, 1), BigRational::new(1.into(), 2.into()));
        assert_eq!(poly_bernoulli(1, 2), BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn expanded_form_matches_stirling_form() {
        for k in -4..=3 {
            for n in 0..=8 {
                assert_eq!(poly_bernoulli_expanded(k, n), poly_bernoulli(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_table(&idx("1")).coeffs(), &[BigInt::from(0), BigInt::from(1)]);
        let m2 = mu_table(&idx("2"));
        assert_eq!((m2.get(1), m2.get(2)), (BigInt::from(-1), BigInt::from(2)));
        let m20 = mu_table(&idx("2,0"));
        assert_eq!((m20.get(1), m20.get(2)), (BigInt::from(-1), BigInt::from(2)));
        let m00 = mu_table(&idx("0,0"));
        assert_eq!(m00.get(0), BigInt::one());
        assert_eq!(m00.get(1), BigInt::zero());
    }

    #[test]
    fn mu_invariants() {
        for index in MultiIndex::all_up_to(3, 3) {
            let mu = mu_table(&index);
            assert_eq!(mu.coeffs().len() as u32, index.weight() + 1);
            assert_eq!(mu.get(0) == BigInt::one(), index.is_zero(), "{index}");
            if !index.is_zero() {
                assert!(mu.get(0).is_zero());
            }
            assert!(mu.get(index.weight() as usize + 1).is_zero());
        }
    }

    #[test]
    fn rule_one_agrees_with_repeated_rule_three_at_depth_one() {
        for j in 0..=6u32 {
            let mut mu = vec![BigInt::one()];
            for _ in 0..j {
                let mut next = vec![BigInt::zero(); mu.len() + 1];
                for s in 1..next.len() {
                    let stay = mu.get(s).map(|m| BigInt::from(s) * m).unwrap_or_default();
                    next[s] = BigInt::from(s) * &mu[s - 1] - stay;
                }
                mu = next;
            }
            assert_eq!(mu_table(&MultiIndex::single(j)).coeffs(), &mu[..], "j={j}");
        }
    }

    #[test]
    fn multi_poly_bernoulli_examples() {
        assert_eq!(multi_poly_bernoulli(&idx("2,0,0"), 1), BigInt::from(6));
        assert_eq!(multi_poly_bernoulli(&idx("0,0"), 3), BigInt::from(8));
        assert_eq!(multi_poly_bernoulli(&idx("2"), 2), BigInt::from(14));
        // (−1,−1): 3·4^n − 3^n
        for n in 0..6 {
            assert_eq!(multi_poly_bernoulli(&idx("1,1"), n), pow_i64(4, n as u32) * 3 - pow_i64(3, n as u32));
        }
    }

    #[test]
    fn li_oracle_examples() {
        assert_eq!(multi_poly_bernoulli_li_oracle(&idx("2"), 2), BigInt::from(14));
        assert_eq!(
            multi_poly_bernoulli_li_oracle(&idx("1,1"), 1),
            multi_poly_bernoulli(&idx("1,1"), 1)
        );
        assert_eq!(multi_poly_bernoulli_li_oracle(&idx("0"), 4), BigInt::one());
    }

    #[test]
    fn nested_sums_match_tuple_enumeration() {
        let exps = [-2i64, -1, -3];
        let sums = nested_power_sums(&exps, 9);
        for top in 0..=9i64 {
            let mut brute = BigInt::zero();
            for s1 in 1..top {
                for s2 in s1 + 1..top {
                    brute += pow_i64(s1, 2) * pow_i64(s2, 1) * pow_i64(top, 3);
                }
            }
            assert_eq!(sums[top as usize], BigRational::from_integer(brute), "top={top}");
        }
        // positive exponents give reciprocals
        let harmonic = nested_power_sums(&[1], 3);
        assert_eq!(harmonic[3], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn zero_index_is_power_of_depth() {
        for b in 1..=5 {
            for n in 0..=10 {
                let z = MultiIndex::zeros(b);
                assert_eq!(multi_poly_bernoulli(&z, n), pow_i64(b as i64, n as u32));
                assert_eq!(multi_poly_bernoulli_li_oracle(&z, n), pow_i64(b as i64, n as u32));
            }
        }
    }

    #[test]
    fn w_family_examples() {
        assert_eq!(w_family(3, 2).unwrap(), BigInt::from(14));
        assert_eq!(w_family(4, 1).unwrap(), BigInt::from(5));
        assert_eq!(w_family(1, 3).unwrap(), BigInt::from(2));
        assert_eq!(w_family(7, 0).unwrap(), BigInt::one());
        assert!(w_family(0, 3).is_err());
    }

    #[test]
    fn u_number_examples() {
        assert_eq!(u_number(&idx("0"), 2), int(0));
        assert_eq!(u_number(&idx("2"), 1), int(3));
        assert_eq!(u_number(&idx("2"), 0), int(1));
        assert_eq!(u_via_shift(&idx("2"), 2), int(7));
        assert_eq!(u_number(&idx("2"), 2), int(7));
        assert_eq!(u_via_shift(&idx("0,0"), 1), int(1));
        // U_0 = B_0 = 1·2^{j_2}⋯b^{j_b}, which is 1 at depth one
        for i in MultiIndex::all_up_to(3, 2) {
            let b0: i64 = i.entries().iter().enumerate().map(|(p, &e)| (p as i64 + 1).pow(e)).product();
            assert_eq!(u_via_shift(&i, 0), int(b0), "{i}");
            assert_eq!(u_number(&i, 0), int(b0), "{i}");
            if i.depth() == 1 {
                assert_eq!(b0, 1);
            }
        }
    }

    #[test]
    fn u_number_positive_exponents_are_rational() {
        // U^{(1)} = B^{(1)} shifted by e^{-m}
        for n in 0..=6 {
            let row = binomial_row(n as u64);
            let shifted: BigRational = (0..=n)
                .map(|s| BigRational::from_integer(&row[s] * sign((n - s) as u64)) * poly_bernoulli(1, s))
                .sum();
            assert_eq!(u_number_exponents(&[1], n).unwrap(), shifted, "n={n}");
        }
        assert_eq!(u_number_exponents(&[1], 1).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(u_number_exponents(&[], 1).is_err());
    }

    #[test]
    fn corollary_examples() {
        assert!(corollary_convolution_check(2, 2, 1).unwrap());
        assert_eq!(corollary_convolution(2, 2, 1).unwrap(), BigInt::from(5));
        assert!(corollary_convolution_check(0, 3, 2).unwrap());
        assert_eq!(corollary_convolution(0, 3, 2).unwrap(), BigInt::from(9));
        assert!(corollary_convolution_check(2, 1, 2).unwrap());
        assert!(corollary_convolution(2, 0, 2).is_err());
    }
}
