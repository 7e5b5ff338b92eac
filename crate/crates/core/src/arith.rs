//! Exact integer primitives: binomial coefficients, Stirling numbers of the
//! second kind and integer powers.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

pub use num_bigint::BigInt as BigInteger;
pub use num_rational::BigRational;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc is C(n, i) here
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    row.push(acc.clone());
    for i in 0..n {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        row.push(acc.clone());
    }
    row
}

/// Exact power with `0^0 = 1`.
pub fn int_pow(base: &BigInt, exp: u32) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    Pow::pow(base, exp)
}

/// Convenience wrapper over [`int_pow`] for machine-sized bases.
pub fn pow_i64(base: i64, exp: u32) -> BigInt {
    int_pow(&BigInt::from(base), exp)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

static STIRLING2: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

/// Stirling number of the second kind `{n brace k}`: the number of ways to
/// partition an `n`-set into `k` nonempty blocks.
///
/// Rows are computed by the triangle recurrence and kept for the lifetime of
/// the process. Rows are only ever appended, so a reader either sees a row in
/// full or extends the table itself.
pub fn stirling2(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    {
        let table = STIRLING2.read().expect("stirling table poisoned");
        if let Some(row) = table.get(n) {
            return row[k].clone();
        }
    }
    let mut table = STIRLING2.write().expect("stirling table poisoned");
    if table.is_empty() {
        table.push(vec![BigInt::one()]);
    }
    while table.len() <= n {
        let m = table.len();
        let prev = &table[m - 1];
        let mut row = vec![BigInt::zero(); m + 1];
        for (i, slot) in row.iter_mut().enumerate().skip(1) {
            let stay = if i < m { &prev[i] * BigInt::from(i) } else { BigInt::zero() };
            *slot = stay + &prev[i - 1];
        }
        table.push(row);
    }
    table[n][k].clone()
}

/// `Σ_k k!·{n brace k}`, the number of ordered set partitions of an `n`-set.
pub fn fubini(n: u64) -> BigInt {
    (0..=n).map(|k| factorial(k) * stirling2(n, k)).sum()
}

/// `(-1)^e` as a small integer.
pub(crate) fn sign(e: u64) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
