//! Ground truth by explicit construction of barred preferential arrangements.
//!
//! Elements are first assigned to sections (a base-`k` counter over the
//! elements), then each free section's elements are arranged into every
//! ordered set partition. A restricted section holding elements forms a
//! single block; an empty section, restricted or free, has no blocks.
//! Nothing here uses Stirling numbers or generating functions.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest set size the enumerators accept.
pub const MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    /// At most one block.
    Restricted,
    /// Any preferential arrangement.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    pub kind: SectionKind,
    /// Ordered blocks, each sorted ascending.
    pub blocks: Vec<Vec<u32>>,
}

/// One barred preferential arrangement of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RbpaStructure {
    pub sections: Vec<Section>,
}

impl RbpaStructure {
    /// Checks the structural invariants: restricted sections carry at most
    /// one block, blocks are nonempty, and the blocks exactly cover `1..=n`.
    pub fn is_valid(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for sec in &self.sections {
            if sec.kind == SectionKind::Restricted && sec.blocks.len() > 1 {
                return false;
            }
            for block in &sec.blocks {
                if block.is_empty() {
                    return false;
                }
                for &e in block {
                    let Some(slot) = (e as usize).checked_sub(1).and_then(|i| seen.get_mut(i)) else {
                        return false;
                    };
                    if *slot {
                        return false;
                    }
                    *slot = true;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::SizeLimit { n, limit: MAX_N })
    } else {
        Ok(())
    }
}

/// `r` restricted sections followed by `j` free ones.
pub fn standard_layout(r: usize, j: usize) -> Vec<SectionKind> {
    let mut kinds = vec![SectionKind::Restricted; r];
    kinds.extend(std::iter::repeat_n(SectionKind::Free, j));
    kinds
}

/// Calls `f` with every ordered set partition of `elems`.
fn for_each_ordered_partition(elems: &[u32], f: &mut dyn FnMut(&[Vec<u32>])) {
    fn go(rest: &[u32], acc: &mut Vec<Vec<u32>>, f: &mut dyn FnMut(&[Vec<u32>])) {
        if rest.is_empty() {
            f(acc);
            return;
        }
        let m = rest.len();
        for mask in 1u32..(1 << m) {
            let (block, remain): (Vec<u32>, Vec<u32>) = {
                let mut block = Vec::new();
                let mut remain = Vec::new();
                for (i, &e) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        block.push(e);
                    } else {
                        remain.push(e);
                    }
                }
                (block, remain)
            };
            acc.push(block);
            go(&remain, acc, f);
            acc.pop();
        }
    }
    go(elems, &mut Vec::new(), f);
}

// Ordered set partition counts of an m-set for m ≤ MAX_N, by generation.
fn ordered_partition_counts() -> &'static [u64] {
    static COUNTS: OnceLock<Vec<u64>> = OnceLock::new();
    COUNTS.get_or_init(|| {
        (0..=MAX_N as u32)
            .map(|m| {
                let elems: Vec<u32> = (1..=m).collect();
                let mut count = 0u64;
                for_each_ordered_partition(&elems, &mut |_| count += 1);
                count
            })
            .collect()
    })
}

/// Calls `f` with the section of every element, for all `k^n` assignments.
fn for_each_assignment(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        if n == 0 {
            f(&[]);
        }
        return;
    }
    let mut digits = vec![0usize; n];
    loop {
        f(&digits);
        let Some(pos) = digits.iter().rposition(|&d| d + 1 < k) else { return };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

/// Number of arrangements of `{1..n}` over sections of the given kinds,
/// without materializing them.
pub fn count_arrangements(n: usize, kinds: &[SectionKind]) -> Result<BigInt> {
    guard(n)?;
    let fubini = ordered_partition_counts();
    let mut total = 0u128;
    let mut sizes = vec![0usize; kinds.len()];
    for_each_assignment(n, kinds.len(), |assign| {
        sizes.iter_mut().for_each(|s| *s = 0);
        for &sec in assign {
            sizes[sec] += 1;
        }
        let ways: u128 = kinds
            .iter()
            .zip(&sizes)
            .map(|(kind, &m)| match kind {
                SectionKind::Restricted => 1,
                SectionKind::Free => u128::from(fubini[m]),
            })
            .product();
        total += ways;
    });
    Ok(BigInt::from(total))
}

/// Every arrangement of `{1..n}` over sections of the given kinds.
pub fn arrangements(n: usize, kinds: &[SectionKind]) -> Result<Vec<RbpaStructure>> {
    guard(n)?;
    let mut out = Vec::new();
    for_each_assignment(n, kinds.len(), |assign| {
        let members: Vec<Vec<u32>> = (0..kinds.len())
            .map(|sec| (1..=n as u32).filter(|&e| assign[e as usize - 1] == sec).collect())
            .collect();
        let mut partial: Vec<Vec<Section>> = vec![Vec::new()];
        for (kind, elems) in kinds.iter().zip(&members) {
            let options: Vec<Vec<Vec<u32>>> = match kind {
                SectionKind::Restricted if elems.is_empty() => vec![vec![]],
                SectionKind::Restricted => vec![vec![elems.clone()]],
                SectionKind::Free => {
                    let mut opts = Vec::new();
                    for_each_ordered_partition(elems, &mut |p| opts.push(p.to_vec()));
                    opts
                }
            };
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |blocks| {
                        let mut next = prefix.clone();
                        next.push(Section { kind: *kind, blocks: blocks.clone() });
                        next
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|sections| RbpaStructure { sections }));
    });
    Ok(out)
}

/// Number of arrangements satisfying `pred`, by materializing all of them.
pub fn count_where(n: usize, kinds: &[SectionKind], pred: impl Fn(&RbpaStructure) -> bool) -> Result<BigInt> {
    Ok(BigInt::from(arrangements(n, kinds)?.iter().filter(|s| pred(s)).count()))
}

/// `|G^r_j(n)|`: arrangements of `{1..n}` with `r` restricted sections
/// followed by `j` free sections.
pub fn enumerate_rbpa(n: usize, r: usize, j: usize) -> Result<BigInt> {
    count_arrangements(n, &standard_layout(r, j))
}

/// Ordered set partitions of `{1..n}`.
pub fn enumerate_preferential_arrangements(n: usize) -> Result<BigInt> {
    guard(n)?;
    Ok(BigInt::from(ordered_partition_counts()[n]))
}

/// All-restricted arrangements with `bars + 1` sections in which section `i`
/// or section `jj` (1-based) receives no element.
pub fn enumerate_rbpa_with_empty(n: usize, bars: usize, i: usize, jj: usize) -> Result<BigInt> {
    guard(n)?;
    let sections = bars + 1;
    if i == jj || !(1..=sections).contains(&i) || !(1..=sections).contains(&jj) {
        return Err(Error::Precondition(format!(
            "need distinct sections in 1..={sections}, got {i} and {jj}"
        )));
    }
    let mut count = BigInt::zero();
    for_each_assignment(n, sections, |assign| {
        let hits = |sec: usize| assign.iter().any(|&a| a + 1 == sec);
        if !hits(i) || !hits(jj) {
            count += 1;
        }
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, pow_i64, stirling2};
    use std::collections::HashSet;

    #[test]
    fn rbpa_examples() {
        assert_eq!(enumerate_rbpa(0, 2, 3).unwrap(), BigInt::from(1));
        assert_eq!(enumerate_rbpa(3, 0, 1).unwrap(), BigInt::from(13));
        assert_eq!(enumerate_rbpa(2, 0, 2).unwrap(), BigInt::from(8));
        assert_eq!(enumerate_rbpa(2, 3, 1).unwrap(), BigInt::from(18));
        assert_eq!(enumerate_rbpa(0, 0, 0).unwrap(), BigInt::from(1));
        assert_eq!(enumerate_rbpa(3, 0, 0).unwrap(), BigInt::from(0));
        assert!(matches!(enumerate_rbpa(10, 0, 1), Err(Error::SizeLimit { n: 10, limit: 9 })));
    }

    #[test]
    fn preferential_arrangement_examples() {
        assert_eq!(enumerate_preferential_arrangements(0).unwrap(), BigInt::from(1));
        assert_eq!(enumerate_preferential_arrangements(2).unwrap(), BigInt::from(3));
        assert_eq!(enumerate_preferential_arrangements(4).unwrap(), BigInt::from(75));
        assert!(enumerate_preferential_arrangements(12).is_err());
    }

    #[test]
    fn ordered_partitions_agree_with_stirling_row_sums() {
        for n in 0..=8usize {
            let row_sum: BigInt = (0..=n as u64).map(|k| factorial(k) * stirling2(n as u64, k)).sum();
            assert_eq!(enumerate_preferential_arrangements(n).unwrap(), row_sum);
            assert_eq!(enumerate_rbpa(n, 0, 1).unwrap(), row_sum);
        }
    }

    #[test]
    fn restricted_only_is_power() {
        for n in 0..=6 {
            for r in 0..=4 {
                assert_eq!(enumerate_rbpa(n, r, 0).unwrap(), pow_i64(r as i64, n as u32));
            }
        }
    }

    #[test]
    fn with_empty_examples() {
        // 3 bars = 4 sections; one element lands in one section, so section
        // 1 or 2 is always empty
        assert_eq!(enumerate_rbpa_with_empty(1, 3, 1, 2).unwrap(), BigInt::from(4));
        // 16 assignments minus the 2 that fill both sections 1 and 2
        assert_eq!(enumerate_rbpa_with_empty(2, 3, 1, 2).unwrap(), BigInt::from(14));
        assert_eq!(enumerate_rbpa_with_empty(0, 5, 2, 6).unwrap(), BigInt::from(1));
        assert!(enumerate_rbpa_with_empty(1, 3, 2, 2).is_err());
        assert!(enumerate_rbpa_with_empty(1, 3, 0, 2).is_err());
        assert!(enumerate_rbpa_with_empty(1, 3, 1, 5).is_err());
        assert!(enumerate_rbpa_with_empty(10, 3, 1, 2).is_err());
    }

    #[test]
    fn with_empty_is_position_invariant() {
        for bars in 1..=4 {
            for n in 0..=5 {
                let reference = enumerate_rbpa_with_empty(n, bars, 1, 2).unwrap();
                for i in 1..=bars + 1 {
                    for jj in 1..=bars + 1 {
                        if i != jj {
                            assert_eq!(enumerate_rbpa_with_empty(n, bars, i, jj).unwrap(), reference);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generator_has_no_duplicates_and_valid_structures() {
        for n in 0..=5 {
            for (r, j) in [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (3, 0)] {
                let all = arrangements(n, &standard_layout(r, j)).unwrap();
                assert!(all.iter().all(|s| s.is_valid(n)));
                let distinct: HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len(), "n={n} r={r} j={j}");
                assert_eq!(BigInt::from(all.len()), enumerate_rbpa(n, r, j).unwrap());
            }
        }
    }

    #[test]
    fn invalid_structures_are_rejected() {
        let restricted_two_blocks = RbpaStructure {
            sections: vec![Section { kind: SectionKind::Restricted, blocks: vec![vec![1], vec![2]] }],
        };
        assert!(!restricted_two_blocks.is_valid(2));
        let missing = RbpaStructure {
            sections: vec![Section { kind: SectionKind::Free, blocks: vec![vec![1]] }],
        };
        assert!(!missing.is_valid(2));
        let repeated = RbpaStructure {
            sections: vec![Section { kind: SectionKind::Free, blocks: vec![vec![1], vec![1, 2]] }],
        };
        assert!(!repeated.is_valid(2));
    }

    #[test]
    fn restricted_placement_does_not_matter() {
        use SectionKind::*;
        let layouts = [
            vec![Restricted, Restricted, Free, Free],
            vec![Free, Restricted, Free, Restricted],
            vec![Free, Free, Restricted, Restricted],
        ];
        for n in 0..=5 {
            let counts: Vec<BigInt> = layouts.iter().map(|l| count_arrangements(n, l).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]), "n={n}");
        }
    }
}
