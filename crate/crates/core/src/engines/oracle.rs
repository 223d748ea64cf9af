//! Brute-force counting oracles.
//!
//! These enumerate the combinatorial objects themselves and share no code
//! with the recurrence or series engines.

use crate::arith::Integer;
use crate::{Error, Result};

/// Largest set size for exhaustive partition enumeration (`B_12` = 4 213 597).
pub const PARTITION_BOUND: usize = 12;
/// Largest size for exhaustive permutation enumeration (`8!` = 40 320).
pub const PERMUTATION_BOUND: usize = 8;

/// Number of set partitions of an `n`-set with exactly `k` blocks, for every `k`.
///
/// Walks all restricted-growth strings `a_0 = 0, a_i <= 1 + max(a_0..a_{i-1})`
/// of length `n` and tallies them by block count.
pub fn set_partition_counts(n: usize) -> Result<Vec<u64>> {
    if n > PARTITION_BOUND {
        return Err(Error::range("n", n, PARTITION_BOUND));
    }
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts[0] = 1;
        return Ok(counts);
    }
    let mut rgs = vec![0usize; n];
    // prefix_max[i] = number of blocks used by rgs[0..=i]
    let mut blocks = vec![1usize; n];
    loop {
        counts[blocks[n - 1]] += 1;
        // Advance to the next restricted-growth string in lexicographic order.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(counts);
            }
            if rgs[i] < blocks[i - 1] {
                rgs[i] += 1;
                blocks[i] = blocks[i - 1].max(rgs[i] + 1);
                for j in i + 1..n {
                    rgs[j] = 0;
                    blocks[j] = blocks[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// `S(n,k)` by enumeration.
pub fn s2_oracle(n: usize, k: usize) -> Result<Integer> {
    let counts = set_partition_counts(n)?;
    Ok(counts.get(k).copied().unwrap_or(0).into())
}

/// Number of permutations of `n` elements with exactly `k` cycles, for every `k`.
pub fn permutation_cycle_counts(n: usize) -> Result<Vec<u64>> {
    if n > PERMUTATION_BOUND {
        return Err(Error::range("n", n, PERMUTATION_BOUND));
    }
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        counts[cycle_count(&perm)] += 1;
        if !next_permutation(&mut perm) {
            return Ok(counts);
        }
    }
}

/// Signed `s(n,k) = (-1)^(n-k) c(n,k)` by enumeration.
pub fn s1_oracle(n: usize, k: usize) -> Result<Integer> {
    let counts = permutation_cycle_counts(n)?;
    let c = Integer::from(counts.get(k).copied().unwrap_or(0));
    Ok(if (n + k) % 2 == 0 { c } else { -c })
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_counts() {
        assert_eq!(set_partition_counts(0).unwrap(), vec![1]);
        assert_eq!(set_partition_counts(1).unwrap(), vec![0, 1]);
        assert_eq!(set_partition_counts(4).unwrap(), vec![0, 1, 7, 6, 1]);
        assert_eq!(s2_oracle(4, 2).unwrap(), 7.into());
        assert_eq!(s2_oracle(3, 3).unwrap(), 1.into());
        assert_eq!(s2_oracle(5, 0).unwrap(), 0.into());
    }

    #[test]
    fn partition_totals_are_bell_numbers() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(set_partition_counts(n).unwrap().iter().sum::<u64>(), *b, "n = {n}");
        }
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutation_cycle_counts(0).unwrap(), vec![1]);
        assert_eq!(permutation_cycle_counts(4).unwrap(), vec![0, 6, 11, 6, 1]);
        assert_eq!(s1_oracle(3, 2).unwrap(), (-3).into());
        assert_eq!(s1_oracle(4, 2).unwrap(), 11.into());
        let total: u64 = permutation_cycle_counts(8).unwrap().iter().sum();
        assert_eq!(total, 40320);
    }

    #[test]
    fn bounds_enforced() {
        assert!(matches!(s2_oracle(13, 2), Err(Error::Range { .. })));
        assert!(s1_oracle(9, 2).is_err());
    }
}
