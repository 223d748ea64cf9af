//! Engines for signed Stirling numbers of the first kind `s(n,k)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::second::egf_values;
use super::{oracle, Kind, StirlingTable};
use crate::arith::{binom_conventional, factorial, rat, Integer};
use crate::series::FormalSeries;
use crate::{Error, Result};

fn require(table: &StirlingTable, n: usize) -> Result<()> {
    if table.kind() != Kind::First {
        return Err(Error::Validation("first-kind engine given a second-kind table".into()));
    }
    if n > table.max_n() {
        return Err(Error::range("n", n, table.max_n()));
    }
    Ok(())
}

/// Table lookup; the table is built by `s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)`.
pub fn s1_triangular(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    require(table, n)?;
    if k > n {
        return Err(Error::Validation(format!("need k <= n, got n = {n}, k = {k}")));
    }
    Ok(table.get(n, k)?.clone())
}

/// `[s(n,k)]_{n=k..=n_max}` from the truncated series `ln(1+x)^k / k!`.
pub fn s1_egf(k: usize, n_max: usize) -> Result<Vec<Integer>> {
    if n_max < k {
        return Err(Error::Validation(format!("need n_max >= k, got n_max = {n_max}, k = {k}")));
    }
    let series = FormalSeries::log_one_plus(n_max)
        .pow(k)
        .scale(&rat(1, factorial(k as u32)));
    egf_values(&series, k, "s")
}

pub fn s1_oracle(n: usize, k: usize) -> Result<Integer> {
    oracle::s1_oracle(n, k)
}

/// Evaluates the double-sum diagonal relation
/// `s(n,k) = sum_{m=1}^{n} sum_{l=k-m}^{k-1} (-1)^(k+m-l) C(n,l) C(l,k-m) s(n-l,k-l)`
/// term by term.
///
/// The `m = k, l = 0` summand is `s(n,k)` itself, and for every `l >= 1` the
/// coefficients of `s(n-l,k-l)` sum to `(-1)^l sum_j (-1)^j C(l,j) = 0`. The
/// relation therefore holds for any array of values in place of `s`; it is
/// evaluated verbatim and compared with the table as a check on the summation,
/// never as a way to compute `s(n,k)`.
pub fn s1_diagonal_double(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    require(table, n)?;
    if k == 0 || k > n {
        return Err(Error::Validation(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let mut sum = Integer::zero();
    for m in 1..=n_i {
        for l in (k_i - m)..k_i {
            let outer = binom_conventional(n_i, l)?;
            // C(n,l) = 0 for l < 0; the other factors are then never needed.
            if outer.is_zero() {
                continue;
            }
            let term = outer * binom_conventional(l, k_i - m)? * table.get(n - l as usize, k - l as usize)?;
            if (k_i + m - l) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    let expected = table.get(n, k)?;
    if &sum != expected {
        return Err(Error::Consistency(format!("double diagonal sum gives s({n},{k}) = {sum}, table has {expected}")));
    }
    Ok(sum)
}

/// How binomials outside the three defining conventions are treated by
/// [`s1_diagonal_compact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinomialConvention {
    /// Only `C(0,0) = 1`, `C(-1,-1) = 1` and `C(p,q) = 0` for `p >= 0 > q`.
    /// Any other negative-argument binomial is taken as zero and counted.
    StrictEq5,
    /// Additionally `C(-1,j) = (-1)^j` for `j >= 0` and `C(a,b) = 0` for `b < 0`
    /// (except `C(-1,-1) = 1`). Upper arguments below `-1` remain undefined.
    PascalExtension,
}

impl fmt::Display for BinomialConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinomialConvention::StrictEq5 => "strict-eq5",
            BinomialConvention::PascalExtension => "pascal-extension",
        })
    }
}

impl BinomialConvention {
    /// Returns the value and whether it lay outside the defining conventions.
    fn eval(self, p: i64, q: i64) -> Result<(Integer, bool)> {
        if let Ok(v) = binom_conventional(p, q) {
            return Ok((v, false));
        }
        match self {
            BinomialConvention::StrictEq5 => Ok((Integer::zero(), true)),
            BinomialConvention::PascalExtension => {
                if q < 0 {
                    Ok((Integer::zero(), true))
                } else if p == -1 {
                    Ok((if q % 2 == 0 { 1 } else { -1 }.into(), true))
                } else {
                    Err(Error::Domain { p, q })
                }
            }
        }
    }
}

/// Outcome of evaluating the compact first-kind diagonal relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactComparison {
    pub n: usize,
    pub k: usize,
    pub convention: BinomialConvention,
    /// Value of the compact sum.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub sum: Integer,
    /// `s(n,k)` from the table.
    #[serde(serialize_with = "crate::report::as_decimal")]
    pub table_value: Integer,
    pub matches: bool,
    /// Number of binomials that had no value under the defining conventions
    /// and were supplied by `convention`.
    pub extended_binomials: usize,
}

/// Evaluates `(-1)^(n-k) sum_{l=0}^{k-1} (-1)^l C(n,l) C(l-1,k-n-1) s(n-l,k-l)`
/// under `convention` and compares it with the table.
///
/// For `n > k` the lower index `k-n-1` is at most `-2`, which the defining
/// conventions do not cover at `l = 0`; the result is therefore reported, not
/// asserted.
pub fn s1_diagonal_compact(
    table: &StirlingTable,
    n: usize,
    k: usize,
    convention: BinomialConvention,
) -> Result<CompactComparison> {
    require(table, n)?;
    if k == 0 || k > n {
        return Err(Error::Validation(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let mut sum = Integer::zero();
    let mut extended = 0;
    for l in 0..k_i {
        let (lower, was_extended) = convention.eval(l - 1, k_i - n_i - 1)?;
        extended += usize::from(was_extended);
        let term = binom_conventional(n_i, l)? * lower * table.get(n - l as usize, k - l as usize)?;
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if (n - k) % 2 == 1 {
        sum = -sum;
    }
    let table_value = table.get(n, k)?.clone();
    Ok(CompactComparison {
        n,
        k,
        convention,
        matches: sum == table_value,
        sum,
        table_value,
        extended_binomials: extended,
    })
}

/// `sum_k s(n,k)`, which is zero for `n >= 2`.
pub fn alternating_row_sum(table: &StirlingTable, n: usize) -> Result<Integer> {
    require(table, n)?;
    Ok(table.row(n)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn table() -> StirlingTable {
        StirlingTable::first(12)
    }

    #[test]
    fn triangular_examples() {
        let t = table();
        assert_eq!(s1_triangular(&t, 3, 2).unwrap(), int(-3));
        assert_eq!(s1_triangular(&t, 4, 2).unwrap(), int(11));
        assert_eq!(s1_triangular(&t, 5, 5).unwrap(), int(1));
        assert!(s1_triangular(&StirlingTable::second(4), 3, 2).is_err());
    }

    #[test]
    fn egf_examples() {
        assert_eq!(s1_egf(1, 4).unwrap(), vec![int(1), int(-1), int(2), int(-6)]);
        assert_eq!(s1_egf(3, 3).unwrap(), vec![int(1)]);
        assert_eq!(s1_egf(2, 3).unwrap(), vec![int(1), int(-3)]);
    }

    #[test]
    fn diagonal_double_examples() {
        let t = table();
        assert_eq!(s1_diagonal_double(&t, 3, 2).unwrap(), int(-3));
        assert_eq!(s1_diagonal_double(&t, 2, 1).unwrap(), int(-1));
        assert_eq!(s1_diagonal_double(&t, 1, 1).unwrap(), int(1));
        assert!(s1_diagonal_double(&t, 3, 0).is_err());
    }

    #[test]
    fn diagonal_double_holds_for_any_array() {
        // Off-diagonal coefficients cancel, so corrupting s(n-l,k-l) for l >= 1 changes nothing.
        let t = table().with_entry(2, 1, int(1)).with_entry(5, 3, int(-1000)).with_entry(6, 2, int(7));
        assert_eq!(s1_diagonal_double(&t, 3, 2).unwrap(), int(-3));
        assert_eq!(s1_diagonal_double(&t, 8, 5).unwrap(), t.get(8, 5).unwrap().clone());
    }

    #[test]
    fn compact_on_the_diagonal_matches() {
        let t = table();
        for convention in [BinomialConvention::StrictEq5, BinomialConvention::PascalExtension] {
            let r = s1_diagonal_compact(&t, 3, 3, convention).unwrap();
            assert!(r.matches, "{convention}");
            assert_eq!(r.sum, int(1));
            assert_eq!(r.extended_binomials, 0);
        }
    }

    #[test]
    fn compact_below_the_diagonal_degenerates() {
        let t = table();
        let strict = s1_diagonal_compact(&t, 3, 2, BinomialConvention::StrictEq5).unwrap();
        assert_eq!(strict.sum, int(0));
        assert_eq!(strict.table_value, int(-3));
        assert!(!strict.matches);
        assert_eq!(strict.extended_binomials, 1);

        let pascal = s1_diagonal_compact(&t, 2, 1, BinomialConvention::PascalExtension).unwrap();
        assert_eq!(pascal.table_value, int(-1));
        assert_eq!(pascal.sum, int(0));
        assert!(!pascal.matches);
    }

    #[test]
    fn alternating_row_sums_vanish() {
        let t = table();
        assert_eq!(alternating_row_sum(&t, 0).unwrap(), int(1));
        assert_eq!(alternating_row_sum(&t, 1).unwrap(), int(1));
        for n in 2..=12 {
            assert_eq!(alternating_row_sum(&t, n).unwrap(), int(0));
        }
    }
}
