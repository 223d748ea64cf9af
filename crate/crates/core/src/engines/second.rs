//! Engines for Stirling numbers of the second kind `S(n,k)`.

use num_traits::{One, Zero};

use super::{oracle, EngineChoice, Kind, StirlingTable};
use crate::arith::{binom_conventional, binomial, factorial, rat, to_integer, Integer, Rational};
use crate::series::FormalSeries;
use crate::{Error, Result};

fn require(table: &StirlingTable, n: usize) -> Result<()> {
    if table.kind() != Kind::Second {
        return Err(Error::Validation("second-kind engine given a first-kind table".into()));
    }
    if n > table.max_n() {
        return Err(Error::range("n", n, table.max_n()));
    }
    Ok(())
}

fn require_k_le_n(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Validation(format!("need k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Alternating-sum formula `S(n,k) = (1/k!) sum_i (-1)^i C(k,i) (k-i)^n`.
pub fn s2_explicit(n: usize, k: usize) -> Result<Integer> {
    require_k_le_n(n, k)?;
    let mut sum = Integer::zero();
    for i in 0..=k {
        let term = binomial(k as u64, i as u64) * num_traits::pow(Integer::from(k - i), n);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let kf = factorial(k as u32);
    if !(&sum % &kf).is_zero() {
        return Err(Error::Consistency(format!("{k}! does not divide the explicit sum for S({n},{k})")));
    }
    Ok(sum / kf)
}

/// Table lookup; the table itself is built by `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn s2_triangular(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    require(table, n)?;
    require_k_le_n(n, k)?;
    Ok(table.get(n, k)?.clone())
}

/// Diagonal recurrence with the double sum over `l` and `i`, evaluated over
/// the rationals. Values `S(n-k+i, i)` are read from `table`.
pub fn s2_diagonal_full(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    require(table, n)?;
    if k >= n {
        return Err(Error::Validation(format!("need n > k, got n = {n}, k = {k}")));
    }
    let d = n - k;
    let mut sum = Rational::zero();
    // C(k,l) vanishes for l > k, which also keeps every S index within row n.
    for l in 1..=d.min(k) {
        let mut inner = Integer::zero();
        for i in 0..=l {
            let term = binomial((d + l) as u64, (l - i) as u64) * table.get(d + i, i)?;
            if i % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        let mut term = rat(binomial(k as u64, l as u64) * inner, binomial((d + l) as u64, d as u64));
        if l % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    let value = sum * Rational::from_integer(binomial(n as u64, k as u64));
    to_integer(&value)
        .ok_or_else(|| Error::Consistency(format!("diagonal sum for S({n},{k}) is not integral: {value}")))
}

/// Individual summands `(i, term)` of the single-sum diagonal recurrence, each
/// term including its sign and the outer `(-1)^n`, so that the terms add up
/// to `S(n,k)`.
///
/// For `k < n <= 2k` the collapsed binomial `C(i-1, 2k-n-1)` is used, with
/// `C(-1,-1) = 1` at `n = 2k`. For `n > 2k` that binomial would need undefined
/// negative arguments, so the un-collapsed inner alternating sum
/// `sum_{l=0}^{i-(2k-n)} (-1)^l C(i,l)` is evaluated instead.
pub fn s2_diagonal_simplified_terms(table: &StirlingTable, n: usize, k: usize) -> Result<Vec<(usize, Integer)>> {
    require(table, n)?;
    if k == 0 || k >= n {
        return Err(Error::Validation(format!("need n > k >= 1, got n = {n}, k = {k}")));
    }
    let (n_i, k_i) = (n as i64, k as i64);
    let lower = (2 * k_i - n_i).max(0) as usize;
    let mut terms = Vec::with_capacity(k - lower);
    for i in lower..k {
        let s = table.get(n - i, k - i)?;
        let coeff = if n <= 2 * k {
            let c = binomial(n as u64, i as u64) * binom_conventional(i as i64 - 1, 2 * k_i - n_i - 1)?;
            // (-1)^n (-1)^i
            if (n + i) % 2 == 0 {
                c
            } else {
                -c
            }
        } else {
            let top = i as i64 - (2 * k_i - n_i);
            let alternating: Integer = (0..=top)
                .map(|l| {
                    let c = binom_conventional(i as i64, l).expect("non-negative arguments");
                    if l % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum();
            binomial(n as u64, i as u64) * alternating
        };
        terms.push((i, coeff * s));
    }
    Ok(terms)
}

/// Single-sum diagonal recurrence; see [`s2_diagonal_simplified_terms`].
pub fn s2_diagonal_simplified(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    Ok(s2_diagonal_simplified_terms(table, n, k)?.into_iter().map(|(_, t)| t).sum())
}

/// [`s2_diagonal_simplified`] plus a comparison against the table.
pub fn s2_diagonal_simplified_checked(table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    let v = s2_diagonal_simplified(table, n, k)?;
    let expected = table.get(n, k)?;
    if &v != expected {
        return Err(Error::Consistency(format!("diagonal recurrence gives S({n},{k}) = {v}, table has {expected}")));
    }
    Ok(v)
}

/// `[S(n,k)]_{n=k..=n_max}` read off the truncated series `(e^x-1)^k / k!`.
pub fn s2_egf(k: usize, n_max: usize) -> Result<Vec<Integer>> {
    if n_max < k {
        return Err(Error::Validation(format!("need n_max >= k, got n_max = {n_max}, k = {k}")));
    }
    let series = FormalSeries::exp_minus_one(n_max)
        .pow(k)
        .scale(&rat(1, factorial(k as u32)));
    egf_values(&series, k, "S")
}

pub(crate) fn egf_values(series: &FormalSeries, k: usize, symbol: &str) -> Result<Vec<Integer>> {
    for n in 0..k {
        if !series.coeff(n).is_zero() {
            return Err(Error::Consistency(format!("x^{n} coefficient of the k = {k} series is nonzero")));
        }
    }
    (k..=series.order())
        .map(|n| {
            let v = series.derivative_at_zero(n);
            to_integer(&v).ok_or_else(|| Error::Consistency(format!("{symbol}({n},{k}) from series is {v}, not an integer")))
        })
        .collect()
}

pub fn s2_oracle(n: usize, k: usize) -> Result<Integer> {
    require_k_le_n(n, k)?;
    oracle::s2_oracle(n, k)
}

/// `S(n,k)` from the chosen engine. Engines that need stored values read them from `table`.
pub fn s2_by(engine: EngineChoice, table: &StirlingTable, n: usize, k: usize) -> Result<Integer> {
    match engine {
        EngineChoice::Explicit => s2_explicit(n, k),
        EngineChoice::Triangular => s2_triangular(table, n, k),
        EngineChoice::DiagonalFull => s2_diagonal_full(table, n, k),
        EngineChoice::DiagonalSimplified => s2_diagonal_simplified(table, n, k),
        EngineChoice::Egf => Ok(s2_egf(k, n)?.pop().expect("n >= k")),
        EngineChoice::Oracle => s2_oracle(n, k),
    }
}

/// Bell number `B_n = sum_k S(n,k)`, cross-checked against
/// `B_{m+1} = sum_i C(m,i) B_i`.
pub fn bell_number_rowsum(table: &StirlingTable, n: usize) -> Result<Integer> {
    require(table, n)?;
    let rowsum: Integer = table.row(n)?.iter().sum();
    let recurrence = bell_numbers(n).pop().expect("nonempty");
    if rowsum != recurrence {
        return Err(Error::Consistency(format!("row sum {rowsum} != Bell recurrence {recurrence} at n = {n}")));
    }
    Ok(rowsum)
}

/// `B_0..=B_n` from the binomial Bell recurrence.
pub fn bell_numbers(n: usize) -> Vec<Integer> {
    let mut bell = vec![Integer::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| binomial(m as u64, i as u64) * &bell[i]).sum();
        bell.push(next);
    }
    bell
}
