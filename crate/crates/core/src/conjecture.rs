//! Nested log-concavity defects of the second-kind triangle.
//!
//! `D_1(n,k) = S(n,k-1)^2 - S(n,k-2) S(n,k)` and
//! `D_{l+1}(n,k) = D_l(n,k-1)^2 - D_l(n,k-2) D_l(n,k)`, with `S(n,j) = 0` for
//! `j < 0` so that every level is defined for all `n >= k >= 0`. The ratio
//! `R_l(n,k) = D_{l+1}(n,k) / D_l(n,k)` is the normalised growth quantity.
//!
//! [`check_theorem3`] and [`check_suffice_inequality`] cover the proven
//! statement that `D_1` increases along diagonals. [`sweep_conjecture`]
//! probes the six open claims and reports what it finds without asserting
//! anything except the proven `claim 3, l = 1` case.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{show, Integer, Rational};
use crate::engines::{Kind, StirlingTable};
use crate::report::{fields, Check, Fields, VerificationReport};
use crate::{Error, Result};

fn require(table: &StirlingTable, n: usize) -> Result<()> {
    if table.kind() != Kind::Second {
        return Err(Error::Validation("expected a second-kind table".into()));
    }
    if n > table.max_n() {
        return Err(Error::range("n", n, table.max_n()));
    }
    Ok(())
}

fn quadratic_step(prev: &[Integer]) -> Vec<Integer> {
    // prev[j] holds the previous level at column offset j; the result at
    // offset j corresponds to prev offset j + 2.
    (2..prev.len())
        .map(|j| &prev[j - 1] * &prev[j - 1] - &prev[j - 2] * &prev[j])
        .collect()
}

/// `D_level(n,k)`, reading only `S(n, k-2*level ..= k)`.
pub fn frak_s(table: &StirlingTable, level: usize, n: usize, k: usize) -> Result<Integer> {
    if level == 0 {
        return Err(Error::Validation("level must be at least 1".into()));
    }
    require(table, n)?;
    let lo = k as i64 - 2 * level as i64;
    let mut window: Vec<Integer> = (lo..=k as i64)
        .map(|j| table.value(n, j).cloned())
        .collect::<Result<_>>()?;
    for _ in 0..level {
        window = quadratic_step(&window);
    }
    Ok(window.pop().expect("one value remains"))
}

/// `R_level(n,k)`, or the numerator when the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptS {
    Defined(Rational),
    ZeroDenominator { numerator: Integer },
}

impl ScriptS {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            ScriptS::Defined(r) => Some(r),
            ScriptS::ZeroDenominator { .. } => None,
        }
    }
}

impl fmt::Display for ScriptS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptS::Defined(r) => f.write_str(&show(r)),
            ScriptS::ZeroDenominator { numerator } => write!(f, "{numerator}/0"),
        }
    }
}

pub fn script_s(table: &StirlingTable, level: usize, n: usize, k: usize) -> Result<ScriptS> {
    if k > n || k < level + 2 {
        return Err(Error::Validation(format!("need n >= k >= l + 2, got l = {level}, n = {n}, k = {k}")));
    }
    let num = frak_s(table, level + 1, n, k)?;
    let den = frak_s(table, level, n, k)?;
    Ok(if den.is_zero() {
        ScriptS::ZeroDenominator { numerator: num }
    } else {
        ScriptS::Defined(Rational::new(num, den))
    })
}

/// All `D_l(n,k)` for `1 <= l <= max_level`, `0 <= k <= n <= max_n`.
#[derive(Clone, Debug)]
pub struct FrakGrid {
    // levels[l][n][k], with levels[0] = S
    levels: Vec<Vec<Vec<Integer>>>,
}

impl FrakGrid {
    pub fn build(table: &StirlingTable, max_level: usize, max_n: usize) -> Result<Self> {
        require(table, max_n)?;
        let mut levels = vec![(0..=max_n).map(|n| table.row(n).map(<[_]>::to_vec)).collect::<Result<Vec<_>>>()?];
        for l in 1..=max_level {
            let prev = &levels[l - 1];
            let next = prev
                .iter()
                .map(|row| {
                    let zero = Integer::zero();
                    let at = |j: i64| if j < 0 { &zero } else { &row[j as usize] };
                    (0..row.len() as i64)
                        .map(|j| at(j - 1) * at(j - 1) - at(j - 2) * at(j))
                        .collect()
                })
                .collect();
            levels.push(next);
        }
        Ok(FrakGrid { levels })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn max_n(&self) -> usize {
        self.levels[0].len() - 1
    }

    pub fn get(&self, level: usize, n: usize, k: usize) -> &Integer {
        &self.levels[level][n][k]
    }

    fn script(&self, level: usize, n: usize, k: usize) -> ScriptS {
        let den = self.get(level, n, k);
        let num = self.get(level + 1, n, k).clone();
        if den.is_zero() {
            ScriptS::ZeroDenominator { numerator: num }
        } else {
            ScriptS::Defined(Rational::new(num, den.clone()))
        }
    }
}

/// `D_1(n+m, k+m) < D_1(n+m+1, k+m+1)` for `0 <= m < m_max`.
pub fn check_theorem3(table: &StirlingTable, n: usize, k: usize, m_max: usize) -> Result<VerificationReport> {
    if k < 2 || k > n {
        return Err(Error::Validation(format!("need n >= k >= 2, got n = {n}, k = {k}")));
    }
    require(table, n + m_max)?;
    let mut report = VerificationReport::new("diagonal-monotonicity");
    for m in 0..m_max {
        let here = frak_s(table, 1, n + m, k + m)?;
        let next = frak_s(table, 1, n + m + 1, k + m + 1)?;
        report.push(Check::new(
            here < next,
            fields([("n", n), ("k", k), ("m", m)]),
            fields([("current", here.to_string()), ("next", next.to_string())]),
        ));
    }
    Ok(report)
}

/// The sufficient condition used to prove the diagonal monotonicity:
/// `(S(n+1,k-1) S(n+1,k+1) - S(n,k-1) S(n,k)) / S(n+1,k)^2 <= (n+2)(n-k+1) / ((n+1)(n-k+2))`.
pub fn check_suffice_inequality(table: &StirlingTable, n: usize, k: usize) -> Result<Check> {
    if k < 2 || k > n {
        return Err(Error::Validation(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    require(table, n + 1)?;
    let s = |row: usize, col: usize| table.get(row, col);
    let numerator = s(n + 1, k - 1)? * s(n + 1, k + 1)? - s(n, k - 1)? * s(n, k)?;
    let lhs = Rational::new(numerator, s(n + 1, k)? * s(n + 1, k)?);
    let rhs = Rational::new(((n + 2) * (n - k + 1)).into(), ((n + 1) * (n - k + 2)).into());
    Ok(Check::new(
        lhs <= rhs,
        fields([("n", n), ("k", k)]),
        fields([("lhs", show(&lhs)), ("rhs", show(&rhs))]),
    ))
}

/// Index ranges intersected with each claim's own domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRange {
    pub n_max: usize,
    pub k_max: usize,
    pub ell_max: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    VerifiedInRange,
    Counterexample,
}

/// Location of one comparison in a claim. Which indices matter depends on the claim:
///
/// | claim | violated comparison |
/// |---|---|
/// | 1 | `D_l(n,k)^2 < D_l(n,k-1) D_l(n,k+1)` |
/// | 2 | `D_{l+1}(n,k) <= D_l(n,k)` |
/// | 3 | `D_l(n+m+1,k+m+1) <= D_l(n+m,k+m)` |
/// | 4 | `D_l(n+1,k) <= D_l(n,k)` |
/// | 5 | `R_l(n+m+1,k+m+1) <= R_l(n+m,k+m)` |
/// | 6 | `R_l(n+1,k) <= R_l(n,k)` |
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub claim: u8,
    pub ell: usize,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// Exact values of both sides, as decimal strings.
    pub values: Fields,
}

impl Witness {
    fn key(&self) -> (usize, usize, usize, usize) {
        (self.ell, self.n, self.k, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: u8,
    /// Fixed `l` for claims 1 and 3-6; `None` for claim 2 where `l` is the sequence index.
    pub ell: Option<usize>,
    pub range: SweepRange,
    /// Set for the one case that is a proven theorem; a counterexample there is an error.
    pub asserted: bool,
    pub status: ClaimStatus,
    pub comparisons: u64,
    pub violations: u64,
    /// Ratios skipped because `D_l` vanished (claims 5 and 6 only).
    pub zero_denominators: u64,
    /// Lexicographically first violation in `(l, n, k, m)` order.
    pub witness: Option<Witness>,
    pub first_zero_denominator: Option<Witness>,
}

#[derive(Default)]
struct Tally {
    comparisons: u64,
    violations: Vec<Witness>,
    zero_dens: Vec<Witness>,
}

impl Tally {
    fn compare(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.comparisons += 1;
        if !ok {
            self.violations.push(w());
        }
    }

    fn finish(self, claim: u8, ell: Option<usize>, range: SweepRange) -> ClaimResult {
        let first = |v: Vec<Witness>| v.into_iter().min_by_key(Witness::key);
        let violations = self.violations.len() as u64;
        let zero_denominators = self.zero_dens.len() as u64;
        ClaimResult {
            claim,
            ell,
            range,
            asserted: claim == 3 && ell == Some(1),
            status: if violations == 0 {
                ClaimStatus::VerifiedInRange
            } else {
                ClaimStatus::Counterexample
            },
            comparisons: self.comparisons,
            violations,
            zero_denominators,
            witness: first(self.violations),
            first_zero_denominator: first(self.zero_dens),
        }
    }
}

fn witness(claim: u8, ell: usize, n: usize, k: usize, m: usize, values: Fields) -> Witness {
    Witness {
        claim,
        ell,
        n,
        k,
        m,
        values,
    }
}

/// Sweeps the selected claims (ids 1-6) over `range`.
///
/// Every claim with a fixed `l` yields one [`ClaimResult`] per `l` in
/// `1..=range.ell_max`; claim 2 yields a single result. Results are ordered
/// by claim id, then `l`.
pub fn sweep_conjecture(table: &StirlingTable, claims: &[u8], range: SweepRange) -> Result<Vec<ClaimResult>> {
    if let Some(bad) = claims.iter().find(|c| !(1..=6).contains(*c)) {
        return Err(Error::Validation(format!("unknown claim id {bad}")));
    }
    if range.ell_max == 0 {
        return Err(Error::Validation("ell_max must be at least 1".into()));
    }
    let mut claims = claims.to_vec();
    claims.sort_unstable();
    claims.dedup();

    // Claims 5 and 6 need one level above ell_max.
    let grid = FrakGrid::build(table, range.ell_max + 1, range.n_max)?;
    let mut jobs: Vec<(u8, Option<usize>)> = Vec::new();
    for &c in &claims {
        if c == 2 {
            jobs.push((2, None));
        } else {
            jobs.extend((1..=range.ell_max).map(|l| (c, Some(l))));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(claim, ell)| sweep_one(&grid, claim, ell, range))
        .collect())
}

fn sweep_one(grid: &FrakGrid, claim: u8, ell: Option<usize>, range: SweepRange) -> ClaimResult {
    let SweepRange { n_max, k_max, ell_max } = range;
    let d = |l: usize, n: usize, k: usize| grid.get(l, n, k);
    let mut t = Tally::default();
    match (claim, ell) {
        (1, Some(l)) => {
            for n in (l + 3)..=n_max {
                let top = n.min(k_max);
                for k in (l + 2)..top {
                    let (lo, mid, hi) = (d(l, n, k - 1), d(l, n, k), d(l, n, k + 1));
                    t.compare(mid * mid >= lo * hi, || {
                        witness(1, l, n, k, 0, fields([("square", (mid * mid).to_string()), ("product", (lo * hi).to_string())]))
                    });
                }
            }
        }
        (2, None) => {
            for n in 3..=n_max {
                for k in 3..=n.min(k_max) {
                    for l in 1..(k - 1).min(ell_max) {
                        let (here, next) = (d(l, n, k), d(l + 1, n, k));
                        t.compare(next > here, || {
                            witness(2, l, n, k, 0, fields([("current", here.to_string()), ("next", next.to_string())]))
                        });
                    }
                }
            }
        }
        (3, Some(l)) => {
            for n in 0..=n_max {
                for k in (l + 1)..=n.min(k_max) {
                    for m in 0..(n_max - n) {
                        let (here, next) = (d(l, n + m, k + m), d(l, n + m + 1, k + m + 1));
                        t.compare(next > here, || {
                            witness(3, l, n, k, m, fields([("current", here.to_string()), ("next", next.to_string())]))
                        });
                    }
                }
            }
        }
        (4, Some(l)) => {
            for k in (l + 1)..=k_max.min(n_max) {
                for n in k..n_max {
                    let (here, next) = (d(l, n, k), d(l, n + 1, k));
                    t.compare(next > here, || {
                        witness(4, l, n, k, 0, fields([("current", here.to_string()), ("next", next.to_string())]))
                    });
                }
            }
        }
        (5, Some(l)) => {
            for n in 0..=n_max {
                for k in (l + 2)..=n.min(k_max) {
                    for m in 0..(n_max - n) {
                        ratio_step(&mut t, grid, 5, l, (n, k, m), (n + m, k + m), (n + m + 1, k + m + 1));
                    }
                }
            }
        }
        (6, Some(l)) => {
            for k in (l + 2)..=k_max.min(n_max) {
                for n in k..n_max {
                    ratio_step(&mut t, grid, 6, l, (n, k, 0), (n, k), (n + 1, k));
                }
            }
        }
        _ => unreachable!("claim {claim} with ell {ell:?}"),
    }
    t.finish(claim, ell, range)
}

fn ratio_step(
    t: &mut Tally,
    grid: &FrakGrid,
    claim: u8,
    l: usize,
    (n, k, m): (usize, usize, usize),
    here: (usize, usize),
    next: (usize, usize),
) {
    let a = grid.script(l, here.0, here.1);
    let b = grid.script(l, next.0, next.1);
    let values = || fields([("current", a.to_string()), ("next", b.to_string())]);
    match (a.value(), b.value()) {
        (Some(x), Some(y)) => t.compare(y > x, || witness(claim, l, n, k, m, values())),
        _ => t.zero_dens.push(witness(claim, l, n, k, m, values())),
    }
}

/// Recomputes the comparison named by `w` directly from the table with
/// [`frak_s`] and returns `true` if it is still violated.
pub fn recheck(table: &StirlingTable, w: &Witness) -> Result<bool> {
    let (l, n, k, m) = (w.ell, w.n, w.k, w.m);
    let f = |level, n, k| frak_s(table, level, n, k);
    let strictly_less = |a: ScriptS, b: ScriptS| -> Result<bool> {
        match (a.value(), b.value()) {
            (Some(x), Some(y)) => Ok(x < y),
            _ => Err(Error::Validation("witness refers to an undefined ratio".into())),
        }
    };
    Ok(match w.claim {
        1 => {
            let mid = f(l, n, k)?;
            &mid * &mid < f(l, n, k - 1)? * f(l, n, k + 1)?
        }
        2 => f(l + 1, n, k)? <= f(l, n, k)?,
        3 => f(l, n + m + 1, k + m + 1)? <= f(l, n + m, k + m)?,
        4 => f(l, n + 1, k)? <= f(l, n, k)?,
        5 => !strictly_less(script_s(table, l, n + m, k + m)?, script_s(table, l, n + m + 1, k + m + 1)?)?,
        6 => !strictly_less(script_s(table, l, n, k)?, script_s(table, l, n + 1, k)?)?,
        other => return Err(Error::Validation(format!("unknown claim id {other}"))),
    })
}
