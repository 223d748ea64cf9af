//! Partial Bell polynomials and the series behind the diagonal recurrences.
//!
//! `H_k(x) = ((e^x - 1)/x)^k` has Taylor coefficients
//! `S(m+k,k) / (C(m+k,k) m!)`. Its derivatives at the origin can be written
//! with Faà di Bruno's formula as a sum of partial Bell polynomials evaluated
//! at the moments `1/2, 1/3, ...`, which is what [`faa_di_bruno_check`] compares.

use num_traits::{One, Zero};

pub use crate::series::FormalSeries;

use crate::arith::{binomial, factorial, rat, show, Integer, Rational};
use crate::engines::{Kind, StirlingTable};
use crate::report::{fields, Check};
use crate::{Error, Result};

/// Largest `n` accepted by [`bell_partial`].
pub const BELL_BOUND: usize = 25;

/// Arguments `x_1, ..., x_{n-k+1}` of a partial Bell polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellArgumentVector(Vec<Rational>);

impl BellArgumentVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        BellArgumentVector(entries)
    }

    /// `(1/2, 1/3, ..., 1/(n-k+2))`
    pub fn reciprocals(n: usize, k: usize) -> Self {
        BellArgumentVector((0..arg_len(n, k)).map(|i| rat(1, i + 2)).collect())
    }

    /// `(1, 1, ..., 1)` of length `n-k+1`.
    pub fn ones(n: usize, k: usize) -> Self {
        BellArgumentVector(vec![Rational::one(); arg_len(n, k)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

fn arg_len(n: usize, k: usize) -> usize {
    n - k + 1
}

/// Integer partitions of `n` into exactly `k` positive parts, parts non-increasing.
pub fn partitions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts_left: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts_left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Remaining parts are each at least 1 and at most `part`.
        let hi = max_part.min(rest + 1 - parts_left);
        let lo = rest.div_ceil(parts_left);
        for part in (lo..=hi).rev() {
            cur.push(part);
            go(rest - part, parts_left - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, n, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `B_{n,k}(x_1, ..., x_{n-k+1})` by summing over all partitions of `n` into `k` parts.
pub fn bell_partial(n: usize, k: usize, args: &BellArgumentVector) -> Result<Rational> {
    if n > BELL_BOUND {
        return Err(Error::range("n", n, BELL_BOUND));
    }
    if k > n {
        return Err(Error::Validation(format!("need n >= k, got n = {n}, k = {k}")));
    }
    if args.len() != arg_len(n, k) {
        return Err(Error::Validation(format!(
            "B_{{{n},{k}}} takes {} arguments, got {}",
            arg_len(n, k),
            args.len()
        )));
    }
    let x = args.as_slice();
    let n_fact = factorial(n as u32);
    let mut total = Rational::zero();
    for parts in partitions_into(n, k) {
        // multiplicity[i] = number of parts equal to i + 1
        let mut multiplicity = vec![0u32; arg_len(n, k)];
        for p in parts {
            multiplicity[p - 1] += 1;
        }
        let mut term = Rational::from_integer(n_fact.clone());
        for (i, &l) in multiplicity.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let base = &x[i] / Rational::from_integer(factorial(i as u32 + 1));
            term *= num_traits::pow(base, l as usize);
            term /= Rational::from_integer(factorial(l));
        }
        total += term;
    }
    Ok(total)
}

/// `n!/(n+k)! * sum_{i=0}^{k} (-1)^(k-i) C(n+k, k-i) S(n+i, i)`.
pub fn bell_special_rhs(table: &StirlingTable, n: usize, k: usize) -> Result<Rational> {
    second_kind(table, n + k)?;
    let mut sum = Integer::zero();
    for i in 0..=k {
        let term = binomial((n + k) as u64, (k - i) as u64) * table.get(n + i, i)?;
        if (k - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(rat(sum * factorial(n as u32), factorial((n + k) as u32)))
}

fn second_kind(table: &StirlingTable, n: usize) -> Result<()> {
    if table.kind() != Kind::Second {
        return Err(Error::Validation("expected a second-kind table".into()));
    }
    if n > table.max_n() {
        return Err(Error::range("n", n, table.max_n()));
    }
    Ok(())
}

/// `((e^x - 1)/x)^k` truncated at `x^order`, without any table cross-check.
pub fn hk(k: usize, order: usize) -> FormalSeries {
    FormalSeries::exp_minus_one_over_x(order).pow(k)
}

/// [`hk`] with every coefficient checked against `S(m+k,k) / (C(m+k,k) m!)`.
pub fn hk_series(table: &StirlingTable, k: usize, order: usize) -> Result<FormalSeries> {
    if k == 0 {
        return Err(Error::Validation("H_k needs k >= 1".into()));
    }
    second_kind(table, order + k)?;
    let series = hk(k, order);
    for m in 0..=order {
        let expected = rat(
            table.get(m + k, k)?.clone(),
            binomial((m + k) as u64, k as u64) * factorial(m as u32),
        );
        if series.coeff(m) != &expected {
            return Err(Error::Consistency(format!(
                "x^{m} coefficient of H_{k} is {}, expected {}",
                show(series.coeff(m)),
                show(&expected)
            )));
        }
    }
    Ok(series)
}

/// Compares `sum_{l=1}^{min(m,k)} k!/(k-l)! B_{m,l}(1/2, ..., 1/(m-l+2))`
/// with the `m`-th derivative of `H_k` at zero.
pub fn faa_di_bruno_check(k: usize, m: usize) -> Result<Check> {
    if k == 0 || m == 0 || m > BELL_BOUND {
        return Err(Error::Validation(format!("need k >= 1 and 1 <= m <= {BELL_BOUND}, got k = {k}, m = {m}")));
    }
    let mut chain_rule = Rational::zero();
    for l in 1..=m.min(k) {
        let falling = factorial(k as u32) / factorial((k - l) as u32);
        chain_rule += Rational::from_integer(falling) * bell_partial(m, l, &BellArgumentVector::reciprocals(m, l))?;
    }
    let derivative = hk(k, m).derivative_at_zero(m);
    Ok(Check::new(
        chain_rule == derivative,
        fields([("k", k), ("m", m)]),
        fields([("chain_rule", show(&chain_rule)), ("series_derivative", show(&derivative))]),
    ))
}

/// Checks `B_{n,k}(1/2, ..., 1/(n-k+2)) = bell_special_rhs(n, k)`.
pub fn special_value_check(table: &StirlingTable, n: usize, k: usize) -> Result<Check> {
    let lhs = bell_partial(n, k, &BellArgumentVector::reciprocals(n, k))?;
    let rhs = bell_special_rhs(table, n, k)?;
    Ok(Check::new(
        lhs == rhs,
        fields([("n", n), ("k", k)]),
        fields([("bell", show(&lhs)), ("stirling_sum", show(&rhs))]),
    ))
}
