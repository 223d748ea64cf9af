//! Exact integer and rational arithmetic.
//!
//! [`Integer`] and [`Rational`] are the `num` big types; rationals are kept in
//! lowest terms with a positive denominator after every operation, so equality
//! is structural. On top of that this module provides the binomial conventions
//! used by the diagonal recurrences and fraction-free determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `n!`
pub fn factorial(n: u32) -> Integer {
    (2..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// Ordinary `n choose k` for non-negative arguments; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient under the conventions `(0 choose 0) = 1`,
/// `(-1 choose -1) = 1` and `(p choose q) = 0` for `p >= 0 > q`.
///
/// Any other pair with a negative argument has no value and is rejected.
pub fn binom_conventional(p: i64, q: i64) -> Result<Integer> {
    if p >= 0 {
        if q < 0 || q > p {
            return Ok(Integer::zero());
        }
        return Ok(binomial(p as u64, q as u64));
    }
    if p == -1 && q == -1 {
        return Ok(Integer::one());
    }
    Err(Error::Domain { p, q })
}

/// `(-1)^e` as a small integer.
pub fn sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn int(v: impl Into<Integer>) -> Integer {
    v.into()
}

pub fn rat(num: impl Into<Integer>, den: impl Into<Integer>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn rat_int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

/// Returns the integer value of `r`, or `None` when it is not integral.
pub fn to_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.to_integer())
}

/// Square matrix of exact rationals stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(order: usize, entries: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Validation("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Validation(format!(
                "matrix of order {order} needs {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(RationalMatrix { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let entries = (0..order * order).map(|idx| f(idx / order, idx % order)).collect();
        Self::new(order, entries)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Validation("matrix rows must all have length equal to the row count".into()));
        }
        Self::new(order, rows.into_iter().flatten().collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order)
    }

    pub fn det(&self) -> Rational {
        det_exact(self)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant.
///
/// Each row is scaled by the lcm of its denominators to get an integer
/// matrix, the integer determinant is found by Bareiss elimination, and the
/// row scalings are divided back out at the end.
pub fn det_exact(m: &RationalMatrix) -> Rational {
    let order = m.order;
    let mut scale = Integer::one();
    let mut a: Vec<Vec<Integer>> = m
        .rows()
        .map(|row| {
            let lcm = row.iter().fold(Integer::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &lcm;
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    Rational::new(bareiss(&mut a, order), scale)
}

/// Fraction-free determinant of an integer matrix; consumes `a` as scratch space.
pub fn bareiss(a: &mut [Vec<Integer>], order: usize) -> Integer {
    let mut negate = false;
    let mut prev = Integer::one();
    for p in 0..order {
        if a[p][p].is_zero() {
            match (p + 1..order).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    negate = !negate;
                }
                None => return Integer::zero(),
            }
        }
        for i in p + 1..order {
            for j in p + 1..order {
                let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = v / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    let d = a[order - 1][order - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
