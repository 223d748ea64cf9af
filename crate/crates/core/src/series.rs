//! Truncated formal power series with exact rational coefficients.

use std::ops::Mul;

use num_traits::{One, Zero};

use crate::arith::{factorial, rat, Rational};

/// `c_0 + c_1 x + ... + c_N x^N`, all arithmetic truncated at `x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    /// Builds a series of the given order from its leading coefficients,
    /// padding with zeros (or truncating) to `order + 1` terms.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        FormalSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        FormalSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![Rational::one()])
    }

    /// `e^x - 1`
    pub fn exp_minus_one(order: usize) -> Self {
        Self::from_fn(order, |j| match j {
            0 => Rational::zero(),
            j => rat(1, factorial(j as u32)),
        })
    }

    /// `ln(1 + x)`
    pub fn log_one_plus(order: usize) -> Self {
        Self::from_fn(order, |j| match j {
            0 => Rational::zero(),
            j if j % 2 == 1 => rat(1, j),
            j => rat(-1, j),
        })
    }

    /// `(e^x - 1)/x = sum x^j/(j+1)!`
    pub fn exp_minus_one_over_x(order: usize) -> Self {
        Self::from_fn(order, |j| rat(1, factorial(j as u32 + 1)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `j`-th derivative at the origin, `j! c_j`.
    pub fn derivative_at_zero(&self, j: usize) -> Rational {
        &self.coeffs[j] * Rational::from_integer(factorial(j as u32))
    }

    pub fn scale(&self, by: &Rational) -> Self {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;

    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        FormalSeries { coeffs }
    }
}
