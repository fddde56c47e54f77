//! Truncated formal power series with exact rational coefficients.
//!
//! A series holds coefficients for exponents `0..=N` where `N` is the
//! truncation order. Binary operations take the minimum truncation of their
//! operands and never silently change it otherwise. All arithmetic is
//! exact; precondition violations are reported as errors.

use num::{BigRational, One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numbers;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// A series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series `z` (when `n >= 1`).
    pub fn z(n: usize) -> Self {
        let mut s = Self::zero(n);
        if n >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn constant(c: BigRational, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n + 1);
        coeffs.resize(n + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    fn joint_order(&self, other: &PowerSeries) -> usize {
        self.truncation_order().min(other.truncation_order())
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.joint_order(other);
        let coeffs = (0..=n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.joint_order(other);
        let coeffs = (0..=n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        PowerSeries { coeffs }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.joint_order(other);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<PowerSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition(
                "recip needs a nonzero constant term",
            ));
        }
        let n = self.truncation_order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = self.coeffs[0].recip();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=m {
                acc += &self.coeffs[i] * &out[m - i];
            }
            out[m] = -acc / &self.coeffs[0];
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Substitution `self(inner)`; the inner series must have zero constant
    /// term. Evaluated by Horner's rule at the joint truncation.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition(
                "compose needs an inner series with zero constant term",
            ));
        }
        let n = self.joint_order(inner);
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::constant(self.coeff(n), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeff(i);
        }
        Ok(acc)
    }

    /// Square root with constant term 1, by the exact coefficient
    /// recurrence b_m = (a_m - sum_{i=1}^{m-1} b_i b_{m-i}) / 2.
    pub fn sqrt(&self) -> Result<PowerSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesPrecondition("sqrt needs constant term 1"));
        }
        let n = self.truncation_order();
        let two = numbers::rational_from_i64(2);
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = self.coeff(m);
            for i in 1..m {
                acc -= &out[i] * &out[m - i];
            }
            out[m] = acc / &two;
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Division by `z`; needs a zero constant term. Loses one order of
    /// truncation.
    pub fn div_z(&self) -> Result<PowerSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("div_z needs a zero constant term"));
        }
        if self.coeffs.len() == 1 {
            return Ok(PowerSeries::zero(0));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplication by `z` at the same truncation (the top coefficient
    /// falls off).
    pub fn mul_z(&self) -> PowerSeries {
        let n = self.truncation_order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 1..=n {
            coeffs[i] = self.coeffs[i - 1].clone();
        }
        PowerSeries { coeffs }
    }

    /// Coefficients as JSON strings: plain decimal for integers,
    /// "num/den" otherwise.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        Value::String(c.to_integer().to_string())
                    } else {
                        Value::String(format!("{}/{}", c.numer(), c.denom()))
                    }
                })
                .collect(),
        )
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// The Catalan generating function truncated at order `n`.
pub fn catalan_series(n: usize) -> PowerSeries {
    PowerSeries {
        coeffs: (0..=n)
            .map(|i| numbers::rational_from_biguint(&numbers::catalan(i as u64)))
            .collect(),
    }
}
