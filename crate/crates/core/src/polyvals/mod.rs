//! Polynomial and binary-form values: roots modulo `d`, the multiplicative
//! densities `γ_F` and `γ*`, value sieves counting smooth values and the
//! remainder terms `r_d = A_d − γ(d) X / d`.

mod modpoly;
mod remainder;
mod roots;
mod values;

pub use remainder::{count_in_class, remainder_binary_report, remainder_poly, remainder_poly_report, RemainderReport};
pub use roots::{gamma_poly, gamma_star, roots_mod, LIFT_SCAN_LIMIT};
pub use values::{psi_binary, psi_poly};

use crate::error::{Error, Result};

fn parse_coefficients(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}"))))
        .collect()
}

/// `a_0 + a_1 X + … + a_g X^g` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Coefficients constant term first; the leading one must be nonzero and the degree at least 1.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain("a polynomial needs degree at least 1".into()));
        }
        if coeffs.last() == Some(&0) {
            return Err(Error::Domain("leading coefficient must be nonzero".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Parses `"a0,a1,...,ag"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_coefficients(text)?)
    }

    /// `X² + 1`.
    pub fn x2_plus_1() -> Self {
        IntPolynomial { coeffs: vec![1, 0, 1] }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `F(n)`, or `None` on `i128` overflow.
    pub fn eval(&self, n: i128) -> Option<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(n)?.checked_add(c as i128))
    }

    /// Coefficients of `F'`.
    pub fn derivative(&self) -> Vec<i64> {
        self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect()
    }
}

/// `a_t X^t + a_{t−1} X^{t−1} Y + … + a_0 Y^t`, stored as `[a_0, …, a_t]`
/// where `a_i` multiplies `X^i Y^{t−i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<i64>,
}

impl BinaryForm {
    /// Requires degree `t ≥ 2` and `a_t ≠ 0`, so that `F(X, 1)` has degree `t`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::Domain("a binary form needs degree at least 2".into()));
        }
        if coeffs.last() == Some(&0) {
            return Err(Error::Domain("the X^t coefficient must be nonzero".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    /// Parses `"a0,a1,...,at"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_coefficients(text)?)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `F(a, b)`, or `None` on `i128` overflow.
    pub fn eval(&self, a: i128, b: i128) -> Option<i128> {
        let t = self.degree() as u32;
        self.coeffs.iter().enumerate().try_fold(0i128, |sum, (i, &c)| {
            let term = (c as i128).checked_mul(a.checked_pow(i as u32)?)?.checked_mul(b.checked_pow(t - i as u32)?)?;
            sum.checked_add(term)
        })
    }

    /// `F(X, 1)`, coefficients constant term first.
    pub(crate) fn dehomogenized_x(&self) -> Vec<i64> {
        self.coeffs.clone()
    }

    /// `F(1, Y)`, coefficients constant term first.
    pub(crate) fn dehomogenized_y(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }
}
