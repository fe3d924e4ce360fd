use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::{Error, Result};

/// Dense integer polynomial, coefficients indexed by degree.
/// Invariant: the leading coefficient is nonzero unless the polynomial is 0
/// (represented by an empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// t^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (k, c) in out.iter_mut().enumerate() {
            *c = self.coeff(k) + other.coeff(k);
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (k, c) in out.iter_mut().enumerate() {
            *c = self.coeff(k) - other.coeff(k);
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0i64; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    pub fn eval_i64(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * t + c)
    }

    /// Checked evaluation at a (possibly large) nonnegative point.
    pub fn eval_u128(&self, t: u128) -> Result<u128> {
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            if c < 0 {
                return Err(Error::Overflow("negative coefficient in u128 evaluation"));
            }
            acc = acc
                .checked_mul(t)
                .and_then(|v| v.checked_add(c as u128))
                .ok_or(Error::Overflow("polynomial evaluation"))?;
        }
        Ok(acc)
    }

    /// Render with the given variable name, e.g. "1 + 2t + t^3".
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    out.push('-');
                }
                first = false;
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let a = c.unsigned_abs();
            match k {
                0 => {
                    let _ = write!(out, "{a}");
                }
                1 => {
                    if a != 1 {
                        let _ = write!(out, "{a}");
                    }
                    out.push_str(var);
                }
                _ => {
                    if a != 1 {
                        let _ = write!(out, "{a}");
                    }
                    let _ = write!(out, "{var}^{k}");
                }
            }
        }
        out
    }
}
