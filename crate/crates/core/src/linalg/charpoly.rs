use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::ExactMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_CHARPOLY_CAP: usize = 1500;

/// Monic integer polynomial, coefficients ascending (`coeffs[i]` multiplies `x^i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Wraps ascending coefficients; the leading one must be 1.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(CharPoly { coeffs }),
            _ => Err(Error::InvalidParameter("polynomial must be monic".into())),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `prod (x - r)^m` over the given roots.
    pub fn from_roots(roots: &[(i64, usize)]) -> Self {
        let mut coeffs = vec![BigInt::one()];
        for &(r, m) in roots {
            for _ in 0..m {
                coeffs = mul_linear(&coeffs, &BigInt::from(r));
            }
        }
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

fn mul_linear(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    // p(x) * (x - r)
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * r;
    }
    out
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

/// Renders ascending coefficients as `x^3 - 4x^2 + 3x`.
pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (i, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "x")?,
            (1, false) => write!(f, "{mag}x")?,
            (_, true) => write!(f, "x^{i}")?,
            (_, false) => write!(f, "{mag}x^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `det(xI - m)` with the default dimension cap.
pub fn char_poly(m: &ExactMatrix) -> Result<CharPoly> {
    char_poly_with_cap(m, DEFAULT_CHARPOLY_CAP)
}

/// Faddeev-LeVerrier over the integers:
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
/// The division is exact for integer input.
pub fn char_poly_with_cap(m: &ExactMatrix, cap: usize) -> Result<CharPoly> {
    let n = m.dim();
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // M_1 = I
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for k in 1..=n {
        if k > 1 {
            acc = mul_small_big(m, &acc);
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
        }
        // tr(A M_k) = sum_ij A[i][j] M[j][i]
        let trace: BigInt = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, &a) in m.row(i).iter().enumerate() {
                    if a != 0 {
                        s += &acc[j][i] * a;
                    }
                }
                s
            })
            .sum();
        let (q, r) = num_integer::Integer::div_rem(&-trace, &BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "inexact Faddeev-LeVerrier division at step {k}"
            )));
        }
        c[n - k] = q;
    }
    Ok(CharPoly { coeffs: c })
}

fn mul_small_big(a: &ExactMatrix, b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.dim();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            for (k, &x) in a.row(i).iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (dst, src) in row.iter_mut().zip(&b[k]) {
                    if !src.is_zero() {
                        *dst += src * x;
                    }
                }
            }
            row
        })
        .collect()
}
