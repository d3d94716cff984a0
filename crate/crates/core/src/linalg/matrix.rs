use std::fmt;

use crate::error::{Error, Result};

/// Dense square integer matrix, row-major.
///
/// Entries are stored as `i64`; every algorithm that can grow them
/// (elimination, characteristic polynomials) works in `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExactMatrix {
    pub fn from_vec(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Shape(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(ExactMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Shape(format!("row of length {} in a {n}-row matrix", r.len())));
        }
        Self::from_vec(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Result<Self> {
        Self::from_vec(n, (0..n * n).map(|k| f(k / n.max(1), k % n.max(1))).collect())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_vec(n, vec![0; n * n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i64::from(i == j))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Trace as `i128` (cannot overflow for any `i64` matrix that fits in memory).
    pub fn trace(&self) -> i128 {
        (0..self.n).map(|i| self.get(i, i) as i128).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `self - lambda * I`, failing only on `i64` overflow.
    pub fn shifted(&self, lambda: i64) -> Result<Self> {
        let mut out = self.clone();
        for i in 0..self.n {
            let d = out
                .get(i, i)
                .checked_sub(lambda)
                .ok_or(Error::Overflow("diagonal shift"))?;
            out.set(i, i, d);
        }
        Ok(out)
    }

    /// Largest absolute row sum; bounds every eigenvalue in absolute value.
    pub fn max_abs_row_sum(&self) -> u128 {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.unsigned_abs() as u128).sum::<u128>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n)).finish()
    }
}
