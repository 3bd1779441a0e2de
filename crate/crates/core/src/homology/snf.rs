//! Smith normal form over the integers.
//!
//! Elimination runs on `i128` with checked arithmetic. If an intermediate entry
//! overflows, the computation restarts on arbitrary-precision integers unless
//! [`SnfOptions::allow_bigint`] is off, in which case it fails with
//! [`Error::OverflowGuard`].

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    /// Matrix product; `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = out.get(i, j).checked_add(a.checked_mul(b)?)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfOptions {
    pub allow_bigint: bool,
    /// Largest absolute value an intermediate entry may take before the fixed-width
    /// pass gives up.
    pub limit: u128,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions {
            allow_bigint: true,
            limit: i128::MAX as u128,
        }
    }
}

/// Nonzero diagonal of the Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invariant factors `d1 | d2 | ...`, all positive. Factors that do not fit
    /// in a `u64` are saturated; this never happens for boundary matrices of
    /// 3-manifold triangulations at the sizes this crate handles.
    pub factors: Vec<u64>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    smith_normal_form_with(m, SnfOptions::default())
}

pub fn smith_normal_form_with(m: &IntMatrix, opts: SnfOptions) -> Result<SmithForm> {
    let small: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    if let Some(diag) = eliminate(small, m.rows, m.cols, opts.limit) {
        return Ok(finish(diag));
    }
    if !opts.allow_bigint {
        return Err(Error::OverflowGuard);
    }
    let big: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let diag = eliminate(big, m.rows, m.cols, u128::MAX).expect("arbitrary precision cannot overflow");
    Ok(finish(diag))
}

fn finish<T: Entry>(diag: Vec<T>) -> SmithForm {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.to_big().abs()).collect();
    // Enforce the divisibility chain.
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    SmithForm {
        rank: d.len(),
        factors: d.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect(),
    }
}

trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `a - q * b`.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn exceeds(&self, limit: u128) -> bool;
}

impl Entry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn exceeds(&self, limit: u128) -> bool {
        self.unsigned_abs() > limit
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn exceeds(&self, _limit: u128) -> bool {
        false
    }
}

/// Diagonalizes in place and returns the nonzero diagonal; `None` on overflow.
fn eliminate<T: Entry>(mut a: Vec<T>, rows: usize, cols: usize, limit: u128) -> Option<Vec<T>> {
    let at = |r: usize, c: usize| r * cols + c;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = &a[at(r, c)];
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.cmp_abs(&a[at(br, bc)]) == Ordering::Less) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        swap_rows(&mut a, cols, t, pr);
        swap_cols(&mut a, cols, rows, t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[at(r, t)].is_zero() {
                    continue;
                }
                let q = a[at(r, t)].quot(&a[at(t, t)]);
                for c in t..cols {
                    let v = T::sub_mul(&a[at(r, c)], &q, &a[at(t, c)])?;
                    if v.exceeds(limit) {
                        return None;
                    }
                    a[at(r, c)] = v;
                }
                if !a[at(r, t)].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[at(t, c)].is_zero() {
                    continue;
                }
                let q = a[at(t, c)].quot(&a[at(t, t)]);
                for r in t..rows {
                    let v = T::sub_mul(&a[at(r, c)], &q, &a[at(r, t)])?;
                    if v.exceeds(limit) {
                        return None;
                    }
                    a[at(r, c)] = v;
                }
                if !a[at(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // A remainder survived: move the smallest entry of row/column t to the pivot.
            let mut best = (t, t);
            for r in t + 1..rows {
                let v = &a[at(r, t)];
                if !v.is_zero() && v.cmp_abs(&a[at(best.0, best.1)]) == Ordering::Less {
                    best = (r, t);
                }
            }
            for c in t + 1..cols {
                let v = &a[at(t, c)];
                if !v.is_zero() && v.cmp_abs(&a[at(best.0, best.1)]) == Ordering::Less {
                    best = (t, c);
                }
            }
            swap_rows(&mut a, cols, t, best.0);
            swap_cols(&mut a, cols, rows, t, best.1);
        }
        diag.push(a[at(t, t)].clone());
        t += 1;
    }
    Some(diag)
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for c in 0..cols {
            a.swap(r1 * cols + c, r2 * cols + c);
        }
    }
}

fn swap_cols<T>(a: &mut [T], cols: usize, rows: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for r in 0..rows {
            a.swap(r * cols + c1, r * cols + c2);
        }
    }
}
