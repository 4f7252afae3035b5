//! Exact integer linear algebra.
//!
//! Dense matrices over arbitrary-precision integers, Smith normal form with
//! tracked unimodular transforms, and the two solvers built on top of it:
//! integer solutions of `M x = b` and lattice bases of integer kernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; an empty list with `cols` given
    /// explicitly is how zero-row matrices are written.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor for literal matrices in code and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols).expect("ragged literal matrix")
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn try_zip(&self, rhs: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.try_zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.try_zip(rhs, |a, b| a - b)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Adds `coeff * block` into `self` at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMatrix, coeff: i64) {
        let c = BigInt::from(coeff);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = block.get(i, j);
                if !b.is_zero() {
                    *self.entry_mut(r0 + i, c0 + j) += &c * b;
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            *self.entry_mut(dst, j) += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            *self.entry_mut(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Smith normal form `U·M·V = S` with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Position of the smallest nonzero absolute value inside the trailing
/// block starting at `(t, t)`; ties go to the lowest row, then column.
fn find_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if s.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with deterministic pivoting.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = m.shape();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s.get(t, t).clone();
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = -(s.get(i, t) / &pivot);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = -(s.get(t, j) / &pivot);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            // Remainders left in the pivot row/column are strictly smaller
            // than the pivot; promote the smallest one and go again.
            let mut smaller: Option<(usize, usize)> = None;
            let mut consider = |i: usize, j: usize, s: &IntMatrix| {
                let x = s.get(i, j);
                if x.is_zero() {
                    return;
                }
                match smaller {
                    Some((bi, bj)) if s.get(bi, bj).abs() <= x.abs() => {}
                    _ => smaller = Some((i, j)),
                }
            };
            for i in t + 1..rows {
                consider(i, t, &s);
            }
            for j in t + 1..cols {
                consider(t, j, &s);
            }
            if let Some((i, j)) = smaller {
                if j == t {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }

            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(s.get(i, j) % &pivot).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    Snf { s, u, v }
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank()
}

/// Integer solution of `M x = b`, or `None` if there is none.
///
/// The solution is read off the Smith form with all free coordinates set to
/// zero, so it is a deterministic function of `M` and `b`.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            m.rows()
        )));
    }
    let f = snf(m);
    let c = f.u.mul_vec(b)?;
    let r = f.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..r {
        let d = f.s.get(i, i);
        if !(&c[i] % d).is_zero() {
            return Ok(None);
        }
        y[i] = &c[i] / d;
    }
    Ok(Some(f.v.mul_vec(&y)?))
}

/// Basis of the integer kernel lattice `{x : M x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let f = snf(m);
    (f.rank()..m.cols()).map(|j| f.v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity() {
        let f = snf(&IntMatrix::identity(2));
        assert_eq!(f.s, IntMatrix::identity(2));
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(2));
    }

    #[test]
    fn snf_two_by_two() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let f = snf(&m);
        assert_eq!(f.s, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(&(&f.u * &m) * &f.v, f.s);
    }

    #[test]
    fn snf_zero() {
        let f = snf(&IntMatrix::zeros(2, 3));
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let f = snf(&m);
        assert_eq!(f.invariant_factors(), big(&[1, 6]));
    }

    #[test]
    fn solve_identity() {
        let b = big(&[3, -7, 2]);
        assert_eq!(solve(&IntMatrix::identity(3), &b).unwrap(), Some(b));
    }

    #[test]
    fn solve_parity_obstruction() {
        assert_eq!(solve(&IntMatrix::from_i64(&[&[2]]), &big(&[3])).unwrap(), None);
    }

    #[test]
    fn solve_underdetermined_is_deterministic() {
        let m = IntMatrix::from_i64(&[&[2, 1]]);
        let x = solve(&m, &big(&[5])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), big(&[5]));
        assert_eq!(solve(&m, &big(&[5])).unwrap().unwrap(), x);
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(matches!(
            solve(&IntMatrix::identity(2), &big(&[1])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_empty());
        let k = kernel_basis(&IntMatrix::zeros(2, 2));
        assert_eq!(k.len(), 2);
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &big(&[1, -1]) || v == &big(&[-1, 1]));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).determinant().unwrap(), BigInt::from(-1));
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]).determinant().unwrap(),
            BigInt::from(1)
        );
    }
}
