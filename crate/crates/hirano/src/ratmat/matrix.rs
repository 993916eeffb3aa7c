use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{rat_int, render_rational, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty matrices are not supported")]
    Empty,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}

/// Dense row-major matrix over arbitrary-precision rationals.
///
/// Values are immutable after construction; all operations return fresh
/// matrices. Rectangular shapes are allowed everywhere, squareness is only
/// enforced by the operations that need it. Basis-returning operations may
/// produce matrices with zero columns (a basis of the trivial space), but
/// zero rows are rejected outright.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| render_rational(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Internal constructor that tolerates zero rows/columns (trivial bases).
    fn raw(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self { rows, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(r > 0 && c > 0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| rat_int(v)));
        }
        Self::raw(r, c, entries)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self::raw(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0);
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let n = values.len();
        assert!(n > 0);
        let mut m = Self::zero(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        Self::raw(self.cols, self.rows, entries)
    }

    fn require_same_shape(&self, rhs: &Self, op: &str) -> Result<(), MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::Dimension(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.require_same_shape(rhs, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::raw(self.rows, self.cols, entries))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.require_same_shape(rhs, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::raw(self.rows, self.cols, entries))
    }

    pub fn neg(&self) -> Self {
        Self::raw(self.rows, self.cols, self.entries.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::raw(self.rows, self.cols, self.entries.iter().map(|a| a * k).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "mul: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.at(r, k);
                    let b = rhs.at(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self::raw(self.rows, rhs.cols, entries))
    }

    /// Exact `self^e` by binary exponentiation; `e = 0` gives the identity.
    pub fn power(&self, e: usize) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        Ok(t)
    }

    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "hstack: {} rows vs {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend((0..self.cols).map(|c| self.at(r, c).clone()));
            entries.extend((0..rhs.cols).map(|c| rhs.at(r, c).clone()));
        }
        Ok(Self::raw(self.rows, cols, entries))
    }

    pub fn vstack(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.cols {
            return Err(MatrixError::Dimension(format!(
                "vstack: {} cols vs {} cols",
                self.cols, rhs.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Ok(Self::raw(self.rows + rhs.rows, self.cols, entries))
    }

    /// Assembles `[[A, B], [C, D]]` from conformable blocks.
    pub fn block_assemble(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, MatrixError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(MatrixError::Dimension(format!(
                "block_assemble: A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
            )));
        }
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    /// Splits into `(A, B, C, D)` at an interior row/column cut.
    pub fn block_split(
        &self,
        rowcut: usize,
        colcut: usize,
    ) -> Result<(Self, Self, Self, Self), MatrixError> {
        if rowcut == 0 || rowcut >= self.rows || colcut == 0 || colcut >= self.cols {
            return Err(MatrixError::Dimension(format!(
                "block_split: cut ({rowcut},{colcut}) not interior to {}x{}",
                self.rows, self.cols
            )));
        }
        let sub = |r0: usize, r1: usize, c0: usize, c1: usize| {
            let mut entries = Vec::with_capacity((r1 - r0) * (c1 - c0));
            for r in r0..r1 {
                for c in c0..c1 {
                    entries.push(self.at(r, c).clone());
                }
            }
            Self::raw(r1 - r0, c1 - c0, entries)
        };
        Ok((
            sub(0, rowcut, 0, colcut),
            sub(0, rowcut, colcut, self.cols),
            sub(rowcut, self.rows, 0, colcut),
            sub(rowcut, self.rows, colcut, self.cols),
        ))
    }

    /// Rank over the rationals via fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        // Clear denominators row by row; row scaling preserves rank.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = (0..self.cols)
                    .map(|c| self.at(r, c).denom().clone())
                    .fold(BigInt::one(), |acc, d| acc.lcm(&d));
                (0..self.cols)
                    .map(|c| {
                        let e = self.at(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(swap) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, swap);
            for r in pivot_row + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = (&m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c])
                        / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
        }
        pivot_row
    }

    /// Reduced row echelon form plus the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // Prefer a pivot with small magnitude to limit entry growth.
            let candidate = (row..m.rows)
                .filter(|&r| !m.at(r, col).is_zero())
                .min_by_key(|&r| {
                    m.at(r, col).numer().abs().bits() + m.at(r, col).denom().bits()
                });
            let Some(p) = candidate else { continue };
            for c in 0..m.cols {
                let tmp = m.at(p, c).clone();
                let old = m.at(row, c).clone();
                m.set(p, c, old);
                m.set(row, c, tmp);
            }
            let inv = {
                let pv = m.at(row, col).clone();
                Rational::one() / pv
            };
            for c in col..m.cols {
                let v = m.at(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Columns form a basis of the kernel; the result has zero columns when
    /// the kernel is trivial.
    pub fn null_space_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut entries = vec![Rational::zero(); self.cols * free.len()];
        for (j, &fc) in free.iter().enumerate() {
            entries[fc * free.len() + j] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                entries[pc * free.len() + j] = -r.at(i, fc).clone();
            }
        }
        Self::raw(self.cols, free.len(), entries)
    }

    /// Columns form a basis of the column space (the pivot columns of `self`).
    pub fn col_space_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        let mut entries = Vec::with_capacity(self.rows * pivots.len());
        for r in 0..self.rows {
            for &c in &pivots {
                entries.push(self.at(r, c).clone());
            }
        }
        Self::raw(self.rows, pivots.len(), entries)
    }

    /// One exact solution of `self * X = rhs` (free variables set to zero),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>, MatrixError> {
        if self.rows != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "solve: {} rows vs {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut entries = vec![Rational::zero(); self.cols * rhs.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                entries[pc * rhs.cols + c] = r.at(i, self.cols + c).clone();
            }
        }
        Ok(Some(Self::raw(self.cols, rhs.cols, entries)))
    }

    /// Exact inverse, or `None` when singular.
    pub fn try_inverse(&self) -> Result<Option<Self>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let aug = self.hstack(&Self::identity(self.rows))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut entries = Vec::with_capacity(self.rows * self.rows);
        for row in 0..self.rows {
            for c in 0..self.rows {
                entries.push(r.at(row, self.cols + c).clone());
            }
        }
        Ok(Some(Self::raw(self.rows, self.rows, entries)))
    }

    /// Monic characteristic polynomial `det(xI - self)` by the
    /// Faddeev-LeVerrier recurrence, exactly over the rationals.
    pub fn char_poly(&self) -> Result<Poly, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m)?;
            let c = -m.trace()? / rat_int(k as i64);
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = m.at(i, i) + &c;
                m.set(i, i, v);
            }
        }
        Ok(Poly::new(coeffs))
    }

    /// Determinant, read off the characteristic polynomial.
    pub fn det(&self) -> Result<Rational, MatrixError> {
        let p = self.char_poly()?;
        let n = self.rows;
        let c0 = p.coeff(0);
        Ok(if n % 2 == 0 { c0 } else { -c0 })
    }
}
