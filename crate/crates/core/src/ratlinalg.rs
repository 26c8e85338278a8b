//! Exact linear algebra over the rationals.
//!
//! Every linear map in the crate (boundary operators, source/target maps of
//! reflexive graphs, chain maps) is a dense [`Matrix`] of [`Rational`]
//! entries. Elimination is exact, so identities such as `δ∘δ = 0` are checked
//! with zero tolerance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime parts). Displays as `p/q`, or `p` when `q = 1`.
pub type Rational = BigRational;

/// A column vector.
pub type Vector = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a plain decimal-free integer string.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_vector(s: &str) -> Result<Vector, LinalgError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_rational).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Rational::one();
    v
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.to_rows().iter().map(|r| format_vector(r)))
            .finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to express `r×0` and
    /// `0×c` shapes unambiguously.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    /// Integer-entry convenience constructor; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::RaggedRows {
                    row: j,
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        self.entries[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Count of nonzero entries.
    pub fn support(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// Sum of absolute values of all entries.
    pub fn l1_norm(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, x| acc + x.abs())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * k })
                .collect(),
        }
    }

    /// Exact product `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let sparse_rows: Vec<Vec<(usize, &Rational)>> = (0..other.rows)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    out.entries[i * other.cols + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, "add", |a, b| {
            if b.is_zero() {
                a.clone()
            } else if a.is_zero() {
                b.clone()
            } else {
                a + b
            }
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, "sub", |a, b| {
            if b.is_zero() {
                a.clone()
            } else if a.is_zero() {
                -b
            } else {
                a - b
            }
        })
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Submatrix made of the given rows (in order).
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend(self.row(r).iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Submatrix made of the given columns (in order).
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        kernel_basis(self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on shape mismatch; use [`Matrix::matmul`] for the checked form.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs)
            .expect("matrix difference shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(&rat(-1))
    }
}

/// Reduced row echelon form. Returns the reduced matrix and pivot columns.
///
/// The pivot in each column is the entry of largest absolute value among the
/// remaining rows (first such row on ties), which fixes the intermediate state.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let mut best: Option<(usize, Rational)> = None;
        for r in row..a.rows {
            let v = a.get(r, col).abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(_, b)| v > *b) {
                best = Some((r, v));
            }
        }
        let Some((p, _)) = best else { continue };
        if p != row {
            for c in 0..a.cols {
                a.entries.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a.get(row, col).recip();
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let sub = a.get(row, c) * &factor;
                if !sub.is_zero() {
                    a.entries[r * a.cols + c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rref(m).1.len()
}

/// A basis of the null space; its length is `cols − rank`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(m.cols);
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Classification of the solution set of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Unique(Vector),
    None,
    /// Consistent with a solution space of the given dimension (> 0).
    Affine(usize),
}

/// Solves the stacked system `A_k · x = b_k` for all constraints `(A_k, b_k)`.
///
/// `unknowns` is the length of `x`; it is needed when the constraint list is
/// empty.
pub fn solve_affine(
    unknowns: usize,
    constraints: &[(Matrix, Vector)],
) -> Result<AffineSolution, LinalgError> {
    let total_rows: usize = constraints.iter().map(|(a, _)| a.rows).sum();
    let mut aug = Matrix::zeros(total_rows, unknowns + 1);
    let mut offset = 0;
    for (a, b) in constraints {
        if a.cols != unknowns || b.len() != a.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve_affine",
                left: a.shape(),
                right: (b.len(), unknowns),
            });
        }
        for r in 0..a.rows {
            for c in 0..unknowns {
                aug.set(offset + r, c, a.get(r, c).clone());
            }
            aug.set(offset + r, unknowns, b[r].clone());
        }
        offset += a.rows;
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&unknowns) {
        return Ok(AffineSolution::None);
    }
    if pivots.len() < unknowns {
        return Ok(AffineSolution::Affine(unknowns - pivots.len()));
    }
    let mut x = zero_vector(unknowns);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, unknowns).clone();
    }
    Ok(AffineSolution::Unique(x))
}

/// Solves `m · x = b` when the solution is unique; `None` otherwise.
pub fn solve_unique(m: &Matrix, b: &[Rational]) -> Option<Vector> {
    match solve_affine(m.cols, &[(m.clone(), b.to_vec())]) {
        Ok(AffineSolution::Unique(x)) => Some(x),
        _ => None,
    }
}
