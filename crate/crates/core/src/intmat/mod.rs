//! Exact integer matrices: normal forms, lattice membership and the
//! structure-preserving row/column moves on Heuberger matrices.
//!
//! A matrix is read column-wise: its columns generate a relation lattice
//! `H` inside `Z^m`, where `m` is the number of rows.

mod hnf;
mod moves;
mod scalar;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use serde::ser::{Serialize, SerializeSeq, Serializer};

pub use hnf::{
    column_hnf, drop_dependent_columns, has_loops, lattice_member, HermiteBasis, LoopWitness,
};
pub use moves::{
    collapse_rows, delete_zero_rows, find_three_divisible_pair, is_bipartite, reduce_column,
    RowCombo, Sign,
};
pub use scalar::{ext_gcd, gcd, Overflow, Scalar};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntMatError {
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix must have at least one row")]
    NoRows,
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("all rows are zero")]
    AllRowsZero,
    #[error("index {index} out of range for {len} rows/columns")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("row indices must differ")]
    SameRow,
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("matrix is not a unimodular witness")]
    NotUnimodular,
    #[error("matrix is not a signed permutation")]
    NotSignedPermutation,
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
}

pub type Result<T, E = IntMatError> = std::result::Result<T, E>;

/// Dense row-major integer matrix with at least one row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix<T = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(IntMatError::NoRows);
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(IntMatError::Ragged {
                    row: i,
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 {
            return Err(IntMatError::NoRows);
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        })
    }

    /// `n`×`n` identity. `n = 0` yields the empty transform of a matrix
    /// without columns, the one place a zero-row matrix is allowed.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(IntMatrix {
                rows: 0,
                cols: 0,
                data: Vec::new(),
            });
        }
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, T::one());
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Scalar::is_zero)
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column_sums(&self) -> Result<Vec<T>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows).try_fold(T::zero(), |acc, i| {
                    acc.checked_add(self.get(i, j)).map_err(Into::into)
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Result<Self> {
        if self.cols == 0 {
            return Err(IntMatError::NoRows);
        }
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Ok(IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        })
    }

    pub fn mul(&self, rhs: &IntMatrix<T>) -> Result<IntMatrix<T>> {
        if self.cols != rhs.rows {
            return Err(IntMatError::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(rhs.get(k, j))?)?;
                }
                data.push(acc);
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(IntMatError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(T::zero(), |acc, (a, b)| {
                        acc.checked_add(&a.checked_mul(b)?)
                            .map_err(IntMatError::from)
                    })
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(i, j).checked_neg()?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub fn negate_col(&mut self, j: usize) -> Result<()> {
        for i in 0..self.rows {
            let v = self.get(i, j).checked_neg()?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// `row[dst] += q * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        for j in 0..self.cols {
            let v = self
                .get(dst, j)
                .checked_add(&q.checked_mul(self.get(src, j))?)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] += q * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &T) -> Result<()> {
        for i in 0..self.rows {
            let v = self
                .get(i, dst)
                .checked_add(&q.checked_mul(self.get(i, src))?)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    /// Replace columns `(a, b)` by `(x*a + y*b, z*a + w*b)`.
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, [x, y, z, w]: [&T; 4]) -> Result<()> {
        for i in 0..self.rows {
            let va = self.get(i, a).clone();
            let vb = self.get(i, b).clone();
            let na = x.checked_mul(&va)?.checked_add(&y.checked_mul(&vb)?)?;
            let nb = z.checked_mul(&va)?.checked_add(&w.checked_mul(&vb)?)?;
            self.set(i, a, na);
            self.set(i, b, nb);
        }
        Ok(())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &IntMatrix<T>) -> Result<IntMatrix<T>> {
        if self.rows != rhs.rows {
            return Err(IntMatError::DimensionMismatch {
                expected: self.rows,
                got: rhs.rows,
            });
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect())
            .collect();
        IntMatrix::from_rows(rows)
    }

    pub fn select_rows(&self, keep: &[usize]) -> Result<IntMatrix<T>> {
        IntMatrix::from_rows(keep.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, keep: &[usize]) -> Result<IntMatrix<T>> {
        IntMatrix::from_rows(
            (0..self.rows)
                .map(|i| keep.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    /// Append an all-zero row at the bottom.
    pub fn with_zero_row(&self) -> IntMatrix<T> {
        let mut data = self.data.clone();
        data.extend(std::iter::repeat_n(T::zero(), self.cols));
        IntMatrix {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        }
    }

    pub fn to_bigint(&self) -> IntMatrix<BigInt> {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_bigint).collect(),
        }
    }

    pub fn try_convert<U: Scalar>(&self) -> Result<IntMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|v| U::try_from_bigint(&v.to_bigint()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(IntMatError::Shape {
                expected_rows: self.rows,
                expected_cols: self.rows,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = T::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = !sign;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a
                        .get(k, k)
                        .checked_mul(a.get(i, j))?
                        .checked_sub(&a.get(i, k).checked_mul(a.get(k, j))?)?;
                    a.set(i, j, num.div_floor(&prev)?);
                }
            }
            prev = a.get(k, k).clone();
        }
        let det = if n == 0 {
            T::one()
        } else {
            a.get(n - 1, n - 1).clone()
        };
        if sign {
            Ok(det.checked_neg()?)
        } else {
            Ok(det)
        }
    }
}

impl IntMatrix<BigInt> {
    /// Entries as `i64`, if every entry fits.
    pub fn to_i64(&self) -> Option<IntMatrix<i64>> {
        self.try_convert().ok()
    }
}

impl<T: Scalar> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Canonical text form: one row per line, single spaces.
impl<T: Scalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of row arrays; entries outside `i64` become strings.
impl<T: Scalar> Serialize for IntMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<IntEntry<'_, T>> = self.row(i).iter().map(IntEntry).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

struct IntEntry<'a, T>(&'a T);

/// `serialize_with` helper: an integer as a JSON number when it fits `i64`,
/// otherwise as a decimal string.
pub fn serialize_int<T: Scalar, S: Serializer>(
    v: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    IntEntry(v).serialize(serializer)
}

pub fn serialize_ints<T: Scalar, S: Serializer>(
    v: &[T],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(v.iter().map(IntEntry))
}

pub fn serialize_opt_int<T: Scalar, S: Serializer>(
    v: &Option<T>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => serializer.serialize_some(&IntEntry(x)),
        None => serializer.serialize_none(),
    }
}

impl<T: Scalar> Serialize for IntEntry<'_, T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

/// Square matrix of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(transparent, bound(serialize = ""))]
pub struct UnimodularWitness<T: Scalar = BigInt>(IntMatrix<T>);

impl<T: Scalar> UnimodularWitness<T> {
    pub fn new(m: IntMatrix<T>) -> Result<Self> {
        let det = m.determinant()?;
        if det.is_one() || det.checked_neg()?.is_one() {
            Ok(UnimodularWitness(m))
        } else {
            Err(IntMatError::NotUnimodular)
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(UnimodularWitness(IntMatrix::identity(n)?))
    }

    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix<T> {
        self.0
    }

    pub fn determinant(&self) -> Result<T> {
        self.0.determinant()
    }
}

/// Square matrix with exactly one ±1 in every row and column.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(transparent, bound(serialize = ""))]
pub struct SignedPermWitness<T: Scalar = BigInt>(IntMatrix<T>);

impl<T: Scalar> SignedPermWitness<T> {
    pub fn new(m: IntMatrix<T>) -> Result<Self> {
        if is_signed_permutation(&m) {
            Ok(SignedPermWitness(m))
        } else {
            Err(IntMatError::NotSignedPermutation)
        }
    }

    /// Row `i` of `P·M` is `signs[i] * M[perm[i]]`.
    pub fn from_perm(perm: &[usize], signs: &[bool]) -> Result<Self> {
        let n = perm.len();
        let mut m = IntMatrix::zeros(n, n)?;
        for (i, (&p, &neg)) in perm.iter().zip(signs).enumerate() {
            if p >= n {
                return Err(IntMatError::IndexOutOfRange { index: p, len: n });
            }
            m.set(i, p, if neg { T::from_i64(-1) } else { T::one() });
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.0
    }

    /// All `2^n n!` signed permutations of size `n`, in a fixed order:
    /// permutations lexicographically, then sign patterns as binary counters.
    pub fn enumerate(n: usize) -> Vec<SignedPermWitness<T>> {
        let mut out = Vec::new();
        for perm in permutations(n) {
            for mask in 0u32..(1 << n) {
                let signs: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
                out.push(Self::from_perm(&perm, &signs).expect("valid permutation"));
            }
        }
        out
    }
}

pub fn is_signed_permutation<T: Scalar>(m: &IntMatrix<T>) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let unit = |v: &T| v.is_one() || v.checked_neg().map(|n| n.is_one()).unwrap_or(false);
    let rows_ok = (0..m.rows()).all(|i| {
        let nz: Vec<&T> = m.row(i).iter().filter(|v| !v.is_zero()).collect();
        nz.len() == 1 && unit(nz[0])
    });
    let cols_ok =
        (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).count() == 1);
    rows_ok && cols_ok
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Builds an [`IntMatrix<BigInt>`] from nested integer literals.
#[macro_export]
macro_rules! intmat {
    ($([$($x:expr),* $(,)?]),+ $(,)?) => {
        $crate::intmat::IntMatrix::<::num_bigint::BigInt>::from_i64_rows(&[$(vec![$(($x) as i64),*]),+])
            .expect("well-formed matrix literal")
    };
}
