//! Row and column moves that induce graph homomorphisms or isomorphisms.

use serde::Serialize;

use super::{gcd, IntMatError, IntMatrix, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => T::from_i64(-1),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Bipartite iff every column sum is even.
pub fn is_bipartite<T: Scalar>(m: &IntMatrix<T>) -> Result<bool> {
    let two = T::from_i64(2);
    for s in m.column_sums()? {
        if !s.mod_floor(&two)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Remove every all-zero row, keeping the order of the rest.
pub fn delete_zero_rows<T: Scalar>(m: &IntMatrix<T>) -> Result<IntMatrix<T>> {
    let keep: Vec<usize> = (0..m.rows()).filter(|&i| !m.is_zero_row(i)).collect();
    if keep.is_empty() {
        return Err(IntMatError::AllRowsZero);
    }
    m.select_rows(&keep)
}

/// Replace row `i` by `row_i + sign·row_j` and delete row `j`.
pub fn collapse_rows<T: Scalar>(
    m: &IntMatrix<T>,
    i: usize,
    j: usize,
    sign: Sign,
) -> Result<IntMatrix<T>> {
    let rows = m.rows();
    for idx in [i, j] {
        if idx >= rows {
            return Err(IntMatError::IndexOutOfRange {
                index: idx,
                len: rows,
            });
        }
    }
    if i == j {
        return Err(IntMatError::SameRow);
    }
    let mut out = m.clone();
    out.add_row_multiple(i, j, &sign.value())?;
    let keep: Vec<usize> = (0..rows).filter(|&r| r != j).collect();
    out.select_rows(&keep)
}

/// Divide column `j` by the gcd of its entries.
pub fn reduce_column<T: Scalar>(m: &IntMatrix<T>, j: usize) -> Result<IntMatrix<T>> {
    if j >= m.cols() {
        return Err(IntMatError::IndexOutOfRange {
            index: j,
            len: m.cols(),
        });
    }
    let g = m
        .column(j)
        .iter()
        .try_fold(T::zero(), |acc, v| gcd(&acc, v))?;
    if g.is_zero() {
        return Err(IntMatError::ZeroColumn(j));
    }
    let mut out = m.clone();
    for i in 0..m.rows() {
        let v = m.get(i, j).div_floor(&g)?;
        out.set(i, j, v);
    }
    Ok(out)
}

/// A row already divisible by 3, or a signed pair of rows whose
/// combination `row_first + sign·row_second` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowCombo {
    Single(usize),
    Pair {
        first: usize,
        second: usize,
        sign: Sign,
    },
}

impl RowCombo {
    /// Collapse two rows so that the result keeps a row divisible by 3.
    ///
    /// For `Single(r)` the first two rows other than `r` are added.
    pub fn apply<T: Scalar>(&self, m: &IntMatrix<T>) -> Result<IntMatrix<T>> {
        match *self {
            RowCombo::Pair {
                first,
                second,
                sign,
            } => collapse_rows(m, first, second, sign),
            RowCombo::Single(r) => {
                let mut others = (0..m.rows()).filter(|&i| i != r);
                match (others.next(), others.next()) {
                    (Some(a), Some(b)) => collapse_rows(m, a, b, Sign::Plus),
                    _ => Err(IntMatError::IndexOutOfRange {
                        index: r,
                        len: m.rows(),
                    }),
                }
            }
        }
    }
}

fn residues_mod3<T: Scalar>(row: &[T]) -> Result<Vec<i64>> {
    let three = T::from_i64(3);
    row.iter()
        .map(|v| Ok(v.mod_floor(&three)?.to_i64().expect("residue fits")))
        .collect()
}

/// Pigeonhole over the four `{v, -v}` classes of nonzero residues in `Z_3^2`:
/// among five rows either one vanishes mod 3 or two share a class.
///
/// Scan order: first divisible row, then pairs `(i, j)` lexicographically,
/// `Minus` before `Plus`.
pub fn find_three_divisible_pair<T: Scalar>(m: &IntMatrix<T>) -> Result<RowCombo> {
    if m.shape() != (5, 2) {
        return Err(IntMatError::Shape {
            expected_rows: 5,
            expected_cols: 2,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let res: Vec<Vec<i64>> = (0..5)
        .map(|i| residues_mod3(m.row(i)))
        .collect::<Result<_>>()?;
    if let Some(i) = res.iter().position(|r| r.iter().all(|&x| x == 0)) {
        return Ok(RowCombo::Single(i));
    }
    for i in 0..5 {
        for j in i + 1..5 {
            for sign in [Sign::Minus, Sign::Plus] {
                let s = sign.as_i64();
                if res[i]
                    .iter()
                    .zip(&res[j])
                    .all(|(a, b)| (a + s * b).rem_euclid(3) == 0)
                {
                    return Ok(RowCombo::Pair {
                        first: i,
                        second: j,
                        sign,
                    });
                }
            }
        }
    }
    unreachable!("five nonzero vectors in four sign classes must collide")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;
    use proptest::prelude::*;

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&intmat![[2], [2]]).unwrap());
        assert!(!is_bipartite(&intmat![[1], [1], [1]]).unwrap());
        assert!(is_bipartite(&intmat![[2, 0], [1, 1], [1, 1], [1, 1], [1, 1]]).unwrap());
    }

    #[test]
    fn delete_zero_rows_examples() {
        assert_eq!(
            delete_zero_rows(&intmat![[1, 0], [0, 0], [0, 1]]).unwrap(),
            intmat![[1, 0], [0, 1]]
        );
        assert_eq!(
            delete_zero_rows(&intmat![[0, 0]]).unwrap_err(),
            IntMatError::AllRowsZero
        );
        let m = intmat![[1, 2], [3, 4]];
        assert_eq!(delete_zero_rows(&m).unwrap(), m);
    }

    #[test]
    fn collapse_rows_examples() {
        let m = intmat![[1, 0], [1, 0], [1, 2]];
        assert_eq!(
            collapse_rows(&m, 0, 1, Sign::Plus).unwrap(),
            intmat![[2, 0], [1, 2]]
        );
        let m = intmat![[1, 0], [0, 1], [3, 4]];
        assert_eq!(
            collapse_rows(&m, 1, 2, Sign::Plus).unwrap(),
            intmat![[1, 0], [3, 5]]
        );
        let eq = intmat![[2, 5], [2, 5], [1, 1]];
        assert!(collapse_rows(&eq, 0, 1, Sign::Minus)
            .unwrap()
            .is_zero_row(0));
        assert_eq!(
            collapse_rows(&m, 0, 3, Sign::Plus).unwrap_err(),
            IntMatError::IndexOutOfRange { index: 3, len: 3 }
        );
        assert_eq!(
            collapse_rows(&m, 1, 1, Sign::Plus).unwrap_err(),
            IntMatError::SameRow
        );
    }

    #[test]
    fn reduce_column_examples() {
        assert_eq!(
            reduce_column(&intmat![[2], [4]], 0).unwrap(),
            intmat![[1], [2]]
        );
        assert_eq!(
            reduce_column(&intmat![[3], [6], [9]], 0).unwrap(),
            intmat![[1], [2], [3]]
        );
        let m = intmat![[2, 3], [4, 5]];
        assert_eq!(reduce_column(&m, 1).unwrap(), m);
        assert_eq!(
            reduce_column(&intmat![[1, 0], [2, 0]], 1).unwrap_err(),
            IntMatError::ZeroColumn(1)
        );
        assert_eq!(
            reduce_column(&intmat![[-4], [6]], 0).unwrap(),
            intmat![[-2], [3]]
        );
    }

    #[test]
    fn three_divisible_pair_examples() {
        let all_ones = intmat![[1, 1], [4, 1], [1, 7], [-2, 1], [1, 1]];
        assert_eq!(
            find_three_divisible_pair(&all_ones).unwrap(),
            RowCombo::Pair {
                first: 0,
                second: 1,
                sign: Sign::Minus
            }
        );
        let mixed = intmat![[1, 0], [2, 0], [0, 1], [1, 1], [1, 2]];
        assert_eq!(
            find_three_divisible_pair(&mixed).unwrap(),
            RowCombo::Pair {
                first: 0,
                second: 1,
                sign: Sign::Plus
            }
        );
        let single = intmat![[1, 0], [2, 1], [3, 6], [1, 1], [1, 2]];
        assert_eq!(
            find_three_divisible_pair(&single).unwrap(),
            RowCombo::Single(2)
        );
        assert!(find_three_divisible_pair(&intmat![[1, 0]]).is_err());
    }

    proptest! {
        #[test]
        fn combo_always_yields_three_divisible_row(rows in proptest::collection::vec(proptest::collection::vec(-20i64..=20, 2), 5)) {
            let m = IntMatrix::<i64>::from_i64_rows(&rows).unwrap();
            let combo = find_three_divisible_pair(&m).unwrap();
            let out = combo.apply(&m).unwrap();
            prop_assert_eq!(out.shape(), (4, 2));
            prop_assert!((0..4).any(|i| out.row(i).iter().all(|v| v % 3 == 0)));
        }
    }
}
