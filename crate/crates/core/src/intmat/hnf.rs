use num_bigint::BigInt;
use serde::Serialize;

use super::{ext_gcd, IntMatError, IntMatrix, Result, Scalar, UnimodularWitness};

/// Column-style Hermite normal form `H = M·U` of the column lattice of `M`.
///
/// `H` is lower echelon: column `k` has its first nonzero entry (the pivot,
/// always positive) in row `pivots[k]`, pivot rows strictly increase, and
/// every entry left of a pivot in its row lies in `[0, pivot)`. Zero columns
/// are gathered at the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteBasis<T: Scalar = BigInt> {
    pub h: IntMatrix<T>,
    pub transform: UnimodularWitness<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> HermiteBasis<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `H`, a Z-basis of the lattice.
    pub fn basis(&self) -> Result<IntMatrix<T>> {
        self.h.select_cols(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Coefficients `c` (length `rank`) with `H[:, ..rank]·c = v`, if any.
    ///
    /// Forward substitution on the pivot rows; the remaining rows must then
    /// cancel exactly.
    pub fn solve_basis(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        if v.len() != self.h.rows() {
            return Err(IntMatError::DimensionMismatch {
                expected: self.h.rows(),
                got: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let pivot = self.h.get(p, k);
            let q = residual[p].div_floor(pivot)?;
            if !residual[p].sub_mul(&q, pivot)?.is_zero() {
                return Ok(None);
            }
            for i in p..residual.len() {
                residual[i] = residual[i].sub_mul(&q, self.h.get(i, k))?;
            }
            coeffs.push(q);
        }
        Ok(residual.iter().all(Scalar::is_zero).then_some(coeffs))
    }

    /// Unique coset representative of `v` modulo the lattice: every pivot
    /// row entry reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[T]) -> Result<Vec<T>> {
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let pivot = self.h.get(p, k);
            let q = out[p].div_floor(pivot)?;
            if q.is_zero() {
                continue;
            }
            for (i, x) in out.iter_mut().enumerate().skip(p) {
                *x = x.sub_mul(&q, self.h.get(i, k))?;
            }
        }
        Ok(out)
    }

    /// Lift basis coefficients to coefficients against the source columns.
    pub fn lift(&self, basis_coeffs: &[T]) -> Result<Vec<T>> {
        let cols = self.h.cols();
        let mut padded = basis_coeffs.to_vec();
        padded.resize(cols, T::zero());
        self.transform.matrix().mul_vec(&padded)
    }
}

pub fn column_hnf<T: Scalar>(m: &IntMatrix<T>) -> Result<HermiteBasis<T>> {
    let (rows, cols) = m.shape();
    let mut h = m.clone();
    let mut u = IntMatrix::<T>::identity(cols)?;
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, k).clone();
            let b = h.get(i, j).clone();
            let (g, x, y) = ext_gcd(&a, &b)?;
            let a_g = a.div_floor(&g)?;
            let b_g = b.div_floor(&g)?.checked_neg()?;
            // (col_k, col_j) <- (x col_k + y col_j, -b/g col_k + a/g col_j), det 1
            h.combine_cols(k, j, [&x, &y, &b_g, &a_g])?;
            u.combine_cols(k, j, [&x, &y, &b_g, &a_g])?;
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k)?;
            u.negate_col(k)?;
        }
        let pivot = h.get(i, k).clone();
        for j in 0..k {
            let q = h.get(i, j).div_floor(&pivot)?;
            if !q.is_zero() {
                let nq = q.checked_neg()?;
                h.add_col_multiple(j, k, &nq)?;
                u.add_col_multiple(j, k, &nq)?;
            }
        }
        pivots.push(i);
        k += 1;
    }
    Ok(HermiteBasis {
        h,
        transform: UnimodularWitness::new(u)?,
        pivots,
    })
}

/// Integer coefficients `c` with `M·c = v`, or `None` when `v` is outside
/// the column lattice.
pub fn lattice_member<T: Scalar>(m: &IntMatrix<T>, v: &[T]) -> Result<Option<Vec<T>>> {
    if v.len() != m.rows() {
        return Err(IntMatError::DimensionMismatch {
            expected: m.rows(),
            got: v.len(),
        });
    }
    let basis = column_hnf(m)?;
    match basis.solve_basis(v)? {
        Some(c) => Ok(Some(basis.lift(&c)?)),
        None => Ok(None),
    }
}

/// Standard basis vector `e_index` lies in the column lattice via `coefficients`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct LoopWitness<T: Scalar = BigInt> {
    pub index: usize,
    #[serde(serialize_with = "super::serialize_ints")]
    pub coefficients: Vec<T>,
}

impl<T: Scalar> LoopWitness<T> {
    /// `M·coefficients == e_index`, recomputed exactly.
    pub fn verify(&self, m: &IntMatrix<T>) -> bool {
        if self.index >= m.rows() || self.coefficients.len() != m.cols() {
            return false;
        }
        match m.mul_vec(&self.coefficients) {
            Ok(v) => v.iter().enumerate().all(|(i, x)| {
                if i == self.index {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            }),
            Err(_) => false,
        }
    }
}

/// Least `i` with `e_i` in the column lattice, i.e. a loop in the graph.
pub fn has_loops<T: Scalar>(m: &IntMatrix<T>) -> Result<Option<LoopWitness<T>>> {
    let basis = column_hnf(m)?;
    let rows = m.rows();
    for i in 0..rows {
        let mut e = vec![T::zero(); rows];
        e[i] = T::one();
        if let Some(c) = basis.solve_basis(&e)? {
            return Ok(Some(LoopWitness {
                index: i,
                coefficients: basis.lift(&c)?,
            }));
        }
    }
    Ok(None)
}

/// Same lattice, Z-independent columns: the nonzero part of the HNF.
pub fn drop_dependent_columns<T: Scalar>(m: &IntMatrix<T>) -> Result<IntMatrix<T>> {
    column_hnf(m)?.basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let id = intmat![[1, 0], [0, 1]];
        let hb = column_hnf(&id).unwrap();
        assert_eq!(hb.h, id);
        assert_eq!(hb.transform.matrix(), &id);

        let hb = column_hnf(&intmat![[2, 3]]).unwrap();
        assert_eq!(hb.h, intmat![[1, 0]]);
        assert_eq!(hb.pivots, vec![0]);

        let tri = intmat![[3, 0], [1, 3]];
        assert_eq!(column_hnf(&tri).unwrap().h, tri);
    }

    #[test]
    fn hnf_transform_reproduces_h() {
        let m = intmat![[4, 6, 2], [1, -3, 5], [7, 0, 0]];
        let hb = column_hnf(&m).unwrap();
        assert_eq!(m.mul(hb.transform.matrix()).unwrap(), hb.h);
    }

    #[test]
    fn lattice_member_examples() {
        assert_eq!(
            lattice_member(&intmat![[2, 3]], &big(&[1])).unwrap(),
            Some(big(&[-1, 1]))
        );
        let m = intmat![[1, 0], [0, 1], [3, 4]];
        assert_eq!(lattice_member(&m, &big(&[1, 0, 0])).unwrap(), None);
        assert_eq!(
            lattice_member(&m, &big(&[0, 0, 0])).unwrap(),
            Some(big(&[0, 0]))
        );
        assert!(matches!(
            lattice_member(&m, &big(&[1, 0])),
            Err(IntMatError::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn has_loops_examples() {
        let w = has_loops(&intmat![[1]]).unwrap().unwrap();
        assert_eq!((w.index, w.coefficients), (0, big(&[1])));
        let w = has_loops(&intmat![[2, 3]]).unwrap().unwrap();
        assert_eq!((w.index, w.coefficients.clone()), (0, big(&[-1, 1])));
        assert!(w.verify(&intmat![[2, 3]]));
        assert_eq!(has_loops(&intmat![[1, 0], [0, 1], [3, 4]]).unwrap(), None);
    }

    #[test]
    fn drop_dependent_columns_examples() {
        assert_eq!(
            drop_dependent_columns(&intmat![[2, 3]]).unwrap(),
            intmat![[1]]
        );
        assert_eq!(
            drop_dependent_columns(&intmat![[1, 2], [0, 0]]).unwrap(),
            intmat![[1], [0]]
        );
        assert_eq!(
            drop_dependent_columns(&intmat![[1, 0], [1, 2], [5, 1]])
                .unwrap()
                .cols(),
            2
        );
    }

    #[test]
    fn checked_backing_overflows_loudly() {
        let m = IntMatrix::<i64>::from_i64_rows(&[[i64::MAX, 3], [2, i64::MAX - 1]]).unwrap();
        assert!(matches!(column_hnf(&m), Err(IntMatError::Overflow(_))));
        // The arbitrary-precision backing handles the same input.
        let hb = column_hnf(&m.to_bigint()).unwrap();
        assert_eq!(m.to_bigint().mul(hb.transform.matrix()).unwrap(), hb.h);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix<BigInt>> {
        (1usize..5, 0usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
                .prop_map(|rows| IntMatrix::<BigInt>::from_i64_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn hnf_is_canonical_echelon_with_same_lattice(m in small_matrix()) {
            let hb = column_hnf(&m).unwrap();
            prop_assert_eq!(m.mul(hb.transform.matrix()).unwrap(), hb.h.clone());
            for (k, &p) in hb.pivots.iter().enumerate() {
                prop_assert!(*hb.h.get(p, k) > BigInt::from(0));
                for i in 0..p {
                    prop_assert!(hb.h.get(i, k).is_zero());
                }
                for j in 0..k {
                    let e = hb.h.get(p, j);
                    prop_assert!(*e >= BigInt::from(0) && e < hb.h.get(p, k));
                }
            }
            for j in hb.rank()..m.cols() {
                prop_assert!(hb.h.is_zero_column(j));
            }
            // mutual membership
            for j in 0..m.cols() {
                prop_assert!(hb.solve_basis(&m.column(j)).unwrap().is_some());
            }
            for j in 0..hb.h.cols() {
                let c = lattice_member(&m, &hb.h.column(j)).unwrap().unwrap();
                prop_assert_eq!(m.mul_vec(&c).unwrap(), hb.h.column(j));
            }
        }

        #[test]
        fn membership_coefficients_reproduce(m in small_matrix(), coeffs in proptest::collection::vec(-4i64..=4, 4)) {
            let c: Vec<BigInt> = coeffs.iter().take(m.cols()).map(|&x| BigInt::from(x)).collect();
            let c = if c.len() < m.cols() { vec![BigInt::from(0); m.cols()] } else { c };
            let v = m.mul_vec(&c).unwrap();
            let found = lattice_member(&m, &v).unwrap().expect("lattice vector");
            prop_assert_eq!(m.mul_vec(&found).unwrap(), v);
        }

        #[test]
        fn i64_and_bigint_backings_agree(m in small_matrix()) {
            let small = m.to_i64().unwrap();
            let a = column_hnf(&small).unwrap();
            let b = column_hnf(&m).unwrap();
            prop_assert_eq!(a.h.to_bigint(), b.h);
            prop_assert_eq!(a.pivots, b.pivots);
        }
    }
}
