use num_bigint::BigInt;

use super::{IntMatrix, Result, Scalar, UnimodularWitness};

/// Smith normal form `L·M·R = D` with `D` diagonal.
///
/// `invariant_factors` are the nonzero diagonal entries `d_1 | d_2 | …`,
/// unit factors included. `free_rank = rows - invariant_factors.len()`
/// is the rank of the free part of `Z^m / H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T: Scalar = BigInt> {
    pub invariant_factors: Vec<T>,
    pub free_rank: usize,
    pub diagonal: IntMatrix<T>,
    pub left: UnimodularWitness<T>,
    pub right: UnimodularWitness<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Order of `Z^m / H` when finite.
    pub fn group_order(&self) -> Result<Option<T>> {
        if self.free_rank > 0 {
            return Ok(None);
        }
        let mut acc = T::one();
        for d in &self.invariant_factors {
            acc = acc.checked_mul(d)?;
        }
        Ok(Some(acc))
    }
}

pub fn smith_normal_form<T: Scalar>(m: &IntMatrix<T>) -> Result<SmithForm<T>> {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut left = IntMatrix::<T>::identity(rows)?;
    let mut right = IntMatrix::<T>::identity(cols)?;
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero |entry| in the trailing block, first in row-major order
            let mut best: Option<(usize, usize, T)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = d.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    let a = v.checked_abs()?;
                    if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                        best = Some((i, j, a));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(&pivot)?;
                if !q.is_zero() {
                    let nq = q.checked_neg()?;
                    d.add_row_multiple(i, t, &nq)?;
                    left.add_row_multiple(i, t, &nq)?;
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(&pivot)?;
                if !q.is_zero() {
                    let nq = q.checked_neg()?;
                    d.add_col_multiple(j, t, &nq)?;
                    right.add_col_multiple(j, t, &nq)?;
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| {
                    !d.get(i, j)
                        .mod_floor(&pivot)
                        .map(|r| r.is_zero())
                        .unwrap_or(false)
                })
            });
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &T::one())?;
                    left.add_row_multiple(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if d.get(t, t).is_zero() {
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t)?;
            left.negate_row(t)?;
        }
        rank = t + 1;
    }

    let invariant_factors = (0..rank).map(|i| d.get(i, i).clone()).collect();
    Ok(SmithForm {
        invariant_factors,
        free_rank: rows - rank,
        diagonal: d,
        left: UnimodularWitness::new(left)?,
        right: UnimodularWitness::new(right)?,
    })
}
