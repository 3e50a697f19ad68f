//! 4×2 matrices and the `m >= 5` main theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    no_zero_rows, shape_check, Certificate, ChromaticError, ChromaticResult, FourByTwoWitness,
    Result,
};
use crate::intmat::{
    column_hnf, ext_gcd, has_loops, is_bipartite, IntMatrix, SignedPermWitness, UnimodularWitness,
};

/// First column of the 4×2 normal form.
pub const FOUR_BY_TWO_TARGET: [i64; 4] = [1, 1, 1, 0];

fn rank_two_preconditions(m: &IntMatrix) -> Result<()> {
    no_zero_rows(m)?;
    if has_loops(m)?.is_some() {
        return Err(ChromaticError::Precondition("graph has loops"));
    }
    if is_bipartite(m)? {
        return Err(ChromaticError::Precondition("graph is bipartite"));
    }
    Ok(())
}

/// Index of the first row divisible by 3, for a 3×2 or 4×2 matrix without
/// zero rows whose graph has no loops. Such a row forces `χ <= 3`.
pub fn three_div_row_bound(m: &IntMatrix) -> Result<Option<usize>> {
    if m.cols() != 2 || !(3..=4).contains(&m.rows()) {
        return Err(ChromaticError::Shape {
            expected: "3x2 or 4x2",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    no_zero_rows(m)?;
    if has_loops(m)?.is_some() {
        return Err(ChromaticError::Precondition("graph has loops"));
    }
    let three = BigInt::from(3);
    Ok((0..m.rows()).find(|&i| m.row(i).iter().all(|v| v.is_multiple_of(&three))))
}

/// Searches `P·M·U = [(1,a),(1,b),(1,c),(0,1)]` with `3 | a + b + c`.
///
/// For each signed permutation `P` (in [`SignedPermWitness::enumerate`]
/// order) the target column `v = (1,1,1,0)` must be a primitive vector of
/// the lattice of `P·M`; its basis completions `w` then agree up to
/// `±w + t·v`, so `|w_4| = 1` and `w_1 + w_2 + w_3 mod 3` are decided by
/// any one of them. The first success is normalized to `a = 0`.
fn search_4x2(m: &IntMatrix) -> Result<Option<FourByTwoWitness>> {
    let v: Vec<BigInt> = FOUR_BY_TWO_TARGET
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    let three = BigInt::from(3);
    for p in SignedPermWitness::<BigInt>::enumerate(4) {
        let pm = p.matrix().mul(m)?;
        let hb = column_hnf(&pm)?;
        if hb.rank() != 2 {
            continue;
        }
        let Some(c) = hb.solve_basis(&v)? else {
            continue;
        };
        let (g, x, y) = ext_gcd(&c[0], &c[1])?;
        if !g.is_one() {
            continue;
        }
        // c0·x + c1·y = 1, so d = (-y, x) completes c to a unimodular pair
        let d = [-&y, x];
        let basis = hb.basis()?;
        let w = basis.mul_vec(&d)?;
        if !w[3].abs().is_one() {
            continue;
        }
        let sigma = w[3].clone();
        let w: Vec<BigInt> = w.iter().map(|e| e * &sigma).collect();
        if !(&w[0] + &w[1] + &w[2]).is_multiple_of(&three) {
            continue;
        }
        let shift = w[0].clone();
        let second = [
            &d[0] * &sigma - &shift * &c[0],
            &d[1] * &sigma - &shift * &c[1],
        ];
        let k = IntMatrix::from_rows(vec![
            vec![c[0].clone(), second[0].clone()],
            vec![c[1].clone(), second[1].clone()],
        ])?;
        let u = UnimodularWitness::new(hb.transform.matrix().mul(&k)?)?;
        return Ok(Some(FourByTwoWitness {
            p,
            u,
            a: BigInt::zero(),
            b: &w[1] - &shift,
            c: &w[2] - &shift,
        }));
    }
    Ok(None)
}

/// 4×2 matrices without zero rows whose graph is loop-free and not
/// bipartite: four colors iff the normal form search succeeds, else three.
pub fn chi_4x2(m: &IntMatrix) -> Result<ChromaticResult> {
    shape_check(m, 4, 2, "4x2")?;
    rank_two_preconditions(m)?;
    match search_4x2(m)? {
        Some(w) => Ok(ChromaticResult::chi(4, Certificate::FourByTwo(Box::new(w)))),
        None => Ok(ChromaticResult::chi(
            3,
            Certificate::FourByTwoNegative {
                permutations_checked: 384,
            },
        )),
    }
}

/// `m×2` with `m >= 5`, no zero rows, loop-free and not bipartite: always
/// three colors.
pub fn chi_mx2_main(m: &IntMatrix) -> Result<ChromaticResult> {
    if m.cols() != 2 || m.rows() < 5 {
        return Err(ChromaticError::Shape {
            expected: "mx2 with m >= 5",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    rank_two_preconditions(m)?;
    Ok(ChromaticResult::chi(
        3,
        Certificate::MainTheorem { rows: m.rows() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;

    #[test]
    fn four_by_two_examples() {
        let m = intmat![[1, 0], [1, 1], [1, 2], [0, 1]];
        let r = chi_4x2(&m).unwrap();
        assert_eq!(r.value(), Some(4));
        match r.certificate().unwrap() {
            Certificate::FourByTwo(w) => {
                assert_eq!(w.p.matrix(), &IntMatrix::identity(4).unwrap());
                assert_eq!(w.u.matrix(), &IntMatrix::identity(2).unwrap());
                assert_eq!(
                    (w.a.clone(), w.b.clone(), w.c.clone()),
                    (0.into(), 1.into(), 2.into())
                );
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            chi_4x2(&intmat![[1, 0], [1, 1], [1, 1], [0, 1]])
                .unwrap()
                .value(),
            Some(3)
        );
        // column sums 4 and 4: bipartite, outside the theorem
        assert!(matches!(
            chi_4x2(&intmat![[2, 0], [1, 1], [1, 2], [0, 1]]),
            Err(ChromaticError::Precondition(_))
        ));
    }

    #[test]
    fn witness_multiplies_out() {
        let m = intmat![[2, 1], [1, 3], [0, 1], [1, 0]];
        if let Some(w) = search_4x2(&m).unwrap() {
            let pmu = w.p.matrix().mul(&m).unwrap().mul(w.u.matrix()).unwrap();
            let expect = IntMatrix::from_rows(vec![
                vec![1.into(), w.a.clone()],
                vec![1.into(), w.b.clone()],
                vec![1.into(), w.c.clone()],
                vec![0.into(), 1.into()],
            ])
            .unwrap();
            assert_eq!(pmu, expect);
        }
    }

    #[test]
    fn three_divisible_rows() {
        assert_eq!(
            three_div_row_bound(&intmat![[3, 6], [1, 0], [0, 1], [1, 1]]).unwrap(),
            Some(0)
        );
        assert_eq!(
            three_div_row_bound(&intmat![[1, 0], [0, 1], [3, 4]]).unwrap(),
            None
        );
        assert_eq!(
            three_div_row_bound(&intmat![[2, 0], [0, 1], [1, 4]]).unwrap(),
            None
        );
        assert!(three_div_row_bound(&intmat![[1, 0], [0, 1], [0, 1]]).is_err());
    }

    #[test]
    fn main_theorem() {
        let m = intmat![[1, 0], [1, 0], [1, 0], [1, 0], [1, 2]];
        assert_eq!(chi_mx2_main(&m).unwrap().value(), Some(3));
        assert!(chi_mx2_main(&intmat![[2, 0], [1, 1], [1, 1], [1, 1], [1, 1]]).is_err());
        assert!(chi_mx2_main(&intmat![[1, 0], [1, 0], [1, 0], [1, 2]]).is_err());
    }
}
