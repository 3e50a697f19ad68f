//! 3×2 matrices: the L-shaped lemma, the modified Hermite normal form and
//! the six exceptional families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{
    confirmed_loop, no_zero_rows, shape_check, Certificate, ChromaticError, ChromaticResult,
    Result, ThreeByTwoCertificate,
};
use crate::intmat::{
    column_hnf, serialize_int, IntMatrix, Sign, SignedPermWitness, UnimodularWitness,
};

/// `matrix = row_transform · M · column_transform`, in MHNF.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MhnfForm {
    pub matrix: IntMatrix,
    pub row_transform: SignedPermWitness,
    pub column_transform: UnimodularWitness,
}

fn entries(m: &IntMatrix) -> [[&BigInt; 2]; 3] {
    [0, 1, 2].map(|i| [m.get(i, 0), m.get(i, 1)])
}

/// `-|w|/2 <= x <= 0`.
fn in_half_window(x: &BigInt, w: &BigInt) -> bool {
    !x.is_positive() && -w.abs() <= x * 2
}

/// All six MHNF conditions, for a 3×2 matrix without zero rows.
pub fn is_mhnf(m: &IntMatrix) -> bool {
    if m.shape() != (3, 2) || (0..3).any(|i| m.is_zero_row(i)) {
        return false;
    }
    let [[y11, y12], [y21, y22], [y31, y32]] = entries(m);
    y11.is_positive()
        && y12.is_zero()
        && (y11 * (y22 - y32)).is_multiple_of(&BigInt::from(3))
        && y22 <= y32
        && y22.abs() <= y32.abs()
        && ((y22.is_zero() && in_half_window(y31, y32)) || in_half_window(y21, y22))
}

/// The shift `t` putting `x + t·w` into `[-|w|/2, 0]`, if one exists.
fn window_shift(x: &BigInt, w: &BigInt) -> Option<BigInt> {
    let g = w.abs();
    let r = x.mod_floor(&g);
    let target = if r.is_zero() { r } else { r - &g };
    in_half_window(&target, w).then(|| (target - x) / w)
}

/// Normalize by a signed row permutation and a unimodular column
/// transform.
///
/// Every candidate of the shape `[[h11, 0], …]` reachable from `M` is one
/// of: a row-signed permutation `P`, the Hermite basis of `P·M`, a sign on
/// its second column, and a shear of the first column by the second. The
/// search visits all of them and returns the lexicographically smallest
/// matrix passing [`is_mhnf`], so the result depends only on the
/// isomorphism class of `M`. A matrix already in MHNF is returned as is.
pub fn to_mhnf(m: &IntMatrix) -> Result<MhnfForm> {
    shape_check(m, 3, 2, "3x2")?;
    no_zero_rows(m)?;
    if is_mhnf(m) {
        return Ok(MhnfForm {
            matrix: m.clone(),
            row_transform: SignedPermWitness::new(IntMatrix::identity(3)?)?,
            column_transform: UnimodularWitness::identity(2)?,
        });
    }
    let mut best: Option<MhnfForm> = None;
    for p in SignedPermWitness::<BigInt>::enumerate(3) {
        let pm = p.matrix().mul(m)?;
        let hb = column_hnf(&pm)?;
        if hb.rank() < 2 {
            return Err(ChromaticError::NoMhnf);
        }
        for sign in [Sign::Plus, Sign::Minus] {
            let mut h = hb.h.clone();
            let mut u = hb.transform.matrix().clone();
            if sign == Sign::Minus {
                h.negate_col(1)?;
                u.negate_col(1)?;
            }
            let (x, w) = if h.get(1, 1).is_zero() {
                (h.get(2, 0), h.get(2, 1))
            } else {
                (h.get(1, 0), h.get(1, 1))
            };
            let Some(t) = window_shift(x, w) else {
                continue;
            };
            h.add_col_multiple(0, 1, &t)?;
            u.add_col_multiple(0, 1, &t)?;
            if !is_mhnf(&h) {
                continue;
            }
            let better = best.as_ref().is_none_or(|b| flat(&h) < flat(&b.matrix));
            if better {
                best = Some(MhnfForm {
                    matrix: h,
                    row_transform: p.clone(),
                    column_transform: UnimodularWitness::new(u)?,
                });
            }
        }
    }
    best.ok_or(ChromaticError::NoMhnf)
}

fn flat(m: &IntMatrix) -> Vec<BigInt> {
    m.row_vecs().concat()
}

/// The six parametric 3×2 MHNF families with chromatic number four.
/// In families 1 to 4 and 6, `k >= 1`; in family 6, `3 ∤ a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum ExceptionalFamily {
    /// `[[1,0],[0,1],[±3k,1+3k]]`
    #[serde(rename = "1")]
    One {
        #[serde(serialize_with = "serialize_int")]
        k: BigInt,
        sign: Sign,
    },
    /// `[[1,0],[0,-1],[±3k,-1+3k]]`
    #[serde(rename = "2")]
    Two {
        #[serde(serialize_with = "serialize_int")]
        k: BigInt,
        sign: Sign,
    },
    /// `[[1,0],[-1,2],[-1-3k,2+3k]]`
    #[serde(rename = "3")]
    Three {
        #[serde(serialize_with = "serialize_int")]
        k: BigInt,
    },
    /// `[[1,0],[-1,-2],[-1+3k,-2+3k]]`
    #[serde(rename = "4")]
    Four {
        #[serde(serialize_with = "serialize_int")]
        k: BigInt,
    },
    /// `[[1,0],[0,-1],[3b,2]]`
    #[serde(rename = "5")]
    Five {
        #[serde(serialize_with = "serialize_int")]
        b: BigInt,
    },
    /// `[[1,0],[-1,a],[-1,a+3(k-1)]]`
    #[serde(rename = "6")]
    Six {
        #[serde(serialize_with = "serialize_int")]
        a: BigInt,
        #[serde(serialize_with = "serialize_int")]
        k: BigInt,
    },
}

impl ExceptionalFamily {
    pub fn id(&self) -> u8 {
        match self {
            ExceptionalFamily::One { .. } => 1,
            ExceptionalFamily::Two { .. } => 2,
            ExceptionalFamily::Three { .. } => 3,
            ExceptionalFamily::Four { .. } => 4,
            ExceptionalFamily::Five { .. } => 5,
            ExceptionalFamily::Six { .. } => 6,
        }
    }

    /// The family member for these parameters, or `None` when the
    /// parameters are out of range.
    pub fn matrix(&self) -> Option<IntMatrix> {
        let three = BigInt::from(3);
        let k_ok = |k: &BigInt| k.is_positive();
        let rows: [[BigInt; 2]; 3] = match self {
            ExceptionalFamily::One { k, sign } => {
                if !k_ok(k) {
                    return None;
                }
                [
                    [1.into(), 0.into()],
                    [0.into(), 1.into()],
                    [&three * k * sign.as_i64(), &three * k + 1],
                ]
            }
            ExceptionalFamily::Two { k, sign } => {
                if !k_ok(k) {
                    return None;
                }
                [
                    [1.into(), 0.into()],
                    [0.into(), (-1).into()],
                    [&three * k * sign.as_i64(), &three * k - 1],
                ]
            }
            ExceptionalFamily::Three { k } => {
                if !k_ok(k) {
                    return None;
                }
                [
                    [1.into(), 0.into()],
                    [(-1).into(), 2.into()],
                    [-(&three * k) - 1, &three * k + 2],
                ]
            }
            ExceptionalFamily::Four { k } => {
                if !k_ok(k) {
                    return None;
                }
                [
                    [1.into(), 0.into()],
                    [(-1).into(), (-2).into()],
                    [&three * k - 1, &three * k - 2],
                ]
            }
            ExceptionalFamily::Five { b } => [
                [1.into(), 0.into()],
                [0.into(), (-1).into()],
                [&three * b, 2.into()],
            ],
            ExceptionalFamily::Six { a, k } => {
                if !k_ok(k) || a.is_multiple_of(&three) {
                    return None;
                }
                [
                    [1.into(), 0.into()],
                    [(-1).into(), a.clone()],
                    [(-1).into(), a + &three * (k - 1)],
                ]
            }
        };
        Some(IntMatrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x2"))
    }

    /// First family (in order 1 to 6) containing `m`, with its parameters.
    pub fn matching(m: &IntMatrix) -> Option<ExceptionalFamily> {
        if m.shape() != (3, 2) {
            return None;
        }
        let [[y11, y12], [_, y22], [y31, y32]] = entries(m);
        if !y11.is_one() || !y12.is_zero() {
            return None;
        }
        let three = BigInt::from(3);
        let (k_div, k_rem) = y31.abs().div_rem(&three);
        let sign = if y31.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let mut candidates = Vec::new();
        if k_rem.is_zero() {
            candidates.push(ExceptionalFamily::One {
                k: k_div.clone(),
                sign,
            });
            candidates.push(ExceptionalFamily::Two { k: k_div, sign });
        }
        let (k3, r3) = (-y31 - 1i32).div_rem(&three);
        if r3.is_zero() {
            candidates.push(ExceptionalFamily::Three { k: k3 });
        }
        let (k4, r4) = (y31 + 1i32).div_rem(&three);
        if r4.is_zero() {
            candidates.push(ExceptionalFamily::Four { k: k4 });
        }
        let (b, r5) = y31.div_rem(&three);
        if r5.is_zero() {
            candidates.push(ExceptionalFamily::Five { b });
        }
        let (k6, r6) = (y32 - y22).div_rem(&three);
        if r6.is_zero() {
            candidates.push(ExceptionalFamily::Six {
                a: y22.clone(),
                k: k6 + 1,
            });
        }
        candidates
            .into_iter()
            .find(|f| f.matrix().as_ref() == Some(m))
    }
}

/// `[[y11, 0], [y21, 0], [y31, y32]]` with `y11, y21, y32 > 0` and
/// `-y32/2 <= y31 <= 0`.
pub fn chi_l_shaped(m: &IntMatrix) -> Result<ChromaticResult> {
    shape_check(m, 3, 2, "3x2")?;
    let [[y11, y12], [y21, y22], [y31, y32]] = entries(m);
    let shaped = y12.is_zero()
        && y22.is_zero()
        && y11.is_positive()
        && y21.is_positive()
        && y32.is_positive()
        && in_half_window(y31, y32);
    if !shaped {
        return Err(ChromaticError::Precondition("matrix is not L-shaped"));
    }
    let one = BigInt::one();
    let case = |c: u8, k: u32| ChromaticResult::chi(k, Certificate::LShaped { case: c });
    if y32.is_one() {
        return confirmed_loop(m);
    }
    if (y11 + y21 + y31).is_even() && y32.is_even() {
        return Ok(case(2, 2));
    }
    if *y11 == one
        && *y21 == one
        && *y31 == -&one
        && !y32.is_multiple_of(&BigInt::from(3))
        && *y32 > one
    {
        return Ok(case(3, 4));
    }
    Ok(case(4, 3))
}

/// 3×2 matrices without zero rows, via their MHNF.
pub fn chi_3x2(m: &IntMatrix) -> Result<ChromaticResult> {
    shape_check(m, 3, 2, "3x2")?;
    no_zero_rows(m)?;
    let mhnf = to_mhnf(m)?;
    let [[y11, _], [y21, y22], [y31, y32]] = entries(&mhnf.matrix);
    let first_is_e1 = y11.is_one() && y21.is_zero() && y31.is_zero();
    let second_is_e3 = y22.is_zero() && y32.is_one();
    if first_is_e1 || second_is_e3 {
        return confirmed_loop(m);
    }
    let (case, k, family) = if (y11 + y21 + y31).is_even() && (y22 + y32).is_even() {
        (2, 2, None)
    } else if let Some(f) = ExceptionalFamily::matching(&mhnf.matrix) {
        (3, 4, Some(f))
    } else {
        (4, 3, None)
    };
    let cert = ThreeByTwoCertificate { case, mhnf, family };
    Ok(ChromaticResult::chi(
        k,
        Certificate::ThreeByTwoCase(Box::new(cert)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat;
    use proptest::prelude::*;

    #[test]
    fn mhnf_examples() {
        for m in [
            intmat![[1, 0], [0, 1], [3, 4]],
            intmat![[2, 0], [0, 1], [1, 4]],
        ] {
            assert!(is_mhnf(&m));
            assert_eq!(to_mhnf(&m).unwrap().matrix, m);
        }
        assert!(!is_mhnf(&intmat![[1, 0], [-1, 1], [-1, 4]]));
        assert!(!is_mhnf(&intmat![[1, 0], [-1, -2], [2, 1]]));
    }

    #[test]
    fn three_by_two_examples() {
        let r = chi_3x2(&intmat![[1, 0], [0, 1], [3, 4]]).unwrap();
        assert_eq!(r.value(), Some(4));
        match r.certificate().unwrap() {
            Certificate::ThreeByTwoCase(c) => {
                assert_eq!(
                    c.family,
                    Some(ExceptionalFamily::One {
                        k: 1.into(),
                        sign: Sign::Plus
                    })
                )
            }
            other => panic!("{other:?}"),
        }
        assert!(chi_3x2(&intmat![[1, 0], [0, 1], [0, 1]])
            .unwrap()
            .is_uncolorable());
        assert_eq!(
            chi_3x2(&intmat![[2, 0], [0, 1], [1, 4]]).unwrap().value(),
            Some(3)
        );
        assert!(chi_3x2(&intmat![[1, 0], [0, 0], [0, 1]]).is_err());
    }

    #[test]
    fn l_shaped_examples() {
        assert_eq!(
            chi_l_shaped(&intmat![[1, 0], [1, 0], [-1, 2]])
                .unwrap()
                .value(),
            Some(4)
        );
        assert!(chi_l_shaped(&intmat![[1, 0], [1, 0], [0, 1]])
            .unwrap()
            .is_uncolorable());
        assert_eq!(
            chi_l_shaped(&intmat![[2, 0], [3, 0], [0, 4]])
                .unwrap()
                .value(),
            Some(3)
        );
        assert_eq!(
            chi_l_shaped(&intmat![[1, 0], [1, 0], [0, 2]])
                .unwrap()
                .value(),
            Some(2)
        );
        assert!(chi_l_shaped(&intmat![[1, 0], [1, 0], [-2, 5]]).is_ok());
        assert!(chi_l_shaped(&intmat![[1, 0], [1, 0], [-2, 4]]).is_ok());
        assert!(chi_l_shaped(&intmat![[1, 0], [1, 0], [-3, 5]]).is_err());
    }

    #[test]
    fn family_round_trip() {
        let fams = [
            ExceptionalFamily::One {
                k: 2.into(),
                sign: Sign::Minus,
            },
            ExceptionalFamily::Two {
                k: 1.into(),
                sign: Sign::Plus,
            },
            ExceptionalFamily::Three { k: 1.into() },
            ExceptionalFamily::Four { k: 2.into() },
            ExceptionalFamily::Five { b: 4.into() },
            ExceptionalFamily::Six {
                a: 2.into(),
                k: 3.into(),
            },
        ];
        for f in fams {
            let m = f.matrix().unwrap();
            let found = ExceptionalFamily::matching(&m).unwrap();
            assert_eq!(found.matrix().unwrap(), m);
        }
        assert_eq!(
            ExceptionalFamily::Six {
                a: 3.into(),
                k: 1.into()
            }
            .matrix(),
            None
        );
        assert_eq!(ExceptionalFamily::Three { k: 0.into() }.matrix(), None);
        assert_eq!(
            ExceptionalFamily::matching(&intmat![[2, 0], [0, 1], [1, 4]]),
            None
        );
    }

    fn nonzero_rows_3x2() -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(
            (-6i64..=6, -6i64..=6).prop_filter("nonzero row", |(a, b)| *a != 0 || *b != 0),
            3,
        )
        .prop_map(|rows| {
            IntMatrix::from_i64_rows(&rows.iter().map(|(a, b)| [*a, *b]).collect::<Vec<_>>())
                .unwrap()
        })
        .prop_filter("rank two", |m| column_hnf(m).unwrap().rank() == 2)
    }

    proptest! {
        #[test]
        fn mhnf_is_total_certified_and_idempotent(m in nonzero_rows_3x2()) {
            let f = to_mhnf(&m).unwrap();
            prop_assert!(is_mhnf(&f.matrix));
            let rebuilt = f.row_transform.matrix().mul(&m).unwrap().mul(f.column_transform.matrix()).unwrap();
            prop_assert_eq!(&rebuilt, &f.matrix);
            prop_assert_eq!(to_mhnf(&f.matrix).unwrap().matrix, f.matrix);
        }
    }
}
