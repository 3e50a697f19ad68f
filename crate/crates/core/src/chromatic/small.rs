//! One-row and one-column matrices, circulants, and 2×2 matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    confirmed_loop, shape_check, Certificate, ChromaticError, ChromaticResult,
    CirculantCertificate, Result, TwoByTwoCertificate,
};
use crate::cayley::CirculantParams;
use crate::intmat::{column_hnf, IntMatrix, LoopWitness, UnimodularWitness};

/// `b` is a multiple of `a`; `0 | b` only for `b = 0`.
pub(crate) fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        b.is_multiple_of(a)
    }
}

/// A single row `(y_1, …, y_r)`: loops iff the gcd `e` is 1, otherwise
/// two colors for even `e` and three for odd `e`.
pub fn chi_one_row(y: &IntMatrix) -> Result<ChromaticResult> {
    if y.rows() != 1 {
        return Err(ChromaticError::Shape {
            expected: "1xr",
            rows: y.rows(),
            cols: y.cols(),
        });
    }
    let e = y.row(0).iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if e.is_zero() {
        return Err(ChromaticError::Precondition("row is all zero"));
    }
    if e.is_one() {
        return confirmed_loop(y);
    }
    let k = if e.is_even() { 2 } else { 3 };
    Ok(ChromaticResult::chi(k, Certificate::OneRowGcd { e }))
}

/// A single column: loops iff it is `±e_i`, otherwise the parity of the
/// number of odd entries decides between two and three colors.
pub fn chi_one_column(y: &IntMatrix) -> Result<ChromaticResult> {
    if y.cols() != 1 {
        return Err(ChromaticError::Shape {
            expected: "mx1",
            rows: y.rows(),
            cols: y.cols(),
        });
    }
    let col = y.column(0);
    let nonzero: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
    match nonzero.as_slice() {
        [] => return Err(ChromaticError::Precondition("column is zero")),
        &[i] if col[i].abs().is_one() => {
            let witness = LoopWitness {
                index: i,
                coefficients: vec![col[i].clone()],
            };
            return Ok(ChromaticResult::Uncolorable { witness });
        }
        _ => {}
    }
    let odd_entries = col.iter().filter(|v| v.is_odd()).count();
    let k = if odd_entries % 2 == 0 { 2 } else { 3 };
    Ok(ChromaticResult::chi(
        k,
        Certificate::TomatoCage { odd_entries },
    ))
}

/// Case number (1 to 5) and chromatic number of a Heuberger circulant,
/// the first matching case winning. Congruences are taken mod `|n|`.
pub fn circulant_case(p: &CirculantParams) -> (u8, u32) {
    let n = p.modulus();
    let (a, b) = (p.a.mod_floor(&n), p.b.mod_floor(&n));
    let congruent = |x: &BigInt, y: &BigInt| (x - y).is_multiple_of(&n);
    let plus_minus =
        |x: &BigInt, y: &BigInt, f: i64| congruent(x, &(y * f)) || congruent(x, &(y * -f));
    let five = BigInt::from(5);
    let thirteen = BigInt::from(13);
    if a.is_odd() && b.is_odd() && n.is_even() {
        (1, 2)
    } else if n == five && plus_minus(&a, &b, 2) {
        (2, 5)
    } else if n == thirteen && plus_minus(&a, &b, 5) {
        (3, 4)
    } else if n != five
        && !n.is_multiple_of(&BigInt::from(3))
        && (plus_minus(&a, &b, 2) || plus_minus(&b, &a, 2))
    {
        (4, 4)
    } else {
        (5, 3)
    }
}

fn circulant_certificate(p: &CirculantParams) -> Result<(u32, CirculantCertificate)> {
    let params = CirculantParams::new(p.n.clone(), p.a.clone(), p.b.clone())?;
    let (case, k) = circulant_case(&params);
    Ok((k, CirculantCertificate { case, params }))
}

pub fn chi_circulant(p: &CirculantParams) -> Result<ChromaticResult> {
    let (k, cert) = circulant_certificate(p)?;
    Ok(ChromaticResult::chi(k, Certificate::CirculantCase(cert)))
}

/// Column operations bringing a 2×2 matrix to lower triangular form with
/// nonnegative diagonal: returns `(T, U)` with `M·U = T`.
pub fn triangularize_2x2(m: &IntMatrix) -> Result<(IntMatrix, UnimodularWitness)> {
    shape_check(m, 2, 2, "2x2")?;
    let hb = column_hnf(m)?;
    debug_assert!(hb.h.get(0, 1).is_zero());
    Ok((hb.h, hb.transform))
}

pub fn chi_2x2(m: &IntMatrix) -> Result<ChromaticResult> {
    let (tri, transform) = triangularize_2x2(m)?;
    let (y11, y21, y22) = (
        tri.get(0, 0).clone(),
        tri.get(1, 0).clone(),
        tri.get(1, 1).clone(),
    );
    let d = y11.gcd(&y21);
    let e = d.gcd(&y22);
    let cert = |case: u8, q: Option<BigInt>, circulant: Option<CirculantCertificate>| {
        let c = TwoByTwoCertificate {
            case,
            triangular: tri.clone(),
            transform: transform.clone(),
            d: d.clone(),
            e: e.clone(),
            q,
            circulant,
        };
        Certificate::TwoByTwoCase(Box::new(c))
    };

    if y22.is_one()
        || (y11.is_one() && divides(&y22, &y21))
        || (y11.is_zero() && y21.gcd(&y22).is_one())
    {
        return confirmed_loop(m);
    }
    if (&y11 + &y21).is_even() && y22.is_even() {
        return Ok(ChromaticResult::chi(2, cert(2, None, None)));
    }
    if y11.is_zero() || y22.is_zero() || !e.is_one() || divides(&y22, &y21) {
        return Ok(ChromaticResult::chi(3, cert(3, None, None)));
    }
    // gcd(y11, y21 + q·y22) is periodic in q with period y11
    let mut q = BigInt::zero();
    while !y11.gcd(&(&y21 + &q * &y22)).is_one() {
        q += 1;
        if q > y11 {
            return Err(ChromaticError::Inconsistent(
                "no q with gcd(y11, y21 + q·y22) = 1",
            ));
        }
    }
    let a = -(&y21 + &q * &y22);
    let n = &y11 * &y22;
    let params = CirculantParams::new(n, a, y11.clone())?;
    let (k, circ) = circulant_certificate(&params)?;
    Ok(ChromaticResult::chi(k, cert(4, Some(q), Some(circ))))
}
