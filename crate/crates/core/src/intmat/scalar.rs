//! Exact integer scalars backing [`IntMatrix`](super::IntMatrix).
//!
//! Two backings are provided: [`BigInt`] (the default, never overflows) and
//! `i64` with checked arithmetic, which reports [`Overflow`] instead of
//! wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Raised when a checked fixed-width computation leaves its range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in fixed-width arithmetic")]
pub struct Overflow;

pub trait Scalar: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn to_bigint(&self) -> BigInt;
    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow>;

    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn checked_neg(&self) -> Result<Self, Overflow>;
    /// Floor division. `rhs` must be nonzero.
    fn div_floor(&self, rhs: &Self) -> Result<Self, Overflow>;
    /// Remainder with the sign of `rhs`. `rhs` must be nonzero.
    fn mod_floor(&self, rhs: &Self) -> Result<Self, Overflow>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn checked_abs(&self) -> Result<Self, Overflow> {
        if self.is_negative() {
            self.checked_neg()
        } else {
            Ok(self.clone())
        }
    }

    /// `self - q * rhs`, the common elementary-operation step.
    fn sub_mul(&self, q: &Self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_sub(&q.checked_mul(rhs)?)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow> {
        Ok(v.clone())
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_floor(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(Integer::div_floor(self, rhs))
    }
    fn mod_floor(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(Integer::mod_floor(self, rhs))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow> {
        ToPrimitive::to_i64(v).ok_or(Overflow)
    }
    fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow> {
        i64::checked_add(*self, *rhs).ok_or(Overflow)
    }
    fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        i64::checked_sub(*self, *rhs).ok_or(Overflow)
    }
    fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        i64::checked_mul(*self, *rhs).ok_or(Overflow)
    }
    fn checked_neg(&self) -> Result<Self, Overflow> {
        i64::checked_neg(*self).ok_or(Overflow)
    }
    fn div_floor(&self, rhs: &Self) -> Result<Self, Overflow> {
        if *self == i64::MIN && *rhs == -1 {
            return Err(Overflow);
        }
        Ok(Integer::div_floor(self, rhs))
    }
    fn mod_floor(&self, rhs: &Self) -> Result<Self, Overflow> {
        if *rhs == -1 {
            return Ok(0);
        }
        Ok(Integer::mod_floor(self, rhs))
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g` and `g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> Result<(T, T, T), Overflow> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r)?;
        let next_r = old_r.sub_mul(&q, &r)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s.sub_mul(&q, &s)?;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.sub_mul(&q, &t)?;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        Ok((
            old_r.checked_neg()?,
            old_s.checked_neg()?,
            old_t.checked_neg()?,
        ))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

pub fn gcd<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    Ok(ext_gcd(a, b)?.0)
}
