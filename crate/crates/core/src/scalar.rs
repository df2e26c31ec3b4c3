//! Scalar abstractions.
//!
//! Lattice-point counts are generic over [`Count`], so the dense tables can run
//! in `u64` or `u128` when a bound proves the values fit, and fall back to
//! `BigUint` otherwise. Exact elimination is generic over [`Field`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::{BigInt, BigUint, ToBigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Non-negative exact integer used for lattice-point counts.
pub trait Count:
    Clone
    + Debug
    + Display
    + Send
    + Sync
    + Ord
    + Zero
    + One
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + ToBigUint
    + 'static
{
    /// Largest representable value, `None` when unbounded.
    fn max_value() -> Option<BigUint>;

    fn from_big(v: &BigUint) -> Option<Self>;

    fn checked_add_assign(&mut self, rhs: &Self) -> bool {
        match self.checked_add(rhs) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }

    fn to_big(&self) -> BigUint {
        self.to_biguint().expect("counts are non-negative")
    }
}

impl Count for u64 {
    fn max_value() -> Option<BigUint> {
        Some(BigUint::from(u64::MAX))
    }

    fn from_big(v: &BigUint) -> Option<Self> {
        v.to_u64()
    }
}

impl Count for u128 {
    fn max_value() -> Option<BigUint> {
        Some(BigUint::from(u128::MAX))
    }

    fn from_big(v: &BigUint) -> Option<Self> {
        v.to_u128()
    }
}

impl Count for BigUint {
    fn max_value() -> Option<BigUint> {
        None
    }

    fn from_big(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }

    fn checked_add_assign(&mut self, rhs: &Self) -> bool {
        *self += rhs;
        true
    }
}

/// Ordered field used by Gaussian and Fourier-Motzkin elimination.
pub trait Field:
    Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Signed + FromPrimitive + Send + Sync
{
    /// Whether the value should be treated as zero during pivoting.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the field")
    }
}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
}

/// Smallest of the built-in count widths that can hold `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Width {
    U64,
    U128,
    Big,
}

impl Width {
    pub fn for_bound(bound: &BigUint) -> Width {
        if *bound <= BigUint::from(u64::MAX) {
            Width::U64
        } else if *bound <= BigUint::from(u128::MAX) {
            Width::U128
        } else {
            Width::Big
        }
    }

    pub fn bytes(self) -> usize {
        match self {
            Width::U64 => 8,
            Width::U128 => 16,
            Width::Big => std::mem::size_of::<BigUint>() + 16,
        }
    }
}

pub(crate) fn signed(c: BigUint, sign: i8) -> BigInt {
    let v = BigInt::from(c);
    if sign < 0 {
        -v
    } else {
        v
    }
}

pub(crate) fn one_if<C: Count>(cond: bool) -> C {
    if cond {
        C::one()
    } else {
        C::zero()
    }
}
