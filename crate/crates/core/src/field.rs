//! Scalar fields for the matrix engine.
//!
//! Everything in [`crate::linalg`] and [`crate::matrix_rep`] is generic over
//! [`Field`]. The only implementation shipped is the prime field [`Gf<P>`],
//! with the modulus fixed at compile time so that arithmetic compiles down to
//! a single `%`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Inv, One, ToPrimitive, Zero};

/// Exact field arithmetic, as needed by Gaussian elimination.
pub trait Field:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Inv<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Characteristic of the field; also its size for prime fields.
    const CHARACTERISTIC: u32;

    /// Every element of the field, zero first.
    fn elements() -> Vec<Self> {
        (0..Self::CHARACTERISTIC as u64)
            .map(|v| Self::from_u64(v).expect("residue in range"))
            .collect()
    }
}

pub const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field `GF(P)`, stored as its least residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const P: u32>(u32);

impl<const P: u32> Gf<P> {
    const PRIME_CHECK: () = assert!(is_prime(P), "Gf<P> requires a prime modulus");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Gf((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf::new(self.0 as u64 + rhs.0 as u64)
    }
}

impl<const P: u32> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf::new(self.0 as u64 + (P - rhs.0) as u64)
    }
}

impl<const P: u32> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf::new(self.0 as u64 * rhs.0 as u64)
    }
}

impl<const P: u32> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf::new((P - self.0) as u64)
    }
}

impl<const P: u32> Inv for Gf<P> {
    type Output = Self;
    /// Fermat inverse. Panics on zero.
    fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in GF({P})");
        self.pow(P - 2)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<const P: u32> Div for Gf<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u32> Zero for Gf<P> {
    fn zero() -> Self {
        Gf::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Gf<P> {
    fn one() -> Self {
        Gf::new(1)
    }
}

impl<const P: u32> FromPrimitive for Gf<P> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Gf::new(n.rem_euclid(P as i64) as u64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Gf::new(n))
    }
}

impl<const P: u32> ToPrimitive for Gf<P> {
    fn to_i64(&self) -> Option<i64> {
        Some(self.0 as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        Some(self.0 as u64)
    }
}

impl<const P: u32> Field for Gf<P> {
    const CHARACTERISTIC: u32 = P;
}
