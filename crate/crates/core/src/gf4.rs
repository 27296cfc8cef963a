//! The four-element field GF(4) = {0, 1, a, a+1} with a^2 = a + 1.
//!
//! Elements are stored as 2-bit codes `b1*a + b0`: 0, 1, 2 = a, 3 = a+1.
//! Addition is XOR of codes.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Gf4(u8);

const MUL_TABLE: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

// a^2 for each code; also the Frobenius map and the inverse of nonzero elements.
const SQUARE: [u8; 4] = [0, 1, 3, 2];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    /// The generator `a`, a root of x^2 + x + 1.
    pub const ALPHA: Gf4 = Gf4(2);
    pub const ALPHA_PLUS_ONE: Gf4 = Gf4(3);

    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::ALPHA, Gf4::ALPHA_PLUS_ONE];

    /// Builds an element from its code; only the low two bits are used.
    #[inline]
    pub const fn from_code(code: u8) -> Gf4 {
        Gf4(code & 3)
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn square(self) -> Gf4 {
        Gf4(SQUARE[self.0 as usize])
    }

    /// Square root. Squaring is a field automorphism of order 2, so the root of `x` is `x^2`.
    #[inline]
    pub const fn sqrt(self) -> Gf4 {
        self.square()
    }

    pub fn inv(self) -> Result<Gf4> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // a^3 = 1 for every nonzero a
        Ok(self.square())
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf4 {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf4) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Gf4 {
    type Output = Gf4;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    #[inline]
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(MUL_TABLE[self.0 as usize][rhs.0 as usize])
    }
}

impl MulAssign for Gf4 {
    #[inline]
    fn mul_assign(&mut self, rhs: Gf4) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "a",
            _ => "a1",
        })
    }
}
