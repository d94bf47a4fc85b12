use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An exponent of q on the half-integer grid, stored as a count of half steps.
///
/// `HalfExp(3)` is q^(3/2); `HalfExp(4)` is q^2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfExp(pub i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    /// The exponent `n` (an integer power of q).
    pub const fn int(n: i64) -> Self {
        HalfExp(2 * n)
    }

    /// The exponent `k/2`.
    pub const fn halves(k: i64) -> Self {
        HalfExp(k)
    }

    pub const fn half_steps(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer exponent, if the exponent is integral.
    pub fn as_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    /// Largest integer exponent `<= self`.
    pub fn floor_int(self) -> i64 {
        self.0.div_euclid(2)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl AddAssign for HalfExp {
    fn add_assign(&mut self, rhs: HalfExp) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> HalfExp {
        HalfExp(self.0 * rhs)
    }
}
