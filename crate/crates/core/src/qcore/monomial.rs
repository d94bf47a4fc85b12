use std::fmt;

use serde::{Deserialize, Serialize};

use super::exp::HalfExp;

/// A signed half-integer power of q, `±q^(k/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPower {
    pub negative: bool,
    pub exp: HalfExp,
}

impl SignedPower {
    pub const fn new(negative: bool, exp: HalfExp) -> Self {
        SignedPower { negative, exp }
    }

    /// `q^n`
    pub const fn q_int(n: i64) -> Self {
        SignedPower { negative: false, exp: HalfExp::int(n) }
    }

    /// `-q^n`
    pub const fn neg_q_int(n: i64) -> Self {
        SignedPower { negative: true, exp: HalfExp::int(n) }
    }

    pub const fn is_negative(self) -> bool {
        self.negative
    }

    pub fn sign_int(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// `self * q^e`
    pub fn times_q(self, e: HalfExp) -> Self {
        SignedPower { negative: self.negative, exp: self.exp + e }
    }

    pub fn mul(self, other: SignedPower) -> Self {
        SignedPower { negative: self.negative != other.negative, exp: self.exp + other.exp }
    }

    /// `1/self`
    pub fn recip(self) -> Self {
        SignedPower { negative: self.negative, exp: -self.exp }
    }

    /// Whether `1 - self` is the zero polynomial.
    pub fn is_one(self) -> bool {
        !self.negative && self.exp == HalfExp::ZERO
    }
}

impl fmt::Display for SignedPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.exp.0 {
            0 => write!(f, "{sign}1"),
            2 => write!(f, "{sign}q"),
            _ => write!(f, "{sign}q^({})", self.exp),
        }
    }
}
