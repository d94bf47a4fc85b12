//! Dense coefficient storage shared by `QPolynomial` and `QSeries`.
//!
//! Slot `i` of `coeffs` holds the coefficient of q^((start + i)/2). The
//! vector is trimmed so that its first and last entries are nonzero; the
//! empty vector is the zero element.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Dense {
    pub start: i64,
    pub coeffs: Vec<BigInt>,
}

impl Dense {
    pub fn zero() -> Self {
        Dense::default()
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        let mut d = Dense { start: exp, coeffs: vec![coeff] };
        d.trim();
        d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest stored slot, if any.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.start;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Drop every slot above `cap`.
    pub fn truncate(&mut self, cap: i64) {
        if self.coeffs.is_empty() {
            return;
        }
        let keep = cap - self.start + 1;
        if keep <= 0 {
            self.coeffs.clear();
            self.start = 0;
        } else if (keep as usize) < self.coeffs.len() {
            self.coeffs.truncate(keep as usize);
            self.trim();
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Dense::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        let mut d = Dense { start: lo, coeffs };
        d.trim();
        d
    }

    pub fn neg(&self) -> Self {
        Dense { start: self.start, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Dense::zero();
        }
        Dense { start: self.start + by, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Dense::zero();
        }
        Dense { start: self.start, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `self + sign*other`, keeping only slots `<= cap` when a cap is given.
    pub fn add_signed(&self, other: &Dense, negate: bool, cap: Option<i64>) -> Self {
        if other.is_zero() {
            let mut r = self.clone();
            if let Some(c) = cap {
                r.truncate(c);
            }
            return r;
        }
        if self.is_zero() {
            let mut r = if negate { other.neg() } else { other.clone() };
            if let Some(c) = cap {
                r.truncate(c);
            }
            return r;
        }
        let lo = self.start.min(other.start);
        let mut hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        if let Some(c) = cap {
            hi = hi.min(c);
        }
        if hi < lo {
            return Dense::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.start + i as i64;
            if e > hi {
                break;
            }
            coeffs[(e - lo) as usize] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.start + i as i64;
            if e > hi {
                break;
            }
            if negate {
                coeffs[(e - lo) as usize] -= c;
            } else {
                coeffs[(e - lo) as usize] += c;
            }
        }
        let mut d = Dense { start: lo, coeffs };
        d.trim();
        d
    }

    /// In-place `self += other` without a cap.
    pub fn add_assign(&mut self, other: &Dense) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let other_hi = other.max_exp().unwrap();
        if other.start < self.start {
            let pad = (self.start - other.start) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.start = other.start;
        }
        let self_hi = self.max_exp().unwrap();
        if other_hi > self_hi {
            self.coeffs.resize((other_hi - self.start + 1) as usize, BigInt::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.start + i as i64 - self.start) as usize;
            self.coeffs[idx] += c;
        }
        self.trim();
    }

    /// Product, keeping only slots `<= cap` when a cap is given.
    pub fn mul(&self, other: &Dense, cap: Option<i64>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dense::zero();
        }
        let lo = self.start + other.start;
        let mut hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        if let Some(c) = cap {
            hi = hi.min(c);
        }
        if hi < lo {
            return Dense::zero();
        }
        let len = (hi - lo + 1) as usize;
        if let Some(d) = self.mul_small(other, lo, len) {
            return d;
        }
        let mut acc = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            let room = (len - i).min(other.coeffs.len());
            for (j, b) in other.coeffs[..room].iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        let mut d = Dense { start: lo, coeffs: acc };
        d.trim();
        d
    }

    /// Fast path: both operands fit in i64 and the accumulated sum fits in i128.
    fn mul_small(&self, other: &Dense, lo: i64, len: usize) -> Option<Dense> {
        let a = small_coeffs(&self.coeffs)?;
        let b = small_coeffs(&other.coeffs)?;
        let max_a = a.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as u128;
        let max_b = b.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as u128;
        let terms = a.len().min(b.len()) as u128;
        let bound = max_a.checked_mul(max_b)?.checked_mul(terms)?;
        if bound >= (1u128 << 126) {
            return None;
        }
        let mut acc = vec![0i128; len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            let room = (len - i).min(b.len());
            let x = x as i128;
            for (j, &y) in b[..room].iter().enumerate() {
                acc[i + j] += x * y as i128;
            }
        }
        let mut d = Dense { start: lo, coeffs: acc.into_iter().map(BigInt::from).collect() };
        d.trim();
        Some(d)
    }

    /// Multiply by `(1 - c q^k)` with `c = ±1`, `k` in half steps.
    pub fn mul_one_minus(&self, c_negative: bool, k: i64, cap: Option<i64>) -> Self {
        let shifted = self.shift(k);
        // 1 - c q^k: subtract c * shifted
        self.add_signed(&shifted, !c_negative, cap)
    }

    /// Divide by `(1 - c q^k)`, `k > 0`, as a power series truncated at `cap`.
    pub fn div_one_minus_series(&self, c_negative: bool, k: i64, cap: i64) -> Self {
        debug_assert!(k > 0);
        if self.is_zero() || cap < self.start {
            return Dense::zero();
        }
        let len = (cap - self.start + 1) as usize;
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        let k = k as usize;
        for i in 0..len {
            let mut v = if i < self.coeffs.len() { self.coeffs[i].clone() } else { BigInt::zero() };
            if i >= k {
                if c_negative {
                    v -= &out[i - k];
                } else {
                    v += &out[i - k];
                }
            }
            out.push(v);
        }
        let mut d = Dense { start: self.start, coeffs: out };
        d.trim();
        d
    }

    /// Exact division by `(1 - c q^k)`, `k > 0`. Returns `None` if it does not divide.
    pub fn div_one_minus_exact(&self, c_negative: bool, k: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(Dense::zero());
        }
        let n = self.coeffs.len() as i64;
        if n <= k {
            return None;
        }
        let qlen = (n - k) as usize;
        let cap = self.start + qlen as i64 - 1;
        let quotient = self.div_one_minus_series(c_negative, k, cap);
        let back = quotient.mul_one_minus(c_negative, k, None);
        (back == *self).then_some(quotient)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

fn small_coeffs(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}
