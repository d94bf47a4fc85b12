use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dense::Dense;
use super::exp::HalfExp;
use super::monomial::SignedPower;
use super::poly::QPolynomial;
use crate::error::{QError, Result};

/// A truncated formal series in q: coefficients are known for every
/// exponent `<= order` and unknown above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub(crate) dense: Dense,
    order: HalfExp,
}

/// First exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub exponent: HalfExp,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl QSeries {
    pub fn zero(order: HalfExp) -> Self {
        QSeries { dense: Dense::zero(), order }
    }

    pub fn one(order: HalfExp) -> Self {
        Self::monomial(BigInt::one(), HalfExp::ZERO, order)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: HalfExp, order: HalfExp) -> Self {
        let mut dense = Dense::monomial(coeff.into(), exp.0);
        dense.truncate(order.0);
        QSeries { dense, order }
    }

    /// The only sanctioned conversion: an exact polynomial read at a stated order.
    pub fn from_poly(p: &QPolynomial, order: HalfExp) -> Self {
        let mut dense = p.dense.clone();
        dense.truncate(order.0);
        QSeries { dense, order }
    }

    pub fn from_terms<I, C>(terms: I, order: HalfExp) -> Self
    where
        I: IntoIterator<Item = (HalfExp, C)>,
        C: Into<BigInt>,
    {
        let mut dense = Dense::from_terms(terms.into_iter().map(|(e, c)| (e.0, c.into())));
        dense.truncate(order.0);
        QSeries { dense, order }
    }

    /// Series whose coefficient of q^n (integer n) is `coeffs[n]`.
    pub fn from_int_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C], order: HalfExp) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(n, c)| (HalfExp::int(n as i64), c.clone())), order)
    }

    pub fn order(&self) -> HalfExp {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.dense.is_zero()
    }

    /// Least stored exponent, `None` when no coefficient up to the order is nonzero.
    pub fn valuation(&self) -> Option<HalfExp> {
        self.dense.min_exp().map(HalfExp)
    }

    /// A lower bound for the true valuation: the stored valuation, or
    /// `order + 1/2` when nothing is stored.
    pub fn valuation_bound(&self) -> HalfExp {
        self.valuation().unwrap_or(self.order + HalfExp(1))
    }

    /// Coefficient of `q^exp`, or `None` beyond the order.
    pub fn coeff(&self, exp: HalfExp) -> Option<BigInt> {
        (exp <= self.order).then(|| self.dense.coeff(exp.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, &BigInt)> + '_ {
        self.dense.terms().map(|(e, c)| (HalfExp(e), c))
    }

    /// Coefficients of q^0, q^1, ..., q^floor(order) (integer exponents only).
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        let top = self.order.floor_int();
        (0..=top.max(-1)).map(|n| self.dense.coeff(2 * n)).collect()
    }

    /// Lower the order; a larger target leaves the series unchanged.
    pub fn truncate(&self, order: HalfExp) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut dense = self.dense.clone();
        dense.truncate(order.0);
        QSeries { dense, order }
    }

    pub fn scale_by_monomial(&self, coeff: &BigInt, exp: HalfExp) -> Self {
        if coeff.is_zero() {
            return QSeries::zero(self.order + exp);
        }
        QSeries { dense: self.dense.scale(coeff).shift(exp.0), order: self.order + exp }
    }

    /// Multiply by `±q^e` (order shifts with it).
    pub fn mul_power(&self, c: SignedPower) -> Self {
        let k = BigInt::from(c.sign_int());
        self.scale_by_monomial(&k, c.exp)
    }

    pub fn mul_poly(&self, p: &QPolynomial) -> Self {
        let order = self.order + min0(p.valuation().unwrap_or(HalfExp::ZERO));
        QSeries { dense: self.dense.mul(&p.dense, Some(order.0)), order }
    }

    /// Multiply by `1 - c`.
    pub fn mul_one_minus(&self, c: SignedPower) -> Self {
        let order = self.order + min0(c.exp);
        QSeries { dense: self.dense.mul_one_minus(c.is_negative(), c.exp.0, Some(order.0)), order }
    }

    /// Divide by `1 - c` where `c` has a positive exponent.
    pub fn div_one_minus(&self, c: SignedPower) -> Result<Self> {
        if c.exp.0 <= 0 {
            return Err(QError::NotInvertible(format!("1 - ({c})")));
        }
        Ok(QSeries { dense: self.dense.div_one_minus_series(c.is_negative(), c.exp.0, self.order.0), order: self.order })
    }

    /// Multiplicative inverse of a series with constant term ±1 and no
    /// negative exponents.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.dense.coeff(0);
        let unit = c0.is_one() || c0 == -BigInt::one();
        if !unit || self.valuation() != Some(HalfExp::ZERO) {
            let shown = match self.valuation() {
                Some(v) if v < HalfExp::ZERO => format!("{c0} (with negative exponents present)"),
                _ => c0.to_string(),
            };
            return Err(QError::NotInvertible(shown));
        }
        let n = self.order.0;
        if n < 0 {
            return Ok(QSeries::zero(self.order));
        }
        let n = n as usize;
        let x: Vec<BigInt> = (0..=n as i64).map(|e| self.dense.coeff(e)).collect();
        let nz: Vec<usize> = (1..=n).filter(|&k| !x[k].is_zero()).collect();
        let mut y: Vec<BigInt> = Vec::with_capacity(n + 1);
        y.push(c0.clone());
        for m in 1..=n {
            let mut s = BigInt::zero();
            for &k in nz.iter().take_while(|&&k| k <= m) {
                s += &x[k] * &y[m - k];
            }
            // y_m = -c0 * s since c0^2 = 1
            y.push(if c0.is_one() { -s } else { s });
        }
        let mut dense = Dense { start: 0, coeffs: y };
        dense.trim();
        Ok(QSeries { dense, order: self.order })
    }

    /// First exponent `<=` both orders where the coefficients differ.
    pub fn first_disagreement(&self, other: &QSeries) -> Option<Disagreement> {
        let top = self.order.min(other.order);
        let lo = match (self.dense.min_exp(), other.dense.min_exp()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return None,
        };
        (lo..=top.0).find_map(|e| {
            let a = self.dense.coeff(e);
            let b = other.dense.coeff(e);
            (a != b).then_some(Disagreement { exponent: HalfExp(e), lhs: a, rhs: b })
        })
    }

    /// Coefficient agreement up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_disagreement(other).is_none()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = QSeries::one(self.order);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Reversal `q -> 1/q` is undefined on truncated series.
    pub fn reverse_q(&self, _shift: HalfExp) -> Result<Self> {
        Err(QError::ReverseOfSeries(self.order))
    }

    /// Canonical fixture form, ending in `O(q^(e))` where `e` is the first unknown exponent.
    pub fn to_canonical(&self) -> String {
        super::text::canonical(self.terms(), Some(self.order))
    }
}

fn min0(e: HalfExp) -> HalfExp {
    e.min(HalfExp::ZERO)
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        QSeries { dense: self.dense.add_signed(&rhs.dense, false, Some(order.0)), order }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        QSeries { dense: self.dense.add_signed(&rhs.dense, true, Some(order.0)), order }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = (self.order + min0(rhs.valuation_bound())).min(rhs.order + min0(self.valuation_bound()));
        QSeries { dense: self.dense.mul(&rhs.dense, Some(order.0)), order }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { dense: self.dense.neg(), order: self.order }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Accumulator for long sums; the order of the result is the minimum order seen.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    dense: Dense,
    order: HalfExp,
}

impl SeriesSum {
    pub fn new(order: HalfExp) -> Self {
        SeriesSum { dense: Dense::zero(), order }
    }

    pub fn add(&mut self, s: &QSeries) {
        if s.order < self.order {
            self.order = s.order;
            self.dense.truncate(self.order.0);
        }
        if s.dense.is_zero() {
            return;
        }
        let mut d = s.dense.clone();
        d.truncate(self.order.0);
        self.dense.add_assign(&d);
    }

    pub fn sub(&mut self, s: &QSeries) {
        self.add(&-s);
    }

    pub fn finish(self) -> QSeries {
        QSeries { dense: self.dense, order: self.order }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_pretty(f, self.terms(), Some(self.order))
    }
}
