use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dense::Dense;
use super::exp::HalfExp;
use super::monomial::SignedPower;

/// Exact Laurent polynomial in q on the half-integer exponent grid with
/// arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    pub(crate) dense: Dense,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { dense: Dense::zero() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), HalfExp::ZERO)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: HalfExp) -> Self {
        QPolynomial { dense: Dense::monomial(coeff.into(), exp.0) }
    }

    /// `1 - c` for a signed power `c`.
    pub fn one_minus(c: SignedPower) -> Self {
        Self::one() - Self::from(c)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (HalfExp, C)>,
        C: Into<BigInt>,
    {
        QPolynomial { dense: Dense::from_terms(terms.into_iter().map(|(e, c)| (e.0, c.into()))) }
    }

    /// Convenience constructor from integer exponents.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (HalfExp::int(e), c)))
    }

    pub fn is_zero(&self) -> bool {
        self.dense.is_zero()
    }

    pub fn coeff(&self, exp: HalfExp) -> BigInt {
        self.dense.coeff(exp.0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, &BigInt)> + '_ {
        self.dense.terms().map(|(e, c)| (HalfExp(e), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn valuation(&self) -> Option<HalfExp> {
        self.dense.min_exp().map(HalfExp)
    }

    pub fn degree(&self) -> Option<HalfExp> {
        self.dense.max_exp().map(HalfExp)
    }

    pub fn scale_by_monomial(&self, coeff: &BigInt, exp: HalfExp) -> Self {
        QPolynomial { dense: self.dense.scale(coeff).shift(exp.0) }
    }

    pub fn shift(&self, exp: HalfExp) -> Self {
        QPolynomial { dense: self.dense.shift(exp.0) }
    }

    /// Multiply by `(1 - c)` in place of building the binomial.
    pub fn mul_one_minus(&self, c: SignedPower) -> Self {
        QPolynomial { dense: self.dense.mul_one_minus(c.is_negative(), c.exp.0, None) }
    }

    /// Exact division by `(1 - c)`; `None` if the quotient is not a polynomial.
    /// Requires `c` to have a positive exponent.
    pub fn div_one_minus(&self, c: SignedPower) -> Option<Self> {
        assert!(c.exp.0 > 0, "division by 1 - c needs a positive exponent");
        self.dense.div_one_minus_exact(c.is_negative(), c.exp.0).map(|dense| QPolynomial { dense })
    }

    /// Keep only terms with exponent `<= cap`.
    pub fn truncate(&self, cap: HalfExp) -> Self {
        let mut d = self.dense.clone();
        d.truncate(cap.0);
        QPolynomial { dense: d }
    }

    /// `q^shift * x(1/q)`.
    pub fn reverse_q(&self, shift: HalfExp) -> Self {
        QPolynomial::from_terms(self.terms().map(|(e, c)| (shift - e, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// True when no coefficient is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.dense.all_nonnegative()
    }

    /// True when every stored exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(e, _)| e.is_integral())
    }

    /// Value at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.dense.coeffs.iter().sum()
    }
}

impl From<SignedPower> for QPolynomial {
    fn from(c: SignedPower) -> Self {
        QPolynomial::monomial(c.sign_int(), c.exp)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial { dense: self.dense.add_signed(&rhs.dense, false, None) }
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial { dense: self.dense.add_signed(&rhs.dense, true, None) }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial { dense: self.dense.mul(&rhs.dense, None) }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial { dense: self.dense.neg() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: &QPolynomial) -> QPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        let mut acc = Dense::zero();
        for p in iter {
            acc.add_assign(&p.dense);
        }
        QPolynomial { dense: acc }
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_pretty(f, self.terms(), None)
    }
}

impl QPolynomial {
    /// Canonical fixture form: `c*q^(e)` terms joined by ` + `.
    pub fn to_canonical(&self) -> String {
        super::text::canonical(self.terms(), None)
    }
}

impl Zero for QPolynomial {
    fn zero() -> Self {
        QPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.dense.is_zero()
    }
}
