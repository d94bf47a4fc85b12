//! q-shifted factorials, Gaussian binomials and infinite products.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::exp::HalfExp;
use super::monomial::SignedPower;
use super::poly::QPolynomial;
use super::series::QSeries;
use crate::error::{QError, Result};

/// `(c;q)_n = (1-c)(1-cq)...(1-cq^(n-1))` for `n >= 0`.
pub fn pochhammer(c: SignedPower, n: u32) -> QPolynomial {
    let mut out = QPolynomial::one();
    for i in 0..n as i64 {
        out = out.mul_one_minus(c.times_q(HalfExp::int(i)));
    }
    out
}

/// `1/(c;q)_n` as a series to `order`.
///
/// For `n < 0` this is `(cq^n;q)_{-n}`, an exact polynomial; in particular
/// `1/(q;q)_n = 0` for every negative `n`.
pub fn inv_pochhammer(c: SignedPower, n: i64, order: HalfExp) -> Result<QSeries> {
    if n < 0 {
        let p = pochhammer(c.times_q(HalfExp::int(n)), (-n) as u32);
        return Ok(QSeries::from_poly(&p, order));
    }
    let mut out = QSeries::one(order);
    for i in 0..n {
        let f = c.times_q(HalfExp::int(i));
        if f.exp > order {
            break;
        }
        out = out.div_one_minus(f)?;
    }
    Ok(out)
}

/// `1/(q;q)_n` as a series; zero for negative `n`.
pub fn inv_q_factorial(n: i64, order: HalfExp) -> QSeries {
    inv_pochhammer(SignedPower::q_int(1), n, order).expect("factors of (q;q)_n have positive exponents")
}

fn check_infinite_base(c: SignedPower) -> Result<()> {
    if c.exp < HalfExp::ZERO {
        return Err(QError::InvalidParameter(format!("infinite product base {c} has a negative exponent")));
    }
    if c.is_one() {
        return Err(QError::VanishingFactor(format!("({c};q)_inf contains the factor 1 - 1")));
    }
    Ok(())
}

/// `(c;q)_inf` to `order`. Only factors with exponent `<= order` are multiplied.
pub fn pochhammer_infinite(c: SignedPower, order: HalfExp) -> Result<QSeries> {
    product_list(&[ProductFactor::new(c, 1)], order)
}

/// `1/(c;q)_inf` to `order`.
pub fn inv_pochhammer_infinite(c: SignedPower, order: HalfExp) -> Result<QSeries> {
    product_list(&[ProductFactor::new(c, 1).inverted()], order)
}

/// `(q;q)_inf` to `order`.
pub fn q_infinite(order: HalfExp) -> QSeries {
    pochhammer_infinite(SignedPower::q_int(1), order).expect("(q;q)_inf is well defined")
}

/// `1/(q;q)_inf` to `order`.
pub fn inv_q_infinite(order: HalfExp) -> QSeries {
    inv_pochhammer_infinite(SignedPower::q_int(1), order).expect("(q;q)_inf is invertible")
}

type BinomCache = RwLock<HashMap<(i64, i64), QPolynomial>>;

fn binom_cache() -> &'static BinomCache {
    static CACHE: OnceLock<BinomCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

const CACHE_LIMIT: i64 = 256;

/// Gaussian binomial for `0 <= b <= a`.
fn gaussian(a: i64, b: i64) -> QPolynomial {
    let b = b.min(a - b);
    if b == 0 {
        return QPolynomial::one();
    }
    let cacheable = a <= CACHE_LIMIT;
    if cacheable {
        if let Some(p) = binom_cache().read().unwrap().get(&(a, b)) {
            return p.clone();
        }
    }
    // [a-b+i, i] = [a-b+i-1, i-1] (1 - q^(a-b+i)) / (1 - q^i)
    let mut p = QPolynomial::one();
    for i in 1..=b {
        p = p
            .mul_one_minus(SignedPower::q_int(a - b + i))
            .div_one_minus(SignedPower::q_int(i))
            .expect("Gaussian binomials are polynomials");
    }
    if cacheable {
        binom_cache().write().unwrap().insert((a, b), p.clone());
    }
    p
}

/// `[A, B] = (q^(A-B+1);q)_B / (q;q)_B`, zero for `B < 0`.
///
/// For `A >= 0` this is the usual Gaussian polynomial (zero when `B > A`).
/// For `A < 0 <= B` the ratio is still a Laurent polynomial:
/// `(-1)^B q^(-(m + ... + m+B-1)) [m+B-1, B]` with `m = -A`.
pub fn q_binomial(a: i64, b: i64) -> QPolynomial {
    if b < 0 {
        return QPolynomial::zero();
    }
    if a >= 0 {
        if b > a {
            return QPolynomial::zero();
        }
        return gaussian(a, b);
    }
    let m = -a;
    let shift = -(b * m + b * (b - 1) / 2);
    let sign = if b % 2 == 0 { 1 } else { -1 };
    gaussian(m + b - 1, b).scale_by_monomial(&sign.into(), HalfExp::int(shift))
}

/// One factor `(base; q^modulus)_inf` of a product, or its reciprocal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    pub base: SignedPower,
    /// Step of the product as an integer power of q; must be at least 1.
    pub modulus: u32,
    pub inverted: bool,
}

impl ProductFactor {
    pub fn new(base: SignedPower, modulus: u32) -> Self {
        ProductFactor { base, modulus, inverted: false }
    }

    /// `(q^e; q^m)_inf`
    pub fn q(e: i64, modulus: u32) -> Self {
        Self::new(SignedPower::q_int(e), modulus)
    }

    pub fn inverted(mut self) -> Self {
        self.inverted = !self.inverted;
        self
    }
}

/// Truncated product of the given factors.
pub fn product_list(factors: &[ProductFactor], order: HalfExp) -> Result<QSeries> {
    let mut out = QSeries::one(order);
    for f in factors {
        if f.modulus == 0 {
            return Err(QError::InvalidParameter("product modulus must be at least 1".into()));
        }
        check_infinite_base(f.base)?;
        let step = HalfExp::int(f.modulus as i64);
        let mut c = f.base;
        if c.exp == HalfExp::ZERO {
            // c = -1: the first factor is the constant 2.
            if f.inverted {
                return Err(QError::NotInvertible(format!("1/({};q^{})_inf has the factor 1/2", f.base, f.modulus)));
            }
            out = out.scale_by_monomial(&2.into(), HalfExp::ZERO);
            c = c.times_q(step);
        }
        while c.exp <= order {
            out = if f.inverted { out.div_one_minus(c)? } else { out.mul_one_minus(c) };
            c = c.times_q(step);
        }
    }
    Ok(out)
}

/// Both sides of the triple product identity
/// `sum_r (-1)^r q^(k r^2 + r(r-1)/2 + (k-i+1) r) = (q^i, q^(2k+1-i), q^(2k+1); q^(2k+1))_inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleProductCheck {
    pub sum_side: QSeries,
    pub product_side: QSeries,
    pub equal: bool,
}

/// Exponent `k r^2 + r(r-1)/2 + (k-i+1) r` of the theta-type sum.
pub fn theta_exponent(k: i64, i: i64, r: i64) -> i64 {
    k * r * r + r * (r - 1) / 2 + (k - i + 1) * r
}

pub fn triple_product_check(k: u32, i: u32, order: HalfExp) -> Result<TripleProductCheck> {
    if k == 0 || i == 0 || i > k {
        return Err(QError::InvalidParameter(format!("triple product needs 1 <= i <= k, got k={k}, i={i}")));
    }
    let (k, i) = (k as i64, i as i64);
    let m = (2 * k + 1) as u32;
    let mut terms = Vec::new();
    // The exponent increases in r for r >= 0 and decreases for r <= -1.
    for dir in [1i64, -1] {
        let mut r = if dir == 1 { 0 } else { -1 };
        loop {
            let e = HalfExp::int(theta_exponent(k, i, r));
            if e > order {
                break;
            }
            terms.push((e, if r % 2 == 0 { 1 } else { -1 }));
            r += dir;
        }
    }
    let sum_side = QSeries::from_terms(terms, order);
    let product_side =
        product_list(&[ProductFactor::q(i, m), ProductFactor::q(2 * k + 1 - i, m), ProductFactor::q(2 * k + 1, m)], order)?;
    let equal = sum_side.agrees_with(&product_side) && sum_side.order() == product_side.order();
    Ok(TripleProductCheck { sum_side, product_side, equal })
}
