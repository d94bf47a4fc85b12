use serde::{Deserialize, Serialize};

use super::structure::PPPair;
use crate::error::{QError, Result};
use crate::qcore::{q_binomial, HalfExp, QPolynomial};

/// Arguments of `X^{(p,p')}_{r,s}(L, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigSumQuery {
    pub pp: PPPair,
    pub r: i64,
    pub s: i64,
    pub b: i64,
    #[serde(rename = "L")]
    pub l: i64,
}

impl ConfigSumQuery {
    /// Checks `1 <= b, s <= p'-1`, `0 <= r <= p-1`, `L >= 0` and `L+s+b` even.
    pub fn new(pp: PPPair, r: i64, s: i64, l: i64, b: i64) -> Result<Self> {
        let top = pp.p_prime as i64 - 1;
        let bad = |what: &str| Err(QError::InvalidParameter(format!("X^{pp}_({r},{s})({l},{b}): {what}")));
        if !(1..=top).contains(&s) || !(1..=top).contains(&b) {
            return bad("need 1 <= b, s <= p'-1");
        }
        if !(0..pp.p as i64).contains(&r) {
            return bad("need 0 <= r <= p-1");
        }
        if l < 0 {
            return bad("need L >= 0");
        }
        if (l + s + b) % 2 != 0 {
            return bad("L+s+b must be even");
        }
        Ok(ConfigSumQuery { pp, r, s, b, l })
    }
}

/// `X^{(p,p')}_{r,s}(L,b) = sum_j q^{j(pp'j + p'r - ps)} [L, (L+s-b)/2 - p'j]
///                          - q^{(pj+r)(p'j+s)} [L, (L-s-b)/2 - p'j]`
pub fn x_bosonic(query: &ConfigSumQuery) -> QPolynomial {
    let ConfigSumQuery { pp, r, s, b, l } = *query;
    let (p, pp) = (pp.p as i64, pp.p_prime as i64);
    // both binomials vanish once |p'j| > L + p'
    let window = l / pp + 1;
    let mut out = QPolynomial::zero();
    for j in -window..=window {
        let plus = q_binomial(l, (l + s - b) / 2 - pp * j);
        if !plus.is_zero() {
            out = out + plus.shift(HalfExp::int(j * (p * pp * j + pp * r - p * s)));
        }
        let minus = q_binomial(l, (l - s - b) / 2 - pp * j);
        if !minus.is_zero() {
            out = out - minus.shift(HalfExp::int((p * j + r) * (pp * j + s)));
        }
    }
    out
}

/// The query whose value feeds the duality:
/// `X^{(p,p')}_{r,s}(L,b)` pairs with `X^{(p'-p,p')}_{b-r,s}(L,b)`.
pub fn dual_query(query: &ConfigSumQuery) -> Result<ConfigSumQuery> {
    let dual = query.pp.dual();
    let r = query.b - query.r;
    if !(0..dual.p as i64).contains(&r) {
        return Err(QError::InvalidParameter(format!(
            "duality needs 0 <= b-r <= p'-p-1, got b-r = {r} for {}",
            query.pp
        )));
    }
    ConfigSumQuery::new(dual, r, query.s, query.l, query.b)
}

/// `q^{(L^2-(b-s)^2)/4} x(1/q)`. An involution on polynomials.
pub fn dual_transform(x: &QPolynomial, l: i64, b: i64, s: i64) -> Result<QPolynomial> {
    let num = l * l - (b - s) * (b - s);
    if num % 4 != 0 {
        return Err(QError::NonIntegralExponent(format!("(L^2-(b-s)^2)/4 with L={l}, b={b}, s={s}")));
    }
    Ok(x.reverse_q(HalfExp::int(num / 4)))
}

/// `X^{(p,p')}_{r,s}(L,b)` evaluated through the dual regime.
pub fn x_dual(query: &ConfigSumQuery) -> Result<QPolynomial> {
    let dq = dual_query(query)?;
    dual_transform(&x_bosonic(&dq), query.l, query.b, query.s)
}

/// `X^{(p'-p,p')}_{0,1}(2L,1) = q^{L(L+1)} X^{(p,p')}_{0,1}(2L,1; 1/q)`.
/// This relation holds for `(r,s) = (0,1)` only.
pub fn x_dual_01(pp: PPPair, l: i64) -> Result<QPolynomial> {
    let x = x_bosonic(&ConfigSumQuery::new(pp, 0, 1, 2 * l, 1)?);
    Ok(x.reverse_q(HalfExp::int(l * (l + 1))))
}
