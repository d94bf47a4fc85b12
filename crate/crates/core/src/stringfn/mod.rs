//! Level `p'/p - 2` string functions of the affine `A_1` algebra from an
//! indefinite double sum, the conjugate Bailey pairs built from them, and a
//! related family with binomial `delta`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bailey::{ConjugatePair, TailPolicy, TermGen};
use crate::configsum::{x_bosonic, ConfigSumQuery, PPPair};
use crate::error::{QError, Result};
use crate::qcore::{
    inv_pochhammer, inv_pochhammer_infinite, inv_q_infinite, pochhammer, q_binomial, HalfExp, QSeries, SignedPower,
};

/// Arguments of `C^{(p,p')}_{m,l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringFunctionQuery {
    pub pp: PPPair,
    pub m: i64,
    pub ell: i64,
}

impl StringFunctionQuery {
    pub fn new(pp: PPPair, m: i64, ell: i64) -> Result<Self> {
        if !(0..=pp.p_prime as i64 - 2).contains(&ell) {
            return Err(QError::InvalidParameter(format!("need 0 <= l <= p'-2, got l={ell} for {pp}")));
        }
        Ok(StringFunctionQuery { pp, m, ell })
    }
}

/// Adds `weight * q^(e2/2)` for every `(i, j)` in one quadrant with
/// `e2 = i(i+m) + 2p'j(pj+i) + lin (l+1)(2pj+i) <= order`.
///
/// Inside a quadrant `ij >= 0`, so
/// `e2 >= i^2 - (|m|+l+1)|i| - p(l+1)^2/(2p')`, which bounds the `i` range;
/// for fixed `i` the exponent is a convex quadratic in `j`.
#[allow(clippy::too_many_arguments)]
fn quadrant(
    acc: &mut BTreeMap<i64, i64>,
    q: &StringFunctionQuery,
    order: i64,
    i_from: i64,
    i_step: i64,
    j_from: i64,
    j_step: i64,
    lin: i64,
    weight: i64,
) {
    let (p, pp) = (q.pp.p as i64, q.pp.p_prime as i64);
    let (m, l1) = (q.m, q.ell + 1);
    let e2 = |i: i64, j: i64| i * (i + m) + 2 * pp * j * (p * j + i) + lin * l1 * (2 * p * j + i);
    let a = m.abs() + l1;
    let c = (p * l1 * l1 + 2 * pp - 1) / (2 * pp);
    let mut i = i_from;
    loop {
        let ia = i.abs();
        if ia > a && ia * ia - a * ia - c > order {
            break;
        }
        let sign = if i % 2 == 0 { weight } else { -weight };
        let mut j = j_from;
        let mut prev: Option<i64> = None;
        loop {
            let e = e2(i, j);
            if e <= order {
                *acc.entry(e).or_insert(0) += sign;
            } else if prev.is_some_and(|pe| e >= pe) {
                break;
            }
            prev = Some(e);
            j += j_step;
        }
        i += i_step;
    }
}

/// `C^{(p,p')}_{m,l}` to `order`: the double sum over the regions
/// `{i,j >= 0} - {i,j < 0}` (with `+(l+1)(2pj+i)/2`) and
/// `{i < 0, j <= 0} - {i >= 0, j > 0}` (with `-(l+1)(2pj+i)/2`),
/// each term signed by `(-1)^i` with exponent `i(i+m)/2 + p'j(pj+i)`,
/// divided by `(q)_inf^3`. Zero unless `m + l` is even.
pub fn string_function(q: &StringFunctionQuery, order: HalfExp) -> QSeries {
    if (q.m + q.ell) % 2 != 0 {
        return QSeries::zero(order);
    }
    let mut acc = BTreeMap::new();
    quadrant(&mut acc, q, order.0, 0, 1, 0, 1, 1, 1);
    quadrant(&mut acc, q, order.0, -1, -1, -1, -1, 1, -1);
    quadrant(&mut acc, q, order.0, 0, 1, 1, 1, -1, -1);
    quadrant(&mut acc, q, order.0, -1, -1, 0, -1, -1, 1);
    let numerator = QSeries::from_terms(acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (HalfExp(e), c)), order);
    // negative exponents in the numerator cancel; the reciprocal needs the extra depth
    let dip = numerator.valuation().map_or(0, |v| (-v.0).max(0));
    let inv = inv_q_infinite(order + HalfExp(dip)).pow(3);
    (&numerator * &inv).truncate(order)
}

/// `gamma_L = (q)_eta C^{(p,p')}_{2L+eta, l}`, `delta_L = X^{(p,p')}_{0,l+1}(2L+eta, 1)`,
/// relative to `a = q^eta`. Requires `l + eta` even.
pub fn conj_pair_cbp2(pp: PPPair, eta: u32, ell: i64) -> Result<ConjugatePair> {
    let base = StringFunctionQuery::new(pp, 0, ell)?;
    if (ell + eta as i64) % 2 != 0 {
        return Err(QError::InvalidParameter(format!("l + eta must be even, got l={ell}, eta={eta}")));
    }
    let q_eta = pochhammer(SignedPower::q_int(1), eta);
    let label = format!("CBP2({},{},{ell})@{eta}", pp.p, pp.p_prime);
    let gamma = TermGen::series(move |l, order| {
        let q = StringFunctionQuery { m: 2 * l as i64 + eta as i64, ..base };
        Ok(string_function(&q, order).mul_poly(&q_eta))
    });
    let delta = TermGen::exact(move |l| {
        let query = ConfigSumQuery::new(pp, 0, ell + 1, 2 * l as i64 + eta as i64, 1)
            .expect("parity and range were checked at construction");
        x_bosonic(&query)
    });
    Ok(ConjugatePair::new(eta, label, gamma, delta, TailPolicy::CERTIFIED))
}

/// Relative to `a = q^eta`:
/// `delta_L = [2L+eta, L-j] - [2L+eta, L-j-1]`,
/// `gamma_L = sum_{i>=1} (-1)^i q^{i(i+2L+eta)/2} (q^{i(2j+eta+1)/2} - q^{-i(2j+eta+1)/2})
///            / ((q)_inf^2 (aq)_inf)`.
pub fn conj_pair_binomial(eta: u32, j: i64) -> ConjugatePair {
    let e = eta as i64;
    let label = format!("binomial(j={j})@{eta}");
    let gamma = TermGen::series(move |l, order| {
        let l = l as i64;
        let k = (2 * j + e + 1).abs();
        // exponents in half-steps: i(i + 2L + eta +- k); the smaller one is increasing past i = c
        let c = k - 2 * l - e;
        let mut acc = BTreeMap::new();
        let mut i = 1;
        loop {
            let low = i * (i - c);
            if i > c.max(0) && low > order.0 {
                break;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (s, ex) in [(sign, i * (i + 2 * l + e + (2 * j + e + 1))), (-sign, i * (i + 2 * l + e - (2 * j + e + 1)))] {
                if ex <= order.0 {
                    *acc.entry(ex).or_insert(0i64) += s;
                }
            }
            i += 1;
        }
        let num = QSeries::from_terms(acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (HalfExp(e), c)), order);
        let dip = num.valuation().map_or(0, |v| (-v.0).max(0));
        let deep = order + HalfExp(dip);
        let inv = &inv_q_infinite(deep).pow(2) * &inv_pochhammer_infinite(SignedPower::q_int(e + 1), deep)?;
        Ok((&num * &inv).truncate(order))
    });
    let delta = TermGen::exact(move |l| {
        let (l, top) = (l as i64, 2 * l as i64 + e);
        q_binomial(top, l - j) - q_binomial(top, l - j - 1)
    });
    ConjugatePair::new(eta, label, gamma, delta, TailPolicy::Certified { support_from: j.max(0) as usize })
}

/// Both sides of
/// `sum_r q^r (ab)_{2r} / ((q)_r (ab)_r (aq)_r (bq)_r)
///   = 1/((q)_inf (aq)_inf (bq)_inf) sum_{i>=1} (-1)^{i-1} q^{i(i-1)/2} (a^i - b^i)/(a - b)`
/// at `a = q^x`, `b = q^y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummationCheck {
    pub x: u32,
    pub y: u32,
    pub lhs: QSeries,
    pub rhs: QSeries,
    pub equal: bool,
}

pub fn summation_formula_check(x: u32, y: u32, order: HalfExp) -> Result<SummationCheck> {
    if x == 0 && y == 0 {
        return Err(QError::InvalidParameter("summation formula is degenerate at a = b = 1".into()));
    }
    let (xi, yi) = (x as i64, y as i64);
    let q = SignedPower::q_int(1);
    // every left term has valuation exactly r
    let mut lhs = QSeries::zero(order);
    let mut r = 0i64;
    while HalfExp::int(r) <= order {
        // (ab)_{2r} / (ab)_r = (q^{x+y+r})_r
        let num = pochhammer(SignedPower::q_int(xi + yi + r), r as u32);
        let den = &(&inv_pochhammer(q, r, order)? * &inv_pochhammer(SignedPower::q_int(xi + 1), r, order)?)
            * &inv_pochhammer(SignedPower::q_int(yi + 1), r, order)?;
        lhs = lhs + den.mul_poly(&num).mul_power(SignedPower::q_int(r));
        r += 1;
    }
    // every right term has valuation at least i(i-1)/2
    let mut acc = BTreeMap::new();
    let mut i = 1i64;
    while HalfExp::int(i * (i - 1) / 2) <= order {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        for k in 0..i {
            *acc.entry(i * (i - 1) / 2 + xi * (i - 1 - k) + yi * k).or_insert(0i64) += sign;
        }
        i += 1;
    }
    let sum = QSeries::from_terms(acc.into_iter().map(|(e, c)| (HalfExp::int(e), c)), order);
    let inv = &(&inv_q_infinite(order) * &inv_pochhammer_infinite(SignedPower::q_int(xi + 1), order)?)
        * &inv_pochhammer_infinite(SignedPower::q_int(yi + 1), order)?;
    let rhs = &sum * &inv;
    let equal = lhs.agrees_with(&rhs);
    Ok(SummationCheck { x, y, lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bailey::{conjugate_saalschutz, verify_conjugate_pair, RhoSpec};
    use crate::qcore::inv_q_infinite;

    fn pp(p: u32, q: u32) -> PPPair {
        PPPair::new(p, q).unwrap()
    }

    fn sf(p: u32, q: u32, m: i64, ell: i64, o: i64) -> QSeries {
        string_function(&StringFunctionQuery::new(pp(p, q), m, ell).unwrap(), HalfExp::int(o))
    }

    #[test]
    fn level_one_closed_forms() {
        let o = HalfExp::int(30);
        for l in 0..5i64 {
            let even = inv_q_infinite(o).mul_power(SignedPower::q_int(l * l)).truncate(o);
            assert_eq!(sf(1, 3, 2 * l, 0, 30), even, "m={}", 2 * l);
            let m = 2 * l + 1;
            let odd = inv_q_infinite(o).mul_power(SignedPower::q_int((m * m - 1) / 4)).truncate(o);
            assert_eq!(sf(1, 3, m, 1, 30), odd, "m={m}");
        }
        assert!(sf(1, 3, 1, 0, 30).is_zero());
    }

    #[test]
    fn reflection_and_parity() {
        for (p, q) in [(1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)] {
            for ell in 0..=(q as i64 - 2) {
                for m in 0..6 {
                    let a = sf(p, q, m, ell, 24);
                    assert_eq!(a, sf(p, q, -m, ell, 24), "({p},{q}) m={m} l={ell}");
                    if (m + ell) % 2 != 0 {
                        assert!(a.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn cbp2_pairs_verify() {
        let o = HalfExp::int(20);
        for (p, q) in [(1, 3), (2, 3), (3, 4), (2, 5)] {
            for eta in 0..3u32 {
                for ell in 0..=(q as i64 - 2).min(2) {
                    let Ok(c) = conj_pair_cbp2(pp(p, q), eta, ell) else {
                        assert!((ell + eta as i64) % 2 != 0);
                        continue;
                    };
                    let rep = verify_conjugate_pair(&c, 4, o).unwrap();
                    assert!(rep.verified(), "{rep:?}");
                }
            }
        }
    }

    #[test]
    fn cbp2_at_level_one_is_the_infinite_saalschutz_pair() {
        let o = HalfExp::int(30);
        let a = conj_pair_cbp2(pp(1, 3), 0, 0).unwrap();
        let b = conjugate_saalschutz(0, None, RhoSpec::Infinity, RhoSpec::Infinity).unwrap();
        for l in 0..7 {
            assert_eq!(a.gamma(l, o).unwrap(), b.gamma(l, o).unwrap());
            assert_eq!(a.delta(l, o).unwrap(), b.delta(l, o).unwrap());
        }
    }

    #[test]
    fn binomial_pairs_verify() {
        let o = HalfExp::int(20);
        for eta in 0..3u32 {
            for j in 0..3 {
                let c = conj_pair_binomial(eta, j);
                let rep = verify_conjugate_pair(&c, 4, o).unwrap();
                assert!(rep.verified(), "{rep:?}");
            }
        }
        let c = conj_pair_binomial(0, 0);
        assert_eq!(c.delta(0, HalfExp::int(5)).unwrap(), QSeries::one(HalfExp::int(5)));
        assert!(conj_pair_binomial(0, 3).delta(2, HalfExp::int(5)).unwrap().is_zero());
    }

    #[test]
    fn summation_formula() {
        for (x, y) in [(1, 2), (0, 1), (1, 0), (1, 1), (2, 3)] {
            assert!(summation_formula_check(x, y, HalfExp::int(25)).unwrap().equal, "x={x} y={y}");
        }
        let c = summation_formula_check(1, 2, HalfExp::ZERO).unwrap();
        assert!(c.equal);
        assert!(summation_formula_check(0, 0, HalfExp::int(5)).is_err());
    }
}
