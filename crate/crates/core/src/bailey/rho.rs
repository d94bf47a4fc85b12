use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::qcore::{inv_pochhammer, inv_pochhammer_infinite, pochhammer, HalfExp, QPolynomial, QSeries, SignedPower};

/// Specialization of a chain parameter: `rho -> infinity` or `rho = ±q^(k/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoSpec {
    Infinity,
    Finite { negative: bool, k: u32 },
}

impl RhoSpec {
    pub const fn finite(negative: bool, k: u32) -> Self {
        RhoSpec::Finite { negative, k }
    }

    pub fn power(self) -> Option<SignedPower> {
        match self {
            RhoSpec::Infinity => None,
            RhoSpec::Finite { negative, k } => Some(SignedPower::new(negative, HalfExp(k as i64))),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RhoSpec::Infinity)
    }
}

impl fmt::Display for RhoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power() {
            None => write!(f, "inf"),
            Some(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for RhoSpec {
    type Err = QError;

    /// Accepts `inf`, or a signed monomial such as `-q^(1/2)`, `q`, `1`, `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "oo") {
            return Ok(RhoSpec::Infinity);
        }
        let p: QPolynomial = t.parse()?;
        let mut terms = p.terms();
        let (Some((e, c)), None) = (terms.next(), terms.next()) else {
            return Err(QError::InvalidRho(format!("`{s}` is not a signed power of q")));
        };
        let negative = match i64::try_from(c) {
            Ok(1) => false,
            Ok(-1) => true,
            _ => return Err(QError::InvalidRho(format!("`{s}` is not a signed power of q"))),
        };
        if e < HalfExp::ZERO {
            return Err(QError::InvalidRho(format!("`{s}` has a negative exponent")));
        }
        Ok(RhoSpec::Finite { negative, k: e.0 as u32 })
    }
}

/// The Saalschütz weights shared by the chain, the lattice and the finite
/// conjugate pair, at `a = q^eta`.
///
/// With `F_r = (rho1)_r (rho2)_r (aq/rho1 rho2)^r` and the limits taken
/// termwise when a `rho` is infinite:
/// * `alpha_factor(L) = F_L / ((aq/rho1)_L (aq/rho2)_L)`
/// * `beta_weight(L, r) = F_r (aq/rho1 rho2)_{L-r} / ((aq/rho1)_L (aq/rho2)_L (q)_{L-r})`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainKernel {
    pub eta: u32,
    pub rho1: RhoSpec,
    pub rho2: RhoSpec,
}

impl ChainKernel {
    /// Rejects any finite rho for which `aq/rho` has exponent `<= 0`: the
    /// denominator `(aq/rho)_L` would then contain a vanishing factor, the
    /// non-unit factor 2, or negative powers of q.
    pub fn new(eta: u32, rho1: RhoSpec, rho2: RhoSpec) -> Result<Self> {
        let kernel = ChainKernel { eta, rho1, rho2 };
        for rho in [rho1, rho2] {
            if let Some(p) = rho.power() {
                let e = kernel.aq_over(p);
                if e.exp <= HalfExp::ZERO {
                    return Err(QError::InvalidRho(format!(
                        "rho = {rho} at a = q^{eta} gives aq/rho = {e}, whose Pochhammer symbol is not invertible"
                    )));
                }
            }
        }
        if let Some(c) = kernel.aq_over_both() {
            if c.exp < HalfExp::ZERO {
                return Err(QError::InvalidRho(format!(
                    "rho1 = {rho1}, rho2 = {rho2} at a = q^{eta} give aq/rho1 rho2 = {c} with a negative exponent"
                )));
            }
        }
        Ok(kernel)
    }

    pub fn infinite(eta: u32) -> Self {
        ChainKernel { eta, rho1: RhoSpec::Infinity, rho2: RhoSpec::Infinity }
    }

    fn aq(&self) -> SignedPower {
        SignedPower::q_int(self.eta as i64 + 1)
    }

    fn aq_over(&self, rho: SignedPower) -> SignedPower {
        self.aq().mul(rho.recip())
    }

    fn aq_over_both(&self) -> Option<SignedPower> {
        match (self.rho1.power(), self.rho2.power()) {
            (Some(a), Some(b)) => Some(self.aq().mul(a.recip()).mul(b.recip())),
            _ => None,
        }
    }

    pub fn both_infinite(&self) -> bool {
        self.rho1.is_infinite() && self.rho2.is_infinite()
    }

    /// `F_r` as an exact polynomial.
    pub fn numerator(&self, r: usize) -> QPolynomial {
        let ri = r as i64;
        let eta = self.eta as i64;
        match (self.rho1.power(), self.rho2.power()) {
            (None, None) => QPolynomial::monomial(1, HalfExp::int(ri * ri + eta * ri)),
            (Some(p), None) | (None, Some(p)) => {
                // (-1)^r q^(r(r-1)/2) (rho)_r (aq/rho)^r
                let c = self.aq_over(p);
                let negative = r % 2 == 1 && !c.is_negative();
                let sign = if negative { -1 } else { 1 };
                let exp = HalfExp::int(ri * (ri - 1) / 2) + c.exp * ri;
                pochhammer(p, r as u32).scale_by_monomial(&sign.into(), exp)
            }
            (Some(a), Some(b)) => {
                let c = self.aq_over_both().unwrap();
                let sign = if c.is_negative() && r % 2 == 1 { -1 } else { 1 };
                (pochhammer(a, r as u32) * pochhammer(b, r as u32)).scale_by_monomial(&sign.into(), c.exp * ri)
            }
        }
    }

    /// `1/((aq/rho1)_n (aq/rho2)_n)` to `order`.
    pub fn inv_denominator(&self, n: usize, order: HalfExp) -> QSeries {
        let mut out = QSeries::one(order);
        for rho in [self.rho1, self.rho2] {
            if let Some(p) = rho.power() {
                let s = inv_pochhammer(self.aq_over(p), n as i64, order).expect("checked at construction");
                out = &out * &s;
            }
        }
        out
    }

    /// `1/((aq/rho1)_inf (aq/rho2)_inf)` to `order`.
    pub fn inv_denominator_infinite(&self, order: HalfExp) -> QSeries {
        let mut out = QSeries::one(order);
        for rho in [self.rho1, self.rho2] {
            if let Some(p) = rho.power() {
                out = &out * &inv_pochhammer_infinite(self.aq_over(p), order).expect("checked at construction");
            }
        }
        out
    }

    /// `(aq/rho1 rho2)_n`, which is 1 unless both rho are finite.
    pub fn middle(&self, n: usize) -> QPolynomial {
        match self.aq_over_both() {
            Some(c) => pochhammer(c, n as u32),
            None => QPolynomial::one(),
        }
    }

    /// `(aq/rho1 rho2)_inf`, which is 1 unless both rho are finite.
    pub fn middle_infinite(&self, order: HalfExp) -> Result<QSeries> {
        match self.aq_over_both() {
            Some(c) => crate::qcore::pochhammer_infinite(c, order),
            None => Ok(QSeries::one(order)),
        }
    }

    pub fn alpha_factor(&self, l: usize, order: HalfExp) -> QSeries {
        self.inv_denominator(l, order).mul_poly(&self.numerator(l))
    }

    /// `beta_weight(L, r)` without the `1/(q)_{L-r}` factor, which callers
    /// usually hold in a table.
    pub fn beta_weight_partial(&self, l: usize, r: usize, inv_den: &QSeries) -> QSeries {
        inv_den.mul_poly(&(self.numerator(r) * self.middle(l - r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rho() {
        assert_eq!("inf".parse::<RhoSpec>().unwrap(), RhoSpec::Infinity);
        assert_eq!("-q^(1/2)".parse::<RhoSpec>().unwrap(), RhoSpec::finite(true, 1));
        assert_eq!("q".parse::<RhoSpec>().unwrap(), RhoSpec::finite(false, 2));
        assert_eq!("-1".parse::<RhoSpec>().unwrap(), RhoSpec::finite(true, 0));
        assert!("2q".parse::<RhoSpec>().is_err());
        assert_eq!(RhoSpec::finite(true, 1).to_string(), "-q^(1/2)");
    }

    #[test]
    fn infinite_numerator() {
        let k = ChainKernel::infinite(1);
        assert_eq!(k.numerator(3), QPolynomial::from_int_terms(&[(12, 1)]));
    }

    #[test]
    fn one_finite_limit() {
        // rho = -q^(1/2), eta = 0: F_1 = -(1 + q^(1/2)) * (-q^(1/2)) = q^(1/2) + q
        let k = ChainKernel::new(0, RhoSpec::Infinity, RhoSpec::finite(true, 1)).unwrap();
        let f1 = k.numerator(1);
        assert_eq!(f1, QPolynomial::from_terms([(HalfExp(1), 1), (HalfExp(2), 1)]));
    }

    #[test]
    fn rejects_noninvertible_denominators() {
        assert!(ChainKernel::new(0, RhoSpec::finite(false, 2), RhoSpec::Infinity).is_err());
        assert!(ChainKernel::new(0, RhoSpec::finite(true, 2), RhoSpec::Infinity).is_err());
        assert!(ChainKernel::new(1, RhoSpec::finite(false, 2), RhoSpec::Infinity).is_ok());
        assert!(ChainKernel::new(0, RhoSpec::finite(false, 0), RhoSpec::Infinity).is_ok());
    }
}
