//! Text rendering and parsing of polynomials and series.
//!
//! Two renderings exist. The pretty form reads `1 + q^2 - 3*q^(5/2)`; the
//! canonical form used by fixtures writes every term as `c*q^(e)`. A series
//! carries a trailing `O(q^(e))` naming its first unknown exponent. The
//! parser accepts both forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::exp::HalfExp;
use super::poly::QPolynomial;
use super::series::QSeries;
use crate::error::{QError, Result};

fn exp_paren(e: HalfExp) -> String {
    format!("({e})")
}

fn pretty_power(e: HalfExp) -> String {
    match e.0 {
        0 => String::new(),
        2 => "q".to_string(),
        n if n > 0 && n % 2 == 0 => format!("q^{}", n / 2),
        _ => format!("q^{}", exp_paren(e)),
    }
}

pub(crate) fn write_pretty<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (HalfExp, &'a BigInt)>,
    order: Option<HalfExp>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let power = pretty_power(e);
        if power.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{power}")?;
        } else {
            write!(f, "{mag}*{power}")?;
        }
    }
    if let Some(o) = order {
        if first {
            write!(f, "O(q^{})", exp_paren(o + HalfExp(1)))?;
        } else {
            write!(f, " + O(q^{})", exp_paren(o + HalfExp(1)))?;
        }
    } else if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn canonical<'a>(terms: impl Iterator<Item = (HalfExp, &'a BigInt)>, order: Option<HalfExp>) -> String {
    let mut parts: Vec<String> = terms.map(|(e, c)| format!("{c}*q^({e})")).collect();
    if let Some(o) = order {
        parts.push(format!("O(q^({}))", o + HalfExp(1)));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    parts.join(" + ")
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> QError {
        QError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        BigInt::from_str(text).map_err(|_| self.err("bad integer"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| self.err("exponent out of range"))
    }

    /// `n`, `-n`, `(n)`, `(n/2)`, `n/2`
    fn exponent(&mut self) -> Result<HalfExp> {
        let paren = self.eat(b'(');
        let n = self.small_int()?;
        let e = if self.eat(b'/') {
            let d = self.small_int()?;
            match d {
                1 => HalfExp::int(n),
                2 => HalfExp::halves(n),
                _ => return Err(self.err("exponent denominator must be 1 or 2")),
            }
        } else {
            HalfExp::int(n)
        };
        if paren {
            self.expect(b')')?;
        }
        Ok(e)
    }

    /// Parse the sum; returns the terms and the optional order.
    fn expression(&mut self) -> Result<(Vec<(HalfExp, BigInt)>, Option<HalfExp>)> {
        let mut terms = Vec::new();
        let mut order = None;
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            // canonical form writes `+ -3*q^(e)`
            if self.eat(b'-') {
                negative = !negative;
            }
            if self.peek() == Some(b'O') {
                self.pos += 1;
                self.expect(b'(')?;
                self.expect(b'q')?;
                self.expect(b'^')?;
                let e = self.exponent()?;
                self.expect(b')')?;
                if order.replace(e - HalfExp(1)).is_some() {
                    return Err(self.err("duplicate O-term"));
                }
            } else {
                let mut coeff = BigInt::one();
                let mut have_coeff = false;
                if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    coeff = self.integer()?;
                    have_coeff = true;
                    self.eat(b'*');
                }
                let mut exp = HalfExp::ZERO;
                if self.eat(b'q') {
                    if self.eat(b'^') {
                        exp = self.exponent()?;
                    } else {
                        exp = HalfExp::int(1);
                    }
                } else if !have_coeff {
                    return Err(self.err("expected a term"));
                }
                if negative {
                    coeff = -coeff;
                }
                if !coeff.is_zero() {
                    terms.push((exp, coeff));
                }
            }
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) => return Err(self.err("unexpected character")),
            }
        }
        Ok((terms, order))
    }
}

pub fn parse_polynomial(s: &str) -> Result<QPolynomial> {
    let (terms, order) = Parser::new(s).expression()?;
    if order.is_some() {
        return Err(QError::Parse("a polynomial cannot carry an O-term".into()));
    }
    Ok(QPolynomial::from_terms(terms))
}

pub fn parse_series(s: &str) -> Result<QSeries> {
    let (terms, order) = Parser::new(s).expression()?;
    let order = order.ok_or_else(|| QError::Parse("a series needs an O(q^(e)) term".into()))?;
    if let Some((e, _)) = terms.iter().find(|(e, _)| *e > order) {
        return Err(QError::Parse(format!("term q^({e}) lies beyond the stated order")));
    }
    Ok(QSeries::from_terms(terms, order))
}

impl FromStr for QPolynomial {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

impl FromStr for QSeries {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        parse_series(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretty_rendering() {
        let p = QPolynomial::from_terms([(HalfExp::ZERO, 1), (HalfExp::int(2), 1), (HalfExp::halves(5), -3)]);
        assert_eq!(p.to_string(), "1 + q^2 - 3*q^(5/2)");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        let n = QPolynomial::from_terms([(HalfExp::int(-1), -1), (HalfExp::int(1), 1)]);
        assert_eq!(n.to_string(), "-q^(-1) + q");
    }

    #[test]
    fn canonical_rendering() {
        let p = QPolynomial::from_terms([(HalfExp::ZERO, 1), (HalfExp::halves(3), -2)]);
        assert_eq!(p.to_canonical(), "1*q^(0) + -2*q^(3/2)");
        let s = QSeries::from_poly(&p, HalfExp::int(2));
        assert_eq!(s.to_canonical(), "1*q^(0) + -2*q^(3/2) + O(q^(5/2))");
    }

    #[test]
    fn parse_both_forms() {
        let a: QPolynomial = "1 + q^2 - 3*q^(5/2)".parse().unwrap();
        let b: QPolynomial = "1*q^(0) + 1*q^(2) + -3*q^(5/2)".parse().unwrap();
        assert_eq!(a, b);
        let c: QPolynomial = "q^-1 + 2q".parse().unwrap();
        assert_eq!(c, QPolynomial::from_terms([(HalfExp::int(-1), 1), (HalfExp::int(1), 2)]));
    }

    #[test]
    fn parse_series_order() {
        let s: QSeries = "1 + q + O(q^3)".parse().unwrap();
        assert_eq!(s.order(), HalfExp::halves(5));
        assert!("1 + q^4 + O(q^3)".parse::<QSeries>().is_err());
        assert!("1 + q".parse::<QSeries>().is_err());
        assert!("1 + O(q^2)".parse::<QPolynomial>().is_err());
    }

    #[test]
    fn series_text_roundtrip() {
        let s = QSeries::from_int_coeffs(&[1, -2, 0, 7], HalfExp::int(5));
        assert_eq!(s.to_string().parse::<QSeries>().unwrap(), s);
        assert_eq!(s.to_canonical().parse::<QSeries>().unwrap(), s);
    }
}
