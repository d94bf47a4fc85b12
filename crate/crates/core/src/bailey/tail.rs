//! Truncation of infinite sums with a runtime certificate.
//!
//! A term is *empty* when it has no coefficient up to the working order.
//! Each empty term is re-evaluated at a deeper probe order to learn its
//! valuation. The sum stops after three consecutive empty terms whose known
//! valuations strictly increase (at least one must be known), or after a
//! long run of terms that vanish identically. A decrease in valuation inside
//! the run aborts with `TailUncertified`.

use crate::error::{QError, Result};
use crate::qcore::{inv_pochhammer, HalfExp, QSeries, SeriesSum, SignedPower};

/// Consecutive empty terms needed before stopping.
pub const EMPTY_RUN: usize = 3;
/// Consecutive identically vanishing terms accepted as the end of support.
pub const ZERO_RUN: usize = 16;
/// Hard cap on the number of terms.
pub const MAX_TERMS: usize = 10_000;

/// The probe order used to measure the valuation of terms that vanish to the
/// working order.
pub fn probe_order(order: HalfExp) -> HalfExp {
    HalfExp(2 * order.0.max(0) + 8)
}

/// Tracks a run of empty terms.
#[derive(Debug, Default)]
pub struct TailCertificate {
    run: usize,
    zeros: usize,
    last_valuation: Option<HalfExp>,
    known: usize,
}

pub enum TailStep {
    Continue,
    Stop,
}

impl TailCertificate {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a term that has stored coefficients at the working order.
    pub fn nonempty(&mut self) {
        *self = Self::default();
    }

    /// Record an empty term with its probed valuation (`None` when the term is
    /// also empty at the probe order).
    pub fn empty(&mut self, valuation: Option<HalfExp>, what: &dyn Fn() -> String) -> Result<TailStep> {
        self.run += 1;
        match valuation {
            Some(v) => {
                self.zeros = 0;
                if let Some(prev) = self.last_valuation {
                    if v <= prev {
                        return Err(QError::TailUncertified(format!(
                            "{}: valuation fell from q^({prev}) to q^({v}) past the cutoff",
                            what()
                        )));
                    }
                }
                self.last_valuation = Some(v);
                self.known += 1;
            }
            None => self.zeros += 1,
        }
        if (self.run >= EMPTY_RUN && self.known >= 1) || self.zeros >= ZERO_RUN {
            Ok(TailStep::Stop)
        } else {
            Ok(TailStep::Continue)
        }
    }
}

/// `sum_{n >= start} term(n)` to `order`, with a certified cutoff.
/// `term(n, o)` must return the n-th term to order `o`.
pub fn certified_sum<F>(start: usize, order: HalfExp, what: &str, mut term: F) -> Result<QSeries>
where
    F: FnMut(usize, HalfExp) -> Result<QSeries>,
{
    let probe = probe_order(order);
    let mut acc = SeriesSum::new(order);
    let mut cert = TailCertificate::new();
    for n in start..start + MAX_TERMS {
        let t = term(n, order)?;
        if !t.is_zero() {
            acc.add(&t);
            cert.nonempty();
            continue;
        }
        acc.add(&t);
        let v = term(n, probe)?.valuation();
        if let TailStep::Stop = cert.empty(v, &|| format!("{what} at index {n}"))? {
            return Ok(acc.finish());
        }
    }
    Err(QError::TailUncertified(format!("{what}: no cutoff within {MAX_TERMS} terms")))
}

/// `sum_{n = start}^{last} term(n)` to `order`.
pub fn finite_sum<F>(start: usize, last: usize, order: HalfExp, mut term: F) -> Result<QSeries>
where
    F: FnMut(usize, HalfExp) -> Result<QSeries>,
{
    let mut acc = SeriesSum::new(order);
    for n in start..=last {
        acc.add(&term(n, order)?);
    }
    Ok(acc.finish())
}

/// Lazily extended table of `1/(c;q)_n` at one order.
#[derive(Clone, Debug)]
pub struct ReciprocalTable {
    base: SignedPower,
    order: HalfExp,
    table: Vec<QSeries>,
}

impl ReciprocalTable {
    pub fn new(base: SignedPower, order: HalfExp) -> Self {
        ReciprocalTable { base, order, table: vec![QSeries::one(order)] }
    }

    /// `1/(q;q)_n`
    pub fn q_factorial(order: HalfExp) -> Self {
        Self::new(SignedPower::q_int(1), order)
    }

    /// `1/(q^(eta+1);q)_n`
    pub fn shifted(eta: u32, order: HalfExp) -> Self {
        Self::new(SignedPower::q_int(eta as i64 + 1), order)
    }

    pub fn order(&self) -> HalfExp {
        self.order
    }

    pub fn get(&mut self, n: i64) -> Result<QSeries> {
        if n < 0 {
            return inv_pochhammer(self.base, n, self.order);
        }
        let n = n as usize;
        while self.table.len() <= n {
            let i = self.table.len() as i64 - 1;
            let f = self.base.times_q(HalfExp::int(i));
            let last = self.table.last().unwrap();
            let next = if f.exp > self.order { last.clone() } else { last.div_one_minus(f)? };
            self.table.push(next);
        }
        Ok(self.table[n].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::inv_q_factorial;

    #[test]
    fn table_matches_direct() {
        let o = HalfExp::int(12);
        let mut t = ReciprocalTable::q_factorial(o);
        for n in [3, 0, 7, -2] {
            assert_eq!(t.get(n).unwrap(), inv_q_factorial(n, o));
        }
    }

    #[test]
    fn geometric_tail() {
        // sum_n q^(n^2) to q^20
        let o = HalfExp::int(20);
        let s = certified_sum(0, o, "squares", |n, o| Ok(QSeries::monomial(1, HalfExp::int((n * n) as i64), o)))
            .unwrap();
        let expect = QSeries::from_terms((0..5).map(|n| (HalfExp::int(n * n), 1)), o);
        assert_eq!(s, expect);
    }

    #[test]
    fn falling_valuation_is_rejected() {
        // valuations 30, 25, 40 past order 20
        let o = HalfExp::int(20);
        let vals = [0i64, 30, 25, 40, 50];
        let err = certified_sum(0, o, "bad", |n, o| {
            Ok(QSeries::monomial(1, HalfExp::int(*vals.get(n).unwrap_or(&100)), o))
        })
        .unwrap_err();
        assert!(matches!(err, QError::TailUncertified(_)));
    }

    #[test]
    fn zero_gaps_do_not_stop_early() {
        // zero for n < 5, then q^(n-5)
        let o = HalfExp::int(4);
        let s = certified_sum(0, o, "gap", |n, o| {
            Ok(if n < 5 { QSeries::zero(o) } else { QSeries::monomial(1, HalfExp::int(n as i64 - 5), o) })
        })
        .unwrap();
        assert_eq!(s, QSeries::from_int_coeffs(&[1, 1, 1, 1, 1], o));
    }
}
