use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pair::{BaileyPair, ConjugatePair, TailPolicy};
use super::tail::{certified_sum, finite_sum, ReciprocalTable};
use crate::error::{QError, Result};
use crate::qcore::{Disagreement, HalfExp, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Mismatch,
    TailUncertified,
}

/// First failing coefficient. Coefficients are decimal strings so that
/// arbitrarily large integers survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    #[serde(rename = "L")]
    pub l: usize,
    pub exponent: HalfExp,
    pub lhs_coeff: String,
    pub rhs_coeff: String,
}

impl Mismatch {
    pub fn from_disagreement(l: usize, d: &Disagreement) -> Self {
        Mismatch { l, exponent: d.exponent, lhs_coeff: d.lhs.to_string(), rhs_coeff: d.rhs.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub label: String,
    pub eta: u32,
    pub l_max: usize,
    pub order: HalfExp,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Right-hand side of the pair relation at one `L`:
/// `sum_{r=0}^{L} alpha_r / ((q)_{L-r} (q^(eta+1))_{L+r})`.
pub fn pair_relation_sum(pair: &BaileyPair, l: usize, order: HalfExp) -> Result<QSeries> {
    let mut inv_q = ReciprocalTable::q_factorial(order);
    let mut inv_aq = ReciprocalTable::shifted(pair.eta(), order);
    let mut acc = crate::qcore::SeriesSum::new(order);
    for r in 0..=l {
        let a = pair.alpha(r, order)?;
        if a.is_zero() {
            continue;
        }
        let w = &inv_q.get((l - r) as i64)? * &inv_aq.get((l + r) as i64)?;
        acc.add(&(&a * &w));
    }
    Ok(acc.finish())
}

/// Checks the pair relation for `0 <= L <= l_max` to `order`.
pub fn verify_bailey_pair(pair: &BaileyPair, l_max: usize, order: HalfExp) -> Result<VerificationReport> {
    let results: Vec<Result<Option<Mismatch>>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let rhs = pair_relation_sum(pair, l, order)?;
            let lhs = pair.beta(l, order)?;
            Ok(lhs.first_disagreement(&rhs).map(|d| Mismatch::from_disagreement(l, &d)))
        })
        .collect();
    let mut first = None;
    for r in results {
        if let Some(m) = r? {
            first = Some(m);
            break;
        }
    }
    Ok(VerificationReport {
        label: pair.label().to_string(),
        eta: pair.eta(),
        l_max,
        order,
        status: if first.is_some() { Status::Mismatch } else { Status::Verified },
        first_mismatch: first,
        detail: None,
    })
}

/// `sum_{r>=L} delta_r / ((q)_{r-L} (q^(eta+1))_{r+L})` under the pair's tail policy.
pub fn conjugate_relation_sum(cpair: &ConjugatePair, l: usize, order: HalfExp) -> Result<QSeries> {
    let eta = cpair.eta();
    let mut tables: Vec<(HalfExp, ReciprocalTable, ReciprocalTable)> = Vec::new();
    let term = |r: usize, o: HalfExp| -> Result<QSeries> {
        let d = cpair.delta(r, o)?;
        if d.is_zero() {
            return Ok(d);
        }
        let idx = match tables.iter().position(|t| t.0 == o) {
            Some(i) => i,
            None => {
                tables.push((o, ReciprocalTable::q_factorial(o), ReciprocalTable::shifted(eta, o)));
                tables.len() - 1
            }
        };
        let (_, inv_q, inv_aq) = &mut tables[idx];
        let w = &inv_q.get((r - l) as i64)? * &inv_aq.get((r + l) as i64)?;
        Ok(&d * &w)
    };
    match cpair.tail_policy() {
        TailPolicy::Certified { support_from } => {
            let what = format!("conjugate pair {} at L={l}", cpair.label());
            certified_sum(l.max(support_from), order, &what, term)
        }
        TailPolicy::Finite { last } => {
            if l > last {
                Ok(QSeries::zero(order))
            } else {
                finite_sum(l, last, order, term)
            }
        }
    }
}

/// Checks the conjugate relation for `0 <= L <= l_max` to `order`.
/// A failed tail certificate is returned as an error.
pub fn verify_conjugate_pair(cpair: &ConjugatePair, l_max: usize, order: HalfExp) -> Result<VerificationReport> {
    let results: Vec<Result<Option<Mismatch>>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let rhs = conjugate_relation_sum(cpair, l, order)?;
            let lhs = cpair.gamma(l, order)?;
            Ok(lhs.first_disagreement(&rhs).map(|d| Mismatch::from_disagreement(l, &d)))
        })
        .collect();
    let mut first = None;
    for r in results {
        if let Some(m) = r? {
            first = Some(m);
            break;
        }
    }
    Ok(VerificationReport {
        label: cpair.label().to_string(),
        eta: cpair.eta(),
        l_max,
        order,
        status: if first.is_some() { Status::Mismatch } else { Status::Verified },
        first_mismatch: first,
        detail: None,
    })
}

/// Both sides of `sum_L alpha_L gamma_L = sum_L beta_L delta_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSides {
    pub lhs: QSeries,
    pub rhs: QSeries,
    pub equal: bool,
}

pub fn bilinear_identity(pair: &BaileyPair, cpair: &ConjugatePair, order: HalfExp) -> Result<BilinearSides> {
    if pair.eta() != cpair.eta() {
        return Err(QError::EtaMismatch { pair: pair.eta(), conjugate: cpair.eta() });
    }
    let alpha_gamma = |l: usize, o: HalfExp| -> Result<QSeries> {
        let a = pair.alpha(l, o)?;
        if a.is_zero() {
            return Ok(a);
        }
        Ok(&a * &cpair.gamma(l, o)?)
    };
    let beta_delta = |l: usize, o: HalfExp| -> Result<QSeries> {
        let d = cpair.delta(l, o)?;
        if d.is_zero() {
            return Ok(d);
        }
        Ok(&pair.beta(l, o)? * &d)
    };
    let label = format!("{} x {}", pair.label(), cpair.label());
    let (lhs, rhs) = match cpair.tail_policy() {
        TailPolicy::Certified { support_from } => (
            certified_sum(0, order, &format!("{label}: sum of alpha*gamma"), alpha_gamma)?,
            certified_sum(support_from, order, &format!("{label}: sum of beta*delta"), beta_delta)?,
        ),
        TailPolicy::Finite { last } => (finite_sum(0, last, order, alpha_gamma)?, finite_sum(0, last, order, beta_delta)?),
    };
    let equal = lhs.agrees_with(&rhs);
    Ok(BilinearSides { lhs, rhs, equal })
}
