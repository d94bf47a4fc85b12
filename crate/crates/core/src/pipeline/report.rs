use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bailey::Status;
use crate::error::{QError, Result};
use crate::qcore::{HalfExp, QSeries};

/// Number of leading terms recorded for each side.
pub const LEADING_TERMS: usize = 12;

/// First exponent where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesMismatch {
    pub exponent: HalfExp,
    pub lhs_coeff: String,
    pub rhs_coeff: String,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: Value,
    pub order: HalfExp,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<SeriesMismatch>,
    pub lhs_leading: Vec<String>,
    pub rhs_leading: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<u64>,
}

impl IdentityReport {
    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// The report with timing removed; two runs of the same check agree on this.
    pub fn without_runtime(mut self) -> Self {
        self.runtime_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| QError::Parse(e.to_string()))
    }

    /// One line for terminal output.
    pub fn summary_line(&self) -> String {
        let status = match (&self.status, &self.first_mismatch) {
            (Status::Verified, _) => "verified".to_string(),
            (Status::Mismatch, Some(m)) => {
                format!("MISMATCH at q^({}): lhs {} rhs {}", m.exponent, m.lhs_coeff, m.rhs_coeff)
            }
            (Status::Mismatch, None) => "MISMATCH".to_string(),
            (Status::TailUncertified, _) => "TAIL-UNCERTIFIED".to_string(),
        };
        let mut line = format!("{} {} to q^({}): {status}", self.name, self.params, self.order);
        if let Some(d) = &self.detail {
            line.push_str(&format!(" ({d})"));
        }
        line
    }
}

pub fn leading_terms(s: &QSeries, n: usize) -> Vec<String> {
    s.terms().take(n).map(|(e, c)| format!("{c}*q^({e})")).collect()
}

/// The series an identity check compares. Every entry of `others` must also
/// agree with `rhs`; `failure` records a failed intermediate assertion.
#[derive(Clone, Debug, Default)]
pub struct Sides {
    pub lhs: Option<QSeries>,
    pub rhs: Option<QSeries>,
    pub others: Vec<(String, QSeries)>,
    pub failure: Option<String>,
}

impl Sides {
    pub fn new(lhs: QSeries, rhs: QSeries) -> Self {
        Sides { lhs: Some(lhs), rhs: Some(rhs), ..Default::default() }
    }

    pub fn with(mut self, name: impl Into<String>, s: QSeries) -> Self {
        self.others.push((name.into(), s));
        self
    }
}

/// Runs `f`, compares the sides it returns to `order` and times it.
/// A failed tail certificate becomes a `tail-uncertified` report; every
/// other error is passed on.
pub fn run_identity<F>(name: &str, params: Value, order: HalfExp, f: F) -> Result<IdentityReport>
where
    F: FnOnce() -> Result<Sides>,
{
    let start = Instant::now();
    let outcome = f();
    let runtime_ms = Some(start.elapsed().as_millis() as u64);
    let mut report = IdentityReport {
        name: name.to_string(),
        params,
        order,
        status: Status::Verified,
        first_mismatch: None,
        lhs_leading: Vec::new(),
        rhs_leading: Vec::new(),
        detail: None,
        runtime_ms,
    };
    let sides = match outcome {
        Ok(sides) => sides,
        Err(QError::TailUncertified(msg)) => {
            report.status = Status::TailUncertified;
            report.detail = Some(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let (Some(lhs), Some(rhs)) = (sides.lhs, sides.rhs) else {
        report.status = Status::Mismatch;
        report.detail = sides.failure.or_else(|| Some("no sides produced".into()));
        return Ok(report);
    };
    report.lhs_leading = leading_terms(&lhs, LEADING_TERMS);
    report.rhs_leading = leading_terms(&rhs, LEADING_TERMS);
    if let Some(msg) = sides.failure {
        report.status = Status::Mismatch;
        report.detail = Some(msg);
        return Ok(report);
    }
    let reached = sides.others.iter().map(|(_, s)| s.order()).fold(lhs.order().min(rhs.order()), HalfExp::min);
    if reached < order {
        report.status = Status::TailUncertified;
        report.detail = Some(format!("sides are only known to q^({reached})"));
        return Ok(report);
    }
    let rhs = rhs.truncate(order);
    let named = std::iter::once(("lhs".to_string(), lhs)).chain(sides.others);
    for (what, s) in named {
        if let Some(d) = s.truncate(order).first_disagreement(&rhs) {
            report.status = Status::Mismatch;
            report.first_mismatch =
                Some(SeriesMismatch { exponent: d.exponent, lhs_coeff: d.lhs.to_string(), rhs_coeff: d.rhs.to_string() });
            if what != "lhs" {
                report.detail = Some(format!("{what} disagrees with the right-hand side"));
            }
            break;
        }
    }
    Ok(report)
}
