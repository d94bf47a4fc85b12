//! Named Bailey pairs and conjugate pairs, looked up by label and verified
//! when first loaded.
//!
//! Fixed labels: `initial@0..2`, `A(1)`..`A(8)`, `B(1)`, `B(3)`, `gdinf@0..2`.
//! Parametric labels: `ABF(p,p',r,s)`, `gdinf@eta`, `initial@eta`,
//! `saalschutz(M|inf, rho1, rho2)@eta`, `CBP2(p,p',l)@eta`, `binomial(j)@eta`.

mod slater;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

pub use slater::{check_coverage, rogers_pair, SlaterRow, ROWS};

use crate::bailey::{
    conjugate_saalschutz, initial_pair, verify_bailey_pair, verify_conjugate_pair, BaileyPair, ConjugatePair, RhoSpec,
    VerificationReport,
};
use crate::configsum::{abf_bailey_pair, PPPair};
use crate::error::{QError, Result};
use crate::qcore::HalfExp;
use crate::stringfn::{conj_pair_binomial, conj_pair_cbp2};

/// Depth used when an entry is verified on load.
pub const LOAD_L_MAX: usize = 8;
pub const LOAD_ORDER: HalfExp = HalfExp(40);

#[derive(Clone, Debug)]
pub enum CatalogItem {
    Pair(BaileyPair),
    Conjugate(ConjugatePair),
}

impl CatalogItem {
    pub fn eta(&self) -> u32 {
        match self {
            CatalogItem::Pair(p) => p.eta(),
            CatalogItem::Conjugate(c) => c.eta(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CatalogItem::Pair(_) => "pair",
            CatalogItem::Conjugate(_) => "conjugate",
        }
    }

    pub fn verify(&self, l_max: usize, order: HalfExp) -> Result<VerificationReport> {
        match self {
            CatalogItem::Pair(p) => verify_bailey_pair(p, l_max, order),
            CatalogItem::Conjugate(c) => verify_conjugate_pair(c, l_max, order),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub source: String,
    pub item: CatalogItem,
    pub report: VerificationReport,
}

impl CatalogEntry {
    pub fn pair(&self) -> Option<&BaileyPair> {
        match &self.item {
            CatalogItem::Pair(p) => Some(p),
            CatalogItem::Conjugate(_) => None,
        }
    }

    pub fn conjugate(&self) -> Option<&ConjugatePair> {
        match &self.item {
            CatalogItem::Conjugate(c) => Some(c),
            CatalogItem::Pair(_) => None,
        }
    }
}

/// Fixed labels in listing order.
pub fn list() -> Vec<String> {
    let mut out: Vec<String> = (0..3).map(|e| format!("initial@{e}")).collect();
    out.extend(ROWS.iter().map(|r| r.label.to_string()));
    out.push("B(1)".into());
    out.push("B(3)".into());
    out.extend((0..3).map(|e| format!("gdinf@{e}")));
    out
}

fn split_args<'a>(label: &'a str, head: &str) -> Option<(Vec<&'a str>, Option<&'a str>)> {
    let rest = label.strip_prefix(head)?.strip_prefix('(')?;
    let close = rest.rfind(')')?;
    let args = rest[..close].split(',').map(str::trim).collect();
    let tail = &rest[close + 1..];
    let eta = if tail.is_empty() { None } else { Some(tail.strip_prefix('@')?) };
    Some((args, eta))
}

fn int<T: std::str::FromStr>(s: &str, label: &str) -> Result<T> {
    s.trim().parse().map_err(|_| QError::Parse(format!("bad number `{s}` in `{label}`")))
}

/// Builds an entry without verifying it.
pub fn build(label: &str) -> Result<(CatalogItem, String)> {
    let label = label.trim();
    let unknown = || QError::UnknownLabel(label.to_string());
    if let Some(e) = label.strip_prefix("initial@") {
        let eta = int(e, label)?;
        return Ok((CatalogItem::Pair(initial_pair(eta)), "unit pair beta_L = delta_{L,0}".into()));
    }
    if let Some(e) = label.strip_prefix("gdinf@") {
        let eta = int(e, label)?;
        let c = conjugate_saalschutz(eta, None, RhoSpec::Infinity, RhoSpec::Infinity)?;
        return Ok((CatalogItem::Conjugate(c), "Saalschutz conjugate pair, M and both rho infinite".into()));
    }
    if let Some(row) = ROWS.iter().find(|r| r.label == label) {
        let a = if row.eta == 0 { "a = 1" } else { "a = q" };
        return Ok((CatalogItem::Pair(row.pair()), format!("Slater group A, {a}")));
    }
    match label {
        "B(1)" => return Ok((CatalogItem::Pair(rogers_pair(0)), "Rogers' pair relative to 1".into())),
        "B(3)" => return Ok((CatalogItem::Pair(rogers_pair(1)), "Rogers' pair relative to q".into())),
        _ => {}
    }
    if let Some((args, None)) = split_args(label, "ABF") {
        let [p, pp, r, s] = args[..] else { return Err(unknown()) };
        let pp = PPPair::new(int(p, label)?, int(pp, label)?)?;
        let pair = abf_bailey_pair(pp, int(r, label)?, int(s, label)?)?;
        return Ok((CatalogItem::Pair(pair), "configuration-sum pair, beta_L = X(2L,s)/(q)_{2L}".into()));
    }
    if let Some((args, Some(eta))) = split_args(label, "saalschutz") {
        let [m, r1, r2] = args[..] else { return Err(unknown()) };
        let m = if matches!(m, "inf" | "infinity" | "oo") { None } else { Some(int(m, label)?) };
        let c = conjugate_saalschutz(int(eta, label)?, m, r1.parse()?, r2.parse()?)?;
        return Ok((CatalogItem::Conjugate(c), "Saalschutz conjugate pair".into()));
    }
    if let Some((args, Some(eta))) = split_args(label, "CBP2") {
        let [p, pp, ell] = args[..] else { return Err(unknown()) };
        let pp = PPPair::new(int(p, label)?, int(pp, label)?)?;
        let c = conj_pair_cbp2(pp, int(eta, label)?, int(ell, label)?)?;
        return Ok((CatalogItem::Conjugate(c), "string-function conjugate pair".into()));
    }
    if let Some((args, Some(eta))) = split_args(label, "binomial") {
        let [j] = args[..] else { return Err(unknown()) };
        let j = j.strip_prefix("j=").unwrap_or(j);
        let c = conj_pair_binomial(int(eta, label)?, int(j, label)?);
        return Ok((CatalogItem::Conjugate(c), "binomial conjugate pair".into()));
    }
    Err(unknown())
}

/// Lazily built, verified entries.
#[derive(Default)]
pub struct Catalog {
    entries: Mutex<HashMap<String, CatalogEntry>>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide catalog.
    pub fn global() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(Catalog::new)
    }

    /// Entry verified for `L <= 8` to order 40 (half-steps).
    pub fn get(&self, label: &str) -> Result<CatalogEntry> {
        if let Some(e) = self.entries.lock().unwrap().get(label.trim()) {
            return Ok(e.clone());
        }
        let (item, source) = build(label)?;
        let report = item.verify(LOAD_L_MAX, LOAD_ORDER)?;
        if let Some(m) = &report.first_mismatch {
            return Err(QError::CatalogVerification { label: label.trim().to_string(), l: m.l });
        }
        if !report.verified() {
            return Err(QError::TailUncertified(format!("catalog entry `{label}`")));
        }
        let entry = CatalogEntry { label: report.label.clone(), source, item, report };
        self.entries.lock().unwrap().insert(label.trim().to_string(), entry.clone());
        Ok(entry)
    }

    /// All fixed entries with their first `alpha/beta` (or `gamma/delta`)
    /// values in canonical text.
    pub fn export(&self, l_max: usize, order: HalfExp) -> Result<serde_json::Value> {
        let mut out = Vec::new();
        for label in list() {
            let e = self.get(&label)?;
            out.push(export_entry(&e, l_max, order)?);
        }
        Ok(serde_json::json!({ "order": order, "entries": out }))
    }
}

#[derive(Serialize)]
struct ExportedEntry {
    label: String,
    kind: &'static str,
    eta: u32,
    source: String,
    first: Vec<[String; 2]>,
}

pub fn export_entry(e: &CatalogEntry, l_max: usize, order: HalfExp) -> Result<serde_json::Value> {
    let mut first = Vec::new();
    for l in 0..=l_max {
        let pair = match &e.item {
            CatalogItem::Pair(p) => [p.alpha(l, order)?.to_canonical(), p.beta(l, order)?.to_canonical()],
            CatalogItem::Conjugate(c) => [c.gamma(l, order)?.to_canonical(), c.delta(l, order)?.to_canonical()],
        };
        first.push(pair);
    }
    let x = ExportedEntry { label: e.label.clone(), kind: e.item.kind(), eta: e.item.eta(), source: e.source.clone(), first };
    serde_json::to_value(x).map_err(|err| QError::Data(err.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bailey::chain_step;

    #[test]
    fn coverage_is_a_partition() {
        check_coverage(3000).unwrap();
    }

    #[test]
    fn parametric_labels_parse() {
        for l in ["ABF(2,5,1,2)", "saalschutz(inf, inf, -q^(1/2))@0", "saalschutz(2, -q^(1/2), q^(3/2))@1", "CBP2(2,3,0)@0", "binomial(j=1)@1", "binomial(0)@0"] {
            build(l).unwrap();
        }
        assert!(matches!(build("A(9)"), Err(QError::UnknownLabel(_))));
        assert!(matches!(build("ABF(2,5,1)"), Err(QError::UnknownLabel(_))));
    }

    #[test]
    fn rogers_pairs_are_one_chain_step_from_the_unit_pair() {
        for eta in 0..2 {
            let a = rogers_pair(eta);
            let b = chain_step(&initial_pair(eta), RhoSpec::Infinity, RhoSpec::Infinity).unwrap();
            for l in 0..=8 {
                assert_eq!(a.alpha_exact(l), b.alpha_exact(l), "eta={eta} L={l}");
                let o = HalfExp::int(20);
                assert_eq!(a.beta(l, o).unwrap(), b.beta(l, o).unwrap());
            }
        }
    }
}

#[cfg(test)]
mod load_tests {
    use super::*;

    #[test]
    fn every_fixed_entry_verifies() {
        let c = Catalog::new();
        for label in list() {
            let e = c.get(&label).unwrap_or_else(|err| panic!("{label}: {err}"));
            assert!(e.report.verified());
        }
    }

    #[test]
    fn slater_rows_match_configuration_sum_pairs() {
        let c = Catalog::new();
        let o = HalfExp::int(20);
        for (a, b) in [("A(1)", "ABF(2,3,1,1)"), ("A(5)", "ABF(1,3,0,1)")] {
            let (x, y) = (c.get(a).unwrap(), c.get(b).unwrap());
            let (x, y) = (x.pair().unwrap(), y.pair().unwrap());
            for l in 0..=8 {
                assert_eq!(x.alpha_exact(l), y.alpha_exact(l), "{a} L={l}");
                assert_eq!(x.beta(l, o).unwrap(), y.beta(l, o).unwrap(), "{a} L={l}");
            }
        }
    }

    #[test]
    fn unknown_label_is_an_error() {
        assert!(matches!(Catalog::new().get("C(4)"), Err(QError::UnknownLabel(_))));
    }
}
