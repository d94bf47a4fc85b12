use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qcore::{HalfExp, QPolynomial, QSeries};

pub type SeriesFn = Arc<dyn Fn(usize, HalfExp) -> Result<QSeries> + Send + Sync>;
pub type PolyFn = Arc<dyn Fn(usize) -> QPolynomial + Send + Sync>;

/// Generator of one side of a pair. Exact generators produce polynomials;
/// series generators are asked for a target order.
#[derive(Clone)]
pub enum TermGen {
    Exact(PolyFn),
    Series(SeriesFn),
}

impl TermGen {
    pub fn exact(f: impl Fn(usize) -> QPolynomial + Send + Sync + 'static) -> Self {
        TermGen::Exact(Arc::new(f))
    }

    pub fn series(f: impl Fn(usize, HalfExp) -> Result<QSeries> + Send + Sync + 'static) -> Self {
        TermGen::Series(Arc::new(f))
    }
}

/// Memoized generator. Series values are kept at the highest order computed
/// so far and truncated on demand.
pub(crate) struct Memo {
    gen: TermGen,
    exact: Mutex<HashMap<usize, QPolynomial>>,
    series: Mutex<HashMap<usize, QSeries>>,
}

impl Memo {
    fn new(gen: TermGen) -> Self {
        Memo { gen, exact: Mutex::new(HashMap::new()), series: Mutex::new(HashMap::new()) }
    }

    fn is_exact(&self) -> bool {
        matches!(self.gen, TermGen::Exact(_))
    }

    fn exact(&self, l: usize) -> Option<QPolynomial> {
        let TermGen::Exact(f) = &self.gen else {
            return None;
        };
        if let Some(p) = self.exact.lock().unwrap().get(&l) {
            return Some(p.clone());
        }
        let p = f(l);
        self.exact.lock().unwrap().insert(l, p.clone());
        Some(p)
    }

    fn series(&self, l: usize, order: HalfExp) -> Result<QSeries> {
        match &self.gen {
            TermGen::Exact(_) => Ok(QSeries::from_poly(&self.exact(l).unwrap(), order)),
            TermGen::Series(f) => {
                if let Some(s) = self.series.lock().unwrap().get(&l) {
                    if s.order() >= order {
                        return Ok(s.truncate(order));
                    }
                }
                // computed outside the lock: generators may recurse into other memos
                let s = f(l, order)?;
                let mut memo = self.series.lock().unwrap();
                let keep = memo.get(&l).is_none_or(|old| old.order() < s.order());
                if keep {
                    memo.insert(l, s.clone());
                }
                Ok(s)
            }
        }
    }
}

/// A Bailey pair relative to `a = q^eta`:
/// `beta_L = sum_{r=0}^{L} alpha_r / ((q)_{L-r} (aq)_{L+r})`.
#[derive(Clone)]
pub struct BaileyPair {
    eta: u32,
    label: String,
    alpha: Arc<Memo>,
    beta: Arc<Memo>,
}

impl BaileyPair {
    pub fn new(eta: u32, label: impl Into<String>, alpha: TermGen, beta: TermGen) -> Self {
        BaileyPair { eta, label: label.into(), alpha: Arc::new(Memo::new(alpha)), beta: Arc::new(Memo::new(beta)) }
    }

    /// `alpha = beta = 0`.
    pub fn zero(eta: u32) -> Self {
        Self::new(eta, "zero", TermGen::exact(|_| QPolynomial::zero()), TermGen::exact(|_| QPolynomial::zero()))
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn alpha(&self, l: usize, order: HalfExp) -> Result<QSeries> {
        self.alpha.series(l, order)
    }

    pub fn beta(&self, l: usize, order: HalfExp) -> Result<QSeries> {
        self.beta.series(l, order)
    }

    /// `alpha_L` as an exact polynomial when the generator is exact.
    pub fn alpha_exact(&self, l: usize) -> Option<QPolynomial> {
        self.alpha.exact(l)
    }

    pub fn beta_exact(&self, l: usize) -> Option<QPolynomial> {
        self.beta.exact(l)
    }

    pub fn has_exact_alpha(&self) -> bool {
        self.alpha.is_exact()
    }

    /// Same beta memo, new alpha generator.
    pub(crate) fn replace_alpha(&self, alpha: TermGen) -> Self {
        BaileyPair { eta: self.eta, label: self.label.clone(), alpha: Arc::new(Memo::new(alpha)), beta: self.beta.clone() }
    }

    /// Same alpha memo, new beta generator.
    pub(crate) fn replace_beta(&self, beta: TermGen) -> Self {
        BaileyPair { eta: self.eta, label: self.label.clone(), alpha: self.alpha.clone(), beta: Arc::new(Memo::new(beta)) }
    }
}

impl fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaileyPair").field("label", &self.label).field("eta", &self.eta).finish()
    }
}

/// How the infinite sum defining `gamma_L` from `delta` is cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailPolicy {
    /// Sum from `max(L, support_from)` until the runtime certificate holds;
    /// `delta_r = 0` for `r < support_from`.
    Certified { support_from: usize },
    /// `delta_r = 0` for `r > last`; the sum is finite.
    Finite { last: usize },
}

impl TailPolicy {
    pub const CERTIFIED: TailPolicy = TailPolicy::Certified { support_from: 0 };
}

/// A conjugate Bailey pair relative to `a = q^eta`:
/// `gamma_L = sum_{r>=L} delta_r / ((q)_{r-L} (aq)_{r+L})`.
#[derive(Clone)]
pub struct ConjugatePair {
    eta: u32,
    label: String,
    gamma: Arc<Memo>,
    delta: Arc<Memo>,
    tail: TailPolicy,
}

impl ConjugatePair {
    pub fn new(eta: u32, label: impl Into<String>, gamma: TermGen, delta: TermGen, tail: TailPolicy) -> Self {
        ConjugatePair {
            eta,
            label: label.into(),
            gamma: Arc::new(Memo::new(gamma)),
            delta: Arc::new(Memo::new(delta)),
            tail,
        }
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn tail_policy(&self) -> TailPolicy {
        self.tail
    }

    pub fn gamma(&self, l: usize, order: HalfExp) -> Result<QSeries> {
        self.gamma.series(l, order)
    }

    pub fn delta(&self, l: usize, order: HalfExp) -> Result<QSeries> {
        self.delta.series(l, order)
    }

    pub fn delta_exact(&self, l: usize) -> Option<QPolynomial> {
        self.delta.exact(l)
    }

    /// First index that can carry a nonzero `delta`.
    pub fn support_from(&self) -> usize {
        match self.tail {
            TailPolicy::Certified { support_from } => support_from,
            TailPolicy::Finite { .. } => 0,
        }
    }
}

impl fmt::Debug for ConjugatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConjugatePair")
            .field("label", &self.label)
            .field("eta", &self.eta)
            .field("tail", &self.tail)
            .finish()
    }
}
