use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use super::identities::{andrews_gordon, coset_identity, rogers_ramanujan, slater_identity, AgRoute};
use super::report::{run_identity, IdentityReport, SeriesMismatch, Sides};
use crate::configsum::{x_bosonic, x_fermionic, x_fermionic_01, ConfigSumQuery, PPPair};
use crate::error::{QError, Result};
use crate::qcore::{HalfExp, QSeries};
use crate::stringfn::summation_formula_check;

/// One check of the standard suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteTask {
    RogersRamanujan { i: u32, order: HalfExp },
    AndrewsGordon { k: u32, i: u32, route: AgRoute, order: HalfExp },
    Slater { pair: String, conj: String, order: HalfExp },
    Coset { p1: (u32, u32), r: i64, s: i64, p2: (u32, u32), order: HalfExp },
    Summation { x: u32, y: u32, order: HalfExp },
    /// A catalog or parametric pair passed through its defining relation.
    Verify { label: String, l_max: usize, order: HalfExp },
    /// Fermionic against bosonic form for all valid `(r,s)` and `L <= l_max`,
    /// plus the `(0,1)` variant.
    Fermionic { pp: (u32, u32), l_max: i64 },
}

impl fmt::Display for SuiteTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteTask::RogersRamanujan { i, .. } => write!(f, "RR{i}"),
            SuiteTask::AndrewsGordon { k, i, route, .. } => write!(f, "AG k={k} i={i} {route:?}"),
            SuiteTask::Slater { pair, conj, .. } => write!(f, "{pair} x {conj}"),
            SuiteTask::Coset { p1, r, s, p2, .. } => write!(f, "coset {p1:?} ({r},{s}) x {p2:?}"),
            SuiteTask::Summation { x, y, .. } => write!(f, "summation x={x} y={y}"),
            SuiteTask::Fermionic { pp, l_max } => write!(f, "fermionic {pp:?} L<={l_max}"),
            SuiteTask::Verify { label, .. } => write!(f, "verify {label}"),
        }
    }
}

fn pp(t: (u32, u32)) -> Result<PPPair> {
    PPPair::new(t.0, t.1)
}

/// Polynomials compared as series past both degrees.
fn poly_sides(pairs: &[(crate::QPolynomial, crate::QPolynomial)]) -> Sides {
    let top = pairs
        .iter()
        .flat_map(|(a, b)| [a.degree(), b.degree()])
        .flatten()
        .max()
        .unwrap_or(HalfExp::ZERO)
        + HalfExp::int(1);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    // stack the pairs at disjoint offsets so one comparison covers all of them
    let stride = top + HalfExp::int(1);
    for (n, (a, b)) in pairs.iter().enumerate() {
        let shift = HalfExp(stride.0 * n as i64);
        lhs.push(a.shift(shift));
        rhs.push(b.shift(shift));
    }
    let order = HalfExp(stride.0 * pairs.len() as i64);
    let sum = |v: Vec<crate::QPolynomial>| QSeries::from_poly(&v.into_iter().sum(), order);
    Sides::new(sum(lhs), sum(rhs))
}

impl SuiteTask {
    pub fn run(&self) -> Result<IdentityReport> {
        match self {
            SuiteTask::RogersRamanujan { i, order } => rogers_ramanujan(*i, *order),
            SuiteTask::AndrewsGordon { k, i, route, order } => andrews_gordon(*k, *i, *order, *route),
            SuiteTask::Slater { pair, conj, order } => slater_identity(pair, conj, *order),
            SuiteTask::Coset { p1, r, s, p2, order } => coset_identity(pp(*p1)?, *r, *s, pp(*p2)?, *order),
            SuiteTask::Summation { x, y, order } => {
                run_identity("summation", json!({ "x": x, "y": y }), *order, || {
                    let c = summation_formula_check(*x, *y, *order)?;
                    Ok(Sides::new(c.lhs, c.rhs))
                })
            }
            SuiteTask::Verify { label, l_max, order } => {
                let (item, _) = crate::catalog::build(label)?;
                let start = std::time::Instant::now();
                let v = item.verify(*l_max, *order)?;
                Ok(IdentityReport {
                    name: "verify".into(),
                    params: json!({ "label": label, "L_max": l_max }),
                    order: *order,
                    status: v.status,
                    detail: v.first_mismatch.as_ref().map(|m| format!("relation fails at L={}", m.l)).or(v.detail),
                    first_mismatch: v.first_mismatch.map(|m| SeriesMismatch {
                        exponent: m.exponent,
                        lhs_coeff: m.lhs_coeff,
                        rhs_coeff: m.rhs_coeff,
                    }),
                    lhs_leading: Vec::new(),
                    rhs_leading: Vec::new(),
                    runtime_ms: Some(start.elapsed().as_millis() as u64),
                })
            }
            SuiteTask::Fermionic { pp: t, l_max } => {
                let p = pp(*t)?;
                let mut pairs = Vec::new();
                for l in 0..=*l_max {
                    for r in 0..p.p as i64 {
                        for s in 1..p.p_prime as i64 {
                            if (p.p_prime as i64 * r - p.p as i64 * s).abs() == 1 {
                                let b = x_bosonic(&ConfigSumQuery::new(p, r, s, 2 * l, s)?);
                                pairs.push((x_fermionic(p, r, s, l)?, b));
                            }
                        }
                    }
                    let b = x_bosonic(&ConfigSumQuery::new(p, 0, 1, 2 * l, 1)?);
                    pairs.push((x_fermionic_01(p, l)?, b));
                }
                let sides = poly_sides(&pairs);
                let order = sides.rhs.as_ref().map(|s| s.order()).unwrap_or(HalfExp::ZERO);
                run_identity("fermionic", json!({ "pp": [t.0, t.1], "L_max": l_max }), order, || Ok(sides))
            }
        }
    }
}

/// The standard suite at the depths used for acceptance.
pub fn default_suite() -> Vec<SuiteTask> {
    let mut out: Vec<SuiteTask> = crate::catalog::list()
        .into_iter()
        .filter(|l| !l.starts_with("gdinf"))
        .map(|label| SuiteTask::Verify { label, l_max: 8, order: HalfExp(40) })
        .collect();
    for (p, pp) in [(1, 3), (2, 3), (3, 4), (2, 5), (3, 5)] {
        for eta in 0..=2u32 {
            for ell in 0..=2.min(pp - 2) {
                if (ell + eta) % 2 == 0 {
                    out.push(SuiteTask::Verify { label: format!("CBP2({p},{pp},{ell})@{eta}"), l_max: 6, order: HalfExp(40) });
                }
            }
        }
    }
    for eta in 0..=2 {
        for j in 0..=2 {
            out.push(SuiteTask::Verify { label: format!("binomial({j})@{eta}"), l_max: 6, order: HalfExp(40) });
        }
    }
    out.extend([
        SuiteTask::RogersRamanujan { i: 1, order: HalfExp::int(50) },
        SuiteTask::RogersRamanujan { i: 2, order: HalfExp::int(50) },
    ]);
    for k in 2..=4 {
        for i in 1..=k {
            for route in [AgRoute::Direct, AgRoute::Derived] {
                out.push(SuiteTask::AndrewsGordon { k, i, route, order: HalfExp::int(40) });
            }
        }
    }
    for (pair, conj) in [("B(1)", "gdinf"), ("B(3)", "gdinf"), ("A(5)", "gdinf"), ("A(1)", "saalschutz(inf, inf, -q^(1/2))")] {
        out.push(SuiteTask::Slater { pair: pair.into(), conj: conj.into(), order: HalfExp(40) });
    }
    for (p1, r, s) in [((2, 3), 1, 1), ((1, 3), 0, 1), ((3, 4), 1, 1)] {
        for p2 in [(1, 3), (2, 3)] {
            out.push(SuiteTask::Coset { p1, r, s, p2, order: HalfExp::int(30) });
        }
    }
    for (x, y) in [(0, 1), (1, 1), (1, 2), (2, 3)] {
        out.push(SuiteTask::Summation { x, y, order: HalfExp::int(40) });
    }
    for pp in [(3, 4), (3, 5), (4, 5), (4, 7), (5, 7), (5, 8)] {
        out.push(SuiteTask::Fermionic { pp, l_max: 10 });
    }
    out
}

/// Runs `tasks` on `jobs` threads; the result order matches `tasks`.
pub fn run_suite(tasks: &[SuiteTask], jobs: usize) -> Result<Vec<IdentityReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| QError::Data(format!("thread pool: {e}")))?;
    pool.install(|| tasks.par_iter().map(SuiteTask::run).collect())
}
