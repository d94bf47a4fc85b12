//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact; the only tolerances are
//! the wall-clock limits below.

use std::time::{Duration, Instant};

use qbailey::bailey::*;
use qbailey::catalog::{self, Catalog};
use qbailey::configsum::*;
use qbailey::pipeline::*;
use qbailey::qcore::*;
use qbailey::stringfn::*;

const CATALOG_LIMIT: Duration = Duration::from_secs(10);
const FERMIONIC_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(300);

const O40: HalfExp = HalfExp(40);
const FERMIONIC_SET: [(u32, u32); 6] = [(3, 4), (3, 5), (4, 5), (4, 7), (5, 7), (5, 8)];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(limit: Duration, took: Duration, what: &str) -> Result<(), String> {
    ensure(took < limit, || format!("{what} took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs()))
}

/// Number of partitions of each `n <= n_max` into parts accepted by `allowed`.
fn restricted_partitions(n_max: usize, allowed: impl Fn(usize) -> bool) -> Vec<i128> {
    let mut p = vec![0i128; n_max + 1];
    p[0] = 1;
    for part in (1..=n_max).filter(|&k| allowed(k)) {
        for n in part..=n_max {
            p[n] += p[n - part];
        }
    }
    p
}

fn coeffs(s: &QSeries, n_max: usize) -> Result<Vec<i128>, String> {
    (0..=n_max as i64)
        .map(|n| {
            let c = s.coeff(HalfExp::int(n)).ok_or_else(|| format!("q^{n} beyond series order {}", s.order()))?;
            i128::try_from(c).map_err(err)
        })
        .collect()
}

/// Exact `q -> 1/q` reversal written out termwise.
fn reversed(x: &QPolynomial, shift: HalfExp) -> QPolynomial {
    QPolynomial::from_terms(x.terms().map(|(e, c)| (shift - e, c.clone())))
}

fn catalog_soundness() -> Check {
    let start = Instant::now();
    let catalog = Catalog::new();
    let labels: Vec<String> = catalog::list().into_iter().filter(|l| !l.starts_with("gdinf")).collect();
    for label in &labels {
        let e = catalog.get(label).map_err(err)?;
        let pair = e.pair().ok_or_else(|| format!("{label} is not a pair"))?;
        let r = verify_bailey_pair(pair, 8, O40).map_err(err)?;
        ensure(r.verified(), || format!("{label}: {r:?}"))?;
    }
    let took = start.elapsed();
    within(CATALOG_LIMIT, took, "catalog verification")?;
    Ok(format!("{} pairs verified for L <= 8 to q^20 in {:.2} s", labels.len(), took.as_secs_f64()))
}

fn chain_reproduction() -> Check {
    for eta in 0..=1u32 {
        let p = chain_step(&initial_pair(eta), RhoSpec::Infinity, RhoSpec::Infinity).map_err(err)?;
        for l in 0..=8usize {
            let li = l as i64;
            let sign = if li % 2 == 0 { 1 } else { -1 };
            let expect = match (eta, l) {
                (0, 0) => QPolynomial::one(),
                (0, _) => {
                    let e = li * (3 * li - 1) / 2;
                    QPolynomial::from_int_terms(&[(e, sign), (e + li, sign)])
                }
                _ => {
                    let e = li * (3 * li + 1) / 2;
                    let terms: Vec<_> = (0..=2 * li).map(|t| (e + t, sign)).collect();
                    QPolynomial::from_int_terms(&terms)
                }
            };
            let got = p.alpha(l, O40).map_err(err)?;
            ensure(got == QSeries::from_poly(&expect, O40), || format!("eta={eta}: alpha_{l} = {got}"))?;
            // beta_L = 1/(q)_L counts partitions into parts <= L
            let beta = coeffs(&p.beta(l, O40).map_err(err)?, 20)?;
            ensure(beta == restricted_partitions(20, |k| k <= l), || format!("eta={eta}: beta_{l} differs"))?;
        }
    }
    Ok("alpha and beta of chain(unit pair) match Rogers' pairs for a = 1, q and L <= 8".into())
}

fn lattice_degeneration() -> Check {
    let rhos = [
        (RhoSpec::Infinity, RhoSpec::Infinity),
        (RhoSpec::finite(true, 1), RhoSpec::Infinity),
        (RhoSpec::finite(true, 1), RhoSpec::finite(true, 0)),
    ];
    let bases = [initial_pair(0), initial_pair(1), rogers_pair_of(0)?, rogers_pair_of(1)?];
    let mut compared = 0;
    for base in &bases {
        for (r1, r2) in rhos {
            let chain = chain_step(base, r1, r2).map_err(err)?;
            for lat in [lattice_step_i(base, 0, r1, r2), lattice_step_ii(base, 0, r1, r2)] {
                let lat = lat.map_err(err)?;
                for l in 0..=6 {
                    let (a, b) = (lat.alpha(l, O40).map_err(err)?, chain.alpha(l, O40).map_err(err)?);
                    ensure(a == b, || format!("{}: alpha_{l} differs from the chain", lat.label()))?;
                    let (a, b) = (lat.beta(l, O40).map_err(err)?, chain.beta(l, O40).map_err(err)?);
                    ensure(a == b, || format!("{}: beta_{l} differs from the chain", lat.label()))?;
                }
                compared += 1;
            }
        }
    }
    let mut verified = 0;
    for n in 1..=2usize {
        for eta_b in [n as u32, n as u32 + 1] {
            let srcs = [initial_pair(eta_b), chain_step(&initial_pair(eta_b), RhoSpec::Infinity, RhoSpec::Infinity).map_err(err)?];
            for src in &srcs {
                for (r1, r2) in [rhos[0], rhos[1]] {
                    for lat in [lattice_step_i(src, n, r1, r2), lattice_step_ii(src, n, r1, r2)] {
                        let lat = lat.map_err(err)?;
                        let r = verify_bailey_pair(&lat, 6, O40).map_err(err)?;
                        ensure(r.verified(), || format!("{}: {r:?}", lat.label()))?;
                        verified += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{compared} N=0 lattice pairs equal the chain for L <= 6; {verified} pairs with N in {{1,2}} verify to q^20"))
}

fn rogers_pair_of(eta: u32) -> Result<BaileyPair, String> {
    let label = if eta == 0 { "B(1)" } else { "B(3)" };
    Ok(Catalog::global().get(label).map_err(err)?.pair().expect("B rows are pairs").clone())
}

/// Every `(r, s)` with `1 <= s < p'`, `0 <= r < p` and `|p'r - ps| = 1`.
fn valid_rs(pp: PPPair) -> Vec<(i64, i64)> {
    let (p, q) = (pp.p as i64, pp.p_prime as i64);
    (0..p).flat_map(|r| (1..q).map(move |s| (r, s))).filter(|&(r, s)| (q * r - p * s).abs() == 1).collect()
}

fn fermionic_forms() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for (p, q) in FERMIONIC_SET {
        let pp = PPPair::new(p, q).map_err(err)?;
        for (r, s) in valid_rs(pp) {
            for l in 0..=10 {
                let f = x_fermionic(pp, r, s, l).map_err(err)?;
                let b = x_bosonic(&ConfigSumQuery::new(pp, r, s, 2 * l, s).map_err(err)?);
                ensure(f == b, || format!("{pp} r={r} s={s} L={l}: fermionic {f} vs bosonic {b}"))?;
                n += 1;
            }
        }
    }
    let took = start.elapsed();
    within(FERMIONIC_LIMIT, took, "fermionic sweep")?;
    Ok(format!("{n} (p,p',r,s,L) cases equal exactly in {:.2} s", took.as_secs_f64()))
}

fn fermionic_01() -> Check {
    let mut n = 0;
    for (p, q) in FERMIONIC_SET {
        let pp = PPPair::new(p, q).map_err(err)?;
        for l in 0..=10 {
            let f = x_fermionic_01(pp, l).map_err(err)?;
            let b = x_bosonic(&ConfigSumQuery::new(pp, 0, 1, 2 * l, 1).map_err(err)?);
            ensure(f == b, || format!("{pp} L={l}: fermionic {f} vs bosonic {b}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (p,p',L) cases of the (r,s) = (0,1) form equal exactly"))
}

fn rogers_ramanujan_check() -> Check {
    let order = HalfExp::int(50);
    for i in 1..=2u32 {
        let r = rogers_ramanujan(i, order).map_err(err)?;
        ensure(r.verified(), || r.summary_line())?;
        let sum = bilinear_identity(&rogers_pair_of(i - 1)?, &conjugate_saalschutz(i - 1, None, RhoSpec::Infinity, RhoSpec::Infinity).map_err(err)?, order)
            .map_err(err)?
            .rhs;
        let residues: &[usize] = if i == 1 { &[1, 4] } else { &[2, 3] };
        let oracle = restricted_partitions(50, |k| residues.contains(&(k % 5)));
        ensure(coeffs(&sum, 50)? == oracle, || format!("RR{i} sum side differs from the partition count"))?;
    }
    Ok("RR1 and RR2 verified to q^50; sum sides equal partition counts for n <= 50".into())
}

fn andrews_gordon_check() -> Check {
    let order = HalfExp::int(40);
    for k in 2..=4u32 {
        for i in 1..=k {
            for route in [AgRoute::Direct, AgRoute::Derived] {
                let r = andrews_gordon(k, i, order, route).map_err(err)?;
                ensure(r.verified(), || r.summary_line())?;
            }
            let direct = ag_multisum(k, i, order).map_err(err)?;
            let derived = ag_derived_lhs(&ag_derived_pair(k, i).map_err(err)?, order).map_err(err)?;
            ensure(direct == derived, || format!("k={k} i={i}: routes differ"))?;
            // Gordon: parts not congruent to 0, +-i mod 2k+1
            let m = 2 * k as usize + 1;
            let oracle = restricted_partitions(40, |p| ![0, i as usize, m - i as usize].contains(&(p % m)));
            ensure(coeffs(&direct, 40)? == oracle, || format!("k={k} i={i}: multisum differs from partition count"))?;
            if let Some(l) = ag_alpha_check(k, i, 8).map_err(err)? {
                return Err(format!("k={k} i={i}: derived alpha_{l} differs from the closed form"));
            }
        }
    }
    Ok("k = 2..4, all i: both routes verified to q^40 and equal; closed-form alpha holds for L <= 8".into())
}

fn cbp2_check() -> Check {
    let mut n = 0;
    for (p, q) in [(1, 3), (2, 3), (3, 4), (2, 5), (3, 5)] {
        let pp = PPPair::new(p, q).map_err(err)?;
        for eta in 0..=2u32 {
            for ell in 0..=2.min(q as i64 - 2) {
                if (ell + eta as i64) % 2 != 0 {
                    continue;
                }
                let c = conj_pair_cbp2(pp, eta, ell).map_err(err)?;
                let r = verify_conjugate_pair(&c, 6, O40).map_err(err)?;
                ensure(r.verified(), || format!("{}: {r:?}", c.label()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} string-function conjugate pairs verified for L <= 6 to q^20"))
}

fn binomial_and_summation() -> Check {
    for eta in 0..=2u32 {
        for j in 0..=2 {
            let c = conj_pair_binomial(eta, j);
            let r = verify_conjugate_pair(&c, 6, O40).map_err(err)?;
            ensure(r.verified(), || format!("{}: {r:?}", c.label()))?;
        }
    }
    for (x, y) in [(0, 1), (1, 1), (1, 2), (2, 3)] {
        let c = summation_formula_check(x, y, HalfExp::int(40)).map_err(err)?;
        ensure(c.equal, || format!("summation x={x} y={y} fails"))?;
    }
    Ok("9 binomial conjugate pairs verified; summation formula holds for 4 (x,y) to q^40".into())
}

fn coset_check() -> Check {
    let mut n = 0;
    for (p1, r, s) in [((2, 3), 1, 1), ((1, 3), 0, 1), ((3, 4), 1, 1)] {
        for p2 in [(1, 3), (2, 3)] {
            let rep = coset_identity(
                PPPair::new(p1.0, p1.1).map_err(err)?,
                r,
                s,
                PPPair::new(p2.0, p2.1).map_err(err)?,
                HalfExp::int(30),
            )
            .map_err(err)?;
            ensure(rep.verified(), || rep.summary_line())?;
            n += 1;
        }
    }
    Ok(format!("{n} coset identities verified to q^30"))
}

fn dualities() -> Check {
    // first relation: X^{(p,p')}_{r,s}(L,b) = q^{(L^2-(b-s)^2)/4} X^{(p'-p,p')}_{b-r,s}(L,b; 1/q)
    let first = [
        (2, 5, 1, 1, 5, 2),
        (2, 5, 1, 2, 6, 2),
        (2, 7, 1, 3, 7, 2),
        (3, 7, 1, 2, 8, 2),
        (3, 8, 1, 3, 9, 2),
        (3, 4, 1, 1, 6, 1),
        (3, 5, 1, 2, 7, 1),
        (4, 5, 1, 1, 6, 1),
        (4, 7, 1, 2, 7, 3),
        (5, 7, 2, 3, 8, 3),
    ];
    let mut n = 0;
    let mut regimes = [false; 2];
    for (p, q, r, s, l, b) in first {
        let pp = PPPair::new(p, q).map_err(err)?;
        let query = ConfigSumQuery::new(pp, r, s, l, b).map_err(err)?;
        let dual = ConfigSumQuery::new(pp.dual(), b - r, s, l, b).map_err(err)?;
        let shift = (l * l - (b - s) * (b - s)) / 4;
        let lhs = x_bosonic(&query);
        let rhs = reversed(&x_bosonic(&dual), HalfExp::int(shift));
        ensure(lhs == rhs, || format!("{pp} r={r} s={s} L={l} b={b}: {lhs} vs {rhs}"))?;
        ensure(lhs == x_dual(&query).map_err(err)?, || format!("{pp}: x_dual disagrees"))?;
        regimes[usize::from(q < 2 * p)] = true;
        n += 1;
    }
    // second relation: X^{(p'-p,p')}_{0,1}(2L,1) = q^{L(L+1)} X^{(p,p')}_{0,1}(2L,1; 1/q)
    for (p, q, l) in [(2, 5, 3), (2, 7, 4), (3, 7, 3), (3, 8, 4), (2, 9, 3), (3, 4, 4), (3, 5, 3), (4, 5, 4), (4, 7, 3), (5, 8, 3)] {
        let pp = PPPair::new(p, q).map_err(err)?;
        let x = x_bosonic(&ConfigSumQuery::new(pp, 0, 1, 2 * l, 1).map_err(err)?);
        let y = x_bosonic(&ConfigSumQuery::new(pp.dual(), 0, 1, 2 * l, 1).map_err(err)?);
        let rhs = reversed(&x, HalfExp::int(l * (l + 1)));
        ensure(y == rhs, || format!("{pp} L={l}: {y} vs {rhs}"))?;
        ensure(y == x_dual_01(pp, l).map_err(err)?, || format!("{pp}: x_dual_01 disagrees"))?;
        regimes[usize::from(q < 2 * p)] = true;
        n += 1;
    }
    ensure(regimes == [true, true], || "instances do not span both regimes".into())?;
    Ok(format!("{n} instances of the two q -> 1/q relations, spanning p' < 2p and p' > 2p"))
}

fn suite_determinism() -> Check {
    let tasks = default_suite();
    let start = Instant::now();
    let one = run_suite(&tasks, 1).map_err(err)?;
    let took = start.elapsed();
    within(SUITE_LIMIT, took, "single-threaded suite")?;
    let four = run_suite(&tasks, 4).map_err(err)?;
    let again = run_suite(&tasks, 1).map_err(err)?;
    let strip = |v: Vec<IdentityReport>| -> Vec<String> { v.into_iter().map(|r| r.without_runtime().to_json()).collect() };
    let failed: Vec<_> = one.iter().filter(|r| !r.verified()).map(|r| r.summary_line()).collect();
    ensure(failed.is_empty(), || format!("not verified: {failed:?}"))?;
    let (one, four, again) = (strip(one), strip(four), strip(again));
    ensure(one == four, || "output differs between --jobs 1 and --jobs 4".into())?;
    ensure(one == again, || "output differs between two runs".into())?;
    Ok(format!("{} checks verified in {:.2} s single-threaded; identical with 4 jobs", one.len(), took.as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("catalog soundness", catalog_soundness),
        ("chain reproduction", chain_reproduction),
        ("lattice degeneration", lattice_degeneration),
        ("fermionic form, general (r,s)", fermionic_forms),
        ("fermionic form, (r,s) = (0,1)", fermionic_01),
        ("Rogers-Ramanujan", rogers_ramanujan_check),
        ("Andrews-Gordon", andrews_gordon_check),
        ("string-function conjugate pairs", cbp2_check),
        ("binomial pairs and summation formula", binomial_and_summation),
        ("coset identity", coset_check),
        ("dualities", dualities),
        ("suite determinism and runtime", suite_determinism),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2} s]", n + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2} s]", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
