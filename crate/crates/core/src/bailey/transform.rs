use super::pair::{BaileyPair, ConjugatePair, TailPolicy, TermGen};
use super::rho::{ChainKernel, RhoSpec};
use super::tail::ReciprocalTable;
use super::verify::pair_relation_sum;
use crate::error::{QError, Result};
use crate::qcore::{
    inv_pochhammer_infinite, pochhammer, q_binomial, HalfExp, QPolynomial, QSeries, SeriesSum, SignedPower,
};

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `alpha_L` of the unit pair:
/// `(-1)^L q^(L(L-1)/2) (1 - q^(eta+2L)) (q^(eta+1))_{L-1} / (q)_L`, `alpha_0 = 1`.
///
/// This is the form with `(a)_L/(1-a)` cancelled, so `eta = 0` is covered.
/// The quotient is always a polynomial.
pub fn initial_alpha(eta: u32, l: usize) -> QPolynomial {
    if l == 0 {
        return QPolynomial::one();
    }
    let (eta, li) = (eta as i64, l as i64);
    let mut p = pochhammer(SignedPower::q_int(eta + 1), l as u32 - 1).mul_one_minus(SignedPower::q_int(eta + 2 * li));
    for i in 1..=li {
        p = p.div_one_minus(SignedPower::q_int(i)).expect("(q)_L divides the unit-pair numerator");
    }
    p.scale_by_monomial(&sign(li).into(), HalfExp::int(binom2(li)))
}

/// The unit pair `beta_L = delta_{L,0}` relative to `q^eta`.
pub fn initial_pair(eta: u32) -> BaileyPair {
    BaileyPair::new(
        eta,
        format!("initial@{eta}"),
        TermGen::exact(move |l| initial_alpha(eta, l)),
        TermGen::exact(|l| if l == 0 { QPolynomial::one() } else { QPolynomial::zero() }),
    )
}

/// Builds `alpha` from `beta` through the inverse transform:
/// `alpha_L = sum_r (-1)^(L-r) q^((L-r)(L-r-1)/2) (1 - q^(eta+2L)) (q^(eta+1))_{L+r-1} / (q)_{L-r} beta_r`,
/// where the `L = r = 0` term is `beta_0`.
pub fn inverse_transform(eta: u32, label: impl Into<String>, beta: TermGen) -> BaileyPair {
    let holder = BaileyPair::new(eta, label, TermGen::exact(|_| QPolynomial::zero()), beta);
    let src = holder.clone();
    let alpha = TermGen::series(move |l, order| {
        let li = l as i64;
        let eta = eta as i64;
        let mut inv_q = ReciprocalTable::q_factorial(order);
        let mut acc = SeriesSum::new(order);
        for r in 0..=l {
            let b = src.beta(r, order)?;
            if b.is_zero() {
                continue;
            }
            let ri = r as i64;
            let weight = if l == 0 {
                QPolynomial::one()
            } else {
                let d = li - ri;
                pochhammer(SignedPower::q_int(eta + 1), (li + ri - 1) as u32)
                    .mul_one_minus(SignedPower::q_int(eta + 2 * li))
                    .scale_by_monomial(&sign(d).into(), HalfExp::int(binom2(d)))
            };
            acc.add(&(&b * &inv_q.get(li - ri)?).mul_poly(&weight));
        }
        Ok(acc.finish())
    });
    holder.replace_alpha(alpha)
}

/// Builds `beta` from `alpha` through the pair relation.
pub fn forward_transform(eta: u32, label: impl Into<String>, alpha: TermGen) -> BaileyPair {
    let holder = BaileyPair::new(eta, label, alpha, TermGen::exact(|_| QPolynomial::zero()));
    let src = holder.clone();
    holder.replace_beta(TermGen::series(move |l, order| pair_relation_sum(&src, l, order)))
}

/// `beta'_L = sum_{r<=L} F_r (aq/rho1 rho2)_{L-r} / ((aq/rho1)_L (aq/rho2)_L (q)_{L-r}) beta_r`
/// with the kernel's `a`, applied to the betas of `src`.
fn kernel_beta(kernel: ChainKernel, src: BaileyPair) -> TermGen {
    TermGen::series(move |l, order| {
        let inv_den = kernel.inv_denominator(l, order);
        let mut inv_q = ReciprocalTable::q_factorial(order);
        let mut acc = SeriesSum::new(order);
        for r in 0..=l {
            let b = src.beta(r, order)?;
            if b.is_zero() {
                continue;
            }
            let w = kernel.beta_weight_partial(l, r, &inv_den);
            acc.add(&(&(&b * &w) * &inv_q.get((l - r) as i64)?));
        }
        Ok(acc.finish())
    })
}

fn rho_suffix(rho1: RhoSpec, rho2: RhoSpec) -> String {
    if rho1.is_infinite() && rho2.is_infinite() {
        String::new()
    } else {
        format!("; {rho1}, {rho2}")
    }
}

/// One step of the Bailey chain.
pub fn chain_step(pair: &BaileyPair, rho1: RhoSpec, rho2: RhoSpec) -> Result<BaileyPair> {
    let eta = pair.eta();
    let kernel = ChainKernel::new(eta, rho1, rho2)?;
    let label = format!("chain({}{})", pair.label(), rho_suffix(rho1, rho2));
    let src = pair.clone();
    let alpha = if kernel.both_infinite() && pair.has_exact_alpha() {
        TermGen::exact(move |l| {
            let li = l as i64;
            src.alpha_exact(l).unwrap().shift(HalfExp::int(li * li + eta as i64 * li))
        })
    } else {
        TermGen::series(move |l, order| Ok(&kernel.alpha_factor(l, order) * &src.alpha(l, order)?))
    };
    Ok(BaileyPair::new(eta, label, alpha, kernel_beta(kernel, pair.clone())))
}

/// `n` chain steps with both parameters at infinity.
pub fn chain_iterate(pair: &BaileyPair, n: usize) -> BaileyPair {
    let mut p = pair.clone();
    for _ in 0..n {
        p = chain_step(&p, RhoSpec::Infinity, RhoSpec::Infinity).expect("infinite rho is always valid");
    }
    p
}

/// `1 / prod_{i = 2L-j .. 2L-j+N, i != 2L} (1 - q^(eta+i))`: the ratio
/// `(1 - aq^(2L)) (aq)_{2L-j-1} / (aq)_{2L-j+N}` with the vanishing-at-`a=1`
/// factor cancelled.
fn lattice_ratio(eta: u32, l: usize, j: usize, n: usize, order: HalfExp) -> Result<QSeries> {
    let mut s = QSeries::one(order);
    let lo = 2 * l as i64 - j as i64;
    for i in lo..=lo + n as i64 {
        if i == 2 * l as i64 {
            continue;
        }
        let f = SignedPower::q_int(eta as i64 + i);
        if f.exp <= order {
            s = s.div_one_minus(f)?;
        }
    }
    Ok(s)
}

/// `(-1)^j q^(eta j + 2Lj - j(j+1)/2) [N, j]`
fn lattice_coefficient(eta: u32, l: usize, j: usize, n: usize) -> QPolynomial {
    let (eta, li, ji) = (eta as i64, l as i64, j as i64);
    q_binomial(n as i64, ji).scale_by_monomial(&sign(ji).into(), HalfExp::int(eta * ji + 2 * li * ji - ji * (ji + 1) / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LatticeKind {
    First,
    Second,
}

fn lattice_step(kind: LatticeKind, pair_b: &BaileyPair, n: usize, rho1: RhoSpec, rho2: RhoSpec) -> Result<BaileyPair> {
    let eta_b = pair_b.eta();
    if (eta_b as usize) < n {
        return Err(QError::InvalidParameter(format!(
            "lattice step with N={n} needs a pair relative to q^eta with eta >= N, got eta={eta_b}"
        )));
    }
    let eta = eta_b - n as u32;
    let kernel = match kind {
        LatticeKind::First => ChainKernel::new(eta, rho1, rho2)?,
        LatticeKind::Second => ChainKernel::new(eta_b, rho1, rho2)?,
    };
    let name = match kind {
        LatticeKind::First => "lattice1",
        LatticeKind::Second => "lattice2",
    };
    let label = format!("{name}({}; N={n}{})", pair_b.label(), rho_suffix(rho1, rho2));
    let src = pair_b.clone();
    let aq_n = pochhammer(SignedPower::q_int(eta as i64 + 1), n as u32);
    let alpha = TermGen::series(move |l, order| {
        let mut acc = SeriesSum::new(order);
        for j in 0..=n.min(l) {
            let a = src.alpha(l - j, order)?;
            if a.is_zero() {
                continue;
            }
            let mut t = (&a * &lattice_ratio(eta, l, j, n, order)?).mul_poly(&lattice_coefficient(eta, l, j, n));
            if kind == LatticeKind::Second {
                t = &t * &kernel.alpha_factor(l - j, order);
            }
            acc.add(&t);
        }
        let mut s = acc.finish().mul_poly(&aq_n);
        if kind == LatticeKind::First {
            s = &s * &kernel.alpha_factor(l, order);
        }
        Ok(s)
    });
    Ok(BaileyPair::new(eta, label, alpha, kernel_beta(kernel, pair_b.clone())))
}

/// Moves a pair relative to `b = a q^N` to a pair relative to `a`, with the
/// chain weights taken at `a`.
pub fn lattice_step_i(pair_b: &BaileyPair, n: usize, rho1: RhoSpec, rho2: RhoSpec) -> Result<BaileyPair> {
    lattice_step(LatticeKind::First, pair_b, n, rho1, rho2)
}

/// As [`lattice_step_i`] with the chain weights taken at `b` inside the sum.
pub fn lattice_step_ii(pair_b: &BaileyPair, n: usize, rho1: RhoSpec, rho2: RhoSpec) -> Result<BaileyPair> {
    lattice_step(LatticeKind::Second, pair_b, n, rho1, rho2)
}

/// The Saalschütz conjugate pair relative to `q^eta`.
///
/// With `F_L = (rho1)_L (rho2)_L (aq/rho1 rho2)^L`, for finite `M`:
/// `gamma_L = F_L / ((aq/rho1)_L (aq/rho2)_L (q)_{M-L} (aq)_{M+L})`,
/// `delta_L = F_L (aq/rho1 rho2)_{M-L} / ((aq/rho1)_M (aq/rho2)_M (q)_{M-L})`.
/// For `M = None` (infinite) both sides are multiplied by `(q)_inf`:
/// `gamma_L = F_L / ((aq/rho1)_L (aq/rho2)_L (aq)_inf)`,
/// `delta_L = F_L (aq/rho1 rho2)_inf / ((aq/rho1)_inf (aq/rho2)_inf)`.
pub fn conjugate_saalschutz(eta: u32, m: Option<usize>, rho1: RhoSpec, rho2: RhoSpec) -> Result<ConjugatePair> {
    let kernel = ChainKernel::new(eta, rho1, rho2)?;
    let aq = SignedPower::q_int(eta as i64 + 1);
    match m {
        None => {
            let label = if kernel.both_infinite() {
                format!("gdinf@{eta}")
            } else {
                format!("saalschutz(inf, {rho1}, {rho2})@{eta}")
            };
            let gamma = TermGen::series(move |l, order| {
                let s = &kernel.alpha_factor(l, order) * &inv_pochhammer_infinite(aq, order)?;
                Ok(s)
            });
            let delta = if kernel.both_infinite() {
                TermGen::exact(move |l| kernel.numerator(l))
            } else {
                TermGen::series(move |l, order| {
                    let s = &kernel.inv_denominator_infinite(order) * &kernel.middle_infinite(order)?;
                    Ok(s.mul_poly(&kernel.numerator(l)))
                })
            };
            Ok(ConjugatePair::new(eta, label, gamma, delta, TailPolicy::CERTIFIED))
        }
        Some(m) => {
            let label = format!("saalschutz({m}, {rho1}, {rho2})@{eta}");
            let gamma = TermGen::series(move |l, order| {
                if l > m {
                    return Ok(QSeries::zero(order));
                }
                let mut inv_q = ReciprocalTable::q_factorial(order);
                let mut inv_aq = ReciprocalTable::new(aq, order);
                let w = &inv_q.get((m - l) as i64)? * &inv_aq.get((m + l) as i64)?;
                Ok(&kernel.alpha_factor(l, order) * &w)
            });
            let delta = TermGen::series(move |l, order| {
                if l > m {
                    return Ok(QSeries::zero(order));
                }
                let mut inv_q = ReciprocalTable::q_factorial(order);
                let s = &kernel.inv_denominator(m, order) * &inv_q.get((m - l) as i64)?;
                Ok(s.mul_poly(&(kernel.numerator(l) * kernel.middle(m - l))))
            });
            Ok(ConjugatePair::new(eta, label, gamma, delta, TailPolicy::Finite { last: m }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_pair_at_one() {
        // (-1)^L q^(L(L-1)/2) (1 + q^L)
        let a = initial_alpha(0, 3);
        assert_eq!(a, QPolynomial::from_int_terms(&[(3, -1), (6, -1)]));
        assert_eq!(initial_alpha(0, 0), QPolynomial::one());
    }

    #[test]
    fn unit_pair_at_q() {
        // (-1)^L q^(L(L-1)/2) (1 - q^(2L+1)) / (1 - q)
        let a = initial_alpha(1, 2);
        assert_eq!(a, QPolynomial::from_int_terms(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]));
    }

    #[test]
    fn lattice_ratio_at_zero_is_one() {
        let o = HalfExp::int(10);
        assert_eq!(lattice_ratio(0, 0, 0, 3, o).unwrap(), {
            let mut s = QSeries::one(o);
            for i in 1..=3 {
                s = s.div_one_minus(SignedPower::q_int(i)).unwrap();
            }
            s
        });
    }
}
