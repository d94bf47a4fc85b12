//! Fermionic forms, enumerated depth first over `m_d, m_{d-1}, ..., m_1`
//! (all even and nonnegative).
//!
//! Every summand is `q^e` times a product of Gaussian polynomials with
//! nonnegative tops, so it has valuation exactly `e` and nonnegative
//! coefficients. A subtree is dropped once a lower bound for `e` over it
//! exceeds the degree of the bosonic side. The bound minimises the exponent
//! over the unassigned coordinates as real numbers, which needs the symmetric
//! part of `B` to be positive definite; that is checked up front.

use num_rational::Ratio;

use super::bosonic::{x_bosonic, ConfigSumQuery};
use super::structure::{FractionalStructure, PPPair};
use crate::error::{QError, Result};
use crate::qcore::{q_binomial, HalfExp, QPolynomial};

type Q = Ratio<i128>;

fn rat(n: i64) -> Q {
    Q::from_integer(n as i128)
}

/// Exponent and binomial-top data for one fermionic sum.
struct FermionicForm {
    st: FractionalStructure,
    l: i64,
    /// `e(m) = mBm/4 + lin.m + constant`
    lin: Vec<Q>,
    constant: i64,
    /// `top_j = L delta_{j,1} - top_shift_j + (inc m)_j / 2`
    top_shift: Vec<i64>,
}

impl FermionicForm {
    fn exponent(&self, m: &[i64]) -> i64 {
        let e = rat(self.st.quadratic_form(m)) / rat(4)
            + self.lin.iter().zip(m).map(|(c, &x)| c * rat(x)).sum::<Q>()
            + rat(self.constant);
        debug_assert!(e.is_integer());
        e.to_integer() as i64
    }

    fn term(&self, m: &[i64]) -> Result<QPolynomial> {
        let im = self.st.inc_times(m);
        let mut out = QPolynomial::monomial(1, HalfExp::int(self.exponent(m)));
        for j in 0..self.st.d {
            let top = if j == 0 { self.l } else { 0 } + im[j] / 2 - self.top_shift[j];
            if m[j] == 0 {
                continue;
            }
            if top < 0 {
                return Err(QError::Data(format!("negative binomial top {top} at m = {m:?}")));
            }
            let b = q_binomial(top, m[j]);
            if b.is_zero() {
                return Ok(b);
            }
            out = &out * &b;
        }
        Ok(out)
    }

    fn sum(&self, degree: i64) -> Result<QPolynomial> {
        let d = self.st.d;
        let sym: Vec<Vec<Q>> = (0..d)
            .map(|i| (0..d).map(|j| Q::new((self.st.cartan[i][j] + self.st.cartan[j][i]) as i128, 2)).collect())
            .collect();
        // inverse of the leading block S[..u][..u] for every u; all leading
        // minors must be positive
        let mut inverses = Vec::with_capacity(d + 1);
        for u in 0..=d {
            let block: Vec<Vec<Q>> = (0..u).map(|i| sym[i][..u].to_vec()).collect();
            inverses.push(invert_positive_definite(block).ok_or_else(|| {
                QError::InvalidParameter(format!(
                    "symmetric part of B is not positive definite for nu = {:?}",
                    self.st.nu
                ))
            })?);
        }
        let mut ctx = Search { form: self, sym, inverses, degree, m: vec![0; d], out: QPolynomial::zero(), nodes: 0 };
        ctx.descend(d)?;
        Ok(ctx.out)
    }
}

struct Search<'a> {
    form: &'a FermionicForm,
    sym: Vec<Vec<Q>>,
    inverses: Vec<Vec<Vec<Q>>>,
    degree: i64,
    m: Vec<i64>,
    out: QPolynomial,
    nodes: u64,
}

const MAX_NODES: u64 = 50_000_000;

impl Search<'_> {
    /// Lower bound of the exponent over all real completions of
    /// `m[u..]` (coordinates `m[..u]` free).
    fn bound(&self, u: usize) -> Q {
        let d = self.m.len();
        let lin = &self.form.lin;
        let mut fixed = Q::from_integer(0);
        for i in u..d {
            for j in u..d {
                fixed += self.sym[i][j] * rat(self.m[i] * self.m[j]);
            }
        }
        fixed /= rat(4);
        for i in u..d {
            fixed += lin[i] * rat(self.m[i]);
        }
        // free part: x S x / 4 + x h / 2 with h = S_{UA} m_A + 2 lin_U, minimum -h P^{-1} h / 4
        let h: Vec<Q> = (0..u)
            .map(|i| (u..d).map(|j| self.sym[i][j] * rat(self.m[j])).sum::<Q>() + lin[i] * rat(2))
            .collect();
        let inv = &self.inverses[u];
        let mut quad = Q::from_integer(0);
        for i in 0..u {
            for j in 0..u {
                quad += h[i] * inv[i][j] * h[j];
            }
        }
        fixed - quad / rat(4) + rat(self.form.constant)
    }

    /// Assign `m[u-1]` and recurse; `m[u..]` is already fixed.
    fn descend(&mut self, u: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(QError::Data("fermionic enumeration exceeded its node budget".into()));
        }
        if u == 0 {
            let t = self.form.term(&self.m)?;
            self.out = std::mem::take(&mut self.out) + t;
            return Ok(());
        }
        let c = u - 1;
        let limit = rat(self.degree);
        let mut prev: Option<Q> = None;
        let mut v = 0;
        loop {
            self.m[c] = v;
            let b = self.bound(c);
            if b > limit {
                // convex in v: past the minimum it only grows
                if prev.is_some_and(|p| b >= p) {
                    break;
                }
            } else {
                self.descend(c)?;
            }
            prev = Some(b);
            v += 2;
        }
        self.m[c] = 0;
        Ok(())
    }
}

/// Gauss-Jordan inverse of a symmetric matrix, `None` unless every pivot
/// (hence every leading minor) is positive.
fn invert_positive_definite(mut a: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect()).collect();
    for col in 0..n {
        let pivot = a[col][col];
        if pivot <= Q::from_integer(0) {
            return None;
        }
        for j in 0..n {
            a[col][j] /= pivot;
            inv[col][j] /= pivot;
        }
        for row in 0..n {
            if row != col {
                let f = a[row][col];
                if f != Q::from_integer(0) {
                    for j in 0..n {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[row][j] -= f * x;
                        inv[row][j] -= f * y;
                    }
                }
            }
        }
    }
    Some(inv)
}

fn check_regime(pp: PPPair) -> Result<()> {
    if pp.p < 2 || !pp.is_fermionic_regime() {
        return Err(QError::InvalidParameter(format!("fermionic form needs 1 < p < p' < 2p, got {pp}")));
    }
    Ok(())
}

fn degree_or_below(x: &QPolynomial) -> i64 {
    x.degree().map_or(-1, |e| e.floor_int())
}

/// `sum_{m in (2Z>=0)^d} q^{mBm/4} prod_j [L delta_{j,1} + (inc m)_j/2, m_j]`,
/// equal to `X^{(p,p')}_{r,s}(2L, s)` when `|p'r - ps| = 1`.
pub fn x_fermionic(pp: PPPair, r: i64, s: i64, l: i64) -> Result<QPolynomial> {
    check_regime(pp)?;
    if (pp.p_prime as i64 * r - pp.p as i64 * s).abs() != 1 {
        return Err(QError::InvalidParameter(format!("need |p'r - ps| = 1, got r={r}, s={s} for {pp}")));
    }
    let bosonic = x_bosonic(&ConfigSumQuery::new(pp, r, s, 2 * l, s)?);
    let st = FractionalStructure::new(pp)?;
    let d = st.d;
    let form = FermionicForm { st, l, lin: vec![Q::from_integer(0); d], constant: 0, top_shift: vec![0; d] };
    form.sum(degree_or_below(&bosonic))
}

/// `q^L sum_m q^{mBm/4 + (1/2) sum_i m_{t_i}} prod_j [L delta_{j,1} - sum_i delta_{j,t_i} + (inc m)_j/2, m_j]`,
/// equal to `X^{(p,p')}_{0,1}(2L, 1)`.
pub fn x_fermionic_01(pp: PPPair, l: i64) -> Result<QPolynomial> {
    check_regime(pp)?;
    let bosonic = x_bosonic(&ConfigSumQuery::new(pp, 0, 1, 2 * l, 1)?);
    let st = FractionalStructure::new(pp)?;
    let d = st.d;
    let mut lin = vec![Q::from_integer(0); d];
    let mut top_shift = vec![0; d];
    for &t in &st.t {
        lin[t - 1] += Q::new(1, 2);
        top_shift[t - 1] += 1;
    }
    let form = FermionicForm { st, l, lin, constant: l, top_shift };
    form.sum(degree_or_below(&bosonic))
}
