use super::bosonic::{x_bosonic, ConfigSumQuery};
use super::structure::PPPair;
use crate::bailey::{BaileyPair, TermGen};
use crate::error::{QError, Result};
use crate::qcore::{inv_q_factorial, HalfExp, QPolynomial};

/// `alpha_L` of the configuration-sum pair:
/// * `alpha_0 = 1`
/// * `alpha_{jp'} = q^{j(jpp'+rp'-sp)} + q^{j(jpp'-rp'+sp)}`, `j >= 1`
/// * `alpha_{jp'+s} = -q^{(jp+r)(jp'+s)}`, `j >= 0`
/// * `alpha_{jp'-s} = -q^{(jp-r)(jp'-s)}`, `j >= 1`
pub fn abf_alpha(pp: PPPair, r: i64, s: i64, l: usize) -> QPolynomial {
    let (p, q) = (pp.p as i64, pp.p_prime as i64);
    let l = l as i64;
    if l == 0 {
        return QPolynomial::one();
    }
    let mono = |c: i64, e: i64| QPolynomial::monomial(c, HalfExp::int(e));
    let mut out = QPolynomial::zero();
    let mut hits = 0;
    if l % q == 0 {
        let j = l / q;
        out = out + mono(1, j * (j * p * q + r * q - s * p)) + mono(1, j * (j * p * q - r * q + s * p));
        hits += 1;
    }
    if (l - s) % q == 0 && l >= s {
        let j = (l - s) / q;
        out = out + mono(-1, (j * p + r) * (j * q + s));
        hits += 1;
    }
    if (l + s) % q == 0 && l + s >= q {
        let j = (l + s) / q;
        out = out + mono(-1, (j * p - r) * (j * q - s));
        hits += 1;
    }
    assert!(hits <= 1, "support collision at L={l} for {pp}, r={r}, s={s}");
    out
}

/// Pair relative to 1 with `beta_L = X^{(p,p')}_{r,s}(2L, s) / (q)_{2L}`.
pub fn abf_bailey_pair(pp: PPPair, r: i64, s: i64) -> Result<BaileyPair> {
    if (pp.p_prime as i64 * r - pp.p as i64 * s).abs() != 1 {
        return Err(QError::InvalidParameter(format!("need |p'r - ps| = 1, got r={r}, s={s} for {pp}")));
    }
    ConfigSumQuery::new(pp, r, s, 0, s)?;
    let label = format!("ABF({},{},{r},{s})", pp.p, pp.p_prime);
    let alpha = TermGen::exact(move |l| abf_alpha(pp, r, s, l));
    let beta = TermGen::series(move |l, order| {
        let l = l as i64;
        let x = x_bosonic(&ConfigSumQuery::new(pp, r, s, 2 * l, s)?);
        Ok(inv_q_factorial(2 * l, order).mul_poly(&x))
    });
    Ok(BaileyPair::new(0, label, alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bailey::verify_bailey_pair;

    #[test]
    fn pairs_verify() {
        for (p, q, r, s) in [(2, 3, 1, 1), (1, 3, 0, 1), (2, 5, 1, 2), (3, 4, 1, 1), (3, 5, 1, 2), (4, 7, 1, 2)] {
            let pair = abf_bailey_pair(PPPair::new(p, q).unwrap(), r, s).unwrap();
            let rep = verify_bailey_pair(&pair, 8, HalfExp::int(30)).unwrap();
            assert!(rep.verified(), "{rep:?}");
        }
    }

    #[test]
    fn first_alphas_of_the_two_three_pair() {
        // (2,3), r = s = 1: alpha_1 = -q, alpha_2 = -q^2, alpha_3 = q^5 + q^7
        let pp = PPPair::new(2, 3).unwrap();
        assert_eq!(abf_alpha(pp, 1, 1, 1), QPolynomial::monomial(-1, HalfExp::int(1)));
        assert_eq!(abf_alpha(pp, 1, 1, 2), QPolynomial::monomial(-1, HalfExp::int(2)));
        assert_eq!(abf_alpha(pp, 1, 1, 3), QPolynomial::from_int_terms(&[(5, 1), (7, 1)]));
    }
}
