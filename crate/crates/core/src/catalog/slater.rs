//! Group A of Slater's list and Rogers' pairs, written as explicit
//! `L -> alpha_L` maps.
//!
//! The `a = 1` rows give `alpha` on the families `3L` (for `L >= 1`) and
//! `3L +- 1`; the `a = q` rows give it on `3L` (upper sign), `3L - 1` (lower
//! sign) and `3L + 1`. `alpha_0 = 1` throughout.

use crate::bailey::{BaileyPair, TermGen};
use crate::error::{QError, Result};
use crate::qcore::{inv_pochhammer, HalfExp, QPolynomial, SignedPower};

type Family = fn(i64) -> QPolynomial;

fn mono(c: i64, e: i64) -> QPolynomial {
    QPolynomial::monomial(c, HalfExp::int(e))
}

fn two(e1: i64, e2: i64) -> QPolynomial {
    mono(1, e1) + mono(1, e2)
}

fn neg_two(e1: i64, e2: i64) -> QPolynomial {
    mono(-1, e1) + mono(-1, e2)
}

/// One table row.
#[derive(Clone, Copy)]
pub struct SlaterRow {
    pub label: &'static str,
    pub eta: u32,
    /// `alpha_{3L}`, `L >= 1`
    pub at_3l: Family,
    /// `alpha_{3L-1}`, `L >= 1`
    pub at_3l_minus: Family,
    /// `alpha_{3L+1}`, `L >= 0`
    pub at_3l_plus: Family,
    /// `beta_L = q^{beta_exp(L)} / (q^(eta+1))_{2L}`
    pub beta_exp: fn(i64) -> i64,
}

pub const ROWS: [SlaterRow; 8] = [
    SlaterRow {
        label: "A(1)",
        eta: 0,
        at_3l: |l| two(l * (6 * l - 1), l * (6 * l + 1)),
        at_3l_minus: |l| mono(-1, (2 * l - 1) * (3 * l - 1)),
        at_3l_plus: |l| mono(-1, (2 * l + 1) * (3 * l + 1)),
        beta_exp: |_| 0,
    },
    SlaterRow {
        label: "A(2)",
        eta: 1,
        at_3l: |l| mono(1, l * (6 * l + 1)),
        at_3l_minus: |l| mono(1, l * (6 * l - 1)),
        at_3l_plus: |l| neg_two((2 * l + 1) * (3 * l + 1), (2 * l + 1) * (3 * l + 2)),
        beta_exp: |_| 0,
    },
    SlaterRow {
        label: "A(3)",
        eta: 0,
        at_3l: |l| two(2 * l * (3 * l - 1), 2 * l * (3 * l + 1)),
        at_3l_minus: |l| mono(-1, 2 * l * (3 * l - 1)),
        at_3l_plus: |l| mono(-1, 2 * l * (3 * l + 1)),
        beta_exp: |l| l,
    },
    SlaterRow {
        label: "A(4)",
        eta: 1,
        at_3l: |l| mono(1, 2 * l * (3 * l + 2)),
        at_3l_minus: |l| mono(1, 2 * l * (3 * l - 2)),
        at_3l_plus: |l| neg_two(2 * (l + 1) * (3 * l + 1), 2 * l * (3 * l + 2)),
        beta_exp: |l| l,
    },
    SlaterRow {
        label: "A(5)",
        eta: 0,
        at_3l: |l| two(l * (3 * l - 1), l * (3 * l + 1)),
        at_3l_minus: |l| mono(-1, l * (3 * l - 1)),
        at_3l_plus: |l| mono(-1, l * (3 * l + 1)),
        beta_exp: |l| l * l,
    },
    SlaterRow {
        label: "A(6)",
        eta: 1,
        at_3l: |l| mono(1, l * (3 * l - 1)),
        at_3l_minus: |l| mono(1, l * (3 * l + 1)),
        at_3l_plus: |l| neg_two(l * (3 * l + 1), (l + 1) * (3 * l + 2)),
        beta_exp: |l| l * l,
    },
    SlaterRow {
        label: "A(7)",
        eta: 0,
        at_3l: |l| two(l * (3 * l - 2), l * (3 * l + 2)),
        at_3l_minus: |l| mono(-1, (l - 1) * (3 * l - 1)),
        at_3l_plus: |l| mono(-1, (l + 1) * (3 * l + 1)),
        beta_exp: |l| l * l - l,
    },
    SlaterRow {
        label: "A(8)",
        eta: 1,
        at_3l: |l| mono(1, l * (3 * l + 2)),
        at_3l_minus: |l| mono(1, l * (3 * l - 2)),
        at_3l_plus: |l| neg_two((l + 1) * (3 * l + 1), l * (3 * l + 2)),
        beta_exp: |l| l * l + l,
    },
];

/// Which family covers index `n`; `None` means `alpha_0`.
fn family_of(n: i64) -> Vec<(&'static str, i64)> {
    let mut hits = Vec::new();
    if n == 0 {
        hits.push(("0", 0));
    }
    if n % 3 == 0 && n >= 3 {
        hits.push(("3L", n / 3));
    }
    if (n + 1) % 3 == 0 && n >= 2 {
        hits.push(("3L-1", (n + 1) / 3));
    }
    if n >= 1 && (n - 1) % 3 == 0 {
        hits.push(("3L+1", (n - 1) / 3));
    }
    hits
}

/// Every index up to `n_max` must be covered by exactly one family.
pub fn check_coverage(n_max: i64) -> Result<()> {
    for n in 0..=n_max {
        let hits = family_of(n);
        if hits.len() != 1 {
            return Err(QError::Data(format!("alpha index {n} is covered by {hits:?}")));
        }
    }
    Ok(())
}

impl SlaterRow {
    pub fn alpha(&self, n: usize) -> QPolynomial {
        let hits = family_of(n as i64);
        assert_eq!(hits.len(), 1, "alpha index {n} covered by {hits:?}");
        match hits[0] {
            ("0", _) => QPolynomial::one(),
            ("3L", l) => (self.at_3l)(l),
            ("3L-1", l) => (self.at_3l_minus)(l),
            (_, l) => (self.at_3l_plus)(l),
        }
    }

    pub fn pair(self) -> BaileyPair {
        let eta = self.eta;
        BaileyPair::new(
            eta,
            self.label,
            TermGen::exact(move |n| self.alpha(n)),
            TermGen::series(move |l, order| {
                let l = l as i64;
                Ok(inv_pochhammer(SignedPower::q_int(eta as i64 + 1), 2 * l, order)?
                    .mul_power(SignedPower::q_int((self.beta_exp)(l)))
                    .truncate(order))
            }),
        )
    }
}

/// Rogers' pair relative to `q^eta` (`eta` = 0 or 1):
/// * `eta = 0`: `alpha_L = (-1)^L q^{L(3L-1)/2} (1 + q^L)`, `alpha_0 = 1`
/// * `eta = 1`: `alpha_L = (-1)^L q^{L(3L+1)/2} (1 - q^{2L+1}) / (1 - q)`
///
/// with `beta_L = 1/(q)_L`.
pub fn rogers_pair(eta: u32) -> BaileyPair {
    assert!(eta <= 1);
    let label = if eta == 0 { "B(1)" } else { "B(3)" };
    let alpha = move |l: usize| {
        let li = l as i64;
        let s = if li % 2 == 0 { 1 } else { -1 };
        if eta == 0 {
            if l == 0 {
                return QPolynomial::one();
            }
            let e = li * (3 * li - 1) / 2;
            mono(s, e) + mono(s, e + li)
        } else {
            let e = li * (3 * li + 1) / 2;
            (0..=2 * li).map(|k| mono(s, e + k)).sum()
        }
    };
    BaileyPair::new(
        eta,
        label,
        TermGen::exact(alpha),
        TermGen::series(|l, order| inv_pochhammer(SignedPower::q_int(1), l as i64, order)),
    )
}
