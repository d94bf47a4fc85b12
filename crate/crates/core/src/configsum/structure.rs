use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Coprime `(p, p')` with `1 <= p < p'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PPPair {
    pub p: u32,
    pub p_prime: u32,
}

impl PPPair {
    pub fn new(p: u32, p_prime: u32) -> Result<Self> {
        if p < 1 || p >= p_prime {
            return Err(QError::InvalidParameter(format!("need 1 <= p < p', got ({p},{p_prime})")));
        }
        if p.gcd(&p_prime) != 1 {
            return Err(QError::InvalidParameter(format!("({p},{p_prime}) are not coprime")));
        }
        Ok(PPPair { p, p_prime })
    }

    /// `(p' - p, p')`
    pub fn dual(self) -> Self {
        PPPair { p: self.p_prime - self.p, p_prime: self.p_prime }
    }

    /// `p < p' < 2p`
    pub fn is_fermionic_regime(self) -> bool {
        self.p_prime < 2 * self.p
    }
}

impl fmt::Display for PPPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.p_prime)
    }
}

impl std::str::FromStr for PPPair {
    type Err = QError;
    /// `p,p'`
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim_matches(|c| c == '(' || c == ')')
            .split_once(',')
            .ok_or_else(|| QError::Parse(format!("expected `p,p'`, got `{s}`")))?;
        let p = a.trim().parse().map_err(|_| QError::Parse(format!("bad p in `{s}`")))?;
        let pp = b.trim().parse().map_err(|_| QError::Parse(format!("bad p' in `{s}`")))?;
        PPPair::new(p, pp)
    }
}

/// Digits of `p/(p'-p)`: greedy expansion with a trailing 1 absorbed into
/// the previous digit. Requires `p < p' < 2p`.
pub fn continued_fraction(pp: PPPair) -> Result<Vec<u32>> {
    if !pp.is_fermionic_regime() {
        return Err(QError::InvalidParameter(format!("continued fraction needs p < p' < 2p, got {pp}")));
    }
    let target = Ratio::new(pp.p as i64, (pp.p_prime - pp.p) as i64);
    let mut x = target;
    let mut nu = Vec::new();
    loop {
        let a = x.floor();
        nu.push(*a.numer() as u32);
        let frac = x - a;
        if frac == Ratio::from_integer(0) {
            break;
        }
        x = frac.recip();
    }
    if nu.len() > 1 && *nu.last().unwrap() == 1 {
        nu.pop();
        *nu.last_mut().unwrap() += 1;
    }
    if evaluate_continued_fraction(&nu) != target {
        return Err(QError::Data(format!("continued fraction {nu:?} does not reproduce {target}")));
    }
    Ok(nu)
}

/// `[nu_0, nu_1, ...] = nu_0 + 1/(nu_1 + 1/(...))`
pub fn evaluate_continued_fraction(nu: &[u32]) -> Ratio<i64> {
    let mut acc = Ratio::from_integer(*nu.last().unwrap() as i64);
    for &a in nu.iter().rev().skip(1) {
        acc = Ratio::from_integer(a as i64) + acc.recip();
    }
    acc
}

/// Continued-fraction data and the matrices built from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalStructure {
    pub nu: Vec<u32>,
    /// `t_m = nu_0 + ... + nu_{m-1}` for `1 <= m <= n`.
    pub t: Vec<usize>,
    pub d: usize,
    /// Fractional incidence matrix, rows and columns indexed from 1 in the text.
    pub inc: Vec<Vec<i64>>,
    /// `B = 2I - inc`
    pub cartan: Vec<Vec<i64>>,
}

impl FractionalStructure {
    pub fn new(pp: PPPair) -> Result<Self> {
        Self::from_digits(continued_fraction(pp)?)
    }

    /// Rows (1-based `i`):
    /// * `i = d`: `delta(i, j+1) + delta(nu_n, 2) delta(i, j)`
    /// * `i = t_m`, `1 <= m <= n - delta(nu_n, 2)`: `delta(i, j+1) + delta(i, j) - delta(i, j-1)`
    /// * otherwise: `delta(i, j+1) + delta(i, j-1)`
    pub fn from_digits(nu: Vec<u32>) -> Result<Self> {
        let total: i64 = nu.iter().map(|&v| v as i64).sum();
        let d = total - 2;
        if d < 0 || nu.is_empty() {
            return Err(QError::InvalidParameter(format!("digits {nu:?} give negative dimension")));
        }
        let d = d as usize;
        let n = nu.len() - 1;
        let t: Vec<usize> = (1..=n).map(|m| nu[..m].iter().map(|&v| v as usize).sum()).collect();
        let last_is_two = usize::from(nu[n] == 2);
        let special: Vec<usize> = t[..n - last_is_two.min(n)].to_vec();
        let delta = |a: usize, b: usize| i64::from(a == b);
        let mut inc = vec![vec![0i64; d]; d];
        for i in 1..=d {
            for j in 1..=d {
                inc[i - 1][j - 1] = if i == d {
                    delta(i, j + 1) + last_is_two as i64 * delta(i, j)
                } else if special.contains(&i) {
                    delta(i, j + 1) + delta(i, j) - delta(i + 1, j)
                } else {
                    delta(i, j + 1) + delta(i + 1, j)
                };
            }
        }
        let cartan = (0..d).map(|i| (0..d).map(|j| 2 * i64::from(i == j) - inc[i][j]).collect()).collect();
        Ok(FractionalStructure { nu, t, d, inc, cartan })
    }

    /// `m B m`
    pub fn quadratic_form(&self, m: &[i64]) -> i64 {
        (0..self.d).map(|i| (0..self.d).map(|j| m[i] * self.cartan[i][j] * m[j]).sum::<i64>()).sum()
    }

    /// `(inc m)_j`
    pub fn inc_times(&self, m: &[i64]) -> Vec<i64> {
        (0..self.d).map(|i| (0..self.d).map(|j| self.inc[i][j] * m[j]).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u32, q: u32) -> PPPair {
        PPPair::new(p, q).unwrap()
    }

    #[test]
    fn digits() {
        assert_eq!(continued_fraction(pp(2, 3)).unwrap(), vec![2]);
        assert_eq!(continued_fraction(pp(3, 4)).unwrap(), vec![3]);
        assert_eq!(continued_fraction(pp(3, 5)).unwrap(), vec![1, 2]);
        assert_eq!(continued_fraction(pp(5, 8)).unwrap(), vec![1, 1, 2]);
        assert!(continued_fraction(pp(2, 5)).is_err());
    }

    #[test]
    fn incidence_special_cases() {
        let s = FractionalStructure::new(pp(2, 3)).unwrap();
        assert_eq!(s.d, 0);
        let s = FractionalStructure::new(pp(3, 4)).unwrap();
        assert_eq!(s.inc, vec![vec![0]]);
        assert_eq!(s.cartan, vec![vec![2]]);
        let s = FractionalStructure::new(pp(3, 5)).unwrap();
        assert_eq!((s.d, s.t.clone()), (1, vec![1]));
        assert_eq!(s.inc, vec![vec![1]]);
        assert_eq!(s.cartan, vec![vec![1]]);
        let s = FractionalStructure::new(pp(4, 5)).unwrap();
        assert_eq!(s.cartan, vec![vec![2, -1], vec![-1, 2]]);
        let s = FractionalStructure::new(pp(4, 7)).unwrap();
        assert_eq!(s.inc, vec![vec![1, -1], vec![1, 0]]);
        let s = FractionalStructure::new(pp(5, 7)).unwrap();
        assert_eq!(s.inc, vec![vec![0, 1], vec![1, 1]]);
        let s = FractionalStructure::new(pp(5, 8)).unwrap();
        assert_eq!(s.inc, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn path_and_tadpole_families() {
        for p in 3..9u32 {
            let s = FractionalStructure::new(pp(p, p + 1)).unwrap();
            assert_eq!(s.d, (p - 2) as usize);
            for i in 0..s.d {
                for j in 0..s.d {
                    assert_eq!(s.inc[i][j], i64::from(i.abs_diff(j) == 1));
                }
            }
        }
        for k in 2..7u32 {
            let s = FractionalStructure::new(pp(2 * k - 1, 2 * k + 1)).unwrap();
            assert_eq!(s.d, (k - 1) as usize);
            for i in 0..s.d {
                for j in 0..s.d {
                    let tadpole = i64::from(i.abs_diff(j) == 1) + i64::from(i == j && i + 1 == s.d);
                    assert_eq!(s.inc[i][j], tadpole, "k={k}");
                }
            }
        }
    }
}
