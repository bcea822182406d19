//! Euclidean-algorithm data of `(m, p)`.
//!
//! With `p_0 = p` the divisions are `m = k_0·p_0 + p_1` and
//! `p_{i−1} = k_i·p_i + p_{i+1}`, stopped at `p_s = 1`; then `k_s = p_{s−1}`
//! and `p_{s+1} = 0`. Convergents start from `A_0 = 0, A_1 = 1, B_0 = 1,
//! B_1 = k_0` and follow `X_{i+1} = X_{i−1} + k_i·X_i` up to `i = s`, which
//! lands on the sentinels `A_{s+1} = p`, `B_{s+1} = m`.
//!
//! All accessors take 1-based level indices as they appear in the formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::SemigroupPM;

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Inverse of `a` modulo `n` in `[0, n)`, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(n), n);
    (g == 1).then(|| x.rem_euclid(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EuclidRepr")]
pub struct EuclidData {
    /// Level: number of Euclidean steps.
    pub s: usize,
    /// `p_0 .. p_{s+1}`.
    pub p_seq: Vec<i64>,
    /// `k_0 .. k_s`.
    pub k_seq: Vec<i64>,
    /// `A_0 .. A_{s+1}`.
    #[serde(rename = "A")]
    pub a_seq: Vec<i64>,
    /// `B_0 .. B_{s+1}`.
    #[serde(rename = "B")]
    pub b_seq: Vec<i64>,
    /// `n_1 .. n_s`.
    #[serde(rename = "n")]
    pub n_seq: Vec<i64>,
    /// `N_1 .. N_{s+1}`.
    #[serde(rename = "N")]
    pub big_n_seq: Vec<i64>,
    #[serde(skip)]
    levels: Vec<usize>,
}

impl EuclidData {
    #[inline]
    pub fn p(&self, i: usize) -> i64 {
        self.p_seq[i]
    }

    #[inline]
    pub fn k(&self, i: usize) -> i64 {
        self.k_seq[i]
    }

    #[inline]
    pub fn a(&self, i: usize) -> i64 {
        self.a_seq[i]
    }

    #[inline]
    pub fn b(&self, i: usize) -> i64 {
        self.b_seq[i]
    }

    /// `n_l` for `1 ≤ l ≤ s + 1` (`n_{s+1} = 0`).
    #[inline]
    pub fn n(&self, l: usize) -> i64 {
        assert!(l >= 1 && l <= self.s + 1, "n_{l} out of range");
        if l == self.s + 1 {
            0
        } else {
            self.n_seq[l - 1]
        }
    }

    /// `N_l = Σ_{j=l}^{s} n_j` for `1 ≤ l ≤ s + 1`.
    #[inline]
    pub fn big_n(&self, l: usize) -> i64 {
        self.big_n_seq[l - 1]
    }

    /// The level `j ∈ [1, s]` with `N_{j+1} ≤ i ≤ N_j − 1`.
    pub fn level_of_index(&self, i: i64) -> Result<usize> {
        let upper = self.big_n(1) - 1;
        if i < 1 || i > upper {
            return Err(Error::IndexOutOfRange { index: i, upper });
        }
        Ok(self.levels[i as usize])
    }
}

/// Wire shape of [`EuclidData`]; the level table is rebuilt on load.
#[derive(Deserialize)]
struct EuclidRepr {
    s: usize,
    p_seq: Vec<i64>,
    k_seq: Vec<i64>,
    #[serde(rename = "A")]
    a_seq: Vec<i64>,
    #[serde(rename = "B")]
    b_seq: Vec<i64>,
    #[serde(rename = "n")]
    n_seq: Vec<i64>,
    #[serde(rename = "N")]
    big_n_seq: Vec<i64>,
}

impl TryFrom<EuclidRepr> for EuclidData {
    type Error = Error;

    fn try_from(r: EuclidRepr) -> Result<Self> {
        let (p, m) = match (r.p_seq.first(), r.b_seq.last()) {
            (Some(&p), Some(&m)) => (p, m),
            _ => return Err(Error::Precondition("non-empty Euclid sequences")),
        };
        let rebuilt = euclid_data(p, m)?;
        let same = rebuilt.s == r.s
            && rebuilt.p_seq == r.p_seq
            && rebuilt.k_seq == r.k_seq
            && rebuilt.a_seq == r.a_seq
            && rebuilt.b_seq == r.b_seq
            && rebuilt.n_seq == r.n_seq
            && rebuilt.big_n_seq == r.big_n_seq;
        if !same {
            return Err(Error::Inconsistency(format!(
                "stored Euclid data does not match <{p},{m}>"
            )));
        }
        Ok(rebuilt)
    }
}

pub fn compute_euclid(s: &SemigroupPM) -> Result<EuclidData> {
    euclid_data(s.p(), s.m())
}

/// Euclidean data for an arbitrary pair `1 < p < m`; fails unless coprime.
pub fn euclid_data(p: i64, m: i64) -> Result<EuclidData> {
    let g = gcd(p, m);
    if g != 1 {
        return Err(Error::NotCoprime { p, m, gcd: g });
    }
    if p < 2 || m <= p {
        return Err(Error::OutOfRange {
            p,
            m,
            max: i64::MAX,
        });
    }

    let mut p_seq = vec![p];
    let mut k_seq = vec![m / p];
    p_seq.push(m % p);
    while *p_seq.last().unwrap() != 0 {
        let i = p_seq.len() - 1;
        k_seq.push(p_seq[i - 1] / p_seq[i]);
        p_seq.push(p_seq[i - 1] % p_seq[i]);
    }
    // The remainder before 0 is gcd = 1, at index s.
    let s = p_seq.len() - 2;
    debug_assert_eq!(p_seq[s], 1);
    debug_assert_eq!(k_seq.len(), s + 1);

    let mut a_seq = vec![0, 1];
    let mut b_seq = vec![1, k_seq[0]];
    for i in 1..=s {
        a_seq.push(a_seq[i - 1] + k_seq[i] * a_seq[i]);
        b_seq.push(b_seq[i - 1] + k_seq[i] * b_seq[i]);
    }

    // n_l by descending l, with sentinels n_{s+1} = N_{s+1} = 0.
    let mut n_seq = vec![0i64; s];
    let mut big_n_seq = vec![0i64; s + 1];
    let (mut n_next, mut big_n_next) = (0i64, 0i64);
    for l in (1..=s).rev() {
        let n_l = if big_n_next % 2 == 0 && n_next != 0 {
            0
        } else {
            k_seq[l]
        };
        n_seq[l - 1] = n_l;
        big_n_seq[l - 1] = big_n_next + n_l;
        n_next = n_l;
        big_n_next = big_n_seq[l - 1];
    }

    let big_n1 = big_n_seq[0] as usize;
    let mut levels = vec![0usize; big_n1.max(1)];
    for j in 1..=s {
        let lo = big_n_seq[j] as usize;
        let hi = big_n_seq[j - 1] as usize;
        for slot in levels.iter_mut().take(hi).skip(lo.max(1)) {
            *slot = j;
        }
    }

    Ok(EuclidData {
        s,
        p_seq,
        k_seq,
        a_seq,
        b_seq,
        n_seq,
        big_n_seq,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(p: i64, m: i64) -> EuclidData {
        compute_euclid(&SemigroupPM::new(p, m).unwrap()).unwrap()
    }

    #[test]
    fn ten_twenty_three() {
        let e = data(10, 23);
        assert_eq!(e.s, 2);
        assert_eq!(e.p_seq, [10, 3, 1, 0]);
        assert_eq!(e.k_seq, [2, 3, 3]);
        // A_2 = A_0 + k_1·A_1 = 3, forced by p_2 = B_2·p − A_2·m = 1.
        assert_eq!(e.a_seq, [0, 1, 3, 10]);
        assert_eq!(e.b_seq, [1, 2, 7, 23]);
        assert_eq!(e.n_seq, [3, 3]);
        assert_eq!(e.big_n_seq, [6, 3, 0]);
        assert_eq!(e.level_of_index(1).unwrap(), 2);
        assert_eq!(e.level_of_index(3).unwrap(), 1);
    }

    #[test]
    fn one_twenty_two_two_eighty_one() {
        let e = data(122, 281);
        assert_eq!(e.s, 5);
        assert_eq!(e.p_seq, [122, 37, 11, 4, 3, 1, 0]);
        assert_eq!(e.k_seq, [2, 3, 3, 2, 1, 3]);
        assert_eq!(e.a_seq, [0, 1, 3, 10, 23, 33, 122]);
        assert_eq!(e.b_seq, [1, 2, 7, 23, 53, 76, 281]);
        assert_eq!(e.n_seq, [3, 3, 0, 1, 3]);
        assert_eq!(e.big_n_seq, [10, 7, 4, 4, 3, 0]);
        assert_eq!(e.level_of_index(3).unwrap(), 4);
        assert_eq!(e.level_of_index(6).unwrap(), 2);
        let levels: Vec<usize> = (1..=9).map(|i| e.level_of_index(i).unwrap()).collect();
        assert_eq!(levels, [5, 5, 4, 2, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn five_twelve() {
        let e = data(5, 12);
        assert_eq!(e.s, 2);
        assert_eq!(e.p_seq, [5, 2, 1, 0]);
        assert_eq!(e.k_seq, [2, 2, 2]);
        assert_eq!(e.a_seq, [0, 1, 2, 5]);
        assert_eq!(e.b_seq, [1, 2, 5, 12]);
        assert_eq!(e.n_seq, [0, 2]);
        assert_eq!(e.big_n_seq, [2, 2, 0]);
        assert_eq!(e.n(3), 0);
    }

    #[test]
    fn level_of_index_bounds() {
        let e = data(10, 23);
        assert!(matches!(
            e.level_of_index(0),
            Err(Error::IndexOutOfRange { index: 0, upper: 5 })
        ));
        assert!(e.level_of_index(6).is_err());
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(matches!(
            euclid_data(9, 12),
            Err(Error::NotCoprime { gcd: 3, .. })
        ));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(23, 10), Some(7));
        assert_eq!(mod_inverse(4, 6), None);
        let (g, x, y) = ext_gcd(281, 122);
        assert_eq!(g, 1);
        assert_eq!(281 * x + 122 * y, 1);
    }
}
