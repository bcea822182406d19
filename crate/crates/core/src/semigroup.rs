//! The two-generator numerical semigroup `Γ = ⟨p, m⟩`.
//!
//! Membership is answered in constant time from the inverse of `m` modulo `p`:
//! `x ∈ Γ` iff writing `x ≡ b·m (mod p)` with `0 ≤ b < p` leaves a nonnegative
//! `p`-coefficient `(x − b·m) / p`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{gcd, mod_inverse};

/// Largest `m` accepted by [`SemigroupPM::new`].
pub const MAX_M: i64 = 1_000_000;

/// The semigroup `⟨p, m⟩` with `gcd(p, m) = 1` and `2 ≤ p < m`.
pub struct SemigroupPM {
    p: i64,
    m: i64,
    pm: i64,
    mu: i64,
    m_inv: i64,
    gap_table: OnceLock<Vec<bool>>,
}

impl SemigroupPM {
    pub fn new(p: i64, m: i64) -> Result<Self> {
        if p < 2 || m <= p || m > MAX_M {
            return Err(Error::OutOfRange { p, m, max: MAX_M });
        }
        let g = gcd(p, m);
        if g != 1 {
            return Err(Error::NotCoprime { p, m, gcd: g });
        }
        let m_inv = mod_inverse(m, p).expect("coprime");
        Ok(Self {
            p,
            m,
            pm: p * m,
            mu: (p - 1) * (m - 1),
            m_inv,
            gap_table: OnceLock::new(),
        })
    }

    #[inline]
    pub fn p(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> i64 {
        self.m
    }

    #[inline]
    pub fn pm(&self) -> i64 {
        self.pm
    }

    /// Conductor `μ = (p − 1)(m − 1)` of `Γ`.
    #[inline]
    pub fn mu(&self) -> i64 {
        self.mu
    }

    /// Frobenius number `pm − p − m`, the largest gap.
    #[inline]
    pub fn frobenius(&self) -> i64 {
        self.mu - 1
    }

    /// Membership in `Γ`. Negative values are never members.
    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        if x >= self.mu {
            return true;
        }
        let b = (x % self.p) * self.m_inv % self.p;
        x - b * self.m >= 0
    }

    /// `is_gap[x]` for `0 ≤ x < μ`, built on first use.
    pub fn gap_table(&self) -> &[bool] {
        self.gap_table
            .get_or_init(|| (0..self.mu).map(|x| !self.contains(x)).collect())
    }

    #[inline]
    pub fn is_gap(&self, x: i64) -> bool {
        x > 0 && x < self.mu && self.gap_table()[x as usize]
    }

    /// All gaps of `Γ` in increasing order; there are exactly `μ / 2`.
    pub fn gaps(&self) -> Vec<i64> {
        self.gap_table()
            .iter()
            .enumerate()
            .filter_map(|(x, &gap)| gap.then_some(x as i64))
            .collect()
    }

    /// The unique `(a, b)` with `0 < a < p`, `0 < b < m` and
    /// `g = pm − a·m − b·p`. Fails if `g` is not a gap.
    pub fn to_standard_form(&self, g: i64) -> Result<StandardForm> {
        if g <= 0 || self.contains(g) {
            return Err(Error::NotAGap {
                p: self.p,
                m: self.m,
                value: g,
            });
        }
        // g ≡ −a·m (mod p)
        let a = (-(g % self.p) * self.m_inv).rem_euclid(self.p);
        let rest = self.pm - a * self.m - g;
        debug_assert_eq!(rest % self.p, 0);
        let b = rest / self.p;
        if !(0 < a && a < self.p && 0 < b && b < self.m) {
            return Err(Error::Inconsistency(format!(
                "standard form of gap {g} of <{},{}> came out as ({a}, {b})",
                self.p, self.m
            )));
        }
        Ok(StandardForm { a, b })
    }

    /// `pm − a·m − b·p`; may be nonpositive.
    #[inline]
    pub fn from_standard_form(&self, f: StandardForm) -> i64 {
        self.pm - f.a * self.m - f.b * self.p
    }
}

impl Clone for SemigroupPM {
    fn clone(&self) -> Self {
        Self {
            p: self.p,
            m: self.m,
            pm: self.pm,
            mu: self.mu,
            m_inv: self.m_inv,
            gap_table: self.gap_table.clone(),
        }
    }
}

impl PartialEq for SemigroupPM {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for SemigroupPM {}

impl fmt::Debug for SemigroupPM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemigroupPM")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("mu", &self.mu)
            .finish()
    }
}

impl fmt::Display for SemigroupPM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.p, self.m)
    }
}

/// A gap written as `pm − a·m − b·p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardForm {
    /// Coefficient of `m`.
    pub a: i64,
    /// Coefficient of `p`.
    pub b: i64,
}

/// Elements of `Γ` in increasing order.
///
/// `Γ` is the disjoint union of the residue streams `b·m + ℕ·p` for
/// `0 ≤ b < p`; these are merged with a heap, and stream `b + 1` is only
/// opened once the head of stream `b` has been emitted.
pub struct GammaElements {
    p: i64,
    m: i64,
    heap: std::collections::BinaryHeap<std::cmp::Reverse<(i64, i64)>>,
}

impl GammaElements {
    pub fn new(s: &SemigroupPM) -> Self {
        let mut heap = std::collections::BinaryHeap::new();
        // (value, stream index if value is the head of its stream, else -1)
        heap.push(std::cmp::Reverse((0, 0)));
        Self {
            p: s.p,
            m: s.m,
            heap,
        }
    }
}

impl Iterator for GammaElements {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        let std::cmp::Reverse((x, head)) = self.heap.pop()?;
        self.heap.push(std::cmp::Reverse((x + self.p, -1)));
        if head >= 0 && head + 1 < self.p {
            self.heap.push(std::cmp::Reverse((x + self.m, head + 1)));
        }
        Some(x)
    }
}
