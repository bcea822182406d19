//! Generic Tjurina number `τ_gen = μ − |Λ_gen \ Γ*|`, three ways.
//!
//! * [`tau_staircase`]: each minimal generator outside `Γ` has a standard form
//!   `pm − α·m − β·p`; adding `p` or `m` lowers `β` or `α`, so `Λ_gen \ Γ*` is
//!   the union of the rectangles `[1, α] × [1, β]` and its size is the area of
//!   their staircase.
//! * [`tau_abm`]: closed formula in the Euclidean data.
//! * [`tau_oracle`]: direct count over a Delorme value set.

use serde::{Deserialize, Serialize};

use crate::delorme::OracleTrace;
use crate::error::{Error, Result};
use crate::euclid::EuclidData;
use crate::semigroup::SemigroupPM;

/// Corner points `(α_i, β_i)` sorted by increasing `α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Staircase {
    pub pairs: Vec<(i64, i64)>,
    pub area: i64,
}

impl Staircase {
    pub fn from_generators(s: &SemigroupPM, generators: &[i64]) -> Result<Self> {
        let mut pairs = generators
            .iter()
            .filter(|&&g| !s.contains(g))
            .map(|&g| s.to_standard_form(g).map(|f| (f.a, f.b)))
            .collect::<Result<Vec<_>>>()?;
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                return Err(Error::Inconsistency(format!(
                    "staircase corners {:?} and {:?} of {s} are not strictly monotone",
                    w[0], w[1]
                )));
            }
        }
        let mut area = 0;
        let mut prev_alpha = 0;
        for &(alpha, beta) in &pairs {
            area += (alpha - prev_alpha) * beta;
            prev_alpha = alpha;
        }
        Ok(Self { pairs, area })
    }

    /// Whether `(a, b)` lies under the staircase.
    pub fn covers(&self, a: i64, b: i64) -> bool {
        a > 0 && b > 0 && self.pairs.iter().any(|&(al, be)| a <= al && b <= be)
    }
}

/// `μ` minus the staircase area of the standard forms of `generators \ Γ`.
pub fn tau_staircase(s: &SemigroupPM, generators: &[i64]) -> Result<i64> {
    Ok(s.mu() - Staircase::from_generators(s, generators)?.area)
}

/// `μ − ⌊m/p⌋⌊(p−1)²/4⌋ + ⌊(p−1)/2⌋ + ⌊p_1/2⌋ − Σ_{i=1}^{s−1} k_i⌊p_i²/4⌋`.
pub fn tau_abm(s: &SemigroupPM, e: &EuclidData) -> Result<i64> {
    let p = s.p();
    if p == 2 {
        return Err(Error::PTwo);
    }
    let tail: i64 = (1..e.s).map(|i| e.k(i) * (e.p(i) * e.p(i) / 4)).sum();
    Ok(s.mu() - (s.m() / p) * ((p - 1) * (p - 1) / 4) + (p - 1) / 2 + e.p(1) / 2 - tail)
}

/// `μ` minus the number of elements of the value set that are not in `Γ`.
pub fn tau_oracle(s: &SemigroupPM, trace: &OracleTrace) -> i64 {
    // Λ \ Γ lies inside the gaps, all below μ.
    let outside = (1..s.mu())
        .filter(|&x| trace.in_lambda(x) && !s.contains(x))
        .count() as i64;
    s.mu() - outside
}
