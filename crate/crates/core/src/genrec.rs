//! Closed-form recursion for the minimal generators of `Λ_gen`.
//!
//! Starting from `g_1 = p + m + 1`, each index `1 ≤ i ≤ N_1 − 1` sits on a
//! level `j` (see [`EuclidData::level_of_index`]) and steps by
//!
//! ```text
//! γ_i = (B_j − 1)·p   j odd,  i odd
//!       p             j odd,  i even
//!       (A_j − 1)·m   j even, i odd
//!       m             j even, i even
//! u_i = g_i + γ_i,   g_{i+1} = u_i + p_j,   c_i = c_{i−1} − γ_i.
//! ```
//!
//! The recursion runs past the last minimal generator; which prefix is
//! minimal is decided afterwards, by the stopping index when `k_0, k_1 ≠ 1`
//! and by the non-minimal index table otherwise.

use serde::{Deserialize, Serialize};

use crate::delorme;
use crate::error::{Error, Result};
use crate::euclid::{compute_euclid, EuclidData};
use crate::semigroup::SemigroupPM;
use crate::tjurina;

/// One row of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenStep {
    pub i: usize,
    /// Level of `i`.
    pub j: usize,
    pub gamma: i64,
    /// Jump `r_i = p_j`; absent on the trailing step appended when `n_1 = 0`.
    pub r: Option<i64>,
    pub g: i64,
    pub u: i64,
    pub c: i64,
    pub minimal: bool,
}

/// Which recursion outputs are minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Index of the last minimal generator.
    pub n: usize,
    /// `|G|`, counting `p` and `m`.
    pub card: usize,
    /// Indices `i ≤ n` whose `g_i` is not minimal.
    pub non_minimal: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSummary {
    pub euclid: EuclidData,
    pub steps: Vec<GenStep>,
    /// Minimal generators, `p` and `m` first.
    pub generators: Vec<i64>,
    pub n: usize,
    pub card: usize,
    pub conductor_lambda: i64,
    pub tau_gen: i64,
}

/// True when `k_0 = 1` or `k_1 = 1`, where some `γ_i` vanish.
pub fn is_extreme(e: &EuclidData) -> bool {
    e.k(0) == 1 || e.k(1) == 1
}

fn gamma_for(e: &EuclidData, p: i64, m: i64, i: usize, j: usize) -> i64 {
    match (j % 2 == 1, i % 2 == 1) {
        (true, true) => (e.b(j) - 1) * p,
        (true, false) => p,
        (false, true) => (e.a(j) - 1) * m,
        (false, false) => m,
    }
}

/// Runs the recursion for `1 ≤ i ≤ N_1 − 1`, plus a step `i = N_1` with
/// `γ = (k_0 − 1)·p` when `n_1 = 0`, and flags the minimal generators.
pub fn run_recursion(s: &SemigroupPM, e: &EuclidData) -> Result<Vec<GenStep>> {
    if s.p() == 2 {
        return Err(Error::PTwo);
    }
    let (p, m) = (s.p(), s.m());
    let big_n1 = e.big_n(1) as usize;
    let mut steps = Vec::with_capacity(big_n1);
    let mut g = p + m + 1;
    let mut c = 0i64;
    for i in 1..big_n1 {
        let j = e.level_of_index(i as i64)?;
        let gamma = gamma_for(e, p, m, i, j);
        let r = e.p(j);
        let u = g + gamma;
        c -= gamma;
        steps.push(GenStep {
            i,
            j,
            gamma,
            r: Some(r),
            g,
            u,
            c,
            minimal: false,
        });
        g = u + r;
    }
    if e.n(1) == 0 {
        let gamma = (e.k(0) - 1) * p;
        c -= gamma;
        steps.push(GenStep {
            i: big_n1,
            j: 1,
            gamma,
            r: None,
            g,
            u: g + gamma,
            c,
            minimal: false,
        });
    }

    let sel = select_minimal(e, &steps)?;
    for step in &mut steps {
        step.minimal = step.i <= sel.n && !sel.non_minimal.contains(&step.i);
    }
    Ok(steps)
}

/// Index of the last minimal generator when `k_0, k_1 ≠ 1`:
/// `N_1` if `n_1 = 0`, else `N_1 − 2`.
pub fn stopping_index(e: &EuclidData) -> Result<usize> {
    if is_extreme(e) {
        return Err(Error::Precondition(
            "k_0 != 1 and k_1 != 1; use extreme_case_filter",
        ));
    }
    let big_n1 = e.big_n(1) as usize;
    Ok(if e.n(1) == 0 { big_n1 } else { big_n1 - 2 })
}

fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

/// `{base + 2j − 1 : 1 ≤ j ≤ hi}`
fn odd_offsets(base: i64, hi: i64) -> Vec<usize> {
    (1..=hi).map(|j| (base + 2 * j - 1) as usize).collect()
}

/// `{base + 2j : 0 ≤ j ≤ hi}`
fn even_offsets(base: i64, hi: i64) -> Vec<usize> {
    (0..=hi).map(|j| (base + 2 * j) as usize).collect()
}

/// The six constraint rows of the non-minimal generator table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremeRow {
    /// `k_0 = 1, k_1 > 1`, `N_2` even.
    K0OneN2Even,
    /// `k_0 = 1, k_1 > 1`, `N_2` odd.
    K0OneN2Odd,
    /// `k_0 = k_1 = 1`, `n_3 = 0`.
    BothOneN3Zero,
    /// `k_0 = k_1 = 1`, `n_3 ≠ 0`.
    BothOneN3Nonzero,
    /// `k_0 > 1, k_1 = 1`, `n_1 = 0`.
    K1OneN1Zero,
    /// `k_0 > 1, k_1 = 1`, `n_1 ≠ 0`.
    K1OneN1Nonzero,
}

impl ExtremeRow {
    pub const ALL: [ExtremeRow; 6] = [
        ExtremeRow::K0OneN2Even,
        ExtremeRow::K0OneN2Odd,
        ExtremeRow::BothOneN3Zero,
        ExtremeRow::BothOneN3Nonzero,
        ExtremeRow::K1OneN1Zero,
        ExtremeRow::K1OneN1Nonzero,
    ];

    /// `None` outside the extreme cases.
    pub fn of(e: &EuclidData) -> Option<Self> {
        let (k0, k1) = (e.k(0), e.k(1));
        Some(match (k0 == 1, k1 == 1) {
            (true, false) if e.big_n(2) % 2 == 0 => ExtremeRow::K0OneN2Even,
            (true, false) => ExtremeRow::K0OneN2Odd,
            (true, true) if e.n(3) == 0 => ExtremeRow::BothOneN3Zero,
            (true, true) => ExtremeRow::BothOneN3Nonzero,
            (false, true) if e.n(1) == 0 => ExtremeRow::K1OneN1Zero,
            (false, true) => ExtremeRow::K1OneN1Nonzero,
            (false, false) => return None,
        })
    }
}

/// `(|G|, non-minimal indices)` from the uncorrected table.
///
/// Its `k_0 > 1, k_1 = 1, n_1 = 0` row is wrong: it omits the last level-2
/// index `N_2 − 1`, which always carries `γ = 0` there, and its `|G|` is one
/// too small for even `n_2`. [`extreme_case_filter`] uses the corrected row.
pub fn uncorrected_table(e: &EuclidData) -> Result<(i64, Vec<usize>)> {
    table_row(e, false)
}

fn table_row(e: &EuclidData, corrected: bool) -> Result<(i64, Vec<usize>)> {
    let row = ExtremeRow::of(e).ok_or(Error::Precondition("k_0 = 1 or k_1 = 1"))?;
    let big_n1 = e.big_n(1);
    Ok(match row {
        ExtremeRow::K0OneN2Even => (
            big_n1 - floor_half(e.n(1) - 1),
            odd_offsets(e.big_n(2), floor_half(e.n(1) - 2)),
        ),
        ExtremeRow::K0OneN2Odd => (
            big_n1 - floor_half(e.n(1)),
            even_offsets(e.big_n(2), floor_half(e.n(1) - 3)),
        ),
        ExtremeRow::BothOneN3Zero => (
            big_n1 - floor_half(e.n(2) - 1),
            odd_offsets(e.big_n(3), floor_half(e.n(2) - 1)),
        ),
        ExtremeRow::BothOneN3Nonzero => (
            big_n1 - floor_half(e.n(2)),
            even_offsets(e.big_n(3), floor_half(e.n(2) - 2)),
        ),
        ExtremeRow::K1OneN1Zero | ExtremeRow::K1OneN1Nonzero => {
            let (n2, big_n3) = (e.n(2), e.big_n(3));
            // With n_1 = 0 every odd-γ index of level 2 is dropped, up to
            // and including N_2 − 1, and the extension step g_{N_1} is kept.
            let extra = i64::from(corrected && row == ExtremeRow::K1OneN1Zero);
            let card = if row == ExtremeRow::K1OneN1Zero {
                if corrected {
                    big_n1 - floor_half(n2 - 3)
                } else {
                    big_n1 - floor_half(n2 - 2)
                }
            } else {
                big_n1 - floor_half(n2)
            };
            let non_minimal = if big_n3 % 2 == 0 {
                odd_offsets(big_n3, floor_half(n2 - 1 + extra))
            } else {
                even_offsets(big_n3, floor_half(n2 - 2 + extra))
            };
            (card, non_minimal)
        }
    })
}

/// Non-minimal generators when `k_0 = 1` or `k_1 = 1`.
///
/// The table prediction (cardinality and non-minimal index set) is checked
/// against the steps: up to the last minimal index, a step is non-minimal
/// exactly when its `γ` vanishes.
pub fn extreme_case_filter(e: &EuclidData, steps: &[GenStep]) -> Result<Selection> {
    let (card, non_minimal) = table_row(e, true)?;
    let card = usize::try_from(card)
        .map_err(|_| Error::Inconsistency(format!("negative |G| = {card}")))?;
    let n = card + non_minimal.len() - 2;

    let zero_gamma: Vec<usize> = steps
        .iter()
        .filter(|st| st.i <= n && st.gamma == 0)
        .map(|st| st.i)
        .collect();
    if zero_gamma != non_minimal {
        return Err(Error::Inconsistency(format!(
            "non-minimal index table gives {non_minimal:?} but the steps with γ = 0 up to n = {n} are {zero_gamma:?}"
        )));
    }
    if n > steps.len() {
        return Err(Error::Inconsistency(format!(
            "last minimal index {n} lies beyond the {} recursion steps",
            steps.len()
        )));
    }
    Ok(Selection {
        n,
        card,
        non_minimal,
    })
}

/// Dispatches to [`stopping_index`] or [`extreme_case_filter`].
pub fn select_minimal(e: &EuclidData, steps: &[GenStep]) -> Result<Selection> {
    if is_extreme(e) {
        extreme_case_filter(e, steps)
    } else {
        let n = stopping_index(e)?;
        Ok(Selection {
            n,
            card: n + 2,
            non_minimal: Vec::new(),
        })
    }
}

/// `c(Λ_gen) = μ + c_n` with `c_n = −Σ_{a ≤ n} γ_a`.
///
/// Outside the extreme cases this also checks `g_n − c_n = pm − m`.
pub fn conductor_lambda(
    s: &SemigroupPM,
    e: &EuclidData,
    steps: &[GenStep],
    n: usize,
) -> Result<i64> {
    let c_n = -steps
        .iter()
        .take_while(|st| st.i <= n)
        .map(|st| st.gamma)
        .sum::<i64>();
    if n >= 1 && !is_extreme(e) {
        let g_n = steps[n - 1].g;
        if g_n - c_n != s.pm() - s.m() {
            return Err(Error::Inconsistency(format!(
                "g_n - c_n = {} but pm - m = {}",
                g_n - c_n,
                s.pm() - s.m()
            )));
        }
    }
    Ok(s.mu() + c_n)
}

/// `γ` by the min-term rule: write `g − c_prev = pm − a·m − b·p` and take
/// `min(a·m, b·p)`. `None` when `g − c_prev` is not a gap.
pub fn min_term_gamma(s: &SemigroupPM, g: i64, c_prev: i64) -> Option<i64> {
    let f = s.to_standard_form(g - c_prev).ok()?;
    Some((f.a * s.m()).min(f.b * s.p()))
}

/// Full pipeline: Euclid data, recursion, minimal-generator selection,
/// conductor and generic Tjurina number. `p = 2` goes through Delorme's
/// algorithm, where `Λ_gen = Γ*`.
pub fn summarize(s: &SemigroupPM) -> Result<LambdaSummary> {
    let e = compute_euclid(s)?;
    if s.p() == 2 {
        let trace = delorme::run_naive(s);
        let generators = trace.generators.clone();
        let tau_gen = tjurina::tau_staircase(s, &generators)?;
        return Ok(LambdaSummary {
            euclid: e,
            steps: Vec::new(),
            n: generators.len() - 2,
            card: generators.len(),
            generators,
            conductor_lambda: trace.conductor_lambda,
            tau_gen,
        });
    }

    let steps = run_recursion(s, &e)?;
    let sel = select_minimal(&e, &steps)?;
    let generators: Vec<i64> = [s.p(), s.m()]
        .into_iter()
        .chain(steps.iter().filter(|st| st.minimal).map(|st| st.g))
        .collect();
    if generators.len() != sel.card {
        return Err(Error::Inconsistency(format!(
            "|G| = {} predicted but {} generators selected",
            sel.card,
            generators.len()
        )));
    }
    let conductor = conductor_lambda(s, &e, &steps, sel.n)?;
    let tau_gen = tjurina::tau_staircase(s, &generators)?;
    Ok(LambdaSummary {
        euclid: e,
        steps,
        generators,
        n: sel.n,
        card: sel.card,
        conductor_lambda: conductor,
        tau_gen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(p: i64, m: i64) -> SemigroupPM {
        SemigroupPM::new(p, m).unwrap()
    }

    fn steps_of(p: i64, m: i64) -> Vec<GenStep> {
        let s = sg(p, m);
        let e = compute_euclid(&s).unwrap();
        run_recursion(&s, &e).unwrap()
    }

    #[test]
    fn ten_twenty_three_steps() {
        let steps = steps_of(10, 23);
        let col = |f: fn(&GenStep) -> i64| steps.iter().map(f).collect::<Vec<_>>();
        assert_eq!(col(|s| s.gamma), [46, 23, 10, 10, 10]);
        assert_eq!(col(|s| s.r.unwrap()), [1, 1, 3, 3, 3]);
        assert_eq!(col(|s| s.g), [34, 81, 105, 118, 131]);
        assert_eq!(col(|s| s.u), [80, 104, 115, 128, 141]);
        assert_eq!(col(|s| s.j as i64), [2, 2, 1, 1, 1]);
        let minimal: Vec<bool> = steps.iter().map(|s| s.minimal).collect();
        assert_eq!(minimal, [true, true, true, true, false]);
    }

    #[test]
    fn five_twelve_extension_step() {
        let steps = steps_of(5, 12);
        assert_eq!(steps.len(), 2);
        assert_eq!((steps[0].g, steps[0].gamma, steps[0].r), (18, 12, Some(1)));
        assert_eq!(
            (steps[1].i, steps[1].g, steps[1].gamma, steps[1].r),
            (2, 31, 5, None)
        );
        let e = compute_euclid(&sg(5, 12)).unwrap();
        assert_eq!(stopping_index(&e).unwrap(), 2);
        assert_eq!(conductor_lambda(&sg(5, 12), &e, &steps, 2).unwrap(), 27);
    }

    #[test]
    fn stopping_indices() {
        let e = compute_euclid(&sg(10, 23)).unwrap();
        assert_eq!(stopping_index(&e).unwrap(), 4);
        let e = compute_euclid(&sg(122, 281)).unwrap();
        assert_eq!(stopping_index(&e).unwrap(), 8);
        let e = compute_euclid(&sg(10, 19)).unwrap();
        assert!(matches!(stopping_index(&e), Err(Error::Precondition(_))));
    }

    #[test]
    fn filter_rejects_non_extreme() {
        let s = sg(10, 23);
        let e = compute_euclid(&s).unwrap();
        let steps = run_recursion(&s, &e).unwrap();
        assert!(matches!(
            extreme_case_filter(&e, &steps),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ten_nineteen_drops_zero_gamma() {
        let s = sg(10, 19);
        let e = compute_euclid(&s).unwrap();
        let steps = run_recursion(&s, &e).unwrap();
        assert_eq!(steps[0].g, 30);
        assert_eq!(steps[0].gamma, 0);
        assert!(!steps[0].minimal);
        let summary = summarize(&s).unwrap();
        assert_eq!(summary.generators[2], 31);
        assert_eq!(summary.generators, delorme::run_naive(&s).generators);
    }

    #[test]
    fn m_is_p_plus_one() {
        let s = sg(10, 11);
        let summary = summarize(&s).unwrap();
        assert_eq!(summary.generators[2], 23);
        assert_eq!(summary.generators, delorme::run_naive(&s).generators);
    }

    #[test]
    fn summaries() {
        let sm = summarize(&sg(10, 23)).unwrap();
        assert_eq!(sm.generators, [10, 23, 34, 81, 105, 118]);
        assert_eq!(sm.card, 6);
        assert_eq!(sm.conductor_lambda, 109);

        let sm = summarize(&sg(2, 7)).unwrap();
        assert_eq!(sm.generators, [2, 7]);
        assert_eq!(sm.conductor_lambda, 6);

        let sm = summarize(&sg(122, 281)).unwrap();
        assert_eq!(sm.card, 10);
        assert_eq!(sm.conductor_lambda, 17058);
    }

    #[test]
    fn p_two_rejected_by_recursion() {
        let s = sg(2, 9);
        let e = compute_euclid(&s).unwrap();
        assert_eq!(run_recursion(&s, &e), Err(Error::PTwo));
    }
}
