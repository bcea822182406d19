//! Delorme's algorithm for the generic value set `Λ_gen`, used as ground truth.
//!
//! Two versions are provided. [`run_naive`] materializes every `E_i` as a
//! boolean table over `[0, H)` and reads `u_i` and `g_{i+1}` off it directly.
//! [`run_accelerated`] never builds `E_i`: it replaces `E_i` above the window
//! point `ū_i = u_i + μ − pm` by the shifted semigroup `Γ + c_i` and stops as
//! soon as `u_i − c_i ≥ μ`.
//!
//! Both use the horizon `H = pm + m + p`. Every generator and collision lies
//! below `pm`, so no query should ever reach `H`; one that does panics.

use serde::{Deserialize, Serialize};

use crate::semigroup::{GammaElements, SemigroupPM};

/// Output of one run of Delorme's algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTrace {
    /// `g_{−1} = p, g_0 = m, g_1, …, g_n`.
    pub generators: Vec<i64>,
    /// `u_0 … u_n`.
    pub u: Vec<i64>,
    /// `c_0 = 0, c_1 … c_n`.
    pub c: Vec<i64>,
    pub horizon: i64,
    /// Membership in `Λ_gen` over `[0, horizon)`.
    #[serde(skip)]
    pub lambda_set: Vec<bool>,
    pub conductor_lambda: i64,
}

impl OracleTrace {
    /// Index `n` of the last generator.
    pub fn n(&self) -> usize {
        self.generators.len() - 2
    }

    /// `g_i` for `−1 ≤ i ≤ n`.
    pub fn g(&self, i: i64) -> i64 {
        self.generators[(i + 1) as usize]
    }

    /// `u_n − c_n`, the value that triggered the stop.
    pub fn stop_value(&self) -> i64 {
        self.u.last().unwrap() - self.c.last().unwrap()
    }

    pub fn in_lambda(&self, x: i64) -> bool {
        x >= 0 && (x >= self.horizon || self.lambda_set[x as usize])
    }
}

pub fn horizon(s: &SemigroupPM) -> i64 {
    s.pm() + s.m() + s.p()
}

fn gamma_table(s: &SemigroupPM, h: i64) -> Vec<bool> {
    (0..h).map(|x| s.contains(x)).collect()
}

fn merge_translate(set: &mut [bool], in_gamma: &[bool], g: i64) {
    let g = g as usize;
    for (x, slot) in set.iter_mut().enumerate().skip(g) {
        if in_gamma[x - g] {
            *slot = true;
        }
    }
}

/// The Γ-semimodule generated by `gens`, as a table over `[0, h)`.
pub fn close_under_gamma(s: &SemigroupPM, gens: &[i64], h: i64) -> Vec<bool> {
    let in_gamma = gamma_table(s, h);
    let mut set = vec![false; h as usize];
    for &g in gens {
        merge_translate(&mut set, &in_gamma, g);
    }
    set
}

fn conductor_of(set: &[bool]) -> i64 {
    set.iter().rposition(|&x| !x).map_or(0, |x| x as i64 + 1)
}

/// Delorme's algorithm with every `E_i` held explicitly.
pub fn run_naive(s: &SemigroupPM) -> OracleTrace {
    let (p, m, mu) = (s.p(), s.m(), s.mu());
    let h = horizon(s);
    let in_gamma = gamma_table(s, h);

    // E_{−1} = Γ + p
    let mut e = vec![false; h as usize];
    merge_translate(&mut e, &in_gamma, p);

    let collision = |e: &[bool], g: i64| -> i64 {
        (g..h)
            .find(|&x| in_gamma[(x - g) as usize] && e[x as usize])
            .unwrap_or_else(|| panic!("collision for g = {g} reached the horizon {h} in {s}"))
    };

    let mut generators = vec![p, m];
    let mut u = vec![collision(&e, m)];
    let mut c = vec![0i64];
    merge_translate(&mut e, &in_gamma, m);

    loop {
        let last_u = *u.last().unwrap();
        // Everything from μ on is already in Γ* ⊆ E_i.
        let Some(g) = (last_u + 1..mu).find(|&x| !e[x as usize]) else {
            break;
        };
        let ui = collision(&e, g);
        merge_translate(&mut e, &in_gamma, g);
        c.push(c.last().unwrap() + g - ui);
        generators.push(g);
        u.push(ui);
    }

    let conductor_lambda = conductor_of(&e);
    OracleTrace {
        generators,
        u,
        c,
        horizon: h,
        lambda_set: e,
        conductor_lambda,
    }
}

/// Delorme's algorithm driven by the offsets `c_i` instead of the sets `E_i`.
pub fn run_accelerated(s: &SemigroupPM) -> OracleTrace {
    let (p, m, mu) = (s.p(), s.m(), s.mu());
    let h = horizon(s);
    let check = |x: i64, what: &str| {
        assert!(x < h, "{what} = {x} reached the horizon {h} in {s}");
    };

    // u_0 = min((Γ + m) ∩ (Γ + p)) = p + m, since p ∤ m − p.
    let mut generators = vec![p, m];
    let mut u = vec![p + m];
    let mut c = vec![0i64];

    loop {
        let (last_u, last_c) = (*u.last().unwrap(), *c.last().unwrap());
        if last_u - last_c >= mu {
            break;
        }
        let r = (1..)
            .find(|&r| !s.contains(last_u - last_c + r))
            .expect("a gap lies below μ");
        let g = last_u + r;
        check(g, "generator");
        let gamma = GammaElements::new(s)
            .find(|&gamma| s.contains(g + gamma - last_c))
            .expect("Γ is cofinite");
        let ui = g + gamma;
        check(ui, "collision");
        generators.push(g);
        u.push(ui);
        c.push(last_c - gamma);
    }

    let lambda_set = close_under_gamma(s, &generators, h);
    let conductor_lambda = conductor_of(&lambda_set);
    OracleTrace {
        generators,
        u,
        c,
        horizon: h,
        lambda_set,
        conductor_lambda,
    }
}

/// Checks that `E_i` and `Γ + c_i` agree on `[max(ū_i, 0), H)`, where
/// `ū_i = u_i + μ − pm`. Intended for `0 < i < n`.
pub fn gamma_window_check(s: &SemigroupPM, trace: &OracleTrace, i: usize) -> bool {
    let h = trace.horizon;
    let e_i = close_under_gamma(s, &trace.generators[..i + 2], h);
    let c_i = trace.c[i];
    let u_bar = trace.u[i] + s.mu() - s.pm();
    (u_bar.max(0)..h).all(|x| e_i[x as usize] == s.contains(x - c_i))
}
