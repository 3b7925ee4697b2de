//! Closed-form evaluators behind the degree and colouring bounds.
//!
//! All logarithms are natural logarithms.
//!
//! The layer-profile weight `u` uses the exponent `exp(-d (1 + D - l_r))`,
//! i.e. `exp(-d (l_0 + ... + l_{r-1}))`: each of the first `r` layers
//! contributes a Poisson(d * l_{i-1}) factor. With `r = 1` this is the
//! Poisson(d) pmf, and summing over compositions gives the exact law of the
//! r-generation Poisson branching process.

mod gap;
mod lemma2;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::error::{Error, Result};
pub use crate::profile::DegreeProfile;

pub use gap::{conjecture_gap, Estimate, GapBudgets, GapReport};
pub use lemma2::{
    lemma2_min_exact, lemma2_min_exact_with, lemma2_min_lagrange, lemma2_objective,
    lemma2_shape_constant, LagrangeSolution, Lemma2Min, DEFAULT_LEMMA2_WORK,
};

/// Default cap on `D` for [`degree_sum_pmf`].
pub const DEFAULT_PMF_CAP: u64 = 60;

/// Parameters `(n, d, r, epsilon)` of a sparse or dense G(n, d/n) regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryParams {
    pub n: u64,
    pub d: f64,
    pub r: usize,
    pub epsilon: f64,
}

impl TheoryParams {
    pub fn new(n: u64, d: f64, r: usize, epsilon: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Domain(format!("expected degree d = {d} must be positive")));
        }
        if r < 1 {
            return Err(Error::Domain("radius r must be at least 1".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0 / r as f64) {
            return Err(Error::Domain(format!(
                "epsilon = {epsilon} must lie in (0, 1/r) for r = {r}"
            )));
        }
        Ok(Self { n, d, r, epsilon })
    }

    pub fn p(&self) -> f64 {
        self.d / self.n as f64
    }

    pub fn d_star(&self) -> Result<f64> {
        d_star(self.n as f64, self.r)
    }

    /// Co-degree sparsity level `d^(1 - epsilon)`.
    pub fn nu0(&self) -> f64 {
        self.d.powf(1.0 - self.epsilon)
    }

    /// `10 * r!`.
    pub fn alpha(&self) -> f64 {
        10.0 * factorial(self.r)
    }

    pub fn k0(&self) -> Result<f64> {
        janson_k0(self)
    }
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}

/// `log` applied `k` times; `k = 0` returns `x`.
pub fn iterated_log(x: f64, k: usize) -> Result<f64> {
    let mut v = x;
    for step in 0..k {
        if !(v > 0.0) {
            return Err(Error::Domain(format!(
                "iterated log of {x}: argument {v} <= 0 at step {}",
                step + 1
            )));
        }
        v = v.ln();
    }
    Ok(v)
}

/// `log n / log_{(r+1)} n`, the concentration point of `Delta(G^r)` for
/// sparse G(n, d/n).
pub fn d_star(n: f64, r: usize) -> Result<f64> {
    let denom = iterated_log(n, r + 1)?;
    if !(denom > 0.0) {
        return Err(Error::Domain(format!(
            "log_({}) of {n} is {denom}, not positive",
            r + 1
        )));
    }
    Ok(n.ln() / denom)
}

fn check_d(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("expected degree d = {d} must be positive")))
    }
}

/// Exact `log u(l_1..l_r)`:
/// `D log d - d (1 + D - l_r) - sum log(l_i!) + sum_{i>=2} l_i log l_{i-1}`.
/// Infeasible profiles give `-inf`.
pub fn log_u(profile: &DegreeProfile, d: f64) -> Result<f64> {
    check_d(d)?;
    if !profile.is_feasible() {
        return Ok(f64::NEG_INFINITY);
    }
    let ell = profile.layers();
    let total = profile.total() as f64;
    let mut v = total * d.ln() - d * (1.0 + total - profile.last() as f64);
    for (i, &l) in ell.iter().enumerate() {
        v -= ln_factorial(l);
        if i > 0 && l > 0 {
            v += l as f64 * (ell[i - 1] as f64).ln();
        }
    }
    Ok(v)
}

pub fn u_value(profile: &DegreeProfile, d: f64) -> Result<f64> {
    log_u(profile, d).map(f64::exp)
}

/// Stirling form of `log u` without its `O(r)` remainder, and the remainder
/// itself (`exact - stirling`). Diagnostic only.
pub fn log_u_stirling(profile: &DegreeProfile, d: f64) -> Result<(f64, f64)> {
    check_d(d)?;
    let exact = log_u(profile, d)?;
    if !profile.is_feasible() {
        return Ok((f64::NEG_INFINITY, f64::NAN));
    }
    let total = profile.total() as f64;
    let stirling = total * d.ln() - d * (1.0 + total - profile.last() as f64)
        - lemma2_objective(profile)
        + total
        - 0.5 * profile.product().ln();
    Ok((stirling, exact - stirling))
}

/// Visits every feasible composition `l_1 + ... + l_r = total`.
pub(crate) fn for_each_feasible_composition(total: u64, r: usize, mut f: impl FnMut(&[u64])) {
    fn rec(remaining: u64, r: usize, prefix: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if prefix.len() == r {
            if remaining == 0 {
                f(prefix);
            }
            return;
        }
        // After an empty layer every later layer is empty too.
        let range = if prefix.last() == Some(&0) {
            0..=0
        } else if prefix.len() + 1 == r {
            remaining..=remaining
        } else {
            0..=remaining
        };
        for l in range {
            prefix.push(l);
            rec(remaining - l, r, prefix, f);
            prefix.pop();
        }
    }
    if r == 0 {
        return;
    }
    let mut prefix = Vec::with_capacity(r);
    rec(total, r, &mut prefix, &mut f);
}

/// `P(sum_i d_i(v) = D)` as the sum of `u` over all feasible compositions of
/// `D` into `r` layers (the `1 + O(log^r n / n)` correction is dropped).
pub fn degree_sum_pmf(params: &TheoryParams, total: u64) -> Result<f64> {
    degree_sum_pmf_capped(params, total, DEFAULT_PMF_CAP)
}

pub fn degree_sum_pmf_capped(params: &TheoryParams, total: u64, cap: u64) -> Result<f64> {
    if total > cap {
        return Err(Error::BudgetExceeded {
            what: "degree-sum pmf enumeration",
            lower: cap,
            upper: total,
        });
    }
    check_d(params.d)?;
    let mut sum = 0.0;
    let mut err = None;
    for_each_feasible_composition(total, params.r, |ell| {
        match log_u(&DegreeProfile::new(ell.to_vec()), params.d) {
            Ok(v) => sum += v.exp(),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(sum),
    }
}

/// `k_0 = 10 r! n log d / d^r`.
pub fn janson_k0(params: &TheoryParams) -> Result<f64> {
    if params.d <= 1.0 {
        return Err(Error::Domain(format!("k0 needs d > 1, got {}", params.d)));
    }
    Ok(params.alpha() * params.n as f64 * params.d.ln() / params.d.powi(params.r as i32))
}

/// `mu = C(k, 2) C(n - 2, r - 1) p^r`, evaluated in log space.
pub fn janson_mu(params: &TheoryParams, k: u64) -> f64 {
    let r = params.r as u64;
    if k < 2 || params.n < 2 || params.n - 2 < r - 1 {
        return 0.0;
    }
    let pairs = (k as f64) * (k as f64 - 1.0) / 2.0;
    let log_mu = pairs.ln() + ln_binomial(params.n - 2, r - 1) + r as f64 * params.p().ln();
    log_mu.exp()
}

/// `c * Delta / log t`, valid for `2 <= t <= Delta`.
pub fn aks_chi_bound(delta: u64, t: f64, c: f64) -> Result<f64> {
    if !(t >= 2.0 && t <= delta as f64) {
        return Err(Error::Domain(format!("need 2 <= t <= Delta, got t = {t}, Delta = {delta}")));
    }
    Ok(c * delta as f64 / t.ln())
}
