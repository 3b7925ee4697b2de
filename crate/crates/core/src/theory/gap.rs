use serde::{Deserialize, Serialize};

use crate::coloring::{dsatur_chromatic_exact, greedy_power_coloring, natural_order};
use crate::error::{Error, Result};
use crate::graph::{graph_power, Graph, DEFAULT_EDGE_CAP};
use crate::metrics::{
    clique_lower_bound, independence_number, max_clique_exact,
    power_max_degree, IndependenceMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapBudgets {
    pub clique_nodes: u64,
    pub chi_nodes: u64,
    pub edge_cap: u64,
}

impl Default for GapBudgets {
    fn default() -> Self {
        Self {
            clique_nodes: 1_000_000,
            chi_nodes: 1_000_000,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

/// A quantity known exactly or only up to witnessed bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Estimate {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
}

impl Estimate {
    pub fn exact(v: usize) -> Self {
        Self {
            lower: v as u64,
            upper: v as u64,
            exact: true,
        }
    }

    pub fn bounds(lower: u64, upper: u64) -> Self {
        Self {
            lower,
            upper,
            exact: lower == upper,
        }
    }

    fn from_search(res: Result<usize>, floor: u64, ceiling: u64) -> Result<Self> {
        match res {
            Ok(v) => Ok(Self::exact(v)),
            Err(Error::BudgetExceeded { lower, upper, .. }) => {
                Ok(Self::bounds(lower.max(floor), upper.min(ceiling)))
            }
            Err(e) => Err(e),
        }
    }
}

/// `omega`, `alpha` and `chi` of `G^r` with the ratio `chi / max(omega, n / alpha)`.
///
/// The ratio uses the witnessed side of each inexact quantity: the upper
/// bound of `chi` and the lower bounds of `omega` and `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    pub r: usize,
    pub omega: Estimate,
    pub alpha: Estimate,
    pub chi: Estimate,
    pub ratio: f64,
    pub ratio_exact: bool,
    /// False when the explicit power did not fit in the edge cap.
    pub explicit_power: bool,
}

/// Never fails on budget exhaustion; inexact quantities are flagged instead.
pub fn conjecture_gap(g: &Graph, r: usize, budgets: GapBudgets) -> Result<GapReport> {
    if r == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    let n = g.n();
    let delta = power_max_degree(g, r).delta_r as u64;
    let greedy_chi = greedy_power_coloring(g, r, &natural_order(n)).palette_size() as u64;
    let omega_floor = clique_lower_bound(g, r) as u64;

    let (omega, alpha, chi, explicit_power) = match graph_power(g, r, budgets.edge_cap) {
        Ok(p) => {
            let omega = Estimate::from_search(
                max_clique_exact(&p, budgets.clique_nodes),
                omega_floor,
                delta + 1,
            )?;
            let alpha = Estimate::from_search(
                independence_number(&p, IndependenceMode::Exact, budgets.clique_nodes),
                1.min(n as u64),
                n as u64,
            )?;
            let chi = Estimate::from_search(
                dsatur_chromatic_exact(&p, budgets.chi_nodes).map(|c| c.chi),
                omega.lower,
                greedy_chi,
            )?;
            (omega, alpha, chi, true)
        }
        Err(Error::MemoryBudget { .. }) => (
            Estimate::bounds(omega_floor, delta + 1),
            Estimate::bounds(1.min(n as u64), n as u64),
            Estimate::bounds(omega_floor, greedy_chi),
            false,
        ),
        Err(e) => return Err(e),
    };

    let ratio = if n == 0 {
        f64::NAN
    } else {
        let denom = (omega.lower as f64).max(n as f64 / alpha.lower as f64);
        chi.upper as f64 / denom
    };
    Ok(GapReport {
        n,
        r,
        omega,
        alpha,
        chi,
        ratio,
        ratio_exact: omega.exact && alpha.exact && chi.exact,
        explicit_power,
    })
}
