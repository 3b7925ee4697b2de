//! The layer-profile extremal problem
//! `min sum_i l_i log(l_i / l_{i-1})` over `l_1 + ... + l_r = D`, `l_0 = 1`.

use serde::{Deserialize, Serialize};

use super::iterated_log;
use crate::error::{Error, Result};
use crate::profile::DegreeProfile;

/// Default cap on the work estimate of [`lemma2_min_exact`].
pub const DEFAULT_LEMMA2_WORK: u64 = 4_000_000_000;

const LAGRANGE_TOL: f64 = 1e-10;
const LAGRANGE_MAX_ITER: usize = 1000;

/// Objective value of a profile; `+inf` when a zero layer precedes a non-zero one.
pub fn lemma2_objective(profile: &DegreeProfile) -> f64 {
    if !profile.is_feasible() {
        return f64::INFINITY;
    }
    let mut prev = 1.0f64;
    let mut sum = 0.0;
    for &l in profile.layers() {
        if l == 0 {
            break;
        }
        let l = l as f64;
        sum += l * (l / prev).ln();
        prev = l;
    }
    sum
}

/// Smallest `c` with `value >= D log_{(r)} D - c D`.
pub fn lemma2_shape_constant(total: f64, r: usize, value: f64) -> Result<f64> {
    Ok((total * iterated_log(total, r)? - value) / total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Min {
    pub value: f64,
    pub argmin: DegreeProfile,
}

pub fn lemma2_min_exact(total: u64, r: usize) -> Result<Lemma2Min> {
    lemma2_min_exact_with(total, r, DEFAULT_LEMMA2_WORK)
}

/// Exact integer minimum by dynamic programming.
///
/// States after `k` layers are `(mass used, last layer)`. Layers `1..=r-2`
/// are tabulated; the last two are enumerated on the fly from each table
/// entry, so `r = 2` costs `O(D)`, `r = 3` costs `O(D^2)` and every further
/// layer adds `O(D^3)`. Profiles that end early (trailing zeros) are picked up
/// from any table whose mass is already `D`. Near-ties at the final selection
/// go to the lexicographically smaller profile.
pub fn lemma2_min_exact_with(total: u64, r: usize, max_work: u64) -> Result<Lemma2Min> {
    if r == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    if total == 0 {
        return Ok(Lemma2Min {
            value: 0.0,
            argmin: DegreeProfile::new(vec![0; r]),
        });
    }
    let dd = total as f64;
    let work = match r {
        1 => 1.0,
        2 => dd,
        3 => dd * dd,
        _ => dd * dd * dd * (r - 3) as f64 + dd * dd,
    };
    if work > max_work as f64 {
        return Err(Error::BudgetExceeded {
            what: "layer-profile minimisation",
            lower: max_work,
            upper: work.min(u64::MAX as f64) as u64,
        });
    }
    if r == 1 {
        return Ok(Lemma2Min {
            value: dd * dd.ln(),
            argmin: DegreeProfile::new(vec![total]),
        });
    }

    let big = total as usize;
    let ln: Vec<f64> = (0..=big).map(|k| (k.max(1) as f64).ln()).collect();
    let term = |x: usize, prev: usize| x as f64 * (ln[x] - ln[prev]);
    let width = big + 1;
    let idx = |mass: usize, last: usize| mass * width + last;

    // tables[k][idx(mass, last)]: best value after k + 1 layers; back[k]: previous last layer.
    let stored = r - 2;
    let mut tables: Vec<Vec<f64>> = Vec::with_capacity(stored);
    let mut back: Vec<Vec<u32>> = Vec::with_capacity(stored);
    for k in 0..stored {
        let mut cur = vec![f64::INFINITY; width * width];
        let mut bp = vec![0u32; width * width];
        if k == 0 {
            for m in 1..=big {
                cur[idx(m, m)] = term(m, 1);
                bp[idx(m, m)] = 1;
            }
        } else {
            let prev = &tables[k - 1];
            for mass in 1..big {
                for last in 1..=mass {
                    let base = prev[idx(mass, last)];
                    if !base.is_finite() {
                        continue;
                    }
                    for x in 1..=big - mass {
                        let v = base + term(x, last);
                        let slot = idx(mass + x, x);
                        if v < cur[slot] {
                            cur[slot] = v;
                            bp[slot] = last as u32;
                        }
                    }
                }
            }
        }
        tables.push(cur);
        back.push(bp);
    }

    // Reconstructs the tabulated prefix ending at (mass, last) after k + 1 layers.
    let prefix = |k: usize, mut mass: usize, mut last: usize| -> Vec<u64> {
        let mut out = vec![0u64; k + 1];
        for j in (0..=k).rev() {
            out[j] = last as u64;
            let p = back[j][idx(mass, last)] as usize;
            mass -= last;
            last = p;
        }
        out
    };

    let mut best_value = f64::INFINITY;
    let mut best: Vec<u64> = Vec::new();
    let mut offer = |value: f64, make: &dyn Fn() -> Vec<u64>| {
        let tol = 1e-12 * value.abs().max(1.0);
        if value < best_value - tol {
            best_value = value;
            best = make();
        } else if (value - best_value).abs() <= tol {
            let cand = make();
            if cand < best {
                best_value = value.min(best_value);
                best = cand;
            }
        }
    };

    // Profiles that reach D within the tabulated layers.
    for k in 0..stored {
        for last in 1..=big {
            let v = tables[k][idx(big, last)];
            if v.is_finite() {
                offer(v, &|| {
                    let mut p = prefix(k, big, last);
                    p.resize(r, 0);
                    p
                });
            }
        }
    }

    // Stream the last two layers.
    let mut extend = |mass: usize, last: usize, base: f64, head: &dyn Fn() -> Vec<u64>| {
        let rem = big - mass;
        for y in 1..=rem {
            let z = rem - y;
            let mut v = base + term(y, last);
            if z > 0 {
                v += term(z, y);
            }
            offer(v, &|| {
                let mut p = head();
                p.push(y as u64);
                p.push(z as u64);
                p
            });
        }
    };
    if stored == 0 {
        extend(0, 1, 0.0, &Vec::new);
    } else {
        let k = stored - 1;
        for mass in 1..big {
            for last in 1..=mass {
                let v = tables[k][idx(mass, last)];
                if v.is_finite() {
                    extend(mass, last, v, &|| prefix(k, mass, last));
                }
            }
        }
    }

    Ok(Lemma2Min {
        value: best_value,
        argmin: DegreeProfile::new(best),
    })
}

/// Continuous relaxation solved through the stationarity relations
/// `p_i = p_r e^{p_{i+1}}`, `l_i = p_1 ... p_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangeSolution {
    pub value: f64,
    pub p: Vec<f64>,
    pub ell: Vec<f64>,
    /// `sum l_i - D` at the returned point.
    pub residual: f64,
    pub iterations: usize,
    /// `(log_{(r-1)} D - p_r) / log_{(r)} D`, when `r >= 2` and defined.
    pub fitted_c: Option<f64>,
}

impl LagrangeSolution {
    pub fn p_r(&self) -> f64 {
        *self.p.last().expect("r >= 1")
    }
}

fn tower(x: f64, r: usize) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![x; r];
    for i in (0..r - 1).rev() {
        p[i] = x * p[i + 1].exp();
    }
    let mut ell = Vec::with_capacity(r);
    let mut acc = 1.0;
    for &pi in &p {
        acc *= pi;
        ell.push(acc);
    }
    (p, ell)
}

fn mass_residual(x: f64, r: usize, total: f64) -> f64 {
    let (_, ell) = tower(x, r);
    let s: f64 = ell.iter().sum();
    if s.is_nan() {
        f64::INFINITY
    } else {
        s - total
    }
}

/// Bisection on `p_r`; the mass `sum l_i` is increasing in `p_r`.
///
/// Stops when the residual is within `1e-10` or the bracket has shrunk to
/// adjacent floats (for large `D` the residual cannot get below one ulp of `D`).
pub fn lemma2_min_lagrange(total: f64, r: usize) -> Result<LagrangeSolution> {
    if r == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Domain(format!("D = {total} must be positive")));
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut iterations = 0;
    while mass_residual(hi, r, total) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        iterations += 1;
        if iterations >= LAGRANGE_MAX_ITER {
            return Err(Error::NoConvergence { lo, hi, iterations });
        }
    }
    let x = loop {
        let mid = 0.5 * (lo + hi);
        let g = mass_residual(mid, r, total);
        iterations += 1;
        if g.abs() <= LAGRANGE_TOL {
            break mid;
        }
        if mid <= lo || mid >= hi {
            let (glo, ghi) = (mass_residual(lo, r, total), mass_residual(hi, r, total));
            break if glo.abs() <= ghi.abs() { lo } else { hi };
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if iterations >= LAGRANGE_MAX_ITER {
            return Err(Error::NoConvergence { lo, hi, iterations });
        }
    };
    let (p, ell) = tower(x, r);
    let value = ell.iter().zip(&p).map(|(l, pi)| l * pi.ln()).sum();
    let residual = ell.iter().sum::<f64>() - total;
    let fitted_c = if r >= 2 {
        match (iterated_log(total, r - 1), iterated_log(total, r)) {
            (Ok(a), Ok(b)) if b > 0.0 => Some((a - x) / b),
            _ => None,
        }
    } else {
        None
    };
    Ok(LagrangeSolution {
        value,
        p,
        ell,
        residual,
        iterations,
        fitted_c,
    })
}
