use serde::{Deserialize, Serialize};

/// BFS layer sizes `(l_1, ..., l_r)` around a vertex, with an implicit `l_0 = 1`.
///
/// `total()` is the vertex's degree in the r-th power. A profile is feasible
/// when no empty layer is followed by a non-empty one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeProfile {
    ell: Vec<u64>,
}

impl DegreeProfile {
    pub fn new(ell: Vec<u64>) -> Self {
        Self { ell }
    }

    pub fn layers(&self) -> &[u64] {
        &self.ell
    }

    pub fn radius(&self) -> usize {
        self.ell.len()
    }

    /// `D`, the sum of all layer sizes.
    pub fn total(&self) -> u64 {
        self.ell.iter().sum()
    }

    /// Layer `i` with the convention that layer 0 has size 1.
    pub fn layer(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.ell[i - 1]
        }
    }

    /// `L`, the product of the non-zero layer sizes (as f64; it overflows u64 quickly).
    pub fn product(&self) -> f64 {
        self.ell
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| l as f64)
            .product()
    }

    pub fn is_feasible(&self) -> bool {
        let mut seen_zero = false;
        for &l in &self.ell {
            if l == 0 {
                seen_zero = true;
            } else if seen_zero {
                return false;
            }
        }
        true
    }

    pub fn last(&self) -> u64 {
        self.ell.last().copied().unwrap_or(0)
    }
}

impl From<Vec<u64>> for DegreeProfile {
    fn from(ell: Vec<u64>) -> Self {
        Self::new(ell)
    }
}
