use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::subsets::{elements, Subset, MAX_VARIABLES};

/// Diagonal action of `ℤ/m` on `k[x_1..x_n]`, variable `i` scaled by the
/// character with index `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayData {
    m: u32,
    weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisWarning {
    pub message: String,
}

pub const HYPOTHESIS_TAG: &str = "Gorenstein/isolated-singularity hypotheses fail";

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl McKayData {
    /// Validates the shape of the data. Violations of `gcd(a_i, m) = 1` or
    /// `Σ a_i ≡ 0 (mod m)` are returned as warnings, not errors.
    pub fn new(m: u32, weights: Vec<u32>) -> Result<(Self, Vec<HypothesisWarning>)> {
        if m < 2 {
            return Err(Error::InvalidMcKay(format!("modulus {m} < 2")));
        }
        if weights.is_empty() || weights.len() > MAX_VARIABLES {
            return Err(Error::InvalidMcKay(format!("need 1..={MAX_VARIABLES} weights")));
        }
        if let Some(a) = weights.iter().find(|&&a| a >= m) {
            return Err(Error::InvalidMcKay(format!("weight {a} not in 0..{m}")));
        }
        let mut warnings = Vec::new();
        for (i, &a) in weights.iter().enumerate() {
            if gcd(a, m) != 1 {
                warnings.push(HypothesisWarning {
                    message: format!("{HYPOTHESIS_TAG}: gcd(a_{}, m) = gcd({a}, {m}) ≠ 1", i + 1),
                });
            }
        }
        let total: u32 = weights.iter().sum();
        if !total.is_multiple_of(m) {
            warnings.push(HypothesisWarning {
                message: format!("{HYPOTHESIS_TAG}: sum of weights {total} is not divisible by {m}"),
            });
        }
        Ok((McKayData { m, weights }, warnings))
    }

    /// Like [`McKayData::new`] but treats every warning as an error.
    pub fn strict(m: u32, weights: Vec<u32>) -> Result<Self> {
        let (d, w) = McKayData::new(m, weights)?;
        match w.first() {
            Some(w) => Err(Error::Hypothesis(w.message.clone())),
            None => Ok(d),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// `d(S) = Σ_{i ∈ S} a_i`, not reduced.
    pub fn shift(&self, s: Subset) -> u32 {
        elements(s).iter().map(|&i| self.weights[i - 1]).sum()
    }

    pub fn target(&self, j: u32, s: Subset) -> u32 {
        (j + self.shift(s)) % self.m
    }

    pub fn sum_equals_m(&self) -> bool {
        self.weights.iter().sum::<u32>() == self.m
    }
}
