//! Modular (additive) set functions.

use crate::error::Result;
use crate::objective::SetFunction;
use crate::set::{ItemId, ItemSet};
use serde::{Deserialize, Serialize};

/// A weight per item plus a constant offset; evaluates as
/// `offset + sum of member weights`. This is the basic building block for
/// relevance scores, popularity masses, coverage counts and similarity rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularFunction {
    weights: Vec<f64>,
    offset: f64,
}

impl ModularFunction {
    pub fn new(weights: Vec<f64>) -> Self {
        ModularFunction { weights, offset: 0.0 }
    }

    pub fn with_offset(weights: Vec<f64>, offset: f64) -> Self {
        ModularFunction { weights, offset }
    }

    /// `n` items all carrying weight `w`.
    pub fn uniform(n: usize, w: f64) -> Self {
        ModularFunction::new(vec![w; n])
    }

    pub fn ground_size(&self) -> usize {
        self.weights.len()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// # Panics
    /// Panics if `id` is outside the ground set the weights were built for.
    #[inline]
    pub fn weight(&self, id: ItemId) -> f64 {
        self.weights[id.index()]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `offset + sum over members`, accumulated in member order.
    pub fn sum(&self, s: &ItemSet) -> f64 {
        let mut total = self.offset;
        for id in s.iter() {
            total += self.weight(id);
        }
        total
    }

    /// Every weight and the offset multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        ModularFunction {
            weights: self.weights.iter().map(|w| w * factor).collect(),
            offset: self.offset * factor,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.offset >= 0.0 && self.weights.iter().all(|&w| w >= 0.0)
    }
}

impl SetFunction for ModularFunction {
    fn evaluate(&self, s: &ItemSet) -> Result<f64> {
        Ok(self.sum(s))
    }

    fn ground_size(&self) -> usize {
        self.weights.len()
    }
}
