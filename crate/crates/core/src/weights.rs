//! Weight sequences `ω = (ω_k)` defining the norm `‖f‖² = Σ |a_k|² ω_k`.
//!
//! Named families are parameterized as `ω_k = (k+1)^α`: Hardy (`α = 0`),
//! Bergman (`α = −1`), Dirichlet (`α = 1`). Custom sequences are finite and
//! requesting a weight past their horizon is an error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tolerance on `ω_{L−2}/ω_{L−1}` for custom sequences.
pub const DEFAULT_RATIO_TOLERANCE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub enum WeightFamily<T> {
    Hardy,
    Bergman,
    Dirichlet,
    DirichletAlpha { alpha: T },
    Custom { weights: Vec<T> },
}

/// An admissible weight sequence with `ω_0 = 1` and `ω_k > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightFamily<T>", into = "WeightFamily<T>")]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct WeightSequence<T> {
    family: WeightFamily<T>,
    warning: Option<String>,
}

impl<T: Real> WeightSequence<T> {
    pub fn hardy() -> Self {
        Self { family: WeightFamily::Hardy, warning: None }
    }

    pub fn bergman() -> Self {
        Self { family: WeightFamily::Bergman, warning: None }
    }

    pub fn dirichlet() -> Self {
        Self { family: WeightFamily::Dirichlet, warning: None }
    }

    /// `ω_k = (k+1)^α`.
    pub fn dirichlet_alpha(alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite alpha {alpha}")));
        }
        Ok(Self { family: WeightFamily::DirichletAlpha { alpha }, warning: None })
    }

    pub fn custom(weights: Vec<T>) -> Result<Self> {
        Self::custom_with_ratio_tolerance(weights, T::lit(DEFAULT_RATIO_TOLERANCE))
    }

    /// Custom weights; a warning is attached when the ratio of the last two
    /// entries falls outside `[1 − δ, 1 + δ]`.
    pub fn custom_with_ratio_tolerance(weights: Vec<T>, delta: T) -> Result<Self> {
        let first = *weights
            .first()
            .ok_or_else(|| Error::InvalidInput("custom weight sequence is empty".into()))?;
        if (first - T::one()).abs() > T::epsilon() * T::lit(4.0) {
            return Err(Error::InvalidInput(format!("custom weights must start with 1, got {first}")));
        }
        if let Some((k, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > T::zero() && w.is_finite())) {
            return Err(Error::InvalidInput(format!("weight {k} = {w} is not positive")));
        }
        let warning = match weights.len() {
            1 => Some("single custom weight: ratio condition cannot be checked".to_string()),
            l => {
                let ratio = weights[l - 2] / weights[l - 1];
                (ratio < T::one() - delta || ratio > T::one() + delta).then(|| {
                    format!("custom weight ratio w[{}]/w[{}] = {ratio} outside 1 ± {delta}", l - 2, l - 1)
                })
            }
        };
        Ok(Self { family: WeightFamily::Custom { weights }, warning })
    }

    pub fn family(&self) -> &WeightFamily<T> {
        &self.family
    }

    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    /// Number of weights available, `None` for the unbounded named families.
    pub fn horizon(&self) -> Option<usize> {
        match &self.family {
            WeightFamily::Custom { weights } => Some(weights.len()),
            _ => None,
        }
    }

    pub fn weight(&self, k: usize) -> Result<T> {
        let kp1 = T::from_usize_lossy(k + 1);
        Ok(match &self.family {
            WeightFamily::Hardy => T::one(),
            WeightFamily::Bergman => kp1.recip(),
            WeightFamily::Dirichlet => kp1,
            WeightFamily::DirichletAlpha { alpha } => kp1.powf(*alpha),
            WeightFamily::Custom { weights } => *weights
                .get(k)
                .ok_or(Error::OutOfRange { index: k, len: weights.len() })?,
        })
    }

    /// `ω_0, …, ω_n`.
    pub fn weights_through(&self, n: usize) -> Result<Vec<T>> {
        if let Some(len) = self.horizon() {
            if n >= len {
                return Err(Error::OutOfRange { index: n, len });
            }
        }
        (0..=n).map(|k| self.weight(k)).collect()
    }

    /// Exponent `β` with `1/ω_k = (k+1)^β`, when the family has one.
    pub fn inverse_growth_exponent(&self) -> Option<T> {
        match &self.family {
            WeightFamily::Hardy => Some(T::zero()),
            WeightFamily::Bergman => Some(T::one()),
            WeightFamily::Dirichlet => Some(-T::one()),
            WeightFamily::DirichletAlpha { alpha } => Some(-*alpha),
            WeightFamily::Custom { .. } => None,
        }
    }

    /// Upper bound on `Σ_{k>n} r^k / ω_k` for `0 ≤ r < 1`, or `None` when no
    /// bound is available (custom weights, or `n` too small for the ratio test).
    pub fn tail_sum_bound(&self, r: T, n: usize) -> Option<T> {
        if r < T::zero() || r >= T::one() {
            return None;
        }
        if r == T::zero() {
            return Some(T::zero());
        }
        let beta = self.inverse_growth_exponent()?;
        let first = r.powi(i32::try_from(n + 1).ok()?) * T::from_usize_lossy(n + 2).powf(beta);
        // ratio of consecutive terms is largest at the start of the tail
        let q = if beta > T::zero() {
            r * (T::from_usize_lossy(n + 3) / T::from_usize_lossy(n + 2)).powf(beta)
        } else {
            r
        };
        (q < T::one()).then(|| first / (T::one() - q))
    }

    /// Short label used in reports, e.g. `hardy` or `dalpha=0.5`.
    pub fn label(&self) -> String {
        match &self.family {
            WeightFamily::Hardy => "hardy".into(),
            WeightFamily::Bergman => "bergman".into(),
            WeightFamily::Dirichlet => "dirichlet".into(),
            WeightFamily::DirichletAlpha { alpha } => format!("dalpha={alpha}"),
            WeightFamily::Custom { weights } => format!("custom[{}]", weights.len()),
        }
    }
}

impl<T: Real> TryFrom<WeightFamily<T>> for WeightSequence<T> {
    type Error = Error;

    fn try_from(family: WeightFamily<T>) -> Result<Self> {
        match family {
            WeightFamily::Hardy => Ok(Self::hardy()),
            WeightFamily::Bergman => Ok(Self::bergman()),
            WeightFamily::Dirichlet => Ok(Self::dirichlet()),
            WeightFamily::DirichletAlpha { alpha } => Self::dirichlet_alpha(alpha),
            WeightFamily::Custom { weights } => Self::custom(weights),
        }
    }
}

impl<T> From<WeightSequence<T>> for WeightFamily<T> {
    fn from(w: WeightSequence<T>) -> Self {
        w.family
    }
}
