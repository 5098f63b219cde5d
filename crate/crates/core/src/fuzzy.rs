//! Numeric kernel: trapezoidal membership functions, t-norms, t-conorms and
//! ordered weighted averaging.
//!
//! Everything here is a pure function over `f64` degrees.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when comparing degrees in selection logic.
pub const DEGREE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("breakpoints must satisfy a <= b <= c <= d, got ({a}, {b}, {c}, {d})")]
    UnorderedBreakpoints { a: f64, b: f64, c: f64, d: f64 },
    #[error("breakpoint is not a finite number")]
    NonFinite,
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(f64),
    #[error("OWA weight {0} is negative")]
    NegativeWeight(f64),
    #[error("OWA weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),
    #[error("expected {expected} values for the OWA weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Trapezoidal membership function with support `(a, d)` and core `[b, c]`.
///
/// `b == c` gives a triangle, `a == b && c == d` a crisp interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct MembershipFunction {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MembershipFunction {
    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(FuzzyError::UnorderedBreakpoints { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn triangle(a: f64, peak: f64, d: f64) -> Result<Self, FuzzyError> {
        Self::trapezoid(a, peak, peak, d)
    }

    pub fn crisp(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        Self::trapezoid(lo, lo, hi, hi)
    }

    pub fn breakpoints(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Core `[b, c]`.
    pub fn core(&self) -> (f64, f64) {
        (self.b, self.c)
    }

    /// Support `(a, d)`.
    pub fn support(&self) -> (f64, f64) {
        (self.a, self.d)
    }

    /// Membership degree of `x`. One on the closed core, zero at and beyond
    /// the support ends, linear in between. A vertical edge is a crisp jump.
    pub fn evaluate(&self, x: f64) -> f64 {
        if self.b <= x && x <= self.c {
            1.0
        } else if x <= self.a || x >= self.d {
            0.0
        } else if x < self.b {
            (x - self.a) / (self.b - self.a)
        } else {
            (self.d - x) / (self.d - self.c)
        }
    }
}

impl TryFrom<[f64; 4]> for MembershipFunction {
    type Error = FuzzyError;

    fn try_from(p: [f64; 4]) -> Result<Self, Self::Error> {
        Self::trapezoid(p[0], p[1], p[2], p[3])
    }
}

impl From<MembershipFunction> for [f64; 4] {
    fn from(f: MembershipFunction) -> Self {
        f.breakpoints()
    }
}

fn check_degree(x: f64) -> Result<f64, FuzzyError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(FuzzyError::DegreeOutOfRange(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tnorm {
    #[default]
    Minimum,
    Product,
    Lukasiewicz,
}

impl Tnorm {
    pub const ALL: [Tnorm; 3] = [Tnorm::Minimum, Tnorm::Product, Tnorm::Lukasiewicz];

    pub fn apply(self, x: f64, y: f64) -> Result<f64, FuzzyError> {
        Ok(self.combine(check_degree(x)?, check_degree(y)?))
    }

    /// Unchecked variant for callers that already hold valid degrees.
    pub(crate) fn combine(self, x: f64, y: f64) -> f64 {
        match self {
            Tnorm::Minimum => x.min(y),
            Tnorm::Product => x * y,
            Tnorm::Lukasiewicz => (x + y - 1.0).max(0.0),
        }
    }

    /// The t-conorm dual under the standard negation.
    pub fn dual(self) -> Tconorm {
        match self {
            Tnorm::Minimum => Tconorm::Maximum,
            Tnorm::Product => Tconorm::ProbabilisticSum,
            Tnorm::Lukasiewicz => Tconorm::BoundedSum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tconorm {
    #[default]
    Maximum,
    ProbabilisticSum,
    BoundedSum,
}

impl Tconorm {
    pub const ALL: [Tconorm; 3] = [
        Tconorm::Maximum,
        Tconorm::ProbabilisticSum,
        Tconorm::BoundedSum,
    ];

    pub fn apply(self, x: f64, y: f64) -> Result<f64, FuzzyError> {
        let (x, y) = (check_degree(x)?, check_degree(y)?);
        Ok(match self {
            Tconorm::Maximum => x.max(y),
            Tconorm::ProbabilisticSum => 1.0 - (1.0 - x) * (1.0 - y),
            Tconorm::BoundedSum => (x + y).min(1.0),
        })
    }
}

/// Ordered weighted averaging weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OwaWeights(Vec<f64>);

impl OwaWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self, FuzzyError> {
        if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(FuzzyError::NegativeWeight(w));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > DEGREE_EPS {
            return Err(FuzzyError::WeightsNotNormalized(sum));
        }
        Ok(Self(weights))
    }

    pub fn uniform(n: usize) -> Result<Self, FuzzyError> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weighted sum of `values` sorted in descending order.
    pub fn aggregate(&self, values: &[f64]) -> Result<f64, FuzzyError> {
        if values.len() != self.0.len() {
            return Err(FuzzyError::LengthMismatch {
                expected: self.0.len(),
                got: values.len(),
            });
        }
        let mut sorted = values
            .iter()
            .map(|&v| check_degree(v))
            .collect::<Result<Vec<_>, _>>()?;
        sorted.sort_by(|x, y| y.total_cmp(x));
        let total: f64 = self.0.iter().zip(&sorted).map(|(w, v)| w * v).sum();
        Ok(total.clamp(0.0, 1.0))
    }
}
