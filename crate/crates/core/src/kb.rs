//! Fuzzy knowledge base: linguistic variables over data domains and the
//! quantifier partition over proportions.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{self, RawKnowledgeBase};
use crate::fuzzy::{FuzzyError, MembershipFunction};

/// Minimum summed membership accepted for a declared partition.
pub const PARTITION_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KbError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported schema_version {0}, expected {expected}", expected = config::SCHEMA_VERSION)]
    SchemaVersion(u32),
    #[error("{context}: {source}")]
    Membership {
        context: String,
        #[source]
        source: FuzzyError,
    },
    #[error("validation error: {0}")]
    Invalid(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown term '{term}' for variable '{variable}'")]
    UnknownTerm { variable: String, term: String },
    #[error("unknown quantifier '{0}'")]
    UnknownQuantifier(String),
}

fn invalid(msg: impl Into<String>) -> KbError {
    KbError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticTerm {
    pub name: String,
    pub mf: MembershipFunction,
    pub antonym: Option<String>,
    /// Name of the weaker term this one is an intensified form of
    /// ("very cold" intensifies "cold").
    pub intensifies: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticVariable {
    pub name: String,
    pub unit: String,
    pub domain: (f64, f64),
    pub partition: bool,
    pub terms: Vec<LinguisticTerm>,
}

impl LinguisticVariable {
    pub fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == name)
    }

    pub fn term(&self, name: &str) -> Result<&LinguisticTerm, KbError> {
        self.terms
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| KbError::UnknownTerm {
                variable: self.name.clone(),
                term: name.to_string(),
            })
    }

    pub fn term_ref(&self, name: &str) -> Result<TermRef, KbError> {
        let rank = self.term_index(name).ok_or_else(|| KbError::UnknownTerm {
            variable: self.name.clone(),
            term: name.to_string(),
        })?;
        Ok(TermRef {
            variable: self.name.clone(),
            term: name.to_string(),
            rank,
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.domain.0 <= x && x <= self.domain.1
    }

    /// Number of positions between two terms in the declared order.
    pub fn distance(&self, a: &str, b: &str) -> Option<usize> {
        Some(self.term_index(a)?.abs_diff(self.term_index(b)?))
    }

    /// Antonymy is read in both directions of a declaration.
    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        let declares = |x: &str, y: &str| {
            self.term(x)
                .map(|t| t.antonym.as_deref() == Some(y))
                .unwrap_or(false)
        };
        declares(a, b) || declares(b, a)
    }

    /// True when `sub` is `base` or reaches it through a chain of
    /// `intensifies` declarations.
    pub fn intensifies_or_equals(&self, sub: &str, base: &str) -> bool {
        let mut current = sub;
        for _ in 0..=self.terms.len() {
            if current == base {
                return true;
            }
            match self.term(current).ok().and_then(|t| t.intensifies.as_deref()) {
                Some(next) => current = next,
                None => return false,
            }
        }
        false
    }

    fn validate(&self) -> Result<(), KbError> {
        let (lo, hi) = self.domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(format!(
                "domain of '{}' must satisfy lo < hi",
                self.name
            )));
        }
        if self.terms.is_empty() {
            return Err(invalid(format!("variable '{}' has no terms", self.name)));
        }
        let mut seen = HashSet::new();
        for t in &self.terms {
            if !seen.insert(t.name.as_str()) {
                return Err(invalid(format!(
                    "term '{}' declared twice in '{}'",
                    t.name, self.name
                )));
            }
        }
        for t in &self.terms {
            for (label, target) in [("antonym", &t.antonym), ("intensifies", &t.intensifies)] {
                if let Some(other) = target {
                    if self.term_index(other).is_none() || other == &t.name {
                        return Err(invalid(format!(
                            "{label} '{other}' of term '{}' is not another term of '{}'",
                            t.name, self.name
                        )));
                    }
                }
            }
        }
        for pair in self.terms.windows(2) {
            let (_, prev_c) = pair[0].mf.core();
            let (next_b, _) = pair[1].mf.core();
            if prev_c >= next_b {
                return Err(invalid(format!(
                    "cores of '{}' and '{}' in '{}' overlap or are out of order",
                    pair[0].name, pair[1].name, self.name
                )));
            }
        }
        if self.partition {
            if let Some(x) = self.coverage_gap() {
                return Err(invalid(format!(
                    "terms of '{}' do not cover domain (total membership below 1 at {x})",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// First probe point where the summed membership drops below one.
    /// Memberships are piecewise linear, so breakpoints, their immediate
    /// neighbours and midpoints between them are sufficient probes.
    fn coverage_gap(&self) -> Option<f64> {
        let (lo, hi) = self.domain;
        let mut knots: Vec<f64> = vec![lo, hi];
        for t in &self.terms {
            knots.extend(t.mf.breakpoints());
        }
        knots.retain(|x| (lo..=hi).contains(x));
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let mut probes = knots.clone();
        for w in knots.windows(2) {
            probes.push((w[0] + w[1]) / 2.0);
        }
        for &k in &knots {
            let step = 1e-7 * (1.0 + k.abs());
            probes.extend([k - step, k + step]);
        }
        probes
            .into_iter()
            .filter(|x| (lo..=hi).contains(x))
            .find(|&x| self.terms.iter().map(|t| t.mf.evaluate(x)).sum::<f64>() < 1.0 - PARTITION_EPS)
    }
}

/// Identifies a term of a variable together with its declared position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TermRef {
    pub variable: String,
    pub term: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantifier {
    pub name: String,
    pub mf: MembershipFunction,
    /// Position in the declared quantifier order.
    pub rank: usize,
}

impl Quantifier {
    pub fn coverage(&self) -> f64 {
        coverage_of(self)
    }

    /// Width of the support, used as an inverse measure of specificity.
    pub fn spread(&self) -> f64 {
        let (a, d) = self.mf.support();
        d - a
    }

    /// True when the membership never decreases over [0, 1].
    pub fn is_non_decreasing(&self) -> bool {
        self.mf.core().1 >= 1.0
    }

    /// "at least Q": same rising edge, held at 1 up to the full proportion.
    pub fn upward_closure(&self) -> Quantifier {
        let [a, b, _, _] = self.mf.breakpoints();
        Quantifier {
            name: format!("at least {}", self.name),
            mf: MembershipFunction::trapezoid(a, b, 1.0, 1.0).expect("rising edge lies in [0, 1]"),
            rank: self.rank,
        }
    }
}

/// Coverage of a quantifier: the midpoint of its core.
pub fn coverage_of(q: &Quantifier) -> f64 {
    let (b, c) = q.mf.core();
    (b + c) / 2.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyKnowledgeBase {
    pub variables: BTreeMap<String, LinguisticVariable>,
    /// Declaration order of the variables.
    pub variable_order: Vec<String>,
    pub quantifiers: Vec<Quantifier>,
}

impl FuzzyKnowledgeBase {
    pub fn new(
        variables: Vec<LinguisticVariable>,
        quantifiers: Vec<Quantifier>,
    ) -> Result<Self, KbError> {
        if variables.is_empty() {
            return Err(invalid("at least one linguistic variable is required"));
        }
        if quantifiers.len() < 2 {
            return Err(invalid("at least two quantifiers are required"));
        }
        let mut names = HashSet::new();
        for (i, q) in quantifiers.iter().enumerate() {
            if !names.insert(q.name.as_str()) {
                return Err(invalid(format!("quantifier '{}' declared twice", q.name)));
            }
            if q.rank != i {
                return Err(invalid(format!("quantifier '{}' has rank {} at position {i}", q.name, q.rank)));
            }
            let (a, d) = q.mf.support();
            if a < 0.0 || d > 1.0 {
                return Err(invalid(format!(
                    "quantifier '{}' must be defined over the proportion domain [0, 1]",
                    q.name
                )));
            }
        }
        let mut map = BTreeMap::new();
        let mut order = Vec::with_capacity(variables.len());
        for v in variables {
            v.validate()?;
            order.push(v.name.clone());
            if map.insert(v.name.clone(), v).is_some() {
                return Err(invalid(format!(
                    "variable '{}' declared twice",
                    order.last().unwrap()
                )));
            }
        }
        Ok(Self {
            variables: map,
            variable_order: order,
            quantifiers,
        })
    }

    pub fn variable(&self, name: &str) -> Result<&LinguisticVariable, KbError> {
        self.variables
            .get(name)
            .ok_or_else(|| KbError::UnknownVariable(name.to_string()))
    }

    pub fn quantifier(&self, name: &str) -> Result<&Quantifier, KbError> {
        self.quantifiers
            .iter()
            .find(|q| q.name == name)
            .ok_or_else(|| KbError::UnknownQuantifier(name.to_string()))
    }

    pub fn term(&self, t: &TermRef) -> Result<&LinguisticTerm, KbError> {
        self.variable(&t.variable)?.term(&t.term)
    }
}

/// Parses and validates a knowledge base from its text form.
pub fn load_kb(source: &str) -> Result<FuzzyKnowledgeBase, KbError> {
    let raw: RawKnowledgeBase = config::parse_raw(source)?;
    raw.into_kb()
}
