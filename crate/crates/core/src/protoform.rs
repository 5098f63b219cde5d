//! Fuzzy quantified statements ("Q Xs are A", "Q DXs are A"): data series,
//! fulfillment degrees, candidate enumeration and selection.

use std::cmp::Ordering;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{Tnorm, DEGREE_EPS};
use crate::kb::{FuzzyKnowledgeBase, KbError, LinguisticTerm, LinguisticVariable, Quantifier, TermRef};

/// Above this many confident candidates the selection falls back to a
/// greedy cover instead of exhaustive subset search.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series for '{0}' is empty")]
    Empty(String),
    #[error("dates must be strictly increasing ({previous} is followed by {date})")]
    NotIncreasing { previous: NaiveDate, date: NaiveDate },
    #[error("value for {date} is not a finite number")]
    NonFinite { date: NaiveDate },
    #[error("{variable} value {value} on {date} is outside the domain [{lo}, {hi}]")]
    OutOfDomain {
        variable: String,
        date: NaiveDate,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("series '{left}' and '{right}' are not aligned on identical dates")]
    Misaligned { left: String, right: String },
    #[error("period {start}..{end} is not within the series range {first}..{last}")]
    PeriodOutOfRange {
        start: NaiveDate,
        end: NaiveDate,
        first: NaiveDate,
        last: NaiveDate,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtoformError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error("series holds '{series}' but '{expected}' was requested")]
    WrongVariable { series: String, expected: String },
    #[error("no candidate statements to select from")]
    NoCandidates,
}

/// Daily observations of one variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataSeries {
    variable: String,
    points: Vec<(NaiveDate, f64)>,
}

impl DataSeries {
    pub fn new(variable: impl Into<String>, points: Vec<(NaiveDate, f64)>) -> Result<Self, SeriesError> {
        let variable = variable.into();
        if points.is_empty() {
            return Err(SeriesError::Empty(variable));
        }
        for (date, value) in &points {
            if !value.is_finite() {
                return Err(SeriesError::NonFinite { date: *date });
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(SeriesError::NotIncreasing {
                    previous: w[0].0,
                    date: w[1].0,
                });
            }
        }
        Ok(Self { variable, points })
    }

    /// Like [`DataSeries::new`], additionally rejecting values outside the
    /// variable's domain.
    pub fn for_variable(var: &LinguisticVariable, points: Vec<(NaiveDate, f64)>) -> Result<Self, SeriesError> {
        let series = Self::new(var.name.clone(), points)?;
        if let Some(&(date, value)) = series.points.iter().find(|(_, v)| !var.contains(*v)) {
            return Err(SeriesError::OutOfDomain {
                variable: var.name.clone(),
                date,
                value,
                lo: var.domain.0,
                hi: var.domain.1,
            });
        }
        Ok(series)
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn points(&self) -> &[(NaiveDate, f64)] {
        &self.points
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first_date(&self) -> NaiveDate {
        self.points[0].0
    }

    pub fn last_date(&self) -> NaiveDate {
        self.points[self.points.len() - 1].0
    }

    pub fn memberships(&self, term: &LinguisticTerm) -> Vec<f64> {
        self.values().map(|x| term.mf.evaluate(x)).collect()
    }

    pub fn is_aligned_with(&self, other: &DataSeries) -> bool {
        self.points.len() == other.points.len()
            && self.points.iter().zip(&other.points).all(|(a, b)| a.0 == b.0)
    }

    pub(crate) fn check_aligned(&self, other: &DataSeries) -> Result<(), SeriesError> {
        if self.is_aligned_with(other) {
            Ok(())
        } else {
            Err(SeriesError::Misaligned {
                left: self.variable.clone(),
                right: other.variable.clone(),
            })
        }
    }
}

/// A way of turning per-element memberships into a quantified truth degree.
pub trait QuantificationModel {
    fn fulfillment(&self, quantifier: &Quantifier, memberships: &[f64]) -> f64;
}

/// Zadeh's relative sigma-count: the quantifier applied to mean membership.
#[derive(Debug, Clone, Copy, Default)]
pub struct SigmaCount;

impl QuantificationModel for SigmaCount {
    fn fulfillment(&self, quantifier: &Quantifier, memberships: &[f64]) -> f64 {
        if memberships.is_empty() {
            return 0.0;
        }
        let proportion = memberships.iter().sum::<f64>() / memberships.len() as f64;
        quantifier.mf.evaluate(proportion)
    }
}

/// Fulfillment degree of "Q Xs are A".
pub fn evaluate_type1(q: &Quantifier, a: &LinguisticTerm, xs: &DataSeries) -> Result<f64, ProtoformError> {
    if xs.is_empty() {
        return Err(SeriesError::Empty(xs.variable.clone()).into());
    }
    Ok(SigmaCount.fulfillment(q, &xs.memberships(a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Type2Outcome {
    pub fd: f64,
    /// No element satisfies the qualifier at all.
    pub vacuous: bool,
}

/// Fulfillment degree of "Q DXs are A" as the relative sigma-count of
/// `T(D, A)` over `D`.
pub fn evaluate_type2(
    q: &Quantifier,
    d: &LinguisticTerm,
    a: &LinguisticTerm,
    xs_d: &DataSeries,
    xs_a: &DataSeries,
    t: Tnorm,
) -> Result<Type2Outcome, ProtoformError> {
    xs_d.check_aligned(xs_a)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in xs_d.values().zip(xs_a.values()) {
        let md = d.mf.evaluate(x);
        num += t.combine(md, a.mf.evaluate(y));
        den += md;
    }
    if den <= 0.0 {
        return Ok(Type2Outcome { fd: 0.0, vacuous: true });
    }
    Ok(Type2Outcome {
        fd: q.mf.evaluate(num / den),
        vacuous: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtoformKind {
    Type1,
    Type2,
}

/// Second summarizer of a conjunctive statement ("Q Xs are A and B").
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conjunct {
    pub term: TermRef,
    pub tnorm: Tnorm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantifiedStatement {
    pub form: ProtoformKind,
    pub quantifier: Quantifier,
    pub summarizer: TermRef,
    pub conjunct: Option<Conjunct>,
    /// Present exactly for type-2 statements.
    pub qualifier: Option<TermRef>,
    pub fd: f64,
    pub coverage: f64,
}

impl QuantifiedStatement {
    pub fn type1(quantifier: Quantifier, summarizer: TermRef, fd: f64) -> Self {
        Self {
            form: ProtoformKind::Type1,
            coverage: quantifier.coverage(),
            quantifier,
            summarizer,
            conjunct: None,
            qualifier: None,
            fd,
        }
    }

    pub fn type2(quantifier: Quantifier, qualifier: TermRef, summarizer: TermRef, fd: f64) -> Self {
        Self {
            form: ProtoformKind::Type2,
            qualifier: Some(qualifier),
            ..Self::type1(quantifier, summarizer, fd)
        }
    }

    pub fn is_conjunctive(&self) -> bool {
        self.conjunct.is_some()
    }

    /// Declared-order key: quantifier position first, then term position.
    fn order_key(&self) -> (usize, &str, usize, Option<usize>, Option<usize>) {
        (
            self.quantifier.rank,
            self.summarizer.variable.as_str(),
            self.summarizer.rank,
            self.qualifier.as_ref().map(|t| t.rank),
            self.conjunct.as_ref().map(|c| c.term.rank),
        )
    }

    fn cmp_declared(&self, other: &Self) -> Ordering {
        self.order_key()
            .cmp(&other.order_key())
            .then(self.fd.total_cmp(&other.fd))
    }
}

/// All |quantifiers| x |terms| type-1 statements for `variable`,
/// quantifier-major in declared order.
pub fn enumerate_candidates(
    kb: &FuzzyKnowledgeBase,
    variable: &str,
    xs: &DataSeries,
) -> Result<Vec<QuantifiedStatement>, ProtoformError> {
    let var = kb.variable(variable)?;
    if xs.variable() != variable {
        return Err(ProtoformError::WrongVariable {
            series: xs.variable().to_string(),
            expected: variable.to_string(),
        });
    }
    let memberships: Vec<Vec<f64>> = var.terms.iter().map(|t| xs.memberships(t)).collect();
    let mut out = Vec::with_capacity(kb.quantifiers.len() * var.terms.len());
    for q in &kb.quantifiers {
        for (rank, (term, mu)) in var.terms.iter().zip(&memberships).enumerate() {
            let summarizer = TermRef {
                variable: var.name.clone(),
                term: term.name.clone(),
                rank,
            };
            out.push(QuantifiedStatement::type1(
                q.clone(),
                summarizer,
                SigmaCount.fulfillment(q, mu),
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Prefer the set whose degrees, sorted descending, are larger.
    #[default]
    HighestFd,
    /// Prefer quantifiers with narrower support.
    MostSpecificQuantifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionCriteria {
    pub fd_threshold: f64,
    pub coverage_target: f64,
    pub tie_break: TieBreak,
}

impl Default for SelectionCriteria {
    fn default() -> Self {
        Self {
            fd_threshold: 0.8,
            coverage_target: 0.5,
            tie_break: TieBreak::HighestFd,
        }
    }
}

impl SelectionCriteria {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.fd_threshold > 0.0 && self.fd_threshold <= 1.0) {
            return Err("fd_threshold must lie in (0, 1]".into());
        }
        if !(self.coverage_target > 0.0 && self.coverage_target <= 1.0) {
            return Err("coverage_target must lie in (0, 1]".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionTier {
    /// Every member passes the threshold and the set reaches the target.
    Confident,
    /// Nothing confident reaches the target; best pair that does.
    BestPair,
    /// Nothing reaches the target; single highest-degree statement.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    /// Sorted by degree, highest first.
    pub statements: Vec<QuantifiedStatement>,
    pub tier: SelectionTier,
    /// Set when the confident pool was too large for exhaustive search.
    pub approximate: bool,
}

impl Selection {
    pub fn low_confidence(&self) -> bool {
        self.tier == SelectionTier::Fallback
    }
}

fn cmp_degree(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= DEGREE_EPS {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// Orders two equally sized candidate sets; `Less` means `a` is preferred.
fn cmp_sets(a: &[&QuantifiedStatement], b: &[&QuantifiedStatement], tie: TieBreak) -> Ordering {
    let fd_sum = |s: &[&QuantifiedStatement]| s.iter().map(|x| x.fd).sum::<f64>();
    let by_sum = cmp_degree(fd_sum(b), fd_sum(a));
    if by_sum != Ordering::Equal {
        return by_sum;
    }
    let by_tie = match tie {
        TieBreak::HighestFd => {
            let sorted = |s: &[&QuantifiedStatement]| {
                let mut v: Vec<f64> = s.iter().map(|x| x.fd).collect();
                v.sort_by(|x, y| y.total_cmp(x));
                v
            };
            sorted(b)
                .iter()
                .zip(sorted(a).iter())
                .map(|(y, x)| cmp_degree(*y, *x))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        }
        TieBreak::MostSpecificQuantifier => {
            let spread = |s: &[&QuantifiedStatement]| s.iter().map(|x| x.quantifier.spread()).sum::<f64>();
            cmp_degree(spread(a), spread(b))
        }
    };
    if by_tie != Ordering::Equal {
        return by_tie;
    }
    let mut ka = a.to_vec();
    let mut kb = b.to_vec();
    ka.sort_by(|x, y| x.cmp_declared(y));
    kb.sort_by(|x, y| x.cmp_declared(y));
    ka.iter()
        .zip(&kb)
        .map(|(x, y)| x.cmp_declared(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn covers(set: &[&QuantifiedStatement], target: f64) -> bool {
    set.iter().map(|s| s.coverage).sum::<f64>() >= target - DEGREE_EPS
}

/// Visits every `k`-subset of `pool` in lexicographic index order.
fn for_each_combination<'a>(
    pool: &[&'a QuantifiedStatement],
    k: usize,
    mut visit: impl FnMut(&[&'a QuantifiedStatement]),
) {
    let n = pool.len();
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut current: Vec<&QuantifiedStatement> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        visit(&current);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in pos..k {
            current[j] = pool[idx[j]];
        }
    }
}

fn best_of_size<'a>(
    pool: &[&'a QuantifiedStatement],
    k: usize,
    c: &SelectionCriteria,
) -> Option<Vec<&'a QuantifiedStatement>> {
    let mut best: Option<Vec<&QuantifiedStatement>> = None;
    for_each_combination(pool, k, |set| {
        if covers(set, c.coverage_target)
            && best
                .as_deref()
                .is_none_or(|b| cmp_sets(set, b, c.tie_break) == Ordering::Less)
        {
            best = Some(set.to_vec());
        }
    });
    best
}

/// Chooses the statements that describe a variable.
///
/// 1. Among sets whose members all reach `fd_threshold` and whose summed
///    coverage reaches `coverage_target`: the smallest, then the largest
///    summed degree.
/// 2. Otherwise the pair with the largest summed degree that reaches the
///    coverage target.
/// 3. Otherwise the single highest-degree statement, flagged low-confidence.
///
/// Remaining ties go to [`TieBreak`], then to declared quantifier order.
pub fn select_statements(
    cands: &[QuantifiedStatement],
    c: &SelectionCriteria,
) -> Result<Selection, ProtoformError> {
    if cands.is_empty() {
        return Err(ProtoformError::NoCandidates);
    }
    let all: Vec<&QuantifiedStatement> = cands.iter().collect();
    let confident: Vec<&QuantifiedStatement> = cands
        .iter()
        .filter(|s| s.fd >= c.fd_threshold - DEGREE_EPS)
        .collect();

    let finish = |set: Vec<&QuantifiedStatement>, tier, approximate| {
        let mut statements: Vec<QuantifiedStatement> = set.into_iter().cloned().collect();
        statements.sort_by(|a, b| b.fd.total_cmp(&a.fd).then(a.cmp_declared(b)));
        Ok(Selection {
            statements,
            tier,
            approximate,
        })
    };

    if covers(&confident, c.coverage_target) {
        if confident.len() <= EXHAUSTIVE_LIMIT {
            for k in 1..=confident.len() {
                if let Some(set) = best_of_size(&confident, k, c) {
                    return finish(set, SelectionTier::Confident, false);
                }
            }
        } else {
            let mut pool = confident.clone();
            pool.sort_by(|a, b| {
                b.coverage
                    .total_cmp(&a.coverage)
                    .then(b.fd.total_cmp(&a.fd))
                    .then(a.cmp_declared(b))
            });
            let mut set = Vec::new();
            for s in pool {
                set.push(s);
                if covers(&set, c.coverage_target) {
                    break;
                }
            }
            return finish(set, SelectionTier::Confident, true);
        }
    }
    if let Some(pair) = best_of_size(&all, 2, c) {
        return finish(pair, SelectionTier::BestPair, false);
    }
    let single = all
        .iter()
        .copied()
        .min_by(|a, b| cmp_sets(&[a], &[b], c.tie_break))
        .expect("nonempty");
    finish(vec![single], SelectionTier::Fallback, false)
}
