//! Content determination: which facts about the data make it into the report.

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::config::ReportConfig;
use crate::ingest::{IngestError, ObservationTable};
use crate::kb::{FuzzyKnowledgeBase, KbError, TermRef};
use crate::protoform::{
    enumerate_candidates, select_statements, DataSeries, ProtoformError, QuantifiedStatement, SelectionCriteria,
    SelectionTier, SeriesError,
};

/// Periods whose average degree falls below this are never reported.
pub const MIN_PERIOD_FD: f64 = 0.5;

#[derive(Debug, Error)]
pub enum ContentError {
    #[error(transparent)]
    Protoform(#[from] ProtoformError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("minimum period length must be at least 2, got {0}")]
    MinLength(usize),
}

pub type MessageId = usize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendMessage {
    pub id: MessageId,
    pub variable: String,
    /// Nonempty, highest degree first.
    pub statements: Vec<QuantifiedStatement>,
    pub tier: SelectionTier,
}

impl TrendMessage {
    /// The statement whose term stands for the whole trend.
    pub fn dominant(&self) -> &QuantifiedStatement {
        &self.statements[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountCondition {
    /// Value strictly above the threshold.
    Above(f64),
    /// Membership in a term of at least `alpha`.
    Term {
        term: TermRef,
        mf: crate::fuzzy::MembershipFunction,
        alpha: f64,
    },
}

impl CountCondition {
    pub fn holds(&self, x: f64) -> bool {
        match self {
            CountCondition::Above(t) => x > *t,
            CountCondition::Term { mf, alpha, .. } => mf.evaluate(x) >= *alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountMessage {
    pub id: MessageId,
    pub variable: String,
    pub condition: CountCondition,
    /// What the counted days have ("rain").
    pub noun: String,
    pub count: usize,
    pub start: NaiveDate,
    pub end: NaiveDate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodMessage {
    pub id: MessageId,
    pub variable: String,
    pub term: TermRef,
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub avg_fd: f64,
    /// Neighbouring terms with their mean membership over the same days.
    pub adjacent: Vec<(TermRef, f64)>,
}

impl PeriodMessage {
    pub fn days(&self) -> i64 {
        (self.end - self.start).num_days() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Message {
    Trend(TrendMessage),
    Count(CountMessage),
    Period(PeriodMessage),
}

impl Message {
    pub fn id(&self) -> MessageId {
        match self {
            Message::Trend(m) => m.id,
            Message::Count(m) => m.id,
            Message::Period(m) => m.id,
        }
    }

    pub fn variable(&self) -> &str {
        match self {
            Message::Trend(m) => &m.variable,
            Message::Count(m) => &m.variable,
            Message::Period(m) => &m.variable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContentPlan {
    pub general: Vec<Message>,
    pub extended: Vec<Message>,
    pub source_period: (NaiveDate, NaiveDate),
    /// Configured order of trend variables.
    pub trend_order: Vec<String>,
}

impl ContentPlan {
    pub fn messages(&self) -> impl Iterator<Item = &Message> {
        self.general.iter().chain(&self.extended)
    }
}

pub fn build_trend_message(
    kb: &FuzzyKnowledgeBase,
    variable: &str,
    xs: &DataSeries,
    criteria: &SelectionCriteria,
) -> Result<TrendMessage, ContentError> {
    let cands = enumerate_candidates(kb, variable, xs)?;
    let selection = select_statements(&cands, criteria)?;
    Ok(TrendMessage {
        id: 0,
        variable: variable.to_string(),
        statements: selection.statements,
        tier: selection.tier,
    })
}

/// Exact number of days in `period` (inclusive) satisfying `condition`.
pub fn count_days(
    xs: &DataSeries,
    condition: CountCondition,
    period: (NaiveDate, NaiveDate),
    noun: &str,
) -> Result<CountMessage, ContentError> {
    let (start, end) = period;
    if start > end || start < xs.first_date() || end > xs.last_date() {
        return Err(SeriesError::PeriodOutOfRange {
            start,
            end,
            first: xs.first_date(),
            last: xs.last_date(),
        }
        .into());
    }
    let count = xs
        .points()
        .iter()
        .filter(|(d, x)| *d >= start && *d <= end && condition.holds(*x))
        .count();
    Ok(CountMessage {
        id: 0,
        variable: xs.variable().to_string(),
        condition,
        noun: noun.to_string(),
        count,
        start,
        end,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodOptions {
    pub min_len: usize,
    pub fd_floor: f64,
    pub adjacent_threshold: f64,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        Self {
            min_len: 4,
            fd_floor: 0.5,
            adjacent_threshold: 0.3,
        }
    }
}

/// Maximal runs of consecutive days on which a term holds with degree at
/// least `fd_floor`, for every term of `variable`.
///
/// Runs need `min_len` days and an average degree of at least
/// [`MIN_PERIOD_FD`]. A gap in the dates ends a run. Output is sorted by
/// start date, then term position.
pub fn extract_fuzzy_periods(
    kb: &FuzzyKnowledgeBase,
    variable: &str,
    xs: &DataSeries,
    opts: &PeriodOptions,
) -> Result<Vec<PeriodMessage>, ContentError> {
    if opts.min_len < 2 {
        return Err(ContentError::MinLength(opts.min_len));
    }
    let var = kb.variable(variable)?;
    let points = xs.points();
    let memberships: Vec<Vec<f64>> = var.terms.iter().map(|t| xs.memberships(t)).collect();
    let consecutive = |i: usize| i > 0 && points[i].0.pred_opt() == Some(points[i - 1].0);

    let mut out = Vec::new();
    for (rank, mu) in memberships.iter().enumerate() {
        let mut i = 0;
        while i < mu.len() {
            if mu[i] < opts.fd_floor {
                i += 1;
                continue;
            }
            let start = i;
            i += 1;
            while i < mu.len() && mu[i] >= opts.fd_floor && consecutive(i) {
                i += 1;
            }
            let len = i - start;
            if len < opts.min_len {
                continue;
            }
            let mean = |m: &[f64]| m[start..i].iter().sum::<f64>() / len as f64;
            let avg_fd = mean(mu);
            if avg_fd < MIN_PERIOD_FD {
                continue;
            }
            let adjacent = [rank.checked_sub(1), Some(rank + 1)]
                .into_iter()
                .flatten()
                .filter(|&r| r < var.terms.len())
                .map(|r| (var.term_ref(&var.terms[r].name).expect("own term"), mean(&memberships[r])))
                .filter(|(_, fd)| *fd >= opts.adjacent_threshold)
                .collect();
            out.push(PeriodMessage {
                id: 0,
                variable: variable.to_string(),
                term: var.term_ref(&var.terms[rank].name)?,
                start: points[start].0,
                end: points[i - 1].0,
                avg_fd,
                adjacent,
            });
        }
    }
    out.sort_by(|a, b| a.start.cmp(&b.start).then(a.term.rank.cmp(&b.term.rank)));
    Ok(out)
}

/// Runs content determination over a whole observation table.
pub fn build_content_plan(
    kb: &FuzzyKnowledgeBase,
    report: &ReportConfig,
    table: &ObservationTable,
) -> Result<ContentPlan, ContentError> {
    let (first, last) = match (table.first_date(), table.last_date()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(IngestError::Empty.into()),
    };
    let criteria = report.criteria();
    let mut next_id = 0;
    let mut take_id = || {
        next_id += 1;
        next_id - 1
    };

    let mut general = Vec::new();
    for v in &report.trend_variables {
        let xs = table.series(kb, v)?;
        let mut m = build_trend_message(kb, v, &xs, &criteria)?;
        m.id = take_id();
        general.push(Message::Trend(m));
    }
    let count_series = table.series(kb, &report.count.variable)?;
    let mut count = count_days(
        &count_series,
        CountCondition::Above(report.count.above),
        (first, last),
        &report.count.noun,
    )?;
    count.id = take_id();
    general.push(Message::Count(count));

    let opts = PeriodOptions {
        min_len: report.min_period_len,
        fd_floor: report.period_fd_floor,
        adjacent_threshold: report.adjacent_threshold,
    };
    let mut periods = Vec::new();
    for v in &report.period_variables {
        let xs = table.series(kb, v)?;
        let trend_terms: Vec<&str> = general
            .iter()
            .filter_map(|m| match m {
                Message::Trend(t) if t.variable == *v => Some(t),
                _ => None,
            })
            .flat_map(|t| t.statements.iter().map(|s| s.summarizer.term.as_str()))
            .collect();
        periods.extend(
            extract_fuzzy_periods(kb, v, &xs, &opts)?
                .into_iter()
                .filter(|p| !(report.skip_trend_terms && trend_terms.contains(&p.term.term.as_str()))),
        );
    }
    periods.sort_by(|a, b| {
        a.start
            .cmp(&b.start)
            .then_with(|| a.variable.cmp(&b.variable))
            .then(a.term.rank.cmp(&b.term.rank))
    });
    let extended = periods
        .into_iter()
        .map(|mut p| {
            p.id = take_id();
            Message::Period(p)
        })
        .collect();

    Ok(ContentPlan {
        general,
        extended,
        source_period: (first, last),
        trend_order: report.trend_variables.clone(),
    })
}
