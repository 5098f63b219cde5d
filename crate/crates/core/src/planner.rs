//! Document planning: paragraph structure and discourse relations between
//! the general trend of a variable and its exceptional periods.

use chrono::NaiveDate;
use serde::Serialize;

use crate::content::{ContentPlan, Message, MessageId, PeriodMessage, TrendMessage};
use crate::fuzzy::Tnorm;
use crate::kb::FuzzyKnowledgeBase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// "Q Xs are A, but R Ys are B"
    Contrast,
    /// "Q Xs are A, especially R Ys are B"
    Emphasis,
}

/// A trend joined with one of its sub-periods.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscourseRelation {
    pub kind: RelationKind,
    pub left: TrendMessage,
    pub right: PeriodMessage,
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "node", rename_all = "kebab-case")]
pub enum PlanNode {
    Message(Message),
    Relation(DiscourseRelation),
}

impl PlanNode {
    pub fn message_ids(&self) -> Vec<MessageId> {
        match self {
            PlanNode::Message(m) => vec![m.id()],
            PlanNode::Relation(r) => vec![r.left.id, r.right.id],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParagraphRole {
    General,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Paragraph {
    pub role: ParagraphRole,
    pub nodes: Vec<PlanNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentPlan {
    /// General information first, extended information second.
    pub paragraphs: Vec<Paragraph>,
    /// Temporal succession between consecutive nodes of the extended
    /// paragraph, realized as plain sentence order.
    pub sequence: Vec<(MessageId, MessageId)>,
    pub source_period: (NaiveDate, NaiveDate),
}

impl DocumentPlan {
    pub fn general(&self) -> &Paragraph {
        &self.paragraphs[0]
    }

    pub fn extended(&self) -> &Paragraph {
        &self.paragraphs[1]
    }

    /// Every message id in the plan, in document order.
    pub fn message_ids(&self) -> Vec<MessageId> {
        self.paragraphs
            .iter()
            .flat_map(|p| p.nodes.iter().flat_map(PlanNode::message_ids))
            .collect()
    }
}

fn period_order(a: &PeriodMessage, b: &PeriodMessage) -> std::cmp::Ordering {
    a.start
        .cmp(&b.start)
        .then_with(|| a.variable.cmp(&b.variable))
        .then(a.term.rank.cmp(&b.term.rank))
        .then(a.id.cmp(&b.id))
}

fn sequence_links(extended: &[PlanNode]) -> Vec<(MessageId, MessageId)> {
    extended
        .windows(2)
        .map(|w| (w[0].message_ids()[0], w[1].message_ids()[0]))
        .collect()
}

/// Two-paragraph structure: trends in configured variable order, then
/// counts; periods sorted by start date.
pub fn plan_document(cp: &ContentPlan) -> DocumentPlan {
    let position = |v: &str| cp.trend_order.iter().position(|t| t == v).unwrap_or(usize::MAX);
    let mut trends: Vec<&TrendMessage> = Vec::new();
    let mut counts = Vec::new();
    let mut periods: Vec<&PeriodMessage> = Vec::new();
    for m in cp.messages() {
        match m {
            Message::Trend(t) => trends.push(t),
            Message::Count(c) => counts.push(c),
            Message::Period(p) => periods.push(p),
        }
    }
    trends.sort_by(|a, b| {
        position(&a.variable)
            .cmp(&position(&b.variable))
            .then_with(|| a.variable.cmp(&b.variable))
            .then(a.id.cmp(&b.id))
    });
    counts.sort_by(|a, b| a.variable.cmp(&b.variable).then(a.id.cmp(&b.id)));
    periods.sort_by(|a, b| period_order(a, b));

    let general = trends
        .into_iter()
        .map(|t| PlanNode::Message(Message::Trend(t.clone())))
        .chain(counts.into_iter().map(|c| PlanNode::Message(Message::Count(c.clone()))))
        .collect();
    let extended: Vec<PlanNode> = periods
        .into_iter()
        .map(|p| PlanNode::Message(Message::Period(p.clone())))
        .collect();
    DocumentPlan {
        sequence: sequence_links(&extended),
        paragraphs: vec![
            Paragraph {
                role: ParagraphRole::General,
                nodes: general,
            },
            Paragraph {
                role: ParagraphRole::Extended,
                nodes: extended,
            },
        ],
        source_period: cp.source_period,
    }
}

/// Contrast between a trend and a period of the same variable whose term is
/// an antonym of, or at least two positions away from, the trend's term.
pub fn detect_contrast(
    trend: &TrendMessage,
    period: &PeriodMessage,
    kb: &FuzzyKnowledgeBase,
    strength: Tnorm,
) -> Option<DiscourseRelation> {
    if trend.variable != period.variable {
        return None;
    }
    let var = kb.variable(&trend.variable).ok()?;
    let dominant = trend.dominant();
    let (a, b) = (dominant.summarizer.term.as_str(), period.term.term.as_str());
    let opposed = var.are_antonyms(a, b) || var.distance(a, b)? >= 2;
    opposed.then(|| DiscourseRelation {
        kind: RelationKind::Contrast,
        left: trend.clone(),
        right: period.clone(),
        strength: strength.combine(dominant.fd, period.avg_fd),
    })
}

/// Emphasis when the period's term is the trend's term or a stronger
/// version of it, holding at least as firmly as the trend.
pub fn detect_emphasis(
    trend: &TrendMessage,
    sub: &PeriodMessage,
    kb: &FuzzyKnowledgeBase,
    strength: Tnorm,
) -> Option<DiscourseRelation> {
    if trend.variable != sub.variable || detect_contrast(trend, sub, kb, strength).is_some() {
        return None;
    }
    let var = kb.variable(&trend.variable).ok()?;
    let dominant = trend.dominant();
    let applies = var.intensifies_or_equals(&sub.term.term, &dominant.summarizer.term) && sub.avg_fd >= dominant.fd;
    applies.then(|| DiscourseRelation {
        kind: RelationKind::Emphasis,
        left: trend.clone(),
        right: sub.clone(),
        strength: strength.combine(dominant.fd, sub.avg_fd),
    })
}

/// Joins each trend with its strongest related period. The period leaves
/// the extended paragraph, so every message still appears exactly once.
///
/// Ties in strength favour contrast, then the earlier period.
pub fn annotate_relations(mut plan: DocumentPlan, kb: &FuzzyKnowledgeBase, strength: Tnorm) -> DocumentPlan {
    let [general, extended] = &mut plan.paragraphs[..] else {
        return plan;
    };
    for node in general.nodes.iter_mut() {
        let PlanNode::Message(Message::Trend(trend)) = node else {
            continue;
        };
        let best = extended
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match n {
                PlanNode::Message(Message::Period(p)) => detect_contrast(trend, p, kb, strength)
                    .or_else(|| detect_emphasis(trend, p, kb, strength))
                    .map(|r| (i, r)),
                _ => None,
            })
            .reduce(|best, cand| {
                let better = cand.1.strength > best.1.strength
                    || (cand.1.strength == best.1.strength
                        && cand.1.kind == RelationKind::Contrast
                        && best.1.kind == RelationKind::Emphasis);
                if better {
                    cand
                } else {
                    best
                }
            });
        if let Some((i, relation)) = best {
            extended.nodes.remove(i);
            *node = PlanNode::Relation(relation);
        }
    }
    plan.sequence = sequence_links(&plan.paragraphs[1].nodes);
    plan
}
