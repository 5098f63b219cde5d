//! Aggregation, either over sentence structure (shared participant,
//! shared structure) or over content ("Q Xs are A and B").

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::Tnorm;
use crate::kb::{LinguisticTerm, Quantifier, TermRef};
use crate::lexicalizer::{LexicalizedDocument, NounPhrase, Predicate, PhraseSpec, SentenceSpec};
use crate::referring::REPORT_ENTITY;
use crate::protoform::{Conjunct, DataSeries, ProtoformError, QuantifiedStatement};

/// Longest run of clauses merged into one sentence.
pub const MAX_CHAIN: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AggregationError {
    #[error("clauses differ in {0} and cannot be merged")]
    Mismatch(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregationPath {
    #[default]
    Structural,
    Content,
    Both,
}

fn check_mergeable(p1: &PhraseSpec, p2: &PhraseSpec) -> Result<(), AggregationError> {
    if p1.subject != p2.subject {
        return Err(AggregationError::Mismatch("subject"));
    }
    if p1.verb != p2.verb {
        return Err(AggregationError::Mismatch("verb"));
    }
    if p1.modifiers != p2.modifiers {
        return Err(AggregationError::Mismatch("modifiers"));
    }
    Ok(())
}

fn merge_provenance(p1: &PhraseSpec, p2: &PhraseSpec) -> Vec<usize> {
    let mut ids = p1.provenance.clone();
    ids.extend(p2.provenance.iter().filter(|id| !p1.provenance.contains(id)));
    ids
}

/// "the period was A" + "the period was B" -> "the period was A and B",
/// keeping each predicate whole.
pub fn aggregate_shared_participant(p1: &PhraseSpec, p2: &PhraseSpec) -> Result<PhraseSpec, AggregationError> {
    check_mergeable(p1, p2)?;
    if p1.complement == p2.complement {
        return Ok(p1.clone());
    }
    let mut out = p1.clone();
    out.complement.extend(p2.complement.iter().cloned());
    out.provenance = merge_provenance(p1, p2);
    Ok(out)
}

/// "predominantly cold" + "predominantly wet" -> "predominantly cold and
/// wet". Applies when each side is a single property with the same adverbs;
/// otherwise behaves as [`aggregate_shared_participant`].
pub fn aggregate_shared_structure(p1: &PhraseSpec, p2: &PhraseSpec) -> Result<PhraseSpec, AggregationError> {
    check_mergeable(p1, p2)?;
    if let (
        [Predicate::Property {
            pre: pre1,
            heads: heads1,
            post: post1,
        }],
        [Predicate::Property {
            pre: pre2,
            heads: heads2,
            post: post2,
        }],
    ) = (p1.complement.as_slice(), p2.complement.as_slice())
    {
        if pre1 == pre2 && post1 == post2 {
            let mut heads = heads1.clone();
            heads.extend(heads2.iter().filter(|h| !heads1.contains(h)).cloned());
            let mut out = p1.clone();
            out.complement = vec![Predicate::Property {
                pre: pre1.clone(),
                heads,
                post: post1.clone(),
            }];
            out.provenance = merge_provenance(p1, p2);
            return Ok(out);
        }
    }
    aggregate_shared_participant(p1, p2)
}

/// Only clauses about the report period merge: two quantified clauses with
/// the same determiner need not describe the same days.
fn mergeable(s: &SentenceSpec) -> bool {
    s.attached.is_none()
        && matches!(s.main.subject, NounPhrase::Entity { id: REPORT_ENTITY })
        && s.main
            .complement
            .iter()
            .all(|p| matches!(p, Predicate::Property { .. }))
}

/// Merges runs of adjacent sentences about the same participant within each
/// paragraph, at most [`MAX_CHAIN`] at a time. Sentences carrying a
/// discourse relation, existential sentences and quantified subjects are
/// left alone.
pub fn aggregate_document(mut doc: LexicalizedDocument) -> LexicalizedDocument {
    for para in &mut doc.paragraphs {
        let mut out: Vec<SentenceSpec> = Vec::with_capacity(para.sentences.len());
        let mut chain = 0;
        for s in para.sentences.drain(..) {
            if let Some(last) = out.last_mut() {
                if chain < MAX_CHAIN && mergeable(last) && mergeable(&s) {
                    if let Ok(merged) = aggregate_shared_structure(&last.main, &s.main) {
                        last.main = merged;
                        chain += 1;
                        continue;
                    }
                }
            }
            chain = 1;
            out.push(s);
        }
        para.sentences = out;
    }
    doc
}

/// A term with the series it is evaluated on.
#[derive(Debug, Clone, Copy)]
pub struct TermSeries<'a> {
    pub term: &'a TermRef,
    pub def: &'a LinguisticTerm,
    pub series: &'a DataSeries,
}

/// "Q Xs are A and B": the quantifier applied to the mean of `T(A, B)`.
pub fn content_level_conjunction(
    q: &Quantifier,
    a: TermSeries<'_>,
    b: TermSeries<'_>,
    t: Tnorm,
) -> Result<QuantifiedStatement, ProtoformError> {
    a.series.check_aligned(b.series)?;
    let n = a.series.len() as f64;
    let sum: f64 = a
        .series
        .values()
        .zip(b.series.values())
        .map(|(x, y)| t.combine(a.def.mf.evaluate(x), b.def.mf.evaluate(y)))
        .sum();
    let mut s = QuantifiedStatement::type1(q.clone(), a.term.clone(), q.mf.evaluate(sum / n));
    s.conjunct = Some(Conjunct {
        term: b.term.clone(),
        tnorm: t,
    });
    Ok(s)
}

/// The same pair of facts aggregated both ways, for side-by-side reading.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregationComparison {
    pub term_a: String,
    pub term_b: String,
    pub quantifier: String,
    pub fd_a: f64,
    pub fd_b: f64,
    /// Conjunctive degree per t-norm.
    pub fd_conj: Vec<(Tnorm, f64)>,
    pub sentence_structural: String,
    pub sentence_content: String,
}

impl AggregationComparison {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

/// Degrees of A, B and "A and B" under every t-norm, for quantifier `q`.
pub fn compare_aggregation_paths(
    q: &Quantifier,
    a: TermSeries<'_>,
    b: TermSeries<'_>,
    sentence_structural: String,
    sentence_content: String,
) -> Result<AggregationComparison, ProtoformError> {
    let fd_conj = Tnorm::ALL
        .iter()
        .map(|&t| Ok((t, content_level_conjunction(q, a, b, t)?.fd)))
        .collect::<Result<Vec<_>, ProtoformError>>()?;
    Ok(AggregationComparison {
        term_a: a.term.term.clone(),
        term_b: b.term.term.clone(),
        quantifier: q.name.clone(),
        fd_a: crate::protoform::evaluate_type1(q, a.def, a.series)?,
        fd_b: crate::protoform::evaluate_type1(q, b.def, b.series)?,
        fd_conj,
        sentence_structural,
        sentence_content,
    })
}
