//! Referring expressions for the report period and extracted periods.

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::kb::TermRef;
use crate::lexicalizer::{Lexeme, LexicalizedDocument, NounPhrase, PhraseSpec, Predicate};

pub type EntityId = usize;

/// Id of the period the whole report describes.
pub const REPORT_ENTITY: EntityId = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReferError {
    #[error("entity {0} is not registered in this document")]
    UnknownEntity(EntityId),
    #[error("entity {0} cannot be told apart from another entity (duplicate period?)")]
    Ambiguous(EntityId),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EntityKind {
    ReportPeriod {
        start: NaiveDate,
        end: NaiveDate,
    },
    FuzzyPeriod {
        term: TermRef,
        band: usize,
        start: NaiveDate,
        end: NaiveDate,
        /// Property word as lexicalized for the period's band.
        property: Lexeme,
        noun: Lexeme,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscourseEntity {
    pub id: EntityId,
    pub kind: EntityKind,
    pub mention_count: usize,
}

impl DiscourseEntity {
    pub fn report_period((start, end): (NaiveDate, NaiveDate)) -> Self {
        Self {
            id: REPORT_ENTITY,
            kind: EntityKind::ReportPeriod { start, end },
            mention_count: 0,
        }
    }
}

/// Attributes that can single out a fuzzy period. The band only makes sense
/// together with the term it grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Feature {
    Term,
    Band,
    Dates,
}

/// Candidate feature sets, smallest first.
pub const FEATURE_SETS: [&[Feature]; 6] = [
    &[],
    &[Feature::Term],
    &[Feature::Dates],
    &[Feature::Term, Feature::Band],
    &[Feature::Term, Feature::Dates],
    &[Feature::Term, Feature::Band, Feature::Dates],
];

/// Whether `candidate` fits a description of `target` using `features`.
pub fn matches(candidate: &DiscourseEntity, target: &DiscourseEntity, features: &[Feature]) -> bool {
    match (&candidate.kind, &target.kind) {
        (EntityKind::ReportPeriod { .. }, EntityKind::ReportPeriod { .. }) => true,
        (
            EntityKind::FuzzyPeriod {
                term: t1,
                band: b1,
                start: s1,
                end: e1,
                ..
            },
            EntityKind::FuzzyPeriod {
                term: t2,
                band: b2,
                start: s2,
                end: e2,
                ..
            },
        ) => features.iter().all(|f| match f {
            Feature::Term => t1.variable == t2.variable && t1.term == t2.term,
            Feature::Band => b1 == b2,
            Feature::Dates => (s1, e1) == (s2, e2),
        }),
        _ => false,
    }
}

/// Smallest feature set under which `e` is the only match among `context`.
pub fn distinguishing_features(e: &DiscourseEntity, context: &[DiscourseEntity]) -> Result<Vec<Feature>, ReferError> {
    FEATURE_SETS
        .iter()
        .find(|set| context.iter().all(|c| c.id == e.id || !matches(c, e, set)))
        .map(|set| set.to_vec())
        .ok_or(ReferError::Ambiguous(e.id))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Determination {
    /// "a warm period ..."
    Indefinite,
    /// "the period", "the warm interval"
    Definite,
    /// "that interval"
    Demonstrative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferringExpression {
    pub entity: EntityId,
    pub determination: Determination,
    pub property: Option<Lexeme>,
    pub noun: Lexeme,
    pub dates: Option<(NaiveDate, NaiveDate)>,
    /// Minimal features telling the entity apart from the others.
    pub distinguishing: Vec<Feature>,
}

/// First mentions of a fuzzy period carry its property and date range.
/// Later mentions keep only the distinguishing features, falling back to a
/// demonstrative when none are needed.
pub fn refer(e: &DiscourseEntity, context: &[DiscourseEntity]) -> Result<ReferringExpression, ReferError> {
    match &e.kind {
        EntityKind::ReportPeriod { .. } => Ok(ReferringExpression {
            entity: e.id,
            determination: Determination::Definite,
            property: None,
            noun: Lexeme::word("period"),
            dates: None,
            distinguishing: Vec::new(),
        }),
        EntityKind::FuzzyPeriod {
            start,
            end,
            property,
            noun,
            ..
        } => {
            let distinguishing = distinguishing_features(e, context)?;
            if e.mention_count == 0 {
                return Ok(ReferringExpression {
                    entity: e.id,
                    determination: Determination::Indefinite,
                    property: Some(property.clone()),
                    noun: noun.clone(),
                    dates: Some((*start, *end)),
                    distinguishing,
                });
            }
            let has = |f| distinguishing.contains(&f);
            Ok(ReferringExpression {
                entity: e.id,
                determination: if distinguishing.is_empty() {
                    Determination::Demonstrative
                } else {
                    Determination::Definite
                },
                property: has(Feature::Term).then(|| property.clone()),
                noun: noun.clone(),
                dates: has(Feature::Dates).then_some((*start, *end)),
                distinguishing,
            })
        }
    }
}

/// Features a realized expression actually states.
pub fn stated_features(re: &ReferringExpression) -> Vec<Feature> {
    let mut out = Vec::new();
    if re.property.is_some() {
        // The property word is band-specific, so it states both.
        out.extend([Feature::Term, Feature::Band]);
    }
    if re.dates.is_some() {
        out.push(Feature::Dates);
    }
    out
}

struct Resolver<'a> {
    entities: &'a mut [DiscourseEntity],
}

impl Resolver<'_> {
    fn noun_phrase(&mut self, np: &mut NounPhrase) -> Result<(), ReferError> {
        if let NounPhrase::Entity { id } = *np {
            let idx = self
                .entities
                .iter()
                .position(|e| e.id == id)
                .ok_or(ReferError::UnknownEntity(id))?;
            let re = refer(&self.entities[idx], self.entities)?;
            self.entities[idx].mention_count += 1;
            *np = NounPhrase::Resolved(re);
        }
        Ok(())
    }

    fn spec(&mut self, spec: &mut PhraseSpec) -> Result<(), ReferError> {
        self.noun_phrase(&mut spec.subject)?;
        for p in &mut spec.complement {
            if let Predicate::Nominal(np) = p {
                self.noun_phrase(np)?;
            }
        }
        Ok(())
    }
}

/// Replaces every entity mention with a referring expression, in reading
/// order, so that first and later mentions are told apart.
pub fn resolve_references(mut doc: LexicalizedDocument) -> Result<LexicalizedDocument, ReferError> {
    let mut resolver = Resolver {
        entities: &mut doc.entities,
    };
    for para in &mut doc.paragraphs {
        for s in &mut para.sentences {
            resolver.spec(&mut s.main)?;
            if let Some((_, clause)) = &mut s.attached {
                resolver.spec(clause)?;
            }
        }
    }
    Ok(doc)
}
