//! Lexicalization: messages to phrase specifications.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::content::{CountMessage, Message, MessageId, PeriodMessage, TrendMessage};
use crate::kb::{FuzzyKnowledgeBase, Quantifier, TermRef};
use crate::lexicon::Lexicon;
use crate::planner::{DiscourseRelation, DocumentPlan, ParagraphRole, PlanNode, RelationKind};
use crate::protoform::QuantifiedStatement;
use crate::referring::{DiscourseEntity, EntityId, EntityKind, ReferringExpression, REPORT_ENTITY};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexError {
    #[error("trend for '{variable}' has {count} statements; at most 2 can be lexicalized")]
    StatementCount { variable: String, count: usize },
    #[error("period message {id} has average degree {avg_fd} below the reporting floor")]
    PeriodBelowFloor { id: MessageId, avg_fd: f64 },
    #[error("no quantifier in the knowledge base")]
    NoQuantifier,
}

/// A word as chosen by the lexicon. `surface` is `None` when the lexicon had
/// no entry; the realizer refuses such lexemes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lexeme {
    pub lemma: String,
    pub surface: Option<String>,
}

impl Lexeme {
    pub fn word(w: impl Into<String>) -> Self {
        let w = w.into();
        Self {
            surface: Some(w.clone()),
            lemma: w,
        }
    }

    pub fn unmapped(lemma: impl Into<String>) -> Self {
        Self {
            lemma: lemma.into(),
            surface: None,
        }
    }

    fn from_lookup(lemma: &str, found: Option<&str>) -> Self {
        Self {
            lemma: lemma.to_string(),
            surface: found.map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Singular,
    Plural,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "np", rename_all = "kebab-case")]
pub enum NounPhrase {
    Literal {
        text: String,
        number: Number,
    },
    /// Existential "there"; agrees with the first nominal complement.
    Expletive,
    /// "<determiner> of the days [from .. to ..]"
    Quantified {
        determiner: Lexeme,
        range: Option<(NaiveDate, NaiveDate)>,
    },
    /// "77 days with rain"
    Count {
        count: usize,
        post: Lexeme,
    },
    /// Discourse entity awaiting a referring expression.
    Entity {
        id: EntityId,
    },
    Resolved(ReferringExpression),
}

impl NounPhrase {
    pub fn number(&self) -> Number {
        match self {
            NounPhrase::Literal { number, .. } => *number,
            NounPhrase::Quantified { .. } => Number::Plural,
            NounPhrase::Count { count, .. } if *count == 1 => Number::Singular,
            NounPhrase::Count { .. } => Number::Plural,
            NounPhrase::Expletive | NounPhrase::Entity { .. } | NounPhrase::Resolved(_) => Number::Singular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tense {
    Past,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verb {
    pub lemma: String,
    pub tense: Tense,
}

impl Verb {
    pub fn be_past() -> Self {
        Self {
            lemma: "be".into(),
            tense: Tense::Past,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "predicate", rename_all = "kebab-case")]
pub enum Predicate {
    /// "[pre] head (and head)* [post]", e.g. "predominantly cold and wet".
    Property {
        pre: Option<Lexeme>,
        heads: Vec<Lexeme>,
        post: Option<Lexeme>,
    },
    Nominal(NounPhrase),
}

impl Predicate {
    pub fn property(pre: Option<Lexeme>, head: Lexeme, post: Option<Lexeme>) -> Self {
        Predicate::Property {
            pre,
            heads: vec![head],
            post,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhraseSpec {
    pub subject: NounPhrase,
    pub verb: Verb,
    /// Conjoined when more than one.
    pub complement: Vec<Predicate>,
    /// Sentence-final adverbials.
    pub modifiers: Vec<Lexeme>,
    /// Messages this spec expresses.
    pub provenance: Vec<MessageId>,
}

impl PhraseSpec {
    fn new(subject: NounPhrase, complement: Vec<Predicate>, provenance: MessageId) -> Self {
        Self {
            subject,
            verb: Verb::be_past(),
            complement,
            modifiers: Vec::new(),
            provenance: vec![provenance],
        }
    }

    pub fn is_existential(&self) -> bool {
        self.subject == NounPhrase::Expletive
    }
}

/// A main clause, optionally followed by a clause attached through a
/// discourse relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceSpec {
    pub main: PhraseSpec,
    pub attached: Option<(RelationKind, PhraseSpec)>,
}

impl SentenceSpec {
    pub fn simple(main: PhraseSpec) -> Self {
        Self { main, attached: None }
    }

    pub fn provenance(&self) -> Vec<MessageId> {
        let mut ids = self.main.provenance.clone();
        if let Some((_, c)) = &self.attached {
            ids.extend(&c.provenance);
        }
        ids
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexParagraph {
    pub role: ParagraphRole,
    pub sentences: Vec<SentenceSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexicalizedDocument {
    pub paragraphs: Vec<LexParagraph>,
    pub entities: Vec<DiscourseEntity>,
}

/// How two statements about the same term are folded into one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiQuantifierMode {
    /// The less specific quantifier, covering both.
    Coverage,
    /// The more specific quantifier.
    Specificity,
    /// Drop the quantifier: "X in general".
    #[default]
    Default,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum QuantifierChoice {
    Quantifier(Quantifier),
    InGeneral,
}

/// Picks the expression for two statements sharing a term. Quantifiers
/// declared earlier are read as less specific ("some" covers "many").
pub fn resolve_multi_quantifier(
    s1: &QuantifiedStatement,
    s2: &QuantifiedStatement,
    mode: MultiQuantifierMode,
) -> QuantifierChoice {
    let (q1, q2) = (&s1.quantifier, &s2.quantifier);
    if q1.name == q2.name {
        return QuantifierChoice::Quantifier(q1.clone());
    }
    let (wide, narrow) = if q1.rank <= q2.rank { (q1, q2) } else { (q2, q1) };
    match mode {
        MultiQuantifierMode::Coverage => QuantifierChoice::Quantifier(wide.clone()),
        MultiQuantifierMode::Specificity => QuantifierChoice::Quantifier(narrow.clone()),
        MultiQuantifierMode::Default => QuantifierChoice::InGeneral,
    }
}

const PREDOMINANTLY: &str = "predominantly";

fn term_lexeme(lex: &Lexicon, term: &TermRef) -> Lexeme {
    Lexeme::from_lookup(&term.term, lex.plain_word(term))
}

/// "the period was predominantly X" or "<determiner> of the days were X".
fn quantified_clause(lex: &Lexicon, q: &Quantifier, fd: f64, heads: Vec<Lexeme>, id: MessageId) -> PhraseSpec {
    let property = Predicate::Property {
        pre: None,
        heads,
        post: None,
    };
    if lex.is_predominant(&q.name, fd) {
        let Predicate::Property { heads, .. } = property else { unreachable!() };
        return PhraseSpec::new(
            NounPhrase::Entity { id: REPORT_ENTITY },
            vec![Predicate::Property {
                pre: Some(Lexeme::word(PREDOMINANTLY)),
                heads,
                post: None,
            }],
            id,
        );
    }
    let determiner = Lexeme::from_lookup(&q.name, lex.quantifier_words(&q.name).map(|w| w.determiner.as_str()));
    PhraseSpec::new(
        NounPhrase::Quantified {
            determiner,
            range: None,
        },
        vec![property],
        id,
    )
}

fn adverbial(lex: &Lexicon, s: &QuantifiedStatement) -> Predicate {
    let adverb = if lex.is_predominant(&s.quantifier.name, s.fd) {
        Lexeme::word(PREDOMINANTLY)
    } else {
        Lexeme::from_lookup(
            &s.quantifier.name,
            lex.quantifier_words(&s.quantifier.name).map(|w| w.adverb.as_str()),
        )
    };
    Predicate::property(Some(adverb), term_lexeme(lex, &s.summarizer), None)
}

pub fn lexicalize_trend(
    m: &TrendMessage,
    lex: &Lexicon,
    mode: MultiQuantifierMode,
) -> Result<PhraseSpec, LexError> {
    match m.statements.as_slice() {
        [s] => Ok(quantified_clause(lex, &s.quantifier, s.fd, vec![term_lexeme(lex, &s.summarizer)], m.id)),
        [s1, s2] if s1.summarizer == s2.summarizer => {
            let fd = s1.fd.max(s2.fd);
            let head = term_lexeme(lex, &s1.summarizer);
            Ok(match resolve_multi_quantifier(s1, s2, mode) {
                QuantifierChoice::Quantifier(q) => quantified_clause(lex, &q, fd, vec![head], m.id),
                QuantifierChoice::InGeneral => PhraseSpec::new(
                    NounPhrase::Entity { id: REPORT_ENTITY },
                    vec![Predicate::property(None, head, Some(Lexeme::word("in general")))],
                    m.id,
                ),
            })
        }
        [s1, s2] => Ok(PhraseSpec::new(
            NounPhrase::Entity { id: REPORT_ENTITY },
            vec![adverbial(lex, s1), adverbial(lex, s2)],
            m.id,
        )),
        other => Err(LexError::StatementCount {
            variable: m.variable.clone(),
            count: other.len(),
        }),
    }
}

/// Existential sentence introducing the period, plus the entity it mentions.
pub fn lexicalize_period(
    m: &PeriodMessage,
    lex: &Lexicon,
    adjacent_threshold: f64,
) -> Result<(PhraseSpec, DiscourseEntity), LexError> {
    if m.avg_fd.is_nan() || m.avg_fd < crate::content::MIN_PERIOD_FD {
        return Err(LexError::PeriodBelowFloor {
            id: m.id,
            avg_fd: m.avg_fd,
        });
    }
    let (property, noun, band) = match lex.period_wording(&m.term, m.avg_fd, &m.adjacent, adjacent_threshold) {
        Some(w) => (Lexeme::word(w.property), Lexeme::word(w.noun), w.band),
        None => (Lexeme::unmapped(&m.term.term), Lexeme::unmapped("period"), 0),
    };
    let entity = DiscourseEntity {
        id: m.id,
        kind: EntityKind::FuzzyPeriod {
            term: m.term.clone(),
            band,
            start: m.start,
            end: m.end,
            property,
            noun,
        },
        mention_count: 0,
    };
    let spec = PhraseSpec::new(
        NounPhrase::Expletive,
        vec![Predicate::Nominal(NounPhrase::Entity { id: m.id })],
        m.id,
    );
    Ok((spec, entity))
}

pub fn lexicalize_count(m: &CountMessage, _lex: &Lexicon) -> PhraseSpec {
    PhraseSpec::new(
        NounPhrase::Expletive,
        vec![Predicate::Nominal(NounPhrase::Count {
            count: m.count,
            post: Lexeme::word(format!("with {}", m.noun)),
        })],
        m.id,
    )
}

/// Quantifier that best describes a proportion: highest membership, the
/// later (more specific) one on ties.
pub fn best_quantifier(kb: &FuzzyKnowledgeBase, proportion: f64) -> Option<&Quantifier> {
    kb.quantifiers
        .iter()
        .max_by(|a, b| a.mf.evaluate(proportion).total_cmp(&b.mf.evaluate(proportion)))
}

/// "R of the days from X to Y were B" for the period side of a relation.
pub fn lexicalize_relation_clause(
    r: &DiscourseRelation,
    kb: &FuzzyKnowledgeBase,
    lex: &Lexicon,
) -> Result<PhraseSpec, LexError> {
    let p = &r.right;
    let q = best_quantifier(kb, p.avg_fd).ok_or(LexError::NoQuantifier)?;
    let determiner = Lexeme::from_lookup(&q.name, lex.quantifier_words(&q.name).map(|w| w.determiner.as_str()));
    let head = Lexeme::from_lookup(&p.term.term, lex.term_word(&p.term, p.avg_fd));
    Ok(PhraseSpec::new(
        NounPhrase::Quantified {
            determiner,
            range: Some((p.start, p.end)),
        },
        vec![Predicate::property(None, head, None)],
        p.id,
    ))
}

/// Conjunctive statement "Q Xs are A and B" as a single clause.
pub fn lexicalize_conjunctive(s: &QuantifiedStatement, lex: &Lexicon, provenance: Vec<MessageId>) -> PhraseSpec {
    let mut heads = vec![term_lexeme(lex, &s.summarizer)];
    if let Some(c) = &s.conjunct {
        heads.push(term_lexeme(lex, &c.term));
    }
    let mut spec = quantified_clause(lex, &s.quantifier, s.fd, heads, 0);
    spec.provenance = provenance;
    spec
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexOptions {
    pub mode: MultiQuantifierMode,
    pub adjacent_threshold: f64,
}

pub fn lexicalize_plan(
    plan: &DocumentPlan,
    kb: &FuzzyKnowledgeBase,
    lex: &Lexicon,
    opts: &LexOptions,
) -> Result<LexicalizedDocument, LexError> {
    let mut entities = vec![DiscourseEntity::report_period(plan.source_period)];
    let mut paragraphs = Vec::with_capacity(plan.paragraphs.len());
    for para in &plan.paragraphs {
        let mut sentences = Vec::with_capacity(para.nodes.len());
        for node in &para.nodes {
            let sentence = match node {
                PlanNode::Message(Message::Trend(t)) => SentenceSpec::simple(lexicalize_trend(t, lex, opts.mode)?),
                PlanNode::Message(Message::Count(c)) => SentenceSpec::simple(lexicalize_count(c, lex)),
                PlanNode::Message(Message::Period(p)) => {
                    let (spec, entity) = lexicalize_period(p, lex, opts.adjacent_threshold)?;
                    entities.push(entity);
                    SentenceSpec::simple(spec)
                }
                PlanNode::Relation(r) => SentenceSpec {
                    main: lexicalize_trend(&r.left, lex, opts.mode)?,
                    attached: Some((r.kind, lexicalize_relation_clause(r, kb, lex)?)),
                },
            };
            sentences.push(sentence);
        }
        paragraphs.push(LexParagraph {
            role: para.role,
            sentences,
        });
    }
    Ok(LexicalizedDocument { paragraphs, entities })
}
