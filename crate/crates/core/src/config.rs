//! Text form of the configuration bundle: knowledge base, lexicon and
//! report settings in one TOML document.
//!
//! ```toml
//! schema_version = 1
//!
//! [[variable]]
//! name = "temperature"
//! unit = "°C"
//! domain = [-10.0, 40.0]
//! partition = true          # optional, default false
//!
//! [[variable.term]]
//! name = "cold"
//! mf = [0.0, 5.0, 10.0, 13.0]
//! word = "cold"             # plain lexical form
//! hedged = "coldish"        # form used in the hedged band
//! antonym = "hot"           # optional
//! intensifies = "..."       # optional, weaker term of the same family
//!
//! [[quantifier]]
//! name = "most"
//! mf = [0.6, 0.7, 0.85, 0.9]
//! determiner = "most"       # "most of the days"
//! adverb = "mostly"         # "the period was mostly ..."
//!
//! [lexicon]                 # optional
//! [report]                  # optional
//! ```

use serde::Deserialize;

use crate::fuzzy::{MembershipFunction, Tnorm};
use crate::kb::{FuzzyKnowledgeBase, KbError, LinguisticTerm, LinguisticVariable, Quantifier};
use crate::lexicon::{BandForm, FdBand, Lexicon, QuantifierWords, TermWords};
use crate::protoform::{SelectionCriteria, TieBreak};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawKnowledgeBase {
    schema_version: u32,
    #[serde(default)]
    variable: Vec<RawVariable>,
    #[serde(default)]
    quantifier: Vec<RawQuantifier>,
    #[serde(default)]
    lexicon: RawLexicon,
    #[serde(default)]
    report: ReportConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariable {
    name: String,
    unit: String,
    domain: [f64; 2],
    #[serde(default)]
    partition: bool,
    #[serde(default)]
    term: Vec<RawTerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    name: String,
    mf: [f64; 4],
    word: String,
    hedged: String,
    antonym: Option<String>,
    intensifies: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantifier {
    name: String,
    mf: [f64; 4],
    determiner: String,
    adverb: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawLexicon {
    bands: Vec<FdBand>,
    predominant_quantifiers: Vec<String>,
    predominant_threshold: f64,
}

impl Default for RawLexicon {
    fn default() -> Self {
        Self {
            bands: vec![
                FdBand {
                    upper: 0.75,
                    form: BandForm::Hedged,
                    noun: "interval".into(),
                },
                FdBand {
                    upper: 1.0,
                    form: BandForm::Plain,
                    noun: "period".into(),
                },
            ],
            predominant_quantifiers: vec!["nearly all".into()],
            predominant_threshold: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct CountConfig {
    pub variable: String,
    /// Days with a value strictly above this are counted.
    pub above: f64,
    /// Noun for the counted phenomenon ("days with rain").
    pub noun: String,
}

/// Which variables get which treatment, and the thresholds used on the way.
#[derive(Debug, Clone, PartialEq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReportConfig {
    pub trend_variables: Vec<String>,
    pub period_variables: Vec<String>,
    pub count: CountConfig,
    pub min_period_len: usize,
    pub period_fd_floor: f64,
    pub adjacent_threshold: f64,
    /// Drop periods labelled with a term already used by the variable's trend.
    pub skip_trend_terms: bool,
    pub fd_threshold: f64,
    pub coverage_target: f64,
    pub tie_break: TieBreak,
    pub relations: bool,
    /// Combination of the two degrees giving a relation's strength.
    pub relation_strength: Tnorm,
    pub fallback_sentence: String,
}

impl Default for ReportConfig {
    fn default() -> Self {
        let criteria = SelectionCriteria::default();
        Self {
            trend_variables: vec!["temperature".into(), "precipitation".into()],
            period_variables: vec!["temperature".into()],
            count: CountConfig {
                variable: "precipitation".into(),
                above: 0.0,
                noun: "rain".into(),
            },
            min_period_len: 4,
            period_fd_floor: 0.5,
            adjacent_threshold: 0.3,
            skip_trend_terms: false,
            fd_threshold: criteria.fd_threshold,
            coverage_target: criteria.coverage_target,
            tie_break: criteria.tie_break,
            relations: true,
            relation_strength: Tnorm::Minimum,
            fallback_sentence: "No remarkable periods were registered.".into(),
        }
    }
}

impl ReportConfig {
    pub fn criteria(&self) -> SelectionCriteria {
        SelectionCriteria {
            fd_threshold: self.fd_threshold,
            coverage_target: self.coverage_target,
            tie_break: self.tie_break,
        }
    }

    /// Checks every variable the report refers to against the knowledge base.
    pub fn validate(&self, kb: &FuzzyKnowledgeBase) -> Result<(), KbError> {
        for v in self
            .trend_variables
            .iter()
            .chain(&self.period_variables)
            .chain(std::iter::once(&self.count.variable))
        {
            kb.variable(v)?;
        }
        self.criteria().validate().map_err(KbError::Invalid)?;
        if self.min_period_len < 2 {
            return Err(KbError::Invalid("min_period_len must be at least 2".into()));
        }
        for (name, v) in [
            ("period_fd_floor", self.period_fd_floor),
            ("adjacent_threshold", self.adjacent_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(KbError::Invalid(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Knowledge base, lexicon and report settings loaded from one file.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub kb: FuzzyKnowledgeBase,
    pub lexicon: Lexicon,
    pub report: ReportConfig,
}

impl Bundle {
    pub fn parse(source: &str) -> Result<Self, KbError> {
        let raw = parse_raw(source)?;
        let kb = raw.clone().into_kb()?;
        let lexicon = raw.lexicon(&kb)?;
        raw.report.validate(&kb)?;
        Ok(Self {
            kb,
            lexicon,
            report: raw.report,
        })
    }

    /// The knowledge base shipped with the crate.
    pub fn default_bundle() -> Self {
        Self::parse(DEFAULT_KB).expect("shipped knowledge base is valid")
    }
}

pub const DEFAULT_KB: &str = include_str!("../data/default_kb.toml");

pub(crate) fn parse_raw(source: &str) -> Result<RawKnowledgeBase, KbError> {
    let raw: RawKnowledgeBase =
        toml::from_str(source).map_err(|e| KbError::Parse(e.to_string().trim_end().to_string()))?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(KbError::SchemaVersion(raw.schema_version));
    }
    Ok(raw)
}

fn membership(context: String, p: [f64; 4]) -> Result<MembershipFunction, KbError> {
    MembershipFunction::try_from(p).map_err(|source| KbError::Membership { context, source })
}

impl RawKnowledgeBase {
    pub(crate) fn into_kb(self) -> Result<FuzzyKnowledgeBase, KbError> {
        let variables = self
            .variable
            .into_iter()
            .map(|v| {
                let terms = v
                    .term
                    .into_iter()
                    .map(|t| {
                        Ok(LinguisticTerm {
                            mf: membership(format!("term '{}' of '{}'", t.name, v.name), t.mf)?,
                            name: t.name,
                            antonym: t.antonym,
                            intensifies: t.intensifies,
                        })
                    })
                    .collect::<Result<Vec<_>, KbError>>()?;
                Ok(LinguisticVariable {
                    name: v.name,
                    unit: v.unit,
                    domain: (v.domain[0], v.domain[1]),
                    partition: v.partition,
                    terms,
                })
            })
            .collect::<Result<Vec<_>, KbError>>()?;
        let quantifiers = self
            .quantifier
            .into_iter()
            .enumerate()
            .map(|(rank, q)| {
                Ok(Quantifier {
                    mf: membership(format!("quantifier '{}'", q.name), q.mf)?,
                    name: q.name,
                    rank,
                })
            })
            .collect::<Result<Vec<_>, KbError>>()?;
        FuzzyKnowledgeBase::new(variables, quantifiers)
    }

    fn lexicon(&self, kb: &FuzzyKnowledgeBase) -> Result<Lexicon, KbError> {
        let mut lex = Lexicon::new(self.lexicon.bands.clone())?;
        for v in &self.variable {
            for t in &v.term {
                lex.insert_term(
                    &v.name,
                    &t.name,
                    TermWords {
                        plain: t.word.clone(),
                        hedged: t.hedged.clone(),
                    },
                )?;
            }
        }
        for q in &self.quantifier {
            lex.insert_quantifier(
                &q.name,
                QuantifierWords {
                    determiner: q.determiner.clone(),
                    adverb: q.adverb.clone(),
                },
            )?;
        }
        for name in &self.lexicon.predominant_quantifiers {
            kb.quantifier(name)?;
        }
        lex.set_predominant(
            self.lexicon.predominant_quantifiers.clone(),
            self.lexicon.predominant_threshold,
        )?;
        lex.check_complete(kb)?;
        Ok(lex)
    }
}
