//! Lexical resources: word forms per fulfillment-degree band, quantifier
//! words and the rules deciding between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::kb::{FuzzyKnowledgeBase, KbError, TermRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandForm {
    Plain,
    Hedged,
}

/// A band owns the degrees in `(previous upper, upper]`; the first band
/// starts at zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FdBand {
    pub upper: f64,
    pub form: BandForm,
    /// Head noun for periods described in this band.
    pub noun: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermWords {
    pub plain: String,
    pub hedged: String,
}

impl TermWords {
    pub fn form(&self, form: BandForm) -> &str {
        match form {
            BandForm::Plain => &self.plain,
            BandForm::Hedged => &self.hedged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantifierWords {
    /// Used as "<determiner> of the days".
    pub determiner: String,
    /// Used as "the period was <adverb> <word>".
    pub adverb: String,
}

/// Property word and head noun chosen for a fuzzy period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodWording {
    pub property: String,
    pub noun: String,
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lexicon {
    bands: Vec<FdBand>,
    terms: BTreeMap<String, BTreeMap<String, TermWords>>,
    quantifiers: BTreeMap<String, QuantifierWords>,
    predominant_quantifiers: Vec<String>,
    predominant_threshold: f64,
}

impl Lexicon {
    pub fn new(bands: Vec<FdBand>) -> Result<Self, KbError> {
        let bad = |m: &str| Err(KbError::Invalid(format!("lexicon bands: {m}")));
        if bands.is_empty() {
            return bad("at least one band is required");
        }
        let mut prev = 0.0;
        for b in &bands {
            if b.upper.is_nan() || b.upper <= prev {
                return bad("upper bounds must increase strictly from 0");
            }
            if b.noun.trim().is_empty() {
                return bad("band noun must not be empty");
            }
            prev = b.upper;
        }
        if prev != 1.0 {
            return bad("the last band must end at 1");
        }
        Ok(Self {
            bands,
            terms: BTreeMap::new(),
            quantifiers: BTreeMap::new(),
            predominant_quantifiers: Vec::new(),
            predominant_threshold: 0.8,
        })
    }

    pub fn insert_term(&mut self, variable: &str, term: &str, words: TermWords) -> Result<(), KbError> {
        if words.plain.trim().is_empty() || words.hedged.trim().is_empty() {
            return Err(KbError::Invalid(format!(
                "term '{term}' of '{variable}' needs both a plain and a hedged word"
            )));
        }
        self.terms
            .entry(variable.to_string())
            .or_default()
            .insert(term.to_string(), words);
        Ok(())
    }

    pub fn insert_quantifier(&mut self, name: &str, words: QuantifierWords) -> Result<(), KbError> {
        if words.determiner.trim().is_empty() || words.adverb.trim().is_empty() {
            return Err(KbError::Invalid(format!(
                "quantifier '{name}' needs a determiner and an adverb"
            )));
        }
        self.quantifiers.insert(name.to_string(), words);
        Ok(())
    }

    pub fn set_predominant(&mut self, quantifiers: Vec<String>, threshold: f64) -> Result<(), KbError> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(KbError::Invalid("predominant_threshold must lie in [0, 1]".into()));
        }
        self.predominant_quantifiers = quantifiers;
        self.predominant_threshold = threshold;
        Ok(())
    }

    /// Every knowledge-base term and quantifier must have lexical entries.
    pub fn check_complete(&self, kb: &FuzzyKnowledgeBase) -> Result<(), KbError> {
        for v in kb.variables.values() {
            for t in &v.terms {
                if self.term_words(&v.name, &t.name).is_none() {
                    return Err(KbError::Invalid(format!(
                        "no lexicon entry for term '{}' of '{}'",
                        t.name, v.name
                    )));
                }
            }
        }
        for q in &kb.quantifiers {
            if self.quantifier_words(&q.name).is_none() {
                return Err(KbError::Invalid(format!("no lexicon entry for quantifier '{}'", q.name)));
            }
        }
        Ok(())
    }

    pub fn bands(&self) -> &[FdBand] {
        &self.bands
    }

    /// Band owning `fd`, or `None` outside `(0, 1]`.
    pub fn band_index(&self, fd: f64) -> Option<usize> {
        if !(fd > 0.0 && fd <= 1.0) {
            return None;
        }
        self.bands.iter().position(|b| fd <= b.upper)
    }

    pub fn band(&self, fd: f64) -> Option<&FdBand> {
        self.band_index(fd).map(|i| &self.bands[i])
    }

    pub fn term_words(&self, variable: &str, term: &str) -> Option<&TermWords> {
        self.terms.get(variable)?.get(term)
    }

    /// Band-dependent word for a term at degree `fd`.
    pub fn term_word(&self, term: &TermRef, fd: f64) -> Option<&str> {
        let band = self.band(fd)?;
        Some(self.term_words(&term.variable, &term.term)?.form(band.form))
    }

    pub fn plain_word(&self, term: &TermRef) -> Option<&str> {
        Some(&self.term_words(&term.variable, &term.term)?.plain)
    }

    pub fn quantifier_words(&self, name: &str) -> Option<&QuantifierWords> {
        self.quantifiers.get(name)
    }

    /// Whether a quantified statement is rendered with the predominance adverb.
    pub fn is_predominant(&self, quantifier: &str, fd: f64) -> bool {
        fd >= self.predominant_threshold - crate::fuzzy::DEGREE_EPS
            && self.predominant_quantifiers.iter().any(|q| q == quantifier)
    }

    /// Wording of a period labelled `term` with average degree `avg_fd`.
    ///
    /// The strongest neighbouring term at or above `adjacent_threshold`
    /// turns the property into a combined hedge such as "warm/coldish".
    pub fn period_wording(
        &self,
        term: &TermRef,
        avg_fd: f64,
        adjacent: &[(TermRef, f64)],
        adjacent_threshold: f64,
    ) -> Option<PeriodWording> {
        let band = self.band_index(avg_fd)?;
        let words = self.term_words(&term.variable, &term.term)?;
        let neighbour = adjacent
            .iter()
            .filter(|(_, fd)| *fd >= adjacent_threshold)
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.rank.cmp(&a.0.rank)));
        let property = match neighbour {
            Some((adj, _)) => {
                let adj_words = self.term_words(&adj.variable, &adj.term)?;
                format!("{}/{}", words.plain, adj_words.hedged)
            }
            None => words.form(self.bands[band].form).to_string(),
        };
        Some(PeriodWording {
            property,
            noun: self.bands[band].noun.clone(),
            band,
        })
    }
}
