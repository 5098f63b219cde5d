//! Surface realization: phrase specifications to English text.

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicalizer::{Lexeme, LexicalizedDocument, NounPhrase, Number, PhraseSpec, Predicate, SentenceSpec};
use crate::planner::{ParagraphRole, RelationKind};
use crate::referring::{Determination, EntityId, ReferringExpression};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("no lexicon entry for '{0}'")]
    Unmapped(String),
    #[error("clause has no complement")]
    EmptyComplement,
    #[error("entity {0} was never resolved to a referring expression")]
    UnresolvedEntity(EntityId),
    #[error("verb '{0}' is not supported")]
    UnsupportedVerb(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Html,
}

const MONTHS: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// 1st, 2nd, 3rd, 4th, 11th, 12th, 13th, 21st, ...
pub fn ordinal(n: u32) -> String {
    let suffix = match (n % 10, n % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{n}{suffix}")
}

fn day_of_month(d: NaiveDate) -> String {
    format!("the {} of {}", ordinal(d.day()), MONTHS[d.month0() as usize])
}

/// "from the 2nd to the 6th of January", naming both months when they differ.
pub fn date_range(start: NaiveDate, end: NaiveDate) -> String {
    if start == end {
        return format!("on {}", day_of_month(start));
    }
    if (start.year(), start.month()) == (end.year(), end.month()) {
        format!("from the {} to {}", ordinal(start.day()), day_of_month(end))
    } else {
        format!("from {} to {}", day_of_month(start), day_of_month(end))
    }
}

/// "A", "A and B", "A, B and C".
pub fn serial(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {}", init.join(", "), last),
    }
}

fn surface(l: &Lexeme) -> Result<&str, RealizeError> {
    l.surface.as_deref().ok_or_else(|| RealizeError::Unmapped(l.lemma.clone()))
}

fn indefinite_article(next: &str) -> &'static str {
    match next.chars().next() {
        Some(c) if "aeiouAEIOU".contains(c) => "an",
        _ => "a",
    }
}

fn referring_expression(re: &ReferringExpression) -> Result<String, RealizeError> {
    let noun = surface(&re.noun)?;
    let mut head = match &re.property {
        Some(p) => format!("{} {}", surface(p)?, noun),
        None => noun.to_string(),
    };
    if let Some((s, e)) = re.dates {
        head = format!("{head} {}", date_range(s, e));
    }
    Ok(match re.determination {
        Determination::Indefinite => format!("{} {head}", indefinite_article(&head)),
        Determination::Definite => format!("the {head}"),
        Determination::Demonstrative => format!("that {head}"),
    })
}

fn noun_phrase(np: &NounPhrase) -> Result<String, RealizeError> {
    Ok(match np {
        NounPhrase::Literal { text, .. } => text.clone(),
        NounPhrase::Expletive => "there".into(),
        NounPhrase::Quantified { determiner, range } => {
            let base = format!("{} of the days", surface(determiner)?);
            match range {
                Some((s, e)) => format!("{base} {}", date_range(*s, *e)),
                None => base,
            }
        }
        NounPhrase::Count { count, post } => {
            let post = surface(post)?;
            match count {
                0 => format!("no days {post}"),
                1 => format!("1 day {post}"),
                n => format!("{n} days {post}"),
            }
        }
        NounPhrase::Entity { id } => return Err(RealizeError::UnresolvedEntity(*id)),
        NounPhrase::Resolved(re) => referring_expression(re)?,
    })
}

fn predicate(p: &Predicate) -> Result<String, RealizeError> {
    match p {
        Predicate::Property { pre, heads, post } => {
            if heads.is_empty() {
                return Err(RealizeError::EmptyComplement);
            }
            let heads = heads
                .iter()
                .map(|h| surface(h).map(str::to_string))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = serial(&heads);
            if let Some(pre) = pre {
                out = format!("{} {out}", surface(pre)?);
            }
            if let Some(post) = post {
                out = format!("{out} {}", surface(post)?);
            }
            Ok(out)
        }
        Predicate::Nominal(np) => noun_phrase(np),
    }
}

fn subject_number(p: &PhraseSpec) -> Number {
    if p.is_existential() {
        return p
            .complement
            .iter()
            .find_map(|c| match c {
                Predicate::Nominal(np) => Some(np.number()),
                Predicate::Property { .. } => None,
            })
            .unwrap_or(Number::Singular);
    }
    p.subject.number()
}

/// Clause text without capitalization or final punctuation.
pub fn realize_clause(p: &PhraseSpec) -> Result<String, RealizeError> {
    if p.complement.is_empty() {
        return Err(RealizeError::EmptyComplement);
    }
    if p.verb.lemma != "be" {
        return Err(RealizeError::UnsupportedVerb(p.verb.lemma.clone()));
    }
    let verb = match subject_number(p) {
        Number::Singular => "was",
        Number::Plural => "were",
    };
    let complement = p.complement.iter().map(predicate).collect::<Result<Vec<_>, _>>()?;
    let mut out = format!("{} {verb} {}", noun_phrase(&p.subject)?, serial(&complement));
    for m in &p.modifiers {
        out.push(' ');
        out.push_str(surface(m)?);
    }
    Ok(out)
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

pub fn realize_sentence(p: &PhraseSpec) -> Result<String, RealizeError> {
    Ok(format!("{}.", capitalize(&realize_clause(p)?)))
}

pub fn escape_html(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

/// A sentence, with a relation clause joined by ", but" or ", especially".
pub fn realize_sentence_spec(s: &SentenceSpec, format: OutputFormat) -> Result<String, RealizeError> {
    let main = capitalize(&realize_clause(&s.main)?);
    let Some((kind, clause)) = &s.attached else {
        return Ok(match format {
            OutputFormat::Text => format!("{main}."),
            OutputFormat::Html => format!("{}.", escape_html(&main)),
        });
    };
    let clause = realize_clause(clause)?;
    let connective = match kind {
        RelationKind::Contrast => "but",
        RelationKind::Emphasis => "especially",
    };
    Ok(match (format, kind) {
        (OutputFormat::Text, _) => format!("{main}, {connective} {clause}."),
        (OutputFormat::Html, RelationKind::Emphasis) => {
            format!("{}, <em>{connective} {}</em>.", escape_html(&main), escape_html(&clause))
        }
        (OutputFormat::Html, RelationKind::Contrast) => {
            format!("{}, {connective} {}.", escape_html(&main), escape_html(&clause))
        }
    })
}

/// The whole report. An empty extended paragraph gets `fallback`.
pub fn realize_document(
    doc: &LexicalizedDocument,
    format: OutputFormat,
    fallback: &str,
) -> Result<String, RealizeError> {
    let mut paragraphs = Vec::with_capacity(doc.paragraphs.len());
    for para in &doc.paragraphs {
        let sentences = para
            .sentences
            .iter()
            .map(|s| realize_sentence_spec(s, format))
            .collect::<Result<Vec<_>, _>>()?;
        let body = if sentences.is_empty() && para.role == ParagraphRole::Extended {
            match format {
                OutputFormat::Text => fallback.to_string(),
                OutputFormat::Html => escape_html(fallback),
            }
        } else {
            sentences.join(" ")
        };
        paragraphs.push(body);
    }
    Ok(match format {
        OutputFormat::Text => format!("{}\n", paragraphs.join("\n\n")),
        OutputFormat::Html => paragraphs.iter().map(|p| format!("<p>{p}</p>\n")).collect(),
    })
}
