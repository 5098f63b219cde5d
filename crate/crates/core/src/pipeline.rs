//! End-to-end report generation: content determination, document
//! planning, lexicalization, aggregation, referring expressions, realization.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::aggregator::{
    aggregate_document, compare_aggregation_paths, content_level_conjunction, AggregationComparison, AggregationPath,
    TermSeries,
};
use crate::config::Bundle;
use crate::content::{build_content_plan, ContentError, Message};
use crate::fuzzy::Tnorm;
use crate::ingest::{load_observations, read_observations, ObservationTable};
use crate::lexicalizer::{lexicalize_conjunctive, lexicalize_plan, LexError, LexOptions, LexicalizedDocument, MultiQuantifierMode, SentenceSpec};
use crate::planner::{annotate_relations, plan_document, DocumentPlan, PlanNode};
use crate::protoform::{enumerate_candidates, select_statements, ProtoformError, QuantifiedStatement};
use crate::realizer::{realize_document, realize_sentence_spec, OutputFormat};
use crate::referring::resolve_references;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Configuration,
    Ingestion,
    ContentDetermination,
    DocumentPlanning,
    Lexicalization,
    Aggregation,
    ReferringExpressions,
    Realization,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Configuration => "configuration",
            Stage::Ingestion => "ingestion",
            Stage::ContentDetermination => "content-determination",
            Stage::DocumentPlanning => "document-planning",
            Stage::Lexicalization => "lexicalization",
            Stage::Aggregation => "aggregation",
            Stage::ReferringExpressions => "referring-expressions",
            Stage::Realization => "realization",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input data or configuration.
    Validation,
    /// A stage produced something a later stage cannot accept.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("error [{stage}]: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub class: ErrorClass,
    pub message: String,
}

impl PipelineError {
    fn validation(stage: Stage, e: impl fmt::Display) -> Self {
        Self {
            stage,
            class: ErrorClass::Validation,
            message: e.to_string(),
        }
    }

    fn internal(stage: Stage, e: impl fmt::Display) -> Self {
        Self {
            stage,
            class: ErrorClass::Internal,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PipelineOptions {
    pub format: OutputFormat,
    pub aggregation: AggregationPath,
    pub mode: MultiQuantifierMode,
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub stage: Stage,
    pub value: serde_json::Value,
}

impl TraceRecord {
    /// One line of JSON: `{"stage": ..., "value": ...}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("trace values are plain JSON")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub report: String,
    /// Present for [`AggregationPath::Both`] when two trends can be joined.
    pub comparison: Option<AggregationComparison>,
    pub trace: Vec<TraceRecord>,
}

/// Loads a configuration bundle, or the shipped one when `path` is `None`.
pub fn load_bundle(path: Option<&Path>) -> Result<Bundle, PipelineError> {
    let Some(path) = path else {
        return Ok(Bundle::default_bundle());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| PipelineError::validation(Stage::Configuration, format!("cannot read {}: {e}", path.display())))?;
    Bundle::parse(&text).map_err(|e| PipelineError::validation(Stage::Configuration, e))
}

/// Variables the report cannot do without.
pub fn required_variables(bundle: &Bundle) -> Vec<String> {
    let r = &bundle.report;
    let mut vars: Vec<String> = r
        .trend_variables
        .iter()
        .chain(&r.period_variables)
        .chain(std::iter::once(&r.count.variable))
        .cloned()
        .collect();
    vars.sort();
    vars.dedup();
    vars
}

pub fn load_table(bundle: &Bundle, path: &Path) -> Result<ObservationTable, PipelineError> {
    load_observations(path, &bundle.kb, &required_variables(bundle))
        .map_err(|e| PipelineError::validation(Stage::Ingestion, e))
}

pub fn parse_table(bundle: &Bundle, csv_text: &str) -> Result<ObservationTable, PipelineError> {
    read_observations(csv_text.as_bytes(), &bundle.kb, &required_variables(bundle))
        .map_err(|e| PipelineError::validation(Stage::Ingestion, e))
}

fn content_error(e: ContentError) -> PipelineError {
    match e {
        ContentError::Protoform(ProtoformError::NoCandidates) => {
            PipelineError::internal(Stage::ContentDetermination, e)
        }
        e => PipelineError::validation(Stage::ContentDetermination, e),
    }
}

fn lex_error(e: LexError) -> PipelineError {
    match e {
        LexError::StatementCount { .. } => PipelineError::validation(Stage::Lexicalization, e),
        e => PipelineError::internal(Stage::Lexicalization, e),
    }
}

fn trace<T: Serialize>(records: &mut Vec<TraceRecord>, enabled: bool, stage: Stage, value: &T) {
    if enabled {
        records.push(TraceRecord {
            stage,
            value: serde_json::to_value(value).expect("plan types serialize"),
        });
    }
}

/// The two trends joined by the content path, and their conjunction.
struct ContentJoin {
    index: usize,
    statement: QuantifiedStatement,
    provenance: Vec<usize>,
}

/// Looks for the first two adjacent plain trend nodes of the general
/// paragraph and picks the quantifier under which "A and B" holds best.
fn content_join(plan: &DocumentPlan, bundle: &Bundle, table: &ObservationTable) -> Result<Option<ContentJoin>, PipelineError> {
    let nodes = &plan.general().nodes;
    let Some(index) = nodes.windows(2).position(|w| {
        matches!(
            w,
            [PlanNode::Message(Message::Trend(_)), PlanNode::Message(Message::Trend(_))]
        )
    }) else {
        return Ok(None);
    };
    let (PlanNode::Message(Message::Trend(t1)), PlanNode::Message(Message::Trend(t2))) = (&nodes[index], &nodes[index + 1]) else {
        unreachable!()
    };
    let kb = &bundle.kb;
    let agg = |e: &dyn fmt::Display| PipelineError::validation(Stage::Aggregation, e);
    let (ra, rb) = (&t1.dominant().summarizer, &t2.dominant().summarizer);
    let (sa, sb) = (
        table.series(kb, &t1.variable).map_err(|e| agg(&e))?,
        table.series(kb, &t2.variable).map_err(|e| agg(&e))?,
    );
    let a = TermSeries {
        term: ra,
        def: kb.term(ra).map_err(|e| agg(&e))?,
        series: &sa,
    };
    let b = TermSeries {
        term: rb,
        def: kb.term(rb).map_err(|e| agg(&e))?,
        series: &sb,
    };
    let mut best: Option<QuantifiedStatement> = None;
    for q in &kb.quantifiers {
        let s = content_level_conjunction(q, a, b, Tnorm::Minimum).map_err(|e| agg(&e))?;
        if best.as_ref().is_none_or(|b| s.fd >= b.fd) {
            best = Some(s);
        }
    }
    Ok(best.filter(|s| s.fd > 0.0).map(|statement| ContentJoin {
        index,
        statement,
        provenance: vec![t1.id, t2.id],
    }))
}

fn resolve_and_realize(
    doc: LexicalizedDocument,
    bundle: &Bundle,
    format: OutputFormat,
    records: &mut Vec<TraceRecord>,
    tracing: bool,
) -> Result<(LexicalizedDocument, String), PipelineError> {
    let doc = resolve_references(doc).map_err(|e| PipelineError::internal(Stage::ReferringExpressions, e))?;
    trace(records, tracing, Stage::ReferringExpressions, &doc);
    let text = realize_document(&doc, format, &bundle.report.fallback_sentence)
        .map_err(|e| PipelineError::internal(Stage::Realization, e))?;
    Ok((doc, text))
}

fn sentence_with(doc: &LexicalizedDocument, id: usize) -> Option<&SentenceSpec> {
    doc.paragraphs
        .iter()
        .flat_map(|p| &p.sentences)
        .find(|s| s.provenance().contains(&id))
}

pub fn run(bundle: &Bundle, table: &ObservationTable, opts: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let mut records = Vec::new();
    let tracing = opts.trace;
    let kb = &bundle.kb;

    let cp = build_content_plan(kb, &bundle.report, table).map_err(content_error)?;
    trace(&mut records, tracing, Stage::ContentDetermination, &cp);

    let mut plan = plan_document(&cp);
    if bundle.report.relations {
        plan = annotate_relations(plan, kb, bundle.report.relation_strength);
    }
    trace(&mut records, tracing, Stage::DocumentPlanning, &plan);

    let lex_opts = LexOptions {
        mode: opts.mode,
        adjacent_threshold: bundle.report.adjacent_threshold,
    };
    let lexicalized = lexicalize_plan(&plan, kb, &bundle.lexicon, &lex_opts).map_err(lex_error)?;
    trace(&mut records, tracing, Stage::Lexicalization, &lexicalized);

    let join = match opts.aggregation {
        AggregationPath::Structural => None,
        AggregationPath::Content | AggregationPath::Both => content_join(&plan, bundle, table)?,
    };
    let content_doc = join.as_ref().map(|j| {
        let mut doc = lexicalized.clone();
        let general = &mut doc.paragraphs[0].sentences;
        general.splice(
            j.index..j.index + 2,
            [SentenceSpec::simple(lexicalize_conjunctive(&j.statement, &bundle.lexicon, j.provenance.clone()))],
        );
        doc
    });
    let structural_doc = aggregate_document(lexicalized);

    let (primary, secondary) = match (opts.aggregation, content_doc) {
        (AggregationPath::Content, Some(doc)) => (doc, None),
        (AggregationPath::Both, Some(doc)) => (structural_doc, Some(doc)),
        (_, _) => (structural_doc, None),
    };
    trace(&mut records, tracing, Stage::Aggregation, &primary);

    let (resolved, report) = resolve_and_realize(primary, bundle, opts.format, &mut records, tracing)?;

    let comparison = match (secondary, join) {
        (Some(content_doc), Some(j)) => {
            let content_doc = resolve_references(content_doc).map_err(|e| PipelineError::internal(Stage::ReferringExpressions, e))?;
            let sentence = |doc: &LexicalizedDocument| -> Result<String, PipelineError> {
                let s = sentence_with(doc, j.provenance[0])
                    .ok_or_else(|| PipelineError::internal(Stage::Aggregation, "joined trend vanished from the document"))?;
                realize_sentence_spec(s, OutputFormat::Text).map_err(|e| PipelineError::internal(Stage::Realization, e))
            };
            let a = &j.statement.summarizer;
            let b = &j.statement.conjunct.as_ref().expect("conjunctive").term;
            let agg = |e: &dyn fmt::Display| PipelineError::validation(Stage::Aggregation, e);
            let (sa, sb) = (
                table.series(kb, &a.variable).map_err(|e| agg(&e))?,
                table.series(kb, &b.variable).map_err(|e| agg(&e))?,
            );
            Some(
                compare_aggregation_paths(
                    &j.statement.quantifier,
                    TermSeries {
                        term: a,
                        def: kb.term(a).map_err(|e| agg(&e))?,
                        series: &sa,
                    },
                    TermSeries {
                        term: b,
                        def: kb.term(b).map_err(|e| agg(&e))?,
                        series: &sb,
                    },
                    sentence(&resolved)?,
                    sentence(&content_doc)?,
                )
                .map_err(|e| agg(&e))?,
            )
        }
        _ => None,
    };

    Ok(PipelineOutput {
        report,
        comparison,
        trace: records,
    })
}

/// Convenience wrapper: CSV text in, report out.
pub fn generate_report(bundle: &Bundle, csv_text: &str, opts: &PipelineOptions) -> Result<String, PipelineError> {
    let table = parse_table(bundle, csv_text)?;
    Ok(run(bundle, &table, opts)?.report)
}

/// Tab-separated candidate statements for every trend variable, with the
/// selected ones marked.
pub fn candidate_table(bundle: &Bundle, table: &ObservationTable) -> Result<String, PipelineError> {
    let mut out = String::from("variable\tquantifier\tterm\tfd\tcoverage\tselected\n");
    let criteria = bundle.report.criteria();
    for v in &bundle.report.trend_variables {
        let xs = table.series(&bundle.kb, v).map_err(|e| PipelineError::validation(Stage::Ingestion, e))?;
        let cands = enumerate_candidates(&bundle.kb, v, &xs).map_err(|e| content_error(e.into()))?;
        let selection = select_statements(&cands, &criteria).map_err(|e| content_error(e.into()))?;
        for c in &cands {
            let selected = selection
                .statements
                .iter()
                .any(|s| s.quantifier.name == c.quantifier.name && s.summarizer == c.summarizer);
            out.push_str(&format!(
                "{}\t{}\t{}\t{:.6}\t{:.6}\t{}\n",
                v,
                c.quantifier.name,
                c.summarizer.term,
                c.fd,
                c.coverage,
                if selected { "yes" } else { "no" }
            ));
        }
    }
    Ok(out)
}
