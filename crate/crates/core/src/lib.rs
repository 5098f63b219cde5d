//! Fuzzy data-to-text generation for daily weather reports.
//!
//! Observations are summarized with fuzzy quantified statements ("nearly all
//! days were cold"), then turned into text by a classic generation pipeline:
//! content determination, document planning, lexicalization, aggregation,
//! referring expressions and realization.
//!
//! ```
//! use fuzzy_d2t::{config::Bundle, pipeline};
//!
//! let bundle = Bundle::default_bundle();
//! let csv = "date,temperature,precipitation\n\
//!            2017-01-01,6,0\n2017-01-02,7,1.5\n2017-01-03,8,0\n2017-01-04,7,0\n";
//! let report = pipeline::generate_report(&bundle, csv, &Default::default()).unwrap();
//! assert!(report.starts_with("The period was predominantly cold"));
//! ```

pub mod aggregator;
pub mod config;
pub mod content;
pub mod fuzzy;
pub mod ingest;
pub mod kb;
pub mod lexicalizer;
pub mod lexicon;
pub mod pipeline;
pub mod planner;
pub mod protoform;
pub mod realizer;
pub mod referring;

pub use config::Bundle;
pub use fuzzy::{MembershipFunction, OwaWeights, Tconorm, Tnorm};
pub use kb::{load_kb, FuzzyKnowledgeBase, LinguisticTerm, LinguisticVariable, Quantifier, TermRef};
pub use pipeline::{run, PipelineError, PipelineOptions, PipelineOutput};
pub use protoform::{evaluate_type1, evaluate_type2, DataSeries, QuantifiedStatement, SelectionCriteria};
