//! Evaluation toolkit for dynamic link prediction on timestamped edge streams.
//!
//! The crate covers the whole evaluation loop:
//!
//! * [`stream`]: edge streams, chronological splits and the novelty,
//!   reoccurrence and surprise indices.
//! * [`ingest`]: interaction CSV and plain edge-list parsing.
//! * [`edgebank`]: the unbounded and time-window memorization baselines.
//! * [`negsampler`]: random, historical and inductive negative sampling.
//! * [`metrics`]: AU-ROC, AP, AU-PR and threshold metrics.
//! * [`plots`]: TEA and TET plot data, SVG and CSV output.
//! * [`protocol`]: batched test-phase evaluation and run reports.
//!
//! ```
//! use linkeval::{ChronoSplit, Edge, EdgeStream, EvalConfig, Variant};
//!
//! let edges = (0..40u32).map(|i| Edge::new(i % 4, 4 + i % 3, i as f64)).collect();
//! let stream = EdgeStream::build(edges, true).unwrap();
//! let (report, eval) = linkeval::protocol::run_edgebank(&stream, &EvalConfig::default(), Variant::Infinity).unwrap();
//! assert_eq!(eval.rows.len(), 2 * report.split.test);
//! assert!((0.0..=1.0).contains(&report.metrics.au_roc));
//! ```

pub mod edgebank;
pub mod ingest;
pub mod metrics;
pub mod negsampler;
pub mod plots;
pub mod protocol;
pub mod stream;

pub use edgebank::{EdgeBankMemory, Variant};
pub use ingest::{Format, ParseReport};
pub use metrics::{EvalRecord, Label, MetricReport};
pub use negsampler::{SamplerConfig, Strategy};
pub use protocol::{CollisionScope, EvalConfig, EvalSet, RunReport};
pub use stream::{ChronoSplit, DifficultyIndices, Edge, EdgeSets, EdgeStream, History, NodeId, NodePair};
