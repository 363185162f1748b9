//! The test-phase evaluation protocol.
//!
//! Test edges are streamed in chronological batches. Each batch gets one
//! negative per positive from the configured sampler, the predictor scores the
//! batch, and only then do the batch's positives become part of the observed
//! past (EdgeBank memory, the inductive pool).
//!
//! Evaluation sets and score files are plain CSV:
//!
//! ```text
//! row_id,kind,source,destination,timestamp,strategy,is_fallback
//! 0,pos,3,17,1862.0,hist,0
//! 1,neg,5,9,1862.0,hist,0
//! ```
//!
//! ```text
//! row_id,score
//! 0,0.93
//! 1,0.12
//! ```

use std::collections::{HashMap, HashSet};
use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::edgebank::{EdgeBankError, EdgeBankMemory, Variant};
use crate::metrics::{EvalRecord, Label, MetricError, MetricReport};
use crate::negsampler::{
    batch_rng, sample_historical, sample_inductive, sample_random, NodeSpace, PairPool, SampleError, SamplerConfig,
    Strategy,
};
use crate::stream::{
    novelty_index, ChronoSplit, DifficultyIndices, EdgeSets, EdgeStream, History, NodeId, NodePair, StreamError,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    EdgeBank(#[from] EdgeBankError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("the split leaves no test edges")]
    EmptyTest,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("scores file has {found} rows but the evaluation set has {expected}")]
    ScoreCount { expected: usize, found: usize },
    #[error("row_id {0} appears more than once")]
    DuplicateRowId(u64),
    #[error("row_id {0} is not in the evaluation set")]
    UnknownRowId(u64),
    #[error("row_id {row_id}: score {score} is outside [0, 1]")]
    ScoreOutOfRange { row_id: u64, score: f64 },
    #[error("evaluation set rows do not alternate pos/neg at row_id {0}")]
    Misaligned(u64),
}

/// Which pairs random draws must avoid besides the batch's own positives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionScope {
    /// Only the positives of the current batch.
    #[default]
    Batch,
    /// Every pair that occurs anywhere in the stream.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub ratios: [f64; 3],
    pub sampler: SamplerConfig,
    pub history: History,
    pub collision: CollisionScope,
}

pub const DEFAULT_RATIOS: [f64; 3] = [0.7, 0.15, 0.15];

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            ratios: DEFAULT_RATIOS,
            sampler: SamplerConfig::default(),
            history: History::Train,
            collision: CollisionScope::Batch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Pos,
    Neg,
}

impl RowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RowKind::Pos => "pos",
            RowKind::Neg => "neg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalSetRow {
    pub row_id: u64,
    pub kind: RowKind,
    pub pair: NodePair,
    pub timestamp: f64,
    pub strategy: Strategy,
    pub is_fallback: bool,
}

impl EvalSetRow {
    pub fn label(&self) -> Label {
        match self.kind {
            RowKind::Pos => Label::Positive,
            RowKind::Neg => Label::Negative,
        }
    }
}

/// Negative counts split by origin, as in the `# Random` / `# Historical`
/// / `# Inductive` columns of a test-phase breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct NegativeTally {
    /// Drawn by random sampling: every negative of a random run, and the
    /// fallback negatives of a pool strategy.
    pub random: usize,
    /// Drawn from the strategy's pool.
    pub strategy: usize,
    pub total: usize,
}

impl NegativeTally {
    pub fn from_rows(rows: &[EvalSetRow]) -> Self {
        let mut tally = NegativeTally::default();
        for row in rows.iter().filter(|r| r.kind == RowKind::Neg) {
            if row.is_fallback {
                tally.random += 1;
            } else {
                tally.strategy += 1;
            }
            tally.total += 1;
        }
        tally
    }
}

/// Positives of the test span interleaved with their negatives:
/// `pos_0, neg_0, pos_1, neg_1, ...`, with `row_id` equal to the position.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalSet {
    pub strategy: Strategy,
    pub batch_size: usize,
    pub rows: Vec<EvalSetRow>,
}

impl EvalSet {
    pub fn generate(stream: &EdgeStream, split: &ChronoSplit, config: &EvalConfig) -> Result<Self, EvalError> {
        let test = &stream.edges()[split.test_range()];
        if test.is_empty() {
            return Err(EvalError::EmptyTest);
        }
        let SamplerConfig { strategy, seed, batch_size } = config.sampler;
        if batch_size == 0 {
            return Err(SampleError::ZeroBatchSize.into());
        }
        let space = NodeSpace { node_count: stream.node_count(), directed: stream.is_directed() };
        let history = PairPool::from_edges(&stream.edges()[split.history_range(config.history)]);
        let exclusion: HashSet<NodePair> = match config.collision {
            CollisionScope::Batch => HashSet::new(),
            CollisionScope::Global => EdgeSets::new(stream, split).all_pairs,
        };
        let mut test_seen = PairPool::new();
        let mut rows = Vec::with_capacity(2 * test.len());

        for (index, positives) in test.chunks(batch_size).enumerate() {
            let mut rng = batch_rng(seed, index as u64);
            let batch = match strategy {
                Strategy::Random => sample_random(positives, space, &exclusion, &mut rng)?,
                Strategy::Historical => sample_historical(positives, &history, space, &exclusion, &mut rng)?,
                Strategy::Inductive => {
                    sample_inductive(positives, history.as_set(), &test_seen, space, &exclusion, &mut rng)?
                }
            };
            for (positive, negative) in positives.iter().zip(&batch.negatives) {
                let row_id = rows.len() as u64;
                rows.push(EvalSetRow {
                    row_id,
                    kind: RowKind::Pos,
                    pair: positive.pair,
                    timestamp: positive.timestamp,
                    strategy,
                    is_fallback: false,
                });
                rows.push(EvalSetRow {
                    row_id: row_id + 1,
                    kind: RowKind::Neg,
                    pair: negative.pair,
                    timestamp: negative.timestamp,
                    strategy,
                    is_fallback: negative.is_fallback,
                });
            }
            if strategy == Strategy::Inductive {
                test_seen.extend(positives.iter().map(|e| e.pair));
            }
        }
        Ok(EvalSet { strategy, batch_size, rows })
    }

    pub fn tally(&self) -> NegativeTally {
        NegativeTally::from_rows(&self.rows)
    }

    /// Row slices of each evaluation batch, in order.
    pub fn batches(&self) -> std::slice::Chunks<'_, EvalSetRow> {
        self.rows.chunks(2 * self.batch_size)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        write_eval_set_csv(&self.rows, out)
    }
}

pub fn write_eval_set_csv<W: Write>(rows: &[EvalSetRow], mut out: W) -> io::Result<()> {
    writeln!(out, "row_id,kind,source,destination,timestamp,strategy,is_fallback")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.row_id,
            r.kind.as_str(),
            r.pair.source,
            r.pair.destination,
            r.timestamp,
            r.strategy,
            u8::from(r.is_fallback)
        )?;
    }
    Ok(())
}

fn format_error(line: usize, message: impl Into<String>) -> EvalError {
    EvalError::Format { line, message: message.into() }
}

fn field<T: std::str::FromStr>(value: &str, line: usize, name: &str) -> Result<T, EvalError> {
    value.trim().parse().map_err(|_| format_error(line, format!("invalid {name} {value:?}")))
}

/// Lines after the header, with 1-based line numbers; blank lines dropped.
fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), EvalError>> {
    reader
        .lines()
        .enumerate()
        .skip(1)
        .map(|(i, line)| line.map(|l| (i + 1, l.trim_end_matches('\r').to_string())).map_err(EvalError::from))
        .filter(|item| !matches!(item, Ok((_, l)) if l.trim().is_empty()))
}

/// Reads an evaluation set and checks that rows alternate pos/neg with
/// strictly increasing ids.
pub fn read_eval_set_csv<R: BufRead>(reader: R) -> Result<Vec<EvalSetRow>, EvalError> {
    let mut rows: Vec<EvalSetRow> = Vec::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        let f: Vec<&str> = text.split(',').collect();
        if f.len() != 7 {
            return Err(format_error(line, format!("expected 7 fields, found {}", f.len())));
        }
        let kind = match f[1].trim() {
            "pos" => RowKind::Pos,
            "neg" => RowKind::Neg,
            other => return Err(format_error(line, format!("invalid kind {other:?}"))),
        };
        let strategy: Strategy = f[5].trim().parse().map_err(|e: String| format_error(line, e))?;
        let is_fallback = match f[6].trim() {
            "0" => false,
            "1" => true,
            other => return Err(format_error(line, format!("invalid is_fallback {other:?}"))),
        };
        let row = EvalSetRow {
            row_id: field(f[0], line, "row_id")?,
            kind,
            pair: NodePair {
                source: NodeId(field(f[2], line, "source")?),
                destination: NodeId(field(f[3], line, "destination")?),
            },
            timestamp: field(f[4], line, "timestamp")?,
            strategy,
            is_fallback,
        };
        if let Some(prev) = rows.last() {
            if row.row_id <= prev.row_id {
                return Err(format_error(line, "row_id must be strictly increasing"));
            }
        }
        let expected = if rows.len().is_multiple_of(2) { RowKind::Pos } else { RowKind::Neg };
        if row.kind != expected {
            return Err(EvalError::Misaligned(row.row_id));
        }
        rows.push(row);
    }
    if rows.len() % 2 == 1 {
        return Err(EvalError::Misaligned(rows[rows.len() - 1].row_id));
    }
    Ok(rows)
}

pub fn write_scores_csv<W: Write>(scores: &[(u64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "row_id,score")?;
    for (row_id, score) in scores {
        writeln!(out, "{row_id},{score}")?;
    }
    Ok(())
}

pub fn read_scores_csv<R: BufRead>(reader: R) -> Result<HashMap<u64, f64>, EvalError> {
    let mut scores = HashMap::new();
    for item in data_lines(reader) {
        let (line, text) = item?;
        let f: Vec<&str> = text.split(',').collect();
        if f.len() != 2 {
            return Err(format_error(line, format!("expected 2 fields, found {}", f.len())));
        }
        let row_id: u64 = field(f[0], line, "row_id")?;
        let score: f64 = field(f[1], line, "score")?;
        if !(0.0..=1.0).contains(&score) {
            return Err(EvalError::ScoreOutOfRange { row_id, score });
        }
        if scores.insert(row_id, score).is_some() {
            return Err(EvalError::DuplicateRowId(row_id));
        }
    }
    Ok(scores)
}

/// Joins external scores onto evaluation rows by `row_id`.
pub fn join_scores(rows: &[EvalSetRow], scores: &HashMap<u64, f64>) -> Result<Vec<EvalRecord>, EvalError> {
    if scores.len() != rows.len() {
        return Err(EvalError::ScoreCount { expected: rows.len(), found: scores.len() });
    }
    let known: HashSet<u64> = rows.iter().map(|r| r.row_id).collect();
    if let Some(&unknown) = scores.keys().filter(|id| !known.contains(id)).min() {
        return Err(EvalError::UnknownRowId(unknown));
    }
    rows.iter()
        .map(|r| {
            let score = scores[&r.row_id];
            let mut record = EvalRecord::new(r.label(), score)?;
            record.is_fallback = r.is_fallback;
            Ok(record)
        })
        .collect()
}

/// Window for the time-window variant: the duration of the test span.
pub fn test_duration(stream: &EdgeStream, split: &ChronoSplit) -> Result<f64, EvalError> {
    let test = &stream.edges()[split.test_range()];
    match (test.first(), test.last()) {
        (Some(first), Some(last)) => Ok(last.timestamp - first.timestamp),
        _ => Err(EvalError::EmptyTest),
    }
}

/// Scores every row of `eval` with EdgeBank.
///
/// The memory starts from the history edges. Each batch is scored first and
/// its positives are added afterwards; negatives never enter the memory.
pub fn edgebank_scores(
    stream: &EdgeStream,
    split: &ChronoSplit,
    eval: &EvalSet,
    variant: Variant,
    history: History,
) -> Result<Vec<EvalRecord>, EvalError> {
    let window = match variant {
        Variant::Infinity => None,
        Variant::TimeWindow => Some(test_duration(stream, split)?),
    };
    score_with_memory(EdgeBankMemory::new(variant, window)?, stream, split, eval, history)
}

/// Runs the score-then-update loop of [`edgebank_scores`] with a caller-built
/// memory, which is first fed the history edges.
pub fn score_with_memory(
    mut memory: EdgeBankMemory,
    stream: &EdgeStream,
    split: &ChronoSplit,
    eval: &EvalSet,
    history: History,
) -> Result<Vec<EvalRecord>, EvalError> {
    memory.update(&stream.edges()[split.history_range(history)])?;

    let test = &stream.edges()[split.test_range()];
    let mut records = Vec::with_capacity(eval.rows.len());
    for (rows, positives) in eval.batches().zip(test.chunks(eval.batch_size)) {
        for row in rows {
            records.push(EvalRecord {
                label: row.label(),
                score: memory.predict(&row.pair, row.timestamp),
                is_fallback: row.is_fallback,
            });
        }
        memory.update(positives)?;
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitSizes {
    pub train: usize,
    pub val: usize,
    pub test: usize,
}

impl From<&ChronoSplit> for SplitSizes {
    fn from(split: &ChronoSplit) -> Self {
        SplitSizes { train: split.train_len(), val: split.val_len(), test: split.test_len() }
    }
}

/// Dataset statistics and difficulty indices for one split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub dataset: String,
    pub directed: bool,
    pub nodes: usize,
    pub total_edges: usize,
    pub unique_edges: usize,
    pub unique_timestamps: usize,
    pub duration: f64,
    pub feature_dim: usize,
    pub ratios: [f64; 3],
    pub history: History,
    /// `None` when the stream is too short to split.
    pub split: Option<SplitSizes>,
    pub t_split: Option<f64>,
    pub novelty: f64,
    /// `None` when the split leaves the train or test span empty.
    pub indices: Option<DifficultyIndices>,
    pub tool_version: &'static str,
}

impl StatsReport {
    /// Whole-stream statistics always succeed; the split-dependent fields
    /// are left empty for streams the split cannot cover. Invalid ratios are
    /// still an error.
    pub fn compute(stream: &EdgeStream, ratios: [f64; 3], history: History) -> Result<Self, EvalError> {
        let split = match ChronoSplit::new(stream, ratios) {
            Ok(split) => Some(split),
            Err(StreamError::TooShortToSplit(_)) => None,
            Err(e) => return Err(e.into()),
        };
        let indices = match split.as_ref().map(|s| DifficultyIndices::compute(stream, s, history)) {
            Some(Ok(indices)) => Some(indices),
            None | Some(Err(StreamError::EmptySet(_))) => None,
            Some(Err(e)) => return Err(e.into()),
        };
        Ok(StatsReport {
            dataset: stream.name().to_string(),
            directed: stream.is_directed(),
            nodes: stream.node_count(),
            total_edges: stream.len(),
            unique_edges: stream.unique_pair_count(),
            unique_timestamps: stream.unique_timestamp_count(),
            duration: stream.duration(),
            feature_dim: stream.feature_dim(),
            ratios,
            history,
            split: split.as_ref().map(SplitSizes::from),
            t_split: split.as_ref().map(|s| s.t_split),
            novelty: novelty_index(stream),
            indices,
            tool_version: TOOL_VERSION,
        })
    }
}

/// Result of one scored evaluation run. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub dataset: String,
    pub predictor: String,
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub batch_size: Option<usize>,
    pub ratios: [f64; 3],
    pub history: History,
    pub collision: Option<CollisionScope>,
    pub split: SplitSizes,
    pub indices: DifficultyIndices,
    pub metrics: MetricReport,
    pub negatives: NegativeTally,
    pub tool_version: &'static str,
}

/// Generates the evaluation set for `config` and scores it with EdgeBank.
pub fn run_edgebank(
    stream: &EdgeStream,
    config: &EvalConfig,
    variant: Variant,
) -> Result<(RunReport, EvalSet), EvalError> {
    let split = ChronoSplit::new(stream, config.ratios)?;
    let eval = EvalSet::generate(stream, &split, config)?;
    let records = edgebank_scores(stream, &split, &eval, variant, config.history)?;
    let report = RunReport {
        dataset: stream.name().to_string(),
        predictor: format!("edgebank_{variant}"),
        strategy: config.sampler.strategy,
        seed: Some(config.sampler.seed),
        batch_size: Some(config.sampler.batch_size),
        ratios: config.ratios,
        history: config.history,
        collision: Some(config.collision),
        split: SplitSizes::from(&split),
        indices: DifficultyIndices::compute(stream, &split, config.history)?,
        metrics: MetricReport::compute(&records)?,
        negatives: eval.tally(),
        tool_version: TOOL_VERSION,
    };
    Ok((report, eval))
}

/// Scores an externally produced score file against an evaluation set.
pub fn run_external(
    stream: &EdgeStream,
    ratios: [f64; 3],
    history: History,
    rows: &[EvalSetRow],
    scores: &HashMap<u64, f64>,
) -> Result<RunReport, EvalError> {
    let split = ChronoSplit::new(stream, ratios)?;
    let records = join_scores(rows, scores)?;
    Ok(RunReport {
        dataset: stream.name().to_string(),
        predictor: "external".to_string(),
        strategy: rows.first().map_or(Strategy::Random, |r| r.strategy),
        seed: None,
        batch_size: None,
        ratios,
        history,
        collision: None,
        split: SplitSizes::from(&split),
        indices: DifficultyIndices::compute(stream, &split, history)?,
        metrics: MetricReport::compute(&records)?,
        negatives: NegativeTally::from_rows(rows),
        tool_version: TOOL_VERSION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::Edge;

    fn fixture() -> EdgeStream {
        // 20 edges over 6 nodes, pairs reoccurring
        let edges = (0..20u32).map(|i| Edge::new(i % 3, 3 + (i % 4) % 3, i as f64)).collect();
        EdgeStream::build(edges, true).unwrap().with_name("fixture")
    }

    fn config(strategy: Strategy) -> EvalConfig {
        EvalConfig { sampler: SamplerConfig { strategy, seed: 9, batch_size: 2 }, ..Default::default() }
    }

    #[test]
    fn rows_alternate_and_balance() {
        let s = fixture();
        let split = ChronoSplit::new(&s, DEFAULT_RATIOS).unwrap();
        for strategy in [Strategy::Random, Strategy::Historical, Strategy::Inductive] {
            let eval = EvalSet::generate(&s, &split, &config(strategy)).unwrap();
            assert_eq!(eval.rows.len(), 2 * split.test_len());
            for (i, row) in eval.rows.iter().enumerate() {
                assert_eq!(row.row_id, i as u64);
                assert_eq!(row.kind, if i % 2 == 0 { RowKind::Pos } else { RowKind::Neg });
            }
            assert_eq!(eval.tally().total, split.test_len());
        }
    }

    #[test]
    fn eval_set_csv_roundtrip() {
        let s = fixture();
        let split = ChronoSplit::new(&s, DEFAULT_RATIOS).unwrap();
        let eval = EvalSet::generate(&s, &split, &config(Strategy::Inductive)).unwrap();
        let mut buf = Vec::new();
        eval.write_csv(&mut buf).unwrap();
        assert_eq!(read_eval_set_csv(buf.as_slice()).unwrap(), eval.rows);
    }

    #[test]
    fn eval_set_csv_rejects_bad_layout() {
        let header = "row_id,kind,source,destination,timestamp,strategy,is_fallback\n";
        let two_pos = format!("{header}0,pos,1,2,3,rnd,0\n1,pos,1,2,3,rnd,0\n");
        assert!(matches!(read_eval_set_csv(two_pos.as_bytes()), Err(EvalError::Misaligned(1))));
        let odd = format!("{header}0,pos,1,2,3,rnd,0\n");
        assert!(matches!(read_eval_set_csv(odd.as_bytes()), Err(EvalError::Misaligned(0))));
        let backwards = format!("{header}5,pos,1,2,3,rnd,0\n4,neg,1,2,3,rnd,0\n");
        assert!(matches!(read_eval_set_csv(backwards.as_bytes()), Err(EvalError::Format { line: 3, .. })));
        let bad_kind = format!("{header}0,maybe,1,2,3,rnd,0\n");
        assert!(matches!(read_eval_set_csv(bad_kind.as_bytes()), Err(EvalError::Format { line: 2, .. })));
    }

    #[test]
    fn score_file_errors() {
        assert!(matches!(
            read_scores_csv("row_id,score\n0,1.5\n".as_bytes()),
            Err(EvalError::ScoreOutOfRange { row_id: 0, .. })
        ));
        assert!(matches!(
            read_scores_csv("row_id,score\n0,0.5\n0,0.1\n".as_bytes()),
            Err(EvalError::DuplicateRowId(0))
        ));
        assert!(matches!(read_scores_csv("row_id,score\n0,x\n".as_bytes()), Err(EvalError::Format { .. })));

        let s = fixture();
        let split = ChronoSplit::new(&s, DEFAULT_RATIOS).unwrap();
        let eval = EvalSet::generate(&s, &split, &config(Strategy::Random)).unwrap();
        let mut scores: HashMap<u64, f64> = eval.rows.iter().map(|r| (r.row_id, 0.5)).collect();
        assert!(join_scores(&eval.rows, &scores).is_ok());
        scores.remove(&0);
        assert!(matches!(join_scores(&eval.rows, &scores), Err(EvalError::ScoreCount { .. })));
        scores.insert(999, 0.5);
        assert!(matches!(join_scores(&eval.rows, &scores), Err(EvalError::UnknownRowId(999))));
    }

    #[test]
    fn edgebank_scores_then_updates() {
        // history: 0->1 ; test batch 1: 2->3 ; test batch 2: 2->3 again
        let edges = vec![Edge::new(0, 1, 0.0), Edge::new(0, 1, 1.0), Edge::new(2, 3, 2.0), Edge::new(2, 3, 3.0)];
        let s = EdgeStream::build(edges, true).unwrap();
        let split = ChronoSplit::from_boundaries(&s, 2, 2).unwrap();
        let cfg = EvalConfig {
            sampler: SamplerConfig { strategy: Strategy::Historical, seed: 1, batch_size: 1 },
            ..Default::default()
        };
        let eval = EvalSet::generate(&s, &split, &cfg).unwrap();
        let records = edgebank_scores(&s, &split, &eval, Variant::Infinity, History::Train).unwrap();
        let scores: Vec<f64> = records.iter().map(|r| r.score).collect();
        // pos 2->3 unseen at first, seen in the second batch; negatives are the
        // remembered history pair 0->1
        assert_eq!(scores, vec![0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn empty_test_is_an_error() {
        let s = fixture();
        let split = ChronoSplit::new(&s, [0.5, 0.5, 0.0]).unwrap();
        assert!(matches!(EvalSet::generate(&s, &split, &EvalConfig::default()), Err(EvalError::EmptyTest)));
    }
}
