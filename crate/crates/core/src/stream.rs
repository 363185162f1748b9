//! Timestamped edge streams, chronological splits and the dataset-difficulty
//! indices (novelty, reoccurrence, surprise).
//!
//! An [`EdgeStream`] is an immutable, time-sorted sequence of [`Edge`]s. Splits
//! are taken by edge index, and every set-valued quantity is computed over
//! distinct [`NodePair`]s, so an interaction repeated a thousand times counts
//! once.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node index assigned at ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identity of an edge with the time dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodePair {
    pub source: NodeId,
    pub destination: NodeId,
}

impl NodePair {
    /// Builds a pair, storing it with `source <= destination` when undirected.
    pub fn new(source: NodeId, destination: NodeId, directed: bool) -> Self {
        if !directed && destination < source {
            NodePair { source: destination, destination: source }
        } else {
            NodePair { source, destination }
        }
    }

    pub fn directed(source: u32, destination: u32) -> Self {
        NodePair { source: NodeId(source), destination: NodeId(destination) }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.destination
    }
}

impl fmt::Display for NodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.source, self.destination)
    }
}

/// One timestamped interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub pair: NodePair,
    pub timestamp: f64,
    pub weight: Option<f64>,
    pub features: Option<Vec<f32>>,
}

impl Edge {
    pub fn new(source: u32, destination: u32, timestamp: f64) -> Self {
        Edge { pair: NodePair::directed(source, destination), timestamp, weight: None, features: None }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_features(mut self, features: Vec<f32>) -> Self {
        self.features = Some(features);
        self
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum StreamError {
    #[error("edge stream is empty")]
    Empty,
    #[error("edge {index} has invalid timestamp {timestamp} (must be finite and >= 0)")]
    InvalidTimestamp { index: usize, timestamp: f64 },
    #[error("edge {index} has {found} features, expected {expected}")]
    FeatureLength { index: usize, expected: usize, found: usize },
    #[error("split ratios {0:?} must be non-negative and sum to 1")]
    InvalidRatios([f64; 3]),
    #[error("stream has {0} edges; a split needs at least 3")]
    TooShortToSplit(usize),
    #[error("split boundaries train_end={train_end}, val_end={val_end} invalid for {len} edges")]
    InvalidBoundaries { train_end: usize, val_end: usize, len: usize },
    #[error("{0} set is empty")]
    EmptySet(&'static str),
}

/// Time-sorted sequence of edges.
///
/// Constructed only through [`EdgeStream::build`], which validates and sorts,
/// so every instance upholds: timestamps are non-decreasing, ties keep their
/// input order, and every node id is below `node_count`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeStream {
    edges: Vec<Edge>,
    node_count: usize,
    directed: bool,
    feature_dim: usize,
    name: String,
}

impl EdgeStream {
    /// Validates and stable-sorts `raw_edges` by timestamp.
    ///
    /// Node ids are taken as already dense: `node_count` is the largest id
    /// plus one. In undirected mode every pair is canonicalized.
    pub fn build(raw_edges: Vec<Edge>, directed: bool) -> Result<Self, StreamError> {
        let node_count = raw_edges
            .iter()
            .map(|e| e.pair.source.index().max(e.pair.destination.index()) + 1)
            .max()
            .ok_or(StreamError::Empty)?;
        Self::build_with_node_count(raw_edges, directed, node_count)
    }

    /// Like [`EdgeStream::build`] but with an explicit node count, for node
    /// spaces that contain isolated nodes. The count is raised if an edge
    /// references a larger id.
    pub fn build_with_node_count(
        mut raw_edges: Vec<Edge>,
        directed: bool,
        node_count: usize,
    ) -> Result<Self, StreamError> {
        if raw_edges.is_empty() {
            return Err(StreamError::Empty);
        }
        let feature_dim = raw_edges[0].features.as_ref().map_or(0, Vec::len);
        let mut max_id = 0usize;
        for (index, edge) in raw_edges.iter_mut().enumerate() {
            if !edge.timestamp.is_finite() || edge.timestamp < 0.0 {
                return Err(StreamError::InvalidTimestamp { index, timestamp: edge.timestamp });
            }
            // -0.0 and 0.0 must group together under bit equality
            if edge.timestamp == 0.0 {
                edge.timestamp = 0.0;
            }
            let found = edge.features.as_ref().map_or(0, Vec::len);
            if found != feature_dim {
                return Err(StreamError::FeatureLength { index, expected: feature_dim, found });
            }
            if !directed {
                edge.pair = NodePair::new(edge.pair.source, edge.pair.destination, false);
            }
            max_id = max_id.max(edge.pair.source.index()).max(edge.pair.destination.index());
        }
        // slice::sort_by is stable
        raw_edges.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));
        Ok(EdgeStream {
            edges: raw_edges,
            node_count: node_count.max(max_id + 1),
            directed,
            feature_dim,
            name: String::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    pub fn first_timestamp(&self) -> f64 {
        self.edges[0].timestamp
    }

    pub fn last_timestamp(&self) -> f64 {
        self.edges[self.edges.len() - 1].timestamp
    }

    /// `last_timestamp - first_timestamp`.
    pub fn duration(&self) -> f64 {
        self.last_timestamp() - self.first_timestamp()
    }

    pub fn unique_pair_count(&self) -> usize {
        self.edges.iter().map(|e| e.pair).collect::<HashSet<_>>().len()
    }

    pub fn unique_timestamp_count(&self) -> usize {
        timestamp_groups(&self.edges).count()
    }
}

/// Splits a time-sorted edge slice into maximal runs sharing one timestamp
/// (compared by bit pattern).
pub(crate) fn timestamp_groups(edges: &[Edge]) -> impl Iterator<Item = &[Edge]> {
    edges.chunk_by(|a, b| a.timestamp.to_bits() == b.timestamp.to_bits())
}

/// Which partition of a [`ChronoSplit`] an edge falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Partition {
    Train,
    Val,
    Test,
}

/// Which edges count as "the past" at test time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
pub enum History {
    /// Training edges only.
    #[default]
    #[serde(rename = "train")]
    Train,
    /// Training and validation edges.
    #[serde(rename = "train+val")]
    TrainVal,
}

impl fmt::Display for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            History::Train => "train",
            History::TrainVal => "train+val",
        })
    }
}

/// Train / validation / test partition of a stream by edge index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChronoSplit {
    /// Exclusive end of the training edges.
    pub train_end: usize,
    /// Exclusive end of the validation edges; the test edges follow.
    pub val_end: usize,
    /// Timestamp of the first test edge (of the last edge if there are no
    /// test edges).
    pub t_split: f64,
    pub ratios: [f64; 3],
    #[serde(skip)]
    len: usize,
}

/// Tolerance on the ratio sum, and slack for representation error when a
/// boundary lands exactly on a half edge.
const RATIO_EPS: f64 = 1e-9;

impl ChronoSplit {
    /// Splits `stream` at `round(r1 * N)` and `round((r1 + r2) * N)`, rounding
    /// halves up.
    ///
    /// ```
    /// use linkeval::{ChronoSplit, Edge, EdgeStream};
    /// let edges = (0..7).map(|i| Edge::new(0, 1, i as f64)).collect();
    /// let stream = EdgeStream::build(edges, true).unwrap();
    /// let split = ChronoSplit::new(&stream, [0.7, 0.15, 0.15]).unwrap();
    /// assert_eq!((split.train_end, split.val_end), (5, 6));
    /// ```
    pub fn new(stream: &EdgeStream, ratios: [f64; 3]) -> Result<Self, StreamError> {
        let sum: f64 = ratios.iter().sum();
        if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) || (sum - 1.0).abs() > RATIO_EPS {
            return Err(StreamError::InvalidRatios(ratios));
        }
        let n = stream.len();
        if n < 3 {
            return Err(StreamError::TooShortToSplit(n));
        }
        let boundary = |fraction: f64| ((fraction * n as f64 + 0.5 + RATIO_EPS).floor() as usize).min(n);
        let train_end = boundary(ratios[0]);
        let val_end = boundary(ratios[0] + ratios[1]).max(train_end);
        let mut split = Self::from_boundaries(stream, train_end, val_end)?;
        split.ratios = ratios;
        Ok(split)
    }

    /// A split with explicit boundaries; `ratios` is filled with the realized
    /// fractions.
    pub fn from_boundaries(stream: &EdgeStream, train_end: usize, val_end: usize) -> Result<Self, StreamError> {
        let len = stream.len();
        if train_end > val_end || val_end > len || len == 0 {
            return Err(StreamError::InvalidBoundaries { train_end, val_end, len });
        }
        let t_split = stream.edges().get(val_end).map_or_else(|| stream.last_timestamp(), |e| e.timestamp);
        let n = len as f64;
        Ok(ChronoSplit {
            train_end,
            val_end,
            t_split,
            ratios: [train_end as f64 / n, (val_end - train_end) as f64 / n, (len - val_end) as f64 / n],
            len,
        })
    }

    pub fn total(&self) -> usize {
        self.len
    }

    pub fn train_len(&self) -> usize {
        self.train_end
    }

    pub fn val_len(&self) -> usize {
        self.val_end - self.train_end
    }

    pub fn test_len(&self) -> usize {
        self.len - self.val_end
    }

    pub fn partition_of(&self, index: usize) -> Partition {
        if index < self.train_end {
            Partition::Train
        } else if index < self.val_end {
            Partition::Val
        } else {
            Partition::Test
        }
    }

    /// Index range of the edges that precede the test span under `history`.
    pub fn history_range(&self, history: History) -> std::ops::Range<usize> {
        match history {
            History::Train => 0..self.train_end,
            History::TrainVal => 0..self.val_end,
        }
    }

    pub fn test_range(&self) -> std::ops::Range<usize> {
        self.val_end..self.len
    }
}

/// Distinct node pairs per partition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeSets {
    pub train_pairs: HashSet<NodePair>,
    pub val_pairs: HashSet<NodePair>,
    pub test_pairs: HashSet<NodePair>,
    pub all_pairs: HashSet<NodePair>,
}

impl EdgeSets {
    pub fn new(stream: &EdgeStream, split: &ChronoSplit) -> Self {
        let mut sets = EdgeSets::default();
        for (index, edge) in stream.edges().iter().enumerate() {
            let target = match split.partition_of(index) {
                Partition::Train => &mut sets.train_pairs,
                Partition::Val => &mut sets.val_pairs,
                Partition::Test => &mut sets.test_pairs,
            };
            target.insert(edge.pair);
            sets.all_pairs.insert(edge.pair);
        }
        sets
    }

    /// Returns a copy in which `train_pairs` holds the history under
    /// `history` (validation pairs merged in for [`History::TrainVal`]).
    pub fn with_history(&self, history: History) -> Self {
        let mut sets = self.clone();
        if history == History::TrainVal {
            sets.train_pairs.extend(sets.val_pairs.iter().copied());
        }
        sets
    }

    /// Pairs seen in train but never in test.
    pub fn train_only(&self) -> HashSet<NodePair> {
        self.train_pairs.difference(&self.test_pairs).copied().collect()
    }

    /// Pairs seen in both train and test.
    pub fn transductive(&self) -> HashSet<NodePair> {
        self.train_pairs.intersection(&self.test_pairs).copied().collect()
    }

    /// Pairs seen in test but never in train.
    pub fn inductive(&self) -> HashSet<NodePair> {
        self.test_pairs.difference(&self.train_pairs).copied().collect()
    }
}

/// Mean over distinct timestamps of the fraction of that timestamp's distinct
/// pairs that never occurred at an earlier timestamp.
pub fn novelty_index(stream: &EdgeStream) -> f64 {
    let mut seen: HashSet<NodePair> = HashSet::new();
    let mut ratio_sum = 0.0;
    let mut steps = 0usize;
    for_each_timestamp(stream, &mut seen, |_, repeated, new| {
        ratio_sum += new as f64 / (new + repeated) as f64;
        steps += 1;
    });
    ratio_sum / steps as f64
}

/// Single chronological pass shared by the novelty index and the TEA series.
/// Calls `visit(t, repeated, new)` once per distinct timestamp, where counts
/// are over distinct pairs at `t` and `seen` holds pairs strictly before `t`.
pub(crate) fn for_each_timestamp(
    stream: &EdgeStream,
    seen: &mut HashSet<NodePair>,
    mut visit: impl FnMut(f64, usize, usize),
) {
    let mut current: HashSet<NodePair> = HashSet::new();
    for group in timestamp_groups(stream.edges()) {
        current.clear();
        current.extend(group.iter().map(|e| e.pair));
        let repeated = current.iter().filter(|p| seen.contains(p)).count();
        let new = current.len() - repeated;
        visit(group[0].timestamp, repeated, new);
        seen.extend(current.drain());
    }
}

/// `|E_train ∩ E_test| / |E_train|` over distinct pairs.
pub fn reoccurrence_index(sets: &EdgeSets) -> Result<f64, StreamError> {
    if sets.train_pairs.is_empty() {
        return Err(StreamError::EmptySet("train"));
    }
    let shared = sets.train_pairs.intersection(&sets.test_pairs).count();
    Ok(shared as f64 / sets.train_pairs.len() as f64)
}

/// `|E_test \ E_train| / |E_test|` over distinct pairs.
pub fn surprise_index(sets: &EdgeSets) -> Result<f64, StreamError> {
    if sets.test_pairs.is_empty() {
        return Err(StreamError::EmptySet("test"));
    }
    let unseen = sets.test_pairs.difference(&sets.train_pairs).count();
    Ok(unseen as f64 / sets.test_pairs.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifficultyIndices {
    pub novelty: f64,
    pub reoccurrence: f64,
    pub surprise: f64,
}

impl DifficultyIndices {
    pub fn compute(stream: &EdgeStream, split: &ChronoSplit, history: History) -> Result<Self, StreamError> {
        let sets = EdgeSets::new(stream, split).with_history(history);
        Ok(DifficultyIndices {
            novelty: novelty_index(stream),
            reoccurrence: reoccurrence_index(&sets)?,
            surprise: surprise_index(&sets)?,
        })
    }
}
