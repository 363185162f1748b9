//! Negative edge sampling for evaluation batches.
//!
//! Three strategies:
//!
//! * **random**: keep each positive's source and timestamp and draw a new
//!   destination uniformly from all nodes, rejecting self-loops and pairs that
//!   are positives of the same batch (accept-reject).
//! * **historical**: draw whole pairs, without replacement, from the history
//!   pairs that are not positives of the current batch.
//! * **inductive**: draw whole pairs from the test-only pairs already streamed
//!   in earlier test batches, minus history pairs and current positives.
//!
//! When a pool is smaller than the batch, the remaining slots are filled by
//! random sampling and tagged as fallback.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stream::{Edge, NodeId, NodePair};

/// Rejection budget per requested negative.
pub const DRAWS_PER_NEGATIVE: usize = 1000;

pub const DEFAULT_BATCH_SIZE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "rnd")]
    Random,
    #[serde(rename = "hist")]
    Historical,
    #[serde(rename = "induc")]
    Inductive,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Random => "rnd",
            Strategy::Historical => "hist",
            Strategy::Inductive => "induc",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rnd" | "random" => Ok(Strategy::Random),
            "hist" | "historical" => Ok(Strategy::Historical),
            "induc" | "inductive" => Ok(Strategy::Inductive),
            other => Err(format!("unknown strategy {other:?} (expected rnd, hist or induc)")),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("random sampling needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("no valid destination found after {draws} draws for {requested} negatives")]
    Exhausted { draws: usize, requested: usize },
    #[error("batch size must be at least 1")]
    ZeroBatchSize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub strategy: Strategy,
    pub seed: u64,
    pub batch_size: usize,
}

impl SamplerConfig {
    pub fn new(strategy: Strategy, seed: u64, batch_size: usize) -> Result<Self, SampleError> {
        if batch_size == 0 {
            return Err(SampleError::ZeroBatchSize);
        }
        Ok(SamplerConfig { strategy, seed, batch_size })
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { strategy: Strategy::Random, seed: 0, batch_size: DEFAULT_BATCH_SIZE }
    }
}

/// The space random destinations are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeSpace {
    pub node_count: usize,
    pub directed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negative {
    pub pair: NodePair,
    pub timestamp: f64,
    /// Drawn by random sampling rather than from the strategy's pool.
    pub is_fallback: bool,
}

/// Negatives aligned one-to-one with a batch of positives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NegativeBatch {
    pub negatives: Vec<Negative>,
    pub fallback_count: usize,
}

/// Insertion-ordered set of pairs. Sampling indexes into the order, so draws
/// are reproducible across processes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairPool {
    order: Vec<NodePair>,
    members: HashSet<NodePair>,
}

impl PairPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: &[Edge]) -> Self {
        let mut pool = Self::new();
        pool.extend(edges.iter().map(|e| e.pair));
        pool
    }

    pub fn insert(&mut self, pair: NodePair) -> bool {
        let fresh = self.members.insert(pair);
        if fresh {
            self.order.push(pair);
        }
        fresh
    }

    pub fn contains(&self, pair: &NodePair) -> bool {
        self.members.contains(pair)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NodePair> {
        self.order.iter()
    }

    pub fn as_set(&self) -> &HashSet<NodePair> {
        &self.members
    }
}

impl Extend<NodePair> for PairPool {
    fn extend<I: IntoIterator<Item = NodePair>>(&mut self, iter: I) {
        for pair in iter {
            self.insert(pair);
        }
    }
}

/// Generator for one batch, derived from the run seed and the batch index so
/// any batch can be regenerated independently.
pub fn batch_rng(seed: u64, batch_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(batch_index)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn batch_pairs(positives: &[Edge]) -> HashSet<NodePair> {
    positives.iter().map(|e| e.pair).collect()
}

/// Random negatives for `positives`: same source and timestamp, uniform
/// destination. A candidate is redrawn when it is a self-loop, a positive of
/// this batch, or a member of `exclusion`.
pub fn sample_random<R: Rng>(
    positives: &[Edge],
    space: NodeSpace,
    exclusion: &HashSet<NodePair>,
    rng: &mut R,
) -> Result<NegativeBatch, SampleError> {
    let in_batch = batch_pairs(positives);
    let negatives = draw_random(positives, space, &in_batch, exclusion, rng)?;
    Ok(NegativeBatch { fallback_count: negatives.len(), negatives })
}

fn draw_random<R: Rng>(
    positives: &[Edge],
    space: NodeSpace,
    in_batch: &HashSet<NodePair>,
    exclusion: &HashSet<NodePair>,
    rng: &mut R,
) -> Result<Vec<Negative>, SampleError> {
    if positives.is_empty() {
        return Ok(Vec::new());
    }
    if space.node_count < 2 {
        return Err(SampleError::TooFewNodes(space.node_count));
    }
    let budget = DRAWS_PER_NEGATIVE * positives.len();
    let mut draws = 0usize;
    let mut negatives = Vec::with_capacity(positives.len());
    for positive in positives {
        let source = positive.pair.source;
        let pair = loop {
            if draws == budget {
                return Err(SampleError::Exhausted { draws, requested: positives.len() });
            }
            draws += 1;
            let destination = NodeId(rng.gen_range(0..space.node_count) as u32);
            if destination == source {
                continue;
            }
            let candidate = NodePair::new(source, destination, space.directed);
            if !in_batch.contains(&candidate) && !exclusion.contains(&candidate) {
                break candidate;
            }
        };
        negatives.push(Negative { pair, timestamp: positive.timestamp, is_fallback: true });
    }
    Ok(negatives)
}

/// Fills slots from `candidates` without replacement, then tops up the rest
/// with random negatives.
fn fill_from_pool<R: Rng>(
    positives: &[Edge],
    candidates: Vec<NodePair>,
    space: NodeSpace,
    in_batch: &HashSet<NodePair>,
    exclusion: &HashSet<NodePair>,
    rng: &mut R,
) -> Result<NegativeBatch, SampleError> {
    let take = candidates.len().min(positives.len());
    let mut negatives: Vec<Negative> = index::sample(rng, candidates.len(), take)
        .into_iter()
        .zip(positives)
        .map(|(i, positive)| Negative { pair: candidates[i], timestamp: positive.timestamp, is_fallback: false })
        .collect();
    let fallback = draw_random(&positives[take..], space, in_batch, exclusion, rng)?;
    let fallback_count = fallback.len();
    negatives.extend(fallback);
    Ok(NegativeBatch { negatives, fallback_count })
}

/// Historical negatives: pairs from `history` absent from this batch.
pub fn sample_historical<R: Rng>(
    positives: &[Edge],
    history: &PairPool,
    space: NodeSpace,
    exclusion: &HashSet<NodePair>,
    rng: &mut R,
) -> Result<NegativeBatch, SampleError> {
    let in_batch = batch_pairs(positives);
    let candidates = history.iter().filter(|p| !in_batch.contains(p)).copied().collect();
    fill_from_pool(positives, candidates, space, &in_batch, exclusion, rng)
}

/// Inductive negatives: pairs streamed in earlier test batches that are not
/// history pairs and are absent from this batch.
pub fn sample_inductive<R: Rng>(
    positives: &[Edge],
    history: &HashSet<NodePair>,
    test_seen: &PairPool,
    space: NodeSpace,
    exclusion: &HashSet<NodePair>,
    rng: &mut R,
) -> Result<NegativeBatch, SampleError> {
    let in_batch = batch_pairs(positives);
    let candidates = test_seen.iter().filter(|p| !history.contains(p) && !in_batch.contains(p)).copied().collect();
    fill_from_pool(positives, candidates, space, &in_batch, exclusion, rng)
}
