//! Reference implementations and generators shared by the integration tests
//! and the acceptance harness. The oracles are deliberately naive: they
//! recompute every quantity from scratch and never share code with the
//! library.
#![allow(dead_code)]

use std::collections::HashSet;

use linkeval::{Edge, EdgeStream, EvalRecord, Label};
use rand::Rng;

/// Random stream with small integer timestamps so that ties and repeats are
/// common.
pub fn random_stream<R: Rng>(rng: &mut R, max_edges: usize, directed: bool) -> EdgeStream {
    let len = rng.gen_range(3..=max_edges.max(3));
    let nodes = rng.gen_range(20..=60u32);
    let horizon = rng.gen_range(1..=len as u32);
    // a small hot set makes pairs reoccur
    let hot = rng.gen_range(2..=8u32);
    let edges = (0..len)
        .map(|_| {
            let (s, d) = if rng.gen_bool(0.5) {
                (rng.gen_range(0..hot), rng.gen_range(hot..2 * hot))
            } else {
                let s = rng.gen_range(0..nodes);
                let mut d = rng.gen_range(0..nodes);
                if d == s {
                    d = (d + 1) % nodes;
                }
                (s, d)
            };
            Edge::new(s, d, rng.gen_range(0..=horizon) as f64)
        })
        .collect();
    EdgeStream::build_with_node_count(edges, directed, nodes as usize).expect("valid random stream")
}

/// Random labelled records with at least one of each class. `levels` bounds
/// the number of distinct scores; small values force heavy ties.
pub fn random_records<R: Rng>(rng: &mut R, max_len: usize, levels: u32) -> Vec<EvalRecord> {
    let len = rng.gen_range(2..=max_len);
    let mut records: Vec<EvalRecord> = (0..len)
        .map(|_| {
            let label = if rng.gen_bool(0.5) { Label::Positive } else { Label::Negative };
            let score = rng.gen_range(0..=levels) as f64 / levels as f64;
            EvalRecord::new(label, score).unwrap()
        })
        .collect();
    records[0].label = Label::Positive;
    records[1].label = Label::Negative;
    records
}

fn counts_at(records: &[EvalRecord], threshold: f64) -> (usize, usize) {
    let tp = records.iter().filter(|r| r.label == Label::Positive && r.score >= threshold).count();
    let fp = records.iter().filter(|r| r.label == Label::Negative && r.score >= threshold).count();
    (tp, fp)
}

fn class_sizes(records: &[EvalRecord]) -> (usize, usize) {
    let p = records.iter().filter(|r| r.label == Label::Positive).count();
    (p, records.len() - p)
}

fn thresholds_descending(records: &[EvalRecord]) -> Vec<f64> {
    let mut t: Vec<f64> = records.iter().map(|r| r.score).collect();
    t.sort_by(|a, b| b.partial_cmp(a).unwrap());
    t.dedup();
    t
}

/// Probability that a random positive outscores a random negative, ties
/// counted as one half, by enumerating every pair.
pub fn roc_by_pairs(records: &[EvalRecord]) -> f64 {
    let (p, n) = class_sizes(records);
    let mut wins = 0.0;
    for a in records.iter().filter(|r| r.label == Label::Positive) {
        for b in records.iter().filter(|r| r.label == Label::Negative) {
            if a.score > b.score {
                wins += 1.0;
            } else if a.score == b.score {
                wins += 0.5;
            }
        }
    }
    wins / (p * n) as f64
}

/// Trapezoidal area under the ROC curve traced by sweeping every distinct
/// score as a `>=` threshold.
pub fn roc_by_trapezoid(records: &[EvalRecord]) -> f64 {
    let (p, n) = class_sizes(records);
    let (mut x0, mut y0, mut area) = (0.0, 0.0, 0.0);
    for t in thresholds_descending(records) {
        let (tp, fp) = counts_at(records, t);
        let (x, y) = (fp as f64 / n as f64, tp as f64 / p as f64);
        area += (x - x0) * (y + y0) / 2.0;
        x0 = x;
        y0 = y;
    }
    area
}

/// Average precision by enumerating thresholds: sum of recall increments
/// times precision at each distinct score.
pub fn ap_by_thresholds(records: &[EvalRecord]) -> f64 {
    let (p, _) = class_sizes(records);
    let (mut prev_recall, mut ap) = (0.0, 0.0);
    for t in thresholds_descending(records) {
        let (tp, fp) = counts_at(records, t);
        let recall = tp as f64 / p as f64;
        let precision = tp as f64 / (tp + fp) as f64;
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    ap
}

/// Fraction of records classified correctly at a `>=` threshold.
pub fn accuracy_at(records: &[EvalRecord], threshold: f64) -> f64 {
    let correct = records.iter().filter(|r| (r.score >= threshold) == (r.label == Label::Positive)).count();
    correct as f64 / records.len() as f64
}

/// Per-timestamp new-pair ratio averaged over timestamps, computed from a
/// list of (time, pair) tuples without relying on stream grouping.
pub fn novelty_by_definition(stream: &EdgeStream) -> f64 {
    let mut times: Vec<f64> = stream.edges().iter().map(|e| e.timestamp).collect();
    times.dedup();
    let mut seen = HashSet::new();
    let mut total = 0.0;
    for t in &times {
        let at_t: HashSet<_> = stream.edges().iter().filter(|e| e.timestamp == *t).map(|e| e.pair).collect();
        let new = at_t.iter().filter(|p| !seen.contains(*p)).count();
        total += new as f64 / at_t.len() as f64;
        seen.extend(at_t);
    }
    total / times.len() as f64
}
