//! Ranking and fixed-threshold metrics for binary link prediction.
//!
//! All ranking metrics sweep records in descending score order and treat a
//! run of equal scores as one group, so results never depend on input order.
//! EdgeBank emits only 0.0 and 1.0, which makes tie handling the dominant
//! factor in its scores.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRecord {
    pub label: Label,
    pub score: f64,
    pub is_fallback: bool,
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("score {0} is not a finite value in [0, 1]")]
    InvalidScore(f64),
    #[error("no records")]
    Empty,
    #[error("metric needs at least one positive record")]
    NoPositives,
    #[error("metric needs at least one negative record")]
    NoNegatives,
}

impl EvalRecord {
    pub fn new(label: Label, score: f64) -> Result<Self, MetricError> {
        if !(0.0..=1.0).contains(&score) {
            return Err(MetricError::InvalidScore(score));
        }
        Ok(EvalRecord { label, score, is_fallback: false })
    }

    pub fn positive(score: f64) -> Result<Self, MetricError> {
        Self::new(Label::Positive, score)
    }

    pub fn negative(score: f64) -> Result<Self, MetricError> {
        Self::new(Label::Negative, score)
    }

    pub fn is_positive(&self) -> bool {
        self.label == Label::Positive
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// Positive and negative counts of one group of tied scores.
#[derive(Debug, Clone, Copy)]
struct TieGroup {
    positives: u64,
    negatives: u64,
}

/// Groups of tied scores in descending score order.
fn tie_groups(records: &[EvalRecord]) -> Vec<TieGroup> {
    let mut scores: Vec<(f64, bool)> = records.iter().map(|r| (r.score, r.is_positive())).collect();
    scores.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    scores
        .chunk_by(|a, b| a.0 == b.0)
        .map(|group| {
            let positives = group.iter().filter(|(_, p)| *p).count() as u64;
            TieGroup { positives, negatives: group.len() as u64 - positives }
        })
        .collect()
}

fn class_counts(groups: &[TieGroup]) -> (u64, u64) {
    groups.iter().fold((0, 0), |(p, n), g| (p + g.positives, n + g.negatives))
}

/// Probability that a random positive outscores a random negative, ties
/// credited one half.
///
/// ```
/// use linkeval::metrics::{au_roc, EvalRecord};
/// let records = [
///     EvalRecord::positive(0.9).unwrap(),
///     EvalRecord::negative(0.8).unwrap(),
///     EvalRecord::positive(0.7).unwrap(),
///     EvalRecord::negative(0.6).unwrap(),
/// ];
/// assert_eq!(au_roc(&records).unwrap(), 0.75);
/// ```
pub fn au_roc(records: &[EvalRecord]) -> Result<f64, MetricError> {
    let groups = tie_groups(records);
    let (total_pos, total_neg) = class_counts(&groups);
    if total_pos == 0 {
        return Err(MetricError::NoPositives);
    }
    if total_neg == 0 {
        return Err(MetricError::NoNegatives);
    }
    // twice the Mann-Whitney U statistic, exact in integers
    let mut doubled: u128 = 0;
    let mut negatives_below = total_neg;
    for g in &groups {
        negatives_below -= g.negatives;
        doubled += g.positives as u128 * (2 * negatives_below as u128 + g.negatives as u128);
    }
    Ok(doubled as f64 / (2.0 * total_pos as f64 * total_neg as f64))
}

/// Average precision: `Σ (R_k - R_{k-1}) · P_k` over the descending sweep,
/// one step per tie group.
pub fn average_precision(records: &[EvalRecord]) -> Result<f64, MetricError> {
    let groups = tie_groups(records);
    let (total_pos, _) = class_counts(&groups);
    if total_pos == 0 {
        return Err(MetricError::NoPositives);
    }
    let mut sum = CompensatedSum::default();
    let (mut tp, mut fp) = (0u64, 0u64);
    for g in &groups {
        tp += g.positives;
        fp += g.negatives;
        if g.positives > 0 {
            let recall_step = g.positives as f64 / total_pos as f64;
            sum.add(recall_step * (tp as f64 / (tp + fp) as f64));
        }
    }
    Ok(sum.value())
}

/// Trapezoidal area under the precision-recall curve, starting from
/// `(recall 0, precision 1)`.
pub fn au_pr(records: &[EvalRecord]) -> Result<f64, MetricError> {
    let groups = tie_groups(records);
    let (total_pos, _) = class_counts(&groups);
    if total_pos == 0 {
        return Err(MetricError::NoPositives);
    }
    let mut area = CompensatedSum::default();
    let (mut prev_recall, mut prev_precision) = (0.0, 1.0);
    let (mut tp, mut fp) = (0u64, 0u64);
    for g in &groups {
        tp += g.positives;
        fp += g.negatives;
        let recall = tp as f64 / total_pos as f64;
        let precision = tp as f64 / (tp + fp) as f64;
        area.add((recall - prev_recall) * (precision + prev_precision) / 2.0);
        prev_recall = recall;
        prev_precision = precision;
    }
    Ok(area.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Confusion-matrix metrics with `score >= threshold` predicted positive.
/// Undefined ratios are reported as 0.
pub fn threshold_metrics(records: &[EvalRecord], threshold: f64) -> Result<ThresholdMetrics, MetricError> {
    if records.is_empty() {
        return Err(MetricError::Empty);
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0u64, 0u64, 0u64, 0u64);
    for r in records {
        match (r.is_positive(), r.score >= threshold) {
            (true, true) => tp += 1,
            (true, false) => fn_ += 1,
            (false, true) => fp += 1,
            (false, false) => tn += 1,
        }
    }
    let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
    Ok(ThresholdMetrics { accuracy: ratio(tp + tn, records.len() as u64), precision, recall, f1 })
}

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    pub au_roc: f64,
    pub ap: f64,
    pub au_pr: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub positives: usize,
    pub negatives: usize,
}

impl MetricReport {
    pub fn compute(records: &[EvalRecord]) -> Result<Self, MetricError> {
        let at_half = threshold_metrics(records, DEFAULT_THRESHOLD)?;
        let positives = records.iter().filter(|r| r.is_positive()).count();
        Ok(MetricReport {
            au_roc: au_roc(records)?,
            ap: average_precision(records)?,
            au_pr: au_pr(records)?,
            accuracy: at_half.accuracy,
            precision: at_half.precision,
            recall: at_half.recall,
            f1: at_half.f1,
            positives,
            negatives: records.len() - positives,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records(labels: &str, scores: &[f64]) -> Vec<EvalRecord> {
        labels
            .chars()
            .zip(scores)
            .map(|(l, &s)| EvalRecord::new(if l == 'P' { Label::Positive } else { Label::Negative }, s).unwrap())
            .collect()
    }

    #[test]
    fn record_validation() {
        assert!(EvalRecord::positive(1.0).is_ok());
        assert_eq!(EvalRecord::positive(1.5), Err(MetricError::InvalidScore(1.5)));
        assert!(EvalRecord::negative(f64::NAN).is_err());
        assert!(EvalRecord::negative(-0.1).is_err());
    }

    #[test]
    fn au_roc_examples() {
        assert_eq!(au_roc(&records("PN", &[0.9, 0.1])).unwrap(), 1.0);
        assert_eq!(au_roc(&records("PNPN", &[0.3, 0.3, 0.3, 0.3])).unwrap(), 0.5);
        assert_eq!(au_roc(&records("PNPN", &[0.9, 0.8, 0.7, 0.6])).unwrap(), 0.75);
        assert_eq!(au_roc(&records("PP", &[0.9, 0.8])), Err(MetricError::NoNegatives));
        assert_eq!(au_roc(&records("NN", &[0.9, 0.8])), Err(MetricError::NoPositives));
    }

    #[test]
    fn ap_examples() {
        assert_eq!(average_precision(&records("PPNN", &[0.9, 0.8, 0.2, 0.1])).unwrap(), 1.0);
        let ap = average_precision(&records("PNPN", &[0.9, 0.8, 0.7, 0.6])).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(average_precision(&records("P", &[0.3])).unwrap(), 1.0);
        assert_eq!(average_precision(&records("N", &[0.3])), Err(MetricError::NoPositives));
    }

    #[test]
    fn au_pr_examples() {
        assert_eq!(au_pr(&records("PPNN", &[0.9, 0.8, 0.2, 0.1])).unwrap(), 1.0);
        assert_eq!(au_pr(&records("PN", &[0.5, 0.5])).unwrap(), 0.75);
        let r = records("NPNP", &[0.9, 0.8, 0.7, 0.1]);
        let (pr, ap) = (au_pr(&r).unwrap(), average_precision(&r).unwrap());
        assert!((0.0..=1.0).contains(&pr) && (0.0..=1.0).contains(&ap));
    }

    #[test]
    fn threshold_examples() {
        let perfect = threshold_metrics(&records("PPNN", &[1.0, 1.0, 0.0, 0.0]), 0.5).unwrap();
        assert_eq!(perfect, ThresholdMetrics { accuracy: 1.0, precision: 1.0, recall: 1.0, f1: 1.0 });
        let none = threshold_metrics(&records("PN", &[0.1, 0.2]), 0.5).unwrap();
        assert_eq!((none.precision, none.recall, none.f1), (0.0, 0.0, 0.0));
        // tp=1 (0.9), fn=1 (0.4), fp=1 (0.6), tn=1 (0.1)
        let mixed = threshold_metrics(&records("PPNN", &[0.9, 0.4, 0.6, 0.1]), 0.5).unwrap();
        assert_eq!(mixed, ThresholdMetrics { accuracy: 0.5, precision: 0.5, recall: 0.5, f1: 0.5 });
        // the comparison is >=
        let edge = threshold_metrics(&records("P", &[0.5]), 0.5).unwrap();
        assert_eq!(edge.recall, 1.0);
        assert_eq!(threshold_metrics(&[], 0.5), Err(MetricError::Empty));
    }

    #[test]
    fn report_counts() {
        let report = MetricReport::compute(&records("PNN", &[1.0, 0.0, 1.0])).unwrap();
        assert_eq!((report.positives, report.negatives), (1, 2));
        assert_eq!(report.au_roc, 0.75);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 10.0);
    }
}
