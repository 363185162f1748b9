//! EdgeBank: memorization baselines that score a pair 1.0 when it has been
//! observed before and 0.0 otherwise.
//!
//! [`Variant::Infinity`] remembers every pair forever. [`Variant::TimeWindow`]
//! only counts a pair whose most recent occurrence lies within `window` time
//! units of the query time. Expired entries are never deleted; the window is
//! applied when predicting.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stream::{Edge, NodePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "inf")]
    Infinity,
    #[serde(rename = "tw")]
    TimeWindow,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Infinity => "inf",
            Variant::TimeWindow => "tw",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EdgeBankError {
    #[error("time window must be positive and finite, got {0}")]
    InvalidWindow(f64),
    #[error("the time-window variant needs a window")]
    MissingWindow,
    #[error("the unbounded variant takes no window")]
    UnexpectedWindow,
    #[error("update at t={timestamp} after memory already reached t={latest}")]
    OutOfOrder { timestamp: f64, latest: f64 },
}

#[derive(Debug, Clone)]
pub struct EdgeBankMemory {
    variant: Variant,
    window: Option<f64>,
    last_seen: HashMap<NodePair, f64>,
    latest: Option<f64>,
}

impl EdgeBankMemory {
    /// `window` must be given exactly when `variant` is
    /// [`Variant::TimeWindow`].
    pub fn new(variant: Variant, window: Option<f64>) -> Result<Self, EdgeBankError> {
        match (variant, window) {
            (Variant::Infinity, Some(_)) => return Err(EdgeBankError::UnexpectedWindow),
            (Variant::TimeWindow, None) => return Err(EdgeBankError::MissingWindow),
            (Variant::TimeWindow, Some(w)) if !(w.is_finite() && w > 0.0) => {
                return Err(EdgeBankError::InvalidWindow(w))
            }
            _ => {}
        }
        Ok(EdgeBankMemory { variant, window, last_seen: HashMap::new(), latest: None })
    }

    pub fn infinity() -> Self {
        EdgeBankMemory { variant: Variant::Infinity, window: None, last_seen: HashMap::new(), latest: None }
    }

    pub fn time_window(window: f64) -> Result<Self, EdgeBankError> {
        Self::new(Variant::TimeWindow, Some(window))
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn window(&self) -> Option<f64> {
        self.window
    }

    /// Number of distinct pairs ever stored.
    pub fn len(&self) -> usize {
        self.last_seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.last_seen.is_empty()
    }

    pub fn last_seen(&self, pair: &NodePair) -> Option<f64> {
        self.last_seen.get(pair).copied()
    }

    /// Records a chronologically ordered batch. Fails without modifying the
    /// memory if any edge is older than one already stored.
    pub fn update(&mut self, edges: &[Edge]) -> Result<(), EdgeBankError> {
        let mut latest = self.latest;
        for edge in edges {
            if let Some(prev) = latest {
                if edge.timestamp < prev {
                    return Err(EdgeBankError::OutOfOrder { timestamp: edge.timestamp, latest: prev });
                }
            }
            latest = Some(edge.timestamp);
        }
        for edge in edges {
            let slot = self.last_seen.entry(edge.pair).or_insert(edge.timestamp);
            *slot = slot.max(edge.timestamp);
        }
        self.latest = latest;
        Ok(())
    }

    /// 1.0 if `pair` counts as previously observed at `t_now`, else 0.0.
    ///
    /// For the time-window variant the pair's latest occurrence must lie in
    /// `[t_now - window, t_now]`.
    pub fn predict(&self, pair: &NodePair, t_now: f64) -> f64 {
        let Some(&seen) = self.last_seen.get(pair) else {
            return 0.0;
        };
        let hit = match self.window {
            None => true,
            Some(w) => seen >= t_now - w && seen <= t_now,
        };
        if hit {
            1.0
        } else {
            0.0
        }
    }
}
