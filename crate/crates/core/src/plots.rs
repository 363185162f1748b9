//! TEA and TET plot data, with SVG rendering and CSV export.
//!
//! A TEA (temporal edge appearance) series counts, per distinct timestamp, how
//! many distinct pairs were already seen at an earlier timestamp and how many
//! are new. A TET (temporal edge traffic) table gives every distinct pair its
//! first and last appearance and its train/test category, ordered by first
//! then last appearance.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::stream::{for_each_timestamp, ChronoSplit, EdgeSets, EdgeStream, History, NodePair};

#[derive(Debug, Error, PartialEq)]
pub enum PlotError {
    #[error("nothing to plot")]
    Empty,
    #[error("bin count must be at least 1")]
    ZeroBins,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeaRow {
    pub t: f64,
    pub repeated: usize,
    pub new: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TeaSeries {
    pub rows: Vec<TeaRow>,
}

impl TeaSeries {
    /// Mean per-timestamp share of new pairs; equal to
    /// [`novelty_index`](crate::stream::novelty_index) of the source stream.
    pub fn novelty(&self) -> f64 {
        let ratio_sum: f64 = self.rows.iter().map(|r| r.new as f64 / (r.new + r.repeated) as f64).sum();
        ratio_sum / self.rows.len() as f64
    }

    pub fn total_new(&self) -> usize {
        self.rows.iter().map(|r| r.new).sum()
    }

    pub fn total_repeated(&self) -> usize {
        self.rows.iter().map(|r| r.repeated).sum()
    }

    /// Aggregates into at most `bins` buckets. Series with no more rows than
    /// `bins` keep one bucket per timestamp; longer ones are cut into
    /// `bins` equal-width time intervals (empty intervals included).
    pub fn binned(&self, bins: usize) -> Result<Vec<TeaBin>, PlotError> {
        if bins == 0 {
            return Err(PlotError::ZeroBins);
        }
        let (Some(first), Some(last)) = (self.rows.first(), self.rows.last()) else {
            return Err(PlotError::Empty);
        };
        if self.rows.len() <= bins {
            return Ok(self
                .rows
                .iter()
                .map(|r| TeaBin { t_start: r.t, t_end: r.t, repeated: r.repeated, new: r.new })
                .collect());
        }
        let (t0, span) = (first.t, last.t - first.t);
        let width = span / bins as f64;
        let mut out: Vec<TeaBin> = (0..bins)
            .map(|i| TeaBin {
                t_start: t0 + width * i as f64,
                t_end: if i + 1 == bins { last.t } else { t0 + width * (i + 1) as f64 },
                repeated: 0,
                new: 0,
            })
            .collect();
        for row in &self.rows {
            let slot = (((row.t - t0) / span) * bins as f64).floor() as usize;
            let bin = &mut out[slot.min(bins - 1)];
            bin.repeated += row.repeated;
            bin.new += row.new;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeaBin {
    pub t_start: f64,
    pub t_end: f64,
    pub repeated: usize,
    pub new: usize,
}

pub fn tea_series(stream: &EdgeStream) -> TeaSeries {
    let mut rows = Vec::new();
    for_each_timestamp(stream, &mut Default::default(), |t, repeated, new| {
        rows.push(TeaRow { t, repeated, new });
    });
    TeaSeries { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TetCategory {
    TrainOnly,
    Transductive,
    Inductive,
    /// Seen only in validation when validation is not part of the history.
    ValOnly,
}

impl TetCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            TetCategory::TrainOnly => "train_only",
            TetCategory::Transductive => "transductive",
            TetCategory::Inductive => "inductive",
            TetCategory::ValOnly => "val_only",
        }
    }

    fn color(self) -> &'static str {
        match self {
            TetCategory::TrainOnly => "#2ca02c",
            TetCategory::Transductive => "#ff7f0e",
            TetCategory::Inductive => "#d62728",
            TetCategory::ValOnly => "#7f7f7f",
        }
    }

    const ALL: [TetCategory; 4] =
        [TetCategory::TrainOnly, TetCategory::Transductive, TetCategory::Inductive, TetCategory::ValOnly];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TetRow {
    pub pair: NodePair,
    pub first_ts: f64,
    pub last_ts: f64,
    pub category: TetCategory,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TetRows {
    pub rows: Vec<TetRow>,
}

impl TetRows {
    pub fn count(&self, category: TetCategory) -> usize {
        self.rows.iter().filter(|r| r.category == category).count()
    }
}

/// One row per distinct pair, sorted by first appearance and then by last
/// appearance; remaining ties keep first-seen order.
pub fn tet_rows(stream: &EdgeStream, split: &ChronoSplit, history: History) -> TetRows {
    let sets = EdgeSets::new(stream, split).with_history(history);
    let mut index: HashMap<NodePair, usize> = HashMap::new();
    let mut rows: Vec<TetRow> = Vec::new();
    for edge in stream.edges() {
        match index.get(&edge.pair) {
            Some(&i) => rows[i].last_ts = edge.timestamp,
            None => {
                index.insert(edge.pair, rows.len());
                let in_train = sets.train_pairs.contains(&edge.pair);
                let in_test = sets.test_pairs.contains(&edge.pair);
                let category = match (in_train, in_test) {
                    (true, true) => TetCategory::Transductive,
                    (true, false) => TetCategory::TrainOnly,
                    (false, true) => TetCategory::Inductive,
                    (false, false) => TetCategory::ValOnly,
                };
                rows.push(TetRow { pair: edge.pair, first_ts: edge.timestamp, last_ts: edge.timestamp, category });
            }
        }
    }
    rows.sort_by(|a, b| a.first_ts.total_cmp(&b.first_ts).then(a.last_ts.total_cmp(&b.last_ts)));
    TetRows { rows }
}

pub fn write_tea_csv<W: Write>(series: &TeaSeries, mut out: W) -> io::Result<()> {
    writeln!(out, "t,repeated,new")?;
    for r in &series.rows {
        writeln!(out, "{},{},{}", r.t, r.repeated, r.new)?;
    }
    Ok(())
}

pub fn write_tet_csv<W: Write>(rows: &TetRows, mut out: W) -> io::Result<()> {
    writeln!(out, "pair_id,source,destination,first_ts,last_ts,category")?;
    for (id, r) in rows.rows.iter().enumerate() {
        writeln!(
            out,
            "{id},{},{},{},{},{}",
            r.pair.source,
            r.pair.destination,
            r.first_ts,
            r.last_ts,
            r.category.as_str()
        )?;
    }
    Ok(())
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const REPEATED_COLOR: &str = "#9e9e9e";
const NEW_COLOR: &str = "#d62728";

fn svg_open(svg: &mut String, title: &str) {
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{title}</text>"#,
        LEFT + plot_width() / 2.0
    );
}

fn plot_width() -> f64 {
    WIDTH - LEFT - RIGHT
}

fn plot_height() -> f64 {
    HEIGHT - TOP - BOTTOM
}

fn axes(svg: &mut String, x_label: &str, y_label: &str) {
    let (x0, y0) = (LEFT, TOP + plot_height());
    let _ =
        writeln!(svg, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="black"/>"#, x0 + plot_width());
    let _ = writeln!(svg, r#"<line x1="{x0:.2}" y1="{TOP:.2}" x2="{x0:.2}" y2="{y0:.2}" stroke="black"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        x0 + plot_width() / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
        TOP + plot_height() / 2.0,
        TOP + plot_height() / 2.0
    );
}

fn legend(svg: &mut String, entries: &[(&str, &str)]) {
    let x = WIDTH - RIGHT + 15.0;
    for (i, (label, color)) in entries.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let _ = writeln!(svg, r#"<rect x="{x:.2}" y="{:.2}" width="12" height="12" fill="{color}"/>"#, y - 10.0);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{y:.2}">{label}</text>"#, x + 18.0);
    }
}

fn tick_label(svg: &mut String, x: f64, y: f64, anchor: &str, value: f64) {
    let _ = writeln!(svg, r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{}</text>"#, format_tick(value));
}

fn format_tick(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{value:.0}")
    } else {
        format!("{value:.3}")
    }
}

/// Stacked bars of repeated (bottom) and new (top) pairs per time bucket.
pub fn render_tea_svg(series: &TeaSeries, bins: usize) -> Result<String, PlotError> {
    let buckets = series.binned(bins)?;
    let peak = buckets.iter().map(|b| b.repeated + b.new).max().unwrap_or(0).max(1) as f64;
    let slot = plot_width() / buckets.len() as f64;
    let bar = (slot * 0.8).max(0.5);
    let base = TOP + plot_height();

    let mut svg = String::new();
    svg_open(&mut svg, "Temporal edge appearance");
    for (i, b) in buckets.iter().enumerate() {
        let x = LEFT + slot * i as f64 + (slot - bar) / 2.0;
        let h_rep = plot_height() * b.repeated as f64 / peak;
        let h_new = plot_height() * b.new as f64 / peak;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.2}" width="{bar:.2}" height="{h_rep:.2}" fill="{REPEATED_COLOR}"/>"#,
            base - h_rep
        );
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.2}" width="{bar:.2}" height="{h_new:.2}" fill="{NEW_COLOR}"/>"#,
            base - h_rep - h_new
        );
    }
    axes(&mut svg, "timestamp", "distinct edges");
    tick_label(&mut svg, LEFT, base + 16.0, "start", buckets[0].t_start);
    tick_label(&mut svg, LEFT + plot_width(), base + 16.0, "end", buckets[buckets.len() - 1].t_end);
    tick_label(&mut svg, LEFT - 6.0, TOP + 4.0, "end", peak);
    tick_label(&mut svg, LEFT - 6.0, base, "end", 0.0);
    legend(&mut svg, &[("repeated", REPEATED_COLOR), ("new", NEW_COLOR)]);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}">novelty {:.3}</text>"#,
        WIDTH - RIGHT + 15.0,
        TOP + 60.0,
        series.novelty()
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One horizontal lifespan bar per pair in row order, with a dashed marker
/// at `t_split`.
pub fn render_tet_svg(rows: &TetRows, t_split: f64) -> Result<String, PlotError> {
    if rows.rows.is_empty() {
        return Err(PlotError::Empty);
    }
    let t_min = rows.rows.iter().map(|r| r.first_ts).fold(f64::INFINITY, f64::min).min(t_split);
    let t_max = rows.rows.iter().map(|r| r.last_ts).fold(f64::NEG_INFINITY, f64::max).max(t_split);
    let span = if t_max > t_min { t_max - t_min } else { 1.0 };
    let x_of = |t: f64| LEFT + plot_width() * (t - t_min) / span;
    let row_h = plot_height() / rows.rows.len() as f64;
    let thickness = row_h.max(0.2);

    let mut svg = String::new();
    svg_open(&mut svg, "Temporal edge traffic");
    for (i, r) in rows.rows.iter().enumerate() {
        let x = x_of(r.first_ts);
        let w = (x_of(r.last_ts) - x).max(1.0);
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.3}" width="{w:.2}" height="{thickness:.3}" fill="{}"/>"#,
            TOP + row_h * i as f64,
            r.category.color()
        );
    }
    let xs = x_of(t_split);
    let _ = writeln!(
        svg,
        r#"<line x1="{xs:.2}" y1="{TOP:.2}" x2="{xs:.2}" y2="{:.2}" stroke="black" stroke-dasharray="4 3"/>"#,
        TOP + plot_height()
    );
    let _ = writeln!(svg, r#"<text x="{xs:.2}" y="{:.2}" text-anchor="middle" font-weight="bold">x</text>"#, TOP - 4.0);
    axes(&mut svg, "timestamp", "edges (by first appearance)");
    let base = TOP + plot_height();
    tick_label(&mut svg, LEFT, base + 16.0, "start", t_min);
    tick_label(&mut svg, LEFT + plot_width(), base + 16.0, "end", t_max);
    let present: Vec<(&str, &str)> =
        TetCategory::ALL.iter().filter(|c| rows.count(**c) > 0).map(|c| (c.as_str(), c.color())).collect();
    legend(&mut svg, &present);
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::{novelty_index, Edge};

    fn stream(edges: &[(u32, u32, f64)]) -> EdgeStream {
        EdgeStream::build(edges.iter().map(|&(s, d, t)| Edge::new(s, d, t)).collect(), true).unwrap()
    }

    #[test]
    fn tea_hand_trace() {
        let s = stream(&[(0, 1, 1.0), (0, 1, 2.0), (2, 3, 2.0)]);
        let series = tea_series(&s);
        assert_eq!(series.rows, vec![TeaRow { t: 1.0, repeated: 0, new: 1 }, TeaRow { t: 2.0, repeated: 1, new: 1 }]);
        assert_eq!(series.novelty(), novelty_index(&s));
    }

    #[test]
    fn tea_all_new() {
        let s = stream(&[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 2.0)]);
        assert!(tea_series(&s).rows.iter().all(|r| r.repeated == 0));
    }

    #[test]
    fn binning_bounds_and_totals() {
        let s = stream(&(0..1000).map(|i| (i % 37, (i * 7) % 41, (i / 3) as f64)).collect::<Vec<_>>());
        let series = tea_series(&s);
        for bins in [1, 10, 50, 333, 334, 2000] {
            let b = series.binned(bins).unwrap();
            assert!(b.len() <= bins);
            assert_eq!(b.iter().map(|x| x.new).sum::<usize>(), series.total_new());
            assert_eq!(b.iter().map(|x| x.repeated).sum::<usize>(), series.total_repeated());
        }
        assert_eq!(series.binned(0), Err(PlotError::ZeroBins));
        assert_eq!(TeaSeries::default().binned(5), Err(PlotError::Empty));
    }

    #[test]
    fn tet_categories() {
        // pairs: 01 train only, 23 train+test, 45 test only
        let s = stream(&[(0, 1, 1.0), (2, 3, 2.0), (2, 3, 3.0), (4, 5, 4.0)]);
        let split = ChronoSplit::from_boundaries(&s, 2, 2).unwrap();
        let rows = tet_rows(&s, &split, History::Train);
        let cats: Vec<_> = rows.rows.iter().map(|r| r.category).collect();
        assert_eq!(cats, vec![TetCategory::TrainOnly, TetCategory::Transductive, TetCategory::Inductive]);
        assert_eq!(rows.rows[1].first_ts, 2.0);
        assert_eq!(rows.rows[1].last_ts, 3.0);
    }

    #[test]
    fn tet_validation_pairs() {
        let s = stream(&[(0, 1, 1.0), (2, 3, 2.0), (4, 5, 3.0)]);
        let split = ChronoSplit::from_boundaries(&s, 1, 2).unwrap();
        let rows = tet_rows(&s, &split, History::Train);
        assert_eq!(rows.count(TetCategory::ValOnly), 1);
        let rows = tet_rows(&s, &split, History::TrainVal);
        assert_eq!(rows.count(TetCategory::ValOnly), 0);
        assert_eq!(rows.count(TetCategory::TrainOnly), 2);
    }

    #[test]
    fn tet_ties_ordered_by_last_seen() {
        let s = stream(&[(0, 1, 1.0), (2, 3, 1.0), (4, 5, 1.0), (0, 1, 9.0), (2, 3, 5.0), (4, 5, 7.0)]);
        let split = ChronoSplit::from_boundaries(&s, 3, 3).unwrap();
        let order: Vec<_> = tet_rows(&s, &split, History::Train).rows.iter().map(|r| r.pair.source.0).collect();
        assert_eq!(order, vec![2, 4, 0]);
    }

    #[test]
    fn csv_layouts() {
        let s = stream(&[(0, 1, 1.0), (0, 1, 2.5)]);
        let mut buf = Vec::new();
        write_tea_csv(&tea_series(&s), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,repeated,new\n1,0,1\n2.5,1,0\n");
        let split = ChronoSplit::from_boundaries(&s, 1, 1).unwrap();
        let mut buf = Vec::new();
        write_tet_csv(&tet_rows(&s, &split, History::Train), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "pair_id,source,destination,first_ts,last_ts,category\n0,0,1,1,2.5,transductive\n"
        );
    }

    #[test]
    fn svg_is_deterministic_and_bounded() {
        let s = stream(&(0..500).map(|i| (i % 13, (i * 3) % 17, i as f64)).collect::<Vec<_>>());
        let series = tea_series(&s);
        let a = render_tea_svg(&series, 10).unwrap();
        assert_eq!(a, render_tea_svg(&series, 10).unwrap());
        // two rects per bar
        let rects = a.matches("<rect").count() - 1 - 2;
        assert!(rects / 2 <= 10);
        assert!(a.starts_with("<?xml") && a.trim_end().ends_with("</svg>"));

        assert_eq!(render_tet_svg(&TetRows::default(), 0.0), Err(PlotError::Empty));
    }
}
