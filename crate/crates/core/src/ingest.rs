//! Edge-list file parsing.
//!
//! Two layouts are understood:
//!
//! * interaction CSV: `user_id,item_id,timestamp,state_label,f1,...,fk` with a
//!   mandatory header line. Users and items live in one node space with items
//!   placed after all users.
//! * plain edge list: `source,destination,timestamp[,weight]` with an optional
//!   header, detected when the timestamp column of the first line is not a
//!   number.
//!
//! Id tokens are densified in order of first appearance in the time-sorted
//! stream, which makes exporting with [`write_edgelist_csv`] or
//! [`write_interaction_csv`] followed by a re-parse in the same layout the
//! identity.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::stream::{Edge, EdgeStream, NodeId, NodePair, StreamError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("file contains no edges")]
    Empty,
    #[error("line {line}: expected {expected} fields, found {found}")]
    Arity { line: usize, expected: String, found: usize },
    #[error("line {line}: field {field} is not a number: {value:?}")]
    NotNumeric { line: usize, field: &'static str, value: String },
    #[error(transparent)]
    Stream(#[from] StreamError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ParseReport {
    pub edges_read: usize,
    pub nodes_assigned: usize,
    /// Blank data lines. Malformed lines are errors, never skipped.
    pub lines_skipped: usize,
    pub feature_dim: usize,
}

/// On-disk layout selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Interaction,
    EdgeList,
}

/// Parses `path` in the given layout. The stream is named after the file stem.
pub fn parse_file(path: &Path, format: Format, directed: bool) -> Result<(EdgeStream, ParseReport), IngestError> {
    let reader = BufReader::new(File::open(path)?);
    let (stream, report) = match format {
        Format::Interaction => read_interaction_csv(reader, directed)?,
        Format::EdgeList => read_edgelist_csv(reader, directed)?,
    };
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((stream.with_name(name), report))
}

pub fn parse_interaction_csv(path: &Path, directed: bool) -> Result<(EdgeStream, ParseReport), IngestError> {
    parse_file(path, Format::Interaction, directed)
}

pub fn parse_edgelist_csv(path: &Path, directed: bool) -> Result<(EdgeStream, ParseReport), IngestError> {
    parse_file(path, Format::EdgeList, directed)
}

struct Row {
    source: String,
    destination: String,
    timestamp: f64,
    weight: Option<f64>,
    features: Option<Vec<f32>>,
}

/// Yields `(1-based line number, line)` with the trailing `\r` removed.
fn numbered_lines<R: BufRead>(reader: R) -> impl Iterator<Item = io::Result<(usize, String)>> {
    reader.lines().enumerate().map(|(i, line)| {
        line.map(|mut l| {
            if l.ends_with('\r') {
                l.pop();
            }
            (i + 1, l)
        })
    })
}

fn parse_f64(value: &str, line: usize, field: &'static str) -> Result<f64, IngestError> {
    value.trim().parse().map_err(|_| IngestError::NotNumeric { line, field, value: value.to_string() })
}

pub fn read_interaction_csv<R: BufRead>(reader: R, directed: bool) -> Result<(EdgeStream, ParseReport), IngestError> {
    let mut lines = numbered_lines(reader);
    if lines.next().transpose()?.is_none() {
        return Err(IngestError::Empty);
    }
    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut arity: Option<usize> = None;
    for item in lines {
        let (line, text) = item?;
        if text.trim().is_empty() {
            skipped += 1;
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        let expected = *arity.get_or_insert(fields.len());
        if fields.len() != expected || fields.len() < 4 {
            return Err(IngestError::Arity {
                line,
                expected: if expected < 4 { "at least 4".into() } else { expected.to_string() },
                found: fields.len(),
            });
        }
        let timestamp = parse_f64(fields[2], line, "timestamp")?;
        let features = fields[4..]
            .iter()
            .map(|f| parse_f64(f, line, "feature").map(|v| v as f32))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(Row {
            source: fields[0].trim().to_string(),
            destination: fields[1].trim().to_string(),
            timestamp,
            weight: None,
            features: (!features.is_empty()).then_some(features),
        });
    }
    build(rows, skipped, directed, true)
}

pub fn read_edgelist_csv<R: BufRead>(reader: R, directed: bool) -> Result<(EdgeStream, ParseReport), IngestError> {
    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut first_content = true;
    for item in numbered_lines(reader) {
        let (line, text) = item?;
        if text.trim().is_empty() {
            skipped += 1;
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if first_content {
            first_content = false;
            let is_header = fields.len() >= 3 && fields[2].trim().parse::<f64>().is_err();
            if is_header {
                // blank lines before the header are not data lines
                skipped = 0;
                continue;
            }
        }
        if !(3..=4).contains(&fields.len()) {
            return Err(IngestError::Arity { line, expected: "3 or 4".into(), found: fields.len() });
        }
        rows.push(Row {
            source: fields[0].trim().to_string(),
            destination: fields[1].trim().to_string(),
            timestamp: parse_f64(fields[2], line, "timestamp")?,
            weight: fields.get(3).map(|w| parse_f64(w, line, "weight")).transpose()?,
            features: None,
        });
    }
    build(rows, skipped, directed, false)
}

/// Sorts rows by time and assigns dense ids in first-seen order. With
/// `bipartite`, sources and destinations get separate id spaces and the
/// destination space is offset by the number of sources.
fn build(
    mut rows: Vec<Row>,
    lines_skipped: usize,
    directed: bool,
    bipartite: bool,
) -> Result<(EdgeStream, ParseReport), IngestError> {
    if rows.is_empty() {
        return Err(IngestError::Empty);
    }
    for (index, row) in rows.iter().enumerate() {
        if !row.timestamp.is_finite() || row.timestamp < 0.0 {
            return Err(StreamError::InvalidTimestamp { index, timestamp: row.timestamp }.into());
        }
    }
    rows.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));

    let mut sources: HashMap<&str, u32> = HashMap::new();
    let mut destinations: HashMap<&str, u32> = HashMap::new();
    let mut raw_ids = Vec::with_capacity(rows.len());
    for row in &rows {
        let next = sources.len() as u32;
        let s = *sources.entry(row.source.as_str()).or_insert(next);
        let d = if bipartite {
            let next = destinations.len() as u32;
            *destinations.entry(row.destination.as_str()).or_insert(next)
        } else {
            let next = sources.len() as u32;
            *sources.entry(row.destination.as_str()).or_insert(next)
        };
        raw_ids.push((s, d));
    }
    let offset = if bipartite { sources.len() as u32 } else { 0 };
    let node_count = sources.len() + destinations.len();

    let edges: Vec<Edge> = rows
        .into_iter()
        .zip(raw_ids)
        .map(|(row, (s, d))| Edge {
            pair: NodePair::new(NodeId(s), NodeId(d + offset), directed),
            timestamp: row.timestamp,
            weight: row.weight,
            features: row.features,
        })
        .collect();
    let edges_read = edges.len();
    let stream = EdgeStream::build_with_node_count(edges, directed, node_count)?;
    let report =
        ParseReport { edges_read, nodes_assigned: node_count, lines_skipped, feature_dim: stream.feature_dim() };
    Ok((stream, report))
}

/// Writes `stream` as a plain edge list (`source,destination,timestamp[,weight]`)
/// using the dense ids as tokens. Features are not written.
pub fn write_edgelist_csv<W: Write>(stream: &EdgeStream, mut out: W) -> io::Result<()> {
    writeln!(out, "source,destination,timestamp,weight")?;
    for edge in stream.edges() {
        write!(out, "{},{},{}", edge.pair.source, edge.pair.destination, edge.timestamp)?;
        match edge.weight {
            Some(w) => writeln!(out, ",{w}")?,
            None => writeln!(out)?,
        }
    }
    Ok(())
}

/// Writes a stream parsed from the interaction layout back in that layout.
///
/// Users are the sources and occupy ids `0..=max source`; items are the
/// destinations and are written relative to that offset. `state_label` is
/// written as 0.
pub fn write_interaction_csv<W: Write>(stream: &EdgeStream, mut out: W) -> io::Result<()> {
    let offset = stream.edges().iter().map(|e| e.pair.source.0 + 1).max().unwrap_or(0);
    write!(out, "user_id,item_id,timestamp,state_label")?;
    for k in 0..stream.feature_dim() {
        write!(out, ",f{k}")?;
    }
    writeln!(out)?;
    for edge in stream.edges() {
        let item = edge.pair.destination.0.checked_sub(offset).ok_or_else(|| {
            io::Error::new(io::ErrorKind::InvalidInput, format!("{} is not a user-item pair", edge.pair))
        })?;
        write!(out, "{},{},{},0", edge.pair.source, item, edge.timestamp)?;
        for value in edge.features.iter().flatten() {
            write!(out, ",{value}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edgelist(text: &str) -> Result<(EdgeStream, ParseReport), IngestError> {
        read_edgelist_csv(text.as_bytes(), true)
    }

    #[test]
    fn interaction_single_row() {
        let text = "user_id,item_id,timestamp,state_label,f1\n0,0,1.0,0,0.5\n";
        let (stream, report) = read_interaction_csv(text.as_bytes(), true).unwrap();
        assert_eq!(stream.len(), 1);
        // one user, so the item lands at user_count + 0
        assert_eq!(stream.edges()[0].pair, NodePair::directed(0, 1));
        assert_eq!(stream.edges()[0].features, Some(vec![0.5]));
        assert_eq!(report, ParseReport { edges_read: 1, nodes_assigned: 2, lines_skipped: 0, feature_dim: 1 });
    }

    #[test]
    fn interaction_items_follow_users() {
        let text = "h\n7,3,1,0\n8,3,2,0\n9,4,3,0\n";
        let (stream, report) = read_interaction_csv(text.as_bytes(), true).unwrap();
        let got: Vec<_> = stream.edges().iter().map(|e| (e.pair.source.0, e.pair.destination.0)).collect();
        assert_eq!(got, vec![(0, 3), (1, 3), (2, 4)]);
        assert_eq!(report.nodes_assigned, 5);
        assert_eq!(report.feature_dim, 0);
        assert_eq!(stream.feature_dim(), 0);
    }

    #[test]
    fn interaction_out_of_order_rows_are_sorted() {
        let text = "h\n0,0,5,0\n1,1,2,0\n\n";
        let (stream, report) = read_interaction_csv(text.as_bytes(), true).unwrap();
        let ts: Vec<_> = stream.edges().iter().map(|e| e.timestamp).collect();
        assert_eq!(ts, vec![2.0, 5.0]);
        assert_eq!(report.edges_read, 2);
        assert_eq!(report.lines_skipped, 1);
    }

    #[test]
    fn interaction_errors() {
        assert!(matches!(read_interaction_csv("".as_bytes(), true), Err(IngestError::Empty)));
        assert!(matches!(read_interaction_csv("h\n".as_bytes(), true), Err(IngestError::Empty)));
        let err = read_interaction_csv("h\n0,0,1,0,0.1\n0,0,2,0\n".as_bytes(), true).unwrap_err();
        assert!(matches!(err, IngestError::Arity { line: 3, found: 4, .. }), "{err}");
        let err = read_interaction_csv("h\n0,0,x,0\n".as_bytes(), true).unwrap_err();
        assert!(matches!(err, IngestError::NotNumeric { line: 2, field: "timestamp", .. }));
        let err = read_interaction_csv("h\n0,0\n".as_bytes(), true).unwrap_err();
        assert!(matches!(err, IngestError::Arity { line: 2, .. }));
    }

    #[test]
    fn edgelist_densifies_in_first_seen_order() {
        let (stream, report) = edgelist("a,b,1\nb,c,2").unwrap();
        let got: Vec<_> = stream.edges().iter().map(|e| (e.pair.source.0, e.pair.destination.0)).collect();
        assert_eq!(got, vec![(0, 1), (1, 2)]);
        assert_eq!(report.nodes_assigned, 3);
        assert_eq!(stream.node_count(), 3);
    }

    #[test]
    fn edgelist_weight_and_header() {
        let (stream, _) = edgelist("u,v,1,2.5\n").unwrap();
        assert_eq!(stream.edges()[0].weight, Some(2.5));
        let (stream, report) = edgelist("src,dst,t\r\nx,y,1\r\ny,x,2\r\n").unwrap();
        assert_eq!(stream.len(), 2);
        assert_eq!(report.edges_read, 2);
        assert_eq!(report.lines_skipped, 0);
    }

    #[test]
    fn edgelist_errors() {
        assert!(matches!(edgelist(""), Err(IngestError::Empty)));
        assert!(matches!(edgelist("a,b,1\na,b"), Err(IngestError::Arity { line: 2, .. })));
        assert!(matches!(edgelist("a,b,1\na,b,2,w"), Err(IngestError::NotNumeric { line: 2, field: "weight", .. })));
        assert!(matches!(edgelist("a,b,1\na,b,-3"), Err(IngestError::Stream(_))));
    }

    #[test]
    fn edgelist_undirected() {
        let (stream, _) = read_edgelist_csv("b,a,1\nc,b,2\n".as_bytes(), false).unwrap();
        let got: Vec<_> = stream.edges().iter().map(|e| (e.pair.source.0, e.pair.destination.0)).collect();
        assert_eq!(got, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn export_reparse_roundtrip() {
        let (stream, _) = edgelist("q,r,9,1.5\nc,d,1\nd,q,1\nr,q,4,0.25\n").unwrap();
        let mut buf = Vec::new();
        write_edgelist_csv(&stream, &mut buf).unwrap();
        let (again, report) = read_edgelist_csv(buf.as_slice(), true).unwrap();
        assert_eq!(again, stream);
        assert_eq!(report.lines_skipped, 0);
    }

    #[test]
    fn interaction_export_reparse_roundtrip() {
        let text = "h\nu2,i9,3,0,0.1,1e-3\nu1,i9,1,0,0.25,-2\nu2,i8,1,1,3,4\n";
        let (stream, _) = read_interaction_csv(text.as_bytes(), true).unwrap();
        let mut buf = Vec::new();
        write_interaction_csv(&stream, &mut buf).unwrap();
        let (again, report) = read_interaction_csv(buf.as_slice(), true).unwrap();
        assert_eq!(again, stream);
        assert_eq!(report.feature_dim, 2);
    }
}
