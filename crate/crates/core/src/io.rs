//! Readers for edge lists and MatrixMarket coordinate files, and an edge
//! list writer.
//!
//! Both readers apply the same cleanup as [`Graph::with_labels`]: self-loops
//! are dropped, repeated edges collapse, and directed inputs are symmetrized.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{BcError, Result};
use crate::graph::Graph;

/// Input file formats understood by [`load_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    MatrixMarket,
}

impl InputFormat {
    /// `.mtx` files are MatrixMarket; anything else is read as an edge list.
    pub fn sniff(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => InputFormat::MatrixMarket,
            _ => InputFormat::EdgeList,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListOptions {
    /// Accept lines with more than two tokens and ignore the rest
    /// (weights, timestamps). Off by default: such lines are errors.
    pub ignore_extra_columns: bool,
}

/// Reads an edge list separated by whitespace or commas. Lines starting with `#` or `%`
/// are comments and blank lines are skipped. Labels are assigned ids in
/// order of first appearance.
pub fn load_edge_list<R: Read>(source: R) -> Result<Graph> {
    load_edge_list_with(source, EdgeListOptions::default())
}

pub fn load_edge_list_with<R: Read>(source: R, opts: EdgeListOptions) -> Result<Graph> {
    let reader = BufReader::new(source);
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |label: &str| -> usize {
        if let Some(&id) = ids.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_owned());
        ids.insert(label.to_owned(), id);
        id
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let ok = tokens.len() == 2 || (opts.ignore_extra_columns && tokens.len() > 2);
        if !ok {
            return Err(BcError::parse(
                lineno,
                format!("expected two node labels, found {} tokens", tokens.len()),
            ));
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }

    Graph::with_labels(labels, edges)
}

/// Reads a MatrixMarket `coordinate` file as an undirected graph.
///
/// `pattern`, `integer` and `real` fields are accepted (values are
/// ignored) with `general` or `symmetric` storage. Indices are 1-based and
/// node `i` is labelled `"i"`; every index up to the declared dimension is a
/// node, so isolated nodes are kept.
pub fn load_matrix_market<R: Read>(source: R) -> Result<Graph> {
    let reader = BufReader::new(source);
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(BcError::Format("empty MatrixMarket input".into())),
    };
    let fields: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if fields.len() < 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(BcError::Format(format!("bad MatrixMarket header: {header}")));
    }
    if fields[2] != "coordinate" {
        return Err(BcError::Format(format!(
            "only coordinate storage is supported, got {}",
            fields[2]
        )));
    }
    match fields[3].as_str() {
        "pattern" | "integer" | "real" => {}
        other => return Err(BcError::Format(format!("unsupported field type {other}"))),
    }
    match fields[4].as_str() {
        "general" | "symmetric" => {}
        other => return Err(BcError::Format(format!("unsupported symmetry {other}"))),
    }

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let parse = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| BcError::parse(lineno, format!("not a non-negative integer: {t}")))
        };
        match dims {
            None => {
                if tokens.len() != 3 {
                    return Err(BcError::parse(lineno, "expected size line `rows cols entries`"));
                }
                dims = Some((parse(tokens[0])?, parse(tokens[1])?, parse(tokens[2])?));
            }
            Some((rows, cols, _)) => {
                if tokens.len() < 2 {
                    return Err(BcError::parse(lineno, "expected `row col [value]`"));
                }
                let (r, c) = (parse(tokens[0])?, parse(tokens[1])?);
                if r == 0 || c == 0 || r > rows || c > cols {
                    return Err(BcError::parse(
                        lineno,
                        format!("entry ({r}, {c}) outside declared size {rows}x{cols}"),
                    ));
                }
                edges.push((r - 1, c - 1));
            }
        }
    }

    let (rows, cols, entries) =
        dims.ok_or_else(|| BcError::Format("missing MatrixMarket size line".into()))?;
    if edges.len() != entries {
        return Err(BcError::Format(format!(
            "declared {entries} entries but found {}",
            edges.len()
        )));
    }
    let n = rows.max(cols);
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Graph::with_labels(labels, edges)
}

/// Writes one `label label` line per undirected edge.
///
/// Isolated nodes cannot be expressed in this format and are lost.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    out.flush()?;
    Ok(())
}

/// Opens and parses `path`, sniffing the format from the extension unless
/// `format` is given.
pub fn load_path(
    path: &Path,
    format: Option<InputFormat>,
    opts: EdgeListOptions,
) -> Result<Graph> {
    let file = File::open(path)?;
    match format.unwrap_or_else(|| InputFormat::sniff(path)) {
        InputFormat::EdgeList => load_edge_list_with(file, opts),
        InputFormat::MatrixMarket => load_matrix_market(file),
    }
}
