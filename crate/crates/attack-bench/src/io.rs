//! Network ingestion: edge-list and GML parsing into [`Graph`] with
//! deterministic first-appearance relabeling.
//!
//! Edge-list format: UTF-8 text, one "u v" pair per line, blank lines and
//! lines starting with '#' ignored. GML support is the minimal subset needed
//! for public datasets: `node [ id N ]` and `edge [ source A target B ]`
//! blocks, all other attributes ignored, undirected interpretation.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected two whitespace-separated labels, got {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: self-loop on {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: duplicate edge ({a:?}, {b:?})")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("gml: {0}")]
    Gml(String),
    #[error("gml: edge references undeclared node {0}")]
    UnknownNode(i64),
    #[error("edge endpoint {0:?} does not appear in the label list")]
    UnknownLabel(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed network before relabeling: original node labels plus edges
/// expressed as label pairs. Labels are unique and listed in
/// first-appearance order; the label at position `i` becomes node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNetwork {
    pub labels: Vec<String>,
    pub edge_pairs: Vec<(String, String)>,
}

/// Parses whitespace-separated "u v" lines. With `dedup` set, repeated
/// (unordered) edges are silently dropped instead of rejected.
pub fn parse_edge_list(text: &str, dedup: bool) -> Result<RawNetwork, ParseError> {
    let mut labels = Vec::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut edge_pairs = Vec::new();

    let mut intern = |name: &str, labels: &mut Vec<String>| -> usize {
        *label_index.entry(name.to_owned()).or_insert_with(|| {
            labels.push(name.to_owned());
            labels.len() - 1
        })
    };

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(ParseError::MalformedLine {
                    line: lineno + 1,
                    found: line.to_owned(),
                })
            }
        };
        if a == b {
            return Err(ParseError::SelfLoop {
                line: lineno + 1,
                label: a.to_owned(),
            });
        }
        let ia = intern(a, &mut labels);
        let ib = intern(b, &mut labels);
        let key = (ia.min(ib), ia.max(ib));
        if seen.insert(key, ()).is_some() {
            if dedup {
                continue;
            }
            return Err(ParseError::DuplicateEdge {
                line: lineno + 1,
                a: a.to_owned(),
                b: b.to_owned(),
            });
        }
        edge_pairs.push((a.to_owned(), b.to_owned()));
    }
    Ok(RawNetwork { labels, edge_pairs })
}

#[derive(Debug, PartialEq)]
enum GmlToken {
    Open,
    Close,
    Word(String),
    Value(String),
}

fn tokenize_gml(text: &str) -> Vec<GmlToken> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '[' {
            chars.next();
            tokens.push(GmlToken::Open);
        } else if c == ']' {
            chars.next();
            tokens.push(GmlToken::Close);
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            for ch in chars.by_ref() {
                if ch == '"' {
                    break;
                }
                s.push(ch);
            }
            tokens.push(GmlToken::Value(s));
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '[' || ch == ']' {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            tokens.push(GmlToken::Word(s));
        }
    }
    tokens
}

/// Parses the GML subset: a `graph [ ... ]` block containing `node` blocks
/// with an `id` and `edge` blocks with `source`/`target`. Every other
/// attribute (labels, values, nested blocks) is skipped.
pub fn parse_gml_edges(text: &str) -> Result<RawNetwork, ParseError> {
    let tokens = tokenize_gml(text);
    let mut pos = 0;

    // Find "graph [".
    loop {
        match tokens.get(pos) {
            Some(GmlToken::Word(w)) if w == "graph" => {
                pos += 1;
                match tokens.get(pos) {
                    Some(GmlToken::Open) => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(ParseError::Gml("expected '[' after 'graph'".into())),
                }
            }
            Some(_) => pos += 1,
            None => return Err(ParseError::Gml("no 'graph [' block found".into())),
        }
    }

    let mut node_ids: Vec<i64> = Vec::new();
    let mut declared: HashMap<i64, ()> = HashMap::new();
    let mut edges: Vec<(i64, i64)> = Vec::new();
    let mut depth = 1usize;

    while depth > 0 {
        match tokens.get(pos) {
            None => return Err(ParseError::Gml("unbalanced brackets".into())),
            Some(GmlToken::Close) => {
                depth -= 1;
                pos += 1;
            }
            Some(GmlToken::Open) => {
                // Anonymous or unexpected block: skip it wholesale.
                pos = skip_block(&tokens, pos + 1)?;
            }
            Some(GmlToken::Word(key)) if depth == 1 && (key == "node" || key == "edge") => {
                let is_node = key == "node";
                pos += 1;
                match tokens.get(pos) {
                    Some(GmlToken::Open) => pos += 1,
                    _ => return Err(ParseError::Gml(format!("expected '[' after '{key}'"))),
                }
                let (attrs, next) = parse_attr_block(&tokens, pos)?;
                pos = next;
                if is_node {
                    let id = attrs
                        .get("id")
                        .ok_or_else(|| ParseError::Gml("node block without id".into()))?;
                    let id: i64 = id
                        .parse()
                        .map_err(|_| ParseError::Gml(format!("bad node id {id:?}")))?;
                    if declared.insert(id, ()).is_some() {
                        return Err(ParseError::Gml(format!("duplicate node id {id}")));
                    }
                    node_ids.push(id);
                } else {
                    let get = |k: &str| -> Result<i64, ParseError> {
                        let v = attrs
                            .get(k)
                            .ok_or_else(|| ParseError::Gml(format!("edge block without {k}")))?;
                        v.parse()
                            .map_err(|_| ParseError::Gml(format!("bad edge {k} {v:?}")))
                    };
                    edges.push((get("source")?, get("target")?));
                }
            }
            Some(GmlToken::Word(_)) => {
                // key followed by a scalar value or a nested block
                pos += 1;
                match tokens.get(pos) {
                    Some(GmlToken::Open) => pos = skip_block(&tokens, pos + 1)?,
                    Some(_) => pos += 1,
                    None => return Err(ParseError::Gml("dangling key".into())),
                }
            }
            Some(GmlToken::Value(_)) => pos += 1,
        }
    }

    let mut raw = RawNetwork {
        labels: node_ids.iter().map(|id| id.to_string()).collect(),
        edge_pairs: Vec::with_capacity(edges.len()),
    };
    for (lineno, (s, t)) in edges.into_iter().enumerate() {
        for endpoint in [s, t] {
            if !declared.contains_key(&endpoint) {
                return Err(ParseError::UnknownNode(endpoint));
            }
        }
        if s == t {
            return Err(ParseError::SelfLoop {
                line: lineno + 1,
                label: s.to_string(),
            });
        }
        raw.edge_pairs.push((s.to_string(), t.to_string()));
    }
    Ok(raw)
}

/// Collects flat key/value pairs inside a block, skipping nested blocks.
/// `pos` points just past the opening bracket; returns the position just
/// past the matching close.
fn parse_attr_block(
    tokens: &[GmlToken],
    mut pos: usize,
) -> Result<(HashMap<String, String>, usize), ParseError> {
    let mut attrs = HashMap::new();
    loop {
        match tokens.get(pos) {
            None => return Err(ParseError::Gml("unterminated block".into())),
            Some(GmlToken::Close) => return Ok((attrs, pos + 1)),
            Some(GmlToken::Word(key)) => {
                pos += 1;
                match tokens.get(pos) {
                    Some(GmlToken::Open) => pos = skip_block(tokens, pos + 1)?,
                    Some(GmlToken::Word(v)) | Some(GmlToken::Value(v)) => {
                        attrs.entry(key.clone()).or_insert_with(|| v.clone());
                        pos += 1;
                    }
                    Some(GmlToken::Close) | None => {
                        return Err(ParseError::Gml("dangling key".into()))
                    }
                }
            }
            Some(_) => pos += 1,
        }
    }
}

fn skip_block(tokens: &[GmlToken], mut pos: usize) -> Result<usize, ParseError> {
    let mut depth = 1usize;
    while depth > 0 {
        match tokens.get(pos) {
            None => return Err(ParseError::Gml("unterminated block".into())),
            Some(GmlToken::Open) => depth += 1,
            Some(GmlToken::Close) => depth -= 1,
            Some(_) => {}
        }
        pos += 1;
    }
    Ok(pos)
}

/// Densely relabels a raw network by first-appearance order of its labels.
pub fn to_graph(raw: &RawNetwork) -> Result<Graph, ParseError> {
    let index: HashMap<&str, usize> = raw
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut edges = Vec::with_capacity(raw.edge_pairs.len());
    for (a, b) in &raw.edge_pairs {
        let ia = *index
            .get(a.as_str())
            .ok_or_else(|| ParseError::UnknownLabel(a.clone()))?;
        let ib = *index
            .get(b.as_str())
            .ok_or_else(|| ParseError::UnknownLabel(b.clone()))?;
        edges.push((ia, ib));
    }
    Ok(Graph::from_edges(raw.labels.len(), &edges)?)
}

/// Serializes a graph back to edge-list text, one "u v" line per edge in
/// index order. Isolated nodes are not representable in this format.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
