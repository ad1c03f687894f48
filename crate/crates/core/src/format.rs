//! Line-oriented `key value` documents.
//!
//! Every document is a sequence of lines `key value...` in a fixed key
//! order. Blank lines and `#` comments are ignored on input. Vertices are
//! written as 1-based tuples `(2,1,1)`, cliques as `(class:element, ...)`.

use std::fmt::Write as _;

use crate::bridge::{Clique, CliqueFamily, MultipartiteVertex};
use crate::error::{Error, Result};
use crate::hamming::{HVertex, HammingShape};
use crate::solver::{Method, SolveCertificate, SolveStats};
use crate::vertex_set::VertexSet;

/// An ordered list of `key value` fields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    fields: Vec<(String, String)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// One `key value` pair per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            if v.is_empty() {
                let _ = writeln!(out, "{k}");
            } else {
                let _ = writeln!(out, "{k} {v}");
            }
        }
        out
    }

    /// Keys padded to a common width.
    pub fn render_aligned(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{}", format!("{k:<width$}  {v}").trim_end());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Document {
            fields: parse_lines(text)?.into_iter().map(|(_, k, v)| (k, v)).collect(),
        })
    }
}

fn parse_lines(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((a, b)) => (a, b.trim()),
            None => (line, ""),
        };
        out.push((k + 1, key.to_string(), value.to_string()));
    }
    Ok(out)
}

fn field<'a>(lines: &'a [(usize, String, String)], key: &str) -> Result<(usize, &'a str)> {
    lines
        .iter()
        .find(|(_, k, _)| k == key)
        .map(|(l, _, v)| (*l, v.as_str()))
        .ok_or_else(|| Error::parse(0, format!("missing `{key}` field")))
}

/// Splits `(a,b) (c,d)` into parenthesized groups, tolerating spaces inside.
pub fn split_groups(text: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::InvalidParameter(format!("expected `(` at {rest:?}")));
        }
        let end = rest
            .find(')')
            .ok_or_else(|| Error::InvalidParameter(format!("unclosed group in {text:?}")))?;
        out.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start_matches([' ', '\t', ',']);
    }
    Ok(out)
}

fn shape_line(lines: &[(usize, String, String)]) -> Result<HammingShape> {
    let (line, text) = field(lines, "shape")?;
    text.parse().map_err(|e: Error| Error::parse(line, e.to_string()))
}

fn vertex_list(shape: &HammingShape, line: usize, text: &str) -> Result<Vec<HVertex>> {
    split_groups(text)
        .and_then(|groups| {
            groups
                .into_iter()
                .map(|g| {
                    let raw: HVertex = g.parse()?;
                    shape.vertex(&raw.one_based())
                })
                .collect()
        })
        .map_err(|e| Error::parse(line, e.to_string()))
}

fn join_display<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A vertex set of a Hamming graph: fields `shape` and `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDocument {
    pub shape: HammingShape,
    pub vertices: Vec<HVertex>,
}

impl SetDocument {
    pub fn from_set(shape: &HammingShape, set: &VertexSet) -> Result<Self> {
        Ok(SetDocument {
            shape: shape.clone(),
            vertices: set.vertices(shape)?,
        })
    }

    pub fn to_set(&self) -> Result<VertexSet> {
        VertexSet::from_vertices(&self.shape, &self.vertices)
    }

    pub fn document(&self) -> Document {
        let mut d = Document::new();
        d.push("shape", &self.shape)
            .push("vertices", join_display(&self.vertices));
        d
    }

    pub fn render(&self) -> String {
        self.document().render()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = parse_lines(text)?;
        let shape = shape_line(&lines)?;
        let (line, list) = field(&lines, "vertices")?;
        let vertices = vertex_list(&shape, line, list)?;
        Ok(SetDocument { shape, vertices })
    }
}

/// A vertex set of an edge-list graph: `vertices 1 4 7`, 1-based ids.
pub fn parse_plain_set(text: &str, vertex_count: usize) -> Result<VertexSet> {
    let lines = parse_lines(text)?;
    let (line, list) = field(&lines, "vertices")?;
    let mut set = VertexSet::new(vertex_count);
    for tok in list.split_whitespace() {
        let id: usize = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("bad vertex id {tok:?}")))?;
        if id == 0 || id > vertex_count {
            return Err(Error::parse(line, format!("vertex {id} outside 1..={vertex_count}")));
        }
        set.insert(id - 1)?;
    }
    Ok(set)
}

/// A clique family: fields `shape` and `cliques`.
pub fn render_family(family: &CliqueFamily) -> String {
    let mut d = Document::new();
    d.push("shape", family.shape())
        .push("cliques", join_display(family.cliques()));
    d.render()
}

/// Parses a family document. Cliques are either `(class:element, ...)`
/// or positional `(e1, ..., er)` with the position giving the class.
pub fn parse_family(text: &str) -> Result<CliqueFamily> {
    let lines = parse_lines(text)?;
    let shape = shape_line(&lines)?;
    let (line, list) = field(&lines, "cliques")?;
    let groups = split_groups(list).map_err(|e| Error::parse(line, e.to_string()))?;
    let mut cliques = Vec::with_capacity(groups.len());
    for g in groups {
        let inner = &g[1..g.len() - 1];
        let mut members = Vec::new();
        for (pos, tok) in inner.split(',').map(str::trim).enumerate() {
            let (class, element) = match tok.split_once(':') {
                Some((c, e)) => (c.trim(), e.trim()),
                None => ("", tok),
            };
            let class = if class.is_empty() {
                pos + 1
            } else {
                class
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad class in {g}")))?
            };
            let element = element
                .parse::<u32>()
                .map_err(|_| Error::parse(line, format!("bad element in {g}")))?;
            if class == 0 || element == 0 {
                return Err(Error::parse(line, format!("{g}: classes and elements are 1-indexed")));
            }
            members.push(MultipartiteVertex {
                class: class - 1,
                element: element - 1,
            });
        }
        let clique = Clique::new(members.clone());
        if clique.members().len() != members.len() {
            return Err(Error::parse(line, format!("{g} repeats a vertex")));
        }
        cliques.push(clique);
    }
    CliqueFamily::new(shape, cliques).map_err(|e| Error::parse(line, e.to_string()))
}

/// Fields `shape value optimal witness nodes millis method`.
pub fn certificate_document(cert: &SolveCertificate) -> Result<Document> {
    let mut d = Document::new();
    d.push("shape", &cert.shape)
        .push("value", cert.value)
        .push("optimal", cert.optimal)
        .push("witness", join_display(cert.witness.vertices(&cert.shape)?))
        .push("nodes", cert.stats.nodes)
        .push("millis", cert.stats.millis)
        .push("method", cert.stats.method);
    Ok(d)
}

pub fn render_certificate(cert: &SolveCertificate) -> Result<String> {
    Ok(certificate_document(cert)?.render())
}

pub fn parse_certificate(text: &str) -> Result<SolveCertificate> {
    let lines = parse_lines(text)?;
    let shape = shape_line(&lines)?;
    let num = |key: &str| -> Result<u64> {
        let (line, v) = field(&lines, key)?;
        v.parse().map_err(|_| Error::parse(line, format!("bad {key} {v:?}")))
    };
    let (oline, optimal) = field(&lines, "optimal")?;
    let optimal = optimal
        .parse::<bool>()
        .map_err(|_| Error::parse(oline, format!("bad optimal {optimal:?}")))?;
    let (wline, witness) = field(&lines, "witness")?;
    let witness = VertexSet::from_vertices(&shape, &vertex_list(&shape, wline, witness)?)?;
    let (mline, method) = field(&lines, "method")?;
    let method: Method = method.parse().map_err(|e: Error| Error::parse(mline, e.to_string()))?;
    let value = num("value")? as usize;
    if value != witness.len() {
        return Err(Error::parse(
            0,
            format!("value {value} but witness has {} vertices", witness.len()),
        ));
    }
    Ok(SolveCertificate {
        shape,
        value,
        optimal,
        witness,
        stats: SolveStats {
            nodes: num("nodes")?,
            millis: num("millis")?,
            method,
        },
    })
}
