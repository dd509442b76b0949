//! File formats: graph JSON, plain-text edge lists, matrix JSON, and
//! profile serialization.
//!
//! Rationals are rendered as `"p/q"` strings with `/q` dropped for
//! integers. Graph JSON:
//! `{"vertices": n, "edges": [[tail, head], ..], "gains": ["p/q", ..],
//! "flips": [bool, ..]}` with `gains` and `flips` optional. Edge lists are
//! one `tail head [gain]` per line with `#` comments.

use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, ExactMatrix};
use crate::enumeration::ActivityProfile;
use crate::graphs::{GainAssignment, GraphError, Multigraph, Orientation};
use crate::rational::{format_rational, parse_rational, ParseRationalError, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("flips list has {got} entries for {edges} edges")]
    FlipCount { edges: usize, got: usize },
    #[error("gains list has {got} entries for {edges} edges")]
    GainCount { edges: usize, got: usize },
}

/// A multigraph plus optional per-edge gains and orientation flips, exactly
/// the shape of the graph JSON schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphData {
    pub graph: Multigraph,
    pub gains: Option<GainAssignment>,
    pub flips: Option<Orientation>,
}

impl GraphData {
    pub fn plain(graph: Multigraph) -> Self {
        GraphData {
            graph,
            gains: None,
            flips: None,
        }
    }

    /// The stored flips, or the forward orientation when absent.
    pub fn orientation(&self) -> Orientation {
        self.flips
            .clone()
            .unwrap_or_else(|| Orientation::forward(self.graph.num_edges()))
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    /// Parses `tail head [gain]` lines; `#` starts a comment. The vertex
    /// count is one past the largest endpoint. Lines without a gain default
    /// to gain one when any other line carries one.
    pub fn from_edge_list(text: &str) -> Result<Self, IoError> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut gains: Vec<Option<Rational>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(IoError::EdgeList {
                    line: i + 1,
                    message: format!("expected `tail head [gain]`, got `{line}`"),
                });
            }
            let parse_vertex = |s: &str| {
                s.parse::<usize>().map_err(|_| IoError::EdgeList {
                    line: i + 1,
                    message: format!("bad vertex index `{s}`"),
                })
            };
            edges.push((parse_vertex(fields[0])?, parse_vertex(fields[1])?));
            gains.push(match fields.get(2) {
                Some(s) => Some(parse_rational(s)?),
                None => None,
            });
        }
        let vertices = edges
            .iter()
            .map(|&(t, h)| t.max(h) + 1)
            .max()
            .unwrap_or(0);
        let graph = Multigraph::with_edges(vertices, &edges)?;
        let gains = if gains.iter().any(Option::is_some) {
            Some(GainAssignment::try_new(
                gains
                    .into_iter()
                    .map(|g| g.unwrap_or_else(|| crate::rational::rat(1)))
                    .collect(),
            )?)
        } else {
            None
        };
        Ok(GraphData {
            graph,
            gains,
            flips: None,
        })
    }

    /// JSON when the text looks like an object, edge list otherwise.
    pub fn parse(text: &str) -> Result<Self, IoError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_edge_list(text)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gains: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flips: Option<Vec<bool>>,
}

impl Serialize for GraphData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dto = GraphDto {
            vertices: self.graph.num_vertices(),
            edges: self.graph.edges().collect(),
            gains: self
                .gains
                .as_ref()
                .map(|g| g.gains().iter().map(format_rational).collect()),
            flips: self.flips.as_ref().map(|o| o.flips().to_vec()),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GraphData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = GraphDto::deserialize(deserializer)?;
        let graph = Multigraph::with_edges(dto.vertices, &dto.edges).map_err(DeError::custom)?;
        let edges = graph.num_edges();
        let gains = match dto.gains {
            None => None,
            Some(raw) => {
                if raw.len() != edges {
                    return Err(DeError::custom(IoError::GainCount {
                        edges,
                        got: raw.len(),
                    }));
                }
                let parsed: Result<Vec<Rational>, _> =
                    raw.iter().map(|s| parse_rational(s)).collect();
                Some(GainAssignment::try_new(parsed.map_err(DeError::custom)?)
                    .map_err(DeError::custom)?)
            }
        };
        let flips = match dto.flips {
            None => None,
            Some(f) => {
                if f.len() != edges {
                    return Err(DeError::custom(IoError::FlipCount {
                        edges,
                        got: f.len(),
                    }));
                }
                Some(Orientation::from_flips(f))
            }
        };
        Ok(GraphData {
            graph,
            gains,
            flips,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.num_rows())
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        MatrixDto {
            rows: self.num_rows(),
            cols: self.num_cols(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = MatrixDto::deserialize(deserializer)?;
        if dto.entries.len() != dto.rows {
            return Err(DeError::custom(format!(
                "expected {} rows of entries, got {}",
                dto.rows,
                dto.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(dto.rows);
        for row in &dto.entries {
            if row.len() != dto.cols {
                return Err(DeError::custom(format!(
                    "expected {} entries per row, got {}",
                    dto.cols,
                    row.len()
                )));
            }
            let parsed: Result<Vec<Rational>, _> = row.iter().map(|s| parse_rational(s)).collect();
            rows.push(parsed.map_err(DeError::custom)?);
        }
        if dto.rows == 0 || dto.cols == 0 {
            return Ok(ExactMatrix::zeros(dto.rows, dto.cols));
        }
        ExactMatrix::from_rows(rows).map_err(DeError::custom)
    }
}

pub fn matrix_from_json(text: &str) -> Result<ExactMatrix, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn matrix_to_json(a: &ExactMatrix) -> String {
    serde_json::to_string(a).expect("matrix serialization is infallible")
}

impl Serialize for ActivityProfile {
    /// Profiles serialize as the activity histogram `{"k": count}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.counts().len()))?;
        for (k, count) in self.counts() {
            map.serialize_entry(&k.to_string(), count)?;
        }
        map.end()
    }
}
