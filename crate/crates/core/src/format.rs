//! Quiver documents (JSON) and Graphviz export.
//!
//! A document looks like
//!
//! ```json
//! {"n_mutable": 2, "n_frozen": 2, "arrows": [[0, 1, 1], [0, 2, 1], [1, 3, 1]],
//!  "labels": ["x", "y", "x'", "y'"]}
//! ```
//!
//! Arrows are written in row-major source order; `labels` is optional.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::labels::LabelMap;
use crate::quiver::{Arrow, IceQuiver, VertexColor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub n_mutable: usize,
    pub n_frozen: usize,
    pub arrows: Vec<[u32; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl QuiverDocument {
    pub fn from_quiver(q: &IceQuiver, labels: Option<&LabelMap>) -> Self {
        Self {
            n_mutable: q.n_mutable(),
            n_frozen: q.n_frozen(),
            arrows: q
                .arrows()
                .into_iter()
                .map(|a| [a.source as u32, a.target as u32, a.multiplicity])
                .collect(),
            labels: labels.map(|l| l.names().to_vec()),
        }
    }

    pub fn to_quiver(&self) -> Result<(IceQuiver, Option<LabelMap>), FormatError> {
        let q = IceQuiver::new(
            self.n_mutable,
            self.n_frozen,
            self.arrows
                .iter()
                .map(|&[s, t, m]| Arrow::new(s as usize, t as usize, m)),
        )?;
        let labels = match &self.labels {
            None => None,
            Some(names) => {
                if names.len() != q.dim() {
                    return Err(FormatError::LabelCount {
                        expected: q.dim(),
                        actual: names.len(),
                    });
                }
                Some(LabelMap::new(names.clone())?)
            }
        };
        Ok((q, labels))
    }
}

pub fn serialize(q: &IceQuiver) -> String {
    serialize_labeled(q, None)
}

pub fn serialize_labeled(q: &IceQuiver, labels: Option<&LabelMap>) -> String {
    serde_json::to_string_pretty(&QuiverDocument::from_quiver(q, labels))
        .expect("quiver documents always serialize")
}

pub fn deserialize(text: &str) -> Result<IceQuiver, FormatError> {
    deserialize_labeled(text).map(|(q, _)| q)
}

pub fn deserialize_labeled(text: &str) -> Result<(IceQuiver, Option<LabelMap>), FormatError> {
    let doc: QuiverDocument =
        serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
    doc.to_quiver()
}

/// Graphviz rendering. Mutable vertices are filled green or red; vertices
/// whose color is undefined get the `mixed` style; frozen vertices are
/// blue boxes. Multiplicities above one become edge labels.
pub fn to_dot(q: &IceQuiver, labels: Option<&LabelMap>) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in 0..q.dim() {
        let name = labels
            .and_then(|l| l.name(v))
            .map(str::to_string)
            .unwrap_or_else(|| v.to_string());
        let style = if q.is_frozen(v) {
            "shape=box, style=filled, fillcolor=lightblue".to_string()
        } else {
            match q.vertex_color(v) {
                Ok(VertexColor::Green) => "style=filled, fillcolor=green".to_string(),
                Ok(VertexColor::Red) => "style=filled, fillcolor=red".to_string(),
                Err(_) => "style=\"filled,dashed\", fillcolor=gray, class=mixed".to_string(),
            }
        };
        let _ = writeln!(out, "  {v} [label=\"{}\", {style}];", escape(&name));
    }
    for a in q.arrows() {
        if a.multiplicity > 1 {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                a.source, a.target, a.multiplicity
            );
        } else {
            let _ = writeln!(out, "  {} -> {};", a.source, a.target);
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
