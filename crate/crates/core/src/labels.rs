use std::collections::HashMap;

use crate::error::FormatError;

/// Names for every vertex of a quiver, by matrix index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelMap {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl LabelMap {
    pub fn new(names: Vec<String>) -> Result<Self, FormatError> {
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), i).is_some() {
                return Err(FormatError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Self { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Resolves a vertex token: a decimal index, or a label when `labels` is given.
pub fn resolve_vertex(token: &str, labels: Option<&LabelMap>) -> Result<usize, FormatError> {
    if let Ok(i) = token.parse::<usize>() {
        return Ok(i);
    }
    labels
        .and_then(|l| l.index(token))
        .ok_or_else(|| FormatError::UnknownVertex(token.to_string()))
}

/// Parses whitespace-separated vertex tokens.
pub fn parse_sequence(text: &str, labels: Option<&LabelMap>) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|t| resolve_vertex(t, labels))
        .collect()
}
