//! Replaying mutation sequences while tracking vertex colors.

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::labels::LabelMap;
use crate::quiver::{color_string, IceQuiver, VertexColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every step must mutate a vertex that is green at that moment.
    #[default]
    StrictGreen,
    Unrestricted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based.
    pub index: usize,
    pub vertex: usize,
    pub colors: Vec<VertexColor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: IceQuiver,
    pub steps: Vec<TraceStep>,
    pub snapshots: Option<Vec<IceQuiver>>,
}

impl Trace {
    pub fn final_quiver(&self) -> IceQuiver {
        match &self.snapshots {
            Some(s) if !s.is_empty() => s[s.len() - 1].clone(),
            _ => self
                .initial
                .mutate_along(&self.steps.iter().map(|s| s.vertex).collect::<Vec<_>>())
                .expect("trace steps were already applied once"),
        }
    }

    pub fn to_document(&self, labels: Option<&LabelMap>) -> TraceDocument {
        TraceDocument {
            initial_colors: self.initial.color_vector().ok().map(|c| color_string(&c)),
            steps: self
                .steps
                .iter()
                .map(|s| TraceStepDocument {
                    index: s.index,
                    vertex: s.vertex,
                    label: labels.and_then(|l| l.name(s.vertex)).map(str::to_string),
                    colors: color_string(&s.colors),
                })
                .collect(),
            snapshots: self.snapshots.as_ref().map(|snaps| {
                snaps
                    .iter()
                    .map(|q| crate::format::QuiverDocument::from_quiver(q, None))
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepDocument {
    pub index: usize,
    pub vertex: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub colors: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_colors: Option<String>,
    pub steps: Vec<TraceStepDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<Vec<crate::format::QuiverDocument>>,
}

/// Mutates `q` along `steps`, recording the color vector after each step.
pub fn apply_sequence(
    q: &IceQuiver,
    steps: &[usize],
    mode: Mode,
    snapshots: bool,
) -> Result<Trace, EngineError> {
    let mut current = q.clone();
    let mut trace_steps = Vec::with_capacity(steps.len());
    let mut snaps = snapshots.then(|| Vec::with_capacity(steps.len()));
    for (pos, &vertex) in steps.iter().enumerate() {
        if mode == Mode::StrictGreen && !current.vertex_color(vertex)?.is_green() {
            return Err(EngineError::NotGreenAtStep {
                step: pos + 1,
                vertex,
            });
        }
        current = current.mutate(vertex)?;
        trace_steps.push(TraceStep {
            index: pos + 1,
            vertex,
            colors: current.color_vector()?,
        });
        if let Some(s) = snaps.as_mut() {
            s.push(current.clone());
        }
    }
    Ok(Trace {
        initial: q.clone(),
        steps: trace_steps,
        snapshots: snaps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub is_green: bool,
    pub is_maximal: bool,
    /// 1-based step at which a non-green vertex was mutated.
    pub failure_index: Option<usize>,
    pub final_colors: Vec<VertexColor>,
    /// The quiver after the last accepted step.
    pub final_quiver: IceQuiver,
}

impl SequenceReport {
    pub fn to_document(&self) -> ReportDocument {
        ReportDocument {
            is_green: self.is_green,
            is_maximal: self.is_maximal,
            failure_index: self.failure_index,
            final_colors: color_string(&self.final_colors),
            permutation: coframe_permutation(self),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub is_green: bool,
    pub is_maximal: bool,
    pub failure_index: Option<usize>,
    pub final_colors: String,
    /// `permutation[i] = j` when the final frozen arrows are `j' -> i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
}

/// Decides whether `steps` is a (maximal) green sequence for `q`. A
/// non-green step is reported through `failure_index`; structural problems
/// (frozen targets, undefined colors) are errors.
pub fn check_sequence(q: &IceQuiver, steps: &[usize]) -> Result<SequenceReport, EngineError> {
    let mut current = q.clone();
    for (pos, &vertex) in steps.iter().enumerate() {
        if !current.vertex_color(vertex)?.is_green() {
            let final_colors = current.color_vector()?;
            return Ok(SequenceReport {
                is_green: false,
                is_maximal: false,
                failure_index: Some(pos + 1),
                final_colors,
                final_quiver: current,
            });
        }
        current = current.mutate(vertex)?;
    }
    let final_colors = current.color_vector()?;
    let is_maximal = final_colors.iter().all(|c| !c.is_green());
    Ok(SequenceReport {
        is_green: true,
        is_maximal,
        failure_index: None,
        final_colors,
        final_quiver: current,
    })
}

/// For a maximal run, reads the permutation `p` with frozen arrows
/// `p(i)' -> i` (each of multiplicity one) and no other mutable–frozen
/// arrows. `None` when the frozen block is not a negated permutation matrix.
pub fn coframe_permutation(report: &SequenceReport) -> Option<Vec<usize>> {
    if !report.is_maximal {
        return None;
    }
    let q = &report.final_quiver;
    let n = q.n_mutable();
    if q.n_frozen() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for i in 0..n {
        let mut found = None;
        for j in 0..n {
            match q.entry(i, n + j) {
                0 => {}
                -1 if found.is_none() => found = Some(j),
                _ => return None,
            }
        }
        let j = found?;
        if std::mem::replace(&mut used[j], true) {
            return None;
        }
        perm.push(j);
    }
    Some(perm)
}

/// True when the final quiver of a maximal run is a coframed quiver up to
/// relabeling the frozen vertices.
pub fn coframe_check(report: &SequenceReport) -> bool {
    coframe_permutation(report).is_some()
}
