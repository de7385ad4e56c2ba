//! Bounded search for maximal green sequences.
//!
//! The search walks the tree of green mutations from the starting quiver.
//! States are keyed by their exact exchange matrix (labels included, no
//! isomorphism quotient). `budget` caps the number of distinct states whose
//! green successors are expanded.
//!
//! * `All` is a depth-first enumeration that memoizes, per state, the green
//!   suffixes reaching an all-red quiver, so two paths into the same state
//!   share work without losing sequences.
//! * `First` is depth-first in ascending vertex order and stops at the first
//!   hit; states already explored at an equal or larger remaining depth are
//!   skipped.
//! * `Shortest` is breadth-first, keeping the lexicographically smallest path
//!   into each state, and reports the first all-red state of the lowest level.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::family::MutationSequence;
use crate::labels::LabelMap;
use crate::quiver::IceQuiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    All,
    First,
    Shortest,
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "first" => Ok(Self::First),
            "shortest" => Ok(Self::Shortest),
            other => Err(format!("unknown search mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub sequences: Vec<MutationSequence>,
    pub states_explored: usize,
    /// False when the budget cut the search short.
    pub exhausted: bool,
    pub max_len: usize,
}

impl SearchReport {
    pub fn to_document(&self, labels: Option<&LabelMap>) -> SearchDocument {
        SearchDocument {
            sequences: self
                .sequences
                .iter()
                .map(|s| match labels {
                    Some(l) => s.labels(l),
                    None => s.steps().iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
            states_explored: self.states_explored,
            exhausted: self.exhausted,
            max_len: self.max_len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDocument {
    pub sequences: Vec<Vec<String>>,
    pub states_explored: usize,
    pub exhausted: bool,
    pub max_len: usize,
}

pub fn search_mgs(
    q: &IceQuiver,
    max_len: usize,
    budget: usize,
    mode: SearchMode,
) -> Result<SearchReport, EngineError> {
    if max_len == 0 || budget == 0 {
        return Err(EngineError::InvalidBounds);
    }
    let mut ctx = Ctx {
        budget,
        explored: 0,
        truncated: false,
    };
    let found = match mode {
        SearchMode::All => {
            let mut memo = HashMap::new();
            let suffixes = all(q, max_len, &mut ctx, &mut memo)?;
            suffixes.iter().cloned().collect()
        }
        SearchMode::First => {
            let mut seen = HashMap::new();
            let mut path = Vec::new();
            first(q, max_len, &mut ctx, &mut seen, &mut path)?
                .into_iter()
                .collect()
        }
        SearchMode::Shortest => shortest(q, max_len, &mut ctx)?.into_iter().collect::<Vec<_>>(),
    };
    let report = SearchReport {
        sequences: found
            .into_iter()
            .filter(|s: &Vec<usize>| !s.is_empty())
            .map(|s| MutationSequence::user(s).expect("non-empty"))
            .collect(),
        states_explored: ctx.explored,
        exhausted: !ctx.truncated,
        max_len,
    };
    if ctx.truncated && mode != SearchMode::First {
        return Err(EngineError::BudgetExceeded {
            budget,
            partial: Box::new(report),
        });
    }
    Ok(report)
}

struct Ctx {
    budget: usize,
    explored: usize,
    truncated: bool,
}

impl Ctx {
    /// Claims one expansion; false once the budget is spent.
    fn expand(&mut self) -> bool {
        if self.explored >= self.budget {
            self.truncated = true;
            return false;
        }
        self.explored += 1;
        true
    }
}

type Suffixes = Rc<Vec<Vec<usize>>>;

fn all(
    q: &IceQuiver,
    remaining: usize,
    ctx: &mut Ctx,
    memo: &mut HashMap<IceQuiver, (usize, Suffixes)>,
) -> Result<Suffixes, EngineError> {
    let greens = q.green_vertices()?;
    if greens.is_empty() {
        return Ok(Rc::new(vec![Vec::new()]));
    }
    if remaining == 0 {
        return Ok(Rc::new(Vec::new()));
    }
    if let Some((depth, sufs)) = memo.get(q) {
        if *depth >= remaining {
            let fitting: Vec<Vec<usize>> =
                sufs.iter().filter(|s| s.len() <= remaining).cloned().collect();
            return Ok(Rc::new(fitting));
        }
    }
    if !ctx.expand() {
        return Ok(Rc::new(Vec::new()));
    }
    let mut out = Vec::new();
    for k in greens {
        let child = q.mutate(k)?;
        for s in all(&child, remaining - 1, ctx, memo)?.iter() {
            let mut seq = Vec::with_capacity(s.len() + 1);
            seq.push(k);
            seq.extend_from_slice(s);
            out.push(seq);
        }
        if ctx.truncated {
            // partial results must not be memoized as complete
            return Ok(Rc::new(out));
        }
    }
    let out = Rc::new(out);
    memo.insert(q.clone(), (remaining, Rc::clone(&out)));
    Ok(out)
}

fn first(
    q: &IceQuiver,
    remaining: usize,
    ctx: &mut Ctx,
    seen: &mut HashMap<IceQuiver, usize>,
    path: &mut Vec<usize>,
) -> Result<Option<Vec<usize>>, EngineError> {
    let greens = q.green_vertices()?;
    if greens.is_empty() {
        return Ok(Some(path.clone()));
    }
    if remaining == 0 {
        return Ok(None);
    }
    if seen.get(q).is_some_and(|&d| d >= remaining) {
        return Ok(None);
    }
    if !ctx.expand() {
        return Ok(None);
    }
    for k in greens {
        let child = q.mutate(k)?;
        path.push(k);
        let hit = first(&child, remaining - 1, ctx, seen, path)?;
        path.pop();
        if hit.is_some() {
            return Ok(hit);
        }
        if ctx.truncated {
            return Ok(None);
        }
    }
    seen.insert(q.clone(), remaining);
    Ok(None)
}

fn shortest(q: &IceQuiver, max_len: usize, ctx: &mut Ctx) -> Result<Option<Vec<usize>>, EngineError> {
    let mut visited: HashSet<IceQuiver> = HashSet::new();
    visited.insert(q.clone());
    let mut level = vec![(q.clone(), Vec::new())];
    for depth in 0..=max_len {
        let mut next = Vec::new();
        for (state, path) in &level {
            let greens = state.green_vertices()?;
            if greens.is_empty() {
                return Ok(Some(path.clone()));
            }
            if depth == max_len {
                continue;
            }
            if !ctx.expand() {
                return Ok(None);
            }
            for k in greens {
                let child = state.mutate(k)?;
                if visited.insert(child.clone()) {
                    let mut p = path.clone();
                    p.push(k);
                    next.push((child, p));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(None)
}
