//! The torus family `Q_{T_n}` and its named mutation sequences.
//!
//! Each block `i` in `1..=n` contributes six mutable vertices
//! `a_i, b_i, c_i, d_i, e_i, f_i` at indices `6(i-1) + {0..5}`; the frozen
//! copy of vertex `v` sits at `v + 6n`. Block indices are cyclic, so
//! `f_0` is `f_n`. The `f` vertices form an oriented `n`-cycle
//! `f_i -> f_{i-1}`, and every block hangs off that cycle through `e_i`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::labels::LabelMap;
use crate::quiver::{Arrow, IceQuiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F];

    pub fn offset(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.letter() == c)
    }
}

/// A symbolic vertex name such as `c_2` or its frozen copy `c'_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    pub family: Family,
    pub block: usize,
    pub frozen: bool,
}

impl VertexLabel {
    pub fn mutable(family: Family, block: usize) -> Self {
        Self {
            family,
            block,
            frozen: false,
        }
    }

    pub fn frozen(family: Family, block: usize) -> Self {
        Self {
            family,
            block,
            frozen: true,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.frozen { "'" } else { "" };
        write!(f, "{}{}_{}", self.family.letter(), prime, self.block)
    }
}

impl FromStr for VertexLabel {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::BadLabel(s.to_string());
        let (head, block) = s.split_once('_').ok_or_else(bad)?;
        let mut chars = head.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let frozen = match chars.as_str() {
            "" => false,
            "'" => true,
            _ => return Err(bad()),
        };
        if block.is_empty() || !block.bytes().all(|b| b.is_ascii_digit()) || block.starts_with('0') {
            return Err(bad());
        }
        let block = block.parse().map_err(|_| bad())?;
        Ok(Self {
            family,
            block,
            frozen,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "block", rename_all = "kebab-case")]
pub enum Provenance {
    Cycle,
    Sigma(usize),
    Tau(usize),
    Theorem,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cycle => f.write_str("cycle"),
            Provenance::Sigma(i) => write!(f, "sigma({i})"),
            Provenance::Tau(i) => write!(f, "tau({i})"),
            Provenance::Theorem => f.write_str("theorem"),
            Provenance::User => f.write_str("user"),
        }
    }
}

/// A non-empty list of vertex indices to mutate, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationSequence {
    steps: Vec<usize>,
    provenance: Provenance,
}

impl MutationSequence {
    pub fn new(steps: Vec<usize>, provenance: Provenance) -> Result<Self, FamilyError> {
        if steps.is_empty() {
            return Err(FamilyError::EmptySequence);
        }
        Ok(Self { steps, provenance })
    }

    pub fn user(steps: Vec<usize>) -> Result<Self, FamilyError> {
        Self::new(steps, Provenance::User)
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Step names through `labels`, falling back to the raw index.
    pub fn labels(&self, labels: &LabelMap) -> Vec<String> {
        self.steps
            .iter()
            .map(|&v| labels.name(v).map(str::to_string).unwrap_or_else(|| v.to_string()))
            .collect()
    }
}

const SIGMA: [Family; 11] = {
    use Family::*;
    [E, D, B, C, A, B, D, E, C, A, B]
};

const TAU: [Family; 9] = {
    use Family::*;
    [E, B, A, C, E, D, B, A, E]
};

/// Block order of the cycle sequence: `n, n-1, ..., 1, 3, 4, ..., n`.
pub fn cycle_blocks(n: usize) -> Vec<usize> {
    (1..=n).rev().chain(3..=n).collect()
}

fn check_genus(n: usize) -> Result<(), FamilyError> {
    if n < 3 {
        return Err(FamilyError::UnsupportedGenus { n });
    }
    Ok(())
}

/// A local arrow set expected at some point of a run: the arrows among
/// `vertices` must be exactly `arrows`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFixture {
    pub vertices: Vec<usize>,
    pub arrows: Vec<Arrow>,
}

impl LocalFixture {
    fn new(vertices: Vec<usize>, mut arrows: Vec<Arrow>) -> Self {
        arrows.sort();
        Self { vertices, arrows }
    }

    pub fn matches(&self, q: &IceQuiver) -> bool {
        q.induced_arrows(&self.vertices) == self.arrows
    }
}

/// Step ranges of the theorem sequence for a fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremLayout {
    n: usize,
}

impl TheoremLayout {
    /// The opening cycle segment `f_n..f_1, f_3..f_n`.
    pub fn cycle(&self) -> Range<usize> {
        0..2 * self.n - 2
    }

    /// Steps of `σ_i`; the σ blocks run from `n` down to 1.
    pub fn sigma(&self, i: usize) -> Range<usize> {
        let start = 2 * self.n - 2 + 11 * (self.n - i);
        start..start + 11
    }

    /// The middle segment `f_3..f_n, f_2, f_1, f_n..f_3`.
    pub fn middle(&self) -> Range<usize> {
        let start = 2 * self.n - 2 + 11 * self.n;
        start..start + 2 * self.n - 2
    }

    pub fn tau(&self, i: usize) -> Range<usize> {
        let start = 4 * self.n - 4 + 11 * self.n + 9 * (self.n - i);
        start..start + 9
    }

    pub fn len(&self) -> usize {
        24 * self.n - 4
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusFamily {
    n: usize,
}

impl TorusFamily {
    pub fn new(n: usize) -> Result<Self, FamilyError> {
        check_genus(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_mutable(&self) -> usize {
        6 * self.n
    }

    fn check_block(&self, block: usize) -> Result<(), FamilyError> {
        if block == 0 || block > self.n {
            return Err(FamilyError::BlockOutOfRange { block, n: self.n });
        }
        Ok(())
    }

    /// Index of `family` in block `block`, with block numbers taken
    /// cyclically (`0` is `n`, `n + 1` is `1`).
    pub fn vertex(&self, family: Family, block: usize) -> usize {
        let b = (block + self.n - 1) % self.n;
        6 * b + family.offset()
    }

    pub fn frozen_vertex(&self, family: Family, block: usize) -> usize {
        self.vertex(family, block) + self.n_mutable()
    }

    pub fn index(&self, label: VertexLabel) -> Result<usize, FamilyError> {
        self.check_block(label.block)?;
        Ok(if label.frozen {
            self.frozen_vertex(label.family, label.block)
        } else {
            self.vertex(label.family, label.block)
        })
    }

    pub fn label(&self, index: usize) -> Option<VertexLabel> {
        if index >= 2 * self.n_mutable() {
            return None;
        }
        let frozen = index >= self.n_mutable();
        let v = index % self.n_mutable();
        Some(VertexLabel {
            family: Family::ALL[v % 6],
            block: v / 6 + 1,
            frozen,
        })
    }

    pub fn label_map(&self) -> LabelMap {
        let names = (0..2 * self.n_mutable())
            .map(|i| self.label(i).expect("index in range").to_string())
            .collect();
        LabelMap::new(names).expect("family labels are distinct")
    }

    /// The eleven arrows per block, without framing.
    pub fn mutable_arrows(&self) -> Vec<Arrow> {
        use Family::*;
        let mut out = Vec::with_capacity(11 * self.n);
        for i in 1..=self.n {
            let v = |f| self.vertex(f, i);
            out.extend([
                Arrow::new(v(A), v(C), 1),
                Arrow::new(v(A), v(D), 1),
                Arrow::new(v(B), v(A), 1),
                Arrow::new(v(B), v(D), 1),
                Arrow::new(v(C), v(B), 2),
                Arrow::new(v(D), v(C), 1),
                Arrow::new(v(D), v(E), 1),
                Arrow::new(v(E), v(A), 1),
                Arrow::new(v(E), v(F), 1),
                Arrow::new(self.vertex(F, i - 1), v(E), 1),
                Arrow::new(v(F), self.vertex(F, i - 1), 1),
            ]);
        }
        out
    }

    pub fn unframed(&self) -> IceQuiver {
        IceQuiver::new(self.n_mutable(), 0, self.mutable_arrows())
            .expect("torus pattern is a valid quiver for n >= 3")
    }

    /// The framed quiver `Q̂_{T_n}`.
    pub fn quiver(&self) -> IceQuiver {
        self.unframed().framed().expect("unframed quiver has no frozen vertices")
    }

    fn block_sequence(&self, pattern: &[Family], block: usize) -> Vec<usize> {
        pattern.iter().map(|&f| self.vertex(f, block)).collect()
    }

    fn f_run(&self, blocks: impl IntoIterator<Item = usize>) -> Vec<usize> {
        blocks.into_iter().map(|j| self.vertex(Family::F, j)).collect()
    }

    pub fn sigma(&self, block: usize) -> Result<MutationSequence, FamilyError> {
        self.check_block(block)?;
        MutationSequence::new(self.block_sequence(&SIGMA, block), Provenance::Sigma(block))
    }

    pub fn tau(&self, block: usize) -> Result<MutationSequence, FamilyError> {
        self.check_block(block)?;
        MutationSequence::new(self.block_sequence(&TAU, block), Provenance::Tau(block))
    }

    /// The cycle sequence on the `f` vertices of this quiver.
    pub fn cycle_sequence(&self) -> MutationSequence {
        MutationSequence::new(self.f_run(cycle_blocks(self.n)), Provenance::Cycle)
            .expect("n >= 3")
    }

    pub fn layout(&self) -> TheoremLayout {
        TheoremLayout { n: self.n }
    }

    /// The full maximal green sequence of length `24n - 4`.
    pub fn theorem_sequence(&self) -> MutationSequence {
        let n = self.n;
        let mut steps = self.f_run(cycle_blocks(n));
        for i in (1..=n).rev() {
            steps.extend(self.block_sequence(&SIGMA, i));
        }
        steps.extend(self.f_run((3..=n).chain([2, 1]).chain((3..=n).rev())));
        for i in (1..=n).rev() {
            steps.extend(self.block_sequence(&TAU, i));
        }
        MutationSequence::new(steps, Provenance::Theorem).expect("non-empty")
    }

    /// The mutable `f` vertex standing in position `f_j` between the cycle
    /// segment and the middle segment: the cycle segment leaves `f_1` and
    /// `f_2` transposed relative to the blocks they border.
    pub fn shifted_f(&self, block: usize) -> usize {
        let j = (block + self.n - 1) % self.n + 1;
        let j = match j {
            1 => 2,
            2 => 1,
            j => j,
        };
        self.vertex(Family::F, j)
    }

    /// Arrows among `a_i..e_i`, their frozen copies, `f_i'` and the two
    /// neighbouring cycle vertices, right after `σ_i` in the theorem run.
    pub fn sigma_fixture(&self, block: usize) -> Result<LocalFixture, FamilyError> {
        use Family::*;
        self.check_block(block)?;
        let i = block;
        let m = |f| self.vertex(f, i);
        let fr = |f| self.frozen_vertex(f, i);
        let prev = self.shifted_f(i - 1);
        let cur = self.shifted_f(i);
        let mut arrows = vec![
            Arrow::new(m(E), m(D), 1),
            Arrow::new(m(B), m(E), 1),
            Arrow::new(m(E), prev, 1),
            Arrow::new(cur, m(E), 1),
            Arrow::new(fr(E), m(E), 1),
            Arrow::new(fr(F), m(E), 1),
            Arrow::new(m(D), m(C), 1),
            Arrow::new(m(C), m(A), 2),
            Arrow::new(m(B), m(C), 1),
            Arrow::new(fr(C), m(C), 1),
            Arrow::new(m(A), m(D), 1),
            Arrow::new(m(D), m(B), 1),
            Arrow::new(fr(A), m(D), 1),
            Arrow::new(m(A), m(B), 1),
            Arrow::new(fr(B), m(A), 1),
            Arrow::new(fr(D), m(B), 1),
            Arrow::new(prev, cur, 1),
            Arrow::new(prev, fr(F), 1),
        ];
        arrows.extend([E, C, D, A, B].map(|f| Arrow::new(prev, fr(f), 2)));
        let mut vertices: Vec<usize> = [A, B, C, D, E].map(m).to_vec();
        vertices.extend([prev, cur]);
        vertices.extend([A, B, C, D, E, F].map(fr));
        Ok(LocalFixture::new(vertices, arrows))
    }

    /// Arrows among `a_i..e_i`, their frozen copies and `f_{i-1}, f_i`,
    /// right after `τ_i` in the theorem run.
    pub fn tau_fixture(&self, block: usize) -> Result<LocalFixture, FamilyError> {
        use Family::*;
        self.check_block(block)?;
        let i = block;
        let m = |f| self.vertex(f, i);
        let fr = |f| self.frozen_vertex(f, i);
        let prev = self.vertex(F, i - 1);
        let cur = self.vertex(F, i);
        let arrows = vec![
            Arrow::new(m(C), m(E), 1),
            Arrow::new(m(E), m(A), 1),
            Arrow::new(prev, m(E), 1),
            Arrow::new(m(E), cur, 1),
            Arrow::new(fr(E), m(E), 1),
            Arrow::new(m(D), m(C), 1),
            Arrow::new(m(A), m(C), 1),
            Arrow::new(m(C), m(B), 1),
            Arrow::new(fr(D), m(C), 1),
            Arrow::new(m(D), m(A), 1),
            Arrow::new(m(B), m(D), 2),
            Arrow::new(fr(B), m(D), 1),
            Arrow::new(m(A), m(B), 1),
            Arrow::new(fr(A), m(A), 1),
            Arrow::new(fr(C), m(B), 1),
            Arrow::new(cur, prev, 1),
        ];
        let mut vertices: Vec<usize> = [A, B, C, D, E].map(m).to_vec();
        vertices.extend([prev, cur]);
        vertices.extend([A, B, C, D, E].map(fr));
        Ok(LocalFixture::new(vertices, arrows))
    }
}

/// The framed oriented `n`-cycle on `f_1..f_n` (index `i - 1` for `f_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleFamily {
    n: usize,
}

impl CycleFamily {
    pub fn new(n: usize) -> Result<Self, FamilyError> {
        check_genus(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn vertex(&self, block: usize) -> usize {
        (block + self.n - 1) % self.n
    }

    pub fn quiver(&self) -> IceQuiver {
        let arrows = (1..=self.n).map(|i| Arrow::new(self.vertex(i), self.vertex(i - 1), 1));
        IceQuiver::new(self.n, 0, arrows)
            .and_then(|q| q.framed())
            .expect("oriented cycle with n >= 3 is a valid quiver")
    }

    pub fn label_map(&self) -> LabelMap {
        let names = (1..=self.n)
            .map(|i| VertexLabel::mutable(Family::F, i))
            .chain((1..=self.n).map(|i| VertexLabel::frozen(Family::F, i)))
            .map(|l| l.to_string())
            .collect();
        LabelMap::new(names).expect("distinct")
    }

    pub fn cycle_sequence(&self) -> MutationSequence {
        let steps = cycle_blocks(self.n).into_iter().map(|j| self.vertex(j)).collect();
        MutationSequence::new(steps, Provenance::Cycle).expect("n >= 3")
    }
}

pub fn build_torus_quiver(n: usize) -> Result<(IceQuiver, LabelMap), FamilyError> {
    let t = TorusFamily::new(n)?;
    Ok((t.quiver(), t.label_map()))
}

pub fn build_cycle_quiver(n: usize) -> Result<(IceQuiver, LabelMap), FamilyError> {
    let c = CycleFamily::new(n)?;
    Ok((c.quiver(), c.label_map()))
}

pub fn theorem_sequence(n: usize) -> Result<MutationSequence, FamilyError> {
    Ok(TorusFamily::new(n)?.theorem_sequence())
}

/// The cycle sequence indexed for the standalone cycle quiver.
pub fn cycle_sequence(n: usize) -> Result<MutationSequence, FamilyError> {
    Ok(CycleFamily::new(n)?.cycle_sequence())
}
