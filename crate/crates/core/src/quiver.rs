//! Ice quivers stored as signed exchange matrices.
//!
//! Vertices `0..n_mutable` are mutable, `n_mutable..n_mutable + n_frozen`
//! are frozen. Entry `b[i][j]` is the number of arrows `i -> j` minus the
//! number of arrows `j -> i`, so loops and 2-cycles cannot be represented
//! and the cancellation step of mutation happens automatically.

use std::fmt;

use crate::error::QuiverError;

/// A single arrow with positive multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: u32,
}

impl Arrow {
    pub fn new(source: usize, target: usize, multiplicity: u32) -> Self {
        Self {
            source,
            target,
            multiplicity,
        }
    }
}

impl From<(usize, usize, u32)> for Arrow {
    fn from((source, target, multiplicity): (usize, usize, u32)) -> Self {
        Self::new(source, target, multiplicity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexColor {
    Green,
    Red,
}

impl VertexColor {
    pub fn as_char(self) -> char {
        match self {
            VertexColor::Green => 'G',
            VertexColor::Red => 'R',
        }
    }

    pub fn is_green(self) -> bool {
        self == VertexColor::Green
    }
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexColor::Green => f.write_str("green"),
            VertexColor::Red => f.write_str("red"),
        }
    }
}

/// Renders a color vector as a string over `{G, R}`.
pub fn color_string(colors: &[VertexColor]) -> String {
    colors.iter().map(|c| c.as_char()).collect()
}

/// Parses a `{G, R}` string back into colors.
pub fn parse_color_string(s: &str) -> Option<Vec<VertexColor>> {
    s.chars()
        .map(|c| match c {
            'G' => Some(VertexColor::Green),
            'R' => Some(VertexColor::Red),
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IceQuiver {
    n_mutable: usize,
    n_frozen: usize,
    // row-major, dim x dim
    b: Vec<i32>,
}

impl IceQuiver {
    /// Builds an ice quiver from an arrow list. Repeated arrows in the same
    /// direction accumulate.
    pub fn new(
        n_mutable: usize,
        n_frozen: usize,
        arrows: impl IntoIterator<Item = Arrow>,
    ) -> Result<Self, QuiverError> {
        let dim = n_mutable + n_frozen;
        let mut q = Self {
            n_mutable,
            n_frozen,
            b: vec![0; dim * dim],
        };
        for arrow in arrows {
            let Arrow {
                source,
                target,
                multiplicity,
            } = arrow;
            for index in [source, target] {
                if index >= dim {
                    return Err(QuiverError::IndexOutOfRange { index, size: dim });
                }
            }
            if multiplicity == 0 {
                return Err(QuiverError::ZeroMultiplicity {
                    from: source,
                    to: target,
                });
            }
            if source == target {
                return Err(QuiverError::LoopArrow { vertex: source });
            }
            if q.is_frozen(source) && q.is_frozen(target) {
                return Err(QuiverError::FrozenFrozenArrow {
                    from: source,
                    to: target,
                });
            }
            if q.entry(source, target) < 0 {
                return Err(QuiverError::DuplicateOppositeArrows {
                    first: source,
                    second: target,
                });
            }
            let m = i32::try_from(multiplicity).map_err(|_| QuiverError::IntegerOverflow)?;
            let updated = q
                .entry(source, target)
                .checked_add(m)
                .ok_or(QuiverError::IntegerOverflow)?;
            q.set_pair(source, target, updated);
        }
        Ok(q)
    }

    /// Builds a quiver directly from a row-major exchange matrix, checking
    /// every invariant.
    pub fn from_matrix(n_mutable: usize, n_frozen: usize, b: Vec<i32>) -> Result<Self, QuiverError> {
        let dim = n_mutable + n_frozen;
        if b.len() != dim * dim {
            return Err(QuiverError::MatrixShape {
                expected: dim * dim,
                actual: b.len(),
            });
        }
        let q = Self { n_mutable, n_frozen, b };
        q.validate()?;
        Ok(q)
    }

    /// Checks skew-symmetry, the zero diagonal and the zero frozen block.
    pub fn validate(&self) -> Result<(), QuiverError> {
        let dim = self.dim();
        for i in 0..dim {
            if self.entry(i, i) != 0 {
                return Err(QuiverError::LoopArrow { vertex: i });
            }
            for j in (i + 1)..dim {
                let (x, y) = (self.entry(i, j), self.entry(j, i));
                if x.checked_neg() != Some(y) {
                    return Err(QuiverError::NotSkewSymmetric { row: i, col: j });
                }
                if x != 0 && self.is_frozen(i) && self.is_frozen(j) {
                    return Err(QuiverError::FrozenFrozenArrow {
                        from: if x > 0 { i } else { j },
                        to: if x > 0 { j } else { i },
                    });
                }
            }
        }
        Ok(())
    }

    pub fn n_mutable(&self) -> usize {
        self.n_mutable
    }

    pub fn n_frozen(&self) -> usize {
        self.n_frozen
    }

    pub fn dim(&self) -> usize {
        self.n_mutable + self.n_frozen
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.n_mutable
    }

    /// `b[i][j]`. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.b[i * self.dim() + j]
    }

    pub fn matrix(&self) -> &[i32] {
        &self.b
    }

    fn set_pair(&mut self, i: usize, j: usize, value: i32) {
        let dim = self.dim();
        self.b[i * dim + j] = value;
        self.b[j * dim + i] = -value;
    }

    /// Number of arrows `i -> j` (zero if the arrows point the other way).
    pub fn arrows_between(&self, i: usize, j: usize) -> u32 {
        self.entry(i, j).max(0) as u32
    }

    /// All arrows in row-major source order.
    pub fn arrows(&self) -> Vec<Arrow> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let m = self.entry(i, j);
                if m > 0 {
                    out.push(Arrow::new(i, j, m as u32));
                }
            }
        }
        out
    }

    /// Arrows whose endpoints both lie in `vertices`, sorted.
    pub fn induced_arrows(&self, vertices: &[usize]) -> Vec<Arrow> {
        let mut out = Vec::new();
        for &i in vertices {
            for &j in vertices {
                let m = self.entry(i, j);
                if m > 0 {
                    out.push(Arrow::new(i, j, m as u32));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The quiver on `vertices` (in the given order), keeping only arrows
    /// among them. The first `n_mutable` listed vertices become mutable, the
    /// rest frozen.
    pub fn restrict(&self, vertices: &[usize], n_mutable: usize) -> Result<Self, QuiverError> {
        let dim = self.dim();
        if let Some(&index) = vertices.iter().find(|&&v| v >= dim) {
            return Err(QuiverError::IndexOutOfRange { index, size: dim });
        }
        let k = vertices.len();
        let mut b = vec![0; k * k];
        for (a, &i) in vertices.iter().enumerate() {
            for (c, &j) in vertices.iter().enumerate() {
                b[a * k + c] = self.entry(i, j);
            }
        }
        Self::from_matrix(n_mutable, k - n_mutable, b)
    }

    /// True when `u` and `v` are joined by at least one arrow.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.entry(u, v) != 0
    }

    /// The framed quiver: one frozen copy `i'` per vertex and an arrow `i -> i'`.
    pub fn framed(&self) -> Result<Self, QuiverError> {
        self.with_frame(1)
    }

    /// The coframed quiver: arrows `i' -> i`.
    pub fn coframed(&self) -> Result<Self, QuiverError> {
        self.with_frame(-1)
    }

    fn with_frame(&self, sign: i32) -> Result<Self, QuiverError> {
        if self.n_frozen != 0 {
            return Err(QuiverError::AlreadyIced {
                n_frozen: self.n_frozen,
            });
        }
        let n = self.n_mutable;
        let mut q = Self {
            n_mutable: n,
            n_frozen: n,
            b: vec![0; 4 * n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let v = self.entry(i, j);
                if v != 0 {
                    q.b[i * 2 * n + j] = v;
                }
            }
            q.set_pair(i, i + n, sign);
        }
        Ok(q)
    }

    /// Matrix mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        if k >= self.dim() {
            return Err(QuiverError::IndexOutOfRange { index: k, size: self.dim() });
        }
        if k >= self.n_mutable {
            return Err(QuiverError::FrozenMutation { vertex: k });
        }
        let dim = self.dim();
        let mut b = self.b.clone();
        for i in 0..dim {
            let bik = self.entry(i, k);
            for j in 0..dim {
                if i == k || j == k {
                    b[i * dim + j] = -self.entry(i, j);
                    continue;
                }
                if self.is_frozen(i) && self.is_frozen(j) {
                    b[i * dim + j] = 0;
                    continue;
                }
                let product = bik
                    .checked_mul(self.entry(k, j))
                    .ok_or(QuiverError::IntegerOverflow)?;
                if product > 0 {
                    b[i * dim + j] = self
                        .entry(i, j)
                        .checked_add(bik.signum() * product)
                        .ok_or(QuiverError::IntegerOverflow)?;
                }
            }
        }
        Ok(Self {
            n_mutable: self.n_mutable,
            n_frozen: self.n_frozen,
            b,
        })
    }

    /// Mutates along `steps` in order, without any color restriction.
    pub fn mutate_along(&self, steps: &[usize]) -> Result<Self, QuiverError> {
        steps.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// The c-vector of `k`: signed multiplicities of arrows from `k` into
    /// each frozen vertex.
    pub fn c_vector(&self, k: usize) -> Vec<i32> {
        (self.n_mutable..self.dim()).map(|j| self.entry(k, j)).collect()
    }

    pub fn vertex_color(&self, k: usize) -> Result<VertexColor, QuiverError> {
        if k >= self.dim() {
            return Err(QuiverError::IndexOutOfRange { index: k, size: self.dim() });
        }
        if k >= self.n_mutable {
            return Err(QuiverError::FrozenMutation { vertex: k });
        }
        let mut incoming = false;
        let mut outgoing = false;
        for j in self.n_mutable..self.dim() {
            match self.entry(j, k) {
                x if x > 0 => incoming = true,
                x if x < 0 => outgoing = true,
                _ => {}
            }
        }
        match (incoming, outgoing) {
            (false, true) => Ok(VertexColor::Green),
            (true, false) => Ok(VertexColor::Red),
            (true, true) => Err(QuiverError::MixedSigns { vertex: k }),
            (false, false) => Err(QuiverError::NoFrozenArrows { vertex: k }),
        }
    }

    pub fn color_vector(&self) -> Result<Vec<VertexColor>, QuiverError> {
        (0..self.n_mutable).map(|k| self.vertex_color(k)).collect()
    }

    pub fn green_vertices(&self) -> Result<Vec<usize>, QuiverError> {
        let colors = self.color_vector()?;
        Ok((0..self.n_mutable).filter(|&k| colors[k].is_green()).collect())
    }
}
