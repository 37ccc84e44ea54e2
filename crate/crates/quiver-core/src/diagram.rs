//! Rank conditions, rectangle diagrams, monotone paths through the rank
//! diagram, and the inductive computation of the tensor element `P_γ`.
//!
//! A set of rank conditions for `n+1` bundles is a triangular array
//! `r_{ij}`, `0 ≤ i ≤ j ≤ n`. It can occur iff
//! `r_{ij} ≤ min(r_{i,j-1}, r_{i+1,j})` and
//! `r_{ij} - r_{i,j-1} - r_{i+1,j} + r_{i+1,j-1} ≥ 0`. Each small triangle
//! of the rank diagram is replaced by a rectangle `R_{ij}` with
//! `r_{i+1,j} - r_{ij}` rows and `r_{i,j-1} - r_{ij}` columns; the element
//! `P_γ` depends only on this diagram of rectangles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::rng::SeededRng;
use crate::schur::{coproduct, straighten, SignedSchur};
use crate::tensor::TensorElement;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("rank conditions cannot occur: {0}")]
    InvalidRankConditions(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid rectangle diagram: {0}")]
    InvalidRectDiagram(String),
    #[error("tuple has {got} shapes, path has {expected} segments")]
    ArityMismatch { expected: usize, got: usize },
}

/// Triangular array of rank conditions. `rows[d][i] = r_{i, i+d}`, matching
/// the printed rank diagram top row first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankConditions {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl<'de> Deserialize<'de> for RankConditions {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            rows: Vec<Vec<u32>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        RankConditions::new(repr.n, repr.rows).map_err(D::Error::custom)
    }
}

impl RankConditions {
    pub fn new(n: usize, rows: Vec<Vec<u32>>) -> Result<Self, DiagramError> {
        let rc = RankConditions { n, rows };
        rc.check_shape()?;
        Ok(rc)
    }

    fn check_shape(&self) -> Result<(), DiagramError> {
        if self.rows.len() != self.n + 1 {
            return Err(DiagramError::InvalidRankConditions(format!(
                "expected {} rows, got {}",
                self.n + 1,
                self.rows.len()
            )));
        }
        for (d, row) in self.rows.iter().enumerate() {
            if row.len() != self.n + 1 - d {
                return Err(DiagramError::InvalidRankConditions(format!(
                    "row {} must have {} entries",
                    d,
                    self.n + 1 - d
                )));
            }
        }
        Ok(())
    }

    /// `r_{ij}` for `0 ≤ i ≤ j ≤ n`.
    pub fn rank(&self, i: usize, j: usize) -> u32 {
        self.rows[j - i][i]
    }

    /// Both occurrence inequalities at every position.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..=n {
                let r = self.rank(i, j);
                if r > self.rank(i, j - 1).min(self.rank(i + 1, j)) {
                    return false;
                }
                if j - i >= 2 {
                    let lhs = self.rank(i, j) as i64 + self.rank(i + 1, j - 1) as i64;
                    let rhs = self.rank(i, j - 1) as i64 + self.rank(i + 1, j) as i64;
                    if lhs < rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The derived rectangle diagram.
    pub fn rect_diagram(&self) -> Result<RectDiagram, DiagramError> {
        if !self.is_valid() {
            return Err(DiagramError::InvalidRankConditions(
                "occurrence inequalities fail".into(),
            ));
        }
        let mut dims = BTreeMap::new();
        for i in 0..self.n {
            for j in i + 1..=self.n {
                let rows = self.rank(i + 1, j) - self.rank(i, j);
                let cols = self.rank(i, j - 1) - self.rank(i, j);
                dims.insert((i, j), RectDims { rows, cols });
            }
        }
        Ok(RectDiagram { n: self.n, dims })
    }
}

/// Rows and columns of one rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectDims {
    pub rows: u32,
    pub cols: u32,
}

impl RectDims {
    pub fn boxes(&self) -> u64 {
        self.rows as u64 * self.cols as u64
    }

    pub fn shape(&self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }
}

/// A generalized rectangle diagram: one rectangle per `(i, j)`, `i < j ≤ n`,
/// shrinking in rows toward the south-east and in columns toward the
/// south-west.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectDiagram {
    pub n: usize,
    dims: BTreeMap<(usize, usize), RectDims>,
}

impl RectDiagram {
    pub fn new(n: usize, dims: BTreeMap<(usize, usize), RectDims>) -> Result<Self, DiagramError> {
        let rd = RectDiagram { n, dims };
        rd.check()?;
        Ok(rd)
    }

    fn check(&self) -> Result<(), DiagramError> {
        for i in 0..self.n {
            for j in i + 1..=self.n {
                if !self.dims.contains_key(&(i, j)) {
                    return Err(DiagramError::InvalidRectDiagram(format!(
                        "missing rectangle ({i},{j})"
                    )));
                }
            }
        }
        if !self.is_monotone() {
            return Err(DiagramError::InvalidRectDiagram(
                "rows must shrink to the south-east and columns to the south-west".into(),
            ));
        }
        Ok(())
    }

    /// The monotonicity that holds identically for rank-derived diagrams:
    /// the south-east neighbor of `R_{ij}` is `R_{i,j+1}` and has at most as
    /// many rows; the south-west neighbor is `R_{i-1,j}` and has at most as
    /// many columns.
    pub fn is_monotone(&self) -> bool {
        for (&(i, j), d) in &self.dims {
            if j - i >= 2 {
                if d.rows > self.dims(i, j - 1).rows {
                    return false;
                }
                if d.cols > self.dims(i + 1, j).cols {
                    return false;
                }
            }
        }
        true
    }

    pub fn dims(&self, i: usize, j: usize) -> RectDims {
        self.dims[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &RectDims)> {
        self.dims.iter()
    }

    /// Total number of boxes; the expected codimension of the locus.
    pub fn expected_codim(&self) -> u64 {
        self.dims.values().map(|d| d.boxes()).sum()
    }

    /// A random generalized diagram: the top row is free, each deeper
    /// rectangle is capped by its north-west neighbor's rows and north-east
    /// neighbor's columns. Deterministic per seed.
    ///
    /// Side lengths are drawn with extra weight on 0 and on the cap, so
    /// empty frames next to full rectangles show up often; those corner
    /// configurations are where pairs of labels stop fitting around a
    /// rectangle and the cancellation machinery has something to do.
    pub fn random(n: usize, max_dim: u32, rng: &mut SeededRng) -> RectDiagram {
        assert!(n >= 1);
        let mut draw = |cap: u32| -> u32 {
            if cap == 0 {
                return 0;
            }
            match rng.below(4) {
                0 => 0,
                1 => rng.below(cap as u64 + 1) as u32,
                _ => cap,
            }
        };
        let mut dims: BTreeMap<(usize, usize), RectDims> = BTreeMap::new();
        for d in 1..=n {
            for i in 0..=(n - d) {
                let j = i + d;
                let row_cap = if d >= 2 { dims[&(i, j - 1)].rows } else { max_dim };
                let col_cap = if d >= 2 { dims[&(i + 1, j)].cols } else { max_dim };
                let rows = draw(row_cap.min(max_dim));
                let cols = draw(col_cap.min(max_dim));
                dims.insert((i, j), RectDims { rows, cols });
            }
        }
        RectDiagram { n, dims }
    }
}

#[derive(Serialize, Deserialize)]
struct RectDiagramRepr {
    n: usize,
    rects: BTreeMap<String, RectDims>,
}

impl Serialize for RectDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rects = self
            .dims
            .iter()
            .map(|(&(i, j), d)| (format!("{i},{j}"), *d))
            .collect();
        RectDiagramRepr { n: self.n, rects }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RectDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RectDiagramRepr::deserialize(deserializer)?;
        let mut dims = BTreeMap::new();
        for (key, d) in repr.rects {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad rectangle key '{key}'")))?;
            dims.insert((i, j), d);
        }
        RectDiagram::new(repr.n, dims).map_err(D::Error::custom)
    }
}

/// One step of a monotone path through the rank diagram, drawn left to
/// right: `Down` toward the bottom corner, `Up` away from it, `Flat`
/// straight across the top of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Down,
    Up,
    Flat,
}

/// A path from `r_00` to `r_nn`. Vertices are indexed `(i, j)`:
/// `Down: (i,j) -> (i,j+1)`, `Up: (i,j) -> (i+1,j)`,
/// `Flat: (i,j) -> (i+1,j+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn new(steps: Vec<Step>, n: usize) -> Result<Self, DiagramError> {
        let p = Path { steps };
        p.check(n)?;
        Ok(p)
    }

    /// Validates that this is a monotone path from `(0,0)` to `(n,n)`.
    pub fn check(&self, n: usize) -> Result<(), DiagramError> {
        let (mut i, mut j) = (0usize, 0usize);
        for (k, s) in self.steps.iter().enumerate() {
            match s {
                Step::Down => j += 1,
                Step::Up => i += 1,
                Step::Flat => {
                    i += 1;
                    j += 1;
                }
            }
            if i > j || j > n {
                return Err(DiagramError::InvalidPath(format!(
                    "leaves the rank diagram after step {k}"
                )));
            }
        }
        if (i, j) != (n, n) {
            return Err(DiagramError::InvalidPath(format!(
                "ends at ({i},{j}) instead of ({n},{n})"
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `D^n U^n`, along the two lower sides.
    pub fn lowest(n: usize) -> Path {
        let mut steps = vec![Step::Down; n];
        steps.extend(vec![Step::Up; n]);
        Path { steps }
    }

    /// `F^n`, straight across the top.
    pub fn top(n: usize) -> Path {
        Path {
            steps: vec![Step::Flat; n],
        }
    }

    pub fn is_lowest(&self) -> bool {
        let half = self.steps.len() / 2;
        self.steps.len().is_multiple_of(2)
            && self.steps[..half].iter().all(|s| *s == Step::Down)
            && self.steps[half..].iter().all(|s| *s == Step::Up)
    }

    /// The vertex `(i, j)` at which step `k` starts.
    pub fn vertex_before(&self, k: usize) -> (usize, usize) {
        let (mut i, mut j) = (0usize, 0usize);
        for s in &self.steps[..k] {
            match s {
                Step::Down => j += 1,
                Step::Up => i += 1,
                Step::Flat => {
                    i += 1;
                    j += 1;
                }
            }
        }
        (i, j)
    }

    /// The rectangle index of the triangle under the flat step at `k`.
    pub fn flat_rectangle(&self, k: usize) -> (usize, usize) {
        debug_assert_eq!(self.steps[k], Step::Flat);
        let (i, j) = self.vertex_before(k);
        (i, j + 1)
    }

    /// The rectangle index of the triangle inside the valley `Down,Up`
    /// starting at step `k`.
    pub fn valley_rectangle(&self, k: usize) -> (usize, usize) {
        debug_assert_eq!(self.steps[k], Step::Down);
        debug_assert_eq!(self.steps[k + 1], Step::Up);
        let (i, j) = self.vertex_before(k);
        (i, j + 1)
    }

    /// Positions `k` with steps `(Down, Up)` at `(k, k+1)`.
    pub fn valleys(&self) -> Vec<usize> {
        (0..self.steps.len().saturating_sub(1))
            .filter(|&k| self.steps[k] == Step::Down && self.steps[k + 1] == Step::Up)
            .collect()
    }

    /// The staircase `(DU)^n`: a valley at every top-row triangle, with the
    /// whole diagram below the path.
    pub fn staircase(n: usize) -> Path {
        let mut steps = Vec::with_capacity(2 * n);
        for _ in 0..n {
            steps.push(Step::Down);
            steps.push(Step::Up);
        }
        Path { steps }
    }

    /// A random monotone path that contains at least one `Down,Up` valley.
    ///
    /// Mixes three flavors: the staircase (valleys at every top-row
    /// triangle), the lowest path through one uniformly chosen triangle
    /// (the sharpest single-valley configuration), and a downward-biased
    /// random walk retried until a valley shows up.
    pub fn random_with_valley(n: usize, rng: &mut SeededRng) -> Path {
        assert!(n >= 1);
        match rng.below(5) {
            0 | 1 => Path::staircase(n),
            2 | 3 => {
                // Lowest path with its valley at the triangle (i, j).
                let j = rng.range(1, n as u64) as usize;
                let i = rng.below(j as u64) as usize;
                let mut steps = vec![Step::Down; j - 1];
                steps.extend(vec![Step::Up; i]);
                steps.push(Step::Down);
                steps.push(Step::Up);
                steps.extend(vec![Step::Down; n - j]);
                steps.extend(vec![Step::Up; n - i - 1]);
                let path = Path { steps };
                debug_assert!(path.check(n).is_ok());
                path
            }
            _ => loop {
                let path = Path::random_walk(n, rng);
                if !path.valleys().is_empty() {
                    return path;
                }
            },
        }
    }

    fn random_walk(n: usize, rng: &mut SeededRng) -> Path {
        let (mut i, mut j) = (0usize, 0usize);
        let mut steps = Vec::new();
        while (i, j) != (n, n) {
            let mut options = Vec::new();
            if j < n {
                options.extend([Step::Down; 3]);
                options.push(Step::Flat);
            }
            if i < j {
                options.extend([Step::Up; 2]);
            }
            let step = *rng.pick(&options);
            match step {
                Step::Down => j += 1,
                Step::Up => i += 1,
                Step::Flat => {
                    i += 1;
                    j += 1;
                }
            }
            steps.push(step);
        }
        Path { steps }
    }

    /// Segments lying on the two lower sides of the rank diagram: `Down`
    /// steps starting at `i = 0` and `Up` steps at `j = n`.
    pub fn side_segments(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            let (i, j) = self.vertex_before(k);
            match s {
                Step::Down if i == 0 => out.push(k),
                Step::Up if j == n => out.push(k),
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            let c = match s {
                Step::Down => 'D',
                Step::Up => 'U',
                Step::Flat => 'H',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::with_capacity(s.len());
        for c in s.chars() {
            steps.push(match c.to_ascii_uppercase() {
                'D' => Step::Down,
                'U' => Step::Up,
                'H' | 'F' => Step::Flat,
                other => {
                    return Err(DiagramError::InvalidPath(format!(
                        "unknown step character '{other}'"
                    )))
                }
            });
        }
        Ok(Path { steps })
    }
}

/// Where and how a path can be lowered: a `Up,Down` peak merges into a flat
/// step, a flat step opens into a `Down,Up` valley.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Peak at `(k, k+1)`; the lower path has `Flat` at `k`.
    Peak(usize),
    /// Flat at `k` over the rectangle `(i, j)`; the lower path has
    /// `Down,Up` at `(k, k+1)`.
    Flat(usize, (usize, usize)),
}

/// Scan direction for picking the next reduction. All public entry points
/// use `Leftmost`; `Rightmost` exists to test order independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    Leftmost,
    Rightmost,
}

pub fn find_reduction(path: &Path, order: ReductionOrder) -> Option<Reduction> {
    let steps = path.steps();
    let candidate = |k: usize| -> Option<Reduction> {
        if steps[k] == Step::Flat {
            Some(Reduction::Flat(k, path.flat_rectangle(k)))
        } else if steps[k] == Step::Up && k + 1 < steps.len() && steps[k + 1] == Step::Down {
            Some(Reduction::Peak(k))
        } else {
            None
        }
    };
    match order {
        ReductionOrder::Leftmost => (0..steps.len()).find_map(candidate),
        ReductionOrder::Rightmost => (0..steps.len()).rev().find_map(candidate),
    }
}

/// The path one level lower, per the reduction.
pub fn lower_path(path: &Path, reduction: Reduction) -> Path {
    let mut steps = path.steps().to_vec();
    match reduction {
        Reduction::Peak(k) => {
            steps.splice(k..k + 2, [Step::Flat]);
        }
        Reduction::Flat(k, _) => {
            steps.splice(k..k + 1, [Step::Down, Step::Up]);
        }
    }
    Path { steps }
}

/// Computes `P_γ` for a path over a rectangle diagram.
///
/// The recursion lowers the path one reduction at a time down to `D^n U^n`,
/// whose element is the single all-empty label, and transforms term maps on
/// the way back up. At a peak, a flat label `μ` expands into all pairs
/// `(σ, τ)` weighted by `c^μ_{στ}`. At a flat step over a rectangle with `a`
/// rows and `b` columns, labels `(τ, σ)` on the valley merge into the
/// straightening of `(b+σ_1, ..., b+σ_a, τ_1, τ_2, ...)`, or vanish when σ
/// has more than `a` rows.
pub fn compute_p(path: &Path, rd: &RectDiagram) -> Result<TensorElement, DiagramError> {
    compute_p_ordered(path, rd, ReductionOrder::Leftmost)
}

pub fn compute_p_ordered(
    path: &Path,
    rd: &RectDiagram,
    order: ReductionOrder,
) -> Result<TensorElement, DiagramError> {
    path.check(rd.n)?;
    if path.is_lowest() {
        return Ok(TensorElement::basis(vec![Partition::empty(); path.len()]));
    }
    let reduction = find_reduction(path, order).expect("non-lowest path must reduce");
    let lower = lower_path(path, reduction);
    let inner = compute_p_ordered(&lower, rd, order)?;
    let mut out = TensorElement::zero(path.len());
    match reduction {
        Reduction::Peak(k) => {
            let mut expansions: BTreeMap<Partition, Vec<(Vec<Partition>, u64)>> = BTreeMap::new();
            for (key, &c) in inner.terms() {
                let mu = &key[k];
                let pairs = expansions.entry(mu.clone()).or_insert_with(|| {
                    coproduct(mu)
                        .into_iter()
                        .map(|((sigma, tau), m)| (vec![sigma, tau], m))
                        .collect()
                });
                for (pair, m) in pairs.iter() {
                    let mut new_key = Vec::with_capacity(key.len() + 1);
                    new_key.extend_from_slice(&key[..k]);
                    new_key.extend_from_slice(pair);
                    new_key.extend_from_slice(&key[k + 1..]);
                    let coeff = c
                        .checked_mul(i64::try_from(*m).expect("coefficient overflow"))
                        .expect("coefficient overflow");
                    out.add_term(new_key, coeff);
                }
            }
        }
        Reduction::Flat(k, rect) => {
            let dims = rd.dims(rect.0, rect.1);
            for (key, &c) in inner.terms() {
                let tau = &key[k];
                let sigma = &key[k + 1];
                if sigma.len() > dims.rows as usize {
                    continue;
                }
                let mut seq: Vec<i64> = Vec::new();
                for r in 0..dims.rows as usize {
                    seq.push(dims.cols as i64 + sigma.part(r) as i64);
                }
                seq.extend(tau.parts().iter().map(|&p| p as i64));
                match straighten(&seq) {
                    SignedSchur::Zero => continue,
                    SignedSchur::Term { sign, shape } => {
                        let mut new_key = Vec::with_capacity(key.len() - 1);
                        new_key.extend_from_slice(&key[..k]);
                        new_key.push(shape);
                        new_key.extend_from_slice(&key[k + 2..]);
                        out.add_term(new_key, c * sign as i64);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The coefficient of one shape tuple in `P_γ`.
pub fn coefficient(path: &Path, rd: &RectDiagram, shapes: &[Partition]) -> Result<i64, DiagramError> {
    if shapes.len() != path.len() {
        return Err(DiagramError::ArityMismatch {
            expected: path.len(),
            got: shapes.len(),
        });
    }
    Ok(compute_p(path, rd)?.coefficient(shapes))
}
