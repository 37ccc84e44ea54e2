//! Tableau diagrams and their factor sequences.
//!
//! A tableau diagram fills every rectangle of a rectangle diagram with a
//! tableau so that entries grow strictly as one moves down within 45-degree
//! cones. Factor sequences are tuples of tableaux labeling the segments of a
//! path, built recursively: on the lowest path only the all-empty labeling
//! exists; a peak splits a label into an arbitrary plactic factorization; a
//! flat step merges the two valley labels through the rectangle's tableau.
//!
//! Membership is decided without search: at a flat label `W` the canonical
//! factorization around the rectangle is the only one that needs checking,
//! because any simple factorization of a member's label again yields a
//! member of the lowered path.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{find_reduction, lower_path, Path, RectDiagram, RectDims, Reduction, ReductionOrder};
use crate::partition::Partition;
use crate::rng::SeededRng;
use crate::tableau::{canonical_factorization, contains_rectangle, visit_factorizations, RectTableau, Tableau};

#[derive(Debug, Error)]
pub enum FactorSeqError {
    #[error("filling violates the tableau-diagram conditions: {0}")]
    BadFilling(String),
    #[error("sequence has {got} labels, path has {expected} segments")]
    LengthMismatch { expected: usize, got: usize },
    #[error("path does not fit a diagram with n = {0}")]
    BadPath(usize),
}

/// A filling of a rectangle diagram with tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauDiagram {
    pub n: usize,
    fill: BTreeMap<(usize, usize), RectTableau>,
}

impl TableauDiagram {
    pub fn new(n: usize, fill: BTreeMap<(usize, usize), RectTableau>) -> Result<Self, FactorSeqError> {
        let td = TableauDiagram { n, fill };
        td.validate()?;
        Ok(td)
    }

    pub fn tableau(&self, i: usize, j: usize) -> &RectTableau {
        &self.fill[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &RectTableau)> {
        self.fill.iter()
    }

    /// The rectangle diagram underneath the filling.
    pub fn rect_diagram(&self) -> RectDiagram {
        let dims = self
            .fill
            .iter()
            .map(|(&k, t)| (k, RectDims { rows: t.a, cols: t.b }))
            .collect();
        RectDiagram::new(self.n, dims).expect("filling carries a valid diagram")
    }

    /// The tableaux above `(i, j)` within 45-degree angles: all `(k, l)`
    /// with `i <= k < l <= j` other than `(i, j)` itself.
    fn cone_above(&self, i: usize, j: usize) -> impl Iterator<Item = &RectTableau> {
        self.fill
            .iter()
            .filter(move |(&(k, l), _)| i <= k && l <= j && (k, l) != (i, j))
            .map(|(_, t)| t)
    }

    fn validate(&self) -> Result<(), FactorSeqError> {
        for i in 0..self.n {
            for j in i + 1..=self.n {
                if !self.fill.contains_key(&(i, j)) {
                    return Err(FactorSeqError::BadFilling(format!("missing tableau ({i},{j})")));
                }
            }
        }
        for (&(i, j), t) in &self.fill {
            let Some(min) = t.body.min_entry() else { continue };
            for above in self.cone_above(i, j) {
                if let Some(max) = above.body.max_entry() {
                    if min <= max {
                        return Err(FactorSeqError::BadFilling(format!(
                            "entries of ({i},{j}) must exceed all entries above it"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The canonical filling: rectangles are processed by increasing `j - i`
    /// and each is filled with constant rows starting one past the largest
    /// entry above it.
    pub fn canonical(rd: &RectDiagram) -> TableauDiagram {
        Self::build(rd, constant_rows)
    }

    /// A random valid filling, deterministic per generator state: each
    /// rectangle gets a random semistandard body whose entries start one
    /// past the largest entry above it, within a small slack window.
    pub fn random(rd: &RectDiagram, slack: u32, rng: &mut SeededRng) -> TableauDiagram {
        Self::build(rd, |base, dims| random_rect_body(base, dims, slack, rng))
    }

    fn build(rd: &RectDiagram, mut body: impl FnMut(u32, RectDims) -> Tableau) -> TableauDiagram {
        let mut fill: BTreeMap<(usize, usize), RectTableau> = BTreeMap::new();
        for d in 1..=rd.n {
            for i in 0..=(rd.n - d) {
                let j = i + d;
                let dims = rd.dims(i, j);
                let base = 1 + fill
                    .iter()
                    .filter(|(&(k, l), _)| i <= k && l <= j)
                    .filter_map(|(_, t)| t.body.max_entry())
                    .max()
                    .unwrap_or(0);
                let b = body(base, dims);
                fill.insert(
                    (i, j),
                    RectTableau::new(dims.rows, dims.cols, b).expect("constructed body has rectangle shape"),
                );
            }
        }
        TableauDiagram { n: rd.n, fill }
    }
}

fn constant_rows(base: u32, dims: RectDims) -> Tableau {
    if dims.rows == 0 || dims.cols == 0 {
        return Tableau::empty();
    }
    let rows = (0..dims.rows)
        .map(|r| vec![base + r; dims.cols as usize])
        .collect();
    Tableau::new(rows).expect("constant rows are semistandard")
}

fn random_rect_body(base: u32, dims: RectDims, slack: u32, rng: &mut SeededRng) -> Tableau {
    if dims.rows == 0 || dims.cols == 0 {
        return Tableau::empty();
    }
    let a = dims.rows as usize;
    // Column strictness needs at least a-1 headroom above the base entry.
    let slack = slack.max(dims.rows - 1);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in 0..a {
        let mut row = Vec::with_capacity(dims.cols as usize);
        let hi = base + slack - (a - 1 - r) as u32;
        for c in 0..dims.cols as usize {
            let mut lo = base;
            if c > 0 {
                lo = lo.max(row[c - 1]);
            }
            if r > 0 {
                lo = lo.max(rows[r - 1][c] + 1);
            }
            row.push(rng.range(lo as u64, hi as u64) as u32);
        }
        rows.push(row);
    }
    Tableau::new(rows).expect("sampled body is semistandard")
}

/// A labeling of a path's segments with tableaux.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSequence {
    pub path: String,
    pub labels: Vec<Tableau>,
}

impl FactorSequence {
    pub fn new(path: &Path, labels: Vec<Tableau>) -> Self {
        FactorSequence {
            path: path.to_string(),
            labels,
        }
    }
}

/// Every factor sequence for the path, as a deduplicated set of label
/// tuples. Distinct construction histories can produce the same sequence.
pub fn enumerate_factor_sequences(
    path: &Path,
    td: &TableauDiagram,
) -> Result<BTreeSet<Vec<Tableau>>, FactorSeqError> {
    enumerate_factor_sequences_ordered(path, td, ReductionOrder::Leftmost)
}

/// Like [`enumerate_factor_sequences`] with an explicit reduction order;
/// the resulting set does not depend on it, which the test suite checks
/// rather than assumes.
pub fn enumerate_factor_sequences_ordered(
    path: &Path,
    td: &TableauDiagram,
    order: ReductionOrder,
) -> Result<BTreeSet<Vec<Tableau>>, FactorSeqError> {
    if path.check(td.n).is_err() {
        return Err(FactorSeqError::BadPath(td.n));
    }
    Ok(enumerate_inner(path, td, order))
}

fn enumerate_inner(path: &Path, td: &TableauDiagram, order: ReductionOrder) -> BTreeSet<Vec<Tableau>> {
    if path.is_lowest() {
        let mut set = BTreeSet::new();
        set.insert(vec![Tableau::empty(); path.len()]);
        return set;
    }
    let reduction = find_reduction(path, order).expect("reducible");
    let lower = enumerate_inner(&lower_path(path, reduction), td, order);
    let mut out = BTreeSet::new();
    match reduction {
        Reduction::Peak(k) => {
            for seq in &lower {
                visit_factorizations(&seq[k], &mut |p, q| {
                    let mut new_seq = Vec::with_capacity(seq.len() + 1);
                    new_seq.extend_from_slice(&seq[..k]);
                    new_seq.push(p.clone());
                    new_seq.push(q.clone());
                    new_seq.extend_from_slice(&seq[k + 1..]);
                    out.insert(new_seq);
                });
            }
        }
        Reduction::Flat(k, (i, j)) => {
            let t = td.tableau(i, j);
            for seq in &lower {
                let merged = seq[k].product(&t.body).product(&seq[k + 1]);
                let mut new_seq = Vec::with_capacity(seq.len() - 1);
                new_seq.extend_from_slice(&seq[..k]);
                new_seq.push(merged);
                new_seq.extend_from_slice(&seq[k + 2..]);
                out.insert(new_seq);
            }
        }
    }
    out
}

/// The factor-sequence membership criterion. Lowers the path one reduction
/// at a time: a peak multiplies its two labels back together; a flat label
/// must contain the rectangle's tableau in its corner and is replaced by its
/// canonical factorization. The sequence is a factor sequence iff the lowest
/// path ends up with every label empty.
pub fn is_factor_sequence(
    path: &Path,
    labels: &[Tableau],
    td: &TableauDiagram,
) -> Result<bool, FactorSeqError> {
    if path.check(td.n).is_err() {
        return Err(FactorSeqError::BadPath(td.n));
    }
    if labels.len() != path.len() {
        return Err(FactorSeqError::LengthMismatch {
            expected: path.len(),
            got: labels.len(),
        });
    }
    let mut path = path.clone();
    let mut labels = labels.to_vec();
    loop {
        if path.is_lowest() {
            return Ok(labels.iter().all(|t| t.is_empty()));
        }
        let reduction = find_reduction(&path, ReductionOrder::Leftmost).expect("reducible");
        match reduction {
            Reduction::Peak(k) => {
                let merged = labels[k].product(&labels[k + 1]);
                labels.splice(k..k + 2, [merged]);
            }
            Reduction::Flat(k, (i, j)) => {
                let t = td.tableau(i, j);
                if !contains_rectangle(&labels[k], t) {
                    return Ok(false);
                }
                let (q, p) = canonical_factorization(&labels[k], t).expect("containment checked");
                labels.splice(k..k + 1, [q, p]);
            }
        }
        path = lower_path(&path, reduction);
    }
}

/// A uniformly seeded factor sequence: the path's reduction chain is
/// replayed upward from the all-empty labeling, picking a uniformly random
/// plactic factorization at every peak inversion.
pub fn sample_factor_sequence(path: &Path, td: &TableauDiagram, rng: &mut SeededRng) -> Vec<Tableau> {
    let mut chain = Vec::new();
    let mut cursor = path.clone();
    while !cursor.is_lowest() {
        let reduction = find_reduction(&cursor, ReductionOrder::Leftmost).expect("reducible");
        chain.push(reduction);
        cursor = lower_path(&cursor, reduction);
    }
    let mut labels = vec![Tableau::empty(); cursor.len()];
    for reduction in chain.into_iter().rev() {
        match reduction {
            Reduction::Peak(k) => {
                let (p, q) = random_factorization(&labels[k], rng);
                labels.splice(k..k + 1, [p, q]);
            }
            Reduction::Flat(k, (i, j)) => {
                let t = td.tableau(i, j);
                let merged = labels[k].product(&t.body).product(&labels[k + 1]);
                labels.splice(k..k + 2, [merged]);
            }
        }
    }
    labels
}

/// Reservoir-samples one factorization `w = p · q`, uniform over all of
/// them, in a single pass.
pub fn random_factorization(w: &Tableau, rng: &mut SeededRng) -> (Tableau, Tableau) {
    let mut chosen: Option<(Tableau, Tableau)> = None;
    let mut seen = 0u64;
    visit_factorizations(w, &mut |p, q| {
        seen += 1;
        if rng.below(seen) == 0 {
            chosen = Some((p.clone(), q.clone()));
        }
    });
    chosen.expect("every tableau has at least the trivial factorization")
}

/// Like [`sample_factor_sequence`] but with shape-stratified factorization
/// choices: at every peak inversion a shape pair `(σ, τ)` is drawn
/// uniformly among those admitting a factorization, then a factorization
/// uniformly within the pair. Uniform sampling concentrates on the bulky
/// shape pairs; stratifying spreads the fuzz over the extreme splits where
/// the involution's hypotheses actually trigger.
pub fn sample_factor_sequence_stratified(path: &Path, td: &TableauDiagram, rng: &mut SeededRng) -> Vec<Tableau> {
    let mut chain = Vec::new();
    let mut cursor = path.clone();
    while !cursor.is_lowest() {
        let reduction = find_reduction(&cursor, ReductionOrder::Leftmost).expect("reducible");
        chain.push(reduction);
        cursor = lower_path(&cursor, reduction);
    }
    let mut labels = vec![Tableau::empty(); cursor.len()];
    for reduction in chain.into_iter().rev() {
        match reduction {
            Reduction::Peak(k) => {
                let (p, q) = random_factorization_stratified(&labels[k], rng);
                labels.splice(k..k + 1, [p, q]);
            }
            Reduction::Flat(k, (i, j)) => {
                let t = td.tableau(i, j);
                let merged = labels[k].product(&t.body).product(&labels[k + 1]);
                labels.splice(k..k + 2, [merged]);
            }
        }
    }
    labels
}

/// One factorization, uniform over shape pairs and then uniform within the
/// chosen pair; one pass with a per-pair reservoir.
pub fn random_factorization_stratified(w: &Tableau, rng: &mut SeededRng) -> (Tableau, Tableau) {
    let mut reservoirs: BTreeMap<(Partition, Partition), (u64, (Tableau, Tableau))> = BTreeMap::new();
    visit_factorizations(w, &mut |p, q| {
        let key = (p.shape(), q.shape());
        match reservoirs.get_mut(&key) {
            None => {
                reservoirs.insert(key, (1, (p.clone(), q.clone())));
            }
            Some((seen, kept)) => {
                *seen += 1;
                if rng.below(*seen) == 0 {
                    *kept = (p.clone(), q.clone());
                }
            }
        }
    });
    let pick = rng.below(reservoirs.len() as u64) as usize;
    reservoirs.into_values().nth(pick).expect("nonempty").1
}

/// Counts sequences by their tuple of shapes.
pub fn shape_census<'a, I>(seqs: I) -> BTreeMap<Vec<Partition>, u64>
where
    I: IntoIterator<Item = &'a Vec<Tableau>>,
{
    let mut out = BTreeMap::new();
    for seq in seqs {
        let key: Vec<Partition> = seq.iter().map(|t| t.shape()).collect();
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TableauDiagramRepr {
    n: usize,
    fill: BTreeMap<String, RectTableau>,
}

impl Serialize for TableauDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let fill = self
            .fill
            .iter()
            .map(|(&(i, j), t)| (format!("{i},{j}"), t.clone()))
            .collect();
        TableauDiagramRepr { n: self.n, fill }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TableauDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableauDiagramRepr::deserialize(deserializer)?;
        let mut fill = BTreeMap::new();
        for (key, t) in repr.fill {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad fill key '{key}'")))?;
            fill.insert((i, j), t);
        }
        TableauDiagram::new(repr.n, fill).map_err(D::Error::custom)
    }
}
