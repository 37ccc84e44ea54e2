//! Semistandard Young tableaux under the plactic product, cuts through
//! tableaux, factorizations, and the canonical/simple factorizations with
//! respect to a rectangle.
//!
//! Convention: English orientation, row 1 on top. `product(t, u)` row-inserts
//! the row word of `u` (bottom row first, each row left to right) into `t`.
//! With this convention a horizontal cut through `T` after row `a` satisfies
//! `T = bottom · top`, and multiplying the rows of any diagram from the
//! bottom up rebuilds the tableau.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::partition::Partition;

/// A semistandard Young tableau. Rows weakly increase, columns strictly
/// increase downward, row lengths weakly decrease. The empty tableau has no
/// rows.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("rows must be weakly increasing with positive entries")]
    BadRow,
    #[error("row lengths must weakly decrease from top to bottom")]
    BadShape,
    #[error("columns must strictly increase downward")]
    BadColumn,
    #[error("tableau does not contain the rectangle in its upper-left corner")]
    RectangleNotContained,
    #[error("entries of the pair must strictly exceed the rectangle entries")]
    EntriesNotAboveRectangle,
    #[error("rectangle body must have exactly the declared a x b shape")]
    BadRectangleBody,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    /// Panicking constructor for literals in tests and fixtures.
    pub fn from_rows(rows: &[&[u32]]) -> Self {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).expect("invalid tableau literal")
    }

    fn validate(&self) -> Result<(), TableauError> {
        for row in &self.rows {
            if row.is_empty() || row.windows(2).any(|w| w[0] > w[1]) || row.contains(&0) {
                return Err(TableauError::BadRow);
            }
        }
        for w in self.rows.windows(2) {
            if w[0].len() < w[1].len() {
                return Err(TableauError::BadShape);
            }
            if w[0].iter().zip(&w[1]).any(|(above, below)| above >= below) {
                return Err(TableauError::BadColumn);
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Partition {
        Partition::from_parts(&self.rows.iter().map(|r| r.len() as u32).collect::<Vec<_>>())
    }

    pub fn box_count(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.rows.iter().flat_map(|r| r.iter().copied()).max()
    }

    pub fn min_entry(&self) -> Option<u32> {
        self.rows.iter().flat_map(|r| r.iter().copied()).min()
    }

    /// Multiset of entries, sorted.
    pub fn content(&self) -> Vec<u32> {
        let mut c: Vec<u32> = self.rows.iter().flat_map(|r| r.iter().copied()).collect();
        c.sort_unstable();
        c
    }

    /// The row word: bottom row first, each row left to right.
    pub fn row_word(&self) -> Vec<u32> {
        let mut w = Vec::with_capacity(self.box_count() as usize);
        for row in self.rows.iter().rev() {
            w.extend_from_slice(row);
        }
        w
    }

    /// Schensted row insertion of a single entry.
    pub fn insert(&mut self, x: u32) {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == self.rows.len() {
                self.rows.push(vec![x]);
                return;
            }
            let row = &mut self.rows[r];
            // Leftmost entry strictly greater than x gets bumped.
            let pos = row.partition_point(|&v| v <= x);
            if pos == row.len() {
                row.push(x);
                return;
            }
            std::mem::swap(&mut x, &mut row[pos]);
            r += 1;
        }
    }

    /// The plactic product `self · other`.
    pub fn product(&self, other: &Tableau) -> Tableau {
        let mut t = self.clone();
        for x in other.row_word() {
            t.insert(x);
        }
        t
    }

    /// Reverse row insertion starting at the outer corner `(row, col)`
    /// (0-indexed). Removes that box and returns the entry bumped out of the
    /// top row.
    fn reverse_insert(&mut self, row: usize, col: usize) -> u32 {
        debug_assert_eq!(col + 1, self.rows[row].len(), "not at end of row");
        debug_assert!(
            row + 1 >= self.rows.len() || self.rows[row + 1].len() <= col,
            "box below is in the way"
        );
        let mut x = self.rows[row].pop().expect("empty row");
        if self.rows[row].is_empty() {
            self.rows.truncate(row);
        }
        for r in (0..row).rev() {
            let target = &mut self.rows[r];
            // Rightmost entry strictly smaller than x.
            let pos = target.partition_point(|&v| v < x);
            debug_assert!(pos > 0, "reverse insertion hit the wall");
            std::mem::swap(&mut x, &mut target[pos - 1]);
        }
        x
    }

    /// Removes the horizontal strip `shape(self)/inner`, reverse-bumping its
    /// boxes from right to left. Returns the remaining tableau and the
    /// extracted row; `remaining · row == self`.
    pub fn extract_strip(&self, inner: &Partition) -> (Tableau, Vec<u32>) {
        let outer = self.shape();
        debug_assert!(inner.horizontal_strip_under(&outer));
        let mut t = self.clone();
        let mut extracted = Vec::new();
        for r in 0..outer.len() {
            for c in (inner.part(r)..outer.part(r)).rev() {
                extracted.push(t.reverse_insert(r, c as usize));
            }
        }
        extracted.reverse();
        debug_assert!(extracted.windows(2).all(|w| w[0] <= w[1]));
        (t, extracted)
    }

    /// Horizontal cut after row `a`: `(bottom, top)` with
    /// `bottom · top == self`.
    pub fn horizontal_cut(&self, a: usize) -> (Tableau, Tableau) {
        let a = a.min(self.rows.len());
        let top = Tableau {
            rows: self.rows[..a].to_vec(),
        };
        let bottom = Tableau {
            rows: self.rows[a..].to_vec(),
        };
        (bottom, top)
    }

    /// Vertical cut after column `b`: `(left, right)` with
    /// `left · right == self`.
    pub fn vertical_cut(&self, b: usize) -> (Tableau, Tableau) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for row in &self.rows {
            if row.len() > b {
                right.push(row[b..].to_vec());
            }
            if b > 0 && !row.is_empty() {
                left.push(row[..row.len().min(b)].to_vec());
            }
        }
        (Tableau { rows: left }, Tableau { rows: right })
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(deserializer)?;
        Tableau::new(rows).map_err(D::Error::custom)
    }
}

/// A tableau of exactly rectangular shape, remembering its `a x b` frame even
/// when one side is zero and the body is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectTableau {
    pub a: u32,
    pub b: u32,
    pub body: Tableau,
}

impl RectTableau {
    pub fn new(a: u32, b: u32, body: Tableau) -> Result<Self, TableauError> {
        let expected = Partition::rectangle(a, b);
        if body.shape() != expected {
            return Err(TableauError::BadRectangleBody);
        }
        Ok(RectTableau { a, b, body })
    }

    pub fn empty_frame(a: u32, b: u32) -> Self {
        debug_assert!(a == 0 || b == 0);
        RectTableau {
            a,
            b,
            body: Tableau::empty(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }
}

/// All semistandard tableaux of the given shape with entries in
/// `1..=max_entry`.
pub fn enumerate_ssyt(shape: &Partition, max_entry: u32) -> Vec<Tableau> {
    let mut out = Vec::new();
    if shape.is_empty() {
        out.push(Tableau::empty());
        return out;
    }
    fn rec(shape: &Partition, max_entry: u32, row: usize, col: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if row == shape.len() {
            out.push(Tableau {
                rows: rows.clone(),
            });
            return;
        }
        let (next_row, next_col) = if col + 1 < shape.part(row) as usize {
            (row, col + 1)
        } else {
            (row + 1, 0)
        };
        let mut lo = 1;
        if col > 0 {
            lo = lo.max(rows[row][col - 1]);
        }
        if row > 0 {
            lo = lo.max(rows[row - 1][col] + 1);
        }
        for v in lo..=max_entry {
            rows[row][col] = v;
            rec(shape, max_entry, next_row, next_col, rows, out);
        }
    }
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&p| vec![0; p as usize]).collect();
    rec(shape, max_entry, 0, 0, &mut rows, &mut out);
    out
}

/// Does `w` contain `t` in its upper-left corner, entry by entry? Vacuously
/// true when the rectangle has no boxes.
pub fn contains_rectangle(w: &Tableau, t: &RectTableau) -> bool {
    if t.a == 0 || t.b == 0 {
        return true;
    }
    let (a, b) = (t.a as usize, t.b as usize);
    if w.row_count() < a {
        return false;
    }
    for r in 0..a {
        let row = &w.rows()[r];
        if row.len() < b || row[..b] != t.body.rows()[r][..] {
            return false;
        }
    }
    true
}

/// The canonical factorization of `w` around the rectangle `t`: a horizontal
/// cut after row `a`, then a vertical cut of the top part after column `b`.
/// Returns `(q, p)` with `q · t.body · p == w`.
pub fn canonical_factorization(w: &Tableau, t: &RectTableau) -> Result<(Tableau, Tableau), TableauError> {
    if !contains_rectangle(w, t) {
        return Err(TableauError::RectangleNotContained);
    }
    let (q, top) = w.horizontal_cut(t.a as usize);
    let (_, p) = top.vertical_cut(t.b as usize);
    Ok((q, p))
}

/// Does the pair `(q, p)` fit around `t`: is the diagram with `t.body · p` in
/// the top `a` rows and `q` below a valid tableau?
pub fn fits_around(q: &Tableau, p: &Tableau, t: &RectTableau) -> bool {
    if p.row_count() > t.a as usize {
        return false;
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in 0..t.a as usize {
        let mut row = t.body.rows().get(r).cloned().unwrap_or_default();
        if let Some(pr) = p.rows().get(r) {
            row.extend_from_slice(pr);
        }
        rows.push(row);
    }
    rows.extend(q.rows().iter().cloned());
    while rows.last().is_some_and(|r| r.is_empty()) {
        rows.pop();
    }
    Tableau::new(rows).is_ok()
}

/// All factorizations `w = p · q`, visited through reverse Pieri strips: the
/// rows of `q` are bumped out of `w` top row first, each as a horizontal
/// strip. Every sequence of choices that keeps the extracted rows stacking
/// into a tableau is one factorization, and each factorization arises from
/// exactly one sequence.
pub fn visit_factorizations(w: &Tableau, visit: &mut dyn FnMut(&Tableau, &Tableau)) {
    fn assemble(rows: &[Vec<u32>]) -> Tableau {
        Tableau {
            rows: rows.to_vec(),
        }
    }
    fn rec(v: &Tableau, q_rows: &mut Vec<Vec<u32>>, visit: &mut dyn FnMut(&Tableau, &Tableau)) {
        visit(v, &assemble(q_rows));
        let outer = v.shape();
        let max_size = q_rows
            .last()
            .map(|r| r.len() as u64)
            .unwrap_or(u64::MAX)
            .min(v.box_count());
        if max_size == 0 {
            return;
        }
        for inner in strip_inners(&outer, max_size) {
            let (rest, row) = v.extract_strip(&inner);
            let stacks = match q_rows.last() {
                None => true,
                Some(prev) => row.len() <= prev.len() && prev.iter().zip(&row).all(|(a, b)| a < b),
            };
            if !stacks {
                continue;
            }
            q_rows.push(row);
            rec(&rest, q_rows, visit);
            q_rows.pop();
        }
    }
    rec(w, &mut Vec::new(), visit);
}

/// Inner shapes `ν ⊆ outer` with `outer/ν` a nonempty horizontal strip of
/// size at most `max_size`.
fn strip_inners(outer: &Partition, max_size: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(outer: &Partition, row: usize, removed: u64, max_size: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row == outer.len() {
            if removed > 0 {
                out.push(Partition::from_parts(prefix));
            }
            return;
        }
        let lo = outer.part(row + 1);
        let hi = outer.part(row);
        for v in lo..=hi {
            let r = removed + (hi - v) as u64;
            if r > max_size {
                continue;
            }
            prefix.push(v);
            rec(outer, row + 1, r, max_size, prefix, out);
            prefix.pop();
        }
    }
    rec(outer, 0, 0, max_size, &mut Vec::new(), &mut out);
    out
}

/// All pairs `(p, q)` with `p · q == w`.
pub fn all_factorizations(w: &Tableau) -> Vec<(Tableau, Tableau)> {
    let mut out = Vec::new();
    visit_factorizations(w, &mut |p, q| out.push((p.clone(), q.clone())));
    out
}

/// Factorizations `w = p · q` with the given shapes. The count always equals
/// the Littlewood-Richardson coefficient for `(σ, τ, shape(w))`.
pub fn factorizations(w: &Tableau, sigma: &Partition, tau: &Partition) -> Vec<(Tableau, Tableau)> {
    let mut out = Vec::new();
    if sigma.weight() + tau.weight() != w.box_count() || !sigma.contained_in(&w.shape()) {
        return out;
    }
    visit_factorizations(w, &mut |p, q| {
        if &p.shape() == sigma && &q.shape() == tau {
            out.push((p.clone(), q.clone()));
        }
    });
    out
}

/// The simple factorizations of `w` with respect to the rectangle `t`.
///
/// Writing `Q0` for the part of `w` below `t` (rows > a, first b columns),
/// `P0` for the part to its right (rows 1..a past column b), and `Z` for the
/// remaining part (rows > a past column b), these are the pairs
/// `(Q0 · Q̃, P̃ · P0)` over all factorizations `Z = Q̃ · P̃`. The canonical
/// factorization is the case `Q̃ = Z`.
pub fn simple_factorizations(w: &Tableau, t: &RectTableau) -> Result<BTreeSet<(Tableau, Tableau)>, TableauError> {
    if !contains_rectangle(w, t) {
        return Err(TableauError::RectangleNotContained);
    }
    let (below, top) = w.horizontal_cut(t.a as usize);
    let (_, p0) = top.vertical_cut(t.b as usize);
    let (q0, z) = below.vertical_cut(t.b as usize);
    let mut out = BTreeSet::new();
    visit_factorizations(&z, &mut |q_tilde, p_tilde| {
        out.insert((q0.product(q_tilde), p_tilde.product(&p0)));
    });
    Ok(out)
}

/// One step of the rewriting relation on pairs around a rectangle: all pairs
/// `(x', y')` reachable from `(x, y)` by moving a factor of the part of `x`
/// right of column b onto `y`, or a factor of the part of `y` below row a
/// onto `x`. Every output satisfies `x' · t · y' = x · t · y`.
pub fn models_pairs(
    x: &Tableau,
    y: &Tableau,
    t: &RectTableau,
) -> Result<BTreeSet<(Tableau, Tableau)>, TableauError> {
    if let Some(cap) = t.body.max_entry() {
        let above = |tab: &Tableau| tab.min_entry().map(|m| m > cap).unwrap_or(true);
        if !above(x) || !above(y) {
            return Err(TableauError::EntriesNotAboveRectangle);
        }
    }
    let (x0, x_tilde) = x.vertical_cut(t.b as usize);
    let (y_tilde, y0) = y.horizontal_cut(t.a as usize);
    let mut out = BTreeSet::new();
    visit_factorizations(&x_tilde, &mut |m, n| {
        out.insert((x0.product(m), n.product(y)));
    });
    visit_factorizations(&y_tilde, &mut |m, n| {
        out.insert((x.product(m), n.product(&y0)));
    });
    Ok(out)
}
