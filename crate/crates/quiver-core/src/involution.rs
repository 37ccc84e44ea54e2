//! Diagrams with weakly increasing rows, the two-row exchange, and the
//! sign-reversing involution on pairs of tableaux.
//!
//! A diagram `D` with weakly increasing rows has a straightened symmetric
//! function `S(D) = s_I` (`I` its row lengths) and a rectification
//! `rect(D)`, the product of its rows from the bottom up. A violation is a
//! box in row 2 or below with no box directly above or with a box above
//! that is not strictly smaller. The two-row exchange rewrites two
//! consecutive rows `(p, q)` into `(q-1, p+1)` boxes preserving `rect` and
//! negating `S`; alternating it between rows `a, a+1` and at the minimal
//! out-of-place violation drives every violation into row `a+1`, which is
//! the involution on pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::schur::{straighten, SignedSchur};
use crate::tableau::{fits_around, RectTableau, Tableau};

/// Rows of weakly increasing positive integers; empty rows allowed
/// anywhere. Serializes as a bare array of rows, top row first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakRowDiagram {
    pub rows: Vec<Vec<u32>>,
}

#[derive(Debug, Error)]
pub enum InvolutionError {
    #[error("rows must be weakly increasing")]
    BadRow,
    #[error("no violation in the second row; the exchange is undefined")]
    NoViolation,
    #[error("pair not in the involution's domain: p has more than a rows")]
    TooManyRows,
    #[error("pair not in the involution's domain: S vanishes")]
    VanishingS,
    #[error("pair not in the involution's domain: fits together")]
    FitsTogether,
    #[error("pair not around the rectangle: fits around")]
    FitsAround,
    #[error("pair not around the rectangle: attached S vanishes")]
    ZeroAttachedS,
    #[error("entries must strictly exceed the rectangle's entries")]
    EntriesTooSmall,
    #[error("exchange loop exceeded {0} operations")]
    LoopCapExceeded(u64),
}

/// A box failing column strictness, 1-indexed. Ordered south-west first:
/// `(i, j) < (i', j')` iff `j - i < j' - i'`, ties broken by smaller `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
}

impl Violation {
    fn order_key(&self) -> (i64, usize) {
        (self.col as i64 - self.row as i64, self.row)
    }
}

impl WeakRowDiagram {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, InvolutionError> {
        for row in &rows {
            if row.windows(2).any(|w| w[0] > w[1]) || row.contains(&0) {
                return Err(InvolutionError::BadRow);
            }
        }
        Ok(WeakRowDiagram { rows })
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        WeakRowDiagram::new(rows.iter().map(|r| r.to_vec()).collect()).expect("invalid diagram literal")
    }

    pub fn row_lengths(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.len() as i64).collect()
    }

    /// Product of the rows from bottom to top.
    pub fn rect(&self) -> Tableau {
        let mut acc = Tableau::empty();
        for row in self.rows.iter().rev() {
            if row.is_empty() {
                continue;
            }
            let row_tab = Tableau::new(vec![row.clone()]).expect("weakly increasing row");
            acc = acc.product(&row_tab);
        }
        acc
    }

    /// `S(D) = s_I` for the row-length sequence `I`.
    pub fn straightened(&self) -> SignedSchur {
        straighten(&self.row_lengths())
    }

    /// All violations, sorted ascending.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for r in 1..self.rows.len() {
            for c in 0..self.rows[r].len() {
                let above = self.rows[r - 1].get(c);
                if above.is_none_or(|&v| v >= self.rows[r][c]) {
                    out.push(Violation { row: r + 1, col: c + 1 });
                }
            }
        }
        out.sort_by_key(|v| v.order_key());
        out
    }

    pub fn is_tableau(&self) -> bool {
        let trailing_empty = self
            .rows
            .iter()
            .rev()
            .take_while(|r| r.is_empty())
            .count();
        let body = &self.rows[..self.rows.len() - trailing_empty];
        body.iter().all(|r| !r.is_empty()) && self.violations().is_empty()
    }

    /// Exchanges rows `top_idx` and `top_idx + 1` (0-indexed) in place.
    pub fn exchange(&mut self, top_idx: usize) -> Result<(), InvolutionError> {
        let (top, bottom) = two_row_exchange(&self.rows[top_idx], &self.rows[top_idx + 1])?;
        self.rows[top_idx] = top;
        self.rows[top_idx + 1] = bottom;
        Ok(())
    }
}

/// The unique sign-reversing rewrite of a two-row diagram with a violation
/// in its second row: the output rows have `q-1` and `p+1` boxes, the same
/// rectification, and a negated straightening. Everything strictly left of
/// the leftmost violation is untouched.
///
/// Construction: multiply the rows into `rect(D)` (two rows at most, with
/// fewer than `q` boxes in its second row because of the violation), then
/// bump out the unique horizontal strip of `q-1` boxes that contains all of
/// the second row, right to left. The strip is the new top row; the single
/// remaining row is the new bottom row.
pub fn two_row_exchange(top: &[u32], bottom: &[u32]) -> Result<(Vec<u32>, Vec<u32>), InvolutionError> {
    let p = top.len();
    let q = bottom.len();
    let has_violation = (0..q).any(|c| top.get(c).is_none_or(|&v| v >= bottom[c]));
    if !has_violation {
        return Err(InvolutionError::NoViolation);
    }

    let mut rect = if bottom.is_empty() {
        Tableau::empty()
    } else {
        Tableau::new(vec![bottom.to_vec()]).expect("weakly increasing row")
    };
    for &v in top {
        rect.insert(v);
    }
    debug_assert!(rect.row_count() <= 2);

    let strip_size = q - 1;
    let row2 = rect.rows().get(1).map(|r| r.len()).unwrap_or(0);
    debug_assert!(row2 <= strip_size, "violation bounds the second row of rect");
    let (rest, new_top) = if strip_size == 0 {
        (rect, Vec::new())
    } else {
        // The remainder always keeps exactly p + 1 boxes in the first row.
        let row1 = rect.rows()[0].len();
        let keep = row1 - (strip_size - row2);
        rect.extract_strip(&Partition::from_parts(&[keep as u32]))
    };
    debug_assert!(rest.row_count() <= 1, "remainder must be a single row");
    let new_bottom = if rest.is_empty() { Vec::new() } else { rest.rows()[0].clone() };
    debug_assert_eq!(new_top.len(), q - 1);
    debug_assert_eq!(new_bottom.len(), p + 1);
    Ok((new_top, new_bottom))
}

/// Outcome of the pair involution, with the exchange trace.
#[derive(Clone, Debug)]
pub struct InvolutionOutcome {
    pub q: Tableau,
    pub p: Tableau,
    /// Diagram after each exchange operation, initial diagram first.
    pub trace: Vec<WeakRowDiagram>,
    pub exchanges: u64,
}

const LOOP_CAP: u64 = 1_000_000;

/// The sign-reversing involution on pairs `(q, p)` with `p` of at most `a`
/// rows, nonvanishing `S`, and not fitting together as one tableau.
///
/// Stacks `p` (padded to `a` rows) over `q`, exchanges rows `a, a+1`, and
/// while violations exist outside row `a+1`, exchanges at the minimal such
/// violation and again at `a, a+1`. The result splits back at row `a`.
pub fn pair_involution(q: &Tableau, p: &Tableau, a: usize) -> Result<InvolutionOutcome, InvolutionError> {
    assert!(a >= 1, "the involution needs a positive row count");
    if p.row_count() > a {
        return Err(InvolutionError::TooManyRows);
    }
    if pair_straightened(q, p, a).is_zero() {
        return Err(InvolutionError::VanishingS);
    }
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(a + q.row_count());
    for r in 0..a {
        rows.push(p.rows().get(r).cloned().unwrap_or_default());
    }
    rows.extend(q.rows().iter().cloned());
    let mut d = WeakRowDiagram { rows };
    if d.is_tableau() {
        return Err(InvolutionError::FitsTogether);
    }

    let mut trace = vec![d.clone()];
    let mut exchanges = 0u64;
    let bump = |d: &mut WeakRowDiagram, trace: &mut Vec<WeakRowDiagram>, idx: usize| -> Result<(), InvolutionError> {
        d.exchange(idx)?;
        trace.push(d.clone());
        Ok(())
    };
    bump(&mut d, &mut trace, a - 1)?;
    exchanges += 1;
    loop {
        let stray = d
            .violations()
            .into_iter()
            .find(|v| v.row != a + 1);
        let Some(v) = stray else { break };
        bump(&mut d, &mut trace, v.row - 2)?;
        bump(&mut d, &mut trace, a - 1)?;
        exchanges += 2;
        if exchanges > LOOP_CAP {
            return Err(InvolutionError::LoopCapExceeded(LOOP_CAP));
        }
    }

    let p_out = diagram_part(&d.rows[..a]);
    let q_out = diagram_part(&d.rows[a..]);
    Ok(InvolutionOutcome {
        q: q_out,
        p: p_out,
        trace,
        exchanges,
    })
}

/// `S(p over q)` for the membership test of the involution's domain:
/// the straightening of `(σ_1, ..., σ_a, τ_1, τ_2, ...)` with σ the shape
/// of `p` padded to `a` parts and τ the shape of `q`.
pub fn pair_straightened(q: &Tableau, p: &Tableau, a: usize) -> SignedSchur {
    let sigma = p.shape();
    let tau = q.shape();
    let mut seq: Vec<i64> = (0..a).map(|r| sigma.part(r) as i64).collect();
    seq.extend(tau.parts().iter().map(|&v| v as i64));
    straighten(&seq)
}

fn diagram_part(rows: &[Vec<u32>]) -> Tableau {
    let mut rows = rows.to_vec();
    while rows.last().is_some_and(|r| r.is_empty()) {
        rows.pop();
    }
    Tableau::new(rows).expect("split of a finished diagram is a tableau")
}

/// Row-length straightening of the diagram with `t.body · y` in the top `a`
/// rows and `x` below.
pub fn attach_s(t: &RectTableau, x: &Tableau, y: &Tableau) -> Result<SignedSchur, InvolutionError> {
    check_entries_above(t, x, y)?;
    if y.row_count() > t.a as usize {
        return Err(InvolutionError::TooManyRows);
    }
    let y_shape = y.shape();
    let mut seq: Vec<i64> = (0..t.a as usize)
        .map(|r| t.b as i64 + y_shape.part(r) as i64)
        .collect();
    seq.extend(x.rows().iter().map(|r| r.len() as i64));
    Ok(straighten(&seq))
}

fn check_entries_above(t: &RectTableau, x: &Tableau, y: &Tableau) -> Result<(), InvolutionError> {
    if let Some(cap) = t.body.max_entry() {
        for tab in [x, y] {
            if tab.min_entry().is_some_and(|m| m <= cap) {
                return Err(InvolutionError::EntriesTooSmall);
            }
        }
    }
    Ok(())
}

/// The involution on pairs around a rectangle: cut `x` vertically after
/// column `b`, involute the right part against `y`, and glue back. Flips
/// the sign of [`attach_s`] and preserves `x · t · y`.
pub fn involute_around_rect(
    t: &RectTableau,
    x: &Tableau,
    y: &Tableau,
) -> Result<(Tableau, Tableau), InvolutionError> {
    check_entries_above(t, x, y)?;
    if y.row_count() > t.a as usize {
        return Err(InvolutionError::TooManyRows);
    }
    if fits_around(x, y, t) {
        return Err(InvolutionError::FitsAround);
    }
    if attach_s(t, x, y)?.is_zero() {
        return Err(InvolutionError::ZeroAttachedS);
    }
    let (x0, x_tilde) = x.vertical_cut(t.b as usize);
    let out = pair_involution(&x_tilde, y, t.a as usize)?;
    Ok((x0.product(&out.q), out.p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[u32]]) -> Tableau {
        Tableau::from_rows(rows)
    }

    #[test]
    fn rect_of_tableau_is_itself() {
        let d = WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4]]);
        assert_eq!(d.rect(), t(&[&[1, 3, 7, 8], &[2, 4]]));
    }

    #[test]
    fn rect_of_scrambled_rows() {
        let d = WeakRowDiagram::from_rows(&[&[2, 4], &[3, 5, 6, 7]]);
        assert_eq!(d.rect(), t(&[&[2, 4, 6, 7], &[3, 5]]));
    }

    #[test]
    fn rect_of_empty() {
        assert!(WeakRowDiagram::from_rows(&[&[]]).rect().is_empty());
        assert!(WeakRowDiagram::default().rect().is_empty());
    }

    #[test]
    fn straightened_examples() {
        let d = WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4], &[3, 5, 6, 7], &[4]]);
        assert_eq!(
            d.straightened(),
            SignedSchur::term(-1, Partition::from_parts(&[4, 3, 3, 1]))
        );
        let tab = WeakRowDiagram::from_rows(&[&[1, 1], &[2]]);
        assert_eq!(tab.straightened(), SignedSchur::term(1, Partition::from_parts(&[2, 1])));
        let zero = WeakRowDiagram::from_rows(&[&[], &[5]]);
        assert_eq!(zero.straightened(), SignedSchur::Zero);
    }

    #[test]
    fn violations_of_the_worked_diagram() {
        let d = WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4], &[3, 5, 6, 7], &[4]]);
        let v = d.violations();
        assert_eq!(
            v.iter().map(|v| (v.row, v.col)).collect::<Vec<_>>(),
            vec![(3, 3), (3, 4)]
        );
        assert!(!t(&[&[1, 2], &[3, 4]]).rows().is_empty());
        let tableau_diagram = WeakRowDiagram::from_rows(&[&[1, 2], &[3, 4]]);
        assert!(tableau_diagram.violations().is_empty());
    }

    #[test]
    fn violation_order() {
        let d = WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4, 7], &[3, 5, 6], &[4]]);
        let v = d.violations();
        assert_eq!((v[0].row, v[0].col), (3, 3));
        assert_eq!((v[1].row, v[1].col), (2, 3));
    }

    #[test]
    fn two_row_exchange_trace_steps() {
        let cases = [
            (vec![2, 4], vec![3, 5, 6, 7], vec![2, 4, 7], vec![3, 5, 6]),
            (vec![1, 3, 7, 8], vec![2, 4, 7], vec![1, 3], vec![2, 4, 7, 7, 8]),
            (vec![2, 4, 7, 7, 8], vec![3, 5, 6], vec![2, 4], vec![3, 5, 6, 7, 7, 8]),
        ];
        for (top, bottom, want_top, want_bottom) in cases {
            let (got_top, got_bottom) = two_row_exchange(&top, &bottom).unwrap();
            assert_eq!(got_top, want_top);
            assert_eq!(got_bottom, want_bottom);
        }
    }

    #[test]
    fn two_row_exchange_without_violation_fails() {
        assert!(two_row_exchange(&[1, 2], &[3, 4]).is_err());
    }

    #[test]
    fn two_row_exchange_is_involutive() {
        let (top, bottom) = (vec![2, 4], vec![3, 5, 6, 7]);
        let (t2, b2) = two_row_exchange(&top, &bottom).unwrap();
        let (t3, b3) = two_row_exchange(&t2, &b2).unwrap();
        assert_eq!((t3, b3), (top, bottom));
    }

    #[test]
    fn involution_on_the_worked_pair() {
        let q = t(&[&[3, 5, 6, 7], &[4]]);
        let p = t(&[&[1, 3, 7, 8], &[2, 4]]);
        let out = pair_involution(&q, &p, 2).unwrap();
        assert_eq!(out.q, t(&[&[3, 5, 6, 7, 7, 8], &[4]]));
        assert_eq!(out.p, t(&[&[1, 3], &[2, 4]]));
        assert_eq!(out.exchanges, 3);
        let expected_trace = [
            WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4], &[3, 5, 6, 7], &[4]]),
            WeakRowDiagram::from_rows(&[&[1, 3, 7, 8], &[2, 4, 7], &[3, 5, 6], &[4]]),
            WeakRowDiagram::from_rows(&[&[1, 3], &[2, 4, 7, 7, 8], &[3, 5, 6], &[4]]),
            WeakRowDiagram::from_rows(&[&[1, 3], &[2, 4], &[3, 5, 6, 7, 7, 8], &[4]]),
        ];
        assert_eq!(out.trace.len(), 4);
        for (got, want) in out.trace.iter().zip(&expected_trace) {
            assert_eq!(got, want);
        }

        // Involutivity and the S sign flip.
        let back = pair_involution(&out.q, &out.p, 2).unwrap();
        assert_eq!(back.q, q);
        assert_eq!(back.p, p);
        assert_eq!(
            pair_straightened(&q, &p, 2),
            SignedSchur::term(-1, Partition::from_parts(&[4, 3, 3, 1]))
        );
        assert_eq!(
            pair_straightened(&out.q, &out.p, 2),
            SignedSchur::term(1, Partition::from_parts(&[4, 3, 3, 1]))
        );
        // Product and first column preserved.
        assert_eq!(out.q.product(&out.p), q.product(&p));
        let first_col = |tab: &Tableau| tab.rows().iter().map(|r| r[0]).collect::<Vec<_>>();
        assert_eq!(first_col(&out.q), first_col(&q));
    }

    #[test]
    fn involution_rejects_fitting_pair() {
        let q = t(&[&[3, 4]]);
        let p = t(&[&[1, 1, 2]]);
        assert!(matches!(
            pair_involution(&q, &p, 1),
            Err(InvolutionError::FitsTogether)
        ));
    }

    #[test]
    fn involution_rejects_vanishing_s() {
        // Row lengths (0, 1) straighten to zero.
        let q = t(&[&[2]]);
        let p = Tableau::empty();
        assert!(matches!(
            pair_involution(&q, &p, 1),
            Err(InvolutionError::VanishingS)
        ));
    }

    #[test]
    fn attach_s_examples() {
        let rect = RectTableau::new(1, 2, t(&[&[1, 1]])).unwrap();
        let s = attach_s(&rect, &t(&[&[3]]), &t(&[&[2]])).unwrap();
        assert_eq!(s, SignedSchur::term(1, Partition::from_parts(&[3, 1])));

        let bare = RectTableau::new(1, 1, t(&[&[1]])).unwrap();
        let s = attach_s(&bare, &Tableau::empty(), &Tableau::empty()).unwrap();
        assert_eq!(s, SignedSchur::term(1, Partition::from_parts(&[1])));

        let tall = RectTableau::empty_frame(3, 0);
        let s = attach_s(&tall, &t(&[&[1]]), &Tableau::empty()).unwrap();
        assert_eq!(s, SignedSchur::Zero);
    }

    #[test]
    fn involute_around_rect_b_zero_matches_pair_involution() {
        let frame = RectTableau::empty_frame(2, 0);
        let x = t(&[&[3, 5, 6, 7], &[4]]);
        let y = t(&[&[1, 3, 7, 8], &[2, 4]]);
        let (x2, y2) = involute_around_rect(&frame, &x, &y).unwrap();
        assert_eq!(x2, t(&[&[3, 5, 6, 7, 7, 8], &[4]]));
        assert_eq!(y2, t(&[&[1, 3], &[2, 4]]));
        // Twice is the identity, the attached S flips, the product holds.
        let (x3, y3) = involute_around_rect(&frame, &x2, &y2).unwrap();
        assert_eq!((x3, y3), (x.clone(), y.clone()));
        assert_eq!(
            attach_s(&frame, &x, &y).unwrap(),
            attach_s(&frame, &x2, &y2).unwrap().negated()
        );
        let triple = |a: &Tableau, b: &Tableau| a.product(&frame.body).product(b);
        assert_eq!(triple(&x, &y), triple(&x2, &y2));
    }
}
