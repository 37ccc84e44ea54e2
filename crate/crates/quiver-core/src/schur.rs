//! Schur functions indexed by integer sequences: straightening, polynomial
//! evaluation, and Littlewood-Richardson numbers.
//!
//! For a sequence of integers `I = (a_1, ..., a_p)` the Schur function `s_I`
//! is the determinant `det(h_{a_i + j - i})`. Exchanging rows of the matrix
//! shows `s_I` is zero or `±s_λ` for a partition λ; [`straighten`] computes
//! which, without touching the determinant.

use std::collections::BTreeMap;

use crate::partition::Partition;

/// Zero, or a sign together with a partition shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedSchur {
    Zero,
    Term { sign: i8, shape: Partition },
}

impl SignedSchur {
    pub fn term(sign: i8, shape: Partition) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        SignedSchur::Term { sign, shape }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedSchur::Zero)
    }

    pub fn negated(&self) -> Self {
        match self {
            SignedSchur::Zero => SignedSchur::Zero,
            SignedSchur::Term { sign, shape } => SignedSchur::Term {
                sign: -sign,
                shape: shape.clone(),
            },
        }
    }
}

/// Straightens `s_I` for an arbitrary integer sequence `I`.
///
/// Rule: put `c_k = a_k - k`. If two `c_k` coincide the determinant has two
/// equal rows and the result is zero. Otherwise sort `c` strictly decreasing
/// by a permutation `w` and put `λ_k = c_{w(k)} + k`; the result is
/// `sign(w) · s_λ`, or zero if some `λ_k` is negative (an all-zero row).
pub fn straighten(entries: &[i64]) -> SignedSchur {
    let n = entries.len();
    let mut c: Vec<(i64, usize)> = entries
        .iter()
        .enumerate()
        .map(|(k, &a)| (a - (k as i64 + 1), k))
        .collect();
    c.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    for w in c.windows(2) {
        if w[0].0 == w[1].0 {
            return SignedSchur::Zero;
        }
    }
    // Parity of the sorting permutation, counted by inversions.
    let mut inversions = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if c[i].1 > c[j].1 {
                inversions += 1;
            }
        }
    }
    let mut lambda = Vec::with_capacity(n);
    for (k, &(ck, _)) in c.iter().enumerate() {
        let part = ck + (k as i64 + 1);
        if part < 0 {
            return SignedSchur::Zero;
        }
        lambda.push(part as u32);
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    SignedSchur::term(sign, Partition::from_parts(&lambda))
}

/// Sparse polynomial in `k` commuting variables with integer coefficients,
/// keyed by exponent vectors. Only used at desk scale, as an oracle for the
/// straightening rule and the Littlewood-Richardson numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        let mut p = MultiPoly::zero();
        if c != 0 {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(expo.clone()).or_insert(0);
        *entry = entry.checked_add(c).expect("polynomial coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&expo);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v.checked_mul(c).expect("polynomial coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(expo, c1.checked_mul(c2).expect("polynomial coefficient overflow"));
            }
        }
        out
    }
}

/// The Schur polynomial `s_λ(x_1..x_k)`: generating function of semistandard
/// tableaux of shape λ with entries in `1..=k`. Zero when λ has more than
/// `k` rows.
pub fn schur_eval(shape: &Partition, k: usize) -> MultiPoly {
    assert!(k >= 1, "need at least one variable");
    let mut poly = MultiPoly::zero();
    if shape.len() > k {
        return poly;
    }
    if shape.is_empty() {
        return MultiPoly::constant(k, 1);
    }
    // DFS over semistandard fillings, tracking content.
    fn fill(
        shape: &Partition,
        k: usize,
        row: usize,
        col: usize,
        rows: &mut Vec<Vec<u32>>,
        content: &mut Vec<u32>,
        poly: &mut MultiPoly,
    ) {
        if row == shape.len() {
            poly.add_term(content.clone(), 1);
            return;
        }
        let (next_row, next_col) = if col + 1 < shape.part(row) as usize {
            (row, col + 1)
        } else {
            (row + 1, 0)
        };
        let lo = {
            let mut lo = 1;
            if col > 0 {
                lo = lo.max(rows[row][col - 1]);
            }
            if row > 0 && (col as u32) < shape.part(row - 1) {
                lo = lo.max(rows[row - 1][col] + 1);
            }
            lo
        };
        for v in lo..=(k as u32) {
            rows[row][col] = v;
            content[(v - 1) as usize] += 1;
            fill(shape, k, next_row, next_col, rows, content, poly);
            content[(v - 1) as usize] -= 1;
        }
    }
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&p| vec![0; p as usize]).collect();
    let mut content = vec![0u32; k];
    fill(shape, k, 0, 0, &mut rows, &mut content, &mut poly);
    poly
}

/// The determinant `det(h_{a_i + j - i})` expanded in the h-basis: a map
/// from sorted multisets of positive h-indices to integer coefficients.
/// `h_0` factors drop out and a negative index kills the whole term. The
/// `h_m` are algebraically independent, so this is a faithful normal form
/// and the reference point for [`straighten`].
pub fn jacobi_trudi_h_expansion(entries: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let p = entries.len();
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..p).collect();
    visit_permutations(&mut perm, 0, &mut |perm, sign| {
        let mut key = Vec::with_capacity(p);
        for (i, &wi) in perm.iter().enumerate() {
            let degree = entries[i] + wi as i64 - i as i64;
            if degree < 0 {
                return;
            }
            if degree > 0 {
                key.push(degree);
            }
        }
        key.sort_unstable();
        let entry = out.entry(key.clone()).or_insert(0);
        *entry += sign;
        if *entry == 0 {
            out.remove(&key);
        }
    });
    out
}

fn visit_permutations(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], i64)) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        visit(perm, if inversions % 2 == 0 { 1 } else { -1 });
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        visit_permutations(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// The Littlewood-Richardson coefficient `c^μ_{στ}`: the number of
/// semistandard skew tableaux of shape `μ/σ` and content `τ` whose reverse
/// reading word (rows right to left, top to bottom) is a lattice word.
pub fn lr_coeff(sigma: &Partition, tau: &Partition, mu: &Partition) -> u64 {
    if sigma.weight() + tau.weight() != mu.weight() || !sigma.contained_in(mu) {
        return 0;
    }
    if tau.is_empty() {
        return if sigma == mu { 1 } else { 0 };
    }
    let mut count = 0u64;
    lr_fill(mu, sigma, Some(tau), &mut |_| count += 1);
    count
}

/// The coproduct of `s_μ`: all pairs `(σ, τ)` with `c^μ_{στ} > 0` and their
/// coefficients. Total weight splits exactly on every key.
pub fn coproduct(mu: &Partition) -> BTreeMap<(Partition, Partition), u64> {
    let mut out: BTreeMap<(Partition, Partition), u64> = BTreeMap::new();
    for sigma in mu.sub_partitions() {
        lr_fill(mu, &sigma, None, &mut |content| {
            let tau = Partition::from_parts(content);
            *out.entry((sigma.clone(), tau)).or_insert(0) += 1;
        });
    }
    out
}

/// Enumerates Littlewood-Richardson fillings of `μ/σ`, invoking `visit` with
/// the content of each. With `tau` given, only fillings of that content are
/// produced. Cells are filled along the reverse reading order (top row first,
/// right to left) so the lattice condition is checked one letter at a time.
fn lr_fill(mu: &Partition, sigma: &Partition, tau: Option<&Partition>, visit: &mut dyn FnMut(&[u32])) {
    let rows = mu.len();
    let mut grid: Vec<Vec<u32>> = (0..rows)
        .map(|r| vec![0; mu.part(r) as usize])
        .collect();
    let max_label = tau.map(|t| t.len()).unwrap_or(rows).max(1);
    let mut content = vec![0u32; max_label];

    // Cell list in fill order: rows top to bottom, columns right to left,
    // skipping the σ part of each row.
    let mut cells = Vec::new();
    for r in 0..rows {
        let lo = sigma.part(r) as usize;
        let hi = mu.part(r) as usize;
        for c in (lo..hi).rev() {
            cells.push((r, c));
        }
    }

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        sigma: &Partition,
        tau: Option<&Partition>,
        grid: &mut Vec<Vec<u32>>,
        content: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if idx == cells.len() {
            visit(content);
            return;
        }
        let (r, c) = cells[idx];
        // Upper bound from the cell to the right (filled earlier in this
        // order), lower bound from the cell above.
        let above = if r > 0 && (c as u32) >= sigma.part(r - 1) && c < grid[r - 1].len() {
            Some(grid[r - 1][c])
        } else {
            None
        };
        let right = if c + 1 < grid[r].len() { Some(grid[r][c + 1]) } else { None };
        let lo = above.map(|v| v + 1).unwrap_or(1);
        let hi = right.unwrap_or(content.len() as u32).min(content.len() as u32);
        for v in lo..=hi {
            let vi = (v - 1) as usize;
            // Content cap, and the lattice condition for the reverse
            // reading word: after placing v, #v must not exceed #(v-1).
            if let Some(t) = tau {
                if content[vi] + 1 > t.part(vi) {
                    continue;
                }
            }
            if v > 1 && content[vi] + 1 > content[vi - 1] {
                continue;
            }
            grid[r][c] = v;
            content[vi] += 1;
            rec(idx + 1, cells, sigma, tau, grid, content, visit);
            content[vi] -= 1;
        }
    }
    rec(0, &cells, sigma, tau, &mut grid, &mut content, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn straighten_already_partition() {
        assert_eq!(straighten(&[3, 1]), SignedSchur::term(1, p(&[3, 1])));
    }

    #[test]
    fn straighten_colliding_rows() {
        assert_eq!(straighten(&[0, 1]), SignedSchur::Zero);
    }

    #[test]
    fn straighten_trailing_zeros() {
        assert_eq!(straighten(&[1, 0, 0]), SignedSchur::term(1, p(&[1])));
    }

    #[test]
    fn straighten_needs_one_swap() {
        assert_eq!(straighten(&[4, 2, 4, 1]), SignedSchur::term(-1, p(&[4, 3, 3, 1])));
        assert_eq!(straighten(&[4, 1, 4, 2]), SignedSchur::term(-1, p(&[4, 3, 2, 2])));
    }

    #[test]
    fn straighten_empty_and_zero() {
        assert_eq!(straighten(&[]), SignedSchur::term(1, Partition::empty()));
        assert_eq!(straighten(&[0]), SignedSchur::term(1, Partition::empty()));
        assert_eq!(straighten(&[-1]), SignedSchur::Zero);
    }

    #[test]
    fn schur_eval_single_box() {
        let s = schur_eval(&p(&[1]), 2);
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.terms.get(&vec![1, 0]), Some(&1));
        assert_eq!(s.terms.get(&vec![0, 1]), Some(&1));
    }

    #[test]
    fn schur_eval_too_many_rows() {
        assert!(schur_eval(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn schur_eval_h2() {
        let s = schur_eval(&p(&[2]), 2);
        assert_eq!(s.terms.get(&vec![2, 0]), Some(&1));
        assert_eq!(s.terms.get(&vec![1, 1]), Some(&1));
        assert_eq!(s.terms.get(&vec![0, 2]), Some(&1));
        assert_eq!(s.terms.len(), 3);
    }

    #[test]
    fn lr_pieri_and_weight_mismatch() {
        assert_eq!(lr_coeff(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coeff(&p(&[1]), &p(&[1]), &p(&[3])), 0);
    }

    #[test]
    fn lr_two_one_squared() {
        assert_eq!(lr_coeff(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
    }

    #[test]
    fn coproduct_small() {
        let c = coproduct(&Partition::empty());
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&(Partition::empty(), Partition::empty())), Some(&1));

        let c = coproduct(&p(&[1]));
        assert_eq!(c.len(), 2);

        let c = coproduct(&p(&[1, 1]));
        assert_eq!(c.len(), 3);
        assert_eq!(c.get(&(p(&[1]), p(&[1]))), Some(&1));
    }
}
