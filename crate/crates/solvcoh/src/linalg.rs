//! Exact linear algebra over ℚ(√−1): rank, kernel bases, membership tests
//! and deterministic solves.
//!
//! Pivoting is lexicographic (leftmost column, then topmost unused row), so
//! echelon forms, kernel bases and solve results are reproducible across
//! runs and platforms. Rank is additionally cross-checked in debug builds
//! against a fraction-free elimination over ℤ[√−1], so every rank decision
//! taken while the test suite runs is confirmed by two independent
//! strategies.

use crate::scalar::Scalar;
use num::bigint::BigInt;
use num::{Integer, One, Zero};

/// Dense matrix of exact scalars, row-major.
///
/// Above `SPARSE_THRESHOLD_ENTRIES` the elimination kernels switch to a
/// sparse row representation internally; the results are identical, only
/// the running time differs.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

const SPARSE_THRESHOLD_ENTRIES: usize = 16_384;

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = ScalarMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = ScalarMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        ScalarMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        if self.rows * self.cols > SPARSE_THRESHOLD_ENTRIES {
            return self.rref_sparse();
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..m.rows {
                if !m.get(r, col).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pivot_row {
                for j in 0..m.cols {
                    let a = m.get(sel, j).clone();
                    let b = m.get(pivot_row, j).clone();
                    m.set(sel, j, b);
                    m.set(pivot_row, j, a);
                }
            }
            let inv = m.get(pivot_row, col).inv();
            for j in col..m.cols {
                let v = m.get(pivot_row, j) * &inv;
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(pivot_row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Same elimination on a sparse row representation; identical pivot
    /// policy, so the output matches `rref` exactly.
    fn rref_sparse(&self) -> (ScalarMatrix, Vec<usize>) {
        use std::collections::BTreeMap;
        let mut rows: Vec<BTreeMap<usize, Scalar>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= rows.len() {
                break;
            }
            let Some(sel) = (pivot_row..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
                continue;
            };
            rows.swap(sel, pivot_row);
            let inv = rows[pivot_row][&col].inv();
            let prow: BTreeMap<usize, Scalar> = rows[pivot_row]
                .iter()
                .map(|(&j, v)| (j, v * &inv))
                .collect();
            rows[pivot_row] = prow.clone();
            for r in 0..rows.len() {
                if r == pivot_row {
                    continue;
                }
                let Some(factor) = rows[r].get(&col).cloned() else {
                    continue;
                };
                for (&j, pv) in &prow {
                    let cur = rows[r].remove(&j).unwrap_or_else(Scalar::zero);
                    let nv = cur - &factor * pv;
                    if !nv.is_zero() {
                        rows[r].insert(j, nv);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let mut out = ScalarMatrix::zeros(self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                out.set(i, j, v.clone());
            }
        }
        (out, pivots)
    }

    /// Rank over ℚ(√−1). In debug builds the result is cross-checked
    /// against the fraction-free strategy.
    pub fn rank(&self) -> usize {
        let r = self.rref().1.len();
        debug_assert_eq!(
            r,
            self.rank_fraction_free(),
            "elimination strategies disagree on rank"
        );
        r
    }

    /// Fraction-free (Bareiss) rank over ℤ[√−1] after clearing
    /// denominators row by row. Independent of `rank`'s elimination path.
    pub fn rank_fraction_free(&self) -> usize {
        // Gaussian integers as (re, im) pairs.
        type G = (BigInt, BigInt);
        fn gmul(a: &G, b: &G) -> G {
            (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
        }
        fn gsub(a: &G, b: &G) -> G {
            (&a.0 - &b.0, &a.1 - &b.1)
        }
        fn gzero(a: &G) -> bool {
            a.0.is_zero() && a.1.is_zero()
        }
        // Exact division in ℤ[i]; Bareiss guarantees exactness.
        fn gdiv(a: &G, b: &G) -> G {
            let n = &b.0 * &b.0 + &b.1 * &b.1;
            let re = &a.0 * &b.0 + &a.1 * &b.1;
            let im = &a.1 * &b.0 - &a.0 * &b.1;
            debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
            (re / &n, im / n)
        }

        let mut m: Vec<Vec<G>> = (0..self.rows)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..self.cols {
                    let s = self.get(i, j);
                    l = l.lcm(s.re.denom());
                    l = l.lcm(s.im.denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let s = self.get(i, j);
                        let re = s.re.numer() * (&l / s.re.denom());
                        let im = s.im.numer() * (&l / s.im.denom());
                        (re, im)
                    })
                    .collect()
            })
            .collect();

        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        let mut prev = (BigInt::one(), BigInt::zero());
        let mut row = 0usize;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(sel) = (row..rows).find(|&r| !gzero(&m[r][col])) else {
                continue;
            };
            m.swap(sel, row);
            let pivot = m[row][col].clone();
            for r in (row + 1)..rows {
                for c in (col + 1)..cols {
                    let t = gsub(&gmul(&pivot, &m[r][c]), &gmul(&m[r][col], &m[row][c]));
                    m[r][c] = gdiv(&t, &prev);
                }
                m[r][col] = (BigInt::zero(), BigInt::zero());
            }
            prev = pivot;
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Echelonized basis of the null space. Deterministic: the basis vector
    /// for free column `f` has a 1 in position `f` and is supported on
    /// earlier pivot columns; vectors are ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                let coeff = r.get(prow, free);
                if !coeff.is_zero() {
                    v[pcol] = -coeff;
                }
            }
            basis.push(v);
        }
        debug_assert_eq!(basis.len(), self.cols - pivots.len());
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

impl std::fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ScalarMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Column order used by the deterministic solver. `Reverse` exists so tests
/// can confirm that quotient-level results do not depend on the particular
/// primitives chosen.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PivotOrder {
    #[default]
    Forward,
    Reverse,
}

/// Coefficients expressing `v` in the span of the given vectors, or `None`
/// when `v` is outside the span. Free coefficients are set to zero, so the
/// answer is deterministic.
pub fn membership(v: &[Scalar], span: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    for s in span {
        assert_eq!(s.len(), v.len(), "span vector length mismatch");
    }
    solve(&ScalarMatrix::from_columns(span, v.len()), v, PivotOrder::Forward)
}

/// Deterministic particular solution of `m · x = rhs`, or `None` when
/// inconsistent. Free variables are zero; under `PivotOrder::Reverse` the
/// columns are scanned right to left.
pub fn solve(m: &ScalarMatrix, rhs: &[Scalar], order: PivotOrder) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, rhs.len(), "rhs length mismatch");
    let work = match order {
        PivotOrder::Forward => m.clone(),
        PivotOrder::Reverse => {
            let mut w = ScalarMatrix::zeros(m.rows, m.cols);
            for i in 0..m.rows {
                for j in 0..m.cols {
                    w.set(i, j, m.get(i, m.cols - 1 - j).clone());
                }
            }
            w
        }
    };
    let aug = work.hstack(&ScalarMatrix::from_columns(&[rhs.to_vec()], rhs.len()));
    let (r, pivots) = aug.rref();
    // Inconsistent iff the rhs column is a pivot.
    if pivots.contains(&work.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (prow, &pcol) in pivots.iter().enumerate() {
        let col = match order {
            PivotOrder::Forward => pcol,
            PivotOrder::Reverse => m.cols - 1 - pcol,
        };
        x[col] = r.get(prow, work.cols).clone();
    }
    Some(x)
}

/// Echelonized basis of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    assert!(vectors.iter().all(|v| v.len() == dim));
    let m = ScalarMatrix::from_rows(vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Extend `inner` (a spanning set) to a basis of the kernel-side space by
/// appending those of `candidates` that are independent of everything
/// chosen so far. Returns the indices of the appended candidates.
pub fn echelon_completion(
    inner: &[Vec<Scalar>],
    candidates: &[Vec<Scalar>],
    dim: usize,
) -> Vec<usize> {
    let mut chosen: Vec<Vec<Scalar>> = inner.to_vec();
    let mut picked = Vec::new();
    let mut current_rank = if chosen.is_empty() {
        0
    } else {
        ScalarMatrix::from_rows(chosen.clone()).rank()
    };
    for (idx, cand) in candidates.iter().enumerate() {
        assert_eq!(cand.len(), dim);
        chosen.push(cand.clone());
        let r = ScalarMatrix::from_rows(chosen.clone()).rank();
        if r > current_rank {
            current_rank = r;
            picked.push(idx);
        } else {
            chosen.pop();
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    fn mat(rows: Vec<Vec<i64>>) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(s).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(ScalarMatrix::identity(2).rank(), 2);
        assert_eq!(ScalarMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn rank_heisenberg_boundary() {
        // d on degree 1 for the Heisenberg algebra: x1 -> 0, x2 -> 0,
        // x3 -> -x1^x2. As a matrix from 1-forms to 2-forms (basis
        // x1^x2, x1^x3, x2^x3) this has a single nonzero column.
        let d1 = mat(vec![vec![0, 0, -1], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(d1.rank(), 1);
        let kernel = d1.kernel_basis();
        assert_eq!(kernel.len(), 2);
        // Kernel is spanned by the x1 and x2 duals.
        assert_eq!(kernel[0], vec![s(1), s(0), s(0)]);
        assert_eq!(kernel[1], vec![s(0), s(1), s(0)]);
    }

    #[test]
    fn kernel_identity_empty_zero_full() {
        assert!(ScalarMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(ScalarMatrix::zeros(1, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rank_plus_nullity_and_transpose() {
        let m = mat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn membership_examples() {
        let span = vec![vec![s(1), s(0)], vec![s(1), s(1)]];
        assert_eq!(membership(&[s(0), s(0)], &span), Some(vec![s(0), s(0)]));
        assert_eq!(membership(&[s(1), s(0)], &span), Some(vec![s(1), s(0)]));
        let small = vec![vec![s(1), s(0)]];
        assert_eq!(membership(&[s(0), s(1)], &small), None);
        assert_eq!(membership(&[s(0)], &[]), Some(vec![]));
        assert_eq!(membership(&[s(1)], &[]), None);
    }

    #[test]
    fn solve_pivot_orders_agree_up_to_kernel() {
        let m = mat(vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let rhs = vec![s(2), s(3)];
        let a = solve(&m, &rhs, PivotOrder::Forward).unwrap();
        let b = solve(&m, &rhs, PivotOrder::Reverse).unwrap();
        assert_eq!(m.apply(&a), rhs);
        assert_eq!(m.apply(&b), rhs);
        assert_ne!(a, b); // genuinely different primitives
    }

    #[test]
    fn complex_entries() {
        let i = Scalar::i();
        let m = ScalarMatrix::from_rows(vec![
            vec![Scalar::one(), i.clone()],
            vec![i.clone(), Scalar::from_integer(-1)],
        ]);
        // second row = i * first row
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_fraction_free(), 1);
    }

    #[test]
    fn sparse_dense_agree() {
        let m = mat(vec![
            vec![0, 2, 1, 0],
            vec![1, 0, 0, 3],
            vec![1, 2, 1, 3],
            vec![0, 0, 5, 0],
        ]);
        let (dense, piv_d) = m.rref();
        let (sparse, piv_s) = m.rref_sparse();
        assert_eq!(piv_d, piv_s);
        assert_eq!(dense, sparse);
    }
}
