//! Integer matrices, Smith and Hermite normal forms, and integer lattices.
//!
//! These decide equality of weight classes modulo declared relations. All
//! arithmetic is over `BigInt`, so coefficient growth during elimination is
//! harmless.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// `u * m * v = d` with `d` diagonal, each diagonal entry nonnegative and
/// dividing the next, and `u`, `v` unimodular.
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries including trailing zeros, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for k in 0..n {
        loop {
            // Find the absolutely smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..d.rows {
                for j in k..d.cols {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d.get(i, j).abs() < d.get(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d.get(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }

            let pivot = d.get(k, k).clone();
            let mut dirty = false;
            for i in (k + 1)..d.rows {
                if !d.get(i, k).is_zero() {
                    let q = -(d.get(i, k) / &pivot);
                    d.add_row(i, k, &q);
                    u.add_row(i, k, &q);
                    if !d.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in (k + 1)..d.cols {
                if !d.get(k, j).is_zero() {
                    let q = -(d.get(k, j) / &pivot);
                    d.add_col(j, k, &q);
                    v.add_col(j, k, &q);
                    if !d.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear. Enforce divisibility of the rest.
            let mut fixed = true;
            'scan: for i in (k + 1)..d.rows {
                for j in (k + 1)..d.cols {
                    if !(d.get(i, j) % &pivot).is_zero() {
                        // Fold row i into row k and retry.
                        d.add_row(k, i, &BigInt::one());
                        u.add_row(k, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    SmithDecomposition { u, d, v }
}

/// Row-style Hermite normal form: `h = u * m` with `u` unimodular, `h` in
/// row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut row = 0usize;
    for col in 0..h.cols {
        if row >= h.rows {
            break;
        }
        // Euclidean elimination below position (row, col).
        loop {
            let mut best: Option<usize> = None;
            for i in row..h.rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if h.get(i, col).abs() < h.get(b, col).abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(pi) = best else { break };
            h.swap_rows(row, pi);
            u.swap_rows(row, pi);
            if h.get(row, col).is_negative() {
                h.negate_row(row);
                u.negate_row(row);
            }
            let pivot = h.get(row, col).clone();
            let mut any = false;
            for i in (row + 1)..h.rows {
                if !h.get(i, col).is_zero() {
                    let q = -(h.get(i, col).div_floor(&pivot));
                    h.add_row(i, row, &q);
                    u.add_row(i, row, &q);
                    if !h.get(i, col).is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        // Reduce entries above the pivot.
        let pivot = h.get(row, col).clone();
        for i in 0..row {
            let q = -(h.get(i, col).div_floor(&pivot));
            if !q.is_zero() {
                h.add_row(i, row, &q);
                u.add_row(i, row, &q);
            }
        }
        row += 1;
    }
    (h, u)
}

/// A sublattice of ℤ^ambient_rank given by integer generators. Membership
/// and canonical coset representatives are decided exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<i64>>,
    /// Hermite form of the generator matrix with its pivot columns.
    hnf: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

/// Input error for lattice queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMismatch {
    pub expected: usize,
    pub got: usize,
}

impl std::fmt::Display for LengthMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "vector length {} does not match ambient rank {}",
            self.got, self.expected
        )
    }
}

impl std::error::Error for LengthMismatch {}

impl IntegerLattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<i64>>) -> Result<Self, LengthMismatch> {
        for g in &generators {
            if g.len() != ambient_rank {
                return Err(LengthMismatch {
                    expected: ambient_rank,
                    got: g.len(),
                });
            }
        }
        let m = if generators.is_empty() {
            IntMatrix::zeros(0, ambient_rank)
        } else {
            IntMatrix::from_rows_i64(&generators)
        };
        let (hnf, _) = hermite_normal_form(&m);
        let mut pivots = Vec::new();
        for i in 0..hnf.rows {
            if let Some(j) = (0..hnf.cols).find(|&j| !hnf.get(i, j).is_zero()) {
                pivots.push((i, j));
            }
        }
        Ok(IntegerLattice {
            ambient_rank,
            generators,
            hnf,
            pivots,
        })
    }

    pub fn trivial(ambient_rank: usize) -> Self {
        Self::new(ambient_rank, Vec::new()).unwrap()
    }

    /// True iff `v` is an integer combination of the generators. Decided via
    /// the Smith normal form of the generator matrix.
    pub fn contains(&self, v: &[i64]) -> Result<bool, LengthMismatch> {
        if v.len() != self.ambient_rank {
            return Err(LengthMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        if v.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        // Solve x * G = v over ℤ, i.e. Gᵗ xᵗ = vᵗ.
        let g = IntMatrix::from_rows_i64(&self.generators);
        let mut gt = IntMatrix::zeros(g.cols, g.rows);
        for i in 0..g.rows {
            for j in 0..g.cols {
                gt.set(j, i, g.get(i, j).clone());
            }
        }
        let snf = smith_normal_form(&gt);
        // Gᵗ x = v  <=>  D y = U v with y = V⁻¹ x free over ℤ.
        let mut w = vec![BigInt::zero(); gt.rows];
        for i in 0..gt.rows {
            let mut s = BigInt::zero();
            for j in 0..snf.u.cols {
                s += snf.u.get(i, j) * BigInt::from(v[j]);
            }
            w[i] = s;
        }
        let k = gt.rows.min(gt.cols);
        for i in 0..gt.rows {
            if i < k && !snf.d.get(i, i).is_zero() {
                if !(&w[i] % snf.d.get(i, i)).is_zero() {
                    return Ok(false);
                }
            } else if !w[i].is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical coset representative of `v` modulo the lattice: reduce by
    /// Hermite rows so each pivot coordinate falls in `[0, pivot)`. Two
    /// vectors are congruent iff their reductions are equal.
    pub fn reduce(&self, v: &[i64]) -> Result<Vec<BigInt>, LengthMismatch> {
        if v.len() != self.ambient_rank {
            return Err(LengthMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        let mut out: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for &(i, j) in &self.pivots {
            let pivot = self.hnf.get(i, j);
            let q = out[j].div_floor(pivot);
            if q.is_zero() {
                continue;
            }
            for c in 0..self.ambient_rank {
                let delta = &q * self.hnf.get(i, c);
                out[c] -= delta;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_diag_2_3() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    }

    #[test]
    fn smith_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.d, id);
        let z = IntMatrix::zeros(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.d.is_zero());
    }

    #[test]
    fn smith_reconstructs_and_divides() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            }
        }
    }

    #[test]
    fn lattice_membership() {
        let l = IntegerLattice::new(2, vec![vec![2, 0]]).unwrap();
        assert!(l.contains(&[0, 0]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert!(l.contains(&[4, 0]).unwrap());
        assert!(!l.contains(&[2, 1]).unwrap());

        let l = IntegerLattice::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        // 2*(2,0) - 1*(0,3) = (4,-3)
        assert!(l.contains(&[4, -3]).unwrap());
        assert!(!l.contains(&[3, 3]).unwrap());

        assert!(l.contains(&[1, 1, 1]).is_err());
    }

    #[test]
    fn reduce_is_coset_invariant() {
        let l = IntegerLattice::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(l.reduce(&[5, 7]).unwrap(), l.reduce(&[1, 1]).unwrap());
        assert_ne!(l.reduce(&[1, 0]).unwrap(), l.reduce(&[0, 0]).unwrap());
    }

    #[test]
    fn hermite_shape() {
        let m = IntMatrix::from_rows_i64(&[vec![4, 6], vec![2, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert!(h.get(0, 0) > &BigInt::zero());
    }
}
