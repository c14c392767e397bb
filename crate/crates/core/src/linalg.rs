//! Dense exact matrices over Q(√2, i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Column vector of exact scalars.
pub type ExactVector = Vec<ExactScalar>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ExactScalar::one())
    }

    pub fn scalar(n: usize, lambda: ExactScalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, lambda.clone());
        }
        m
    }

    pub fn diagonal(diag: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Builds a matrix from rows. Panics if rows are ragged.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ExactScalar::int(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[ExactVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: ExactScalar) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &ExactScalar) {
        self.entries[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ExactVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    /// True iff `self == λ·Identity` exactly.
    pub fn is_scalar_multiple_of_identity(&self, lambda: &ExactScalar) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x == lambda
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// The scalar `λ` with `self = λ·Identity`, if any.
    pub fn as_scalar(&self) -> Option<ExactScalar> {
        if !self.is_square() {
            return None;
        }
        let lambda = if self.rows == 0 {
            ExactScalar::zero()
        } else {
            self.get(0, 0).clone()
        };
        self.is_scalar_multiple_of_identity(&lambda).then_some(lambda)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
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

    pub fn scale(&self, lambda: &ExactScalar) -> Self {
        if lambda.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * lambda).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(rhs)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_shape(&self, rhs: &ExactMatrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self * rhs - rhs * self
    }

    /// `self·rhs + rhs·self`.
    pub fn anticommutator(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self * rhs + rhs * self
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> ExactVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; the index of `self` is the slow one.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j);
                if !x.is_zero() {
                    let y = x * &inv;
                    m.set(r, j, y);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pr = m.get(r, j);
                    if pr.is_zero() {
                        continue;
                    }
                    let delta = &factor * pr;
                    m.entries[i * m.cols + j] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    ///
    /// Each basis vector has a 1 in its free coordinate and zeros in the
    /// other free coordinates.
    pub fn nullspace(&self) -> Vec<ExactVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// One solution `x` of `self·x = b`.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<ExactVector> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NotInSpan("linear system is inconsistent".into()));
        }
        let mut x = vec![ExactScalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, ExactScalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entry-by-entry description of where two equally shaped matrices differ.
    pub fn diff_summary(&self, other: &ExactMatrix, limit: usize) -> String {
        if self.rows != other.rows || self.cols != other.cols {
            return format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            );
        }
        let mut parts = Vec::new();
        let mut count = 0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    count += 1;
                    if parts.len() < limit {
                        parts.push(format!(
                            "({i},{j}): {} vs {}",
                            self.get(i, j),
                            other.get(i, j)
                        ));
                    }
                }
            }
        }
        if count == 0 {
            return "equal".into();
        }
        format!("{count} entries differ; {}", parts.join("; "))
    }
}

/// True iff `m = λ·Identity` exactly. Panics on non-square input.
pub fn solve_scalar_action(m: &ExactMatrix, lambda: &ExactScalar) -> bool {
    assert!(m.is_square(), "scalar action test needs a square matrix");
    m.is_scalar_multiple_of_identity(lambda)
}

pub fn vec_is_zero(v: &[ExactScalar]) -> bool {
    v.iter().all(ExactScalar::is_zero)
}

pub fn vec_scale(v: &[ExactScalar], lambda: &ExactScalar) -> ExactVector {
    v.iter().map(|x| x * lambda).collect()
}

pub fn vec_add(a: &[ExactScalar], b: &[ExactScalar]) -> ExactVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[ExactScalar], b: &[ExactScalar]) -> ExactVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Coordinates of `v` in the basis given by the columns, if `v` lies in their span.
pub fn coordinates(basis: &[ExactVector], v: &[ExactScalar]) -> Result<ExactVector> {
    let m = ExactMatrix::from_columns(v.len(), basis);
    let x = m.solve(v)?;
    if m.rank() < basis.len() {
        return Err(Error::Singular("basis vectors are linearly dependent".into()));
    }
    Ok(x)
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    /// Panics on shape mismatch; use `try_mul` for a fallible product.
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul for ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: ExactMatrix) -> ExactMatrix {
        &self * &rhs
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Add for ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: ExactMatrix) -> ExactMatrix {
        &self + &rhs
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Sub for ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: ExactMatrix) -> ExactMatrix {
        &self - &rhs
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&ExactScalar::int(-1))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_nullspace(m: &ExactMatrix) {
        let basis = m.nullspace();
        for v in &basis {
            assert!(vec_is_zero(&m.mul_vec(v)));
        }
        assert_eq!(m.rank() + basis.len(), m.cols());
    }

    #[test]
    fn identity_is_injective() {
        let m = ExactMatrix::identity(3);
        assert!(m.nullspace().is_empty());
        check_nullspace(&m);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = ExactMatrix::zeros(2, 2);
        assert_eq!(m.nullspace().len(), 2);
        check_nullspace(&m);
    }

    #[test]
    fn rank_one_complex_matrix() {
        let i = ExactScalar::i();
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), i.clone()],
            vec![-&i, ExactScalar::one()],
        ]);
        // 2x2 determinant oracle: 1·1 − i·(−i) = 1 + i² = 0.
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        assert!(det.is_zero());
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // proportional to (−i, 1)
        assert_eq!(&v[0] * ExactScalar::one(), &v[1] * (-&i));
        check_nullspace(&m);
    }

    #[test]
    fn scalar_action() {
        assert!(solve_scalar_action(&ExactMatrix::identity(3), &ExactScalar::one()));
        assert!(solve_scalar_action(&ExactMatrix::zeros(2, 2), &ExactScalar::zero()));
        let d = ExactMatrix::diagonal(&[ExactScalar::int(1), ExactScalar::int(2)]);
        assert!(!solve_scalar_action(&d, &ExactScalar::one()));
    }

    #[test]
    fn inverse_and_solve() {
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::sqrt2(), ExactScalar::i()],
            vec![ExactScalar::one(), ExactScalar::int(3)],
        ]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_scalar_multiple_of_identity(&ExactScalar::one()));
        let b = vec![ExactScalar::int(1), ExactScalar::int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(ExactMatrix::zeros(2, 2).inverse().is_err());
    }

    #[test]
    fn kron_shapes_and_mixed_product() {
        let a = ExactMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), &ExactScalar::int(1));
        assert_eq!(k.get(3, 2), &ExactScalar::int(4));
        assert_eq!(a.kron(&b) * a.kron(&b), (&a * &a).kron(&(&b * &b)));
    }

    fn arb_small() -> impl Strategy<Value = ExactScalar> {
        (-2i64..=2, -1i64..=1, -1i64..=1).prop_map(|(a, b, c)| {
            ExactScalar::int(a) + ExactScalar::int(b) * ExactScalar::sqrt2()
                + ExactScalar::int(c) * ExactScalar::i()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..6, seed in proptest::collection::vec(arb_small(), 30)) {
            let entries: Vec<Vec<ExactScalar>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[(i * cols + j) % seed.len()].clone()).collect())
                .collect();
            let m = ExactMatrix::from_rows(entries);
            let basis = m.nullspace();
            for v in &basis {
                prop_assert!(vec_is_zero(&m.mul_vec(v)));
            }
            prop_assert_eq!(m.rank() + basis.len(), cols);
        }
    }
}
