//! Dense exact matrices and Gauss-Jordan elimination over a `Field`.
//!
//! Pivoting is deterministic: the first nonzero entry of the leftmost
//! remaining column is used, so kernels and solutions are reproducible.

use num_traits::Zero;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
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
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(F::zero(), |acc, j| {
                    if v[j].is_zero() {
                        acc
                    } else {
                        acc + self.get(i, j).clone() * v[j].clone()
                    }
                })
            })
            .collect()
    }

    /// Gauss-Jordan elimination.
    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c).clone();
                if !v.is_zero() {
                    m.set(row, c, v * inv.clone());
                }
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pivot_entry = m.get(row, c).clone();
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).clone() - factor.clone() * pivot_entry;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel basis read off the reduced echelon form, one vector per free
    /// column in increasing order, with a 1 in that free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.echelon().kernel_basis()
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut augmented = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, self.cols, b[r].clone());
        }
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &col) in ech.pivots.iter().enumerate() {
            x[col] = ech.reduced.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inv();
            for r in col + 1..m.rows {
                let factor = m.get(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); cols];
                v[free] = F::one();
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced.get(row, free).clone();
                }
                v
            })
            .collect()
    }
}

/// Incrementally maintained span of vectors, for independence tests.
#[derive(Clone, Debug)]
pub struct Span<F> {
    dim: usize,
    // Reduced rows, each with a distinct leading column.
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (lead, row) in &self.rows {
            let factor = w[*lead].clone();
            if factor.is_zero() {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi = wi.clone() - factor.clone() * ri.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false (and leaves the span unchanged) if it was
    /// already inside.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let w = self.reduce(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].inv();
        let w: Vec<F> = w.into_iter().map(|x| x * inv.clone()).collect();
        for (_, row) in self.rows.iter_mut() {
            let factor = row[lead].clone();
            if factor.is_zero() {
                continue;
            }
            for (ri, wi) in row.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *ri = ri.clone() - factor.clone() * wi.clone();
                }
            }
        }
        self.rows.push((lead, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
        assert_eq!(k[0][2], int(1));
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = Matrix::<Rational>::zeros(4, 2).kernel();
        assert_eq!(k, vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = a.solve(&v(&[3, 1, 4])).unwrap();
        assert_eq!(a.mul_vec(&x), v(&[3, 1, 4]));
        assert!(a.solve(&v(&[3, 1, 5])).is_none());
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[2, 3], &[4, 6]]).determinant(), int(0));
        assert_eq!(
            m(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]).determinant(),
            int(31)
        );
    }

    #[test]
    fn span_tracks_independence() {
        let mut s = Span::<Rational>::new(3);
        assert!(s.insert(&v(&[1, 1, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(s.contains(&v(&[1, 2, 1])));
        assert!(!s.insert(&v(&[2, 0, -2])));
        assert!(s.insert(&v(&[0, 0, 1])));
        assert_eq!(s.dimension(), 3);
    }

    #[test]
    fn works_over_prime_fields() {
        type F3 = Fp<3>;
        let a = Matrix::from_rows(vec![
            vec![F3::new(1), F3::new(2)],
            vec![F3::new(2), F3::new(1)],
        ]);
        // rows are dependent mod 3: 2*(1,2) = (2,1)
        assert_eq!(a.rank(), 1);
    }
}
