use std::fmt;

use super::{Field, ScalarError, Subspace};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
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
        Self::from_fn(n, n, |r, c| if r == c { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self, ScalarError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ScalarError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { F::zero() })
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

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.times(s))
    }

    pub fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = out.data[idx].plus(&a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    /// Commutator `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.times(rhs).minus(&rhs.times(self))
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn row_reduce(&self) -> (Self, Vec<usize>) {
        let mut rows: Vec<Vec<F>> = self
            .row_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].inverse().expect("nonzero pivot");
            if !inv.is_one() {
                for x in rows[rank][col..].iter_mut() {
                    *x = x.times(&inv);
                }
            }
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
            for other in head.iter_mut().chain(tail.iter_mut()) {
                let factor = other[col].clone();
                if factor.is_zero() {
                    continue;
                }
                for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !p.is_zero() {
                        *x = x.minus(&factor.times(p));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        let data = rows.into_iter().flatten().collect();
        (
            Matrix {
                rows: rank,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    /// Reduced row-echelon form; zero rows are dropped, so the result has
    /// `rank` rows.
    pub fn rref(&self) -> Self {
        self.row_reduce().0
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Subspace<F> {
        let (r, pivots) = self.row_reduce();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).negated();
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis).expect("kernel vectors have matching length")
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<F>> = self.row_iter().map(|r| r.to_vec()).collect();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap(p, col);
                det = det.negated();
            }
            det = det.times(&m[col][col]);
            let inv = m[col][col].inverse().expect("nonzero pivot");
            let (head, tail) = m.split_at_mut(col + 1);
            let pivot = &head[col];
            for row in tail.iter_mut() {
                let factor = row[col].times(&inv);
                if factor.is_zero() {
                    continue;
                }
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = x.minus(&factor.times(p));
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let augmented = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let (red, pivots) = augmented.row_reduce();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    /// Unique solution of `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let inv = self.inverse()?;
        Some(inv.apply(b))
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
