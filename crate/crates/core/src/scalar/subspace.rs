use super::{Field, Matrix, ScalarError};

/// A linear subspace of `F^n`, stored by its reduced row-echelon basis.
///
/// The echelon basis is unique, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let (basis, pivots) = m.row_reduce();
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of an arbitrary (possibly dependent) family of vectors.
    pub fn from_vectors<I>(ambient_dim: usize, vectors: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = Vec<F>>,
    {
        let m = Matrix::from_rows(ambient_dim, vectors.into_iter().collect())?;
        Ok(Self::row_space(&m))
    }

    /// The span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vectors = indices.iter().map(|&i| {
            let mut v = vec![F::zero(); ambient_dim];
            v[i] = F::one();
            v
        });
        Self::from_vectors(ambient_dim, vectors).expect("unit vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical echelon basis as a matrix whose rows are the basis vectors.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[F]> + '_ {
        self.basis.row_iter()
    }

    /// Coordinates of `v` with respect to the echelon basis, or `None` when
    /// `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.basis.row_iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = x.minus(&c.times(b));
                }
            }
        }
        residual.iter().all(F::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool, ScalarError> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().all(|v| self.contains(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_ambient(other)?;
        Self::from_vectors(
            self.ambient_dim,
            self.basis_vectors()
                .chain(other.basis_vectors())
                .map(|v| v.to_vec()),
        )
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_ambient(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.ambient_dim));
        }
        // Solve Σ x_i a_i − Σ y_j b_j = 0; the x-parts give the intersection.
        let system = Matrix::from_fn(self.ambient_dim, a + b, |r, c| {
            if c < a {
                self.basis.get(c, r).clone()
            } else {
                other.basis.get(c - a, r).negated()
            }
        });
        let kernel = system.nullspace();
        let vectors = kernel.basis_vectors().map(|k| {
            let mut v = vec![F::zero(); self.ambient_dim];
            for (x, row) in k[..a].iter().zip(self.basis.row_iter()) {
                if x.is_zero() {
                    continue;
                }
                for (acc, e) in v.iter_mut().zip(row) {
                    *acc = acc.plus(&x.times(e));
                }
            }
            v
        });
        Self::from_vectors(self.ambient_dim, vectors)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &Matrix<F>) -> Result<Self, ScalarError> {
        if map.cols() != self.ambient_dim {
            return Err(ScalarError::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.cols(),
            });
        }
        Self::from_vectors(map.rows(), self.basis_vectors().map(|v| map.apply(v)))
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace {
            ambient_dim: self.ambient_dim,
            basis: self.basis.map(f),
            pivots: self.pivots.clone(),
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<(), ScalarError> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(ScalarError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn span(n: usize, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::from_vectors(n, vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect())).unwrap()
    }

    #[test]
    fn lattice_operations() {
        let a = span(3, &[&[1, 0, 0]]);
        let b = span(3, &[&[0, 1, 0]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert!(a.intersect(&b).unwrap().is_zero());
        let plane = span(3, &[&[1, 1, 0], &[1, -1, 0]]);
        assert_eq!(plane, span(3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert!(plane.contains_subspace(&a).unwrap());
        let diag = span(3, &[&[1, 1, 1]]);
        assert!(plane.intersect(&diag).unwrap().is_zero());
        let other_plane = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(plane.intersect(&other_plane).unwrap(), b);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = span(3, &[&[1, 0, 0]]);
        let b = span(4, &[&[1, 0, 0, 0]]);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
        assert!(a.contains_subspace(&b).is_err());
    }

    #[test]
    fn coordinates_in_echelon_basis() {
        let s = span(4, &[&[1, 2, 0, 1], &[0, 0, 1, 3]]);
        let v: Vec<Rational> = [2, 4, -1, -1].iter().map(|&x| rat(x)).collect();
        assert_eq!(s.coordinates(&v), Some(vec![rat(2), rat(-1)]));
        let w: Vec<Rational> = [0, 1, 0, 0].iter().map(|&x| rat(x)).collect();
        assert_eq!(s.coordinates(&w), None);
    }
}
