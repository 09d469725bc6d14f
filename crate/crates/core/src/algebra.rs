//! Finite-dimensional algebras given by structure constants.

use crate::scalar::{Field, Rational};

/// Sparse structure constants: `b_i · b_j = Σ_k c_{ij}^k b_k`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    products: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn new(dim: usize, mut product: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                assert_eq!(v.len(), dim);
                products.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !Field::is_zero(c))
                        .collect(),
                );
            }
        }
        StructureConstants { dim, products }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero terms of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim + j]
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![F::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let terms = self.basis_product(i, j);
                if terms.is_empty() {
                    continue;
                }
                let ab = a.times(b);
                for (k, c) in terms {
                    out[*k] = out[*k].plus(&ab.times(&F::from_rational(c)));
                }
            }
        }
        out
    }
}
