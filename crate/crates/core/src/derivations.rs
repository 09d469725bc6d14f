//! The derivation algebra `L = Der(C)`, a simple Lie algebra of type G₂.
//!
//! `Der(C)` is computed as the kernel of the Leibniz constraints on all
//! basis pairs. The inner derivations `D_{x,y}` and the `sl(3)` maps `d_T`
//! are then checked to lie in and span that kernel.
//!
//! A derivation is an 8×8 matrix acting on column coordinate vectors, so
//! entry `(r, c)` is the `b_r`-coefficient of `D(b_c)`. Flattened 64-vectors
//! are row-major.

use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::StructureConstants;
use crate::octonion::{self, Basis, Octonion, DIM};
use crate::scalar::{rat, Field, Matrix, Rational, Subspace};

/// Dimension of `Der(C)`.
pub const G2_DIM: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("matrix is not a derivation of the octonions")]
    NotADerivation,
    #[error("expected a {expected}×{expected} matrix, got {rows}×{cols}")]
    WrongShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("d_T requires a traceless matrix, trace is {0}")]
    NonzeroTrace(String),
    #[error("derivation space has dimension {0}, expected 14")]
    WrongDimension(usize),
    #[error("spanning set has rank {found}, expected {expected}")]
    SpanDeficient { expected: usize, found: usize },
    #[error("matrix does not lie in Der(C)")]
    NotInAlgebra,
}

/// An exact derivation of `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    matrix: Matrix<Rational>,
}

impl Derivation {
    /// Wraps a matrix after checking the Leibniz rule on all basis pairs.
    pub fn new(matrix: Matrix<Rational>) -> Result<Self, DerivationError> {
        check_shape(&matrix)?;
        if !is_derivation(&matrix) {
            return Err(DerivationError::NotADerivation);
        }
        Ok(Derivation { matrix })
    }

    pub fn zero() -> Self {
        Derivation {
            matrix: Matrix::zeros(DIM, DIM),
        }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<Rational> {
        self.matrix
    }

    /// Row-major 64-vector.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.matrix.entries().to_vec()
    }

    pub fn apply(&self, x: &Octonion<Rational>) -> Octonion<Rational> {
        Octonion::from_slice(&self.matrix.apply(x.coords()))
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        Derivation {
            matrix: self.matrix.plus(&rhs.matrix),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        Derivation {
            matrix: self.matrix.minus(&rhs.matrix),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Derivation {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn negated(&self) -> Self {
        Derivation {
            matrix: self.matrix.map(|x| -x),
        }
    }

    /// Lie bracket `[D₁, D₂] = D₁D₂ − D₂D₁`.
    pub fn bracket(&self, rhs: &Self) -> Self {
        Derivation {
            matrix: self.matrix.commutator(&rhs.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

fn check_shape<F: Field>(m: &Matrix<F>) -> Result<(), DerivationError> {
    if m.rows() != DIM || m.cols() != DIM {
        return Err(DerivationError::WrongShape {
            expected: DIM,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// Whether `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)` for all 64 basis pairs.
pub fn is_derivation<F: Field>(m: &Matrix<F>) -> bool {
    if check_shape(m).is_err() {
        return false;
    }
    let table = octonion::structure_constants();
    let images: Vec<Vec<F>> = (0..DIM).map(|c| m.column(c)).collect();
    let unit = |i: usize| {
        let mut v = vec![F::zero(); DIM];
        v[i] = F::one();
        v
    };
    (0..DIM).all(|i| {
        (0..DIM).all(|j| {
            let lhs = m.apply(&table.multiply(&unit(i), &unit(j)));
            let a = table.multiply(&images[i], &unit(j));
            let b = table.multiply(&unit(i), &images[j]);
            lhs.iter()
                .zip(a.iter().zip(&b))
                .all(|(l, (x, y))| *l == x.plus(y))
        })
    })
}

/// The 512×64 linear system whose kernel is `Der(C)`: one row per basis
/// pair `(i, j)` and output coordinate `s`.
pub fn leibniz_system() -> Matrix<Rational> {
    let table = octonion::structure_constants();
    let t = |i: usize, j: usize, k: usize| -> i64 {
        table
            .basis_product(i, j)
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or(0, |(_, c)| c.to_integer().try_into().expect("integer table"))
    };
    let var = |r: usize, c: usize| r * DIM + c;
    let mut m = Matrix::zeros(DIM * DIM * DIM, DIM * DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            for s in 0..DIM {
                let row = (i * DIM + j) * DIM + s;
                let mut acc = vec![0i64; DIM * DIM];
                for k in 0..DIM {
                    acc[var(s, k)] += t(i, j, k);
                }
                for r in 0..DIM {
                    acc[var(r, i)] -= t(r, j, s);
                    acc[var(r, j)] -= t(i, r, s);
                }
                for (col, c) in acc.into_iter().enumerate() {
                    if c != 0 {
                        m.set(row, col, rat(c));
                    }
                }
            }
        }
    }
    m
}

/// `Der(C)` with its canonical echelon basis.
///
/// Elements of `L` are given coordinates in this basis; since the basis is
/// in reduced echelon form, the coordinates of a derivation are its entries
/// at the pivot positions.
#[derive(Debug, Clone)]
pub struct DerivationBasis {
    space: Subspace<Rational>,
    basis: Vec<Derivation>,
    brackets: StructureConstants,
}

impl DerivationBasis {
    pub fn compute() -> Result<Self, DerivationError> {
        let space = leibniz_system().nullspace();
        if space.dim() != G2_DIM {
            return Err(DerivationError::WrongDimension(space.dim()));
        }
        let basis: Vec<Derivation> = space
            .basis_vectors()
            .map(|v| Derivation {
                matrix: Matrix::from_rows(DIM, v.chunks(DIM).map(|r| r.to_vec()).collect())
                    .expect("64 = 8 × 8"),
            })
            .collect();
        let mut brackets_ok = true;
        let brackets = StructureConstants::new(G2_DIM, |i, j| {
            let b = basis[i].bracket(&basis[j]);
            space.coordinates(&b.to_vector()).unwrap_or_else(|| {
                brackets_ok = false;
                vec![rat(0); G2_DIM]
            })
        });
        if !brackets_ok {
            return Err(DerivationError::NotInAlgebra);
        }
        Ok(DerivationBasis {
            space,
            basis,
            brackets,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    /// `Der(C)` as a subspace of the 64-dimensional matrix space.
    pub fn space(&self) -> &Subspace<Rational> {
        &self.space
    }

    /// Bracket structure constants in the echelon basis.
    pub fn structure_constants(&self) -> &StructureConstants {
        &self.brackets
    }

    pub fn contains(&self, m: &Matrix<Rational>) -> bool {
        m.rows() == DIM && m.cols() == DIM && self.space.contains(m.entries())
    }

    /// Coordinates of a matrix in the echelon basis.
    pub fn coordinates<F: Field>(&self, m: &Matrix<F>) -> Result<Vec<F>, DerivationError> {
        check_shape(m)?;
        let coords: Vec<F> = self
            .space
            .pivots()
            .iter()
            .map(|&p| m.entries()[p].clone())
            .collect();
        if self.matrix_of(&coords) != *m {
            return Err(DerivationError::NotInAlgebra);
        }
        Ok(coords)
    }

    /// The derivation with the given coordinates, over any field containing Q.
    pub fn matrix_of<F: Field>(&self, coords: &[F]) -> Matrix<F> {
        assert_eq!(coords.len(), G2_DIM);
        let mut out = Matrix::zeros(DIM, DIM);
        for (c, d) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            out = out.plus(&d.matrix.map(|x| F::from_rational(x).times(c)));
        }
        out
    }

    /// Matrix of `ad x` on the echelon basis.
    pub fn adjoint(&self, coords: &[Rational]) -> Matrix<Rational> {
        let columns: Vec<Vec<Rational>> = (0..G2_DIM)
            .map(|j| {
                let mut e = vec![rat(0); G2_DIM];
                e[j] = rat(1);
                self.brackets.multiply(coords, &e)
            })
            .collect();
        Matrix::from_fn(G2_DIM, G2_DIM, |r, c| columns[c][r].clone())
    }

    /// Killing form `tr(ad b_i ad b_j)` on the echelon basis.
    pub fn killing_form(&self) -> Matrix<Rational> {
        let ads: Vec<Matrix<Rational>> = (0..G2_DIM)
            .map(|i| {
                let mut e = vec![rat(0); G2_DIM];
                e[i] = rat(1);
                self.adjoint(&e)
            })
            .collect();
        Matrix::from_fn(G2_DIM, G2_DIM, |i, j| ads[i].times(&ads[j]).trace())
    }
}

/// The shared, lazily computed `Der(C)`.
pub fn derivation_space() -> &'static DerivationBasis {
    static SPACE: OnceLock<DerivationBasis> = OnceLock::new();
    SPACE.get_or_init(|| DerivationBasis::compute().expect("Der(C) must be 14-dimensional"))
}

/// Matrix of left multiplication `x_L: y ↦ xy`.
pub fn left_multiplication(x: &Octonion<Rational>) -> Matrix<Rational> {
    let cols: Vec<_> = Basis::ALL.iter().map(|&b| x.mul(&Octonion::basis(b))).collect();
    Matrix::from_fn(DIM, DIM, |r, c| cols[c].coords()[r].clone())
}

/// Matrix of right multiplication `x_R: y ↦ yx`.
pub fn right_multiplication(x: &Octonion<Rational>) -> Matrix<Rational> {
    let cols: Vec<_> = Basis::ALL.iter().map(|&b| Octonion::basis(b).mul(x)).collect();
    Matrix::from_fn(DIM, DIM, |r, c| cols[c].coords()[r].clone())
}

/// `D_{x,y} = [x_L, y_L] + [x_L, y_R] + [x_R, y_R]`.
pub fn inner_derivation(x: &Octonion<Rational>, y: &Octonion<Rational>) -> Derivation {
    let (xl, xr) = (left_multiplication(x), right_multiplication(x));
    let (yl, yr) = (left_multiplication(y), right_multiplication(y));
    let m = xl
        .commutator(&yl)
        .plus(&xl.commutator(&yr))
        .plus(&xr.commutator(&yr));
    debug_assert!(is_derivation(&m));
    Derivation { matrix: m }
}

/// `D_{e₁, u_i}` for `i` in `1..=3`.
pub fn d_e1_u(i: usize) -> Derivation {
    inner_derivation(&Octonion::basis(Basis::E1), &Octonion::basis(Basis::u(i)))
}

/// `D_{e₂, v_i}` for `i` in `1..=3`.
pub fn d_e2_v(i: usize) -> Derivation {
    inner_derivation(&Octonion::basis(Basis::E2), &Octonion::basis(Basis::v(i)))
}

/// The matrix unit `E_ij` of `M_3`, indices in `1..=3`.
pub fn matrix_unit(i: usize, j: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(3, 3);
    m.set(i - 1, j - 1, rat(1));
    m
}

/// `d_T: (α, u; v, β) ↦ (0, uT; −vTᵗ, 0)` with `u`, `v` row vectors.
pub fn d_t(t: &Matrix<Rational>) -> Result<Derivation, DerivationError> {
    if t.rows() != 3 || t.cols() != 3 {
        return Err(DerivationError::WrongShape {
            expected: 3,
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let tr = t.trace();
    if !Field::is_zero(&tr) {
        return Err(DerivationError::NonzeroTrace(crate::scalar::format_rational(&tr)));
    }
    let mut m = Matrix::zeros(DIM, DIM);
    for i in 0..3 {
        for j in 0..3 {
            // u_i ↦ Σ_j T_ij u_j and v_i ↦ −Σ_j T_ji v_j
            m.set(2 + j, 2 + i, t.get(i, j).clone());
            m.set(5 + j, 5 + i, -t.get(j, i));
        }
    }
    Ok(Derivation { matrix: m })
}

/// A basis of traceless 3×3 matrices: the six off-diagonal units followed by
/// `E₁₁ − E₂₂` and `E₂₂ − E₃₃`.
pub fn sl3_basis() -> Vec<Matrix<Rational>> {
    let mut out = Vec::with_capacity(8);
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                out.push(matrix_unit(i, j));
            }
        }
    }
    out.push(matrix_unit(1, 1).minus(&matrix_unit(2, 2)));
    out.push(matrix_unit(2, 2).minus(&matrix_unit(3, 3)));
    out
}

/// Ranks found by [`span_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanReport {
    pub e1_u_rank: usize,
    pub e2_v_rank: usize,
    pub sl3_rank: usize,
    pub combined_rank: usize,
}

/// Checks that `D_{e₁,u_i}`, `D_{e₂,v_j}` and `d_T` span exactly `Der(C)`.
pub fn span_check() -> Result<SpanReport, DerivationError> {
    let der = derivation_space();
    let span = |ds: &[Derivation]| {
        Subspace::from_vectors(DIM * DIM, ds.iter().map(Derivation::to_vector)).expect("64-vectors")
    };
    let e1u: Vec<_> = (1..=3).map(d_e1_u).collect();
    let e2v: Vec<_> = (1..=3).map(d_e2_v).collect();
    let sl3: Vec<_> = sl3_basis().iter().map(|t| d_t(t).expect("traceless")).collect();
    let all: Vec<_> = e1u.iter().chain(&e2v).chain(&sl3).cloned().collect();
    let combined = span(&all);
    let report = SpanReport {
        e1_u_rank: span(&e1u).dim(),
        e2_v_rank: span(&e2v).dim(),
        sl3_rank: span(&sl3).dim(),
        combined_rank: combined.dim(),
    };
    if combined != *der.space() {
        return Err(DerivationError::SpanDeficient {
            expected: G2_DIM,
            found: combined.dim(),
        });
    }
    Ok(report)
}
