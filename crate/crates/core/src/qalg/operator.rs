use nalgebra::DMatrix;

use super::{Complex64, PureState, QalgError, Result, Vector, ATTEST_TOL, VARIANCE_CLAMP};

/// Square complex matrix acting on a `dim`-dimensional Hilbert space.
///
/// The `hermitian` and `unitary` flags are attestations: they are only set
/// after the corresponding deviation has been checked against [`ATTEST_TOL`],
/// or when the operator was produced by an operation that preserves the
/// property algebraically (Kronecker product, adjoint, unitary conjugation).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: DMatrix<Complex64>,
    hermitian: bool,
    unitary: bool,
}

impl Operator {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() == 0 {
            return Err(QalgError::EmptyDimension);
        }
        if mat.nrows() != mat.ncols() {
            return Err(QalgError::NotSquare {
                expected: mat.nrows() * mat.nrows(),
                found: mat.nrows() * mat.ncols(),
            });
        }
        Ok(Self {
            mat,
            hermitian: false,
            unitary: false,
        })
    }

    /// Builds a `dim`×`dim` operator from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 {
            return Err(QalgError::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(QalgError::NotSquare {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Like [`Operator::from_row_major`] with the dimension inferred from a
    /// perfect-square entry count.
    pub fn from_entries(entries: &[Complex64]) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        Self::from_row_major(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
            hermitian: true,
            unitary: true,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
            hermitian: true,
            unitary: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[(row, col)]
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let d = self.dim();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.mat[(i, j)])
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// Max-abs entry of `X - X†`.
    pub fn hermitian_deviation(&self) -> f64 {
        max_abs(&(&self.mat - self.mat.adjoint()))
    }

    /// Max-abs entry of `U†U - I`.
    pub fn unitary_deviation(&self) -> f64 {
        let d = self.dim();
        max_abs(&(self.mat.adjoint() * &self.mat - DMatrix::<Complex64>::identity(d, d)))
    }

    pub fn attest_hermitian(mut self) -> Result<Self> {
        let deviation = self.hermitian_deviation();
        if deviation > ATTEST_TOL {
            return Err(QalgError::NotHermitian { deviation });
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn attest_unitary(mut self) -> Result<Self> {
        let deviation = self.unitary_deviation();
        if deviation > ATTEST_TOL {
            return Err(QalgError::NotUnitary { deviation });
        }
        self.unitary = true;
        Ok(self)
    }

    /// Hermitian check that trusts an existing attestation.
    pub(crate) fn check_hermitian(&self) -> Result<()> {
        if self.hermitian {
            return Ok(());
        }
        let deviation = self.hermitian_deviation();
        if deviation > ATTEST_TOL {
            Err(QalgError::NotHermitian { deviation })
        } else {
            Ok(())
        }
    }

    fn same_dim(&self, other: &Operator) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(QalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Operator) -> Result<Operator> {
        self.same_dim(other)?;
        Ok(Operator {
            mat: &self.mat * &other.mat,
            hermitian: false,
            unitary: self.unitary && other.unitary,
        })
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.same_dim(other)?;
        Ok(Operator {
            mat: &self.mat + &other.mat,
            hermitian: self.hermitian && other.hermitian,
            unitary: false,
        })
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.same_dim(other)?;
        Ok(Operator {
            mat: &self.mat - &other.mat,
            hermitian: self.hermitian && other.hermitian,
            unitary: false,
        })
    }

    /// Real scaling keeps a Hermitian attestation.
    pub fn scale(&self, factor: f64) -> Operator {
        Operator {
            mat: self.mat.map(|z| z * factor),
            hermitian: self.hermitian,
            unitary: self.unitary && factor.abs() == 1.0,
        }
    }

    pub fn scale_complex(&self, factor: Complex64) -> Operator {
        Operator {
            mat: self.mat.map(|z| z * factor),
            hermitian: self.hermitian && factor.im == 0.0,
            unitary: false,
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.dim() {
            return Err(QalgError::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            });
        }
        Ok(&self.mat * v)
    }

    /// `U† X U`, the Heisenberg-picture evolution of `self` under `u`.
    pub fn conjugate_by(&self, u: &Operator) -> Result<Operator> {
        self.same_dim(u)?;
        Ok(Operator {
            mat: u.mat.adjoint() * &self.mat * &u.mat,
            hermitian: self.hermitian && u.unitary,
            unitary: self.unitary && u.unitary,
        })
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.mat)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        self.same_dim(other)?;
        Ok(max_abs(&(&self.mat - &other.mat)))
    }

    /// Ascending eigenvalues of a Hermitian operator.
    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        self.check_hermitian()?;
        // Symmetrize so round-off in the strictly lower triangle cannot leak in.
        let sym = (&self.mat + self.mat.adjoint()).map(|z| z * 0.5);
        let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|a, b| a.total_cmp(b));
        Ok(values)
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product with `x` on the left (system) slot.
pub fn tensor(x: &Operator, y: &Operator) -> Operator {
    Operator {
        mat: x.mat.kronecker(&y.mat),
        hermitian: x.hermitian && y.hermitian,
        unitary: x.unitary && y.unitary,
    }
}

pub fn dagger(x: &Operator) -> Operator {
    Operator {
        mat: x.mat.adjoint(),
        hermitian: x.hermitian,
        unitary: x.unitary,
    }
}

/// `xy - yx`.
pub fn commutator(x: &Operator, y: &Operator) -> Result<Operator> {
    x.same_dim(y)?;
    Ok(Operator {
        mat: &x.mat * &y.mat - &y.mat * &x.mat,
        hermitian: false,
        unitary: false,
    })
}

/// `⟨s|x|s⟩`.
pub fn expectation(x: &Operator, s: &PureState) -> Result<Complex64> {
    let xs = x.apply(s.amplitudes())?;
    Ok(s.amplitudes().dotc(&xs))
}

/// `⟨x²⟩ - ⟨x⟩²` on `s`, with small negative round-off clamped to zero.
pub fn variance(x: &Operator, s: &PureState) -> Result<f64> {
    x.check_hermitian()?;
    let xs = x.apply(s.amplitudes())?;
    let second = xs.norm_squared();
    let mean = s.amplitudes().dotc(&xs).re;
    let v = second - mean * mean;
    if v < 0.0 && v > -VARIANCE_CLAMP {
        Ok(0.0)
    } else {
        Ok(v.max(0.0))
    }
}
