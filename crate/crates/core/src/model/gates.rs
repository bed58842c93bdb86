use crate::qalg::{c, Complex64, Operator};

use super::{ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub fn pauli(axis: Axis) -> Operator {
    let (o, l, i) = (c(0., 0.), c(1., 0.), c(0., 1.));
    let entries = match axis {
        Axis::X => [o, l, l, o],
        Axis::Y => [o, -i, i, o],
        Axis::Z => [l, o, o, -l],
    };
    Operator::from_row_major(2, &entries)
        .and_then(Operator::attest_hermitian)
        .and_then(Operator::attest_unitary)
        .expect("Pauli matrices are Hermitian and unitary")
}

pub fn identity(dim: usize) -> Operator {
    Operator::identity(dim)
}

/// `|k⟩⟨k|` in dimension `dim`.
pub fn projector(k: usize, dim: usize) -> Result<Operator> {
    if k >= dim {
        return Err(ModelError::Invalid(format!(
            "projector index {k} out of range for dimension {dim}"
        )));
    }
    let mut entries = vec![c(0., 0.); dim * dim];
    entries[k * dim + k] = c(1., 0.);
    Ok(Operator::from_row_major(dim, &entries)?.attest_hermitian()?)
}

/// The qubit rotation `[[α, -β*], [β, α]]` taking `|0⟩` to `α|0⟩ + β|1⟩`.
///
/// `alpha` must be real; the pair must be normalized within 1e-9.
pub fn rotation_unitary(alpha: Complex64, beta: Complex64) -> Result<Operator> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(ModelError::NonNormalized { norm });
    }
    if alpha.im.abs() > 1e-12 {
        return Err(ModelError::Invalid(format!(
            "alpha must be real, got imaginary part {}",
            alpha.im
        )));
    }
    let entries = [alpha, -beta.conj(), beta, alpha];
    Ok(Operator::from_row_major(2, &entries)?.attest_unitary()?)
}

/// `u p u†`.
pub fn rotated_pauli(u: &Operator, p: &Operator) -> Result<Operator> {
    if !u.is_unitary() {
        return Err(ModelError::NotUnitary("rotation"));
    }
    Ok(p.conjugate_by(&crate::qalg::dagger(u))?)
}

/// `P₀ ⊗ I + P₁ ⊗ σx`, control on the left (system) qubit.
pub fn cnot() -> Operator {
    let p0 = projector(0, 2).expect("valid index");
    let p1 = projector(1, 2).expect("valid index");
    let u = crate::qalg::tensor(&p0, &identity(2))
        .add(&crate::qalg::tensor(&p1, &pauli(Axis::X)))
        .expect("equal dimensions");
    u.attest_hermitian()
        .and_then(Operator::attest_unitary)
        .expect("CNOT is a Hermitian unitary")
}
