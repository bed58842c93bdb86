use nalgebra::DVector;

use super::{Complex64, QalgError, Result, ATTEST_TOL, GRAM_SCHMIDT_SKIP, ZERO_NORM};

/// Column vector of complex amplitudes; not necessarily normalized.
pub type Vector = DVector<Complex64>;

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner(a: &Vector, b: &Vector) -> Complex64 {
    a.dotc(b)
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vector,
}

impl PureState {
    /// Wraps `amplitudes`, which must already have norm 1 within [`ATTEST_TOL`].
    pub fn new(amplitudes: Vector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(QalgError::EmptyDimension);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > ATTEST_TOL {
            return Err(QalgError::NotNormalized { norm });
        }
        Ok(Self { amps: amplitudes })
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(Vector::from_column_slice(amplitudes))
    }

    /// Computational basis state `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(QalgError::EmptyDimension);
        }
        if k >= dim {
            return Err(QalgError::DimensionMismatch {
                left: dim,
                right: k + 1,
            });
        }
        let mut v = Vector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Ok(Self { amps: v })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Vector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vector {
        self.amps
    }

    /// Product state `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            amps: self.amps.kronecker(&other.amps),
        }
    }

    pub fn with_global_phase(&self, phase: f64) -> PureState {
        let f = Complex64::from_polar(1.0, phase);
        PureState {
            amps: self.amps.map(|z| z * f),
        }
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }
}

/// `(I - |s⟩⟨s|) v`.
pub fn project_orthogonal(v: &Vector, s: &PureState) -> Result<Vector> {
    if v.len() != s.dim() {
        return Err(QalgError::DimensionMismatch {
            left: v.len(),
            right: s.dim(),
        });
    }
    let overlap = s.amps.dotc(v);
    Ok(v - &s.amps * overlap)
}

/// Unit vector parallel to `v`. Fails with `ZeroVector` when `‖v‖ ≤ 1e-12`.
pub fn normalize(v: &Vector) -> Result<PureState> {
    let norm = v.norm();
    if norm <= ZERO_NORM {
        return Err(QalgError::ZeroVector { norm });
    }
    Ok(PureState {
        amps: v / Complex64::new(norm, 0.0),
    })
}

/// Completes `s` to an orthonormal basis by Gram–Schmidt over the
/// computational basis. Returns the `d - 1` added vectors in order.
pub fn orthonormal_complement_basis(s: &PureState) -> Vec<PureState> {
    let d = s.dim();
    let seeds = (0..d).map(|k| {
        let mut e = Vector::zeros(d);
        e[k] = Complex64::new(1.0, 0.0);
        e
    });
    complete_basis(s, seeds)
}

/// Gram–Schmidt completion of `s` drawing candidates from `seeds` in order.
///
/// Candidates whose residual after projection falls below 1e-8 are skipped.
/// Uses two projection passes per candidate to keep orthogonality at the
/// 1e-15 level. Stops once `d - 1` vectors have been produced; may return
/// fewer if `seeds` does not span the complement.
pub fn complete_basis<I>(s: &PureState, seeds: I) -> Vec<PureState>
where
    I: IntoIterator<Item = Vector>,
{
    let d = s.dim();
    let mut accepted: Vec<Vector> = vec![s.amps.clone()];
    for candidate in seeds {
        if accepted.len() == d {
            break;
        }
        if candidate.len() != d {
            continue;
        }
        let mut r = candidate;
        for _ in 0..2 {
            for q in &accepted {
                let overlap = q.dotc(&r);
                r -= q * overlap;
            }
        }
        let norm = r.norm();
        if norm < GRAM_SCHMIDT_SKIP {
            continue;
        }
        accepted.push(r / Complex64::new(norm, 0.0));
    }
    accepted
        .into_iter()
        .skip(1)
        .map(|amps| PureState { amps })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::c;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn vec2(a: Complex64, b: Complex64) -> Vector {
        Vector::from_column_slice(&[a, b])
    }

    #[test]
    fn projection_cases() {
        let zero = PureState::basis(2, 0).unwrap();
        let one = PureState::basis(2, 1).unwrap();
        let p = project_orthogonal(one.amplitudes(), &zero).unwrap();
        assert_eq!(&p, one.amplitudes());

        let p = project_orthogonal(zero.amplitudes(), &zero).unwrap();
        assert_eq!(p.norm(), 0.0);

        let plus = vec2(c(H, 0.), c(H, 0.));
        let p = project_orthogonal(&plus, &zero).unwrap();
        assert!((p - vec2(c(0., 0.), c(H, 0.))).norm() < 1e-15);
    }

    #[test]
    fn normalize_cases() {
        let s = normalize(&vec2(c(2., 0.), c(0., 0.))).unwrap();
        assert_eq!(s, PureState::basis(2, 0).unwrap());

        let s = normalize(&vec2(c(1., 0.), c(1., 0.))).unwrap();
        assert!((s.amplitudes() - vec2(c(H, 0.), c(H, 0.))).norm() < 1e-15);

        assert!(matches!(
            normalize(&Vector::zeros(2)),
            Err(QalgError::ZeroVector { .. })
        ));
    }

    #[test]
    fn new_rejects_unnormalized() {
        assert!(matches!(
            PureState::from_slice(&[c(1., 0.), c(1., 0.)]),
            Err(QalgError::NotNormalized { .. })
        ));
    }

    #[test]
    fn complement_of_zero_is_one() {
        let basis = orthonormal_complement_basis(&PureState::basis(2, 0).unwrap());
        assert_eq!(basis.len(), 1);
        assert!((basis[0].inner(&PureState::basis(2, 1).unwrap()).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complement_of_plus() {
        let plus = PureState::from_slice(&[c(H, 0.), c(H, 0.)]).unwrap();
        let basis = orthonormal_complement_basis(&plus);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].inner(&plus).norm() < 1e-12);
        assert!((basis[0].amplitudes().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_of_01_gram_matrix_is_identity() {
        let s = PureState::basis(4, 1).unwrap();
        let mut all = vec![s.clone()];
        all.extend(orthonormal_complement_basis(&s));
        assert_eq!(all.len(), 4);
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b) - c(expect, 0.)).norm() <= 1e-9);
            }
        }
    }
}
