use nalgebra::{DMatrix, DVector};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Complex64, Operator, PureState};

/// Seeded deterministic random source.
///
/// Sub-streams for parallel work are obtained with [`Rng::derive`], which
/// mixes `(seed, index)` into a fresh seed; the parent stream is untouched.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream for task `index`, a pure function of `(seed, index)`.
    pub fn derive(&self, index: u64) -> Rng {
        Rng::new(derive_seed(self.seed, index))
    }

    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn gaussian(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Complex normal with unit total variance split over the two parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re = self.gaussian();
        let im = self.gaussian();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// splitmix64 finalizer over the pair.
pub(crate) fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-distributed pure state: i.i.d. complex Gaussian amplitudes, normalized.
pub fn haar_random_state(dim: usize, rng: &mut Rng) -> PureState {
    assert!(dim >= 1, "dimension must be at least 1");
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.complex_gaussian());
        // A zero draw has probability zero; redraw rather than fail.
        if let Ok(s) = super::normalize(&v) {
            return s;
        }
    }
}

/// GUE-style Hermitian matrix `(G + G†)/2`.
pub fn random_hermitian(dim: usize, rng: &mut Rng) -> Operator {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.complex_gaussian());
    let h = (&g + g.adjoint()).map(|z| z * 0.5);
    Operator::from_matrix(h)
        .and_then(Operator::attest_hermitian)
        .expect("symmetrized matrix is Hermitian")
}

/// Haar unitary via QR of a Ginibre matrix with the diagonal phases of R
/// absorbed into Q.
pub fn random_unitary(dim: usize, rng: &mut Rng) -> Operator {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.complex_gaussian());
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Operator::from_matrix(q)
        .and_then(Operator::attest_unitary)
        .expect("QR factor is unitary")
}
