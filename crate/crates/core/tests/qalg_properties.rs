use edlab_core::qalg::{
    c, commutator, expectation, haar_random_state, orthonormal_complement_basis, random_hermitian,
    random_unitary, tensor, variance, Complex64, Operator, PureState, Rng, Vector,
};
use proptest::prelude::*;

fn integer_operator(dim: usize, entries: &[i32]) -> Operator {
    let e: Vec<Complex64> = entries[..2 * dim * dim]
        .chunks(2)
        .map(|p| c(p[0] as f64, p[1] as f64))
        .collect();
    Operator::from_row_major(dim, &e).unwrap()
}

fn random_vector(dim: usize, rng: &mut Rng) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| rng.complex_gaussian()))
}

proptest! {
    #[test]
    fn tensor_associative_on_integers(
        dx in 1usize..=2, dy in 1usize..=2, dz in 1usize..=2,
        raw in prop::collection::vec(-5i32..=5, 3 * 2 * 4),
    ) {
        let x = integer_operator(dx, &raw[0..8]);
        let y = integer_operator(dy, &raw[8..16]);
        let z = integer_operator(dz, &raw[16..24]);
        let left = tensor(&tensor(&x, &y), &z);
        let right = tensor(&x, &tensor(&y, &z));
        prop_assert_eq!(left.to_row_major(), right.to_row_major());
    }

    #[test]
    fn tensor_mixed_product(seed in any::<u64>(), dx in 1usize..=4, dy in 1usize..=4) {
        let mut rng = Rng::new(seed);
        let x = random_unitary(dx, &mut rng).scale(1.5);
        let y = random_hermitian(dy, &mut rng);
        let v = random_vector(dx, &mut rng);
        let w = random_vector(dy, &mut rng);
        let lhs = tensor(&x, &y).apply(&v.kronecker(&w)).unwrap();
        let rhs = x.apply(&v).unwrap().kronecker(&y.apply(&w).unwrap());
        prop_assert!((lhs - rhs).camax() < 1e-12);
    }

    #[test]
    fn commutator_expectation_is_imaginary(seed in any::<u64>(), d in 1usize..=6) {
        let mut rng = Rng::new(seed);
        let a = random_hermitian(d, &mut rng);
        let b = random_hermitian(d, &mut rng);
        let s = haar_random_state(d, &mut rng);
        let e = expectation(&commutator(&a, &b).unwrap(), &s).unwrap();
        prop_assert!(e.re.abs() < 1e-9);
    }

    #[test]
    fn variance_is_centered_second_moment(seed in any::<u64>(), d in 1usize..=6) {
        let mut rng = Rng::new(seed);
        let a = random_hermitian(d, &mut rng);
        let s = haar_random_state(d, &mut rng);
        let v = variance(&a, &s).unwrap();
        let mean = expectation(&a, &s).unwrap().re;
        let centered = a.sub(&Operator::identity(d).scale(mean)).unwrap();
        let second = expectation(&centered.mul(&centered).unwrap(), &s).unwrap().re;
        prop_assert!(v >= 0.0);
        prop_assert!((v - second).abs() < 1e-9);
    }

    #[test]
    fn complement_resolves_identity(seed in any::<u64>(), d in 1usize..=8) {
        let mut rng = Rng::new(seed);
        let s = haar_random_state(d, &mut rng);
        let mut basis = orthonormal_complement_basis(&s);
        prop_assert_eq!(basis.len(), d - 1);
        basis.push(s);
        let mut sum = nalgebra::DMatrix::<Complex64>::zeros(d, d);
        for e in &basis {
            let a = e.amplitudes();
            sum += a * a.adjoint();
        }
        let id = nalgebra::DMatrix::<Complex64>::identity(d, d);
        prop_assert!((sum - id).camax() < 1e-9);
    }
}

#[test]
fn complement_of_basis_state() {
    let s = PureState::basis(3, 1).unwrap();
    let basis = orthonormal_complement_basis(&s);
    assert_eq!(basis[0], PureState::basis(3, 0).unwrap());
    assert_eq!(basis[1], PureState::basis(3, 2).unwrap());
}

fn ks_statistic(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

#[test]
fn haar_states_are_unitarily_invariant() {
    let n = 10_000;
    let dim = 4;
    let mut rng = Rng::new(2024);
    let v = random_unitary(dim, &mut rng);
    let rotated: Vec<f64> = (0..n)
        .map(|_| {
            let s = haar_random_state(dim, &mut rng);
            v.apply(s.amplitudes()).unwrap()[0].norm_sqr()
        })
        .collect();
    let plain: Vec<f64> = (0..n)
        .map(|_| haar_random_state(dim, &mut rng).amplitudes()[0].norm_sqr())
        .collect();
    let critical = 1.628 * (2.0 / n as f64).sqrt();
    let d = ks_statistic(rotated, plain);
    assert!(d < critical, "KS statistic {d} >= {critical}");
}

#[test]
fn seeded_streams_are_reproducible() {
    let a: Vec<f64> = {
        let mut r = Rng::new(5).derive(3);
        (0..10).map(|_| r.uniform()).collect()
    };
    let b: Vec<f64> = {
        let mut r = Rng::new(5).derive(3);
        (0..10).map(|_| r.uniform()).collect()
    };
    assert_eq!(a, b);
    let mut other = Rng::new(5).derive(4);
    assert_ne!(a[0], other.uniform());
}
