//! Inputs shared by the benchmarks in `benches/`.

use graded_morita::fixtures::{e1, regular};
use graded_morita::module::suspend;
use graded_morita::{direct_sum, Field, GradedModule, Matrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// An `n × n` matrix with entries in `[-5, 5]`, fixed by `seed`.
pub fn random_matrix(field: Field, n: usize, seed: u64) -> Matrix {
    let mut rng = StdRng::seed_from_u64(seed);
    Matrix::from_fn(field, n, n, |_, _| field.from_i64(rng.random_range(-5..=5)))
}

/// `k` random matrices of size `n`, for pencil determinants.
pub fn random_pencil(field: Field, n: usize, k: usize, seed: u64) -> Vec<Matrix> {
    (0..k).map(|i| random_matrix(field, n, seed + i as u64)).collect()
}

/// `A ⊕ A(s) ⊕ A ⊕ ...` over the group algebra of `C2`, with `k` summands.
pub fn free_module(k: usize) -> GradedModule {
    let reg = regular(&e1());
    let copies: Vec<GradedModule> = (0..k).map(|i| suspend(&reg, i % 2)).collect();
    direct_sum(&copies).expect("same algebra")
}
