//! Seeded random generation of elements, polynomials, and matrices.
//! Everything takes an explicit RNG so reports and tests are reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(rng: &mut SampleRng, field: &Field) -> FieldElement {
    field.element_from_index(rng.random_range(0..field.order()))
}

pub fn random_nonzero_element(rng: &mut SampleRng, field: &Field) -> FieldElement {
    field.element_from_index(rng.random_range(1..field.order()))
}

pub fn random_matrix(rng: &mut SampleRng, field: &Field, n: usize) -> Matrix {
    let mut m = Matrix::zero(field, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, random_element(rng, field));
        }
    }
    m
}

/// Rejection-sampled invertible matrix.
pub fn random_invertible(rng: &mut SampleRng, field: &Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random monic polynomial of exact degree `deg`, optionally with a nonzero
/// constant term.
pub fn random_monic(
    rng: &mut SampleRng,
    field: &Field,
    deg: usize,
    nonzero_constant: bool,
) -> Polynomial {
    let mut coeffs = Vec::with_capacity(deg + 1);
    for i in 0..deg {
        if i == 0 && nonzero_constant {
            coeffs.push(random_nonzero_element(rng, field));
        } else {
            coeffs.push(random_element(rng, field));
        }
    }
    coeffs.push(field.one());
    Polynomial::new(field.clone(), coeffs)
}

/// Random nilpotent matrix: a strictly upper triangular matrix conjugated by
/// a random invertible one.
pub fn random_nilpotent(rng: &mut SampleRng, field: &Field, n: usize) -> Matrix {
    let mut upper = Matrix::zero(field, n);
    for i in 0..n {
        for j in i + 1..n {
            upper.set(i, j, random_element(rng, field));
        }
    }
    let p = random_invertible(rng, field, n);
    upper.conjugate(&p).expect("p is invertible")
}
