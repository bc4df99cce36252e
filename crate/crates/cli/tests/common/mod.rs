//! Seeded pseudo-random comodules over algebras with a grouplike basis.

use dqb_core::comodules::{graded_bicomodule, graded_left_comodule};
use dqb_core::exactmath::{inverse, Matrix, Scalar};
use dqb_core::{Bicomodule, DualQuasiBialgebra, LeftComodule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An invertible `d × d` matrix with small integer entries.
pub fn invertible(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> =
            (0..d).map(|_| (0..d).map(|_| Scalar::from_int(rng.random_range(-2..=2))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if inverse(&m).is_some() {
            return m;
        }
    }
}

/// A left comodule of dimension `1..=max_dim`, diagonal in a random basis.
pub fn left_comodule(h: &DualQuasiBialgebra, rng: &mut ChaCha8Rng, max_dim: usize) -> LeftComodule {
    let d = rng.random_range(1..=max_dim);
    let grades: Vec<usize> = (0..d).map(|_| rng.random_range(0..h.dim)).collect();
    let change = invertible(rng, d);
    graded_left_comodule(h, &grades, &change)
}

pub fn bicomodule(h: &DualQuasiBialgebra, rng: &mut ChaCha8Rng, max_dim: usize) -> Bicomodule {
    let d = rng.random_range(1..=max_dim);
    let degrees: Vec<(usize, usize)> = (0..d).map(|_| (rng.random_range(0..h.dim), rng.random_range(0..h.dim))).collect();
    let change = invertible(rng, d);
    graded_bicomodule(h, &degrees, &change)
}
