//! Seeded random generation of vectors, matrices, subspaces, and
//! families. One fixed stream cipher RNG keyed by a caller-supplied
//! seed, so every randomized check is reproducible from its seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::Field;
use crate::linalg::{Matrix, Vector};
use crate::subspace::{Subspace, SubspaceFamily};

pub struct Sampler {
    rng: ChaCha12Rng,
    field: Field,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Sampler {
        Sampler { rng: ChaCha12Rng::seed_from_u64(seed), field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn scalar(&mut self) -> u8 {
        self.rng.gen_range(0..self.field.p())
    }

    /// Uniform integer in 0..bound.
    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        let coords = (0..n).map(|_| self.scalar()).collect();
        Vector::new(self.field, coords)
    }

    pub fn matrix(&mut self, nrows: usize, ncols: usize) -> Matrix {
        let rows: Vec<Vector> = (0..nrows).map(|_| self.vector(ncols)).collect();
        Matrix::from_rows(self.field, ncols, &rows).expect("rows share a length")
    }

    /// Span of `gens` random vectors; dimension varies with the draw.
    pub fn subspace(&mut self, ambient: usize, gens: usize) -> Subspace {
        let rows: Vec<Vector> = (0..gens).map(|_| self.vector(ambient)).collect();
        Subspace::span(self.field, ambient, &rows).expect("rows share a length")
    }

    /// Uniform member of `s` (a random coefficient combination).
    pub fn vector_in(&mut self, s: &Subspace) -> Vector {
        let coeffs: Vec<u8> = (0..s.dim()).map(|_| self.scalar()).collect();
        Vector::new(self.field, coeffs).mul_matrix(s.basis())
    }

    /// Span of `gens` random members of `parent`; always contained in it.
    pub fn subspace_of(&mut self, parent: &Subspace, gens: usize) -> Subspace {
        let rows: Vec<Vector> = (0..gens).map(|_| self.vector_in(parent)).collect();
        Subspace::span(self.field, parent.ambient(), &rows).expect("rows share a length")
    }

    /// Family of `m` random subspaces, each spanned by up to `max_gens`
    /// vectors (the count itself is drawn per member).
    pub fn family(&mut self, ambient: usize, m: usize, max_gens: usize) -> SubspaceFamily {
        let members: Vec<Subspace> = (0..m)
            .map(|_| {
                let gens = self.index(max_gens + 1);
                self.subspace(ambient, gens)
            })
            .collect();
        SubspaceFamily::new(members).expect("members share ambient and field")
    }
}
