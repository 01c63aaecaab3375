//! Exact dense linear algebra over GF(p).
//!
//! Row convention throughout the crate: vectors are rows, a system is
//! `x · m = b`, and row spaces represent subspaces. GF(2) matrices pack
//! rows into 64-bit words; other primes use one byte per entry. Both
//! representations implement identical mathematics and compare equal
//! entry-wise.
//!
//! Values are immutable once constructed; every operation returns a new
//! value, so everything here is safe to share across threads.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    coords: Vec<u8>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<u8>) -> Vector {
        debug_assert!(coords.iter().all(|&c| c < field.p()));
        Vector { field, coords }
    }

    pub fn zero(field: Field, n: usize) -> Vector {
        Vector { field, coords: vec![0; n] }
    }

    /// Standard basis vector e_i (0-indexed) in GF(p)^n.
    pub fn unit(field: Field, n: usize, i: usize) -> Vector {
        debug_assert!(i < n);
        let mut coords = vec![0; n];
        coords[i] = 1;
        Vector { field, coords }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.field, other.field);
        assert_eq!(self.len(), other.len());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Vector { field: self.field, coords }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Vector {
        let coords = self.coords.iter().map(|&a| self.field.neg(a)).collect();
        Vector { field: self.field, coords }
    }

    pub fn scale(&self, c: u8) -> Vector {
        let coords = self.coords.iter().map(|&a| self.field.mul(a, c)).collect();
        Vector { field: self.field, coords }
    }

    /// x · m for a row vector x of length m.nrows().
    pub fn mul_matrix(&self, m: &Matrix) -> Vector {
        assert_eq!(self.len(), m.nrows());
        let mut acc = Vector::zero(self.field, m.ncols());
        for (i, &c) in self.coords.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&m.row(i).scale(c));
            }
        }
        acc
    }

    /// Concatenation of two rows over the same field.
    pub fn concat(&self, other: &Vector) -> Vector {
        assert_eq!(self.field, other.field);
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Vector { field: self.field, coords }
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &c in &self.coords {
            write!(f, "{}", self.field.digit_char(c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum MatrixData {
    /// GF(2) rows packed into 64-bit words, `wpr` words per row.
    Bits { words: Vec<u64>, wpr: usize },
    /// One byte per entry, row-major.
    Bytes { bytes: Vec<u8> },
}

#[derive(Debug, Clone)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: MatrixData,
}

/// Result of row reduction: the reduced row-echelon form, its rank, and
/// the strictly increasing pivot column indices.
#[derive(Debug, Clone)]
pub struct Rref {
    pub r: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Matrix {
        if field.is_gf2() {
            let wpr = words_per_row(ncols);
            Matrix {
                field,
                nrows,
                ncols,
                data: MatrixData::Bits { words: vec![0; nrows * wpr], wpr },
            }
        } else {
            Matrix {
                field,
                nrows,
                ncols,
                data: MatrixData::Bytes { bytes: vec![0; nrows * ncols] },
            }
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, ncols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zero(field, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.field() != field {
                return Err(Error::FieldMismatch { left: field.p(), right: row.field().p() });
            }
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    context: "from_rows",
                    expected: ncols,
                    got: row.len(),
                });
            }
            for (j, &c) in row.coords().iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Construction that always uses the generic byte representation,
    /// even for p = 2. Exists so tests can drive both code paths on the
    /// same inputs.
    #[cfg(test)]
    pub(crate) fn from_rows_generic(field: Field, ncols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix {
            field,
            nrows: rows.len(),
            ncols,
            data: MatrixData::Bytes { bytes: vec![0; rows.len() * ncols] },
        };
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    context: "from_rows",
                    expected: ncols,
                    got: row.len(),
                });
            }
            for (j, &c) in row.coords().iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[cfg(test)]
    pub(crate) fn is_packed(&self) -> bool {
        matches!(self.data, MatrixData::Bits { .. })
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.nrows && j < self.ncols);
        match &self.data {
            MatrixData::Bits { words, wpr } => {
                ((words[i * wpr + j / 64] >> (j % 64)) & 1) as u8
            }
            MatrixData::Bytes { bytes } => bytes[i * self.ncols + j],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(v < self.field.p());
        match &mut self.data {
            MatrixData::Bits { words, wpr } => {
                let w = &mut words[i * *wpr + j / 64];
                let mask = 1u64 << (j % 64);
                if v == 1 {
                    *w |= mask;
                } else {
                    *w &= !mask;
                }
            }
            MatrixData::Bytes { bytes } => {
                let n = self.ncols;
                bytes[i * n + j] = v;
            }
        }
    }

    pub fn row(&self, i: usize) -> Vector {
        let coords = (0..self.ncols).map(|j| self.get(i, j)).collect();
        Vector::new(self.field, coords)
    }

    pub fn rows(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        match &self.data {
            MatrixData::Bits { words, wpr } => words[i * wpr..(i + 1) * wpr].iter().all(|&w| w == 0),
            MatrixData::Bytes { bytes } => {
                bytes[i * self.ncols..(i + 1) * self.ncols].iter().all(|&b| b == 0)
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let v = self.get(i, j);
                if v != 0 {
                    t.set(j, i, v);
                }
            }
        }
        t
    }

    /// Rows of self followed by rows of other.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: other.field.p() });
        }
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                expected: self.ncols,
                got: other.ncols,
            });
        }
        let rows: Vec<Vector> = self.rows().chain(other.rows()).collect();
        Matrix::from_rows(self.field, self.ncols, &rows)
    }

    pub fn neg(&self) -> Matrix {
        let rows: Vec<Vector> = self.rows().map(|r| r.neg()).collect();
        Matrix::from_rows(self.field, self.ncols, &rows).unwrap()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: other.field.p() });
        }
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch {
                context: "mul",
                expected: self.ncols,
                got: other.nrows,
            });
        }
        let rows: Vec<Vector> = self.rows().map(|r| r.mul_matrix(other)).collect();
        Matrix::from_rows(self.field, other.ncols, &rows)
    }

    /// Unique reduced row-echelon form, with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let Some(pivot_row) = (row..m.nrows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pivot_row);
            m.normalize_row(row, col);
            m.eliminate_col(row, col);
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        m.truncate_rows(rank);
        Rref { r: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.data {
            MatrixData::Bits { words, wpr } => {
                for k in 0..*wpr {
                    words.swap(a * *wpr + k, b * *wpr + k);
                }
            }
            MatrixData::Bytes { bytes } => {
                let n = self.ncols;
                for k in 0..n {
                    bytes.swap(a * n + k, b * n + k);
                }
            }
        }
    }

    /// Scale row `r` so its entry at `col` becomes 1. No-op over GF(2).
    fn normalize_row(&mut self, r: usize, col: usize) {
        let v = self.get(r, col);
        debug_assert!(v != 0);
        if v == 1 {
            return;
        }
        let inv = self.field.inv(v);
        let n = self.ncols;
        if let MatrixData::Bytes { bytes } = &mut self.data {
            for k in 0..n {
                bytes[r * n + k] = self.field.mul(bytes[r * n + k], inv);
            }
        }
    }

    /// Clear column `col` in every row except `pivot_row` (whose entry is 1).
    fn eliminate_col(&mut self, pivot_row: usize, col: usize) {
        let nrows = self.nrows;
        let ncols = self.ncols;
        match &mut self.data {
            MatrixData::Bits { words, wpr } => {
                let wpr = *wpr;
                let (wi, mask) = (col / 64, 1u64 << (col % 64));
                for r in 0..nrows {
                    if r != pivot_row && words[r * wpr + wi] & mask != 0 {
                        for k in 0..wpr {
                            let src = words[pivot_row * wpr + k];
                            words[r * wpr + k] ^= src;
                        }
                    }
                }
            }
            MatrixData::Bytes { bytes } => {
                for r in 0..nrows {
                    if r == pivot_row {
                        continue;
                    }
                    let factor = bytes[r * ncols + col];
                    if factor == 0 {
                        continue;
                    }
                    for k in 0..ncols {
                        let sub = self.field.mul(factor, bytes[pivot_row * ncols + k]);
                        bytes[r * ncols + k] = self.field.sub(bytes[r * ncols + k], sub);
                    }
                }
            }
        }
    }

    fn truncate_rows(&mut self, keep: usize) {
        debug_assert!(keep <= self.nrows);
        match &mut self.data {
            MatrixData::Bits { words, wpr } => words.truncate(keep * *wpr),
            MatrixData::Bytes { bytes } => bytes.truncate(keep * self.ncols),
        }
        self.nrows = keep;
    }

    /// Basis of the null space {x : m · xᵀ = 0}, one row per basis vector.
    /// Has ncols − rank rows; each row is built from one free column of
    /// the RREF (free coordinate 1, pivot coordinates balancing it).
    pub fn kernel(&self) -> Matrix {
        let Rref { r, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - rank);
        for f in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![0u8; self.ncols];
            v[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = self.field.neg(r.get(i, f));
            }
            basis.push(Vector::new(self.field, v));
        }
        Matrix::from_rows(self.field, self.ncols, &basis).unwrap()
    }

    /// Solves x · m = b; returns None when b is outside the row space.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        if b.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: b.field().p() });
        }
        if b.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                context: "solve",
                expected: self.ncols,
                got: b.len(),
            });
        }
        // x · m = b  ⟺  mᵀ · xᵀ = bᵀ; reduce the augmented [mᵀ | bᵀ].
        let mt = self.transpose();
        let mut aug_rows: Vec<Vector> = Vec::with_capacity(mt.nrows());
        for i in 0..mt.nrows() {
            let mut coords = mt.row(i).coords().to_vec();
            coords.push(b.get(i));
            aug_rows.push(Vector::new(self.field, coords));
        }
        let aug = Matrix::from_rows(self.field, self.nrows + 1, &aug_rows)?;
        let Rref { r, rank: _, pivots } = aug.rref();
        let last = self.nrows;
        if pivots.contains(&last) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.nrows];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, last);
        }
        Ok(Some(Vector::new(self.field, x)))
    }
}

/// Entry-wise equality, independent of the internal representation.
impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.nrows != other.nrows || self.ncols != other.ncols {
            return false;
        }
        (0..self.nrows).all(|i| (0..self.ncols).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

impl Eq for Matrix {}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.nrows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

fn words_per_row(ncols: usize) -> usize {
    // A 0-column matrix still gets one word so row indexing stays valid.
    ncols.div_ceil(64).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn vec2(bits: &str) -> Vector {
        let coords = bits.bytes().map(|b| b - b'0').collect();
        Vector::new(Field::GF2, coords)
    }

    fn mat(field: Field, rows: &[&str]) -> Matrix {
        let ncols = rows[0].len();
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| Vector::new(field, r.bytes().map(|b| b - b'0').collect()))
            .collect();
        Matrix::from_rows(field, ncols, &rows).unwrap()
    }

    /// Independent rank oracle: plain Gaussian elimination to row-echelon
    /// form on an i64 copy, reducing mod p at each step. Shares no code
    /// with Matrix::rref.
    fn rank_oracle(m: &Matrix) -> usize {
        let p = m.field().p() as i64;
        let mut a: Vec<Vec<i64>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m.get(i, j) as i64).collect())
            .collect();
        let (nr, nc) = (m.nrows(), m.ncols());
        let mut rank = 0;
        for col in 0..nc {
            let Some(pr) = (rank..nr).find(|&r| a[r][col] % p != 0) else {
                continue;
            };
            a.swap(rank, pr);
            for r in rank + 1..nr {
                if a[r][col] % p != 0 {
                    // Cross-multiply to avoid computing an inverse.
                    let (f1, f2) = (a[rank][col], a[r][col]);
                    for k in 0..nc {
                        a[r][k] = ((a[r][k] * f1 - a[rank][k] * f2) % p + p) % p;
                    }
                }
            }
            rank += 1;
            if rank == nr {
                break;
            }
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha12Rng, field: Field, nrows: usize, ncols: usize) -> Matrix {
        let rows: Vec<Vector> = (0..nrows)
            .map(|_| {
                Vector::new(field, (0..ncols).map(|_| rng.gen_range(0..field.p())).collect())
            })
            .collect();
        Matrix::from_rows(field, ncols, &rows).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let m = Matrix::identity(Field::GF2, 3);
        let r = m.rref();
        assert_eq!(r.r, m);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_detects_dependent_row() {
        // Third row is the sum of the first two.
        let m = mat(Field::GF2, &["110", "011", "101"]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.r, mat(Field::GF2, &["101", "011"]));
    }

    #[test]
    fn rref_empty_matrix() {
        let m = Matrix::zero(Field::GF2, 0, 4);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
        assert_eq!(r.r.nrows(), 0);
    }

    #[test]
    fn rank_matches_fraction_free_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
        for p in [2u32, 3, 5, 7] {
            let field = Field::new(p).unwrap();
            for _ in 0..80 {
                let nr = rng.gen_range(0..8);
                let nc = rng.gen_range(1..8);
                let m = random_matrix(&mut rng, field, nr, nc);
                assert_eq!(m.rank(), rank_oracle(&m), "p={p}\n{m}");
            }
        }
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let z = Matrix::zero(Field::GF2, 2, 3);
        assert_eq!(z.kernel().nrows(), 3);
        let id = Matrix::identity(Field::GF2, 4);
        assert_eq!(id.kernel().nrows(), 0);
    }

    #[test]
    fn kernel_of_single_row_matches_enumeration() {
        let m = mat(Field::GF2, &["110"]);
        let k = m.kernel();
        assert_eq!(k.nrows(), 2);
        // Oracle: every vector of GF(2)^3 with m · xᵀ = 0.
        let mut members = Vec::new();
        for bits in 0..8u32 {
            let v = Vector::new(
                Field::GF2,
                (0..3).map(|j| ((bits >> j) & 1) as u8).collect(),
            );
            let prod: u8 = (0..3).map(|j| m.get(0, j) & v.get(j)).fold(0, |a, b| a ^ b);
            if prod == 0 {
                members.push(v);
            }
        }
        assert_eq!(members.len(), 4);
        for row in k.rows() {
            assert!(members.contains(&row));
        }
        assert!(members.contains(&vec2("110")));
        assert!(members.contains(&vec2("001")));
    }

    /// Exhaustive kernel oracle: enumerate all p^ncols candidate vectors.
    fn kernel_oracle(m: &Matrix) -> Vec<Vector> {
        let p = m.field().p() as usize;
        let n = m.ncols();
        let total = p.pow(n as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut coords = vec![0u8; n];
            for c in coords.iter_mut() {
                *c = (code % p) as u8;
                code /= p;
            }
            let v = Vector::new(m.field(), coords);
            let prod = m
                .rows()
                .map(|r| {
                    r.coords()
                        .iter()
                        .zip(v.coords())
                        .fold(0u8, |acc, (&a, &b)| m.field().add(acc, m.field().mul(a, b)))
                })
                .collect::<Vec<u8>>();
            if prod.iter().all(|&x| x == 0) {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn kernel_spans_exactly_the_annihilated_vectors() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for p in [2u32, 3] {
            let field = Field::new(p).unwrap();
            let n = if p == 2 { 6 } else { 4 };
            for _ in 0..25 {
                let nr = rng.gen_range(0..5);
                let m = random_matrix(&mut rng, field, nr, n);
                let k = m.kernel();
                assert_eq!(k.nrows(), n - m.rank());
                let members = kernel_oracle(&m);
                assert_eq!(members.len(), (p as usize).pow(k.nrows() as u32));
                // Every kernel basis row is annihilated, and spans the set:
                // counting suffices since the rows are independent.
                for row in k.rows() {
                    assert!(members.contains(&row));
                }
                assert_eq!(k.rank(), k.nrows());
            }
        }
    }

    #[test]
    fn solve_identity_and_forced_combination() {
        let id = Matrix::identity(Field::GF2, 3);
        let b = vec2("101");
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let m = mat(Field::GF2, &["110", "011"]);
        let x = m.solve(&vec2("101")).unwrap().unwrap();
        assert_eq!(x, vec2("11"));
        assert_eq!(x.mul_matrix(&m), vec2("101"));
    }

    #[test]
    fn solve_rejects_dimension_mismatch() {
        let m = mat(Field::GF2, &["110", "011"]);
        let err = m.solve(&vec2("1011")).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    /// Exhaustive solve oracle over all p^nrows coefficient vectors.
    fn solvable_oracle(m: &Matrix, b: &Vector) -> bool {
        let p = m.field().p() as usize;
        let total = p.pow(m.nrows() as u32);
        (0..total).any(|mut code| {
            let mut coeffs = vec![0u8; m.nrows()];
            for c in coeffs.iter_mut() {
                *c = (code % p) as u8;
                code /= p;
            }
            Vector::new(m.field(), coeffs).mul_matrix(m) == *b
        })
    }

    #[test]
    fn solve_agrees_with_exhaustive_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for p in [2u32, 5] {
            let field = Field::new(p).unwrap();
            for _ in 0..40 {
                let nr = rng.gen_range(0..5);
                let nc = rng.gen_range(1..5);
                let m = random_matrix(&mut rng, field, nr, nc);
                let b = random_matrix(&mut rng, field, 1, nc).row(0);
                match m.solve(&b).unwrap() {
                    Some(x) => assert_eq!(x.mul_matrix(&m), b),
                    None => assert!(!solvable_oracle(&m, &b), "missed solution\n{m}b={b}"),
                }
            }
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_transposes() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for p in [2u32, 3, 7] {
            let field = Field::new(p).unwrap();
            for _ in 0..40 {
                let (nr, nc) = (rng.gen_range(0..7), rng.gen_range(1..7));
                let m = random_matrix(&mut rng, field, nr, nc);
                let r1 = m.rref();
                let r2 = r1.r.rref();
                assert_eq!(r1.r, r2.r);
                assert_eq!(r1.pivots, r2.pivots);
                assert_eq!(m.rank(), m.transpose().rank());
            }
        }
    }

    #[test]
    fn rank_nullity_holds() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for p in [2u32, 3] {
            let field = Field::new(p).unwrap();
            for _ in 0..60 {
                let (nr, nc) = (rng.gen_range(0..6), rng.gen_range(1..7));
                let m = random_matrix(&mut rng, field, nr, nc);
                assert_eq!(m.rank() + m.kernel().nrows(), m.ncols());
            }
        }
    }

    #[test]
    fn packed_and_generic_rref_agree_on_1000_matrices() {
        let mut rng = ChaCha12Rng::seed_from_u64(0xb17);
        for _ in 0..1000 {
            let nr = rng.gen_range(0..=32);
            let nc = rng.gen_range(1..=32);
            let rows: Vec<Vector> = (0..nr)
                .map(|_| {
                    Vector::new(Field::GF2, (0..nc).map(|_| rng.gen_range(0..2u8)).collect())
                })
                .collect();
            let packed = Matrix::from_rows(Field::GF2, nc, &rows).unwrap();
            let generic = Matrix::from_rows_generic(Field::GF2, nc, &rows).unwrap();
            assert!(packed.is_packed());
            assert!(!generic.is_packed());
            let rp = packed.rref();
            let rg = generic.rref();
            assert_eq!(rp.r, rg.r);
            assert_eq!(rp.rank, rg.rank);
            assert_eq!(rp.pivots, rg.pivots);
        }
    }

    #[test]
    fn mul_respects_identity_and_associativity_sample() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let field = Field::new(5).unwrap();
        let a = random_matrix(&mut rng, field, 3, 4);
        let b = random_matrix(&mut rng, field, 4, 2);
        let id = Matrix::identity(field, 3);
        assert_eq!(id.mul(&a).unwrap(), a);
        let c = random_matrix(&mut rng, field, 2, 3);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    fn arb_gf2_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..10, 0usize..10).prop_flat_map(|(nc, nr)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, nc), nr).prop_map(
                move |rows| {
                    let rows: Vec<Vector> =
                        rows.into_iter().map(|r| Vector::new(Field::GF2, r)).collect();
                    Matrix::from_rows(Field::GF2, nc, &rows).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn prop_rref_preserves_row_space(m in arb_gf2_matrix()) {
            let r = m.rref();
            // Each original row solves against the RREF and vice versa.
            for row in m.rows() {
                prop_assert!(r.r.solve(&row).unwrap().is_some());
            }
            for row in r.r.rows() {
                prop_assert!(m.solve(&row).unwrap().is_some());
            }
        }

        #[test]
        fn prop_kernel_rows_annihilate(m in arb_gf2_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(k.nrows() + m.rank(), m.ncols());
            for x in k.rows() {
                let prod = m.rows().map(|r| {
                    r.coords().iter().zip(x.coords()).fold(0u8, |acc, (&a, &b)| acc ^ (a & b))
                });
                for entry in prod {
                    prop_assert_eq!(entry, 0);
                }
            }
        }
    }
}
