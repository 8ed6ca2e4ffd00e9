//! Bit-packed linear algebra over GF(2).
//!
//! Matrices pack each row into bytes, LSB-first, rows padded to a byte
//! boundary; that packing is also the wire format of McEliece keys. The
//! elimination order is deterministic (leftmost pivot, topmost row) so
//! systematic keys are reproducible from a seed. XOR kernels flush one
//! `gf2_word_ops` count per byte written.

use crate::costmodel::Counters;
use crate::xof::XofRng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("byte length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
}

fn xor_row_into(dst: &mut [u8], src: &[u8]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// A bit matrix over GF(2), row-major, rows padded to byte boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_bytes: usize,
    data: Vec<u8>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        let row_bytes = cols.div_ceil(8);
        Self {
            rows,
            cols,
            row_bytes,
            data: vec![0u8; rows * row_bytes],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn random(rows: usize, cols: usize, rng: &mut XofRng) -> Self {
        let mut m = Self::zero(rows, cols);
        rng.fill(&mut m.data);
        m.clear_padding();
        m
    }

    fn clear_padding(&mut self) {
        let spare = self.row_bytes * 8 - self.cols;
        if spare == 0 {
            return;
        }
        let mask = 0xFFu8 >> spare;
        for r in 0..self.rows {
            self.data[r * self.row_bytes + self.row_bytes - 1] &= mask;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.row_bytes + c / 8] >> (c % 8)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let byte = &mut self.data[r * self.row_bytes + c / 8];
        let mask = 1u8 << (c % 8);
        if bit {
            *byte |= mask;
        } else {
            *byte &= !mask;
        }
    }

    fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.row_bytes..(r + 1) * self.row_bytes]
    }

    pub fn row_vec(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            data: self.row(r).to_vec(),
        }
    }

    /// Row-major packed bytes, each row padded to a whole byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn from_bytes(rows: usize, cols: usize, bytes: &[u8]) -> Result<Self, LinAlgError> {
        let row_bytes = cols.div_ceil(8);
        if bytes.len() != rows * row_bytes {
            return Err(LinAlgError::Length {
                expected: rows * row_bytes,
                got: bytes.len(),
            });
        }
        let m = Self {
            rows,
            cols,
            row_bytes,
            data: bytes.to_vec(),
        };
        let mut check = m.clone();
        check.clear_padding();
        if check.data != m.data {
            return Err(LinAlgError::NonzeroPadding);
        }
        Ok(m)
    }

    /// Matrix product over GF(2): XOR-accumulates the rows of `rhs` selected
    /// by the set bits of each row of `self`.
    pub fn mul(&self, rhs: &Self, ctr: &Counters) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        let mut words = 0u64;
        for i in 0..self.rows {
            let acc = &mut out.data[i * out.row_bytes..(i + 1) * out.row_bytes];
            words += mul_row(self.row(i), rhs, acc);
        }
        ctr.add_gf2_word_ops(words);
        Ok(out)
    }

    /// Same product with output rows partitioned across rayon workers.
    /// Bit-identical to [`Self::mul`]; per-worker tallies merge at the join.
    pub fn mul_par(&self, rhs: &Self, ctr: &Counters) -> Result<Self, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.rows, rhs.cols);
        let row_bytes = out.row_bytes;
        out.data
            .par_chunks_mut(row_bytes)
            .enumerate()
            .for_each(|(i, acc)| {
                let words = mul_row(self.row(i), rhs, acc);
                ctr.add_gf2_word_ops(words);
            });
        Ok(out)
    }

    /// In-place Gauss-Jordan elimination to reduced row-echelon form.
    /// Deterministic: leftmost pivot column, topmost available row.
    /// Returns (pivot columns, rank).
    pub fn rref_in_place(&mut self, ctr: &Counters) -> (Vec<usize>, usize) {
        self.aug_rref(self.cols, ctr)
    }

    pub fn rref(&self, ctr: &Counters) -> (Self, Vec<usize>, usize) {
        let mut m = self.clone();
        let (pivots, rank) = m.rref_in_place(ctr);
        (m, pivots, rank)
    }

    pub fn rank(&self, ctr: &Counters) -> usize {
        self.rref(ctr).2
    }

    /// Inverse via elimination on [M | I].
    pub fn invert(&self, ctr: &Counters) -> Result<Self, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "invert of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n), ctr);
        let (pivots, rank) = aug.aug_rref(n, ctr);
        if rank < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(LinAlgError::Singular);
        }
        Ok(aug.submatrix_cols(n, 2 * n))
    }

    /// Elimination restricted to pivot columns < `limit`; used on augmented
    /// matrices where the right block must not produce pivots.
    fn aug_rref(&mut self, limit: usize, ctr: &Counters) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        let mut words = 0u64;
        for col in 0..limit {
            if next_row == self.rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            if pivot_row != next_row {
                let (a, b) = self.data.split_at_mut(pivot_row * self.row_bytes);
                a[next_row * self.row_bytes..(next_row + 1) * self.row_bytes]
                    .swap_with_slice(&mut b[..self.row_bytes]);
                words += self.row_bytes as u64;
            }
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    let (lo, hi) = self.data.split_at_mut(self.row_bytes * next_row.max(r));
                    let (dst, src) = if r > next_row {
                        (
                            &mut hi[..self.row_bytes],
                            &lo[next_row * self.row_bytes..(next_row + 1) * self.row_bytes],
                        )
                    } else {
                        (
                            &mut lo[r * self.row_bytes..(r + 1) * self.row_bytes],
                            &hi[..self.row_bytes],
                        )
                    };
                    xor_row_into(dst, src);
                    words += self.row_bytes as u64;
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        ctr.add_gf2_word_ops(words);
        let rank = pivots.len();
        (pivots, rank)
    }

    /// [self | rhs] side by side.
    pub fn hstack(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Self::zero(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..rhs.cols {
                if rhs.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        ctr.add_gf2_word_ops((self.rows * out.row_bytes) as u64);
        out
    }

    /// Columns [from, to) as a new matrix.
    pub fn submatrix_cols(&self, from: usize, to: usize) -> Self {
        assert!(from < to && to <= self.cols);
        let mut out = Self::zero(self.rows, to - from);
        for r in 0..self.rows {
            for c in from..to {
                if self.get(r, c) {
                    out.set(r, c - from, true);
                }
            }
        }
        out
    }

    /// Column gather: output column j is input column idx[j].
    pub fn gather_cols(&self, idx: &[usize], ctr: &Counters) -> Self {
        let mut out = Self::zero(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        ctr.add_gf2_word_ops((self.rows * out.row_bytes) as u64);
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Basis of the right null space: all v with self * v^T = 0, one basis
    /// vector per free column, rows of the returned matrix.
    pub fn null_space_basis(&self, ctr: &Counters) -> Option<Self> {
        let (r, pivots, rank) = self.rref(ctr);
        if rank == self.cols {
            return None;
        }
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Self::zero(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            basis.set(row, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    basis.set(row, p, true);
                }
            }
        }
        ctr.add_gf2_word_ops((free.len() * basis.row_bytes) as u64);
        Some(basis)
    }
}

fn mul_row(lhs_row: &[u8], rhs: &BitMatrix, acc: &mut [u8]) -> u64 {
    let mut words = 0u64;
    for (byte_idx, &byte) in lhs_row.iter().enumerate() {
        let mut bits = byte;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let j = byte_idx * 8 + bit;
            xor_row_into(acc, rhs.row(j));
            words += acc.len() as u64;
        }
    }
    words
}

/// A packed bit vector; same LSB-first byte layout as matrix rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    len: usize,
    data: Vec<u8>,
}

impl BitVector {
    pub fn zero(len: usize) -> Self {
        assert!(len > 0);
        Self {
            len,
            data: vec![0u8; len.div_ceil(8)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.data[i / 8] >> (i % 8)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let byte = &mut self.data[i / 8];
        let mask = 1u8 << (i % 8);
        if bit {
            *byte |= mask;
        } else {
            *byte &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn xor(&self, rhs: &Self, ctr: &Counters) -> Self {
        assert_eq!(self.len, rhs.len);
        let mut out = self.clone();
        xor_row_into(&mut out.data, &rhs.data);
        ctr.add_gf2_word_ops(out.data.len() as u64);
        out
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn from_bytes(len: usize, bytes: &[u8]) -> Result<Self, LinAlgError> {
        if bytes.len() != len.div_ceil(8) {
            return Err(LinAlgError::Length {
                expected: len.div_ceil(8),
                got: bytes.len(),
            });
        }
        let spare = bytes.len() * 8 - len;
        if spare > 0 && bytes[bytes.len() - 1] >> (8 - spare) != 0 {
            return Err(LinAlgError::NonzeroPadding);
        }
        Ok(Self {
            len,
            data: bytes.to_vec(),
        })
    }

    /// Uniformly random vector of Hamming weight exactly `weight`.
    pub fn random_weight(len: usize, weight: usize, rng: &mut XofRng) -> Self {
        assert!(weight <= len);
        let mut positions: Vec<usize> = (0..len).collect();
        rng.shuffle(&mut positions);
        let mut v = Self::zero(len);
        for &p in &positions[..weight] {
            v.set(p, true);
        }
        v
    }

    /// Concatenation self || rhs.
    pub fn concat(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.len + rhs.len);
        for i in 0..self.len {
            if self.get(i) {
                out.set(i, true);
            }
        }
        for i in 0..rhs.len {
            if rhs.get(i) {
                out.set(self.len + i, true);
            }
        }
        out
    }

    /// The first `n` coordinates.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.len && n > 0);
        let mut out = Self::zero(n);
        for i in 0..n {
            if self.get(i) {
                out.set(i, true);
            }
        }
        out
    }
}

/// Row-combination product v * M: XOR of the rows of M selected by v.
pub fn bm_vec_mul(v: &BitVector, m: &BitMatrix, ctr: &Counters) -> Result<BitVector, LinAlgError> {
    if v.len != m.rows {
        return Err(LinAlgError::DimensionMismatch(format!(
            "vec len {} vs {} rows",
            v.len, m.rows
        )));
    }
    let mut out = BitVector::zero(m.cols);
    let words = mul_row(&v.data, m, &mut out.data);
    ctr.add_gf2_word_ops(words);
    Ok(out)
}

/// Uniformly random invertible matrix by rejection; acceptance probability
/// tends to prod(1 - 2^-i) ~ 0.2888, about 3.46 attempts regardless of dim.
pub fn random_invertible(dim: usize, rng: &mut XofRng, ctr: &Counters) -> BitMatrix {
    random_invertible_pair(dim, rng, ctr).0
}

/// Samples an invertible matrix and returns it with its inverse.
pub fn random_invertible_pair(
    dim: usize,
    rng: &mut XofRng,
    ctr: &Counters,
) -> (BitMatrix, BitMatrix) {
    loop {
        let m = BitMatrix::random(dim, dim, rng);
        if let Ok(inv) = m.invert(ctr) {
            return (m, inv);
        }
    }
}

/// A permutation of n coordinates, stored as an index map: applying it to a
/// vector moves entry i to position map[i] (equivalently v * P for the matrix
/// P with P[i, map[i]] = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n as u32).collect(),
        }
    }

    pub fn random(n: usize, rng: &mut XofRng) -> Self {
        let mut map: Vec<u32> = (0..n as u32).collect();
        rng.shuffle(&mut map);
        Self { map }
    }

    pub fn from_map(map: Vec<u32>) -> Result<Self, LinAlgError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &i in &map {
            if i as usize >= n || seen[i as usize] {
                return Err(LinAlgError::DimensionMismatch("not a bijection".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    /// v * P, or v * P^-1 when `inverse` is set.
    pub fn apply(&self, v: &BitVector, inverse: bool) -> Result<BitVector, LinAlgError> {
        if v.len() != self.map.len() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "vec len {} vs permutation of {}",
                v.len(),
                self.map.len()
            )));
        }
        let mut out = BitVector::zero(v.len());
        for (i, &target) in self.map.iter().enumerate() {
            if inverse {
                if v.get(target as usize) {
                    out.set(i, true);
                }
            } else if v.get(i) {
                out.set(target as usize, true);
            }
        }
        Ok(out)
    }

    /// M * P: permutes the columns of a matrix the same way `apply` permutes
    /// vector coordinates.
    pub fn apply_cols(&self, m: &BitMatrix, ctr: &Counters) -> Result<BitMatrix, LinAlgError> {
        if m.cols() != self.map.len() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} cols vs permutation of {}",
                m.cols(),
                self.map.len()
            )));
        }
        // column gather by the inverse map
        let mut inv = vec![0usize; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t as usize] = i;
        }
        Ok(m.gather_cols(&inv, ctr))
    }

    /// Dense matrix form, for test oracles.
    pub fn to_matrix(&self) -> BitMatrix {
        let n = self.map.len();
        let mut m = BitMatrix::zero(n, n);
        for (i, &t) in self.map.iter().enumerate() {
            m.set(i, t as usize, true);
        }
        m
    }
}
