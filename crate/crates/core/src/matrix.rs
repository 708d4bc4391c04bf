//! Square matrices over [`CycScalar`] with power-of-two dimension.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::CycScalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<CycScalar>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "matrix dimension must be a power of two");
        Self { dim, entries: vec![CycScalar::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycScalar::ONE)
    }

    pub fn scalar(dim: usize, s: CycScalar) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = s;
        }
        m
    }

    pub fn diag(values: &[CycScalar]) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(values.len()));
        }
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, *v);
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    /// Integer-valued matrix, e.g. a permutation or sign pattern.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| CycScalar::from_int(v)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of tensor factors, log2 of the dimension.
    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> CycScalar {
        self.entries[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<CycScalar>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    fn check_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: rhs.dim });
        }
        Ok(())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let d = self.dim;
        let mut out = vec![CycScalar::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.entries[k * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out[i * d + j];
                    *cell = cell.checked_add(&a.checked_mul(&b)?)?;
                }
            }
        }
        Ok(Self { dim: d, entries: out })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim: self.dim, entries })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.scale(-CycScalar::ONE))
    }

    pub fn scale(&self, s: CycScalar) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&e| e * s).collect() }
    }

    pub fn mul_zeta_pow(&self, t: i64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|e| e.mul_zeta_pow(t)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-CycScalar::ONE)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim, rhs.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence of factors, leftmost factor most significant.
    pub fn kron_all<'a, I: IntoIterator<Item = &'a DenseMatrix>>(factors: I) -> Self {
        factors.into_iter().fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> CycScalar {
        (0..self.dim).fold(CycScalar::ZERO, |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_unitary(&self) -> bool {
        match self.checked_mul(&self.adjoint()) {
            Ok(p) => p.is_identity(),
            Err(_) => false,
        }
    }

    /// Returns `Some(s)` when the matrix equals `s·I`.
    pub fn as_scalar(&self) -> Option<CycScalar> {
        let s = self.get(0, 0);
        (*self == Self::scalar(self.dim, s)).then_some(s)
    }

    pub fn commutes_with(&self, rhs: &Self) -> bool {
        self * rhs == rhs * self
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        (self * rhs).checked_add(&(rhs * self)).expect("same dimension")
    }

    /// Restriction to the listed basis vectors.
    pub fn submatrix(&self, basis: &[usize]) -> Result<Self> {
        if !basis.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(basis.len()));
        }
        let mut out = Self::zeros(basis.len());
        for (r, &br) in basis.iter().enumerate() {
            for (c, &bc) in basis.iter().enumerate() {
                out.set(r, c, self.get(br, bc));
            }
        }
        Ok(out)
    }

    /// Inverse of [`submatrix`](Self::submatrix): embeds into `dim`, zero elsewhere.
    pub fn embed(&self, dim: usize, basis: &[usize]) -> Result<Self> {
        if basis.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: basis.len() });
        }
        let mut out = Self::zeros(dim);
        for (r, &br) in basis.iter().enumerate() {
            for (c, &bc) in basis.iter().enumerate() {
                out.set(br, bc, self.get(r, c));
            }
        }
        Ok(out)
    }

    /// Strips the global phase: returns `(t, M')` with `M = ζ^t·M'`, where the
    /// first nonzero entry of `M'` (row-major) is in the canonical domain of
    /// [`CycScalar::phase_class`]. Matrices differing by a ζ-power share `M'`.
    pub fn projective_canonical(&self) -> (u8, Self) {
        match self.entries.iter().find(|e| !e.is_zero()) {
            None => (0, self.clone()),
            Some(first) => {
                let (t, _) = first.phase_class().expect("nonzero");
                (t, self.mul_zeta_pow(-(t as i64)))
            }
        }
    }

    /// Returns `Some(t)` when `self = ζ^t · other`.
    pub fn phase_relative_to(&self, other: &Self) -> Option<u8> {
        if self.dim != other.dim {
            return None;
        }
        let (ta, a) = self.projective_canonical();
        let (tb, b) = other.projective_canonical();
        (a == b).then(|| (ta as i64 - tb as i64).rem_euclid(8) as u8)
    }

    /// Byte key of the normal form; equal keys iff equal matrices.
    pub fn key_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries.len() * 5);
        for e in &self.entries {
            e.write_key(&mut out);
        }
        out
    }

    /// Rows of complex floats, for display.
    pub fn to_complex_rows(&self) -> Vec<Vec<[f64; 2]>> {
        self.entries
            .chunks(self.dim)
            .map(|r| {
                r.iter()
                    .map(|e| {
                        let z = e.to_complex();
                        [clean(z.re), clean(z.im)]
                    })
                    .collect()
            })
            .collect()
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 { 0.0 } else { r }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.checked_mul(rhs).expect("matrix product failed")
    }
}

impl Mul for DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: DenseMatrix) -> DenseMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix({}x{})", self.dim, self.dim)?;
        for r in self.entries.chunks(self.dim) {
            let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// JSON form `{"dim": d, "entries": [[scalar, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<CycScalar>>,
}

impl Serialize for DenseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { dim: self.dim, entries: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let m = DenseMatrix::from_rows(j.entries).map_err(serde::de::Error::custom)?;
        if m.dim != j.dim {
            return Err(serde::de::Error::custom("dim field disagrees with entries"));
        }
        Ok(m)
    }
}
