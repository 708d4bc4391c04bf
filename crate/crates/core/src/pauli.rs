//! The n-qubit Pauli group in its F2 encoding.
//!
//! A [`PauliElement`] is `i^m · σ_v` where `v ∈ F2^{2n}` is read in pairs
//! `(v_{2q-1}, v_{2q})`, one pair per qubit, and the pair `(a, b)` stands for the
//! factor `σ1^a σ2^b`:
//!
//! | pair   | factor |
//! |--------|--------|
//! | (0, 0) | I      |
//! | (1, 0) | σ1     |
//! | (0, 1) | σ2     |
//! | (1, 1) | iσ3    |
//!
//! With this ordering `σ_p σ_q = (−1)^{p∗q} σ_{p⊕q}` where
//! `p∗q = Σ_q p_{2q} q_{2q−1}`. In the usual X/Z tableau language the pair
//! `(a, b)` corresponds to `x = a ⊕ b`, `z = b` up to phase (σ2 = iXZ), so
//! the symplectic form below is the standard one after that change of basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::sigma;
use crate::matrix::DenseMatrix;
use crate::scalar::CycScalar;

/// Bits at even positions: the first entry of each qubit pair.
const FIRST_OF_PAIR: u64 = 0x5555_5555_5555_5555;

/// Single-qubit Pauli label used when building elements by hand.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    n: usize,
    /// exponent of i, mod 4
    m: u8,
    /// bit p holds v_{p+1}
    v: u64,
}

impl PauliElement {
    pub const MAX_QUBITS: usize = 32;

    pub fn new(n: usize, m: u8, bits: &[u8]) -> Result<Self> {
        if bits.len() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, got: bits.len() });
        }
        Self::from_raw(n, m, pack_bits(bits))
    }

    pub(crate) fn from_raw(n: usize, m: u8, v: u64) -> Result<Self> {
        if n == 0 || n > Self::MAX_QUBITS {
            return Err(Error::IndexOutOfRange { index: n as i64, lo: 1, hi: Self::MAX_QUBITS as i64 });
        }
        Ok(Self { n, m: m % 4, v: v & mask(n) })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(n, 0, 0).expect("valid size")
    }

    /// `i^m` times the tensor product of the given single-qubit factors.
    pub fn from_factors(m: u8, factors: &[Pauli]) -> Self {
        let n = factors.len();
        let mut acc = Self::from_raw(n, m, 0).expect("valid size");
        for (q, f) in factors.iter().enumerate() {
            // σ3 = −i·(iσ3) = i^3 σ_(1,1)
            let (bits, phase) = match f {
                Pauli::I => (0b00, 0),
                Pauli::X => (0b01, 0),
                Pauli::Y => (0b10, 0),
                Pauli::Z => (0b11, 3),
            };
            acc.v |= bits << (2 * q);
            acc.m = (acc.m + phase) % 4;
        }
        acc
    }

    /// σ1 (`second = false`) or σ2 (`second = true`) on qubit `q` (1-based):
    /// the 2n standard generators.
    pub fn generator(n: usize, q: usize, second: bool) -> Self {
        let bit = 2 * (q - 1) + second as usize;
        Self::from_raw(n, 0, 1 << bit).expect("valid size")
    }

    /// The generator whose vector is the `c`-th standard basis vector (0-based).
    pub fn basis_generator(n: usize, c: usize) -> Self {
        Self::from_raw(n, 0, 1 << c).expect("valid size")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.m
    }

    pub fn vector(&self) -> Vec<u8> {
        (0..2 * self.n).map(|p| ((self.v >> p) & 1) as u8).collect()
    }

    pub(crate) fn raw_vector(&self) -> u64 {
        self.v
    }

    pub fn with_phase(&self, m: u8) -> Self {
        Self { m: m % 4, ..*self }
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.v == 0
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: rhs.n });
        }
        let sign = star(self.v, rhs.v);
        Ok(Self { n: self.n, m: (self.m + rhs.m + 2 * sign) % 4, v: self.v ^ rhs.v })
    }

    pub fn inverse(&self) -> Self {
        // (σ1^a σ2^b)^{-1} = σ2^b σ1^a = (−1)^{ab} σ1^a σ2^b
        let ab = ((self.v >> 1) & self.v & FIRST_OF_PAIR).count_ones() as u8 % 2;
        Self { n: self.n, m: (4 - self.m + 2 * ab) % 4, v: self.v }
    }

    pub fn commutes_with(&self, rhs: &Self) -> Result<bool> {
        Ok(symplectic_form_raw(self.n, rhs.n, self.v, rhs.v)? == 0)
    }

    /// Monomial form of the matrix: column `c` has its single nonzero entry
    /// `i^phase` in row `c ^ flip`. Returns `(flip, phases)`.
    pub(crate) fn monomial(&self) -> (usize, Vec<u8>) {
        let n = self.n;
        let mut flip = 0usize;
        let mut ybits = 0usize;
        for q in 0..n {
            let a = (self.v >> (2 * q)) & 1;
            let b = (self.v >> (2 * q + 1)) & 1;
            let pos = n - 1 - q;
            if a ^ b == 1 {
                flip |= 1 << pos;
            }
            if b == 1 {
                ybits |= 1 << pos;
            }
        }
        let phases = (0..1usize << n)
            .map(|col| {
                // each σ2 factor contributes i·(−1)^x
                let base = ybits.count_ones() as u8;
                let neg = (col & ybits).count_ones() as u8;
                (self.m + base + 2 * neg) % 4
            })
            .collect();
        (flip, phases)
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let (flip, phases) = self.monomial();
        let mut out = DenseMatrix::zeros(1 << self.n);
        for (col, ph) in phases.iter().enumerate() {
            out.set(col ^ flip, col, CycScalar::i_pow(*ph as i64));
        }
        out
    }

    /// Reference construction as a Kronecker product of 2×2 matrices.
    pub fn to_matrix_by_kron(&self) -> DenseMatrix {
        let factors: Vec<DenseMatrix> = (0..self.n)
            .map(|q| {
                let a = (self.v >> (2 * q)) & 1 == 1;
                let b = (self.v >> (2 * q + 1)) & 1 == 1;
                let mut f = DenseMatrix::identity(2);
                if a {
                    f = &f * &sigma(1);
                }
                if b {
                    f = &f * &sigma(2);
                }
                f
            })
            .collect();
        DenseMatrix::kron_all(&factors).scale(CycScalar::i_pow(self.m as i64))
    }

    /// Exact coefficient of σ_v (phase ignored) in the expansion of `x`:
    /// `tr(σ_v† x) / 2^n`.
    pub fn coefficient_in(&self, x: &DenseMatrix) -> Result<CycScalar> {
        if x.dim() != 1 << self.n {
            return Err(Error::DimensionMismatch { expected: 1 << self.n, got: x.dim() });
        }
        let bare = self.with_phase(0);
        let (flip, phases) = bare.monomial();
        let mut acc = CycScalar::ZERO;
        for (col, ph) in phases.iter().enumerate() {
            let e = x.get(col ^ flip, col);
            if !e.is_zero() {
                acc = acc.checked_add(&e.checked_mul(&CycScalar::i_pow(-(*ph as i64)))?)?;
            }
        }
        let mut out = acc;
        for _ in 0..self.n {
            out = out.half()?;
        }
        Ok(out)
    }
}

/// Full Pauli-basis expansion of a 2^n-dimensional matrix: the nonzero
/// coefficients of the bare σ_v (phase 0), in increasing order of v.
pub fn pauli_expansion(x: &DenseMatrix) -> Result<Vec<(PauliElement, CycScalar)>> {
    let n = x.num_qubits();
    let mut out = Vec::new();
    for v in 0..1u64 << (2 * n) {
        let p = PauliElement::from_raw(n, 0, v)?;
        let c = p.coefficient_in(x)?;
        if !c.is_zero() {
            out.push((p, c));
        }
    }
    Ok(out)
}

fn mask(n: usize) -> u64 {
    if 2 * n >= 64 { u64::MAX } else { (1u64 << (2 * n)) - 1 }
}

fn pack_bits(bits: &[u8]) -> u64 {
    bits.iter().enumerate().fold(0u64, |acc, (p, &b)| acc | (((b & 1) as u64) << p))
}

/// p∗q = Σ p_{2i} q_{2i−1} over F2.
fn star(p: u64, q: u64) -> u8 {
    ((p >> 1) & q & FIRST_OF_PAIR).count_ones() as u8 % 2
}

fn symplectic_form_raw(np: usize, nq: usize, p: u64, q: u64) -> Result<u8> {
    if np != nq {
        return Err(Error::DimensionMismatch { expected: 2 * np, got: 2 * nq });
    }
    Ok((star(p, q) + star(q, p)) % 2)
}

/// ω(p, q) = pᵀ M q over F2, with M = I_n ⊗ [[0,1],[1,0]].
pub fn symplectic_form(p: &[u8], q: &[u8]) -> Result<u8> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    if !p.len().is_multiple_of(2) {
        return Err(Error::Parse("bit vectors must have even length".into()));
    }
    let n = p.len() / 2;
    symplectic_form_raw(n, n, pack_bits(p), pack_bits(q))
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phase = ["", "i", "-", "-i"][self.m as usize];
        let body: String = (0..self.n)
            .map(|q| match (self.v >> (2 * q)) & 0b11 {
                0b00 => 'I',
                0b01 => 'X',
                0b10 => 'Y',
                _ => 'W', // W = iσ3 = σ1σ2
            })
            .collect();
        write!(f, "{phase}{body}")
    }
}
