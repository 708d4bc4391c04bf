//! Clifford membership by conjugation of the Pauli generators.
//!
//! The action is `σ ↦ U σ U†`. Column `c` of `S_U` is the bit vector of the
//! image of the `c`-th generator, so `S_{UV} = S_U · S_V`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::pauli::{pauli_expansion, PauliElement};
use crate::scalar::CycScalar;
use crate::symplectic::{BitMatrix, SymplecticMatrix};

/// The pair (S_U, f_U): `U σ_{e_c} U† = i^{f[c]} σ_{S e_c}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliffordAction {
    pub s: SymplecticMatrix,
    pub f: Vec<u8>,
}

impl CliffordAction {
    pub fn num_qubits(&self) -> usize {
        self.s.num_qubits()
    }

    /// Image of an arbitrary Pauli element, assembled from the generator images.
    pub fn image(&self, p: &PauliElement) -> Result<PauliElement> {
        let n = self.num_qubits();
        if p.num_qubits() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.num_qubits() });
        }
        // σ_v is the ordered product of its generator factors with no extra phase
        let mut acc = PauliElement::identity(n).with_phase(p.phase());
        for (c, bit) in p.vector().iter().enumerate() {
            if *bit == 1 {
                acc = acc.mul(&self.generator_image(c))?;
            }
        }
        Ok(acc)
    }

    pub fn generator_image(&self, c: usize) -> PauliElement {
        let n = self.num_qubits();
        let col = self.s.bits().column(c);
        let bits: Vec<u8> = (0..2 * n).map(|r| ((col >> r) & 1) as u8).collect();
        PauliElement::new(n, self.f[c], &bits).expect("valid generator image")
    }

    /// Action of the product U·V given the actions of U and V.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        let n = self.num_qubits();
        let f = (0..2 * n)
            .map(|c| Ok(self.image(&rhs.generator_image(c))?.phase()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { s: self.s.mul(&rhs.s), f })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CliffordVerdict {
    Clifford(CliffordAction),
    NotClifford {
        /// the first generator whose image is not a single Pauli term
        generator: PauliElement,
        expansion: Vec<(PauliElement, CycScalar)>,
    },
}

impl CliffordVerdict {
    pub fn action(&self) -> Option<&CliffordAction> {
        match self {
            CliffordVerdict::Clifford(a) => Some(a),
            CliffordVerdict::NotClifford { .. } => None,
        }
    }

    pub fn is_clifford(&self) -> bool {
        self.action().is_some()
    }
}

/// U σ U†.
pub fn conjugate(u: &DenseMatrix, sigma: &DenseMatrix) -> Result<DenseMatrix> {
    u.checked_mul(sigma)?.checked_mul(&u.adjoint())
}

pub fn clifford_check(u: &DenseMatrix) -> Result<CliffordVerdict> {
    if !u.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let n = u.num_qubits();
    if n == 0 || n > 8 {
        return Err(Error::Unsupported(format!("clifford check needs 1..=8 qubits, got {n}")));
    }
    let mut s = BitMatrix::zeros(2 * n);
    let mut f = Vec::with_capacity(2 * n);
    let udag = u.adjoint();
    for c in 0..2 * n {
        let g = PauliElement::basis_generator(n, c);
        let image = u.checked_mul(&g.to_matrix())?.checked_mul(&udag)?;
        let expansion = pauli_expansion(&image)?;
        let single = match expansion.as_slice() {
            [(p, coeff)] => coeff.as_i_power().map(|m| (*p, m)),
            _ => None,
        };
        let Some((p, m)) = single else {
            return Ok(CliffordVerdict::NotClifford { generator: g, expansion });
        };
        for (r, bit) in p.vector().iter().enumerate() {
            s.set(r, c, *bit == 1);
        }
        f.push(m);
    }
    let s = SymplecticMatrix::new(s)?;
    Ok(CliffordVerdict::Clifford(CliffordAction { s, f }))
}
