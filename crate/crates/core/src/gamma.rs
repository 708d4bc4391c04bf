//! Gamma matrices of the complex Clifford algebra on 2^n-dimensional space,
//! the grading operator γ_F and the two parity projectors.
//!
//! Tensor factors are ordered left to right, the leftmost factor being the most
//! significant bit of a basis index:
//!
//! ```text
//! γ_{2j-1} = I^{⊗(j-1)} ⊗ σ1 ⊗ σ3^{⊗(n-j)}
//! γ_{2j}   = I^{⊗(j-1)} ⊗ σ2 ⊗ σ3^{⊗(n-j)}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::CycScalar;

/// Eigenvalue of γ_F selecting one of the two spinor irreps.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Positive, Parity::Negative];

    pub fn sign(self) -> i64 {
        match self {
            Parity::Positive => 1,
            Parity::Negative => -1,
        }
    }

    /// 0 for positive parity, 1 for negative: the required XOR of all bits.
    pub fn bit(self) -> usize {
        match self {
            Parity::Positive => 0,
            Parity::Negative => 1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Parity::Positive),
            -1 => Ok(Parity::Negative),
            _ => Err(Error::Parse(format!("parity must be +1 or -1, got {s}"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Positive => "+",
            Parity::Negative => "-",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" | "positive" | "pos" => Ok(Parity::Positive),
            "-" | "-1" | "negative" | "neg" => Ok(Parity::Negative),
            other => Err(Error::Parse(format!("unknown parity '{other}'"))),
        }
    }
}

/// Single-qubit Pauli matrix σ_k, with σ0 = I.
pub fn sigma(k: u8) -> DenseMatrix {
    let (z, o, i) = (CycScalar::ZERO, CycScalar::ONE, CycScalar::I);
    let rows = match k {
        0 => vec![vec![o, z], vec![z, o]],
        1 => vec![vec![z, o], vec![o, z]],
        2 => vec![vec![z, -i], vec![i, z]],
        3 => vec![vec![o, z], vec![z, -o]],
        _ => panic!("Pauli index must be 0..=3"),
    };
    DenseMatrix::from_rows(rows).expect("2x2")
}

/// γ_j on n tensor factors, 1 ≤ j ≤ 2n.
pub fn gamma(n: usize, j: usize) -> Result<DenseMatrix> {
    if n == 0 || j == 0 || j > 2 * n {
        return Err(Error::IndexOutOfRange { index: j as i64, lo: 1, hi: 2 * n as i64 });
    }
    let slot = j.div_ceil(2);
    let head = if j % 2 == 1 { sigma(1) } else { sigma(2) };
    let mut factors = vec![sigma(0); slot - 1];
    factors.push(head);
    factors.extend(std::iter::repeat_n(sigma(3), n - slot));
    Ok(DenseMatrix::kron_all(&factors))
}

/// All 2n gamma matrices, index 0 holding γ_1.
pub fn gammas(n: usize) -> Vec<DenseMatrix> {
    (1..=2 * n).map(|j| gamma(n, j).expect("in range")).collect()
}

/// γ_F = σ3^{⊗n}.
pub fn gamma_f(n: usize) -> DenseMatrix {
    DenseMatrix::kron_all(&vec![sigma(3); n])
}

/// (−i)^n γ_1 ⋯ γ_{2n}, computed as a product; equals [`gamma_f`].
pub fn gamma_f_from_product(n: usize) -> DenseMatrix {
    let prod = gammas(n).iter().fold(DenseMatrix::identity(1 << n), |acc, g| &acc * g);
    prod.scale(CycScalar::i_pow(-(n as i64)))
}

/// P_± = (I ± γ_F)/2.
pub fn projector(n: usize, parity: Parity) -> DenseMatrix {
    let dim = 1 << n;
    let gf = gamma_f(n).scale(CycScalar::from_int(parity.sign()));
    let sum = DenseMatrix::identity(dim).checked_add(&gf).expect("same dim");
    sum.scale(CycScalar::new([1, 0, 0, 0], 1))
}

/// Basis indices of the parity-`p` subspace of n tensor factors, ordered by
/// their first n−1 bits: the compressed basis vector |x_1…x_{n−1}⟩ maps to
/// |x_1…x_{n−1} z⟩ with z completing the parity.
pub fn parity_basis(n: usize, parity: Parity) -> Vec<usize> {
    let m = n - 1;
    (0..1usize << m)
        .map(|x| {
            let z = (x.count_ones() as usize + parity.bit()) % 2;
            (x << 1) | z
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(1, 1).unwrap(), sigma(1));
        assert_eq!(gamma(1, 2).unwrap(), sigma(2));
        assert_eq!(gamma(2, 2).unwrap(), sigma(2).kron(&sigma(3)));
        assert_eq!(gamma(2, 3).unwrap(), sigma(0).kron(&sigma(1)));
        assert_eq!(gamma(2, 4).unwrap(), sigma(0).kron(&sigma(2)));
        assert!(gamma(2, 0).is_err());
        assert!(gamma(2, 5).is_err());
    }

    #[test]
    fn recursive_definition_agrees() {
        // γ_j^{(n+1)} = γ_j^{(n)} ⊗ σ3, γ_{2n+1}^{(n+1)} = I ⊗ σ1, γ_{2n+2}^{(n+1)} = I ⊗ σ2
        for n in 1..4 {
            for j in 1..=2 * n {
                assert_eq!(gamma(n + 1, j).unwrap(), gamma(n, j).unwrap().kron(&sigma(3)));
            }
            let id = DenseMatrix::identity(1 << n);
            assert_eq!(gamma(n + 1, 2 * n + 1).unwrap(), id.kron(&sigma(1)));
            assert_eq!(gamma(n + 1, 2 * n + 2).unwrap(), id.kron(&sigma(2)));
        }
    }

    #[test]
    fn clifford_relations() {
        for n in 1..=5 {
            let g = gammas(n);
            let id2 = DenseMatrix::scalar(1 << n, CycScalar::from_int(2));
            let zero = DenseMatrix::zeros(1 << n);
            for (a, ga) in g.iter().enumerate() {
                assert!(ga.is_hermitian());
                for (b, gb) in g.iter().enumerate() {
                    let expect = if a == b { &id2 } else { &zero };
                    assert_eq!(&ga.anticommutator(gb), expect, "n={n} i={} j={}", a + 1, b + 1);
                }
            }
        }
    }

    #[test]
    fn gamma_f_examples() {
        assert_eq!(gamma_f(1), sigma(3));
        assert_eq!(gamma_f(2), sigma(3).kron(&sigma(3)));
        for n in 1..=4 {
            assert_eq!(gamma_f_from_product(n), gamma_f(n), "n={n}");
            let gf = gamma_f(n);
            assert!((&gf * &gf).is_identity());
            for g in gammas(n) {
                assert!(gf.anticommutator(&g).entries().iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn projector_examples() {
        let d = |v: &[i64]| {
            DenseMatrix::diag(&v.iter().map(|&x| CycScalar::from_int(x)).collect::<Vec<_>>()).unwrap()
        };
        assert_eq!(projector(1, Parity::Positive), d(&[1, 0]));
        assert_eq!(projector(2, Parity::Positive), d(&[1, 0, 0, 1]));
        assert_eq!(projector(2, Parity::Negative), d(&[0, 1, 1, 0]));
        for n in 1..=4 {
            let p = projector(n, Parity::Positive);
            let m = projector(n, Parity::Negative);
            assert_eq!(&p * &p, p);
            assert!(p.is_hermitian());
            assert!(p.checked_add(&m).unwrap().is_identity());
            assert!((&p * &m).entries().iter().all(|e| e.is_zero()));
            let rank = CycScalar::from_int(1 << (n - 1));
            assert_eq!(p.trace(), rank);
            assert_eq!(m.trace(), rank);
        }
    }

    #[test]
    fn parity_basis_spans_projector_image() {
        for n in 1..=4 {
            for parity in Parity::BOTH {
                let basis = parity_basis(n, parity);
                let p = projector(n, parity);
                for i in 0..1 << n {
                    let inside = basis.contains(&i);
                    assert_eq!(p.get(i, i) == CycScalar::ONE, inside);
                }
            }
        }
        assert_eq!(parity_basis(3, Parity::Positive), vec![0, 3, 5, 6]);
        assert_eq!(parity_basis(3, Parity::Negative), vec![1, 2, 4, 7]);
    }
}
