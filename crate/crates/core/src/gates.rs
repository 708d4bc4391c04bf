//! Standard gates on the compressed n-qubit basis.
//!
//! Qubits are numbered 1..=n from the left; qubit q is bit `n − q` of a basis index.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::CycScalar;

fn check_qubit(n: usize, q: usize) -> Result<()> {
    if q == 0 || q > n {
        return Err(Error::IndexOutOfRange { index: q as i64, lo: 1, hi: n as i64 });
    }
    Ok(())
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - q)
}

fn diagonal(n: usize, f: impl Fn(usize) -> CycScalar) -> DenseMatrix {
    let values: Vec<CycScalar> = (0..1usize << n).map(f).collect();
    DenseMatrix::diag(&values).expect("power-of-two dimension")
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(1 << n);
    for x in 0..1usize << n {
        m.set(f(x), x, CycScalar::ONE);
    }
    m
}

fn pair(n: usize, a: usize, b: usize) -> Result<()> {
    check_qubit(n, a)?;
    check_qubit(n, b)?;
    if a == b {
        return Err(Error::Parse(format!("qubits must differ, got {a},{b}")));
    }
    Ok(())
}

/// diag(1, i) on qubit q.
pub fn phase(n: usize, q: usize) -> Result<DenseMatrix> {
    check_qubit(n, q)?;
    Ok(diagonal(n, |x| if x & bit(n, q) != 0 { CycScalar::I } else { CycScalar::ONE }))
}

pub fn pauli_z(n: usize, q: usize) -> Result<DenseMatrix> {
    check_qubit(n, q)?;
    Ok(diagonal(n, |x| CycScalar::from_int(if x & bit(n, q) != 0 { -1 } else { 1 })))
}

pub fn pauli_x(n: usize, q: usize) -> Result<DenseMatrix> {
    check_qubit(n, q)?;
    Ok(permutation(n, |x| x ^ bit(n, q)))
}

/// (σ1 + σ3)/√2 on qubit q.
pub fn hadamard(n: usize, q: usize) -> Result<DenseMatrix> {
    check_qubit(n, q)?;
    let b = bit(n, q);
    let mut m = DenseMatrix::zeros(1 << n);
    for x in 0..1usize << n {
        let base = x & !b;
        m.set(base, x, CycScalar::INV_SQRT2);
        let s = if x & b != 0 { -CycScalar::INV_SQRT2 } else { CycScalar::INV_SQRT2 };
        m.set(base | b, x, s);
    }
    Ok(m)
}

pub fn cz(n: usize, a: usize, b: usize) -> Result<DenseMatrix> {
    pair(n, a, b)?;
    let both = bit(n, a) | bit(n, b);
    Ok(diagonal(n, |x| CycScalar::from_int(if x & both == both { -1 } else { 1 })))
}

pub fn swap(n: usize, a: usize, b: usize) -> Result<DenseMatrix> {
    pair(n, a, b)?;
    let (ba, bb) = (bit(n, a), bit(n, b));
    Ok(permutation(n, |x| {
        let (xa, xb) = (x & ba != 0, x & bb != 0);
        if xa == xb { x } else { x ^ ba ^ bb }
    }))
}

pub fn cnot(n: usize, control: usize, target: usize) -> Result<DenseMatrix> {
    pair(n, control, target)?;
    let (bc, bt) = (bit(n, control), bit(n, target));
    Ok(permutation(n, |x| if x & bc != 0 { x ^ bt } else { x }))
}

/// diag(1, e^{iπ/4}) on qubit q; not a Clifford gate.
pub fn t_gate(n: usize, q: usize) -> Result<DenseMatrix> {
    check_qubit(n, q)?;
    Ok(diagonal(n, |x| if x & bit(n, q) != 0 { CycScalar::ZETA } else { CycScalar::ONE }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::sigma;

    #[test]
    fn two_qubit_matrices() {
        let czm = cz(2, 1, 2).unwrap();
        assert_eq!(czm, DenseMatrix::diag(&[1, 1, 1, -1].map(CycScalar::from_int)).unwrap());
        let sw = swap(2, 1, 2).unwrap();
        assert_eq!(
            sw,
            DenseMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
                .unwrap()
        );
        let cx = cnot(2, 1, 2).unwrap();
        assert_eq!(cx.get(3, 2), CycScalar::ONE);
        assert!(cnot(2, 1, 1).is_err());
        assert!(cz(2, 1, 3).is_err());
    }

    #[test]
    fn single_qubit_placement() {
        assert_eq!(phase(2, 1).unwrap(), DenseMatrix::diag(&[1, 1, 0, 0].map(|v| {
            if v == 1 { CycScalar::ONE } else { CycScalar::I }
        })).unwrap());
        assert_eq!(pauli_x(2, 2).unwrap(), sigma(0).kron(&sigma(1)));
        assert_eq!(pauli_z(3, 1).unwrap(), sigma(3).kron(&sigma(0)).kron(&sigma(0)));
        let h = hadamard(1, 1).unwrap();
        assert!(h.is_unitary());
        assert!((&h * &h).is_identity());
        assert_eq!(hadamard(2, 2).unwrap(), sigma(0).kron(&h));
    }
}
