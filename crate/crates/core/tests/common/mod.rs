//! Floating-point reference matrices built directly from Pauli tensor products.

#![allow(dead_code)]

use ising_clifford::DenseMatrix;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct CMat {
    pub dim: usize,
    pub a: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl CMat {
    pub fn identity(dim: usize) -> Self {
        let mut a = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            a[i * dim + i] = c(1.0, 0.0);
        }
        Self { dim, a }
    }

    pub fn pauli(k: u8) -> Self {
        let a = match k {
            0 => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            1 => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            2 => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
            _ => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        };
        Self { dim: 2, a: a.to_vec() }
    }

    pub fn kron(&self, b: &Self) -> Self {
        let d = self.dim * b.dim;
        let mut a = vec![c(0.0, 0.0); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..b.dim {
                    for l in 0..b.dim {
                        a[(i * b.dim + k) * d + j * b.dim + l] = self.a[i * self.dim + j] * b.a[k * b.dim + l];
                    }
                }
            }
        }
        Self { dim: d, a }
    }

    pub fn mul(&self, b: &Self) -> Self {
        let d = self.dim;
        let mut a = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                for j in 0..d {
                    a[i * d + j] += x * b.a[k * d + j];
                }
            }
        }
        Self { dim: d, a }
    }

    pub fn lin(&self, s: Complex64, b: &Self, t: Complex64) -> Self {
        Self { dim: self.dim, a: self.a.iter().zip(&b.a).map(|(x, y)| s * x + t * y).collect() }
    }

    pub fn restrict(&self, basis: &[usize]) -> Self {
        let d = basis.len();
        let mut a = Vec::with_capacity(d * d);
        for &r in basis {
            for &col in basis {
                a.push(self.a[r * self.dim + col]);
            }
        }
        Self { dim: d, a }
    }

    pub fn close_to(&self, m: &DenseMatrix) -> bool {
        let rows = m.to_complex_rows();
        m.dim() == self.dim
            && rows.iter().flatten().zip(&self.a).all(|(z, w)| (c(z[0], z[1]) - w).norm() < 1e-12)
    }
}

/// γ_{2j−1} = I⊗…⊗σ1⊗σ3⊗…, γ_{2j} = I⊗…⊗σ2⊗σ3⊗… on `level` factors.
pub fn gamma(level: usize, j: usize) -> CMat {
    let slot = j.div_ceil(2);
    let mut m = CMat::identity(1);
    for f in 1..=level {
        let k = if f < slot { 0 } else if f == slot { if j % 2 == 1 { 1 } else { 2 } } else { 3 };
        m = m.kron(&CMat::pauli(k));
    }
    m
}

/// (1+i)/2 · (I − γ_j γ_{j+1}) at level n+1.
pub fn braid(n: usize, j: usize) -> CMat {
    let level = n + 1;
    let gg = gamma(level, j).mul(&gamma(level, j + 1));
    CMat::identity(1 << level).lin(c(0.5, 0.5), &gg, c(-0.5, -0.5))
}

/// Indices with even (positive) or odd (negative) total bit parity, in increasing order.
pub fn parity_indices(level: usize, positive: bool) -> Vec<usize> {
    (0..1usize << level).filter(|x| (x.count_ones() % 2 == 0) == positive).collect()
}
