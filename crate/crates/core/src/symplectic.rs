//! Bit matrices over F2, the symplectic group Sp_{2n}(2), and the symplectic
//! images of the braid generators.
//!
//! Matrices act on column vectors: column `c` of `S_U` is the image of the
//! `c`-th standard basis vector. Over F2 the form matrix
//! `M = I_n ⊗ [[0,1],[−1,0]]` reduces to `I_n ⊗ [[0,1],[1,0]]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square matrix over F2 of dimension ≤ 64; row `r` is a bitmask, bit `c` = entry (r, c).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    dim: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= 64, "bit matrices are limited to 64x64");
        Self { dim, rows: vec![0; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                if f(r, c) {
                    m.rows[r] |= 1 << c;
                }
            }
        }
        m
    }

    /// Parses row strings such as `["0110", "1001", ...]`.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let dim = rows.len();
        if dim > 64 {
            return Err(Error::Unsupported("bit matrices are limited to 64x64".into()));
        }
        let mut m = Self::zeros(dim);
        for (r, s) in rows.iter().enumerate() {
            let s = s.as_ref().trim();
            if s.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: s.len() });
            }
            for (c, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.rows[r] |= 1 << c,
                    other => return Err(Error::Parse(format!("unexpected bit '{other}'"))),
                }
            }
        }
        Ok(m)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| if self.get(r, c) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.rows[r] >> c) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    pub fn row_bits(&self) -> &[u64] {
        &self.rows
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "bit matrix dimensions differ");
        let mut out = Self::zeros(self.dim);
        for (r, &row) in self.rows.iter().enumerate() {
            let mut acc = 0u64;
            let mut bits = row;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                acc ^= rhs.rows[k];
                bits &= bits - 1;
            }
            out.rows[r] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    /// S·x for a column vector packed as bits (bit c = x_c).
    pub fn apply(&self, x: u64) -> u64 {
        self.rows.iter().enumerate().fold(0u64, |acc, (r, &row)| {
            acc | ((((row & x).count_ones() & 1) as u64) << r)
        })
    }

    pub fn column(&self, c: usize) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (r, &row)| acc | (((row >> c) & 1) << r))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.dim {
            let Some(p) = (rank..rows.len()).find(|&r| (rows[r] >> c) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && (rows[r] >> c) & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn count_ones(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    /// Block direct sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let d = self.dim + rhs.dim;
        Self::from_fn(d, |r, c| {
            if r < self.dim && c < self.dim {
                self.get(r, c)
            } else if r >= self.dim && c >= self.dim {
                rhs.get(r - self.dim, c - self.dim)
            } else {
                false
            }
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.dim, self.dim)?;
        for s in self.to_row_strings() {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// The form matrix M = I_n ⊗ [[0,1],[1,0]] over F2.
pub fn form_matrix(n: usize) -> BitMatrix {
    BitMatrix::from_fn(2 * n, |r, c| r / 2 == c / 2 && r != c)
}

/// A 2n×2n bit matrix satisfying SᵀMS = M.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticMatrix(BitMatrix);

impl SymplecticMatrix {
    pub fn new(m: BitMatrix) -> Result<Self> {
        if !m.dim().is_multiple_of(2) || !is_symplectic(&m) {
            return Err(Error::NotSymplectic);
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(BitMatrix::identity(2 * n))
    }

    pub fn num_qubits(&self) -> usize {
        self.0.dim() / 2
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.0
    }

    pub fn into_bits(self) -> BitMatrix {
        self.0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self(self.0.mul(&rhs.0))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == BitMatrix::identity(self.0.dim())
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symplectic{:?}", self.0)
    }
}

/// Serialized as row-major bit strings.
impl Serialize for SymplecticMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.to_row_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymplecticMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(d)?;
        let m = BitMatrix::from_row_strings(&rows).map_err(serde::de::Error::custom)?;
        SymplecticMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

pub fn is_symplectic(s: &BitMatrix) -> bool {
    if !s.dim().is_multiple_of(2) {
        return false;
    }
    let m = form_matrix(s.dim() / 2);
    s.transpose().mul(&m).mul(s) == m
}

/// |Sp_{2n}(q)| = q^{n²} Π_{j=1..n} (q^{2j} − 1).
pub fn sp_order(n: u32, q: u32) -> BigUint {
    let qb = BigUint::from(q);
    let mut acc: BigUint = Pow::pow(&qb, n * n);
    for j in 1..=n {
        acc *= Pow::pow(&qb, 2 * j) - BigUint::one();
    }
    acc
}

/// Counts all 2n×2n bit matrices with SᵀMS = M by exhaustion (n ≤ 2).
pub fn sp_order_brute_force(n: usize) -> Result<u64> {
    if n == 0 || n > 2 {
        return Err(Error::Unsupported("brute-force symplectic count needs n ∈ {1, 2}".into()));
    }
    let d = 2 * n;
    let m = form_matrix(n);
    let total = 1u64 << (d * d);
    let count = (0..total)
        .filter(|&bits| {
            let s = BitMatrix::from_fn(d, |r, c| (bits >> (r * d + c)) & 1 == 1);
            s.transpose().mul(&m).mul(&s) == m
        })
        .count();
    Ok(count as u64)
}

fn check_generator_index(n: usize, j: usize) -> Result<()> {
    if n == 0 || j == 0 || j > 2 * n + 1 {
        return Err(Error::IndexOutOfRange { index: j as i64, lo: 1, hi: 2 * n as i64 + 1 });
    }
    Ok(())
}

/// Symplectic image of the j-th braid generator on n qubits, assembled from
/// its closed block form (not from the unitary).
///
/// * odd j = 2i−1 ≤ 2n−1: the swap [[0,1],[1,0]] in block i;
/// * even j = 2i ≤ 2n−2: the 4×4 block (1000; 1110; 0010; 1011) on blocks i, i+1;
/// * j = 2n: diagonal blocks [[0,1],[1,0]] for the first n−1 qubits, all-ones
///   blocks between them, column pairs (0,1) against the last qubit, last block
///   row (11…11; 00…01);
/// * j = 2n+1: all ones except [[0,1],[1,0]] on the diagonal blocks.
pub fn braid_symplectic(n: usize, j: usize) -> Result<SymplecticMatrix> {
    check_generator_index(n, j)?;
    let d = 2 * n;
    let m = if j < 2 * n && j % 2 == 1 {
        let i = j.div_ceil(2) - 1;
        BitMatrix::from_fn(d, |r, c| {
            if r / 2 == i && c / 2 == i { r != c } else { r == c }
        })
    } else if j <= 2 * n - 2 {
        let i = j / 2 - 1;
        const BLOCK: [u8; 4] = [0b0001, 0b0111, 0b0100, 0b1101]; // bit c = column c
        BitMatrix::from_fn(d, |r, c| {
            let (br, bc) = (r as isize - 2 * i as isize, c as isize - 2 * i as isize);
            if (0..4).contains(&br) && (0..4).contains(&bc) {
                (BLOCK[br as usize] >> bc) & 1 == 1
            } else {
                r == c
            }
        })
    } else if j == 2 * n {
        let last = n - 1;
        BitMatrix::from_fn(d, |r, c| {
            let (br, bc) = (r / 2, c / 2);
            let (ir, ic) = (r % 2, c % 2);
            match (br == last, bc == last) {
                (false, false) if br == bc => ir != ic,
                (false, false) => true,
                (false, true) => ic == 1,
                (true, false) => ir == 0,
                (true, true) => ir == 0 || ic == 1,
            }
        })
    } else {
        BitMatrix::from_fn(d, |r, c| !(r / 2 == c / 2 && r == c))
    };
    SymplecticMatrix::new(m)
}

/// Basis change e ↦ e + (all ones on later qubit blocks); self-inverse over F2.
pub fn basis_change(n: usize) -> BitMatrix {
    BitMatrix::from_fn(2 * n, |r, c| r == c || r / 2 > c / 2)
}

/// Closed forms of T·S_j·T:
///
/// * odd j ≤ 2n−1: the swap of coordinates j, j+1 (same as S_j);
/// * even j ≤ 2n−2: the swap of coordinates j, j+1 (straddling two blocks);
/// * j = 2n: identity with an all-ones last column;
/// * j = 2n+1: unchanged from S_{2n+1}.
pub fn tilde_closed_form(n: usize, j: usize) -> Result<BitMatrix> {
    check_generator_index(n, j)?;
    let d = 2 * n;
    Ok(if j < 2 * n {
        // 1-based coordinates j and j+1 are 0-based j-1 and j
        BitMatrix::from_fn(d, |r, c| {
            let sw = |x: usize| if x == j - 1 { j } else if x == j { j - 1 } else { x };
            sw(r) == c
        })
    } else if j == 2 * n {
        BitMatrix::from_fn(d, |r, c| r == c || c == d - 1)
    } else {
        braid_symplectic(n, j)?.into_bits()
    })
}

/// T together with T·S_j·T for j = 1..=2n+1.
pub fn tilde_basis(n: usize) -> Result<(BitMatrix, Vec<BitMatrix>)> {
    let t = basis_change(n);
    let tilde = (1..=2 * n + 1)
        .map(|j| Ok(t.mul(braid_symplectic(n, j)?.bits()).mul(&t)))
        .collect::<Result<Vec<_>>>()?;
    Ok((t, tilde))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp_order_values() {
        assert_eq!(sp_order(1, 2), BigUint::from(6u32));
        assert_eq!(sp_order(2, 2), BigUint::from(720u32));
        assert_eq!(sp_order(3, 2), BigUint::from(1_451_520u32));
        // Sp_2(q) = SL_2(q) has order q(q²−1)
        assert_eq!(sp_order(1, 3), BigUint::from(24u32));
        assert_eq!(sp_order(1, 4), BigUint::from(60u32));
    }

    #[test]
    fn sp_order_matches_exhaustion() {
        assert_eq!(sp_order_brute_force(1).unwrap(), 6);
        assert_eq!(sp_order_brute_force(2).unwrap(), 720);
        assert!(sp_order_brute_force(3).is_err());
    }

    #[test]
    fn sp3_index_sanity() {
        // |Sp_6(2)| / |Sp_4(2)| counts choices of the first hyperbolic pair: (2^6−1)·2^5
        let ratio = sp_order(3, 2) / sp_order(2, 2);
        assert_eq!(ratio, BigUint::from(63u32 * 32));
    }

    #[test]
    fn generator_block_forms() {
        let s1 = braid_symplectic(2, 1).unwrap();
        assert_eq!(s1.bits().to_row_strings(), ["0100", "1000", "0010", "0001"]);
        let s2 = braid_symplectic(2, 2).unwrap();
        assert_eq!(s2.bits().to_row_strings(), ["1000", "1110", "0010", "1011"]);
        let s4 = braid_symplectic(2, 4).unwrap();
        assert_eq!(s4.bits().to_row_strings(), ["0101", "1001", "1111", "0001"]);
        let s5 = braid_symplectic(2, 5).unwrap();
        assert_eq!(s5.bits().to_row_strings(), ["0111", "1011", "1101", "1110"]);
        let s6 = braid_symplectic(3, 6).unwrap();
        assert_eq!(
            s6.bits().to_row_strings(),
            ["011101", "101101", "110101", "111001", "111111", "000001"]
        );
        assert_eq!(braid_symplectic(1, 2).unwrap().bits().to_row_strings(), ["11", "01"]);
        assert_eq!(braid_symplectic(1, 3).unwrap(), braid_symplectic(1, 1).unwrap());
        assert!(braid_symplectic(2, 6).is_err());
        assert!(braid_symplectic(2, 0).is_err());
    }

    #[test]
    fn permutation_relations() {
        for n in 1..=4 {
            let s: Vec<_> = (1..=2 * n + 1).map(|j| braid_symplectic(n, j).unwrap()).collect();
            for a in 0..s.len() {
                assert!(s[a].mul(&s[a]).is_identity());
                for b in 0..s.len() {
                    if a.abs_diff(b) > 1 {
                        assert_eq!(s[a].mul(&s[b]), s[b].mul(&s[a]));
                    } else if b == a + 1 {
                        assert_eq!(s[a].mul(&s[b]).mul(&s[a]), s[b].mul(&s[a]).mul(&s[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn tilde_forms() {
        for n in 1..=5 {
            let (t, tilde) = tilde_basis(n).unwrap();
            assert!(t.mul(&t) == BitMatrix::identity(2 * n), "T self-inverse, n={n}");
            for (idx, m) in tilde.iter().enumerate() {
                assert_eq!(m, &tilde_closed_form(n, idx + 1).unwrap(), "n={n} j={}", idx + 1);
            }
        }
        let (_, tilde) = tilde_basis(3).unwrap();
        assert_eq!(tilde[0].to_row_strings()[0], "010000");
        assert_eq!(tilde[0].to_row_strings()[1], "100000");
        assert!((0..6).all(|r| tilde[5].get(r, 5)));
    }

    #[test]
    fn tilde_one_counts_differ() {
        // S̃_{2n} and S̃_{2n+1} have different numbers of ones
        for n in 2..=5 {
            let a = tilde_closed_form(n, 2 * n).unwrap().count_ones();
            let b = tilde_closed_form(n, 2 * n + 1).unwrap().count_ones();
            assert_ne!(a, b);
        }
    }

    #[test]
    fn row_string_round_trip() {
        let s = braid_symplectic(3, 7).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: SymplecticMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SymplecticMatrix>(r#"["11","11"]"#).is_err());
    }

    #[test]
    fn rank_and_apply() {
        assert!(basis_change(3).is_invertible());
        assert!(!BitMatrix::from_row_strings(&["11", "11"]).unwrap().is_invertible());
        let s = braid_symplectic(2, 2).unwrap();
        // image of the first basis vector is column 0 = rows 1, 2, 4 → bits 0, 1, 3
        assert_eq!(s.bits().apply(0b0001), 0b1011);
        assert_eq!(s.bits().column(0), 0b1011);
    }
}
