//! Fusion paths of Ising anyons and the labels of the computational basis.
//!
//! Fusion rules: σ×σ = I + ψ, ψ×σ = σ, I×σ = σ. A qubit is a pair σ_+σ_c whose
//! fusion channel is c = ±1 (I for +1, ψ for −1); the last pair is inert and
//! its channel c_0 is fixed by the total parity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::Parity;
use crate::gates;
use crate::matrix::DenseMatrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    I,
    #[serde(rename = "σ")]
    Sigma,
    #[serde(rename = "ψ")]
    Psi,
}

impl Sector {
    /// Sectors reachable by fusing one more σ.
    pub fn fuse_sigma(self) -> &'static [Sector] {
        match self {
            Sector::I | Sector::Psi => &[Sector::Sigma],
            Sector::Sigma => &[Sector::I, Sector::Psi],
        }
    }

    fn from_channel(c: i8) -> Sector {
        if c > 0 { Sector::I } else { Sector::Psi }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::I => "I",
            Sector::Sigma => "σ",
            Sector::Psi => "ψ",
        })
    }
}

/// Sector sequence of length #σ + 1, starting from the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FusionPath(Vec<Sector>);

impl FusionPath {
    pub fn new(sectors: Vec<Sector>) -> Result<Self> {
        if sectors.first() != Some(&Sector::I) {
            return Err(Error::InvalidLabel("a fusion path starts at the vacuum".into()));
        }
        for w in sectors.windows(2) {
            if !w[0].fuse_sigma().contains(&w[1]) {
                return Err(Error::InvalidLabel(format!("step {} → {} violates the fusion rules", w[0], w[1])));
            }
        }
        Ok(Self(sectors))
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.0
    }

    pub fn num_sigma(&self) -> usize {
        self.0.len() - 1
    }

    pub fn end(&self) -> Sector {
        *self.0.last().expect("nonempty")
    }
}

impl fmt::Display for FusionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_num_sigma(num_sigma: usize) -> Result<()> {
    if num_sigma < 2 || !num_sigma.is_multiple_of(2) {
        return Err(Error::InvalidLabel(format!("the number of σ fields must be even and ≥ 2, got {num_sigma}")));
    }
    if num_sigma > 128 {
        return Err(Error::Unsupported("at most 128 σ fields".into()));
    }
    Ok(())
}

fn final_sector(parity: Parity) -> Sector {
    match parity {
        Parity::Positive => Sector::I,
        Parity::Negative => Sector::Psi,
    }
}

/// 2^{#σ/2 − 1}.
pub fn count_paths(num_sigma: usize, _parity: Parity) -> Result<u128> {
    check_num_sigma(num_sigma)?;
    Ok(1u128 << (num_sigma / 2 - 1))
}

/// All walks in the Bratteli diagram ending at I (positive) or ψ (negative),
/// in lexicographic order with I before ψ.
pub fn enumerate_paths(num_sigma: usize, parity: Parity) -> Result<Vec<FusionPath>> {
    check_num_sigma(num_sigma)?;
    if num_sigma > 40 {
        return Err(Error::Unsupported("path enumeration is limited to 40 σ fields".into()));
    }
    let goal = final_sector(parity);
    let mut out = Vec::new();
    let mut stack = vec![vec![Sector::I]];
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("nonempty");
        if path.len() == num_sigma + 1 {
            if last == goal {
                out.push(FusionPath(path));
            }
            continue;
        }
        for &s in last.fuse_sigma().iter().rev() {
            let mut p = path.clone();
            p.push(s);
            stack.push(p);
        }
    }
    Ok(out)
}

/// Channels c_1..c_n of the qubit pairs plus the inert channel c_0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionLabel {
    channels: Vec<i8>,
    inert: i8,
    parity: Parity,
}

impl FusionLabel {
    pub fn new(channels: Vec<i8>, parity: Parity) -> Result<Self> {
        if channels.is_empty() || channels.len() > 64 {
            return Err(Error::InvalidLabel("between 1 and 64 qubit channels required".into()));
        }
        if let Some(c) = channels.iter().find(|c| c.abs() != 1) {
            return Err(Error::InvalidLabel(format!("channel must be ±1, got {c}")));
        }
        let inert = parity.sign() as i8 * channels.iter().product::<i8>();
        Ok(Self { channels, inert, parity })
    }

    /// Validates a label given with its inert channel.
    pub fn with_inert(channels: Vec<i8>, inert: i8, parity: Parity) -> Result<Self> {
        let l = Self::new(channels, parity)?;
        if l.inert != inert {
            return Err(Error::InvalidLabel(format!(
                "inert channel must be {} for parity {parity}, got {inert}",
                l.inert
            )));
        }
        Ok(l)
    }

    /// Label of basis index `x` on n qubits (big-endian, bit 1 ↦ c = −1).
    pub fn from_index(n: usize, x: usize, parity: Parity) -> Result<Self> {
        if n == 0 || n > 63 || x >= 1 << n {
            return Err(Error::IndexOutOfRange { index: x as i64, lo: 0, hi: (1i64 << n.min(62)) - 1 });
        }
        let channels = (0..n).map(|q| if (x >> (n - 1 - q)) & 1 == 1 { -1 } else { 1 }).collect();
        Self::new(channels, parity)
    }

    pub fn channels(&self) -> &[i8] {
        &self.channels
    }

    pub fn inert(&self) -> i8 {
        self.inert
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn num_qubits(&self) -> usize {
        self.channels.len()
    }

    pub fn index(&self) -> usize {
        self.channels.iter().fold(0, |acc, &c| (acc << 1) | usize::from(c < 0))
    }

    /// Index in the 2^{n+1}-dimensional space, the inert channel as the lowest bit.
    pub fn full_index(&self) -> usize {
        (self.index() << 1) | usize::from(self.inert < 0)
    }

    /// σ± signs, two per pair: σ_+σ_c.
    pub fn sigma_signs(&self) -> Vec<i8> {
        self.channels.iter().chain([&self.inert]).flat_map(|&c| [1, c]).collect()
    }

    pub fn sigma_string(&self) -> String {
        let pair = |c: i8| if c > 0 { "σ+σ+" } else { "σ+σ-" };
        let parts: Vec<&str> = self.channels.iter().chain([&self.inert]).map(|&c| pair(c)).collect();
        parts.join(" ")
    }

    /// The Bratteli path: after 2k fields the sector is the product of the first k channels.
    pub fn path(&self) -> FusionPath {
        let mut sectors = vec![Sector::I];
        let mut acc = 1i8;
        for &c in self.channels.iter().chain([&self.inert]) {
            sectors.push(Sector::Sigma);
            acc *= c;
            sectors.push(Sector::from_channel(acc));
        }
        FusionPath(sectors)
    }

    pub fn from_path(path: &FusionPath) -> Result<Self> {
        let s = path.sectors();
        if path.num_sigma() < 4 || !path.num_sigma().is_multiple_of(2) {
            return Err(Error::InvalidLabel("a labelled path has an even number ≥ 4 of σ fields".into()));
        }
        let parity = match path.end() {
            Sector::I => Parity::Positive,
            Sector::Psi => Parity::Negative,
            Sector::Sigma => return Err(Error::InvalidLabel("path ends inside a pair".into())),
        };
        let n = path.num_sigma() / 2 - 1;
        let sign = |sec: Sector| if sec == Sector::I { 1i8 } else { -1 };
        let channels = (1..=n).map(|k| sign(s[2 * k - 2]) * sign(s[2 * k])).collect();
        Self::new(channels, parity)
    }
}

pub fn label_to_index(l: &FusionLabel) -> usize {
    l.index()
}

pub fn index_to_label(n: usize, x: usize, parity: Parity) -> Result<FusionLabel> {
    FusionLabel::from_index(n, x, parity)
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    channels: Vec<i8>,
    parity: Parity,
}

impl Serialize for FusionLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LabelJson { channels: self.channels.clone(), parity: self.parity }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LabelJson::deserialize(d)?;
        FusionLabel::new(j.channels, j.parity).map_err(serde::de::Error::custom)
    }
}

/// Index map between the encoding with qubits in the order 1..n and the one
/// where the pairs of qubits `a` and `b` trade places: `perm[x]` is the index
/// of the same correlator in the relabelled basis.
pub fn pair_relabeling(n: usize, a: usize, b: usize) -> Result<Vec<usize>> {
    let m = gates::swap(n, a, b)?;
    Ok((0..1usize << n).map(|x| (0..1usize << n).find(|&r| !m.get(r, x).is_zero()).expect("permutation")).collect())
}

/// The same relabelling as a permutation matrix.
pub fn pair_relabeling_matrix(n: usize, a: usize, b: usize) -> Result<DenseMatrix> {
    gates::swap(n, a, b)
}
