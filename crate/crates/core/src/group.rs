//! Exact enumeration of finitely generated matrix groups.
//!
//! [`enumerate`] runs Dimino's algorithm: the group is grown one generator at
//! a time, each stage a union of right cosets of the previous stage.
//! [`bfs_closure`] is a plain breadth-first closure kept as an independent check.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{monodromy_word, BraidRep, Form, RepContext};
use crate::clifford::clifford_check;
use crate::error::{Error, Result};
use crate::gamma::Parity;
use crate::matrix::DenseMatrix;
use crate::orders::factorial;
use crate::pauli::PauliElement;
use crate::scalar::CycScalar;
use crate::symplectic::{braid_symplectic, SymplecticMatrix};

pub const DEFAULT_CAP: usize = 100_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// elements compared exactly
    Strict,
    /// elements compared up to a global ζ-power
    Projective,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "projective" => Ok(Mode::Projective),
            other => Err(Error::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

pub trait GroupElement: Clone + Send + Sync {
    type Key: Hash + Eq + Clone + Send + Sync;

    fn compose(&self, rhs: &Self) -> Result<Self>;

    fn key(&self, mode: Mode) -> Self::Key;

    /// Rough heap footprint of one stored element, for the memory guard.
    fn footprint(&self) -> usize {
        std::mem::size_of::<Self>()
    }
}

impl GroupElement for DenseMatrix {
    type Key = Vec<u8>;

    fn compose(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
    }

    fn key(&self, mode: Mode) -> Vec<u8> {
        match mode {
            Mode::Strict => self.key_bytes(),
            Mode::Projective => self.projective_canonical().1.key_bytes(),
        }
    }

    fn footprint(&self) -> usize {
        let n = self.dim() * self.dim();
        n * std::mem::size_of::<CycScalar>() + 2 * n * 3
    }
}

/// Symplectic matrices carry no phase; both modes coincide.
impl GroupElement for SymplecticMatrix {
    type Key = Vec<u64>;

    fn compose(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(rhs))
    }

    fn key(&self, _mode: Mode) -> Vec<u64> {
        self.bits().row_bits().to_vec()
    }

    fn footprint(&self) -> usize {
        2 * 8 * self.bits().dim()
    }
}

/// Pauli elements; the projective key drops the phase.
impl GroupElement for PauliElement {
    type Key = (u8, Vec<u8>);

    fn compose(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)
    }

    fn key(&self, mode: Mode) -> (u8, Vec<u8>) {
        let m = if mode == Mode::Strict { self.phase() } else { 0 };
        (m, self.vector())
    }
}

#[derive(Clone, Debug)]
pub struct GroupEnumeration<T: GroupElement> {
    generators: Vec<T>,
    elements: Vec<T>,
    index: HashMap<T::Key, usize>,
    mode: Mode,
    complete: bool,
    chain: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub order: u64,
    pub mode: Mode,
    pub center_size: u64,
    pub generator_count: usize,
}

impl<T: GroupElement> GroupEnumeration<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    /// Elements in discovery order; the first is the identity.
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// Orders of the successive subgroups ⟨g_1⟩ ⊂ ⟨g_1, g_2⟩ ⊂ ⋯.
    pub fn subgroup_chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn contains(&self, g: &T) -> Result<bool> {
        if !self.complete {
            return Err(Error::IncompleteEnumeration);
        }
        Ok(self.index.contains_key(&g.key(self.mode)))
    }

    pub fn keys(&self) -> HashSet<T::Key> {
        self.index.keys().cloned().collect()
    }

    /// Elements commuting with every generator (up to phase in projective mode).
    pub fn center_of(&self) -> Result<Vec<T>> {
        if !self.complete {
            return Err(Error::IncompleteEnumeration);
        }
        let mode = self.mode;
        let flags = self
            .elements
            .par_iter()
            .map(|g| {
                for s in &self.generators {
                    if g.compose(s)?.key(mode) != s.compose(g)?.key(mode) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(self.elements.iter().zip(flags).filter(|(_, f)| *f).map(|(g, _)| g.clone()).collect())
    }

    pub fn summary(&self) -> Result<EnumerationSummary> {
        Ok(EnumerationSummary {
            order: self.order() as u64,
            mode: self.mode,
            center_size: self.center_of()?.len() as u64,
            generator_count: self.generators.len(),
        })
    }
}

fn insert_coset<T: GroupElement>(
    elements: &mut Vec<T>,
    index: &mut HashMap<T::Key, usize>,
    base: &[T],
    rep: &T,
    mode: Mode,
) -> Result<()> {
    let coset = base
        .par_iter()
        .map(|h| {
            let g = h.compose(rep)?;
            let k = g.key(mode);
            Ok((g, k))
        })
        .collect::<Result<Vec<_>>>()?;
    for (g, k) in coset {
        if let std::collections::hash_map::Entry::Vacant(v) = index.entry(k) {
            v.insert(elements.len());
            elements.push(g);
        }
    }
    Ok(())
}

fn guard<T: GroupElement>(len: usize, incoming: usize, cap: usize, sample: &T) -> Result<bool> {
    if len + incoming > cap {
        return Ok(false);
    }
    // keep well under typical physical memory
    const MAX_BYTES: usize = 24 << 30;
    if (len + incoming).saturating_mul(sample.footprint()) > MAX_BYTES {
        return Err(Error::CapExceeded { cap });
    }
    Ok(true)
}

/// Dimino's algorithm. Fails with [`Error::CapExceeded`] past `cap` elements.
pub fn enumerate<T: GroupElement>(identity: T, generators: &[T], mode: Mode, cap: usize) -> Result<GroupEnumeration<T>> {
    let e = enumerate_partial(identity, generators, mode, cap)?;
    if !e.complete {
        return Err(Error::CapExceeded { cap });
    }
    Ok(e)
}

/// Like [`enumerate`], but returns what was found when the cap is hit.
pub fn enumerate_partial<T: GroupElement>(
    identity: T,
    generators: &[T],
    mode: Mode,
    cap: usize,
) -> Result<GroupEnumeration<T>> {
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity.key(mode), 0);
    let mut chain = Vec::with_capacity(generators.len());
    let mut complete = true;

    'outer: for i in 0..generators.len() {
        if index.contains_key(&generators[i].key(mode)) {
            chain.push(elements.len());
            continue;
        }
        let base: Vec<T> = elements.clone();
        let m = base.len();
        // representatives of the right cosets H·r making up the new stage
        let mut reps = vec![identity.clone()];
        if !guard(elements.len(), m, cap, &identity)? {
            complete = false;
            break;
        }
        insert_coset(&mut elements, &mut index, &base, &generators[i], mode)?;
        reps.push(generators[i].clone());
        let mut pos = 1;
        while pos < reps.len() {
            for s in &generators[..=i] {
                let g = reps[pos].compose(s)?;
                if !index.contains_key(&g.key(mode)) {
                    if !guard(elements.len(), m, cap, &identity)? {
                        complete = false;
                        break 'outer;
                    }
                    insert_coset(&mut elements, &mut index, &base, &g, mode)?;
                    reps.push(g);
                }
            }
            pos += 1;
        }
        debug_assert_eq!(elements.len() % m, 0);
        chain.push(elements.len());
    }

    Ok(GroupEnumeration { generators: generators.to_vec(), elements, index, mode, complete, chain })
}

/// Order of ⟨generators⟩ by breadth-first closure under right multiplication.
pub fn bfs_closure<T: GroupElement>(identity: T, generators: &[T], mode: Mode, cap: usize) -> Result<HashSet<T::Key>> {
    let mut seen = HashSet::new();
    seen.insert(identity.key(mode));
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.compose(s)?;
            if seen.insert(h.key(mode)) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

/// Image of the braid group in one representation context.
pub fn braid_image(ctx: &RepContext, mode: Mode, cap: usize) -> Result<GroupEnumeration<DenseMatrix>> {
    let rep = BraidRep::new(*ctx)?;
    enumerate(ctx.identity(), rep.generators(), mode, cap)
}

/// ⟨A_kl : 1 ≤ k < l ≤ 2n+2⟩ on the compressed positive-parity basis.
pub fn monodromy_group(n: usize, parity: Parity, cap: usize) -> Result<GroupEnumeration<DenseMatrix>> {
    let ctx = RepContext::new(n, parity, Form::Compressed)?;
    let rep = BraidRep::new(ctx)?;
    let mut gens = Vec::new();
    for k in 1..=ctx.strands() {
        for l in k + 1..=ctx.strands() {
            gens.push(rep.eval(&monodromy_word(&ctx, k, l)?)?);
        }
    }
    enumerate(ctx.identity(), &gens, Mode::Strict, cap)
}

/// ⟨σ1, σ2 on every qubit, iI⟩ as explicit matrices.
pub fn pauli_matrix_group(n: usize, cap: usize) -> Result<GroupEnumeration<DenseMatrix>> {
    let mut gens: Vec<DenseMatrix> = (0..2 * n).map(|c| PauliElement::basis_generator(n, c).to_matrix()).collect();
    gens.push(DenseMatrix::scalar(1 << n, CycScalar::I));
    enumerate(DenseMatrix::identity(1 << n), &gens, Mode::Strict, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyPauliReport {
    pub n: usize,
    pub monodromy_order: usize,
    pub pauli_order: usize,
    pub sets_equal: bool,
    /// every A_kl is Clifford with identity symplectic part
    pub generators_in_kernel: bool,
}

impl MonodromyPauliReport {
    pub fn passed(&self) -> bool {
        self.sets_equal && self.generators_in_kernel && self.monodromy_order == 1 << (2 * self.n + 2)
    }
}

pub fn monodromy_equals_pauli(n: usize) -> Result<MonodromyPauliReport> {
    if n == 0 || n > 3 {
        return Err(Error::Unsupported("monodromy comparison runs for n ∈ {1, 2, 3}".into()));
    }
    let mono = monodromy_group(n, Parity::Positive, DEFAULT_CAP)?;
    let pauli = pauli_matrix_group(n, DEFAULT_CAP)?;
    let mut in_kernel = true;
    for g in mono.generators() {
        match clifford_check(g)?.action() {
            Some(a) if a.s.is_identity() => {}
            _ => in_kernel = false,
        }
    }
    Ok(MonodromyPauliReport {
        n,
        monodromy_order: mono.order(),
        pauli_order: pauli.order(),
        sets_equal: mono.keys() == pauli.keys(),
        generators_in_kernel: in_kernel,
    })
}

/// ⟨S_1, …, S_{2n+1}⟩ inside Sp_{2n}(2).
pub fn symplectic_braid_group(n: usize) -> Result<GroupEnumeration<SymplecticMatrix>> {
    let gens = (1..=2 * n + 1).map(|j| braid_symplectic(n, j)).collect::<Result<Vec<_>>>()?;
    enumerate(SymplecticMatrix::identity(n), &gens, Mode::Strict, DEFAULT_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessReport {
    pub n: usize,
    pub order: u64,
    pub expected: u64,
    /// the permutation group the image should be isomorphic to
    pub expected_group: String,
    pub passed: bool,
}

/// Order of ⟨S_j⟩ against (2n+2)! for n ≥ 2, and against |S_3| = 6 for n = 1.
pub fn faithfulness_check(n: usize) -> Result<FaithfulnessReport> {
    if n > 4 {
        return Err(Error::Unsupported(format!("⟨S_j⟩ has (2n+2)! elements; enumeration stops at n = 4, got {n}")));
    }
    let g = symplectic_braid_group(n)?;
    let (expected, name) = if n == 1 {
        (6u64, "S_3".to_string())
    } else {
        let f = factorial(2 * n as u32 + 2);
        let v = u64::try_from(f).map_err(|_| Error::Unsupported("order too large".into()))?;
        (v, format!("S_{}", 2 * n + 2))
    };
    let order = g.order() as u64;
    Ok(FaithfulnessReport { n, order, expected, expected_group: name, passed: order == expected })
}
