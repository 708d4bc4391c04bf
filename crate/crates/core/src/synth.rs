//! Braid-word synthesis for Clifford targets and unreachability certificates.
//!
//! Two routes:
//!
//! * **search**: breadth-first search over projective classes of braid-group
//!   elements, moves ordered `R_1, R_1⁻¹, R_2, R_2⁻¹, …`, so the first hit is
//!   the lexicographically smallest shortest word;
//! * **factored**: a word is found for `S_target` first, and the Pauli residual
//!   is then written as a product of squares `R_j²`. Words are not minimal but
//!   the braid image never has to be stored.
//!
//! A target is realizable up to phase iff it is Clifford and `S_target` lies in
//! `⟨S_1, …, S_{2n+1}⟩`, since the monodromy subgroup is the full Pauli group.
//!
//! Membership in `⟨S_j⟩` does not need the group either. `S_j` swaps Majorana
//! modes j and j+1, so every element permutes the classes `[γ_k γ_l]`. Two
//! classes anticommute iff their pairs share one index, and for 2n+2 ≠ 4
//! every symmetry of that relation comes from a permutation of the modes.
//! So `S ∈ ⟨S_j⟩` iff S maps the set of pair classes onto itself, and the
//! permutation read off from S spells a word in adjacent transpositions.

use std::collections::{HashMap, VecDeque};

use serde::{Serialize, Serializer};

use crate::braid::{square_formulas, BraidRep, BraidWord, Form, RepContext};
use crate::clifford::{clifford_check, CliffordVerdict};
use crate::error::{Error, Result};
use crate::gamma::Parity;
use crate::group::{enumerate, symplectic_braid_group, GroupElement, GroupEnumeration, Mode, DEFAULT_CAP};
use crate::matrix::DenseMatrix;
use crate::orders::factorial;
use crate::pauli::{pauli_expansion, PauliElement};
use crate::symplectic::{braid_symplectic, sp_order, SymplecticMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthOptions {
    pub max_depth: usize,
    /// search the full braid image even for n ≥ 3
    pub full_search: bool,
    pub cap: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self { max_depth: 64, full_search: false, cap: 10_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// conjugating this generator does not give a single Pauli term
    NotClifford { generator: PauliElement, terms: usize },
    /// S_target lies outside the image of the braid group in Sp_{2n}(2)
    SymplecticNotInImage {
        #[serde(serialize_with = "as_number")]
        subgroup_order: u128,
        #[serde(serialize_with = "as_number")]
        symplectic_order: u128,
    },
    /// the target matches a braid element only up to a phase that is not a ζ-power
    Phase,
    /// the whole projective image was searched without a hit
    NotInImage { image_order: usize },
}

/// u64-sized values as JSON numbers, larger ones as strings.
fn as_number<S: Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*x) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// eval(word) = ζ^phase_power · target
    Realizable { word: BraidWord, phase_power: u8 },
    Unrealizable(Obstruction),
    DepthExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthResult {
    pub verdict: Verdict,
    /// number of distinct group elements visited
    pub explored: usize,
    /// BFS depth reached
    pub depth: usize,
}

impl SynthResult {
    pub fn word(&self) -> Option<&BraidWord> {
        match &self.verdict {
            Verdict::Realizable { word, .. } => Some(word),
            _ => None,
        }
    }

    pub fn phase_power(&self) -> Option<u8> {
        match &self.verdict {
            Verdict::Realizable { phase_power, .. } => Some(*phase_power),
            _ => None,
        }
    }
}

impl Serialize for SynthResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Flat<'a> {
            verdict: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            word: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            phase_power: Option<u8>,
            #[serde(skip_serializing_if = "Option::is_none")]
            obstruction: Option<&'a Obstruction>,
            explored: usize,
            depth: usize,
        }
        let (verdict, word, phase_power, obstruction) = match &self.verdict {
            Verdict::Realizable { word, phase_power } => {
                ("realizable", Some(word.to_string()), Some(*phase_power), None)
            }
            Verdict::Unrealizable(o) => ("unrealizable", None, None, Some(o)),
            Verdict::DepthExhausted => ("depth_exhausted", None, None, None),
        };
        Flat { verdict, word, phase_power, obstruction, explored: self.explored, depth: self.depth }
            .serialize(s)
    }
}

fn compressed_ctx(ctx: &RepContext) -> Result<RepContext> {
    RepContext::new(ctx.n_qubits, ctx.parity, Form::Compressed)
}

fn check_target(ctx: &RepContext, target: &DenseMatrix) -> Result<()> {
    let dim = 1 << ctx.n_qubits;
    if target.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: target.dim() });
    }
    if !target.is_unitary() {
        return Err(Error::NotUnitary);
    }
    Ok(())
}

/// Move order of the search: R_1, R_1⁻¹, R_2, R_2⁻¹, …
fn moves(g: usize) -> Vec<(usize, i32)> {
    (1..=g).flat_map(|j| [(j, 1), (j, -1)]).collect()
}

fn verify(rep: &BraidRep, word: &BraidWord, target: &DenseMatrix) -> Result<Option<u8>> {
    Ok(rep.eval(word)?.phase_relative_to(target))
}

/// Breadth-first search over projective classes of the braid image.
pub fn bfs_synthesize(ctx: &RepContext, target: &DenseMatrix, opts: &SynthOptions) -> Result<SynthResult> {
    let ctx = compressed_ctx(ctx)?;
    check_target(&ctx, target)?;
    let rep = BraidRep::new(ctx)?;
    let mv = moves(ctx.generator_count());
    let step: Vec<DenseMatrix> = mv.iter().map(|&(j, e)| rep.letter(j, e)).collect::<Result<_>>()?;
    let goal = target.key(Mode::Projective);

    let id = ctx.identity();
    // node: (parent, move index); the root has no parent
    let mut nodes: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    seen.insert(id.key(Mode::Projective), 0);
    let mut frontier: VecDeque<(usize, DenseMatrix, usize)> = VecDeque::from([(0, id, 0)]);
    let rebuild = |nodes: &[(usize, usize)], mut at: usize| {
        let mut letters = Vec::new();
        while nodes[at].0 != usize::MAX {
            letters.push(mv[nodes[at].1]);
            at = nodes[at].0;
        }
        letters.reverse();
        BraidWord::new(letters).expect("valid moves")
    };

    let finish = |nodes: &[(usize, usize)], at: usize, depth: usize, explored: usize| -> Result<SynthResult> {
        let word = rebuild(nodes, at);
        let verdict = match verify(&rep, &word, target)? {
            Some(t) => Verdict::Realizable { word, phase_power: t },
            None => Verdict::Unrealizable(Obstruction::Phase),
        };
        Ok(SynthResult { verdict, explored, depth })
    };

    if let Some(&at) = seen.get(&goal) {
        return finish(&nodes, at, 0, 1);
    }
    let mut depth = 0;
    while let Some((at, m, d)) = frontier.pop_front() {
        if d >= opts.max_depth {
            return Ok(SynthResult { verdict: Verdict::DepthExhausted, explored: seen.len(), depth: d });
        }
        depth = depth.max(d + 1);
        for (k, g) in step.iter().enumerate() {
            let next = m.checked_mul(g)?;
            let key = next.key(Mode::Projective);
            if seen.contains_key(&key) {
                continue;
            }
            let idx = nodes.len();
            nodes.push((at, k));
            if key == goal {
                return finish(&nodes, idx, d + 1, seen.len() + 1);
            }
            seen.insert(key, idx);
            if seen.len() > opts.cap {
                return Err(Error::CapExceeded { cap: opts.cap });
            }
            frontier.push_back((idx, next, d + 1));
        }
    }
    Ok(SynthResult {
        verdict: Verdict::Unrealizable(Obstruction::NotInImage { image_order: seen.len() }),
        explored: seen.len(),
        depth,
    })
}

/// Shortest word in the positive generators whose symplectic image is `s`,
/// or `None` with the number of elements visited.
pub fn symplectic_word(n: usize, s: &SymplecticMatrix) -> Result<(Option<BraidWord>, usize)> {
    let g = 2 * n + 1;
    let gens = (1..=g).map(|j| braid_symplectic(n, j)).collect::<Result<Vec<_>>>()?;
    let id = SymplecticMatrix::identity(n);
    let mut nodes: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut seen: HashMap<SymplecticMatrix, usize> = HashMap::from([(id.clone(), 0)]);
    let mut frontier = VecDeque::from([(0usize, id)]);
    let rebuild = |nodes: &[(usize, usize)], mut at: usize| {
        let mut letters = Vec::new();
        while nodes[at].0 != usize::MAX {
            letters.push((nodes[at].1 + 1, 1));
            at = nodes[at].0;
        }
        letters.reverse();
        BraidWord::new(letters).expect("valid moves")
    };
    if let Some(&at) = seen.get(s) {
        return Ok((Some(rebuild(&nodes, at)), 1));
    }
    while let Some((at, m)) = frontier.pop_front() {
        for (k, gk) in gens.iter().enumerate() {
            let next = m.mul(gk);
            if seen.contains_key(&next) {
                continue;
            }
            let idx = nodes.len();
            nodes.push((at, k));
            if &next == s {
                return Ok((Some(rebuild(&nodes, idx)), seen.len() + 1));
            }
            seen.insert(next.clone(), idx);
            frontier.push_back((idx, next));
        }
    }
    Ok((None, seen.len()))
}

/// Pauli class of γ_k γ_l on the compressed basis, 1 ≤ k < l ≤ 2n+2, as the
/// sum of the classes of R_k², …, R_{l−1}².
fn pair_classes(n: usize) -> Result<Vec<((usize, usize), u64)>> {
    let ctx = RepContext::compressed(n, Parity::Positive)?;
    let squares: Vec<u64> = square_formulas(&ctx).iter().map(|(_, p)| p.raw_vector()).collect();
    let m = 2 * n + 2;
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for k in 1..=m {
        let mut acc = 0u64;
        for l in k + 1..=m {
            acc ^= squares[l - 2];
            out.push(((k, l), acc));
        }
    }
    Ok(out)
}

/// The permutation of Majorana modes behind `s`, as a word in positive
/// generators with `S_word = s`; `None` if `s ∉ ⟨S_j⟩`. Needs n ≥ 2.
pub fn permutation_word(n: usize, s: &SymplecticMatrix) -> Result<Option<BraidWord>> {
    if n < 2 {
        return Err(Error::Unsupported("mode permutations are ambiguous for four strands".into()));
    }
    if s.num_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, got: s.num_qubits() });
    }
    let pairs = pair_classes(n)?;
    let lookup: HashMap<u64, (usize, usize)> = pairs.iter().map(|&(p, v)| (v, p)).collect();
    let mut image = HashMap::with_capacity(pairs.len());
    for &(p, v) in &pairs {
        match lookup.get(&s.bits().apply(v)) {
            Some(&q) => image.insert(p, q),
            None => return Ok(None),
        };
    }
    let m = 2 * n + 2;
    let img = |a: usize, b: usize| image[&(a.min(b), a.max(b))];
    // pairs through mode a land on pairs through π(a)
    let mut arr: Vec<usize> = (1..=m)
        .map(|a| {
            let others: Vec<usize> = (1..=m).filter(|&b| b != a).take(2).collect();
            let (p, q) = (img(a, others[0]), img(a, others[1]));
            if p.0 == q.0 || p.0 == q.1 { p.0 } else { p.1 }
        })
        .collect();
    let mut swaps = Vec::new();
    for end in (1..m).rev() {
        for i in 0..end {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                swaps.push(i + 1);
            }
        }
    }
    let gens = (1..=2 * n + 1).map(|j| braid_symplectic(n, j)).collect::<Result<Vec<_>>>()?;
    let product = |js: &[usize]| js.iter().fold(SymplecticMatrix::identity(n), |acc, &j| acc.mul(&gens[j - 1]));
    let reversed: Vec<usize> = swaps.iter().rev().copied().collect();
    for js in [swaps, reversed] {
        if product(&js) == *s {
            return Ok(Some(BraidWord::new(js.into_iter().map(|j| (j, 1)).collect())?));
        }
    }
    Err(Error::Unsupported("pair classes are preserved but no mode permutation matches".into()))
}

fn image_order(n: usize) -> u128 {
    if n == 1 {
        6
    } else {
        factorial(2 * n as u32 + 2).try_into().unwrap_or(u128::MAX)
    }
}

fn not_in_image(n: usize) -> Obstruction {
    Obstruction::SymplecticNotInImage {
        subgroup_order: image_order(n),
        symplectic_order: sp_order(n as u32, 2).try_into().unwrap_or(u128::MAX),
    }
}

/// Writes the Pauli class `v` as a product of squares R_j² (indices ascending).
pub fn pauli_as_squares(ctx: &RepContext, v: &PauliElement) -> Result<Vec<usize>> {
    let squares = square_formulas(ctx);
    let n = ctx.n_qubits;
    // Gaussian elimination over F2; each row is (pivot bit, vector, squares used)
    let mut basis: Vec<(u64, u64, u64)> = Vec::new();
    let reduce = |basis: &[(u64, u64, u64)], mut vec: u64, mut comb: u64| {
        for &(pivot, bv, bc) in basis {
            if vec & pivot != 0 {
                vec ^= bv;
                comb ^= bc;
            }
        }
        (vec, comb)
    };
    for (idx, (_, p)) in squares.iter().enumerate() {
        let (vec, comb) = reduce(&basis, p.raw_vector(), 1u64 << idx);
        if vec != 0 {
            let pivot = 1u64 << vec.trailing_zeros();
            for b in basis.iter_mut() {
                if b.1 & pivot != 0 {
                    b.1 ^= vec;
                    b.2 ^= comb;
                }
            }
            basis.push((pivot, vec, comb));
        }
    }
    let (target, comb) = reduce(&basis, v.raw_vector(), 0);
    if target != 0 {
        return Err(Error::Unsupported(format!("Pauli class {v} is not spanned by the squares (n={n})")));
    }
    Ok((0..squares.len()).filter(|i| comb & (1 << i) != 0).map(|i| squares[i].0).collect())
}

fn clifford_obstruction(target: &DenseMatrix) -> Result<std::result::Result<SymplecticMatrix, Obstruction>> {
    Ok(match clifford_check(target)? {
        CliffordVerdict::Clifford(a) => Ok(a.s),
        CliffordVerdict::NotClifford { generator, expansion } => {
            Err(Obstruction::NotClifford { generator, terms: expansion.len() })
        }
    })
}

/// Symplectic match followed by a Pauli correction made of squares.
pub fn factored_synthesize(ctx: &RepContext, target: &DenseMatrix) -> Result<SynthResult> {
    let ctx = compressed_ctx(ctx)?;
    check_target(&ctx, target)?;
    let s = match clifford_obstruction(target)? {
        Ok(s) => s,
        Err(o) => return Ok(SynthResult { verdict: Verdict::Unrealizable(o), explored: 0, depth: 0 }),
    };
    let n = ctx.n_qubits;
    // shortest symplectic words while ⟨S_j⟩ is small, mode permutations beyond
    let (found, explored) = if n <= 3 {
        symplectic_word(n, &s)?
    } else {
        (permutation_word(n, &s)?, (n + 1) * (2 * n + 1))
    };
    let Some(w1) = found else {
        return Ok(SynthResult { verdict: Verdict::Unrealizable(not_in_image(n)), explored, depth: 0 });
    };
    let depth = w1.len();
    let rep = BraidRep::new(ctx)?;
    let u1 = rep.eval(&w1)?;
    // target = U1 · residual, residual a multiple of a Pauli matrix
    let residual = u1.adjoint().checked_mul(target)?;
    let terms = pauli_expansion(&residual)?;
    let [(p, _)] = terms.as_slice() else {
        return Err(Error::Unsupported("residual is not a single Pauli term".into()));
    };
    let mut word = w1;
    for j in pauli_as_squares(&ctx, p)? {
        word.push(j, 2);
    }
    let verdict = match verify(&rep, &word, target)? {
        Some(t) => Verdict::Realizable { word, phase_power: t },
        None => Verdict::Unrealizable(Obstruction::Phase),
    };
    Ok(SynthResult { verdict, explored, depth })
}

/// Search for n ≤ 2 (or when asked), the factored route otherwise.
pub fn synthesize(ctx: &RepContext, target: &DenseMatrix, opts: &SynthOptions) -> Result<SynthResult> {
    let cctx = compressed_ctx(ctx)?;
    check_target(&cctx, target)?;
    if let Err(o) = clifford_obstruction(target)? {
        return Ok(SynthResult { verdict: Verdict::Unrealizable(o), explored: 0, depth: 0 });
    }
    if ctx.n_qubits <= 2 || opts.full_search {
        bfs_synthesize(&cctx, target, opts)
    } else {
        factored_synthesize(&cctx, target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Reachability {
    Reachable {
        #[serde(serialize_with = "as_number")]
        subgroup_order: u128,
    },
    Obstruction(Obstruction),
}

impl Reachability {
    pub fn is_reachable(&self) -> bool {
        matches!(self, Reachability::Reachable { .. })
    }
}

/// Membership of S_target in an enumerated ⟨S_j⟩.
pub fn reachability_in(group: &GroupEnumeration<SymplecticMatrix>, target: &DenseMatrix) -> Result<Reachability> {
    let s = match clifford_obstruction(target)? {
        Ok(s) => s,
        Err(o) => return Ok(Reachability::Obstruction(o)),
    };
    let n = s.num_qubits();
    let order = group.order() as u128;
    Ok(if group.contains(&s)? {
        Reachability::Reachable { subgroup_order: order }
    } else {
        Reachability::Obstruction(Obstruction::SymplecticNotInImage {
            subgroup_order: order,
            symplectic_order: sp_order(n as u32, 2).try_into().unwrap_or(u128::MAX),
        })
    })
}

/// Membership of S_target in ⟨S_j⟩ by mode permutations (n ≥ 2) or by
/// enumerating the six-element group (n = 1).
pub fn reachability(ctx: &RepContext, target: &DenseMatrix) -> Result<Reachability> {
    let n = ctx.n_qubits;
    check_target(&compressed_ctx(ctx)?, target)?;
    if n == 1 {
        return reachability_in(&symplectic_braid_group(n)?, target);
    }
    let s = match clifford_obstruction(target)? {
        Ok(s) => s,
        Err(o) => return Ok(Reachability::Obstruction(o)),
    };
    Ok(match permutation_word(n, &s)? {
        Some(_) => Reachability::Reachable { subgroup_order: image_order(n) },
        None => Reachability::Obstruction(not_in_image(n)),
    })
}

/// One gate placed in the coset census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub gate: String,
    /// 0 is the image of the braid group itself
    pub coset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCensus {
    pub n: usize,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub coset_count: usize,
    pub entries: Vec<CensusEntry>,
}

/// Splits ⟨S_j, extra⟩ into left cosets g·⟨S_j⟩ and records where each
/// named gate's symplectic image falls.
pub fn coset_census(n: usize, extra: &[DenseMatrix], named: &[(String, DenseMatrix)]) -> Result<CosetCensus> {
    if n > 3 {
        return Err(Error::Unsupported(format!("the census enumerates Sp_2n(2); n ≤ 3, got {n}")));
    }
    let sub = symplectic_braid_group(n)?;
    let mut gens: Vec<SymplecticMatrix> = sub.generators().to_vec();
    let image = |u: &DenseMatrix| -> Result<SymplecticMatrix> {
        clifford_check(u)?.action().map(|a| a.s.clone()).ok_or(Error::NotSymplectic)
    };
    for u in extra {
        gens.push(image(u)?);
    }
    let full = enumerate(SymplecticMatrix::identity(n), &gens, Mode::Strict, DEFAULT_CAP)?;
    let mut coset_of: HashMap<SymplecticMatrix, usize> = HashMap::with_capacity(full.order());
    let mut count = 0;
    for x in full.elements() {
        if coset_of.contains_key(x) {
            continue;
        }
        for h in sub.elements() {
            coset_of.insert(x.compose(h)?, count);
        }
        count += 1;
    }
    let entries = named
        .iter()
        .map(|(name, u)| {
            let s = image(u)?;
            let coset = *coset_of.get(&s).ok_or(Error::Unsupported(format!("{name} lies outside the group")))?;
            Ok(CensusEntry { gate: name.clone(), coset })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetCensus {
        n,
        group_order: full.order(),
        subgroup_order: sub.order(),
        coset_count: count,
        entries,
    })
}
