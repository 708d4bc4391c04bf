//! Braid-group generators for 2n+2 Ising anyons, monodromy generators, the
//! named gate words, and checks of the representation-level identities.
//!
//! For n qubits the generators live on the level-(n+1) gamma system:
//!
//! ```text
//! R_j   = e^{iπ/4}/√2 · (I − γ_j γ_{j+1})
//! R_j⁻¹ = e^{−iπ/4}/√2 · (I + γ_j γ_{j+1})      1 ≤ j ≤ 2n+1
//! ```
//!
//! A word is evaluated left to right: `"1 3 -5"` is the matrix `R_1 R_3 R_5⁻¹`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::clifford_check;
use crate::error::{Error, Result};
use crate::gamma::{gamma, parity_basis, projector, Parity};
use crate::gates;
use crate::matrix::DenseMatrix;
use crate::pauli::{Pauli, PauliElement};
use crate::scalar::CycScalar;
use crate::symplectic::braid_symplectic;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// 2^{n+1}-dimensional, before projection
    Unprojected,
    /// 2^{n+1}-dimensional, multiplied by the parity projector
    Projected,
    /// 2^n-dimensional restriction to the parity subspace
    Compressed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepContext {
    pub n_qubits: usize,
    pub parity: Parity,
    pub form: Form,
}

impl RepContext {
    pub const MAX_QUBITS: usize = 6;

    pub fn new(n_qubits: usize, parity: Parity, form: Form) -> Result<Self> {
        if n_qubits == 0 || n_qubits > Self::MAX_QUBITS {
            return Err(Error::IndexOutOfRange {
                index: n_qubits as i64,
                lo: 1,
                hi: Self::MAX_QUBITS as i64,
            });
        }
        Ok(Self { n_qubits, parity, form })
    }

    pub fn compressed(n_qubits: usize, parity: Parity) -> Result<Self> {
        Self::new(n_qubits, parity, Form::Compressed)
    }

    pub fn with_form(self, form: Form) -> Self {
        Self { form, ..self }
    }

    pub fn strands(&self) -> usize {
        2 * self.n_qubits + 2
    }

    pub fn generator_count(&self) -> usize {
        2 * self.n_qubits + 1
    }

    /// Level of the gamma system the generators are built from.
    pub fn level(&self) -> usize {
        self.n_qubits + 1
    }

    pub fn dim(&self) -> usize {
        match self.form {
            Form::Compressed => 1 << self.n_qubits,
            _ => 1 << self.level(),
        }
    }

    /// Indices of the parity subspace inside the unprojected space.
    pub fn basis(&self) -> Vec<usize> {
        parity_basis(self.level(), self.parity)
    }

    /// The identity of the group the generators act in: P for the projected form.
    pub fn identity(&self) -> DenseMatrix {
        match self.form {
            Form::Projected => projector(self.level(), self.parity),
            _ => DenseMatrix::identity(self.dim()),
        }
    }

    /// Moves an unprojected operator into this context's form.
    pub fn reduce(&self, unprojected: &DenseMatrix) -> Result<DenseMatrix> {
        match self.form {
            Form::Unprojected => Ok(unprojected.clone()),
            Form::Projected => unprojected.checked_mul(&projector(self.level(), self.parity)),
            Form::Compressed => unprojected.submatrix(&self.basis()),
        }
    }

    /// Moves a compressed operator into this context's form.
    pub fn lift(&self, compressed: &DenseMatrix) -> Result<DenseMatrix> {
        match self.form {
            Form::Compressed => Ok(compressed.clone()),
            Form::Projected => compressed.embed(1 << self.level(), &self.basis()),
            Form::Unprojected => Err(Error::Unsupported(
                "a compressed operator has no unique unprojected lift".into(),
            )),
        }
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.generator_count() {
            return Err(Error::IndexOutOfRange {
                index: j as i64,
                lo: 1,
                hi: self.generator_count() as i64,
            });
        }
        Ok(())
    }
}

/// A product of braid generators: `(index, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord(Vec<(usize, i32)>);

impl BraidWord {
    pub fn new(letters: Vec<(usize, i32)>) -> Result<Self> {
        if let Some(&(j, e)) = letters.iter().find(|(j, e)| *j == 0 || *e == 0) {
            return Err(Error::Parse(format!("invalid letter ({j}, {e})")));
        }
        Ok(Self(letters))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.0
    }

    /// Number of generator factors, counting exponents with multiplicity.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One signed index per factor: `R_1² R_3⁻¹` becomes `[1, 1, -3]`.
    pub fn signed_indices(&self) -> Vec<i64> {
        self.0
            .iter()
            .flat_map(|&(j, e)| {
                let s = if e > 0 { j as i64 } else { -(j as i64) };
                std::iter::repeat_n(s, e.unsigned_abs() as usize)
            })
            .collect()
    }

    pub fn from_signed_indices(indices: &[i64]) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&s| match s {
                0 => Err(Error::Parse("generator index 0 is not valid".into())),
                s => Ok((s.unsigned_abs() as usize, s.signum() as i32)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(letters))
    }

    pub fn push(&mut self, j: usize, e: i32) {
        self.0.push((j, e));
    }

    pub fn concat(&self, rhs: &Self) -> Self {
        Self(self.0.iter().chain(&rhs.0).copied().collect())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(j, e)| (j, -e)).collect())
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|(j, _)| *j).max().unwrap_or(0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signed_indices().iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad generator '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_signed_indices(&indices)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|&(j, e)| [j as i64, e as i64]).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(i64, i64)>::deserialize(d)?;
        let letters = raw
            .into_iter()
            .map(|(j, e)| {
                let j = usize::try_from(j).map_err(serde::de::Error::custom)?;
                let e = i32::try_from(e).map_err(serde::de::Error::custom)?;
                Ok((j, e))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        BraidWord::new(letters).map_err(serde::de::Error::custom)
    }
}

/// γ_j γ_{j+1} at the given level.
fn gamma_pair(level: usize, j: usize) -> Result<DenseMatrix> {
    gamma(level, j)?.checked_mul(&gamma(level, j + 1)?)
}

/// Unprojected R_j and R_j⁻¹ at level n+1.
pub fn unprojected_generator(n_qubits: usize, j: usize) -> Result<(DenseMatrix, DenseMatrix)> {
    let level = n_qubits + 1;
    let gg = gamma_pair(level, j)?;
    let id = DenseMatrix::identity(1 << level);
    let r = id.checked_sub(&gg)?.scale(CycScalar::BRAID_PREFACTOR);
    let r_inv = id.checked_add(&gg)?.scale(CycScalar::BRAID_PREFACTOR.conj());
    Ok((r, r_inv))
}

pub fn braid_generator(ctx: &RepContext, j: usize) -> Result<DenseMatrix> {
    ctx.check_index(j)?;
    ctx.reduce(&unprojected_generator(ctx.n_qubits, j)?.0)
}

pub fn braid_generator_inverse(ctx: &RepContext, j: usize) -> Result<DenseMatrix> {
    ctx.check_index(j)?;
    ctx.reduce(&unprojected_generator(ctx.n_qubits, j)?.1)
}

/// Generators and inverses of one context, built once.
#[derive(Clone, Debug)]
pub struct BraidRep {
    ctx: RepContext,
    gens: Vec<DenseMatrix>,
    invs: Vec<DenseMatrix>,
}

impl BraidRep {
    pub fn new(ctx: RepContext) -> Result<Self> {
        let mut gens = Vec::with_capacity(ctx.generator_count());
        let mut invs = Vec::with_capacity(ctx.generator_count());
        for j in 1..=ctx.generator_count() {
            gens.push(braid_generator(&ctx, j)?);
            invs.push(braid_generator_inverse(&ctx, j)?);
        }
        Ok(Self { ctx, gens, invs })
    }

    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[DenseMatrix] {
        &self.gens
    }

    pub fn generator(&self, j: usize) -> Result<&DenseMatrix> {
        self.ctx.check_index(j)?;
        Ok(&self.gens[j - 1])
    }

    pub fn inverse(&self, j: usize) -> Result<&DenseMatrix> {
        self.ctx.check_index(j)?;
        Ok(&self.invs[j - 1])
    }

    /// R_j^e.
    pub fn letter(&self, j: usize, e: i32) -> Result<DenseMatrix> {
        let base = if e > 0 { self.generator(j)? } else { self.inverse(j)? };
        let mut out = base.clone();
        for _ in 1..e.unsigned_abs() {
            out = out.checked_mul(base)?;
        }
        Ok(out)
    }

    pub fn eval(&self, w: &BraidWord) -> Result<DenseMatrix> {
        let mut acc = self.ctx.identity();
        for &(j, e) in w.letters() {
            let g = if e > 0 { self.generator(j)? } else { self.inverse(j)? };
            for _ in 0..e.unsigned_abs() {
                acc = acc.checked_mul(g)?;
            }
        }
        Ok(acc)
    }
}

pub fn eval_word(ctx: &RepContext, w: &BraidWord) -> Result<DenseMatrix> {
    BraidRep::new(*ctx)?.eval(w)
}

fn check_strand_pair(ctx: &RepContext, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j || j > ctx.strands() {
        return Err(Error::IndexOutOfRange { index: j as i64, lo: i as i64 + 1, hi: ctx.strands() as i64 });
    }
    Ok(())
}

/// A_{ij} = R_{j−1}⁻¹ ⋯ R_{i+1}⁻¹ R_i² R_{i+1} ⋯ R_{j−1}.
pub fn monodromy_word(ctx: &RepContext, i: usize, j: usize) -> Result<BraidWord> {
    check_strand_pair(ctx, i, j)?;
    let mut w = BraidWord::empty();
    for m in (i + 1..j).rev() {
        w.push(m, -1);
    }
    w.push(i, 2);
    for m in i + 1..j {
        w.push(m, 1);
    }
    Ok(w)
}

pub fn monodromy(ctx: &RepContext, i: usize, j: usize) -> Result<DenseMatrix> {
    eval_word(ctx, &monodromy_word(ctx, i, j)?)
}

/// i(−1)^{l−k} γ_k γ_l on the unprojected space.
pub fn monodromy_closed_gamma(n_qubits: usize, k: usize, l: usize) -> Result<DenseMatrix> {
    let level = n_qubits + 1;
    let sign = if (l - k).is_multiple_of(2) { 1 } else { -1 };
    let gg = gamma(level, k)?.checked_mul(&gamma(level, l)?)?;
    Ok(gg.scale(CycScalar::I * CycScalar::from_int(sign)))
}

/// −(−i)^{l−k+1} Π_{m=k}^{l−1} R_m², in the context's form.
pub fn monodromy_closed_squares(ctx: &RepContext, k: usize, l: usize) -> Result<DenseMatrix> {
    check_strand_pair(ctx, k, l)?;
    let rep = BraidRep::new(*ctx)?;
    let mut acc = ctx.identity();
    for m in k..l {
        acc = acc.checked_mul(&rep.letter(m, 2)?)?;
    }
    let phase = -CycScalar::i_pow(-((l - k + 1) as i64));
    Ok(acc.scale(phase))
}

/// Sign s with word-form A_{kl} = s · i(−1)^{l−k} γ_k γ_l (unprojected), if any.
pub fn monodromy_closed_sign(n_qubits: usize, k: usize, l: usize) -> Result<Option<i8>> {
    let ctx = RepContext::new(n_qubits, Parity::Positive, Form::Unprojected)?;
    let word = monodromy(&ctx, k, l)?;
    let closed = monodromy_closed_gamma(n_qubits, k, l)?;
    Ok(if word == closed {
        Some(1)
    } else if word == closed.neg() {
        Some(-1)
    } else {
        None
    })
}

/// The Pauli element each (R_j)² equals on the compressed basis:
///
/// * R_{2i−1}² = Z_i
/// * R_{2i}² = Y_i Y_{i+1}
/// * R_{2n}² = ∓ Z⋯Z X
/// * R_{2n+1}² = ± Z⋯Z
pub fn square_formulas(ctx: &RepContext) -> Vec<(usize, PauliElement)> {
    let n = ctx.n_qubits;
    let minus_if = |neg: bool| if neg { 2 } else { 0 };
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 1..=n {
        let mut f = vec![Pauli::I; n];
        f[i - 1] = Pauli::Z;
        out.push((2 * i - 1, PauliElement::from_factors(0, &f)));
        if i < n {
            let mut f = vec![Pauli::I; n];
            f[i - 1] = Pauli::Y;
            f[i] = Pauli::Y;
            out.push((2 * i, PauliElement::from_factors(0, &f)));
        }
    }
    let mut zx = vec![Pauli::Z; n];
    zx[n - 1] = Pauli::X;
    out.push((2 * n, PauliElement::from_factors(minus_if(ctx.parity == Parity::Positive), &zx)));
    let zz = vec![Pauli::Z; n];
    out.push((2 * n + 1, PauliElement::from_factors(minus_if(ctx.parity == Parity::Negative), &zz)));
    out.sort_by_key(|(j, _)| *j);
    out
}

/// The matrix that (R_j)² must equal, in the context's form.
pub fn square_formula_matrix(ctx: &RepContext, j: usize) -> Result<DenseMatrix> {
    ctx.check_index(j)?;
    if ctx.form == Form::Unprojected {
        return Ok(gamma_pair(ctx.level(), j)?.scale(-CycScalar::I));
    }
    let (_, p) = square_formulas(ctx).into_iter().find(|(k, _)| *k == j).expect("every index listed");
    ctx.lift(&p.to_matrix())
}

pub fn phase_element_word(n_qubits: usize) -> BraidWord {
    let (a, b) = (2 * n_qubits, 2 * n_qubits + 1);
    BraidWord(vec![(a, 1), (b, 2), (a, 1), (b, 2)])
}

/// R_{2n} R_{2n+1}² R_{2n} R_{2n+1}², which equals i·I.
pub fn phase_element(ctx: &RepContext) -> Result<(BraidWord, DenseMatrix)> {
    let w = phase_element_word(ctx.n_qubits);
    let m = eval_word(ctx, &w)?;
    Ok((w, m))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGate {
    /// diag(1, i) on qubit j
    Phase(usize),
    /// Hadamard on qubit n, up to a ζ-power
    HadamardLast,
    /// CZ on qubits j, j+1
    CzPair(usize),
    /// i·CZ·SWAP on qubits j, j+1
    CzSwapPair(usize),
}

impl NamedGate {
    /// Textbook matrix of the gate on the compressed basis.
    pub fn target(&self, n: usize) -> Result<DenseMatrix> {
        match *self {
            NamedGate::Phase(j) => gates::phase(n, j),
            NamedGate::HadamardLast => gates::hadamard(n, n),
            NamedGate::CzPair(j) => gates::cz(n, j, j + 1),
            NamedGate::CzSwapPair(j) => Ok(gates::cz(n, j, j + 1)?
                .checked_mul(&gates::swap(n, j, j + 1)?)?
                .scale(CycScalar::I)),
        }
    }
}

/// Word for a named gate. The CZ word `R_{2j−1} R_{2j+1} R_{2n+1}⁻¹` only works
/// when the pair is the last one.
pub fn named_gate_word(n: usize, gate: NamedGate) -> Result<BraidWord> {
    let pair_ok = |j: usize| {
        if j == 0 || j >= n {
            Err(Error::IndexOutOfRange { index: j as i64, lo: 1, hi: n as i64 - 1 })
        } else {
            Ok(())
        }
    };
    match gate {
        NamedGate::Phase(j) => {
            if j == 0 || j > n {
                return Err(Error::IndexOutOfRange { index: j as i64, lo: 1, hi: n as i64 });
            }
            Ok(BraidWord(vec![(2 * j - 1, 1)]))
        }
        NamedGate::HadamardLast => {
            Ok(BraidWord(vec![(2 * n - 1, 2), (2 * n + 1, 1), (2 * n, 1), (2 * n + 1, -1)]))
        }
        NamedGate::CzSwapPair(j) => {
            pair_ok(j)?;
            Ok(BraidWord(vec![(2 * j, 1), (2 * j + 1, 1), (2 * j - 1, 1), (2 * j, 1)]))
        }
        NamedGate::CzPair(j) => {
            pair_ok(j)?;
            if j + 1 != n {
                return Err(Error::Unsupported(format!(
                    "no closed-form CZ word for qubits {j},{}; use synthesis",
                    j + 1
                )));
            }
            Ok(BraidWord(vec![(2 * j - 1, 1), (2 * j + 1, 1), (2 * n + 1, -1)]))
        }
    }
}

/// The gate's word and its exact evaluation in `ctx`.
pub fn named_gate(ctx: &RepContext, gate: NamedGate) -> Result<(BraidWord, DenseMatrix)> {
    let w = named_gate_word(ctx.n_qubits, gate)?;
    let m = eval_word(ctx, &w)?;
    Ok((w, m))
}

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub parity: Parity,
    pub checks: Vec<Check>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn note(&mut self, name: impl Into<String>, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = (!passed).then(|| failures.join("; "));
        self.0.push(Check { name: name.into(), passed, detail });
    }
}

/// Checks every representation-level identity for one (n, parity).
pub fn verify_relations(n: usize, parity: Parity) -> Result<RelationReport> {
    let forms = [Form::Unprojected, Form::Projected, Form::Compressed];
    let reps = forms
        .iter()
        .map(|&f| BraidRep::new(RepContext::new(n, parity, f)?))
        .collect::<Result<Vec<_>>>()?;
    let g = 2 * n + 1;
    let mut rec = Recorder(Vec::new());

    let mut far = Vec::new();
    let mut yb = Vec::new();
    let mut unit = Vec::new();
    let mut fourth = Vec::new();
    for rep in &reps {
        let form = rep.context().form;
        let id = rep.context().identity();
        for a in 1..=g {
            let ra = rep.generator(a)?;
            if ra.checked_mul(rep.inverse(a)?)? != id || ra.checked_mul(&ra.adjoint())? != id {
                unit.push(format!("{form:?} R_{a}"));
            }
            if rep.letter(a, 4)? != id {
                fourth.push(format!("{form:?} R_{a}"));
            }
            for b in a + 1..=g {
                let rb = rep.generator(b)?;
                if b == a + 1 {
                    let l = ra.checked_mul(rb)?.checked_mul(ra)?;
                    let r = rb.checked_mul(ra)?.checked_mul(rb)?;
                    if l != r {
                        yb.push(format!("{form:?} ({a},{b})"));
                    }
                } else if !ra.commutes_with(rb) {
                    far.push(format!("{form:?} ({a},{b})"));
                }
            }
        }
    }
    rec.note("braid relation R_j R_{j+1} R_j = R_{j+1} R_j R_{j+1}", yb);
    rec.note("far commutation R_j R_k = R_k R_j, |j-k| > 1", far);
    rec.note("unitarity and exact inverse", unit);
    rec.note("fourth power (R_j)^4 = identity", fourth);

    let mut sq = Vec::new();
    let mut sqf = Vec::new();
    for rep in &reps {
        for j in 1..=g {
            let want = square_formula_matrix(rep.context(), j)?;
            if rep.letter(j, 2)? != want {
                if rep.context().form == Form::Unprojected {
                    sq.push(format!("j={j}"));
                } else {
                    sqf.push(format!("{:?} j={j}", rep.context().form));
                }
            }
        }
    }
    rec.note("unprojected squares (R_j)^2 = -i gamma_j gamma_{j+1}, all j", sq);
    rec.note("square formulas as Pauli strings", sqf);

    let mut eq_i = Vec::new();
    let mut phase = Vec::new();
    let (a, b) = (2 * n, 2 * n + 1);
    for rep in &reps {
        let form = rep.context().form;
        let b2 = rep.letter(b, 2)?;
        let lhs = rep.generator(a)?.checked_mul(&b2)?.checked_mul(rep.generator(a)?)?;
        if lhs != b2.scale(CycScalar::I) {
            eq_i.push(format!("{form:?}"));
        }
        let ph = rep.eval(&phase_element_word(n))?;
        if ph != rep.context().identity().scale(CycScalar::I) {
            phase.push(format!("{form:?}"));
        }
    }
    rec.note("R_{2n} (R_{2n+1})^2 R_{2n} = i (R_{2n+1})^2", eq_i);
    rec.note("phase element R_{2n} R_{2n+1}^2 R_{2n} R_{2n+1}^2 = i I", phase);

    // projected products equal projected unprojected products
    let mut proj = Vec::new();
    let mut words: Vec<BraidWord> = (1..=g).map(|j| BraidWord(vec![(j, 1), (j % g + 1, -1)])).collect();
    words.push(phase_element_word(n));
    words.push(named_gate_word(n, NamedGate::HadamardLast)?);
    words.push(BraidWord::empty());
    let p = projector(n + 1, parity);
    for w in &words {
        let un = reps[0].eval(w)?;
        if reps[1].eval(w)? != un.checked_mul(&p)? {
            proj.push(format!("word '{w}'"));
        }
        if reps[2].eval(w)? != un.submatrix(&reps[2].context().basis())? {
            proj.push(format!("compressed word '{w}'"));
        }
    }
    rec.note("projector commutes with word products", proj);

    let mut sym = Vec::new();
    for j in 1..=g {
        let want = braid_symplectic(n, j)?;
        match clifford_check(reps[2].generator(j)?)?.action() {
            Some(a) if a.s == want => {}
            Some(_) => sym.push(format!("S_{j} differs")),
            None => sym.push(format!("R_{j} not Clifford")),
        }
    }
    rec.note("symplectic images match block forms", sym);

    if n == 1 {
        let c = &reps[2];
        let ok = match parity {
            Parity::Positive => c.generator(3)? == c.generator(1)?,
            Parity::Negative => c.generator(3)? == &c.inverse(1)?.scale(CycScalar::I),
        };
        let name = match parity {
            Parity::Positive => "four-strand degeneracy R_3 = R_1",
            Parity::Negative => "four-strand degeneracy R_3 = i R_1^{-1}",
        };
        rec.note(name, if ok { vec![] } else { vec!["differs".into()] });
    }

    Ok(RelationReport { n, parity, checks: rec.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize, p: Parity) -> RepContext {
        RepContext::compressed(n, p).unwrap()
    }

    #[test]
    fn word_text_and_json() {
        let w: BraidWord = "1 3 -5".parse().unwrap();
        assert_eq!(w.letters(), &[(1, 1), (3, 1), (5, -1)]);
        assert_eq!(w.to_string(), "1 3 -5");
        assert_eq!(serde_json::to_string(&w).unwrap(), "[[1,1],[3,1],[5,-1]]");
        let back: BraidWord = serde_json::from_str("[[1,1],[3,1],[5,-1]]").unwrap();
        assert_eq!(back, w);
        assert!("1 0".parse::<BraidWord>().is_err());
        assert!("1 x".parse::<BraidWord>().is_err());
        assert!(serde_json::from_str::<BraidWord>("[[1,0]]").is_err());
        let sq = BraidWord::new(vec![(2, 2), (1, -1)]).unwrap();
        assert_eq!(sq.to_string(), "2 2 -1");
        assert_eq!(sq.len(), 3);
        assert_eq!("".parse::<BraidWord>().unwrap(), BraidWord::empty());
    }

    #[test]
    fn one_qubit_generators() {
        let c = ctx(1, Parity::Positive);
        let r1 = braid_generator(&c, 1).unwrap();
        assert_eq!(r1, DenseMatrix::diag(&[CycScalar::ONE, CycScalar::I]).unwrap());
        let r2 = braid_generator(&c, 2).unwrap();
        // e^{iπ/4}/√2 · (I + iσ1)
        let p = CycScalar::BRAID_PREFACTOR;
        let want = DenseMatrix::from_rows(vec![vec![p, p * CycScalar::I], vec![p * CycScalar::I, p]]).unwrap();
        assert_eq!(r2, want);
        assert!(braid_generator(&c, 4).is_err());
        assert!(braid_generator(&c, 0).is_err());
    }

    #[test]
    fn word_evaluation_basics() {
        let c = ctx(2, Parity::Positive);
        assert!(eval_word(&c, &BraidWord::empty()).unwrap().is_identity());
        let w: BraidWord = "3 -3".parse().unwrap();
        assert!(eval_word(&c, &w).unwrap().is_identity());
        let cz: BraidWord = "1 3 -5".parse().unwrap();
        assert_eq!(eval_word(&c, &cz).unwrap(), gates::cz(2, 1, 2).unwrap());
        assert!(eval_word(&c, &"6".parse().unwrap()).is_err());
    }

    #[test]
    fn projected_empty_word_is_the_projector() {
        let c = RepContext::new(2, Parity::Negative, Form::Projected).unwrap();
        assert_eq!(eval_word(&c, &BraidWord::empty()).unwrap(), projector(3, Parity::Negative));
    }

    #[test]
    fn monodromy_examples() {
        let c = ctx(1, Parity::Positive);
        assert_eq!(monodromy(&c, 1, 2).unwrap(), crate::gamma::sigma(3));
        for n in 1..=2 {
            let c = ctx(n, Parity::Positive);
            for i in 1..c.strands() {
                assert_eq!(monodromy(&c, i, i + 1).unwrap(), braid_generator(&c, i).unwrap().pow(2));
            }
        }
        assert!(monodromy(&c, 2, 2).is_err());
        assert!(monodromy(&c, 1, 5).is_err());
        let un = RepContext::new(1, Parity::Positive, Form::Unprojected).unwrap();
        let g = |j| gamma(2, j).unwrap();
        assert_eq!(monodromy(&un, 1, 3).unwrap(), (&g(1) * &g(3)).scale(CycScalar::I));
    }

    #[test]
    fn closed_monodromy_forms() {
        for n in 1..=3 {
            for k in 1..=2 * n + 2 {
                for l in k + 1..=2 * n + 2 {
                    assert_eq!(monodromy_closed_sign(n, k, l).unwrap(), Some(1), "n={n} k={k} l={l}");
                    for form in [Form::Unprojected, Form::Compressed] {
                        let c = RepContext::new(n, Parity::Positive, form).unwrap();
                        assert_eq!(monodromy(&c, k, l).unwrap(), monodromy_closed_squares(&c, k, l).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn named_gate_examples() {
        let c = ctx(2, Parity::Positive);
        let (_, m) = named_gate(&c, NamedGate::CzSwapPair(1)).unwrap();
        let want = DenseMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]])
            .unwrap()
            .scale(CycScalar::I);
        assert_eq!(m, want);
        assert_eq!(m, NamedGate::CzSwapPair(1).target(2).unwrap());
        let (w, m) = named_gate(&c, NamedGate::Phase(1)).unwrap();
        assert_eq!(w.to_string(), "1");
        let (i, o) = (CycScalar::I, CycScalar::ONE);
        assert_eq!(m, DenseMatrix::diag(&[o, o, i, i]).unwrap());
        assert!(named_gate(&c, NamedGate::CzSwapPair(2)).is_err());
        assert!(named_gate(&ctx(3, Parity::Positive), NamedGate::CzPair(1)).is_err());
        for n in 1..=3 {
            let c = ctx(n, Parity::Positive);
            let (_, h) = named_gate(&c, NamedGate::HadamardLast).unwrap();
            assert!(h.phase_relative_to(&gates::hadamard(n, n).unwrap()).is_some(), "n={n}");
        }
    }

    #[test]
    fn phase_element_is_i() {
        for n in 1..=3 {
            for p in Parity::BOTH {
                let (_, m) = phase_element(&ctx(n, p)).unwrap();
                assert_eq!(m, DenseMatrix::scalar(1 << n, CycScalar::I));
                assert!(m.pow(4).is_identity());
            }
        }
    }

    #[test]
    fn relations_hold_small() {
        for n in 1..=2 {
            for p in Parity::BOTH {
                let r = verify_relations(n, p).unwrap();
                let bad: Vec<_> = r.failures().collect();
                assert!(bad.is_empty(), "n={n} {p}: {bad:?}");
            }
        }
    }
}
