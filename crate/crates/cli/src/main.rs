use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use ising_clifford::braid::{eval_word, named_gate, verify_relations, NamedGate};
use ising_clifford::fusion::{count_paths, enumerate_paths, FusionLabel};
use ising_clifford::gamma::{gamma, gamma_f, projector};
use ising_clifford::group::{
    braid_image, enumerate_partial, faithfulness_check, monodromy_equals_pauli, monodromy_group,
    pauli_matrix_group, symplectic_braid_group, GroupElement, GroupEnumeration, Mode, DEFAULT_CAP,
};
use ising_clifford::orders::{braid_image_order, coverage_ratio, group_orders, pauli_order};
use ising_clifford::symplectic::{braid_symplectic, tilde_closed_form, tilde_basis};
use ising_clifford::synth::{coset_census, reachability, synthesize, SynthOptions};
use ising_clifford::{
    clifford_check, gates, BraidRep, BraidWord, CycScalar, DenseMatrix, Form, Parity,
    RepContext,
};

#[derive(Parser)]
#[command(name = "ising", version, about = "Exact Ising-anyon braid representations and their Clifford images")]
struct Cli {
    #[command(flatten)]
    out: OutputOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct OutputOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// add complex-float renderings of matrices (display only)
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormArg {
    Compressed,
    Projected,
    Unprojected,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Compressed => Form::Compressed,
            FormArg::Projected => Form::Projected,
            FormArg::Unprojected => Form::Unprojected,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum Kind {
    Braid,
    BraidInverse,
    Gamma,
    GammaF,
    Projector,
}

#[derive(ValueEnum, Clone, Copy)]
enum GroupArg {
    Braid,
    Monodromy,
    Pauli,
    Symplectic,
}

#[derive(Args)]
struct RepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    parity: Parity,
    #[arg(long, value_enum, default_value_t = FormArg::Compressed)]
    form: FormArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump one generator, gamma matrix or projector
    GenMatrix {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = Kind::Braid)]
        kind: Kind,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Evaluate a braid word such as "1 3 -5"
    EvalWord {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Check every representation identity; exits 1 on any failure
    VerifyRelations {
        #[arg(long)]
        n: usize,
        /// omit to check both parities
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<Parity>,
    },
    /// Closed-form group orders
    Orders {
        #[arg(long)]
        n: usize,
        /// emit one record per qubit count 1..=n
        #[arg(long)]
        series: bool,
    },
    /// Enumerate a finite group with Dimino's algorithm
    Enumerate {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = GroupArg::Braid)]
        group: GroupArg,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// allow the multi-million element braid images for n ≥ 3
        #[arg(long)]
        heavy: bool,
    },
    /// Compare the monodromy group with the Pauli group
    MonodromyCheck {
        #[arg(long)]
        n: usize,
    },
    /// Symplectic part and Pauli signs of a unitary
    CliffordCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        parity: Parity,
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Symplectic images of the braid generators
    Symplectic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: Option<usize>,
        /// also emit the basis change T and the tilde forms
        #[arg(long)]
        tilde: bool,
    },
    /// Order of ⟨S_j⟩ against the expected permutation group
    Faithfulness {
        #[arg(long)]
        n: usize,
    },
    /// Find a braid word realizing a gate up to a ζ-power
    Synth {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        parity: Parity,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
        /// search the full braid image for n ≥ 3
        #[arg(long)]
        full: bool,
    },
    /// Decide whether a Clifford gate lies in the braid image
    Reach {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        parity: Parity,
        #[arg(long, required_unless_present = "census")]
        target: Option<String>,
        /// place the standard gates in the cosets of ⟨S_j⟩ inside ⟨S_j, SWAP⟩
        #[arg(long)]
        census: bool,
    },
    /// Fusion paths of σ fields
    Fusion {
        #[arg(long)]
        num_sigma: usize,
        /// omit to report both parities
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<Parity>,
        /// list every path with its label and basis index
        #[arg(long)]
        paths: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl From<ising_clifford::Error> for Failure {
    fn from(e: ising_clifford::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = std::env::var("ISING_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let out = cli.out;
    match run(cli.cmd, out) {
        Ok(v) => {
            emit(&v, out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            emit(&v, out);
            let diff = v.get("failures").cloned().unwrap_or(Value::Null);
            eprintln!("verification failed: {}", serde_json::to_string(&diff).unwrap_or_default());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(v: &Value, out: OutputOpts) {
    let mut stdout = std::io::stdout().lock();
    let s = match out.format {
        Format::Json => serde_json::to_string(v).expect("serializable output"),
        Format::Text => render_text(v),
    };
    let _ = writeln!(stdout, "{}", s.trim_end());
}

fn run(cmd: Cmd, out: OutputOpts) -> Outcome {
    match cmd {
        Cmd::GenMatrix { rep, kind, j } => gen_matrix(&rep, kind, j, out),
        Cmd::EvalWord { rep, word } => {
            let ctx = context(&rep)?;
            let w: BraidWord = word.parse()?;
            let m = eval_word(&ctx, &w)?;
            Ok(json!({ "word": w.to_string(), "matrix": matrix_value(&m, out) }))
        }
        Cmd::VerifyRelations { n, parity } => verify(n, parity),
        Cmd::Orders { n, series } => orders(n, series),
        Cmd::Enumerate { rep, group, mode, cap, heavy } => enumerate_cmd(&rep, group, mode, cap, heavy),
        Cmd::MonodromyCheck { n } => {
            let r = monodromy_equals_pauli(n)?;
            let v = to_value(&r);
            if r.passed() { Ok(v) } else { Err(verification(v, failed_fields(&r_checks(&r)))) }
        }
        Cmd::CliffordCheck { n, parity, word, target } => {
            let u = match (word, target) {
                (Some(w), None) => eval_word(&RepContext::compressed(n, parity)?, &w.parse()?)?,
                (None, Some(t)) => parse_target(n, &t)?,
                _ => return Err(Failure::Usage("give exactly one of --word or --target".into())),
            };
            Ok(to_value(&clifford_check(&u)?))
        }
        Cmd::Symplectic { n, j, tilde } => symplectic(n, j, tilde),
        Cmd::Faithfulness { n } => {
            let r = faithfulness_check(n)?;
            let v = to_value(&r);
            if r.passed {
                Ok(v)
            } else {
                let diff = json!([{ "name": "order", "expected": r.expected, "got": r.order }]);
                Err(verification(v, diff))
            }
        }
        Cmd::Synth { n, parity, target, max_depth, cap, full } => {
            let ctx = RepContext::compressed(n, parity)?;
            let u = parse_target(n, &target)?;
            let opts = SynthOptions { max_depth, full_search: full, cap };
            let mut v = to_value(&synthesize(&ctx, &u, &opts)?);
            v["target"] = json!(target);
            Ok(v)
        }
        Cmd::Reach { n, parity, target, census } => {
            if census {
                return census_cmd(n);
            }
            let target = target.expect("clap enforces the target");
            let ctx = RepContext::compressed(n, parity)?;
            let mut v = to_value(&reachability(&ctx, &parse_target(n, &target)?)?);
            v["target"] = json!(target);
            Ok(v)
        }
        Cmd::Fusion { num_sigma, parity, paths } => fusion(num_sigma, parity, paths),
    }
}

fn context(rep: &RepArgs) -> Result<RepContext, Failure> {
    Ok(RepContext::new(rep.n, rep.parity, rep.form.into())?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

fn verification(mut report: Value, failures: Value) -> Failure {
    report["failures"] = failures;
    Failure::Verification(report)
}

fn r_checks(r: &ising_clifford::group::MonodromyPauliReport) -> Vec<(&'static str, bool)> {
    vec![
        ("sets_equal", r.sets_equal),
        ("generators_in_kernel", r.generators_in_kernel),
        ("monodromy_order", r.monodromy_order == 1 << (2 * r.n + 2)),
    ]
}

fn failed_fields(checks: &[(&str, bool)]) -> Value {
    Value::Array(checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| json!({ "name": name })).collect())
}

fn matrix_value(m: &DenseMatrix, out: OutputOpts) -> Value {
    let mut v = to_value(m);
    if out.pretty {
        let rows: Vec<Vec<String>> = m.to_complex_rows().iter().map(|r| r.iter().map(|z| complex(*z)).collect()).collect();
        v["pretty"] = json!(rows);
    }
    v
}

fn complex([re, im]: [f64; 2]) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{re:.6}{sign}{:.6}i", im.abs())
}

fn gen_matrix(rep: &RepArgs, kind: Kind, j: Option<usize>, out: OutputOpts) -> Outcome {
    let need_j = || j.ok_or_else(|| Failure::Usage("--j is required for this kind".into()));
    let ctx = context(rep)?;
    let m = match kind {
        Kind::Braid => BraidRep::new(ctx)?.generator(need_j()?)?.clone(),
        Kind::BraidInverse => BraidRep::new(ctx)?.inverse(need_j()?)?.clone(),
        Kind::Gamma => gamma(ctx.level(), need_j()?)?,
        Kind::GammaF => gamma_f(ctx.level()),
        Kind::Projector => projector(ctx.level(), rep.parity),
    };
    let mut v = json!({ "n": rep.n, "parity": rep.parity });
    if let Some(j) = j {
        v["j"] = json!(j);
    }
    v["matrix"] = matrix_value(&m, out);
    Ok(v)
}

fn verify(n: usize, parity: Option<Parity>) -> Outcome {
    let parities = parity.map_or(Parity::BOTH.to_vec(), |p| vec![p]);
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for p in parities {
        let r = verify_relations(n, p)?;
        for c in r.failures() {
            failures.push(json!({ "parity": p, "name": c.name, "detail": c.detail }));
        }
        reports.push(to_value(&r));
    }
    let passed = failures.is_empty();
    let v = json!({ "n": n, "passed": passed, "reports": reports });
    if passed { Ok(v) } else { Err(verification(v, Value::Array(failures))) }
}

fn orders_record(n: usize) -> Result<Value, Failure> {
    let mut v = to_value(&group_orders(n)?);
    let ratio = coverage_ratio(n)?;
    v["coverage_ratio"] = json!(ratio.to_string());
    if let Some(r) = ratio.to_f64() {
        v["log10_coverage_ratio"] = json!((r.log10() * 1e9).round() / 1e9);
    }
    Ok(v)
}

fn orders(n: usize, series: bool) -> Outcome {
    if series {
        let rows = (1..=n).map(orders_record).collect::<Result<Vec<_>, _>>()?;
        Ok(json!({ "series": rows }))
    } else {
        orders_record(n)
    }
}

fn summarize<T: GroupElement>(g: &GroupEnumeration<T>, expected: Option<u128>) -> Outcome {
    let mut v = json!({
        "order": g.order(),
        "complete": g.is_complete(),
        "mode": g.mode(),
        "generator_count": g.generators().len(),
    });
    if g.is_complete() {
        v["center_size"] = json!(g.center_of()?.len());
    }
    if let Some(e) = expected {
        v["expected"] = json!(e);
        if g.is_complete() && g.order() as u128 != e {
            let diff = json!([{ "name": "order", "expected": e, "got": g.order() }]);
            return Err(verification(v, diff));
        }
    }
    Ok(v)
}

fn small<T: ToPrimitive>(x: T) -> Option<u128> {
    x.to_u128()
}

fn enumerate_cmd(rep: &RepArgs, group: GroupArg, mode: Mode, cap: usize, heavy: bool) -> Outcome {
    let n = rep.n;
    let mut v = match group {
        GroupArg::Braid => {
            if n >= 3 && !heavy {
                return Err(Failure::Usage("braid image for n ≥ 3 has millions of elements; pass --heavy".into()));
            }
            let ctx = context(rep)?;
            let g = if cap < DEFAULT_CAP {
                let r = BraidRep::new(ctx)?;
                enumerate_partial(ctx.identity(), r.generators(), mode, cap)?
            } else {
                braid_image(&ctx, mode, cap)?
            };
            let full = braid_image_order(n);
            let expected = match mode {
                Mode::Strict => small(full),
                Mode::Projective => small(full / 4u32),
            };
            summarize(&g, expected)?
        }
        GroupArg::Monodromy => summarize(&monodromy_group(n, rep.parity, cap)?, small(pauli_order(n)))?,
        GroupArg::Pauli => summarize(&pauli_matrix_group(n, cap)?, small(pauli_order(n)))?,
        GroupArg::Symplectic => {
            let expected = (n >= 2).then(|| small(ising_clifford::orders::factorial(2 * n as u32 + 2))).flatten();
            summarize(&symplectic_braid_group(n)?, expected.or((n == 1).then_some(6)))?
        }
    };
    let name = match group {
        GroupArg::Braid => "braid",
        GroupArg::Monodromy => "monodromy",
        GroupArg::Pauli => "pauli",
        GroupArg::Symplectic => "symplectic",
    };
    let mut head = Map::new();
    head.insert("group".into(), json!(name));
    head.insert("n".into(), json!(n));
    head.insert("parity".into(), json!(rep.parity));
    if let Value::Object(rest) = v.take() {
        head.extend(rest);
    }
    Ok(Value::Object(head))
}

fn symplectic(n: usize, j: Option<usize>, tilde: bool) -> Outcome {
    let ctx = RepContext::compressed(n, Parity::Positive)?;
    let rep = BraidRep::new(ctx)?;
    let js: Vec<usize> = j.map_or((1..=2 * n + 1).collect(), |j| vec![j]);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let (t, tildes) = if tilde { tilde_basis(n).map(|(t, ts)| (Some(t), ts))? } else { (None, Vec::new()) };
    for &j in &js {
        let s = braid_symplectic(n, j)?;
        let from_unitary = clifford_check(rep.generator(j)?)?.action().map(|a| a.s.clone());
        let matches = from_unitary.as_ref() == Some(&s);
        if !matches {
            failures.push(json!({ "j": j, "expected": s, "got": from_unitary }));
        }
        let mut row = json!({ "j": j, "s": s, "matches_unitary": matches });
        if tilde {
            let computed = tildes[j - 1].to_row_strings();
            let closed = tilde_closed_form(n, j)?.to_row_strings();
            if computed != closed {
                failures.push(json!({ "j": j, "tilde_expected": closed, "tilde_got": computed }));
            }
            row["tilde"] = json!(computed);
        }
        rows.push(row);
    }
    let mut v = json!({ "n": n, "generators": rows });
    if let Some(t) = t {
        v["t"] = json!(t.to_row_strings());
        v["t_self_inverse"] = json!(t.mul(&t) == ising_clifford::BitMatrix::identity(2 * n));
    }
    if failures.is_empty() { Ok(v) } else { Err(verification(v, Value::Array(failures))) }
}

fn census_cmd(n: usize) -> Outcome {
    if n < 2 {
        return Err(Failure::Usage("census needs at least two qubits".into()));
    }
    let mut named = Vec::new();
    for a in 1..=n {
        named.push((format!("h:{a}"), gates::hadamard(n, a)?));
        named.push((format!("p:{a}"), gates::phase(n, a)?));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            named.push((format!("cz:{a},{b}"), gates::cz(n, a, b)?));
            named.push((format!("swap:{a},{b}"), gates::swap(n, a, b)?));
            named.push((format!("cnot:{a},{b}"), gates::cnot(n, a, b)?));
            named.push((format!("cnot:{b},{a}"), gates::cnot(n, b, a)?));
        }
    }
    Ok(to_value(&coset_census(n, &[gates::swap(n, 1, 2)?], &named)?))
}

fn fusion(num_sigma: usize, parity: Option<Parity>, paths: bool) -> Outcome {
    let parities = parity.map_or(Parity::BOTH.to_vec(), |p| vec![p]);
    let mut out = Vec::new();
    for p in parities {
        let mut v = json!({ "parity": p, "count": count_paths(num_sigma, p)? });
        if paths {
            let list = enumerate_paths(num_sigma, p)?
                .iter()
                .map(|path| {
                    let label = FusionLabel::from_path(path)?;
                    Ok(json!({
                        "path": path.to_string(),
                        "channels": label.sigma_string(),
                        "label": label,
                        "index": label.index(),
                    }))
                })
                .collect::<Result<Vec<_>, ising_clifford::Error>>()?;
            v["paths"] = Value::Array(list);
        }
        out.push(v);
    }
    Ok(json!({ "num_sigma": num_sigma, "sectors": out }))
}

fn qubits(args: &str) -> Result<Vec<usize>, Failure> {
    args.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad qubit index {s:?}"))))
        .collect()
}

/// `cz:i,j | swap:i,j | cnot:c,t | h:i | p:i | x:i | z:i | t:i | id`, or a JSON matrix file.
fn parse_target(n: usize, arg: &str) -> Result<DenseMatrix, Failure> {
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")));
    }
    let (name, args) = arg.split_once(':').unwrap_or((arg, ""));
    let q = if args.is_empty() { Vec::new() } else { qubits(args)? };
    let m = match (name, q.as_slice()) {
        ("id", []) => DenseMatrix::identity(1 << n),
        ("cz", [a, b]) => gates::cz(n, *a, *b)?,
        ("swap", [a, b]) => gates::swap(n, *a, *b)?,
        ("cnot", [a, b]) => gates::cnot(n, *a, *b)?,
        ("h", [a]) => gates::hadamard(n, *a)?,
        ("p", [a]) => gates::phase(n, *a)?,
        ("x", [a]) => gates::pauli_x(n, *a)?,
        ("z", [a]) => gates::pauli_z(n, *a)?,
        ("t", [a]) => gates::t_gate(n, *a)?,
        ("cz_swap", [a]) => named_gate(&RepContext::compressed(n, Parity::Positive)?, NamedGate::CzSwapPair(*a))?.1,
        _ => return Err(Failure::Usage(format!("unknown target {arg:?}"))),
    };
    Ok(m)
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, "", v);
    out
}

fn text_into(out: &mut String, prefix: &str, v: &Value) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if m.contains_key("dim") && m.contains_key("entries") => {
            let rows: Vec<Vec<CycScalar>> = serde_json::from_value(m["entries"].clone()).unwrap_or_default();
            out.push_str(&format!("{prefix}: {}x{}\n", m["dim"], m["dim"]));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("  [{}]\n", cells.join(", ")));
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                text_into(out, &key(k), x);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: {}\n", items.join(" ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                text_into(out, &format!("{prefix}[{i}]"), x);
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
