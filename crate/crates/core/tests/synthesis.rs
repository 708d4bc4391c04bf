use ising_clifford::braid::eval_word;
use ising_clifford::group::{bfs_closure, symplectic_braid_group, GroupElement, Mode};
use ising_clifford::synth::{
    bfs_synthesize, coset_census, factored_synthesize, reachability, reachability_in, synthesize, Obstruction,
    Reachability, SynthOptions, Verdict,
};
use ising_clifford::{clifford_check, gates, BraidWord, CycScalar, DenseMatrix, Parity, RepContext};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn moves(g: usize) -> Vec<(usize, i32)> {
    (1..=g).flat_map(|j| [(j, 1), (j, -1)]).collect()
}

/// All words of length `len` in move order.
fn words(g: usize, len: usize) -> Vec<BraidWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<(usize, i32)>| {
                moves(g).into_iter().map(move |m| {
                    let mut v = w.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|w| BraidWord::new(w).unwrap()).collect()
}

/// First word in (length, move order) reaching the target up to a ζ-power.
fn exhaustive(ctx: &RepContext, target: &DenseMatrix, max: usize) -> Option<BraidWord> {
    (0..=max).find_map(|len| {
        words(ctx.generator_count(), len)
            .into_iter()
            .find(|w| eval_word(ctx, w).unwrap().phase_relative_to(target).is_some())
    })
}

fn realized(ctx: &RepContext, target: &DenseMatrix, verdict: &Verdict) -> bool {
    match verdict {
        Verdict::Realizable { word, phase_power } => {
            eval_word(ctx, word).unwrap() == target.scale(CycScalar::zeta_pow(*phase_power as i64))
        }
        _ => false,
    }
}

#[test]
fn one_qubit_search_is_shortest_and_first() {
    let ctx = RepContext::compressed(1, Parity::Positive).unwrap();
    let opts = SynthOptions::default();
    for len in 0..=4 {
        for w in words(3, len) {
            let target = eval_word(&ctx, &w).unwrap();
            let r = bfs_synthesize(&ctx, &target, &opts).unwrap();
            assert!(realized(&ctx, &target, &r.verdict), "{w}");
            let best = exhaustive(&ctx, &target, len).unwrap();
            assert_eq!(r.word().unwrap(), &best, "target from {w}");
        }
    }
}

#[test]
fn two_qubit_gates_match_exhaustive_search() {
    let ctx = RepContext::compressed(2, Parity::Positive).unwrap();
    let opts = SynthOptions::default();
    for (name, u) in [
        ("cz", gates::cz(2, 1, 2).unwrap()),
        ("p1", gates::phase(2, 1).unwrap()),
        ("p2", gates::phase(2, 2).unwrap()),
    ] {
        let r = bfs_synthesize(&ctx, &u, &opts).unwrap();
        let found = r.word().unwrap();
        let best = exhaustive(&ctx, &u, found.len()).expect(name);
        assert_eq!(r.word().unwrap(), &best, "{name}");
    }
    let cz = bfs_synthesize(&ctx, &gates::cz(2, 1, 2).unwrap(), &opts).unwrap();
    assert_eq!(cz.word().unwrap().to_string(), "1 3 -5");
    assert_eq!(cz.phase_power(), Some(0));
}

#[test]
fn three_qubit_reachability() {
    let n = 3;
    let ctx = RepContext::compressed(n, Parity::Positive).unwrap();
    let group = symplectic_braid_group(n).unwrap();
    assert_eq!(group.order(), 40320);
    // membership cross-checked against a plain breadth-first closure
    let closure = bfs_closure(group.elements()[0].clone(), group.generators(), Mode::Strict, 100_000).unwrap();
    for (name, u, reachable) in [
        ("swap:1,2", gates::swap(n, 1, 2).unwrap(), false),
        ("swap:2,3", gates::swap(n, 2, 3).unwrap(), false),
        ("swap:1,3", gates::swap(n, 1, 3).unwrap(), true),
        ("cz:1,2", gates::cz(n, 1, 2).unwrap(), false),
        ("cz:2,3", gates::cz(n, 2, 3).unwrap(), false),
        ("cz:1,3", gates::cz(n, 1, 3).unwrap(), false),
        ("h:1", gates::hadamard(n, 1).unwrap(), true),
        ("h:2", gates::hadamard(n, 2).unwrap(), false),
        ("p:2", gates::phase(n, 2).unwrap(), true),
    ] {
        let r = reachability_in(&group, &u).unwrap();
        assert_eq!(r.is_reachable(), reachable, "{name}");
        let s = clifford_check(&u).unwrap().action().unwrap().s.clone();
        assert_eq!(closure.contains(&s.key(Mode::Strict)), reachable, "{name}");
        let synth = synthesize(&ctx, &u, &SynthOptions::default()).unwrap();
        assert_eq!(realized(&ctx, &u, &synth.verdict), reachable, "{name}");
    }
    match reachability(&ctx, &gates::swap(n, 1, 2).unwrap()).unwrap() {
        Reachability::Obstruction(Obstruction::SymplecticNotInImage { subgroup_order, symplectic_order }) => {
            assert_eq!((subgroup_order, symplectic_order), (40320, 1451520));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_clifford_targets_carry_a_witness() {
    let ctx = RepContext::compressed(2, Parity::Positive).unwrap();
    let t = gates::t_gate(2, 1).unwrap();
    let r = reachability(&ctx, &t).unwrap();
    assert!(matches!(r, Reachability::Obstruction(Obstruction::NotClifford { .. })));
    let s = synthesize(&ctx, &t, &SynthOptions::default()).unwrap();
    assert!(matches!(s.verdict, Verdict::Unrealizable(Obstruction::NotClifford { .. })));
}

#[test]
fn reachability_json() {
    let ctx = RepContext::compressed(3, Parity::Positive).unwrap();
    let r = reachability(&ctx, &gates::swap(3, 1, 2).unwrap()).unwrap();
    let j = serde_json::to_string(&r).unwrap();
    assert!(j.starts_with(r#"{"verdict":"obstruction""#), "{j}");
}

#[test]
fn census_of_three_qubit_cosets() {
    let n = 3;
    let named = vec![
        ("swap:1,2".to_string(), gates::swap(n, 1, 2).unwrap()),
        ("cz:1,2".to_string(), gates::cz(n, 1, 2).unwrap()),
        ("swap:1,3".to_string(), gates::swap(n, 1, 3).unwrap()),
        ("h:2".to_string(), gates::hadamard(n, 2).unwrap()),
    ];
    let c = coset_census(n, &[gates::swap(n, 1, 2).unwrap()], &named).unwrap();
    assert_eq!(c.group_order, 1_451_520);
    assert_eq!(c.subgroup_order, 40320);
    assert_eq!(c.coset_count, 36);
    let coset = |g: &str| c.entries.iter().find(|e| e.gate == g).unwrap().coset;
    assert_eq!(coset("swap:1,2"), coset("cz:1,2"));
    assert_eq!(coset("swap:1,3"), 0);
    assert_ne!(coset("h:2"), 0);
}

#[derive(Clone, Copy, Debug)]
enum Gate {
    H(usize),
    P(usize),
    Cz,
    Swap,
    Cnot(bool),
    T(usize),
}

fn arb_circuit(allow_t: bool) -> impl Strategy<Value = (usize, Vec<Gate>)> {
    (1usize..=2).prop_flat_map(move |n| {
        let q = 1..=n;
        let gate = if n == 1 {
            prop_oneof![q.clone().prop_map(Gate::H), q.clone().prop_map(Gate::P), q.clone().prop_map(Gate::T)].boxed()
        } else {
            prop_oneof![
                q.clone().prop_map(Gate::H),
                q.clone().prop_map(Gate::P),
                Just(Gate::Cz),
                Just(Gate::Swap),
                prop::bool::ANY.prop_map(Gate::Cnot),
                q.clone().prop_map(Gate::T),
            ]
            .boxed()
        };
        let gate = gate.prop_filter("t gates", move |g| allow_t || !matches!(g, Gate::T(_)));
        (Just(n), prop::collection::vec(gate, 0..6))
    })
}

fn circuit_matrix(n: usize, gs: &[Gate]) -> DenseMatrix {
    gs.iter().fold(DenseMatrix::identity(1 << n), |acc, g| {
        let m = match *g {
            Gate::H(q) => gates::hadamard(n, q),
            Gate::P(q) => gates::phase(n, q),
            Gate::Cz => gates::cz(n, 1, 2),
            Gate::Swap => gates::swap(n, 1, 2),
            Gate::Cnot(up) => if up { gates::cnot(n, 1, 2) } else { gates::cnot(n, 2, 1) },
            Gate::T(q) => gates::t_gate(n, q),
        };
        &acc * &m.unwrap()
    })
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn search_and_membership_agree((n, gs) in arb_circuit(true), pos in prop::bool::ANY) {
        let parity = if pos { Parity::Positive } else { Parity::Negative };
        let ctx = RepContext::compressed(n, parity).unwrap();
        let u = circuit_matrix(n, &gs);
        let reach = reachability(&ctx, &u).unwrap();
        let synth = synthesize(&ctx, &u, &SynthOptions::default()).unwrap();
        prop_assert_eq!(reach.is_reachable(), synth.word().is_some());
        if synth.word().is_some() {
            prop_assert!(realized(&ctx, &u, &synth.verdict));
        }
    }

    #[test]
    fn small_cliffords_are_all_reachable((n, gs) in arb_circuit(false)) {
        let ctx = RepContext::compressed(n, Parity::Positive).unwrap();
        let u = circuit_matrix(n, &gs);
        prop_assert!(reachability(&ctx, &u).unwrap().is_reachable());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn factored_route_reproduces_braid_words(
        letters in prop::collection::vec((1usize..=7, prop::bool::ANY), 0..14),
        pos in prop::bool::ANY,
    ) {
        let parity = if pos { Parity::Positive } else { Parity::Negative };
        let ctx = RepContext::compressed(3, parity).unwrap();
        let w = BraidWord::new(letters.into_iter().map(|(j, p)| (j, if p { 1 } else { -1 })).collect()).unwrap();
        let target = eval_word(&ctx, &w).unwrap();
        let r = factored_synthesize(&ctx, &target).unwrap();
        prop_assert!(realized(&ctx, &target, &r.verdict));
    }
}
