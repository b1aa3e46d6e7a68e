//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::time::{Duration, Instant};

use kscrypt::logic::{
    ball_types, build_partition_logic, enumerate_two_valued_states, find_nondistributive_witness,
    parity_obstruction, ElementSet, OrthoLogic, SetLogic,
};
use kscrypt::protocols::{
    run_bb84_chocolate, run_bb84_quantum, run_ekert_classical_exact, run_ekert_quantum,
    run_ks_protocol, ChshAngles, ChshSetting, ChshSettings, EveStrategy, KsProtocolConfig,
    PairSource, RunOptions, UrnModel,
};
use kscrypt::quantum::{spin32_rotation_probs, RandomSource};
use kscrypt::randomness::{bit_stats, spin32_bits};
use kscrypt::realization::{catalog, contexts_from_rays, search_realization, SearchConfig};
use kscrypt::Execution;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn logic(name: &str) -> OrthoLogic {
    catalog(name).expect("catalog entry").logic
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn state_counts() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("L_AB", 4),
        ("fig3a", 14),
        ("fig3b", 5),
        ("triangle", 4),
        ("cabello18", 0),
        ("peres24", 0),
    ];
    let mut found = Vec::new();
    for (name, want) in expected {
        let n = enumerate_two_valued_states(&logic(name)).len();
        ensure(n == want, format!("{name}: {n} states, expected {want}"))?;
        found.push(format!("{name}={n}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("{} in {elapsed:.2?}", found.join(" ")))
}

/// Partitions with every state renamed to its printed number, as a set of
/// sets of sets so that block and context order do not matter.
fn renumbered(name: &str, printed_states: &[&[usize]]) -> Result<BTreeSet<BTreeSet<BTreeSet<usize>>>, String> {
    let l = logic(name);
    let pl = build_partition_logic(&l).map_err(|e| e.to_string())?;
    let number: Vec<usize> = pl
        .states()
        .iter()
        .map(|s| {
            let atoms: Vec<usize> = s.true_atoms().iter().map(|a| a + 1).collect();
            printed_states
                .iter()
                .position(|p| *p == atoms.as_slice())
                .map(|i| i + 1)
                .ok_or(format!("{name}: state {atoms:?} is not among the printed ones"))
        })
        .collect::<Result<_, _>>()?;
    Ok(pl
        .blocks()
        .iter()
        .map(|ctx| ctx.iter().map(|b| b.iter().map(|&s| number[s]).collect()).collect())
        .collect())
}

fn printed(partitions: &[&[&[usize]]]) -> BTreeSet<BTreeSet<BTreeSet<usize>>> {
    partitions
        .iter()
        .map(|p| p.iter().map(|b| b.iter().copied().collect()).collect())
        .collect()
}

fn partition_logics() -> Outcome {
    for (name, states, partitions) in [
        ("fig3a", &FIG3A_STATES[..], &FIG3A_PARTITIONS[..]),
        ("triangle", &TRIANGLE_STATES[..], &TRIANGLE_PARTITIONS[..]),
    ] {
        ensure(
            renumbered(name, states)? == printed(partitions),
            format!("{name}: partitions differ"),
        )?;
    }
    Ok("fig3a (3 partitions of 14 states) and triangle match".into())
}

fn ball_type_lists() -> Outcome {
    for (name, want) in [
        ("fig3b", &FIG3B_BALLS[..]),
        ("triangle", &TRIANGLE_BALLS[..]),
        ("fig3a", &FIG3A_BALLS[..]),
    ] {
        let pl = build_partition_logic(&logic(name)).map_err(|e| e.to_string())?;
        let got: BTreeSet<String> = ball_types(&pl).iter().map(ToString::to_string).collect();
        let want: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
        ensure(got == want, format!("{name}: got {got:?}"))?;
    }
    Ok("fig3b, triangle and fig3a lists match".into())
}

fn parity_proof() -> Outcome {
    let l = logic("cabello18");
    let all: Vec<usize> = (0..l.context_count()).collect();
    ensure(all.len() == 9, "cabello18 should have 9 contexts")?;
    ensure(
        parity_obstruction(&l, &all).map_err(|e| e.to_string())?,
        "no parity obstruction reported",
    )?;
    let (sub, _) = l.restrict(&all).map_err(|e| e.to_string())?;
    let n = enumerate_two_valued_states(&sub).len();
    let brute = brute_force_state_count(sub.atom_count(), sub.contexts());
    ensure(n == 0 && brute == 0, format!("{n} states by search, {brute} by brute force"))?;
    Ok("odd context count, even atom multiplicities; 0 states (search and brute force)".into())
}

fn context_derivation() -> Outcome {
    let peres = catalog("peres24").unwrap();
    let derived = contexts_from_rays(peres.rays.as_ref().unwrap(), 4).map_err(|e| e.to_string())?;
    ensure(derived.context_count() == 24, format!("peres24: {} contexts", derived.context_count()))?;
    let rays = peres.rays.as_ref().unwrap();
    for ctx in derived.contexts() {
        ensure(ctx.len() == 4, "context of wrong size")?;
        for (i, &a) in ctx.iter().enumerate() {
            for &b in &ctx[i + 1..] {
                let dot: i64 = rays[a].components().iter().zip(rays[b].components()).map(|(x, y)| x * y).sum();
                ensure(dot == 0, format!("peres24: rays {a} and {b} not orthogonal"))?;
            }
        }
    }
    let cab = catalog("cabello18").unwrap();
    let derived = contexts_from_rays(cab.rays.as_ref().unwrap(), 4).map_err(|e| e.to_string())?;
    ensure(derived.context_count() == 9, format!("cabello18: {} contexts", derived.context_count()))?;
    for atom in 0..derived.atom_count() {
        let k = derived.contexts().iter().filter(|c| c.contains(&atom)).count();
        ensure(k == 2, format!("cabello18: ray {atom} in {k} contexts"))?;
    }
    Ok("peres24: 24 orthogonal 4-sets; cabello18: 9 contexts, every ray in 2".into())
}

fn bb84_quantum() -> Outcome {
    let start = Instant::now();
    let (oracle_qber, _) = bb84_intercept_oracle(None);
    let eve = run_bb84_quantum(&RunOptions::new(100_000, 7).with_eve(EveStrategy::InterceptResendRandomBasis))
        .map_err(|e| e.to_string())?
        .stats;
    ensure(within(oracle_qber, 0.25, 1e-12), format!("oracle gives {oracle_qber}"))?;
    ensure(within(eve.qber, 0.25, 0.01), format!("intercept-resend qber {}", eve.qber))?;
    let clean = run_bb84_quantum(&RunOptions::new(100_000, 7)).map_err(|e| e.to_string())?.stats;
    ensure(clean.qber == 0.0, format!("no-Eve qber {}", clean.qber))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!(
        "intercept-resend qber {:.4} (oracle 0.25), no-Eve qber 0, {elapsed:.2?}",
        eve.qber
    ))
}

fn bb84_chocolate() -> Outcome {
    let urn = UrnModel::bb84();
    let clean = run_bb84_chocolate(&urn, &RunOptions::new(100_000, 11)).map_err(|e| e.to_string())?.stats;
    ensure(within(clean.sift_rate(), 0.5, 0.01), format!("sift {}", clean.sift_rate()))?;
    ensure(clean.qber == 0.0, format!("no-Eve qber {}", clean.qber))?;
    let omni = run_bb84_chocolate(
        &urn,
        &RunOptions::new(100_000, 11).with_eve(EveStrategy::OmniscientClassical),
    )
    .map_err(|e| e.to_string())?
    .stats;
    ensure(omni.eve_agreement == 1.0, format!("omniscient agreement {}", omni.eve_agreement))?;
    ensure(omni.qber == 0.0, format!("omniscient qber {}", omni.qber))?;
    Ok(format!(
        "sift {:.4}, qber 0; omniscient Eve agreement 1.0, qber 0",
        clean.sift_rate()
    ))
}

fn ks_protocol() -> Outcome {
    let entry = catalog("cabello18").unwrap();
    let rays: Vec<Vec<i64>> = entry.rays.as_ref().unwrap().iter().map(|r| r.components().to_vec()).collect();
    let family: Vec<usize> = (0..entry.logic.context_count()).collect();
    let (oracle, _) = ks_oracle(&rays, entry.logic.contexts(), &family, false);
    let s = run_ks_protocol(&KsProtocolConfig::cabello18(RunOptions::new(100_000, 13)))
        .map_err(|e| e.to_string())?
        .stats;
    ensure(s.key_mismatches() == 0, format!("{} key mismatches", s.key_mismatches()))?;
    ensure(s.alice_key == s.bob_key, "keys differ")?;
    ensure(within(s.sift_rate(), oracle, 0.01), format!("sift {} vs oracle {oracle}", s.sift_rate()))?;
    Ok(format!(
        "0 mismatches over {} key symbols; sift {:.4} vs oracle {oracle:.4}",
        s.alice_key.len(),
        s.sift_rate()
    ))
}

fn random_setting(rng: &mut RandomSource) -> ChshSetting {
    let sign = |rng: &mut RandomSource| if rng.index(2) == 0 { 1 } else { -1 };
    let signs = vec![sign(rng), sign(rng)];
    ChshSetting::new(rng.index(2), signs).expect("signs are ±1")
}

fn chsh() -> Outcome {
    let source = PairSource::anti_correlated();
    let mut rng = RandomSource::new(17);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let settings = ChshSettings {
            a: random_setting(&mut rng),
            a_prime: random_setting(&mut rng),
            b: random_setting(&mut rng),
            b_prime: random_setting(&mut rng),
        };
        let s = run_ekert_classical_exact(&source, &settings).map_err(|e| e.to_string())?.s;
        worst = worst.max(s.abs());
        ensure(s.abs() <= 2.0 + 1e-12, format!("classical |S| = {}", s.abs()))?;
    }
    let q = run_ekert_quantum(&ChshAngles::optimal(), 100_000, 19, Execution::default());
    ensure(within(q.s.abs(), 2.0 * SQRT_2, 0.03), format!("quantum |S| = {}", q.s.abs()))?;
    Ok(format!("classical max |S| {worst:.3} over 1000 sweeps; quantum |S| {:.4}", q.s.abs()))
}

fn spin32() -> Outcome {
    let got = spin32_rotation_probs(FRAC_PI_2);
    let oracle = spin32_oracle(FRAC_PI_2);
    for k in 0..4 {
        ensure(
            within(got[k], oracle[k], 1e-12),
            format!("outcome {k}: {} vs oracle {}", got[k], oracle[k]),
        )?;
    }
    let printed = [1.0 / 8.0, 3.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0];
    ensure(
        (0..4).all(|k| within(oracle[k], printed[k], 1e-12)),
        format!("oracle {oracle:?}"),
    )?;
    let freq = bit_stats(&spin32_bits(100_000, 23, Execution::default())).frequency;
    ensure(within(freq, 0.5, 0.01), format!("monobit frequency {freq}"))?;
    Ok(format!("(1/8, 3/8, 3/8, 1/8) to 1e-12; grouped bits frequency {freq:.4}"))
}

fn realization_search() -> Outcome {
    let fig3b = search_realization(&logic("fig3b"), &SearchConfig::new(3, 20, 29)).map_err(|e| e.to_string())?;
    ensure(fig3b.found && fig3b.residual < 1e-8, format!("fig3b residual {}", fig3b.residual))?;
    let tri = search_realization(&logic("triangle"), &SearchConfig::new(3, 100, 31)).map_err(|e| e.to_string())?;
    ensure(!tri.found, "triangle realized in dimension 3")?;
    Ok(format!(
        "fig3b residual {:.1e}; triangle not found over 100 restarts (best: residual {:.1e}, closest pair {:.2} deg; not a proof)",
        fig3b.residual,
        tri.residual,
        tri.min_pair_angle.to_degrees()
    ))
}

fn nondistributivity() -> Outcome {
    let set = |v: &[usize]| ElementSet::from_one_based(v, 4).expect("within the carrier");
    let l = SetLogic::from_partitions(4, &[vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]])
        .map_err(|e| e.to_string())?;
    let (a1, b1, b2) = (set(&[1, 2]), set(&[1, 3]), set(&[2, 4]));
    let w = find_nondistributive_witness(&l).ok_or("no witness")?;
    ensure(w == (a1, b1, b2), format!("witness {} {} {}", w.0, w.1, w.2))?;
    let lhs = l.join(b1, b2).and_then(|j| l.meet(a1, j));
    let rhs = match (l.meet(a1, b1), l.meet(a1, b2)) {
        (Some(x), Some(y)) => l.join(x, y),
        _ => None,
    };
    ensure(lhs == Some(a1), format!("a1 ∧ (b1 ∨ b2) = {lhs:?}"))?;
    ensure(rhs == Some(ElementSet::EMPTY), format!("(a1 ∧ b1) ∨ (a1 ∧ b2) = {rhs:?}"))?;
    Ok("(a1, b1, b2): {1,2} vs ∅".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("two-valued state counts", state_counts),
        ("partition logics", partition_logics),
        ("ball types", ball_type_lists),
        ("parity obstruction", parity_proof),
        ("contexts from rays", context_derivation),
        ("BB84 quantum", bb84_quantum),
        ("BB84 chocolate", bb84_chocolate),
        ("KS protocol", ks_protocol),
        ("CHSH", chsh),
        ("spin-3/2 randomness", spin32),
        ("realization search", realization_search),
        ("nondistributivity", nondistributivity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
