//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{
    order_preservation_violations, max_tuple_sum, naive_lr, part, restriction_extension_violations, random_spectrum, spectrum,
    triple_extension_case,
};
use horncone::dvr::Budget;
use horncone::feasibility::check_majorized;
use horncone::horn::{generate_horn_triples, generate_r, subsets, IndexSet, IndexTuple, ListKind};
use horncone::lr::*;
use horncone::minimality::{assemble_system, check_full_independence, witness_is_sound, InequalityTag};
use horncone::scalar::{Rational, Spectrum};
use horncone::sweep::{p_independence_sweep, exact_sequence_sweep, cone_equivalence_sweep};
use horncone::witness::{realize_majorized, verify_necessity, SolverConfig};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const MONTE_CARLO_THRESHOLD: f64 = 1e-8;
const WITNESS_RESIDUAL: f64 = 1e-6;
const WITNESS_SLACK: f64 = -1e-8;
const MAX_UNRESOLVED_FRACTION: f64 = 0.01;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn lr_vs_naive() -> Outcome {
    let mut triples = Vec::new();
    for w in 0..=8 {
        for nu in partitions_of(w) {
            for lam in subpartitions(&nu) {
                for mu in partitions_of(w - lam.weight()) {
                    triples.push((lam.clone(), mu, nu.clone()));
                }
            }
        }
    }
    let mismatches: Vec<String> = triples
        .par_iter()
        .filter(|(l, m, n)| lr_coefficient_uncached(l, m, n) != BigUint::from(naive_lr(l, m, n)))
        .map(|(l, m, n)| format!("{l} {m} {n}"))
        .collect();
    outcome(
        mismatches.is_empty(),
        format!("{} triples, {} mismatches {:?}", triples.len(), mismatches.len(), mismatches.iter().take(3).collect::<Vec<_>>()),
    )
}

fn tuple(lists: &[&[u32]], n: u32) -> IndexTuple {
    IndexTuple::from_lists(lists, n).unwrap()
}

fn fixed_points() -> Outcome {
    let mut failures = Vec::new();
    let one = assemble_system(1, 2, true).unwrap();
    if one.len() != 1 || one[0].tag != InequalityTag::Trace {
        failures.push("n=1 system".to_string());
    }
    let two = assemble_system(2, 2, true).unwrap();
    let chambers = two.iter().filter(|r| matches!(r.tag, InequalityTag::Chamber { .. })).count();
    let mut triples: Vec<(IndexTuple, IndexSet)> = generate_horn_triples(2, 2, true)
        .unwrap()
        .iter()
        .map(|t| (t.tuple.clone(), t.k.clone()))
        .collect();
    triples.sort();
    let k = |e: &[u32]| IndexSet::new(e.to_vec(), 2).unwrap();
    let mut want = vec![
        (tuple(&[&[1], &[1]], 2), k(&[1])),
        (tuple(&[&[2], &[1]], 2), k(&[2])),
        (tuple(&[&[1], &[2]], 2), k(&[2])),
        (tuple(&[&[1, 2], &[1, 2]], 2), k(&[1, 2])),
    ];
    want.sort();
    if two.len() != 7 || chambers != 3 || triples != want {
        failures.push("n=2 seven inequalities".to_string());
    }
    for n in 1..=8u32 {
        for r in 1..=n {
            for i in subsets(r, n) {
                let lam = lambda_of_index_set(&i).padded(r as usize);
                let om = omega_partition(&i).padded(r as usize);
                if (0..r as usize).any(|j| lam[j] + om[r as usize - 1 - j] != n - r) {
                    failures.push(format!("complementarity {i:?}"));
                }
            }
        }
    }
    let boundary = tuple(&[&[2, 4], &[2, 4], &[2, 3]], 4);
    let p = tuple(&[&[2], &[2], &[1]], 2);
    let restricted = boundary.restrict(&p).unwrap();
    if restricted != tuple(&[&[4], &[4], &[2]], 4) || restricted.omega_product().codimension() != Some(2) {
        failures.push("restriction codimension".to_string());
    }
    let second = tuple(&[&[2, 4], &[2, 4], &[1, 4]], 4);
    let extended = second.extend(&p).unwrap();
    if extended != tuple(&[&[2, 3, 4], &[2, 3, 4], &[1, 2, 4]], 4) || extended.omega_product().codimension() != Some(2) {
        failures.push("extension codimension".to_string());
    }
    if !generate_r(2, 4, 3).unwrap().iter().any(|e| e.tuple == boundary) {
        failures.push("codimension-2 tuple not in R_2^4(3)".to_string());
    }
    let point = multi_product(&[part(&[1]), part(&[1]), part(&[1, 1])], BoxBound::new(2, 2)).unwrap();
    if !point.is_point_class() {
        failures.push("σ1·σ1·σ11 in Gr(2,4)".to_string());
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "n=1: 1 row; n=2: 3 chamber + 4 triples; complementarity n<=8; both codimension-2 tuples; R_2^4(3) membership".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn restriction_extension_and_order() -> Outcome {
    let (p_checked, p_bad) = restriction_extension_violations(5, 3);
    let (l_checked, l_bad) = order_preservation_violations(5);
    outcome(
        p_bad == 0 && l_bad == 0,
        format!("restriction/extension: {p_checked} cases, {p_bad} violations; order preservation: {l_checked} cases, {l_bad} violations"),
    )
}

fn monte_carlo() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    let mut configs = 0;
    for n in 1..=5 {
        for m in 1..=3 {
            let seed = (n * 10 + m) as u64;
            let r = verify_necessity(n, m, 1000, seed, MONTE_CARLO_THRESHOLD).unwrap();
            worst = worst.max(r.max_violation);
            violations += r.violations;
            configs += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{configs} configs x 1000 samples, {violations} violations, worst {worst:.2e} (threshold {MONTE_CARLO_THRESHOLD:e})"),
    )
}

fn integer_spectra(n: usize) -> Vec<Spectrum<Rational>> {
    fn rec(n: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (-3..=max).rev() {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 3, &mut Vec::new(), &mut out);
    out.iter().map(|v| spectrum(v)).collect()
}

fn witness_grid() -> Outcome {
    let cfg = SolverConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let pool = integer_spectra(n);
        let mut jobs = Vec::new();
        for a in &pool {
            for b in &pool {
                for g in &pool {
                    jobs.push((a, b, g));
                }
            }
        }
        let results: Vec<(bool, bool, f64, f64, String)> = jobs
            .par_iter()
            .filter_map(|(a, b, g)| {
                let alphas = [(*a).clone(), (*b).clone()];
                if !check_majorized(&alphas, g, true).unwrap().feasible {
                    return None;
                }
                let w = realize_majorized(&alphas, g, &cfg).unwrap();
                Some((
                    w.succeeded(),
                    w.spectral_residual <= WITNESS_RESIDUAL && w.slack_min_eigenvalue >= WITNESS_SLACK,
                    w.spectral_residual,
                    w.slack_min_eigenvalue,
                    format!("{a:?} {b:?} {g:?}"),
                ))
            })
            .collect();
        let feasible = results.len();
        let unresolved: Vec<&String> = results.iter().filter(|r| !r.0).map(|r| &r.4).collect();
        let bad = results.iter().filter(|r| r.0 && !r.1).count();
        let worst_res = results.iter().filter(|r| r.0).map(|r| r.2).fold(0.0, f64::max);
        let worst_slack = results.iter().filter(|r| r.0).map(|r| r.3).fold(0.0, f64::min);
        for u in &unresolved {
            println!("    unresolved n={n}: {u}");
        }
        let fraction = if feasible == 0 { 0.0 } else { unresolved.len() as f64 / feasible as f64 };
        ok &= bad == 0 && fraction <= MAX_UNRESOLVED_FRACTION;
        lines.push(format!(
            "n={n}: {} instances, {feasible} feasible, {} unresolved, {bad} out of tolerance, residual {worst_res:.1e}, slack {worst_slack:.1e}",
            jobs.len(),
            unresolved.len()
        ));
    }
    outcome(ok, lines.join("; "))
}

fn s_r_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut max_bad, mut verdict_bad, mut cases) = (0, 0, 0);
    for n in 1..=4 {
        for m in 1..=3 {
            for _ in 0..500 {
                let a: Vec<_> = (0..m).map(|_| random_spectrum(&mut rng, n, 6)).collect();
                let g = random_spectrum(&mut rng, n, 6 * m as i64);
                if max_tuple_sum(&a, ListKind::S) != max_tuple_sum(&a, ListKind::R) {
                    max_bad += 1;
                }
                if check_majorized(&a, &g, true).unwrap().feasible != check_majorized(&a, &g, false).unwrap().feasible {
                    verdict_bad += 1;
                }
                cases += 1;
            }
        }
    }
    outcome(
        max_bad == 0 && verdict_bad == 0,
        format!("{cases} cases, {max_bad} max mismatches, {verdict_bad} verdict mismatches"),
    )
}

fn cone_equivalences() -> Outcome {
    let s = cone_equivalence_sweep(5, 3, 2).unwrap();
    outcome(s.passed(), format!("{} cases, {} inconsistent {:?}", s.cases, s.failures, s.examples.first()))
}

fn exact_sequences() -> Outcome {
    let b = Budget::default();
    let runs = [
        exact_sequence_sweep(5, 2, &b).unwrap(),
        exact_sequence_sweep(4, 3, &b).unwrap(),
        p_independence_sweep(4, &[2, 3], &b).unwrap(),
    ];
    let detail: Vec<String> = runs
        .iter()
        .map(|s| format!("{}: {} cases, {} failures", s.name, s.cases, s.failures))
        .collect();
    outcome(runs.iter().all(|s| s.passed()), detail.join("; "))
}

fn independence() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        let r = check_full_independence(n, 2).unwrap();
        let sound = r
            .verdicts
            .iter()
            .all(|v| v.witness.as_ref().is_some_and(|w| witness_is_sound(&r.inequalities, v.index, w)));
        ok &= r.all_essential && sound;
        lines.push(format!(
            "n={n}: {} rows {}{}",
            r.inequalities.len(),
            if r.all_essential && sound { "all essential" } else { "NOT all essential" },
            if r.conditional { " (conditional)" } else { "" }
        ));
    }
    let t = spectrum(&[2, 0, -2]);
    let report = check_majorized(&[t.clone(), t.clone()], &t, true).unwrap();
    let only_trace = report.feasible && report.tight.len() == 1 && report.tight[0].r() == 3;
    ok &= only_trace;
    lines.push(format!("(2,0,-2) tight set = trace only: {only_trace}"));
    outcome(ok, lines.join("; "))
}

fn random_partition<R: Rng>(rng: &mut R, max_len: usize, max_part: u32) -> Partition {
    let len = rng.random_range(0..=max_len);
    let mut v: Vec<u32> = (0..len).map(|_| rng.random_range(0..=max_part)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(v).unwrap()
}

fn stripping_and_extension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut strip_cases, mut strip_bad, mut nonzero) = (0, 0, 0);
    while strip_cases < 200 {
        let lam = random_partition(&mut rng, 3, 3);
        let mu = random_partition(&mut rng, 3, 3);
        let total = lam.weight() + mu.weight();
        let head = lam.part(0) + mu.part(0);
        if total > 8 || head == 0 {
            continue;
        }
        let tails: Vec<Partition> = partitions_of(total - head).into_iter().filter(|p| p.part(0) <= head).collect();
        let tail = &tails[rng.random_range(0..tails.len())];
        let mut nu = vec![head];
        nu.extend_from_slice(tail.parts());
        let nu = Partition::new(nu).unwrap();
        let (a, b, c) = strip_first_rows(&lam, &mu, &nu).unwrap();
        let before = lr_coefficient(&lam, &mu, &nu);
        if before != lr_coefficient(&a, &b, &c) || before != BigUint::from(naive_lr(&a, &b, &c)) {
            strip_bad += 1;
        }
        if !before.is_zero() {
            nonzero += 1;
        }
        strip_cases += 1;
    }
    let mut ext_bad = 0;
    for _ in 0..200 {
        let (_, before, after) = triple_extension_case(&mut rng, 5);
        if before != after {
            ext_bad += 1;
        }
    }
    outcome(
        strip_bad == 0 && ext_bad == 0,
        format!("stripping: 200 cases ({nonzero} nonzero), {strip_bad} mismatches; extension: 200 cases, {ext_bad} mismatches"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("LR engine vs naive oracle, weight <= 8", lr_vs_naive),
        ("fixed points", fixed_points),
        ("list restriction/extension and order preservation, n <= 5, m <= 3", restriction_extension_and_order),
        ("Monte Carlo necessity, n <= 5, m <= 3", monte_carlo),
        ("witness grid, n <= 3, entries in [-3,3], m = 2", witness_grid),
        ("S/R max identity and coefficient-1 equivalence", s_r_identity),
        ("partition equivalences, weight <= 5, n <= 3, m = 2", cone_equivalences),
        ("exact-sequence oracles", exact_sequences),
        ("LP independence and boundary triple", independence),
        ("first-row stripping and triple extension", stripping_and_extension),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} {:>2} {name}: {} [{secs:.1}s]",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        if !o.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
