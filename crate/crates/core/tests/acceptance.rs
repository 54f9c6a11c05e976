//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use beamsched::beamforming::build_codebook;
use beamsched::channel::{generate_channel, noise_power_watts};
use beamsched::harness::{run_experiment, ExperimentSpec, ResultSet};
use beamsched::schedulers::{enumerate_sequences, learning_schedule, lri_update_in_place};
use beamsched::{JointSchedule, Parallelism, Scenario, SchedulerKind, SystemConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, StudentsT};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config(n: usize, m: usize, distance: f64) -> SystemConfig {
    SystemConfig {
        num_aps: n,
        num_ues_per_ap: m,
        inter_cell_distance: distance,
        ..SystemConfig::default()
    }
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Simplex invariant over 10^4 randomized updates.
fn c1_simplex() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let mut worst_sum: f64 = 0.0;
    let mut min_entry = f64::INFINITY;
    let mut calls = 0;
    while calls < 10_000 {
        let len = rng.random_range(1..=120);
        let raw: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let mut p: Vec<f64> = raw.iter().map(|x| x / total).collect();
        for _ in 0..100 {
            let k = rng.random_range(0..len);
            let beta: f64 = rng.random();
            let w = rng.random_range(0.01..0.99);
            lri_update_in_place(&mut p, k, beta, w).map_err(|e| e.to_string())?;
            worst_sum = worst_sum.max((p.iter().sum::<f64>() - 1.0).abs());
            min_entry = min_entry.min(p.iter().cloned().fold(f64::INFINITY, f64::min));
            calls += 1;
        }
    }
    ensure(worst_sum <= 1e-9, || format!("|Σp − 1| reached {worst_sum:e}"))?;
    ensure(min_entry >= 0.0, || format!("negative entry {min_entry:e}"))?;
    Ok(format!("{calls} updates, max |Σp−1| = {worst_sum:.1e}, min p = {min_entry:.1e}"))
}

fn paired_t(a: &[f64], b: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len() as f64;
    let m = mean(&d);
    let sd = (d.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let t = m / (sd / n.sqrt());
    let crit = StudentsT::new(0.0, 1.0, n - 1.0).unwrap().inverse_cdf(0.975);
    (t, crit)
}

/// Exhaustive dominates per trial; greedy ≥ learning > random on average.
fn c2_oracle_dominance() -> Outcome {
    let spec = ExperimentSpec::new(config(2, 3, 400.0), 100).with_seed(0xC2);
    let r = run_experiment(&spec).map_err(|e| e.to_string())?;
    let ex = r.utilities(SchedulerKind::Exhaustive);
    let mut violations = 0;
    for kind in [SchedulerKind::Greedy, SchedulerKind::Learning, SchedulerKind::Random] {
        violations += ex.iter().zip(r.utilities(kind)).filter(|(e, u)| **e < *u).count();
    }
    ensure(violations == 0, || format!("{violations} per-trial violations of exhaustive ≥ other"))?;
    let (g, l, rnd) = (
        r.utilities(SchedulerKind::Greedy),
        r.utilities(SchedulerKind::Learning),
        r.utilities(SchedulerKind::Random),
    );
    let (mg, ml, mr) = (mean(&g), mean(&l), mean(&rnd));
    ensure(mean(&ex) >= mg, || format!("mean exhaustive {} < greedy {mg}", mean(&ex)))?;
    ensure(mg >= ml, || format!("mean greedy {mg} < learning {ml}"))?;
    let (t, crit) = paired_t(&l, &rnd);
    ensure(ml > mr && t > crit, || {
        format!("learning {ml:.4} vs random {mr:.4}: paired t = {t:.3}, critical {crit:.3}")
    })?;
    Ok(format!(
        "means: exhaustive {:.4} ≥ greedy {mg:.4} ≥ learning {ml:.4} > random {mr:.4} (paired t = {t:.2} > {crit:.2}); 0 violations",
        mean(&ex)
    ))
}

/// Evaluation counters are exact on every run.
fn c3_counters() -> Outcome {
    let mut runs = 0;
    for (n, m, trials) in [(2, 3, 10), (2, 5, 3), (3, 3, 3), (1, 4, 3), (2, 1, 2)] {
        let mut c = config(n, m, 400.0);
        c.greedy_iters = 7;
        c.max_learning_iters = 60;
        let r = run_experiment(&ExperimentSpec::new(c.clone(), trials).with_seed(0xC3))
            .map_err(|e| e.to_string())?;
        let fact: u64 = (1..=m as u64).product();
        let expect = [
            (SchedulerKind::Exhaustive, fact.pow(n as u32)),
            (SchedulerKind::Greedy, 7 * n as u64 * fact),
            (SchedulerKind::Learning, 60 * n as u64),
        ];
        for (kind, want) in expect {
            for got in r.evaluations(kind) {
                ensure(got == want, || format!("{kind} N={n} M={m}: {got} ≠ {want}"))?;
                runs += 1;
            }
        }
    }
    // N=10, M=3: exhaustive refused, distributed schedulers counted
    let big = config(10, 3, 400.0);
    let refused = run_experiment(&ExperimentSpec::new(big.clone(), 1));
    ensure(refused.is_err(), || "N=10, M=3 exhaustive was not refused".into())?;
    let r = run_experiment(
        &ExperimentSpec::new(big, 2)
            .with_schedulers(&[SchedulerKind::Greedy, SchedulerKind::Learning]),
    )
    .map_err(|e| e.to_string())?;
    for got in r.evaluations(SchedulerKind::Greedy) {
        ensure(got == 10 * 10 * 6, || format!("greedy N=10: {got}"))?;
        runs += 1;
    }
    for got in r.evaluations(SchedulerKind::Learning) {
        ensure(got == 200 * 10, || format!("learning N=10: {got}"))?;
        runs += 1;
    }
    Ok(format!("{runs} scheduler runs, all counters exact; (3!)^10 refused"))
}

/// Learning converges: max probability > 0.9 within 100 iterations.
fn c4_convergence() -> Outcome {
    let c = SystemConfig {
        learning_weight: 0.15,
        max_learning_iters: 100,
        ..config(2, 5, 400.0)
    };
    let trials = 50;
    let mut converged = 0;
    let mut monotone = 0;
    let mut first_hits = Vec::new();
    for t in 0..trials {
        let sc = Scenario::generate(&c, 0xC4_0000 + t).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(0xC4 ^ t);
        let (_, state) = learning_schedule(&sc, 0.15, 100, &mut rng).map_err(|e| e.to_string())?;
        let mut all_aps = true;
        let mut all_monotone = true;
        for ap in 0..2 {
            let steps: Vec<_> = state.trace.iter().filter(|s| s.ap == ap).collect();
            all_monotone &= steps.windows(2).all(|w| w[1].u_max >= w[0].u_max);
            match steps.iter().find(|s| s.max_probability > 0.9) {
                Some(s) => first_hits.push(s.iteration),
                None => all_aps = false,
            }
        }
        converged += all_aps as usize;
        monotone += all_monotone as usize;
    }
    let frac = converged as f64 / trials as f64;
    ensure(monotone == trials as usize, || format!("u_max decreased in {} trials", trials as usize - monotone))?;
    ensure(frac >= 0.6, || format!("only {converged}/{trials} trials converged"))?;
    first_hits.sort_unstable();
    let median = first_hits.get(first_hits.len() / 2).copied().unwrap_or(0);
    Ok(format!(
        "{converged}/{trials} trials converged (median first iteration with p_max > 0.9: {median}); u_max monotone in all"
    ))
}

/// Learning within 10% of greedy; the gap does not widen at 200 m.
fn c5_near_optimality() -> Outcome {
    let mut gaps = BTreeMap::new();
    let mut detail = Vec::new();
    for distance in [400.0, 200.0] {
        let spec = ExperimentSpec::new(config(2, 3, distance), 200)
            .with_seed(0xC5)
            .with_schedulers(&[SchedulerKind::Greedy, SchedulerKind::Learning]);
        let r = run_experiment(&spec).map_err(|e| e.to_string())?;
        let g = mean(&r.utilities(SchedulerKind::Greedy));
        let l = mean(&r.utilities(SchedulerKind::Learning));
        ensure(l >= 0.9 * g, || format!("{distance} m: learning {l:.4} < 0.9 × greedy {g:.4}"))?;
        gaps.insert(distance as u32, g - l);
        detail.push(format!("{distance} m: greedy {g:.4}, learning {l:.4}"));
    }
    let (g400, g200) = (gaps[&400], gaps[&200]);
    ensure(g200 <= g400 + 0.05, || format!("gap grew: {g200:.4} (200 m) vs {g400:.4} (400 m)"))?;
    Ok(format!("{}; gap 400 m {g400:.4}, 200 m {g200:.4}", detail.join("; ")))
}

/// With one AP every sequence has the same utility.
fn c6_permutation_decoupling() -> Outcome {
    let mut checked = 0;
    for m in 1..=6 {
        let seqs = enumerate_sequences(m).map_err(|e| e.to_string())?;
        for seed in 0..20 {
            let sc = Scenario::generate(&config(1, m, 400.0), seed).map_err(|e| e.to_string())?;
            let values: Vec<f64> = seqs
                .iter()
                .map(|s| sc.cycle_utility(&JointSchedule::new(vec![s.clone()]).unwrap(), 0).unwrap())
                .collect();
            let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - values.iter().cloned().fold(f64::INFINITY, f64::min);
            ensure(spread <= 1e-12, || format!("M={m} seed {seed}: spread {spread:e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} single-AP scenarios (M = 1..6), spread ≤ 1e-12"))
}

/// Noise floor, codebook norms and beam selection against a full scan.
fn c7_physical_layer() -> Outcome {
    let c = SystemConfig::default();
    let noise = noise_power_watts(&c);
    let rel = (noise / 2.0710e-12 - 1.0).abs();
    ensure(rel <= 1e-4, || format!("noise {noise:e} W, relative error {rel:e}"))?;

    let cb = build_codebook(&c);
    let worst_norm = cb
        .entries()
        .iter()
        .map(|v| (v.iter().map(|x| x.norm_sqr()).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    ensure(cb.len() == 16 && worst_norm <= 1e-12, || format!("codebook norm error {worst_norm:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(0xC7);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let h = generate_channel(&mut rng, &c);
        let mut best = (0, f64::NEG_INFINITY);
        for (i, v) in cb.entries().iter().enumerate() {
            let g = v.iter().zip(&h).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr();
            if g > best.1 {
                best = (i, g);
            }
        }
        if cb.select(&h).map_err(|e| e.to_string())? != best.0 {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} beam-selection mismatches"))?;
    Ok(format!(
        "noise {noise:.4e} W (rel err {rel:.1e}); 16 codewords, max norm err {worst_norm:.1e}; 0/1000 selection mismatches"
    ))
}

fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

/// Same seed, same files: repeated parallel runs and a sequential run.
fn c8_determinism() -> Outcome {
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut c = config(2, 4, 400.0);
    c.max_learning_iters = 80;
    let run = |name: &str, mode: Parallelism| -> Result<(ResultSet, BTreeMap<String, Vec<u8>>), String> {
        let mut spec = ExperimentSpec::new(c.clone(), 16).with_seed(0xC8).with_parallelism(mode);
        let dir = root.path().join(name);
        spec.output_dir = Some(dir.clone());
        let r = run_experiment(&spec).map_err(|e| e.to_string())?;
        Ok((r, dir_contents(&dir)))
    };
    let (ra, a) = run("a", Parallelism::Parallel)?;
    let (rb, b) = run("b", Parallelism::Parallel)?;
    let (rs, s) = run("seq", Parallelism::Sequential)?;
    ensure(ra == rb && ra == rs, || "in-memory result sets differ".into())?;
    ensure(a == b, || "files differ between two parallel runs".into())?;
    ensure(a == s, || "files differ between parallel and sequential runs".into())?;
    Ok(format!(
        "{} files bit-identical across 2 parallel runs and 1 sequential run (parallel active: {})",
        a.len(),
        Parallelism::Parallel.is_parallel()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 simplex invariant", c1_simplex),
        ("2 oracle dominance", c2_oracle_dominance),
        ("3 complexity counters", c3_counters),
        ("4 convergence shape", c4_convergence),
        ("5 near-optimality", c5_near_optimality),
        ("6 permutation decoupling", c6_permutation_decoupling),
        ("7 physical-layer point checks", c7_physical_layer),
        ("8 determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
