//! Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero on any failure.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use gost_alt::cipher::{validate_spec, CipherParams, CipherSpec, SBoxSet};
use gost_alt::goursat::{compare_with_brute_force, GoursatTriple};
use gost_alt::perm::bsgs::alternating_order;
use gost_alt::perm::{check_nfold_normality, find_block_system, round_group, schreier_sims, SchreierSimsOptions};
use gost_alt::specfile::SpecFile;
use gost_alt::types::{check_corollary_ds, check_not_w_form, type_suite};
use gost_alt::verify::{
    affine_check, block_scan, full_verdict, psl_check, wreath_check, Conclusion, ScanOptions, VerifyOptions,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limit for the parity suite.
const PARITY_LIMIT: Duration = Duration::from_secs(10);
/// Wall-clock limit for one block scan at n = 8.
const SCAN_LIMIT: Duration = Duration::from_secs(300);
const SPECS_PER_WIDTH: usize = 20;
const SEEDS_PER_ROTATION: u64 = 10;
const MIN_CERTIFIED: usize = 3;
const GIANT_BUDGET: usize = 10_000;
const WITNESS_PRIME_RANGE: (usize, usize) = (32_768, 65_534);
const ORACLE_SPECS: u64 = 50;
const TYPE_SAMPLES: usize = 200;
const NORMALITY_SAMPLES: usize = 100;

type Outcome = Result<String, String>;

fn specs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn n8_spec(r: u32, seed: u64) -> CipherSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CipherSpec::random_bijective(CipherParams::new(8, 2, 4, r).unwrap(), &mut rng).unwrap()
}

fn n8_corpus() -> Vec<(u32, u64, CipherSpec)> {
    (2..=6)
        .flat_map(|r| (0..SEEDS_PER_ROTATION).map(move |seed| (r, seed, n8_spec(r, seed))))
        .collect()
}

fn parity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157);
    let mut odd = Vec::new();
    let mut total = 0;
    for (n, m, delta) in [(2, 2, 1), (3, 3, 1), (4, 2, 2), (8, 2, 4)] {
        for i in 0..SPECS_PER_WIDTH {
            let r = rng.gen_range(0..n);
            let spec = CipherSpec::random_bijective(CipherParams::new(n, m, delta, r).unwrap(), &mut rng).unwrap();
            let group = round_group(&spec).unwrap();
            if group.generators().iter().any(|g| g.sign() != 1) {
                odd.push(format!("n={n}#{i}"));
            }
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        odd.is_empty() && elapsed < PARITY_LIMIT,
        format!(
            "{total} specs, odd generators {odd:?}, {:.2}s (limit 10s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn primitivity() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let corpus = n8_corpus();
    for (r, seed, spec) in &corpus {
        let start = Instant::now();
        let rep = block_scan(spec, &ScanOptions::default()).unwrap();
        slowest = slowest.max(start.elapsed());
        if !rep.candidates.is_empty() || rep.routes_agree != Some(true) {
            bad.push(format!("r={r} seed={seed}"));
        }
    }
    check(
        bad.is_empty() && slowest < SCAN_LIMIT,
        format!(
            "{} instances at n=8, nonempty scans {bad:?}, slowest {:.3}s (limit 300s)",
            corpus.len(),
            slowest.as_secs_f64()
        ),
    )
}

fn alt_certification() -> Outcome {
    let opts = VerifyOptions {
        seed: 0,
        budget: GIANT_BUDGET,
        ..VerifyOptions::default()
    };
    let mut certified = 0;
    let mut out_of_range = Vec::new();
    let mut pinned = Vec::new();
    for (r, seed, spec) in n8_corpus() {
        let v = full_verdict(&spec, &opts).unwrap();
        if v.conclusion == Conclusion::AltCertified {
            certified += 1;
            let w = v
                .giant
                .as_ref()
                .and_then(|g| g.witness())
                .expect("certified implies a witness");
            if !(WITNESS_PRIME_RANGE.0 < w.prime && w.prime < WITNESS_PRIME_RANGE.1) {
                out_of_range.push(w.prime);
            }
            if pinned.len() < MIN_CERTIFIED {
                pinned.push(format!("r={r}/seed={seed}/p={}/trial={}", w.prime, w.trial));
            }
        }
    }
    check(
        certified >= MIN_CERTIFIED && out_of_range.is_empty(),
        format!(
            "{certified}/50 AltCertified (need 3), primes outside (32768, 65534): {out_of_range:?}, first {}",
            pinned.join(" ")
        ),
    )
}

fn cli_exit(spec: &str) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_gost-alt"))
        .args(["verdict", "--spec"])
        .arg(specs_dir().join(spec))
        .output()
        .ok()?
        .status
        .code()
}

fn negative_control() -> Outcome {
    let mut missing = Vec::new();
    for n in [4u32, 8] {
        let spec = CipherSpec::identity(CipherParams::new(n, 2, n / 2, 0).unwrap()).unwrap();
        let rep = block_scan(&spec, &ScanOptions::default()).unwrap();
        for q in 1..n {
            let d = GoursatTriple::new(n, q, q, q, q, 1).unwrap();
            if !rep.certified().any(|c| c.triple == d) {
                missing.push(format!("n={n} q={q}"));
            }
        }
    }
    let spec4 = CipherSpec::identity(CipherParams::new(4, 2, 2, 0).unwrap()).unwrap();
    let generic = find_block_system(&round_group(&spec4).unwrap()).unwrap();
    let codes = (cli_exit("identity-n4.toml"), cli_exit("identity-n8.toml"));
    check(
        missing.is_empty() && generic.as_ref().is_some_and(|b| !b.is_trivial()) && codes == (Some(2), Some(2)),
        format!(
            "missing blocks {missing:?}, generic block size {:?}, exit codes {codes:?}",
            generic.map(|b| b.block_size())
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut disagree = Vec::new();
    let mut alt = 0;
    let mut imprimitive = 0;
    let mut bad_order = Vec::new();
    let alt256 = alternating_order(256);
    for seed in 0..ORACLE_SPECS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let r = rng.gen_range(0..4);
        let sboxes = if seed % 2 == 0 {
            SBoxSet::random_bijective(2, 2, &mut rng).unwrap()
        } else {
            SBoxSet::random_non_bijective(2, 2, &mut rng).unwrap()
        };
        let spec = CipherSpec::new(CipherParams::new(4, 2, 2, r).unwrap(), sboxes).unwrap();
        let group = round_group(&spec).unwrap();
        let rep = block_scan(&spec, &ScanOptions::default()).unwrap();
        let scan_primitive = group.is_transitive() && !rep.imprimitive();
        let generic_primitive = find_block_system(&group).unwrap().is_none();
        if scan_primitive != generic_primitive {
            disagree.push(seed);
        }
        if !scan_primitive {
            imprimitive += 1;
        }
        let order = schreier_sims(
            &group,
            &SchreierSimsOptions {
                seed,
                ..Default::default()
            },
        )
        .unwrap()
        .order();
        if order.is_zero() || !(&alt256 % &order).is_zero() {
            bad_order.push(seed);
        }
        if order == alt256 {
            alt += 1;
        }
    }
    check(
        disagree.is_empty() && bad_order.is_empty(),
        format!(
            "50 specs at degree 256, disagreements {disagree:?}, imprimitive {imprimitive}, \
             order = |Alt(256)| for {alt}, orders not dividing |Alt(256)| {bad_order:?}"
        ),
    )
}

fn type_calculus() -> Outcome {
    let shapes = [
        (4, 2, 2),
        (6, 2, 3),
        (6, 3, 2),
        (8, 2, 4),
        (8, 4, 2),
        (9, 3, 3),
        (10, 2, 5),
        (12, 2, 6),
        (12, 3, 4),
        (12, 4, 3),
    ];
    let mut suite_violations = 0;
    let mut checks = 0;
    let mut conforming_violations = Vec::new();
    let mut control_clean = Vec::new();
    let mut conforming_specs = 0;
    for (i, &(n, m, delta)) in shapes.iter().enumerate() {
        let params = CipherParams::new(n, m, delta, 0).unwrap();
        let c = type_suite(&params, TYPE_SAMPLES, i as u64).unwrap();
        checks += c.xor_checks + c.boxplus_checks + c.bricklayer_checks;
        suite_violations += c.xor_violations + c.boxplus_violations + c.bricklayer_violations;
        let mut rng = ChaCha8Rng::seed_from_u64(77 + i as u64);
        for r in m..=(delta - 1) * m {
            let spec = CipherSpec::random_bijective(CipherParams::new(n, m, delta, r).unwrap(), &mut rng).unwrap();
            conforming_specs += 1;
            let v = check_not_w_form(&spec).unwrap().len() + check_corollary_ds(&spec).unwrap().len();
            if v > 0 {
                conforming_violations.push(format!("({n},{m},{delta}) r={r}: {v}"));
            }
        }
        let control = CipherSpec::identity(params).unwrap();
        if check_not_w_form(&control).unwrap().is_empty() || check_corollary_ds(&control).unwrap().is_empty() {
            control_clean.push(format!("({n},{m},{delta})"));
        }
    }
    check(
        suite_violations == 0 && conforming_violations.is_empty() && control_clean.is_empty(),
        format!(
            "{checks} translation/bricklayer checks with {suite_violations} violations; \
             {conforming_specs} conforming specs with violations {conforming_violations:?}; \
             controls without violations {control_clean:?}"
        ),
    )
}

fn goursat() -> Outcome {
    let cs: Vec<_> = (1..=3).map(|n| compare_with_brute_force(n).unwrap()).collect();
    let counts: Vec<usize> = cs.iter().map(|c| c.enumerated).collect();
    check(
        cs.iter().all(|c| c.equal) && counts[0] == 5,
        format!(
            "n=1..3 counts {counts:?}, equal to brute force {:?}",
            cs.iter().map(|c| c.equal).collect::<Vec<_>>()
        ),
    )
}

fn case_arithmetic() -> Outcome {
    let affine_bad: Vec<u32> = (2..=64)
        .filter(|&n| affine_check(n).unwrap().excluded != (n >= 6))
        .collect();
    let psl_bad: Vec<u32> = (2..=64)
        .filter(|&n| {
            let p = psl_check(n).unwrap();
            !(p.excluded && p.gcd == 1)
        })
        .collect();
    let mut corpus: Vec<CipherSpec> = n8_corpus().into_iter().map(|(_, _, s)| s).collect();
    for f in ["conforming-n8.toml", "conforming-n4.toml"] {
        corpus.push(SpecFile::load(specs_dir().join(f)).unwrap().cipher().unwrap());
    }
    let wreath_bad = corpus
        .iter()
        .filter(|s| {
            let v = validate_spec(s.params(), Some(s.sboxes())).unwrap();
            v.conforming && v.all_bijective() == Some(true) && !wreath_check(s).excluded
        })
        .count();
    check(
        affine_bad.is_empty() && psl_bad.is_empty() && wreath_bad == 0,
        format!(
            "affine mismatches {affine_bad:?}, psl failures {psl_bad:?}, wreath not excluded on {wreath_bad} of {} \
             corpus specs",
            corpus.len()
        ),
    )
}

fn normality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let spec = CipherSpec::random_bijective(CipherParams::new(4, 2, 2, 2).unwrap(), &mut rng).unwrap();
    let group = round_group(&spec).unwrap();
    let mut failures = Vec::new();
    for rounds in [2, 4, 8] {
        let rep = check_nfold_normality(&group, rounds, NORMALITY_SAMPLES, rounds as u64).unwrap();
        failures.push(rep.failures);
    }
    check(
        failures.iter().all(|&f| f == 0),
        format!("N=2,4,8 with 100 samples each, failures {failures:?}"),
    )
}

fn cli_stdout(args: &[&str], spec: &str) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_gost-alt"))
        .args(args)
        .arg("--spec")
        .arg(specs_dir().join(spec))
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn reproducibility() -> Outcome {
    let fixtures = [
        "conforming-n8.toml",
        "conforming-n4.toml",
        "identity-n8.toml",
        "identity-n4.toml",
        "last-bit-n8.toml",
    ];
    let commands: [&[&str]; 4] = [
        &["verdict", "--seed", "0"],
        &["verdict", "--seed", "0", "--format", "json"],
        &["scan-blocks"],
        &["types", "--seed", "3"],
    ];
    let mut differing = Vec::new();
    let mut runs = 0;
    for f in fixtures {
        for args in commands {
            let a = cli_stdout(args, f);
            let b = cli_stdout(args, f);
            runs += 1;
            if a != b || a.1.is_empty() {
                differing.push(format!("{f} {}", args.join(" ")));
            }
        }
    }
    check(
        differing.is_empty(),
        format!("{runs} reruns, differing bodies {differing:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("parity", parity),
        ("primitivity-n8", primitivity),
        ("alt-certification", alt_certification),
        ("negative-control", negative_control),
        ("oracle-equivalence-256", oracle_equivalence),
        ("type-calculus", type_calculus),
        ("goursat-brute-force", goursat),
        ("case-arithmetic", case_arithmetic),
        ("normality", normality),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
