//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use weaving_fusion::builtins;
use weaving_fusion::cli::{Outcome, Report};
use weaving_fusion::lifting::{equivalence_check, SANDWICH_TOL};
use weaving_fusion::numerics::operator_norm;
use weaving_fusion::weaving::{
    is_woven, is_woven_riesz, nonzero_spectrum_mismatch, woven_operator, woven_synthesis_matrix, SweepMode,
    WeavingOptions, WeavingPattern,
};

const TRIALS: u64 = 200;
const RIESZ_TRIALS: u64 = 100;
const RECONSTRUCTIONS: u64 = 100;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn every_pattern(size: usize) -> impl Iterator<Item = WeavingPattern> {
    (0..1u64 << size).map(move |m| WeavingPattern::new(size, m).unwrap())
}

fn example1_bounds() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut all_woven = true;
    let mut exhaustive = true;
    for n in [4, 5, 6] {
        let (v, w) = builtins::example1(n).unwrap();
        let (woven, r) = is_woven(&v, &w, &WeavingOptions::default()).unwrap();
        worst = worst
            .max((r.universal_lower - 1.0).abs())
            .max((r.universal_upper - 2.0).abs());
        all_woven &= woven;
        exhaustive &= r.mode == SweepMode::Exhaustive && r.patterns_evaluated == 1 << n;
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-9 && all_woven && exhaustive && elapsed < Duration::from_secs(1),
        format!("max |bound - (1, 2)| = {worst:e}, woven = {all_woven}, exhaustive = {exhaustive}, {elapsed:.2?}"),
    )
}

fn example2_witness() -> Verdict {
    let (v, w) = builtins::example2(3).unwrap();
    let (woven, r) = is_woven(&v, &w, &WeavingOptions::default()).unwrap();
    let w_only = r.argmin_pattern.w_indices();
    // W drawn only at the second index: {2} counting from one
    verdict(
        r.universal_lower <= 1e-12 && !woven && w_only == [1],
        format!(
            "universal_lower = {:e}, woven = {woven}, argmin = {} (W at {:?})",
            r.universal_lower, r.argmin_pattern, w_only
        ),
    )
}

fn lifting_equivalence() -> Verdict {
    let start = Instant::now();
    let mut disagreements = 0;
    let mut worst_margin = f64::INFINITY;
    let mut woven_count = 0;
    for seed in 0..TRIALS {
        let t = common::trial(seed);
        let rep = equivalence_check(&t.v, &t.w, &WeavingOptions::default()).unwrap();
        if rep.woven_fusion != rep.woven_vectors {
            disagreements += 1;
        }
        woven_count += usize::from(rep.woven_fusion);
        worst_margin = worst_margin.min(rep.lower_margin).min(rep.upper_margin);
    }
    let elapsed = start.elapsed();
    verdict(
        disagreements == 0 && worst_margin >= -SANDWICH_TOL && elapsed < Duration::from_secs(30),
        format!(
            "{TRIALS} trials ({woven_count} woven), flag disagreements = {disagreements}, \
             min sandwich margin = {worst_margin:e}, {elapsed:.2?}"
        ),
    )
}

fn lemma_floor() -> Verdict {
    let mut worst_floor = f64::INFINITY;
    let mut worst_sharp: f64 = 0.0;
    for seed in 0..TRIALS {
        let t = common::trial(seed);
        let (_, r) = is_woven(t.v.base(), t.w.base(), &WeavingOptions::default()).unwrap();
        worst_floor = worst_floor.min(r.universal_lower - r.lemma_floor);
        worst_sharp = worst_sharp.max((r.universal_lower - r.alpha).abs());
    }
    verdict(
        worst_floor >= -1e-9 && worst_sharp <= 1e-12,
        format!("min(universal_lower - floor) = {worst_floor:e}, max |universal_lower - alpha| = {worst_sharp:e}"),
    )
}

fn synthesis_norms() -> Verdict {
    let mut worst_identity: f64 = 0.0;
    let mut worst_bound = f64::INFINITY;
    let mut patterns = 0usize;
    for seed in 0..TRIALS {
        let t = common::trial(seed);
        let (v, w) = (t.v.base(), t.w.base());
        let (_, r) = is_woven(v, w, &WeavingOptions::default()).unwrap();
        for p in every_pattern(v.len()) {
            let norm_t = operator_norm(&woven_synthesis_matrix(v, w, &p).unwrap()).unwrap();
            let s = woven_operator(v, w, &p).unwrap();
            let top = *common::oracle_eigenvalues(&s).last().unwrap();
            worst_identity = worst_identity.max((norm_t * norm_t - top).abs());
            worst_bound = worst_bound.min(2.0 * r.universal_upper.sqrt() - norm_t);
            patterns += 1;
        }
    }
    verdict(
        worst_identity <= 1e-9 && worst_bound >= -1e-9,
        format!(
            "{patterns} patterns, max |norm(T)^2 - lambda_max| = {worst_identity:e}, \
             min(2 sqrt(B) - norm(T)) = {worst_bound:e}"
        ),
    )
}

fn riesz_characterization() -> Verdict {
    let opts = WeavingOptions::default();
    let mut ok = true;
    for n in 1..=6 {
        let e = builtins::coordinate_spans(n);
        let (riesz, r) = is_woven_riesz(&e, &e, &opts).unwrap();
        ok &= riesz && (r.universal_lower - 1.0).abs() <= 1e-12 && (r.universal_upper - 1.0).abs() <= 1e-12;
    }
    let orthonormal_ok = ok;
    let mut witness_ok = true;
    for n in [4, 5, 6] {
        let (v, w) = builtins::example1(n).unwrap();
        let (riesz, r) = is_woven_riesz(&v, &w, &opts).unwrap();
        witness_ok &= !riesz
            && r.dimension_witness
                .as_ref()
                .is_some_and(|d| d.column_count > n && d.rank == n);
    }
    let mut rng = common::rng(0x5eed);
    let mut riesz_cases = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..RIESZ_TRIALS {
        let n = rand::Rng::random_range(&mut rng, 1..=7);
        let (v, w) = common::riesz_pair(&mut rng, n);
        let (riesz, _) = is_woven_riesz(&v, &w, &opts).unwrap();
        if riesz {
            riesz_cases += 1;
            for p in every_pattern(v.len()) {
                worst = worst.max(nonzero_spectrum_mismatch(&woven_synthesis_matrix(&v, &w, &p).unwrap()).unwrap());
            }
        }
    }
    verdict(
        orthonormal_ok && witness_ok && riesz_cases > 0 && worst <= 1e-9,
        format!(
            "orthonormal spans = {orthonormal_ok}, dimension witness = {witness_ok}, \
             {riesz_cases}/{RIESZ_TRIALS} random Riesz weavings, max spectrum mismatch = {worst:e}"
        ),
    )
}

fn reconstruction() -> Verdict {
    let mut rng = common::rng(0xf00d);
    let mut worst: f64 = 0.0;
    for _ in 0..RECONSTRUCTIONS {
        let n: usize = rand::Rng::random_range(&mut rng, 1..=12);
        let m = rand::Rng::random_range(&mut rng, n.div_ceil(3)..=8);
        let fam = common::fusion_frame(&mut rng, n, m, (0.5, 2.0));
        let f = common::vector(&mut rng, n);
        let back = fam.reconstruct(&fam.analysis(&f).unwrap()).unwrap();
        worst = worst.max(common::rel_err(&back, &f));
    }
    verdict(
        worst <= 1e-9,
        format!("{RECONSTRUCTIONS} frames, max relative error = {worst:e}"),
    )
}

fn thread_determinism() -> Verdict {
    let mut rng = common::rng(16);
    let n = 6;
    let member = |rng: &mut rand_chacha::ChaCha8Rng| {
        let k = rand::Rng::random_range(rng, 1..=3);
        let vs: Vec<Vec<f64>> = (0..k).map(|_| common::vector(rng, n)).collect();
        serde_json::json!({"weight": rand::Rng::random_range(rng, 0.5..2.0), "spanning_vectors": vs})
    };
    let v: Vec<_> = (0..16).map(|_| member(&mut rng)).collect();
    let w: Vec<_> = (0..16).map(|_| member(&mut rng)).collect();
    let problem = serde_json::json!({"ambient_dim": n, "V": v, "W": w}).to_string();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sixteen.json");
    std::fs::write(&path, problem).unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_fusion-weave"))
            .args(["weave", path.to_str().unwrap(), "--json", "--threads", threads])
            .output()
            .unwrap()
    };
    let one = run("1");
    let max = run("max");
    let codes = (one.status.code(), max.status.code());
    let report = Report::from_json(&String::from_utf8_lossy(&one.stdout)).ok();
    let patterns = match report.as_ref().map(|r| &r.result) {
        Some(Outcome::Weave(r)) => r.patterns_evaluated,
        _ => 0,
    };
    let identical = one.stdout == max.stdout;
    verdict(
        identical && matches!(codes.0, Some(0 | 1)) && codes.0 == codes.1 && patterns == 1 << 16,
        format!(
            "{patterns} patterns, {} JSON bytes, identical = {identical}",
            one.stdout.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "cyclic example: universal bounds (1, 2) for N = 4, 5, 6",
            example1_bounds,
        ),
        (
            "swapped example: not woven, witness W on the second index",
            example2_witness,
        ),
        (
            "lifted local frames weave exactly when the subspaces do",
            lifting_equivalence,
        ),
        ("operator lower bound floor and spectral sharpening", lemma_floor),
        ("synthesis operator norm identities", synthesis_norms),
        ("Riesz weaving characterization", riesz_characterization),
        ("fusion frame reconstruction", reconstruction),
        ("weave JSON identical across thread counts", thread_determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = check();
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, r.detail);
        failures += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
