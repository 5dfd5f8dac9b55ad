//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fibrekit::matrix::bareiss_determinant;
use fibrekit::pants::{
    cut_annulus_twists, hopf_deplumbing_obstructed, pants_twist_length, PantsFamilyMember,
};
use fibrekit::scl::{chain_lower, CBoundModel, HeightQuery, RationalBound, height_lower_bound};
use fibrekit::twist_length::{knot_monodromy_obstruction, Obstruction};
use fibrekit::{
    alexander_report, word_action, HomologyClass, IntegerPolynomial, SurfaceSignature, TwistWord,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn random_class(rng: &mut ChaCha8Rng, s: SurfaceSignature, range: i64) -> HomologyClass {
    let coords = (0..s.b1()).map(|_| rng.gen_range(-range..=range)).collect();
    HomologyClass::new(s, coords).unwrap()
}

fn nonzero(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    loop {
        let e = rng.gen_range(-range..=range);
        if e != 0 {
            return e;
        }
    }
}

fn id_minus_det(m: &fibrekit::HomologyMatrix) -> BigInt {
    let n = m.dim();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { BigInt::one() } else { BigInt::zero() };
                    id - m.entry(i, j)
                })
                .collect()
        })
        .collect();
    bareiss_determinant(rows)
}

fn symplectic_invariance() -> Outcome {
    const WORDS: usize = 1000;
    const BUDGET: Duration = Duration::from_secs(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    for i in 0..WORDS {
        let s = SurfaceSignature::new(rng.gen_range(1..=4), 1);
        let len = rng.gen_range(1..=10);
        let pairs: Vec<_> = (0..len)
            .map(|_| (random_class(&mut rng, s, 3), nonzero(&mut rng, 3)))
            .collect();
        let w = TwistWord::from_pairs(s, pairs).unwrap();
        let m = word_action(&w).unwrap();
        ensure!(m.preserves_form(), "word {i}: M^T J M != J");
        ensure!(m.determinant().is_one(), "word {i}: det != 1");
        let p = m.characteristic_polynomial();
        ensure!(p.is_reciprocal(), "word {i}: {p} not reciprocal");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < BUDGET, "took {elapsed:?}, budget {BUDGET:?}");
    Ok(format!("{WORDS} words, 0 failures, {elapsed:.2?}"))
}

fn alexander_instances() -> Outcome {
    let s = SurfaceSignature::new(1, 1);
    let a1 = HomologyClass::a(s, 1).unwrap();
    let b1 = HomologyClass::b(s, 1).unwrap();
    let trefoil =
        alexander_report(&TwistWord::from_pairs(s, [(a1.clone(), 1), (b1.clone(), 1)]).unwrap())
            .unwrap();
    ensure!(trefoil.poly == IntegerPolynomial::from_i64(&[1, -1, 1]), "trefoil {}", trefoil.poly);
    ensure!(trefoil.delta_one.is_one(), "trefoil delta(1) = {}", trefoil.delta_one);
    let eight =
        alexander_report(&TwistWord::from_pairs(s, [(a1, 1), (b1, -1)]).unwrap()).unwrap();
    ensure!(eight.poly == IntegerPolynomial::from_i64(&[1, -3, 1]), "figure-eight {}", eight.poly);
    ensure!(eight.delta_one.abs().is_one(), "figure-eight delta(1) = {}", eight.delta_one);

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    for g in 0..=4 {
        for b in 0..=3 {
            let s = SurfaceSignature::new(g, b);
            if s.b1() == 0 {
                continue;
            }
            for _ in 0..25 {
                let c = random_class(&mut rng, s, 4);
                let e = nonzero(&mut rng, 9);
                let r = alexander_report(&TwistWord::from_pairs(s, [(c, e)]).unwrap()).unwrap();
                ensure!(r.delta_one.is_zero(), "single letter on {s}: delta(1) = {}", r.delta_one);
                count += 1;
            }
        }
    }
    Ok(format!("trefoil and figure-eight exact; {count} single-letter words with delta(1) = 0"))
}

fn twist_length_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut words = 0;
    for g in 1..=2u32 {
        let s = SurfaceSignature::new(g, 1);
        for set in 0..200 {
            let n = rng.gen_range(0..2 * g as usize);
            let classes: Vec<_> = (0..n).map(|_| random_class(&mut rng, s, 2)).collect();
            let Obstruction::Certificate(cert) = knot_monodromy_obstruction(g, &classes).unwrap()
            else {
                return Err(format!("g = {g}, set {set}: no certificate for {n} classes"));
            };
            for _ in 0..100 {
                let len = if cert.classes.is_empty() { 0 } else { rng.gen_range(0..=12) };
                let pairs: Vec<_> = (0..len)
                    .map(|_| {
                        let c = cert.classes[rng.gen_range(0..cert.classes.len())].clone();
                        (c, nonzero(&mut rng, 5))
                    })
                    .collect();
                let w = TwistWord::from_pairs(s, pairs).unwrap();
                let m = word_action(&w).unwrap();
                ensure!(m.apply(&cert.witness) == cert.witness, "g = {g}, set {set}: witness moved");
                ensure!(id_minus_det(&m).is_zero(), "g = {g}, set {set}: det(id - M) != 0");
                ensure!(cert.check(&w).unwrap().passed(), "g = {g}, set {set}: check failed");
                words += 1;
            }
        }
    }
    Ok(format!("400 class sets certified, {words} words fix their witness"))
}

fn pants_family() -> Outcome {
    for n in 0..=100 {
        let tw = pants_twist_length(PantsFamilyMember::new(n).class());
        ensure!(tw == n as u64 + 2, "tw(phi_{n}) = {tw}");
    }
    for n in -1000..=1000i64 {
        ensure!(cut_annulus_twists(n).twists() == [0, n + 1, n - 1], "cut report at n = {n}");
        if n.abs() >= 3 {
            ensure!(hopf_deplumbing_obstructed(n), "n = {n} not obstructed");
        }
    }
    for n in [-2, 0, 2] {
        ensure!(!hopf_deplumbing_obstructed(n), "n = {n} obstructed");
    }
    Ok("tw = n + 2 on [0, 100]; cut twists on [-1000, 1000]; obstruction for 3 <= |n| <= 1000".into())
}

fn height_divergence() -> Outcome {
    const SAMPLES: i64 = 10_000;
    const MAX_N: i64 = 10_000_000;
    const TARGET: u64 = 50;
    const BUDGET: Duration = Duration::from_secs(30);
    let model = CBoundModel::illustrative();
    let start = Instant::now();
    let step = MAX_N / SAMPLES;
    // Alternate signs; |n| increases with the sample index.
    let ns: Vec<i64> = (1..=SAMPLES)
        .map(|i| if i % 2 == 0 { i * step } else { -i * step })
        .collect();
    let mut prev = 0u64;
    let mut reached = vec![false; TARGET as usize + 1];
    for &n in &ns {
        let h = HeightQuery::new(2, n, model.clone()).search();
        ensure!(h >= prev, "h_lb dropped from {prev} to {h} at n = {n}");
        prev = h;
        for k in 0..=h.min(TARGET) {
            reached[k as usize] = true;
        }
    }
    ensure!(reached.iter().all(|&r| r), "some K <= {TARGET} never reached (max {prev})");
    for &n in ns.iter().step_by(1000) {
        let report = height_lower_bound(&HeightQuery::new(2, n, model.clone()));
        report.verify().map_err(|e| format!("n = {n}: {e}"))?;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < BUDGET, "took {elapsed:?}, budget {BUDGET:?}");
    Ok(format!(
        "{SAMPLES} samples up to |n| = {MAX_N}: non-decreasing, max h_lb = {prev}, {elapsed:.2?}"
    ))
}

fn chain_arithmetic() -> Outcome {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let lower = |v| RationalBound::lower(v, "x");
    let zero = lower(q(0, 1));
    let d1 = chain_lower(&[], &zero, &lower(q(1, 48)), 96).map_err(|e| e.to_string())?;
    ensure!(d1.result().value() == &q(1, 1), "k = 0 instance gave {}", d1.result());
    let t = lower(q(1, 48));
    let d2 = chain_lower(&[t.clone(), t], &zero, &lower(q(1, 48)), 480).map_err(|e| e.to_string())?;
    ensure!(d2.result().value() == &q(169, 24), "k = 2 instance gave {}", d2.result());
    for d in [&d1, &d2] {
        d.replay().map_err(|e| e.to_string())?;
    }
    let report = height_lower_bound(&HeightQuery::new(2, 5_000_000, CBoundModel::illustrative()));
    for d in report.derivations() {
        d.replay().map_err(|e| e.to_string())?;
    }
    Ok("1 and 169/24 exact; all derivations replay".into())
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("fibrekit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let classes = dir.join("classes.txt");
    std::fs::write(&classes, "a1 b1 [1,1,0,-1]\n").map_err(|e| e.to_string())?;
    let classes = classes.to_str().unwrap().to_string();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["alexander", "--surface", "2,1", "--word", "a1 b1^-1 a2^3 [1,0,1,-1]^2"],
        vec!["twistlb", "--surface", "2,1", "--classes", &classes],
        vec!["sclbound", "--twists", "1/48,1/66", "--phi0", "1/7", "--genus", "3", "--n", "480"],
        vec!["heightlb", "--n", "0..2000000:100000", "--derivations"],
        vec!["heightlb", "--n", "-300000..300000:50000", "--model", "2/3,-1"],
        vec!["pants", "--n", "-10..10"],
    ];
    let exe = env!("CARGO_BIN_EXE_fibrekit");
    let mut certified = 0;
    for args in &invocations {
        let mut outputs = Vec::new();
        for verify in [false, false, true, true] {
            let mut cmd = Command::new(exe);
            cmd.args(args);
            if verify {
                cmd.arg("--verify");
            }
            let out = cmd.output().map_err(|e| e.to_string())?;
            ensure!(
                out.status.success(),
                "{args:?} (verify = {verify}) exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(out.stdout);
        }
        ensure!(outputs[0] == outputs[1], "{args:?}: outputs differ between runs");
        ensure!(outputs[2] == outputs[3], "{args:?}: verified outputs differ between runs");
        certified += 1;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{certified} invocations byte-identical; --verify passes on each"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 symplectic invariance", symplectic_invariance),
        ("AC2 Alexander instances", alexander_instances),
        ("AC3 twist-length certificates", twist_length_oracle),
        ("AC4 pants family", pants_family),
        ("AC5 height divergence", height_divergence),
        ("AC6 chain arithmetic", chain_arithmetic),
        ("AC7 CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason}");
            }
        }
    }
    println!("{} of {} criteria passed", 7 - failed, 7);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
