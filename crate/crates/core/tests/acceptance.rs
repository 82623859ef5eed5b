//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polmod::embedding::{
    build_embedding, detect_ideal, verify_certificate, BuildConfig, EmbeddingCertificate, SequenceModule,
};
use polmod::l1::{factorial, kernel_membership, l1_norm, quotient_map, L1Vector, SequenceWeights};
use polmod::norm::{build_ball, check_norm_axioms, quotient_norm, NormBall, RingNorm, TermNorm};
use polmod::pid::{annihilator, factor_ideal, PidIdeal};
use polmod::ring::{EuclideanDomain, Integers, Poly, PolyGf, Presentation, PrincipalIdealRing, Rationals, Ring, Zmod};
use polmod::witnesses::{erdos_escape_witness, independence_check, RankField, RationalEnumeration};

/// Pinned limits.
const C1_LIMIT: Duration = Duration::from_secs(60);
const C2_LIMIT: Duration = Duration::from_secs(120);
const C7_LIMIT: Duration = Duration::from_secs(300);
const L1_SAMPLES: usize = 10_000;
const ESCAPE_INSTANCES: usize = 100;
const DETERMINISM_RUNS: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(t)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ball_matches_brute_force<R: Ring, E: Clone + Eq + std::hash::Hash + std::fmt::Debug>(
    presentation: &Presentation<R>,
    brute: &HashMap<E, u64>,
    n: u64,
    to_plain: impl Fn(&R::Elem) -> E,
) -> Result<usize, String> {
    let ring = presentation.ring();
    let ball = build_ball(presentation, n);
    ensure(ball.len() == brute.len(), || format!("ball has {} elements, brute force {}", ball.len(), brute.len()))?;
    for (r, entry) in ball.elements() {
        let plain = to_plain(r);
        ensure(brute.get(&plain) == Some(&entry.norm), || {
            format!("{plain:?}: ball norm {}, brute force {:?}", entry.norm, brute.get(&plain))
        })?;
        ensure(entry.witness.evaluate(ring) == *r, || format!("witness of {plain:?} evaluates elsewhere"))?;
        ensure(entry.witness.weight(presentation) == entry.norm, || format!("witness of {plain:?} has the wrong weight"))?;
    }
    Ok(ball.len())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let n = 8;
    let z = Presentation::new(Integers);
    let brute = common::brute_force_norms(&common::integer_atoms(n), 0i64, |a, b| a + b, |a, b| a * b, n);
    let z_size = ball_matches_brute_force(&z, &brute, n, |r| r.to_i64().unwrap())?;
    let z6 = Presentation::new(Zmod::new(6).unwrap());
    let brute6 = common::brute_force_norms(&common::zmod_atoms(6, n), 0u64, |a, b| (a + b) % 6, |a, b| a * b % 6, n);
    let z6_size = ball_matches_brute_force(&z6, &brute6, n, |r| *r)?;
    let t = within(C1_LIMIT, start)?;
    Ok(format!("Z: {z_size} elements, Z/6: {z6_size} elements agree; {t:.1?}"))
}

fn axioms<R: Ring>(ring: R) -> Result<String, String> {
    let norm = TermNorm::new(Presentation::new(ring), 64);
    let report = check_norm_axioms(&norm, 8).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{}: {:?}", report.ring, report.violations.first()))?;
    Ok(format!("{} {} pairs", report.ring, report.pairs))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let parts = [axioms(Integers)?, axioms(Zmod::new(6).unwrap())?, axioms(PolyGf::new(2).unwrap())?];
    let t = within(C2_LIMIT, start)?;
    Ok(format!("zero violations ({}); {t:.1?}", parts.join(", ")))
}

fn criterion_3() -> Outcome {
    let p = Presentation::new(Integers);
    let balls: Vec<NormBall<Integers>> = (0..=12).map(|n| build_ball(&p, n)).collect();
    let sizes: Vec<usize> = balls.iter().map(NormBall::len).collect();
    ensure(sizes.windows(2).all(|w| w[0] <= w[1]), || format!("sizes decrease: {sizes:?}"))?;
    for (n, ball) in balls.iter().enumerate() {
        for (r, entry) in ball.elements() {
            let j = entry.norm as usize;
            ensure(j <= n, || format!("{r} has norm {j} in ball({n})"))?;
            ensure(balls[j].level(entry.norm).contains(r), || format!("{r} missing from level {j}"))?;
            ensure(j == 0 || !balls[j - 1].contains(r), || format!("{r} already in ball({})", j - 1))?;
        }
    }
    Ok(format!("|ball(n)| for n = 0..12: {sizes:?}"))
}

fn criterion_4() -> Outcome {
    let p = Presentation::new(Integers);
    let ball12 = build_ball(&p, 12);
    let ball10 = build_ball(&p, 10);
    let mut cases = 0;
    for m in 0..=10i64 {
        let ideal = PidIdeal::new(Integers, big(m));
        for (r, _) in ball10.elements() {
            let r = r.to_i64().unwrap();
            let brute = ball12
                .elements()
                .filter(|(s, _)| {
                    let d = s.to_i64().unwrap() - r;
                    if m == 0 { d == 0 } else { d % m == 0 }
                })
                .map(|(_, e)| e.norm)
                .min();
            let got = quotient_norm(&p, &ideal, &big(r), 12).ok();
            ensure(got == brute, || format!("m = {m}, r = {r}: quotient_norm {got:?}, brute force {brute:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (m, r) pairs agree"))
}

fn random_int_vector(rng: &mut ChaCha8Rng) -> L1Vector<Integers> {
    let mut entries = Vec::new();
    for k in 0..8 {
        if rng.gen_bool(0.5) {
            entries.push((k, big(rng.gen_range(-6..=6))));
        }
    }
    L1Vector::from_entries(Integers, entries).unwrap()
}

fn criterion_5() -> Outcome {
    let norm = TermNorm::new(Presentation::new(Integers), 64);
    let w = SequenceWeights::Factorial;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..L1_SAMPLES {
        let u = random_int_vector(&mut rng);
        let v = random_int_vector(&mut rng);
        let s = big(rng.gen_range(-6..=6));
        let (nu, nv) = (l1_norm(&u, &norm, &w).unwrap(), l1_norm(&v, &norm, &w).unwrap());
        let sum = l1_norm(&u.add(&v).unwrap(), &norm, &w).unwrap();
        ensure(sum <= &nu + &nv, || format!("triangle: {:?} + {:?}", u.to_json(), v.to_json()))?;
        let scaled = l1_norm(&v.scale(&s), &norm, &w).unwrap();
        let ns = BigRational::from_integer(big(norm.norm(&s).unwrap() as i64));
        ensure(scaled <= ns * &nv, || format!("scaling: {s} · {:?}", v.to_json()))?;
    }
    let entries: Vec<i64> = (-5..=5).collect();
    ensure(build_ball(&Presentation::new(Integers), 6).len() == entries.len(), || "ball(6) is not [-5, 5]".into())?;
    let mut vectors = 0;
    for m in [2i64, 3] {
        let ideal = PidIdeal::new(Integers, big(m));
        for code in 0..entries.len().pow(4) {
            let coords: Vec<i64> = (0..4).map(|k| entries[code / entries.len().pow(k) % entries.len()]).collect();
            let v = L1Vector::from_entries(Integers, coords.iter().enumerate().map(|(k, &c)| (k, big(c)))).unwrap();
            let expected = coords.iter().all(|c| c % m == 0);
            let image = quotient_map(&v, &ideal).unwrap();
            ensure(image.is_zero() == expected && kernel_membership(&v, &ideal) == expected, || {
                format!("kernel mismatch for {coords:?} modulo {m}")
            })?;
            vectors += 1;
        }
    }
    Ok(format!("{L1_SAMPLES} random pairs, {vectors} kernel vectors, zero violations"))
}

fn criterion_6() -> Outcome {
    for n in [0i64, 1] {
        ensure(factor_ideal(&PidIdeal::new(Integers, big(n))).is_err(), || format!("({n}) factored"))?;
    }
    for n in 2..=1000u64 {
        let f = factor_ideal(&PidIdeal::new(Integers, BigInt::from(n))).map_err(|e| format!("({n}): {e}"))?;
        let p = f.prime().generator().to_u64().unwrap();
        let s = f.cofactor().to_u64().unwrap();
        ensure(p * s == n && p == common::smallest_prime_factor(n), || format!("({n}) = ({p})·{s}"))?;
    }
    let f2 = PolyGf::new(2).unwrap();
    let mut polys = 0;
    for d in 1..=6 {
        for mask in (1u64 << d)..(1u64 << (d + 1)) {
            let g = Poly::from_coeffs(common::f2::coeffs(mask));
            let f = factor_ideal(&PidIdeal::new(f2, g)).map_err(|e| format!("{mask:b}: {e}"))?;
            let p = common::f2::from_coeffs(f.prime().generator().coeffs());
            let s = common::f2::from_coeffs(f.cofactor().coeffs());
            ensure(common::f2::mul(p, s) == mask, || format!("{mask:b} ≠ {p:b} · {s:b}"))?;
            ensure(common::f2::is_irreducible(p), || format!("{p:b} is reducible"))?;
            let smaller = (2u64..p).find(|&q| {
                common::f2::degree(q) < common::f2::degree(p) && common::f2::is_irreducible(q) && common::f2::rem(mask, q) == 0
            });
            ensure(smaller.is_none(), || format!("{mask:b} has a lower-degree prime factor {smaller:?}"))?;
            polys += 1;
        }
    }
    let mut vectors = 0;
    for p in [2u64, 3, 5] {
        let q = Integers.quotient_by(&BigInt::from(p)).unwrap();
        let expected = PidIdeal::new(Integers, BigInt::from(p));
        for code in 1..p.pow(5) {
            let entries = (0..5u32).map(|k| (k as usize, code / p.pow(k) % p));
            let v = L1Vector::from_entries(q, entries).unwrap();
            let ann = annihilator(&Integers, &v);
            ensure(ann == expected, || format!("annihilator of {:?} is {ann}", v.to_json()))?;
            vectors += 1;
        }
    }
    Ok(format!("999 integer ideals, {polys} monic F2[x] polynomials, {vectors} annihilators"))
}

fn build_case<R: PrincipalIdealRing>(ring: R, config_json: &str, expected_ideal: &str) -> Result<String, String> {
    let config: BuildConfig = serde_json::from_str(config_json).map_err(|e| e.to_string())?;
    let module = SequenceModule::new(ring, config.module.clone(), config.submodule.clone()).map_err(|e| e.to_string())?;
    let name = module.ring().descriptor().to_string();
    let detected = detect_ideal(&module, config.depth()).map_err(|e| format!("{name}: {e}"))?;
    ensure(detected.ideal.to_string() == expected_ideal, || format!("{name}: detected {}", detected.ideal))?;
    let cert = build_embedding(&module, &config).map_err(|e| format!("{name}: {e}"))?;
    ensure(cert.generators.len() == 5, || format!("{name}: {} generators", cert.generators.len()))?;
    let report = verify_certificate(&module, &cert).map_err(|e| format!("{name}: {e}"))?;
    ensure(report.passed(), || format!("{name}: {report}"))?;
    let mut caught = 0;
    for k in 0..cert.generators.len() {
        let mut bad = cert.clone();
        bad.epsilons[k] = &bad.epsilons[k] * BigRational::new(big(3), big(2));
        caught += tamper_caught(&module, &bad, &format!("{name}: ε_{k}"))?;
        let mut bad = cert.clone();
        let (j, c) = {
            let (j, c) = cert.generators[k].entries().next().unwrap();
            (j, c.clone())
        };
        bad.generators[k] = L1Vector::unit(module.ring().clone(), j + 1, c);
        caught += tamper_caught(&module, &bad, &format!("{name}: m_{k}"))?;
    }
    Ok(format!("{name}: I = {}, {} tuples replayed, {caught}/10 tamperings caught", cert.ideal, report.tuples))
}

fn tamper_caught<R: PrincipalIdealRing>(
    module: &SequenceModule<R>,
    cert: &EmbeddingCertificate<R>,
    what: &str,
) -> Result<usize, String> {
    let report = verify_certificate(module, cert).map_err(|e| format!("{what}: {e}"))?;
    ensure(!report.passed(), || format!("tampered {what} verifies"))?;
    Ok(1)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let parts = [
        build_case(
            Zmod::prime_field(2).unwrap(),
            r#"{"module": {"ring": {"GF": 2}, "norm": "discrete"}, "submodule": "zero",
                "steps": 5, "scan_bound": 2, "verify_bound": 3}"#,
            "(0)",
        )?,
        build_case(
            Integers,
            r#"{"module": {"ring": "Z"}, "submodule": {"l1_ideal": "2"},
                "steps": 5, "scan_bound": 2, "verify_bound": 3}"#,
            "(2)",
        )?,
        build_case(
            Rationals,
            r#"{"module": {"ring": "Q", "weights": {"scale": 2}}, "submodule": "zero",
                "steps": 5, "scan_bound": 2, "verify_bound": 3}"#,
            "(0)",
        )?,
    ];
    let t = within(C7_LIMIT, start)?;
    Ok(format!("{}; {t:.1?}", parts.join("; ")))
}

fn criterion_8() -> Outcome {
    let params: Vec<BigRational> = (1..=15).map(|k| BigRational::new(big(k), big(16))).collect();
    let mut subsets = 0;
    for mask in 0u32..1 << 15 {
        if mask.count_ones() != 5 {
            continue;
        }
        let chosen: Vec<BigRational> = (0..15).filter(|i| mask >> i & 1 == 1).map(|i| params[i].clone()).collect();
        let cert = independence_check(&chosen, 128, RationalEnumeration::Height, RankField::Rationals)
            .map_err(|e| format!("{chosen:?}: {e}"))?;
        ensure(cert.rank == 5, || format!("rank {} for {:?}", cert.rank, cert.params))?;
        subsets += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let norm = TermNorm::new(Presentation::new(Integers), 256);
    for _ in 0..ESCAPE_INSTANCES {
        let n = rng.gen_range(0..=4usize);
        let prefix: Vec<BigInt> = (0..n).map(|_| big(rng.gen_range(-20..=20))).collect();
        let q = rng.gen_range(1..=8i64);
        let eps = BigRational::new(big(rng.gen_range(0..=3 * q)), big(q));
        let (r, w) = erdos_escape_witness(&norm, &prefix, &eps).map_err(|e| e.to_string())?;
        let fresh = TermNorm::new(Presentation::new(Integers), 256);
        let value = BigRational::from_integer(big(fresh.norm(&r).unwrap() as i64));
        let threshold = &eps * factorial(n);
        ensure(value > threshold && w.threshold == threshold, || format!("|{r}| = {value} ≤ {n}!·{eps}"))?;
        ensure(w.extended_norm > eps && !w.extended_norm.is_negative(), || format!("extended norm {}", w.extended_norm))?;
    }
    Ok(format!("{subsets} subsets have rank 5; {ESCAPE_INSTANCES} escape witnesses re-verified"))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("f2.json");
    std::fs::write(
        &config,
        r#"{"module": {"ring": {"GF": 2}, "norm": "discrete"}, "submodule": "zero", "steps": 5, "scan_bound": 2, "verify_bound": 3}"#,
    )
    .map_err(|e| e.to_string())?;
    let cert = dir.path().join("cert.json");
    let config_arg = config.to_str().unwrap();
    let cert_arg = cert.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["ball", "--ring", "Z", "--radius", "8", "--witnesses"],
        vec!["ball", "--ring", "Q", "--radius", "10", "--format", "json"],
        vec!["build", "--config", config_arg],
        vec!["check", "--ring", "Zmod6", "--radius", "8"],
        vec!["chi", "independence", "--params", "1/16,3/16,5/16,7/16,9/16", "--window", "128"],
    ];
    let bin = env!("CARGO_BIN_EXE_polmod");
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("{args:?} exited with {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let mut count = 0;
    for args in &invocations {
        let first = run(args)?;
        for _ in 1..DETERMINISM_RUNS {
            ensure(run(args)? == first, || format!("{args:?} output differs between runs"))?;
        }
        count += 1;
    }
    std::fs::write(&cert, run(&["build", "--config", config_arg])?).map_err(|e| e.to_string())?;
    let first = run(&["verify", "--certificate", cert_arg])?;
    for _ in 1..DETERMINISM_RUNS {
        ensure(run(&["verify", "--certificate", cert_arg])? == first, || "verify output differs".into())?;
    }
    Ok(format!("{} commands byte-identical across {DETERMINISM_RUNS} runs", count + 1))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("norm oracle equivalence", criterion_1),
        ("norm axioms", criterion_2),
        ("properness", criterion_3),
        ("quotient norm", criterion_4),
        ("l1 laws", criterion_5),
        ("pid mechanics", criterion_6),
        ("embedding certificates", criterion_7),
        ("witnesses", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
