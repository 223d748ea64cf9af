//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails. All comparisons are exact.

use std::process::Command as Process;
use std::time::Instant;

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use stirling::arith::int;
use stirling::bell;
use stirling::cli::{self, Cli, DEFAULT_SEED};
use stirling::conjecture::{self, ClaimStatus};
use stirling::engines::{first, second};
use stirling::inequality::{self, HankelSpec};
use stirling::StirlingTable;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_cross_engine() -> Outcome {
    let max_n = 60;
    let t = StirlingTable::second(max_n);
    let columns: Vec<_> = (0..=max_n).into_par_iter().map(|k| second::s2_egf(k, max_n).unwrap()).collect();
    let checked: usize = (0..=max_n)
        .into_par_iter()
        .map(|n| -> Result<usize, String> {
            let mut count = 0;
            for k in 0..=n {
                let reference = second::s2_triangular(&t, n, k).map_err(|e| e.to_string())?;
                let explicit = second::s2_explicit(n, k).map_err(|e| e.to_string())?;
                let egf = &columns[k][n - k];
                ensure(explicit == reference && *egf == reference, || format!("S({n},{k}) differs"))?;
                if k < n {
                    let full = second::s2_diagonal_full(&t, n, k).map_err(|e| e.to_string())?;
                    ensure(full == reference, || format!("diagonal-full differs at ({n},{k})"))?;
                }
                if k >= 1 && k < n {
                    let simplified = second::s2_diagonal_simplified(&t, n, k).map_err(|e| e.to_string())?;
                    ensure(simplified == reference, || format!("diagonal-simplified differs at ({n},{k})"))?;
                }
                count += 1;
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{checked} pairs, 0 <= k <= n <= 60"))
}

fn c02_oracles() -> Outcome {
    let s2 = StirlingTable::second(12);
    let mut pairs = 0;
    for n in 0..=12 {
        for k in 0..=n {
            let oracle = second::s2_oracle(n, k).map_err(|e| e.to_string())?;
            let mut values = vec![
                second::s2_triangular(&s2, n, k),
                second::s2_explicit(n, k),
                second::s2_egf(k, n).map(|mut v| v.pop().unwrap()),
            ];
            if k < n {
                values.push(second::s2_diagonal_full(&s2, n, k));
            }
            if k >= 1 && k < n {
                values.push(second::s2_diagonal_simplified(&s2, n, k));
            }
            for v in values {
                ensure(v.as_ref().ok() == Some(&oracle), || format!("S({n},{k}): {v:?} vs oracle {oracle}"))?;
            }
            pairs += 1;
        }
    }
    let s1 = StirlingTable::first(8);
    for n in 0..=8 {
        for k in 0..=n {
            let oracle = first::s1_oracle(n, k).map_err(|e| e.to_string())?;
            let mut values = vec![first::s1_triangular(&s1, n, k), first::s1_egf(k, n).map(|mut v| v.pop().unwrap())];
            if k >= 1 {
                values.push(first::s1_diagonal_double(&s1, n, k));
            }
            for v in values {
                ensure(v.as_ref().ok() == Some(&oracle), || format!("s({n},{k}): {v:?} vs oracle {oracle}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs against set-partition and permutation-cycle counts"))
}

fn c03_bell_special_values() -> Outcome {
    let t = StirlingTable::second(40);
    let mut count = 0;
    for n in 0..=20 {
        for k in 0..=n {
            let c = bell::special_value_check(&t, n, k).map_err(|e| e.to_string())?;
            ensure(c.passed, || format!("({n},{k}): {:?}", c.witness))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs, n <= 20"))
}

fn c04_faa_di_bruno() -> Outcome {
    let mut count = 0;
    for m in 1..=15 {
        for k in 1..=10 {
            let c = bell::faa_di_bruno_check(k, m).map_err(|e| e.to_string())?;
            ensure(c.passed, || format!("(k={k}, m={m}): {:?}", c.witness))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs, m <= 15, k <= 10"))
}

fn c05_hankel() -> Outcome {
    let t = StirlingTable::second(2 * 6 + 8);
    let tuples: Vec<Vec<u64>> = (1..=4).flat_map(|m| inequality::all_tuples(m, 6)).collect();
    let dets: usize = tuples
        .par_iter()
        .map(|a| -> Result<usize, String> {
            for k in 1..=8 {
                let spec = |signed| HankelSpec::new(a.clone(), k, signed).unwrap();
                let plain = inequality::hankel_matrix(&t, &spec(false)).map_err(|e| e.to_string())?.det();
                let signed = inequality::hankel_matrix(&t, &spec(true)).map_err(|e| e.to_string())?.det();
                for signed_flag in [false, true] {
                    let c = inequality::check_det_nonneg(&t, &spec(signed_flag)).map_err(|e| e.to_string())?;
                    ensure(c.passed, || format!("a={a:?} k={k} signed={signed_flag}: {:?}", c.witness))?;
                }
                ensure(plain == signed, || format!("a={a:?} k={k}: unsigned {plain} != signed {signed}"))?;
            }
            Ok(16)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{dets} determinants over {} tuples", tuples.len()))
}

fn c06_product_inequality() -> Outcome {
    let t = StirlingTable::second(2 * 8 + 6);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for trial in 0..500 {
        let inst = inequality::random_majorization(&mut rng, 4, 8, 3);
        let k = rng.gen_range(1..=6);
        ensure(inequality::check_q_majorization(&inst), || format!("trial {trial}: not majorized"))?;
        let c = inequality::check_product_inequality(&t, &inst, k).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("trial {trial}: {:?} {:?}", c.params, c.witness))?;
    }
    Ok(format!("500 instances, seed {DEFAULT_SEED}"))
}

fn c07_log_convexity() -> Outcome {
    let t = StirlingTable::second(200);
    let reports: Vec<_> = (1..=30usize)
        .into_par_iter()
        .map(|k| inequality::check_log_convexity(&t, k, 200 - k))
        .collect();
    let mut instances = 0;
    for r in reports {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{:?}", r.failures.first()))?;
        instances += r.instances;
    }
    Ok(format!("{instances} triples, k <= 30, l + k <= 200"))
}

fn c08_sibuya() -> Outcome {
    let t = StirlingTable::second(61);
    let mut count = 0;
    for n in 2..=60 {
        for k in 2..=n {
            let c = inequality::check_sibuya(&t, n, k).map_err(|e| e.to_string())?;
            ensure(c.passed, || format!("({n},{k}): {:?}", c.witness))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs strict, n <= 60"))
}

fn c09_diagonal_monotonicity() -> Outcome {
    let t = StirlingTable::second(50);
    let mut steps = 0;
    for n in 2..=50 {
        for k in 2..=n {
            let r = conjecture::check_theorem3(&t, n, k, 50 - n).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{:?}", r.failures.first()))?;
            steps += r.instances;
        }
    }
    let chain: Vec<_> = (3..=5).map(|j| conjecture::frak_s(&t, 1, j, j).unwrap()).collect();
    ensure(chain == [int(8), int(29), int(75)], || format!("chain {chain:?}"))?;
    Ok(format!("{steps} diagonal steps, chain 8 < 29 < 75"))
}

fn c10_conjecture() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let args = ["stirling", "conjecture", "--claims", "1,2,3,4,5,6", "--max-n", "30", "--max-ell", "4", "--format", "json"];
    let mut parsed = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    parsed.cache_dir = Some(dir.path().to_path_buf());
    let e = cli::run(&parsed).map_err(|e| e.to_string())?;
    ensure(e.exit_code == 0, || format!("exit code {}", e.exit_code))?;
    let doc: serde_json::Value = serde_json::from_str(&e.rendered).map_err(|e| e.to_string())?;
    for key in ["suite", "config", "instances", "passes", "failures", "wall_time_ms", "claims"] {
        ensure(doc.get(key).is_some(), || format!("missing key {key}"))?;
    }
    let claims = doc["claims"].as_array().ok_or("claims is not an array")?;
    for id in 1..=6u64 {
        ensure(claims.iter().any(|c| c["claim"] == id), || format!("claim {id} missing"))?;
    }
    let claim3 = claims
        .iter()
        .find(|c| c["claim"] == 3 && c["ell"] == 1)
        .ok_or("claim 3 at l = 1 missing")?;
    ensure(claim3["status"] == "verified-in-range", || format!("claim 3 l=1: {}", claim3["status"]))?;
    ensure(claim3["asserted"] == true, || "claim 3 l=1 not asserted".into())?;

    // The library result must agree with the rendered one.
    let t = StirlingTable::second(30);
    let range = conjecture::SweepRange { n_max: 30, k_max: 30, ell_max: 4 };
    let direct = conjecture::sweep_conjecture(&t, &[3], range).map_err(|e| e.to_string())?;
    ensure(direct[0].status == ClaimStatus::VerifiedInRange, || "direct sweep disagrees".into())?;
    let found = claims.iter().filter(|c| c["status"] == "counterexample").count();
    Ok(format!("{} claim results, {found} with counterexamples (findings)", claims.len()))
}

fn c11_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_stirling");
    let commands: [&[&str]; 5] = [
        &["table", "--kind", "2", "--max-n", "20", "--format", "json"],
        &["verify", "all", "--max-n", "14", "--format", "json"],
        &["inequalities", "--max-n", "20", "--max-k", "6", "--det-order", "3", "--trials", "100", "--seed", "7", "--format", "json"],
        &["inequalities", "--max-n", "12", "--max-k", "4", "--det-order", "2", "--trials", "50", "--format", "csv"],
        &["conjecture", "--max-n", "20", "--max-ell", "3", "--format", "json"],
    ];
    for args in commands {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let out = Process::new(exe)
                .args(args)
                .arg("--cache-dir")
                .arg(dir.path())
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
            outputs.push(out.stdout);
        }
        ensure(outputs[0] == outputs[1], || format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across reruns", commands.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("01 cross-engine equality", c01_cross_engine),
        ("02 enumeration oracles", c02_oracles),
        ("03 Bell special values", c03_bell_special_values),
        ("04 Faa di Bruno derivatives", c04_faa_di_bruno),
        ("05 Hankel determinants", c05_hankel),
        ("06 q-majorization products", c06_product_inequality),
        ("07 log-convexity", c07_log_convexity),
        ("08 Sibuya strictness", c08_sibuya),
        ("09 diagonal monotonicity", c09_diagonal_monotonicity),
        ("10 conjecture sweep", c10_conjecture),
        ("11 determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
