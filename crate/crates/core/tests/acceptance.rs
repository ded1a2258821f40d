//! Acceptance criteria. Each criterion prints one `criterion N: pass|fail`
//! line; the process exits nonzero if any fails.

#![allow(clippy::needless_range_loop)]

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use qtopo::jacobi::{weight_system, JacobiDiagram, WeightData};
use qtopo::linalg::{smith_normal_form, IntMatrix};
use qtopo::poly::IntPoly;
use qtopo::symplectic::{moyal_product, PolynomialObservable, SymplecticLattice};
use qtopo::verify::{self, Config, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suite(s: Suite, config: &Config) -> (bool, Vec<String>) {
    match verify::run(s, config) {
        Ok(report) => {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{} ({})", c.name, c.counterexample.clone().unwrap_or_default()))
                .collect();
            (failed.is_empty(), failed)
        }
        Err(e) => (false, vec![e.to_string()]),
    }
}

fn within(limit: Option<Duration>, elapsed: Duration) -> bool {
    limit.is_none_or(|l| elapsed < l)
}

/// Floating evaluation of an integer polynomial at `exp(2πi/n)`.
fn eval_at_root(coeffs: &[BigInt], n: usize) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * (k % n) as f64 / n as f64;
        let c = c.to_f64().expect("finite");
        acc.0 += c * angle.cos();
        acc.1 += c * angle.sin();
    }
    acc
}

/// Coefficients of `p(1 - h)` below `h^len` by the binomial theorem.
fn expand_in_h(p: &IntPoly, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut binom = BigInt::from(1);
        for (j, slot) in out.iter_mut().enumerate().take(len.min(k + 1)) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            *slot += c * &binom * sign;
            binom = binom * (k - j) / (j + 1);
        }
    }
    out
}

fn criterion_1(config: &Config) -> Outcome {
    let (ok, failed) = suite(Suite::HabiroHom, config);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut oracle_ok = true;
    for _ in 0..50 {
        let x = verify::random_habiro(&mut rng, 5);
        let rep = x.representative();
        let series = x.taylor_at_one();
        oracle_ok &= series.coefficients() == expand_in_h(rep, 6).as_slice();
        for n in 1..=6 {
            let v = x.evaluate_at_root(n).expect("level 5 reaches order 6");
            let (a, b) = (eval_at_root(v.coeffs(), n), eval_at_root(rep.coeffs(), n));
            oracle_ok &= (a.0 - b.0).abs() < 1e-6 * (1.0 + b.0.abs()) && (a.1 - b.1).abs() < 1e-6 * (1.0 + b.1.abs());
        }
    }
    Outcome {
        passed: ok && oracle_ok,
        detail: format!("suite failures {failed:?}, independent ev/T1 oracle {oracle_ok}"),
    }
}

/// `Σ ε_abc ε_abc` over `{0,1,2}^3`.
fn theta_oracle() -> i64 {
    let mut s = 0;
    for a in 0..3i64 {
        for b in 0..3i64 {
            for c in 0..3i64 {
                let e = (a - b) * (b - c) * (c - a) / 2;
                s += e * e;
            }
        }
    }
    s
}

fn criterion_2(config: &Config) -> Outcome {
    let (ok, failed) = suite(Suite::WeightsWellDefined, config);
    let theta = weight_system(&WeightData::epsilon(), &JacobiDiagram::theta());
    let oracle = BigRational::from_integer(theta_oracle().into());
    Outcome {
        passed: ok && theta == oracle,
        detail: format!("suite failures {failed:?}, W(theta) = {theta}, oracle {oracle}"),
    }
}

fn criterion_3(config: &Config) -> Outcome {
    let (ok, failed) = suite(Suite::Hopf, config);
    Outcome {
        passed: ok,
        detail: format!("suite failures {failed:?}"),
    }
}

fn criterion_4(config: &Config) -> Outcome {
    let (ok, failed) = suite(Suite::Symplectic, config);
    // x^2 ⋆ y^2 with only ∂x ⊗ ∂y pairings: Σ (t/2)^n/n! · (2)_n^2 x^{2-n} y^{2-n}.
    let h = SymplecticLattice::new(1);
    let x2 = PolynomialObservable::parse_with_order("poly g=1 terms=1*x[a1]^2", 4).unwrap();
    let y2 = PolynomialObservable::parse_with_order("poly g=1 terms=1*x[b1]^2", 4).unwrap();
    let product = moyal_product(&x2, &y2, 4).unwrap();
    let mut oracle_ok = true;
    let falling = [1i64, 2, 2];
    let mut fact = 1i64;
    for n in 0..=2usize {
        if n > 0 {
            fact *= n as i64;
        }
        let c = BigRational::new(
            (falling[n] * falling[n]).into(),
            (fact * (1i64 << n)).into(),
        );
        let e = 2 - n as u32;
        oracle_ok &= product.coefficient(n as u32, &[e, e]) == c;
    }
    oracle_ok &= product.terms().len() == 3 && product.lattice() == h;
    Outcome {
        passed: ok && oracle_ok,
        detail: format!("suite failures {failed:?}, product {product}, oracle {oracle_ok}"),
    }
}

/// Smith diagonal by elementary row and column operations on `i128`.
fn smith_oracle(rows: &[Vec<i128>]) -> Vec<i128> {
    let mut a = rows.to_vec();
    let (m, n) = (a.len(), a[0].len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                diag.resize(m.min(n), 0);
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_euclid(p);
                for j in t..n {
                    a[i][j] = a[i][j].checked_sub(q.checked_mul(a[t][j]).unwrap()).unwrap();
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                for i in t..m {
                    a[i][j] = a[i][j].checked_sub(q.checked_mul(a[i][t]).unwrap()).unwrap();
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

fn criterion_5(config: &Config) -> Outcome {
    let (cob_ok, cob_failed) = suite(Suite::Cobordism, config);
    let (smith_ok, smith_failed) = suite(Suite::Smith, config);
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut mismatch = None;
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let ours: Vec<i128> = smith_normal_form(&IntMatrix::from_rows(&rows))
            .diagonal
            .iter()
            .map(|d| d.to_i128().expect("small"))
            .collect();
        let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        if ours != smith_oracle(&wide) {
            mismatch = Some(format!("{rows:?}"));
            break;
        }
    }
    Outcome {
        passed: cob_ok && smith_ok && mismatch.is_none(),
        detail: format!(
            "cobordism failures {cob_failed:?}, smith failures {smith_failed:?}, oracle mismatch {mismatch:?}"
        ),
    }
}

fn criterion_6(config: &Config) -> Outcome {
    let (ok, failed) = suite(Suite::DiagramSquare, config);
    Outcome {
        passed: ok,
        detail: format!("suite failures {failed:?}"),
    }
}

/// Worked examples expressible as commands, with their stated outputs.
const CLI_EXAMPLES: &[(&str, &str)] = &[
    ("habiro-eval level=5 n=3 fs=[1]", "1"),
    ("weight data=epsilon diagram=theta", "6"),
    (
        "cob-check word g=1 twists=a1",
        "homology_cobordism=true homology_cylinder=false torelli=false",
    ),
    // q^2 at order 4, q at order 1, q^3 + q at order 4.
    ("habiro-eval n=4 fs=[1;-1,-1]", "-1"),
    ("habiro-eval n=1 fs=[1;-1]", "1"),
    ("habiro-eval n=4 fs=[0,1,0,1]", "0"),
    ("habiro-eval level=6 n=7 fs=[1]", "1"),
    ("habiro-eval n=2 fs=[0;0;1]", "0"),
    ("habiro-eval n=3 fs=[0;0;0;1]", "0"),
    ("habiro-eval n=4 fs=[1;-1]", "xi"),
    ("habiro-taylor fs=[1]", "1,0,0,0,0,0"),
    ("habiro-taylor fs=[1;-1]", "1,-1,0,0,0,0"),
    ("habiro-taylor fs=[0;0;1]", "0,0,2,-1,0,0"),
    ("diagram-reduce theta + theta", "d1=2"),
    ("grouplike empty + theta + 1/2*theta^2 + 1/6*theta^3", "true"),
    ("grouplike empty + theta", "false"),
    ("grouplike empty", "true"),
    ("weight data=epsilon diagram=empty", "1"),
    ("weight data=epsilon diagram=theta^2", "36"),
    ("weight data=epsilon truncation=3 empty", "1,0,0"),
    ("weight data=epsilon truncation=3 theta", "0,6,0"),
    ("weight data=epsilon truncation=3 empty + theta", "1,6,0"),
    (
        "tree-bracket g=1 tree leaves=(a1,a1) shape=(0,1) | tree leaves=(b1,b1) shape=(0,1)",
        "4*tree leaves=(a1,b1) shape=(0,1)",
    ),
    (
        "tree-bracket g=2 tree leaves=(a1,a2) shape=(0,1) | tree leaves=(b2,b2) shape=(0,1)",
        "2*tree leaves=(a1,b2) shape=(0,1)",
    ),
    (
        "moyal poly g=1 terms=1 | poly g=1 terms=3*x[a1]^2*x[b1] + 1/2*t",
        "poly g=1 terms=3*x[a1]^2*x[b1] + 1/2*t",
    ),
    (
        "moyal poly g=1 terms=1*x[a1]^2 | poly g=1 terms=1*x[b1]^2",
        "poly g=1 terms=1*x[a1]^2*x[b1]^2 + 2*t*x[a1]*x[b1] + 1/2*t^2",
    ),
    (
        "moyal poly g=1 terms=1*x[a1] | poly g=1 terms=1*x[b1]",
        "poly g=1 terms=1*x[a1]*x[b1] + 1/2*t",
    ),
    (
        "moyal poly g=1 terms=1*x[b1] | poly g=1 terms=1*x[a1]",
        "poly g=1 terms=1*x[a1]*x[b1] + -1/2*t",
    ),
    (
        "cob-check cobordism g=1 rel=[] mplus=[1,0;0,1] mminus=[1,0;0,1]",
        "homology_cobordism=true homology_cylinder=true",
    ),
    (
        "cob-check cobordism g=1 rel=[0;0;2] mplus=[1,0;0,1;0,0] mminus=[1,0;0,1;0,0]",
        "homology_cobordism=false homology_cylinder=false",
    ),
    (
        "cob-check word g=1 twists=",
        "homology_cobordism=true homology_cylinder=true torelli=true",
    ),
    (
        "cob-check word g=1 twists=a1,-a1",
        "homology_cobordism=true homology_cylinder=true torelli=true",
    ),
    (
        "cob-compose word g=1 twists=a1",
        "cobordism g=1 rel=[] mplus=[1,-1;0,1] mminus=[1,0;0,1]",
    ),
];

/// Suites whose stated outcome is a green run.
const CLI_SUITES: &[&str] = &["habiro-hom", "weights-welldefined", "diagram-square"];

fn qtopo(args: &[&str]) -> (String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qtopo"))
        .args(args)
        .output()
        .expect("binary runs");
    (String::from_utf8_lossy(&out.stdout).into_owned(), out.status.code())
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for (line, expected) in CLI_EXAMPLES {
        let args: Vec<&str> = line.split(' ').collect();
        let (stdout, code) = qtopo(&args);
        if stdout != format!("{expected}\n") || code != Some(0) {
            failures.push(format!("`{line}` gave {stdout:?} (exit {code:?})"));
        }
    }
    for s in CLI_SUITES {
        let (stdout, code) = qtopo(&["verify", s]);
        if !stdout.ends_with(&format!("{s}=pass\n")) || stdout.contains("=fail") || code != Some(0) {
            failures.push(format!("`verify {s}` gave {stdout:?} (exit {code:?})"));
        }
    }
    let (_, code) = qtopo(&["verify", "no-such-suite"]);
    if code != Some(2) {
        failures.push(format!("unknown suite exited {code:?}"));
    }
    Outcome {
        passed: failures.is_empty(),
        detail: format!(
            "{} examples, {} suites, failures {failures:?}",
            CLI_EXAMPLES.len(),
            CLI_SUITES.len()
        ),
    }
}

type Criterion<'a> = (u32, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let config = Config::default();
    let criteria: [Criterion; 7] = [
        (1, Some(Duration::from_secs(10)), Box::new(|| criterion_1(&config))),
        (2, Some(Duration::from_secs(60)), Box::new(|| criterion_2(&config))),
        (3, None, Box::new(|| criterion_3(&config))),
        (4, Some(Duration::from_secs(60)), Box::new(|| criterion_4(&config))),
        (5, Some(Duration::from_secs(30)), Box::new(|| criterion_5(&config))),
        (6, None, Box::new(|| criterion_6(&config))),
        (7, None, Box::new(criterion_7)),
    ];
    let mut all = true;
    for (n, limit, run) in criteria.iter() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let passed = outcome.passed && within(*limit, elapsed);
        all &= passed;
        let limit = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        println!(
            "criterion {n}: {} ({:.2}s, limit {limit}) {}",
            if passed { "pass" } else { "fail" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
