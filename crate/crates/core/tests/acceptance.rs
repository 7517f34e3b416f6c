//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use qdt_core::coha::{enumerate_t, enumerate_t0, enumerate_tl, factorize_t0, q_polys, star_all};
use qdt_core::dtinv::{
    dt_formula, dt_formula_literal, dt_from_class_list, dt_from_series, dtq_from_class_list, dtq_from_series,
    dtq_literal_normalization, residue_counts_of,
};
use qdt_core::higgs::enumerate_higgs;
use qdt_core::hilbert::{f_numeric_coeffs, f_q_coeffs};
use qdt_core::necklaces::enumerate_classes;
use qdt_core::plethystic::{pleth_exp, pleth_log};
use qdt_core::verify::{find, Scale};
use qdt_core::{LaurentPoly, Partition, RationalFunctionQ, TruncSeries};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The closed expressions for `DT_1 .. DT_7` as polynomials in `m`, evaluated
/// with exact integer division.
fn dt_table(m: i128, n: u64) -> i128 {
    let (num, den) = match n {
        1 => (1, 1),
        2 => (m / 2, 1),
        3 => (m * (m - 1), 2),
        4 => (m * (m - 1) * (2 * m - 1), 3),
        5 => (5 * m * (m - 1) * (5 * m * m - 5 * m + 2), 24),
        6 => {
            let sign = if (m - 1) % 2 == 0 { 1 } else { -1 };
            // the inner constant (13 + (-1)^(m-1) 5) / 2 is an integer
            let tail = (13 + sign * 5) / 2;
            (m * (m - 1) * (36 * m * m * m - 54 * m * m + 31 * m - tail), 20)
        }
        7 => (7 * m * (m - 1) * (343 * m.pow(4) - 686 * m.pow(3) + 539 * m * m - 196 * m + 36), 720),
        _ => unreachable!(),
    };
    assert_eq!(num % den, 0, "table entry for m = {m}, n = {n} is not integral");
    num / den
}

/// Number of cyclic classes of compositions of `(m-1)n` into `n` parts that
/// are primitive, plus those of period `n/2` when `m` is even and `n = 2 mod 4`,
/// divided by `n`. Brute force over all compositions.
fn dt_brute(m: u64, n: usize) -> u64 {
    let total = (m - 1) as usize * n;
    let plus = m % 2 == 0 && n % 4 == 2;
    let mut count = 0u64;
    let mut a = vec![0usize; n];
    fn rec(a: &mut Vec<usize>, i: usize, left: usize, count: &mut u64, plus: bool) {
        let n = a.len();
        if i + 1 == n {
            a[i] = left;
            let least = (0..n).all(|r| {
                let rotated = (0..n).map(|k| a[(k + r) % n]);
                rotated.cmp(a.iter().copied()) != std::cmp::Ordering::Less
            });
            if !least {
                return;
            }
            let period = (1..=n).find(|&p| n % p == 0 && (0..n).all(|k| a[k] == a[(k + p) % n])).unwrap();
            if period == n || (plus && 2 * period == n) {
                *count += 1;
            }
            return;
        }
        for v in 0..=left {
            a[i] = v;
            rec(a, i + 1, left - v, count, plus);
        }
    }
    rec(&mut a, 0, total, &mut count, plus);
    assert_eq!(count % n as u64, 0);
    count / n as u64
}

fn fuss_catalan(m: u64, n: u64) -> u128 {
    // C(mn, n) / ((m-1)n + 1)
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (m as u128 * n as u128 - i) / (i + 1);
    }
    c / ((m - 1) as u128 * n as u128 + 1)
}

fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    terms.iter().map(|&(e, c)| (e, c)).collect()
}

fn parse_all(list: &[&str]) -> Vec<Partition> {
    list.iter().map(|s| Partition::parse(s).unwrap()).collect()
}

fn run_check(name: &str, scale: Scale) -> Outcome {
    let report = find(name).ok_or_else(|| format!("no check named {name}"))?.run(&scale);
    if report.passed {
        Ok(report.detail)
    } else {
        Err(report.detail)
    }
}

fn c1_dt_table() -> Outcome {
    for m in 1..=6u64 {
        for n in 1..=7 {
            let got = dt_formula(m, n).map_err(err)?;
            let want = dt_table(m as i128, n);
            ensure!(got == BigInt::from(want), "m={m} n={n}: formula {got}, table {want}");
        }
    }
    Ok("42 values".into())
}

fn three_routes(ms: std::ops::RangeInclusive<u64>, n_max: u64) -> Result<usize, String> {
    let mut cells = 0;
    for m in ms {
        let series = dt_from_series(m, n_max as usize + 1).map_err(err)?;
        for n in 1..=n_max {
            let f = dt_formula(m, n).map_err(err)?;
            let s = &series[n as usize - 1];
            let c = dt_from_class_list(&enumerate_classes(m, n as usize, true), n).map_err(err)?;
            let b = BigInt::from(dt_brute(m, n as usize));
            ensure!(&f == s && f == c && f == b, "m={m} n={n}: formula {f}, series {s}, classes {c}, brute {b}");
            cells += 1;
        }
    }
    Ok(cells)
}

fn c2_three_routes() -> Outcome {
    let cells = three_routes(1..=4, 8)? + three_routes(1..=2, 10)?;
    Ok(format!("{cells} cells"))
}

fn c3_quantized() -> Outcome {
    for m in 1..=4u64 {
        let series = dtq_from_series(m, 9).map_err(err)?;
        for n in 1..=8u64 {
            let s = &series[n as usize - 1];
            let c = dtq_from_class_list(&enumerate_classes(m, n as usize, true), n).map_err(err)?;
            ensure!(s == &c, "m={m} n={n}: series {s}, classes {c}");
            ensure!(s.is_integral(), "m={m} n={n}: {s} is not integral");
            let dt = dt_formula(m, n).map_err(err)?;
            ensure!(s.eval_at_one() == BigRational::from_integer(dt), "m={m} n={n}: {s} at q = 1");
        }
    }
    let m2 = dtq_from_series(2, 5).map_err(err)?;
    let spots = [poly(&[(1, 1)]), poly(&[(3, 1)]), poly(&[(4, 1), (6, 1)])];
    for (n, want) in (2..=4).zip(&spots) {
        ensure!(&m2[n - 1] == want, "m=2 n={n}: {} instead of {want}", m2[n - 1]);
    }
    Ok("32 cells; q, q^3, q^4+q^6".into())
}

fn c4_divisibility() -> Outcome {
    for m in 1..=4u64 {
        for n in 1..=8u64 {
            let (_, q) = q_polys(m, n as usize);
            let quotient = q.div_exact(&LaurentPoly::q_integer(n)).map_err(|e| format!("m={m} n={n}: {e}"))?;
            let want = BigRational::from_integer(dt_brute(m, n as usize).into());
            ensure!(quotient.eval_at_one() == want, "m={m} n={n}: Q_n/[n] at 1 is {}", quotient.eval_at_one());
        }
    }
    run_check("divisibility", Scale::new(1..=4, 1..=8))
}

fn c5_residues() -> Outcome {
    for m in 1..=4u64 {
        for n in 1..=8u64 {
            let counts = residue_counts_of(&enumerate_classes(m, n as usize, true), n);
            let dt = dt_brute(m, n as usize);
            ensure!(counts.iter().all(|&c| c == dt), "m={m} n={n}: {counts:?}, DT {dt}");
        }
    }
    Ok("32 cells uniform".into())
}

fn c6_hilbert() -> Outcome {
    for m in 1..=3u64 {
        let numeric = f_numeric_coeffs(m, 10);
        for (n, c) in numeric.iter().enumerate() {
            ensure!(*c == BigInt::from(fuss_catalan(m, n as u64)), "m={m} n={n}: F(t) coefficient {c}");
        }
    }
    ensure!(f_q_coeffs(2, 3)[2] == poly(&[(0, 1), (1, 1)]), "F_2(q) for m = 2 is not 1+q");
    run_check("hilbert-series", Scale::new(1..=3, 1..=9))
}

fn c7_bijections() -> Outcome {
    for m in 1..=3u64 {
        for n in 1..=7usize {
            let want = BigInt::from(dt_table(m as i128, n as u64));
            for d in (1..=n as i64).filter(|&d| num_integer::gcd(d, n as i64) == 1) {
                let got = enumerate_higgs(n, d, m).len();
                ensure!(BigInt::from(got) == want, "m={m} n={n} d={d}: |H| = {got}, DT = {want}");
            }
        }
    }
    run_check("bijections", Scale::new(1..=3, 1..=7))
}

fn c8_worked_example() -> Outcome {
    let m = 2;
    let t4 = parse_all(&[
        "(0000)", "(0001)", "(0002)", "(0003)", "(0011)", "(0012)", "(0013)", "(0022)", "(0023)", "(0111)", "(0112)",
        "(0113)", "(0122)", "(0123)",
    ]);
    ensure!(enumerate_t(m, 4) == t4, "T_4 is {:?}", enumerate_t(m, 4));
    let t0 = enumerate_t0(m, 4);
    ensure!(t0.len() == 5, "|T0_4| = {}", t0.len());
    let in_t0: BTreeSet<_> = t0.into_iter().collect();
    let printed: [(&str, &[&str]); 9] = [
        ("(0003)", &["(000)", "(0)"]),
        ("(0013)", &["(001)", "(0)"]),
        ("(0022)", &["(00)", "(00)"]),
        ("(0023)", &["(00)", "(0)", "(0)"]),
        ("(0111)", &["(0)", "(000)"]),
        ("(0112)", &["(0)", "(001)"]),
        ("(0113)", &["(0)", "(00)", "(0)"]),
        ("(0122)", &["(0)", "(0)", "(00)"]),
        ("(0123)", &["(0)", "(0)", "(0)", "(0)"]),
    ];
    for (lambda, factors) in printed {
        let l = Partition::parse(lambda).unwrap();
        ensure!(!in_t0.contains(&l), "{lambda} should not be in T0");
        let f = parse_all(factors);
        ensure!(factorize_t0(&l, m).map_err(err)? == f, "factorization of {lambda}");
        ensure!(star_all(&f, m) == l, "product of the factors of {lambda}");
    }
    let tl = parse_all(&["(0000)", "(0001)", "(0002)", "(0003)", "(0011)", "(0012)", "(0013)", "(0023)"]);
    ensure!(enumerate_tl(m, 4, false) == tl, "T^L_4 is {:?}", enumerate_tl(m, 4, false));
    Ok("14 / 5 / 9 / 8".into())
}

fn c9_product_expansion() -> Outcome {
    run_check("product-expansion", Scale::new(2..=3, 1..=7))
}

fn c10_plethystic() -> Outcome {
    let order = 10;
    let t = TruncSeries::t(order);
    let geometric = TruncSeries::geometric(&RationalFunctionQ::one(), 1, order);
    ensure!(pleth_exp(&t).map_err(err)? == geometric, "Exp(t) is not 1/(1-t)");
    ensure!(pleth_log(&geometric).map_err(err)? == t, "Log(1/(1-t)) is not t");
    run_check("plethystic", Scale::fast())
}

fn c11_shuffle() -> Outcome {
    run_check("shuffle", Scale::fast())
}

fn c12_literal_forms() -> Outcome {
    let literal = dt_formula_literal(2, 2).map_err(err)?;
    ensure!(literal == BigRational::new(3.into(), 2.into()), "literal binomial form gives {literal}");
    ensure!(!literal.is_integer(), "literal binomial form is integral");
    ensure!(dt_formula(2, 2).map_err(err)? == BigInt::from(1), "corrected form is not 1");
    let series = dtq_from_series(2, 3).map_err(err)?;
    let literal_q = dtq_literal_normalization(2, 2).map_err(err)?;
    ensure!(series[1] == poly(&[(1, 1)]), "series oracle gives {}", series[1]);
    ensure!(literal_q == poly(&[(-1, 1)]), "q^(1-n) normalization gives {literal_q}");
    ensure!(literal_q != series[1], "q^(1-n) normalization agrees with the series");
    Ok("literal forms give 3/2 and q^-1".into())
}

struct Criterion {
    label: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let minutes = |k: u64| Some(Duration::from_secs(60 * k));
    let criteria = [
        Criterion { label: "1 DT table m<=6 n<=7", limit: Some(Duration::from_secs(1)), run: c1_dt_table },
        Criterion { label: "2 three routes", limit: minutes(3), run: c2_three_routes },
        Criterion { label: "3 quantized agreement", limit: minutes(3), run: c3_quantized },
        Criterion { label: "4 divisibility", limit: None, run: c4_divisibility },
        Criterion { label: "5 residue uniformity", limit: None, run: c5_residues },
        Criterion { label: "6 Hilbert series identities", limit: None, run: c6_hilbert },
        Criterion { label: "7 bijections", limit: None, run: c7_bijections },
        Criterion { label: "8 worked example m=2 n=4", limit: None, run: c8_worked_example },
        Criterion { label: "9 product expansions", limit: None, run: c9_product_expansion },
        Criterion { label: "10 Exp/Log, Psi, q-Moebius, signed sums", limit: None, run: c10_plethystic },
        Criterion { label: "11 shuffle product", limit: None, run: c11_shuffle },
        Criterion { label: "12 literal forms fail", limit: None, run: c12_literal_forms },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:<40} {:>9.3}s  {detail}", c.label, elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
