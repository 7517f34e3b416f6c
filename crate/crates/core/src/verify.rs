//! Named consistency checks over a configurable range of `(m, n)`.
//!
//! Every check returns a one-line summary on success and a description of
//! the first discrepancy on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coha::{
    compose_a, decompose_a, enumerate_t, enumerate_t0, enumerate_tl, factorize_t0, q_polys, shuffle,
    shuffle_q0, star, star_all, SymPoly,
};
use crate::dtinv::{
    dt_formula, dt_formula_literal, dt_from_class_list, dt_from_series, dtq_from_class_list,
    dtq_from_series, dtq_literal_normalization, residue_counts_of,
};
use crate::exactmath::{
    binomial, cyclotomic, divisors, gcd_u64, mu, signed_moebius_sum, LaurentPoly, RationalFunctionQ,
};
use crate::higgs::{class_to_higgs, enumerate_higgs, higgs_to_class};
use crate::hilbert::{enumerate_trees, f_numeric_coeffs, f_q_coeffs, fuss_catalan, series_f, series_h, FMode, Tree};
use crate::necklaces::{
    classify, enumerate_classes, for_each_u, is_admissible, p_poly, p_root_closed_form, phi, phi_inv, qbar_mod,
    seq_weight, USequence,
};
use crate::partition::Partition;
use crate::plethystic::{
    big_psi, big_psi_inv, pleth_exp, pleth_log, product_expansion, q_moebius_forward, q_moebius_invert, TruncSeries,
};

/// The `(m, n)` ranges a run covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    pub ms: RangeInclusive<u64>,
    pub ns: RangeInclusive<u64>,
    /// An additional, narrower-in-`m` range for the three-route comparison.
    pub extra: Option<(RangeInclusive<u64>, RangeInclusive<u64>)>,
}

impl Scale {
    /// `m <= 2`, `n <= 6`.
    pub fn fast() -> Self {
        Scale { ms: 1..=2, ns: 1..=6, extra: None }
    }

    /// `m <= 4`, `n <= 8`, and `n <= 10` for `m <= 2`.
    pub fn full() -> Self {
        Scale { ms: 1..=4, ns: 1..=8, extra: Some((1..=2, 1..=10)) }
    }

    pub fn new(ms: RangeInclusive<u64>, ns: RangeInclusive<u64>) -> Self {
        Scale { ms, ns, extra: None }
    }

    fn n_max(&self) -> u64 {
        *self.ns.end()
    }

    fn cells(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for m in self.ms.clone() {
            for n in self.ns.clone() {
                out.push((m, n));
            }
        }
        out
    }
}

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&Scale) -> Outcome,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": format!("{:.3}", self.elapsed.as_secs_f64()),
        })
    }
}

impl Check {
    pub fn run(&self, scale: &Scale) -> CheckReport {
        let start = Instant::now();
        let outcome = (self.run)(scale);
        CheckReport {
            name: self.name,
            description: self.description,
            passed: outcome.is_ok(),
            detail: outcome.unwrap_or_else(|e| e),
            elapsed: start.elapsed(),
        }
    }
}

/// All checks in a fixed order.
pub fn registry() -> Vec<Check> {
    vec![
        Check { name: "dt-table", description: "closed formula against the polynomial DT_1..DT_7 (m <= 6)", run: check_dt_table },
        Check { name: "three-routes", description: "formula, series and class counts agree", run: check_three_routes },
        Check { name: "quantized", description: "series and class routes agree on DT_n(q)", run: check_quantized },
        Check { name: "divisibility", description: "[n] divides Q_n; root-of-unity values match the residues", run: check_divisibility },
        Check { name: "residues", description: "plus classes are equidistributed over weight residues", run: check_residues },
        Check { name: "hilbert-series", description: "tree statistics and the identities between F and H", run: check_hilbert },
        Check { name: "factorization", description: "star product, T0 factorization and the A decomposition", run: check_factorization },
        Check { name: "necklaces", description: "admissible rotations, weight shifts and P_n", run: check_necklaces },
        Check { name: "bijections", description: "trees, phi, Lyndon classes and Higgs sequences", run: check_bijections },
        Check { name: "worked-example", description: "the m = 2, n = 4 partition example", run: check_worked_example },
        Check { name: "product-expansion", description: "H as Exp over Lyndon weights, plain and signed", run: check_product_expansion },
        Check { name: "plethystic", description: "Exp/Log, Psi, Euler products, q-Moebius and signed Moebius sums", run: check_plethystic },
        Check { name: "shuffle", description: "shuffle product realizes the star product; supercommutativity", run: check_shuffle },
        Check { name: "literal-forms", description: "the C(mn-1,n-1) and q^(1-n) forms fail as expected", run: check_literal_forms },
    ]
}

pub fn find(name: &str) -> Option<Check> {
    registry().into_iter().find(|c| c.name == name)
}

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

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn rf(p: &LaurentPoly) -> RationalFunctionQ {
    RationalFunctionQ::from_laurent(p)
}

/// The displayed polynomial expressions for `DT_1 .. DT_7`.
pub fn dt_polynomial(m: u64, n: u64) -> Option<BigRational> {
    let m = BigRational::from_integer(m.into());
    let mm1 = &m - BigRational::one();
    let c = |v: i64| BigRational::from_integer(v.into());
    let pow = |k: i32| {
        let mut acc = BigRational::one();
        for _ in 0..k {
            acc *= &m;
        }
        acc
    };
    let value = match n {
        1 => BigRational::one(),
        2 => BigRational::from_integer(m.to_integer() / 2),
        3 => &m * &mm1 / c(2),
        4 => &m * &mm1 * (c(2) * &m - c(1)) / c(3),
        5 => c(5) * &m * &mm1 * (c(5) * pow(2) - c(5) * &m + c(2)) / c(24),
        6 => {
            let sign = if (m.to_integer() - 1u32) % 2u32 == BigInt::zero() { 1 } else { -1 };
            let tail = rat(13 + sign * 5, 2);
            &m * &mm1 * (c(36) * pow(3) - c(54) * pow(2) + c(31) * &m - tail) / c(20)
        }
        7 => {
            c(7) * &m * &mm1 * (c(343) * pow(4) - c(686) * pow(3) + c(539) * pow(2) - c(196) * &m + c(36))
                / c(720)
        }
        _ => return None,
    };
    Some(value)
}

fn check_dt_table(_: &Scale) -> Outcome {
    for m in 1..=6 {
        for n in 1..=7 {
            let got = dt_formula(m, n).map_err(err)?;
            let want = dt_polynomial(m, n).expect("n <= 7");
            ensure!(BigRational::from_integer(got.clone()) == want, "m={m} n={n}: formula {got}, table {want}");
        }
    }
    Ok("42 values for m <= 6, n <= 7".into())
}

fn three_routes_on(ms: RangeInclusive<u64>, ns: RangeInclusive<u64>) -> std::result::Result<usize, String> {
    let mut cells = 0;
    for m in ms {
        let series = dt_from_series(m, *ns.end() as usize + 1).map_err(err)?;
        for n in ns.clone() {
            let f = dt_formula(m, n).map_err(err)?;
            let s = &series[n as usize - 1];
            let c = dt_from_class_list(&enumerate_classes(m, n as usize, true), n).map_err(err)?;
            ensure!(&f == s && f == c, "m={m} n={n}: formula {f}, series {s}, classes {c}");
            cells += 1;
        }
    }
    Ok(cells)
}

fn check_three_routes(scale: &Scale) -> Outcome {
    let mut cells = three_routes_on(scale.ms.clone(), scale.ns.clone())?;
    if let Some((ms, ns)) = &scale.extra {
        cells += three_routes_on(ms.clone(), ns.clone())?;
    }
    Ok(format!("{cells} cells agree"))
}

fn check_quantized(scale: &Scale) -> Outcome {
    let mut cells = 0;
    for m in scale.ms.clone() {
        let series = dtq_from_series(m, scale.n_max() as usize + 1).map_err(err)?;
        for n in scale.ns.clone() {
            let s = &series[n as usize - 1];
            let classes = enumerate_classes(m, n as usize, true);
            let c = dtq_from_class_list(&classes, n).map_err(err)?;
            ensure!(s == &c, "m={m} n={n}: series {s}, classes {c}");
            ensure!(s.is_integral(), "m={m} n={n}: {s} has non-integral coefficients");
            let dt = dt_formula(m, n).map_err(err)?;
            ensure!(s.eval_at_one() == BigRational::from_integer(dt.clone()), "m={m} n={n}: {s} at q=1 is not {dt}");
            cells += 1;
        }
    }
    Ok(format!("{cells} cells agree"))
}

/// `Q̄_n(zeta)` for a primitive `(n/g)`-th root of unity `zeta`, from the
/// closed form of `P_d` at roots of unity.
fn qbar_root_value(m: u64, n: u64, g: u64) -> std::result::Result<BigRational, String> {
    if g == n {
        let mut acc = BigInt::zero();
        for d in divisors(n) {
            acc += binomial(m * d - 1, d - 1) * mu(n / d);
        }
        return Ok(BigRational::new(acc, n.into()));
    }
    let f: BTreeMap<u64, BigInt> = divisors(n).into_iter().map(|k| (k, binomial(m * k - 1, k - 1))).collect();
    signed_moebius_sum(&f, n, g, m).map_err(err)
}

fn check_divisibility(scale: &Scale) -> Outcome {
    let mut cells = 0;
    for (m, n) in scale.cells() {
        let (qbar, q) = q_polys(m, n as usize);
        q.div_exact(&LaurentPoly::q_integer(n))
            .map_err(|e| format!("m={m} n={n}: [n] does not divide Q_n = {q}: {e}"))?;
        let residue = qbar_mod(m, n as usize);
        ensure!(
            qbar.reduce_mod_cyclic(n) == residue,
            "m={m} n={n}: Q̄_n mod q^n-1 is {}, Moebius residue is {residue}",
            qbar.reduce_mod_cyclic(n)
        );
        let pn = p_poly(m, n as usize).reduce_mod_cyclic(n);
        for s in 1..=n {
            let g = gcd_u64(s, n);
            let phi_poly = cyclotomic(n / g);
            let p_closed = BigRational::from_integer(p_root_closed_form(m, n, s).map_err(err)?);
            let p_at = pn.rem_monic(&phi_poly);
            ensure!(
                p_at == LaurentPoly::monomial_rational(p_closed.clone(), 0),
                "m={m} n={n} s={s}: P_n mod Phi_{} is {p_at}, closed form {p_closed}",
                n / g
            );
            let v = qbar_root_value(m, n, g)?;
            let v_poly = LaurentPoly::monomial_rational(v.clone(), 0);
            ensure!(
                residue.rem_monic(&phi_poly) == v_poly && qbar.reduce_mod_cyclic(n).rem_monic(&phi_poly) == v_poly,
                "m={m} n={n} s={s}: Q̄_n at a primitive {}-th root is not {v}",
                n / g
            );
        }
        cells += 1;
    }
    Ok(format!("{cells} cells divisible and reconciled"))
}

fn check_residues(scale: &Scale) -> Outcome {
    for (m, n) in scale.cells() {
        let counts = residue_counts_of(&enumerate_classes(m, n as usize, true), n);
        let dt = dt_formula(m, n).map_err(err)?;
        ensure!(counts.iter().all(|c| BigInt::from(*c) == dt), "m={m} n={n}: residue counts {counts:?}, DT {dt}");
    }
    Ok(format!("{} cells uniform", scale.cells().len()))
}

fn check_hilbert(scale: &Scale) -> Outcome {
    let order = scale.n_max() as usize + 1;
    for m in scale.ms.clone() {
        let f = series_f(m, order, FMode::Q);
        let mut rhs = TruncSeries::one(order);
        for k in 0..m as i64 {
            rhs = &rhs * &f.q_shift_t(k);
        }
        let rhs = &TruncSeries::one(order) + &(&TruncSeries::t(order) * &rhs);
        ensure!(f == rhs, "m={m}: F(q,t) does not solve its q-difference equation");

        let numeric = f_numeric_coeffs(m, order);
        let fq = f_q_coeffs(m, order);
        for n in 0..order {
            ensure!(numeric[n] == fuss_catalan(m, n as u64), "m={m} n={n}: F(t) coefficient {}", numeric[n]);
            ensure!(
                fq[n].eval_at_one() == BigRational::from_integer(numeric[n].clone()),
                "m={m} n={n}: F(1,t) disagrees with F(t)"
            );
        }

        let h = series_h(m, order);
        ensure!(&f * &h.q_shift_t(-1) == h, "m={m}: F != H(q,t)/H(q,q^-1 t)");
        let shifted = &h.q_shift_t(-1) + &(&TruncSeries::t(order) * &h.q_shift_t(m as i64 - 1));
        ensure!(h == shifted, "m={m}: H(q,t) != H(q,q^-1 t) + t H(q,q^(m-1) t)");

        for n in scale.ns.clone().filter(|&n| n <= 7) {
            let mut poly = LaurentPoly::zero();
            let mut count = 0u64;
            for tree in enumerate_trees(m, n as usize) {
                count += 1;
                let corona = tree.corona().len() as u64;
                ensure!(corona == (m - 1) * n + 1, "m={m}: corona of {tree:?} has {corona} words");
                let d = tree.cell_dim() as i64;
                let wt = tree.weight();
                ensure!(
                    d == crate::hilbert::cell_dim_from_weight(wt, m, n),
                    "m={m}: d({tree:?}) = {d} but wt = {wt}"
                );
                poly.add_term(wt, BigRational::one());
            }
            ensure!(BigInt::from(count) == fuss_catalan(m, n), "m={m} n={n}: {count} trees");
            ensure!(poly == fq[n as usize], "m={m} n={n}: tree weights {poly} but F_n = {}", fq[n as usize]);
        }
    }
    Ok(format!("order {order}"))
}

fn check_factorization(scale: &Scale) -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    for m in scale.ms.clone() {
        for n in scale.ns.clone().filter(|&n| n <= 7) {
            let fq = f_q_coeffs(m, n as usize + 1);
            let mut poly = LaurentPoly::zero();
            for l in enumerate_t(m, n as usize) {
                poly.add_term(l.weight(m), BigRational::one());
                let factors = factorize_t0(&l, m).map_err(err)?;
                ensure!(factors.iter().all(|f| f.in_t0(m)), "m={m}: {l} has a factor outside T0");
                ensure!(star_all(&factors, m) == l, "m={m}: factors of {l} do not multiply back");
            }
            ensure!(poly == fq[n as usize], "m={m} n={n}: T_n weights {poly}");
        }
        for l in (1..=3).flat_map(|k| enumerate_tl(m, k, false)) {
            let d = star(&l, &l, m);
            ensure!(
                d.weight(m) == 2 * l.weight(m) && d.len() == 2 * l.len(),
                "m={m}: {l}*{l} does not double"
            );
        }
        let random_t = |rng: &mut StdRng| {
            let all = enumerate_t(m, rng.gen_range(0..=4));
            all[rng.gen_range(0..all.len())].clone()
        };
        for _ in 0..100 {
            let (a, b, c) = (random_t(&mut rng), random_t(&mut rng), random_t(&mut rng));
            ensure!(
                star(&star(&a, &b, m), &c, m) == star(&a, &star(&b, &c, m), m),
                "m={m}: star is not associative on {a}, {b}, {c}"
            );
            ensure!(
                star(&a, &b, m).weight(m) == a.weight(m) + b.weight(m),
                "m={m}: weight is not additive on {a}, {b}"
            );
        }
        for _ in 0..200 {
            let len = rng.gen_range(0..=8);
            let parts: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=12)).collect();
            let l = Partition::from_unsorted(parts);
            let pieces = decompose_a(&l, m);
            ensure!(compose_a(&pieces, m) == l, "m={m}: decomposition of {l} does not recompose");
            ensure!(pieces.iter().all(|(_, p)| p.in_t(m)), "m={m}: {l} has a factor outside T");
            let total: i64 = pieces.iter().map(|(k, p)| p.weight(m) - (*k * p.len() as u64) as i64).sum();
            ensure!(total == l.weight(m), "m={m}: weights of the pieces of {l} do not add up");
        }
    }
    Ok("star, factorization and decomposition consistent".into())
}

fn check_necklaces(scale: &Scale) -> Outcome {
    for (m, n) in scale.cells() {
        let nn = n as usize;
        let mut failure = None;
        for_each_u(m, nn, |a| {
            if failure.is_some() {
                return;
            }
            let seq = USequence::new(m, a.to_vec()).expect("element of U_n");
            let wt = seq_weight(&seq);
            let mut max = i64::MIN;
            let mut any_admissible = false;
            let mut s = 0i64;
            for i in 0..nn {
                let r = seq.rotate(i);
                let w = seq_weight(&r);
                if w != wt - n as i64 * ((m as i64 - 1) * i as i64 - s) {
                    failure = Some(format!("m={m}: rotation {i} of {seq} has weight {w}"));
                }
                if is_admissible(&r) {
                    any_admissible = true;
                    max = max.max(w);
                }
                s += a[i] as i64;
            }
            let class = classify(&seq);
            if !any_admissible || class.weight() != max {
                failure = Some(format!("m={m}: class of {seq} has no admissible maximum"));
            }
            let p = class.period();
            if p < nn {
                let base = USequence::new(m, a[..p].to_vec()).expect("period block");
                if seq_weight(&seq) != (nn / p) as i64 * seq_weight(&base) {
                    failure = Some(format!("m={m}: {seq} breaks repetition scaling"));
                }
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
        ensure!(p_poly(m, nn) == p_from_product(m, nn), "m={m} n={n}: P_n is not the product coefficient");
    }
    Ok(format!("{} cells", scale.cells().len()))
}

/// `[t^((m-1)n)] q^((m-1)C(n,2)) / prod_{i<n} (1 - q^-i t)`.
fn p_from_product(m: u64, n: usize) -> LaurentPoly {
    let top = (m - 1) as usize * n;
    let mut series = vec![LaurentPoly::zero(); top + 1];
    series[0] = LaurentPoly::one();
    for i in 0..n as i64 {
        // multiply by sum_k q^(-ik) t^k
        let mut next = vec![LaurentPoly::zero(); top + 1];
        for (a, c) in series.iter().enumerate() {
            for k in 0..=top - a {
                next[a + k] += &c.shift(-i * k as i64);
            }
        }
        series = next;
    }
    series[top].shift((m - 1) as i64 * (n * n.saturating_sub(1) / 2) as i64)
}

fn check_bijections(scale: &Scale) -> Outcome {
    for m in scale.ms.clone() {
        for n in scale.ns.clone().filter(|&n| n <= 7) {
            let nn = n as usize;
            let mut images = BTreeSet::new();
            for tree in enumerate_trees(m, nn) {
                let l = tree.to_partition();
                ensure!(l.in_t(m), "m={m}: {tree:?} maps outside T");
                ensure!(l.weight(m) == tree.weight(), "m={m}: {tree:?} and {l} differ in weight");
                ensure!(Tree::from_partition(&l, m).map_err(err)? == tree, "m={m}: {tree:?} does not round-trip");
                images.insert(l);
            }
            let t_n = enumerate_t(m, nn);
            ensure!(images.len() == t_n.len(), "m={m} n={n}: trees do not cover T_n");

            if n >= 1 {
                let mut admissible = 0usize;
                for_each_u(m, nn, |a| {
                    admissible += is_admissible(&USequence::new(m, a.to_vec()).expect("U_n")) as usize
                });
                ensure!(admissible == t_n.len(), "m={m} n={n}: {admissible} admissible sequences");
                for l in &t_n {
                    let a = phi(l, m).map_err(err)?;
                    ensure!(is_admissible(&a), "m={m}: phi({l}) is not admissible");
                    ensure!(seq_weight(&a) == l.weight(m), "m={m}: phi({l}) changes the weight");
                    ensure!(&phi_inv(&a).map_err(err)? == l, "m={m}: {l} does not round-trip through phi");
                }
                let tl = enumerate_tl(m, nn, false);
                let classes: BTreeSet<_> = tl
                    .iter()
                    .map(|l| classify(&phi(l, m).expect("in T")).rep().clone())
                    .collect();
                let prim: BTreeSet<_> =
                    enumerate_classes(m, nn, false).into_iter().map(|c| c.rep().clone()).collect();
                ensure!(
                    classes.len() == tl.len() && classes == prim,
                    "m={m} n={n}: T^L does not match the primitive classes"
                );
                let plus = enumerate_classes(m, nn, true);
                let q_classes = crate::necklaces::class_weight_poly(&plus);
                ensure!(q_classes == q_polys(m, nn).1, "m={m} n={n}: class weights differ from Q_n");
                for split in 1..nn {
                    for mu_ in enumerate_t(m, split) {
                        for nu in enumerate_t(m, nn - split) {
                            let a = classify(&phi(&star(&mu_, &nu, m), m).map_err(err)?);
                            let b = classify(&phi(&star(&nu, &mu_, m), m).map_err(err)?);
                            ensure!(a.rep() == b.rep(), "m={m}: {mu_}*{nu} and {nu}*{mu_} lie in different classes");
                        }
                    }
                }
                check_higgs_cell(m, nn)?;
            }
        }
    }
    Ok("all round-trips exact".into())
}

fn check_higgs_cell(m: u64, n: usize) -> std::result::Result<(), String> {
    let nn = n as i64;
    let all_classes = enumerate_classes(m, n, false);
    for d in 1..=nn {
        let seqs = enumerate_higgs(n, d, m);
        let shifted = enumerate_higgs(n, d + nn, m);
        ensure!(seqs.len() == shifted.len(), "m={m} n={n} d={d}: shift changes the count");
        if n <= 5 {
            let dual: BTreeSet<_> = seqs.iter().map(|s| s.dual()).collect();
            let target: BTreeSet<_> = enumerate_higgs(n, -d, m).into_iter().collect();
            ensure!(dual == target, "m={m} n={n} d={d}: duality fails");
        }
        if gcd_u64(n as u64, d as u64) != 1 {
            continue;
        }
        let mut hit = BTreeSet::new();
        for s in &seqs {
            let c = higgs_to_class(s).map_err(err)?;
            ensure!(c.is_primitive(), "m={m}: Phi({s}) is not primitive");
            ensure!((c.weight() + d).rem_euclid(nn) == 0, "m={m}: Phi({s}) has weight {}", c.weight());
            ensure!(&class_to_higgs(&c, d).map_err(err)? == s, "m={m}: {s} does not round-trip");
            hit.insert(c.rep().clone());
        }
        ensure!(hit.len() == seqs.len(), "m={m} n={n} d={d}: Phi is not injective");
        let matching = all_classes.iter().filter(|c| (c.weight() + d).rem_euclid(nn) == 0).count();
        ensure!(matching == seqs.len(), "m={m} n={n} d={d}: {matching} classes, {} sequences", seqs.len());
        let mut non_primitive = false;
        for_each_u(m, n, |a| {
            let c = classify(&USequence::new(m, a.to_vec()).expect("U_n"));
            non_primitive |= !c.is_primitive() && (c.weight() + d).rem_euclid(nn) == 0;
        });
        ensure!(!non_primitive, "m={m} n={n} d={d}: a repetition class has weight -d mod n");
        let dt = dt_formula(m, n as u64).map_err(err)?;
        ensure!(BigInt::from(seqs.len()) == dt, "m={m} n={n} d={d}: |H| = {}, DT = {dt}", seqs.len());
    }
    Ok(())
}

fn parse_all(list: &[&str]) -> Vec<Partition> {
    list.iter().map(|s| Partition::parse(s).expect("literal partition")).collect()
}

fn check_worked_example(_: &Scale) -> Outcome {
    let m = 2;
    let t4 = parse_all(&[
        "(0000)", "(0001)", "(0002)", "(0003)", "(0011)", "(0012)", "(0013)", "(0022)", "(0023)", "(0111)", "(0112)",
        "(0113)", "(0122)", "(0123)",
    ]);
    ensure!(enumerate_t(m, 4) == t4, "T_4 differs");
    let t0 = enumerate_t0(m, 4);
    ensure!(t0.len() == 5, "|T0_4| = {}", t0.len());
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
        let l = Partition::parse(lambda).expect("literal");
        let f = parse_all(factors);
        ensure!(factorize_t0(&l, m).map_err(err)? == f, "factorization of {lambda}");
        ensure!(star_all(&f, m) == l, "star product of the factors of {lambda}");
    }
    let tl = parse_all(&["(0000)", "(0001)", "(0002)", "(0003)", "(0011)", "(0012)", "(0013)", "(0023)"]);
    ensure!(enumerate_tl(m, 4, false) == tl, "T^L_4 differs");
    Ok("14 / 5 / 9 factorizations / 8".into())
}

fn lyndon_sum(m: u64, order: usize, plus: bool) -> TruncSeries {
    let mut coeffs = vec![RationalFunctionQ::zero()];
    for n in 1..order {
        let (qbar, q) = q_polys(m, n);
        let poly = if plus { q } else { qbar };
        let mut c = &rf(&poly) * &RationalFunctionQ::inv_one_minus_q_inv(n as u64);
        if plus && (m - 1) % 2 == 1 && n % 2 == 1 {
            c = -&c;
        }
        coeffs.push(c);
    }
    TruncSeries::from_coeffs(coeffs, order)
}

fn check_product_expansion(scale: &Scale) -> Outcome {
    let order = scale.n_max() as usize + 1;
    for m in scale.ms.clone() {
        let h = series_h(m, order);
        let lhs = pleth_exp(&lyndon_sum(m, order, false)).map_err(err)?;
        ensure!(lhs == h, "m={m}: H differs from Exp of the Lyndon sum");
        let signed = pleth_exp(&lyndon_sum(m, order, true)).map_err(err)?;
        ensure!(signed == h.sign_twist(m), "m={m}: signed expansion fails");
    }
    Ok(format!("order {order}"))
}

fn random_laurent(rng: &mut StdRng) -> LaurentPoly {
    (0..rng.gen_range(0..4)).map(|_| (rng.gen_range(-3i64..=3), rng.gen_range(-4i64..=4))).collect()
}

fn random_series(rng: &mut StdRng, order: usize) -> TruncSeries {
    let mut coeffs = vec![RationalFunctionQ::zero()];
    for _ in 1..order {
        coeffs.push(rf(&random_laurent(rng)));
    }
    TruncSeries::from_coeffs(coeffs, order)
}

fn check_plethystic(_: &Scale) -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..50 {
        let f = random_series(&mut rng, 10);
        ensure!(big_psi_inv(&big_psi(&f).map_err(err)?).map_err(err)? == f, "Psi^-1 Psi on sample {i}");
        ensure!(big_psi(&big_psi_inv(&f).map_err(err)?).map_err(err)? == f, "Psi Psi^-1 on sample {i}");
    }
    for i in 0..10 {
        let f = random_series(&mut rng, 10);
        ensure!(f.exp().map_err(err)?.log().map_err(err)? == f, "log exp on sample {i}");
        ensure!(pleth_log(&pleth_exp(&f).map_err(err)?).map_err(err)? == f, "Log Exp on sample {i}");
    }
    for i in 0..20 {
        let order = 8;
        let mut table = BTreeMap::new();
        for _ in 0..rng.gen_range(0..6) {
            let key = (rng.gen_range(1..order), rng.gen_range(-2i64..=2));
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                table.insert(key, int(c));
            }
        }
        let mut f = TruncSeries::zero(order);
        for (&(n, k), c) in &table {
            f = &f + &TruncSeries::monomial(rf(&LaurentPoly::monomial(c.clone(), k)), n, order);
        }
        let got = product_expansion(&pleth_exp(&f).map_err(err)?).map_err(err)?;
        ensure!(got == table, "Euler product exponents on sample {i}");
    }
    for i in 0..20 {
        let table: Vec<LaurentPoly> = (0..rng.gen_range(1..=12)).map(|_| random_laurent(&mut rng)).collect();
        ensure!(q_moebius_invert(&q_moebius_forward(&table)) == table, "q-Moebius round trip on sample {i}");
        ensure!(q_moebius_forward(&q_moebius_invert(&table)) == table, "q-Moebius round trip on sample {i}");
    }
    for n in 1..=30u64 {
        for s in divisors(n).into_iter().filter(|&s| s < n) {
            for m in 1..=4u64 {
                for _ in 0..50 {
                    let f: BTreeMap<u64, BigInt> = (1..=n).map(|k| (k, int(rng.gen_range(-100..=100)))).collect();
                    let got = signed_moebius_sum(&f, n, s, m).map_err(err)?;
                    let exception = m % 2 == 0 && n % 2 == 0 && s == n / 2 && s % 2 == 1;
                    let want = if exception {
                        let inner: BigInt = divisors(s).into_iter().map(|d| &f[&d] * mu(s / d)).sum();
                        -BigRational::new(inner, s.into())
                    } else {
                        BigRational::zero()
                    };
                    ensure!(got == want, "signed Moebius sum at n={n} s={s} m={m}");
                }
            }
        }
    }
    Ok("all round trips exact".into())
}

fn partitions_up_to(len: usize, max_part: u64) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    let mut frontier = vec![Vec::<u64>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &frontier {
            let lo = p.last().copied().unwrap_or(0);
            for v in lo..=max_part {
                let mut q = p.clone();
                q.push(v);
                out.push(Partition::from_sorted_unchecked(q.clone()));
                next.push(q);
            }
        }
        frontier = next;
    }
    out
}

fn check_shuffle(_: &Scale) -> Outcome {
    let parts = partitions_up_to(4, 3);
    let mut pairs = 0;
    for m in [2u64, 3] {
        for a in &parts {
            for b in parts.iter().filter(|b| a.len() + b.len() <= 4) {
                let got = shuffle_q0(a, b, m);
                ensure!(got == SymPoly::p_lambda(&star(a, b, m)), "m={m}: P_{a} * P_{b} != P_({a}*{b})");
                pairs += 1;
            }
        }
    }
    for m in 1..=4u64 {
        for a in parts.iter().filter(|p| p.len() <= 2) {
            for b in parts.iter().filter(|b| !b.is_empty() && !a.is_empty() && a.len() + b.len() <= 4) {
                let (fa, fb) = (SymPoly::p_lambda(a), SymPoly::p_lambda(b));
                let ab = shuffle(&fa, &fb, m, 1);
                let ba = shuffle(&fb, &fa, m, 1);
                let odd = (m - 1) % 2 == 1 && (a.len() * b.len()) % 2 == 1;
                let sign = if odd { int(-1) } else { int(1) };
                ensure!(ab == ba.scale(&sign), "m={m}: P_{a} and P_{b} do not supercommute");
            }
        }
    }
    let zero = Partition::parse("(0)").expect("literal");
    let pair = Partition::parse("(00)").expect("literal");
    ensure!(
        shuffle_q0(&zero, &pair, 2) != shuffle_q0(&pair, &zero, 2),
        "the q = 0 product unexpectedly commutes"
    );
    Ok(format!("{pairs} products; supercommutative at q = 1"))
}

fn check_literal_forms(_: &Scale) -> Outcome {
    let literal = dt_formula_literal(2, 2).map_err(err)?;
    ensure!(literal == rat(3, 2), "literal binomial form gives {literal}, expected 3/2");
    ensure!(dt_formula(2, 2).map_err(err)? == int(1), "corrected form does not give 1");
    let series = dtq_from_series(2, 3).map_err(err)?;
    let wrong = dtq_literal_normalization(2, 2).map_err(err)?;
    ensure!(wrong == LaurentPoly::monomial(1, -1), "q^(1-n) normalization gives {wrong}");
    ensure!(series[1] == LaurentPoly::q() && wrong != series[1], "series route gives {}", series[1]);
    Ok("literal forms give 3/2 and q^-1; corrected forms give 1 and q".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_at_small_scale() {
        let scale = Scale::new(1..=2, 1..=4);
        for check in registry() {
            let report = check.run(&scale);
            assert!(report.passed, "{}: {}", report.name, report.detail);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(find("divisibility").is_some());
        assert!(find("nope").is_none());
    }
}
