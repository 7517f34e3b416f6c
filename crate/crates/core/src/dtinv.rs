//! Numeric and quantized DT invariants of the m-loop quiver, computed by a
//! closed Moebius formula, by counting cyclic classes, and by extracting
//! Euler-product exponents from the generating series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, divisors, mu, LaurentPoly, RationalFunctionQ};
use crate::hilbert::{f_numeric_coeffs, series_h};
use crate::necklaces::{class_weight_poly, enumerate_classes, CyclicClass};
use crate::plethystic::pleth_log;

fn sign_odd(m: u64, k: u64) -> bool {
    (m - 1) % 2 == 1 && k % 2 == 1
}

/// `(1/n^2) sum_{d | n} mu(n/d) (-1)^((m-1)(n-d)) C(md - 1, d - 1)`.
pub fn dt_formula(m: u64, n: u64) -> Result<BigInt> {
    check_mn(m, n)?;
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let w = mu(n / d);
        if w == 0 {
            continue;
        }
        let term = binomial(m * d - 1, d - 1) * w;
        if sign_odd(m, n - d) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    let (q, r) = acc.div_rem(&BigInt::from(n * n));
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "formula sum {acc} not divisible by {} at m = {m}, n = {n}",
            n * n
        )));
    }
    Ok(q)
}

/// The same sum with the binomial `C(mn - 1, n - 1)` independent of `d`.
/// Kept as a diagnostic: it is not integral in general (3/2 at `m = n = 2`).
pub fn dt_formula_literal(m: u64, n: u64) -> Result<BigRational> {
    check_mn(m, n)?;
    let c = binomial(m * n - 1, n - 1);
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let w = mu(n / d);
        let term = &c * w;
        if sign_odd(m, n - d) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(BigRational::new(acc, BigInt::from(n * n)))
}

fn check_mn(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("need m, n >= 1, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Coefficients of the plethystic logarithm of an integer series with
/// constant term 1 (no `q`), degrees `1..g.len()`.
pub fn integer_pleth_log(g: &[BigInt]) -> Vec<BigRational> {
    assert!(!g.is_empty() && g[0].is_one());
    let order = g.len();
    // n l_n = n g_n - sum_{k=1}^{n-1} k l_k g_{n-k}
    let mut l = vec![BigRational::zero(); order];
    for n in 1..order {
        let mut acc = BigRational::from_integer(&g[n] * n);
        for k in 1..n {
            acc -= &l[k] * BigRational::from_integer(&g[n - k] * k);
        }
        l[n] = acc / BigRational::from_integer(n.into());
    }
    let mut e = vec![BigRational::zero(); order];
    for n in 1..order {
        for d in divisors(n as u64) {
            let w = mu(d);
            if w != 0 {
                e[n] += &l[n / d as usize] * BigRational::new(w.into(), d.into());
            }
        }
    }
    e
}

/// `DT_1, ..., DT_{order-1}` from `F((-1)^(m-1) t) = prod (1 - t^n)^(-(-1)^((m-1)n) n DT_n)`.
pub fn dt_from_series(m: u64, order: usize) -> Result<Vec<BigInt>> {
    if m == 0 || order < 2 {
        return Err(Error::InvalidArgument(format!("need m >= 1 and order >= 2, got {m}, {order}")));
    }
    let mut f = f_numeric_coeffs(m, order);
    for (n, c) in f.iter_mut().enumerate() {
        if sign_odd(m, n as u64) {
            *c = -&*c;
        }
    }
    let e = integer_pleth_log(&f);
    (1..order)
        .map(|n| {
            let mut v = e[n].clone();
            if sign_odd(m, n as u64) {
                v = -v;
            }
            let v = v / BigRational::from_integer(n.into());
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NotIntegral { degree: n, coefficient: v.to_string() })
            }
        })
        .collect()
}

fn exact_div(count: usize, n: u64, what: &str) -> Result<BigInt> {
    if count as u64 % n != 0 {
        return Err(Error::InternalInconsistency(format!("{count} {what} not divisible by n = {n}")));
    }
    Ok(BigInt::from(count as u64 / n))
}

/// `|U_n^{prim,+} / C_n| / n`.
pub fn dt_from_classes(m: u64, n: u64) -> Result<BigInt> {
    check_mn(m, n)?;
    exact_div(enumerate_classes(m, n as usize, true).len(), n, "classes")
}

/// `DT_n` from an already enumerated list of plus classes.
pub fn dt_from_class_list(classes: &[CyclicClass], n: u64) -> Result<BigInt> {
    exact_div(classes.len(), n, "classes")
}

/// `DT_n(q) = (1 - q^-1) (-1)^((m-1)n) [t^n] Log H(q, (-1)^(m-1) t)` for
/// `n = 1..order-1`.
pub fn dtq_from_series(m: u64, order: usize) -> Result<Vec<LaurentPoly>> {
    if m == 0 || order < 2 {
        return Err(Error::InvalidArgument(format!("need m >= 1 and order >= 2, got {m}, {order}")));
    }
    let log = pleth_log(&series_h(m, order).sign_twist(m))?;
    let factor = RationalFunctionQ::inv_one_minus_q_inv(1).inv()?;
    (1..order)
        .map(|n| {
            let mut c = log.coeff(n) * &factor;
            if sign_odd(m, n as u64) {
                c = -&c;
            }
            c.as_laurent()
                .filter(LaurentPoly::is_integral)
                .ok_or_else(|| Error::NonLaurent { n: n as u64, value: c.to_string() })
        })
        .collect()
}

/// `q^(n-1) Q_n(q) / [n]` with `Q_n` summed over the plus classes.
pub fn dtq_from_classes(m: u64, n: u64) -> Result<LaurentPoly> {
    check_mn(m, n)?;
    dtq_from_class_list(&enumerate_classes(m, n as usize, true), n)
}

pub fn dtq_from_class_list(classes: &[CyclicClass], n: u64) -> Result<LaurentPoly> {
    let q_n = class_weight_poly(classes);
    Ok(q_n.div_exact(&LaurentPoly::q_integer(n))?.shift(n as i64 - 1))
}

/// `q^(1-n) Q_n(q) / [n]`, the normalization that disagrees with the series
/// route. Diagnostic only.
pub fn dtq_literal_normalization(m: u64, n: u64) -> Result<LaurentPoly> {
    Ok(dtq_from_classes(m, n)?.shift(2 - 2 * n as i64))
}

/// Number of plus classes in each weight residue class modulo `n`.
pub fn residue_counts(m: u64, n: u64) -> Result<Vec<u64>> {
    check_mn(m, n)?;
    Ok(residue_counts_of(&enumerate_classes(m, n as usize, true), n))
}

pub fn residue_counts_of(classes: &[CyclicClass], n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize];
    for c in classes {
        counts[c.weight().rem_euclid(n as i64) as usize] += 1;
    }
    counts
}

/// One row of a DT table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTRecord {
    pub m: u64,
    pub n: u64,
    pub dt: BigInt,
    pub dt_poly: Option<LaurentPoly>,
    /// Route name to agreement with `dt` (and `dt_poly` where quantized).
    pub routes: BTreeMap<String, bool>,
}

impl DTRecord {
    pub fn all_agree(&self) -> bool {
        self.routes.values().all(|&ok| ok)
    }

    /// Integral coefficients and `dt_poly(1) = dt`, when a polynomial is present.
    pub fn is_consistent(&self) -> bool {
        self.dt_poly.as_ref().map_or(true, |p| {
            p.is_integral() && p.eval_at_one() == BigRational::from_integer(self.dt.clone())
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("m".into(), self.m.into());
        obj.insert("n".into(), self.n.into());
        obj.insert("dt".into(), self.dt.to_string().into());
        if let Some(p) = &self.dt_poly {
            obj.insert("dt_poly".into(), p.to_json());
        }
        let routes: serde_json::Map<_, _> =
            self.routes.iter().map(|(k, &v)| (k.clone(), v.into())).collect();
        obj.insert("routes".into(), routes.into());
        obj.into()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("DT record: bad or missing {what}"));
        let m = value["m"].as_u64().ok_or_else(|| bad("m"))?;
        let n = value["n"].as_u64().ok_or_else(|| bad("n"))?;
        let dt = value["dt"]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("dt"))?;
        let dt_poly = match value.get("dt_poly") {
            Some(p) => Some(LaurentPoly::from_json(p)?),
            None => None,
        };
        let routes = value["routes"]
            .as_object()
            .ok_or_else(|| bad("routes"))?
            .iter()
            .map(|(k, v)| v.as_bool().map(|b| (k.clone(), b)).ok_or_else(|| bad("route flag")))
            .collect::<Result<_>>()?;
        Ok(DTRecord { m, n, dt, dt_poly, routes })
    }
}

/// Nonnegativity of every coefficient; reported, never asserted.
pub fn has_nonnegative_coefficients(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        t.iter().copied().collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(dt_formula(2, 2).unwrap(), BigInt::from(1));
        assert_eq!(dt_formula(3, 3).unwrap(), BigInt::from(3));
        assert_eq!(dt_formula(2, 6).unwrap(), BigInt::from(13));
        assert!(dt_formula(0, 2).is_err());
    }

    #[test]
    fn literal_formula_is_not_integral() {
        assert_eq!(dt_formula_literal(2, 2).unwrap(), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn series_examples() {
        assert_eq!(dt_from_series(2, 7).unwrap(), ints(&[1, 1, 1, 2, 5, 13]));
        assert_eq!(dt_from_series(1, 6).unwrap(), ints(&[1, 0, 0, 0, 0]));
        assert_eq!(dt_from_series(3, 5).unwrap()[3], BigInt::from(10));
    }

    #[test]
    fn class_examples() {
        assert_eq!(dt_from_classes(2, 4).unwrap(), BigInt::from(2));
        assert_eq!(dt_from_classes(2, 2).unwrap(), BigInt::from(1));
        assert_eq!(dt_from_classes(1, 2).unwrap(), BigInt::from(0));
    }

    #[test]
    fn quantized_examples() {
        let s = dtq_from_series(2, 5).unwrap();
        assert_eq!(s[0], LaurentPoly::one());
        assert_eq!(s[1], LaurentPoly::q());
        assert_eq!(s[2], lp(&[(3, 1)]));
        assert_eq!(s[3], lp(&[(4, 1), (6, 1)]));
        assert_eq!(dtq_from_classes(2, 2).unwrap(), LaurentPoly::q());
        assert_eq!(dtq_from_classes(2, 3).unwrap(), lp(&[(3, 1)]));
        assert_eq!(dtq_from_classes(1, 1).unwrap(), LaurentPoly::one());
        assert_eq!(dtq_literal_normalization(2, 2).unwrap(), lp(&[(-1, 1)]));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_counts(2, 2).unwrap(), vec![1, 1]);
        assert_eq!(residue_counts(2, 4).unwrap(), vec![2, 2, 2, 2]);
        assert_eq!(residue_counts(1, 1).unwrap(), vec![1]);
    }

    #[test]
    fn record_json() {
        let rec = DTRecord {
            m: 2,
            n: 4,
            dt: BigInt::from(2),
            dt_poly: Some(lp(&[(4, 1), (6, 1)])),
            routes: [("classes", true), ("formula", true), ("series", true)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        };
        let json = rec.to_json();
        assert_eq!(
            json.to_string(),
            r#"{"dt":"2","dt_poly":[[4,"1"],[6,"1"]],"m":2,"n":4,"routes":{"classes":true,"formula":true,"series":true}}"#
        );
        assert_eq!(DTRecord::from_json(&json).unwrap(), rec);
        assert!(rec.is_consistent() && rec.all_agree());
    }
}
