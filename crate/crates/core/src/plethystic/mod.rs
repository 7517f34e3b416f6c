//! Truncated series in `t` over `Q(q)` with the lambda-ring structure given
//! by the Adams operations `psi_i(q) = q^i`, `psi_i(t) = t^i`.
//!
//! `Psi = sum_i psi_i / i` conjugates ordinary `exp`/`log` into the
//! plethystic `Exp`/`Log`, which turn sums into Euler products:
//! `Exp(sum c_{n,k} q^k t^n) = prod (1 - q^k t^n)^(-c_{n,k})`.

mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use series::TruncSeries;

use crate::error::{Error, Result};
use crate::exactmath::{divisors, mu, LaurentPoly};

fn require_no_constant(f: &TruncSeries, what: &str) -> Result<()> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} needs a series without constant term")))
    }
}

fn weighted_adams_sum(f: &TruncSeries, weight: impl Fn(u64) -> BigRational) -> TruncSeries {
    let mut out = TruncSeries::zero(f.order());
    // psi_i raises t-degree by a factor i, so the sum is finite.
    for i in 1..f.order().max(2) as u64 {
        let w = weight(i);
        if w == BigRational::from_integer(0.into()) {
            continue;
        }
        let term = f.adams(i);
        out = &out + &term.map_coeffs(|c| c.scale(&w));
    }
    out
}

/// `Psi(f) = sum_{i >= 1} psi_i(f) / i`.
pub fn big_psi(f: &TruncSeries) -> Result<TruncSeries> {
    require_no_constant(f, "Psi")?;
    Ok(weighted_adams_sum(f, |i| BigRational::new(1.into(), i.into())))
}

/// `Psi^-1(f) = sum_{i >= 1} mu(i) psi_i(f) / i`.
pub fn big_psi_inv(f: &TruncSeries) -> Result<TruncSeries> {
    require_no_constant(f, "Psi^-1")?;
    Ok(weighted_adams_sum(f, |i| BigRational::new(mu(i).into(), i.into())))
}

/// Plethystic exponential `Exp = exp . Psi`.
pub fn pleth_exp(f: &TruncSeries) -> Result<TruncSeries> {
    big_psi(f)?.exp()
}

/// Plethystic logarithm `Log = Psi^-1 . log`.
pub fn pleth_log(g: &TruncSeries) -> Result<TruncSeries> {
    big_psi_inv(&g.log()?)
}

/// Euler-product exponents of a series with constant term 1.
///
/// Writes `g = prod_{n,k} (1 - q^k t^n)^(-c_{n,k})` below the truncation
/// order and returns the map `(n, k) -> c_{n,k}`. Fails with
/// [`Error::NotIntegral`] at the first t-degree whose plethystic logarithm
/// coefficient is not an integral Laurent polynomial.
pub fn product_expansion(g: &TruncSeries) -> Result<BTreeMap<(usize, i64), BigInt>> {
    let log = pleth_log(g)?;
    let mut out = BTreeMap::new();
    for n in 1..log.order() {
        let c = log.coeff(n);
        let terms = c
            .as_laurent()
            .and_then(|p| p.integer_terms())
            .ok_or_else(|| Error::NotIntegral {
                degree: n,
                coefficient: c.to_string(),
            })?;
        for (k, v) in terms {
            out.insert((n, k), v);
        }
    }
    Ok(out)
}

/// Inverse q-Moebius transform. `g[n-1]` holds `g_n`; returns `f` with
/// `f_n(q) = sum_{d | n} mu(n/d) d g_d(q^(n/d))`.
pub fn q_moebius_invert(g: &[LaurentPoly]) -> Vec<LaurentPoly> {
    (1..=g.len() as u64)
        .map(|n| {
            let mut acc = LaurentPoly::zero();
            for d in divisors(n) {
                let w = mu(n / d) * d as i64;
                if w != 0 {
                    acc += &g[d as usize - 1]
                        .adams(n / d)
                        .scale(&BigRational::from_integer(w.into()));
                }
            }
            acc
        })
        .collect()
}

/// Forward q-Moebius transform: `n g_n(q) = sum_{d | n} f_d(q^(n/d))`.
pub fn q_moebius_forward(f: &[LaurentPoly]) -> Vec<LaurentPoly> {
    (1..=f.len() as u64)
        .map(|n| {
            let mut acc = LaurentPoly::zero();
            for d in divisors(n) {
                acc += &f[d as usize - 1].adams(n / d);
            }
            acc.scale(&BigRational::new(1.into(), n.into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::RationalFunctionQ;
    use proptest::prelude::*;

    fn rf(p: LaurentPoly) -> RationalFunctionQ {
        RationalFunctionQ::from_laurent(&p)
    }

    #[test]
    fn psi_of_t() {
        let n = 7;
        let coeffs: Vec<_> = (0..n)
            .map(|i| {
                if i == 0 {
                    RationalFunctionQ::zero()
                } else {
                    RationalFunctionQ::from_rational(&BigRational::new(1.into(), (i as i64).into()))
                }
            })
            .collect();
        assert_eq!(big_psi(&TruncSeries::t(n)).unwrap(), TruncSeries::from_coeffs(coeffs, n));
    }

    #[test]
    fn psi_inverse_two_term_expansion() {
        let half = RationalFunctionQ::from_rational(&BigRational::new(1.into(), 2.into()));
        let f = TruncSeries::from_coeffs(vec![RationalFunctionQ::zero(), RationalFunctionQ::one(), half], 3);
        assert_eq!(big_psi_inv(&f).unwrap(), TruncSeries::t(3));
    }

    #[test]
    fn plethystic_exp_of_t_is_geometric() {
        let n = 8;
        assert_eq!(
            pleth_exp(&TruncSeries::t(n)).unwrap(),
            TruncSeries::geometric(&RationalFunctionQ::one(), 1, n)
        );
        let qt2 = TruncSeries::monomial(rf(LaurentPoly::q()), 2, n);
        assert_eq!(pleth_exp(&qt2).unwrap(), TruncSeries::geometric(&rf(LaurentPoly::q()), 2, n));
        assert!(pleth_exp(&TruncSeries::one(n)).is_err());
        assert!(pleth_log(&TruncSeries::t(n)).is_err());
    }

    #[test]
    fn product_expansion_examples() {
        let n = 8;
        let geo = TruncSeries::geometric(&RationalFunctionQ::one(), 1, n);
        let c = product_expansion(&geo).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&(1, 0)], BigInt::from(1));

        let one_minus_qt = TruncSeries::geometric(&rf(LaurentPoly::q()), 1, n);
        let t2 = TruncSeries::geometric(&RationalFunctionQ::one(), 2, n);
        let g = &one_minus_qt * &(&t2 * &t2);
        let c = product_expansion(&g).unwrap();
        let expected: BTreeMap<_, _> = [((1, 1), BigInt::from(1)), ((2, 0), BigInt::from(2))].into();
        assert_eq!(c, expected);
    }

    #[test]
    fn q_moebius_examples() {
        // g_n = q^n / n comes from f_1 = q alone
        let n = 8;
        let g: Vec<_> = (1..=n)
            .map(|k| LaurentPoly::monomial_rational(BigRational::new(1.into(), (k as i64).into()), k as i64))
            .collect();
        let f = q_moebius_invert(&g);
        assert_eq!(f[0], LaurentPoly::q());
        assert!(f[1..].iter().all(LaurentPoly::is_zero));
        assert!(q_moebius_invert(&vec![LaurentPoly::zero(); 5]).iter().all(LaurentPoly::is_zero));
    }

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|v| v.into_iter().collect())
    }

    fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec(laurent(), order - 1).prop_map(move |cs| {
            let mut coeffs = vec![RationalFunctionQ::zero()];
            coeffs.extend(cs.iter().map(RationalFunctionQ::from_laurent));
            TruncSeries::from_coeffs(coeffs, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn q_moebius_round_trip(table in prop::collection::vec(laurent(), 1..=12)) {
            prop_assert_eq!(q_moebius_invert(&q_moebius_forward(&table)), table.clone());
            prop_assert_eq!(q_moebius_forward(&q_moebius_invert(&table)), table);
        }

        #[test]
        fn exp_log_inverse(f in series(7)) {
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
            prop_assert_eq!(pleth_log(&pleth_exp(&f).unwrap()).unwrap(), f);
        }

        #[test]
        fn psi_operators_inverse(f in series(10)) {
            prop_assert_eq!(big_psi_inv(&big_psi(&f).unwrap()).unwrap(), f.clone());
            prop_assert_eq!(big_psi(&big_psi_inv(&f).unwrap()).unwrap(), f);
        }

        #[test]
        fn exp_is_a_homomorphism(f in series(6), g in series(6)) {
            let lhs = pleth_exp(&(&f + &g)).unwrap();
            let rhs = &pleth_exp(&f).unwrap() * &pleth_exp(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adams_is_a_ring_map(f in series(8), g in series(8), i in 1u64..4) {
            prop_assert_eq!((&f * &g).adams(i), &f.adams(i) * &g.adams(i));
        }

        #[test]
        fn product_expansion_recovers_exponents(
            table in prop::collection::btree_map((1usize..7, -2i64..=2), -3i64..=3, 0..6)
        ) {
            let order = 7;
            let mut f = TruncSeries::zero(order);
            for (&(n, k), &c) in &table {
                f = &f + &TruncSeries::monomial(rf(LaurentPoly::monomial(c, k)), n, order);
            }
            let got = product_expansion(&pleth_exp(&f).unwrap()).unwrap();
            let want: BTreeMap<_, _> = table
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(key, c)| (key, BigInt::from(c)))
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
