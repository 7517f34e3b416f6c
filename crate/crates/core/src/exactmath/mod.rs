//! Exact arithmetic: big integers and rationals, Laurent polynomials and
//! rational functions in `q`, and the elementary number theory the rest of
//! the crate leans on.

mod laurent;
mod ratfunc;
pub mod zpoly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use laurent::{Coefficient, LaurentPoly};
pub use ratfunc::RationalFunctionQ;

use crate::error::{Error, Result};

pub type BigInteger = BigInt;
pub use num_rational::BigRational as Rational;

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// The Moebius function.
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("moebius(0) is undefined".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Moebius function for arguments known to be positive.
pub(crate) fn mu(n: u64) -> i64 {
    moebius(n).expect("positive argument") as i64
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `(1/n) * sum_{d | n} mu(n/d) (-1)^((m-1)(d-1)s) f(gcd(d, s))` for a proper
/// divisor `s` of `n`. This vanishes except when `m` and `n` are even and
/// `s = n/2` is odd.
pub fn signed_moebius_sum(f: &BTreeMap<u64, BigInt>, n: u64, s: u64, m: u64) -> Result<BigRational> {
    if n == 0 || s == 0 || n % s != 0 || s >= n {
        return Err(Error::InvalidArgument(format!(
            "s = {s} must be a proper divisor of n = {n}"
        )));
    }
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let mu = mu(n / d);
        if mu == 0 {
            continue;
        }
        let g = d.gcd(&s);
        let value = f.get(&g).ok_or_else(|| {
            Error::InvalidArgument(format!("f is not defined at {g}"))
        })?;
        let odd = (m - 1) % 2 == 1 && (d - 1) % 2 == 1 && s % 2 == 1;
        let sign = if odd { -mu } else { mu };
        acc += value * sign;
    }
    Ok(BigRational::new(acc, BigInt::from(n)))
}

/// The cyclotomic polynomial `Phi_n(q)`.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    assert!(n >= 1);
    // q^n - 1 = prod_{d | n} Phi_d
    let mut p = &LaurentPoly::monomial(1, n as i64) - &LaurentPoly::one();
    for d in divisors(n) {
        if d < n {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic factor");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 1), BigInt::from(3));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_sums_to_delta() {
        for n in 1..=500u64 {
            let s: i64 = divisors(n).into_iter().map(mu).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    fn table(vals: &[(u64, i64)]) -> BTreeMap<u64, BigInt> {
        vals.iter().map(|&(k, v)| (k, BigInt::from(v))).collect()
    }

    #[test]
    fn signed_moebius_sum_examples() {
        let f = table(&[(1, 7), (2, -3), (4, 11)]);
        assert_eq!(signed_moebius_sum(&f, 2, 1, 3).unwrap(), BigRational::zero());
        assert_eq!(signed_moebius_sum(&f, 2, 1, 2).unwrap(), BigRational::from_integer((-7).into()));
        assert_eq!(signed_moebius_sum(&f, 4, 2, 2).unwrap(), BigRational::zero());
        assert!(signed_moebius_sum(&f, 4, 3, 2).is_err());
        assert!(signed_moebius_sum(&f, 4, 4, 2).is_err());
    }

    #[test]
    fn signed_moebius_sum_vanishes_outside_the_exception() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=30u64 {
            for s in divisors(n).into_iter().filter(|&s| s < n) {
                for m in 1..=4u64 {
                    for _ in 0..50 {
                        let f: BTreeMap<u64, BigInt> =
                            (1..=n).map(|k| (k, BigInt::from(rng.gen_range(-100i64..=100)))).collect();
                        let got = signed_moebius_sum(&f, n, s, m).unwrap();
                        let exception = m % 2 == 0 && n % 2 == 0 && s == n / 2 && s % 2 == 1;
                        let want = if exception {
                            let inner: BigInt = divisors(s).into_iter().map(|d| &f[&d] * mu(s / d)).sum();
                            -BigRational::new(inner, BigInt::from(s))
                        } else {
                            BigRational::zero()
                        };
                        assert_eq!(got, want, "n={n} s={s} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let lp = |t: &[(i64, i64)]| t.iter().copied().collect::<LaurentPoly>();
        assert_eq!(cyclotomic(1), lp(&[(0, -1), (1, 1)]));
        assert_eq!(cyclotomic(2), lp(&[(0, 1), (1, 1)]));
        assert_eq!(cyclotomic(6), lp(&[(0, 1), (1, -1), (2, 1)]));
        let mut prod = LaurentPoly::one();
        for d in divisors(12).into_iter().filter(|&d| d > 1) {
            prod = &prod * &cyclotomic(d);
        }
        assert_eq!(prod, LaurentPoly::q_integer(12));
    }
}
