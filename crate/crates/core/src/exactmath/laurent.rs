use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// A finitely supported Laurent polynomial in `q` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::monomial_rational(BigRational::from_integer(c.into()), e)
    }

    pub fn monomial_rational(c: BigRational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// The q-integer `[n] = 1 + q + ... + q^(n-1)`.
    pub fn q_integer(n: u64) -> Self {
        (0..n as i64).map(|e| (e, 1i64)).collect()
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Coefficient,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into_rational());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().map_or(true, |e| e >= 0)
    }

    /// Integer coefficients as `(exponent, coefficient)` pairs, or `None`
    /// when some coefficient is not an integer.
    pub fn integer_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.coeffs
            .iter()
            .map(|(&e, c)| c.is_integer().then(|| (e, c.to_integer())))
            .collect()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Adams operation `psi_i`: substitute `q -> q^i`.
    pub fn adams(&self, i: u64) -> Self {
        assert!(i >= 1, "Adams operations are indexed from 1");
        let i = i as i64;
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * i, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Value at an integer point; rejects `q = 0` when negative powers occur.
    pub fn eval_int(&self, x: i64) -> Option<BigRational> {
        if x == 0 && !self.is_polynomial() {
            return None;
        }
        let x = BigRational::from_integer(x.into());
        let mut acc = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let pow = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * pow;
        }
        Some(acc)
    }

    /// Exact quotient `h` with `self = divisor * h`.
    ///
    /// Both arguments are shifted to ordinary polynomials with nonzero
    /// constant term and divided from the top exponent down.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dlow), Some(dhigh)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(flow) = self.min_exponent() else {
            return Ok(Self::zero());
        };
        let dlead = divisor.coeffs[&dhigh].clone();
        let mut rem = self.shift(-flow);
        let span = dhigh - dlow;
        let mut quot = LaurentPoly::zero();
        while let Some(top) = rem.max_exponent() {
            if top < span {
                return Err(Error::NotDivisible);
            }
            let k = top - span;
            let c = rem.coeffs[&top].clone() / &dlead;
            for (&e, dc) in &divisor.coeffs {
                rem.add_term(e - dlow + k, -(dc * &c));
            }
            debug_assert!(rem.max_exponent().map_or(true, |t| t < top));
            quot.add_term(k, c);
        }
        Ok(quot.shift(flow - dlow))
    }

    /// Residue modulo `q^n - 1`: every exponent is reduced into `0..n`.
    pub fn reduce_mod_cyclic(&self, n: u64) -> LaurentPoly {
        assert!(n >= 1);
        let n = n as i64;
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.coeffs {
            out.add_term(e.rem_euclid(n), c.clone());
        }
        out
    }

    /// Remainder of a polynomial (nonnegative exponents) on division by a
    /// monic polynomial.
    pub fn rem_monic(&self, modulus: &LaurentPoly) -> LaurentPoly {
        assert!(self.is_polynomial() && modulus.is_polynomial());
        let top = modulus.max_exponent().expect("nonzero modulus");
        assert!(modulus.coeff(top).is_one(), "modulus must be monic");
        let mut rem = self.clone();
        while let Some(e) = rem.max_exponent() {
            if e < top {
                break;
            }
            let c = rem.coeffs[&e].clone();
            for (&me, mc) in &modulus.coeffs {
                rem.add_term(me + e - top, -(mc * &c));
            }
        }
        rem
    }

    /// Split as `q^shift * p(q)` with `p` an integer polynomial, when every
    /// coefficient is an integer.
    pub(crate) fn to_zpoly(&self) -> Option<(i64, ZPoly)> {
        let low = self.min_exponent().unwrap_or(0);
        let span = self.max_exponent().map_or(0, |h| (h - low) as usize + 1);
        let mut coeffs = vec![BigInt::zero(); span];
        for (&e, c) in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            coeffs[(e - low) as usize] = c.to_integer();
        }
        Some((low, ZPoly::from_coeffs(coeffs)))
    }

    /// Clear rational denominators: `self = zpoly * q^shift / denom`.
    pub(crate) fn to_scaled_zpoly(&self) -> (i64, ZPoly, BigInt) {
        let denom = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = self.scale(&BigRational::from_integer(denom.clone()));
        let (shift, p) = scaled.to_zpoly().expect("denominators cleared");
        (shift, p, denom)
    }

    pub(crate) fn from_zpoly(p: &ZPoly, shift: i64) -> Self {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as i64 + shift, BigRational::from_integer(c.clone())))
            .collect()
    }

    /// Compact rendering used inside series coefficients: terms ordered by
    /// increasing absolute exponent, no spaces (`1-q^-1`, `1+q`).
    pub fn to_compact_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by_key(|(&e, _)| (e.abs(), e));
        let mut out = String::new();
        for (i, (&e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            out.push_str(&term_body(e, &c.abs()));
        }
        out
    }

    /// JSON rendering: sorted `[exponent, "coefficient"]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(&e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Laurent polynomial: {value}"));
        let items = value.as_array().ok_or_else(bad)?;
        let mut p = LaurentPoly::zero();
        for item in items {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let e = pair[0].as_i64().ok_or_else(bad)?;
            let c = match &pair[1] {
                serde_json::Value::String(s) => s.parse::<BigRational>().map_err(|_| bad())?,
                serde_json::Value::Number(n) => {
                    BigRational::from_integer(n.as_i64().ok_or_else(bad)?.into())
                }
                _ => return Err(bad()),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// `|c| * q^e` rendered without its sign.
fn term_body(e: i64, c: &BigRational) -> String {
    let power = match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    };
    match (c.is_one(), e) {
        (_, 0) => c.to_string(),
        (true, _) => power,
        (false, _) => format!("{c}*{power}"),
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: increasing exponents, e.g. `q^-2 + 3 + 2*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let body = term_body(e, &c.abs());
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Anything usable as a Laurent coefficient.
pub trait Coefficient {
    fn into_rational(self) -> BigRational;
}

impl Coefficient for i64 {
    fn into_rational(self) -> BigRational {
        BigRational::from_integer(self.into())
    }
}

impl Coefficient for BigInt {
    fn into_rational(self) -> BigRational {
        BigRational::from_integer(self)
    }
}

impl Coefficient for BigRational {
    fn into_rational(self) -> BigRational {
        self
    }
}

impl<C: Coefficient> FromIterator<(i64, C)> for LaurentPoly {
    fn from_iter<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        terms.iter().copied().collect()
    }

    #[test]
    fn multiplication_examples() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
        assert_eq!(&a * &LaurentPoly::one(), a);
        assert_eq!(
            &lp(&[(0, 1), (1, 1)]) * &lp(&[(0, 1), (2, 1)]),
            LaurentPoly::q_integer(4)
        );
    }

    #[test]
    fn exact_division_examples() {
        let f = lp(&[(3, 1), (2, 1), (1, 1)]);
        assert_eq!(f.div_exact(&LaurentPoly::q_integer(3)).unwrap(), LaurentPoly::q());
        assert_eq!(
            lp(&[(0, 1), (2, -1)]).div_exact(&lp(&[(0, 1), (1, -1)])).unwrap(),
            lp(&[(0, 1), (1, 1)])
        );
        assert!(matches!(
            lp(&[(1, 1), (0, 2)]).div_exact(&lp(&[(0, 1), (1, 1)])),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            LaurentPoly::one().div_exact(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        ));
        // Laurent shifts commute with divisibility.
        assert_eq!(
            lp(&[(-3, 1), (-1, -1)]).div_exact(&lp(&[(5, 1), (6, 1)])).unwrap(),
            lp(&[(-8, 1), (-7, -1)])
        );
    }

    #[test]
    fn adams_examples() {
        let a = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(a.adams(2), lp(&[(2, 1), (-2, 1)]));
        assert_eq!(a.adams(1), a);
        assert_eq!(LaurentPoly::q_integer(2).adams(2), lp(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn text_and_json_forms() {
        let p = lp(&[(-2, 1), (0, 3), (1, 2)]);
        assert_eq!(p.to_string(), "q^-2 + 3 + 2*q");
        assert_eq!(lp(&[(0, 1), (-1, -1)]).to_string(), "-q^-1 + 1");
        assert_eq!(lp(&[(0, 1), (-1, -1)]).to_compact_string(), "1-q^-1");
        assert_eq!(lp(&[(0, 1), (1, 1)]).to_compact_string(), "1+q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let half = LaurentPoly::monomial_rational(BigRational::new(1.into(), 2.into()), 3);
        assert_eq!(half.to_string(), "1/2*q^3");
        let json = p.to_json();
        assert_eq!(json.to_string(), r#"[[-2,"1"],[0,"3"],[1,"2"]]"#);
        assert_eq!(LaurentPoly::from_json(&json).unwrap(), p);
        assert_eq!(LaurentPoly::from_json(&half.to_json()).unwrap(), half);
    }

    #[test]
    fn predicates() {
        assert!(lp(&[(-1, 2)]).is_integral());
        assert!(!lp(&[(-1, 2)]).is_polynomial());
        let half = LaurentPoly::monomial_rational(BigRational::new(1.into(), 2.into()), 0);
        assert!(!half.is_integral());
        assert!(LaurentPoly::zero().is_polynomial());
    }

    #[test]
    fn cyclic_reduction_and_monic_remainder() {
        let p = lp(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!(p.reduce_mod_cyclic(2), lp(&[(0, 1), (1, 2)]));
        // q^2 + 1 mod (q + 1) = 2
        assert_eq!(lp(&[(2, 1), (0, 1)]).rem_monic(&lp(&[(1, 1), (0, 1)])), LaurentPoly::constant(2));
    }

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -5i64..=5), 0..6)
            .prop_map(|v| v.into_iter().collect::<LaurentPoly>())
    }

    proptest! {
        #[test]
        fn division_undoes_multiplication(f in laurent(), g in laurent()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        }

        #[test]
        fn adams_is_multiplicative(f in laurent(), g in laurent(), i in 1u64..5, j in 1u64..5) {
            prop_assert_eq!((&f * &g).adams(i), &f.adams(i) * &g.adams(i));
            prop_assert_eq!(f.adams(i).adams(j), f.adams(i * j));
        }
    }
}
