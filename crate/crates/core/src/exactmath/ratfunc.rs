use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::zpoly::{gcd, ZPoly};
use crate::error::{Error, Result};

/// A reduced quotient of two polynomials in `q`, the coefficient field of
/// every series in this crate.
///
/// Internally numerator and denominator are integer polynomials with no
/// common factor in `Z[q]` (contents included) and the denominator has a
/// positive leading coefficient. That makes the representation unique, so
/// `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        RationalFunctionQ {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(c: BigInt) -> Self {
        RationalFunctionQ {
            num: ZPoly::constant(c),
            den: ZPoly::one(),
        }
    }

    pub fn from_rational(c: &BigRational) -> Self {
        Self::reduce(ZPoly::constant(c.numer().clone()), ZPoly::constant(c.denom().clone()))
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        Self::new(p, &LaurentPoly::one()).expect("nonzero denominator")
    }

    /// `num / den` for arbitrary Laurent polynomials, reduced to canonical form.
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (ns, n, nd) = num.to_scaled_zpoly();
        let (ds, d, dd) = den.to_scaled_zpoly();
        // num/den = q^(ns - ds) * (n * dd) / (d * nd)
        let mut n = n.scale(&dd);
        let mut d = d.scale(&nd);
        let shift = ns - ds;
        if shift >= 0 {
            n = n.shift(shift as usize);
        } else {
            d = d.shift((-shift) as usize);
        }
        Ok(Self::reduce(n, d))
    }

    /// `1 / (1 - q^-k)`, the recurring denominator of this domain, equal to
    /// `q^k / (q^k - 1)`.
    pub fn inv_one_minus_q_inv(k: u64) -> Self {
        assert!(k >= 1);
        let k = k as usize;
        let den = ZPoly::monomial(BigInt::one(), k).sub(&ZPoly::one());
        Self::reduce(ZPoly::monomial(BigInt::one(), k), den)
    }

    fn reduce(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::sign_normalized(num, den)
    }

    fn sign_normalized(num: ZPoly, den: ZPoly) -> Self {
        if den.lead().unwrap().is_negative() {
            RationalFunctionQ {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RationalFunctionQ { num, den }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Canonical numerator: the stored numerator divided by the content of
    /// the denominator, so it may carry rational coefficients.
    pub fn num(&self) -> LaurentPoly {
        let c = self.den.content();
        LaurentPoly::from_zpoly(&self.num, 0).scale(&BigRational::new(BigInt::one(), c))
    }

    /// Canonical denominator: primitive integer polynomial with positive
    /// leading coefficient.
    pub fn den(&self) -> LaurentPoly {
        LaurentPoly::from_zpoly(&self.den.primitive(), 0)
    }

    /// The value as a Laurent polynomial, when the denominator is a monomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.low_order() + 1 != self.den.coeffs().len() {
            return None;
        }
        let k = self.den.low_order() as i64;
        let c = self.den.lead().unwrap().clone();
        Some(LaurentPoly::from_zpoly(&self.num, -k).scale(&BigRational::new(BigInt::one(), c)))
    }

    /// Is this a Laurent polynomial with integer coefficients?
    pub fn is_integral_laurent(&self) -> bool {
        self.den.is_unit_monomial()
    }

    /// The value as a rational constant, when it is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    /// Adams operation: substitute `q -> q^i`. Substitution preserves
    /// coprimality, content and leading sign, so no reduction is needed.
    pub fn adams(&self, i: u64) -> Self {
        assert!(i >= 1);
        RationalFunctionQ {
            num: self.num.adams(i as usize),
            den: self.den.adams(i as usize),
        }
    }

    /// Multiply by the rational constant `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let n = self.num.scale(c.numer());
        let d = self.den.scale(c.denom());
        let g = n.content().gcd(&d.content());
        Self::sign_normalized(n.div_scalar_exact(&g), d.div_scalar_exact(&g))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let k_abs = k.unsigned_abs() as usize;
        if k > 0 {
            // Only q-powers in the denominator can cancel.
            let cancel = self.den.low_order().min(k_abs);
            RationalFunctionQ {
                num: self.num.shift(k_abs - cancel),
                den: ZPoly::from_coeffs(self.den.coeffs()[cancel..].to_vec()),
            }
        } else {
            let cancel = self.num.low_order().min(k_abs);
            RationalFunctionQ {
                num: ZPoly::from_coeffs(self.num.coeffs()[cancel..].to_vec()),
                den: self.den.shift(k_abs - cancel),
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::sign_normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluate at an integer `q`; `None` at a pole.
    pub fn eval_int(&self, x: i64) -> Option<BigRational> {
        let x = BigInt::from(x);
        let d = self.den.eval(&x);
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.eval(&x), d))
    }

    /// Compact human-readable form, normalized so the denominator reads as a
    /// series in `q^-1` starting at 1: `1/(1-q^-1)`, `q/(1-q^-1-q^-2+q^-3)`.
    pub fn to_compact_string(&self) -> String {
        if let Some(p) = self.as_laurent() {
            return p.to_compact_string();
        }
        let top = self.den.degree().unwrap() as i64;
        let lead = BigRational::from_integer(self.den.lead().unwrap().clone());
        let norm = lead.recip();
        let num = LaurentPoly::from_zpoly(&self.num, -top).scale(&norm);
        let den = LaurentPoly::from_zpoly(&self.den, -top).scale(&norm);
        let num_s = num.to_compact_string();
        let num_s = if num.len() > 1 { format!("({num_s})") } else { num_s };
        format!("{num_s}/({})", den.to_compact_string())
    }

    /// JSON object `{num, den}` of canonical Laurent renderings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num().to_json(), "den": self.den().to_json() })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let field = |k: &str| {
            value
                .get(k)
                .ok_or_else(|| Error::Parse(format!("missing `{k}` in {value}")))
                .and_then(LaurentPoly::from_json)
        };
        Self::new(&field("num")?, &field("den")?)
    }
}

impl Default for RationalFunctionQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RationalFunctionQ {
    fn from(c: i64) -> Self {
        Self::from_integer(c.into())
    }
}

impl From<&LaurentPoly> for RationalFunctionQ {
    fn from(p: &LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<LaurentPoly> for RationalFunctionQ {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(&p)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionQ({self})")
    }
}

impl Add<&RationalFunctionQ> for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let t = self.num.add(&rhs.num);
            return RationalFunctionQ::reduce(t, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if n.is_zero() {
                return RationalFunctionQ::zero();
            }
            return RationalFunctionQ::sign_normalized(n, self.den.mul(&rhs.den));
        }
        let b = self.den.div_exact(&g).unwrap();
        let d = rhs.den.div_exact(&g).unwrap();
        let t = self.num.mul(&d).add(&rhs.num.mul(&b));
        if t.is_zero() {
            return RationalFunctionQ::zero();
        }
        let g2 = gcd(&t, &g);
        let num = t.div_exact(&g2).unwrap();
        let den = b.mul(&rhs.den.div_exact(&g2).unwrap());
        RationalFunctionQ::sign_normalized(num, den)
    }
}

impl Add for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
        &self + &rhs
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

impl Sub<&RationalFunctionQ> for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self + &(-rhs)
    }
}

impl Sub for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
        &self - &rhs
    }
}

impl Mul<&RationalFunctionQ> for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunctionQ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let split = |p: &ZPoly, g: &ZPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        let num = split(&self.num, &g1).mul(&split(&rhs.num, &g2));
        let den = split(&self.den, &g2).mul(&split(&rhs.den, &g1));
        RationalFunctionQ::sign_normalized(num, den)
    }
}

impl Mul for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
        &self * &rhs
    }
}

impl Div<&RationalFunctionQ> for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    /// Panics on division by zero; use [`RationalFunctionQ::inv`] to handle it.
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        self * &rhs.inv().expect("division by zero rational function")
    }
}
