//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind [`RationalFunctionQ`](super::RationalFunctionQ):
//! coefficients are stored by ascending exponent and the vector is always
//! trimmed, so the zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of trailing zero coefficients, i.e. the largest `k` with `q^k | self`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Is this `q^k` for some `k`?
    pub fn is_unit_monomial(&self) -> bool {
        self.lead().is_some_and(One::is_one) && self.low_order() + 1 == self.coeffs.len()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> ZPoly {
        debug_assert!(self.coeffs.iter().all(|x| (x % c).is_zero()));
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Substitute `q -> q^i`.
    pub fn adams(&self, i: usize) -> ZPoly {
        assert!(i >= 1);
        if i == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * i + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[e * i] = c.clone();
        }
        ZPoly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Exact quotient in `Z[q]`, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let lead = divisor.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &qc * dc;
                }
            }
            quot[k] = qc;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(ZPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(g)^(deg f - deg g + 1) * f mod g`.
    fn pseudo_rem(&self, g: &ZPoly) -> ZPoly {
        let dg = g.degree().expect("pseudo-remainder by zero");
        let lead = g.lead().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > dg && !rem.is_empty() {
            let k = rem.len() - 1 - dg;
            let top = rem.last().unwrap().clone();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &top * gc;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        ZPoly::from_coeffs(rem)
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Greatest common divisor in `Z[q]`, normalized to positive leading
/// coefficient. The integer content is included, so
/// `gcd(2q + 2, 4) = 2`.
pub fn gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return normalize_sign(g.clone());
    }
    if g.is_zero() {
        return normalize_sign(f.clone());
    }
    let content = f.content().gcd(&g.content());
    // Powers of q split off cheaply and are common in this domain.
    let low = f.low_order().min(g.low_order());
    let fp = strip_low(&f.primitive());
    let gp = strip_low(&g.primitive());
    let core = if fp.degree() == Some(0) || gp.degree() == Some(0) {
        ZPoly::one()
    } else {
        heuristic_gcd(&fp, &gp).unwrap_or_else(|| prs_gcd(&fp, &gp))
    };
    core.shift(low).scale(&content)
}

fn normalize_sign(f: ZPoly) -> ZPoly {
    if f.lead().is_some_and(Signed::is_negative) {
        f.neg()
    } else {
        f
    }
}

fn strip_low(f: &ZPoly) -> ZPoly {
    let k = f.low_order();
    ZPoly::from_coeffs(f.coeffs[k..].to_vec())
}

/// Primitive polynomial remainder sequence. Inputs must be primitive.
pub(crate) fn prs_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

/// GCDHEU: evaluate at a large integer, take the integer gcd and read the
/// candidate back off its balanced base-`xi` digits. A candidate that
/// divides both inputs is the gcd. Inputs must be primitive.
fn heuristic_gcd(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let bound = f.max_norm().min(g.max_norm());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let h = f.eval(&xi).gcd(&g.eval(&xi));
        if !h.is_zero() {
            let cand = balanced_digits(&h, &xi).primitive();
            if !cand.is_zero() && f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        xi = &xi * 73794u32 * xi.sqrt().sqrt() / 27011u32;
    }
    None
}

fn balanced_digits(h: &BigInt, xi: &BigInt) -> ZPoly {
    let half: BigInt = xi / 2u32;
    let mut coeffs = Vec::new();
    let mut h = h.clone();
    while !h.is_zero() {
        let mut r = h.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        h = (h - &r) / xi;
        coeffs.push(r);
    }
    ZPoly::from_coeffs(coeffs)
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}
