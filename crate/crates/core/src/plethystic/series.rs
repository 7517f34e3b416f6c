use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactmath::{LaurentPoly, RationalFunctionQ};

/// A power series in `t` truncated below `t^order`, with coefficients in
/// `Q(q)`.
///
/// The order is fixed at construction. Binary operations truncate to the
/// smaller order, and two series compare equal when they agree below the
/// smaller order.
#[derive(Clone)]
pub struct TruncSeries {
    coeffs: Vec<RationalFunctionQ>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        TruncSeries {
            coeffs: vec![RationalFunctionQ::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(RationalFunctionQ::one(), 0, order)
    }

    /// `t` itself.
    pub fn t(order: usize) -> Self {
        Self::monomial(RationalFunctionQ::one(), 1, order)
    }

    /// `c * t^degree`, which is zero when `degree >= order`.
    pub fn monomial(c: RationalFunctionQ, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree < order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Coefficients by t-degree; entries past `order` are dropped and
    /// missing entries are zero.
    pub fn from_coeffs(mut coeffs: Vec<RationalFunctionQ>, order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        coeffs.resize(order, RationalFunctionQ::zero());
        TruncSeries { coeffs }
    }

    pub fn from_laurent_coeffs(coeffs: &[LaurentPoly], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(RationalFunctionQ::from_laurent).collect(), order)
    }

    pub fn from_integers(coeffs: &[BigInt], order: usize) -> Self {
        Self::from_coeffs(
            coeffs.iter().map(|c| RationalFunctionQ::from_integer(c.clone())).collect(),
            order,
        )
    }

    /// `1 / (1 - c t^d)` truncated; `d >= 1`.
    pub fn geometric(c: &RationalFunctionQ, d: usize, order: usize) -> Self {
        assert!(d >= 1);
        let mut s = Self::zero(order);
        let mut power = RationalFunctionQ::one();
        for k in (0..order).step_by(d) {
            s.coeffs[k] = power.clone();
            power = &power * c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, degree: usize) -> &RationalFunctionQ {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[RationalFunctionQ] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &RationalFunctionQ {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order());
        TruncSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn scale(&self, c: &RationalFunctionQ) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Substitute `t -> c t`, scaling degree `d` by `c^d`.
    pub fn rescale_t(&self, c: &RationalFunctionQ) -> Self {
        let mut power = RationalFunctionQ::one();
        let mut coeffs = Vec::with_capacity(self.order());
        for x in &self.coeffs {
            coeffs.push(x * &power);
            power = &power * c;
        }
        TruncSeries { coeffs }
    }

    /// Substitute `t -> q^k t`.
    pub fn q_shift_t(&self, k: i64) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, x)| x.shift(k * d as i64))
                .collect(),
        }
    }

    /// Substitute `t -> -t`.
    pub fn negate_t(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, x)| if d % 2 == 1 { -x } else { x.clone() })
                .collect(),
        }
    }

    /// Substitute `t -> (-1)^(m-1) t`.
    pub fn sign_twist(&self, m: u64) -> Self {
        if m % 2 == 0 {
            self.negate_t()
        } else {
            self.clone()
        }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFunctionQ) -> RationalFunctionQ) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Value of each coefficient at `q = x`, or `None` at a pole.
    pub fn eval_q(&self, x: i64) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.eval_int(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalFunctionQ::is_zero)
    }

    /// Formal derivative-based recurrences make these O(order^2).
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs a series without constant term".into()));
        }
        let n_max = self.order();
        let mut g = vec![RationalFunctionQ::zero(); n_max];
        g[0] = RationalFunctionQ::one();
        // n g_n = sum_{k=1}^{n} k f_k g_{n-k}
        for n in 1..n_max {
            let mut acc = RationalFunctionQ::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || g[n - k].is_zero() {
                    continue;
                }
                let term = (&self.coeffs[k] * &g[n - k]).scale(&int_ratio(k, 1));
                acc = &acc + &term;
            }
            g[n] = acc.scale(&int_ratio(1, n));
        }
        Ok(TruncSeries { coeffs: g })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition("log needs a series with constant term 1".into()));
        }
        let n_max = self.order();
        let mut l = vec![RationalFunctionQ::zero(); n_max];
        // n L_n = n g_n - sum_{k=1}^{n-1} k L_k g_{n-k}
        for n in 1..n_max {
            let mut acc = self.coeffs[n].scale(&int_ratio(n, 1));
            for k in 1..n {
                if l[k].is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                let term = (&l[k] * &self.coeffs[n - k]).scale(&int_ratio(k, 1));
                acc = &acc - &term;
            }
            l[n] = acc.scale(&int_ratio(1, n));
        }
        Ok(TruncSeries { coeffs: l })
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term().inv()?;
        let n_max = self.order();
        let mut out = vec![RationalFunctionQ::zero(); n_max];
        out[0] = c0.clone();
        for n in 1..n_max {
            let mut acc = RationalFunctionQ::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !out[n - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out[n] = -&(&acc * &c0);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Adams operation `psi_i`: `q -> q^i` in every coefficient and
    /// `t -> t^i`, dropping degrees past the truncation.
    pub fn adams(&self, i: u64) -> Self {
        assert!(i >= 1);
        let i = i as usize;
        let mut out = Self::zero(self.order());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d * i >= self.order() {
                break;
            }
            if !c.is_zero() {
                out.coeffs[d * i] = c.adams(i as u64);
            }
        }
        out
    }

    /// Text form degree by degree, `1 + (1/(1-q^-1))*t + ...`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            let body = c.to_compact_string();
            let simple = !body[1..].contains(['+', '-', '/']);
            parts.push(match (d, c.is_one(), simple) {
                (0, _, _) => body,
                (_, true, _) => power,
                (_, false, true) => format!("{body}*{power}"),
                (_, false, false) => format!("({body})*{power}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        parts.push(format!("O(t^{})", self.order()));
        parts.join(" + ")
    }

    /// JSON: array of `{num, den}` coefficient objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(RationalFunctionQ::to_json).collect())
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items = value
            .as_array()
            .filter(|a| !a.is_empty())
            .ok_or_else(|| Error::Parse("series JSON must be a nonempty array".into()))?;
        let coeffs = items.iter().map(RationalFunctionQ::from_json).collect::<Result<Vec<_>>>()?;
        let order = coeffs.len();
        Ok(Self::from_coeffs(coeffs, order))
    }
}

fn int_ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({})", self.to_text())
    }
}

impl Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![RationalFunctionQ::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncSeries { coeffs }
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        &self * &rhs
    }
}
