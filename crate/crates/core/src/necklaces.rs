//! Compositions `U_n` of `(m-1)n` into `n` parts, their cyclic classes and
//! weights, the bijection `phi` with `T_n`, the polynomials `P_n`, and the
//! residues of `Q̄_n` modulo `q^n - 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, divisors, gcd_u64, mu, LaurentPoly};
use crate::partition::Partition;

/// A sequence of nonnegative integers summing to `(m-1)n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct USequence {
    m: u64,
    a: Vec<u64>,
}

impl USequence {
    pub fn new(m: u64, a: Vec<u64>) -> Result<Self> {
        if m == 0 || a.is_empty() {
            return Err(Error::InvalidArgument("need m >= 1 and a nonempty sequence".into()));
        }
        let target = (m - 1) * a.len() as u64;
        if a.iter().sum::<u64>() != target {
            return Err(Error::InvalidArgument(format!("entries of {a:?} must sum to {target}")));
        }
        Ok(USequence { m, a })
    }

    fn unchecked(m: u64, a: Vec<u64>) -> Self {
        USequence { m, a }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &[u64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `(a_{k+1}, ..., a_n, a_1, ..., a_k)`.
    pub fn rotate(&self, k: usize) -> USequence {
        let mut a = self.a.clone();
        a.rotate_left(k % self.a.len());
        USequence::unchecked(self.m, a)
    }

    /// Parse `(0,2)`.
    pub fn parse(m: u64, s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("sequence must be parenthesized: {s}")))?;
        let a: std::result::Result<Vec<u64>, _> =
            inner.split(',').map(|p| p.trim().parse::<u64>()).collect();
        Self::new(m, a.map_err(|e| Error::Parse(format!("{s}: {e}")))?)
    }
}

impl fmt::Display for USequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.a.iter().map(u64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for USequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Visit every element of `U_n` in lexicographic order.
pub fn for_each_u(m: u64, n: usize, mut f: impl FnMut(&[u64])) {
    assert!(m >= 1 && n >= 1);
    let total = (m - 1) * n as u64;
    let mut a = vec![0u64; n];
    fill(&mut a, 0, total, &mut f);
}

/// Like [`for_each_u`], restricted to sequences with first entry `a1`.
pub fn for_each_u_with_first(m: u64, n: usize, a1: u64, mut f: impl FnMut(&[u64])) {
    assert!(m >= 1 && n >= 1);
    let total = (m - 1) * n as u64;
    if a1 > total {
        return;
    }
    let mut a = vec![0u64; n];
    a[0] = a1;
    fill(&mut a, 1, total - a1, &mut f);
}

fn fill(a: &mut [u64], i: usize, remaining: u64, f: &mut impl FnMut(&[u64])) {
    if i + 1 == a.len() {
        a[i] = remaining;
        f(a);
        return;
    }
    if i == a.len() {
        if remaining == 0 {
            f(a);
        }
        return;
    }
    for v in 0..=remaining {
        a[i] = v;
        fill(a, i + 1, remaining - v, f);
    }
}

pub fn enumerate_u(m: u64, n: usize) -> Vec<USequence> {
    let mut out = Vec::new();
    for_each_u(m, n, |a| out.push(USequence::unchecked(m, a.to_vec())));
    out
}

/// `a_1 + ... + a_i <= (m-1) i` for all `i`.
pub fn is_admissible(a: &USequence) -> bool {
    admissible(a.m, &a.a)
}

fn admissible(m: u64, a: &[u64]) -> bool {
    let mut s = 0;
    a.iter().enumerate().all(|(i, &x)| {
        s += x;
        s <= (m - 1) * (i as u64 + 1)
    })
}

/// `(lambda_2 - lambda_1, ..., (m-1)n - lambda_n)`.
pub fn phi(lambda: &Partition, m: u64) -> Result<USequence> {
    if lambda.is_empty() || !lambda.in_t(m) {
        return Err(Error::InvalidArgument(format!("{lambda} is not in T_n for m = {m}")));
    }
    let p = lambda.parts();
    let n = p.len();
    let mut a: Vec<u64> = p.windows(2).map(|w| w[1] - w[0]).collect();
    a.push((m - 1) * n as u64 - p[n - 1]);
    Ok(USequence::unchecked(m, a))
}

/// `(0, a_1, a_1 + a_2, ...)`.
pub fn phi_inv(a: &USequence) -> Result<Partition> {
    if !is_admissible(a) {
        return Err(Error::InvalidArgument(format!("{a} is not admissible")));
    }
    let mut parts = Vec::with_capacity(a.len());
    let mut s = 0;
    parts.push(0);
    for &x in &a.a[..a.len() - 1] {
        s += x;
        parts.push(s);
    }
    Ok(Partition::from_sorted_unchecked(parts))
}

/// `wt(a) = sum_i (n-i)(m-1-a_i)`.
pub fn seq_weight(a: &USequence) -> i64 {
    raw_weight(a.m, &a.a)
}

fn raw_weight(m: u64, a: &[u64]) -> i64 {
    let n = a.len() as i64;
    a.iter()
        .enumerate()
        .map(|(i, &x)| (n - 1 - i as i64) * (m as i64 - 1 - x as i64))
        .sum()
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = f[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Smallest `p` dividing `n` with `a` invariant under rotation by `p`.
pub fn period<T: PartialEq>(a: &[T]) -> usize {
    let n = a.len();
    divisors(n as u64)
        .into_iter()
        .map(|p| p as usize)
        .find(|&p| (0..n).all(|i| a[i] == a[(i + p) % n]))
        .unwrap_or(n)
}

/// The maximal weight over all rotations, using
/// `wt(rotate(a, i)) = wt(a) - n((m-1)i - a_1 - ... - a_i)`.
fn class_weight(m: u64, a: &[u64]) -> i64 {
    let n = a.len() as i64;
    let mut s = 0i64;
    let mut min = 0i64;
    for (i, &x) in a.iter().enumerate().take(a.len() - 1) {
        s += x as i64;
        min = min.min((m as i64 - 1) * (i as i64 + 1) - s);
    }
    raw_weight(m, a) - n * min
}

/// A `C_n`-orbit in `U_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    rep: USequence,
    period: usize,
    weight: i64,
}

impl CyclicClass {
    /// Lexicographically least rotation.
    pub fn rep(&self) -> &USequence {
        &self.rep
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn is_primitive(&self) -> bool {
        self.period == self.rep.len()
    }

    /// Maximum weight over the class.
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"rep": self.rep.a, "period": self.period, "weight": self.weight})
    }
}

impl fmt::Debug for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} period {} weight {}]", self.rep, self.period, self.weight)
    }
}

pub fn classify(a: &USequence) -> CyclicClass {
    let k = least_rotation(&a.a);
    CyclicClass {
        rep: a.rotate(k),
        period: period(&a.a),
        weight: class_weight(a.m, &a.a),
    }
}

/// Whether the plus variant adds the classes of period `n/2`.
pub fn has_plus_classes(m: u64, n: usize) -> bool {
    m % 2 == 0 && n % 4 == 2
}

/// Lexicographically no greater than any rotation.
fn is_least_rotation(a: &[u64]) -> bool {
    let n = a.len();
    (1..n).all(|k| a.iter().cmp(a[k..].iter().chain(&a[..k])) != std::cmp::Ordering::Greater)
}

fn class_filter(m: u64, n: usize, plus: bool) -> impl Fn(&[u64]) -> Option<CyclicClass> {
    let extra = plus && has_plus_classes(m, n);
    move |a: &[u64]| {
        if !is_least_rotation(a) {
            return None;
        }
        let p = period(a);
        if p == n || (extra && 2 * p == n) {
            Some(CyclicClass {
                rep: USequence::unchecked(m, a.to_vec()),
                period: p,
                weight: class_weight(m, a),
            })
        } else {
            None
        }
    }
}

/// Primitive classes of `U_n`, plus the classes of period `n/2` when `plus`
/// is set, `m` is even and `n ≡ 2 mod 4`. Sorted by representative.
pub fn enumerate_classes(m: u64, n: usize, plus: bool) -> Vec<CyclicClass> {
    let keep = class_filter(m, n, plus);
    let mut out = Vec::new();
    for_each_u(m, n, |a| out.extend(keep(a)));
    out
}

/// The classes of [`enumerate_classes`] whose representative starts with `a1`.
pub fn enumerate_classes_with_first(m: u64, n: usize, plus: bool, a1: u64) -> Vec<CyclicClass> {
    let keep = class_filter(m, n, plus);
    let mut out = Vec::new();
    for_each_u_with_first(m, n, a1, |a| out.extend(keep(a)));
    out
}

/// `sum_C q^{wt(C)}` over the given classes.
pub fn class_weight_poly(classes: &[CyclicClass]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for c in classes {
        p.add_term(c.weight, BigInt::one().into());
    }
    p
}

/// `P_n(q) = sum_{a in U_n} q^{wt(a)}`, by dynamic programming over
/// positions and remaining sum.
pub fn p_poly(m: u64, n: usize) -> LaurentPoly {
    assert!(m >= 1 && n >= 1);
    let total = (m - 1) * n as u64;
    // remaining sum -> weight -> count
    let mut table: BTreeMap<u64, BTreeMap<i64, BigInt>> = BTreeMap::new();
    table.insert(total, [(0i64, BigInt::one())].into());
    for i in 0..n {
        let coef = (n - 1 - i) as i64;
        let last = i + 1 == n;
        let mut next: BTreeMap<u64, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (&rem, weights) in &table {
            let choices: Vec<u64> = if last { vec![rem] } else { (0..=rem).collect() };
            for x in choices {
                let dw = coef * (m as i64 - 1 - x as i64);
                let slot = next.entry(rem - x).or_default();
                for (&w, c) in weights {
                    *slot.entry(w + dw).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        table = next;
    }
    table
        .remove(&0)
        .unwrap_or_default()
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// `P_n(zeta_n^s) = (-1)^((m-1)(n-1)s) C(mg - 1, g - 1)` with `g = gcd(s, n)`.
pub fn p_root_closed_form(m: u64, n: u64, s: u64) -> Result<BigInt> {
    if n == 0 || s == 0 || s > n {
        return Err(Error::InvalidArgument(format!("need 1 <= s <= n, got s = {s}, n = {n}")));
    }
    let g = gcd_u64(s, n);
    let value = binomial(m * g - 1, g - 1);
    let odd = (m - 1) % 2 == 1 && (n - 1) % 2 == 1 && s % 2 == 1;
    Ok(if odd { -value } else { value })
}

/// `(1/n) sum_{d | n} mu(n/d) P_d(q^(n/d))` reduced modulo `q^n - 1`.
pub fn qbar_mod(m: u64, n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for d in divisors(n as u64) {
        let w = mu(n as u64 / d);
        if w != 0 {
            acc += &p_poly(m, d as usize)
                .adams(n as u64 / d)
                .scale(&BigRational::from_integer(w.into()));
        }
    }
    acc.reduce_mod_cyclic(n as u64)
        .scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}
