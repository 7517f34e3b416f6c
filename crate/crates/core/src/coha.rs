//! Partition combinatorics of the degenerate cohomological Hall algebra:
//! the star product, the sets `T`, `T0`, `T^L` and `T^{L,+}`, unique
//! factorization into `T0` letters, the polynomials `Q̄_n` and `Q_n`, and the
//! shuffle product on symmetric polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::LaurentPoly;
use crate::partition::Partition;

/// `lambda * mu = lambda ∪ S^((m-1) l(lambda)) mu`.
pub fn star(lambda: &Partition, mu: &Partition, m: u64) -> Partition {
    lambda.union(&mu.shift((m - 1) * lambda.len() as u64))
}

/// Star product of a sequence of factors, left to right.
pub fn star_all<'a>(factors: impl IntoIterator<Item = &'a Partition>, m: u64) -> Partition {
    factors
        .into_iter()
        .fold(Partition::empty(), |acc, f| star(&acc, f, m))
}

pub fn weight(lambda: &Partition, m: u64) -> i64 {
    lambda.weight(m)
}

/// `T_n` in lexicographic order.
pub fn enumerate_t(m: u64, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n);
    extend_t(m, n, &mut parts, &mut out);
    out
}

fn extend_t(m: u64, n: usize, parts: &mut Vec<u64>, out: &mut Vec<Partition>) {
    let i = parts.len();
    if i == n {
        out.push(Partition::from_sorted_unchecked(parts.clone()));
        return;
    }
    let lo = parts.last().copied().unwrap_or(0);
    for p in lo..=(m - 1) * i as u64 {
        parts.push(p);
        extend_t(m, n, parts, out);
        parts.pop();
    }
}

/// `T0_n` in lexicographic order.
pub fn enumerate_t0(m: u64, n: usize) -> Vec<Partition> {
    enumerate_t(m, n).into_iter().filter(|l| l.in_t0(m)).collect()
}

/// A word in the alphabet `T0`, compared letterwise.
pub type T0Word = Vec<Partition>;

/// The unique `T0` letters whose star product is `lambda`. Cuts fall at the
/// positions `l >= 2` with `lambda_l = (m-1)(l-1)`.
pub fn factorize_t0(lambda: &Partition, m: u64) -> Result<T0Word> {
    if !lambda.in_t(m) {
        return Err(Error::InvalidArgument(format!("{lambda} is not in T for m = {m}")));
    }
    let parts = lambda.parts();
    let mut out = Vec::new();
    let mut start = 0usize;
    for l in 1..=parts.len() {
        let cut = l == parts.len() || parts[l] == (m - 1) * l as u64;
        if cut {
            let base = (m - 1) * start as u64;
            out.push(Partition::from_sorted_unchecked(
                parts[start..l].iter().map(|p| p - base).collect(),
            ));
            start = l;
        }
    }
    Ok(out)
}

/// Strictly greater than every proper cyclic shift.
pub fn is_lyndon<T: Ord>(w: &[T]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let shifted = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(shifted) == std::cmp::Ordering::Greater
    })
}

/// `T^L_n`, or `T^{L,+}_n` when `plus` is set. The extra elements of the
/// plus variant (`lambda * lambda` for `lambda` in `T^L` of odd length, `m`
/// even) are appended after the Lyndon ones.
pub fn enumerate_tl(m: u64, n: usize, plus: bool) -> Vec<Partition> {
    let mut out: Vec<Partition> = enumerate_t(m, n)
        .into_iter()
        .filter(|l| is_lyndon(&factorize_t0(l, m).expect("element of T")))
        .collect();
    if plus && m % 2 == 0 && n % 4 == 2 {
        out.extend(enumerate_tl(m, n / 2, false).iter().map(|l| star(l, l, m)));
    }
    out
}

fn weight_poly<'a>(parts: impl IntoIterator<Item = &'a Partition>, m: u64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for l in parts {
        p.add_term(l.weight(m), BigInt::one().into());
    }
    p
}

/// `(Q̄_n, Q_n)`: weight generating polynomials of `T^L_n` and `T^{L,+}_n`.
pub fn q_polys(m: u64, n: usize) -> (LaurentPoly, LaurentPoly) {
    let qbar = weight_poly(&enumerate_tl(m, n, false), m);
    let q = if m % 2 == 0 && n % 4 == 2 {
        let half = weight_poly(&enumerate_tl(m, n / 2, false), m);
        &qbar + &half.adams(2)
    } else {
        qbar.clone()
    };
    (qbar, q)
}

/// Factor `lambda = lambda^0 * S(lambda^1) * S^2(lambda^2) * ...` with every
/// `lambda^k` in `T`. Each step keeps the longest prefix lying in `T`.
/// Returns the nonempty `(k, lambda^k)`.
pub fn decompose_a(lambda: &Partition, m: u64) -> Vec<(u64, Partition)> {
    let mut out = Vec::new();
    let mut level = 0;
    let mut rest = lambda.parts().to_vec();
    loop {
        let fits = |i: usize, p: u64| p <= (m - 1) * i as u64;
        if rest.iter().enumerate().all(|(i, &p)| fits(i, p)) {
            if !rest.is_empty() {
                out.push((level, Partition::from_sorted_unchecked(rest)));
            }
            return out;
        }
        let i = rest
            .iter()
            .enumerate()
            .position(|(i, &p)| !fits(i, p))
            .expect("some part exceeds its bound");
        if i > 0 {
            out.push((level, Partition::from_sorted_unchecked(rest[..i].to_vec())));
        }
        let drop = (m - 1) * i as u64 + 1;
        rest = rest[i..].iter().map(|p| p - drop).collect();
        level += 1;
    }
}

/// Rebuild a partition from [`decompose_a`] output.
pub fn compose_a(factors: &[(u64, Partition)], m: u64) -> Partition {
    factors
        .iter()
        .fold(Partition::empty(), |acc, (k, f)| star(&acc, &f.shift(*k), m))
}

/// A polynomial in `x_1, x_2, ...` with integer coefficients, keyed by
/// exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SymPoly {
    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        SymPoly { nvars, terms }
    }

    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// `P_lambda = sum_{sigma in S_n} prod_i x_{sigma(i)}^{lambda_i}`.
    pub fn p_lambda(lambda: &Partition) -> Self {
        let n = lambda.len();
        let mut out = SymPoly::zero(n);
        for sigma in permutations(n) {
            let mut exps = vec![0u32; n];
            for (i, &s) in sigma.iter().enumerate() {
                exps[s] = lambda.parts()[i] as u32;
            }
            out.add_term(exps, BigInt::one());
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SymPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Relabel variable `k` as `targets[k]` in a ring with `nvars` variables.
    fn embed(&self, targets: &[usize], nvars: usize) -> SymPoly {
        let mut out = SymPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0u32; nvars];
            for (k, &x) in e.iter().enumerate() {
                f[targets[k]] += x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// `x_j - q x_i` in a ring with `nvars` variables.
    fn linear(j: usize, i: usize, q: i64, nvars: usize) -> SymPoly {
        let mut out = SymPoly::zero(nvars);
        let mut ej = vec![0u32; nvars];
        ej[j] = 1;
        out.add_term(ej, BigInt::one());
        let mut ei = vec![0u32; nvars];
        ei[i] = 1;
        out.add_term(ei, BigInt::from(-q));
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                current.push(k);
                rec(n, current, used, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Shuffle product with kernel `prod_{k,l} (x_{j_l} - q x_{i_k})^(m-1)`,
/// summed over splittings of `{1..n1+n2}` into the `i` and `j` variables.
/// `q = 1` is the cohomological Hall algebra product.
pub fn shuffle(f1: &SymPoly, f2: &SymPoly, m: u64, q: i64) -> SymPoly {
    let (n1, n2) = (f1.nvars, f2.nvars);
    let n = n1 + n2;
    let mut out = SymPoly::zero(n);
    for is in subsets(n, n1) {
        let js: Vec<usize> = (0..n).filter(|x| !is.contains(x)).collect();
        let mut term = f1.embed(&is, n).mul(&f2.embed(&js, n));
        for &i in &is {
            for &j in &js {
                let lin = SymPoly::linear(j, i, q, n);
                for _ in 0..m - 1 {
                    term = term.mul(&lin);
                }
            }
        }
        out = out.add(&term);
    }
    out
}

/// The `q = 0` shuffle product, which realizes the star product on `P_lambda`.
pub fn shuffle_q0(lambda: &Partition, mu: &Partition, m: u64) -> SymPoly {
    shuffle(&SymPoly::p_lambda(lambda), &SymPoly::p_lambda(mu), m, 0)
}
