//! Integer sequences `H_{n,d}` and the map `Phi` onto primitive cyclic
//! classes of weight `-d mod n`.

use std::fmt;

use num_integer::Integer;

use crate::dtinv::dt_formula;
use crate::error::{Error, Result};
use crate::exactmath::gcd_u64;
use crate::necklaces::{classify, seq_weight, CyclicClass, USequence};

/// `(l_1, ..., l_n)` in `H_{n,d}` for the `m`-loop quiver.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HiggsSeq {
    m: u64,
    d: i64,
    l: Vec<i64>,
}

impl HiggsSeq {
    pub fn new(m: u64, d: i64, l: Vec<i64>) -> Result<Self> {
        if m == 0 || l.is_empty() {
            return Err(Error::InvalidArgument("need m >= 1 and a nonempty sequence".into()));
        }
        let s = HiggsSeq { m, d, l };
        if !s.is_valid() {
            return Err(Error::InvalidArgument(format!("{s} is not in H_{{{},{d}}}", s.l.len())));
        }
        Ok(s)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn entries(&self) -> &[i64] {
        &self.l
    }

    fn is_valid(&self) -> bool {
        let n = self.l.len() as i64;
        let step = self.m as i64 - 1;
        let steps_ok = self.l.windows(2).all(|w| w[1] - w[0] + step >= 0);
        let mut s = 0;
        let prefix_ok = self.l[..self.l.len() - 1].iter().enumerate().all(|(k, &x)| {
            s += x;
            n * s >= self.d * (k as i64 + 1)
        });
        steps_ok && prefix_ok && self.l.iter().sum::<i64>() == self.d
    }

    /// `(-l_n, ..., -l_1)` in `H_{n,-d}`.
    pub fn dual(&self) -> HiggsSeq {
        HiggsSeq {
            m: self.m,
            d: -self.d,
            l: self.l.iter().rev().map(|x| -x).collect(),
        }
    }

    /// Every entry plus one, in `H_{n,d+n}`.
    pub fn shift(&self) -> HiggsSeq {
        HiggsSeq {
            m: self.m,
            d: self.d + self.l.len() as i64,
            l: self.l.iter().map(|x| x + 1).collect(),
        }
    }
}

impl fmt::Display for HiggsSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.l.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for HiggsSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All of `H_{n,d}` in lexicographic order, by depth-first search with
/// pruning on the step and prefix-average conditions.
pub fn enumerate_higgs(n: usize, d: i64, m: u64) -> Vec<HiggsSeq> {
    assert!(n >= 1 && m >= 1);
    let mut out = Vec::new();
    let mut l = Vec::with_capacity(n);
    search(n, d, m as i64 - 1, &mut l, 0, &mut out, m);
    out
}

/// Largest value the next entry can take when `r` entries follow it and
/// `rest` remains to be distributed.
fn upper_bound(rest: i64, r: i64, step: i64) -> i64 {
    Integer::div_floor(&(rest + step * r * (r + 1) / 2), &(r + 1))
}

fn search(n: usize, d: i64, step: i64, l: &mut Vec<i64>, s: i64, out: &mut Vec<HiggsSeq>, m: u64) {
    let k = l.len();
    let nn = n as i64;
    if k + 1 == n {
        let last = d - s;
        if l.last().map_or(true, |&p| last - p + step >= 0) {
            l.push(last);
            out.push(HiggsSeq { m, d, l: l.clone() });
            l.pop();
        }
        return;
    }
    let r = (n - k - 1) as i64;
    let hi = upper_bound(d - s, r, step);
    // prefix condition for k + 1 entries: n (s + x) >= d (k + 1)
    let mut lo = Integer::div_ceil(&(d * (k as i64 + 1) - nn * s), &nn);
    if let Some(&p) = l.last() {
        lo = lo.max(p - step);
    }
    for x in lo..=hi {
        l.push(x);
        search(n, d, step, l, s + x, out, m);
        l.pop();
    }
}

/// `a_k = l_{k+1} - l_k + (m-1)` with `l_{n+1} = l_1`.
pub fn phi_sequence(l: &HiggsSeq) -> Result<USequence> {
    let n = l.l.len();
    let step = l.m as i64 - 1;
    let a: Vec<i64> = (0..n).map(|k| l.l[(k + 1) % n] - l.l[k] + step).collect();
    if a.iter().any(|&x| x < 0) {
        return Err(Error::InternalInconsistency(format!("{l} maps outside U_n: {a:?}")));
    }
    USequence::new(l.m, a.into_iter().map(|x| x as u64).collect())
}

pub fn higgs_to_class(l: &HiggsSeq) -> Result<CyclicClass> {
    Ok(classify(&phi_sequence(l)?))
}

/// Preimage under `Phi` of a primitive class of weight `-d mod n`.
pub fn class_to_higgs(c: &CyclicClass, d: i64) -> Result<HiggsSeq> {
    let a = c.rep();
    let n = a.len() as i64;
    let m = a.m();
    if !c.is_primitive() {
        return Err(Error::InvalidArgument(format!("class of {a} is not primitive")));
    }
    let wt = seq_weight(a);
    if (wt + d).rem_euclid(n) != 0 {
        return Err(Error::InvalidArgument(format!(
            "class weight {} is not -{d} mod {n}",
            c.weight()
        )));
    }
    let step = m as i64 - 1;
    let mut l = Vec::with_capacity(a.len());
    let mut cur = (wt + d) / n;
    for &x in a.entries() {
        l.push(cur);
        cur += x as i64 - step;
    }
    // maximal k in 0..=n minimizing n (l_1 + ... + l_k) - d k
    let mut best = (0i64, 0usize);
    let mut s = 0i64;
    for k in 1..=a.len() {
        s += l[k - 1];
        let v = n * s - d * k as i64;
        if v <= best.0 {
            best = (v, k);
        }
    }
    l.rotate_left(best.1 % a.len());
    HiggsSeq::new(m, d, l)
}

/// `|H_{n,d}| = DT_n` for `d` coprime to `n`.
pub fn higgs_count_check(n: usize, d: i64, m: u64) -> Result<bool> {
    if gcd_u64(n as u64, d.unsigned_abs()) != 1 {
        return Err(Error::InvalidArgument(format!("d = {d} is not coprime to n = {n}")));
    }
    Ok(dt_formula(m, n as u64)? == enumerate_higgs(n, d, m).len().into())
}

pub fn higgs_json(n: usize, d: i64, m: u64, seqs: &[HiggsSeq]) -> serde_json::Value {
    serde_json::json!({
        "n": n,
        "d": d,
        "m": m,
        "sequences": seqs.iter().map(|s| s.l.clone()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(m: u64, d: i64, l: &[i64]) -> HiggsSeq {
        HiggsSeq::new(m, d, l.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_higgs(2, 1, 2), vec![seq(2, 1, &[1, 0])]);
        for d in -3..=3 {
            assert_eq!(enumerate_higgs(1, d, 3), vec![seq(3, d, &[d])]);
        }
        assert!(HiggsSeq::new(2, 1, vec![0, 1]).is_err());
    }

    #[test]
    fn phi_examples() {
        let c = higgs_to_class(&seq(2, 1, &[1, 0])).unwrap();
        assert_eq!(c.rep().entries(), &[0, 2]);
        assert_eq!(c.weight(), 1);
        assert_eq!(class_to_higgs(&c, 1).unwrap(), seq(2, 1, &[1, 0]));
        assert!(class_to_higgs(&c, 2).is_err());
        let single = higgs_to_class(&seq(3, 5, &[5])).unwrap();
        assert_eq!(single.rep().entries(), &[2]);
    }

    #[test]
    fn count_examples() {
        assert!(higgs_count_check(2, 1, 2).unwrap());
        assert_eq!(enumerate_higgs(4, 1, 2).len(), 2);
        assert!(higgs_count_check(4, 1, 2).unwrap());
        assert!(higgs_count_check(3, 2, 3).unwrap());
        assert!(higgs_count_check(4, 2, 2).is_err());
    }

    #[test]
    fn json_form() {
        let v = higgs_json(2, 1, 2, &enumerate_higgs(2, 1, 2));
        assert_eq!(v.to_string(), r#"{"d":1,"m":2,"n":2,"sequences":[[1,0]]}"#);
    }
}
