use std::fmt;

use crate::error::{Error, Result};

/// A weakly increasing sequence of nonnegative parts. Zero parts count
/// towards the length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly increasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sort the given parts.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable();
        Partition(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.0
    }

    /// Number of parts, zeros included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `lambda_i <= (m-1)(i-1)` for all `i`.
    pub fn in_t(&self, m: u64) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p <= (m - 1) * i as u64)
    }

    /// In `T` and strictly below the bound at every index past the first.
    pub fn in_t0(&self, m: u64) -> bool {
        self.in_t(m)
            && self
                .0
                .iter()
                .enumerate()
                .skip(1)
                .all(|(i, &p)| p < (m - 1) * i as u64)
    }

    /// `wt(lambda) = (m-1) C(n, 2) - |lambda|`.
    pub fn weight(&self, m: u64) -> i64 {
        let n = self.0.len() as i64;
        (m as i64 - 1) * n * (n - 1) / 2 - self.size() as i64
    }

    /// `S^k`: add `k` to every part.
    pub fn shift(&self, k: u64) -> Self {
        Partition(self.0.iter().map(|p| p + k).collect())
    }

    /// Merge the parts of both partitions, resorted.
    pub fn union(&self, other: &Partition) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self::from_unsorted(parts)
    }

    /// Parse `(0013)` or `(0,0,1,13)`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("partition must be parenthesized: {s}")))?;
        let parts: std::result::Result<Vec<u64>, _> = if inner.contains(',') {
            inner.split(',').map(|p| p.trim().parse::<u64>()).collect()
        } else {
            inner.chars().map(|c| c.to_string().parse::<u64>()).collect()
        };
        Self::new(parts.map_err(|e| Error::Parse(format!("{s}: {e}")))?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }
}

impl fmt::Display for Partition {
    /// Digit-compact `(0013)` when every part is a single digit, otherwise
    /// comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&p| p <= 9) { "" } else { "," };
        let body: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", body.join(sep))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
