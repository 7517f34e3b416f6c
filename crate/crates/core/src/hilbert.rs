//! m-ary trees, their coronas and cell statistics, and the generating
//! series `F(q,t)`, `F(t)` and `H(q,t)`.
//!
//! Words are compared lexicographically with a proper prefix smaller than
//! its extensions, so for `m = 2` the order is `e < 1 < 11 < 12 < 2`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, LaurentPoly, RationalFunctionQ};
use crate::partition::Partition;
use crate::plethystic::TruncSeries;

/// A word in the alphabet `{1, ..., m}`; the empty word is the root.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn root() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, letter: u8) -> Word {
        let mut w = self.0.clone();
        w.push(letter);
        Word(w)
    }

    pub fn parent(&self) -> Option<Word> {
        (!self.0.is_empty()).then(|| Word(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.0.iter().all(|&l| l <= 9) { "" } else { "." };
        let s: Vec<String> = self.0.iter().map(u8::to_string).collect();
        f.write_str(&s.join(sep))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An m-ary tree: a finite set of words closed under taking prefixes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    m: u64,
    words: BTreeSet<Word>,
}

impl Tree {
    pub fn new(m: u64, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        if m == 0 || m > u8::MAX as u64 {
            return Err(Error::InvalidArgument(format!("unsupported arity m = {m}")));
        }
        let words: BTreeSet<Word> = words.into_iter().collect();
        for w in &words {
            if w.0.iter().any(|&l| l == 0 || l as u64 > m) {
                return Err(Error::InvalidArgument(format!("word {w} has a letter outside 1..={m}")));
            }
            if let Some(p) = w.parent() {
                if !words.contains(&p) {
                    return Err(Error::InvalidArgument(format!("word {w} is missing its prefix {p}")));
                }
            }
        }
        Ok(Tree { m, words })
    }

    pub fn empty(m: u64) -> Self {
        Tree { m, words: BTreeSet::new() }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Nodes in increasing lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// One-letter extensions of nodes that leave the tree. Empty for the
    /// empty tree.
    pub fn corona(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for w in &self.words {
            for l in 1..=self.m as u8 {
                let c = w.child(l);
                if !self.words.contains(&c) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// `d(T)`: pairs `(w, w')` with `w` in the corona, `w'` in the tree and
    /// `w' < w`.
    pub fn cell_dim(&self) -> u64 {
        let corona = self.corona();
        corona
            .iter()
            .map(|c| self.words.range(..c.clone()).count() as u64)
            .sum()
    }

    /// Corona words preceding tree words, counted as pairs.
    fn corona_before_tree(&self) -> u64 {
        self.lambda_parts().iter().sum()
    }

    /// `wt(T) = (m-1) C(|T|, 2) - #{(w', w) in C(T) x T : w' < w}`.
    pub fn weight(&self) -> i64 {
        let n = self.len() as i64;
        (self.m as i64 - 1) * n * (n - 1) / 2 - self.corona_before_tree() as i64
    }

    fn lambda_parts(&self) -> Vec<u64> {
        let corona = self.corona();
        self.words
            .iter()
            .map(|w| corona.range(..w.clone()).count() as u64)
            .collect()
    }

    /// `lambda(T)_i` counts corona words before the i-th node.
    pub fn to_partition(&self) -> Partition {
        Partition::from_sorted_unchecked(self.lambda_parts())
    }

    /// Rebuild the tree from `lambda` in `T_n`: the k-th node is the
    /// `(lambda_k + 1)`-th smallest corona word of the first `k - 1` nodes.
    pub fn from_partition(lambda: &Partition, m: u64) -> Result<Tree> {
        if m == 0 || !lambda.in_t(m) {
            return Err(Error::InvalidArgument(format!("{lambda} is not in T for m = {m}")));
        }
        let mut tree = Tree::empty(m);
        for &part in lambda.parts() {
            let next = if tree.is_empty() {
                Word::root()
            } else {
                tree.corona()
                    .into_iter()
                    .nth(part as usize)
                    .expect("corona of a k-node tree has (m-1)k + 1 words")
            };
            tree.words.insert(next);
        }
        Ok(tree)
    }

    /// Text form `e,1,12`.
    pub fn to_text(&self) -> String {
        let s: Vec<String> = self.words.iter().map(Word::to_string).collect();
        s.join(",")
    }

    pub fn parse(m: u64, s: &str) -> Result<Tree> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Tree::empty(m));
        }
        let words = s
            .split(',')
            .map(|w| {
                let w = w.trim();
                if w == "e" {
                    return Ok(Word::root());
                }
                let letters: std::result::Result<Vec<u8>, _> = if w.contains('.') {
                    w.split('.').map(str::parse).collect()
                } else {
                    w.chars().map(|c| c.to_string().parse()).collect()
                };
                letters.map(Word).map_err(|e| Error::Parse(format!("bad word {w}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Tree::new(m, words)
    }

    /// JSON: array of letter arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.words.iter().map(|w| w.0.clone()).collect::<Vec<_>>())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree{{{}}}", self.to_text())
    }
}

pub fn corona(tree: &Tree) -> BTreeSet<Word> {
    tree.corona()
}

pub fn cell_dim(tree: &Tree) -> u64 {
    tree.cell_dim()
}

pub fn tree_weight(tree: &Tree) -> i64 {
    tree.weight()
}

pub fn tree_to_partition(tree: &Tree) -> Partition {
    tree.to_partition()
}

pub fn partition_to_tree(lambda: &Partition, m: u64) -> Result<Tree> {
    Tree::from_partition(lambda, m)
}

/// Every m-ary tree with `n` nodes, each exactly once.
///
/// Trees are grown by adjoining corona words in increasing lexicographic
/// order; the order in which a tree's nodes appear is forced, so no tree is
/// produced twice. The iterator keeps an explicit stack and can be restarted
/// by calling this function again.
pub fn enumerate_trees(m: u64, n: usize) -> TreeIter {
    assert!(m >= 1);
    TreeIter {
        m,
        n,
        nodes: Vec::new(),
        stack: if n == 0 { Vec::new() } else { vec![(vec![Word::root()], 0)] },
        empty_pending: n == 0,
    }
}

pub struct TreeIter {
    m: u64,
    n: usize,
    nodes: Vec<Word>,
    stack: Vec<(Vec<Word>, usize)>,
    empty_pending: bool,
}

impl Iterator for TreeIter {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Tree::empty(self.m));
        }
        loop {
            let (candidates, next) = self.stack.last_mut()?;
            if *next >= candidates.len() {
                self.stack.pop();
                self.nodes.pop();
                continue;
            }
            let w = candidates[*next].clone();
            *next += 1;
            self.nodes.push(w.clone());
            if self.nodes.len() == self.n {
                let tree = Tree {
                    m: self.m,
                    words: self.nodes.iter().cloned().collect(),
                };
                self.nodes.pop();
                return Some(tree);
            }
            let partial = Tree {
                m: self.m,
                words: self.nodes.iter().cloned().collect(),
            };
            let later: Vec<Word> = partial.corona().into_iter().filter(|c| *c > w).collect();
            self.stack.push((later, 0));
        }
    }
}

/// `(1/((m-1)n+1)) C(mn, n)`, the number of m-ary trees with `n` nodes.
pub fn fuss_catalan(m: u64, n: u64) -> BigInt {
    assert!(m >= 1);
    binomial(m * n, n) / BigInt::from((m - 1) * n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FMode {
    /// `F(q,t)` with polynomial coefficients in `q`.
    Q,
    /// `F(t) = F(1,t)`.
    Numeric,
}

/// Coefficients `F_0, ..., F_{order-1}` of `F(q,t) = 1 + t prod_{k<m} F(q, q^k t)`.
/// The t^n coefficient on the right only involves `F_0..F_{n-1}`.
pub fn f_q_coeffs(m: u64, order: usize) -> Vec<LaurentPoly> {
    assert!(m >= 1 && order >= 1);
    let mut f = vec![LaurentPoly::one()];
    for n in 1..order {
        // [t^(n-1)] of prod_k F(q, q^k t)
        let mut prod = vec![LaurentPoly::one()];
        for k in 0..m as i64 {
            let factor: Vec<LaurentPoly> =
                f.iter().enumerate().map(|(j, c)| c.shift(k * j as i64)).collect();
            prod = truncated_product(&prod, &factor, n);
        }
        f.push(prod.get(n - 1).cloned().unwrap_or_default());
    }
    f
}

fn truncated_product(a: &[LaurentPoly], b: &[LaurentPoly], len: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Coefficients of `F(t) = 1 + t F(t)^m`, solved degree by degree.
pub fn f_numeric_coeffs(m: u64, order: usize) -> Vec<BigInt> {
    assert!(m >= 1 && order >= 1);
    let mut f = vec![BigInt::one()];
    for n in 1..order {
        // [t^(n-1)] F^m
        let mut power = vec![BigInt::one()];
        for _ in 0..m {
            let mut next = vec![BigInt::zero(); n];
            for (i, x) in power.iter().enumerate() {
                for (j, y) in f.iter().enumerate().take(n - i) {
                    next[i + j] += x * y;
                }
            }
            power = next;
        }
        f.push(power[n - 1].clone());
    }
    f
}

pub fn series_f(m: u64, order: usize, mode: FMode) -> TruncSeries {
    match mode {
        FMode::Q => TruncSeries::from_laurent_coeffs(&f_q_coeffs(m, order), order),
        FMode::Numeric => TruncSeries::from_integers(&f_numeric_coeffs(m, order), order),
    }
}

/// `t^n` coefficient of `H(q,t)`: `q^((m-1) C(n,2)) / prod_{i=1}^{n} (1 - q^-i)`.
pub fn h_coeff(m: u64, n: u64) -> RationalFunctionQ {
    let e = (m as i64 - 1) * (n * n.saturating_sub(1) / 2) as i64;
    let mut c = RationalFunctionQ::from_laurent(&LaurentPoly::monomial(1, e));
    for i in 1..=n {
        c = &c * &RationalFunctionQ::inv_one_minus_q_inv(i);
    }
    c
}

pub fn series_h(m: u64, order: usize) -> TruncSeries {
    assert!(m >= 1 && order >= 1);
    TruncSeries::from_coeffs((0..order as u64).map(|n| h_coeff(m, n)).collect(), order)
}

/// Relation between the cell dimension and the tree weight:
/// `d(T) = wt(T) + (m-1) C(n+1, 2) + n`.
pub fn cell_dim_from_weight(weight: i64, m: u64, n: u64) -> i64 {
    weight + (m as i64 - 1) * (n * (n + 1) / 2) as i64 + n as i64
}
