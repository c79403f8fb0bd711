//! Exact continued-fraction kernel.
//!
//! Words of partial quotients, continuants, fundamental intervals, the Gauss
//! map, exact lengths of unions of consecutive intervals, and certified
//! expansion of numbers known only up to an enclosure.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::error::{invalid, Error, Result};

/// A finite sequence of partial quotients, each ≥ 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u64>);

impl Word {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if let Some(pos) = digits.iter().position(|&d| d == 0) {
            return invalid(format!("partial quotient at position {} is 0", pos + 1));
        }
        Ok(Self(digits))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word extended by one digit.
    pub fn child(&self, d: u64) -> Word {
        assert!(d >= 1, "partial quotients are positive");
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(d);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Same rational, written with last digit ≥ 2 (`[…, a, 1]` becomes `[…, a+1]`).
    pub fn canonical(&self) -> Word {
        let mut v = self.0.clone();
        if v.len() > 1 && v[v.len() - 1] == 1 {
            v.pop();
            *v.last_mut().unwrap() += 1;
        }
        Word(v)
    }

    /// The word with the digit at 1-based position `k` removed.
    pub fn without(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k - 1);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `[3,7,16]`, `3,7,16`, `3 7 16`, or `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let digits = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("digit `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(digits)
    }
}

/// `(p_n, q_n)` together with `(p_{n-1}, q_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuantPair {
    pub p: Integer,
    pub q: Integer,
    pub p_prev: Integer,
    pub q_prev: Integer,
}

impl Default for ContinuantPair {
    fn default() -> Self {
        Self::root()
    }
}

impl ContinuantPair {
    /// Seeds for the empty word: `p_0 = 0, q_0 = 1, p_{-1} = 1, q_{-1} = 0`.
    pub fn root() -> Self {
        Self { p: Integer::from(0), q: Integer::from(1), p_prev: Integer::from(1), q_prev: Integer::from(0) }
    }

    /// Advance by one partial quotient.
    pub fn push(&mut self, a: u64) {
        let p_new = Integer::from(&self.p * a) + &self.p_prev;
        let q_new = Integer::from(&self.q * a) + &self.q_prev;
        self.p_prev = std::mem::replace(&mut self.p, p_new);
        self.q_prev = std::mem::replace(&mut self.q, q_new);
    }

    /// `p_n q_{n-1} - p_{n-1} q_n`, always ±1.
    pub fn determinant(&self) -> Integer {
        Integer::from(&self.p * &self.q_prev) - Integer::from(&self.p_prev * &self.q)
    }

    pub fn convergent(&self) -> Rational {
        Rational::from((self.p.clone(), self.q.clone()))
    }
}

pub fn continuants(word: &Word) -> ContinuantPair {
    let mut c = ContinuantPair::root();
    for &a in word.digits() {
        c.push(a);
    }
    c
}

/// `q_n` of a word.
pub fn denominator(word: &Word) -> Integer {
    continuants(word).q
}

/// The set of x in [0,1) whose expansion starts with `word`.
///
/// For even n it is `[p_n/q_n, (p_n+p_{n-1})/(q_n+q_{n-1}))`, for odd n
/// `((p_n+p_{n-1})/(q_n+q_{n-1}), p_n/q_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub level: usize,
    pub word: Word,
}

impl FundamentalInterval {
    fn from_parts(word: &Word, c: &ContinuantPair) -> Self {
        let conv = c.convergent();
        let mediant = Rational::from((Integer::from(&c.p + &c.p_prev), Integer::from(&c.q + &c.q_prev)));
        let (lo, hi) = if word.len().is_multiple_of(2) { (conv, mediant) } else { (mediant, conv) };
        Self { lo, hi, level: word.len(), word: word.clone() }
    }

    /// Whether the left endpoint belongs to the interval (n even).
    pub fn left_closed(&self) -> bool {
        self.level.is_multiple_of(2)
    }

    pub fn length(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.left_closed() { *x >= self.lo } else { *x > self.lo };
        let below = if self.left_closed() { *x < self.hi } else { *x <= self.hi };
        above && below
    }
}

/// Fundamental interval of a non-empty word.
pub fn fundamental_interval(word: &Word) -> Result<FundamentalInterval> {
    if word.is_empty() {
        return invalid("fundamental interval of the empty word");
    }
    Ok(FundamentalInterval::from_parts(word, &continuants(word)))
}

/// `1 / (q_n (q_n + q_{n-1}))`, the exact length of `I_n(word)` (1 for the root).
pub fn interval_length(word: &Word) -> Rational {
    let c = continuants(word);
    let den = Integer::from(&c.q + &c.q_prev) * &c.q;
    Rational::from((Integer::from(1), den))
}

/// Continued-fraction digits of `num/den ∈ [0,1)` by the Euclidean algorithm,
/// truncated to `max_len`. The full expansion always ends in a digit ≥ 2.
pub fn expand_rational(num: &Integer, den: &Integer, max_len: usize) -> Result<Word> {
    if *den <= 0 {
        return invalid("denominator must be positive");
    }
    if *num < 0 || num >= den {
        return invalid(format!("{num}/{den} is not in [0,1)"));
    }
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut digits = Vec::new();
    while a != 0 && digits.len() < max_len {
        let (quot, rem) = b.div_rem_floor(a.clone());
        let d = quot.to_u64().ok_or_else(|| Error::InvalidArgument(format!("partial quotient {quot} exceeds 64 bits")))?;
        digits.push(d);
        b = a;
        a = rem;
    }
    Ok(Word(digits))
}

/// Gauss map `T(x) = 1/x - floor(1/x)`, with `T(0) = 0`.
pub fn gauss_map(x: &Rational) -> Result<Rational> {
    if *x < 0 || *x >= 1 {
        return invalid("Gauss map is defined on [0,1)");
    }
    if *x == 0 {
        return Ok(Rational::new());
    }
    let inv = Rational::from(x.recip_ref());
    let fl = Integer::from(inv.floor_ref());
    Ok(inv - fl)
}

/// Length of `⋃_{a ≤ j ≤ b} I_{n+1}(prefix j)`:
/// `(b+1-a) / ((a q_n + q_{n-1}) ((b+1) q_n + q_{n-1}))`.
pub fn union_measure(prefix: &Word, a: u64, b: u64) -> Result<Rational> {
    if a == 0 {
        return invalid("digits start at 1");
    }
    if a > b {
        return invalid(format!("empty digit range {a}..={b}"));
    }
    let c = continuants(prefix);
    let left = Integer::from(&c.q * a) + &c.q_prev;
    let right = Integer::from(&c.q * (b as u128 + 1)) + &c.q_prev;
    Ok(Rational::from((Integer::from(b - a + 1), left * right)))
}

/// Length of `⋃_{j > b} I_{n+1}(prefix j)`, i.e. `1/(q_n((b+1) q_n + q_{n-1}))`.
pub fn union_tail_measure(prefix: &Word, b: u64) -> Rational {
    let c = continuants(prefix);
    let right = Integer::from(&c.q * (b as u128 + 1)) + &c.q_prev;
    Rational::from((Integer::from(1), right * &c.q))
}

/// A closed interval `[lo, hi] ⊂ [0,1]` known to contain the number being expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    /// `[m / 2^P, (m+1) / 2^P]`.
    pub fn dyadic(mantissa: &Integer, bits: u32) -> Self {
        let den = Integer::from(1) << bits;
        let lo = Rational::from((mantissa.clone(), den.clone()));
        let hi = Rational::from((Integer::from(mantissa + 1u32), den));
        Self { lo, hi }
    }

    /// A number known exactly.
    pub fn exact(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    /// Dyadic truncation of a rational: `floor(x 2^P) / 2^P` with width `2^-P`.
    pub fn truncate(x: &Rational, bits: u32) -> Self {
        let scaled = Rational::from(x << bits);
        let m = Integer::from(scaled.floor_ref());
        Self::dyadic(&m, bits)
    }
}

// a/b vs c/d with b, d > 0
fn cmp_frac(a: &Integer, b: &Integer, c: &Integer, d: &Integer) -> Ordering {
    Integer::from(a * d).cmp(&Integer::from(c * b))
}

/// Longest prefix of partial quotients shared by every point of the enclosure.
///
/// Digits come from the Euclidean expansion of the lower end. A digit is
/// kept only if both ends of the enclosure lie in the fundamental interval of
/// the extended prefix, so every emitted digit is provably correct.
pub fn expand_real(enc: &Enclosure, max_len: usize) -> Word {
    let (lo_n, lo_d) = (enc.lo.numer().clone(), enc.lo.denom().clone());
    let (hi_n, hi_d) = (enc.hi.numer().clone(), enc.hi.denom().clone());
    if lo_n <= 0 || cmp_frac(&hi_n, &hi_d, &Integer::from(1), &Integer::from(1)) != Ordering::Less {
        // some point of the enclosure is outside (0,1)
        return Word::empty();
    }
    let mut c = ContinuantPair::root();
    let (mut a, mut b) = (lo_n, lo_d); // T^n(lo) = a/b
    let mut digits = Vec::new();
    let inside = |x_n: &Integer, x_d: &Integer, lo: (&Integer, &Integer), hi: (&Integer, &Integer), left_closed: bool| {
        let l = cmp_frac(x_n, x_d, lo.0, lo.1);
        let h = cmp_frac(x_n, x_d, hi.0, hi.1);
        if left_closed {
            l != Ordering::Less && h == Ordering::Less
        } else {
            l == Ordering::Greater && h != Ordering::Greater
        }
    };
    while a != 0 && digits.len() < max_len {
        let (quot, rem) = Integer::from(&b).div_rem_floor(a.clone());
        let Some(d) = quot.to_u64() else { break };
        let p = Integer::from(&c.p * d) + &c.p_prev;
        let q = Integer::from(&c.q * d) + &c.q_prev;
        let pm = Integer::from(&p + &c.p);
        let qm = Integer::from(&q + &c.q);
        let level = digits.len() + 1;
        let (lo, hi) = if level % 2 == 0 { ((&p, &q), (&pm, &qm)) } else { ((&pm, &qm), (&p, &q)) };
        let left_closed = level % 2 == 0;
        if !inside(&hi_n, &hi_d, lo, hi, left_closed) {
            break;
        }
        // lo is in the interval by construction of its digit
        digits.push(d);
        c.push(d);
        b = a;
        a = rem;
    }
    Word(digits)
}

/// Exact check of one deletion ratio and all split ratios for a word.
#[derive(Debug, Clone)]
pub struct ContinuantBoundReport {
    /// `q_n(a) / q_{n-1}(a with a_k deleted)`, required in `[(a_k+1)/2, a_k+1]`.
    pub deletion_ratio: Rational,
    pub deletion_lower: Rational,
    pub deletion_upper: Rational,
    /// For each split point j (b = a[..j], c = a[j..]), `q(a) / (q(b) q(c))`, required in `[1, 2]`.
    pub split_ratios: Vec<(usize, Rational)>,
}

impl ContinuantBoundReport {
    pub fn deletion_ok(&self) -> bool {
        self.deletion_lower <= self.deletion_ratio && self.deletion_ratio <= self.deletion_upper
    }

    pub fn splits_ok(&self) -> bool {
        self.split_ratios.iter().all(|(_, r)| *r >= 1 && *r <= 2)
    }

    pub fn all_ok(&self) -> bool {
        self.deletion_ok() && self.splits_ok()
    }
}

/// Verify the deletion bound at 1-based index `k` and the product bound at every split.
pub fn check_continuant_bounds(word: &Word, k: usize) -> Result<ContinuantBoundReport> {
    if k == 0 || k > word.len() {
        return invalid(format!("index {k} outside 1..={}", word.len()));
    }
    let q = denominator(word);
    let q_del = denominator(&word.without(k));
    let ak = word.digits()[k - 1];
    let deletion_ratio = Rational::from((q.clone(), q_del));
    let deletion_lower = Rational::from((ak + 1, 2u64));
    let deletion_upper = Rational::from(ak + 1);
    let split_ratios = (1..word.len())
        .map(|j| {
            let b = Word(word.digits()[..j].to_vec());
            let c = Word(word.digits()[j..].to_vec());
            (j, Rational::from((q.clone(), denominator(&b) * denominator(&c))))
        })
        .collect();
    Ok(ContinuantBoundReport { deletion_ratio, deletion_lower, deletion_upper, split_ratios })
}
