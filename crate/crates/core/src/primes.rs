//! Sieve-backed prime services.
//!
//! A [`PrimeSieve`] is built once (odd-only bitset, filled segment by
//! segment) and is read-only afterwards, so it can be shared freely across
//! threads. Prime counting and interval queries are binary searches on the
//! sorted prime list.

use rug::{Assign, Float};

use crate::error::{invalid, Error, Result};
use crate::precision::{hp, CompensatedSum};

/// Numbers per sieve segment. Keeps the working set of one marking pass
/// cache-sized.
const SEGMENT: u64 = 1 << 18;

/// Segment width for the almost-prime factor-count sieve.
const OMEGA_SEGMENT: u64 = 1 << 16;

/// Primality table on `[2, limit]` plus the ascending list of primes.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    // bit i set <=> 2i+1 is composite (bit 0 is the number 1)
    odd_composite: Vec<u64>,
    primes: Vec<u32>,
}

impl PrimeSieve {
    /// Sieve all primes up to `limit` (2 ≤ limit < 2^32).
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return invalid(format!("sieve limit must be at least 2, got {limit}"));
        }
        if limit > u32::MAX as u64 {
            return invalid(format!("sieve limit {limit} exceeds 2^32 - 1"));
        }
        let n_odd = limit / 2 + limit % 2; // odd numbers 1, 3, ..., <= limit
        let mut bits = vec![0u64; (n_odd as usize).div_ceil(64)];
        let set = |bits: &mut [u64], i: u64| bits[(i >> 6) as usize] |= 1 << (i & 63);
        set(&mut bits, 0);

        let root = isqrt(limit);
        let base = small_primes(root);
        let mut lo = 3u64;
        while lo <= limit {
            let hi = (lo + SEGMENT - 1).min(limit);
            for &p in base.iter().skip(1) {
                if p * p > hi {
                    break;
                }
                let mut m = (p * p).max(lo.div_ceil(p) * p);
                if m % 2 == 0 {
                    m += p;
                }
                while m <= hi {
                    set(&mut bits, m / 2);
                    m += 2 * p;
                }
            }
            lo = hi + 1;
        }

        let mut primes = Vec::with_capacity(estimate_pi(limit));
        primes.push(2u32);
        for (w, &word) in bits.iter().enumerate() {
            let mut free = !word;
            while free != 0 {
                let b = free.trailing_zeros() as u64;
                let k = 2 * ((w as u64) * 64 + b) + 1;
                if k > limit {
                    break;
                }
                primes.push(k as u32);
                free &= free - 1;
            }
        }
        Ok(Self { limit, odd_composite: bits, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn table_says_prime(&self, k: u64) -> bool {
        match k {
            0 | 1 => false,
            2 => true,
            _ if k.is_multiple_of(2) => false,
            _ => {
                let i = k / 2;
                self.odd_composite[(i >> 6) as usize] & (1 << (i & 63)) == 0
            }
        }
    }

    pub fn is_prime(&self, k: u64) -> Result<bool> {
        if k > self.limit {
            return Err(self.out_of_range("k", k));
        }
        Ok(self.table_says_prime(k))
    }

    /// Primality for `k ≤ limit²`: table lookup inside the sieve, trial
    /// division by sieved primes above it. Deterministic.
    pub fn is_prime_extended(&self, k: u64) -> Result<bool> {
        if k <= self.limit {
            return Ok(self.table_says_prime(k));
        }
        if (k as u128) > (self.limit as u128) * (self.limit as u128) {
            return Err(Error::OutOfRange {
                what: "k (trial division reach)",
                value: k.to_string(),
                limit: self.limit,
            });
        }
        let r = isqrt(k);
        for &p in &self.primes {
            let p = p as u64;
            if p > r {
                break;
            }
            if k.is_multiple_of(p) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// π(x).
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        if x.is_nan() {
            return invalid("x is NaN");
        }
        if x > self.limit as f64 {
            return Err(self.out_of_range("x", x));
        }
        Ok(self.primes.partition_point(|&p| (p as f64) <= x) as u64)
    }

    /// Primes p with lo ≤ p ≤ hi, ascending.
    pub fn primes_in(&self, lo: f64, hi: f64) -> Result<&[u32]> {
        if lo.is_nan() || hi.is_nan() {
            return invalid("interval endpoint is NaN");
        }
        if hi > self.limit as f64 {
            return Err(self.out_of_range("hi", hi));
        }
        if lo > hi {
            return Ok(&[]);
        }
        let a = self.primes.partition_point(|&p| (p as f64) < lo);
        let b = self.primes.partition_point(|&p| (p as f64) <= hi);
        Ok(&self.primes[a..b.max(a)])
    }

    /// Σ_{p ≤ x} 1/p, ascending order, compensated.
    pub fn mertens_sum(&self, x: f64) -> Result<Float> {
        if !(x >= 2.0) {
            return invalid(format!("mertens_sum needs x >= 2, got {x}"));
        }
        let ps = self.primes_in(2.0, x)?;
        let mut acc = CompensatedSum::new();
        let mut term = hp(0);
        for &p in ps {
            term.assign(1);
            term /= p;
            acc.add(&term);
        }
        Ok(acc.value())
    }

    /// Almost primes in `[start, cfg.bound]`, ascending.
    pub fn almost_primes(&self, cfg: AlmostPrimeEnumeration, start: u64) -> Result<AlmostPrimes<'_>> {
        if cfg.ell == 0 {
            return invalid("ell must be positive");
        }
        if (cfg.bound as u128) > (self.limit as u128) * (self.limit as u128) {
            return Err(Error::OutOfRange {
                what: "almost-prime bound (needs bound <= limit^2)",
                value: cfg.bound.to_string(),
                limit: self.limit,
            });
        }
        Ok(AlmostPrimes {
            sieve: self,
            cfg,
            next_lo: start.max(2),
            buf: Vec::new(),
            pos: 0,
        })
    }

    fn out_of_range(&self, what: &'static str, value: impl ToString) -> Error {
        Error::OutOfRange { what, value: value.to_string(), limit: self.limit }
    }
}

/// How Ω(k) is compared with ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaMode {
    Exactly,
    AtMost,
}

impl OmegaMode {
    pub fn accepts(self, omega: u32, ell: u32) -> bool {
        match self {
            OmegaMode::Exactly => omega == ell,
            OmegaMode::AtMost => omega >= 1 && omega <= ell,
        }
    }
}

impl std::str::FromStr for OmegaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exactly" => Ok(OmegaMode::Exactly),
            "at-most" | "atmost" => Ok(OmegaMode::AtMost),
            _ => Err(Error::Parse(format!("unknown mode `{s}` (exactly | at-most)"))),
        }
    }
}

impl std::fmt::Display for OmegaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OmegaMode::Exactly => "exactly",
            OmegaMode::AtMost => "at-most",
        })
    }
}

/// Which integers with ℓ prime factors (with multiplicity) to list. The
/// number 1 (Ω = 0) is never emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlmostPrimeEnumeration {
    pub ell: u32,
    pub mode: OmegaMode,
    pub bound: u64,
}

/// Streaming segmented Ω-sieve.
#[derive(Debug)]
pub struct AlmostPrimes<'a> {
    sieve: &'a PrimeSieve,
    cfg: AlmostPrimeEnumeration,
    next_lo: u64,
    buf: Vec<u64>,
    pos: usize,
}

impl AlmostPrimes<'_> {
    fn fill(&mut self) {
        self.buf.clear();
        self.pos = 0;
        while self.buf.is_empty() && self.next_lo <= self.cfg.bound {
            let lo = self.next_lo;
            let hi = lo.saturating_add(OMEGA_SEGMENT - 1).min(self.cfg.bound);
            self.next_lo = hi + 1;
            let len = (hi - lo + 1) as usize;
            // product of the prime powers found so far; a leftover cofactor
            // (necessarily one prime) shows up as prod != k
            let mut prod = vec![1u64; len];
            let mut omega = vec![0u32; len];
            for &p in self.sieve.primes() {
                let p = p as u64;
                if p * p > hi {
                    break;
                }
                let mut pk = p;
                loop {
                    let mut m = lo.div_ceil(pk) * pk;
                    while m <= hi {
                        let i = (m - lo) as usize;
                        prod[i] *= p;
                        omega[i] += 1;
                        m += pk;
                    }
                    if pk > hi / p {
                        break;
                    }
                    pk *= p;
                }
            }
            for i in 0..len {
                let w = omega[i] + u32::from(prod[i] != lo + i as u64);
                if self.cfg.mode.accepts(w, self.cfg.ell) {
                    self.buf.push(lo + i as u64);
                }
            }
        }
    }
}

impl Iterator for AlmostPrimes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buf.len() {
            self.fill();
        }
        let v = *self.buf.get(self.pos)?;
        self.pos += 1;
        Some(v)
    }
}

/// floor(sqrt(n)).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn estimate_pi(x: u64) -> usize {
    let xf = x as f64;
    if xf < 60.0 {
        32
    } else {
        (1.26 * xf / xf.ln()) as usize
    }
}

/// Ω(k) by trial division. Used as an oracle and for small inputs.
pub fn big_omega(mut k: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= k {
        while k.is_multiple_of(d) {
            k /= d;
            count += 1;
        }
        d += 1;
    }
    count + u32::from(k > 1)
}
