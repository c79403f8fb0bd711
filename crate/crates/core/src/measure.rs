//! Level-set measures and finite-window zero-one experiments.
//!
//! `B(T) = { y ∈ [0,1) : a'_1(y)⋯a'_ℓ(y) ≥ T }`, where `a'_i` is the i-th
//! partial quotient when it is prime and 0 otherwise, is a disjoint union of
//! fundamental intervals of prime tuples, so its length can be bracketed by
//! exact interval lengths plus a bound on the tuples that were not listed.

use std::ops::RangeInclusive;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::float::Round;
use rug::integer::Order;
use rug::{Float, Integer, Rational};

use crate::contfrac::{expand_real, union_tail_measure, Enclosure, Word};
use crate::error::{invalid, Error, Result};
use crate::growth::Growth;
use crate::precision::{rational_round, DirectedSum, F64Sum};
use crate::primes::PrimeSieve;

/// Outward-rounded bracket on `leb(B(T))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetMeasure {
    pub ell: u32,
    pub threshold: f64,
    pub cutoff: u64,
    pub exact_lower: Float,
    pub exact_upper: Float,
    /// Prime tuples summed exactly.
    pub tuples: u64,
    /// Set when the threshold is below 3, where the zero-one criterion is not claimed.
    pub below_three: bool,
}

impl LevelSetMeasure {
    pub fn width(&self) -> Float {
        Float::with_val(self.exact_upper.prec(), &self.exact_upper - &self.exact_lower)
    }
}

/// Brackets `leb(B(T))` for ℓ ∈ {1, 2} using prime factors up to `cutoff`.
///
/// ℓ = 1 sums `1/(p(p+1))` over primes `T ≤ p ≤ K`, with `1/(K+1)` covering
/// every omitted prime. ℓ = 2 sums `|I_2(p₁,p₂)|` over pairs with
/// `p₁p₂ ≥ T`; the omitted pairs lie in `⋃_{p₁>K} I_1(p₁)` or in
/// `⋃_{p₁≤K, p₂>K} I_2(p₁,p₂)`, whose lengths are exact.
pub fn level_set_measure(ell: u32, threshold: f64, cutoff: u64, sieve: &PrimeSieve) -> Result<LevelSetMeasure> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return invalid(format!("threshold must be a positive real, got {threshold}"));
    }
    if cutoff < 2 {
        return invalid("cutoff must be at least 2");
    }
    if cutoff > sieve.limit() {
        return Err(Error::OutOfRange { what: "cutoff", value: cutoff.to_string(), limit: sieve.limit() });
    }
    let primes = sieve.primes_in(2.0, cutoff as f64)?;
    let mut lower = DirectedSum::down();
    let mut upper = DirectedSum::up();
    let mut tuples = 0u64;
    let add = |lower: &mut DirectedSum, upper: &mut DirectedSum, r: &Rational| {
        lower.add(&rational_round(r, Round::Down));
        upper.add(&rational_round(r, Round::Up));
    };
    match ell {
        1 => {
            for &p in primes.iter().filter(|&&p| p as f64 >= threshold) {
                let p = u64::from(p);
                add(&mut lower, &mut upper, &Rational::from((1, p * (p + 1))));
                tuples += 1;
            }
            let tail = if threshold > cutoff as f64 {
                // every y with a_1(y) ≥ ⌈T⌉
                Rational::from((1, threshold.ceil() as u64))
            } else {
                Rational::from((1, cutoff + 1))
            };
            upper.add(&rational_round(&tail, Round::Up));
        }
        2 => {
            for &p1 in primes {
                let p1 = u64::from(p1);
                let need = threshold / p1 as f64;
                let start = primes.partition_point(|&p| (p as f64) < need);
                for &p2 in &primes[start..] {
                    let p2 = u64::from(p2);
                    // q_1 = p1, q_2 = p1 p2 + 1, |I_2| = 1/(q_2 (q_2 + q_1))
                    let q2 = Integer::from(p1) * p2 + 1u32;
                    let den = Integer::from(&q2 + p1) * &q2;
                    add(&mut lower, &mut upper, &Rational::from((Integer::from(1), den)));
                    tuples += 1;
                }
                let w = Word::new(vec![p1])?;
                upper.add(&rational_round(&union_tail_measure(&w, cutoff), Round::Up));
            }
            upper.add(&rational_round(&Rational::from((1, cutoff + 1)), Round::Up));
        }
        0 => return invalid("ell must be positive"),
        _ => return Err(Error::Unsupported(format!("exact level-set measure for ell = {ell}; use the Monte Carlo experiment"))),
    }
    Ok(LevelSetMeasure {
        ell,
        threshold,
        cutoff,
        exact_lower: lower.into_value(),
        exact_upper: upper.into_value(),
        tuples,
        below_three: threshold < 3.0,
    })
}

/// Configuration of a finite-window zero-one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct MCExperiment {
    pub samples: usize,
    /// Initial bits per sample.
    pub precision_bits: u32,
    /// Window `[n₁, n₂]` of starting positions.
    pub window: (u64, u64),
    pub phi: Growth,
    pub ell: u32,
    pub seed: u64,
    /// Times a sample may be extended by another `precision_bits` bits.
    pub retry_limit: u32,
}

impl MCExperiment {
    pub fn new(samples: usize, window: RangeInclusive<u64>, phi: Growth, ell: u32, seed: u64) -> Self {
        Self {
            samples,
            precision_bits: 1024,
            window: (*window.start(), *window.end()),
            phi,
            ell,
            seed,
            retry_limit: 4,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return invalid("zero samples: the hit fraction is undefined");
        }
        if self.ell == 0 {
            return invalid("ell must be positive");
        }
        let (a, b) = self.window;
        if a == 0 || a > b {
            return invalid(format!("window [{a}, {b}] must be a non-empty range of positive integers"));
        }
        if self.precision_bits < 8 {
            return invalid("precision must be at least 8 bits");
        }
        Ok(())
    }

    /// Digits that must be certified: positions 1..=n₂+ℓ-1.
    pub fn depth(&self) -> usize {
        (self.window.1 + u64::from(self.ell) - 1) as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MCReport {
    pub samples: usize,
    pub hits: usize,
    pub fraction: f64,
    /// Binomial standard error `sqrt(f(1-f)/N)`.
    pub sigma: f64,
    /// `(n, samples whose product starting at n reaches φ(n))`.
    pub per_n: Vec<(u64, u64)>,
    /// Samples that needed extra bits.
    pub refined: usize,
}

struct SampleOutcome {
    hits: Vec<u64>,
    refined: bool,
}

fn sample_digits(cfg: &MCExperiment, index: usize) -> Result<(Word, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let chunk_bytes = cfg.precision_bits.div_ceil(8) as usize;
    let mut bytes = Vec::new();
    let depth = cfg.depth();
    for attempt in 0..=cfg.retry_limit {
        let mut chunk = vec![0u8; chunk_bytes];
        rng.fill_bytes(&mut chunk);
        bytes.extend_from_slice(&chunk);
        let bits = (bytes.len() * 8) as u32;
        let mantissa = Integer::from_digits(&bytes, Order::Msf);
        let word = expand_real(&Enclosure::dyadic(&mantissa, bits), depth);
        if word.len() >= depth {
            return Ok((word, attempt > 0));
        }
    }
    Err(Error::SampleFailure { index, depth, retries: cfg.retry_limit })
}

fn prime_part(d: u64, sieve: &PrimeSieve) -> Result<f64> {
    Ok(if sieve.is_prime_extended(d)? { d as f64 } else { 0.0 })
}

fn run_sample(cfg: &MCExperiment, index: usize, sieve: &PrimeSieve) -> Result<SampleOutcome> {
    let (word, refined) = sample_digits(cfg, index)?;
    let digits = word.digits();
    let (n1, n2) = cfg.window;
    let ell = cfg.ell as usize;
    let mut hits = Vec::new();
    for n in n1..=n2 {
        let start = (n - 1) as usize;
        let mut prod = 1.0f64;
        for &d in &digits[start..start + ell] {
            prod *= prime_part(d, sieve)?;
        }
        if prod > 0.0 && prod >= cfg.phi.value(n) {
            hits.push(n);
        }
    }
    Ok(SampleOutcome { hits, refined })
}

/// Fraction of sampled x with `a'_n(x)⋯a'_{n+ℓ-1}(x) ≥ φ(n)` for some n in
/// the window. Sample `i` draws its bits from ChaCha8 seeded by `seed` on
/// stream `i`, so the report does not depend on scheduling.
pub fn run_zero_one_experiment(cfg: &MCExperiment, sieve: &PrimeSieve) -> Result<MCReport> {
    cfg.validate()?;
    let outcomes: Vec<SampleOutcome> =
        (0..cfg.samples).into_par_iter().map(|i| run_sample(cfg, i, sieve)).collect::<Result<_>>()?;
    let (n1, n2) = cfg.window;
    let mut per_n: Vec<(u64, u64)> = (n1..=n2).map(|n| (n, 0)).collect();
    let mut hits = 0;
    let mut refined = 0;
    for o in &outcomes {
        if !o.hits.is_empty() {
            hits += 1;
        }
        if o.refined {
            refined += 1;
        }
        for &n in &o.hits {
            per_n[(n - n1) as usize].1 += 1;
        }
    }
    let fraction = hits as f64 / cfg.samples as f64;
    let sigma = (fraction * (1.0 - fraction) / cfg.samples as f64).sqrt();
    Ok(MCReport { samples: cfg.samples, hits, fraction, sigma, per_n, refined })
}

/// `Σ_{n ∈ window} leb(B(φ(n)))` upper brackets.
pub fn window_union_bound(
    ell: u32,
    phi: &Growth,
    window: RangeInclusive<u64>,
    cutoff: u64,
    sieve: &PrimeSieve,
) -> Result<Float> {
    let mut total = DirectedSum::up();
    for n in window {
        total.add(&level_set_measure(ell, phi.value(n), cutoff, sieve)?.exact_upper);
    }
    Ok(total.into_value())
}

/// Which criterion series to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `(log φ(n))^{ℓ-1} / φ(n)`, digits unrestricted (`1/φ(n)` for ℓ = 1).
    Plain,
    /// `(log log φ(n))^{ℓ-1} / (φ(n) log φ(n))`, prime digits.
    Prime,
    /// The prime series with φ(n) replaced by `n φ(n)`.
    QIndexed,
}

impl std::str::FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(SeriesKind::Plain),
            "prime" => Ok(SeriesKind::Prime),
            "q-indexed" => Ok(SeriesKind::QIndexed),
            _ => Err(Error::Parse(format!("unknown series `{s}` (plain, prime, q-indexed)"))),
        }
    }
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeriesKind::Plain => "plain",
            SeriesKind::Prime => "prime",
            SeriesKind::QIndexed => "q-indexed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRow {
    pub n: u64,
    /// `None` when the term was skipped.
    pub term: Option<f64>,
    pub partial_sum: f64,
    pub note: Option<String>,
}

/// Partial sums of the chosen criterion series over `window`.
pub fn borel_bernstein_table(phi: &Growth, ell: u32, kind: SeriesKind, window: RangeInclusive<u64>) -> Result<Vec<SeriesRow>> {
    if ell == 0 {
        return invalid("ell must be positive");
    }
    let (a, b) = (*window.start(), *window.end());
    if a == 0 || a > b {
        return invalid(format!("window [{a}, {b}] must be a non-empty range of positive integers"));
    }
    let k = (ell - 1) as i32;
    let mut sum = F64Sum::default();
    let mut rows = Vec::with_capacity((b - a + 1) as usize);
    for n in a..=b {
        let ln_phi = match kind {
            SeriesKind::QIndexed => phi.ln_value(n) + (n as f64).ln(),
            _ => phi.ln_value(n),
        };
        let term = match kind {
            SeriesKind::Plain => {
                if ell > 1 && ln_phi <= 0.0 {
                    Err("phi(n) <= 1 where log phi is needed")
                } else {
                    Ok(ln_phi.powi(k) * (-ln_phi).exp())
                }
            }
            SeriesKind::Prime | SeriesKind::QIndexed => {
                if ln_phi <= 0.0 {
                    Err("phi(n) <= 1 where log phi is needed")
                } else if ell > 1 && ln_phi <= 1.0 {
                    Err("log log phi(n) <= 0")
                } else {
                    Ok(ln_phi.ln().powi(k) * (-ln_phi).exp() / ln_phi)
                }
            }
        };
        match term {
            Ok(t) => {
                sum.add(t);
                rows.push(SeriesRow { n, term: Some(t), partial_sum: sum.value(), note: None });
            }
            Err(why) => rows.push(SeriesRow { n, term: None, partial_sum: sum.value(), note: Some(why.to_string()) }),
        }
    }
    Ok(rows)
}
