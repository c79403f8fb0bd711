//! Nested prime-digit intervals for `φ(n) = c^{b^n}`.
//!
//! Level k keeps the words `(d_1,…,d_k)` with every `d_j` prime in
//! `[c^{b^j}, 3c^{b^j}]`. Child counts are bounded below by
//! `m_k = c^{b^k} / (2 b^k log c)` and gaps by
//! `ε_k = 36^{-(k+1)} c^{-2(b^{k+1}-b)/(b-1)}`, both kept as logarithms.

use rug::Rational;

use crate::contfrac::{fundamental_interval, Word};
use crate::error::{invalid, Error, Result};
use crate::primes::PrimeSieve;

/// Below this the prime-counting estimate behind `m_k` does not apply.
pub const ROSSER_MIN: f64 = 55.0;

/// Levels are enumerated word by word only while the level has at most this many words.
pub const ENUMERATION_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuczakParams {
    pub b: f64,
    pub c: f64,
    pub ell: u32,
}

impl LuczakParams {
    pub fn new(b: f64, c: f64, ell: u32) -> Result<Self> {
        if !(b > 1.0 && b.is_finite()) || !(c > 1.0 && c.is_finite()) {
            return invalid(format!("b and c must be finite reals > 1, got b={b}, c={c}"));
        }
        if ell == 0 {
            return invalid("ell must be positive");
        }
        Ok(Self { b, c, ell })
    }

    /// `log c^{b^k}`.
    pub fn log_threshold(&self, k: u32) -> f64 {
        self.b.powi(k as i32) * self.c.ln()
    }

    /// `log m_k`.
    pub fn log_m(&self, k: u32) -> f64 {
        let bk = self.b.powi(k as i32);
        bk * self.c.ln() - (2.0 * bk * self.c.ln()).ln()
    }

    /// `log ε_k`.
    pub fn log_eps(&self, k: u32) -> f64 {
        let b = self.b;
        -((k + 1) as f64) * 36f64.ln() - 2.0 * (b.powi(k as i32 + 1) - b) / (b - 1.0) * self.c.ln()
    }

    /// The prime digits allowed at position k.
    pub fn digits<'a>(&self, k: u32, sieve: &'a PrimeSieve) -> Result<&'a [u32]> {
        let x = self.log_threshold(k).exp();
        sieve.primes_in(x, 3.0 * x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CantorLevel {
    pub k: u32,
    pub log_m: f64,
    pub log_eps: f64,
    /// `c^{b^k} ≥ 55`.
    pub rosser_applicable: bool,
    /// Primes in `[c^{b^k}, 3c^{b^k}]` when the interval is inside the sieve.
    pub prime_count: Option<u64>,
    pub enumerated_words: Option<Vec<Word>>,
}

impl CantorLevel {
    pub fn m(&self) -> f64 {
        self.log_m.exp()
    }

    /// `m_k ≥ 2`.
    pub fn admissible(&self) -> bool {
        self.log_m >= 2f64.ln()
    }

    /// Whether the true count reaches `m_k`; `None` outside the sieve.
    pub fn count_ok(&self) -> Option<bool> {
        self.prime_count.map(|n| n as f64 >= self.m())
    }
}

pub fn luczak_levels(params: &LuczakParams, k_max: u32, sieve: &PrimeSieve) -> Result<Vec<CantorLevel>> {
    if k_max < 2 {
        return invalid("k_max must be at least 2");
    }
    let mut levels = Vec::with_capacity(k_max as usize);
    let mut words: Option<Vec<Word>> = Some(vec![Word::empty()]);
    for k in 1..=k_max {
        let x = params.log_threshold(k).exp();
        let digits = if (3.0 * x) <= sieve.limit() as f64 { Some(params.digits(k, sieve)?) } else { None };
        words = match (words, digits) {
            (Some(ws), Some(ds)) if (ws.len() as u64).saturating_mul(ds.len() as u64) <= ENUMERATION_LIMIT => {
                Some(ws.iter().flat_map(|w| ds.iter().map(move |&d| w.child(u64::from(d)))).collect())
            }
            _ => None,
        };
        levels.push(CantorLevel {
            k,
            log_m: params.log_m(k),
            log_eps: params.log_eps(k),
            rosser_applicable: x >= ROSSER_MIN,
            prime_count: digits.map(|d| d.len() as u64),
            enumerated_words: words.clone(),
        });
    }
    Ok(levels)
}

/// `(k, log(m_1⋯m_{k-1}) / -log(m_k ε_k))` for `k = 3..=k_max`.
pub fn falconer_lower_bound(params: &LuczakParams, k_max: u32) -> Result<Vec<(u32, f64)>> {
    if k_max < 3 {
        return invalid("k_max must be at least 3");
    }
    let mut out = Vec::new();
    let mut num = params.log_m(1) + params.log_m(2);
    for k in 3..=k_max {
        let den = -(params.log_m(k) + params.log_eps(k));
        out.push((k, num / den));
        num += params.log_m(k);
    }
    Ok(out)
}

/// Limit of the ratio: the coefficients of `b^k log c` in numerator and
/// denominator are `1/(b-1)` and `2b/(b-1) - 1`; `log c` cancels.
pub fn falconer_limit(b: &Rational) -> Result<Rational> {
    if *b <= 1 {
        return invalid(format!("b must exceed 1, got {b}"));
    }
    let bm1 = Rational::from(b - 1u32);
    let num = Rational::from(bm1.recip_ref());
    let den = (2u32 * b.clone()) / &bm1 - 1u32;
    Ok(num / den)
}

/// Diameters of the level-k sets for `k = 1..=levels`. The level-k set of a
/// word is the hull of its allowed children at level k+1.
pub fn luczak_cover(params: &LuczakParams, levels: u32, sieve: &PrimeSieve, guard: u64) -> Result<Vec<Vec<Rational>>> {
    if levels == 0 {
        return invalid("need at least one level");
    }
    let mut digit_sets = Vec::new();
    for k in 1..=levels + 1 {
        let x = params.log_threshold(k).exp();
        if 3.0 * x > sieve.limit() as f64 {
            return Err(Error::OutOfRange { what: "3 c^(b^k)", value: format!("{:e}", 3.0 * x), limit: sieve.limit() });
        }
        let ds = params.digits(k, sieve)?;
        if ds.is_empty() {
            return Err(Error::Degenerate(format!("no primes in [c^(b^{k}), 3c^(b^{k})]")));
        }
        digit_sets.push(ds);
    }
    let mut words = vec![Word::empty()];
    let mut out = Vec::new();
    for k in 0..levels as usize {
        let total = (words.len() as u64).saturating_mul(digit_sets[k].len() as u64);
        if total > guard {
            return Err(Error::ResourceLimit { guard: "cover enumeration", requested: total.to_string(), limit: guard });
        }
        words = words.iter().flat_map(|w| digit_sets[k].iter().map(move |&d| w.child(u64::from(d)))).collect();
        let next = digit_sets[k + 1];
        let (lo_d, hi_d) = (u64::from(next[0]), u64::from(*next.last().unwrap()));
        let mut diam = Vec::with_capacity(words.len());
        for w in &words {
            let a = fundamental_interval(&w.child(lo_d))?;
            let b = fundamental_interval(&w.child(hi_d))?;
            let lo = a.lo.clone().min(b.lo.clone());
            let hi = a.hi.clone().max(b.hi.clone());
            diam.push(hi - lo);
        }
        out.push(diam);
    }
    Ok(out)
}
