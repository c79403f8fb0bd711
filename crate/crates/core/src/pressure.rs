//! Finite-alphabet pressure equations.
//!
//! For an alphabet `{1..M}`, depth `n`, base `B > 1` and block length ℓ, the
//! partition sum is
//!
//! ```text
//!     Z(s) = Σ_{a ∈ {1..M}^n} B^{-n f_ℓ(s)} q_n(a)^{-2s}
//! ```
//!
//! and the dimensional number is `inf { s ≥ 0 : Z(s) ≤ 1 }`, located by
//! bisection. Sums are carried in the log domain.
//!
//! Small problems are enumerated word by word. Larger ones split each word
//! into a prefix of length k and a suffix of length m and use
//! `q_n(ab) = q_k(a) (q_m(b) + r p_m(b))` with `r = q_{k-1}(a)/q_k(a) ∈ (0,1]`.
//! The suffix sum `H(r) = Σ_b (q_m(b) + r p_m(b))^{-2s}` is analytic on a
//! neighbourhood of `[0,1]` (its poles sit at `r ≤ -1`), so it is tabulated
//! exactly at Chebyshev nodes and interpolated.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use rug::Rational;

use crate::error::{invalid, Error, Result};
use crate::growth::Growth;
use crate::precision::F64Sum;

/// Default cap on enumerated words.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_TOL: f64 = 1e-9;

/// Chebyshev nodes for the suffix interpolant.
const CHEB_NODES: usize = 32;

/// `f_ℓ(s)` by the recursion `f_1 = s`, `f_ℓ = s f_{ℓ-1} / (1 - s + f_{ℓ-1})`.
pub fn f_ell(ell: u32, s: f64) -> Result<f64> {
    if ell == 0 {
        return invalid("ell must be positive");
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("f_ell needs 0 < s < 1, got {s}")));
    }
    Ok(f_ell_unchecked(ell, s))
}

/// The recursion on the closed interval `[0,1]`.
pub(crate) fn f_ell_unchecked(ell: u32, s: f64) -> f64 {
    let mut f = s;
    for _ in 1..ell {
        f = s * f / (1.0 - s + f);
    }
    f
}

/// The closed form `s^ℓ (2s-1) / (s^ℓ - (1-s)^ℓ)`, valid away from s = 1/2.
pub fn f_ell_closed_form(ell: u32, s: f64) -> f64 {
    let a = s.powi(ell as i32);
    let b = (1.0 - s).powi(ell as i32);
    a * (2.0 * s - 1.0) / (a - b)
}

/// `f_ℓ` in exact rational arithmetic.
pub fn f_ell_rational(ell: u32, s: &Rational) -> Result<Rational> {
    if ell == 0 {
        return invalid("ell must be positive");
    }
    if *s <= 0 || *s >= 1 {
        return Err(Error::Domain(format!("f_ell needs 0 < s < 1, got {s}")));
    }
    let mut f = s.clone();
    for _ in 1..ell {
        let num = Rational::from(s * &f);
        let den = (1 - s.clone()) + &f;
        f = num / den;
    }
    Ok(f)
}

/// One instance of the finite pressure equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureProblem {
    pub ell: u32,
    /// B > 1.
    pub base: f64,
    /// Alphabet `{1..M}`.
    pub alphabet: u64,
    /// Word length n.
    pub depth: usize,
    /// Cap on enumerated words.
    pub guard: u64,
}

impl PressureProblem {
    pub fn new(ell: u32, base: f64, alphabet: u64, depth: usize) -> Result<Self> {
        if ell == 0 {
            return invalid("ell must be positive");
        }
        if !(base > 1.0) || !base.is_finite() {
            return invalid(format!("B must be a finite real > 1, got {base}"));
        }
        if alphabet == 0 || depth == 0 {
            return invalid("alphabet size and depth must be positive");
        }
        Ok(Self { ell, base, alphabet, depth, guard: DEFAULT_GUARD })
    }

    pub fn with_guard(mut self, guard: u64) -> Self {
        self.guard = guard;
        self
    }

    /// How the sum will be evaluated, or a guard error.
    pub fn plan(&self) -> Result<Plan> {
        let m = self.alphabet as u128;
        let n = self.depth as u32;
        let words = |len: u32| m.checked_pow(len);
        // width: q_n ≤ (M+1)^n must fit comfortably in u128
        let width_bits = (n as f64) * ((self.alphabet + 1) as f64).log2();
        if width_bits > 126.0 {
            return Err(Error::ResourceLimit {
                guard: "continuant width",
                requested: format!("(M+1)^n = 2^{width_bits:.1}"),
                limit: 126,
            });
        }
        let guard = self.guard as u128;
        if words(n).is_some_and(|w| w <= guard) {
            return Ok(Plan::Direct);
        }
        let mut best: Option<(u128, usize)> = None;
        for suffix in 1..self.depth {
            let (Some(sw), Some(pw)) = (words(suffix as u32), words(n - suffix as u32)) else {
                continue;
            };
            let tab = sw * CHEB_NODES as u128;
            if tab <= guard && pw <= guard {
                // a prefix word costs an exponential plus a Chebyshev evaluation
                let cost = tab + 4 * pw;
                if best.is_none_or(|(c, _)| cost < c) {
                    best = Some((cost, suffix));
                }
            }
        }
        match best {
            Some((_, suffix)) => Ok(Plan::Split { prefix: self.depth - suffix, suffix }),
            None => Err(Error::ResourceLimit {
                guard: "enumeration",
                requested: format!("{}^{} words", self.alphabet, self.depth),
                limit: self.guard,
            }),
        }
    }
}

/// Evaluation strategy chosen by [`PressureProblem::plan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plan {
    /// Enumerate all `M^n` words.
    Direct,
    /// Enumerate `M^prefix` prefixes against an interpolated suffix sum over `M^suffix` words.
    Split { prefix: usize, suffix: usize },
}

fn fibonacci_q(n: usize) -> f64 {
    // q_n(1,…,1) = F_{n+1}
    let (mut a, mut b) = (1.0f64, 1.0f64);
    for _ in 1..n {
        let c = a + b;
        a = b;
        b = c;
    }
    b
}

/// Depth-first walk over `{1..M}^len`, calling `leaf(q_prev, q, p_prev, p)`.
fn walk(m: u64, len: usize, state: (u128, u128, u128, u128), leaf: &mut impl FnMut(u128, u128, u128, u128)) {
    let (qp, q, pp, p) = state;
    if len == 0 {
        leaf(qp, q, pp, p);
        return;
    }
    for a in 1..=m as u128 {
        walk(m, len - 1, (q, a * q + qp, p, a * p + pp), leaf);
    }
}

/// Sum of `(scale / q)^{2s}` over all words of length `len`, split across the
/// first digit with results reduced in digit order.
fn direct_sum(m: u64, len: usize, scale: f64, s: f64) -> f64 {
    let two_s = 2.0 * s;
    let parts: Vec<f64> = (1..=m)
        .into_par_iter()
        .map(|a| {
            let mut acc = F64Sum::default();
            // after the first digit a: q_1 = a, q_0 = 1, p_1 = 1, p_0 = 0
            walk(m, len - 1, (1, a as u128, 0, 1), &mut |_, q, _, _| acc.add((scale / q as f64).powf(two_s)));
            acc.value()
        })
        .collect();
    parts.into_iter().collect::<F64Sum>().value()
}

/// Chebyshev interpolant of a smooth function on `[0, 1]`.
struct Chebyshev {
    coeffs: Vec<f64>,
}

impl Chebyshev {
    fn nodes() -> Vec<f64> {
        (0..CHEB_NODES)
            .map(|j| {
                let x = (std::f64::consts::PI * (j as f64 + 0.5) / CHEB_NODES as f64).cos();
                0.5 * (x + 1.0)
            })
            .collect()
    }

    fn fit(values: &[f64]) -> Self {
        let n = values.len();
        let coeffs = (0..n)
            .map(|i| {
                let s: F64Sum = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * (std::f64::consts::PI * i as f64 * (j as f64 + 0.5) / n as f64).cos())
                    .collect();
                let c = 2.0 * s.value() / n as f64;
                if i == 0 {
                    c / 2.0
                } else {
                    c
                }
            })
            .collect::<Vec<f64>>();
        // coefficients decay geometrically; drop the ones below double precision
        let floor = coeffs[0].abs() * 1e-18;
        let keep = coeffs.iter().rposition(|c| c.abs() > floor).map_or(1, |i| i + 1);
        Self { coeffs: coeffs[..keep].to_vec() }
    }

    fn eval(&self, r: f64) -> f64 {
        let x = 2.0 * r - 1.0;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }
}

/// Everything needed to evaluate `Z(s)` repeatedly for one problem.
#[derive(Debug, Clone)]
pub struct PartitionSum {
    problem: PressureProblem,
    plan: Plan,
    // suffix continuants (q_m, p_m) of every suffix word, for the split plan
    suffixes: Vec<(f64, f64)>,
    // log(c / (q_m + r p_m)) per Chebyshev node, when small enough to keep
    suffix_logs: Option<Vec<Vec<f64>>>,
    // (log(q_min / q_k), q_{k-1} / q_k) per prefix word
    prefixes: Vec<(f64, f64)>,
}

/// Largest cached suffix table, in entries.
const SUFFIX_CACHE: usize = 1 << 24;

impl PartitionSum {
    pub fn new(problem: PressureProblem) -> Result<Self> {
        let plan = problem.plan()?;
        let mut out = Self { problem, plan, suffixes: Vec::new(), suffix_logs: None, prefixes: Vec::new() };
        if let Plan::Split { prefix, suffix } = plan {
            let m = problem.alphabet;
            let mut v = Vec::with_capacity((m as usize).pow(suffix as u32));
            walk(m, suffix, (0, 1, 1, 0), &mut |_, q, _, p| v.push((q as f64, p as f64)));
            out.suffixes = v;
            let c = fibonacci_q(problem.depth) / fibonacci_q(prefix);
            if out.suffixes.len() * CHEB_NODES <= SUFFIX_CACHE {
                let logs = Chebyshev::nodes()
                    .iter()
                    .map(|&r| out.suffixes.iter().map(|&(q, p)| (c / (q + r * p)).ln()).collect())
                    .collect();
                out.suffix_logs = Some(logs);
            }
            let q_pre_min = fibonacci_q(prefix);
            for a in 1..=m {
                walk(m, prefix - 1, (1, a as u128, 0, 1), &mut |qp, q, _, _| {
                    out.prefixes.push(((q_pre_min / q as f64).ln(), qp as f64 / q as f64));
                });
            }
        }
        Ok(out)
    }

    pub fn plan(&self) -> Plan {
        self.plan
    }

    /// `log Z(s)` for `s ∈ [0, 1]`.
    pub fn log_sum(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain(format!("partition sum needs s in [0,1], got {s}")));
        }
        let pr = &self.problem;
        let n = pr.depth;
        let q_min = fibonacci_q(n);
        let weight = -(n as f64) * f_ell_unchecked(pr.ell, s) * pr.base.ln();
        let scaled = match self.plan {
            Plan::Direct => direct_sum(pr.alphabet, n, q_min, s),
            Plan::Split { prefix, .. } => self.split_sum(prefix, s),
        };
        Ok(weight + scaled.ln() - 2.0 * s * q_min.ln())
    }

    fn split_sum(&self, prefix: usize, s: f64) -> f64 {
        let two_s = 2.0 * s;
        let c = fibonacci_q(self.problem.depth) / fibonacci_q(prefix);
        let values: Vec<f64> = match &self.suffix_logs {
            Some(logs) => logs
                .par_iter()
                .map(|row| row.iter().map(|&l| (two_s * l).exp()).collect::<F64Sum>().value())
                .collect(),
            None => Chebyshev::nodes()
                .par_iter()
                .map(|&r| self.suffixes.iter().map(|&(q, p)| (c / (q + r * p)).powf(two_s)).collect::<F64Sum>().value())
                .collect(),
        };
        let h = Chebyshev::fit(&values);
        self.prefixes.iter().map(|&(l, r)| (two_s * l).exp() * h.eval(r)).collect::<F64Sum>().value()
    }
}

/// `log Σ_{a ∈ {1..M}^n} B^{-n f_ℓ(s)} q_n(a)^{-2s}`.
pub fn partition_sum(problem: &PressureProblem, s: f64) -> Result<f64> {
    PartitionSum::new(*problem)?.log_sum(s)
}

/// Result of the bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalNumber {
    pub value: f64,
    /// Final bracket `[lo, hi]` with `Z(lo) > 1 ≥ Z(hi)`.
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// `inf { s ∈ [0,1] : Z(s) ≤ 1 }` by bisection to width [`BISECTION_TOL`].
///
/// Returns 0 when `Z(0) ≤ 1` (only the one-letter alphabet), and an error
/// when `Z(1) > 1` so the root is not in `[0,1]`.
pub fn dimensional_number(problem: &PressureProblem) -> Result<DimensionalNumber> {
    let z = PartitionSum::new(*problem)?;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let at_lo = z.log_sum(lo)?;
    if at_lo <= 0.0 {
        return Ok(DimensionalNumber { value: 0.0, lo: 0.0, hi: 0.0, iterations: 0 });
    }
    let at_hi = z.log_sum(hi)?;
    if at_hi > 0.0 {
        return Err(Error::NotBracketed { lo, hi, lo_value: at_lo, hi_value: at_hi });
    }
    let mut iterations = 0;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if z.log_sum(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(DimensionalNumber { value: 0.5 * (lo + hi), lo, hi, iterations })
}

/// Window-minimum estimates of `log B_φ` and `log b_φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthExponents {
    /// `max(0, min_n log φ(n) / n)`.
    pub log_big_b: f64,
    /// `max(0, min_n log log φ(n) / n)` over n with φ(n) > 1.
    pub log_small_b: f64,
    pub window: (u64, u64),
    /// n where φ(n) ≤ 1, left out of the log-log minimum.
    pub skipped: Vec<u64>,
}

pub fn classify_growth(phi: &Growth, window: RangeInclusive<u64>) -> Result<GrowthExponents> {
    let (a, b) = (*window.start(), *window.end());
    if a == 0 || a > b {
        return invalid(format!("window {a}..={b} must be a non-empty range of positive integers"));
    }
    let mut big = f64::INFINITY;
    let mut small = f64::INFINITY;
    let mut skipped = Vec::new();
    for n in a..=b {
        big = big.min(phi.ln_value(n) / n as f64);
        match phi.ln_ln_value(n) {
            Some(ll) => small = small.min(ll / n as f64),
            None => skipped.push(n),
        }
    }
    if skipped.len() as u64 == b - a + 1 {
        return Err(Error::UndefinedExponent(format!("[{a}, {b}] for {phi}")));
    }
    Ok(GrowthExponents { log_big_b: big.max(0.0), log_small_b: small.max(0.0), window: (a, b), skipped })
}

/// Which branch of the dimension formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthCase {
    /// B_φ = 1: dimension 1.
    Subexponential,
    /// 1 < B_φ < ∞: the dimensional number at B_φ.
    Exponential,
    /// B_φ = ∞: 1/(b_φ + 1).
    Superexponential,
}

impl std::fmt::Display for GrowthCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GrowthCase::Subexponential => "B=1",
            GrowthCase::Exponential => "1<B<inf",
            GrowthCase::Superexponential => "B=inf",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HwxDimension {
    pub value: f64,
    pub case: GrowthCase,
    pub exponents: GrowthExponents,
}

/// Hausdorff dimension of the set of x with `a_n(x)⋯a_{n+ℓ-1}(x) ≥ φ(n)`
/// infinitely often. The same value holds when the digits must be prime.
///
/// The exponents are classified with `tolerance`: `log B < tol` is the B = 1
/// case, otherwise `log b > tol` is the B = ∞ case.
pub fn hwx_dimension(
    ell: u32,
    phi: &Growth,
    window: RangeInclusive<u64>,
    alphabet: u64,
    depth: usize,
    tolerance: f64,
) -> Result<HwxDimension> {
    let exponents = classify_growth(phi, window)?;
    let (value, case) = if exponents.log_big_b < tolerance {
        (1.0, GrowthCase::Subexponential)
    } else if exponents.log_small_b > tolerance {
        (1.0 / (exponents.log_small_b.exp() + 1.0), GrowthCase::Superexponential)
    } else {
        let problem = PressureProblem::new(ell, exponents.log_big_b.exp(), alphabet, depth)?;
        (dimensional_number(&problem)?.value, GrowthCase::Exponential)
    };
    Ok(HwxDimension { value, case, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_ell_examples() {
        for i in 1..100 {
            let s = i as f64 / 100.0;
            assert!((f_ell(2, s).unwrap() - s * s).abs() < 1e-14);
        }
        assert_eq!(f_ell_rational(3, &Rational::from((1, 2))).unwrap(), Rational::from((1, 6)));
        assert!(matches!(f_ell(2, 0.0), Err(Error::Domain(_))));
        assert!(matches!(f_ell(2, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn f_ell_monotone_grid() {
        for ell in 1..=5 {
            for i in 1..9 {
                let (s, t) = (i as f64 / 10.0, (i + 1) as f64 / 10.0);
                assert!(f_ell(ell, s).unwrap() < f_ell(ell, t).unwrap());
                if ell > 1 {
                    assert!(f_ell(ell, s).unwrap() < f_ell(ell - 1, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn f_ell_closed_form_agrees() {
        for ell in 1..=6 {
            for &s in &[0.1, 0.3, 0.55, 0.75, 0.9] {
                let a = f_ell(ell, s).unwrap();
                assert!((a - f_ell_closed_form(ell, s)).abs() < 1e-12 * a.max(1e-3));
            }
        }
    }

    fn brute(problem: &PressureProblem, s: f64) -> f64 {
        fn rec(m: u64, left: usize, qp: u128, q: u128, out: &mut Vec<u128>) {
            if left == 0 {
                out.push(q);
                return;
            }
            for a in 1..=m as u128 {
                rec(m, left - 1, q, a * q + qp, out);
            }
        }
        let mut qs = Vec::new();
        rec(problem.alphabet, problem.depth, 0, 1, &mut qs);
        let w = problem.base.powf(-(problem.depth as f64) * f_ell_unchecked(problem.ell, s));
        qs.iter().map(|&q| w * (q as f64).powf(-2.0 * s)).sum::<f64>().ln()
    }

    #[test]
    fn partition_single_word() {
        for n in [1usize, 5, 20, 50] {
            let p = PressureProblem::new(2, 3.0, 1, n).unwrap();
            let want = -(n as f64) * f_ell_unchecked(2, 0.7) * 3f64.ln() - 1.4 * fibonacci_q(n).ln();
            assert!((partition_sum(&p, 0.7).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn partition_two_terms() {
        let p = PressureProblem::new(1, std::f64::consts::E, 2, 1).unwrap();
        let want = ((-0.6f64).exp() * (1.0 + 2f64.powf(-1.2))).ln();
        assert!((partition_sum(&p, 0.6).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn split_plan_matches_direct() {
        let p = PressureProblem::new(1, 2.0, 6, 7).unwrap();
        let split = p.with_guard(7_000);
        assert_eq!(p.plan().unwrap(), Plan::Direct);
        assert!(matches!(split.plan().unwrap(), Plan::Split { .. }));
        for &s in &[0.3, 0.6, 0.95] {
            let a = partition_sum(&p, s).unwrap();
            let b = partition_sum(&split, s).unwrap();
            assert!((a - b).abs() < 1e-12, "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn guard_errors() {
        let p = PressureProblem::new(1, 2.0, 1000, 10).unwrap();
        assert!(matches!(p.plan(), Err(Error::ResourceLimit { .. })));
        let wide = PressureProblem::new(1, 2.0, 1, 200).unwrap();
        assert!(matches!(wide.plan(), Err(Error::ResourceLimit { guard: "continuant width", .. })));
    }

    #[test]
    fn partition_matches_brute_force() {
        let p = PressureProblem::new(1, 5.0, 4, 3).unwrap();
        for &s in &[0.55, 0.8, 1.0] {
            assert!((partition_sum(&p, s).unwrap() - brute(&p, s)).abs() < 1e-12);
        }
    }

    #[test]
    fn dimensional_number_degenerate_alphabet() {
        let p = PressureProblem::new(1, 2.0, 1, 6).unwrap();
        assert_eq!(dimensional_number(&p).unwrap().value, 0.0);
    }

    #[test]
    fn dimensional_number_root_property() {
        let p = PressureProblem::new(2, 10.0, 5, 4).unwrap();
        let d = dimensional_number(&p).unwrap();
        assert!(d.hi - d.lo <= BISECTION_TOL);
        let z = PartitionSum::new(p).unwrap();
        assert!(z.log_sum(d.lo).unwrap() > 0.0);
        assert!(z.log_sum(d.hi).unwrap() <= 0.0);
    }

    #[test]
    fn growth_exponent_examples() {
        let g = classify_growth(&Growth::DoubleExponential { b: 2.0, c: 2.0 }, 10..=40).unwrap();
        let want = (10.0 * 2f64.ln() + 2f64.ln().ln()) / 10.0;
        assert!((g.log_small_b - want).abs() < 1e-12);
        let e = classify_growth(&Growth::DoubleExponential { b: 2.0, c: std::f64::consts::E }, 10..=40).unwrap();
        assert!((e.log_small_b - 2f64.ln()).abs() < 1e-12);
        let far = classify_growth(&Growth::DoubleExponential { b: 2.0, c: 2.0 }, 1_000_000..=1_000_010).unwrap();
        assert!((far.log_small_b - 2f64.ln()).abs() < 1e-6);
        let b3 = classify_growth(&Growth::Exponential(3.0), 1..=30).unwrap();
        assert!((b3.log_big_b - 3f64.ln()).abs() < 1e-15);
        let a = classify_growth(&Growth::Power(2.0), 10..=100).unwrap().log_big_b;
        let b = classify_growth(&Growth::Power(2.0), 10..=1000).unwrap().log_big_b;
        assert!(b < a && b < 0.02);
        assert!(matches!(classify_growth(&Growth::Constant(0.5), 1..=10), Err(Error::UndefinedExponent(_))));
        let partial = classify_growth(&Growth::NLogN, 1..=5).unwrap();
        assert_eq!(partial.skipped, vec![1]);
    }

    #[test]
    fn hwx_branches() {
        let dexp = hwx_dimension(1, &Growth::DoubleExponential { b: 2.0, c: 2.0 }, 100..=1000, 8, 4, 0.05).unwrap();
        assert_eq!(dexp.case, GrowthCase::Superexponential);
        assert!((dexp.value - 1.0 / 3.0).abs() < 1e-3);
        let sub = hwx_dimension(1, &Growth::NLogN, 100..=1000, 8, 4, 0.05).unwrap();
        assert_eq!(sub.case, GrowthCase::Subexponential);
        assert_eq!(sub.value, 1.0);
        let mid = hwx_dimension(1, &Growth::Exponential(2.0), 100..=1000, 8, 4, 0.05).unwrap();
        assert_eq!(mid.case, GrowthCase::Exponential);
        assert!(mid.value > 0.5 && mid.value < 1.0);
    }
}
