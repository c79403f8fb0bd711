//! Miniature of the Cantor set `E_B` with prime blocks and its mass distribution.
//!
//! Digits come in rounds. Round j has `l_j N` free digits in `{1..M}`, then ℓ
//! prime digits: slot `i < ℓ-1` takes primes in `[α_i^{n_j}, 2α_i^{n_j}]`,
//! the last slot primes in `[γ^{n_j}, 2γ^{n_j}]` with `γ = B/(α_0⋯α_{ℓ-2})`.
//! Here `n_0 = -(ℓ-1)` and `n_j = n_{j-1} + ℓ + l_j N` is the position of the
//! first prime digit of round j.
//!
//! Free digits are grouped in N-blocks weighted by
//! `w(b) = 1 / (u B^{N f_ℓ(s)} q_N(b)^{2s})`, where u makes the weights sum to 1;
//! prime slots split mass uniformly.

use rug::{Integer, Rational};

use crate::contfrac::{continuants, FundamentalInterval, Word};
use crate::error::{invalid, Error, Result};
use crate::pressure::{dimensional_number, f_ell_unchecked, partition_sum, PressureProblem, DEFAULT_GUARD};
use crate::primes::PrimeSieve;

/// Rounds in the default schedule.
pub const SCHEDULE_LEN: usize = 6;

/// `l_1 = 1`, `l_{j+1} = 2 l_j + 1`.
pub fn default_schedule(len: usize) -> Vec<usize> {
    let mut l = Vec::with_capacity(len);
    let mut cur = 1usize;
    for _ in 0..len {
        l.push(cur);
        cur = 2 * cur + 1;
    }
    l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Satisfied,
    /// Not met at this scale and not enforced.
    Symbolic,
    Violated,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Satisfied => "satisfied",
            CheckStatus::Symbolic => "symbolic",
            CheckStatus::Violated => "violated",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaIdentity {
    pub name: String,
    pub rel_error: f64,
    pub holds: bool,
}

/// Search options for [`make_eb_params`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EbOptions {
    /// Free digits are at most M.
    pub alphabet: u64,
    /// Largest N tried.
    pub max_block: usize,
    /// Treat every unmet inequality as a failure instead of flagging it.
    pub enforce: bool,
    /// Enumeration guard for the pressure sums.
    pub guard: u64,
}

impl Default for EbOptions {
    fn default() -> Self {
        Self { alphabet: 3, max_block: 12, enforce: false, guard: DEFAULT_GUARD }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EBParams {
    pub base: f64,
    pub ell: u32,
    pub s: f64,
    pub delta: f64,
    pub alphabet: u64,
    pub block: usize,
    /// `log α_j` for `j = 0..ℓ-2`.
    pub log_alphas: Vec<f64>,
    /// `log γ` for the last prime slot.
    pub log_last: f64,
    /// Normaliser of the N-block weights.
    pub u: f64,
    /// `t_B(M, N)` for the chosen M, N.
    pub dimensional_number: f64,
    pub schedule: Vec<usize>,
    pub checks: Vec<InequalityCheck>,
    pub identities: Vec<AlphaIdentity>,
}

/// Position of a digit in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// `offset` is 1-based inside the free stretch of round `round`.
    Free { round: usize, offset: usize },
    Prime { round: usize, slot: usize },
}

/// `log α_j = B`-exponent times `log B`.
pub fn alpha_exponents(ell: u32, s: f64) -> Vec<f64> {
    let l = ell as i32;
    let den = s.powi(l) - (1.0 - s).powi(l);
    (0..ell.saturating_sub(1) as i32)
        .map(|j| s.powi(l - 1 - j) * (2.0 * s - 1.0) * (1.0 - s).powi(j) / den)
        .collect()
}

/// Relative errors of the three α identities.
pub fn alpha_identities(base: f64, ell: u32, s: f64) -> Vec<AlphaIdentity> {
    let lb = base.ln();
    let la: Vec<f64> = alpha_exponents(ell, s).iter().map(|e| e * lb).collect();
    let mut out = Vec::new();
    if ell < 2 {
        return out;
    }
    let tol = 1e-12;
    let rel = |lhs: f64, rhs: f64| (lhs - rhs).exp_m1().abs();
    for j in 0..ell.saturating_sub(2) as usize {
        let lhs = -la[..=j].iter().sum::<f64>();
        let rhs = -s * (la[0] + 2.0 * la[1..=j].iter().sum::<f64>() + la[j + 1]);
        let e = rel(lhs, rhs);
        out.push(AlphaIdentity { name: format!("product identity j={j}"), rel_error: e, holds: e <= tol });
    }
    let last = ell as usize - 2;
    let lhs = -la[..=last].iter().sum::<f64>();
    let rhs = -s * (lb + la[1..=last].iter().sum::<f64>());
    let e = rel(lhs, rhs);
    out.push(AlphaIdentity { name: "closing identity".into(), rel_error: e, holds: e <= tol });
    let lhs = lb + s * la[0];
    let rhs = 2.0 * s * lb;
    let gap = lhs - rhs;
    out.push(AlphaIdentity {
        name: "B alpha_0^s >= B^(2s)".into(),
        rel_error: if gap >= 0.0 { 0.0 } else { (-gap).exp_m1() },
        holds: gap >= -tol * rhs.abs(),
    });
    out
}

impl EBParams {
    pub fn alphas(&self) -> Vec<f64> {
        self.log_alphas.iter().map(|l| l.exp()).collect()
    }

    /// `n_j` for `j ≥ 0`.
    pub fn round_start(&self, j: usize) -> i64 {
        let mut n = -(self.ell as i64 - 1);
        for &l in self.schedule.iter().take(j) {
            n += self.ell as i64 + (l * self.block) as i64;
        }
        n
    }

    pub fn rounds(&self) -> usize {
        self.schedule.len()
    }

    /// 1-based digit position to slot.
    pub fn slot(&self, pos: usize) -> Result<Slot> {
        let pos = pos as i64;
        if pos < 1 {
            return invalid("positions start at 1");
        }
        for j in 1..=self.rounds() {
            let start = self.round_start(j - 1) + self.ell as i64;
            let nj = self.round_start(j);
            if pos < nj {
                return Ok(Slot::Free { round: j, offset: (pos - start + 1) as usize });
            }
            if pos < nj + self.ell as i64 {
                return Ok(Slot::Prime { round: j, slot: (pos - nj) as usize });
            }
        }
        Err(Error::OutOfRange { what: "digit position", value: pos.to_string(), limit: self.round_start(self.rounds()) as u64 })
    }

    /// `log` of the lower end of the prime range of `slot` in round `j`.
    pub fn log_prime_floor(&self, round: usize, slot: usize) -> f64 {
        let nj = self.round_start(round) as f64;
        let la = if slot + 1 < self.ell as usize { self.log_alphas[slot] } else { self.log_last };
        nj * la
    }

    pub fn prime_range(&self, round: usize, slot: usize) -> (f64, f64) {
        let x = self.log_prime_floor(round, slot).exp();
        (x, 2.0 * x)
    }

    /// `log B^{N f_ℓ(s)}`.
    fn log_block_penalty(&self) -> f64 {
        self.block as f64 * f_ell_unchecked(self.ell, self.s) * self.base.ln()
    }

    /// `w(b)` from `q_N(b)`.
    pub fn weight(&self, q: f64) -> f64 {
        (-(self.log_block_penalty() + self.u.ln() + 2.0 * self.s * q.ln())).exp()
    }

    /// `s(1-δ) - δ`.
    pub fn holder_exponent(&self) -> f64 {
        self.s * (1.0 - self.delta) - self.delta
    }
}

fn check(name: impl Into<String>, ok: bool, real: bool, detail: String) -> InequalityCheck {
    let status = match (ok, real) {
        (true, _) => CheckStatus::Satisfied,
        (false, true) => CheckStatus::Violated,
        (false, false) => CheckStatus::Symbolic,
    };
    InequalityCheck { name: name.into(), status, detail }
}

/// `#(P ∩ [γ^n, 2γ^n]) · n log γ / γ^n`.
fn prime_density_ratio(log_gamma: f64, n: u64, sieve: &PrimeSieve) -> Result<f64> {
    let x = (n as f64 * log_gamma).exp();
    let count = sieve.primes_in(x, 2.0 * x)?.len() as f64;
    Ok(count * n as f64 * log_gamma / x)
}

fn block_checks(p: &EBParams, sieve: &PrimeSieve) -> Result<Vec<InequalityCheck>> {
    let n = p.block as f64;
    let (s, d, ell) = (p.s, p.delta, p.ell as f64);
    // α_0 with α_0^s = B^{f_ℓ(s)}, which is also the ℓ = 1 convention
    let la0 = f_ell_unchecked(p.ell, s) * p.base.ln() / s;
    let mut out = vec![
        check("s < t_B(M,N)", s < p.dimensional_number, true, format!("t = {:.12}", p.dimensional_number)),
        check("N > e^20", n > 20f64.exp(), false, format!("N = {}", p.block)),
        check("N > 5/(s delta) + 1", n > 5.0 / (s * d) + 1.0, false, format!("rhs = {:.6}", 5.0 / (s * d) + 1.0)),
        check("N > 2 ell / delta", n > 2.0 * ell / d, false, format!("rhs = {:.6}", 2.0 * ell / d)),
        check(
            "N > 2 ell log 2 / (delta log alpha_0)",
            n > 2.0 * ell * 2f64.ln() / (d * la0),
            false,
            format!("rhs = {:.6}", 2.0 * ell * 2f64.ln() / (d * la0)),
        ),
    ];
    for (i, &la) in p.log_alphas.iter().enumerate() {
        let mut worst: f64 = 0.0;
        let mut checked = Vec::new();
        let mut m = p.block as u64;
        while 2.0 * (m as f64 * la).exp() <= sieve.limit() as f64 {
            worst = worst.max(prime_density_ratio(la, m, sieve)?);
            checked.push(m);
            m += 1;
        }
        let detail = match (checked.first(), checked.last()) {
            (Some(a), Some(b)) => format!("max c_n = {worst:.6} over n in [{a}, {b}]; larger n symbolic"),
            _ => "no n >= N inside the sieve".to_string(),
        };
        let name = format!("c_n(alpha_{i}) < 2 for n >= N");
        if checked.is_empty() {
            out.push(InequalityCheck { name, status: CheckStatus::Symbolic, detail });
        } else {
            out.push(check(name, worst < 2.0, true, detail));
        }
    }
    let mut log_prod_logs = 0.0;
    let mut log_prod = 0.0;
    for (i, &la) in p.log_alphas.iter().enumerate() {
        log_prod_logs += la.ln();
        log_prod += la;
        let lhs = ell * n.ln() + ell * 2f64.ln() + log_prod_logs - d * n * log_prod;
        out.push(check(format!("delta-N bound i={i}"), lhs < 0.0, false, format!("log lhs = {lhs:.6}")));
    }
    for slot in 0..p.ell as usize {
        let (lo, hi) = p.prime_range(1, slot);
        let name = format!("prime block round 1 slot {slot} non-empty");
        if hi > sieve.limit() as f64 {
            out.push(InequalityCheck { name, status: CheckStatus::Symbolic, detail: format!("[{lo:.3}, {hi:.3}] beyond sieve") });
        } else {
            let count = sieve.primes_in(lo, hi)?.len();
            out.push(check(name, count > 0, true, format!("{count} primes in [{lo:.3}, {hi:.3}]")));
        }
    }
    Ok(out)
}

/// Parameters of the miniature, with the smallest N in `1..=max_block`
/// passing every checkable inequality (every inequality when `enforce`).
pub fn make_eb_params(base: f64, ell: u32, s: f64, delta: f64, sieve: &PrimeSieve, opts: EbOptions) -> Result<EBParams> {
    if ell == 0 {
        return invalid("ell must be positive");
    }
    if !(base > 1.0 && base.is_finite()) {
        return invalid(format!("B must be a finite real > 1, got {base}"));
    }
    if !(delta > 0.0 && s < 1.0 && s - 2.0 * delta > 0.5) {
        return invalid(format!("need delta > 0 and 1/2 < s - 2 delta < s < 1, got s={s}, delta={delta}"));
    }
    let lb = base.ln();
    let log_alphas: Vec<f64> = alpha_exponents(ell, s).iter().map(|e| e * lb).collect();
    if log_alphas.iter().any(|&l| l <= 0.0) {
        return Err(Error::ConstructionInfeasible { inequality: "alpha_j > 1".into(), detail: format!("{log_alphas:?}") });
    }
    let log_last = lb - log_alphas.iter().sum::<f64>();
    let identities = alpha_identities(base, ell, s);
    let mut last_failure = None;
    for block in 1..=opts.max_block {
        let problem = PressureProblem::new(ell, base, opts.alphabet, block)?.with_guard(opts.guard);
        let t = match dimensional_number(&problem) {
            Ok(d) => d.value,
            Err(e @ Error::ResourceLimit { .. }) => {
                last_failure = Some((String::from("enumeration guard"), e.to_string()));
                break;
            }
            Err(e) => return Err(e),
        };
        let u = partition_sum(&problem, s)?.exp();
        let params = EBParams {
            base,
            ell,
            s,
            delta,
            alphabet: opts.alphabet,
            block,
            log_alphas: log_alphas.clone(),
            log_last,
            u,
            dimensional_number: t,
            schedule: default_schedule(SCHEDULE_LEN),
            checks: Vec::new(),
            identities: identities.clone(),
        };
        let checks = block_checks(&params, sieve)?;
        let failed = checks
            .iter()
            .find(|c| c.status == CheckStatus::Violated || (opts.enforce && c.status == CheckStatus::Symbolic));
        match failed {
            Some(c) => last_failure = Some((c.name.clone(), format!("N = {block}: {}", c.detail))),
            None => return Ok(EBParams { checks, ..params }),
        }
    }
    let (inequality, detail) = last_failure.unwrap_or_else(|| ("N".into(), "no block length tried".into()));
    Err(Error::ConstructionInfeasible { inequality, detail })
}

/// A node of the prefix tree: a word of `D_n` and its fundamental set.
#[derive(Debug, Clone, PartialEq)]
pub struct EbNode {
    pub word: Word,
    pub mass: f64,
    /// Index in the previous level.
    pub parent: Option<usize>,
    /// Index range in the next level.
    pub children: std::ops::Range<usize>,
    /// Closed hull of `J_n(word)`.
    pub hull: (Rational, Rational),
    /// `I_n(word)`, or `[0,1]` at the root.
    pub interval: (Rational, Rational),
    /// `q_n(word)`.
    pub q: Integer,
    // mass at the start of the current N-block and that block's continuants
    anchor: f64,
    block_state: (u128, u128, usize),
}

impl EbNode {
    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn diameter(&self) -> Rational {
        Rational::from(&self.hull.1 - &self.hull.0)
    }

    pub fn interval_length(&self) -> Rational {
        Rational::from(&self.interval.1 - &self.interval.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EbTree {
    pub params: EBParams,
    /// `levels[n]` holds the words of length n.
    pub levels: Vec<Vec<EbNode>>,
}

impl EbTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Children of a node.
    pub fn children(&self, depth: usize, index: usize) -> &[EbNode] {
        let r = self.levels[depth][index].children.clone();
        match self.levels.get(depth + 1) {
            Some(next) => &next[r],
            None => &[],
        }
    }
}

/// Allowed digits at a position: either `1..=M` or a sorted prime list.
enum Digits<'a> {
    Free(u64),
    Primes(&'a [u32]),
}

impl Digits<'_> {
    fn bounds(&self) -> (u64, u64) {
        match self {
            Digits::Free(m) => (1, *m),
            Digits::Primes(p) => (u64::from(p[0]), u64::from(*p.last().unwrap())),
        }
    }
}

fn digits_at<'a>(p: &EBParams, pos: usize, sieve: &'a PrimeSieve) -> Result<Digits<'a>> {
    Ok(match p.slot(pos)? {
        Slot::Free { .. } => Digits::Free(p.alphabet),
        Slot::Prime { round, slot } => {
            let (lo, hi) = p.prime_range(round, slot);
            if hi > sieve.limit() as f64 {
                return Err(Error::OutOfRange { what: "prime block", value: format!("{hi:e}"), limit: sieve.limit() });
            }
            let ps = sieve.primes_in(lo, hi)?;
            if ps.is_empty() {
                return Err(Error::ConstructionHole { block: round, slot, lo, hi });
            }
            Digits::Primes(ps)
        }
    })
}

/// `Σ_{c ∈ {1..M}^{left}} w(b c)` where `b` has continuants `(q_{r-1}, q_r)`.
fn completion(p: &EBParams, qp: u128, q: u128, left: usize) -> f64 {
    if left == 0 {
        return p.weight(q as f64);
    }
    (1..=p.alphabet as u128).map(|a| completion(p, q, a * q + qp, left - 1)).sum()
}

fn interval_of(word: &Word) -> ((Rational, Rational), Integer) {
    let c = continuants(word);
    if word.is_empty() {
        return ((Rational::from(0), Rational::from(1)), c.q);
    }
    let conv = c.convergent();
    let med = Rational::from((Integer::from(&c.p + &c.p_prev), Integer::from(&c.q + &c.q_prev)));
    let iv = if word.len().is_multiple_of(2) { (conv, med) } else { (med, conv) };
    (iv, c.q)
}

fn hull_of(word: &Word, next: &Digits<'_>) -> (Rational, Rational) {
    let (lo_d, hi_d) = next.bounds();
    let (a, _) = interval_of(&word.child(lo_d));
    let (b, _) = interval_of(&word.child(hi_d));
    (a.0.min(b.0), a.1.max(b.1))
}

/// All words of `D_n` for `n ≤ depth_limit`, with their masses and hulls.
pub fn eb_prefix_tree(params: &EBParams, depth_limit: usize, sieve: &PrimeSieve, guard: u64) -> Result<EbTree> {
    let n2 = params.round_start(2);
    if depth_limit as i64 > n2 {
        return invalid(format!("depth limit {depth_limit} exceeds the second prime block at {n2}"));
    }
    let root_word = Word::empty();
    let (interval, q) = interval_of(&root_word);
    let root = EbNode {
        hull: hull_of(&root_word, &digits_at(params, 1, sieve)?),
        word: root_word,
        mass: 1.0,
        parent: None,
        children: 0..0,
        interval,
        q,
        anchor: 1.0,
        block_state: (0, 1, 0),
    };
    let mut levels = vec![vec![root]];
    let mut total = 1usize;
    let n = params.block;
    for depth in 1..=depth_limit {
        let here = digits_at(params, depth, sieve)?;
        let next = digits_at(params, depth + 1, sieve)?;
        let digits: Vec<u64> = match &here {
            Digits::Free(m) => (1..=*m).collect(),
            Digits::Primes(ps) => ps.iter().map(|&p| u64::from(p)).collect(),
        };
        let prev = levels.last_mut().unwrap();
        let count = prev.len() * digits.len();
        total += count;
        if total as u64 > guard {
            return Err(Error::ResourceLimit { guard: "tree nodes", requested: total.to_string(), limit: guard });
        }
        let mut level = Vec::with_capacity(count);
        for (pi, parent) in prev.iter_mut().enumerate() {
            let start = level.len();
            for &d in &digits {
                let word = parent.word.child(d);
                let (mass, anchor, block_state) = match &here {
                    Digits::Free(_) => {
                        let (qp, q, r) = parent.block_state;
                        let (qp, q) = (q, d as u128 * q + qp);
                        if r + 1 == n {
                            let m = parent.anchor * params.weight(q as f64);
                            (m, m, (0, 1, 0))
                        } else {
                            (parent.anchor * completion(params, qp, q, n - r - 1), parent.anchor, (qp, q, r + 1))
                        }
                    }
                    Digits::Primes(ps) => {
                        let m = parent.mass / ps.len() as f64;
                        (m, m, (0, 1, 0))
                    }
                };
                let (interval, q) = interval_of(&word);
                level.push(EbNode {
                    hull: hull_of(&word, &next),
                    word,
                    mass,
                    parent: Some(pi),
                    children: 0..0,
                    interval,
                    q,
                    anchor,
                    block_state,
                });
            }
            parent.children = start..level.len();
        }
        levels.push(level);
    }
    Ok(EbTree { params: params.clone(), levels })
}

/// `(a, b)` with `a`, `b` the two fundamental intervals; zero if they touch or overlap.
pub fn interval_gap(a: &FundamentalInterval, b: &FundamentalInterval) -> Rational {
    let (left, right) = if a.lo <= b.lo { (a, b) } else { (b, a) };
    let g = Rational::from(&right.lo - &left.hi);
    if g < 0 {
        Rational::new()
    } else {
        g
    }
}
