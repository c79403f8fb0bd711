//! Measure, gap, diameter and Hölder checks on an enumerated `E_B` tree.

use rug::{Float, Rational};

use super::eb::{EbNode, EbTree};
use crate::precision::{hp, F64Sum};

fn ln_rational(r: &Rational) -> f64 {
    let f = Float::with_val(crate::precision::PREC, r);
    f.ln().to_f64()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityReport {
    /// Largest `|μ(node) - Σ μ(children)|` over internal nodes.
    pub max_error: f64,
    /// `|Σ μ - 1|` over the nodes ending the first free stretch.
    pub root_mass_error: f64,
    pub internal_nodes: usize,
}

pub fn additivity_check(tree: &EbTree) -> AdditivityReport {
    let mut max_error: f64 = 0.0;
    let mut internal = 0;
    for depth in 0..tree.depth() {
        for (i, node) in tree.levels[depth].iter().enumerate() {
            let kids: F64Sum = tree.children(depth, i).iter().map(|c| c.mass).collect();
            max_error = max_error.max((node.mass - kids.value()).abs());
            internal += 1;
        }
    }
    let n = (tree.params.round_start(1) - 1).max(0) as usize;
    let root_mass_error = match tree.levels.get(n) {
        Some(level) => (level.iter().map(|x| x.mass).collect::<F64Sum>().value() - 1.0).abs(),
        None => f64::NAN,
    };
    AdditivityReport { max_error, root_mass_error, internal_nodes: internal }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderReport {
    /// `s(1-δ) - δ`.
    pub exponent: f64,
    /// `(depth, max μ(J)/diam(J)^exponent)`.
    pub per_depth: Vec<(usize, f64)>,
    /// Running maximum over depths `1..=d`.
    pub cumulative: Vec<(usize, f64)>,
}

impl HolderReport {
    pub fn max_ratio(&self) -> f64 {
        self.cumulative.last().map_or(0.0, |c| c.1)
    }

    /// Ratio of the running maxima at the two deepest levels.
    pub fn last_step_growth(&self) -> Option<f64> {
        let n = self.cumulative.len();
        (n >= 2).then(|| self.cumulative[n - 1].1 / self.cumulative[n - 2].1)
    }
}

pub fn holder_check(tree: &EbTree) -> HolderReport {
    let exponent = tree.params.holder_exponent();
    let mut per_depth = Vec::new();
    let mut cumulative = Vec::new();
    let mut running: f64 = 0.0;
    for depth in 1..=tree.depth() {
        let worst = tree.levels[depth]
            .iter()
            .map(|n| (n.mass.ln() - exponent * ln_rational(&n.diameter())).exp())
            .fold(0.0f64, f64::max);
        running = running.max(worst);
        per_depth.push((depth, worst));
        cumulative.push((depth, running));
    }
    HolderReport { exponent, per_depth, cumulative }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// Smallest `G_n(a) / (diam I_n(a) / 8M)` over checked nodes.
    pub min_normalized: f64,
    pub failures: usize,
    pub checked: usize,
    /// Levels with a single node, where the check is vacuous.
    pub vacuous_levels: Vec<usize>,
}

impl GapReport {
    pub fn passes(&self) -> bool {
        self.failures == 0
    }
}

/// Gaps between neighbouring fundamental sets at each level, computed exactly.
pub fn gap_check(tree: &EbTree) -> GapReport {
    let eight_m = Rational::from(8 * tree.params.alphabet);
    let mut report = GapReport { min_normalized: f64::INFINITY, failures: 0, checked: 0, vacuous_levels: Vec::new() };
    for (depth, level) in tree.levels.iter().enumerate().skip(1) {
        if level.len() < 2 {
            report.vacuous_levels.push(depth);
            continue;
        }
        let mut order: Vec<&EbNode> = level.iter().collect();
        order.sort_by(|a, b| a.hull.0.cmp(&b.hull.0));
        let gaps: Vec<Rational> = order.windows(2).map(|w| Rational::from(&w[1].hull.0 - &w[0].hull.1)).collect();
        for (i, node) in order.iter().enumerate() {
            let left = (i > 0).then(|| &gaps[i - 1]);
            let right = gaps.get(i);
            let g = match (left, right) {
                (Some(a), Some(b)) => a.clone().min(b.clone()),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            let normalized = Rational::from(&g * &eight_m) / node.interval_length();
            report.checked += 1;
            if normalized < 1 {
                report.failures += 1;
            }
            report.min_normalized = report.min_normalized.min(normalized.to_f64());
        }
    }
    report
}

/// Which diameter estimate applies to a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterCase {
    /// Inside a free stretch: `1/q_n²`.
    Free,
    /// Last free digit before a prime block.
    BeforePrimes,
    /// Inside a prime block, before its last two slots.
    InsidePrimes(usize),
    /// Second-to-last prime slot.
    LastPrimes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    /// Smallest and largest `diam / estimate`.
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub checked: usize,
    pub band: (f64, f64),
}

impl DiameterReport {
    pub fn within_band(&self) -> bool {
        self.min_ratio >= self.band.0 && self.max_ratio <= self.band.1
    }
}

/// Case and `log` of the estimate for `J_n(a)`.
pub fn diameter_estimate(tree: &EbTree, node: &EbNode) -> (DiameterCase, f64) {
    let p = &tree.params;
    let ell = p.ell as i64;
    let n = node.depth() as i64;
    let mut k = 0;
    while n >= p.round_start(k + 1) + ell - 1 {
        k += 1;
    }
    let next = p.round_start(k + 1);
    let ln_q = |len: i64| -> f64 {
        let w = node.word.prefix(len as usize);
        ln_rational(&Rational::from(crate::contfrac::denominator(&w)))
    };
    let nf = next as f64;
    if n < next - 1 {
        (DiameterCase::Free, -2.0 * ln_q(n))
    } else if n == next - 1 && ell >= 2 {
        (DiameterCase::BeforePrimes, -nf * p.log_alphas[0] - 2.0 * ln_q(next - 1))
    } else if n <= next + ell - 3 {
        let j = (n - next) as usize;
        let la = &p.log_alphas;
        let v = -nf * la[j + 1] - 2.0 * nf * la[..=j].iter().sum::<f64>() - 2.0 * ln_q(next - 1);
        (DiameterCase::InsidePrimes(j), v)
    } else {
        let v = -nf * (p.base.ln() + p.log_alphas.iter().sum::<f64>()) - 2.0 * ln_q(next - 1);
        (DiameterCase::LastPrimes, v)
    }
}

pub fn diameter_check(tree: &EbTree, band: (f64, f64)) -> DiameterReport {
    let mut r = DiameterReport { min_ratio: f64::INFINITY, max_ratio: 0.0, checked: 0, band };
    for level in tree.levels.iter().skip(1) {
        for node in level {
            let (_, est) = diameter_estimate(tree, node);
            let ratio = (ln_rational(&node.diameter()) - est).exp();
            r.min_ratio = r.min_ratio.min(ratio);
            r.max_ratio = r.max_ratio.max(ratio);
            r.checked += 1;
        }
    }
    r
}

/// Exact total mass of a level rounded to 128 bits.
pub fn level_mass(tree: &EbTree, depth: usize) -> Float {
    let mut acc = crate::precision::CompensatedSum::new();
    for n in &tree.levels[depth] {
        acc.add(&hp(n.mass));
    }
    acc.value()
}
