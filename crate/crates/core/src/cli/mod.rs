//! Command-line front end: one subcommand per experiment, CSV or JSON on stdout.

mod output;

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::cantor::eb::{eb_prefix_tree, make_eb_params, EbOptions};
use crate::cantor::{self, box_dimension_estimate, LuczakParams};
use crate::contfrac::{self, Enclosure, Word};
use crate::error::{Error, Result};
use crate::growth::Growth;
use crate::measure::{self, MCExperiment, SeriesKind};
use crate::precision::{fmt_rational, fmt_sig};
use crate::pressure::{self, PressureProblem};
use crate::primes::{OmegaMode, PrimeSieve};
use crate::zeta;

pub use output::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "primecf", version, about = "Prime partial quotients: zeta tails, interval measures, pressure roots, Cantor sets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Primes are sieved up to this bound.
    #[arg(long, global = true, env = "PRIMECF_SIEVE_LIMIT", default_value = "1e7", value_parser = parse_count)]
    pub sieve_limit: u64,
    /// Cap on enumerated words or nodes.
    #[arg(long, global = true, default_value = "1e7", value_parser = parse_count)]
    pub guard: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tail of the almost-prime zeta function with a remainder bound.
    PzetaTail(PzetaTail),
    /// Tails over a grid of M, normalised by the predicted order.
    PzetaAsymptotic(PzetaAsymptotic),
    /// Continued-fraction digits of a rational, or certified digits of a truncated real.
    CfExpand(CfExpand),
    /// Fundamental intervals, unions of sibling intervals, and prime level-set measures.
    IntervalMeasure(IntervalMeasure),
    /// Root of the finite pressure equation.
    PressureDim(PressureDim),
    /// Dimension for a growth function via its exponential rates.
    HwxDim(HwxDim),
    /// Monte Carlo hit fractions for a finite window.
    McZeroOne(McZeroOne),
    /// Partial sums of the criterion series.
    BbSeries(BbSeries),
    /// Level data and lower-bound ratios for doubly exponential growth.
    LuczakDim(LuczakDim),
    /// Build a miniature Cantor set with prime blocks and check its measure.
    EbBuild(EbBuild),
    /// Box-counting slope of a cover sequence.
    BoxDim(BoxDim),
}

#[derive(Debug, Args)]
pub struct PzetaTail {
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long)]
    s: f64,
    #[arg(long, value_parser = parse_count)]
    m: u64,
    /// Terms k ≤ cutoff are summed; defaults to the sieve limit.
    #[arg(long, value_parser = parse_count)]
    cutoff: Option<u64>,
    #[arg(long, default_value = "exactly", value_parser = parse_mode)]
    mode: OmegaMode,
    /// Also report the Möbius-inversion value of the full series (ell = 1).
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
pub struct PzetaAsymptotic {
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long)]
    s: f64,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    grid: Vec<u64>,
    #[arg(long, value_parser = parse_count)]
    cutoff: Option<u64>,
    #[arg(long, default_value = "exactly", value_parser = parse_mode)]
    mode: OmegaMode,
}

#[derive(Debug, Args)]
pub struct CfExpand {
    /// `num/den` in [0,1).
    #[arg(long, conflicts_with = "real")]
    rational: Option<String>,
    /// Decimal in (0,1), truncated to `--bits` binary digits before expansion.
    #[arg(long, requires = "bits")]
    real: Option<String>,
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long, default_value_t = 256)]
    max_len: usize,
}

#[derive(Debug, Args)]
pub struct IntervalMeasure {
    /// Word such as `[3,7]`.
    #[arg(long)]
    word: Option<String>,
    /// With `--to`: union of the children with digits from..=to.
    #[arg(long, requires = "to", requires = "word")]
    from: Option<u64>,
    #[arg(long)]
    to: Option<u64>,
    /// Level-set mode: bracket the measure of products of ell prime digits ≥ threshold.
    #[arg(long, conflicts_with = "word")]
    threshold: Option<f64>,
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long, value_parser = parse_count)]
    cutoff: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PressureDim {
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
pub struct HwxDim {
    #[arg(long, default_value_t = 1)]
    ell: u32,
    /// `const:C`, `pow:A`, `exp:B`, `dexp:b,c`, `nlogn`, `nlog2n`, `nlognloglogn`.
    #[arg(long)]
    phi: Growth,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, default_value = "100,1000")]
    window: Vec<u64>,
    #[arg(long, default_value_t = 20)]
    m: u64,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
}

#[derive(Debug, Args)]
pub struct McZeroOne {
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long)]
    phi: Growth,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    window: Vec<u64>,
    #[arg(long, value_parser = parse_count, default_value = "1e4")]
    samples: u64,
    #[arg(long, default_value_t = 1024)]
    bits: u32,
    #[arg(long, default_value_t = 4)]
    retries: u32,
    /// One row per n instead of the summary.
    #[arg(long)]
    per_n: bool,
    /// Also report the union bound Σ leb(B_n) with factors up to this cutoff (ell ≤ 2).
    #[arg(long, value_parser = parse_count)]
    union_cutoff: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BbSeries {
    #[arg(long)]
    phi: Growth,
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[arg(long, default_value = "plain")]
    series: SeriesKind,
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required = true)]
    window: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct LuczakDim {
    #[arg(long)]
    b: f64,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 20)]
    kmax: u32,
    #[arg(long, default_value_t = 1)]
    ell: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EbEmit {
    Summary,
    Checks,
    Nodes,
}

#[derive(Debug, Args)]
pub struct EbBuild {
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 2)]
    ell: u32,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 3)]
    m: u64,
    #[arg(long, default_value_t = 12)]
    max_block: usize,
    /// Tree depth; defaults to the end of the first prime block.
    #[arg(long)]
    depth: Option<usize>,
    /// Fail on inequalities that are only flagged at this scale.
    #[arg(long)]
    enforce: bool,
    #[arg(long, value_enum, default_value_t = EbEmit::Summary)]
    emit: EbEmit,
    /// Also write node records to this file.
    #[arg(long)]
    records_out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverSource {
    /// Middle-half Cantor set.
    Toy,
    /// Prime-digit levels for c^(b^n).
    Luczak,
    /// Node records written by `eb-build --records-out`.
    Records,
}

#[derive(Debug, Args)]
pub struct BoxDim {
    #[arg(long, value_enum)]
    source: CoverSource,
    #[arg(long, default_value_t = 4)]
    levels: u32,
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    #[arg(long, default_value_t = 1.1)]
    c: f64,
    #[arg(long, required_if_eq("source", "records"))]
    file: Option<std::path::PathBuf>,
}

/// Integers written plainly or in exponent form (`1e7`).
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.trim().parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if f.fract() != 0.0 || !(0.0..=u64::MAX as f64).contains(&f) {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    Ok(f as u64)
}

fn parse_mode(s: &str) -> std::result::Result<OmegaMode, String> {
    OmegaMode::from_str(s).map_err(|e| e.to_string())
}

fn window(v: &[u64]) -> Result<std::ops::RangeInclusive<u64>> {
    match v {
        [a, b] => Ok(*a..=*b),
        [a] => Ok(*a..=*a),
        _ => Err(Error::InvalidArgument(format!("window needs `n1,n2`, got {} values", v.len()))),
    }
}

fn big(x: &rug::Float) -> Cell {
    Cell::Text(fmt_sig(x, 20))
}

fn rat(r: &Rational) -> Cell {
    Cell::Text(fmt_rational(r))
}

impl Cli {
    /// Run the command and write its table to `out`.
    pub fn run(&self, out: &mut dyn Write) -> Result<()> {
        let table = self.table()?;
        table.write(self.global.format, out).map_err(|e| Error::InvalidArgument(format!("output: {e}")))
    }

    fn sieve(&self) -> Result<PrimeSieve> {
        PrimeSieve::new(self.global.sieve_limit)
    }

    fn table(&self) -> Result<Table> {
        let g = &self.global;
        let globals = vec![
            ("seed", Cell::Int(g.seed as i128)),
            ("sieve_limit", Cell::Int(g.sieve_limit as i128)),
            ("guard", Cell::Int(g.guard as i128)),
        ];
        let mut t = match &self.command {
            Command::PzetaTail(a) => self.pzeta_tail(a)?,
            Command::PzetaAsymptotic(a) => self.pzeta_asymptotic(a)?,
            Command::CfExpand(a) => cf_expand(a)?,
            Command::IntervalMeasure(a) => self.interval_measure(a)?,
            Command::PressureDim(a) => self.pressure_dim(a)?,
            Command::HwxDim(a) => self.hwx_dim(a)?,
            Command::McZeroOne(a) => self.mc_zero_one(a)?,
            Command::BbSeries(a) => bb_series(a)?,
            Command::LuczakDim(a) => self.luczak_dim(a)?,
            Command::EbBuild(a) => self.eb_build(a)?,
            Command::BoxDim(a) => self.box_dim(a)?,
        };
        t.inputs.extend(globals.into_iter().map(|(k, v)| (k.to_string(), v)));
        Ok(t)
    }

    fn pzeta_tail(&self, a: &PzetaTail) -> Result<Table> {
        let sieve = self.sieve()?;
        let cutoff = a.cutoff.unwrap_or(self.global.sieve_limit);
        let r = zeta::pzeta_tail(a.ell, a.mode, a.s, a.m, cutoff, &sieve)?;
        let oracle = if a.oracle && a.ell == 1 && a.m <= 2 {
            Cell::Text(fmt_sig(&zeta::pzeta_via_mobius(a.s, 64)?, 20))
        } else {
            Cell::Null
        };
        let mut t = Table::new("pzeta-tail", &["value", "remainder_bound", "upper", "terms_used", "mobius_value"]);
        t.input("ell", Cell::Int(a.ell.into()))
            .input("s", Cell::Real(a.s))
            .input("m", Cell::Int(a.m.into()))
            .input("cutoff", Cell::Int(cutoff.into()))
            .input("mode", Cell::Text(a.mode.to_string()));
        t.row(vec![big(&r.value), big(&r.remainder_bound), big(&r.upper()), Cell::Int(r.terms_used.into()), oracle]);
        Ok(t)
    }

    fn pzeta_asymptotic(&self, a: &PzetaAsymptotic) -> Result<Table> {
        let sieve = self.sieve()?;
        let cutoff = a.cutoff.unwrap_or(self.global.sieve_limit);
        let rows = zeta::asymptotic_table(a.ell, a.mode, a.s, &a.grid, cutoff, &sieve)?;
        let mut t = Table::new("pzeta-asymptotic", &["m", "tail", "remainder_bound", "ratio"]);
        t.input("ell", Cell::Int(a.ell.into()))
            .input("s", Cell::Real(a.s))
            .input("grid", Cell::Text(a.grid.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .input("cutoff", Cell::Int(cutoff.into()))
            .input("mode", Cell::Text(a.mode.to_string()));
        for r in rows {
            t.row(vec![Cell::Int(r.m.into()), big(&r.tail.value), big(&r.tail.remainder_bound), big(&r.ratio)]);
        }
        Ok(t)
    }

    fn interval_measure(&self, a: &IntervalMeasure) -> Result<Table> {
        let mut t = Table::new("interval-measure", &["mode", "lower", "upper", "length", "tuples", "below_three"]);
        let opt_int = |v: Option<u64>| v.map_or(Cell::Null, |x| Cell::Int(x.into()));
        if let Some(threshold) = a.threshold {
            let sieve = self.sieve()?;
            let cutoff = a.cutoff.unwrap_or(self.global.sieve_limit.min(1_000_000));
            let m = measure::level_set_measure(a.ell, threshold, cutoff, &sieve)?;
            t.input("ell", Cell::Int(a.ell.into()))
                .input("threshold", Cell::Real(threshold))
                .input("cutoff", Cell::Int(cutoff.into()))
                .input("word", Cell::Null)
                .input("from", Cell::Null)
                .input("to", Cell::Null);
            t.row(vec![
                Cell::Text("level-set".into()),
                big(&m.exact_lower),
                big(&m.exact_upper),
                big(&m.width()),
                Cell::Int(m.tuples.into()),
                Cell::Bool(m.below_three),
            ]);
            return Ok(t);
        }
        let word: Word = a
            .word
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("give --word, or --threshold for level-set mode".into()))?
            .parse()?;
        t.input("ell", Cell::Null)
            .input("threshold", Cell::Null)
            .input("cutoff", Cell::Null)
            .input("word", Cell::Text(word.to_string()))
            .input("from", opt_int(a.from))
            .input("to", opt_int(a.to));
        match (a.from, a.to) {
            (Some(lo), Some(hi)) => {
                let u = contfrac::union_measure(&word, lo, hi)?;
                let count = hi.checked_sub(lo).map_or(0, |d| d + 1);
                t.row(vec![Cell::Text("union".into()), Cell::Null, Cell::Null, rat(&u), Cell::Int(count.into()), Cell::Null]);
            }
            _ => {
                let iv = contfrac::fundamental_interval(&word)?;
                t.row(vec![Cell::Text("interval".into()), rat(&iv.lo), rat(&iv.hi), rat(&iv.length()), Cell::Int(1), Cell::Null]);
            }
        }
        Ok(t)
    }

    fn pressure_dim(&self, a: &PressureDim) -> Result<Table> {
        let p = PressureProblem::new(a.ell, a.b, a.m, a.n)?.with_guard(self.global.guard);
        let plan = p.plan()?;
        let d = pressure::dimensional_number(&p)?;
        let mut t = Table::new("pressure-dim", &["plan", "t", "lo", "hi", "iterations"]);
        t.input("ell", Cell::Int(a.ell.into()))
            .input("b", Cell::Real(a.b))
            .input("m", Cell::Int(a.m.into()))
            .input("n", Cell::Int(a.n as i128));
        let plan = match plan {
            pressure::Plan::Direct => "direct".to_string(),
            pressure::Plan::Split { prefix, suffix } => format!("split:{prefix}+{suffix}"),
        };
        t.row(vec![Cell::Text(plan), Cell::Real(d.value), Cell::Real(d.lo), Cell::Real(d.hi), Cell::Int(d.iterations.into())]);
        Ok(t)
    }

    fn hwx_dim(&self, a: &HwxDim) -> Result<Table> {
        let w = window(&a.window)?;
        let r = pressure::hwx_dimension(a.ell, &a.phi, w.clone(), a.m, a.n, a.tol)?;
        let mut t = Table::new("hwx-dim", &["case", "dimension", "log_big_b", "log_small_b", "skipped"]);
        t.input("ell", Cell::Int(a.ell.into()))
            .input("phi", Cell::Text(a.phi.to_string()))
            .input("window", Cell::Text(format!("{},{}", w.start(), w.end())))
            .input("m", Cell::Int(a.m.into()))
            .input("n", Cell::Int(a.n as i128))
            .input("tol", Cell::Real(a.tol));
        t.row(vec![
            Cell::Text(r.case.to_string()),
            Cell::Real(r.value),
            Cell::Real(r.exponents.log_big_b),
            Cell::Real(r.exponents.log_small_b),
            Cell::Int(r.exponents.skipped.len() as i128),
        ]);
        Ok(t)
    }

    fn mc_zero_one(&self, a: &McZeroOne) -> Result<Table> {
        let sieve = self.sieve()?;
        let w = window(&a.window)?;
        let mut cfg = MCExperiment::new(a.samples as usize, w.clone(), a.phi, a.ell, self.global.seed);
        cfg.precision_bits = a.bits;
        cfg.retry_limit = a.retries;
        let r = measure::run_zero_one_experiment(&cfg, &sieve)?;
        let cols: &[&'static str] = if a.per_n { &["n", "hits"] } else { &["samples", "hits", "fraction", "sigma", "refined", "union_bound"] };
        let mut t = Table::new("mc-zero-one", cols);
        t.input("ell", Cell::Int(a.ell.into()))
            .input("phi", Cell::Text(a.phi.to_string()))
            .input("window", Cell::Text(format!("{},{}", w.start(), w.end())))
            .input("bits", Cell::Int(a.bits.into()))
            .input("retries", Cell::Int(a.retries.into()))
            .input("per_n", Cell::Bool(a.per_n));
        if a.per_n {
            for (n, h) in &r.per_n {
                t.row(vec![Cell::Int((*n).into()), Cell::Int((*h).into())]);
            }
        } else {
            let ub = match a.union_cutoff {
                Some(k) => big(&measure::window_union_bound(a.ell, &a.phi, w, k, &sieve)?),
                None => Cell::Null,
            };
            t.row(vec![
                Cell::Int(r.samples as i128),
                Cell::Int(r.hits as i128),
                Cell::Real(r.fraction),
                Cell::Real(r.sigma),
                Cell::Int(r.refined as i128),
                ub,
            ]);
        }
        Ok(t)
    }

    fn luczak_dim(&self, a: &LuczakDim) -> Result<Table> {
        let sieve = self.sieve()?;
        let p = LuczakParams::new(a.b, a.c, a.ell)?;
        let levels = cantor::luczak_levels(&p, a.kmax, &sieve)?;
        let ratios = cantor::falconer_lower_bound(&p, a.kmax)?;
        let b = Rational::from_f64(a.b).ok_or_else(|| Error::InvalidArgument("b is not finite".into()))?;
        let limit = cantor::falconer_limit(&b)?;
        let mut t = Table::new(
            "luczak-dim",
            &["k", "log_m", "log_eps", "ratio", "prime_count", "rosser_applicable", "limit", "limit_exact"],
        );
        t.input("b", Cell::Real(a.b)).input("c", Cell::Real(a.c)).input("kmax", Cell::Int(a.kmax.into())).input("ell", Cell::Int(a.ell.into()));
        for lv in &levels {
            let ratio = ratios.iter().find(|r| r.0 == lv.k).map_or(Cell::Null, |r| Cell::Real(r.1));
            t.row(vec![
                Cell::Int(lv.k.into()),
                Cell::Real(lv.log_m),
                Cell::Real(lv.log_eps),
                ratio,
                lv.prime_count.map_or(Cell::Null, |c| Cell::Int(c.into())),
                Cell::Bool(lv.rosser_applicable),
                Cell::Real(limit.to_f64()),
                rat(&limit),
            ]);
        }
        Ok(t)
    }

    fn eb_build(&self, a: &EbBuild) -> Result<Table> {
        let sieve = self.sieve()?;
        let opts = EbOptions { alphabet: a.m, max_block: a.max_block, enforce: a.enforce, guard: self.global.guard };
        let p = make_eb_params(a.b, a.ell, a.s, a.delta, &sieve, opts)?;
        let depth = a.depth.unwrap_or((p.round_start(1) + a.ell as i64 - 1) as usize);
        let inputs = |t: &mut Table| {
            t.input("b", Cell::Real(a.b))
                .input("ell", Cell::Int(a.ell.into()))
                .input("s", Cell::Real(a.s))
                .input("delta", Cell::Real(a.delta))
                .input("m", Cell::Int(a.m.into()))
                .input("max_block", Cell::Int(a.max_block as i128))
                .input("depth", Cell::Int(depth as i128))
                .input("enforce", Cell::Bool(a.enforce));
        };
        if a.emit == EbEmit::Checks {
            let mut t = Table::new("eb-build-checks", &["name", "status", "detail"]);
            inputs(&mut t);
            for c in &p.checks {
                t.row(vec![Cell::Text(c.name.clone()), Cell::Text(c.status.to_string()), Cell::Text(c.detail.clone())]);
            }
            for id in &p.identities {
                let status = if id.holds { "satisfied" } else { "violated" };
                t.row(vec![Cell::Text(id.name.clone()), Cell::Text(status.into()), Cell::Text(format!("relative error {:e}", id.rel_error))]);
            }
            return Ok(t);
        }
        let tree = eb_prefix_tree(&p, depth, &sieve, self.global.guard)?;
        let records = cantor::records::export_tree(&tree);
        if let Some(path) = &a.records_out {
            let text: String = records.iter().map(|r| format!("{r}\n")).collect();
            std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        }
        if a.emit == EbEmit::Nodes {
            let mut t = Table::new("eb-build-nodes", &["depth", "digits", "mass", "diameter", "lo", "hi"]);
            inputs(&mut t);
            for r in &records {
                t.row(vec![
                    Cell::Int(r.depth as i128),
                    Cell::Text(r.digits.to_string()),
                    Cell::Real(r.mass),
                    Cell::Real(r.diameter),
                    rat(&r.lo),
                    rat(&r.hi),
                ]);
            }
            return Ok(t);
        }
        let add = cantor::additivity_check(&tree);
        let gap = cantor::gap_check(&tree);
        let holder = cantor::holder_check(&tree);
        let diam = cantor::diameter_check(&tree, (1.0 / 64.0, 64.0));
        let mut t = Table::new(
            "eb-build",
            &[
                "block", "t", "u", "n1", "nodes", "additivity_error", "root_mass_error", "gap_min", "gap_failures",
                "holder_exponent", "holder_max", "holder_growth", "diameter_min", "diameter_max", "symbolic_checks",
            ],
        );
        inputs(&mut t);
        let symbolic = p.checks.iter().filter(|c| c.status == cantor::eb::CheckStatus::Symbolic).count();
        t.row(vec![
            Cell::Int(p.block as i128),
            Cell::Real(p.dimensional_number),
            Cell::Real(p.u),
            Cell::Int(p.round_start(1).into()),
            Cell::Int(tree.node_count() as i128),
            Cell::Real(add.max_error),
            Cell::Real(add.root_mass_error),
            Cell::Real(gap.min_normalized),
            Cell::Int(gap.failures as i128),
            Cell::Real(holder.exponent),
            Cell::Real(holder.max_ratio()),
            holder.last_step_growth().map_or(Cell::Null, Cell::Real),
            Cell::Real(diam.min_ratio),
            Cell::Real(diam.max_ratio),
            Cell::Int(symbolic as i128),
        ]);
        Ok(t)
    }

    fn box_dim(&self, a: &BoxDim) -> Result<Table> {
        let covers = match a.source {
            CoverSource::Toy => cantor::boxdim::middle_half_cover(a.levels),
            CoverSource::Luczak => {
                let sieve = self.sieve()?;
                cantor::luczak_cover(&LuczakParams::new(a.b, a.c, 1)?, a.levels, &sieve, self.global.guard)?
            }
            CoverSource::Records => {
                let path = a.file.as_ref().ok_or_else(|| Error::InvalidArgument("--file is required".into()))?;
                let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                cantor::records::covers_from_records(&cantor::records::parse_records(&text)?)
            }
        };
        let est = box_dimension_estimate(&covers)?;
        let mut t = Table::new("box-dim", &["slope", "intercept", "residual", "fitted_levels"]);
        t.input("source", Cell::Text(format!("{:?}", a.source).to_lowercase()))
            .input("levels", Cell::Int(a.levels.into()))
            .input("b", Cell::Real(a.b))
            .input("c", Cell::Real(a.c))
            .input("file", a.file.as_ref().map_or(Cell::Null, |p| Cell::Text(p.display().to_string())));
        t.row(vec![Cell::Real(est.slope), Cell::Real(est.intercept), Cell::Real(est.residual), Cell::Int(est.levels as i128)]);
        Ok(t)
    }
}

fn cf_expand(a: &CfExpand) -> Result<Table> {
    let mut t = Table::new("cf-expand", &["digits", "certified_len", "convergent"]);
    let word = match (&a.rational, &a.real) {
        (Some(r), None) => {
            let x = Rational::from_str(r.trim()).map_err(|e| Error::Parse(format!("rational `{r}`: {e}")))?;
            t.input("rational", Cell::Text(fmt_rational(&x))).input("real", Cell::Null).input("bits", Cell::Null);
            contfrac::expand_rational(x.numer(), x.denom(), a.max_len)?
        }
        (None, Some(r)) => {
            let bits = a.bits.ok_or_else(|| Error::InvalidArgument("--real needs --bits".into()))?;
            let x = parse_decimal(r)?;
            t.input("rational", Cell::Null).input("real", Cell::Text(r.clone())).input("bits", Cell::Int(bits.into()));
            contfrac::expand_real(&Enclosure::truncate(&x, bits), a.max_len)
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --rational or --real".into())),
    };
    t.input("max_len", Cell::Int(a.max_len as i128));
    let conv = if word.is_empty() { Rational::new() } else { contfrac::continuants(&word).convergent() };
    t.row(vec![Cell::Text(word.to_string()), Cell::Int(word.len() as i128), rat(&conv)]);
    Ok(t)
}

/// Exact value of a plain decimal such as `0.314159`.
fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("`{s}` is not a plain decimal")));
    }
    let num = Integer::from_str(&digits).map_err(|e| Error::Parse(e.to_string()))?;
    let den = Integer::from(10).pow(frac.len() as u32);
    Ok(Rational::from((num, den)))
}

fn bb_series(a: &BbSeries) -> Result<Table> {
    let w = window(&a.window)?;
    let rows = measure::borel_bernstein_table(&a.phi, a.ell, a.series, w.clone())?;
    let mut t = Table::new("bb-series", &["n", "term", "partial_sum", "note"]);
    t.input("phi", Cell::Text(a.phi.to_string()))
        .input("ell", Cell::Int(a.ell.into()))
        .input("series", Cell::Text(a.series.to_string()))
        .input("window", Cell::Text(format!("{},{}", w.start(), w.end())));
    for r in rows {
        t.row(vec![
            Cell::Int(r.n.into()),
            r.term.map_or(Cell::Null, Cell::Real),
            Cell::Real(r.partial_sum),
            r.note.map_or(Cell::Null, Cell::Text),
        ]);
    }
    Ok(t)
}
