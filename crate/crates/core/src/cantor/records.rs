//! Line-oriented node records: `depth<TAB>digits<TAB>mass<TAB>diameter<TAB>lo<TAB>hi`.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::eb::EbTree;
use crate::contfrac::Word;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NodeRecord {
    pub depth: usize,
    pub digits: Word,
    pub mass: f64,
    pub diameter: f64,
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Display for NodeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{:e}\t{:e}\t{}\t{}",
            self.depth,
            self.digits,
            self.mass,
            self.diameter,
            crate::precision::fmt_rational(&self.lo),
            crate::precision::fmt_rational(&self.hi)
        )
    }
}

impl FromStr for NodeRecord {
    type Err = Error;
    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
        let [depth, digits, mass, diameter, lo, hi] = fields[..] else {
            return Err(Error::Parse(format!("expected 6 tab-separated fields, got {}", fields.len())));
        };
        let num = |s: &str, what: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{what} `{s}`: {e}")));
        let rat = |s: &str| Rational::from_str(s).map_err(|e| Error::Parse(format!("rational `{s}`: {e}")));
        let rec = NodeRecord {
            depth: depth.parse().map_err(|e| Error::Parse(format!("depth `{depth}`: {e}")))?,
            digits: digits.parse()?,
            mass: num(mass, "mass")?,
            diameter: num(diameter, "diameter")?,
            lo: rat(lo)?,
            hi: rat(hi)?,
        };
        if rec.digits.len() != rec.depth {
            return Err(Error::Parse(format!("depth {} does not match {} digits", rec.depth, rec.digits.len())));
        }
        Ok(rec)
    }
}

/// One record per node, level by level.
pub fn export_tree(tree: &EbTree) -> Vec<NodeRecord> {
    tree.levels
        .iter()
        .flatten()
        .map(|n| {
            let d = n.diameter();
            NodeRecord {
                depth: n.depth(),
                digits: n.word.clone(),
                mass: n.mass,
                diameter: d.to_f64(),
                lo: n.hull.0.clone(),
                hi: n.hull.1.clone(),
            }
        })
        .collect()
}

pub fn parse_records(text: &str) -> Result<Vec<NodeRecord>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
}

/// Exact diameters of the records grouped by depth, skipping depth 0.
pub fn covers_from_records(records: &[NodeRecord]) -> Vec<Vec<Rational>> {
    let max = records.iter().map(|r| r.depth).max().unwrap_or(0);
    let mut out = vec![Vec::new(); max];
    for r in records.iter().filter(|r| r.depth > 0) {
        out[r.depth - 1].push(Rational::from(&r.hi - &r.lo));
    }
    out
}
