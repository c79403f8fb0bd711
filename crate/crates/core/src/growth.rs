//! Growth functions φ: ℕ → ℝ₊ used as thresholds for partial quotients.
//!
//! They are evaluated in the log domain so that doubly exponential families
//! such as `c^{b^n}` stay finite: `ln φ(n)` may overflow to `+inf`, but
//! `ln ln φ(n)` is computed analytically where possible.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// φ(n) = c.
    Constant(f64),
    /// φ(n) = n^a.
    Power(f64),
    /// φ(n) = B^n.
    Exponential(f64),
    /// φ(n) = c^{b^n}.
    DoubleExponential { b: f64, c: f64 },
    /// φ(n) = n log n.
    NLogN,
    /// φ(n) = n (log n)^2.
    NLogSquared,
    /// φ(n) = n log n log log n.
    NLogNLogLogN,
}

impl Growth {
    /// `ln φ(n)`; `-inf` where φ(n) = 0 and possibly `+inf` on overflow.
    pub fn ln_value(&self, n: u64) -> f64 {
        let x = n as f64;
        match *self {
            Growth::Constant(c) => c.ln(),
            Growth::Power(a) => a * x.ln(),
            Growth::Exponential(b) => x * b.ln(),
            Growth::DoubleExponential { b, c } => (x * b.ln()).exp() * c.ln(),
            Growth::NLogN => x.ln() + x.ln().ln(),
            Growth::NLogSquared => x.ln() + 2.0 * x.ln().ln(),
            Growth::NLogNLogLogN => x.ln() + x.ln().ln() + x.ln().ln().ln(),
        }
    }

    /// `ln ln φ(n)` when φ(n) > 1, otherwise `None`.
    pub fn ln_ln_value(&self, n: u64) -> Option<f64> {
        match *self {
            Growth::DoubleExponential { b, c } if c > 1.0 => Some(n as f64 * b.ln() + c.ln().ln()),
            _ => {
                let l = self.ln_value(n);
                (l > 0.0).then(|| l.ln())
            }
        }
    }

    /// φ(n) itself (may be `inf`).
    pub fn value(&self, n: u64) -> f64 {
        match *self {
            Growth::Constant(c) => c,
            Growth::Power(a) => (n as f64).powf(a),
            _ => self.ln_value(n).exp(),
        }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Constant(c) => write!(f, "const:{c}"),
            Growth::Power(a) => write!(f, "pow:{a}"),
            Growth::Exponential(b) => write!(f, "exp:{b}"),
            Growth::DoubleExponential { b, c } => write!(f, "dexp:{b},{c}"),
            Growth::NLogN => f.write_str("nlogn"),
            Growth::NLogSquared => f.write_str("nlog2n"),
            Growth::NLogNLogLogN => f.write_str("nlognloglogn"),
        }
    }
}

impl FromStr for Growth {
    type Err = Error;

    /// `const:C`, `pow:A`, `exp:B`, `dexp:B,C` (that is c^{b^n}), `nlogn`,
    /// `nlog2n`, `nlognloglogn`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = |t: &str| -> Result<f64> {
            let v: f64 = t.trim().parse().map_err(|e| Error::Parse(format!("growth parameter `{t}`: {e}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("growth parameter `{t}` is not finite")))
            }
        };
        fn need<'a>(a: Option<&'a str>, name: &str) -> Result<&'a str> {
            a.ok_or_else(|| Error::Parse(format!("growth `{name}` needs a parameter")))
        }
        let g = match name {
            "const" => Growth::Constant(num(need(arg, name)?)?),
            "pow" => Growth::Power(num(need(arg, name)?)?),
            "exp" => Growth::Exponential(num(need(arg, name)?)?),
            "dexp" => {
                let (b, c) = need(arg, name)?
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("dexp needs `b,c`".into()))?;
                Growth::DoubleExponential { b: num(b)?, c: num(c)? }
            }
            "nlogn" => Growth::NLogN,
            "nlog2n" => Growth::NLogSquared,
            "nlognloglogn" => Growth::NLogNLogLogN,
            _ => return Err(Error::Parse(format!("unknown growth function `{s}`"))),
        };
        let positive = match g {
            Growth::Constant(c) => c > 0.0,
            Growth::Exponential(b) => b > 0.0,
            Growth::DoubleExponential { b, c } => b > 0.0 && c > 0.0,
            _ => true,
        };
        if !positive {
            return Err(Error::Parse(format!("growth `{s}` must be positive")));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["const:2", "pow:2", "exp:3", "dexp:2,1.5", "nlogn", "nlog2n", "nlognloglogn"] {
            let g: Growth = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("exp".parse::<Growth>().is_err());
        assert!("exp:-1".parse::<Growth>().is_err());
        assert!("sin".parse::<Growth>().is_err());
    }

    #[test]
    fn values() {
        assert!((Growth::NLogSquared.value(10) - 10.0 * 10f64.ln().powi(2)).abs() < 1e-9);
        assert_eq!(Growth::Power(2.0).value(7), 49.0);
        let d = Growth::DoubleExponential { b: 2.0, c: 2.0 };
        assert!((d.value(3) - 256.0).abs() < 1e-9);
        // analytic log-log survives overflow of φ itself
        assert!(d.value(2000).is_infinite());
        assert!((d.ln_ln_value(2000).unwrap() - (2000.0 * 2f64.ln() + 2f64.ln().ln())).abs() < 1e-9);
        assert_eq!(Growth::NLogN.ln_ln_value(1), None);
        assert_eq!(Growth::Constant(0.5).ln_ln_value(4), None);
    }
}
