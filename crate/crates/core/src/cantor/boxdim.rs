//! Box-counting slope from covers at several levels.

use rug::{Float, Rational};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDimension {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    pub levels: usize,
}

/// Least-squares slope of `log N(level)` against `-log(max length at level)`.
pub fn box_dimension_estimate(covers: &[Vec<Rational>]) -> Result<BoxDimension> {
    if covers.len() < 2 {
        return Err(Error::Degenerate(format!("{} cover level(s); need at least 2", covers.len())));
    }
    let mut pts = Vec::with_capacity(covers.len());
    for (i, c) in covers.iter().enumerate() {
        let max = c.iter().max().ok_or_else(|| Error::Degenerate(format!("cover level {i} is empty")))?;
        if *max <= 0 {
            return Err(Error::Degenerate(format!("cover level {i} has no positive length")));
        }
        let ln_max = Float::with_val(crate::precision::PREC, max).ln().to_f64();
        pts.push((-ln_max, (c.len() as f64).ln()));
    }
    fit(&pts)
}

fn fit(pts: &[(f64, f64)]) -> Result<BoxDimension> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all cover levels have the same scale".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(BoxDimension { slope, intercept, residual, levels: pts.len() })
}

/// Level `k` of the middle-half Cantor set: `2^k` intervals of length `4^{-k}`.
pub fn middle_half_cover(levels: u32) -> Vec<Vec<Rational>> {
    (1..=levels)
        .map(|k| vec![Rational::from((1, rug::Integer::from(1) << (2 * k))); 1usize << k])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_half_slope() {
        let b = box_dimension_estimate(&middle_half_cover(6)).unwrap();
        assert!((b.slope - 0.5).abs() < 1e-12);
        assert!(b.residual < 1e-12);
    }

    #[test]
    fn constant_count_slope_zero() {
        let covers: Vec<Vec<Rational>> =
            (1..5u32).map(|k| vec![Rational::from((1, 3u32.pow(k))); 3]).collect();
        assert!(box_dimension_estimate(&covers).unwrap().slope.abs() < 1e-12);
    }

    #[test]
    fn single_level_is_degenerate() {
        assert!(matches!(box_dimension_estimate(&middle_half_cover(1)), Err(Error::Degenerate(_))));
    }
}
