//! Working precision and small helpers around MPFR floats.
//!
//! Everything that accumulates tail sums uses [`PREC`] bits (about 38
//! significant decimal digits). Directed rounding is used where a value must
//! bound something from one side.

use std::cmp::Ordering;

use rug::float::Round;
use rug::ops::AddAssignRound;
use rug::{Float, Rational};

/// Default mantissa width in bits.
pub const PREC: u32 = 128;

/// A float at working precision.
pub fn hp<T>(value: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(PREC, value)
}

/// Rational rounded toward -inf or +inf at working precision.
pub fn rational_round(r: &Rational, round: Round) -> Float {
    Float::with_val_round(PREC, r, round).0
}

/// Neumaier-compensated running sum. Addition order is the caller's order.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sum: Float,
    comp: Float,
}

impl Default for CompensatedSum {
    fn default() -> Self {
        Self::new()
    }
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self { sum: hp(0), comp: hp(0) }
    }

    pub fn add(&mut self, x: &Float) {
        let t = Float::with_val(PREC, &self.sum + x);
        let corr = if self.sum.cmp_abs(x) != Some(Ordering::Less) {
            Float::with_val(PREC, &self.sum - &t) + x
        } else {
            Float::with_val(PREC, x - &t) + &self.sum
        };
        self.comp += corr;
        self.sum = t;
    }

    pub fn value(&self) -> Float {
        Float::with_val(PREC, &self.sum + &self.comp)
    }
}

/// Plain sum where every addition is rounded in one direction, so the result
/// is a one-sided bound on the exact sum of the (already bounded) terms.
#[derive(Debug, Clone)]
pub struct DirectedSum {
    sum: Float,
    round: Round,
}

impl DirectedSum {
    pub fn down() -> Self {
        Self { sum: hp(0), round: Round::Down }
    }

    pub fn up() -> Self {
        Self { sum: hp(0), round: Round::Up }
    }

    pub fn add(&mut self, x: &Float) {
        self.sum.add_assign_round(x, self.round);
    }

    pub fn value(&self) -> &Float {
        &self.sum
    }

    pub fn into_value(self) -> Float {
        self.sum
    }
}

/// Decimal string with `digits` significant digits, e.g. `4.5224742004106549850e-1`.
pub fn fmt_sig(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Decimal string for an `f64`, 17 significant digits (round-trip exact).
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        format!("{}", x)
    }
}

/// `num/den` rendering of a rational.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Neumaier sum over `f64` values in iteration order.
#[derive(Debug, Clone, Copy, Default)]
pub struct F64Sum {
    sum: f64,
    comp: f64,
}

impl F64Sum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for F64Sum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = F64Sum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_beats_naive_on_cancellation() {
        let mut s = CompensatedSum::new();
        let big = hp(1) << 200u32;
        s.add(&big);
        s.add(&hp(1));
        s.add(&-big);
        assert_eq!(s.value(), 1);
    }

    #[test]
    fn directed_sum_brackets_thirds() {
        let third_dn = rational_round(&Rational::from((1, 3)), Round::Down);
        let third_up = rational_round(&Rational::from((1, 3)), Round::Up);
        let mut lo = DirectedSum::down();
        let mut hi = DirectedSum::up();
        for _ in 0..3 {
            lo.add(&third_dn);
            hi.add(&third_up);
        }
        assert!(*lo.value() < 1);
        assert!(*hi.value() > 1);
    }

    #[test]
    fn f64_sum_recovers_small_terms() {
        let s: F64Sum = [1e16, 1.0, -1e16].into_iter().collect();
        assert_eq!(s.value(), 1.0);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_rational(&Rational::from((2, 4))), "1/2");
        assert_eq!(fmt_sig(&hp(0), 20), "0");
        assert!(fmt_sig(&hp(0.5), 20).starts_with("5.0000000000000000000e-1"));
    }
}
